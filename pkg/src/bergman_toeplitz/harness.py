"""Seeded random symbols and the self-test suites.

Every trial draws from its own ``random.Random`` seeded with a string
derived from ``(seed, suite, trial index)``, so suites are reproducible and
independent of execution order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .calculus import commutator, op_is_zero, toeplitz, truncate_matrix
from .decide import (
    coefficient_relations_check,
    decide_commute,
    decide_normal,
    degree_match_check,
    line_holds_at,
)
from .errors import MismatchReport
from .numeric import ZERO, GaussRational
from .oracle import consistency_check
from .symbol import (
    BiharmonicSymbol,
    affine_relation,
    conjugate_symbol,
    symbol_affine,
    symbol_report,
)

G = GaussRational

COEFF_POOL = (
    G(1), G(-1), G(0, 1), G(0, -1),
    G(Fraction(1, 2)), G(Fraction(-1, 2)),
    G(Fraction(1, 3), Fraction(-1, 3)), G(Fraction(-1, 3), Fraction(1, 3)),
)
SCALAR_POOL = COEFF_POOL + (
    G(2), G(Fraction(3, 5), Fraction(4, 5)), G(-1, 2), G(Fraction(1, 2), Fraction(1, 3)),
)
UNIT_POOL = (
    G(1), G(-1), G(0, 1), G(0, -1),
    G(Fraction(3, 5), Fraction(4, 5)), G(Fraction(-5, 13), Fraction(12, 13)),
)

ORDERINGS = ("<", "=", ">")


def trial_rng(seed: int, suite: str, index: int) -> random.Random:
    return random.Random(f"{seed}/{suite}/{index}")


def _component(rng: random.Random, degree: int, start: int = 0) -> list[GaussRational]:
    if degree < start:
        return []
    values = [ZERO] * start
    for _ in range(start, degree):
        values.append(ZERO if rng.random() < 0.3 else rng.choice(COEFF_POOL))
    values.append(rng.choice(COEFF_POOL))
    return values


def random_symbol(
    rng: random.Random,
    max_degree: int = 3,
    nondegenerate: bool = True,
    degrees: Optional[tuple[int, int, int, int]] = None,
) -> BiharmonicSymbol:
    """Random symbol; ``degrees`` is ``(N1, m1, N2, m2)``, -1 meaning empty.

    Nondegenerate draws keep every component nonzero, which needs the
    anti-analytic degrees to be at least 1.
    """
    if degrees is None:
        if nondegenerate:
            lo_a, lo_c = 0, 1
        else:
            lo_a, lo_c = -1, 0
        hi = max(max_degree, 1)
        degrees = (
            rng.randint(lo_a, max_degree),
            rng.randint(lo_c, hi),
            rng.randint(lo_a, max_degree),
            rng.randint(lo_c, hi),
        )
        if not nondegenerate:
            # 0 for an anti-analytic list means "empty"
            degrees = tuple(-1 if (i % 2 and d == 0) else d for i, d in enumerate(degrees))
    n1, m1, n2, m2 = degrees
    return BiharmonicSymbol(
        _component(rng, n1),
        _component(rng, m1, start=1),
        _component(rng, n2),
        _component(rng, m2, start=1),
    )


def _ordered_pair(rng: random.Random, order: str, lo: int, hi: int) -> tuple[int, int]:
    if hi <= lo and order != "=":
        order = "="
    if order == "=":
        x = rng.randint(lo, hi)
        return x, x
    x, y = rng.sample(range(lo, hi + 1), 2)
    x, y = min(x, y), max(x, y)
    return (x, y) if order == "<" else (y, x)


def ordered_degrees(rng: random.Random, index: int, max_degree: int) -> tuple[int, int, int, int]:
    """Degrees whose (N1 vs N2, m1 vs m2) ordering class cycles with ``index``."""
    n_order = ORDERINGS[index % 3]
    m_order = ORDERINGS[(index // 3) % 3]
    n1, n2 = _ordered_pair(rng, n_order, 0, max_degree)
    m1, m2 = _ordered_pair(rng, m_order, 1, max(max_degree, 1))
    return n1, m1, n2, m2


def random_scalar(rng: random.Random, nonzero: bool = True) -> GaussRational:
    if not nonzero and rng.random() < 0.25:
        return ZERO
    return rng.choice(SCALAR_POOL)


def forward_pair(rng: random.Random, index: int, max_degree: int):
    psi = random_symbol(rng, max_degree, degrees=ordered_degrees(rng, index, max_degree))
    c1 = random_scalar(rng)
    while True:
        # with N1 = 0 the shift C2 can cancel the whole analytic part
        c2 = random_scalar(rng, nonzero=False)
        phi = symbol_affine(psi, c1, c2)
        if symbol_report(phi).hypotheses_met:
            return phi, psi, (c1, c2)


def _perturb(rng: random.Random, sym: BiharmonicSymbol) -> BiharmonicSymbol:
    slots = list(sym.nonconstant_items())
    name, n, value = rng.choice(slots)
    lists = {k: list(getattr(sym, k)) for k in ("a1", "c1", "a2", "c2")}
    lists[name][n] = value + rng.choice(COEFF_POOL)
    return BiharmonicSymbol(**lists)


def converse_pair(rng: random.Random, index: int, max_degree: int):
    """Nondegenerate pair with no affine relation, spanning ordering classes."""
    for _ in range(100):
        phi = random_symbol(rng, max_degree, degrees=ordered_degrees(rng, index, max_degree))
        if index % 2 == 0:
            psi = _perturb(rng, symbol_affine(phi, random_scalar(rng), random_scalar(rng, False)))
        else:
            psi = random_symbol(
                rng, max_degree, degrees=ordered_degrees(rng, index // 2 + 1, max_degree)
            )
        if (
            symbol_report(psi).hypotheses_met
            and affine_relation(phi, psi) is None
        ):
            return phi, psi
    raise RuntimeError("could not draw a non-affine nondegenerate pair")


def mismatched_pair(rng: random.Random, index: int, max_degree: int):
    """Nondegenerate pair differing in at least one component degree."""
    base = ordered_degrees(rng, index, max_degree)
    which = index % 4
    other = list(base)
    lo = 0 if which % 2 == 0 else 1
    choices = [d for d in range(lo, max(max_degree, 1) + 1) if d != base[which]]
    other[which] = rng.choice(choices)
    return (
        random_symbol(rng, max_degree, degrees=base),
        random_symbol(rng, max_degree, degrees=tuple(other)),
    )


def line_symbol(rng: random.Random, max_degree: int) -> BiharmonicSymbol:
    """Symbol whose image lies on a line: ``omega * (S + conj S) + beta``."""
    s = random_symbol(rng, max_degree, nondegenerate=rng.random() < 0.5)
    real = s + conjugate_symbol(s)
    omega = rng.choice(SCALAR_POOL)
    return symbol_affine(real, omega, random_scalar(rng, nonzero=False))


def disk_points() -> list[GaussRational]:
    """25 rational points of the open unit disk: the origin and 3 radii x 8 angles."""
    units = [
        G(1), G(0, 1), G(-1), G(0, -1),
        G(Fraction(3, 5), Fraction(4, 5)), G(Fraction(-4, 5), Fraction(3, 5)),
        G(Fraction(5, 13), Fraction(-12, 13)), G(Fraction(-8, 17), Fraction(-15, 17)),
    ]
    pts = [G(0)]
    for r in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
        pts.extend(G(r) * u for u in units)
    return pts


# ---------------------------------------------------------------------------
# suites


@dataclass
class SuiteResult:
    name: str
    total: int = 0
    passed: int = 0
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def record(self, ok: bool, detail: str = "") -> None:
        self.total += 1
        if ok:
            self.passed += 1
        elif len(self.failures) < 5:
            self.failures.append(detail)

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        out = f"{self.name}: {self.passed}/{self.total} {status}"
        if self.notes:
            out += " (" + "; ".join(self.notes) + ")"
        return out


def suite_forward(seed: int, trials: int, max_degree: int) -> SuiteResult:
    res = SuiteResult("affine-pairs-commute")
    for i in range(trials):
        phi, psi, (c1, c2) = forward_pair(trial_rng(seed, res.name, i), i, max_degree)
        v = decide_commute(phi, psi)
        res.record(
            v.commute and v.relation == (c1, c2) and v.hypotheses_met,
            f"trial {i}: {phi} vs {psi}",
        )
    return res


def suite_converse(seed: int, trials: int, max_degree: int) -> SuiteResult:
    res = SuiteResult("non-affine-pairs")
    classes = set()
    for i in range(trials):
        phi, psi = converse_pair(trial_rng(seed, res.name, i), i, max_degree)
        n1, m1, n2, m2 = phi.degrees
        classes.add((_cmp(n1, n2), _cmp(m1, m2)))
        v = decide_commute(phi, psi)
        res.record(
            not v.commute and v.witness is not None and v.witness["value"] != 0,
            f"trial {i}: {phi} vs {psi}",
        )
    res.notes.append(f"{len(classes)} ordering classes")
    return res


def _cmp(x: int, y: int) -> str:
    return "<" if x < y else ("=" if x == y else ">")


def suite_degree_match(seed: int, trials: int, max_degree: int) -> SuiteResult:
    res = SuiteResult("degree-match")
    for i in range(trials):
        rng = trial_rng(seed, res.name, i)
        phi, psi, _ = forward_pair(rng, i, max_degree)
        res.record(degree_match_check(phi, psi).all, f"forward trial {i}")
        phi, psi = converse_pair(rng, i, max_degree)
        if decide_commute(phi, psi).commute:
            res.record(degree_match_check(phi, psi).all, f"commuting converse trial {i}")
        phi, psi = mismatched_pair(rng, i, max_degree)
        res.record(
            not degree_match_check(phi, psi).all and not op_is_zero(commutator(phi, psi)),
            f"mismatched trial {i}: {phi} vs {psi}",
        )
    return res


def suite_relations(seed: int, trials: int, max_degree: int) -> SuiteResult:
    res = SuiteResult("coefficient-relations")
    observed_fail = 0
    for i in range(trials):
        rng = trial_rng(seed, res.name, i)
        phi, psi, _ = forward_pair(rng, i, max_degree)
        checks = coefficient_relations_check(phi, psi)
        bad = [c.id for c in checks if not c.holds]
        res.record(decide_commute(phi, psi).commute and not bad, f"trial {i}: failed {bad}")
        phi, psi = converse_pair(rng, i, max_degree)
        if not all(c.holds for c in coefficient_relations_check(phi, psi)):
            observed_fail += 1
    res.notes.append(f"non-commuting pairs violating some identity: {observed_fail}/{trials}")
    return res


def suite_normality(seed: int, trials: int, max_degree: int) -> SuiteResult:
    res = SuiteResult("normality")
    points = disk_points()
    counts = {"Constant": 0, "Line": 0, "NotNormal": 0, "Unclassified": 0}
    for i in range(trials):
        rng = trial_rng(seed, res.name, i)
        if i % 2:
            phi = line_symbol(rng, max_degree)
        else:
            phi = random_symbol(rng, max_degree, nondegenerate=rng.random() < 0.5)
        v = decide_normal(phi)
        counts[v.classification] += 1
        exact = op_is_zero(commutator(phi, conjugate_symbol(phi)))
        ok = v.normal == exact
        if symbol_report(phi).hypotheses_met or phi.is_constant():
            ok = ok and v.normal == (affine_relation(phi, conjugate_symbol(phi)) is not None)
        if v.classification == "Line":
            ok = ok and all(line_holds_at(phi, v.line, z) for z in points)
        res.record(ok, f"trial {i}: {phi} -> {v.classification}")
    res.notes.append(", ".join(f"{k}={n}" for k, n in counts.items()))
    return res


def suite_oracle(seed: int, trials: int, max_degree: int, K: int) -> SuiteResult:
    res = SuiteResult("oracle-consistency")
    for i in range(trials):
        rng = trial_rng(seed, res.name, i)
        sym = random_symbol(rng, max_degree, nondegenerate=False)
        pair = (
            random_symbol(rng, max_degree, nondegenerate=False),
            random_symbol(rng, max_degree, nondegenerate=False),
        )
        for item in (sym, pair):
            try:
                res.record(consistency_check(item, K))
            except MismatchReport as exc:
                res.record(False, str(exc))
    return res


def adjoint_identity_holds(sym: BiharmonicSymbol, K: int) -> bool:
    m = truncate_matrix(toeplitz(sym), K)
    ms = truncate_matrix(toeplitz(conjugate_symbol(sym)), K)
    for j in range(K):
        for k in range(K):
            if ms[k][j] != m[j][k].conjugate() * G(Fraction(k + 1, j + 1)):
                return False
    return True


def suite_adjoint(seed: int, trials: int, max_degree: int, K: int) -> SuiteResult:
    res = SuiteResult("adjoint-identity")
    for i in range(trials):
        sym = random_symbol(trial_rng(seed, res.name, i), max_degree, nondegenerate=False)
        res.record(adjoint_identity_holds(sym, K), f"trial {i}: {sym}")
    return res


SUITES: tuple[tuple[str, Callable], ...] = (
    ("affine-pairs-commute", lambda s, t, d, K: suite_forward(s, t, d)),
    ("non-affine-pairs", lambda s, t, d, K: suite_converse(s, t, d)),
    ("degree-match", lambda s, t, d, K: suite_degree_match(s, t, d)),
    ("coefficient-relations", lambda s, t, d, K: suite_relations(s, t, d)),
    ("normality", lambda s, t, d, K: suite_normality(s, t, d)),
    ("oracle-consistency", suite_oracle),
    ("adjoint-identity", suite_adjoint),
)


def run_selftest(seed: int = 0, trials: int = 50, max_degree: int = 3, K: int = 24):
    """Run every suite; returns ``(all_ok, report_text)``.

    :class:`InternalInconsistency` propagates to the caller.
    """
    lines = [f"selftest seed={seed} trials={trials} max_degree={max_degree} K={K}"]
    all_ok = True
    for _, fn in SUITES:
        res = fn(seed, trials, max_degree, K)
        all_ok = all_ok and res.ok
        lines.append(res.line())
        lines.extend(f"  failure: {f}" for f in res.failures)
    lines.append("summary: " + ("PASS" if all_ok else "FAIL"))
    return all_ok, "\n".join(lines) + "\n"


__all__ = [
    "COEFF_POOL",
    "SuiteResult",
    "trial_rng",
    "random_symbol",
    "ordered_degrees",
    "forward_pair",
    "converse_pair",
    "mismatched_pair",
    "line_symbol",
    "disk_points",
    "adjoint_identity_holds",
    "run_selftest",
]
