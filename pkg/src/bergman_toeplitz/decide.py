"""Commutativity and normality decisions, each cross-checked two ways.

The exact commutator is the decider.  The affine criterion
``Phi = C1*Psi + C2`` is computed independently by coefficient comparison and
the two must agree whenever both symbols satisfy the nondegeneracy
hypotheses; disagreement raises :class:`InternalInconsistency`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

from .calculus import BandedOperator, commutator, op_is_zero
from .errors import HypothesesNotMet, InternalInconsistency
from .numeric import ZERO, GaussRational
from .symbol import (
    COMPONENTS,
    BiharmonicSymbol,
    affine_relation,
    conjugate_symbol,
    nondegeneracy_report,
    symbol_eval,
    symbol_report,
    symbol_to_json,
)

__all__ = [
    "CommuteVerdict",
    "NormalVerdict",
    "Line",
    "DegreeMatch",
    "RelationCheck",
    "decide_commute",
    "decide_normal",
    "degree_match_check",
    "coefficient_relations_check",
    "commutator_witness",
    "line_holds_at",
]


def _relation_json(rel):
    if rel is None:
        return None
    return {"C1": str(rel[0]), "C2": str(rel[1])}


@dataclass(frozen=True)
class CommuteVerdict:
    commute: bool
    relation: Optional[tuple[GaussRational, GaussRational]]
    hypotheses_met: bool
    consistent: bool
    witness: Optional[dict] = None

    def to_json(self) -> dict:
        w = None
        if self.witness is not None:
            w = {**self.witness, "value": str(self.witness["value"])}
        return {
            "commute": self.commute,
            "relation": _relation_json(self.relation),
            "hypotheses_met": self.hypotheses_met,
            "consistent": self.consistent,
            "witness": w,
        }


class Line(NamedTuple):
    """Real-linear equation ``u*Re(w) + v*Im(w) = c``."""

    u: Fraction
    v: Fraction
    c: Fraction

    def to_json(self) -> dict:
        return {"u": str(self.u), "v": str(self.v), "c": str(self.c)}

    def __str__(self):
        return f"({self.u})*Re + ({self.v})*Im = {self.c}"


@dataclass(frozen=True)
class NormalVerdict:
    normal: bool
    classification: str
    line: Optional[Line] = None
    relation: Optional[tuple[GaussRational, GaussRational]] = None
    equations: tuple[Line, ...] = field(default_factory=tuple)

    def to_json(self, verbose: bool = False) -> dict:
        out = {
            "normal": self.normal,
            "classification": self.classification,
            "line": None if self.line is None else self.line.to_json(),
            "relation": _relation_json(self.relation),
        }
        if verbose:
            out["equations"] = [eq.to_json() for eq in self.equations]
        return out


def commutator_witness(op: BandedOperator) -> Optional[dict]:
    """A nonzero entry ``{shift, k, value}``: ``op(z^k)`` has ``value`` at ``z^{k+shift}``."""
    for p, coeff in op.bands.items():
        hit = coeff.first_nonzero(max(0, -p))
        if hit is not None:
            return {"shift": p, "k": hit[0], "value": hit[1]}
    return None


def decide_commute(phi: BiharmonicSymbol, psi: BiharmonicSymbol) -> CommuteVerdict:
    comm = commutator(phi, psi)
    commute = op_is_zero(comm)
    relation = affine_relation(phi, psi)
    rep_phi, rep_psi = nondegeneracy_report(phi, psi)
    hyp = rep_phi.hypotheses_met and rep_psi.hypotheses_met
    # an affine pair commutes for every symbol, hypotheses or not
    consistent = commute == (relation is not None) if hyp else (commute or relation is None)
    verdict = CommuteVerdict(
        commute=commute,
        relation=relation,
        hypotheses_met=hyp,
        consistent=consistent,
        witness=None if commute else commutator_witness(comm),
    )
    if not consistent:
        err = InternalInconsistency(
            f"commutator says commute={commute} but affine relation is {relation}"
            f" for {phi} and {psi}"
        )
        err.verdict = verdict
        raise err
    return verdict


def _line_equations(c1: GaussRational, c2: GaussRational) -> tuple[Line, ...]:
    a, b = c1.re, c1.im
    candidates = (Line(1 - a, -b, c2.re), Line(-b, 1 + a, c2.im))
    return tuple(eq for eq in candidates if eq.u or eq.v)


def decide_normal(phi: BiharmonicSymbol) -> NormalVerdict:
    conj = conjugate_symbol(phi)
    normal = op_is_zero(commutator(phi, conj))
    relation = affine_relation(phi, conj)
    if phi.is_constant():
        return NormalVerdict(True, "Constant", None, relation)
    if relation is not None:
        if not normal:
            raise InternalInconsistency(
                f"{phi} satisfies Phi = C1*conj(Phi) + C2 but its commutator is nonzero"
            )
        c1, c2 = relation
        if c1.abs2() != 1:
            raise InternalInconsistency(f"non-constant {phi} with |C1|^2 = {c1.abs2()}")
        equations = _line_equations(c1, c2)
        return NormalVerdict(True, "Line", equations[0], relation, equations)
    if not normal:
        return NormalVerdict(False, "NotNormal")
    if symbol_report(phi).hypotheses_met:
        raise InternalInconsistency(
            f"{phi} is normal but admits no relation Phi = C1*conj(Phi) + C2"
        )
    return NormalVerdict(True, "Unclassified")


def line_holds_at(phi: BiharmonicSymbol, line: Line, z) -> bool:
    w = symbol_eval(phi, z)
    return line.u * w.re + line.v * w.im == line.c


@dataclass(frozen=True)
class DegreeMatch:
    a1: bool
    c1: bool
    a2: bool
    c2: bool

    @property
    def all(self) -> bool:
        return self.a1 and self.c1 and self.a2 and self.c2

    def __bool__(self):
        return self.all


def _require_hypotheses(phi, psi):
    rep_phi, rep_psi = nondegeneracy_report(phi, psi)
    if not (rep_phi.hypotheses_met and rep_psi.hypotheses_met):
        raise HypothesesNotMet(
            "every Almansi component of both symbols must be a nonzero polynomial"
        )


def degree_match_check(phi: BiharmonicSymbol, psi: BiharmonicSymbol) -> DegreeMatch:
    _require_hypotheses(phi, psi)
    return DegreeMatch(*(phi.degree(n) == psi.degree(n) for n in COMPONENTS))


class RelationCheck(NamedTuple):
    id: str
    holds: bool


class _SignedCoefficients:
    """Coefficient access in the ``a_{i,n}`` / ``a_{i,-n}`` convention.

    The negative-index coefficients belong to the polynomial whose conjugate
    appears in the symbol, so ``a_{i,-n} = conj(c_i[n])``.
    """

    def __init__(self, sym: BiharmonicSymbol):
        self.sym = sym

    def __call__(self, i: int, n: int) -> GaussRational:
        if n >= 0:
            seq = self.sym.a1 if i == 1 else self.sym.a2
            return seq[n] if n < len(seq) else ZERO
        seq = self.sym.c1 if i == 1 else self.sym.c2
        return seq[-n].conjugate() if -n < len(seq) else ZERO


def coefficient_relations_check(
    phi: BiharmonicSymbol, psi: BiharmonicSymbol
) -> list[RelationCheck]:
    """Evaluate the coefficient identities that commuting forces.

    Index ranges use the degrees of ``phi`` (which equal those of ``psi``
    for commuting pairs).  These identities are necessary conditions only.
    With ``a``/``b`` the signed coefficients of ``phi``/``psi``:

    radial-mixed              a(2,n) conj b(2,-n) = b(2,n) conj a(2,-n),  1 <= n <= min(N2, m2)
    radial-upper-ratio        a(2,s) b(2,N2) = a(2,N2) b(2,s),            N1 < s <= N2
    harmonic-lead-ratio       a(1,d) b(2,N2) = a(2,N2) b(1,d),            1 <= d <= N1
    harmonic-upper-ratio      same identity restricted to                 N2 < s <= N1
    anti-harmonic-lead-ratio  a(1,-d) b(2,-m2) = a(2,-m2) b(1,-d),        1 <= d <= m1
    anti-radial-lead-ratio    a(2,-d) b(2,-m2) = a(2,-m2) b(2,-d),        1 <= d <= m2
    anti-cross-ratio          a(1,-d) b(2,-d) = a(2,-d) b(1,-d),          1 <= d <= m1
    anti-harmonic-scale       a(1,-d) = conj(C1) b(1,-d),                 1 <= d <= m1
    """
    _require_hypotheses(phi, psi)
    a, b = _SignedCoefficients(phi), _SignedCoefficients(psi)
    N1, m1, N2, m2 = phi.degrees

    def every(indices, pred):
        return all(pred(n) for n in indices)

    relation = affine_relation(phi, psi)
    if relation is not None:
        c1 = relation[0]
    elif b(2, N2):
        c1 = a(2, N2) / b(2, N2)
    else:
        c1 = None

    return [
        RelationCheck(
            "radial-mixed",
            every(
                range(1, min(N2, m2) + 1),
                lambda n: a(2, n) * b(2, -n).conjugate() == b(2, n) * a(2, -n).conjugate(),
            ),
        ),
        RelationCheck(
            "radial-upper-ratio",
            every(range(N1 + 1, N2 + 1), lambda s: a(2, s) * b(2, N2) == a(2, N2) * b(2, s)),
        ),
        RelationCheck(
            "harmonic-lead-ratio",
            every(range(1, N1 + 1), lambda d: a(1, d) * b(2, N2) == a(2, N2) * b(1, d)),
        ),
        RelationCheck(
            "harmonic-upper-ratio",
            every(range(N2 + 1, N1 + 1), lambda s: a(1, s) * b(2, N2) == a(2, N2) * b(1, s)),
        ),
        RelationCheck(
            "anti-harmonic-lead-ratio",
            every(
                range(1, m1 + 1),
                lambda d: a(1, -d) * b(2, -m2) == a(2, -m2) * b(1, -d),
            ),
        ),
        RelationCheck(
            "anti-radial-lead-ratio",
            every(
                range(1, m2 + 1),
                lambda d: a(2, -d) * b(2, -m2) == a(2, -m2) * b(2, -d),
            ),
        ),
        RelationCheck(
            "anti-cross-ratio",
            every(range(1, m1 + 1), lambda d: a(1, -d) * b(2, -d) == a(2, -d) * b(1, -d)),
        ),
        RelationCheck(
            "anti-harmonic-scale",
            c1 is not None
            and every(range(1, m1 + 1), lambda d: a(1, -d) == c1.conjugate() * b(1, -d)),
        ),
    ]


def verdict_symbols_json(**symbols: BiharmonicSymbol) -> dict:
    return {name: symbol_to_json(sym) for name, sym in symbols.items()}
