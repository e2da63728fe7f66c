"""Acceptance criteria: exact checks with wall-clock budgets.

Run alone with ``pytest tests/test_acceptance.py``; the terminal summary
lists one PASS/FAIL line per criterion.
"""

import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from bergman_toeplitz import (
    QuasiHomogeneousTerm,
    band_from_term,
    coefficient_relations_check,
    commutator,
    consistency_check,
    conjugate_symbol,
    decide_commute,
    decide_normal,
    degree_match_check,
    op_is_zero,
    parse_symbol,
)
from bergman_toeplitz.cli import RunConfig, run
from bergman_toeplitz.decide import line_holds_at
from bergman_toeplitz.harness import (
    adjoint_identity_holds,
    converse_pair,
    disk_points,
    forward_pair,
    line_symbol,
    mismatched_pair,
    random_symbol,
    trial_rng,
)

SEED = 20240601
criterion = pytest.mark.criterion


@contextmanager
def budget(seconds: float):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.2f}s, budget {seconds}s"


def _order(x, y):
    return (x > y) - (x < y)


@criterion(1, "monomial action closed forms, 0<=p,s<=6, k<=20")
def test_c1_monomial_action():
    with budget(1.0):
        for p in range(7):
            for s in range(7):
                shift, up = band_from_term(QuasiHomogeneousTerm(p, s, 1))
                assert shift == p
                down_shift, down = band_from_term(QuasiHomogeneousTerm(-p, s, 1))
                assert down_shift == -p
                for k in range(21):
                    assert up(k) == Fraction(2 * k + 2 * p + 2, 2 * k + p + s + 2)
                    if k <= p - 1:
                        assert down(k) == 0
                    else:
                        assert down(k) == Fraction(2 * k - 2 * p + 2, 2 * k - p + s + 2)
        assert band_from_term(QuasiHomogeneousTerm(0, 2, 1))[1](0) == Fraction(1, 2)
        assert band_from_term(QuasiHomogeneousTerm(-2, 2, 1))[1](2) == Fraction(1, 3)


@criterion(2, "affine pairs commute, 200 trials")
def test_c2_forward():
    with budget(30.0):
        for i in range(200):
            phi, psi, (c1, c2) = forward_pair(trial_rng(SEED, "acc-forward", i), i, 3)
            assert c1 != 0
            assert max(psi.degrees) <= 3
            assert op_is_zero(commutator(phi, psi)), f"trial {i}: {phi} / {psi}"


@criterion(3, "non-affine nondegenerate pairs do not commute, 200 trials, all orderings")
def test_c3_converse():
    classes = set()
    with budget(60.0):
        for i in range(200):
            phi, psi = converse_pair(trial_rng(SEED, "acc-converse", i), i, 3)
            v = decide_commute(phi, psi)
            assert v.hypotheses_met and v.relation is None
            assert not v.commute, f"trial {i}: {phi} / {psi}"
            w = v.witness
            assert w["value"] != 0
            assert commutator(phi, psi).band(w["shift"])(w["k"]) == w["value"]
            n1, m1, n2, m2 = phi.degrees
            classes.add((_order(n1, n2), _order(m1, m2)))
    assert len(classes) == 9


@criterion(4, "commuting pairs share component degrees; mismatched pairs never commute")
def test_c4_degree_match():
    with budget(30.0):
        for i in range(200):
            phi, psi, _ = forward_pair(trial_rng(SEED, "acc-forward", i), i, 3)
            assert degree_match_check(phi, psi).all
            phi, psi = converse_pair(trial_rng(SEED, "acc-converse", i), i, 3)
            if op_is_zero(commutator(phi, psi)):
                assert degree_match_check(phi, psi).all
        for i in range(50):
            phi, psi = mismatched_pair(trial_rng(SEED, "acc-mismatch", i), i, 3)
            assert not degree_match_check(phi, psi).all
            assert not op_is_zero(commutator(phi, psi)), f"trial {i}: {phi} / {psi}"


@criterion(5, "coefficient identities hold on 100 commuting nondegenerate pairs")
def test_c5_coefficient_identities():
    with budget(30.0):
        for i in range(100):
            phi, psi, _ = forward_pair(trial_rng(SEED, "acc-relations", i), i, 3)
            assert op_is_zero(commutator(phi, psi))
            failed = [c.id for c in coefficient_relations_check(phi, psi) if not c.holds]
            assert not failed, f"trial {i}: {failed}"


@criterion(6, "banded calculus equals dense oracle, 100 symbols + 100 pairs, K=24")
def test_c6_oracle():
    with budget(60.0):
        for i in range(100):
            rng = trial_rng(SEED, "acc-oracle", i)
            sym = random_symbol(rng, 4, nondegenerate=False)
            assert consistency_check(sym, 24)
            a = random_symbol(rng, 4, nondegenerate=False)
            b = random_symbol(rng, 4, nondegenerate=False)
            assert consistency_check((a, b), 24)


@criterion(7, "normality verdicts match the exact commutator; lines hold at 25 disk points")
def test_c7_normality():
    points = disk_points()
    assert len(points) == 25
    lines = 0
    for i in range(200):
        rng = trial_rng(SEED, "acc-normal", i)
        if i % 2:
            phi = line_symbol(rng, 3)
        else:
            phi = random_symbol(rng, 3, nondegenerate=i % 4 == 0)
        v = decide_normal(phi)
        assert v.normal == op_is_zero(commutator(phi, conjugate_symbol(phi))), str(phi)
        if v.classification == "Line":
            lines += 1
            for eq in v.equations:
                assert all(line_holds_at(phi, eq, z) for z in points)
    assert lines >= 90
    z = parse_symbol("z")
    assert decide_normal(z).classification == "NotNormal"
    diag = commutator(conjugate_symbol(z), z)
    assert diag.shifts() == [0]
    for k in range(8):
        assert diag.band(0)(k) == Fraction(1, (k + 1) * (k + 2))


@criterion(8, "adjoint is the weighted transpose at K=16, 50 symbols")
def test_c8_adjoint():
    with budget(10.0):
        for i in range(50):
            sym = random_symbol(trial_rng(SEED, "acc-adjoint", i), 3, nondegenerate=False)
            assert adjoint_identity_holds(sym, 16), str(sym)


@criterion(9, "selftest reports are byte-identical for equal seeds")
def test_c9_determinism():
    cfg = RunConfig("selftest", seed=7, trials=50, max_degree=3, K=24)
    first, second = run(cfg), run(RunConfig("selftest", seed=7, trials=50, max_degree=3, K=24))
    assert first[0] == 0, first[1]
    assert first[1].encode() == second[1].encode()
