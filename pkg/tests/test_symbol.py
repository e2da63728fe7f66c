import json
from fractions import Fraction

import pytest
from hypothesis import given

from bergman_toeplitz import (
    BiharmonicSymbol,
    GaussRational as G,
    NotInClass,
    ParseError,
    QuasiHomogeneousTerm,
    affine_relation,
    conjugate_symbol,
    load_symbol,
    nondegeneracy_report,
    parse_symbol,
    render_symbol,
    symbol_eval,
    symbol_from_json,
    symbol_to_json,
    symbol_to_terms,
)
from bergman_toeplitz.symbol import symbol_affine

from strategies import gauss, nonconstant_symbols, nonzero_gauss, symbols

I = G(0, 1)
Z = parse_symbol("z")


def test_parse_mixed_example():
    s = parse_symbol("z^2 + 3*conj(z) + |z|^2*(1 - i*conj(z)^3)")
    assert s == BiharmonicSymbol([0, 0, 1], [0, 3], [1], [0, 0, 0, -I])


def test_parse_normalizes_monomial():
    assert parse_symbol("z*conj(z)^2") == BiharmonicSymbol([], [], [], [0, 1])


def test_parse_rejects_non_biharmonic_monomial():
    with pytest.raises(NotInClass):
        parse_symbol("z^2*conj(z)^2")


@pytest.mark.parametrize(
    "text, expected",
    [
        ("3|z|^2", BiharmonicSymbol([], [], [3])),
        ("|z|^4/|z|^2", None),  # division by a non-constant
        ("(z + 1)^2 - z^2 - 2z", BiharmonicSymbol([1])),
        ("2z/4", BiharmonicSymbol([0, Fraction(1, 2)])),
        ("conj(i*z)", BiharmonicSymbol([], [0, -I])),
        ("1/3i*z", BiharmonicSymbol([0, G(0, Fraction(1, 3))])),
    ],
)
def test_parse_cases(text, expected):
    if expected is None:
        with pytest.raises(ParseError):
            parse_symbol(text)
    else:
        assert parse_symbol(text) == expected


@pytest.mark.parametrize(
    "text, token",
    [("z + * 2", "*"), ("conj z", "z"), ("|z|^3", "|"), ("z^", "end of input"), ("z $", "$")],
)
def test_parse_error_names_token(text, token):
    with pytest.raises(ParseError) as info:
        parse_symbol(text)
    assert repr(token)[1:-1] in str(info.value)


@given(symbols)
def test_render_parse_round_trip(sym):
    assert parse_symbol(render_symbol(sym)) == sym


def test_terms_examples():
    # terms come sorted by (p, s)
    assert set(symbol_to_terms(parse_symbol("z + |z|^2"))) == {
        QuasiHomogeneousTerm(1, 1, 1),
        QuasiHomogeneousTerm(0, 2, 1),
    }
    s = BiharmonicSymbol([], [], [], [0, 0, 2 * I])
    assert symbol_to_terms(s) == [QuasiHomogeneousTerm(-2, 4, 2 * I)]
    assert symbol_to_terms(BiharmonicSymbol()) == []


# unit complex numbers with rational parts, from Pythagorean triples
UNITS = [
    G(1), G(0, 1), G(-1), G(Fraction(3, 5), Fraction(4, 5)),
    G(Fraction(-4, 5), Fraction(3, 5)), G(Fraction(5, 13), Fraction(12, 13)),
    G(Fraction(8, 17), Fraction(-15, 17)), G(Fraction(-7, 25), Fraction(-24, 25)),
]
RADII = [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]


def _eval_terms(terms, r, u):
    total = G(0)
    for t in terms:
        phase = u ** t.p if t.p >= 0 else u.conjugate() ** (-t.p)
        total = total + t.c * phase * G(r ** t.s)
    return total


@given(symbols)
def test_terms_preserve_evaluation(sym):
    terms = symbol_to_terms(sym)
    for r in RADII:
        for u in UNITS:
            assert _eval_terms(terms, r, u) == symbol_eval(sym, G(r) * u)


def test_conjugate_examples():
    assert conjugate_symbol(Z) == BiharmonicSymbol([], [0, 1])
    s = parse_symbol("i*z + conj(i*z)")
    assert conjugate_symbol(s) == BiharmonicSymbol([0, I], [0, -I])
    real = parse_symbol("z + conj(z)")
    assert conjugate_symbol(real) == real


@given(symbols, gauss)
def test_conjugate_involution(sym, z):
    assert conjugate_symbol(conjugate_symbol(sym)) == sym
    assert symbol_eval(conjugate_symbol(sym), z) == symbol_eval(sym, z).conjugate()


def test_affine_examples():
    assert symbol_affine(Z, 2, 3).a1 == (G(3), G(2))
    psi = parse_symbol("z + conj(z)^2 + |z|^2")
    assert symbol_affine(psi, 1, 0) == psi
    assert symbol_affine(parse_symbol("|z|^2*conj(z)"), I, 0).c2 == (G(0), I)


def test_affine_relation_examples():
    psi = parse_symbol("z + conj(z) + |z|^2*(z - conj(z))")
    assert affine_relation(symbol_affine(psi, 3, 2), psi) == (G(3), G(2))
    assert affine_relation(Z, parse_symbol("conj(z)")) is None
    phi = parse_symbol("z + |z|^2*conj(z)")
    psi = parse_symbol("2*z + 2*|z|^2*conj(z) + 5")
    assert affine_relation(phi, psi) == (G(Fraction(1, 2)), G(Fraction(-5, 2)))


@given(nonconstant_symbols, nonzero_gauss, gauss)
def test_affine_relation_round_trip(psi, c1, c2):
    phi = symbol_affine(psi, c1, c2)
    assert affine_relation(phi, psi) == (c1, c2)
    assert affine_relation(psi, phi) == (1 / c1, -c2 / c1)


@given(gauss, nonconstant_symbols)
def test_constant_against_nonconstant(c, psi):
    assert affine_relation(BiharmonicSymbol.constant(c), psi) == (G(0), c)


def test_nondegeneracy_examples():
    sym = parse_symbol("z + conj(z) + |z|^2*(z + conj(z))")
    a, b = nondegeneracy_report(sym, sym)
    assert a.hypotheses_met and b.hypotheses_met
    a, _ = nondegeneracy_report(Z, Z)
    assert not a.hypotheses_met and not a.c1_nonzero and not a.a2_nonzero
    a, _ = nondegeneracy_report(BiharmonicSymbol.constant(5), Z)
    assert not a.hypotheses_met


@pytest.mark.parametrize(
    "text, z, value",
    [
        ("|z|^2", G(Fraction(1, 2)), G(Fraction(1, 4))),
        ("z + conj(z)", G(Fraction(1, 3), Fraction(1, 5)), G(Fraction(2, 3))),
        ("z^2", G(0, 1), G(-1)),
    ],
)
def test_eval_examples(text, z, value):
    assert symbol_eval(parse_symbol(text), z) == value


@given(symbols)
def test_json_round_trip(sym):
    data = json.loads(json.dumps(symbol_to_json(sym)))
    assert symbol_from_json(data) == sym


def test_json_expr_and_errors(tmp_path):
    assert symbol_from_json({"expr": "z + 1"}) == BiharmonicSymbol([1, 1])
    with pytest.raises(ParseError):
        symbol_from_json({"expr": "z", "a1": ["1"]})
    with pytest.raises(ParseError):
        symbol_from_json({"a3": ["1"]})
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"a1": ["0", "-1/2+3i"]}), encoding="utf-8")
    assert load_symbol(str(path)) == BiharmonicSymbol([0, G(Fraction(-1, 2), 3)])
    assert load_symbol("expr:z") == Z


def test_canonical_fold_of_constant_slots():
    # the constant anti-analytic slot is absorbed into the analytic one
    assert BiharmonicSymbol([1], [2], [3], [4]) == BiharmonicSymbol([3], [], [7], [])
    assert BiharmonicSymbol([0, 1, 0, 0]).a1 == (G(0), G(1))
