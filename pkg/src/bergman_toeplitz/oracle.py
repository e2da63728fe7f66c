"""Brute-force finite sections built entry by entry.

This module deliberately avoids the rational-function machinery: each
entry comes straight from the integer closed form of the monomial action,
evaluated with :class:`fractions.Fraction` arithmetic.  It is the
independent reference the banded calculus is checked against.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import MismatchReport
from .numeric import ZERO, GaussRational
from .symbol import BiharmonicSymbol, symbol_to_terms

__all__ = [
    "DenseMatrix",
    "oracle_matrix",
    "oracle_product_safe",
    "consistency_check",
]


class DenseMatrix:
    """Square matrix; ``entries[j][k]`` is the ``z^j`` coefficient of the image of ``z^k``."""

    __slots__ = ("dim", "entries")

    def __init__(self, entries):
        self.entries = [list(row) for row in entries]
        self.dim = len(self.entries)
        if any(len(row) != self.dim for row in self.entries):
            raise ValueError("matrix must be square")

    @classmethod
    def zeros(cls, K: int) -> "DenseMatrix":
        return cls([[ZERO] * K for _ in range(K)])

    def __getitem__(self, jk):
        j, k = jk
        return self.entries[j][k]

    def __matmul__(self, other: "DenseMatrix") -> "DenseMatrix":
        K = self.dim
        out = [[ZERO] * K for _ in range(K)]
        for k in range(K):
            for m in range(K):
                b = other.entries[m][k]
                if not b:
                    continue
                for j in range(K):
                    a = self.entries[j][m]
                    if a:
                        out[j][k] = out[j][k] + a * b
        return DenseMatrix(out)

    def __sub__(self, other: "DenseMatrix") -> "DenseMatrix":
        return DenseMatrix(
            [[x - y for x, y in zip(r, s)] for r, s in zip(self.entries, other.entries)]
        )

    def __eq__(self, other):
        if isinstance(other, DenseMatrix):
            return self.entries == other.entries
        return self.entries == [list(r) for r in other]

    def to_json(self) -> list[list[str]]:
        return [[str(v) for v in row] for row in self.entries]


def _monomial_image(p: int, s: int, k: int):
    """(output degree, weight) of ``e^{ip theta} r^s`` applied to ``z^k``, or None."""
    if p >= 0:
        return k + p, Fraction(2 * k + 2 * p + 2, 2 * k + p + s + 2)
    q = -p
    if k <= q - 1:
        return None
    return k - q, Fraction(2 * k - 2 * q + 2, 2 * k - q + s + 2)


def oracle_matrix(sym: BiharmonicSymbol, K: int) -> DenseMatrix:
    if K < 1:
        raise ValueError("K must be positive")
    m = DenseMatrix.zeros(K)
    terms = symbol_to_terms(sym)
    for k in range(K):
        for t in terms:
            image = _monomial_image(t.p, t.s, k)
            if image is None:
                continue
            j, w = image
            if j < K:
                m.entries[j][k] = m.entries[j][k] + t.c * GaussRational(w)
    return m


def _max_up_shift(sym: BiharmonicSymbol) -> int:
    return max([t.p for t in symbol_to_terms(sym) if t.p > 0], default=0)


def oracle_product_safe(
    a_sym: BiharmonicSymbol, b_sym: BiharmonicSymbol, K: int
) -> tuple[DenseMatrix, int]:
    """Section product and the number of leading columns that are exact.

    ``b`` raises degrees by at most its largest positive shift, so columns
    below ``K - shift`` never pass through a truncated intermediate degree.
    """
    prod = oracle_matrix(a_sym, K) @ oracle_matrix(b_sym, K)
    return prod, max(0, K - _max_up_shift(b_sym))


def _first_difference(label, expected, actual, cols):
    for k in range(cols):
        for j in range(len(expected)):
            if expected[j][k] != actual[j][k]:
                raise MismatchReport(label, j, k, expected[j][k], actual[j][k])


def consistency_check(sym_or_pair, K: int) -> bool:
    """Compare banded calculus against the oracle; raise on the first mismatch.

    A single symbol compares the operator sections; a pair compares the
    commutator section on the columns where both oracle products are exact.
    """
    from .calculus import commutator, toeplitz, truncate_matrix

    if K < 4:
        raise ValueError("consistency_check needs K >= 4")
    if isinstance(sym_or_pair, BiharmonicSymbol):
        expected = oracle_matrix(sym_or_pair, K).entries
        actual = truncate_matrix(toeplitz(sym_or_pair), K)
        _first_difference(f"T[{sym_or_pair}]", expected, actual, K)
        return True
    phi, psi = sym_or_pair
    ab, safe_ab = oracle_product_safe(phi, psi, K)
    ba, safe_ba = oracle_product_safe(psi, phi, K)
    expected = (ab - ba).entries
    actual = truncate_matrix(commutator(phi, psi), K)
    _first_difference(f"[T[{phi}], T[{psi}]]", expected, actual, min(safe_ab, safe_ba))
    return True
