"""Exact banded-operator algebra for Toeplitz operators on the Bergman space.

An operator acts on the monomial basis by ``T(z^k) = sum_p c_p(k) z^{k+p}``.
Each band coefficient ``c_p`` is a :class:`PiecewiseBandCoeff`: finitely
many exceptional values for small ``k`` followed by a rational tail.
Canonical forms are minimal, so operator equality (and in particular
commutativity) is decided by structural comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .errors import ZeroCoefficient
from .mellin import RadialPoly, band_coeff_via_mellin
from .numeric import ONE, ZERO, GaussRational, RationalFunc
from .symbol import BiharmonicSymbol, QuasiHomogeneousTerm, symbol_to_terms

__all__ = [
    "PiecewiseBandCoeff",
    "BandedOperator",
    "band_from_term",
    "toeplitz",
    "op_linear",
    "op_compose",
    "commutator",
    "op_is_zero",
    "truncate_matrix",
]

_RF_ZERO = RationalFunc()


@dataclass(frozen=True, eq=True)
class PiecewiseBandCoeff:
    """``exceptional[k]`` for ``k < k0``, ``tail(k)`` for ``k >= k0``."""

    exceptional: tuple[GaussRational, ...]
    tail: RationalFunc

    def __init__(self, exceptional: Iterable = (), tail: RationalFunc = _RF_ZERO):
        values = [GaussRational.coerce(v) for v in exceptional]
        # absorb: the last exceptional value is redundant if the tail
        # reproduces it (and is defined there)
        while values:
            k = len(values) - 1
            if k in tail.integer_poles or tail(k) != values[-1]:
                break
            values.pop()
        if tail.has_pole_at_or_above(len(values)):
            raise AssertionError(
                f"tail {tail} has a pole at an integer >= k0={len(values)}"
            )
        object.__setattr__(self, "exceptional", tuple(values))
        object.__setattr__(self, "tail", tail)

    @property
    def k0(self) -> int:
        return len(self.exceptional)

    def __call__(self, k: int) -> GaussRational:
        if k < 0:
            return ZERO
        if k < len(self.exceptional):
            return self.exceptional[k]
        return self.tail(k)

    def is_zero(self) -> bool:
        return not self.exceptional and self.tail.is_zero()

    def __add__(self, other: "PiecewiseBandCoeff") -> "PiecewiseBandCoeff":
        k0 = max(self.k0, other.k0)
        return PiecewiseBandCoeff(
            [self(k) + other(k) for k in range(k0)], self.tail + other.tail
        )

    def scale(self, c) -> "PiecewiseBandCoeff":
        c = GaussRational.coerce(c)
        if c.is_zero():
            return PiecewiseBandCoeff()
        return PiecewiseBandCoeff([c * v for v in self.exceptional], self.tail.scale(c))

    def first_nonzero(self, start: int = 0) -> Optional[tuple[int, GaussRational]]:
        """Smallest ``k >= start`` with a nonzero value, or None if identically zero."""
        if self.is_zero():
            return None
        # past the exceptional block, tail zeros are the numerator's roots
        limit = max(start, self.k0) + max(self.tail.num.degree, 0) + 1
        for k in range(start, limit + 1):
            v = self(k)
            if v:
                return k, v
        return None

    def render(self) -> str:
        tail = str(self.tail)
        if not self.exceptional:
            return tail
        vals = ", ".join(str(v) for v in self.exceptional)
        return f"k<{self.k0}: [{vals}]; k>={self.k0}: {tail}"

    def to_json(self) -> dict:
        return {
            "k0": self.k0,
            "exceptional": [str(v) for v in self.exceptional],
            "tail": self.tail.to_json(),
        }


def _product(
    outer: PiecewiseBandCoeff, inner: PiecewiseBandCoeff, inner_shift: int
) -> PiecewiseBandCoeff:
    """Coefficient of ``A∘B`` from band ``inner`` of B and band ``outer`` of A."""
    threshold = max(inner.k0, outer.k0 - inner_shift, 0)
    values = []
    for k in range(threshold):
        b = inner(k)
        j = k + inner_shift
        # an explicit zero of B short-circuits; A is never read at an invalid index
        values.append(ZERO if (not b or j < 0) else b * outer(j))
    tail = inner.tail * outer.tail.shift(inner_shift)
    return PiecewiseBandCoeff(values, tail)


class BandedOperator:
    """Finite map from shift ``p`` to a nonzero :class:`PiecewiseBandCoeff`."""

    __slots__ = ("_bands",)

    def __init__(self, bands: Mapping[int, PiecewiseBandCoeff] = None):
        self._bands = {
            int(p): c for p, c in sorted((bands or {}).items()) if not c.is_zero()
        }

    @property
    def bands(self) -> dict[int, PiecewiseBandCoeff]:
        return dict(self._bands)

    def shifts(self) -> list[int]:
        return list(self._bands)

    def band(self, p: int) -> PiecewiseBandCoeff:
        return self._bands.get(p, PiecewiseBandCoeff())

    def apply(self, k: int) -> dict[int, GaussRational]:
        """Image of ``z^k`` as ``{degree: coefficient}``."""
        out = {}
        for p, c in self._bands.items():
            v = c(k)
            if v and k + p >= 0:
                out[k + p] = v
        return out

    def max_positive_shift(self) -> int:
        return max([p for p in self._bands if p > 0], default=0)

    def __eq__(self, other):
        if not isinstance(other, BandedOperator):
            return NotImplemented
        return self._bands == other._bands

    def __hash__(self):
        return hash(tuple(self._bands.items()))

    def __add__(self, other):
        return op_linear(self, other, ONE, ONE)

    def __sub__(self, other):
        return op_linear(self, other, ONE, -ONE)

    def __matmul__(self, other):
        return op_compose(self, other)

    def __repr__(self):
        return f"BandedOperator({self.render()!r})"

    def render(self) -> str:
        if not self._bands:
            return "0"
        return "\n".join(
            f"band {p:+d}: {c.render()}" if p else f"band 0: {c.render()}"
            for p, c in self._bands.items()
        )

    def to_json(self) -> dict:
        return {
            "bands": [
                dict(shift=p, **c.to_json()) for p, c in self._bands.items()
            ]
        }

    @classmethod
    def from_json(cls, data: dict) -> "BandedOperator":
        from .numeric import parse_gauss

        bands = {}
        for entry in data["bands"]:
            bands[entry["shift"]] = PiecewiseBandCoeff(
                [parse_gauss(v) for v in entry["exceptional"]],
                RationalFunc.from_json(entry["tail"]),
            )
        return cls(bands)


def band_from_term(t: QuasiHomogeneousTerm) -> tuple[int, PiecewiseBandCoeff]:
    """Closed-form action of ``c e^{ip theta} r^s`` on the monomial basis.

    ``p >= 0``: ``z^k -> c (2k+2p+2)/(2k+p+s+2) z^{k+p}`` for all k.
    ``p = -P < 0``: zero for ``k < P``, then ``c (2k-2P+2)/(2k-P+s+2) z^{k-P}``.
    """
    if t.c.is_zero():
        raise ZeroCoefficient("quasi-homogeneous term with zero coefficient")
    p, s = t.p, t.s
    tail = RationalFunc.linear_ratio(2, 2 * p + 2, 2, p + s + 2).scale(t.c)
    zeros = [ZERO] * max(0, -p)
    return p, PiecewiseBandCoeff(zeros, tail)


def _sum_bands(pieces: Iterable[tuple[int, PiecewiseBandCoeff]]) -> BandedOperator:
    acc: dict[int, PiecewiseBandCoeff] = {}
    for p, c in pieces:
        acc[p] = acc[p] + c if p in acc else c
    return BandedOperator(acc)


def toeplitz(sym: BiharmonicSymbol) -> BandedOperator:
    return _sum_bands(band_from_term(t) for t in symbol_to_terms(sym))


def toeplitz_via_mellin(sym: BiharmonicSymbol) -> BandedOperator:
    """Same operator, with every tail taken from the Mellin weight formula."""
    by_shift: dict[int, dict[int, GaussRational]] = {}
    for t in symbol_to_terms(sym):
        by_shift.setdefault(t.p, {})[t.s] = t.c
    bands = {}
    for p, radial in by_shift.items():
        tail = band_coeff_via_mellin(p, RadialPoly(radial))
        bands[p] = PiecewiseBandCoeff([ZERO] * max(0, -p), tail)
    return BandedOperator(bands)


def op_linear(
    a: BandedOperator, b: BandedOperator, alpha=ONE, beta=ONE
) -> BandedOperator:
    alpha, beta = GaussRational.coerce(alpha), GaussRational.coerce(beta)
    pieces = [(p, c.scale(alpha)) for p, c in a._bands.items()]
    pieces += [(p, c.scale(beta)) for p, c in b._bands.items()]
    return _sum_bands(pieces)


def op_compose(a: BandedOperator, b: BandedOperator) -> BandedOperator:
    """``a ∘ b``: apply ``b`` first."""
    pieces = []
    for pb, cb in b._bands.items():
        for pa, ca in a._bands.items():
            pieces.append((pa + pb, _product(ca, cb, pb)))
    return _sum_bands(pieces)


def commutator(phi: BiharmonicSymbol, psi: BiharmonicSymbol) -> BandedOperator:
    """``T_phi T_psi - T_psi T_phi``; empty iff the two operators commute."""
    ta, tb = toeplitz(phi), toeplitz(psi)
    return op_linear(op_compose(ta, tb), op_compose(tb, ta), ONE, -ONE)


def op_is_zero(a: BandedOperator) -> bool:
    return not a._bands


def truncate_matrix(a: BandedOperator, K: int) -> list[list[GaussRational]]:
    """``K x K`` section in the monomial basis; entry ``[j][k] = c_{j-k}(k)``."""
    if K < 1:
        raise ValueError("K must be positive")
    rows = [[ZERO] * K for _ in range(K)]
    for p, c in a._bands.items():
        for k in range(max(0, -p), min(K, K - p)):
            rows[k + p][k] = c(k)
    return rows
