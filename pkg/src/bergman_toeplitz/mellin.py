"""Mellin transforms of radial polynomials and the unified band weight.

For ``phi(r) = sum c_s r^s`` the transform over ``[0, 1]`` is the closed
form ``sum c_s / (z + s)``.  The weight by which ``e^{ip theta} phi(r)``
maps ``z^k`` to ``z^{k+p}`` is ``(2k + 2p + 2) * phi_hat(2k + p + 2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import EmptySymbol, NotInClass, ParseError
from .numeric import GaussRational, RationalFunc

__all__ = ["RadialPoly", "mellin_hat", "band_coeff_via_mellin", "parse_radial"]


@dataclass(frozen=True)
class RadialPoly:
    """``sum coefficients[s] * r^s``; zero coefficients are never stored."""

    coefficients: tuple[tuple[int, GaussRational], ...]

    def __init__(self, coefficients: Mapping[int, object] = None):
        cleaned = {}
        for s, c in (coefficients or {}).items():
            if s < 0:
                raise ValueError("radial degrees must be nonnegative")
            c = GaussRational.coerce(c)
            if c:
                cleaned[int(s)] = c
        object.__setattr__(self, "coefficients", tuple(sorted(cleaned.items())))

    @classmethod
    def monomial(cls, s: int, c=1) -> "RadialPoly":
        return cls({s: c})

    def as_dict(self) -> dict[int, GaussRational]:
        return dict(self.coefficients)

    def is_empty(self) -> bool:
        return not self.coefficients

    def __str__(self):
        if not self.coefficients:
            return "0"
        out = []
        for s, c in self.coefficients:
            mono = "" if s == 0 else ("r" if s == 1 else f"r^{s}")
            coef = f"({c})" if (c.re and c.im) else str(c)
            out.append(coef if not mono else (mono if coef == "1" else f"{coef}*{mono}"))
        return " + ".join(out)


def mellin_hat(phi: RadialPoly) -> RationalFunc:
    """Transform as a rational function of the transform variable."""
    if phi.is_empty():
        raise EmptySymbol("Mellin transform of the empty radial polynomial")
    total = RationalFunc()
    for s, c in phi.coefficients:
        total = total + RationalFunc.linear_ratio(0, 1, 1, s).scale(c)
    assert all(pole <= 0 for pole in total.integer_poles)
    return total


def band_coeff_via_mellin(p: int, phi: RadialPoly) -> RationalFunc:
    """``k -> (2k + 2p + 2) * mellin_hat(phi)(2k + p + 2)``.

    Covers both the analytic (p >= 0) and anti-analytic (p < 0) shifts; the
    zero action for ``k < -p`` is left to the caller.
    """
    weight = mellin_hat(phi).substitute(2, p + 2) * RationalFunc.linear_ratio(
        2, 2 * p + 2, 0, 1
    )
    assert not weight.has_pole_at_or_above(max(0, -p))
    return weight


def parse_radial(text: str) -> RadialPoly:
    """Parse a polynomial in ``r`` such as ``"r^2 + 2"`` or ``"(1-i)/2*r^3"``."""
    from .symbol import _Parser

    if "z" in text:
        raise ParseError("radial polynomials are written in r", text, text.index("z"))
    poly = _Parser(text.replace("r", "z")).parse()
    if any(b for (_, b) in poly):
        raise NotInClass("radial polynomial may not contain conj(...)")
    return RadialPoly({a: c for (a, _), c in poly.items()})
