"""Exact scalars and univariate rational functions over Q(i).

Scalars are :class:`GaussRational` values built on :class:`fractions.Fraction`.
Rational functions of the integer basis index ``k`` are stored as a complex
numerator ``re + i*im`` over a real monic denominator, with the real
polynomial arithmetic delegated to FLINT's ``fmpq_poly``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import cached_property
from numbers import Rational
from typing import Iterable, Sequence

from flint import fmpq, fmpq_poly

from .errors import ParseError, PoleAtPoint

__all__ = [
    "GaussRational",
    "UniPoly",
    "RationalFunc",
    "format_fraction",
    "parse_gauss",
    "rf_arith",
    "rf_shift",
    "rf_eval",
]


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, fmpq):
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_fraction(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class GaussRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _to_fraction(re))
        object.__setattr__(self, "im", _to_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRational is immutable")

    @classmethod
    def coerce(cls, value) -> "GaussRational":
        if isinstance(value, GaussRational):
            return value
        if isinstance(value, str):
            return parse_gauss(value)
        if isinstance(value, complex):
            raise TypeError("floating-point complex values are not exact")
        return cls(value)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return GaussRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return GaussRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        n = other.abs2()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * other.conjugate()
        return GaussRational(num.re / n, num.im / n)

    def __rtruediv__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return other / self

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return GaussRational(1) / self ** (-n)
        result, base = GaussRational(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus, exact."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return False
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussRational({str(self)!r})"

    def __str__(self):
        re_part, im_part = self.re, self.im
        if im_part == 0:
            return format_fraction(re_part)
        if im_part == 1:
            im_txt = "i"
        elif im_part == -1:
            im_txt = "-i"
        else:
            im_txt = format_fraction(im_part) + "i"
        if re_part == 0:
            return im_txt
        if not im_txt.startswith("-"):
            im_txt = "+" + im_txt
        return format_fraction(re_part) + im_txt


def _maybe(value):
    if isinstance(value, GaussRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussRational(value)
    return NotImplemented


ZERO = GaussRational(0)
ONE = GaussRational(1)
I = GaussRational(0, 1)


_RAT = r"\d+(?:/\d+)?"
_GAUSS_RE = re.compile(
    rf"^(?P<re>[+-]?{_RAT})?(?:(?P<sign>[+-])?(?P<im>{_RAT})?(?P<unit>i))?$"
)


def parse_gauss(text: str) -> GaussRational:
    """Parse a literal such as ``"3/2-1/3i"``, ``"-i"`` or ``"5/7"``.

    The imaginary part binds its rational coefficient, so ``"1/3i"`` is
    one third of ``i``.
    """
    compact = text.strip()
    m = _GAUSS_RE.match(compact)
    if not compact or m is None:
        raise ParseError("not a Gaussian rational literal", text, 0)
    re_txt, sign, im_txt, unit = m.group("re", "sign", "im", "unit")
    if unit is not None and sign is None and im_txt is None and re_txt is not None:
        # "-2/3i": the greedy real group swallowed the imaginary coefficient
        sign = "-" if re_txt.startswith("-") else "+"
        re_txt, im_txt = None, re_txt.lstrip("+-")
    if unit is not None and re_txt is not None and sign is None:
        raise ParseError("missing sign before imaginary part", text, len(re_txt))
    try:
        re_val = Fraction(re_txt) if re_txt else Fraction(0)
        im_val = Fraction(0)
        if unit is not None:
            im_val = Fraction(im_txt) if im_txt else Fraction(1)
    except ZeroDivisionError:
        raise ParseError("zero denominator", text, 0) from None
    if sign == "-":
        im_val = -im_val
    return GaussRational(re_val, im_val)


# ---------------------------------------------------------------------------
# polynomials


def _q(x: Fraction) -> fmpq:
    return fmpq(x.numerator, x.denominator)


def _frac(x: fmpq) -> Fraction:
    return Fraction(int(x.p), int(x.q))


def _real_poly(coeffs: Iterable) -> fmpq_poly:
    return fmpq_poly([_q(_to_fraction(c)) for c in coeffs])


_PZERO = fmpq_poly([])
_PONE = fmpq_poly([1])


class UniPoly:
    """Polynomial in ``k`` with Gaussian-rational coefficients.

    Stored as a pair of real FLINT polynomials; ``coefficients`` gives the
    trimmed list indexed by power.
    """

    __slots__ = ("_re", "_im")

    def __init__(self, coefficients: Sequence = ()):
        cs = [GaussRational.coerce(c) for c in coefficients]
        self._re = _real_poly(c.re for c in cs)
        self._im = _real_poly(c.im for c in cs)

    @classmethod
    def _from_parts(cls, re_part: fmpq_poly, im_part: fmpq_poly) -> "UniPoly":
        obj = cls.__new__(cls)
        obj._re = re_part
        obj._im = im_part
        return obj

    @property
    def coefficients(self) -> list[GaussRational]:
        n = self.degree + 1
        return [
            GaussRational(_frac(self._re[j]), _frac(self._im[j])) for j in range(n)
        ]

    @property
    def degree(self) -> int:
        return max(self._re.degree(), self._im.degree())

    def is_zero(self) -> bool:
        return self.degree < 0

    def __call__(self, k) -> GaussRational:
        x = _q(_to_fraction(k))
        return GaussRational(_frac(self._re(x)), _frac(self._im(x)))

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self._re == other._re and self._im == other._im

    def __hash__(self):
        return hash(tuple(self.coefficients))

    def __repr__(self):
        return f"UniPoly({[str(c) for c in self.coefficients]})"

    def __str__(self):
        return _render_poly(self.coefficients)


def _render_poly(cs: Sequence[GaussRational], var: str = "k") -> str:
    parts = []
    for power in range(len(cs) - 1, -1, -1):
        c = cs[power]
        if c.is_zero():
            continue
        mono = "" if power == 0 else (var if power == 1 else f"{var}^{power}")
        if c.im != 0 and c.re != 0:
            txt = f"({c})" + mono
            sign = "+"
        else:
            sign = "-" if (c.re < 0 or c.im < 0) else "+"
            mag = -c if sign == "-" else c
            if mono and mag == ONE:
                txt = mono
            elif mono and mag.im == 0 and mag.re.denominator != 1:
                txt = f"({mag})" + mono
            else:
                txt = str(mag) + mono
        parts.append((sign, txt))
    if not parts:
        return "0"
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, txt in parts[1:]:
        out += f"{sign}{txt}"
    return out


# ---------------------------------------------------------------------------
# rational functions


def _integer_roots(p: fmpq_poly) -> tuple[int, ...]:
    if p.degree() <= 0:
        return ()
    _, factors = p.factor()
    roots = []
    for f, _mult in factors:
        if f.degree() == 1:
            b, a = f[0], f[1]
            r = -b / a
            if r.q == 1:
                roots.append(int(r.p))
    return tuple(sorted(roots))


class RationalFunc:
    """Reduced rational function ``num(k)/den(k)`` over Q(i).

    The denominator is kept real and monic. Every denominator this package
    builds has only integer roots, and for those the form coincides with the
    fully reduced one over Q(i); in general it is the unique representation
    with minimal real monic denominator, so structural equality is still
    extensional equality.
    """

    __slots__ = ("_nre", "_nim", "_den", "__dict__")

    def __init__(self, num: Sequence = (0,), den: Sequence = (1,)):
        n = num if isinstance(num, UniPoly) else UniPoly(num)
        d = den if isinstance(den, UniPoly) else UniPoly(den)
        if d.is_zero():
            raise ZeroDivisionError("zero denominator polynomial")
        if d._im.degree() >= 0:
            # complex denominator: multiply through by its conjugate
            conj_re, conj_im = d._re, -d._im
            nre = n._re * conj_re - n._im * conj_im
            nim = n._re * conj_im + n._im * conj_re
            dre = d._re * d._re + d._im * d._im
            self._set(nre, nim, dre)
        else:
            self._set(n._re, n._im, d._re)

    def _set(self, nre: fmpq_poly, nim: fmpq_poly, den: fmpq_poly) -> None:
        if nre.degree() < 0 and nim.degree() < 0:
            self._nre, self._nim, self._den = _PZERO, _PZERO, _PONE
            return
        g = den.gcd(nre.gcd(nim))
        if g.degree() > 0:
            nre, nim, den = nre // g, nim // g, den // g
        lead = den[den.degree()]
        if lead != 1:
            inv = 1 / lead
            nre, nim, den = nre * inv, nim * inv, den * inv
        self._nre, self._nim, self._den = nre, nim, den

    @classmethod
    def _raw(cls, nre, nim, den) -> "RationalFunc":
        obj = cls.__new__(cls)
        obj._set(nre, nim, den)
        return obj

    @classmethod
    def constant(cls, c) -> "RationalFunc":
        c = GaussRational.coerce(c)
        return cls._raw(fmpq_poly([_q(c.re)]), fmpq_poly([_q(c.im)]), _PONE)

    @classmethod
    def linear_ratio(cls, a: int, b: int, c: int, d: int) -> "RationalFunc":
        """``(a*k + b) / (c*k + d)`` with integer data."""
        return cls._raw(fmpq_poly([b, a]), _PZERO, fmpq_poly([d, c]))

    # views ------------------------------------------------------------------
    @property
    def num(self) -> UniPoly:
        return UniPoly._from_parts(self._nre, self._nim)

    @property
    def den(self) -> UniPoly:
        return UniPoly._from_parts(self._den, _PZERO)

    def is_zero(self) -> bool:
        return self._nre.degree() < 0 and self._nim.degree() < 0

    @cached_property
    def integer_poles(self) -> tuple[int, ...]:
        return _integer_roots(self._den)

    def has_pole_at_or_above(self, k0: int) -> bool:
        return any(r >= k0 for r in self.integer_poles)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other: "RationalFunc") -> "RationalFunc":
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self._den == other._den:
            return RationalFunc._raw(
                self._nre + other._nre, self._nim + other._nim, self._den
            )
        g = self._den.gcd(other._den)
        fs, fo = other._den // g, self._den // g
        return RationalFunc._raw(
            self._nre * fs + other._nre * fo,
            self._nim * fs + other._nim * fo,
            self._den * fs,
        )

    def __neg__(self) -> "RationalFunc":
        return RationalFunc._raw(-self._nre, -self._nim, self._den)

    def __sub__(self, other: "RationalFunc") -> "RationalFunc":
        return self + (-other)

    def __mul__(self, other) -> "RationalFunc":
        if not isinstance(other, RationalFunc):
            return self.scale(other)
        a, b, c, d = self._nre, self._nim, other._nre, other._nim
        return RationalFunc._raw(a * c - b * d, a * d + b * c, self._den * other._den)

    def scale(self, c) -> "RationalFunc":
        c = GaussRational.coerce(c)
        if c.is_zero():
            return RationalFunc()
        cr, ci = _q(c.re), _q(c.im)
        return RationalFunc._raw(
            self._nre * cr - self._nim * ci, self._nre * ci + self._nim * cr, self._den
        )

    __rmul__ = scale

    def substitute(self, scale: int, offset: int) -> "RationalFunc":
        """Return ``k -> self(scale*k + offset)``."""
        if scale == 1 and offset == 0:
            return self
        lin = fmpq_poly([offset, scale])
        return RationalFunc._raw(self._nre(lin), self._nim(lin), self._den(lin))

    def shift(self, d: int) -> "RationalFunc":
        return self.substitute(1, d)

    def __call__(self, k) -> GaussRational:
        x = _q(_to_fraction(k))
        dv = self._den(x)
        if dv == 0:
            raise PoleAtPoint(f"denominator of {self} vanishes at k={k}")
        return GaussRational(_frac(self._nre(x) / dv), _frac(self._nim(x) / dv))

    def __eq__(self, other):
        if not isinstance(other, RationalFunc):
            return NotImplemented
        return (
            self._den == other._den
            and self._nre == other._nre
            and self._nim == other._nim
        )

    def __hash__(self):
        return hash((str(self._nre), str(self._nim), str(self._den)))

    def __repr__(self):
        return f"RationalFunc({str(self)!r})"

    def __str__(self):
        return self.render()

    def render(self, var: str = "k") -> str:
        num = _render_poly(self.num.coefficients, var)
        if self._den == _PONE:
            return num
        terms = [c for c in self.num.coefficients if c]
        if len(terms) > 1 or (terms[0].re and terms[0].im):
            num = f"({num})"
        return f"{num}/({_render_poly(self.den.coefficients, var)})"

    def to_json(self) -> dict:
        return {
            "num": [str(c) for c in self.num.coefficients],
            "den": [str(c) for c in self.den.coefficients],
        }

    @classmethod
    def from_json(cls, data: dict) -> "RationalFunc":
        return cls(
            [parse_gauss(c) for c in data["num"]] or [0],
            [parse_gauss(c) for c in data["den"]],
        )


def rf_arith(lhs: RationalFunc, rhs: RationalFunc, kind: str) -> RationalFunc:
    if kind == "add":
        return lhs + rhs
    if kind == "sub":
        return lhs - rhs
    if kind == "mul":
        return lhs * rhs
    raise ValueError(f"unknown kind {kind!r}; expected add, sub or mul")


def rf_shift(r: RationalFunc, d: int) -> RationalFunc:
    return r.shift(d)


def rf_eval(r: RationalFunc, k: int) -> GaussRational:
    return r(k)
