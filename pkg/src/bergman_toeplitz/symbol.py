"""Polynomial biharmonic symbols in Almansi form.

A symbol is stored as four coefficient lists and denotes

    Phi(z) = sum a1[n] z^n + sum c1[n] conj(z)^n
             + |z|^2 (sum a2[n] z^n + sum c2[n] conj(z)^n).

The anti-analytic lists hold the actual multipliers of ``conj(z)^n``.
Canonical form folds ``c1[0]`` into ``a1[0]`` and ``c2[0]`` into ``a2[0]``
(both pairs multiply the same function) and trims trailing zeros.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .errors import NotInClass, ParseError
from .numeric import ONE, ZERO, GaussRational, parse_gauss

__all__ = [
    "COMPONENTS",
    "BiharmonicSymbol",
    "QuasiHomogeneousTerm",
    "NondegeneracyReport",
    "parse_symbol",
    "render_symbol",
    "symbol_from_json",
    "symbol_to_json",
    "load_symbol",
    "symbol_to_terms",
    "conjugate_symbol",
    "symbol_affine",
    "affine_relation",
    "nondegeneracy_report",
    "symbol_report",
    "symbol_eval",
]

COMPONENTS = ("a1", "c1", "a2", "c2")


def _trim(values) -> tuple[GaussRational, ...]:
    out = [GaussRational.coerce(v) for v in values]
    while out and out[-1].is_zero():
        out.pop()
    return tuple(out)


def _get(seq: Sequence[GaussRational], n: int) -> GaussRational:
    return seq[n] if 0 <= n < len(seq) else ZERO


def _fold(lead: Sequence, tail: Sequence) -> tuple[list, list]:
    lead, tail = list(lead), list(tail)
    if tail and not GaussRational.coerce(tail[0]).is_zero():
        base = GaussRational.coerce(lead[0]) if lead else ZERO
        lead = [base + GaussRational.coerce(tail[0])] + lead[1:]
        tail = [ZERO] + tail[1:]
    return lead, tail


@dataclass(frozen=True)
class BiharmonicSymbol:
    a1: tuple[GaussRational, ...] = ()
    c1: tuple[GaussRational, ...] = ()
    a2: tuple[GaussRational, ...] = ()
    c2: tuple[GaussRational, ...] = ()

    def __post_init__(self):
        a1, c1 = _fold(self.a1, self.c1)
        a2, c2 = _fold(self.a2, self.c2)
        for name, values in zip(COMPONENTS, (a1, c1, a2, c2)):
            object.__setattr__(self, name, _trim(values))

    @classmethod
    def constant(cls, value) -> "BiharmonicSymbol":
        return cls(a1=(GaussRational.coerce(value),))

    def component(self, name: str) -> tuple[GaussRational, ...]:
        return getattr(self, name)

    def degree(self, name: str) -> int:
        """Degree of one component; -1 for the zero polynomial."""
        return len(getattr(self, name)) - 1

    @property
    def degrees(self) -> tuple[int, int, int, int]:
        return tuple(self.degree(n) for n in COMPONENTS)

    @property
    def constant_term(self) -> GaussRational:
        return _get(self.a1, 0)

    def is_zero(self) -> bool:
        return not (self.a1 or self.c1 or self.a2 or self.c2)

    def is_constant(self) -> bool:
        return len(self.a1) <= 1 and not (self.c1 or self.a2 or self.c2)

    def nonconstant_items(self) -> Iterator[tuple[str, int, GaussRational]]:
        """(component, index, value) over every slot except ``a1[0]``."""
        for name in COMPONENTS:
            start = 1 if name in ("a1", "c1") else 0
            values = getattr(self, name)
            for n in range(start, len(values)):
                yield name, n, values[n]

    def _combine(self, other: "BiharmonicSymbol", alpha, beta) -> "BiharmonicSymbol":
        lists = []
        for name in COMPONENTS:
            x, y = getattr(self, name), getattr(other, name)
            size = max(len(x), len(y))
            lists.append(
                [alpha * _get(x, n) + beta * _get(y, n) for n in range(size)]
            )
        return BiharmonicSymbol(*lists)

    def __add__(self, other):
        if not isinstance(other, BiharmonicSymbol):
            other = BiharmonicSymbol.constant(other)
        return self._combine(other, ONE, ONE)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, BiharmonicSymbol):
            other = BiharmonicSymbol.constant(other)
        return self._combine(other, ONE, -ONE)

    def __neg__(self):
        return self.scale(-ONE)

    def scale(self, c) -> "BiharmonicSymbol":
        c = GaussRational.coerce(c)
        return BiharmonicSymbol(
            *[[c * v for v in getattr(self, name)] for name in COMPONENTS]
        )

    def __str__(self):
        return render_symbol(self)


@dataclass(frozen=True)
class QuasiHomogeneousTerm:
    """The function ``c * e^{i p theta} r^s``."""

    p: int
    s: int
    c: GaussRational

    def __post_init__(self):
        if self.s < 0:
            raise ValueError("radial degree must be nonnegative")
        object.__setattr__(self, "c", GaussRational.coerce(self.c))


@dataclass(frozen=True)
class NondegeneracyReport:
    a1_nonzero: bool
    c1_nonzero: bool
    a2_nonzero: bool
    c2_nonzero: bool
    degrees: dict = field(default_factory=dict)
    leading: dict = field(default_factory=dict)

    @property
    def hypotheses_met(self) -> bool:
        return self.a1_nonzero and self.c1_nonzero and self.a2_nonzero and self.c2_nonzero

    def to_json(self) -> dict:
        return {
            "a1_nonzero": self.a1_nonzero,
            "c1_nonzero": self.c1_nonzero,
            "a2_nonzero": self.a2_nonzero,
            "c2_nonzero": self.c2_nonzero,
            "degrees": dict(self.degrees),
            "leading": {k: (None if v is None else str(v)) for k, v in self.leading.items()},
            "hypotheses_met": self.hypotheses_met,
        }


# ---------------------------------------------------------------------------
# expression parser
#
# Polynomials in (z, conj z) are dicts {(a, b): coefficient}.

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:/\d+)?i?)
  | (?P<conj>conj)
  | (?P<name>[A-Za-z_]+)
  | (?P<op>[-+*/^()|])
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos = 0
    while pos < len(text):
        if toks and toks[-1].kind == "^":
            m = re.compile(r"\s*(\d+)").match(text, pos)
            if m is None:
                raise ParseError("expected integer exponent", text, pos)
            toks.append(_Tok("int", m.group(1), m.start(1)))
            pos = m.end()
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        word = m.group(kind)
        if kind == "name":
            if word == "z":
                kind = "z"
            elif word == "i":
                kind = "i"
            else:
                raise ParseError(f"unknown name {word!r}", text, pos)
        elif kind == "op":
            kind = word
        if kind != "ws":
            toks.append(_Tok(kind, word, pos))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


def _padd(x: dict, y: dict, sign: int = 1) -> dict:
    out = dict(x)
    for key, v in y.items():
        out[key] = out.get(key, ZERO) + (v if sign > 0 else -v)
    return {k: v for k, v in out.items() if not v.is_zero()}


def _pmul(x: dict, y: dict) -> dict:
    out: dict = {}
    for (a1, b1), u in x.items():
        for (a2, b2), v in y.items():
            key = (a1 + a2, b1 + b2)
            out[key] = out.get(key, ZERO) + u * v
    return {k: v for k, v in out.items() if not v.is_zero()}


def _pconj(x: dict) -> dict:
    return {(b, a): v.conjugate() for (a, b), v in x.items()}


def _ppow(x: dict, n: int) -> dict:
    out = {(0, 0): ONE}
    for _ in range(n):
        out = _pmul(out, x)
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.abs_depth = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, message: str, tok: Optional[_Tok] = None):
        tok = tok or self.tok
        shown = tok.text if tok.kind != "end" else "end of input"
        raise ParseError(f"{message} (got {shown!r})", self.text, tok.pos)

    def expect(self, kind: str) -> _Tok:
        if self.tok.kind != kind:
            self.error(f"expected {kind!r}")
        tok = self.tok
        self.i += 1
        return tok

    def parse(self) -> dict:
        if self.tok.kind == "end":
            self.error("empty expression")
        poly = self.expr()
        if self.tok.kind != "end":
            self.error("unexpected token")
        return poly

    def expr(self) -> dict:
        poly = self.term()
        while self.tok.kind in ("+", "-"):
            sign = 1 if self.tok.kind == "+" else -1
            self.i += 1
            poly = _padd(poly, self.term(), sign)
        return poly

    _ATOM_START = ("num", "i", "z", "conj", "(")

    def term(self) -> dict:
        poly = self.unary()
        while True:
            kind = self.tok.kind
            if kind == "*":
                self.i += 1
                poly = _pmul(poly, self.unary())
            elif kind == "/":
                tok = self.tok
                self.i += 1
                divisor = self.unary()
                if set(divisor) - {(0, 0)} or not divisor:
                    self.error("division only by a nonzero constant", tok)
                inv = ONE / divisor[(0, 0)]
                poly = {k: v * inv for k, v in poly.items()}
            elif kind in self._ATOM_START or (kind == "|" and not self.abs_depth):
                # inside |...| a bar always closes the group
                poly = _pmul(poly, self.power())
            else:
                return poly

    def unary(self) -> dict:
        if self.tok.kind == "-":
            self.i += 1
            return {k: -v for k, v in self.unary().items()}
        if self.tok.kind == "+":
            self.i += 1
            return self.unary()
        return self.power()

    def power(self) -> dict:
        if self.tok.kind == "|":
            open_tok = self.expect("|")
            self.abs_depth += 1
            inner = self.expr()
            self.abs_depth -= 1
            self.expect("|")
            if self.tok.kind != "^":
                self.error("|...| must be raised to an even power", open_tok)
            self.i += 1
            n = int(self.expect("int").text)
            if n % 2:
                self.error("|...| must be raised to an even power", open_tok)
            return _ppow(_pmul(inner, _pconj(inner)), n // 2)
        base = self.atom()
        if self.tok.kind == "^":
            self.i += 1
            base = _ppow(base, int(self.expect("int").text))
        return base

    def atom(self) -> dict:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            try:
                return _const(parse_gauss(tok.text))
            except ParseError:
                self.error("bad numeric literal", tok)
        if tok.kind == "i":
            self.i += 1
            return _const(GaussRational(0, 1))
        if tok.kind == "z":
            self.i += 1
            return {(1, 0): ONE}
        if tok.kind == "conj":
            self.i += 1
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return _pconj(inner)
        if tok.kind == "(":
            self.i += 1
            inner = self.expr()
            self.expect(")")
            return inner
        self.error("expected a number, i, z, conj(...) or parenthesis")


def _const(c: GaussRational) -> dict:
    return {} if c.is_zero() else {(0, 0): c}


def _from_monomials(poly: dict, text: str = "") -> BiharmonicSymbol:
    lists = {name: {} for name in COMPONENTS}
    for (a, b), c in poly.items():
        m = min(a, b)
        if m >= 2:
            raise NotInClass(
                f"monomial z^{a}*conj(z)^{b} is outside the biharmonic class"
                + (f" in {text!r}" if text else "")
            )
        ra, rb = a - m, b - m
        prefix = "1" if m == 0 else "2"
        if rb == 0:
            slot, n = "a" + prefix, ra
        else:
            slot, n = "c" + prefix, rb
        lists[slot][n] = lists[slot].get(n, ZERO) + c
    built = []
    for name in COMPONENTS:
        d = lists[name]
        size = max(d) + 1 if d else 0
        built.append([d.get(n, ZERO) for n in range(size)])
    return BiharmonicSymbol(*built)


def parse_symbol(text: str) -> BiharmonicSymbol:
    """Parse an expression such as ``"z^2 + 3*conj(z) + |z|^2*(1 - i*conj(z)^3)"``.

    Numeric literals bind a trailing ``i`` and a ``/`` between digits, so
    ``1/3i`` is the single scalar ``i/3``.
    """
    return _from_monomials(_Parser(text).parse(), text)


def _render_coeff_term(c: GaussRational, mono: str) -> tuple[str, str]:
    if c.re != 0 and c.im != 0:
        body = f"({c})"
        return "+", body + ("*" + mono if mono else "")
    sign = "-" if (c.re < 0 or c.im < 0) else "+"
    mag = -c if sign == "-" else c
    if not mono:
        return sign, str(mag)
    if mag == ONE:
        return sign, mono
    return sign, f"{mag}*{mono}"


def _join(parts: list[tuple[str, str]]) -> str:
    if not parts:
        return "0"
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _harmonic_parts(analytic, anti) -> list[tuple[str, str]]:
    parts = []
    for n, c in enumerate(analytic):
        if c:
            mono = "" if n == 0 else ("z" if n == 1 else f"z^{n}")
            parts.append(_render_coeff_term(c, mono))
    for n, c in enumerate(anti):
        if c and n > 0:
            mono = "conj(z)" if n == 1 else f"conj(z)^{n}"
            parts.append(_render_coeff_term(c, mono))
    return parts


def render_symbol(sym: BiharmonicSymbol) -> str:
    """Canonical expression text; ``parse_symbol`` inverts it exactly."""
    parts = _harmonic_parts(sym.a1, sym.c1)
    inner = _harmonic_parts(sym.a2, sym.c2)
    if len(inner) == 1:
        # a single term distributes: c*z^n*|z|^2 needs no parentheses
        sign, body = inner[0]
        parts.append((sign, "|z|^2" if body == "1" else f"{body}*|z|^2"))
    elif inner:
        parts.append(("+", f"|z|^2*({_join(inner)})"))
    return _join(parts)


# ---------------------------------------------------------------------------
# JSON


def symbol_to_json(sym: BiharmonicSymbol) -> dict:
    return {name: [str(c) for c in getattr(sym, name)] for name in COMPONENTS}


def symbol_from_json(data) -> BiharmonicSymbol:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", data, exc.pos) from None
    if not isinstance(data, dict):
        raise ParseError("symbol JSON must be an object")
    unknown = set(data) - set(COMPONENTS) - {"expr"}
    if unknown:
        raise ParseError(f"unknown symbol keys: {sorted(unknown)}")
    if "expr" in data:
        if set(data) & set(COMPONENTS):
            raise ParseError('"expr" is mutually exclusive with coefficient lists')
        if not isinstance(data["expr"], str):
            raise ParseError('"expr" must be a string')
        return parse_symbol(data["expr"])
    lists = []
    for name in COMPONENTS:
        values = data.get(name, [])
        if not isinstance(values, list) or not all(isinstance(v, str) for v in values):
            raise ParseError(f'"{name}" must be a list of complex-rational strings')
        lists.append([parse_gauss(v) for v in values])
    return BiharmonicSymbol(*lists)


def load_symbol(source: str) -> BiharmonicSymbol:
    """Load from ``"expr:<expression>"`` or a path to a UTF-8 JSON file."""
    if source.startswith("expr:"):
        return parse_symbol(source[len("expr:"):])
    try:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read symbol file {source!r}: {exc.strerror}") from None
    return symbol_from_json(text)


# ---------------------------------------------------------------------------
# operations


def symbol_to_terms(sym: BiharmonicSymbol) -> list[QuasiHomogeneousTerm]:
    acc: dict[tuple[int, int], GaussRational] = {}

    def put(p, s, c):
        if c:
            acc[(p, s)] = acc.get((p, s), ZERO) + c

    for n, c in enumerate(sym.a1):
        put(n, n, c)
    for n, c in enumerate(sym.c1):
        put(-n, n, c)
    for n, c in enumerate(sym.a2):
        put(n, n + 2, c)
    for n, c in enumerate(sym.c2):
        put(-n, n + 2, c)
    return [
        QuasiHomogeneousTerm(p, s, c)
        for (p, s), c in sorted(acc.items())
        if not c.is_zero()
    ]


def conjugate_symbol(sym: BiharmonicSymbol) -> BiharmonicSymbol:
    cj = lambda xs: [x.conjugate() for x in xs]  # noqa: E731
    return BiharmonicSymbol(cj(sym.c1), cj(sym.a1), cj(sym.c2), cj(sym.a2))


def symbol_affine(base: BiharmonicSymbol, c1, c2) -> BiharmonicSymbol:
    """``c1 * base + c2``."""
    return base.scale(c1) + BiharmonicSymbol.constant(c2)


def affine_relation(
    phi: BiharmonicSymbol, psi: BiharmonicSymbol
) -> Optional[tuple[GaussRational, GaussRational]]:
    """Constants ``(C1, C2)`` with ``phi == C1*psi + C2``, or ``None``.

    For constant ``psi`` the witness is ``(0, phi's constant)`` when ``phi``
    is also constant.
    """
    if psi.is_constant():
        if phi.is_constant():
            return ZERO, phi.constant_term
        return None
    name, n, pivot = next(item for item in psi.nonconstant_items() if item[2])
    ratio = _get(phi.component(name), n) / pivot
    for comp in COMPONENTS:
        x, y = phi.component(comp), psi.component(comp)
        start = 1 if comp in ("a1", "c1") else 0
        for idx in range(start, max(len(x), len(y))):
            if _get(x, idx) != ratio * _get(y, idx):
                return None
    return ratio, phi.constant_term - ratio * psi.constant_term


def symbol_report(sym: BiharmonicSymbol) -> NondegeneracyReport:
    flags = {name: bool(getattr(sym, name)) for name in COMPONENTS}
    return NondegeneracyReport(
        a1_nonzero=flags["a1"],
        c1_nonzero=flags["c1"],
        a2_nonzero=flags["a2"],
        c2_nonzero=flags["c2"],
        degrees={name: sym.degree(name) for name in COMPONENTS},
        leading={
            name: (getattr(sym, name)[-1] if getattr(sym, name) else None)
            for name in COMPONENTS
        },
    )


def nondegeneracy_report(
    phi: BiharmonicSymbol, psi: BiharmonicSymbol
) -> tuple[NondegeneracyReport, NondegeneracyReport]:
    return symbol_report(phi), symbol_report(psi)


def symbol_eval(sym: BiharmonicSymbol, z) -> GaussRational:
    z = GaussRational.coerce(z)
    zb = z.conjugate()

    def horner(cs, x):
        acc = ZERO
        for c in reversed(cs):
            acc = acc * x + c
        return acc

    r2 = GaussRational(z.abs2())
    return (
        horner(sym.a1, z)
        + horner(sym.c1, zb)
        + r2 * (horner(sym.a2, z) + horner(sym.c2, zb))
    )
