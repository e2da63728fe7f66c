"""Command-line front end.

Exit status: 0 decided (either way), 1 self-test failure, 2 input error,
3 internal inconsistency between decision routes.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .calculus import commutator, toeplitz, truncate_matrix
from .decide import decide_commute, decide_normal
from .errors import InternalInconsistency, NotInClass, ParseError, ToeplitzError
from .harness import run_selftest
from .mellin import band_coeff_via_mellin, mellin_hat, parse_radial
from .numeric import parse_gauss
from .oracle import oracle_matrix
from .symbol import load_symbol, symbol_to_json

COMMANDS = ("check-commute", "check-normal", "commutator", "matrix", "mellin", "selftest")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INCONSISTENT = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    a: Optional[str] = None
    b: Optional[str] = None
    K: Optional[int] = None
    format: str = "text"
    seed: int = 0
    trials: int = 50
    max_degree: int = 3
    engine: str = "bands"
    radial: Optional[str] = None
    at: Optional[str] = None
    shift: Optional[int] = None
    verbose: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.K is not None and self.K < 1:
            raise ValueError("K must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.format not in ("text", "json"):
            raise ValueError("format must be text or json")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _require(cfg: RunConfig, *names: str) -> None:
    for name in names:
        if getattr(cfg, name) is None:
            raise ParseError(f"{cfg.command} requires --{name}")


def _check_commute(cfg: RunConfig) -> tuple[int, str]:
    _require(cfg, "a", "b")
    phi, psi = load_symbol(cfg.a), load_symbol(cfg.b)
    verdict = decide_commute(phi, psi)
    if cfg.format == "json":
        out = verdict.to_json()
        out["symbols"] = {"a": symbol_to_json(phi), "b": symbol_to_json(psi)}
        return EXIT_OK, _dump(out)
    lines = [
        f"a: {phi}",
        f"b: {psi}",
        f"commute: {str(verdict.commute).lower()}",
        "relation: "
        + ("none" if verdict.relation is None
           else f"a = ({verdict.relation[0]})*b + ({verdict.relation[1]})"),
        f"hypotheses_met: {str(verdict.hypotheses_met).lower()}",
        f"consistent: {str(verdict.consistent).lower()}",
    ]
    if verdict.witness:
        w = verdict.witness
        band = f"{w['shift']:+d}" if w["shift"] else "0"
        lines.append(f"witness: band {band} at k={w['k']}: {w['value']}")
    return EXIT_OK, "\n".join(lines) + "\n"


def _check_normal(cfg: RunConfig) -> tuple[int, str]:
    _require(cfg, "a")
    phi = load_symbol(cfg.a)
    verdict = decide_normal(phi)
    if cfg.format == "json":
        out = verdict.to_json(verbose=cfg.verbose)
        out["symbol"] = symbol_to_json(phi)
        return EXIT_OK, _dump(out)
    lines = [
        f"a: {phi}",
        f"normal: {str(verdict.normal).lower()}",
        f"classification: {verdict.classification}",
    ]
    if verdict.relation is not None:
        c1, c2 = verdict.relation
        lines.append(f"relation: a = ({c1})*conj(a) + ({c2})")
    if verdict.line is not None:
        eqs = verdict.equations if cfg.verbose else (verdict.line,)
        lines.extend(f"line: {eq}" for eq in eqs)
    return EXIT_OK, "\n".join(lines) + "\n"


def _commutator(cfg: RunConfig) -> tuple[int, str]:
    _require(cfg, "a", "b")
    op = commutator(load_symbol(cfg.a), load_symbol(cfg.b))
    if cfg.format == "json":
        return EXIT_OK, _dump(op.to_json())
    return EXIT_OK, op.render() + "\n"


def _matrix(cfg: RunConfig) -> tuple[int, str]:
    _require(cfg, "a")
    sym, K = load_symbol(cfg.a), cfg.K or 8
    if cfg.engine == "oracle":
        rows = oracle_matrix(sym, K).entries
    elif cfg.engine == "bands":
        rows = truncate_matrix(toeplitz(sym), K)
    else:
        raise ParseError(f"unknown engine {cfg.engine!r}")
    text_rows = [[str(v) for v in row] for row in rows]
    if cfg.format == "json":
        return EXIT_OK, _dump(text_rows)
    width = max(len(v) for row in text_rows for v in row)
    return EXIT_OK, "\n".join(" ".join(v.rjust(width) for v in row) for row in text_rows) + "\n"


def _mellin(cfg: RunConfig) -> tuple[int, str]:
    _require(cfg, "radial")
    phi = parse_radial(cfg.radial)
    hat = mellin_hat(phi)
    out = {"radial": str(phi), "mellin": hat.render("z")}
    if cfg.at is not None:
        point = parse_gauss(cfg.at)
        if point.im:
            raise ParseError("evaluation point must be a rational number", cfg.at, 0)
        out["value"] = str(hat(point.re))
    if cfg.shift is not None:
        out["band"] = str(band_coeff_via_mellin(cfg.shift, phi))
    if cfg.format == "json":
        return EXIT_OK, _dump(out)
    lines = [f"phi(r) = {out['radial']}", f"mellin(z) = {out['mellin']}"]
    if "value" in out:
        lines.append(f"mellin({cfg.at}) = {out['value']}")
    if "band" in out:
        lines.append(f"band {cfg.shift:+d} weight(k) = {out['band']}")
    return EXIT_OK, "\n".join(lines) + "\n"


def _selftest(cfg: RunConfig) -> tuple[int, str]:
    ok, report = run_selftest(cfg.seed, cfg.trials, cfg.max_degree, cfg.K or 24)
    return (EXIT_OK if ok else EXIT_FAIL), report


_DISPATCH = {
    "check-commute": _check_commute,
    "check-normal": _check_normal,
    "commutator": _commutator,
    "matrix": _matrix,
    "mellin": _mellin,
    "selftest": _selftest,
}


def run(config: RunConfig) -> tuple[int, str, str]:
    """Execute one command; returns ``(exit status, stdout text, stderr text)``."""
    try:
        status, out = _DISPATCH[config.command](config)
        return status, out, ""
    except InternalInconsistency as exc:
        return EXIT_INCONSISTENT, "", f"internal inconsistency: {exc}\n"
    except (ParseError, NotInClass) as exc:
        return EXIT_INPUT, "", f"input error: {exc}\n"
    except ToeplitzError as exc:
        return EXIT_INPUT, "", f"error: {exc}\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bergman-toeplitz",
        description="Exact Toeplitz-operator calculus for polynomial biharmonic symbols.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sym_help = 'symbol: JSON file path or inline "expr:<expression>"'

    def common(p):
        p.add_argument("--json", action="store_true", help="emit JSON")

    p = sub.add_parser("check-commute", help="decide whether T_a and T_b commute")
    p.add_argument("--a", required=True, help=sym_help)
    p.add_argument("--b", required=True, help=sym_help)
    common(p)

    p = sub.add_parser("check-normal", help="decide whether T_a is normal")
    p.add_argument("--a", required=True, help=sym_help)
    p.add_argument("--verbose", action="store_true", help="emit both line equations")
    common(p)

    p = sub.add_parser("commutator", help="print the exact commutator band form")
    p.add_argument("--a", required=True, help=sym_help)
    p.add_argument("--b", required=True, help=sym_help)
    common(p)

    p = sub.add_parser("matrix", help="print the K x K section in the monomial basis")
    p.add_argument("--a", required=True, help=sym_help)
    p.add_argument("--k", dest="K", type=int, default=8)
    p.add_argument("--engine", choices=("bands", "oracle"), default="bands")
    common(p)

    p = sub.add_parser("mellin", help="Mellin transform of a radial polynomial")
    p.add_argument("--phi", dest="radial", required=True, help='polynomial in r, e.g. "r^2 + 2"')
    p.add_argument("--at", help="rational evaluation point")
    p.add_argument("--shift", type=int, help="also print the band weight for this shift")
    common(p)

    p = sub.add_parser("selftest", help="run the seeded randomized suites")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--max-degree", dest="max_degree", type=int, default=3)
    p.add_argument("--k", dest="K", type=int, default=24)
    p.add_argument("--seed", type=int, default=0)
    return parser


def config_from_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    kwargs = {k: v for k, v in vars(ns).items() if k not in ("json",)}
    kwargs["format"] = "json" if getattr(ns, "json", False) else "text"
    return RunConfig(**kwargs)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cfg = config_from_args(argv)
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    status, out, err = run(cfg)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return status


if __name__ == "__main__":
    sys.exit(main())
