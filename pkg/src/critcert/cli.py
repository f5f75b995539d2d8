"""Command-line interface: ``critcert <subcommand> --poly ... --vars ...``.

Exit status: 0 on success, 1 on usage or input errors, 2 when certification
fails (the pipeline could not establish a verdict).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from typing import Sequence

from .certify import (
    CertificationError,
    NotCriticalPointError,
    classify,
    faithful_radius,
    normalize_input,
)
from .groebner import DimensionError, GroebnerError
from .linalg import ModularFailure
from .oracle import oracle_verdict, sample_extrema
from .parser import ParseError, infer_variables, parse_point, parse_polynomial, parse_rational
from .plot import tangency_svg
from .realroots import RetryBudgetExhausted
from .report import certificate_document, dumps, rational_doc
from .tangency import CoordinateChangeError, IsolationError, gamma_generators, isolation_radius

__all__ = ["main", "build_parser"]

EXIT_OK, EXIT_USAGE, EXIT_CERT = 0, 1, 2

_CERT_ERRORS = (
    CertificationError,
    IsolationError,
    CoordinateChangeError,
    RetryBudgetExhausted,
    DimensionError,
    GroebnerError,
    ModularFailure,
)


class UsageError(Exception):
    pass


class _ArgParser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with status 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(q) -> str:
    q = Fraction(q)
    exact = str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
    return f"{exact} (~{float(q):.12g})"


def _fmt_interval(iv) -> str:
    if iv.exact:
        return f"[{iv.lo}] (exact)"
    return f"[{iv.lo}, {iv.hi}] (~[{float(iv.lo):.10g}, {float(iv.hi):.10g}])"


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--poly", required=True, help="polynomial, e.g. 'x1^2 + (1 - x1)*x2^4'")
    p.add_argument("--vars", help="comma-separated variable order (default: names in the text)")
    p.add_argument("--point", help="critical point as comma-separated rationals (default: origin)")
    p.add_argument("--seed", type=int, default=0, help="random seed (CRITCERT_SEED overrides)")
    p.add_argument("--refine-bits", type=int, default=40, help="interval precision in bits")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", help="output path for JSON or SVG")


def _radius_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--iso-radius", help="known isolation radius (rational)")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgParser(prog="critcert", description="Certified classification of degenerate critical points.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgParser)

    p = sub.add_parser("classify", help="decide local minimizer / maximizer / saddle point")
    _common(p)
    _radius_flags(p)
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--test-radius", help="sphere radius r for the type step (must be below R)")
    grp.add_argument("--test-radius-sq", help="squared sphere radius r^2 for the type step")
    p.add_argument("--no-fast-path", action="store_true", help="skip the nondegenerate Hessian test")
    p.add_argument("--no-factor-reduction", action="store_true", help="skip squarefree factor reductions")

    p = sub.add_parser("faithful-radius", help="radius R below which every sphere is faithful")
    _common(p)
    _radius_flags(p)

    p = sub.add_parser("isolation-radius", help="radius isolating the critical point")
    _common(p)

    p = sub.add_parser("tangency", help="print the tangency generators gamma_ij")
    _common(p)

    p = sub.add_parser("oracle", help="exact sampling of f on a ball (test oracle)")
    _common(p)
    p.add_argument("--radius", required=True, help="ball radius (rational)")
    p.add_argument("--density", type=int, default=8, help="grid points per axis scale")

    p = sub.add_parser("plot", help="SVG of the tangency curve and the faithful circle (two variables)")
    _common(p)
    _radius_flags(p)
    p.add_argument("--radius", help="circle radius (default: computed faithful radius)")
    p.add_argument("--viewport", help="half-width of the square viewport (default 1.2 R)")
    return parser


def _load(args) -> tuple:
    names = [v.strip() for v in args.vars.split(",")] if args.vars else infer_variables(args.poly)
    if not names or any(not v for v in names):
        raise UsageError("no variables declared")
    f = parse_polynomial(args.poly, names)
    point = parse_point(args.point, len(names)) if args.point else None
    return f, names, point


def _seed(args) -> int:
    env = os.environ.get("CRITCERT_SEED")
    if env is not None and env.strip():
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"CRITCERT_SEED is not an integer: {env!r}") from None
    return args.seed


def _emit(args, text: str, doc: dict | None) -> None:
    if args.format == "json" and doc is not None:
        payload = dumps(doc)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(payload + "\n")
            print(text)
        else:
            print(payload)
    else:
        print(text)


def _opt_rational(s):
    return None if s is None else parse_rational(s)


def _cmd_classify(args) -> int:
    f, names, point = _load(args)
    seed = _seed(args)
    cert = classify(
        f,
        R_iso=_opt_rational(args.iso_radius),
        seed=seed,
        refine_bits=args.refine_bits,
        point=point,
        test_radius=_opt_rational(args.test_radius),
        test_radius_sq=_opt_rational(args.test_radius_sq),
        fast_path=not args.no_fast_path,
        factor_reduction=not args.no_factor_reduction,
    )
    lines = [f"verdict: {cert.verdict}", f"path: {cert.path}"]
    h = cert.hessian
    if h is not None:
        lines.append(
            f"hessian: rank {h.rank} of {h.size}, signature (+{h.positive}, -{h.negative}), "
            f"degenerate={'true' if h.degenerate else 'false'}"
        )
    if cert.preprocessing is not None and cert.preprocessing.reduced:
        lines.append(f"core after factor reduction: {cert.preprocessing.core}")
    if cert.isolation_radius is not None:
        lines.append(f"isolation radius: {_fmt(cert.isolation_radius)} [{cert.isolation_method}]")
    if cert.coordinate_change is not None:
        lines.append(f"coordinate change: {cert.coordinate_change!r} (seed {cert.faithful.seed})")
    if cert.faithful is not None:
        lines.append(f"faithful radius R: {_fmt(cert.R)}")
    tr = cert.type_report
    if tr is not None:
        if tr.r is not None:
            lines.append(f"test radius r: {_fmt(tr.r)}")
        else:
            lines.append(f"test radius r^2: {_fmt(tr.r_sq)}")
        lines.append(f"m in {_fmt_interval(tr.m)}")
        lines.append(f"M in {_fmt_interval(tr.M)}")
    lines.append(f"seed: {seed}  time: {cert.timing:.3f} s")
    _emit(args, "\n".join(lines), certificate_document(cert, names))
    return EXIT_OK


def _iso(args, g, seed):
    if args.iso_radius is not None:
        return parse_rational(args.iso_radius)
    return isolation_radius(g, seed, args.refine_bits).radius


def _cmd_faithful(args) -> int:
    f, names, point = _load(args)
    seed = _seed(args)
    g = normalize_input(f, point)
    t0 = time.perf_counter()
    iso = _iso(args, g, seed)
    rep = faithful_radius(g, iso, seed, args.refine_bits)
    doc = {
        "R": rational_doc(rep.R),
        "R_iso": rational_doc(iso),
        "bound_sq": rational_doc(rep.bound_sq),
        "finite": rep.finite,
        "seed": rep.seed,
        "seconds": time.perf_counter() - t0,
    }
    text = f"R = {_fmt(rep.R)}\nisolation radius used: {_fmt(iso)}"
    if rep.coordinate_change is not None:
        text += f"\ncoordinate change: {rep.coordinate_change!r} (seed {rep.seed})"
    _emit(args, text, doc)
    return EXIT_OK


def _cmd_isolation(args) -> int:
    f, names, point = _load(args)
    seed = _seed(args)
    g = normalize_input(f, point)
    res = isolation_radius(g, seed, args.refine_bits)
    doc = {
        "R_iso": rational_doc(res.radius),
        "method": res.method,
        "nearest_sq_lower": rational_doc(res.nearest_sq_lower),
    }
    _emit(args, f"R_iso = {_fmt(res.radius)}\nmethod: {res.method}", doc)
    return EXIT_OK


def _cmd_tangency(args) -> int:
    f, names, point = _load(args)
    g = normalize_input(f, point) if point is not None else f
    gens = gamma_generators(g)
    doc = {"variables": names, "gamma": [str(x) for x in gens]}
    _emit(args, "\n".join(str(x) for x in gens), doc)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    f, names, point = _load(args)
    g = normalize_input(f, point) if point is not None else f - f.constant_term()
    r = parse_rational(args.radius)
    seed = _seed(args)
    rep = sample_extrema(g, r, args.density, seed)
    verdict = oracle_verdict(g, r, args.density, seed)
    doc = {
        "radius": rational_doc(r),
        "min_seen": rational_doc(rep.min_seen),
        "max_seen": rational_doc(rep.max_seen),
        "min_witness": [rational_doc(x) for x in rep.min_witness],
        "max_witness": [rational_doc(x) for x in rep.max_witness],
        "samples": rep.samples,
        "verdict": str(verdict),
    }
    wit = lambda pt: "(" + ", ".join(str(x) for x in pt) + ")"  # noqa: E731
    text = "\n".join(
        [
            f"radius: {_fmt(r)}",
            f"min seen: {_fmt(rep.min_seen)} at {wit(rep.min_witness)}",
            f"max seen: {_fmt(rep.max_seen)} at {wit(rep.max_witness)}",
            f"samples: {rep.samples}",
            f"oracle: {verdict}",
        ]
    )
    _emit(args, text, doc)
    return EXIT_OK


def _cmd_plot(args) -> int:
    f, names, point = _load(args)
    if len(names) != 2:
        raise UsageError("plot supports exactly two variables")
    seed = _seed(args)
    g = normalize_input(f, point)
    if args.radius is not None:
        R = parse_rational(args.radius)
    else:
        R = faithful_radius(g, _iso(args, g, seed), seed, args.refine_bits).R
    svg = tangency_svg(g, R, _opt_rational(args.viewport))
    out = args.out or "tangency.svg"
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print(f"wrote {out} (circle radius {_fmt(R)})")
    return EXIT_OK


_COMMANDS = {
    "classify": _cmd_classify,
    "faithful-radius": _cmd_faithful,
    "isolation-radius": _cmd_isolation,
    "tangency": _cmd_tangency,
    "oracle": _cmd_oracle,
    "plot": _cmd_plot,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except _CERT_ERRORS as exc:
        print(f"critcert: certification failed: {exc}", file=sys.stderr)
        return EXIT_CERT
    except (UsageError, ParseError, NotCriticalPointError, ValueError) as exc:
        print(f"critcert: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"critcert: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
