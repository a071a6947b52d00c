"""Command-line front end.

Exit status: 0 on success, 1 on domain errors (poles, invalid ranges,
quadrature budget), 2 on usage errors.  Errors go to stderr prefixed with
``error:``.  Numbers are printed with 17 significant digits.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Sequence

from .bernoulli import bernoulli_upto
from .binet import QuadratureConfig, binet_integral, lnfactorial_binet
from .errors import AccuracyError, StirlingError
from .evaluator import (
    EvalOutcome,
    Method,
    Status,
    lnfactorial,
    lnfactorial_levin,
    shift_outcome,
)
from .levin import LevinConfig, levin_u
from .mapper import (
    CellStatus,
    GridSpec,
    binet_crosscheck,
    generate_map,
    truncation_error_map,
    write_csv,
    write_pgm,
)

# Options whose value may legitimately start with "-" (e.g. "--z -3,0").
_VALUE_OPTIONS = {"--z", "--range", "--ratio", "--n"}


def g17(x: float) -> str:
    return format(float(x), ".17g")


def _complex_arg(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected RE,IM, got {text!r}")


def _floats(count: int):
    def parse(text: str) -> list[float]:
        try:
            vals = [float(p) for p in text.split(",")]
        except ValueError:
            vals = []
        if len(vals) != count or not all(math.isfinite(v) for v in vals):
            raise argparse.ArgumentTypeError(f"expected {count} comma-separated numbers, got {text!r}")
        return vals
    return parse


def _ints(count: int):
    def parse(text: str) -> list[int]:
        try:
            vals = [int(p) for p in text.split(",")]
        except ValueError:
            vals = []
        if len(vals) != count:
            raise argparse.ArgumentTypeError(f"expected {count} comma-separated integers, got {text!r}")
        return vals
    return parse


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        v = -1
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    return v


def _add_levin_knobs(p: argparse.ArgumentParser) -> None:
    d = LevinConfig()
    p.add_argument("--beta", type=float, default=d.beta, help=f"Levin beta (default {d.beta})")
    p.add_argument("--k-max", type=int, default=d.k_max, help=f"maximum transform order (default {d.k_max})")
    p.add_argument("--rel-tol", type=float, default=d.rel_tol,
                   help=f"relative stabilization tolerance (default {d.rel_tol:.3g})")
    p.add_argument("--stabilization-count", type=int, default=d.stabilization_count,
                   help=f"consecutive agreeing orders required (default {d.stabilization_count})")


def _add_grid_args(p: argparse.ArgumentParser, default_n: str | None = None) -> None:
    p.add_argument("--range", dest="grid_range", type=_floats(4), required=True, metavar="A,B,C,D",
                   help="re_min,re_max,im_min,im_max (closed intervals)")
    p.add_argument("--n", dest="grid_n", type=_ints(2), required=default_n is None,
                   default=None if default_n is None else _ints(2)(default_n), metavar="NR,NI",
                   help="nodes along the real and imaginary axes"
                   + ("" if default_n is None else f" (default {default_n})"))
    p.add_argument("--out", required=True, metavar="FILE", help="CSV output path")
    p.add_argument("--workers", type=int, default=1, help="worker processes (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stirling", description="Complex log-factorial via Stirling's original series.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("eval", help="evaluate ln z!")
    p.add_argument("--z", type=_complex_arg, required=True, metavar="RE,IM", help="argument z")
    p.add_argument("--method", choices=["auto", "levin", "shift", "binet"], default="auto",
                   help="evaluation route (default auto: levin with shift fallback)")
    _add_levin_knobs(p)
    p.add_argument("--abs-tol", type=float, default=QuadratureConfig().abs_tol,
                   help="quadrature tolerance for --method binet (default 1e-12)")

    p = sub.add_parser("grid", help="Levin failure region and error map as CSV")
    _add_grid_args(p)
    p.add_argument("--pgm", metavar="FILE", help="also write a P2 greyscale image")
    p.add_argument("--threshold", type=float, default=1e-12,
                   help="abs_err limit for a white PGM pixel (default 1e-12)")
    p.add_argument("--binet-sample", type=_nonneg_int, default=10,
                   help="cells cross-checked against the quadrature (default 10)")

    p = sub.add_parser("truncmap", help="error of the truncated Stirling series as CSV")
    p.add_argument("--terms", type=_nonneg_int, required=True, help="number of series terms kept")
    _add_grid_args(p, default_n="100,100")

    p = sub.add_parser("sum-demo", help="Levin sum of the geometric series sum R^n")
    p.add_argument("--ratio", type=_complex_arg, required=True, metavar="R", help="ratio R or RE,IM")
    p.add_argument("--terms", type=int, default=60, help="terms supplied to the transform (default 60)")
    _add_levin_knobs(p)

    p = sub.add_parser("verify-binet", help="check the Binet-like integral against the evaluator")
    p.add_argument("--z", type=_complex_arg, required=True, metavar="RE,IM", help="argument z (Re z > -1/2)")
    p.add_argument("--abs-tol", type=float, default=QuadratureConfig().abs_tol,
                   help="quadrature tolerance (default 1e-12)")

    p = sub.add_parser("bernoulli", help="print exact Bernoulli numbers")
    p.add_argument("--upto", type=_nonneg_int, required=True, metavar="N", help="largest index")
    return parser


def _levin_cfg(args) -> LevinConfig:
    return LevinConfig(beta=args.beta, k_max=args.k_max, rel_tol=args.rel_tol,
                       stabilization_count=args.stabilization_count)


def _outcome_line(out: EvalOutcome) -> str:
    return (f"re={g17(out.value.real)} im={g17(out.value.imag)} method={out.method.value} "
            f"status={out.status.value} terms={out.terms_used} err_estimate={g17(out.err_estimate)}")


def _cmd_eval(args, out) -> int:
    cfg = _levin_cfg(args)
    qcfg = QuadratureConfig(abs_tol=args.abs_tol)
    z = args.z
    if args.method == "auto":
        res = lnfactorial(z, cfg)
    elif args.method == "levin":
        res = lnfactorial_levin(z, cfg)
    elif args.method == "shift":
        res = shift_outcome(z)
    else:
        res = EvalOutcome(lnfactorial_binet(z, qcfg), Method.BINET_INTEGRAL, Status.CONVERGED, qcfg.abs_tol, 0)
    print(_outcome_line(res), file=out)
    return 0


def _spec(args) -> GridSpec:
    a, b, c, d = args.grid_range
    nr, ni = args.grid_n
    return GridSpec(a, b, c, d, nr, ni)


def _summary(cells) -> str:
    counts = {s: 0 for s in CellStatus}
    for c in cells:
        counts[c.status] += 1
    errs = [c.abs_err for c in cells if c.abs_err is not None]
    worst = g17(max(errs)) if errs else "nan"
    return (f"cells={len(cells)} converged={counts[CellStatus.CONVERGED]} "
            f"failed={counts[CellStatus.FAILED]} pole={counts[CellStatus.POLE]} max_abs_err={worst}")


def _cmd_grid(args, out) -> int:
    g = _spec(args)
    cells = generate_map(g, workers=args.workers)
    with open(args.out, "w", newline="") as fh:
        write_csv(cells, fh)
    if args.pgm:
        with open(args.pgm, "w") as fh:
            write_pgm(cells, g, fh, threshold=args.threshold)
    print(_summary(cells), file=out)
    if args.binet_sample:
        checks = binet_crosscheck(cells, sample=args.binet_sample)
        done = [d for _, d in checks if d is not None]
        worst = g17(max(done)) if done else "nan"
        print(f"binet_checked={len(done)} binet_skipped={len(checks) - len(done)} "
              f"binet_max_discrepancy={worst}", file=out)
    return 0


def _cmd_truncmap(args, out) -> int:
    g = _spec(args)
    cells = truncation_error_map(g, args.terms, workers=args.workers)
    with open(args.out, "w", newline="") as fh:
        write_csv(cells, fh)
    print(_summary(cells), file=out)
    return 0


def _cmd_sum_demo(args, out) -> int:
    cfg = _levin_cfg(args)
    r = args.ratio
    res = levin_u((r ** j for j in range(args.terms)), cfg)
    v = res.value
    print(f"value={g17(v.real)}" + ("" if v.imag == 0 else f" imag={g17(v.imag)}"), file=out)
    print(f"status={res.status.value} order={res.order_used} terms={res.terms_used} "
          f"err_estimate={g17(res.err_estimate)}", file=out)
    return 0


def _cmd_verify_binet(args, out) -> int:
    qcfg = QuadratureConfig(abs_tol=args.abs_tol)
    z = args.z
    Z = z + 0.5
    J = binet_integral(Z, qcfg)
    print(f"integral_re={g17(J.real)} integral_im={g17(J.imag)}", file=out)
    if Z == 0.5:
        closed = (math.log(math.pi) - 1) / 2
        print(f"closed_form={g17(closed)} identity_gap={g17(abs(J - closed))}", file=out)
    value = lnfactorial_binet(z, qcfg)
    ref = lnfactorial(z)
    print(f"binet_re={g17(value.real)} binet_im={g17(value.imag)}", file=out)
    print(f"evaluator_re={g17(ref.value.real)} evaluator_im={g17(ref.value.imag)} "
          f"method={ref.method.value} discrepancy={g17(abs(value - ref.value))}", file=out)
    return 0


def _cmd_bernoulli(args, out) -> int:
    for n, b in enumerate(bernoulli_upto(args.upto)):
        print(f"{n} {b.numerator}/{b.denominator}", file=out)
    return 0


_COMMANDS = {
    "eval": _cmd_eval,
    "grid": _cmd_grid,
    "truncmap": _cmd_truncmap,
    "sum-demo": _cmd_sum_demo,
    "verify-binet": _cmd_verify_binet,
    "bernoulli": _cmd_bernoulli,
}


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_OPTIONS:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            elif nxt.startswith("-") and not nxt.startswith("--"):
                out.append(f"{tok}={nxt}")
            else:
                out.extend([tok, nxt])
        else:
            out.append(tok)
    return out


def run(argv: Sequence[str], out=None, err=None) -> int:
    """Parse ``argv`` and execute; returns the process exit status."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    # Validate config-level knobs before any computation starts.
    try:
        if hasattr(args, "beta"):
            _levin_cfg(args)
        if hasattr(args, "abs_tol"):
            QuadratureConfig(abs_tol=args.abs_tol)
        if getattr(args, "workers", 1) < 1:
            raise ValueError("--workers must be >= 1")
    except ValueError as exc:
        print(f"error: usage: {exc}", file=err)
        return 2
    try:
        if hasattr(args, "grid_range"):
            _spec(args)
        return _COMMANDS[args.command](args, out)
    except AccuracyError as exc:
        print(f"error: accuracy: {exc}", file=err)
        return 1
    except StirlingError as exc:
        print(f"error: {exc}", file=err)
        return 1
    except OSError as exc:
        print(f"error: io: {exc}", file=err)
        return 1


def main(argv: Sequence[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
