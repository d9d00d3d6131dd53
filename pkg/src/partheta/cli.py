"""Command-line front end: evaluation, zeros, spectrum, census, checks and plot data."""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

import mpmath
from mpmath import mp

from .core import DerivOrder, Parameter, default_digits, evaluate
from .errors import ThetaError
from .report import CONJECTURE_VIOLATION, FAIL, fmt

log = logging.getLogger("partheta")

PLOT_POINTS = 1000
PLOT_RANGE = 6


def _s(value, digits=None):
    """Decimal string at full working precision."""
    if isinstance(value, (mpmath.mpf, mpmath.mpc)):
        return mpmath.nstr(value, digits or mp.dps, strip_zeros=False)
    return str(value)


def _digits(value: str) -> int:
    d = int(value)
    if d < 15:
        raise argparse.ArgumentTypeError("digits must be >= 15")
    return d


def _positive(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def _q(value: str) -> str:
    try:
        Parameter(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    return value


def _emit(args, rows, columns, meta=None):
    """Write rows as JSON (meta + rows) or CSV (header + rows)."""
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([r.get(c, "") for c in columns])
        text = buf.getvalue()
    else:
        doc = dict(meta or {})
        doc["rows"] = rows
        text = json.dumps(doc, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_eval(args):
    r = evaluate(args.q, args.x, DerivOrder(args.dx, args.dq), digits=args.digits)
    with mp.workdps(args.digits):
        row = {"value": _s(r.value), "tail_bound": _s(r.tail_bound, 6), "terms_used": r.terms_used,
               "error_bound": _s(r.error_bound, 6)}
    _emit(args, [row], ["value", "tail_bound", "terms_used", "error_bound"],
          {"q": args.q, "x": args.x, "dx": args.dx, "dq": args.dq, "digits": args.digits})
    return 0


def cmd_zeros(args):
    from .zeros import real_zeros

    seq = real_zeros(args.q, args.j_max, args.digits)
    with mp.workdps(args.digits):
        rows = [{"label": z.index_label, "x": _s(z.x), "multiplicity": z.multiplicity,
                 "residual": _s(z.residual, 6), "uncertainty": _s(z.uncertainty, 6)} for z in seq.zeros]
    _emit(args, rows, ["label", "x", "multiplicity", "residual", "uncertainty"],
          {"q": args.q, "scan_radius": repr(seq.scan_radius), "digits": args.digits})
    return 0


def cmd_spectrum(args):
    from .spectrum import NEGATIVE_Q, POSITIVE_Q, spectrum_scan

    branch = NEGATIVE_Q if args.branch == "neg" else POSITIVE_Q
    table = spectrum_scan(branch, args.k_max, args.digits, validate=not args.no_validate)
    with mp.workdps(args.digits):
        rows = [{"k": e.k, "q_star": _s(e.q_star, e.digits_certified), "y_star": _s(e.y_star, e.digits_certified),
                 "kind": e.kind, "residual_theta": _s(e.residual_theta, 6), "residual_dx": _s(e.residual_dx, 6),
                 "digits_certified": e.digits_certified, "notes": e.notes} for e in table.entries]
    fit = None
    if table.fit:
        f = table.fit
        fit = {"slope_estimate": repr(f.slope_estimate), "y_limit_estimate": repr(f.y_limit_estimate),
               "k_range_used": list(f.k_range_used), "scaled_gaps": [repr(g) for g in f.scaled_gaps],
               "target_slope": repr(f.target_slope), "target_y_limit": repr(f.target_y_limit)}
    cols = ["k", "q_star", "y_star", "kind", "residual_theta", "residual_dx", "digits_certified", "notes"]
    _emit(args, rows, cols, {"branch": branch, "digits": args.digits, "fit": fit, "notes": table.notes})
    if args.format == "csv" and fit and not args.out:
        sys.stdout.write(f"# slope_estimate={fit['slope_estimate']} target={fit['target_slope']} "
                         f"y_limit_estimate={fit['y_limit_estimate']} target={fit['target_y_limit']}\n")
    return 0


def cmd_census(args):
    from .census import census

    c = census(args.q, args.j_max, args.digits, nodes=args.nodes)
    row = {"q": args.q, "radius": repr(c.radius), "total_inside": c.total_inside,
           "real_inside": c.real_inside, "complex_pairs": c.complex_pairs,
           "contour_margin": fmt(c.contour_margin, 6)}
    _emit(args, [row], list(row), {"digits": args.digits})
    return 0


def cmd_verify(args):
    from .checks import CLAIM_IDS, PrecisionBudget, run_suite

    selection = None if args.claims in (None, "all") else [c.strip() for c in args.claims.split(",") if c.strip()]
    if selection:
        unknown = sorted(set(selection) - set(CLAIM_IDS))
        if unknown:
            print(f"unknown claim ids: {', '.join(unknown)}", file=sys.stderr)
            return 2
    reports = run_suite(selection, PrecisionBudget(digits=args.digits, seed=args.seed, n_random=args.n_random))
    for r in reports:
        if r.status == CONJECTURE_VIOLATION:
            log.warning("%s: conjecture violated on the tested range", r.claim_id)
    if args.format == "csv":
        rows = [{"claim_id": r.claim_id, "status": r.status, "witnesses": len(r.witnesses),
                 "failed": sum(not w.ok for w in r.witnesses), "notes": r.notes} for r in reports]
        _emit(args, rows, ["claim_id", "status", "witnesses", "failed", "notes"])
    else:
        text = json.dumps([r.as_dict() for r in reports], indent=2) + "\n"
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    return 1 if any(r.status == FAIL for r in reports) else 0


def _spectral_q(k_values, digits):
    """Certified spectral values refined from the printed approximations."""
    from .checks import TABLE
    from .spectrum import double_refine

    out = {}
    for k, qs, ys, _, _ in TABLE:
        if k in k_values:
            out[k] = double_refine(Parameter("-" + qs), ys, digits, k=k).q_star
    return out


def cmd_plotdata(args):
    digits = args.digits
    xs = [mpmath.mpf(-PLOT_RANGE) + mpmath.mpf(2 * PLOT_RANGE) * i / (PLOT_POINTS - 1) for i in range(PLOT_POINTS)]
    if args.figure in (1, 2):
        ks = [1, 2, 3, 4] if args.figure == 1 else [5, 6, 7, 8]
        qs = _spectral_q(ks, digits)
        cols = ["x"] + [f"theta_k{k}" for k in ks] + ["limit"]
        rows = []
        for x in xs:
            row = {"x": _s(x, 12)}
            for k in ks:
                row[f"theta_k{k}"] = _s(evaluate(qs[k], x, digits=digits).value, 15)
            row["limit"] = _s((1 - x) / (1 + x * x), 15)
            rows.append(row)
        meta = {"figure": args.figure, "q": {f"k{k}": _s(qs[k], 20) for k in ks}}
    else:
        from .zeros import real_zeros

        seq = real_zeros(args.q, args.j_max, digits)
        p = Parameter(args.q)
        cols = ["label", "x", "q_x"]
        rows = [{"label": z.index_label, "x": _s(z.x, 20), "q_x": _s(p.q * z.x, 20)} for z in seq.zeros]
        meta = {"figure": 3, "q": args.q}
    _emit(args, rows, cols, meta)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=_digits, default=None, help="working precision (default $THETA_DIGITS or 64)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", default=None, help="write output to this path")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="partheta", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate theta or a derivative")
    p.add_argument("--q", type=_q, required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--dx", type=int, choices=range(4), default=0)
    p.add_argument("--dq", type=int, choices=range(2), default=0)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("zeros", parents=[common], help="real zeros inside the scan radius")
    p.add_argument("--q", type=_q, required=True)
    p.add_argument("--j-max", type=_positive, default=12)
    p.set_defaults(func=cmd_zeros)

    p = sub.add_parser("spectrum", parents=[common], help="spectral values and double zeros")
    p.add_argument("--branch", choices=("neg", "pos"), default="neg")
    p.add_argument("--k-max", type=_positive, default=8)
    p.add_argument("--no-validate", action="store_true", help="skip the complex-pair count around each value")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("census", parents=[common], help="total, real and complex zero counts")
    p.add_argument("--q", type=_q, required=True)
    p.add_argument("--j-max", type=_positive, default=12)
    p.add_argument("--nodes", type=int, default=256)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify", parents=[common], help="run the check suite")
    p.add_argument("--claims", default=None, help="comma-separated claim ids (default all)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--n-random", type=_positive, default=1000)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("plotdata", parents=[common], help="data columns behind the graphs")
    p.add_argument("--figure", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--q", type=_q, default="-0.1", help="parameter for the zero arrangement (figure 3)")
    p.add_argument("--j-max", type=_positive, default=8)
    p.set_defaults(func=cmd_plotdata)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    if args.digits is None:
        args.digits = default_digits()
    if getattr(args, "seed", 0) is None:
        from .checks import DEFAULT_SEED
        args.seed = DEFAULT_SEED
    try:
        with mp.workdps(args.digits):
            return args.func(args)
    except (ThetaError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
