"""Command-line front end: gen, solve, attractor, census, asympt, plot.

Exit codes: 0 success, 1 numerical failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

import numpy as np

from . import asymptote, attractor, census, io, plot
from .polygen import digit_stats, partition_coeffs, plane_partition_coeffs
from .solver import SolverConfig, aberth_solve, checksum_report


def _threads(args) -> int:
    if getattr(args, "threads", None):
        return args.threads
    env = os.environ.get("ATTRACTORLAB_THREADS")
    return int(env) if env else 1


def cmd_gen(args) -> int:
    t0 = time.time()
    if args.kind == "plane":
        poly = plane_partition_coeffs(args.n)
    else:
        poly = partition_coeffs(args.n)
    manifest = io.RunManifest("gen", {"n": args.n, "kind": args.kind})
    out = args.output or f"{args.kind}-{args.n}.coeffs"
    io.write_coefficients(out, poly, manifest)
    st = digit_stats(poly)
    print(f"wrote {out}: degree {poly.degree}, max coefficient digits "
          f"{st.max_digits} (at x^{st.argmax_index}), unimodal={st.unimodal}, "
          f"{time.time() - t0:.1f}s")
    return 0


def cmd_solve(args) -> int:
    from .solver import Schedule

    poly = io.read_coefficients(args.coeffs)
    cfg = SolverConfig(precision_bits=args.precision,
                       convergence_tol=args.tol,
                       max_iterations=args.max_iterations,
                       update_schedule=Schedule(args.schedule),
                       threads=_threads(args))
    t0 = time.time()
    zs = aberth_solve(poly, cfg)
    dt = time.time() - t0
    manifest = io.RunManifest("solve", {
        "input": os.path.basename(args.coeffs),
        "precision": args.precision,
        "tol": cfg.convergence_tol,
    })
    out = args.output or f"{os.path.splitext(args.coeffs)[0]}.zeros"
    io.write_zeros(out, zs, manifest)
    rep = checksum_report(zs, poly)
    print(f"wrote {out}: {len(zs.zeros)} zeros + origin multiplicity "
          f"{zs.origin_multiplicity}, {zs.sweeps} sweeps, {dt:.1f}s [{zs.kernel}]")
    print(f"checksums: |sum - target| = {rep.sum_residual:.3e}, "
          f"|e2 - target| = {rep.e2_residual:.3e}")
    if not zs.all_converged:
        print(f"WARNING: {int((~zs.converged).sum())} zeros unconverged", file=sys.stderr)
        return 1
    return 0


def cmd_attractor(args) -> int:
    t0 = time.time()
    geom = attractor.attractor_geometry(prec=args.precision)
    T = complex(geom.triple_point)
    print(f"triple point: {T.real:.10f} + {T.imag:.10f}i  (|T| = {abs(T):.10f})")
    print(f"angles: theta13 = {geom.theta13:.9f}, theta12 = {geom.theta12:.9f}, "
          f"theta23 = {geom.theta23:.9f}")
    base = args.output_prefix
    for pair, c in geom.curves.items():
        name = f"{base}c{pair[0]}{pair[1]}.curve"
        io.write_curve(name, c, io.RunManifest("attractor", {"pair": f"{pair[0]}{pair[1]}"}))
        print(f"  C{pair[0]}{pair[1]}: length {attractor.curve_length(c):.10f} -> {name}")
    svg = f"{base}attractor.svg"
    plot.attractor_svg(svg, [c.points for c in geom.curves.values()], T)
    print(f"wrote {svg} ({time.time() - t0:.1f}s)")
    return 0


def cmd_census(args) -> int:
    n, prec, rows = io.read_zeros(args.zeros)
    zeros = [complex(float(re), float(im)) for re, im, _ in rows]
    geom = attractor.attractor_geometry(prec=args.precision)
    table = census.density_table(geom)
    rep = census.census(zeros, geom, n, threshold=args.threshold, table=table)
    cols = ["degree", "total_inside", "q2", "f1", "f2", "f3", "pred_ls", "pred_C"]
    row = {
        "degree": rep.degree, "total_inside": rep.total_inside, "q2": rep.q2_inside,
        "f1": rep.family_counts[0], "f2": rep.family_counts[1], "f3": rep.family_counts[2],
        "pred_ls": f"{rep.prediction_ls:.1f}", "pred_C": f"{rep.prediction_c:.1f}",
    }
    print(io.format_census_csv([row], cols), end="")
    for pair, stats in table.rows.items():
        print(f"# C{pair[0]}{pair[1]}: length {stats['length']:.10f} "
              f"mass {stats['density_mass']:.9f} weight {stats['relative_weight']:.10f}")
    print(f"# sqrt-law constant from masses: {table.sqrt_constant:.10f}")
    for note in (*table.notes, *rep.notes):
        print(f"# note: {note}")
    if args.output:
        with open(args.output, "w", newline="\n") as fh:
            fh.write(io.format_census_csv([row], cols))
    if args.svg:
        inner = census.inside_zeros(zeros, rep.threshold)
        plot.zero_scatter_svg(args.svg, inner,
                              extra_curves=[c.points for c in geom.curves.values()],
                              markers=[(complex(geom.triple_point), "T")])
        print(f"# wrote {args.svg}")
    return 0


def cmd_asympt(args) -> int:
    x = complex(args.x)
    if x == 0:
        print("error: x = 0 has no asymptotic regime (F_n(0) = 0)", file=sys.stderr)
        return 2
    rows = []
    for n in args.n:
        if abs(x) < 1:
            est = asymptote.leading_asymptotic(x, n, args.precision)
            try:
                exact, _ = _exact_value(x, n)
                rel = abs(complex(est.value) - exact) / abs(exact)
                rows.append((n, est.region.value.name, complex(est.value), exact, rel))
            except asymptote.EvaluationUnderflow:
                rows.append((n, est.region.value.name, complex(est.value), None, None))
        else:
            la = asymptote.log_abs_exact(x, n, args.precision)
            rows.append((n, "outside", None, la / n, None))
    print("n,region,estimate,exact_or_loglimit,rel_err")
    for n, reg, est, exact, rel in rows:
        print(f"{n},{reg},{est},{exact},{rel if rel is None else f'{rel:.3e}'}")
    return 0


def _exact_value(x, n):
    from .solver import horner_eval

    p = partition_coeffs(n)
    v, b = horner_eval(p, x, 512)
    if abs(v) <= b:
        raise asymptote.EvaluationUnderflow(str(n))
    return complex(v), float(b)


def cmd_plot(args) -> int:
    n, prec, rows = io.read_zeros(args.zeros)
    zeros = [complex(float(re), float(im)) for re, im, _ in rows]
    plot.zero_scatter_svg(args.output, zeros)
    print(f"wrote {args.output} ({len(zeros)} zeros)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="attractorlab",
        description="partition polynomials: exact coefficients, certified zeros, "
                    "and the dilogarithm zero-attractor geometry",
    )
    ap.add_argument("--threads", type=int, default=None,
                    help="worker cap (or ATTRACTORLAB_THREADS)")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate exact coefficients")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--kind", choices=["partition", "plane"], default="partition")
    g.add_argument("--output", "-o")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="find all zeros of a coefficient file")
    s.add_argument("coeffs")
    s.add_argument("--precision", type=int, default=128, help="output precision bits")
    s.add_argument("--tol", type=float, default=None)
    s.add_argument("--max-iterations", type=int, default=200)
    s.add_argument("--schedule", choices=["gauss-seidel", "jacobi"],
                   default="gauss-seidel",
                   help="jacobi parallelizes across --threads workers")
    s.add_argument("--output", "-o")
    s.set_defaults(func=cmd_solve)

    a = sub.add_parser("attractor", help="angles, triple point, boundary curves")
    a.add_argument("--precision", type=int, default=256, help="geometry precision bits")
    a.add_argument("--output-prefix", default="")
    a.set_defaults(func=cmd_attractor)

    c = sub.add_parser("census", help="classify zeros and reproduce counting laws")
    c.add_argument("zeros")
    c.add_argument("--threshold", type=float, default=0.99)
    c.add_argument("--precision", type=int, default=128)
    c.add_argument("--output", "-o")
    c.add_argument("--svg")
    c.set_defaults(func=cmd_census)

    y = sub.add_parser("asympt", help="leading asymptotics vs exact evaluation")
    y.add_argument("--x", required=True, help="complex point, e.g. '0.5' or '-0.3+0.2j'")
    y.add_argument("--n", type=int, nargs="+", required=True)
    y.add_argument("--precision", type=int, default=512)
    y.set_defaults(func=cmd_asympt)

    p = sub.add_parser("plot", help="SVG scatter of a zero file")
    p.add_argument("zeros")
    p.add_argument("--output", "-o", default="zeros.svg")
    p.set_defaults(func=cmd_plot)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ValueError, asymptote.DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # numerical failures
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
