"""Command-line front end: data generation, transforms, inversion, experiments.

Outputs are CSV files (written atomically; a failed run leaves no partial
file) with the schema described in csvio.  Exit status is nonzero on any
contract violation, with a message on stderr.
"""

from __future__ import annotations

import argparse
import sys

from . import csvio, transform
from .experiments import ExperimentSpec, paper_scale, run_experiment
from .generate import gen_coeffs, gen_grid, gen_points_ball
from .solvers import invert


def _int_list(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v.strip()]


def _float_list(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="sglnufft",
        description="Fast spherical Gauss-Laguerre transforms for scattered data.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-coeffs", help="random coefficient vector CSV")
    p.add_argument("--bandwidth", "-B", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("gen-points", help="uniform random ball points CSV")
    p.add_argument("--points", "-M", type=int, required=True)
    p.add_argument("--kappa", type=float, default=5.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("gen-grid", help="Cartesian grid points CSV")
    p.add_argument("--grid-n", "-N", type=int, required=True)
    p.add_argument("--kappa", type=float, default=5.0)
    p.add_argument("--out", required=True)

    for name, hlp in (("forward", "evaluate coefficients at points"),
                      ("adjoint", "adjoint transform of values at points")):
        p = sub.add_parser(name, help=hlp)
        if name == "forward":
            p.add_argument("--coeffs", required=True)
        else:
            p.add_argument("--values", required=True)
            p.add_argument("--bandwidth", "-B", type=int, required=True)
        p.add_argument("--points", required=True, dest="points_file")
        p.add_argument("--method", choices=("naive", "fast", "fast-exact"),
                       default="fast")
        p.add_argument("--sigma", type=int, default=2)
        p.add_argument("--cutoff", "-q", type=int, default=16)
        p.add_argument("--rho", type=float, default=None)
        p.add_argument("--out", required=True)

    p = sub.add_parser("invert", help="recover coefficients from samples")
    p.add_argument("--values", required=True)
    p.add_argument("--points", required=True, dest="points_file")
    p.add_argument("--bandwidth", "-B", type=int, required=True)
    p.add_argument("--method", choices=("fast", "fast-exact"), default="fast")
    p.add_argument("--sigma", type=int, default=2)
    p.add_argument("--cutoff", "-q", type=int, default=16)
    p.add_argument("--solver", choices=("auto", "cgnr", "cgne"), default="auto")
    p.add_argument("--max-iter", type=int, default=500)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--x0", choices=("zero", "midpoint"), default="zero")
    p.add_argument("--kappa", type=float, default=None)
    p.add_argument("--grid-n", type=int, default=None)
    p.add_argument("--out", required=True)

    p = sub.add_parser("experiment", help="run one reproducible experiment")
    p.add_argument("kind", choices=("error-vs-q", "error-vs-radius",
                                    "error-vs-bandwidth", "runtime",
                                    "inverse-convergence"))
    p.add_argument("--bandwidth", "-B", type=int, default=8)
    p.add_argument("--bandwidth-list", type=_int_list, default=None)
    p.add_argument("--points", "-M", type=int, default=1000)
    p.add_argument("--kappa", type=float, default=5.0)
    p.add_argument("--kappa-list", type=_float_list, default=None)
    p.add_argument("--cutoff", "-q", type=int, default=16)
    p.add_argument("--q-list", type=_int_list, default=None)
    p.add_argument("--m-list", type=_int_list, default=None)
    p.add_argument("--grid-n-list", type=_int_list, default=None)
    p.add_argument("--sigma", type=int, default=2)
    p.add_argument("--repetitions", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iter", type=int, default=300)
    p.add_argument("--exact-control", action="store_true")
    p.add_argument("--paper-scale", action="store_true")
    p.add_argument("--out", required=True)
    return ap


def _experiment_spec(args: argparse.Namespace) -> ExperimentSpec:
    spec = ExperimentSpec(
        kind=args.kind,
        B=args.bandwidth,
        M=args.points,
        kappa=args.kappa,
        q=args.cutoff,
        sigma=args.sigma,
        repetitions=args.repetitions,
        seed=args.seed,
        max_iter=args.max_iter,
        with_exact_control=args.exact_control,
    )
    # desk-scale defaults per kind, overridable by the list flags
    if args.kind == "error-vs-q":
        spec.q_list = args.q_list or list(range(1, 21))
    if args.kind == "error-vs-radius":
        spec.kappa_list = args.kappa_list or [i / 4 for i in range(1, 32)]
        spec.M = args.points if args.points != 1000 else 500
    if args.kind == "error-vs-bandwidth":
        spec.B_list = args.bandwidth_list or [8, 16, 32]
        spec.q = args.cutoff if args.cutoff != 16 else 12
    if args.kind == "runtime":
        spec.B = args.bandwidth if args.bandwidth != 8 else 16
        spec.m_list = args.m_list or [10, 100, 1000, 10000]
        spec.repetitions = min(args.repetitions, 3)
    if args.kind == "inverse-convergence":
        spec.B = args.bandwidth if args.bandwidth != 8 else 4
        spec.q = args.cutoff if args.cutoff != 16 else 8
        spec.grid_n_list = args.grid_n_list or [20]
        if args.kappa_list:
            spec.kappa_list = args.kappa_list
    if args.paper_scale:
        spec = paper_scale(spec)
        if args.bandwidth_list:
            spec.B_list = args.bandwidth_list
    return spec


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gen-coeffs":
            csvio.write_coeffs(args.out, gen_coeffs(args.bandwidth, args.seed),
                               args.bandwidth)
        elif args.command == "gen-points":
            csvio.write_points(args.out, gen_points_ball(args.points, args.kappa,
                                                         args.seed))
        elif args.command == "gen-grid":
            csvio.write_points(args.out, gen_grid(args.grid_n, args.kappa))
        elif args.command == "forward":
            coeffs, bandwidth = csvio.read_coeffs(args.coeffs)
            points = csvio.read_points(args.points_file)
            if args.method == "naive":
                values = transform.evaluate_direct(coeffs, bandwidth, points)
            else:
                p = transform.plan(bandwidth, points, sigma=args.sigma,
                                   q=args.cutoff, rho=args.rho,
                                   exact_last_stage=args.method == "fast-exact")
                values = transform.forward(p, coeffs)
            csvio.write_values(args.out, values)
        elif args.command == "adjoint":
            values = csvio.read_values(args.values)
            points = csvio.read_points(args.points_file)
            if args.method == "naive":
                coeffs = transform.evaluate_direct_adjoint(values, args.bandwidth,
                                                           points)
            else:
                p = transform.plan(args.bandwidth, points, sigma=args.sigma,
                                   q=args.cutoff, rho=args.rho,
                                   exact_last_stage=args.method == "fast-exact")
                coeffs = transform.adjoint(p, values)
            csvio.write_coeffs(args.out, coeffs, args.bandwidth)
        elif args.command == "invert":
            values = csvio.read_values(args.values)
            points = csvio.read_points(args.points_file)
            report = invert(
                points, values, args.bandwidth, sigma=args.sigma, q=args.cutoff,
                solver=args.solver, max_iter=args.max_iter, tol=args.tol,
                x0_mode=args.x0, exact_last_stage=args.method == "fast-exact",
                kappa=args.kappa, grid_n=args.grid_n,
            )
            csvio.write_coeffs(args.out, report.solution, args.bandwidth)
            print(f"iterations={report.iterations} converged={report.converged} "
                  f"residual={report.residual_history[-1]:.6e}")
        elif args.command == "experiment":
            run_experiment(_experiment_spec(args)).write(args.out)
    except (ValueError, OSError) as exc:
        print(f"sglnufft: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
