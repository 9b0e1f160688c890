"""Reproducible experiment drivers: error sweeps, runtimes, inversion runs.

Each experiment draws fresh random data per repetition from seeds spawned
off the master seed, runs the fast transform against the direct oracle, and
emits one CSV table.  Error columns follow the usual definitions

    max_i |f(x_i) - approx(x_i)|      and      max_i |f - approx| / |f|,

averaged (unweighted) over the repetitions, with standard deviations.
Tables are byte-identical across runs for the same seed and flags, except
for wall-clock columns in the runtime experiment.

Repetitions can run in parallel worker processes; the worker count is
min(repetitions, cpu count) and can be capped with SGLNUFFT_THREADS.
Assembly order is fixed by repetition index, so parallel runs stay
deterministic.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import transform
from .csvio import CsvTable
from .generate import gen_coeffs, gen_grid, gen_points_ball
from .solvers import invert

REL_CLAMP = 1e300  # relative errors beyond this are reported clamped


@dataclass
class ExperimentSpec:
    """Parameters of one experiment run."""

    kind: str
    B: int = 8
    B_list: list[int] = field(default_factory=list)
    M: int = 1000
    kappa: float = 5.0
    kappa_list: list[float] = field(default_factory=list)
    q: int = 16
    q_list: list[int] = field(default_factory=list)
    sigma: int = 2
    repetitions: int = 10
    seed: int = 0
    grid_n_list: list[int] = field(default_factory=list)
    max_iter: int = 300
    with_exact_control: bool = False
    m_list: list[int] = field(default_factory=list)

    def validate(self) -> None:
        kinds = ("error-vs-q", "error-vs-radius", "error-vs-bandwidth",
                 "runtime", "inverse-convergence")
        if self.kind not in kinds:
            raise ValueError(f"unknown experiment kind {self.kind!r}")
        if self.repetitions < 1:
            raise ValueError("need at least one repetition")
        if self.kind == "error-vs-q" and not self.q_list:
            raise ValueError("error-vs-q needs a nonempty q list")
        if self.kind == "error-vs-radius" and not self.kappa_list:
            raise ValueError("error-vs-radius needs a nonempty kappa list")
        if self.kind == "error-vs-bandwidth" and not self.B_list:
            raise ValueError("error-vs-bandwidth needs a nonempty bandwidth list")
        if self.kind == "runtime" and not self.m_list:
            raise ValueError("runtime needs a nonempty point-count list")
        if self.kind == "inverse-convergence" and not self.grid_n_list:
            raise ValueError("inverse-convergence needs a nonempty grid list")


def paper_scale(spec: ExperimentSpec) -> ExperimentSpec:
    """Swap in the reference-scale parameters (hours of compute)."""
    spec.B = 32
    spec.M = 10_000
    spec.repetitions = 10
    if spec.kind == "error-vs-bandwidth":
        spec.B_list = [8, 16, 32, 64, 128]
        spec.M = 1000
        spec.q = 12
    if spec.kind == "error-vs-radius":
        spec.M = 1000
    if spec.kind == "runtime":
        spec.m_list = [10 ** k for k in range(1, 7)]
    if spec.kind == "inverse-convergence":
        spec.B = 8
        spec.q = 15
        spec.grid_n_list = [25, 50, 100]
        spec.max_iter = 10_000
    return spec


def _worker_count(reps: int) -> int:
    cap = os.environ.get("SGLNUFFT_THREADS")
    limit = int(cap) if cap else (os.cpu_count() or 1)
    return max(1, min(reps, limit, os.cpu_count() or 1))


def _map_reps(fn, args_list, parallel: bool = True):
    workers = _worker_count(len(args_list))
    if not parallel or workers == 1:
        return [fn(a) for a in args_list]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, args_list))


def _errors(truth: np.ndarray, approx: np.ndarray) -> tuple[float, float, bool]:
    """(max abs, max rel, clamped flag); per-point relative ratios."""
    d = np.abs(truth - approx)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        rel = d / np.abs(truth)
    max_abs = float(np.max(d))
    max_rel = float(np.max(rel))
    clamped = not np.isfinite(max_rel) or max_rel > REL_CLAMP
    if clamped:
        max_rel = REL_CLAMP
    return max_abs, max_rel, clamped


def _rep_error_vs_q(args) -> list[tuple[float, float, bool]]:
    spec, child = args
    rng = np.random.default_rng(child)
    coeffs = gen_coeffs(spec.B, rng)
    points = gen_points_ball(spec.M, spec.kappa, rng)
    truth = transform.evaluate_direct(coeffs, spec.B, points)
    out = []
    for q in spec.q_list:
        p = transform.plan(spec.B, points, sigma=spec.sigma, q=q)
        out.append(_errors(truth, transform.forward(p, coeffs)))
    return out


def _rep_error_vs_radius(args) -> list[tuple[float, float, bool]]:
    spec, child = args
    rng = np.random.default_rng(child)
    coeffs = gen_coeffs(spec.B, rng)  # one draw per repetition, points per kappa
    out = []
    for kappa in spec.kappa_list:
        points = gen_points_ball(spec.M, kappa, rng)
        truth = transform.evaluate_direct(coeffs, spec.B, points)
        p = transform.plan(spec.B, points, sigma=spec.sigma, q=spec.q)
        out.append(_errors(truth, transform.forward(p, coeffs)))
    return out


def _rep_error_vs_bandwidth(args) -> list[tuple]:
    spec, child = args
    rng = np.random.default_rng(child)
    out = []
    points = gen_points_ball(spec.M, spec.kappa, rng)  # shared across bandwidths
    for B in spec.B_list:
        coeffs = gen_coeffs(B, rng)
        truth = transform.evaluate_direct(coeffs, B, points)
        p = transform.plan(B, points, sigma=spec.sigma, q=spec.q)
        row = _errors(truth, transform.forward(p, coeffs))
        if spec.with_exact_control:
            pe = transform.plan(B, points, exact_last_stage=True)
            row = row + _errors(truth, transform.forward(pe, coeffs))[:2]
        out.append(row)
    return out


def _aggregate(per_rep: list[list], q_values, extra_exact: bool = False) -> list[list]:
    rows = []
    arr = np.array([[r[:2] for r in rep] for rep in per_rep], dtype=float)
    clamp = np.array([[r[2] for r in rep] for rep in per_rep], dtype=bool)
    for j, q in enumerate(q_values):
        row = [
            q,
            float(np.mean(arr[:, j, 0])),
            float(np.mean(arr[:, j, 1])),
            float(np.std(arr[:, j, 0])),
            float(np.std(arr[:, j, 1])),
            int(np.any(clamp[:, j])),
        ]
        if extra_exact:
            ex = np.array([[rep[j][3], rep[j][4]] for rep in per_rep], dtype=float)
            row += [float(np.mean(ex[:, 0])), float(np.mean(ex[:, 1]))]
        rows.append(row)
    return rows


def experiment_error_vs_q(spec: ExperimentSpec) -> CsvTable:
    """Fast-path error against the oracle over a cutoff sweep."""
    spec.validate()
    children = np.random.SeedSequence(spec.seed).spawn(spec.repetitions)
    per_rep = _map_reps(_rep_error_vs_q, [(spec, c) for c in children])
    tab = CsvTable(
        ["q", "avg_max_abs_err", "avg_max_rel_err", "std_abs", "std_rel", "clamped"],
        meta={"kind": spec.kind, "B": spec.B, "M": spec.M, "kappa": spec.kappa,
              "sigma": spec.sigma, "reps": spec.repetitions, "seed": spec.seed},
    )
    tab.rows = _aggregate(per_rep, spec.q_list)
    return tab


def experiment_error_vs_radius(spec: ExperimentSpec) -> CsvTable:
    """Fast-path error against the oracle over the ball-radius sweep."""
    spec.validate()
    children = np.random.SeedSequence(spec.seed).spawn(spec.repetitions)
    per_rep = _map_reps(_rep_error_vs_radius, [(spec, c) for c in children])
    tab = CsvTable(
        ["kappa", "avg_max_abs_err", "avg_max_rel_err", "std_abs", "std_rel", "clamped"],
        meta={"kind": spec.kind, "B": spec.B, "M": spec.M, "q": spec.q,
              "sigma": spec.sigma, "reps": spec.repetitions, "seed": spec.seed},
    )
    tab.rows = _aggregate(per_rep, spec.kappa_list)
    return tab


def experiment_error_vs_bandwidth(spec: ExperimentSpec) -> CsvTable:
    """Fast-path error over bandwidths, optionally with an exact-stage control."""
    spec.validate()
    children = np.random.SeedSequence(spec.seed).spawn(spec.repetitions)
    per_rep = _map_reps(_rep_error_vs_bandwidth, [(spec, c) for c in children])
    cols = ["B", "avg_max_abs_err", "avg_max_rel_err", "std_abs", "std_rel", "clamped"]
    if spec.with_exact_control:
        cols += ["avg_max_abs_err_exact", "avg_max_rel_err_exact"]
    tab = CsvTable(
        cols,
        meta={"kind": spec.kind, "M": spec.M, "kappa": spec.kappa, "q": spec.q,
              "sigma": spec.sigma, "reps": spec.repetitions, "seed": spec.seed},
    )
    tab.rows = _aggregate(per_rep, spec.B_list, extra_exact=spec.with_exact_control)
    return tab


def experiment_runtime(spec: ExperimentSpec) -> CsvTable:
    """Wall-clock of the direct and fast paths over the point count.

    Runs sequentially (no worker pool) on a monotonic clock; the timing
    columns are the only nondeterministic ones in the suite.
    """
    spec.validate()
    children = np.random.SeedSequence(spec.seed).spawn(spec.repetitions)
    rows = []
    # warm the jitted kernels outside the timed region
    warm = gen_points_ball(8, spec.kappa, 0)
    pw = transform.plan(spec.B, warm, sigma=spec.sigma, q=spec.q)
    transform.forward(pw, gen_coeffs(spec.B, 0))
    for m in spec.m_list:
        naive_t, fast_t = [], []
        for child in children:
            rng = np.random.default_rng(child)
            coeffs = gen_coeffs(spec.B, rng)
            points = gen_points_ball(m, spec.kappa, rng)
            t0 = time.perf_counter()
            transform.evaluate_direct(coeffs, spec.B, points)
            naive_t.append(time.perf_counter() - t0)
            t0 = time.perf_counter()
            p = transform.plan(spec.B, points, sigma=spec.sigma, q=spec.q)
            transform.forward(p, coeffs)
            fast_t.append(time.perf_counter() - t0)
        rows.append([
            m,
            float(np.mean(naive_t)), float(np.median(naive_t)),
            float(np.mean(fast_t)), float(np.median(fast_t)),
        ])
    tab = CsvTable(
        ["M", "naive_mean_s", "naive_median_s", "fast_mean_s", "fast_median_s"],
        meta={"kind": spec.kind, "B": spec.B, "kappa": spec.kappa, "q": spec.q,
              "sigma": spec.sigma, "reps": spec.repetitions, "seed": spec.seed},
    )
    tab.rows = rows
    return tab


def experiment_inverse(spec: ExperimentSpec) -> CsvTable:
    """Per-iteration coefficient errors of the CG inversion on grids."""
    spec.validate()
    kappas = spec.kappa_list or [spec.kappa]
    child = np.random.SeedSequence(spec.seed).spawn(1)[0]
    rows = []
    for grid_n in spec.grid_n_list:
        for kappa in kappas:
            rng = np.random.default_rng(child)
            coeffs = gen_coeffs(spec.B, rng)
            points = gen_grid(grid_n, kappa)
            values = transform.evaluate_direct(coeffs, spec.B, points)
            rep = invert(
                points, values, spec.B, sigma=spec.sigma, q=spec.q,
                solver="cgnr", max_iter=spec.max_iter, tol=0.0,
                x0_mode="midpoint", kappa=kappa, grid_n=grid_n,
                true_coeffs=coeffs,
            )
            for it, (ae, re_) in enumerate(zip(rep.abs_error_history,
                                               rep.rel_error_history)):
                rows.append([grid_n, kappa, it, ae, re_,
                             rep.residual_history[it]])
    tab = CsvTable(
        ["N", "kappa", "iteration", "max_abs_err", "max_rel_err", "residual"],
        meta={"kind": spec.kind, "B": spec.B, "q": spec.q, "sigma": spec.sigma,
              "seed": spec.seed},
    )
    tab.rows = rows
    return tab


RUNNERS = {
    "error-vs-q": experiment_error_vs_q,
    "error-vs-radius": experiment_error_vs_radius,
    "error-vs-bandwidth": experiment_error_vs_bandwidth,
    "runtime": experiment_runtime,
    "inverse-convergence": experiment_inverse,
}


def run_experiment(spec: ExperimentSpec) -> CsvTable:
    spec.validate()
    return RUNNERS[spec.kind](spec)
