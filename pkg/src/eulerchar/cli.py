"""Command line front end.

Subcommands:

* ``spectrum``: compute eigenfrequencies of a graph file to CSV.
* ``plan``: certified recovery parameters from priors or a graph.
* ``estimate``: recover chi from a spectrum CSV.
* ``perturb``: add reproducible uniform noise to a spectrum CSV.
* ``verify-trace``: check the trace identity orbit-side against a spectrum.
* ``experiment``: run a full preset study into a directory of CSV + SVG.

Exit codes: 0 success, 1 a certified bound was violated at runtime, 2 bad
input. All randomness is seeded and all files are written with fixed number
formats, so identical invocations produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .estimator import NoiseModel, nint, perturb_spectrum, truncated_sum
from .graph import GraphError, MetricGraph, PRESET_NAMES, equilateral_subdivision, parse_graph, preset, summarize
from .planner import PlanError, RecoveryPlan, epsilon, optimal_plan, tail_bound
from .orbits import trace_check
from .spectrum import (
    Spectrum,
    SpectrumCountError,
    compare_spectra,
    read_spectrum_csv,
    secular_spectrum,
    spectrum_csv_text,
    spectrum_with_count,
    von_below_spectrum,
    write_spectrum_csv,
)
from .svgplot import Series, line_plot
from .testfn import TestFunction, cosine_power, triangular

__all__ = ["main", "ExperimentConfig", "run_experiment", "plan_block"]

EXIT_OK = 0
EXIT_BOUND_VIOLATION = 1
EXIT_INPUT_ERROR = 2

EXPERIMENT_PRESETS = PRESET_NAMES + ("compare", "table")

# Rows of the order/count table reproduced by `experiment table` (M_bar = 0).
TABLE_RHOS = (2.0, 15.6, 16.5, 421.0, 423.0, 1e4)


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything a full experiment run depends on."""

    preset: str
    eps_bar: float = 0.25
    seeds: int = 100
    delta: float | None = None  # None means the plan's delta_max
    out_dir: str = ""
    base_seed: int = 0
    graph_path: str = ""

    def __post_init__(self) -> None:
        if self.seeds < 1:
            raise ValueError("seeds must be at least 1")
        if not 0.0 < self.eps_bar < 1.0:
            raise ValueError("eps_bar must lie in (0, 1)")


def _load_graph(path: str) -> MetricGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def _resolve_graph(name_or_path: str) -> MetricGraph:
    if name_or_path in PRESET_NAMES:
        return preset(name_or_path)
    return _load_graph(name_or_path)


def plan_block(plan: RecoveryPlan) -> str:
    """The flat key=value serialization of a plan, one pair per line."""
    lines = [
        f"eps_bar={plan.eps_bar:.16g}",
        f"M_bar={plan.M_bar:.16g}",
        f"L_bar={plan.L_bar:.16g}",
        f"lmin_lower={plan.lmin_lower:.16g}",
        f"t={plan.t:.16g}",
        f"rho={plan.rho:.16g}",
        f"alpha_star={plan.alpha_star:.16g}",
        f"d={plan.d}",
        f"J={plan.J}",
        f"beta={plan.beta:.16g}",
        f"delta_max={plan.delta_max:.16g}",
        f"eps_value={plan.eps_value:.16g}",
    ]
    try:
        eps_prev = epsilon(plan.M_bar, plan.rho, plan.d, plan.J - 1)
        lines.append(f"eps_prev={eps_prev:.16g}")
    except PlanError:
        lines.append("eps_prev=undefined")
    return "\n".join(lines) + "\n"


def _order_boundary_note(plan: RecoveryPlan) -> str | None:
    """A note when a neighboring order nearly ties J*, so d* is rounding-sensitive."""
    from .planner import beta_continuous

    for d in (plan.d - 1, plan.d + 1):
        if d < 1:
            continue
        try:
            j_other = math.ceil(beta_continuous(plan.eps_bar, plan.M_bar, plan.rho, d))
        except PlanError:
            continue
        if abs(j_other - plan.J) <= 2:
            return (
                f"note=order boundary: d={d} needs J={j_other}, within 2 of J={plan.J}; "
                "d* is sensitive to rounding in rho near this point"
            )
    return None


# ---------------------------------------------------------------------------
# Subcommands


def cmd_spectrum(args: argparse.Namespace) -> int:
    g = _resolve_graph(args.graph)
    if args.count is None and args.kmax is None:
        args.count = 60
    method = args.method

    def compute(kind: str) -> Spectrum:
        if args.kmax is not None:
            if kind == "von-below":
                return von_below_spectrum(g_eq, args.kmax)
            return secular_spectrum(g, args.kmax)
        return spectrum_with_count(g_eq if kind == "von-below" else g, args.count, kind)

    g_eq = g
    note = ""
    if method in ("von-below", "auto"):
        try:
            g_eq, piece = equilateral_subdivision(g)
            if method == "auto":
                note = f"# note=von Below cross-check on {len(g_eq.edges)} edges of {piece:.6g}"
        except GraphError as exc:
            if method == "von-below":
                raise
            method = "secular"
            note = f"# note=von Below cross-check skipped ({exc})"

    if method == "secular":
        s = compute("secular")
    elif method == "von-below":
        s = compute("von-below")
    else:
        s = compute("secular")
        vb = von_below_spectrum(g_eq, s.k_max_covered)
        diff = compare_spectra(s, vb, count=len(s.values))
        if diff > s.tol + vb.tol + 1e-8:
            print(f"method disagreement: max |dk| = {diff:.3e}", file=sys.stderr)
            return EXIT_BOUND_VIOLATION
        note += f"\n# note=cross-validated against von Below, max |dk| = {diff:.3e}"

    text = spectrum_csv_text(s, {"graph": g.name})
    if note:
        text = note.strip() + "\n" + text
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {len(s.values)} eigenfrequencies to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _plan_from_args(args: argparse.Namespace) -> RecoveryPlan:
    if args.graph:
        g = _resolve_graph(args.graph)
        summary = summarize(g)
        return optimal_plan(args.eps, summary.M, summary.total_length, summary.l_min)
    if args.M is None or args.L is None or args.lmin is None:
        raise PlanError("give either --graph or all of --M, --L, --lmin")
    return optimal_plan(args.eps, args.M, args.L, args.lmin)


def cmd_plan(args: argparse.Namespace) -> int:
    plan = _plan_from_args(args)
    sys.stdout.write(plan_block(plan))
    note = _order_boundary_note(plan)
    if note:
        print(note)
    return EXIT_OK


def cmd_estimate(args: argparse.Namespace) -> int:
    s, _meta = read_spectrum_csv(args.spectrum)
    bound = math.nan
    if args.t is not None and args.J is not None:
        t, d, J = args.t, args.d, args.J
        if args.M is not None and args.L is not None:
            x = J - args.M
            Lt = args.L * t
            if x > 2.0 * Lt * d:
                bound = tail_bound(d, x, Lt) + 2.0 * s.tol * J / t
    else:
        plan = _plan_from_args(args)
        t, d, J = plan.t, plan.d, plan.J
        bound = tail_bound(d, J - plan.M_bar, plan.rho / 2.0) + 2.0 * s.tol * J / t
    S = truncated_sum(s, cosine_power(d), t, J)
    chi_hat = nint(S)
    print(f"S={S:.16g}")
    print(f"chi_hat={chi_hat}")
    print(f"bound={bound:.16g}")
    if math.isfinite(bound) and bound >= 0.5:
        print("note=bound does not certify a unique integer")
    if math.isfinite(bound) and abs(S - chi_hat) > bound:
        print("bound violation: the truncated sum is farther from every integer "
              "than the certified bound allows", file=sys.stderr)
        return EXIT_BOUND_VIOLATION
    return EXIT_OK


def cmd_perturb(args: argparse.Namespace) -> int:
    s, _meta = read_spectrum_csv(args.spectrum)
    noisy = perturb_spectrum(s, NoiseModel(args.delta, args.seed))
    metadata = {"delta": f"{args.delta:.16g}", "seed": str(args.seed), "source": s.method}
    text = spectrum_csv_text(noisy, metadata)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote perturbed spectrum to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify_trace(args: argparse.Namespace) -> int:
    g = _resolve_graph(args.graph)
    tf = triangular() if args.psi else cosine_power(args.d)
    summary = summarize(g)
    kmax = args.kmax
    if kmax is None:
        kmax = (summary.M + 200) * math.pi / summary.total_length
    s = secular_spectrum(g, kmax)
    lhs, rhs, gap, bound = trace_check(g, tf, args.t, s)
    print(f"lhs={lhs:.16g}")
    print(f"rhs={rhs:.16g}")
    print(f"gap={gap:.3e}")
    print(f"certified_bound={bound:.3e}")
    if gap > bound + 1e-9:
        print("trace identity violated beyond the certified bound", file=sys.stderr)
        return EXIT_BOUND_VIOLATION
    print("trace identity holds within the certified bound")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Experiments


def _write_csv(path: Path, header: str, rows: list[str]) -> None:
    path.write_text(header + "\n" + "\n".join(rows) + "\n", encoding="utf-8")


def _sweep_series(
    s: Spectrum, tf: TestFunction, J: int, ts: np.ndarray
) -> np.ndarray:
    return np.array([truncated_sum(s, tf, float(t), J) for t in ts])


def _experiment_table(out: Path, eps_bar: float) -> int:
    rows = []
    for rho in TABLE_RHOS:
        plan = optimal_plan(eps_bar, 0.0, rho / 2.0, 1.0)
        rows.append(f"{rho:.16g},{plan.d},{plan.J}")
        print(f"rho={rho:<8g} d*={plan.d} J*-M={plan.J}")
    _write_csv(out / "table.csv", "rho,d,J_minus_M", rows)
    print(f"wrote {out / 'table.csv'}")
    return EXIT_OK


def _experiment_compare(out: Path, eps_bar: float) -> int:
    """Overlay of S_30(t) with d=1 for the three equal-total-chi-gap graphs."""
    J, d = 30, 1
    tf = cosine_power(d)
    names = ("k5", "k5-pendant", "k33")
    ts = np.round(np.arange(0.02, 0.701, 0.01), 10)
    columns = []
    chis = []
    for name in names:
        g = preset(name)
        chis.append(summarize(g).chi)
        s = spectrum_with_count(g, J)
        columns.append(_sweep_series(s, tf, J, ts))
    rows = [
        f"{t:.6g}," + ",".join(f"{c[i]:.16e}" for c in columns) for i, t in enumerate(ts)
    ]
    _write_csv(out / "compare.csv", "t," + ",".join(n.replace("-", "_") for n in names), rows)
    line_plot(
        out / "compare.svg",
        f"Truncated sums, d={d}, J={J}",
        "t",
        "S_J(t)",
        [Series(n, list(ts), list(c)) for n, c in zip(names, columns)],
        hlines=tuple(float(c) for c in chis),
    )
    for name, chi, col in zip(names, chis, columns):
        at_half = float(col[np.argmin(np.abs(ts - 0.5))])
        print(f"{name}: chi={chi}, S_{J}(0.5)={at_half:.4f}")
    print(f"wrote {out / 'compare.csv'} and compare.svg")
    return EXIT_OK


def run_experiment(config: ExperimentConfig) -> int:
    out = Path(config.out_dir or f"experiment-{config.preset}")
    out.mkdir(parents=True, exist_ok=True)
    if config.preset == "table":
        return _experiment_table(out, config.eps_bar)
    if config.preset == "compare":
        return _experiment_compare(out, config.eps_bar)

    g = _load_graph(config.graph_path) if config.preset == "custom" else preset(config.preset)
    summary = summarize(g)
    chi = summary.chi
    plan = optimal_plan(config.eps_bar, summary.M, summary.total_length, summary.l_min)
    delta = plan.delta_max if config.delta is None else config.delta
    tf = cosine_power(plan.d)

    J_hi = plan.J + 20
    s = spectrum_with_count(g, J_hi)

    (out / "plan.txt").write_text(plan_block(plan), encoding="utf-8")
    write_spectrum_csv(out / "spectrum.csv", s, {"graph": g.name})

    # Noisy recovery sweep; the seed=-1 row is the exact spectrum.
    plan_echo = "".join(f"# {line}\n" for line in plan_block(plan).strip().split("\n"))
    tail = tail_bound(plan.d, plan.J - plan.M_bar, plan.rho / 2.0)
    rows = []
    failures = 0
    noisy_cache: list[Spectrum] = []
    S_exact = truncated_sum(s, tf, plan.t, plan.J)
    rows.append(
        f"{plan.t:.16g},{plan.J},{S_exact:.16e},{abs(S_exact - chi):.16e},{tail:.16e},-1"
    )
    for i in range(config.seeds):
        seed = config.base_seed + i
        noisy = perturb_spectrum(s, NoiseModel(delta, seed))
        if len(noisy_cache) < 3:
            noisy_cache.append(noisy)
        S = truncated_sum(noisy, tf, plan.t, plan.J)
        bound = tail + 2.0 * delta * plan.J / plan.t
        rows.append(f"{plan.t:.16g},{plan.J},{S:.16e},{abs(S - chi):.16e},{bound:.16e},{seed}")
        if nint(S) != chi:
            failures += 1
    header = "t,J,S,abs_err,bound,seed"
    (out / "recovery.csv").write_text(plan_echo + header + "\n" + "\n".join(rows) + "\n",
                                      encoding="utf-8")

    # Sweep of S_J over the time scaling, exact and three noisy overlays.
    ts = np.round(np.linspace(0.1 * plan.t, 1.4 * plan.t, 53), 12)
    exact_sweep = _sweep_series(s, tf, plan.J, ts)
    overlays = [_sweep_series(n, tf, plan.J, ts) for n in noisy_cache]
    sweep_rows = []
    for i, t in enumerate(ts):
        cells = [f"{t:.6g}", f"{exact_sweep[i]:.16e}"]
        cells.extend(f"{o[i]:.16e}" for o in overlays)
        sweep_rows.append(",".join(cells))
    overlay_names = [f"S_noisy_seed{config.base_seed + i}" for i in range(len(overlays))]
    _write_csv(out / "sweep_t.csv", "t,S_exact," + ",".join(overlay_names), sweep_rows)
    line_plot(
        out / "sweep_t.svg",
        f"{g.name}: S_J(t), J={plan.J}, d={plan.d}, delta={delta:.2e}",
        "t",
        "S_J(t)",
        [Series("exact", list(ts), list(exact_sweep))]
        + [Series(n, list(ts), list(o)) for n, o in zip(overlay_names, overlays)],
        hlines=(float(chi),),
    )

    # Cosine power against the triangular function at the same J.
    psi_sweep = _sweep_series(s, triangular(), plan.J, ts)
    _write_csv(
        out / "testfn_compare.csv",
        "t,S_cosine_power,S_triangular",
        [f"{t:.6g},{exact_sweep[i]:.16e},{psi_sweep[i]:.16e}" for i, t in enumerate(ts)],
    )
    line_plot(
        out / "testfn_compare.svg",
        f"{g.name}: test function comparison, J={plan.J}",
        "t",
        "S_J(t)",
        [
            Series(f"cosine power d={plan.d}", list(ts), list(exact_sweep)),
            Series("triangular", list(ts), list(psi_sweep)),
        ],
        hlines=(float(chi),),
    )

    # Error against certified bound, sweeping t at fixed J.
    err_t_rows = []
    errs_t, bounds_t = [], []
    for i, t in enumerate(ts):
        err = abs(exact_sweep[i] - chi)
        x = plan.J - summary.M
        Lt = summary.total_length * float(t)
        b = tail_bound(plan.d, x, Lt) if x > 2.0 * Lt * plan.d else math.nan
        errs_t.append(err)
        bounds_t.append(b)
        err_t_rows.append(f"{t:.6g},{err:.16e},{b:.16e}")
    _write_csv(out / "error_vs_t.csv", "t,abs_err,bound", err_t_rows)
    line_plot(
        out / "error_vs_t.svg",
        f"{g.name}: |S_J(t) - chi| vs bound, J={plan.J}",
        "t",
        "absolute error",
        [Series("error", list(ts), errs_t), Series("bound", list(ts), bounds_t)],
        log_y=True,
    )

    # Error against certified bound, sweeping J at the plan's t.
    Lt_star = summary.total_length * plan.t
    js = list(range(2, J_hi + 1))
    errs_j, bounds_j = [], []
    err_j_rows = []
    for J in js:
        err = abs(truncated_sum(s, tf, plan.t, J) - chi)
        x = J - summary.M
        b = tail_bound(plan.d, x, Lt_star) if x > 2.0 * Lt_star * plan.d else math.nan
        errs_j.append(err)
        bounds_j.append(b)
        err_j_rows.append(f"{J},{err:.16e},{b:.16e}")
    _write_csv(out / "error_vs_J.csv", "J,abs_err,bound", err_j_rows)
    line_plot(
        out / "error_vs_J.svg",
        f"{g.name}: |S_J(t*) - chi| vs bound, t*={plan.t:.4g}",
        "J",
        "absolute error",
        [Series("error", [float(j) for j in js], errs_j),
         Series("bound", [float(j) for j in js], bounds_j)],
        log_y=True,
    )

    print(f"graph {g.name}: chi={chi}, plan d={plan.d}, J={plan.J}, "
          f"t={plan.t:.6g}, delta_max={plan.delta_max:.3e}")
    print(f"exact S_J(t) = {S_exact:.6f} -> chi_hat = {nint(S_exact)}")
    print(f"noisy recovery at delta={delta:.3e}: "
          f"{config.seeds - failures}/{config.seeds} correct")
    print(f"outputs in {out}/")
    if nint(S_exact) != chi or failures:
        print("recovery failed inside its certified regime", file=sys.stderr)
        return EXIT_BOUND_VIOLATION
    return EXIT_OK


def cmd_experiment(args: argparse.Namespace) -> int:
    preset_name = args.preset
    graph_path = ""
    if preset_name not in EXPERIMENT_PRESETS:
        graph_path = preset_name
        preset_name = "custom"
    delta = None if args.delta in (None, "auto") else float(args.delta)
    config = ExperimentConfig(
        preset=preset_name,
        eps_bar=args.eps,
        seeds=args.seeds,
        delta=delta,
        out_dir=args.out or "",
        base_seed=args.seed,
        graph_path=graph_path,
    )
    return run_experiment(config)


# ---------------------------------------------------------------------------
# Parser


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="base seed for noise")
    common.add_argument("--eps", type=float, default=0.25, help="target bound eps_bar")
    common.add_argument("--out", "-o", default="", help="output file or directory")

    parser = argparse.ArgumentParser(
        prog="eulerchar",
        description="Recover the Euler characteristic of a metric graph from "
        "finitely many Laplace eigenfrequencies.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common],
                       help="compute eigenfrequencies to CSV")
    p.add_argument("graph", help="graph JSON file or preset name")
    p.add_argument("--count", type=int, help="number of eigenfrequencies (default 60)")
    p.add_argument("--kmax", type=float, help="compute everything up to this k instead")
    p.add_argument("--method", choices=("secular", "von-below", "auto"), default="auto")
    p.set_defaults(fn=cmd_spectrum)

    p = sub.add_parser("plan", parents=[common],
                       help="certified recovery parameters from priors")
    p.add_argument("--M", type=float, help="upper bound on the vertex count")
    p.add_argument("--L", type=float, help="upper bound on the total length")
    p.add_argument("--lmin", type=float, help="lower bound on the shortest orbit")
    p.add_argument("--graph", default="", help="read the priors off this graph instead")
    p.set_defaults(fn=cmd_plan)

    p = sub.add_parser("estimate", parents=[common],
                       help="recover chi from a spectrum CSV")
    p.add_argument("--spectrum", required=True, help="spectrum CSV file")
    p.add_argument("--t", type=float, help="time scaling (with --d, --J)")
    p.add_argument("--d", type=int, default=1, help="cosine power order")
    p.add_argument("--J", type=int, help="number of eigenfrequencies to use")
    p.add_argument("--M", type=float, help="vertex bound (for the certified bound)")
    p.add_argument("--L", type=float, help="length bound (for the certified bound)")
    p.add_argument("--lmin", type=float, help="shortest orbit lower bound")
    p.add_argument("--graph", default="", help="read the priors off this graph instead")
    p.set_defaults(fn=cmd_estimate)

    p = sub.add_parser("perturb", parents=[common],
                       help="add seeded uniform noise to a spectrum CSV")
    p.add_argument("--spectrum", required=True, help="spectrum CSV file")
    p.add_argument("--delta", type=float, required=True, help="noise half-width")
    p.set_defaults(fn=cmd_perturb)

    p = sub.add_parser("verify-trace", parents=[common],
                       help="check the trace identity against a computed spectrum")
    p.add_argument("--graph", required=True, help="graph JSON file or preset name")
    p.add_argument("--t", type=float, required=True, help="time scaling")
    p.add_argument("--d", type=int, default=1, help="cosine power order")
    p.add_argument("--psi", action="store_true", help="use the triangular function")
    p.add_argument("--kmax", type=float, help="spectral range (default about 200 values)")
    p.set_defaults(fn=cmd_verify_trace)

    p = sub.add_parser("experiment", parents=[common],
                       help="run a full preset study into a directory")
    p.add_argument("preset",
                   help=f"one of {', '.join(EXPERIMENT_PRESETS)}, or a graph JSON file")
    p.add_argument("--seeds", type=int, default=100, help="noisy spectra per sweep")
    p.add_argument("--delta", default="auto",
                   help="noise half-width, or `auto` for the plan's delta_max")
    p.set_defaults(fn=cmd_experiment)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits on usage errors and --help; surface the code as a
        # return value so programmatic callers see the same contract.
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except (GraphError, PlanError, SpectrumCountError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
