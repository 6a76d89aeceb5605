"""Recover the Euler characteristic of a metric graph from its eigenfrequencies.

The pipeline: describe a compact metric graph (`graph`), compute finitely
many eigenfrequencies of its standard Laplacian (`spectrum`), pick a test
function (`testfn`) and certified truncation parameters (`planner`), then sum
and round (`estimator`). `orbits` verifies the underlying trace identity
independently, and `cli` wires everything into reproducible experiments.
"""

from .estimator import NoiseModel, nint, perturb_spectrum, recover_chi, truncated_sum
from .graph import (
    Edge,
    GraphError,
    GraphSummary,
    MetricGraph,
    attach_loop,
    build_graph,
    complete_bipartite_graph,
    complete_graph,
    equilateral_subdivision,
    interval_graph,
    loop_graph,
    parse_graph,
    preset,
    star_graph,
    subdivide_edge,
    summarize,
    to_document,
)
from .orbits import (
    OrbitBudgetError,
    PeriodicOrbit,
    enumerate_orbits,
    orbit_side,
    scattering_amplitude,
    trace_check,
)
from .planner import (
    PlanError,
    RecoveryPlan,
    alpha_star,
    beta_continuous,
    epsilon,
    j_min,
    lambert_w_unit,
    length_bound,
    optimal_plan,
    tail_bound,
    tail_envelope,
    triangular_tail,
)
from .spectrum import (
    Spectrum,
    SpectrumCountError,
    ValidationReport,
    analytic_spectrum,
    compare_spectra,
    read_spectrum_csv,
    secular_matrix,
    secular_spectrum,
    spectrum_csv_text,
    spectrum_with_count,
    validate_spectrum,
    von_below_spectrum,
    write_spectrum_csv,
)
from .testfn import (
    TestFunction,
    cosine_power,
    eval_time,
    fourier,
    majorant,
    normalization,
    re_fourier,
    triangular,
)

__version__ = "0.1.0"

__all__ = [
    "Edge",
    "GraphError",
    "GraphSummary",
    "MetricGraph",
    "NoiseModel",
    "OrbitBudgetError",
    "PeriodicOrbit",
    "PlanError",
    "RecoveryPlan",
    "Spectrum",
    "SpectrumCountError",
    "TestFunction",
    "ValidationReport",
    "alpha_star",
    "analytic_spectrum",
    "attach_loop",
    "beta_continuous",
    "build_graph",
    "compare_spectra",
    "complete_bipartite_graph",
    "complete_graph",
    "cosine_power",
    "enumerate_orbits",
    "epsilon",
    "equilateral_subdivision",
    "eval_time",
    "fourier",
    "interval_graph",
    "j_min",
    "lambert_w_unit",
    "length_bound",
    "loop_graph",
    "majorant",
    "nint",
    "normalization",
    "optimal_plan",
    "orbit_side",
    "parse_graph",
    "perturb_spectrum",
    "preset",
    "re_fourier",
    "read_spectrum_csv",
    "recover_chi",
    "scattering_amplitude",
    "secular_matrix",
    "secular_spectrum",
    "spectrum_csv_text",
    "spectrum_with_count",
    "star_graph",
    "subdivide_edge",
    "summarize",
    "tail_bound",
    "tail_envelope",
    "to_document",
    "trace_check",
    "triangular",
    "triangular_tail",
    "truncated_sum",
    "validate_spectrum",
    "von_below_spectrum",
    "write_spectrum_csv",
]
