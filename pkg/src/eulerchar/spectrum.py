"""Eigenfrequencies of the standard Laplacian on a metric graph.

Two independent numerical methods plus closed-form oracles:

* ``secular_spectrum``: works on any graph. Restricted to an edge of length
  l, an eigenfunction is a_e cos(kx) + b_e sin(kx); continuity and derivative
  balance at every vertex give a square linear system A(k), and the
  eigenfrequencies are the k where A(k) is singular. Roots are located by
  scanning the smallest singular value on a grid, refining local minima by
  golden-section search, and reading multiplicities off the nullity.
* ``von_below_spectrum``: equilateral graphs only. Eigenvalues mu of the
  degree-normalized adjacency matrix of the discrete graph are lifted through
  cos(ka) = mu; the lattice points k = n pi / a need the secular nullity for
  their multiplicities and are certified against the general method.
* ``analytic_spectrum``: textbook spectra for intervals, loops, and
  equilateral stars, used as oracles in tests.

Every spectrum lists k_1 = 0 explicitly (inserted analytically, never found
numerically) and repeats eigenfrequencies by multiplicity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import GraphError, MetricGraph, summarize

__all__ = [
    "Spectrum",
    "SpectrumCountError",
    "ValidationReport",
    "METHODS",
    "secular_matrix",
    "secular_spectrum",
    "von_below_spectrum",
    "analytic_spectrum",
    "spectrum_with_count",
    "validate_spectrum",
    "compare_spectra",
    "read_spectrum_csv",
    "spectrum_csv_text",
    "write_spectrum_csv",
]

METHODS = ("von-below", "secular", "analytic", "external")

# Singular values below RANK_TOL * max(sigma_max, 1) count toward the nullity.
# The floor at 1 matters: at a loop's eigenfrequencies the whole secular
# matrix vanishes, so a purely relative threshold would report nullity 0.
RANK_TOL = 1e-7

# Golden-section refinement stops when the bracket is narrower than this.
REFINE_TOL = 1e-12

# Refined roots closer than this are the same eigenvalue found twice.
MERGE_TOL = 1e-9


class SpectrumCountError(RuntimeError):
    """Eigenvalue counting failed a Weyl-window cross-check after rescue scans."""


@dataclass(frozen=True)
class Spectrum:
    """Ordered eigenfrequencies k_j >= 0, repeated by multiplicity.

    k_max_covered is the threshold up to which the listing claims
    completeness; method records provenance; tol bounds the per-value error.
    """

    values: tuple[float, ...]
    k_max_covered: float
    method: str
    tol: float

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        if not self.values:
            raise ValueError("spectrum is empty")
        if self.values[0] != 0.0:
            raise ValueError(f"spectra must start at k_1 = 0, got {self.values[0]!r}")
        prev = 0.0
        for v in self.values:
            if not math.isfinite(v) or v < 0.0:
                raise ValueError(f"eigenfrequency {v!r} is not a finite nonnegative real")
            if v < prev:
                raise ValueError("eigenfrequencies must be nondecreasing")
            prev = v
        if self.tol < 0.0:
            raise ValueError("tol must be nonnegative")


@dataclass(frozen=True)
class ValidationReport:
    """Checks of a spectrum against the graph it claims to come from.

    weyl_lower_ok: k_j >= (j - M) pi / L for every j (a proved estimate).
    zero_mode_ok: k_1 = 0 and, the graph being connected, k_2 > 0.
    weyl_window_ok: eigenvalue counts stay within +-M of k L / pi at every
    sampled k; the upper half of the window is a heuristic, so its failure
    is reported but kept separate from ok.
    """

    weyl_lower_ok: bool
    zero_mode_ok: bool
    weyl_window_ok: bool
    messages: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.weyl_lower_ok and self.zero_mode_ok


# ---------------------------------------------------------------------------
# Secular method


def _edge_ends(g: MetricGraph) -> dict[str, list[tuple[int, int]]]:
    """Map vertex -> incident (edge index, end) pairs; a loop contributes both ends."""
    ends: dict[str, list[tuple[int, int]]] = {v: [] for v in g.vertices}
    for i, e in enumerate(g.edges):
        ends[e.u].append((i, 0))
        ends[e.v].append((i, 1))
    return ends


def secular_matrix(g: MetricGraph, k) -> np.ndarray:
    """The 2N x 2N vertex-condition system A(k); k may be a scalar or 1-d array.

    Unknowns are (a_e, b_e) per edge in columns (2e, 2e+1). Each vertex of
    degree dv contributes dv - 1 continuity rows (value at one end minus
    value at a reference end) and one balance row (sum of derivatives taken
    into the edges, divided by k to keep the matrix entire in k).
    """
    karr = np.atleast_1d(np.asarray(k, dtype=float))
    nk = karr.shape[0]
    n2 = 2 * len(g.edges)
    lengths = np.array([e.length for e in g.edges])
    cos_kl = np.cos(karr[:, None] * lengths[None, :])
    sin_kl = np.sin(karr[:, None] * lengths[None, :])
    ones = np.ones(nk)
    zeros = np.zeros(nk)

    def value_coeffs(edge: int, end: int) -> tuple[np.ndarray, np.ndarray]:
        if end == 0:
            return ones, zeros
        return cos_kl[:, edge], sin_kl[:, edge]

    def deriv_coeffs(edge: int, end: int) -> tuple[np.ndarray, np.ndarray]:
        if end == 0:
            return zeros, ones
        return sin_kl[:, edge], -cos_kl[:, edge]

    A = np.zeros((nk, n2, n2))
    ends = _edge_ends(g)
    row = 0
    for v in g.vertices:
        incident = ends[v]
        e0, end0 = incident[0]
        a0, b0 = value_coeffs(e0, end0)
        for e1, end1 in incident[1:]:
            a1, b1 = value_coeffs(e1, end1)
            A[:, row, 2 * e1] += a1
            A[:, row, 2 * e1 + 1] += b1
            A[:, row, 2 * e0] -= a0
            A[:, row, 2 * e0 + 1] -= b0
            row += 1
        for e1, end1 in incident:
            da, db = deriv_coeffs(e1, end1)
            A[:, row, 2 * e1] += da
            A[:, row, 2 * e1 + 1] += db
        row += 1
    assert row == n2
    return A if np.ndim(k) else A[0]


def _singular_values(g: MetricGraph, k: np.ndarray, chunk: int = 4096) -> np.ndarray:
    """Singular values of A(k) for each k, shape (len(k), 2N), descending."""
    karr = np.asarray(k, dtype=float)
    out = []
    for start in range(0, karr.shape[0], chunk):
        block = secular_matrix(g, karr[start : start + chunk])
        out.append(np.linalg.svd(block, compute_uv=False))
    return np.concatenate(out, axis=0)


def _nullity(g: MetricGraph, k: float) -> int:
    sigma = np.linalg.svd(secular_matrix(g, np.array([k]))[0], compute_uv=False)
    threshold = RANK_TOL * max(float(sigma[0]), 1.0)
    return int(np.sum(sigma < threshold))


def _golden_refine(fn, lo: float, hi: float) -> float:
    """Golden-section minimum of a unimodal fn on [lo, hi] to width REFINE_TOL."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = fn(c), fn(d)
    while b - a > REFINE_TOL:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = fn(d)
    return 0.5 * (a + b)


def _local_minima(values: np.ndarray) -> np.ndarray:
    """Interior indices i with values[i] <= both neighbors (plateaus: left edge)."""
    v = values
    idx = np.nonzero((v[1:-1] <= v[:-2]) & (v[1:-1] <= v[2:]))[0] + 1
    # A flat plateau would report every index; keep only the first of a run.
    if idx.size > 1:
        keep = np.concatenate(([True], np.diff(idx) > 1))
        idx = idx[keep]
    return idx


def _scan_for_roots(
    g: MetricGraph, grid: np.ndarray, order: int
) -> list[tuple[float, int]]:
    """Scan objective minima on the grid and refine them to roots.

    order selects the objective: 1 minimizes the smallest singular value,
    2 the product of the two smallest (which stays V-shaped when a slowly
    varying singular-value floor of weakly coupled subsystems masks sigma_min;
    used by rescue passes). Returns (k, nullity) pairs with nullity >= 1.
    """
    sig = _singular_values(g, grid)
    if order == 1:
        objective = sig[:, -1]
    else:
        objective = sig[:, -1] * sig[:, -2]

    def fn(k: float) -> float:
        s = np.linalg.svd(secular_matrix(g, np.array([k]))[0], compute_uv=False)
        return float(s[-1]) if order == 1 else float(s[-1] * s[-2])

    k_low = 0.5 * math.pi / g.total_length()
    roots: list[tuple[float, int]] = []
    for i in _local_minima(objective):
        k_star = _golden_refine(fn, float(grid[i - 1]), float(grid[i + 1]))
        if k_star < k_low:
            continue
        nullity = _nullity(g, k_star)
        if nullity >= 1:
            roots.append((k_star, nullity))
    return roots


def _merge_roots(roots: list[tuple[float, int]]) -> list[tuple[float, int]]:
    """Collapse refined roots closer than MERGE_TOL, keeping the larger nullity."""
    merged: list[tuple[float, int]] = []
    for k, nullity in sorted(roots):
        if merged and k - merged[-1][0] < MERGE_TOL:
            prev_k, prev_n = merged[-1]
            merged[-1] = (prev_k, max(prev_n, nullity))
        else:
            merged.append((k, nullity))
    return merged


def _weyl_window_violations(
    values: list[float], k_max: float, total_length: float, M: int
) -> list[float]:
    """Sample points where the eigenvalue count leaves [kL/pi - M, kL/pi + M]."""
    arr = np.array(values)
    bad = []
    # Refined roots carry ~1e-12 jitter, which matters when the count sits
    # exactly on the window edge (every lattice eigenvalue of an equilateral
    # graph does). A real miss moves the count by a whole unit, so a 1e-6
    # slack cannot mask one.
    slack = 1e-6
    for k in sorted(set(values)) + [k_max]:
        if k <= 0.0:
            continue
        count = int(np.sum(arr <= k + MERGE_TOL))
        center = k * total_length / math.pi
        if not (center - M - slack <= count <= center + M + slack):
            bad.append(k)
    return bad


def secular_spectrum(g: MetricGraph, k_max: float) -> Spectrum:
    """All eigenfrequencies in [0, k_max] with multiplicities, any graph.

    The scan step is pi / (8 L), four samples per mean eigenvalue spacing
    doubled for safety. A Weyl-window count check guards against misses in
    tight clusters; on a violation the range is rescanned at 8x and then 64x
    resolution using the product of the two smallest singular values, which
    recovers dips masked by near-degenerate crossings. If the count still
    fails after the rescue passes, SpectrumCountError reports the sample
    points, since silently returning an incomplete spectrum would corrupt
    every downstream sum.
    """
    if k_max <= 0.0:
        raise ValueError("k_max must be positive")
    total = g.total_length()
    M = len(g.vertices)
    base_h = math.pi / (8.0 * total)

    found: list[tuple[float, int]] = []
    for refine in (1, 8, 64):
        h = base_h / refine
        grid = np.arange(1, math.ceil(k_max / h) + 2) * h
        order = 1 if refine == 1 else 2
        found = _merge_roots(found + _scan_for_roots(g, grid, order))
        values = [0.0] + [k for k, n in found if k <= k_max + MERGE_TOL for _ in range(n)]
        if not _weyl_window_violations(values, k_max, total, M):
            return Spectrum(tuple(values), float(k_max), "secular", 1e-10)
    bad = _weyl_window_violations(values, k_max, total, M)
    raise SpectrumCountError(
        f"eigenvalue count leaves the Weyl window near k = {bad[:5]} even after "
        f"64x rescue scans; the spectrum of {g.name!r} near those points needs "
        "manual inspection"
    )


# ---------------------------------------------------------------------------
# von Below lift for equilateral graphs


def _equilateral_length(g: MetricGraph) -> float:
    a = g.edges[0].length
    for e in g.edges:
        if abs(e.length - a) > 1e-12 * a:
            raise GraphError("von Below lift needs an equilateral graph")
    return a


def von_below_spectrum(g: MetricGraph, k_max: float) -> Spectrum:
    """Eigenfrequencies of an equilateral graph through the discrete spectrum.

    Loops must be subdivided away first (their halves become parallel edges,
    which are fine: the adjacency matrix just counts them). Each discrete
    eigenvalue mu in (-1, 1) of the degree-normalized adjacency lifts to
    k = (arccos mu + 2 pi n)/a and k = (-arccos mu + 2 pi (n+1))/a; the
    lattice points k = n pi / a take their multiplicities from the secular
    nullity, deferring the one genuinely convention-laden case to the method
    that needs no convention.
    """
    if k_max <= 0.0:
        raise ValueError("k_max must be positive")
    if any(e.u == e.v for e in g.edges):
        raise GraphError("subdivide loops before the von Below lift")
    a = _equilateral_length(g)

    n = len(g.vertices)
    index = {v: i for i, v in enumerate(g.vertices)}
    adjacency = np.zeros((n, n))
    for e in g.edges:
        i, j = index[e.u], index[e.v]
        adjacency[i, j] += 1.0
        adjacency[j, i] += 1.0
    degree = adjacency.sum(axis=1)
    scale = 1.0 / np.sqrt(degree)
    mu = np.linalg.eigvalsh(scale[:, None] * adjacency * scale[None, :])

    values = [0.0]
    interior = mu[(mu > -1.0 + 1e-9) & (mu < 1.0 - 1e-9)]
    for m in interior:
        phi = math.acos(float(m))
        n_branch = 0
        while True:
            k_up = (phi + 2.0 * math.pi * n_branch) / a
            k_down = (2.0 * math.pi * (n_branch + 1) - phi) / a
            if k_up > k_max and k_down > k_max:
                break
            if k_up <= k_max:
                values.append(k_up)
            if k_down <= k_max:
                values.append(k_down)
            n_branch += 1
    lattice = 1
    while lattice * math.pi / a <= k_max:
        k = lattice * math.pi / a
        values.extend([k] * _nullity(g, k))
        lattice += 1
    values.sort()
    return Spectrum(tuple(values), float(k_max), "von-below", 1e-10)


# ---------------------------------------------------------------------------
# Closed-form oracles


def analytic_spectrum(family: str, count: int, *, length: float = 1.0, arms: int = 3) -> Spectrum:
    """First `count` eigenfrequencies of an interval, loop, or equilateral star.

    Interval of length L: (j - 1) pi / L. Loop of length l: 0, then 2 pi n / l
    twice each. Star with `arms` edges of length a: 0, then (pi/2 + n pi)/a
    with multiplicity arms - 1 interleaved with n pi / a simple.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    if length <= 0.0:
        raise ValueError("length must be positive")
    values: list[float]
    if family == "interval":
        values = [(j * math.pi) / length for j in range(count)]
    elif family == "loop":
        values = [0.0]
        n = 1
        while len(values) < count:
            values.extend([2.0 * math.pi * n / length] * 2)
            n += 1
        values = values[:count]
    elif family == "equilateral-star":
        if arms < 3:
            raise ValueError("a star needs at least 3 arms")
        values = [0.0]
        n = 0
        while len(values) < count:
            values.extend([(math.pi / 2.0 + n * math.pi) / length] * (arms - 1))
            values.append((n + 1) * math.pi / length)
            n += 1
        values = values[:count]
    else:
        raise ValueError(f"unknown family {family!r}")
    return Spectrum(tuple(values), values[-1], "analytic", 0.0)


def spectrum_with_count(g: MetricGraph, count: int, method: str = "secular") -> Spectrum:
    """At least `count` eigenfrequencies by the chosen method, truncated to count.

    Picks k_max from Weyl counting and extends it until enough values appear.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    compute = {"secular": secular_spectrum, "von-below": von_below_spectrum}[method]
    M = len(g.vertices)
    k_max = (count + M) * math.pi / g.total_length() + 1.0
    for _ in range(20):
        s = compute(g, k_max)
        if len(s.values) >= count:
            cut = s.values[count - 1]
            covered = (
                0.5 * (cut + s.values[count]) if len(s.values) > count else s.k_max_covered
            )
            return Spectrum(s.values[:count], min(covered, s.k_max_covered), s.method, s.tol)
        k_max *= 1.3
    raise SpectrumCountError(f"could not reach {count} eigenfrequencies below k = {k_max:.3g}")


# ---------------------------------------------------------------------------
# Validation and file format


def validate_spectrum(s: Spectrum, g: MetricGraph) -> ValidationReport:
    """Check a spectrum against proved and heuristic counting estimates."""
    summary = summarize(g)
    messages: list[str] = []

    weyl_lower_ok = True
    for j, k in enumerate(s.values, start=1):
        lower = (j - summary.M) * math.pi / summary.total_length
        if k < lower - s.tol:
            weyl_lower_ok = False
            messages.append(f"k_{j} = {k:.12g} violates the bound (j - M) pi / L = {lower:.12g}")
            break

    zero_mode_ok = s.values[0] == 0.0 and (len(s.values) < 2 or s.values[1] > s.tol)
    if not zero_mode_ok:
        messages.append("zero eigenfrequency missing or not simple")

    bad = _weyl_window_violations(list(s.values), s.k_max_covered, summary.total_length, summary.M)
    weyl_window_ok = not bad
    if bad:
        messages.append(
            f"count leaves the heuristic Weyl window at k = {bad[:3]} (heuristic check)"
        )
    return ValidationReport(weyl_lower_ok, zero_mode_ok, weyl_window_ok, tuple(messages))


def compare_spectra(a: Spectrum, b: Spectrum, count: int | None = None) -> float:
    """Max elementwise |k difference| over the first count shared values."""
    n = min(len(a.values), len(b.values))
    if count is not None:
        n = min(n, count)
    if n == 0:
        raise ValueError("no shared values to compare")
    av = np.array(a.values[:n])
    bv = np.array(b.values[:n])
    return float(np.max(np.abs(av - bv)))


def spectrum_csv_text(s: Spectrum, metadata: dict | None = None) -> str:
    """The CSV serialization: `# key=value` provenance, `j,k` header, value rows.

    Eigenfrequencies are written with 17 significant digits, enough to
    round-trip doubles exactly.
    """
    lines = [
        f"# method={s.method}",
        f"# tol={s.tol:.16e}",
        f"# k_max_covered={s.k_max_covered:.16e}",
    ]
    for key, value in (metadata or {}).items():
        lines.append(f"# {key}={value}")
    lines.append("j,k")
    for j, k in enumerate(s.values, start=1):
        lines.append(f"{j},{k:.16e}")
    return "\n".join(lines) + "\n"


def write_spectrum_csv(path, s: Spectrum, metadata: dict | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(spectrum_csv_text(s, metadata))


def read_spectrum_csv(path) -> tuple[Spectrum, dict[str, str]]:
    """Read the CSV format of write_spectrum_csv; bare files become `external`.

    Unknown `#` keys are returned in the metadata dict untouched.
    """
    metadata: dict[str, str] = {}
    values: list[float] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    key, _, value = body.partition("=")
                    metadata[key.strip()] = value.strip()
                continue
            if line.lower().startswith("j,"):
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise ValueError(f"malformed spectrum row {line!r}")
            values.append(float(parts[1]))
    method = metadata.get("method", "external")
    if method not in METHODS:
        method = "external"
    tol = float(metadata.get("tol", "0"))
    k_max = float(metadata.get("k_max_covered", values[-1] if values else 0.0))
    return Spectrum(tuple(values), k_max, method, tol), metadata
