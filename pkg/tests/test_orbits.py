"""Tests for periodic orbit enumeration and the trace identity."""

import math

import pytest

from eulerchar import (
    OrbitBudgetError,
    cosine_power,
    enumerate_orbits,
    equilateral_subdivision,
    eval_time,
    interval_graph,
    loop_graph,
    orbit_side,
    preset,
    scattering_amplitude,
    spectrum_with_count,
    star_graph,
    summarize,
    trace_check,
    triangular,
)
from eulerchar.graph import PRESET_NAMES


def test_loop_orbits():
    orbits = enumerate_orbits(loop_graph(1.0), 2.0)
    assert len(orbits) == 4
    assert sorted(o.length for o in orbits) == [1.0, 1.0, 2.0, 2.0]
    for o in orbits:
        assert o.s_v == 1.0
        assert o.prim_length == 1.0  # doubles are repetitions of the primitive


def test_loop_zero_amplitude_orbit():
    orbits = enumerate_orbits(loop_graph(1.0), 2.0, include_zero_amplitude=True)
    assert len(orbits) == 5
    zero = [o for o in orbits if o.s_v == 0.0]
    assert len(zero) == 1
    assert zero[0].length == 2.0  # out-and-back with a degree-2 reflection


def test_interval_bounce():
    orbits = enumerate_orbits(interval_graph(1.0), 4.0)
    assert len(orbits) == 2
    bounce, double = orbits
    assert bounce.length == 2.0
    assert bounce.prim_length == 2.0
    assert bounce.s_v == 1.0  # two endpoint reflections, coefficient 1 each
    assert double.length == 4.0
    assert double.prim_length == 2.0
    assert double.s_v == 1.0


def test_star_orbit_census():
    orbits = enumerate_orbits(star_graph(3), 4.0)
    assert len(orbits) == 9
    bounces = [o for o in orbits if o.length == 2.0]
    assert len(bounces) == 3
    for o in bounces:
        # One reflection at the leaf (coefficient 1) and one at the center
        # (2/3 - 1 = -1/3); each bounce is its own reversal so it appears once.
        assert o.s_v == pytest.approx(-1.0 / 3.0, rel=1e-15)
        assert o.prim_length == 2.0
    doubles = [o for o in orbits if o.length == 4.0 and o.prim_length == 2.0]
    assert len(doubles) == 3
    for o in doubles:
        assert o.s_v == pytest.approx(1.0 / 9.0, rel=1e-15)
    pairs = [o for o in orbits if o.prim_length == 4.0]
    assert len(pairs) == 3
    for o in pairs:
        # leaf -> center -> other leaf -> center: two transmissions (2/3)
        # and two leaf reflections (1).
        assert o.s_v == pytest.approx(4.0 / 9.0, rel=1e-15)


def test_lasso_orbit_census():
    orbits = enumerate_orbits(preset("lasso"), 2.0)
    assert len(orbits) == 5
    singles = [o for o in orbits if o.length == 1.0]
    assert len(singles) == 2  # the loop, once per orientation
    for o in singles:
        assert o.s_v == pytest.approx(2.0 / 3.0, rel=1e-15)
    turn = [o for o in orbits if o.prim_length == 2.0]
    assert len(turn) == 1  # loop out, reflect, loop back
    assert turn[0].s_v == pytest.approx(1.0 / 9.0, rel=1e-15)
    repeats = [o for o in orbits if o.length == 2.0 and o.prim_length == 1.0]
    assert len(repeats) == 2
    for o in repeats:
        assert o.s_v == pytest.approx(4.0 / 9.0, rel=1e-15)


def test_lasso_below_shortest_orbit_is_empty():
    assert enumerate_orbits(preset("lasso"), 0.9) == []


def test_l_max_validation():
    with pytest.raises(ValueError):
        enumerate_orbits(loop_graph(1.0), 0.0)


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_min_orbit_length_equals_l_min(name):
    g = preset(name)
    info = summarize(g)
    orbits = enumerate_orbits(g, info.l_min + 0.5)
    assert orbits
    assert min(o.length for o in orbits) == pytest.approx(info.l_min, rel=1e-12)


def test_min_orbit_length_simple_graphs():
    for g, expected in [
        (loop_graph(1.0), 1.0),
        (interval_graph(1.0), 2.0),
        (star_graph(3), 2.0),
    ]:
        orbits = enumerate_orbits(g, expected + 0.1)
        assert min(o.length for o in orbits) == pytest.approx(expected, rel=1e-12)
        assert summarize(g).l_min == pytest.approx(expected, rel=1e-12)


def test_scattering_amplitude_matches_enumeration():
    for g, l_max in [
        (loop_graph(1.0), 3.0),
        (star_graph(3), 4.0),
        (preset("lasso"), 3.0),
        (preset("k5"), 4.0),
    ]:
        for o in enumerate_orbits(g, l_max):
            assert scattering_amplitude(o, g) == pytest.approx(o.s_v, rel=1e-13)


def test_reversal_pairing():
    g = preset("lasso")
    orbits = enumerate_orbits(g, 3.0)
    table = {o.steps: o for o in orbits}
    for o in orbits:
        rev = tuple((e, -d) for e, d in reversed(o.steps))
        # canonical rotation of the reversal must be present with identical
        # length and amplitude (time-reversal symmetry)
        candidates = [
            rot
            for rot in (rev[i:] + rev[:i] for i in range(len(rev)))
            if rot in table
        ]
        assert candidates
        mate = table[candidates[0]]
        assert mate.length == o.length
        assert mate.s_v == pytest.approx(o.s_v, rel=1e-15)


def test_repetition_budget_error():
    with pytest.raises(OrbitBudgetError):
        enumerate_orbits(preset("k5"), 8.0, max_orbits=50)


def test_orbit_side_loop_hand_value():
    # t = 1/3 on the unit loop: orbits of length 1, 2 contribute
    # (2/3)(phi(1/3) + phi(2/3)) and phi_1(1/3) = phi_1(2/3) = 3/2.
    got = orbit_side(loop_graph(1.0), cosine_power(1), 1.0 / 3.0)
    assert got == pytest.approx(2.0, rel=1e-13)
    assert eval_time(cosine_power(1), 1.0 / 3.0) == pytest.approx(1.5, rel=1e-15)


def test_orbit_side_equals_chi_when_support_is_short():
    # With 1/t below the shortest orbit the sum is empty and only chi is left.
    assert orbit_side(preset("lasso"), cosine_power(1), 1.25) == 0.0
    assert orbit_side(preset("k5"), cosine_power(1), 1.0) == -5.0
    assert orbit_side(preset("k33"), cosine_power(2), 0.75) == -3.0
    assert orbit_side(interval_graph(1.0), triangular(), 0.75) == 1.0


def test_orbit_side_l_max_must_cover_support():
    with pytest.raises(ValueError):
        orbit_side(loop_graph(1.0), cosine_power(1), 0.5, l_max=1.5)
    # Exactly covering the support is allowed.
    orbit_side(loop_graph(1.0), cosine_power(1), 0.5, l_max=2.0)


def test_orbit_side_subdivision_invariant():
    g = preset("lasso")
    sub, _ = equilateral_subdivision(g)
    for t in (0.4, 0.6):
        a = orbit_side(g, cosine_power(1), t)
        b = orbit_side(sub, cosine_power(1), t)
        assert b == pytest.approx(a, abs=1e-9)


@pytest.fixture(scope="module")
def trace_spectra():
    graphs = {
        "loop": loop_graph(1.0),
        "interval": interval_graph(1.0),
        "star": star_graph(3),
        "lasso": preset("lasso"),
    }
    return {name: (g, spectrum_with_count(g, 60)) for name, g in graphs.items()}


@pytest.mark.parametrize("name", ["loop", "interval", "star", "lasso"])
@pytest.mark.parametrize("t", [0.3, 0.4, 0.6])
@pytest.mark.parametrize("d", [1, 2])
def test_trace_identity_certified(trace_spectra, name, t, d):
    g, s = trace_spectra[name]
    lhs, rhs, gap, bound = trace_check(g, cosine_power(d), t, s)
    assert gap <= bound + 1e-9
    assert math.isfinite(lhs) and math.isfinite(rhs)


def test_trace_identity_triangular():
    g = loop_graph(1.0)
    s = spectrum_with_count(g, 60)
    lhs, rhs, gap, bound = trace_check(g, triangular(), 0.4, s)
    assert gap <= bound + 1e-9


def test_trace_check_requires_enough_values():
    g = preset("lasso")
    s = spectrum_with_count(g, 10)
    with pytest.raises(ValueError):
        trace_check(g, cosine_power(2), 0.6, s)  # needs > M + 2 L t d = 16.4
