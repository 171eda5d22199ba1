"""Stationary-point census, spinodals, boundary analysis, borderlines."""

import math

import numpy as np
import pytest

from esqpt import stationary
from esqpt.models import ModelParams

from conftest import SQRT2


def by_location(points, loc, tol=1e-6):
    for sp in points:
        if np.abs(sp.location - np.asarray(loc)).max() < tol:
            return sp
    raise AssertionError(f"no stationary point at {loc}")


def test_census_spherical_phase():
    pts = stationary.find_stationary_points(ModelParams(SQRT2, 0.2), n_seeds=6000)
    origin = by_location(pts, [0, 0, 0, 0])
    assert origin.energy == pytest.approx(0.0, abs=1e-12)
    assert origin.index_r == 0
    assert origin.singularity_class == "i"
    kinetic = [sp for sp in pts if sp.branch == "kinetic"]
    assert kinetic, "kinetic stationary points expected in the spherical phase"
    assert all(math.hypot(sp.location[2], sp.location[3]) > 1e-3 for sp in kinetic)


def test_census_origin_maximum_second_branch():
    params = ModelParams(SQRT2, 2.5)
    pts = stationary.find_stationary_points(params, n_seeds=6000)
    origin = by_location(pts, [0, 0, 0, 0])
    assert origin.energy == pytest.approx(((2.5 - 1.0) / 2.0) * SQRT2**4, abs=1e-10)
    assert origin.index_r == 4
    assert origin.singularity_class == "v"
    ground = min(pts, key=lambda sp: sp.energy)
    assert ground.energy == pytest.approx(0.0, abs=1e-10)
    assert ground.index_r == 0


def test_census_points_are_stationary():
    params = ModelParams(1.7, 1.3)
    for sp in stationary.find_stationary_points(params, n_seeds=4000):
        from esqpt.classical import grad_H

        assert np.abs(grad_H(params, sp.location * (1 - 1e-15))).max() < 1e-8


def test_spinodal_values():
    lo, hi = stationary.spinodal_points(SQRT2)
    assert lo == pytest.approx(1 / math.sqrt(2), abs=5e-4)
    assert hi == pytest.approx(4.0 / 3.0, abs=5e-4)
    lo, hi = stationary.spinodal_points(1.7)
    assert lo == pytest.approx(0.4605, abs=1e-3)
    assert hi == pytest.approx(1.2571, abs=1e-3)


def boundary_closed_form(lam):
    if lam < 1.0:
        return 1.0, 1.0 + lam**2
    if lam < 3.0:
        return (1.0 + lam) / 2.0, 2.0
    return 2.0, (1.0 + lam) / 2.0


@pytest.mark.parametrize("beta0p", [SQRT2, 1.7])
def test_boundary_minmax_closed_form(beta0p):
    for lam in (0.0, 0.5, 1.4, 2.0, 2.9, 3.2):
        lo, hi = stationary.boundary_minmax(ModelParams(beta0p, lam))
        want_lo, want_hi = boundary_closed_form(lam)
        assert lo == pytest.approx(want_lo, abs=1e-6)
        assert hi == pytest.approx(want_hi, abs=1e-6)


def test_boundary_energy_unit_check():
    with pytest.raises(ValueError):
        stationary.boundary_energy(ModelParams(1.0, 0.5), [1.0, 1.0, 0.0, 0.0])


def test_boundary_exponent_reference_cases():
    i_val, verdict, order = stationary.boundary_exponent([2, 2, 2], 0.5)
    assert i_val == pytest.approx(2.5)
    assert verdict == "divergent"
    assert order == 3
    i_val, verdict, order = stationary.boundary_exponent([math.inf] * 3, 1)
    assert i_val == 0.0
    assert verdict == "discontinuous"
    assert order == 0


def test_boundary_exponent_validation():
    with pytest.raises(ValueError):
        stationary.boundary_exponent([2, 2], 1)
    with pytest.raises(ValueError):
        stationary.boundary_exponent([1, 2, 2], 1)
    with pytest.raises(ValueError):
        stationary.boundary_exponent([2, 2, 2], 0.3)


def test_trace_borderlines_short_grid():
    grid = np.arange(0.1, 0.45, 0.05)
    curves = stationary.trace_borderlines(
        SQRT2, grid, n_seeds=2500, include_boundary=False
    )
    kinetic = [c for c in curves if c.kinetic and len(c.lambdas) >= 3]
    assert len(kinetic) == 1
    assert stationary.kinetic_borderline_count(curves) == 1
    curve = kinetic[0]
    assert np.all(np.diff(curve.lambdas) > 0)
    assert curve.singularity_class in ("ii", "iii", "iv")


def test_trace_borderlines_includes_boundary_curves():
    grid = np.array([0.2, 0.3])
    curves = stationary.trace_borderlines(SQRT2, grid, n_seeds=1500, include_boundary=True)
    boundary = [c for c in curves if c.branch == "boundary"]
    assert len(boundary) == 2
    for c in boundary:
        assert c.singularity_class == "vi"
