import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biovi import quantity as qty
from biovi.errors import (
    DimensionMismatch,
    DimensionWarning,
    DomainError,
    NegativeSpeed,
    ShapeMismatch,
    ZeroArea,
    ZeroConsumedTime,
    ZeroFrequency,
    ZeroMetricCoefficient,
    ZeroVelocity,
    ZeroWavelength,
)
from biovi.prekinematics import (
    ConsumptionState,
    Regime,
    WorldlineKind,
    anticipated_phase_velocity,
    bendable_wavelength,
    consumed_distance,
    generalized_cross_matrix,
    geodesic_triangle_sum,
    motion_stretch,
    motion_stretch_general,
    post_kinematic_frequency,
    wavenumber_modulus,
    worldline_classify,
)

C = qty.SPEED_OF_LIGHT


def test_consumption_regimes():
    s = ConsumptionState(2.0, 1.0)
    assert s.regime is Regime.CONSUMING_POSSIBLE
    assert consumed_distance(3.0, s).magnitude == 3.0
    done = ConsumptionState(1.0, 1.0)
    assert done.regime is Regime.CONSUMED_ZERO
    assert consumed_distance(3.0, done).magnitude == 0.0
    with pytest.raises(NegativeSpeed):
        consumed_distance(-1.0, s)
    with pytest.raises(DomainError):
        ConsumptionState(1.0, 0.5, epsilon=1.0)


def test_bendable_wavelength():
    assert bendable_wavelength(340.0, 2.0, 170.0, 2.0).magnitude == 2.0
    assert bendable_wavelength(340.0, 4.0, 170.0, 2.0).magnitude == 4.0
    with pytest.raises(ZeroFrequency):
        bendable_wavelength(1, 1, 0, 1)
    with pytest.raises(ZeroConsumedTime):
        bendable_wavelength(1, 1, 1, 0)


@settings(max_examples=200, deadline=None)
@given(st.floats(1e-6, 1e6), st.floats(1e-6, 1e6), st.floats(1e-6, 1e6))
def test_bendable_reduces_to_classical(v, t, nu):
    assert bendable_wavelength(v, t, nu, t).magnitude == v / nu


def test_phase_velocity():
    pv = anticipated_phase_velocity(0.1)
    assert math.isclose(pv.abs_vp.magnitude, C * C / 0.1, rel_tol=1e-15)
    assert pv.full_vp.magnitude == pv.abs_vp.magnitude + C
    assert math.isclose(pv.full_vp.to("km s^-1"), 8.98755179e14, rel_tol=1e-9)
    assert pv.c_cons.magnitude == C - 0.1
    assert anticipated_phase_velocity(C).abs_vp.magnitude == C
    with pytest.raises(ZeroVelocity):
        anticipated_phase_velocity(0)


@settings(max_examples=200, deadline=None)
@given(st.floats(1e-3, C))
def test_phase_velocity_product(v):
    pv = anticipated_phase_velocity(v)
    assert math.isclose(pv.abs_vp.magnitude * v, C * C, rel_tol=4e-16)
    assert pv.abs_vp.magnitude >= C


def test_wavenumber_modulus():
    assert wavenumber_modulus(0.5).magnitude == 2.0
    assert wavenumber_modulus(-0.5).magnitude == 2.0
    with pytest.raises(ZeroWavelength):
        wavenumber_modulus(0)


def test_motion_stretch_signed_inputs():
    x = qty.q(0.023, "cm") - qty.q(0.01, "m")
    r = motion_stretch(0.1, x, qty.q(0.4318, "mm"), math.radians(95.0))
    assert r.dim == qty.LENGTH
    assert math.isclose(r.magnitude, 4.09102e-25, rel_tol=1e-5)


@settings(max_examples=200, deadline=None)
@given(st.floats(-10, 10), st.floats(-10, 10), st.floats(-10, 10), st.floats(-6, 6), st.floats(0.5, 3))
def test_motion_stretch_multilinear_and_even(v, x, y, th, k):
    base = motion_stretch(v, x, y, th).magnitude
    assert math.isclose(motion_stretch(k * v, x, y, th).magnitude, k * base, rel_tol=1e-12, abs_tol=1e-300)
    assert motion_stretch(v, x, y, -th).magnitude == base


def test_motion_stretch_general_modes():
    with pytest.raises(DimensionMismatch):
        motion_stretch_general(1.0, 1.0, 1.0, 0.0)
    with qty.evaluation_mode(qty.PAPER_FAITHFUL):
        with pytest.warns(DimensionWarning):
            r = motion_stretch_general(1.0, 1.0, 1.0, 0.0, g=0.5)
    assert r.magnitude == 1.0 / (C * C)
    r = motion_stretch_general(2.0, 1.0, 1.0, math.pi / 2, g=1.0, time_mode="planck_product", t=1.0, use_sin=True)
    assert math.isclose(r.magnitude, 2.0 / (2 * C * C * qty.PLANCK_TIME), rel_tol=1e-15)
    with pytest.raises(ZeroMetricCoefficient):
        motion_stretch_general(1, 1, 1, 0, g=0, time_mode="planck_product", t=1)


def test_geodesic_triangle_sum():
    assert geodesic_triangle_sum(0.0, 5.0) == math.pi
    # octant of the unit sphere: three right angles
    assert math.isclose(geodesic_triangle_sum(1.0, 4 * math.pi / 8), 3 * math.pi / 2, rel_tol=1e-15)


def test_worldline_classes():
    assert worldline_classify(0.5 * C).kind is WorldlineKind.TIMELIKE
    assert worldline_classify(2 * C).kind is WorldlineKind.SPACELIKE
    assert worldline_classify(C * (1 + 1e-13)).kind is WorldlineKind.LIGHTLIKE
    assert worldline_classify(C * (1 + 1e-11)).kind is WorldlineKind.SPACELIKE
    w = worldline_classify(0.1, ds_sq_cons=-4.0)
    assert w.consumed_length.magnitude == 2.0
    with pytest.raises(NegativeSpeed):
        worldline_classify(-1)


def test_cross_matrix_matches_numpy_cross():
    a, b = [1.0, 2.0, 3.0], [-4.0, 0.5, 2.0]
    cm = generalized_cross_matrix([a, b], ["i", "j", "k"])
    assert np.allclose(cm.vector, np.cross(a, b), rtol=1e-14, atol=0)
    assert cm.rows[-1] == ("i", "j", "k") and cm.n == 2


def test_cross_matrix_in_four_dimensions_is_orthogonal_and_oriented():
    rng = np.random.default_rng(3)
    vs = rng.normal(size=(3, 4))
    w = generalized_cross_matrix(vs).vector
    assert np.allclose(vs @ w, 0, atol=1e-12)
    assert np.linalg.det(np.vstack([vs, w])) > 0
    # standard basis: e1 x e2 x e3 = e4
    e = np.eye(4)
    assert np.allclose(generalized_cross_matrix(e[:3]).vector, e[3])


def test_cross_matrix_shape_errors():
    with pytest.raises(ShapeMismatch):
        generalized_cross_matrix([[1, 2, 3]])
    with pytest.raises(ShapeMismatch):
        generalized_cross_matrix([[1, 2], [3, 4]])
    with pytest.raises(ShapeMismatch):
        generalized_cross_matrix([[1, 2, 3], [4, 5, 6]], ["i", "j"])


def test_post_kinematic_frequency():
    r = post_kinematic_frequency(3.77e-7, nu_pre=7.95205e13)
    assert math.isclose(r.nu_post.magnitude, 2.38396599e23, rel_tol=1e-8)
    assert r.delta_K.magnitude == r.nu_post.magnitude - 7.95205e13
    assert post_kinematic_frequency(1.0).delta_K is None
    with pytest.raises(ZeroArea):
        post_kinematic_frequency(0.0)
