import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biovi import quantity as qty
from biovi.errors import (
    EmptySamples,
    FormatError,
    GrazingAngle,
    NegativeFrequency,
    OddCenterCount,
    SceneTooSmall,
    ZeroArea,
    ZeroDenominator,
    ZeroMean,
    ZeroSolidAngle,
    ZeroTime,
    ZeroTimeSpan,
)
from biovi.photometry import (
    LuminanceSampleSet,
    SceneLedger,
    biovi_flux,
    biovi_quantity,
    load_luminance_samples,
    luminance,
    luminance_frequency,
    photon_energy,
    scene_accounting,
    scene_volume_change,
)


def test_photon_energy():
    assert math.isclose(photon_energy(6.11014357e33).magnitude, 4.04862268, rel_tol=1e-8)
    assert photon_energy(0).magnitude == 0.0
    visible = photon_energy(6e14).magnitude
    assert 1e-19 < visible < 1e-18
    assert photon_energy(1.0).dim == qty.ENERGY
    with pytest.raises(NegativeFrequency):
        photon_energy(-1)


def test_luminance():
    assert luminance(1, 1, 1, 0.0).magnitude == 1.0
    assert math.isclose(luminance(1, 1, 1, math.radians(60)).magnitude, 2.0, rel_tol=1e-12)
    assert luminance(1, 1, 1, 0.0).dim == qty.q_parse("cd m^-2")
    assert luminance(4, 2, 1, 0.0).magnitude == 2 * luminance(2, 2, 1, 0.0).magnitude
    assert luminance(2, 4, 1, 0.0).magnitude == luminance(2, 2, 1, 0.0).magnitude / 2
    with pytest.raises(GrazingAngle):
        luminance(1, 1, 1, math.radians(90))
    with pytest.raises(ZeroArea):
        luminance(1, 0, 1, 0)
    with pytest.raises(ZeroSolidAngle):
        luminance(1, 1, 0, 0)


def test_luminance_frequency():
    s = LuminanceSampleSet((3.0, 5.0), (0.25, 0.75), delta_L=2.0)
    assert luminance_frequency(s).magnitude == 1.0
    assert luminance_frequency(s).dim == qty.FREQUENCY
    assert luminance_frequency(LuminanceSampleSet((3.0, 5.0), (1.0, 1.0), 0.0)).magnitude == 0.0
    a = luminance_frequency(LuminanceSampleSet((2.0, 6.0), (1.0, 1.0))).magnitude
    b = luminance_frequency(LuminanceSampleSet((2.0, 6.0), (2.0, 2.0))).magnitude
    assert a == 1.0 and b == a / 2
    with pytest.raises(EmptySamples):
        luminance_frequency(LuminanceSampleSet((), (1.0,), 1.0))
    with pytest.raises(ZeroMean):
        luminance_frequency(LuminanceSampleSet((1.0, -1.0), (1.0,), 1.0))


def test_load_luminance_samples():
    s = load_luminance_samples("L_cd_per_m2,t_s\n2,0.5\n6,0.5\n")
    assert s.contrast == 4.0
    assert luminance_frequency(s).magnitude == 2.0
    assert load_luminance_samples("L_cd_per_m2,t_s\n2,0.5\n", delta_L=1.0).contrast == 1.0
    with pytest.raises(FormatError) as info:
        load_luminance_samples("L_cd_per_m2,t_s\n2,x\n")
    assert (info.value.line, info.value.column) == (2, 2)


def test_flux_forms():
    r = biovi_flux(1e-4, V=5.0, I=2.0)
    assert math.isclose(r.value.magnitude, 1e5, rel_tol=1e-12)
    assert r.value.dim == qty.q_parse("W m^-2") == qty.q_parse("kg s^-3")
    assert r.form == "voltage"
    with pytest.raises(ZeroArea):
        biovi_flux(0.0, V=1, I=1)
    with pytest.raises(ZeroTime):
        biovi_flux(1.0, E_photon=1.0, tau=0.0)
    with pytest.raises(ZeroTime):
        biovi_flux(1.0, L_star=1.0, I=1.0, t=1.0, cons_t=-1.0)
    with pytest.raises(TypeError):
        biovi_flux(1.0)


def test_charge_form_matches_voltage_form():
    I, t, V, A = 2.0, 3.0, 5.0, 0.5
    a = biovi_flux(A, nu_L=V / t, Q=I * t).value.magnitude
    b = biovi_flux(A, V=V, I=I).value.magnitude
    assert math.isclose(a, b, rel_tol=1e-15)


def test_biovi_quantity():
    r = biovi_quantity(7.95205e13, 0.1)
    assert math.isclose(r.magnitude, 5.26908e-21, rel_tol=1e-5)
    assert r.dim == qty.q_parse("kg m^3 s^-3")
    assert biovi_quantity(1e14, 0.0).magnitude == 0.0
    assert biovi_quantity(1e14, 0.1, multiplier=2.0).magnitude == 2 * biovi_quantity(1e14, 0.1).magnitude
    with pytest.raises(NegativeFrequency):
        biovi_quantity(-1, 0.1)


@settings(max_examples=200, deadline=None)
@given(st.floats(0, 1e20), st.floats(-1e3, 1e3))
def test_biovi_quantity_factorizes(nu, v):
    assert biovi_quantity(nu, v).magnitude == photon_energy(nu).magnitude * v


def test_scene_accounting():
    acc = scene_accounting(SceneLedger(132))
    assert acc.total_images == 264 and acc.rate.magnitude == 264.0
    assert scene_accounting(SceneLedger(0)).total_images == 0
    assert scene_accounting(SceneLedger(132, 66, 66, t=1.0, cons_t=1.0)).rate.magnitude == 132.0
    with pytest.raises(OddCenterCount):
        scene_accounting(SceneLedger(131))
    with pytest.raises(OddCenterCount):
        scene_accounting(SceneLedger(132, n_L=60))
    with pytest.raises(ZeroTimeSpan):
        scene_accounting(SceneLedger(2, t=1.0, cons_t=-1.0))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6).map(lambda k: 2 * k), st.floats(1e-3, 1e3), st.floats(0, 1e3))
def test_scene_rate_contract(n_c, t, cons):
    acc = scene_accounting(SceneLedger(n_c, t=t, cons_t=cons))
    assert acc.total_images == 2 * n_c
    assert math.isclose(acc.rate.magnitude * (t + cons), acc.total_images, rel_tol=1e-15)


def test_scene_volume_change():
    r = scene_volume_change(10, 0.001, 0.07, 1, 1, 2, 2)
    assert r.ratio == 1.0
    assert math.isclose(r.delta_V.magnitude, 10 - 0.001 - 0.07, rel_tol=1e-15)
    r = scene_volume_change(10, 0.001, 0.07, 1, 2, 1, 1)
    assert math.isclose(r.delta_V.magnitude, 4.9645, rel_tol=1e-12)
    with pytest.raises(ZeroDenominator):
        scene_volume_change(10, 1, 1, 1, 1, 1, 0)
    with pytest.raises(SceneTooSmall):
        scene_volume_change(1, 1, 1, 1, 1, 1, 1)
