"""Randomized property suites, each run with at least 500 examples.

Collected through test_acceptance.py, which reports one line per suite.
"""
import math

import numpy as np
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from biovi import quantity as qty
from biovi.ledger import Ledger, PulseRecord, grade_sums, load, serialize
from biovi.neuromatrix import AND_TABLE, GaussianParams, ThresholdUnit
from biovi.photometry import biovi_flux
from biovi.prekinematics import generalized_cross_matrix
from biovi.quantity import Dimension
from biovi.relativity import lorentz_factor, lorentz_force_power

EXAMPLES = 500
suite = settings(max_examples=EXAMPLES, deadline=None, suppress_health_check=[HealthCheck.too_slow])

C = qty.SPEED_OF_LIGHT

small_exp = st.integers(-3, 3)
dims = st.tuples(*[small_exp] * 8).map(Dimension)
finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
vec3 = st.tuples(finite, finite, finite).map(np.array)
# relative tolerances lose meaning once products fall into subnormal range
normal = finite.filter(lambda x: x == 0 or abs(x) >= 1e-60)


@suite
@given(dims, dims, dims)
def dimension_group_laws(a, b, c):
    one = qty.DIMENSIONLESS
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * one == a
    assert a * a.inverse() == one
    assert (a / b) * b == a


@suite
@given(st.floats(0.0, 0.999999 * C))
def lorentz_identity(v):
    g = lorentz_factor(v)
    assert g >= 1.0
    assert math.isclose(g * g * (1.0 - (v / C) ** 2), 1.0, rel_tol=1e-12, abs_tol=0)


@suite
@given(finite, vec3, vec3, vec3, vec3)
def power_independent_of_b(q, E, v, B1, B2):
    p1 = lorentz_force_power(q, E, B1, v).power
    p2 = lorentz_force_power(q, E, B2, v).power
    assert p1 == p2


@suite
@given(st.tuples(normal, normal, normal), st.tuples(normal, normal, normal))
def cross_product_n2(a, b):
    a = np.array(a)
    b = np.array(b)
    na, nb = math.hypot(*a), math.hypot(*b)  # hypot avoids underflow in the squares
    w = generalized_cross_matrix([a, b]).vector
    assert abs(np.dot(w, a)) <= 1e-12 * na * nb * na
    assert abs(np.dot(w, b)) <= 1e-12 * na * nb * nb
    swapped = generalized_cross_matrix([b, a]).vector
    assert np.all(np.abs(w + swapped) <= 1e-12 * na * nb)
    # independent oracle
    assert np.all(np.abs(w - np.cross(a, b)) <= 1e-12 * na * nb)


@suite
@given(st.floats(-100, 100), st.floats(0.01, 100))
def gaussian_quadrature(mu, sigma):
    g = GaussianParams(mu, sigma)
    x = np.linspace(mu - 8 * sigma, mu + 8 * sigma, 4001)
    y = g.density_at(x)
    # composite Simpson
    h = x[1] - x[0]
    area = h / 3 * (y[0] + y[-1] + 4 * y[1:-1:2].sum() + 2 * y[2:-1:2].sum())
    assert abs(area - 1.0) <= 1e-6


def _gp():
    return st.builds(GaussianParams, st.floats(-1e3, 1e3), st.floats(1e-3, 1e3))


@suite
@given(_gp(), _gp(), _gp())
def gaussian_convolution_additivity(a, b, c):
    ab = a.convolve_with(b)
    assert ab.mu == a.mu + b.mu
    assert ab.sigma == math.hypot(a.sigma, b.sigma)
    assert ab == b.convolve_with(a)
    left = ab.convolve_with(c)
    right = a.convolve_with(b.convolve_with(c))
    assert math.isclose(left.mu, right.mu, rel_tol=1e-12, abs_tol=1e-9)
    assert math.isclose(left.sigma ** 2, right.sigma ** 2, rel_tol=1e-12)


pos = st.floats(1e-3, 1e3)


@suite
@given(pos, pos, pos, st.floats(0, 1e3), pos, pos)
def flux_forms_agree(V, I, t, cons_t, tau, A):
    # consistent inputs: Q = I t, the luminance form's L* equals V (t + cons t),
    # nu_L = V / t so that nu_L Q = V I, and E = V I tau
    Q = I * t
    nu_L = V / t
    L_star = V * (t + cons_t)
    E = V * I * tau
    forms = [
        biovi_flux(A, V=V, I=I),
        biovi_flux(A, nu_L=nu_L, Q=Q),
        biovi_flux(A, L_star=L_star, I=I, t=t, cons_t=cons_t),
        biovi_flux(A, E_photon=E, tau=tau),
    ]
    ref = forms[0].value.magnitude
    for f in forms:
        assert f.value.dim == qty.q_parse("kg s^-3")
        assert math.isclose(f.value.magnitude, ref, rel_tol=1e-12)
    assert [f.form for f in forms] == ["voltage", "charge", "luminance", "photon"]


record_body = st.tuples(
    st.tuples(*[st.floats(allow_nan=False, allow_infinity=False)] * 3),
    st.tuples(*[st.booleans()] * 3),
)


bounded_body = st.tuples(
    st.tuples(*[st.floats(-1e12, 1e12)] * 3),
    st.tuples(*[st.booleans()] * 3),
)


@st.composite
def ledgers(draw, body=record_body):
    bodies = draw(st.lists(body, max_size=12))
    gaps = draw(st.lists(st.integers(1, 1000), min_size=len(bodies), max_size=len(bodies)))
    d = 0
    led = Ledger()
    for (inputs, outputs), gap in zip(bodies, gaps):
        d += gap
        led.append(PulseRecord(d, inputs, outputs))
    return led


@suite
@given(ledgers())
def ledger_round_trip(led):
    data = serialize(led, "csv")
    back = load(data)
    assert back == led
    assert serialize(back, "csv") == data


@suite
@given(
    st.lists(st.floats(-1, 1), min_size=3, max_size=3),
    st.floats(0.1, 2.0),
    st.permutations(range(4)),
)
def delta_rule_and(weights, rate, order):
    X = [AND_TABLE[i][0] for i in order]
    y = [AND_TABLE[i][1] for i in order]
    unit = ThresholdUnit(2, rate, weights)
    epochs = unit.train(X, y, max_epochs=100)
    assert epochs <= 100
    assert [unit.predict(x) for x, _ in AND_TABLE] == [d for _, d in AND_TABLE]


@suite
@given(ledgers(bounded_body), st.integers(0, 12))
def ledger_fold_additivity(led, cut):
    cut = min(cut, len(led))
    a = Ledger(led.records[:cut])
    b = Ledger(led.records[cut:])
    whole = grade_sums(led)
    parts = [x + y for x, y in zip(grade_sums(a), grade_sums(b))]
    for g, (w, p) in enumerate(zip(whole, parts)):
        # relative to the summed magnitudes, so cancellation cannot inflate it
        scale = math.fsum(abs(r.inputs[g]) for r in led)
        assert abs(w - p) <= 1e-12 * scale


SUITES = {
    "Dimension group laws": dimension_group_laws,
    "gamma^2 (1 - v^2/c^2) = 1": lorentz_identity,
    "power invariant under B": power_independent_of_b,
    "cross product orthogonal and antisymmetric (n=2)": cross_product_n2,
    "Gaussian density integrates to 1": gaussian_quadrature,
    "Gaussian convolution additivity": gaussian_convolution_additivity,
    "flux forms agree on consistent inputs": flux_forms_agree,
    "ledger round-trip identity": ledger_round_trip,
    "delta rule learns AND within 100 epochs": delta_rule_and,
    "ledger sums fold additively": ledger_fold_additivity,
}
