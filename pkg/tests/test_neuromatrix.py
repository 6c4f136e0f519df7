import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biovi.errors import FormatError, ZeroClassSum, ZeroGradeOneSum
from biovi.neuromatrix import (
    AND_TABLE,
    ClassSums,
    GaussianParams,
    ThresholdUnit,
    activation,
    delta_update,
    fire_check,
    kappa,
    load_truth_table,
    product_ratio_matrix,
    symmetric_sum,
    yield_efficiency,
)

reals = st.floats(-1e6, 1e6)
nonzero = reals.filter(lambda x: abs(x) > 1e-3)


def test_activation():
    assert activation(0.0) == 0.5
    assert activation(-0.1, "step") == 0.0 and activation(0.0, "step") == 1.0
    assert activation(-1000.0) == 0.0 and activation(1000.0) == 1.0
    with pytest.raises(ValueError):
        activation(0.0, "relu")


@settings(max_examples=200, deadline=None)
@given(st.floats(-50, 50), st.floats(-50, 50))
def test_sigmoid_symmetry_and_monotonicity(x, y):
    assert math.isclose(activation(x) + activation(-x), 1.0, rel_tol=1e-15)
    assert 0.0 <= activation(x) <= 1.0  # saturates in double precision
    if x < y:
        assert activation(x) <= activation(y)
    assert activation(x, "step") == (1.0 if x >= 0 else 0.0)


def test_fire_check():
    assert fire_check(ClassSums(5, 3, 2, 4, 4, 4)) == (True, False, False)
    assert fire_check(ClassSums(0, 0, 0)) == (True, True, True)
    assert all(isinstance(b, bool) for b in fire_check(ClassSums(1, 2, 3)))


@settings(max_examples=200, deadline=None)
@given(st.tuples(reals, reals, reals), st.tuples(reals, reals, reals), st.floats(1e-3, 1e3))
def test_fire_check_scale_invariant(s, t, k):
    base = fire_check(ClassSums(*s, *t))
    assert fire_check(ClassSums(*(k * x for x in s), *(k * x for x in t))) == base or any(
        abs(a - b) < 1e-9 * max(abs(a), abs(b), 1) for a, b in zip(s, t)
    )


def test_delta_update():
    assert delta_update(0.7, 3.0, 1, 1) == 0.7
    assert delta_update(0.0, 2.0, 1, 0) == 2.0
    assert delta_update(1.0, 2.0, 0, 1, rate=0.5) == 0.0


def test_and_training_from_zero():
    unit = ThresholdUnit(2)
    X = [x for x, _ in AND_TABLE]
    y = [d for _, d in AND_TABLE]
    assert unit.train(X, y) <= 100
    assert [unit.predict(x) for x in X] == y
    with pytest.raises(ValueError):
        ThresholdUnit(2, weights=[0.0, 0.0])


def test_xor_does_not_converge():
    unit = ThresholdUnit(2)
    with pytest.raises(RuntimeError):
        unit.train([(0, 0), (0, 1), (1, 0), (1, 1)], [0, 1, 1, 0], max_epochs=50)


def test_yield_efficiency():
    y = yield_efficiency(ClassSums(4, 1, 2))
    assert (y.y2, y.y3) == (50.0, 200.0)
    y = yield_efficiency(ClassSums(3, 3, 3))
    assert (y.y2, y.y3) == (100.0, 100.0)
    with pytest.raises(ZeroGradeOneSum):
        yield_efficiency(ClassSums(1, 1, 0))


def test_product_ratio_matrix():
    m = product_ratio_matrix(ClassSums(2, 3, 6))
    assert np.array_equal(m, [[3, 2, 1], [6, 4, 2], [9, 6, 3]])
    assert np.array_equal(product_ratio_matrix(ClassSums(1, 1, 1)), np.ones((3, 3)))
    assert kappa(ClassSums(2, 3, 6)) == (1.0, 4.0, 9.0)
    with pytest.raises(ZeroClassSum) as info:
        product_ratio_matrix(ClassSums(1, 0, 1))
    assert info.value.grade == 2


@settings(max_examples=200, deadline=None)
@given(nonzero, nonzero, nonzero)
def test_product_ratio_structure(a, b, c):
    m = product_ratio_matrix(ClassSums(a, b, c))
    assert math.isclose(m[0, 2] * m[2, 0], m[0, 0] * m[2, 2], rel_tol=1e-12)
    # each row r is one pair product divided by the class sums a, b, c in turn
    for row, product in zip(m, (a * b, a * c, b * c)):
        expected = [product / a, product / b, product / c]
        assert np.allclose(row, expected, rtol=1e-12, atol=0)


def test_symmetric_sum():
    assert symmetric_sum([1, 2], [3, 4], bias=0.5) == 11.5
    s = ClassSums.from_inputs((0, 0, 1), ([1, 1], [2], [0.5]), ([1, 2], [3], [4]), (1, 1, 1))
    assert s.sums == (3.0, 6.0, 3.0)
    with pytest.raises(ValueError):
        symmetric_sum([1], [1, 2])


def test_gaussian():
    g = GaussianParams(1.0, 2.0)
    assert g.density_at(1.0) == 1 / (math.sqrt(2 * math.pi) * 2.0)
    assert np.allclose(g.density_at(np.array([1.0, 3.0])), [g.density_at(1.0), g.density_at(3.0)])
    h = GaussianParams(1.0, 2.0).convolve_with(GaussianParams(2.0, 3.0))
    assert h.mu == 3.0 and math.isclose(h.sigma, math.sqrt(13), rel_tol=1e-15)
    with pytest.raises(ValueError):
        GaussianParams(0.0, 0.0)


def test_load_truth_table():
    X, y = load_truth_table("x1,x2,desired\n0,0,0\n0,1,0\n1,0,0\n1,1,1\n")
    assert X.shape == (4, 2) and list(y) == [0, 0, 0, 1]
    with pytest.raises(FormatError) as info:
        load_truth_table("x1,x2,desired\n0,0,2\n")
    assert (info.value.line, info.value.column) == (2, 3)
    with pytest.raises(FormatError):
        load_truth_table("a,b\n")
