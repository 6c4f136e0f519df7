"""Three-grade perceptron: activations, per-grade firing, the delta rule,
yield efficiency, the product-ratio matrix and Gaussian pulse densities.

Grades are tags, not exponents.  Triples are ordered (3, 2, 1) throughout,
matching the column order of the pulse tables.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import FormatError, ZeroClassSum, ZeroGradeOneSum

GRADES = (3, 2, 1)
GRADE_NAMES = {
    1: "biovielectroluminescent",
    2: "biovielectrical",
    3: "chemical-electrical",
}


def activation(x: float, kind: str = "sigmoid") -> float:
    if kind == "sigmoid":
        # split on sign so exp never overflows
        if x >= 0:
            return 1.0 / (1.0 + math.exp(-x))
        z = math.exp(x)
        return z / (1.0 + z)
    if kind == "step":
        return 0.0 if x < 0 else 1.0
    raise ValueError(f"unknown activation {kind!r}")


@dataclass(frozen=True)
class ClassSums:
    """Weighted sums and thresholds per grade, stored in (3, 2, 1) order."""

    s3: float
    s2: float
    s1: float
    theta3: float = 0.0
    theta2: float = 0.0
    theta1: float = 0.0

    def __post_init__(self):
        for name in ("s3", "s2", "s1", "theta3", "theta2", "theta1"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, v)

    @classmethod
    def from_inputs(cls, bias, weights, inputs, thresholds=(0.0, 0.0, 0.0)):
        """Per grade, bias + sum(w_i x_i); every argument is a (3, 2, 1) triple,
        with weights and inputs holding one sequence per grade."""
        sums = [b + math.fsum(w * x for w, x in zip(ws, xs)) for b, ws, xs in zip(bias, weights, inputs)]
        return cls(*sums, *thresholds)

    @property
    def sums(self) -> tuple:
        return (self.s3, self.s2, self.s1)

    @property
    def thresholds(self) -> tuple:
        return (self.theta3, self.theta2, self.theta1)


def fire_check(sums: ClassSums) -> tuple:
    """(fires3, fires2, fires1): grade g fires iff s_g >= theta_g."""
    return tuple(bool(s >= t) for s, t in zip(sums.sums, sums.thresholds))


def delta_update(w: float, x: float, desired: int, actual: int, rate: float = 1.0) -> float:
    return w + rate * x * (desired - actual)


@dataclass(frozen=True)
class Yield:
    y2: float  # percent
    y3: float  # percent


def yield_efficiency(sums: ClassSums) -> Yield:
    if sums.s1 == 0:
        raise ZeroGradeOneSum("grade-1 sum is zero")
    return Yield(sums.s2 * 100.0 / sums.s1, sums.s3 * 100.0 / sums.s1)


def product_ratio_matrix(sums: ClassSums) -> np.ndarray:
    """3x3 matrix of pairwise products over class sums, row r holding one
    pair product divided by each class sum, cancelled where possible.

    With a = s3, b = s2, c = s1 the layout is
    [[b, a, ab/c], [c, ac/b, a], [bc/a, c, b]].
    """
    a, b, c = sums.s3, sums.s2, sums.s1
    for grade, v in zip(GRADES, (a, b, c)):
        if v == 0:
            raise ZeroClassSum(grade)
    return np.array(
        [
            [b, a, a * b / c],
            [c, a * c / b, a],
            [b * c / a, c, b],
        ]
    )


def kappa(sums: ClassSums) -> tuple:
    """(k3, k2, k1): the anti-diagonal ab/c, ac/b, bc/a of the product-ratio matrix."""
    m = product_ratio_matrix(sums)
    return (float(m[0, 2]), float(m[1, 1]), float(m[2, 0]))


def symmetric_sum(x: Sequence[float], w: Sequence[float], bias: float = 0.0) -> float:
    """bias + sum(w_i x_i) with compensated summation."""
    if len(x) != len(w):
        raise ValueError("x and w must have the same length")
    return bias + math.fsum(wi * xi for wi, xi in zip(w, x))


@dataclass(frozen=True)
class GaussianParams:
    mu: float
    sigma: float

    def __post_init__(self):
        if not (math.isfinite(self.mu) and math.isfinite(self.sigma)):
            raise ValueError("mu and sigma must be finite")
        if not self.sigma > 0:
            raise ValueError("sigma must be strictly positive")

    def density_at(self, x):
        """Normal density at x; x may be a scalar or a numpy array."""
        z = (np.asarray(x, dtype=float) - self.mu) / self.sigma
        out = np.exp(-0.5 * z * z) / (math.sqrt(2.0 * math.pi) * self.sigma)
        return float(out) if out.ndim == 0 else out

    def convolve_with(self, other: "GaussianParams") -> "GaussianParams":
        return GaussianParams(self.mu + other.mu, math.hypot(self.sigma, other.sigma))


# --------------------------------------------------------------------------- #
# single threshold unit
# --------------------------------------------------------------------------- #
class ThresholdUnit:
    """Step-activated perceptron trained with the delta rule.

    Inputs are augmented with a constant 1 so the bias is learned as the
    last weight.  The weights belong to this instance only.
    """

    def __init__(self, n_inputs: int, learning_rate: float = 1.0, weights=None):
        if weights is None:
            self.weights = np.zeros(n_inputs + 1)
        else:
            self.weights = np.array(weights, dtype=float)
            if self.weights.shape != (n_inputs + 1,):
                raise ValueError(f"need {n_inputs + 1} initial weights (bias last)")
        self.learning_rate = float(learning_rate)

    def predict(self, x) -> int:
        xa = np.append(np.asarray(x, dtype=float), 1.0)
        return int(activation(float(np.dot(self.weights, xa)), "step"))

    def train(self, X, y, max_epochs: int = 100) -> int:
        """Run epochs until one is error-free; return the number of epochs used.

        Raises RuntimeError if no error-free epoch occurs within max_epochs.
        """
        X = np.asarray(X, dtype=float)
        for epoch in range(1, max_epochs + 1):
            errors = 0
            for xi, target in zip(X, y):
                out = self.predict(xi)
                if out != target:
                    errors += 1
                    xa = np.append(xi, 1.0)
                    for i in range(len(self.weights)):
                        self.weights[i] = delta_update(self.weights[i], xa[i], int(target), out, self.learning_rate)
            if errors == 0:
                return epoch
        raise RuntimeError(f"no convergence within {max_epochs} epochs")


AND_TABLE = (((0, 0), 0), ((0, 1), 0), ((1, 0), 0), ((1, 1), 1))


def load_truth_table(text: str):
    """Read ``x1,...,xn,desired`` CSV; returns (X, y)."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise FormatError("empty truth table", 1, 1)
    header = [c.strip() for c in rows[0]]
    n = len(header) - 1
    if n < 1 or header[-1] != "desired" or header[:-1] != [f"x{i + 1}" for i in range(n)]:
        raise FormatError("header must be x1,...,xn,desired", 1, 1)
    X, y = [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != n + 1:
            raise FormatError(f"expected {n + 1} fields, got {len(row)}", lineno, 1)
        vals = []
        for col, cell in enumerate(row[:-1], start=1):
            try:
                vals.append(float(cell))
            except ValueError:
                raise FormatError(f"not a number: {cell!r}", lineno, col) from None
        if row[-1].strip() not in ("0", "1"):
            raise FormatError(f"desired must be 0 or 1, got {row[-1]!r}", lineno, n + 1)
        X.append(vals)
        y.append(int(row[-1]))
    return np.array(X), np.array(y, dtype=int)
