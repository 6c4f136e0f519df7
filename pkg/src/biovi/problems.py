"""Worked sample problems: pixel motion stretch and the photon cavity.

Two modes are supported:

``strict-paper``
    plugs in the intermediate values exactly as printed alongside the worked
    solutions (rounded Planck time, the printed effective area 3.77e-7 m^2,
    the printed phase velocity), so the printed answers are reproduced.
``recomputed``
    derives every intermediate from first principles.  The effective area of
    the pixel frame then comes out as 1.42129e-7 m^2 and every value that
    depends on it moves away from print.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

from . import photometry
from . import quantity as qty
from .errors import UnknownProblem
from .prekinematics import (
    anticipated_phase_velocity,
    motion_stretch,
    motion_stretch_general,
    post_kinematic_frequency,
)
from .quantity import (
    AREA,
    FREQUENCY,
    LENGTH,
    Quantity,
    format_dimension,
    q,
)

STRICT = "strict-paper"
RECOMPUTED = "recomputed"
MODES = (STRICT, RECOMPUTED)

C = qty.SPEED_OF_LIGHT
PROBLEM_IDS = ("stretch", "stretch-area", "phase-velocity", "phase-stretch", "cavity")

# problem statement inputs
V_OBJECT = 0.1  # m/s
ANGLE_STRETCH = math.radians(95.0)
X_PIXEL = q(0.023, "cm")
X_DISPLACED = q(0.01, "m")
Y_PIXEL = q(0.4318, "mm")
PIXEL_FRAME = q(0.377, "mm")
CAVITY_DIAMETER = 1.6264e-35  # m
ANGLE_CAVITY = math.radians(10.0)

# intermediates as printed in the worked solutions
PRINTED_PLANCK_TIME = 5.3912e-44
PRINTED_PHASE_VELOCITY = 8.98755179e17  # m/s
PRINTED_CHI_SQUARED = 3.77e-7  # m^2


def _check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    return mode


@dataclass(frozen=True)
class SampleProblemResult:
    problem_id: str
    named_values: dict
    mode: str
    display_units: dict = field(default_factory=dict)

    def __getitem__(self, label: str) -> Quantity:
        return self.named_values[label]

    def display(self, label: str) -> tuple[float, str]:
        """Magnitude and unit string as the value is printed in the solution."""
        unit = self.display_units.get(label) or format_dimension(self.named_values[label].dim)
        return self.named_values[label].to(unit), unit

    def rows(self):
        for label in self.named_values:
            magnitude, unit = self.display(label)
            yield self.problem_id, label, magnitude, unit, self.mode


def _x_diff() -> Quantity:
    # 0.023 cm - 0.01 m, the signed pixel displacement
    return X_PIXEL - X_DISPLACED


def _stretch(mode):
    xk = motion_stretch(V_OBJECT, _x_diff(), Y_PIXEL, ANGLE_STRETCH, 1.0)
    return {"x_k": xk}, {"x_k": "m"}


def _stretch_area(mode):
    dx = _x_diff().magnitude
    cos = math.cos(ANGLE_STRETCH)
    hyp = Quantity(dx / cos, LENGTH)
    xk = _stretch(mode)[0]["x_k"]
    area = Quantity(dx * Y_PIXEL.magnitude * cos, AREA)
    values = {"hypotenuse": hyp, "total": hyp + xk, "area": area}
    return values, {"hypotenuse": "m", "total": "m", "area": "m^2"}


def _phase_velocity(mode) -> float:
    if mode == STRICT:
        return PRINTED_PHASE_VELOCITY
    return anticipated_phase_velocity(V_OBJECT).full_vp.magnitude


def _planck_time(mode) -> float:
    return PRINTED_PLANCK_TIME if mode == STRICT else qty.PLANCK_TIME


def _phase_velocity_problem(mode):
    pv = anticipated_phase_velocity(V_OBJECT)
    values = {"abs_vp": pv.abs_vp, "v_p": pv.full_vp}
    return values, {"abs_vp": "km s^-1", "v_p": "km s^-1"}


def _phase_stretch(mode):
    # the trap's magnitudal area |x||y|sin(theta) with |x| = |y| = d/2, divided
    # by c^2 t_P; the consumed length is v_p over one unit of time, and 2g = 1
    v_p = _phase_velocity(mode)
    half_d = math.sqrt((CAVITY_DIAMETER / 2.0) ** 2)
    xk = motion_stretch_general(
        x_cons=v_p * 1.0,
        x_mag=half_d,
        y_mag=half_d,
        theta=ANGLE_CAVITY,
        g=0.5,
        time_mode="planck_product",
        t=1.0,
        use_sin=True,
        t_planck=_planck_time(mode),
    )
    nu = Quantity(C / xk.magnitude, FREQUENCY)
    return {"x_k": xk, "nu": nu}, {"x_k": "km", "nu": "Hz"}


def effective_area(mode: str) -> Quantity:
    """X^2: the printed 3.77e-7 m^2, or (d/2)^2 + (0.377 mm)^2 recomputed."""
    if _check_mode(mode) == STRICT:
        return Quantity(PRINTED_CHI_SQUARED, AREA)
    chi = math.sqrt((CAVITY_DIAMETER / 2.0) ** 2 + PIXEL_FRAME.magnitude ** 2)
    return Quantity(chi * chi, AREA)


def _cavity(mode):
    v_p = _phase_velocity(mode)
    t_p = _planck_time(mode)
    nu_cavity = Quantity(C ** 3 * t_p / (v_p * CAVITY_DIAMETER ** 2), FREQUENCY)
    energy = photometry.photon_energy(nu_cavity)
    chi2 = effective_area(mode)
    nu_obs = Quantity(C ** 3 * 1.0 / (v_p * chi2.magnitude), FREQUENCY)
    beta = photometry.biovi_quantity(nu_obs, V_OBJECT)
    post = post_kinematic_frequency(chi2, nu_pre=nu_obs)
    values = {
        "nu_cavity": nu_cavity,
        "E": energy,
        "chi_squared": chi2,
        "nu_obs": nu_obs,
        "beta": beta,
        "nu_post": post.nu_post,
        "delta_K": post.delta_K,
    }
    units = {
        "nu_cavity": "Hz",
        "E": "J",
        "chi_squared": "m^2",
        "nu_obs": "Hz",
        "beta": "kg m^3 s^-3",
        "nu_post": "Hz",
        "delta_K": "Hz",
    }
    return values, units


_SOLVERS = {
    "stretch": _stretch,
    "stretch-area": _stretch_area,
    "phase-velocity": _phase_velocity_problem,
    "phase-stretch": _phase_stretch,
    "cavity": _cavity,
}


def run_sample_problem(problem_id: str, mode: str = STRICT) -> SampleProblemResult:
    _check_mode(mode)
    try:
        solver = _SOLVERS[problem_id]
    except KeyError:
        raise UnknownProblem(f"unknown problem {problem_id!r}; known: {', '.join(PROBLEM_IDS)}") from None
    values, units = solver(mode)
    return SampleProblemResult(problem_id, values, mode, units)


def divergent_labels(rel_tol: float = 1e-3) -> dict:
    """Per problem, the labels whose strict and recomputed values differ by more than rel_tol."""
    out = {}
    for pid in PROBLEM_IDS:
        strict = run_sample_problem(pid, STRICT)
        recomputed = run_sample_problem(pid, RECOMPUTED)
        diff = []
        for label, a in strict.named_values.items():
            b = recomputed.named_values[label]
            if abs(a.magnitude - b.magnitude) > rel_tol * abs(a.magnitude):
                diff.append(label)
        out[pid] = diff
    return out


RESULT_HEADER = ("problem_id", "label", "magnitude", "unit", "mode")


def results_to_csv(results) -> str:
    """Flat ``problem_id,label,magnitude,unit,mode`` records, LF line endings."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(RESULT_HEADER)
    for result in results:
        for pid, label, magnitude, unit, mode in result.rows():
            writer.writerow([pid, label, repr(magnitude), unit, mode])
    return buf.getvalue()
