"""Command-line front door.

Exit codes: 0 success, 1 regression failure, 2 usage or input-domain error,
3 I/O or file-format error.  Numbers print via ``repr`` so the output never
depends on the locale.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import quantity as qty
from .errors import BioviError, DomainError, FormatError
from .ledger import load as load_ledger
from .ledger import serialize, summarize
from .neuromatrix import (
    AND_TABLE,
    ClassSums,
    GaussianParams,
    ThresholdUnit,
    activation,
    fire_check,
    kappa,
    load_truth_table,
    product_ratio_matrix,
    yield_efficiency,
)
from .photometry import (
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
from .prekinematics import (
    anticipated_phase_velocity,
    bendable_wavelength,
    motion_stretch,
    post_kinematic_frequency,
    worldline_classify,
)
from .problems import MODES, PROBLEM_IDS, STRICT, results_to_csv, run_sample_problem
from .quantity import Quantity
from .regression import TARGET_LABELS, run_regression_suite, simulate_stream
from .relativity import body_ratio_percent, lorentz_factor, observation_density, spacetime_interval

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _out(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _num(x) -> str:
    if isinstance(x, Quantity):
        return str(x)
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _triple(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated numbers, got {text!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not numbers: {text!r}") from None


def _gauss(text: str) -> GaussianParams:
    parts = text.split(",")
    try:
        mu, sigma = (float(p) for p in parts)
        return GaussianParams(mu, sigma)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected mu,sigma with sigma > 0, got {text!r} ({exc})") from None


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise OSError(f"cannot read {path}: {exc}") from exc


def _write(path, data: bytes) -> None:
    if path is None or path == "-":
        sys.stdout.write(data.decode("utf-8"))
        return
    Path(path).write_bytes(data)


# --------------------------------------------------------------------------- #
# eval operations: name -> (flags, function(args) -> {label: value})
# --------------------------------------------------------------------------- #
def _angle(args, value: str) -> float:
    x = float(value)
    return x if args.rad else math.radians(x)


def _eval_unit(a):
    return {"dimension": qty.format_dimension(qty.q_parse(a.expr))}


def _eval_lorentz(a):
    return {"gamma": lorentz_factor(a.v)}


def _eval_phase(a):
    pv = anticipated_phase_velocity(a.v)
    return {"abs_vp": pv.abs_vp, "v_p": pv.full_vp, "c_cons": pv.c_cons}


def _eval_bend(a):
    return {"lambda_bend": bendable_wavelength(a.v_w, a.t, a.nu, a.t_cons)}


def _eval_stretch(a):
    return {"x_k": motion_stretch(a.v_k, a.x, a.y, _angle(a, a.theta), a.dt)}


def _eval_worldline(a):
    return {"kind": worldline_classify(a.v).kind.value}


def _eval_post(a):
    res = post_kinematic_frequency(a.chi_squared, a.nu_pre)
    out = {"nu_post": res.nu_post}
    if res.delta_K is not None:
        out["delta_K"] = res.delta_K
    return out


def _eval_photon(a):
    return {"E": photon_energy(a.nu)}


def _eval_beta(a):
    return {"beta": biovi_quantity(a.nu, a.v_rgb)}


def _eval_luminance(a):
    return {"L": luminance(a.F, a.A, a.omega, _angle(a, a.theta))}


def _eval_lumfreq(a):
    samples = load_luminance_samples(_read_text(a.csv), a.delta_L)
    return {"nu_L": luminance_frequency(samples)}


def _eval_flux(a):
    res = biovi_flux(a.A, V=a.V, I=a.I)
    return {"flux": res.value, "form": res.form}


def _eval_scene(a):
    acc = scene_accounting(SceneLedger(a.n_c, t=a.t, cons_t=a.cons_t))
    return {"total_images": acc.total_images, "rate": acc.rate}


def _eval_scene_volume(a):
    res = scene_volume_change(a.V_S, a.V_fly, a.V_man, a.A_fly, a.A_man, a.dlam_fly, a.dlam_man)
    return {"delta_V": res.delta_V, "ratio": res.ratio}


def _eval_interval(a):
    return {"s_squared": spacetime_interval(a.t, a.r, a.convention)}


def _eval_density(a):
    return {"rho": observation_density(a.mass, a.volume)}


def _eval_ratio(a):
    big = Quantity.parse(a.big) if a.big_high is None else (Quantity.parse(a.big), Quantity.parse(a.big_high))
    res = body_ratio_percent(Quantity.parse(a.small), big)
    return {"ratio_percent": res.ratio_percent, "complement_percent": res.complement_percent}


def _eval_activation(a):
    return {"value": activation(a.x, a.kind)}


def _sums(a) -> ClassSums:
    return ClassSums(*a.sums, *a.thresholds)


def _eval_fire(a):
    return dict(zip(("fires3", "fires2", "fires1"), fire_check(_sums(a))))


def _eval_yield(a):
    y = yield_efficiency(_sums(a))
    return {"y2_percent": y.y2, "y3_percent": y.y3}


def _eval_matrix(a):
    s = _sums(a)
    m = product_ratio_matrix(s)
    out = {f"row{i + 1}": " ".join(repr(float(v)) for v in row) for i, row in enumerate(m)}
    out.update(zip(("kappa3", "kappa2", "kappa1"), kappa(s)))
    return out


def _q(s):  # quantity flag: SI number or "value unit" string
    return s


EVAL_OPS = {
    "unit": (_eval_unit, [("expr", str, None)]),
    "lorentz-factor": (_eval_lorentz, [("--v", _q, True)]),
    "phase-velocity": (_eval_phase, [("--v", _q, True)]),
    "bendable-wavelength": (_eval_bend, [("--v-w", _q, True), ("--t", _q, True), ("--nu", _q, True), ("--t-cons", _q, True)]),
    "motion-stretch": (_eval_stretch, [("--v-k", _q, True), ("--x", _q, True), ("--y", _q, True), ("--theta", str, True), ("--dt", _q, "1")]),
    "worldline": (_eval_worldline, [("--v", _q, True)]),
    "post-kinematic": (_eval_post, [("--chi-squared", _q, True), ("--nu-pre", _q, None)]),
    "photon-energy": (_eval_photon, [("--nu", _q, True)]),
    "biovi-quantity": (_eval_beta, [("--nu", _q, True), ("--v-rgb", _q, True)]),
    "luminance": (_eval_luminance, [("--F", _q, True), ("--A", _q, True), ("--omega", _q, True), ("--theta", str, "0")]),
    "luminance-frequency": (_eval_lumfreq, [("--csv", str, True), ("--delta-L", float, None)]),
    "flux": (_eval_flux, [("--V", _q, True), ("--I", _q, True), ("--A", _q, True)]),
    "scene": (_eval_scene, [("--n-c", int, True), ("--t", _q, "1"), ("--cons-t", _q, "0")]),
    "scene-volume": (
        _eval_scene_volume,
        [(f"--{n}", _q, True) for n in ("V-S", "V-fly", "V-man", "A-fly", "A-man", "dlam-fly", "dlam-man")],
    ),
    "interval": (_eval_interval, [("--t", _q, True), ("--r", float, "0"), ("--convention", str, "paper")]),
    "density": (_eval_density, [("--mass", _q, True), ("--volume", _q, True)]),
    "body-ratio": (_eval_ratio, [("--small", str, True), ("--big", str, True), ("--big-high", str, None)]),
    "activation": (_eval_activation, [("--x", float, True), ("--kind", str, "sigmoid")]),
    "fire": (_eval_fire, [("--sums", _triple, True), ("--thresholds", _triple, "0,0,0")]),
    "yield": (_eval_yield, [("--sums", _triple, True), ("--thresholds", _triple, "0,0,0")]),
    "product-matrix": (_eval_matrix, [("--sums", _triple, True), ("--thresholds", _triple, "0,0,0")]),
}


def _print_values(values: dict, as_json: bool) -> None:
    if as_json:
        def enc(v):
            if isinstance(v, Quantity):
                return {"magnitude": v.magnitude, "unit": qty.format_dimension(v.dim)}
            return v

        _out(json.dumps({k: enc(v) for k, v in values.items()}, indent=2))
        return
    for k, v in values.items():
        _out(f"{k} = {_num(v)}")


# --------------------------------------------------------------------------- #
# subcommands
# --------------------------------------------------------------------------- #
def cmd_constants(a) -> int:
    _print_values({name: qty.constant(name) for name in qty.CONSTANT_NAMES}, a.json)
    return EXIT_OK


def cmd_eval(a) -> int:
    func = EVAL_OPS[a.op][0]
    _print_values(func(a), a.json)
    return EXIT_OK


def cmd_problem(a) -> int:
    result = run_sample_problem(a.id, a.mode)
    if a.csv:
        _out(results_to_csv([result]).rstrip("\n"))
        return EXIT_OK
    for pid, label, magnitude, unit, mode in result.rows():
        _out(f"{pid} {label} = {magnitude!r} {unit}")
    return EXIT_OK


def cmd_regress(a) -> int:
    targets = None
    if a.targets is not None:
        targets = [t.strip() for t in a.targets.split(";") if t.strip()]
    report = run_regression_suite(a.mode, targets)
    if a.json:
        _out(report.to_json())
    else:
        for e in report.entries:
            flag = "PASS" if e.passed else "FAIL"
            _out(f"{flag} {e.label}: actual {e.actual.magnitude!r} expected {e.expected.magnitude!r} "
                 f"[{qty.format_dimension(e.expected.dim)}] rel_error {e.rel_error:.3e}")
    return EXIT_OK if report.all_pass else EXIT_FAIL


def cmd_simulate(a) -> int:
    sim = simulate_stream(a.n, a.seed, [a.grade3, a.grade2, a.grade1], a.thresholds)
    data = serialize(sim.ledger, "csv")
    if a.out:
        _write(a.out, data)
    summary = serialize(sim.summary, "structured-text").decode("utf-8")
    ranking = "\n".join(["[ranking]"] + [f"grade{g} = {y!r}" for g, y in sim.ranking])
    text = summary + "\n" + ranking + "\n"
    if a.summary:
        _write(a.summary, text.encode("utf-8"))
    else:
        _out(text.rstrip("\n"))
    return EXIT_OK


def cmd_ledger(a) -> int:
    ledger = load_ledger(_read_text(a.input).encode("utf-8"))
    if a.action == "import":
        # validate and rewrite in canonical form
        _write(a.out, serialize(ledger, "csv"))
    elif a.action == "export":
        _write(a.out, serialize(ledger, a.format))
    else:
        _write(a.out, serialize(summarize(ledger, a.thresholds), "structured-text"))
    return EXIT_OK


def cmd_train(a) -> int:
    if a.table:
        X, y = load_truth_table(_read_text(a.table))
    else:
        X = [x for x, _ in AND_TABLE]
        y = [d for _, d in AND_TABLE]
    unit = ThresholdUnit(len(X[0]), a.learning_rate)
    try:
        epochs = unit.train(X, y, a.max_epochs)
    except RuntimeError as exc:
        _out(f"error: {exc}")
        return EXIT_FAIL
    _out(f"epochs = {epochs}")
    _out("weights = " + " ".join(repr(float(w)) for w in unit.weights))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="biovi", description="Unit-aware calculation engine and pulse ledger tools.")
    p.add_argument("--engine-mode", choices=("checked", "paper-faithful"), default=None,
                   help="dimension checking mode (default: $BIOVI_MODE or checked)")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("constants", help="print the physical constants")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_constants)

    sp = sub.add_parser("eval", help="evaluate a single operation")
    ops = sp.add_subparsers(dest="op", required=True)
    for name, (_, flags) in EVAL_OPS.items():
        op = ops.add_parser(name)
        op.add_argument("--json", action="store_true")
        angle = op.add_mutually_exclusive_group()
        angle.add_argument("--deg", dest="rad", action="store_false", help="angles in degrees (default)")
        angle.add_argument("--rad", dest="rad", action="store_true", help="angles in radians")
        op.set_defaults(rad=False)
        for flag, typ, default in flags:
            if not flag.startswith("--"):
                op.add_argument(flag, type=typ)
                continue
            dest = flag[2:].replace("-", "_")
            if default is True:
                op.add_argument(flag, dest=dest, type=typ, required=True)
            else:
                op.add_argument(flag, dest=dest, type=typ, default=None if default is None else typ(default))
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("problem", help="solve a worked sample problem")
    sp.add_argument("id", choices=PROBLEM_IDS)
    sp.add_argument("--mode", choices=MODES, default=STRICT)
    sp.add_argument("--csv", action="store_true", help="emit problem_id,label,magnitude,unit,mode records")
    sp.set_defaults(func=cmd_problem)

    sp = sub.add_parser("regress", help="check results against the printed values")
    sp.add_argument("--mode", choices=MODES, default=STRICT)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--targets", default=None,
                    help="semicolon-separated labels (empty string selects none); known: " + "; ".join(TARGET_LABELS))
    sp.set_defaults(func=cmd_regress)

    sp = sub.add_parser("simulate", help="simulate a seeded pulse stream into a ledger")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--grade3", type=_gauss, default=GaussianParams(1.0, 1.0), help="mu,sigma")
    sp.add_argument("--grade2", type=_gauss, default=GaussianParams(1.0, 1.0), help="mu,sigma")
    sp.add_argument("--grade1", type=_gauss, default=GaussianParams(1.0, 1.0), help="mu,sigma")
    sp.add_argument("--thresholds", type=_triple, default=(0.0, 0.0, 0.0), help="theta3,theta2,theta1")
    sp.add_argument("--out", default=None, help="ledger CSV path")
    sp.add_argument("--summary", default=None, help="summary path (default stdout)")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("ledger", help="ledger file operations")
    sp.add_argument("action", choices=("export", "import", "summarize"))
    sp.add_argument("input", help="ledger CSV path")
    sp.add_argument("--format", choices=("csv", "structured-text"), default="structured-text")
    sp.add_argument("--thresholds", type=_triple, default=(0.0, 0.0, 0.0))
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_ledger)

    sp = sub.add_parser("train", help="train a threshold unit with the delta rule")
    sp.add_argument("--table", default=None, help="x1,...,xn,desired CSV (default: two-input AND)")
    sp.add_argument("--learning-rate", type=float, default=1.0)
    sp.add_argument("--max-epochs", type=int, default=100)
    sp.set_defaults(func=cmd_train)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.engine_mode:
            with qty.evaluation_mode(args.engine_mode):
                return args.func(args)
        return args.func(args)
    except (OSError, FormatError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_IO
    except (BioviError, DomainError, ValueError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
