"""Append-only pulse ledger and its tabular summary.

Each record holds a data index ``dir``, the weighted inputs w*x for grades
3, 2, 1 and the boolean firing outputs for the same grades.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import EmptyLedger, FormatError, NonMonotonicDir
from .neuromatrix import ClassSums, GaussianParams, Yield, kappa, yield_efficiency

HEADER = ("dir", "in3", "in2", "in1", "out3", "out2", "out1")
FORMATS = ("csv", "structured-text")


@dataclass(frozen=True)
class PulseRecord:
    dir: int
    inputs: tuple  # (in3, in2, in1)
    outputs: tuple  # (out3, out2, out1)

    def __post_init__(self):
        if isinstance(self.dir, bool) or int(self.dir) != self.dir or self.dir < 1:
            raise ValueError(f"dir must be a positive integer, got {self.dir!r}")
        inputs = tuple(float(x) for x in self.inputs)
        outputs = tuple(self.outputs)
        if len(inputs) != 3 or len(outputs) != 3:
            raise ValueError("inputs and outputs must be (grade 3, grade 2, grade 1) triples")
        if not all(math.isfinite(x) for x in inputs):
            raise ValueError("inputs must be finite")
        if not all(isinstance(o, bool) for o in outputs):
            raise ValueError("outputs must be booleans")
        object.__setattr__(self, "dir", int(self.dir))
        object.__setattr__(self, "inputs", inputs)
        object.__setattr__(self, "outputs", outputs)

    @property
    def operation(self) -> tuple:
        """Derived O column: each input times the record's dir."""
        return tuple(x * self.dir for x in self.inputs)


class Ledger:
    """Append-only sequence of PulseRecords with strictly increasing dir."""

    def __init__(self, records: Iterable[PulseRecord] = ()):
        self._records: list[PulseRecord] = []
        for r in records:
            self.append(r)

    def append(self, record: PulseRecord) -> "Ledger":
        if self._records and record.dir <= self._records[-1].dir:
            raise NonMonotonicDir(f"dir {record.dir} does not exceed last dir {self._records[-1].dir}")
        self._records.append(record)
        return self

    @property
    def records(self) -> tuple:
        return tuple(self._records)

    def __len__(self):
        return len(self._records)

    def __iter__(self):
        return iter(self._records)

    def __eq__(self, other):
        return isinstance(other, Ledger) and self._records == other._records

    def __add__(self, other: "Ledger") -> "Ledger":
        return Ledger(list(self) + list(other))

    def next_dir(self) -> int:
        return self._records[-1].dir + 1 if self._records else 1


# --------------------------------------------------------------------------- #
# summary
# --------------------------------------------------------------------------- #
@dataclass(frozen=True)
class LedgerSummary:
    count: int
    sums: tuple  # (S3, S2, S1)
    thresholds: tuple
    verdicts: tuple  # S_g >= theta_g
    all_fired: tuple  # every record fired, per grade
    any_fired: tuple  # some record fired, per grade
    dir_sum: int
    mean_dir: float
    kappa_rows: tuple  # ((dir, (k3, k2, k1)), ...)
    kappa_sum: tuple
    kappa_mean: tuple
    yields: Yield
    fits: tuple  # cumulative GaussianParams per grade, None when undefined


def _fit(values: Sequence[float]) -> Optional[GaussianParams]:
    n = len(values)
    if n < 2:
        return None
    mu = math.fsum(values) / n
    var = math.fsum((v - mu) ** 2 for v in values) / (n - 1)
    if var <= 0:
        return None
    return GaussianParams(mu, math.sqrt(var))


def grade_sums(ledger: Ledger) -> tuple:
    return tuple(math.fsum(r.inputs[g] for r in ledger) for g in range(3))


def summarize(ledger: Ledger, thresholds: Sequence[float] = (0.0, 0.0, 0.0)) -> LedgerSummary:
    if len(ledger) == 0:
        raise EmptyLedger("cannot summarize an empty ledger")
    thresholds = tuple(float(t) for t in thresholds)
    sums = grade_sums(ledger)
    kappa_rows = tuple((r.dir, kappa(ClassSums(*r.inputs))) for r in ledger)
    n = len(ledger)
    kappa_sum = tuple(math.fsum(k[g] for _, k in kappa_rows) for g in range(3))
    dir_sum = sum(r.dir for r in ledger)
    return LedgerSummary(
        count=n,
        sums=sums,
        thresholds=thresholds,
        verdicts=tuple(s >= t for s, t in zip(sums, thresholds)),
        all_fired=tuple(all(r.outputs[g] for r in ledger) for g in range(3)),
        any_fired=tuple(any(r.outputs[g] for r in ledger) for g in range(3)),
        dir_sum=dir_sum,
        mean_dir=dir_sum / n,
        kappa_rows=kappa_rows,
        kappa_sum=kappa_sum,
        kappa_mean=tuple(k / n for k in kappa_sum),
        yields=yield_efficiency(ClassSums(*sums)),
        fits=tuple(_fit([r.inputs[g] for r in ledger]) for g in range(3)),
    )


# --------------------------------------------------------------------------- #
# serialization
# --------------------------------------------------------------------------- #
def _bool(b: bool) -> str:
    return "1" if b else "0"


def to_csv(ledger: Ledger) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HEADER)
    for r in ledger:
        w.writerow([str(r.dir), *(repr(x) for x in r.inputs), *(_bool(o) for o in r.outputs)])
    return buf.getvalue()


def load(data) -> Ledger:
    """Parse ledger CSV (str or UTF-8 bytes); errors carry line and column."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise FormatError(f"not UTF-8: {exc.reason}", 1, 1) from None
    rows = list(csv.reader(io.StringIO(data)))
    if not rows or tuple(rows[0]) != HEADER:
        raise FormatError(f"header must be {','.join(HEADER)}", 1, 1)
    ledger = Ledger()
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(HEADER):
            raise FormatError(f"expected {len(HEADER)} fields, got {len(row)}", lineno, min(len(row), len(HEADER)) + 1)
        try:
            d = int(row[0])
        except ValueError:
            raise FormatError(f"dir is not an integer: {row[0]!r}", lineno, 1) from None
        if d < 1:
            raise FormatError(f"dir must be positive: {row[0]!r}", lineno, 1)
        inputs = []
        for col in range(1, 4):
            try:
                x = float(row[col])
            except ValueError:
                raise FormatError(f"not a number: {row[col]!r}", lineno, col + 1) from None
            if not math.isfinite(x):
                raise FormatError(f"not finite: {row[col]!r}", lineno, col + 1)
            inputs.append(x)
        outputs = []
        for col in range(4, 7):
            if row[col] not in ("0", "1"):
                raise FormatError(f"boolean must be 1 or 0, got {row[col]!r}", lineno, col + 1)
            outputs.append(row[col] == "1")
        try:
            ledger.append(PulseRecord(d, tuple(inputs), tuple(outputs)))
        except NonMonotonicDir as exc:
            raise FormatError(str(exc), lineno, 1) from None
    return ledger


def _fmt(x) -> str:
    if x is None:
        return "absent"
    if isinstance(x, bool):
        return _bool(x)
    if isinstance(x, float):
        return repr(x)
    return str(x)


def summary_to_text(s: LedgerSummary) -> str:
    """Structured text: per-record kappa rows, then the sum row, then the mean row."""
    lines = [
        "[summary]",
        f"records = {s.count}",
        f"dir_sum = {s.dir_sum}",
        f"mean_dir = {_fmt(s.mean_dir)}",
        "",
        "[grades]",
        "grade sum theta fires all_fired any_fired mu sigma",
    ]
    for g, grade in enumerate((3, 2, 1)):
        fit = s.fits[g]
        lines.append(
            " ".join(
                [
                    str(grade),
                    _fmt(s.sums[g]),
                    _fmt(s.thresholds[g]),
                    _fmt(s.verdicts[g]),
                    _fmt(s.all_fired[g]),
                    _fmt(s.any_fired[g]),
                    _fmt(fit.mu if fit else None),
                    _fmt(fit.sigma if fit else None),
                ]
            )
        )
    lines += ["", "[kappa]", "dir k3 k2 k1"]
    for d, k in s.kappa_rows:
        lines.append(" ".join([str(d), *(_fmt(v) for v in k)]))
    lines.append(" ".join(["sum", *(_fmt(v) for v in s.kappa_sum)]))
    lines.append(" ".join(["mean", *(_fmt(v) for v in s.kappa_mean)]))
    lines += ["", "[yield]", f"y2_percent = {_fmt(s.yields.y2)}", f"y3_percent = {_fmt(s.yields.y3)}"]
    lines.append("fits = cumulative")
    return "\n".join(lines) + "\n"


def ledger_to_text(ledger: Ledger) -> str:
    lines = ["[ledger]", "dir in3 in2 in1 out3 out2 out1 o3 o2 o1"]
    for r in ledger:
        cells = [str(r.dir), *(repr(x) for x in r.inputs), *(_bool(o) for o in r.outputs), *(repr(x) for x in r.operation)]
        lines.append(" ".join(cells))
    return "\n".join(lines) + "\n"


def serialize(obj, fmt: str = "csv") -> bytes:
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")
    if isinstance(obj, LedgerSummary):
        if fmt == "csv":
            raise ValueError("summaries serialize to structured-text only")
        return summary_to_text(obj).encode("utf-8")
    if fmt == "csv":
        return to_csv(obj).encode("utf-8")
    return ledger_to_text(obj).encode("utf-8")
