"""Dimension algebra and the two engine modes."""
import warnings

from biovi import CHECKED, PAPER_FAITHFUL, DimensionMismatch, evaluation_mode, q, q_add, q_format, q_parse

print(q_format(q_parse("J m s^-1")), "==", q_format(q_parse("kg m^3 s^-3")))
print("W m^-2 ->", q_format(q_parse("W m^-2")))
print(q(3, "km") + q(20, "m"))

with evaluation_mode(CHECKED):
    try:
        q_add(q(1, "m"), q(1, "s"))
    except DimensionMismatch as exc:
        print("checked:", exc)

with evaluation_mode(PAPER_FAITHFUL), warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    print("paper-faithful:", q_add(q(1, "m"), q(1, "s")), "|", caught[0].message)
