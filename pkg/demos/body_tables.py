"""Fly versus human body comparison and the observation density."""
from biovi import q
from biovi.relativity import body_comparison_table, observation_density

for row in body_comparison_table():
    note = "" if row.printed_consistent else f"  (printed {row.printed_ratio_percent}% disagrees with its complement)"
    print(f"{row.name:9s} ratio {row.ratio_percent:.7g}%  complement {row.complement_percent:.9g}%{note}")

print("density:", observation_density(q(70, "kg"), q(1.5, "mm^3")))
