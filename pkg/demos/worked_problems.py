"""Solve the worked sample problems in both modes and show where they part ways."""
from biovi.problems import PROBLEM_IDS, RECOMPUTED, STRICT, divergent_labels, effective_area, run_sample_problem

for pid in PROBLEM_IDS:
    strict = run_sample_problem(pid, STRICT)
    recomputed = run_sample_problem(pid, RECOMPUTED)
    print(f"[{pid}]")
    for label in strict.named_values:
        a, unit = strict.display(label)
        b, _ = recomputed.display(label)
        print(f"  {label:10s} {a:.9g} {unit:12s} recomputed {b:.9g}")

print()
print("effective area, strict:    ", effective_area(STRICT))
print("effective area, recomputed:", effective_area(RECOMPUTED))
print("labels that move:", {k: v for k, v in divergent_labels().items() if v})
