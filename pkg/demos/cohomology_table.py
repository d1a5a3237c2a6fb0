"""Cohomology of small groups with cyclic coefficients, by two eliminations.

Run: python3 demos/cohomology_table.py
"""
from transgressor import cohomology_group, preset_group, trivial_crossed_module

cases = [("Z2", 2), ("Z3", 3), ("Z4", 4), ("Z4", 2), ("S3", 2), ("S3", 3), ("S3", 6), ("Q8", 2)]
print(f"{'group':6s} {'n':>2s}   " + "   ".join(f"{'H^' + str(p):>9s}" for p in range(4)))
for name, n in cases:
    cm = trivial_crossed_module(preset_group(name))
    row = []
    for p in range(4):
        H = cohomology_group(cm, 0, p, n)
        if p <= 2:
            assert H.factors == cohomology_group(cm, 0, p, n, method="modular").factors
        row.append(str(H))
    print(f"{name:6s} {n:2d}   " + "   ".join(f"{h:>9s}" for h in row))
