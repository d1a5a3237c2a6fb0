"""Central extensions, the isomorphisms Phi_b, and the equivariant extension.

Run: python3 demos/extensions_tour.py
"""
import numpy as np

from transgressor import (GroupoidCochain, as_groupoid, build_extension, cyclic_group,
                          equivariant_extension, groupoid_differential, inertia_crossed_module,
                          phi_b, random_cocycle, symmetric_group, transgress)

Z2 = cyclic_group(2)
carry = GroupoidCochain(as_groupoid(Z2), 2, 2, [0, 0, 0, 1])
ext = build_extension(Z2, carry)
orders = sorted(ext.group.element_order(a) for a in range(ext.order))
print(f"Z/2 twisted by the carry cocycle: order {ext.order}, element orders {orders}")

S3 = symmetric_group(3)
gpd = as_groupoid(S3)
c = GroupoidCochain(gpd, 2, 6, random_cocycle(inertia_crossed_module(S3), 0, 2, 6, 1).values)
b = GroupoidCochain(gpd, 1, 6, np.random.default_rng(0).integers(0, 6, 6))
dom, cod = build_extension(S3, c), build_extension(S3, c + groupoid_differential(b))
iso = phi_b(dom, cod, b)
print(f"Phi_b between S3 extensions of order {dom.order}: homomorphism {iso.verify()[0]}")

cm = inertia_crossed_module(S3)
run = equivariant_extension(cm, transgress(random_cocycle(cm, 0, 3, 6, 0), 1))
print(f"\nequivariant extension over N x| Gamma for S3: |H| = {run.H.num_arrows} arrows, "
      f"{run.crossed.num_arrows} arrows in H x| Delta")
for name, entry in run.checks.items():
    print(f"  {name:22s} {'PASS' if entry['passed'] else 'FAIL'} over {entry['cases']} cases")
