"""From a 3-cocycle on Z/n to a multiplicator on the inertia module.

Run: python3 demos/transgression_walkthrough.py [n]
"""
import itertools
import sys

from transgressor import (cyclic_group, d_gamma, d_n, inertia_crossed_module, make_multiplicator,
                          r_multiplicativity, rehome, standard_cyclic_3cocycle, transgress,
                          verify_multiplicator)

n = int(sys.argv[1]) if len(sys.argv) > 1 else 2
cm = inertia_crossed_module(cyclic_group(n))
e = rehome(standard_cyclic_3cocycle(n, 1), cm)
print(f"e(a,b,c) = a*floor((b+c)/{n}) on (Z/{n})^3, d e = 0: {d_gamma(e).is_zero()}")

# T_1 lowers the simplicial degree by one and raises the N-degree by one
c = transgress(e, 1)
print(f"\nc = T_1 e on N x Gamma^2, nonzero at {c.support().size} of {c.space.size} cells")
for x, g, h in itertools.product(range(n), repeat=3):
    if c((x,), (g, h)):
        print(f"  c({x}; {g}, {h}) = {c((x,), (g, h))}")

m = make_multiplicator(e)
rep = verify_multiplicator(m)
print("\nmultiplicator (T_1 e, -T_2 e, -T_3 e):")
for name, norm in rep.norms.items():
    print(f"  residual {name:7s} max norm {norm}")
print(f"  d' c == d b: {d_n(m.c) == d_gamma(m.b)}")

for r in range(4):
    # the chain d' b_(q-1) = d b_q stops once b_q would have negative Gamma-degree
    res = r_multiplicativity(c, r)
    print(f"{r}-multiplicative: {res.holds} ({len(res.witnesses)} witness cochains)")
