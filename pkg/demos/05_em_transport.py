# # Carrying solutions through an external potential
#
# A constant potential shifts the phase of a plane wave by (e/c) A. Each
# discrete operator maps a solution of one instance (m, c, e, A) to a
# solution of another; the parameter map is read off the operator itself.

# %%
from fractions import Fraction

import numpy as np

from diracsym import DiracInstance, build_solution, instance_map, transport_check
from diracsym.coupling import COMPOSITES, compose_maps, coupled_residual, potential_rule_equivalence
from diracsym.planewave import random_points

inst = DiracInstance(m=1, c=3, e=Fraction(1, 2), A=(Fraction(1, 5), Fraction(-3, 10), 0, Fraction(7, 10)))
sol = build_solution(inst, (0.4, -1.2, 2.5), (0.6, 0.8j))
pts = random_points(np.random.default_rng(1), 5)
print("own residual:", coupled_residual(inst, sol, pts))

# %%
for name in COMPOSITES:
    m = instance_map(name)
    mapped = m.apply(inst)
    print(f"{name:<4} c={mapped.c:+} e={str(mapped.e):>5} A={tuple(str(a) for a in mapped.A)}  "
          f"residual={transport_check(inst, name, sol, pts):.1e}")

# %% [markdown]
# Composing the maps for P, T and Q one at a time gives the PTQ map, and
# flipping e is the same equation as flipping the whole potential.

# %%
print(compose_maps(instance_map("P"), instance_map("T"), instance_map("Q")).signature())
print(instance_map("PTQ").signature())
print(potential_rule_equivalence(inst))
