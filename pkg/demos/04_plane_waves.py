# # Plane waves on both signs of c
#
# States carry m, c and hbar explicitly. Only the products mc and E/c enter
# the spinors, so the sheet c < 0 behaves exactly like c > 0.

# %%
import numpy as np

from diracsym import PlaneWaveState, make_C, operator
from diracsym.planewave import (
    bar_product,
    charge_conjugate,
    dirac_residual,
    eval_psi,
    ptq_vs_c_check,
    random_momentum,
    random_points,
    random_spinor,
    sheet_identify,
)

rng = np.random.default_rng(0)
pts = random_points(rng, 10)
for c in (3.0, -3.0):
    s = PlaneWaveState("positive", random_momentum(rng, 1.0, c), random_spinor(rng), 1.0, c)
    print(f"c={c:+}: p0={s.p0:.4f}  E={s.energy:+.4f}  ubar u={bar_product(s.spinor()):+.6f}  2mc={2 * s.mc:+}")
    print("   free residual:", max(dirac_residual(s.wave(), s.mc, 1.0, x0, x) for x0, x in pts))

# %% [markdown]
# Flipping (m, c) together leaves every value untouched.

# %%
flipped = sheet_identify(s)
print(flipped.energy, s.energy, max(np.max(np.abs(eval_psi(flipped, x0, x) - eval_psi(s, x0, x))) for x0, x in pts))

# %% [markdown]
# C maps a negative-frequency state carrying w' = -sigma_y w* onto the
# positive state with spinor w.

# %%
neg = charge_conjugate(s)
image = make_C().act(neg.family())
print(max(np.linalg.norm(image(x0, x, s.c) - eval_psi(s, x0, x)) for x0, x in pts))

# %% [markdown]
# Comparing C psi_- with PTQ psi_+: with the same spinor label on both sides
# no phase fits. Labelling the right side with (n.sigma) w' gives -1.

# %%
r = ptq_vs_c_check(s, pts)
print("same label: best", r.same_label_phase, f"{r.same_label_deviation:.3f}")
print("rotated label: best", r.phase, f"{r.deviation:.1e}")
print({k: f"{v:.1e}" for k, v in r.phase_deviations.items()})

# %% [markdown]
# The PTQ image solves the equation with the mass term sign flipped.

# %%
img = s.wave().transformed(operator("PTQ"))
print(max(dirac_residual(img, -s.mc, 1.0, x0, x) for x0, x in pts))
