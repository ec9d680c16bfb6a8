# # Which matrices intertwine the generators?
#
# Search all 64 candidates (16 basis elements times a phase in {1, -1, i, -i})
# for U with U op(g^a) U^-1 = eps_a g^a.

# %%
import time

from diracsym.discrete import IntertwinerConstraint, solve_intertwiner
from diracsym.gammaexpr import format_canonical


def show(signs, mode):
    start = time.perf_counter()
    found = solve_intertwiner(IntertwinerConstraint.from_string(signs, mode))
    ms = (time.perf_counter() - start) * 1000
    labels = ", ".join(format_canonical(p, k) for p, k in found)
    print(f"{signs} {mode:<10} {labels}   ({ms:.0f} ms)")


# %% [markdown]
# Flipping every generator leaves only multiples of g5: the light-speed
# inversion matrix is fixed up to a phase.

# %%
show("----", "plain")

# %% [markdown]
# Keeping g0 and flipping the spatial ones gives the parity family; the
# transposed version gives the time-reversal family.

# %%
show("+---", "plain")
show("+---", "transpose")

# %% [markdown]
# With complex conjugation instead of transposition the combined matrices
# appear directly: g1 g3 for time reversal and g2 for charge conjugation.

# %%
show("+---", "conjugate")
show("----", "conjugate")
show("++++", "plain")
