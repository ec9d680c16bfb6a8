# # Gamma matrices, exactly
#
# Everything here is computed over the Gaussian rationals, so an identity
# either holds with deviation 0 or it fails. No tolerances.

# %%
from diracsym import dirac_rep, evaluate, gamma, identity_checks
from diracsym.clifford import basis_table, canonical_product
from diracsym.gammaexpr import canonicalize, format_canonical, parse

rep = dirac_rep()
print("g0 =")
print(rep.gamma[0].format())
print("g5 =")
print(rep.gamma5.format())

# %% [markdown]
# The identity groups: anticommutators against the metric, squares,
# hermiticity, conjugation and transposition of each generator, and the g5
# relations. Each value is the largest exact deviation in its group.

# %%
for name, dev in identity_checks().items():
    print(f"{name:<16} {dev}")

# %% [markdown]
# g5 is built as -i g0 g1 g2 g3. Multiplying the four generators directly
# gives i*g5, which the canonicalizer reports as phase i on the full slot.

# %%
print(canonical_product([0, 1, 2, 3]))
print((gamma(0) @ gamma(1) @ gamma(2) @ gamma(3)).scale(-1j) == gamma(5))

# %% [markdown]
# The expression language reads products, phases and the three star-family
# functions. Canonical output puts the scalar first and the generators in
# ascending order.

# %%
for text in ["g0*g2*g0", "g2*g0*g2", "star(g2)", "dagger(i*g0*g5)", "-i*g0*g1*g2*g3", "g3*g1*g0"]:
    print(f"{text:<18} -> {format_canonical(*canonicalize(parse(text)))}")

# %% [markdown]
# The 16 products of distinct generators span all 4x4 matrices.

# %%
print(", ".join(el.label for el in basis_table()))
print(evaluate("g5*g5").format())
