# # Composing P, T and Q
#
# Each discrete operator is a matrix, an antilinear flag and a sign on each
# argument (t, x, c). Composites are built letter by letter, the rightmost
# acting first.

# %%
from diracsym import compose, make_C, make_P, make_Q, make_T, operator
from diracsym.discrete import TABLE_EXPECTED, apply, commutator_deviation, random_test_function
import random

for op in (make_P(), make_T(), make_C(), make_Q()):
    kind = "antilinear" if op.antilinear else "linear"
    print(f"{op.name:<3} {op.label():<10} {kind:<11} {op.arg_signs}")

# %% [markdown]
# When the left factor is antilinear the right factor's matrix is
# conjugated before multiplying: O1 O2 = M1 conj(M2) K.

# %%
print(f"{'row':<4} {'composed':<12} {'expected':<12} match")
for name, (text, anti, signs) in TABLE_EXPECTED.items():
    op = operator(name)
    print(f"{name:<4} {op.label():<12} {text:<12} {op.label() == text and op.antilinear == anti and op.arg_signs == signs}")

# %% [markdown]
# Acting on polynomial spinors keeps everything exact. C commutes with PTQ,
# while P and T anticommute.

# %%
rng = random.Random(0)
f = random_test_function(rng)
print("[C, PTQ] f deviation:", commutator_deviation(make_C(), operator("PTQ"), f))
print("[P, T] f deviation:  ", commutator_deviation(make_P(), make_T(), f))
pt = apply(make_P(), apply(make_T(), f))
tp = apply(make_T(), apply(make_P(), f))
print("TP f == -PT f:", tp == (pt - pt) - pt)

# %% [markdown]
# P squares to -1, C to +1.

# %%
print(apply(make_P(), apply(make_P(), f)) == (f - f) - f)
print(compose(make_C(), make_C()).label())
