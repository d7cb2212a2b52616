# %% [markdown]
# # Presentations, dimensions and induced maps

# %%
from equichar.presentations import graded_dimension, group_id, restriction
from equichar.maps import induced_map, verify_closed_form
from equichar.cli import main

# %% [markdown]
# The presentation of the rank 2 unitary group, as the command line prints it.

# %%
main(["presentation", "--family", "u", "--rank", "2"])

# %% [markdown]
# Graded dimensions are counted twice, once from the presentation and once
# from an independent oracle; a disagreement raises.

# %%
for fam, n in [("U", 2), ("Sp", 2), ("SO", 4), ("O", 3)]:
    g = group_id(fam, n)
    print(g.label(), [graded_dimension(g, m) for m in range(6)])

# %% [markdown]
# Restriction to the underlying non-equivariant classes.

# %%
print(restriction(group_id("U", 2)).checks)

# %% [markdown]
# The tensor product with a line bundle, computed by substituting on the
# torus and decomposing the result.

# %%
res = induced_map("TensorLine", 1)
print(res)

# %% [markdown]
# Closed forms agree for the direct sum maps.  The forgetful map from
# symplectic to unitary doubles u; see the decisions ledger.

# %%
print(verify_closed_form("OplusOne", 2)["ok"])
for row in verify_closed_form("ForgetSpToU", 1)["rows"]:
    print(row["generator"], row["computed"], "expected", row["expected"], row["ok"])
