# %% [markdown]
# # Decomposing invariant torus polynomials
#
# A class on the maximal torus that is invariant under the signed Weyl group
# can be written in the elementary classes e_k and the gamma classes
# g_{s,k}.  This walk-through runs the decomposition on a few inputs and
# checks each answer by expanding it again.

# %%
from equichar import decompose, expand, parse_polynomial
from equichar.verify import random_invariant
import random

# %%
p = parse_polynomial("u1 + u2", 2) * parse_polynomial("w1*u2 + w2*u1", 2)
gp = decompose(p)
print(gp)
assert expand(gp) == p

# %% [markdown]
# Power sums come out in the usual Newton form.

# %%
print(decompose(parse_polynomial("w1^3 + w2^3 + w3^3", 3)))

# %% [markdown]
# Random invariants of rank 3 round-trip exactly.

# %%
rng = random.Random(1)
for _ in range(5):
    q = random_invariant(rng, 3, max_degree=4)
    assert expand(decompose(q)) == q
print("round trip ok")

# %% [markdown]
# ## Product relations
#
# Products g_{s,i} g_{t,j} rewrite linearly in the generators.  Rank 2:

# %%
from equichar.relations import relation_set

for entry in relation_set(2):
    print(entry)
