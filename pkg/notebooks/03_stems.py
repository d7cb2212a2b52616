# %% [markdown]
# # Rational C2 stable stems
#
# The top level is a module over the Burnside ring with classes a_s, u_2s
# and their divided partners; the bottom level is Laurent in u_s.

# %%
from equichar.stems import X, bottom, frobenius, parse_stem, res, solve_circle_b, stem_mul, table_consistency, top, tr

# %%
print(stem_mul(parse_stem("u_2s"), parse_stem("x/u_2s^2")))
print(res(X), "|", tr(bottom(2)))

# %% [markdown]
# Table checks: commutativity, associativity and multiplicativity of restriction.

# %%
print(table_consistency(3))
print("Frobenius reciprocity:", frobenius(100, seed=0))

# %% [markdown]
# Comparing with the circle group fixes the unknown class b.

# %%
rep = solve_circle_b()
print(rep["b"], "unique:", rep["unique"])
