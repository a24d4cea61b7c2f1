# %% [markdown]
# # Strong Lefschetz checks
#
# The algebra K[x]/Ann(F) has a squarefree monomial basis in each degree
# because x_i^2 kills a multilinear F. A linear form L is strong Lefschetz
# when every k-th Hessian with k <= s/2 is nonsingular at L.

# %%
from kirchhoff_hessian.graphs import complete, complete_bipartite
from kirchhoff_hessian.kirchhoff import kirchhoff_polynomial
from kirchhoff_hessian.lefschetz import hilbert_and_bases, slp_check

# %%
model = hilbert_and_bases(kirchhoff_polynomial(complete(4)))
print(model.hilbert)
print(model.basis_variables(1))

# %%
for name, g in [("K3", complete(3)), ("K4", complete(4)), ("K5", complete(5))]:
    rep = slp_check(g, graph_name=name)
    print(name, rep.hilbert, [r.det for r in rep.per_k], rep.verdict)

# %%
for m, n in [(1, 2), (1, 3), (2, 2), (1, 4), (2, 3)]:
    rep = slp_check(complete_bipartite(m, n))
    print((m, n), rep.hilbert, rep.verdict)

# %%
# the zero form is never Lefschetz
print(slp_check(complete(3), [0, 0, 0]).to_json())
