# %% [markdown]
# # Block circulant reductions
#
# A matrix made of circulant blocks splits along the Fourier vectors: for
# each frequency k the l x l matrix of block eigenvalues carries part of the
# spectrum. The Hessian of K_n has this shape once edges are grouped into
# rotation orbits.

# %%
import numpy as np

from kirchhoff_hessian import block_spectra as bs
from kirchhoff_hessian.exact_linalg import char_poly
from kirchhoff_hessian.graphs import complete
from kirchhoff_hessian.kirchhoff import hessian_at_ones

# %%
rng = np.random.default_rng(7)
spec = bs.random_cyclic_spec(rng)
print(spec.l, spec.n)
print("identity error:", bs.cyclic_identity_error(spec))

# %% [markdown]
# Even n needs one half-size orbit (the diameters), which gives the mixed
# form. Its odd frequencies lose the last row and column.

# %%
mixed = bs.random_mixed_spec(rng)
print("mixed identity error:", bs.mixed_identity_error(mixed))

# %%
for n in (5, 6):
    ob = bs.orbit_blocks_complete(n)
    H = hessian_at_ones(complete(n))
    same = ob.spec.assemble().scale(ob.scale) == H.permute(ob.permutation())
    print(n, type(ob.spec).__name__, ob.orbit_sizes, same, bs.orbit_rank_profile(n))

# %% [markdown]
# ## Structured block matrices
#
# Blocks a_ij J plus lambda_i I on the diagonal reduce to diag(d) A + diag(lambda).

# %%
s = bs.StructuredMSpec([[0, -1], [-1, 0]], [3, 2], [2, 3])
M = bs.structured_m_assemble(s)
print(M.to_numpy())
print(bs.structured_m_spectrum(s).as_dict())
print(char_poly(M).coefficients)
