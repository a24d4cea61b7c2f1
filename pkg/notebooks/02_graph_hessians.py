# %% [markdown]
# # Hessians of Kirchhoff polynomials
#
# F is the sum over spanning trees of the product of their edge variables.
# At the all-ones point, entry (i, j) of its Hessian counts trees that
# contain both edge i and edge j.

# %%
import numpy as np

from kirchhoff_hessian.block_spectra import closed_form_Kmn, closed_form_Kn
from kirchhoff_hessian.exact_linalg import determinant, verify_spectrum
from kirchhoff_hessian.graphs import complete, complete_bipartite
from kirchhoff_hessian.kirchhoff import dump_poly, hessian_at, hessian_at_ones, kirchhoff_polynomial

# %%
F = kirchhoff_polynomial(complete(4))
print(dump_poly(F))
H = hessian_at(F, [1] * 6)
print(H.to_numpy())
assert H == hessian_at_ones(complete(4))

# %% [markdown]
# ## Complete graphs
#
# Three eigenvalue classes, one positive. The determinant is checked
# exactly against the eigenvalue product.

# %%
for n in range(3, 9):
    H = hessian_at_ones(complete(n))
    cf = closed_form_Kn(n)
    rep = verify_spectrum(H, cf.spectrum)
    print(n, cf.spectrum.as_dict(), rep.inertia, determinant(H) == cf.det)

# %% [markdown]
# ## Complete bipartite graphs
#
# The spectrum is verified exactly. The published determinant expression
# disagrees with the eigenvalue product except at (2, 2).

# %%
for m, n in [(2, 2), (2, 3), (3, 3), (2, 5)]:
    cf = closed_form_Kmn(m, n)
    det = determinant(hessian_at_ones(complete_bipartite(m, n)))
    print((m, n), det, cf.product_det, cf.paper_det, cf.agrees)

# %%
# floating eigenvalues as a sanity check, K_{3,3}
print(np.round(np.linalg.eigvalsh(hessian_at_ones(complete_bipartite(3, 3)).to_numpy()), 6))
