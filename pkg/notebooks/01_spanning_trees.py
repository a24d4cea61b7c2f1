# %% [markdown]
# # Counting spanning trees
#
# The Laplacian cofactor, explicit enumeration and contraction all count
# spanning trees. Here they are compared on a few small graphs.

# %%
from kirchhoff_hessian.graphs import (
    Forest,
    complete,
    complete_bipartite,
    enumerate_spanning_trees,
    from_edge_list,
    laplacian,
    moon_count,
    tree_count_cofactor,
    trees_containing,
)

# %%
g = complete_bipartite(2, 3)
print(laplacian(g).to_numpy())
print("cofactor:", tree_count_cofactor(g))
print("enumerated:", len(enumerate_spanning_trees(g)))

# %% [markdown]
# Edge ids of K_{2,3}: vertex x on the small side and y on the large side
# give id x*3 + y. Trees through a pair of edges are counted by contracting
# both and taking a cofactor of what is left.

# %%
for pair in [(0, 1), (0, 3), (0, 4)]:
    print(pair, [g.endpoints(e) for e in pair], trees_containing(g, pair))

# %% [markdown]
# In K_n the count of trees through a forest only depends on its component
# sizes: n^(k-2) times their product, with k components.

# %%
k5 = complete(5)
f = Forest(k5, {0, 7})
print(f.component_sizes(), moon_count(5, f), trees_containing(k5, {0, 7}))

# %%
# parallel edges are allowed
theta = from_edge_list(2, [(0, 1), (0, 1), (0, 1)])
print(tree_count_cofactor(theta), enumerate_spanning_trees(theta))
