"""Multigraphs, contraction and spanning-tree counting.

Vertices are ``0 .. vertex_count - 1``.  Every edge carries a stable integer
id; ids survive contraction so that edge variables of the Kirchhoff
polynomial keep their meaning after a minor is taken.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import prod
from pathlib import Path
from typing import Iterable, Sequence

from .exact_linalg import ExactMatrix, determinant

__all__ = [
    "DEFAULT_EDGE_CAP",
    "GraphError",
    "MultiGraph",
    "Forest",
    "complete",
    "complete_bipartite",
    "from_edge_list",
    "build_graph",
    "parse_edge_list",
    "format_edge_list",
    "contract",
    "laplacian",
    "tree_count_cofactor",
    "enumerate_spanning_trees",
    "trees_containing",
    "moon_count",
    "edge_cap",
]

DEFAULT_EDGE_CAP = 24


class GraphError(ValueError):
    pass


def edge_cap() -> int:
    """Enumeration cap, overridable through ``KIRCHHOFF_EDGE_CAP``."""
    raw = os.environ.get("KIRCHHOFF_EDGE_CAP")
    if raw is None:
        return DEFAULT_EDGE_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise GraphError(f"KIRCHHOFF_EDGE_CAP must be an integer, got {raw!r}") from None
    if cap < 0:
        raise GraphError("KIRCHHOFF_EDGE_CAP must be non-negative")
    return cap


class _DSU:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # smaller label becomes the root so class representatives are minima
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


@dataclass(frozen=True)
class MultiGraph:
    """Undirected loopless multigraph with stable edge ids.

    ``edges`` is a tuple of ``(edge_id, u, v)`` with ``u < v``, kept in the
    order the edges were created.  Matrices indexed by edges use this order.
    """

    vertex_count: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.vertex_count < 1:
            raise GraphError("a graph needs at least one vertex")
        seen = set()
        norm = []
        for eid, u, v in self.edges:
            if eid in seen:
                raise GraphError(f"duplicate edge id {eid}")
            seen.add(eid)
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise GraphError(f"edge {eid} endpoint out of range")
            if u == v:
                raise GraphError(f"self-loop at vertex {u} (edge {eid})")
            norm.append((eid, min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(e[0] for e in self.edges)

    def endpoints(self, edge_id: int) -> tuple[int, int]:
        for eid, u, v in self.edges:
            if eid == edge_id:
                return u, v
        raise GraphError(f"unknown edge id {edge_id}")

    def edge_index(self) -> dict[int, int]:
        """Map edge id to its position in ``edges``."""
        return {e[0]: i for i, e in enumerate(self.edges)}

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for _, u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def is_connected(self) -> bool:
        dsu = _DSU(self.vertex_count)
        comps = self.vertex_count
        for _, u, v in self.edges:
            if dsu.union(u, v):
                comps -= 1
        return comps == 1

    def is_acyclic(self, edge_ids: Iterable[int]) -> bool:
        ends = {e[0]: (e[1], e[2]) for e in self.edges}
        dsu = _DSU(self.vertex_count)
        for eid in edge_ids:
            if eid not in ends:
                raise GraphError(f"unknown edge id {eid}")
            if not dsu.union(*ends[eid]):
                return False
        return True


def complete(n: int) -> MultiGraph:
    """K_n on vertices 0..n-1; edge ids follow lexicographic endpoint order."""
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    pairs = combinations(range(n), 2)
    return MultiGraph(n, tuple((i, u, v) for i, (u, v) in enumerate(pairs)))


def complete_bipartite(m: int, n: int) -> MultiGraph:
    """K_{m,n}: side X is vertices 0..m-1, side Y is m..m+n-1.

    Edge ``x*n + y`` joins the x-th vertex of X with the y-th vertex of Y.
    """
    if m < 1 or n < 1:
        raise GraphError("complete bipartite graph needs m, n >= 1")
    edges = tuple((x * n + y, x, m + y) for x in range(m) for y in range(n))
    return MultiGraph(m + n, edges)


def from_edge_list(vertex_count: int, pairs: Iterable[Sequence[int]]) -> MultiGraph:
    """Graph from ``(u, v)`` pairs; ids follow lexicographic order of the pairs.

    Parallel edges are allowed and keep their relative input order.
    """
    if vertex_count < 1:
        raise GraphError("a graph needs at least one vertex")
    norm = []
    for pos, (u, v) in enumerate(pairs):
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        norm.append((min(u, v), max(u, v), pos))
    norm.sort()
    return MultiGraph(vertex_count, tuple((i, u, v) for i, (u, v, _) in enumerate(norm)))


def parse_edge_list(text: str) -> MultiGraph:
    """Parse the ``vertices N`` / ``u v`` text format."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphError("empty edge-list file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "vertices":
        raise GraphError(f"first line must be 'vertices N', got {lines[0]!r}")
    try:
        n = int(head[1])
        pairs = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise GraphError(f"edge line must be 'u v', got {ln!r}")
            pairs.append((int(parts[0]), int(parts[1])))
    except ValueError as exc:
        raise GraphError(f"malformed edge list: {exc}") from None
    return from_edge_list(n, pairs)


def format_edge_list(g: MultiGraph) -> str:
    out = [f"vertices {g.vertex_count}"]
    out.extend(f"{u} {v}" for _, u, v in g.edges)
    return "\n".join(out) + "\n"


def build_graph(spec) -> MultiGraph:
    """Build a graph from a descriptor.

    Accepted forms: ``"Kn:<n>"``, ``"Kmn:<m>,<n>"``, ``"file:<path>"``, or the
    tuples ``("complete", n)``, ``("complete_bipartite", m, n)`` and
    ``("edge_list", vertex_count, pairs)``.
    """
    if isinstance(spec, MultiGraph):
        return spec
    if isinstance(spec, str):
        kind, sep, arg = spec.partition(":")
        if not sep:
            raise GraphError(f"graph descriptor needs a ':' ({spec!r})")
        try:
            if kind == "Kn":
                return complete(int(arg))
            if kind == "Kmn":
                m, n = (int(x) for x in arg.split(","))
                return complete_bipartite(m, n)
        except ValueError:
            raise GraphError(f"malformed graph descriptor {spec!r}") from None
        if kind == "file":
            return parse_edge_list(Path(arg).read_text())
        raise GraphError(f"unknown graph descriptor kind {kind!r}")
    kind, *args = spec
    if kind == "complete":
        return complete(*args)
    if kind == "complete_bipartite":
        return complete_bipartite(*args)
    if kind == "edge_list":
        return from_edge_list(*args)
    raise GraphError(f"unknown graph descriptor kind {kind!r}")


def contract(g: MultiGraph, edge_ids: Iterable[int]) -> MultiGraph:
    """Contract an acyclic edge set.

    Each merged vertex class is labelled by its smallest original vertex and
    the classes are renumbered in increasing order.  Surviving edges keep
    their ids; edges that would become loops are dropped.
    """
    edge_ids = set(edge_ids)
    ends = {e[0]: (e[1], e[2]) for e in g.edges}
    dsu = _DSU(g.vertex_count)
    for eid in sorted(edge_ids):
        if eid not in ends:
            raise GraphError(f"unknown edge id {eid}")
        if not dsu.union(*ends[eid]):
            raise GraphError(f"edge set {sorted(edge_ids)} contains a cycle")
    if not edge_ids:
        return g
    reps = sorted({dsu.find(v) for v in range(g.vertex_count)})
    label = {r: i for i, r in enumerate(reps)}
    new_edges = []
    for eid, u, v in g.edges:
        if eid in edge_ids:
            continue
        a, b = label[dsu.find(u)], label[dsu.find(v)]
        if a != b:
            new_edges.append((eid, a, b))
    return MultiGraph(len(reps), tuple(new_edges))


def laplacian(g: MultiGraph) -> ExactMatrix:
    n = g.vertex_count
    L = [[0] * n for _ in range(n)]
    for _, u, v in g.edges:
        L[u][u] += 1
        L[v][v] += 1
        L[u][v] -= 1
        L[v][u] -= 1
    return ExactMatrix(L)


def tree_count_cofactor(g: MultiGraph) -> int:
    """Number of spanning trees via the (1,1) cofactor of the Laplacian."""
    L = laplacian(g)
    if g.vertex_count == 1:
        return 1
    c11 = determinant(L.minor_matrix(0, 0))
    c22 = determinant(L.minor_matrix(1, 1))
    assert c11 == c22, "Laplacian cofactors disagree"
    return c11


def enumerate_spanning_trees(g: MultiGraph, cap: int | None = None) -> list[frozenset[int]]:
    """All spanning trees as edge-id sets, by backtracking over edges.

    Edges are decided in graph order (include before exclude); a branch is
    cut as soon as the chosen edges plus the undecided ones can no longer
    connect the graph.
    """
    cap = edge_cap() if cap is None else cap
    if g.edge_count > cap:
        raise GraphError(f"{g.edge_count} edges exceeds the enumeration cap {cap}")
    if not g.is_connected():
        raise GraphError("graph is disconnected")
    n = g.vertex_count
    need = n - 1
    edges = g.edges
    E = len(edges)
    out: list[frozenset[int]] = []

    def connectable(parent: list[int], start: int) -> bool:
        dsu = _DSU(n)
        dsu.parent = list(parent)
        comps = len({dsu.find(v) for v in range(n)})
        for _, u, v in edges[start:]:
            if dsu.union(u, v):
                comps -= 1
                if comps == 1:
                    return True
        return comps == 1

    def walk(i: int, parent: list[int], chosen: list[int]):
        if len(chosen) == need:
            out.append(frozenset(chosen))
            return
        if E - i < need - len(chosen):
            return
        eid, u, v = edges[i]
        dsu = _DSU(n)
        dsu.parent = list(parent)
        if dsu.union(u, v):
            chosen.append(eid)
            walk(i + 1, dsu.parent, chosen)
            chosen.pop()
        if connectable(parent, i + 1):
            walk(i + 1, parent, chosen)

    walk(0, list(range(n)), [])
    return out


def trees_containing(g: MultiGraph, edge_ids: Iterable[int]) -> int:
    """Spanning trees of ``g`` that contain every edge in the (acyclic) set."""
    return tree_count_cofactor(contract(g, edge_ids))


@dataclass(frozen=True)
class Forest:
    """Acyclic edge subset of a host graph."""

    host: MultiGraph
    edge_ids: frozenset[int]

    def __init__(self, host: MultiGraph, edge_ids: Iterable[int]):
        ids = frozenset(edge_ids)
        if not host.is_acyclic(sorted(ids)):
            raise GraphError("edge set is not a forest")
        object.__setattr__(self, "host", host)
        object.__setattr__(self, "edge_ids", ids)

    def components(self) -> list[list[int]]:
        """Vertex sets of the components, isolated vertices included."""
        dsu = _DSU(self.host.vertex_count)
        for eid in self.edge_ids:
            dsu.union(*self.host.endpoints(eid))
        groups: dict[int, list[int]] = {}
        for v in range(self.host.vertex_count):
            groups.setdefault(dsu.find(v), []).append(v)
        return sorted(groups.values())

    def component_sizes(self) -> list[int]:
        return [len(c) for c in self.components()]


def moon_count(n: int, f: Forest) -> Fraction:
    """Trees on ``n`` labelled vertices containing the forest ``f``: n^(k-2) * prod(j_i)."""
    host = f.host
    if host.vertex_count != n:
        raise GraphError(f"forest host has {host.vertex_count} vertices, expected {n}")
    pairs = {(u, v) for _, u, v in host.edges}
    if len(pairs) != host.edge_count:
        raise GraphError("forest host has parallel edges; not a subgraph of K_n")
    sizes = f.component_sizes()
    k = len(sizes)
    value = Fraction(n) ** (k - 2) * prod(sizes)
    if k == 1:
        assert value == 1
    return value
