"""Shared oracles for the test suite.

The helpers here deliberately avoid the package's own algorithms: spanning
trees are found by scanning every (n-1)-subset of edges, and exact matrix
invariants come from sympy.
"""

from itertools import combinations

import numpy as np
import pytest
import sympy

from kirchhoff_hessian.graphs import MultiGraph, from_edge_list


def brute_force_trees(g: MultiGraph) -> list[frozenset]:
    """Every (n-1)-edge subset that is acyclic (hence a spanning tree)."""
    n = g.vertex_count
    out = []
    for subset in combinations(g.edges, n - 1):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        ok = True
        for _, u, v in subset:
            ru, rv = find(u), find(v)
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
        if ok:
            out.append(frozenset(e[0] for e in subset))
    return out


def sympy_matrix(m):
    return sympy.Matrix([[sympy.Rational(str(x)) for x in row] for row in m])


def sympy_charpoly_coeffs(m) -> list:
    """Coefficients of det(tI - m), lowest degree first, as Python ints/Fractions."""
    from fractions import Fraction

    t = sympy.Symbol("t")
    p = sympy_matrix(m).charpoly(t).all_coeffs()[::-1]
    out = []
    for c in p:
        c = sympy.Rational(c)
        out.append(int(c) if c.q == 1 else Fraction(int(c.p), int(c.q)))
    while out and out[-1] == 0:
        out.pop()
    return out


def random_connected_graph(rng: np.random.Generator, max_vertices=7, max_edges=16) -> MultiGraph:
    """Random spanning tree plus extra (possibly parallel) edges."""
    n = int(rng.integers(2, max_vertices + 1))
    pairs = []
    perm = rng.permutation(n)
    for i in range(1, n):
        j = int(rng.integers(0, i))
        pairs.append((int(perm[i]), int(perm[j])))
    extra = int(rng.integers(0, max_edges - (n - 1) + 1))
    for _ in range(extra):
        u, v = rng.choice(n, size=2, replace=False)
        pairs.append((int(u), int(v)))
    return from_edge_list(n, pairs)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


# pass/fail lines from test_acceptance.py, echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
