from fractions import Fraction

import pytest
import sympy

from kirchhoff_hessian.exact_linalg import ExactMatrix
from kirchhoff_hessian.graphs import (
    complete,
    complete_bipartite,
    from_edge_list,
    tree_count_cofactor,
    trees_containing,
)
from kirchhoff_hessian.kirchhoff import (
    DiffOperator,
    MultilinearPoly,
    apply_operator,
    dump_poly,
    hessian_at,
    hessian_at_ones,
    kirchhoff_polynomial,
    parse_poly,
)

from conftest import brute_force_trees, random_connected_graph


def as_sympy(p: MultilinearPoly):
    xs = sympy.symbols(f"x0:{p.nvars}")
    expr = 0
    for mono, (mask, c) in zip(p.monomials(), p.terms.items()):
        term = c
        for i in range(p.nvars):
            if mask >> i & 1:
                term *= xs[i]
        expr += term
    return expr, xs


def random_point(rng, n):
    return [Fraction(int(rng.integers(-7, 8)), int(rng.integers(1, 6))) for _ in range(n)]


class TestKirchhoffPolynomial:
    def test_triangle(self):
        F = kirchhoff_polynomial(complete(3))
        assert F.monomials() == [(0, 1), (0, 2), (1, 2)]
        assert set(F.terms.values()) == {1}

    def test_k23(self):
        F = kirchhoff_polynomial(complete_bipartite(2, 3))
        assert len(F.terms) == 12
        assert F.is_homogeneous() and F.degree() == 4

    def test_path(self):
        F = kirchhoff_polynomial(from_edge_list(3, [(0, 1), (1, 2)]))
        assert F.monomials() == [(0, 1)]

    def test_disconnected(self):
        with pytest.raises(ValueError):
            kirchhoff_polynomial(from_edge_list(4, [(0, 1), (2, 3)]))

    def test_random_graphs(self, rng):
        for _ in range(20):
            g = random_connected_graph(rng)
            F = kirchhoff_polynomial(g)
            assert F.evaluate([1] * g.edge_count) == tree_count_cofactor(g)
            assert {frozenset(m) for m in F.monomials()} == set(brute_force_trees(g))
            assert F.degree() == g.vertex_count - 1


class TestOperators:
    F3 = kirchhoff_polynomial(complete(3))

    def test_first_derivative(self):
        got = apply_operator(self.F3, DiffOperator.of((0, 1, 2), 0))
        assert got.monomials() == [(1,), (2,)]

    def test_mixed(self):
        got = apply_operator(self.F3, DiffOperator.of((0, 1, 2), 0, 1))
        assert got.terms == {0: 1}

    def test_square_annihilates(self, rng):
        assert apply_operator(self.F3, DiffOperator.of((0, 1, 2), 0, 0)).is_zero()
        for _ in range(5):
            g = random_connected_graph(rng)
            F = kirchhoff_polynomial(g)
            for e in g.edge_ids:
                assert apply_operator(F, DiffOperator.of(g.edge_ids, e, e)).is_zero()

    def test_universe_mismatch(self):
        with pytest.raises(ValueError):
            apply_operator(self.F3, DiffOperator.of((0, 1, 5), 0))

    def test_vs_sympy(self, rng):
        g = complete_bipartite(2, 3)
        F = kirchhoff_polynomial(g)
        expr, xs = as_sympy(F)
        for _ in range(10):
            sel = sorted({int(x) for x in rng.integers(0, 6, 3)})
            got = apply_operator(F, DiffOperator.of(g.edge_ids, *sel))
            want = sympy.expand(sympy.diff(expr, *[xs[i] for i in sel]))
            assert sympy.expand(as_sympy(got)[0] - want) == 0
            assert got.is_zero() or got.degree() == F.degree() - len(sel)


class TestHessian:
    def test_triangle(self):
        H = hessian_at(kirchhoff_polynomial(complete(3)), [1, 1, 1])
        assert H == ExactMatrix.ones(3) - ExactMatrix.identity(3)

    def test_k4_pattern(self):
        g = complete(4)
        H = hessian_at(kirchhoff_polynomial(g), [1] * 6)
        for i, (_, a, b) in enumerate(g.edges):
            for j, (_, c, d) in enumerate(g.edges):
                shared = len({a, b} & {c, d})
                want = 0 if i == j else (3 if shared == 1 else 4)
                assert H[i, j] == want

    def test_k23_values(self):
        g = complete_bipartite(2, 3)
        H = hessian_at(kirchhoff_polynomial(g), [1] * 6)
        X = set(range(2))
        for i, (_, a, b) in enumerate(g.edges):
            for j, (_, c, d) in enumerate(g.edges):
                if i == j:
                    assert H[i, j] == 0
                    continue
                common = {a, b} & {c, d}
                want = 5 if common and common <= X else 4 if common else 5
                assert H[i, j] == want
        assert H == hessian_at_ones(g)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            hessian_at(kirchhoff_polynomial(complete(3)), [1, 1])

    def test_ones_equals_pair_counts(self, rng):
        for _ in range(15):
            g = random_connected_graph(rng, max_edges=12)
            H = hessian_at(kirchhoff_polynomial(g), [1] * g.edge_count)
            assert H == hessian_at_ones(g)
            trees = brute_force_trees(g)
            ids = g.edge_ids
            for i in range(len(ids)):
                assert H[i, i] == 0
                for j in range(i + 1, len(ids)):
                    want = sum(1 for t in trees if ids[i] in t and ids[j] in t)
                    assert H[i, j] == want
                    if g.is_acyclic([ids[i], ids[j]]):
                        assert trees_containing(g, [ids[i], ids[j]]) == want

    def test_vs_sympy_at_random_points(self, rng):
        for g in (complete(4), complete_bipartite(2, 3)):
            F = kirchhoff_polynomial(g)
            expr, xs = as_sympy(F)
            sym_h = sympy.hessian(expr, xs)
            for _ in range(3):
                pt = random_point(rng, F.nvars)
                H = hessian_at(F, pt)
                assert H.is_symmetric()
                subs = {x: sympy.Rational(v.numerator, v.denominator) for x, v in zip(xs, pt)}
                want = sym_h.subs(subs)
                for i in range(F.nvars):
                    for j in range(F.nvars):
                        assert Fraction(str(want[i, j])) == H[i, j]

    def test_euler_identity(self, rng):
        for _ in range(10):
            g = random_connected_graph(rng)
            F = kirchhoff_polynomial(g)
            pt = random_point(rng, F.nvars)
            lhs = sum(pt[i] * F.derivative(i).evaluate(pt) for i in range(F.nvars))
            assert lhs == F.degree() * F.evaluate(pt)


def test_dump_round_trip():
    g = complete_bipartite(2, 2)
    F = kirchhoff_polynomial(g)
    text = dump_poly(F)
    assert text.splitlines()[0] == "1: 0 1 2"
    assert parse_poly(text, g.edge_ids) == F
