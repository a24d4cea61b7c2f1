"""Graded Artinian Gorenstein algebras K[x]/Ann(F) for multilinear F.

Because every x_i^2 annihilates a multilinear F, each graded piece A_k is
spanned by squarefree monomials of degree k, and A_k is isomorphic to the
row space of the catalecticant pairing degree-k against degree-(s-k)
squarefree monomials.  Higher Hessians are assembled over a greedily chosen
monomial basis and evaluated exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exact_linalg import ExactMatrix, _norm, determinant, rank, select_independent_rows
from .graphs import GraphError, MultiGraph
from .kirchhoff import MultilinearPoly, kirchhoff_polynomial

__all__ = [
    "GradedAlgebraModel",
    "SLPReport",
    "HessianRecord",
    "squarefree_monomials",
    "catalecticant",
    "hilbert_and_bases",
    "kth_hessian_at",
    "slp_check",
]


def squarefree_monomials(nvars: int, k: int) -> list[int]:
    """Degree-k squarefree monomials as bitmasks, in lex order of their index sets."""
    return [sum(1 << i for i in c) for c in combinations(range(nvars), k)]


def _check_form(F: MultilinearPoly) -> int:
    if F.is_zero():
        raise ValueError("the zero polynomial does not define a Gorenstein algebra")
    if not F.is_homogeneous():
        raise ValueError("F must be homogeneous")
    return F.degree()


def catalecticant(F: MultilinearPoly, k: int) -> ExactMatrix:
    """Pairing of degree-k against degree-(s-k) squarefree monomials through F.

    Entry (u, v) is the constant (u v)(d) F, i.e. the coefficient of x^(u+v)
    in F when u and v are disjoint and 0 otherwise.
    """
    s = _check_form(F)
    if not 0 <= k <= s:
        raise ValueError(f"degree {k} outside 0..{s}")
    rows = squarefree_monomials(F.nvars, k)
    cols = squarefree_monomials(F.nvars, s - k)
    t = F.terms
    return ExactMatrix([[0 if u & v else t.get(u | v, 0) for v in cols] for u in rows])


@dataclass(frozen=True)
class GradedAlgebraModel:
    """Hilbert function and chosen monomial bases of K[x]/Ann(F)."""

    F: MultilinearPoly
    s: int
    hilbert: tuple[int, ...]
    bases: tuple[tuple[int, ...], ...]
    order: str = "lex"

    def basis_variables(self, k: int) -> list[tuple[int, ...]]:
        """Basis monomials of A_k as tuples of variable ids."""
        u = self.F.universe
        return [tuple(u[i] for i in range(len(u)) if m >> i & 1) for m in self.bases[k]]


def hilbert_and_bases(F: MultilinearPoly, order: str = "lex") -> GradedAlgebraModel:
    """Dimensions of every A_k plus a monomial basis for each.

    ``order="lex"`` keeps the first independent catalecticant rows in lex
    order; ``"revlex"`` scans the rows backwards.  Either choice yields a
    valid basis.
    """
    if order not in ("lex", "revlex"):
        raise ValueError(f"unknown basis order {order!r}")
    s = _check_form(F)
    hilbert, bases = [], []
    for k in range(s + 1):
        cat = catalecticant(F, k)
        rows = squarefree_monomials(F.nvars, k)
        visit = range(cat.rows) if order == "lex" else range(cat.rows - 1, -1, -1)
        keep = select_independent_rows(cat, visit)
        hilbert.append(len(keep))
        bases.append(tuple(rows[i] for i in keep))
    assert hilbert[0] == hilbert[s] == 1
    assert all(hilbert[k] == hilbert[s - k] for k in range(s + 1)), "Hilbert function not symmetric"
    return GradedAlgebraModel(F, s, tuple(hilbert), tuple(bases), order)


def _eval_product(F: MultilinearPoly, u: int, v: int, point: Sequence):
    """(u v)(d) F evaluated at ``point``; zero when u and v share a variable."""
    if u & v:
        return 0
    mask = u | v
    total = 0
    for m, c in F.terms.items():
        if m & mask != mask:
            continue
        val = c
        rest = m ^ mask
        i = 0
        while rest and val:
            if rest & 1:
                val *= point[i]
            rest >>= 1
            i += 1
        total += val
    return total


def kth_hessian_at(model: GradedAlgebraModel, k: int, point: Sequence) -> ExactMatrix:
    """Matrix (e_i(d) e_j(d) F)(point) over the chosen basis of A_k."""
    if not 0 <= k <= model.s // 2:
        raise ValueError(f"k={k} outside 0..{model.s // 2}")
    if len(point) != model.F.nvars:
        raise ValueError(f"point has length {len(point)}, expected {model.F.nvars}")
    point = [_norm(x) for x in point]
    basis = model.bases[k]
    return ExactMatrix([[_eval_product(model.F, u, v, point) for v in basis] for u in basis])


@dataclass(frozen=True)
class HessianRecord:
    k: int
    dim: int
    det: Fraction | int

    @property
    def nonzero(self) -> bool:
        return self.det != 0

    def to_dict(self) -> dict:
        d = Fraction(self.det)
        return {
            "k": self.k,
            "dim": self.dim,
            "det_numerator": str(d.numerator),
            "det_denominator": str(d.denominator),
            "nonzero": self.nonzero,
        }


@dataclass(frozen=True)
class SLPReport:
    graph: str
    s: int
    hilbert: tuple[int, ...]
    L: tuple
    per_k: tuple[HessianRecord, ...]
    notes: tuple[str, ...] = field(default=())

    @property
    def verdict(self) -> bool:
        return all(r.nonzero for r in self.per_k)

    def to_dict(self) -> dict:
        return {
            "graph": self.graph,
            "s": self.s,
            "hilbert": list(self.hilbert),
            "L": [str(a) for a in self.L],
            "per_k": [r.to_dict() for r in self.per_k],
            "verdict": self.verdict,
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def slp_check(
    g: MultiGraph,
    L_coefficients: Sequence | None = None,
    *,
    graph_name: str = "",
    order: str = "lex",
) -> SLPReport:
    """Test whether sum a_i x_i is a strong Lefschetz element of A_{M(g)}.

    Every k-th Hessian for k <= s/2 is evaluated at the coefficient vector
    and its determinant computed exactly; the element is strong Lefschetz
    iff none of them vanishes.
    """
    if not g.is_connected():
        raise GraphError("graph is disconnected")
    N = g.edge_count
    L = tuple(_norm(a) for a in (L_coefficients if L_coefficients is not None else [1] * N))
    if len(L) != N:
        raise ValueError(f"{len(L)} Lefschetz coefficients for {N} variables")
    F = kirchhoff_polynomial(g)
    model = hilbert_and_bases(F, order)
    records = []
    for k in range(model.s // 2 + 1):
        H = kth_hessian_at(model, k, L)
        records.append(HessianRecord(k, H.rows, determinant(H)))
    notes = []
    if model.s >= 1 and len(model.bases[1]) != N:
        notes.append("degree-1 basis is a proper subset of the variables")
    if model.s % 2 == 0:
        notes.append(
            f"k={model.s // 2} is the middle degree: the map is multiplication by L^0 (identity)"
        )
    return SLPReport(graph_name or f"edges={N}", model.s, model.hilbert, L, tuple(records), tuple(notes))


def catalecticant_rank(F: MultilinearPoly, k: int) -> int:
    return rank(catalecticant(F, k))
