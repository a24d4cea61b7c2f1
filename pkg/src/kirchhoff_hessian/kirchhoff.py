"""Kirchhoff polynomials and graph Hessians.

A :class:`MultilinearPoly` stores squarefree monomials as bitmasks over an
ordered variable universe (the edge ids of a graph).  Bit ``i`` of a mask
refers to ``universe[i]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .exact_linalg import ExactMatrix, _norm
from .graphs import MultiGraph, enumerate_spanning_trees, trees_containing

__all__ = [
    "MultilinearPoly",
    "DiffOperator",
    "kirchhoff_polynomial",
    "apply_operator",
    "hessian_at",
    "hessian_at_ones",
    "dump_poly",
    "parse_poly",
]


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


@dataclass(frozen=True)
class MultilinearPoly:
    universe: tuple[int, ...]
    terms: Mapping[int, int]

    def __init__(self, universe: Sequence[int], terms: Mapping[int, int] | Iterable = ()):
        universe = tuple(universe)
        if len(set(universe)) != len(universe):
            raise ValueError("variable universe has repeated ids")
        items = terms.items() if isinstance(terms, Mapping) else terms
        full = (1 << len(universe)) - 1
        clean: dict[int, int] = {}
        for mask, c in items:
            if mask & ~full:
                raise ValueError(f"monomial mask {mask:#b} outside the universe")
            c = _norm(c)
            if c:
                clean[mask] = clean.get(mask, 0) + c
                if not clean[mask]:
                    del clean[mask]
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @classmethod
    def from_monomials(cls, universe: Sequence[int], monomials: Iterable[Iterable[int]], coeff=1):
        """Build from monomials given as collections of variable ids."""
        pos = {v: i for i, v in enumerate(universe)}
        terms: dict[int, int] = {}
        for mono in monomials:
            mask = 0
            for v in mono:
                mask |= 1 << pos[v]
            terms[mask] = terms.get(mask, 0) + coeff
        return cls(universe, terms)

    @property
    def nvars(self) -> int:
        return len(self.universe)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(bin(m).count("1") for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({bin(m).count("1") for m in self.terms}) <= 1

    def coefficient(self, mask: int) -> int:
        return self.terms.get(mask, 0)

    def evaluate(self, point: Sequence):
        if len(point) != self.nvars:
            raise ValueError(f"point has length {len(point)}, expected {self.nvars}")
        total = 0
        for mask, c in self.terms.items():
            v = c
            for i in _bits(mask):
                v *= point[i]
                if not v:
                    break
            total += v
        return _norm(Fraction(total)) if isinstance(total, Fraction) else total

    def derivative(self, var_index: int) -> "MultilinearPoly":
        bit = 1 << var_index
        return MultilinearPoly(
            self.universe, {m ^ bit: c for m, c in self.terms.items() if m & bit}
        )

    def __add__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        if other.universe != self.universe:
            raise ValueError("variable universes differ")
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return MultilinearPoly(self.universe, terms)

    def scale(self, c) -> "MultilinearPoly":
        return MultilinearPoly(self.universe, {m: c * v for m, v in self.terms.items()})

    def monomials(self) -> list[tuple[int, ...]]:
        """Terms as tuples of variable ids, in bitset order."""
        return [tuple(self.universe[i] for i in _bits(m)) for m in self.terms]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.terms.items():
            mono = "*".join(f"x{self.universe[i]}" for i in _bits(m))
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)


@dataclass(frozen=True)
class DiffOperator:
    """Monomial differential operator, one exponent per universe variable."""

    universe: tuple[int, ...]
    exponents: tuple[int, ...]

    def __post_init__(self):
        if len(self.universe) != len(self.exponents):
            raise ValueError("one exponent per variable required")
        if any(e < 0 for e in self.exponents):
            raise ValueError("exponents must be non-negative")

    @classmethod
    def of(cls, universe: Sequence[int], *variables: int) -> "DiffOperator":
        """``d/dx_a d/dx_b ...`` for variable ids (repeats raise the exponent)."""
        pos = {v: i for i, v in enumerate(universe)}
        exps = [0] * len(universe)
        for v in variables:
            exps[pos[v]] += 1
        return cls(tuple(universe), tuple(exps))

    @classmethod
    def from_mask(cls, universe: Sequence[int], mask: int) -> "DiffOperator":
        return cls(tuple(universe), tuple((mask >> i) & 1 for i in range(len(universe))))

    @property
    def order(self) -> int:
        return sum(self.exponents)

    def squarefree_mask(self) -> int | None:
        """Bitmask of the support, or ``None`` when some exponent is >= 2."""
        mask = 0
        for i, e in enumerate(self.exponents):
            if e >= 2:
                return None
            if e:
                mask |= 1 << i
        return mask


def kirchhoff_polynomial(g: MultiGraph, cap: int | None = None) -> MultilinearPoly:
    """Sum over spanning trees T of the product of x_e for e in T."""
    trees = enumerate_spanning_trees(g, cap)
    return MultilinearPoly.from_monomials(g.edge_ids, trees)


def apply_operator(p: MultilinearPoly, op: DiffOperator) -> MultilinearPoly:
    if tuple(op.universe) != p.universe:
        raise ValueError("operator and polynomial live over different variables")
    mask = op.squarefree_mask()
    if mask is None:
        return MultilinearPoly(p.universe)
    return MultilinearPoly(p.universe, {m ^ mask: c for m, c in p.terms.items() if m & mask == mask})


def hessian_at(p: MultilinearPoly, point: Sequence) -> ExactMatrix:
    """Matrix of second partials of ``p`` evaluated at ``point``."""
    N = p.nvars
    if len(point) != N:
        raise ValueError(f"point has length {len(point)}, expected {N}")
    point = [_norm(x) for x in point]
    H = [[0] * N for _ in range(N)]
    for mask, c in p.terms.items():
        vars_ = _bits(mask)
        if len(vars_) < 2:
            continue
        for a, b in combinations(range(len(vars_)), 2):
            v = c
            for t, idx in enumerate(vars_):
                if t != a and t != b:
                    v *= point[idx]
                    if not v:
                        break
            if v:
                i, j = vars_[a], vars_[b]
                H[i][j] += v
                H[j][i] += v
    return ExactMatrix(H)


def hessian_at_ones(g: MultiGraph) -> ExactMatrix:
    """The all-ones Hessian of the Kirchhoff polynomial, built by contraction.

    Entry ``(i, j)`` counts spanning trees through edges ``i`` and ``j``; it
    is computed as a Laplacian cofactor of ``g / {i, j}`` so no tree
    enumeration is needed.  Parallel edge pairs lie in no tree and give 0.
    """
    ids = g.edge_ids
    N = len(ids)
    H = [[0] * N for _ in range(N)]
    ends = [(u, v) for _, u, v in g.edges]
    for i, j in combinations(range(N), 2):
        if ends[i] == ends[j]:
            continue
        H[i][j] = H[j][i] = trees_containing(g, (ids[i], ids[j]))
    return ExactMatrix(H)


def dump_poly(p: MultilinearPoly) -> str:
    """One term per line, ``coeff: e_i1 e_i2 ...``, sorted by bitset."""
    lines = []
    for mask, c in p.terms.items():
        ids = " ".join(str(p.universe[i]) for i in _bits(mask))
        lines.append(f"{c}: {ids}".rstrip())
    return "\n".join(lines) + ("\n" if lines else "")


def parse_poly(text: str, universe: Sequence[int]) -> MultilinearPoly:
    monos = {}
    pos = {v: i for i, v in enumerate(universe)}
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln:
            continue
        coeff, _, rest = ln.partition(":")
        mask = 0
        for tok in rest.split():
            mask |= 1 << pos[int(tok)]
        monos[mask] = monos.get(mask, 0) + int(coeff)
    return MultilinearPoly(universe, monos)
