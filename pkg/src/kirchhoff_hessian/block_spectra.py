"""Block matrices with circulant structure and the closed-form Hessian spectra.

Three families are handled:

* ``CyclicBlockSpec``: an l x l grid of n x n circulant blocks.  Its
  spectrum splits into the spectra of the l x l matrices obtained by
  replacing each block with its eigenvalue on the Fourier vector z_{n,k}.
* ``MixedBlockSpec``: (l-1) x (l-1) circulant blocks of size 2n bordered by
  a last block row/column of half size n whose off-diagonal blocks repeat
  an n x n circulant twice.
* ``StructuredMSpec``: blocks a_ij J + [i = j] lambda_i I of arbitrary sizes.

Fourier reductions use double-precision complex arithmetic and are only
ever compared against exact integer characteristic polynomials.  Every
headline spectrum or determinant is checked exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from .exact_linalg import (
    ExactMatrix,
    IntPolynomial,
    Spectrum,
    _norm,
    char_poly,
    rational_roots,
)
from .graphs import complete

__all__ = [
    "RTOL",
    "ATOL",
    "RootVector",
    "root_vector",
    "circulant",
    "cyclic_eigenvalue",
    "CyclicBlockSpec",
    "MixedBlockSpec",
    "StructuredMSpec",
    "reduce_cyclic_blocks",
    "reduce_mixed_blocks",
    "structured_m_assemble",
    "structured_m_spectrum",
    "structured_m_identity_holds",
    "complex_char_poly",
    "coefficient_error",
    "cyclic_identity_error",
    "mixed_identity_error",
    "OrbitBlocks",
    "orbit_blocks_complete",
    "numeric_rank",
    "orbit_rank_profile",
    "KnClosedForm",
    "KmnClosedForm",
    "closed_form_Kn",
    "closed_form_Kmn",
    "random_cyclic_spec",
    "random_mixed_spec",
    "random_structured_spec",
]

RTOL = 1e-8
ATOL = 1e-10


@dataclass(frozen=True)
class RootVector:
    """z_{n,k} = (1, w^k, w^{2k}, ..., w^{(n-1)k}) with w = exp(2 pi i / n)."""

    n: int
    k: int

    @property
    def entries(self) -> np.ndarray:
        return root_vector(self.n, self.k)


def root_vector(n: int, k: int) -> np.ndarray:
    # reduce the exponent mod n before scaling to keep the angles small
    return np.exp(2j * np.pi * ((np.arange(n) * k) % n) / n)


def circulant(first_row: Sequence) -> ExactMatrix:
    """Row r is the first row cyclically shifted right by r."""
    n = len(first_row)
    return ExactMatrix([[first_row[(c - r) % n] for c in range(n)] for r in range(n)])


def _is_circulant(rows: Sequence[Sequence]) -> bool:
    n = len(rows)
    return all(rows[r][c] == rows[0][(c - r) % n] for r in range(n) for c in range(n))


def cyclic_eigenvalue(first_row: Sequence, n: int, k: int) -> complex:
    """Eigenvalue of the circulant with this first row on z_{n,k}."""
    if len(first_row) != n:
        raise ValueError(f"first row has length {len(first_row)}, expected {n}")
    if not 0 <= k < n:
        raise ValueError(f"index k={k} outside 0..{n - 1}")
    row = np.array([float(x) for x in first_row])
    return complex(row @ root_vector(n, k))


def _dense_block(m: ExactMatrix, r0: int, c0: int, h: int, w: int) -> list[list]:
    return [[m[r0 + i, c0 + j] for j in range(w)] for i in range(h)]


@dataclass(frozen=True)
class CyclicBlockSpec:
    """l x l grid of n x n circulant blocks, each given by its first row."""

    l: int
    n: int
    first_rows: tuple[tuple[tuple, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(tuple(_norm(x) for x in fr) for fr in brow) for brow in self.first_rows)
        if len(rows) != self.l or any(len(b) != self.l for b in rows):
            raise ValueError("first_rows must be an l x l grid")
        if any(len(fr) != self.n for b in rows for fr in b):
            raise ValueError("every first row must have length n")
        object.__setattr__(self, "first_rows", rows)

    @property
    def dim(self) -> int:
        return self.l * self.n

    def assemble(self) -> ExactMatrix:
        return ExactMatrix.block([[circulant(fr) for fr in brow] for brow in self.first_rows])

    @classmethod
    def from_dense(cls, m: ExactMatrix, l: int, n: int) -> "CyclicBlockSpec":
        """Cut ``m`` into n x n blocks, checking that each one is circulant."""
        if m.shape != (l * n, l * n):
            raise ValueError(f"expected a {l * n} square matrix, got {m.shape}")
        grid = []
        for i in range(l):
            brow = []
            for j in range(l):
                blk = _dense_block(m, i * n, j * n, n, n)
                if not _is_circulant(blk):
                    raise ValueError(f"block ({i}, {j}) is not circulant")
                brow.append(tuple(blk[0]))
            grid.append(tuple(brow))
        return cls(l, n, tuple(grid))


@dataclass(frozen=True)
class MixedBlockSpec:
    """Grid with (l-1) x (l-1) circulant blocks of size 2n and a half-size border.

    ``inner[i][j]``  first row (length 2n) of block (i, j), i, j < l-1
    ``x_rows[i]``    first row of X_i; block (i, l-1) is X_i stacked on X_i
    ``y_rows[j]``    first row of Y_j; block (l-1, j) is [Y_j  Y_j]
    ``corner``       first row of the n x n circulant block (l-1, l-1)
    """

    l: int
    n: int
    inner: tuple
    x_rows: tuple
    y_rows: tuple
    corner: tuple

    def __post_init__(self):
        l, n = self.l, self.n
        if l < 1 or n < 1:
            raise ValueError("l and n must be positive")
        inner = tuple(tuple(tuple(_norm(x) for x in fr) for fr in b) for b in self.inner)
        if len(inner) != l - 1 or any(len(b) != l - 1 for b in inner):
            raise ValueError("inner must be an (l-1) x (l-1) grid")
        if any(len(fr) != 2 * n for b in inner for fr in b):
            raise ValueError("inner first rows must have length 2n")
        xs = tuple(tuple(_norm(x) for x in r) for r in self.x_rows)
        ys = tuple(tuple(_norm(x) for x in r) for r in self.y_rows)
        if len(xs) != l - 1 or len(ys) != l - 1 or any(len(r) != n for r in xs + ys):
            raise ValueError("x_rows / y_rows must hold l-1 rows of length n")
        corner = tuple(_norm(x) for x in self.corner)
        if len(corner) != n:
            raise ValueError("corner first row must have length n")
        object.__setattr__(self, "inner", inner)
        object.__setattr__(self, "x_rows", xs)
        object.__setattr__(self, "y_rows", ys)
        object.__setattr__(self, "corner", corner)

    @property
    def dim(self) -> int:
        return (2 * self.l - 1) * self.n

    def assemble(self) -> ExactMatrix:
        l = self.l
        grid = []
        for i in range(l - 1):
            brow = [circulant(fr) for fr in self.inner[i]]
            X = circulant(self.x_rows[i])
            brow.append(ExactMatrix(X.tolist() + X.tolist()))
            grid.append(brow)
        last = []
        for j in range(l - 1):
            Y = circulant(self.y_rows[j])
            last.append(ExactMatrix([list(r) + list(r) for r in Y]))
        last.append(circulant(self.corner))
        grid.append(last)
        return ExactMatrix.block(grid)

    @classmethod
    def from_dense(cls, m: ExactMatrix, l: int, n: int) -> "MixedBlockSpec":
        """Cut ``m`` into the mixed block layout, validating the doubling structure."""
        big = 2 * n
        if m.shape != ((2 * l - 1) * n,) * 2:
            raise ValueError(f"expected a {(2 * l - 1) * n} square matrix, got {m.shape}")
        off = (l - 1) * big
        inner, xs, ys = [], [], []
        for i in range(l - 1):
            brow = []
            for j in range(l - 1):
                blk = _dense_block(m, i * big, j * big, big, big)
                if not _is_circulant(blk):
                    raise ValueError(f"block ({i}, {j}) is not circulant")
                brow.append(tuple(blk[0]))
            inner.append(tuple(brow))
            col = _dense_block(m, i * big, off, big, n)
            if col[:n] != col[n:] or not _is_circulant(col[:n]):
                raise ValueError(f"border block ({i}, {l - 1}) is not a doubled circulant")
            xs.append(tuple(col[0]))
        for j in range(l - 1):
            row = _dense_block(m, off, j * big, n, big)
            left = [r[:n] for r in row]
            if any(r[:n] != r[n:] for r in row) or not _is_circulant(left):
                raise ValueError(f"border block ({l - 1}, {j}) is not a doubled circulant")
            ys.append(tuple(left[0]))
        corner = _dense_block(m, off, off, n, n)
        if not _is_circulant(corner):
            raise ValueError("corner block is not circulant")
        return cls(l, n, tuple(inner), tuple(xs), tuple(ys), tuple(corner[0]))


def reduce_cyclic_blocks(spec: CyclicBlockSpec, k: int) -> np.ndarray:
    """l x l complex matrix of block eigenvalues on z_{n,k}."""
    if not 0 <= k < spec.n:
        raise ValueError(f"index k={k} outside 0..{spec.n - 1}")
    z = root_vector(spec.n, k)
    rows = np.array(
        [[[float(x) for x in fr] for fr in brow] for brow in spec.first_rows], dtype=float
    )
    return rows @ z


def reduce_mixed_blocks(spec: MixedBlockSpec, k: int) -> np.ndarray:
    """l x l complex reduction for index ``0 <= k < 2n``; last column vanishes for odd k."""
    n, l = spec.n, spec.l
    if not 0 <= k < 2 * n:
        raise ValueError(f"index k={k} outside 0..{2 * n - 1}")
    zbig = root_vector(2 * n, k)
    out = np.zeros((l, l), dtype=complex)
    for i in range(l - 1):
        for j in range(l - 1):
            out[i, j] = np.array([float(x) for x in spec.inner[i][j]]) @ zbig
    for j in range(l - 1):
        doubled = [float(x) for x in spec.y_rows[j]] * 2
        out[l - 1, j] = np.array(doubled) @ zbig
    if k % 2 == 0:
        zs = root_vector(n, k // 2)
        for i in range(l - 1):
            out[i, l - 1] = np.array([float(x) for x in spec.x_rows[i]]) @ zs
        out[l - 1, l - 1] = np.array([float(x) for x in spec.corner]) @ zs
    return out


def complex_char_poly(a: np.ndarray) -> np.ndarray:
    """Coefficients of det(tI - a), lowest degree first (Faddeev-LeVerrier)."""
    n = a.shape[0]
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[n] = 1.0
    M = np.zeros_like(a, dtype=complex)
    eye = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        M = a @ M + coeffs[n - k + 1] * eye
        coeffs[n - k] = -np.trace(a @ M) / k
    return coeffs


def _poly_product(polys: Sequence[np.ndarray]) -> np.ndarray:
    out = np.array([1.0 + 0j])
    for p in polys:
        out = np.convolve(out, p)
    return out


def coefficient_error(exact: IntPolynomial, approx: np.ndarray, atol: float = ATOL) -> float:
    """Largest per-coefficient relative error of ``approx`` against ``exact``.

    Nonzero coefficients are compared relatively.  On an exactly-zero
    coefficient, rounding noise scales with the polynomial, so differences up
    to ``atol`` times the largest exact coefficient count as zero and anything
    larger is reported as ``inf``.
    """
    ex = list(exact.coefficients)
    size = max(len(ex), len(approx))
    ex += [0] * (size - len(ex))
    ap = np.zeros(size, dtype=complex)
    ap[: len(approx)] = approx
    floor = atol * max([1.0] + [abs(float(e)) for e in ex])
    worst = 0.0
    for e, a in zip(ex, ap):
        diff = abs(a - float(e))
        if e:
            worst = max(worst, diff / abs(float(e)))
        elif diff > floor:
            worst = float("inf")
    return worst


def cyclic_identity_error(spec: CyclicBlockSpec) -> float:
    """Relative error between chi_C and the product of the reduced char polys."""
    exact = char_poly(spec.assemble())
    approx = _poly_product(
        [complex_char_poly(reduce_cyclic_blocks(spec, k)) for k in range(spec.n)]
    )
    return coefficient_error(exact, approx)


def mixed_identity_error(spec: MixedBlockSpec) -> float:
    """Relative error in chi_D(t) * t^n = prod_k chi_{reduced D_k}(t)."""
    exact = char_poly(spec.assemble()) * IntPolynomial([0] * spec.n + [1])
    factors = []
    for k in range(2 * spec.n):
        red = reduce_mixed_blocks(spec, k)
        if k % 2:
            # last column is identically zero: chi = t * chi(leading block)
            factors.append(np.convolve(complex_char_poly(red[:-1, :-1]), [0.0, 1.0]))
        else:
            factors.append(complex_char_poly(red))
    return coefficient_error(exact, _poly_product(factors))


@dataclass(frozen=True)
class StructuredMSpec:
    """Block matrix with (i, j) block a_ij J plus lambda_i I on the diagonal."""

    A: ExactMatrix
    lambdas: tuple
    d: tuple

    def __init__(self, A, lambdas: Sequence, d: Sequence[int]):
        A = A if isinstance(A, ExactMatrix) else ExactMatrix(A)
        l = A.rows
        if not A.is_square() or len(lambdas) != l or len(d) != l:
            raise ValueError("A must be l x l with l lambdas and l block sizes")
        if any(x < 1 for x in d):
            raise ValueError("block sizes must be positive")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "lambdas", tuple(_norm(x) for x in lambdas))
        object.__setattr__(self, "d", tuple(int(x) for x in d))

    @property
    def l(self) -> int:
        return self.A.rows

    @property
    def delta(self) -> int:
        return sum(self.d)

    def reduced(self) -> ExactMatrix:
        """diag(d) A + diag(lambda)."""
        return ExactMatrix(
            [
                [self.d[i] * self.A[i, j] + (self.lambdas[i] if i == j else 0) for j in range(self.l)]
                for i in range(self.l)
            ]
        )


def structured_m_assemble(spec: StructuredMSpec) -> ExactMatrix:
    owner = [i for i, di in enumerate(spec.d) for _ in range(di)]
    size = spec.delta
    rows = []
    for r in range(size):
        bi = owner[r]
        line = []
        for c in range(size):
            bj = owner[c]
            v = spec.A[bi, bj]
            if r == c:
                v = v + spec.lambdas[bi]
            line.append(v)
        rows.append(line)
    return ExactMatrix(rows)


def structured_m_spectrum(spec: StructuredMSpec) -> Spectrum:
    """Spectrum of the reduced l x l matrix plus each lambda_i with multiplicity d_i - 1.

    Rational eigenvalues of the reduced matrix are found exactly; any part of
    its characteristic polynomial that does not split over Q is carried in
    ``Spectrum.residual``.
    """
    pairs, residual = rational_roots(char_poly(spec.reduced()))
    pairs = list(pairs) + [(lam, di - 1) for lam, di in zip(spec.lambdas, spec.d)]
    return Spectrum(pairs, residual)


def structured_m_identity_holds(spec: StructuredMSpec) -> bool:
    """chi_M = chi_reduced * prod (t - lambda_i)^(d_i - 1), checked exactly."""
    rhs = char_poly(spec.reduced())
    for lam, di in zip(spec.lambdas, spec.d):
        rhs = rhs * IntPolynomial([-lam, 1]) ** (di - 1)
    return char_poly(structured_m_assemble(spec)) == rhs


# complete-graph orbit blocks


def _pair_value(e, f) -> int:
    """0 for equal edges, 3 when they share one vertex, 4 when disjoint."""
    if e == f:
        return 0
    return 3 if set(e) & set(f) else 4


@dataclass(frozen=True)
class OrbitBlocks:
    """Block form of the all-ones K_n Hessian under the rotation i -> i+1 mod n.

    ``spec`` holds the raw pair values (0/3/4); ``scale * spec.assemble()``
    equals the Hessian with rows and columns in ``edge_order`` (edges as
    sorted vertex pairs).
    """

    n: int
    spec: CyclicBlockSpec | MixedBlockSpec
    scale: Fraction
    edge_order: tuple[tuple[int, int], ...]
    orbit_sizes: tuple[int, ...] = field(default=())

    def permutation(self) -> list[int]:
        """Edge ids of ``complete(n)`` listed in orbit order."""
        g = complete(self.n)
        index = {(u, v): eid for eid, u, v in g.edges}
        return [index[e] for e in self.edge_order]


def orbit_blocks_complete(n: int) -> OrbitBlocks:
    if n < 3:
        raise ValueError("orbit construction needs n >= 3")
    reps = range(1, n // 2 + 1)
    orbits = []
    for i in reps:
        orbit = []
        for k in range(n):
            e = tuple(sorted(((0 + k) % n, (i + k) % n)))
            if e in orbit:
                break
            orbit.append(e)
        orbits.append(orbit)
    order = tuple(e for orb in orbits for e in orb)
    assert len(order) == comb(n, 2) == len(set(order))
    raw = ExactMatrix([[_pair_value(e, f) for f in order] for e in order])
    if n % 2:
        spec = CyclicBlockSpec.from_dense(raw, len(orbits), n)
    else:
        spec = MixedBlockSpec.from_dense(raw, len(orbits), n // 2)
    return OrbitBlocks(n, spec, Fraction(n) ** (n - 4), order, tuple(len(o) for o in orbits))


def numeric_rank(a: np.ndarray, rel_tol: float = RTOL) -> int:
    """Singular values at most ``rel_tol * ||a||_2`` count as zero."""
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > rel_tol * s[0]))


def orbit_rank_profile(n: int, rel_tol: float = RTOL) -> list[tuple[int, int]]:
    """Numeric rank of (reduced block + 2I) for each k = 1..n-1 of the K_n orbit form.

    For even n and odd k the reduced matrix has a zero last row and column,
    so only its leading (l-1) x (l-1) block is examined.
    """
    ob = orbit_blocks_complete(n)
    out = []
    for k in range(1, n):
        if isinstance(ob.spec, CyclicBlockSpec):
            red = reduce_cyclic_blocks(ob.spec, k)
        else:
            red = reduce_mixed_blocks(ob.spec, k)
            if k % 2:
                red = red[:-1, :-1]
        shifted = red + 2 * np.eye(red.shape[0])
        out.append((k, numeric_rank(shifted, rel_tol)))
    return out


# closed forms


@dataclass(frozen=True)
class KnClosedForm:
    n: int
    spectrum: Spectrum
    det: Fraction | int

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "spectrum": [[str(v), m] for v, m in self.spectrum.pairs],
            "det": str(self.det),
        }


def closed_form_Kn(n: int) -> KnClosedForm:
    """Eigenvalues and determinant of the all-ones K_n Hessian."""
    if n < 3:
        raise ValueError("closed form needs n >= 3")
    N = comb(n, 2)
    q = Fraction(n)
    spectrum = Spectrum(
        [
            (-2 * q ** (n - 4), N - n),
            (-(q ** (n - 3)), n - 1),
            (2 * (n - 2) * q ** (n - 3), 1),
        ]
    )
    formula = (-1) ** (N - 1) * Fraction(2) ** (N - n + 1) * q ** (n + N * (n - 4)) * (n - 2)
    product = spectrum.product()
    if product != formula:
        raise AssertionError(f"K_{n}: determinant formula {formula} != eigenvalue product {product}")
    return KnClosedForm(n, spectrum, _norm(formula))


@dataclass(frozen=True)
class KmnClosedForm:
    m: int
    n: int
    spectrum: Spectrum
    paper_det: Fraction | int
    product_det: Fraction | int

    @property
    def agrees(self) -> bool:
        return self.paper_det == self.product_det

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "spectrum": [[str(v), k] for v, k in self.spectrum.pairs],
            "paper_det": str(self.paper_det),
            "product_det": str(self.product_det),
            "agrees": self.agrees,
        }


def closed_form_Kmn(m: int, n: int) -> KmnClosedForm:
    """Eigenvalue classes for K_{m,n} and both determinant expressions.

    ``paper_det`` is the published determinant formula, kept verbatim;
    ``product_det`` is the product of the eigenvalues.  They differ in
    general, so no equality is enforced here.
    """
    if m < 1 or n < 1 or m + n < 3:
        raise ValueError("need m, n >= 1 and m + n >= 3")
    M, Nq = Fraction(m), Fraction(n)
    spectrum = Spectrum(
        [
            (-2 * M ** (n - 2) * Nq ** (m - 2), (m - 1) * (n - 1)),
            (-(M ** (n - 2)) * Nq ** (m - 1), n - 1),
            (-(M ** (n - 1)) * Nq ** (m - 2), m - 1),
            (M ** (n - 2) * Nq ** (m - 2) * (m + n - 1) * (m + n - 2), 1),
        ]
    )
    published = (
        (-1) ** (m * n - 1)
        * Fraction(2) ** ((m - 1) * (n - 1))
        * M ** ((m * n - m - 1) * (n - 1))
        * Nq ** ((m * n - n - 1) * (m - 1))
        * (m + n - 1)
        * (m + n - 2)
    )
    return KmnClosedForm(m, n, spectrum, _norm(published), spectrum.product())


# seeded random specs


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_cyclic_spec(seed, max_l: int = 4, max_n: int = 6, bound: int = 3) -> CyclicBlockSpec:
    rng = _rng(seed)
    l = int(rng.integers(1, max_l + 1))
    n = int(rng.integers(1, max_n + 1))
    rows = tuple(
        tuple(tuple(int(x) for x in rng.integers(-bound, bound + 1, n)) for _ in range(l))
        for _ in range(l)
    )
    return CyclicBlockSpec(l, n, rows)


def random_mixed_spec(seed, max_l: int = 4, max_n: int = 3, bound: int = 3) -> MixedBlockSpec:
    rng = _rng(seed)
    l = int(rng.integers(1, max_l + 1))
    n = int(rng.integers(1, max_n + 1))

    def row(k):
        return tuple(int(x) for x in rng.integers(-bound, bound + 1, k))

    inner = tuple(tuple(row(2 * n) for _ in range(l - 1)) for _ in range(l - 1))
    xs = tuple(row(n) for _ in range(l - 1))
    ys = tuple(row(n) for _ in range(l - 1))
    return MixedBlockSpec(l, n, inner, xs, ys, row(n))


def random_structured_spec(seed, max_l: int = 4, max_d: int = 4, bound: int = 5) -> StructuredMSpec:
    rng = _rng(seed)
    l = int(rng.integers(1, max_l + 1))

    def q():
        return Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, 4)))

    A = [[q() for _ in range(l)] for _ in range(l)]
    lambdas = [q() for _ in range(l)]
    d = [int(x) for x in rng.integers(1, max_d + 1, l)]
    return StructuredMSpec(A, lambdas, d)
