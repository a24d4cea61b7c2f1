"""Dense linear algebra over the rationals.

Everything here is exact: entries are Python ``int`` or ``fractions.Fraction``
and no floating point is involved.  Matrices in this project are small
(at most a few dozen rows) but their entries can be very large, so the
algorithms favour fraction-free elimination where it is cheap to do so.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from numbers import Rational
from typing import Iterable, Sequence

__all__ = [
    "ExactMatrix",
    "IntPolynomial",
    "Spectrum",
    "SpectrumReport",
    "determinant",
    "rank",
    "char_poly",
    "verify_spectrum",
    "select_independent_rows",
    "rational_roots",
]


def _norm(x):
    """Collapse integral Fractions to int, reject non-rationals."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Rational):
        return _norm(Fraction(x.numerator, x.denominator))
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


class ExactMatrix:
    """Immutable dense matrix with exact rational entries."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable], symmetric: bool = False):
        rows = [tuple(_norm(x) for x in r) for r in data]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        self._data = tuple(rows)
        self.rows = len(rows)
        self.cols = ncols
        if symmetric and not self.is_symmetric():
            raise ValueError("matrix flagged symmetric but is not")

    # construction helpers
    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "ExactMatrix":
        cols = rows if cols is None else cols
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def ones(cls, rows: int, cols: int | None = None) -> "ExactMatrix":
        cols = rows if cols is None else cols
        return cls([[1] * cols for _ in range(rows)])

    @classmethod
    def diag(cls, values: Sequence) -> "ExactMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def block(cls, blocks: Sequence[Sequence["ExactMatrix"]]) -> "ExactMatrix":
        out = []
        for brow in blocks:
            h = brow[0].rows
            for r in range(h):
                line = []
                for b in brow:
                    if b.rows != h:
                        raise ValueError("block heights disagree within a block row")
                    line.extend(b._data[r])
                out.append(line)
        return cls(out)

    # access
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def tolist(self) -> list[list]:
        return [list(r) for r in self._data]

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self._data == other._data

    def __hash__(self):
        return hash(self._data)

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._data)
        return f"ExactMatrix([{body}])"

    # arithmetic
    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_shape(other)
        return ExactMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)]
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_shape(other)
        return ExactMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)]
        )

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix([[-a for a in r] for r in self._data])

    def scale(self, c) -> "ExactMatrix":
        c = _norm(c)
        return ExactMatrix([[c * a for a in r] for r in self._data])

    def __rmul__(self, c) -> "ExactMatrix":
        return self.scale(c)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("inner dimensions disagree")
        cols = list(zip(*other._data))
        return ExactMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self._data])

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(list(zip(*self._data)) if self.rows else [])

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def shift(self, lam) -> "ExactMatrix":
        """Return ``self - lam * I``."""
        self._require_square()
        lam = _norm(lam)
        return ExactMatrix(
            [[a - lam if i == j else a for j, a in enumerate(r)] for i, r in enumerate(self._data)]
        )

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix([[self._data[i][j] for j in cols] for i in rows])

    def minor_matrix(self, i: int, j: int) -> "ExactMatrix":
        """Delete row ``i`` and column ``j``."""
        rows = [r for r in range(self.rows) if r != i]
        cols = [c for c in range(self.cols) if c != j]
        return self.submatrix(rows, cols)

    def permute(self, order: Sequence[int]) -> "ExactMatrix":
        """Simultaneous row/column permutation: new[a][b] = old[order[a]][order[b]]."""
        return self.submatrix(order, order)

    def trace(self):
        self._require_square()
        return _norm(sum(self._data[i][i] for i in range(self.rows)))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self._data[i][j] == self._data[j][i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def is_integral(self) -> bool:
        return all(isinstance(a, int) for r in self._data for a in r)

    def to_numpy(self, dtype=float):
        import numpy as np

        return np.array([[float(a) for a in r] for r in self._data], dtype=dtype).reshape(
            self.rows, self.cols
        )

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def _require_square(self):
        if not self.is_square():
            raise ValueError(f"square matrix required, got {self.rows}x{self.cols}")


def _integer_rows(m: ExactMatrix) -> tuple[list[list[int]], int]:
    """Clear denominators row-wise; return integer rows and the overall scale."""
    rows = []
    total = 1
    for r in m:
        d = 1
        for a in r:
            if isinstance(a, Fraction):
                d = lcm(d, a.denominator)
        total *= d
        rows.append([int(a * d) for a in r])
    return rows, total


def determinant(m: ExactMatrix):
    """Determinant by Bareiss fraction-free elimination."""
    if not m.is_square():
        raise ValueError(f"determinant of non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return 1
    a, scale = _integer_rows(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = akk
    return _norm(Fraction(sign * a[n - 1][n - 1], scale))


def _echelon_rank(a: list[list[int]]) -> int:
    """Fraction-free forward elimination on integer rows; returns the rank."""
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        rowr = a[r]
        for i in range(r + 1, nrows):
            rowi = a[i]
            f = rowi[c]
            for j in range(c + 1, ncols):
                rowi[j] = (rowi[j] * p - f * rowr[j]) // prev
            rowi[c] = 0
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def rank(m: ExactMatrix) -> int:
    """Exact rank over the rationals."""
    if m.rows == 0 or m.cols == 0:
        return 0
    a, _ = _integer_rows(m)
    return _echelon_rank(a)


def select_independent_rows(m: ExactMatrix, order: Sequence[int] | None = None) -> list[int]:
    """Greedily pick rows (visited in ``order``) that are independent of those already kept.

    Returns the kept row indices in visiting order.  The number kept equals
    ``rank(m)``.
    """
    order = range(m.rows) if order is None else order
    # reduced rows keyed by pivot column
    pivots: dict[int, list[Fraction]] = {}
    kept = []
    for idx in order:
        v = [Fraction(x) for x in m.row(idx)]
        for c, prow in pivots.items():
            f = v[c]
            if f:
                for j in range(len(v)):
                    if prow[j]:
                        v[j] -= f * prow[j]
        lead = next((j for j, x in enumerate(v) if x), None)
        if lead is None:
            continue
        inv = 1 / v[lead]
        v = [x * inv for x in v]
        for c, prow in pivots.items():
            f = prow[lead]
            if f:
                for j in range(len(v)):
                    if v[j]:
                        prow[j] -= f * v[j]
        pivots[lead] = v
        kept.append(idx)
    return kept


@dataclass(frozen=True)
class IntPolynomial:
    """Univariate polynomial with exact rational coefficients, lowest degree first.

    The name reflects that the polynomials of interest (characteristic
    polynomials of integer matrices) have integer coefficients; rational
    coefficients are allowed.
    """

    coefficients: tuple

    def __init__(self, coefficients: Iterable = ()):
        c = [_norm(x) for x in coefficients]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coefficients", tuple(c))

    @classmethod
    def from_roots(cls, roots: Iterable) -> "IntPolynomial":
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @classmethod
    def from_spectrum(cls, spectrum: "Spectrum") -> "IntPolynomial":
        p = cls([1])
        for lam, mult in spectrum.pairs:
            p = p * cls([-lam, 1]) ** mult
        if spectrum.residual is not None:
            p = p * spectrum.residual
        return p

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def leading(self):
        return self.coefficients[-1] if self.coefficients else 0

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * t + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coefficients, other.coefficients
        n = max(len(a), len(b))
        return IntPolynomial(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coefficients)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "IntPolynomial":
        if not isinstance(other, IntPolynomial):
            return IntPolynomial(c * other for c in self.coefficients)
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPolynomial":
        out = IntPolynomial([1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(i * c for i, c in enumerate(self.coefficients) if i)

    def divmod(self, other: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = [Fraction(c) for c in self.coefficients]
        d = other.coefficients
        q = [Fraction(0)] * max(len(r) - len(d) + 1, 0)
        lead = Fraction(d[-1])
        for k in range(len(q) - 1, -1, -1):
            f = r[k + len(d) - 1] / lead
            q[k] = f
            if f:
                for j, c in enumerate(d):
                    r[k + j] -= f * c
        return IntPolynomial(q), IntPolynomial(r[: len(d) - 1])

    def monic(self) -> "IntPolynomial":
        lead = Fraction(self.leading)
        return IntPolynomial(Fraction(c) / lead for c in self.coefficients)

    def gcd(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic() if not a.is_zero() else a

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coefficients):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*t^{i}")
        return "IntPolynomial(" + (" + ".join(terms) or "0") + ")"


def char_poly(m: ExactMatrix) -> IntPolynomial:
    """Characteristic polynomial ``det(t I - m)``.

    Reduces to upper Hessenberg form by exact similarity transforms and
    then runs the standard Hessenberg determinant recurrence.
    """
    if not m.is_square():
        raise ValueError(f"characteristic polynomial of non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    h = [[Fraction(x) for x in r] for r in m]

    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if h[i][j] != 0), None)
        if piv is None:
            continue
        if piv != j + 1:
            h[piv], h[j + 1] = h[j + 1], h[piv]
            for r in h:
                r[piv], r[j + 1] = r[j + 1], r[piv]
        p = h[j + 1][j]
        for i in range(j + 2, n):
            f = h[i][j] / p
            if not f:
                continue
            hi, hp = h[i], h[j + 1]
            for c in range(j, n):
                hi[c] -= f * hp[c]
            # inverse operation on columns keeps the transform a similarity
            for r in h:
                r[j + 1] += f * r[i]

    # p_k = char poly of the leading k x k block
    polys = [IntPolynomial([1])]
    for k in range(1, n + 1):
        pk = IntPolynomial([-h[k - 1][k - 1], 1]) * polys[k - 1]
        prod = Fraction(1)
        for i in range(k - 1, 0, -1):
            prod *= h[i][i - 1]
            if not prod:
                break
            pk = pk - polys[i - 1] * (prod * h[i - 1][k - 1])
        polys.append(pk)
    return polys[n]


def rational_roots(p: IntPolynomial) -> tuple[list[tuple], IntPolynomial]:
    """Split off every rational root of ``p``.

    Returns ``(pairs, residual)`` where ``pairs`` lists ``(root, multiplicity)``
    and ``residual`` is the monic cofactor with no rational roots.  Candidate
    roots come from a floating root finder on the square-free part and are
    accepted only after exact evaluation.
    """
    import numpy as np

    if p.is_zero():
        raise ValueError("zero polynomial has no finite root set")
    rest = p.monic()
    pairs: list[tuple] = []
    if rest.degree == 0:
        return pairs, rest
    squarefree = rest.divmod(rest.gcd(rest.derivative()))[0].monic()
    # denominators of rational roots divide the leading coeff of the integer form
    den = 1
    for c in squarefree.coefficients:
        if isinstance(c, Fraction):
            den = lcm(den, c.denominator)
    int_lead = den
    candidates = set()
    if squarefree.degree >= 1:
        coeffs = [float(c) for c in reversed(squarefree.coefficients)]
        for z in np.roots(coeffs):
            if abs(z.imag) > 1e-6 * max(1.0, abs(z)):
                continue
            x = z.real
            for guess in (Fraction(round(x)), Fraction(x).limit_denominator(max(int_lead, 1))):
                candidates.add(guess)
    if squarefree(0) == 0:
        candidates.add(Fraction(0))
    for r in sorted(candidates):
        if squarefree(r) != 0:
            continue
        mult = 0
        lin = IntPolynomial([-r, 1])
        while True:
            q, rem = rest.divmod(lin)
            if not rem.is_zero():
                break
            rest = q
            mult += 1
        if mult:
            pairs.append((_norm(r), mult))
    return pairs, rest.monic()


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalue multiset as ``(value, multiplicity)`` pairs.

    Pairs are merged by value, zero multiplicities dropped, and sorted by
    decreasing value.  ``residual`` holds a monic factor of the
    characteristic polynomial whose roots are not rational, if any.
    """

    pairs: tuple
    residual: IntPolynomial | None = None

    def __init__(self, pairs: Iterable[tuple] = (), residual: IntPolynomial | None = None):
        merged: dict = {}
        for lam, mult in pairs:
            if mult < 0:
                raise ValueError(f"negative multiplicity {mult} for eigenvalue {lam}")
            if mult == 0:
                continue
            lam = _norm(lam)
            merged[lam] = merged.get(lam, 0) + int(mult)
        if residual is not None and residual.degree <= 0:
            residual = None
        object.__setattr__(self, "pairs", tuple(sorted(merged.items(), reverse=True)))
        object.__setattr__(self, "residual", residual)

    @classmethod
    def from_dict(cls, d: dict) -> "Spectrum":
        return cls(d.items())

    def as_dict(self) -> dict:
        return dict(self.pairs)

    @property
    def dim(self) -> int:
        return sum(m for _, m in self.pairs) + (self.residual.degree if self.residual else 0)

    @property
    def is_split(self) -> bool:
        return self.residual is None

    def product(self):
        """Product of eigenvalues with multiplicity (the determinant)."""
        out = Fraction(1)
        for lam, mult in self.pairs:
            out *= Fraction(lam) ** mult
        if self.residual is not None:
            r = self.residual
            out *= (-1) ** r.degree * Fraction(r.coefficients[0]) / Fraction(r.leading)
        return _norm(out)

    def trace(self):
        out = Fraction(0)
        for lam, mult in self.pairs:
            out += lam * mult
        if self.residual is not None:
            r = self.residual
            out -= Fraction(r.coefficients[-2]) / Fraction(r.leading)
        return _norm(out)

    def inertia(self) -> tuple[int, int, int]:
        if self.residual is not None:
            raise ValueError("inertia needs a fully rational spectrum")
        pos = sum(m for lam, m in self.pairs if lam > 0)
        neg = sum(m for lam, m in self.pairs if lam < 0)
        zero = sum(m for lam, m in self.pairs if lam == 0)
        return pos, neg, zero

    def __str__(self) -> str:
        body = ", ".join(f"{lam}: {m}" for lam, m in self.pairs)
        return "{" + body + "}"


@dataclass(frozen=True)
class SpectrumReport:
    char_poly_match: bool
    diagonalizable: bool
    inertia: tuple[int, int, int] | None

    @property
    def ok(self) -> bool:
        return self.char_poly_match and self.diagonalizable


def verify_spectrum(m: ExactMatrix, claimed: Spectrum) -> SpectrumReport:
    if not m.is_square():
        raise ValueError("spectrum of a non-square matrix")
    if not claimed.is_split:
        raise ValueError("claimed spectrum must be fully rational")
    if claimed.dim != m.rows:
        raise ValueError(f"multiplicities sum to {claimed.dim}, matrix has size {m.rows}")
    match = char_poly(m) == IntPolynomial.from_spectrum(claimed)
    diag = match and all(m.rows - rank(m.shift(lam)) == mult for lam, mult in claimed.pairs)
    return SpectrumReport(match, diag, claimed.inertia() if match else None)
