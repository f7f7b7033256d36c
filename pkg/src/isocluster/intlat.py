"""Exact integer linear algebra over Z and Z/N.

Everything in this module is arbitrary-precision Python integer arithmetic;
no floating point enters at any stage.  Provided here: row Hermite and Smith
normal forms with recorded unimodular transforms, the diagonal cover
decomposition (d, T, Mbar) of a full-column-rank matrix, finite cokernels,
subgroups of (Z/d)^n with annihilator duality, and exact solution counts for
linear systems over Z/N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "IntMatrix",
    "RowReduction",
    "SmithForm",
    "FiniteAbelianGroup",
    "FiniteAbelianSubgroup",
    "CoverDecomposition",
    "NotFullColumnRank",
    "InfiniteCokernel",
    "hnf_row",
    "snf",
    "cover_decompose",
    "cokernel",
    "deck_subgroup",
    "annihilator",
    "count_affine_solutions",
    "block_diag",
]


class NotFullColumnRank(ValueError):
    """Matrix has fewer rows than columns, or rank below its column count."""


class InfiniteCokernel(ValueError):
    """Square matrix is singular, so Z^m / T Z^m has free rank."""


class IntMatrix:
    """Immutable integer matrix stored row-major as tuples of Python ints."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries, cols: int | None = None):
        data = tuple(tuple(int(x) for x in row) for row in entries)
        if data:
            width = len(data[0])
            if any(len(row) != width for row in data):
                raise ValueError("rows have unequal lengths")
            if cols is not None and int(cols) != width:
                raise ValueError(f"cols={cols} does not match row length {width}")
        else:
            width = 0 if cols is None else int(cols)
        self.rows = len(data)
        self.cols = width
        self.entries = data

    @classmethod
    def identity(cls, k: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(k)] for i in range(k)], cols=k)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> IntMatrix:
        return IntMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        out = []
        for i in range(self.rows):
            srow = self.entries[i]
            out.append(
                [
                    sum(srow[k] * other.entries[k][j] for k in range(self.cols))
                    for j in range(other.cols)
                ]
            )
        return IntMatrix(out, cols=other.cols)

    def apply(self, vector) -> tuple[int, ...]:
        """Matrix-vector product over Z."""
        vec = tuple(int(x) for x in vector)
        if len(vec) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(row[k] * vec[k] for k in range(self.cols)) for row in self.entries)

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant requires a square matrix")
        n = self.rows
        if n == 0:
            return 1
        work = [list(row) for row in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if work[k][k] == 0:
                pivot = next((i for i in range(k + 1, n) if work[i][k]), None)
                if pivot is None:
                    return 0
                work[k], work[pivot] = work[pivot], work[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    work[i][j] = (work[i][j] * work[k][k] - work[i][k] * work[k][j]) // prev
                work[i][k] = 0
            prev = work[k][k]
        return sign * work[n - 1][n - 1]

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": [list(r) for r in self.entries]}

    @classmethod
    def from_json(cls, obj) -> IntMatrix:
        if not isinstance(obj, dict):
            raise ValueError("matrix JSON must be an object")
        missing = {"rows", "cols", "entries"} - obj.keys()
        if missing:
            raise ValueError(f"matrix JSON missing keys: {sorted(missing)}")
        rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
        if not isinstance(rows, int) or not isinstance(cols, int) or isinstance(rows, bool) or isinstance(cols, bool):
            raise ValueError("rows and cols must be integers")
        if rows < 0 or cols < 0:
            raise ValueError("rows and cols must be non-negative")
        if not isinstance(entries, list) or len(entries) != rows:
            raise ValueError(f"entries must be a list of {rows} rows")
        for row in entries:
            if not isinstance(row, list) or len(row) != cols:
                raise ValueError(f"each row must be a list of {cols} integers")
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise ValueError("entries must be exact integers")
        return cls(entries, cols=cols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self.entries]!r})"


def block_diag(*blocks: IntMatrix) -> IntMatrix:
    """Block-diagonal stacking of square or rectangular integer matrices."""
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            out[r0 + i][c0 : c0 + b.cols] = list(b.entries[i])
        r0 += b.rows
        c0 += b.cols
    return IntMatrix(out, cols=cols)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with g = gcd(a, b) >= 0 and s*a + t*b = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class RowReduction:
    """Row Hermite form H together with the transform R (R @ A = H).

    R is unimodular and Rinv is its exact inverse.  det(R) = +1 whenever H
    has a zero row to spare; for square full-rank input R is uniquely
    determined by A and the Hermite convention, so its sign is forced.
    """

    H: IntMatrix
    R: IntMatrix
    Rinv: IntMatrix


def hnf_row(matrix: IntMatrix) -> RowReduction:
    """Row Hermite normal form with recorded unimodular row transform.

    Convention: pivots positive, entries above each pivot reduced into
    [0, pivot), pivot columns scanned left to right using the topmost
    available row.  Deterministic for a given input.
    """
    m, n = matrix.rows, matrix.cols
    h = [list(row) for row in matrix.entries]
    r = [[int(i == j) for j in range(m)] for i in range(m)]
    rinv = [[int(i == j) for j in range(m)] for i in range(m)]
    neg_det = False

    def swap_rows(i: int, j: int) -> None:
        nonlocal neg_det
        if i == j:
            return
        h[i], h[j] = h[j], h[i]
        r[i], r[j] = r[j], r[i]
        for row in rinv:
            row[i], row[j] = row[j], row[i]
        neg_det = not neg_det

    def negate_row(i: int) -> None:
        nonlocal neg_det
        h[i] = [-x for x in h[i]]
        r[i] = [-x for x in r[i]]
        for row in rinv:
            row[i] = -row[i]
        neg_det = not neg_det

    def add_multiple(i: int, j: int, q: int) -> None:
        # row_i += q * row_j on H and R; inverse is col_j -= q * col_i on Rinv
        if q == 0:
            return
        h[i] = [a + q * b for a, b in zip(h[i], h[j])]
        r[i] = [a + q * b for a, b in zip(r[i], r[j])]
        for row in rinv:
            row[j] -= q * row[i]

    def combine(i: int, j: int, s: int, t: int, u: int, v: int) -> None:
        # (row_i, row_j) <- (s*ri + t*rj, u*ri + v*rj) with s*v - t*u = 1
        hi, hj = h[i], h[j]
        h[i] = [s * a + t * b for a, b in zip(hi, hj)]
        h[j] = [u * a + v * b for a, b in zip(hi, hj)]
        ri, rj = r[i], r[j]
        r[i] = [s * a + t * b for a, b in zip(ri, rj)]
        r[j] = [u * a + v * b for a, b in zip(ri, rj)]
        for row in rinv:
            a0, b0 = row[i], row[j]
            row[i] = v * a0 - u * b0
            row[j] = -t * a0 + s * b0

    pivot = 0
    for col in range(n):
        first = next((i for i in range(pivot, m) if h[i][col]), None)
        if first is None:
            continue
        swap_rows(pivot, first)
        for i in range(pivot + 1, m):
            if h[i][col] == 0:
                continue
            a, b = h[pivot][col], h[i][col]
            if b % a == 0:
                add_multiple(i, pivot, -(b // a))
            else:
                g, s, t = _egcd(a, b)
                combine(pivot, i, s, t, -(b // g), a // g)
        if h[pivot][col] < 0:
            negate_row(pivot)
        p = h[pivot][col]
        for i in range(pivot):
            q = h[i][col] // p
            add_multiple(i, pivot, -q)
        pivot += 1
        if pivot == m:
            break
    if neg_det and pivot < m:
        # the last row of H is zero, so flipping it fixes det(R) invisibly
        negate_row(m - 1)
    return RowReduction(
        IntMatrix(h, cols=n), IntMatrix(r, cols=m), IntMatrix(rinv, cols=m)
    )


@dataclass(frozen=True)
class SmithForm:
    """Diagonalization P @ A @ Q = diag(factors) with unimodular P, Q.

    factors is the invariant-factor chain: non-negative, each dividing the
    next, padded with zeros up to min(rows, cols).
    """

    P: IntMatrix
    Q: IntMatrix
    factors: tuple[int, ...]

    def diagonal_matrix(self, rows: int, cols: int) -> IntMatrix:
        out = [[0] * cols for _ in range(rows)]
        for i, f in enumerate(self.factors):
            out[i][i] = f
        return IntMatrix(out, cols=cols)


def snf(matrix: IntMatrix) -> SmithForm:
    """Smith normal form with recorded transforms, deterministic pivoting.

    Pivot rule: smallest absolute value in the trailing submatrix, ties
    broken by (row, column).  Divisibility of the chain is enforced by the
    usual row-folding sweep.
    """
    m, n = matrix.rows, matrix.cols
    d = [list(row) for row in matrix.entries]
    p = [[int(i == j) for j in range(m)] for i in range(m)]
    q = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        if i != j:
            d[i], d[j] = d[j], d[i]
            p[i], p[j] = p[j], p[i]

    def swap_cols(i, j):
        if i != j:
            for row in d:
                row[i], row[j] = row[j], row[i]
            for row in q:
                row[i], row[j] = row[j], row[i]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        p[i] = [-x for x in p[i]]

    def row_add(i, j, c):
        # row_i += c * row_j
        d[i] = [a + c * b for a, b in zip(d[i], d[j])]
        p[i] = [a + c * b for a, b in zip(p[i], p[j])]

    def col_add(i, j, c):
        # col_i += c * col_j
        for row in d:
            row[i] += c * row[j]
        for row in q:
            row[i] += c * row[j]

    def row_combine(i, j, s, t, u, v):
        di, dj = d[i], d[j]
        d[i] = [s * a + t * b for a, b in zip(di, dj)]
        d[j] = [u * a + v * b for a, b in zip(di, dj)]
        pi, pj = p[i], p[j]
        p[i] = [s * a + t * b for a, b in zip(pi, pj)]
        p[j] = [u * a + v * b for a, b in zip(pi, pj)]

    def col_combine(i, j, s, t, u, v):
        # (col_i, col_j) <- (s*ci + t*cj, u*ci + v*cj)
        for row in d:
            a0, b0 = row[i], row[j]
            row[i] = s * a0 + t * b0
            row[j] = u * a0 + v * b0
        for row in q:
            a0, b0 = row[i], row[j]
            row[i] = s * a0 + t * b0
            row[j] = u * a0 + v * b0

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = d[i][j]
                if v and (best is None or (abs(v), i, j) < best):
                    best = (abs(v), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            for i in range(t + 1, m):
                if d[i][t]:
                    a, b = d[t][t], d[i][t]
                    if b % a == 0:
                        row_add(i, t, -(b // a))
                    else:
                        g, s, u = _egcd(a, b)
                        row_combine(t, i, s, u, -(b // g), a // g)
            for j in range(t + 1, n):
                if d[t][j]:
                    a, b = d[t][t], d[t][j]
                    if b % a == 0:
                        col_add(j, t, -(b // a))
                    else:
                        g, s, u = _egcd(a, b)
                        col_combine(t, j, s, u, -(b // g), a // g)
            if any(d[i][t] for i in range(t + 1, m)):
                continue
            if any(d[t][j] for j in range(t + 1, n)):
                continue
            offender = None
            for i in range(t + 1, m):
                if any(d[i][j] % d[t][t] for j in range(t + 1, n)):
                    offender = i
                    break
            if offender is None:
                break
            row_add(t, offender, 1)
        if d[t][t] < 0:
            negate_row(t)
    factors = tuple(d[i][i] for i in range(min(m, n)))
    return SmithForm(IntMatrix(p, cols=m), IntMatrix(q, cols=n), factors)


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Finite abelian group as its invariant-factor chain (all factors > 1)."""

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        fs = tuple(int(f) for f in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", fs)
        for f in fs:
            if f <= 1:
                raise ValueError("invariant factors must be > 1")
        for a, b in zip(fs, fs[1:]):
            if b % a:
                raise ValueError("each invariant factor must divide the next")

    @classmethod
    def trivial(cls) -> FiniteAbelianGroup:
        return cls(())

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "trivial"
        return " x ".join(f"Z/{f}" for f in self.invariant_factors)


def cokernel(matrix: IntMatrix) -> FiniteAbelianGroup:
    """Z^m / (matrix Z^m) for square input, as invariant factors.

    Raises InfiniteCokernel when the matrix is singular (the quotient then
    has free rank and is infinite).
    """
    if matrix.rows != matrix.cols:
        raise ValueError("cokernel expects a square matrix")
    form = snf(matrix)
    if any(f == 0 for f in form.factors):
        raise InfiniteCokernel("matrix is singular; cokernel is infinite")
    return FiniteAbelianGroup(tuple(f for f in form.factors if f > 1))


def _scaled_upper_inverse(u: IntMatrix, d: int) -> IntMatrix:
    """d * u^{-1} for upper-triangular u with nonzero diagonal (exact)."""
    n = u.rows
    cols: list[list[Fraction]] = []
    for c in range(n):
        x = [Fraction(0)] * n
        for i in range(n - 1, -1, -1):
            rhs = Fraction(d if i == c else 0)
            rhs -= sum(Fraction(u.entries[i][j]) * x[j] for j in range(i + 1, n))
            x[i] = rhs / u.entries[i][i]
        cols.append(x)
    out = [[cols[c][i] for c in range(n)] for i in range(n)]
    assert all(e.denominator == 1 for row in out for e in row), "d * U^{-1} must be integral"
    return IntMatrix([[int(e) for e in row] for row in out], cols=n)


@dataclass(frozen=True)
class CoverDecomposition:
    """The exact factorization T @ Mbar = diag(d*I_n, I_{m-n}).

    Mbar extends the input matrix M by m-n further columns; R is the
    unimodular row transform with R @ M = [U; 0] and U upper triangular.
    d is the minimal positive integer making d * U^{-1} integral, which is
    the largest invariant factor of U (equivalently of M).
    """

    d: int
    T: IntMatrix
    Mbar: IntMatrix
    R: IntMatrix
    U: IntMatrix


def cover_decompose(matrix: IntMatrix) -> CoverDecomposition:
    """Decompose a full-column-rank m x n matrix as T @ Mbar = diag(d*I, I).

    Raises NotFullColumnRank when m < n or the columns are dependent; the
    downstream quotient structure only exists in the full-column-rank case.
    """
    m, n = matrix.rows, matrix.cols
    if m < n:
        raise NotFullColumnRank(f"need at least as many rows as columns, got {m} x {n}")
    form = snf(matrix)
    if sum(1 for f in form.factors if f) < n:
        raise NotFullColumnRank("columns are linearly dependent")
    reduction = hnf_row(matrix)
    u = IntMatrix(reduction.H.entries[:n], cols=n)
    d = form.factors[n - 1] if n else 1
    t_top = _scaled_upper_inverse(u, d)
    t = block_diag(t_top, IntMatrix.identity(m - n)) @ reduction.R
    mbar = reduction.Rinv @ block_diag(u, IntMatrix.identity(m - n))
    return CoverDecomposition(d=d, T=t, Mbar=mbar, R=reduction.R, U=u)


class FiniteAbelianSubgroup:
    """Subgroup of (Z/d)^n given by a generator list.

    Internally canonicalized as the Hermite basis of the integer lattice
    spanned by the generators together with d*Z^n, so equality, membership,
    order, and enumeration are all exact.
    """

    __slots__ = ("modulus", "rank", "generators", "_basis")

    def __init__(self, modulus: int, rank: int, generators=()):
        d = int(modulus)
        n = int(rank)
        if d < 1:
            raise ValueError("modulus must be >= 1")
        if n < 0:
            raise ValueError("rank must be >= 0")
        gens = []
        for g in generators:
            vec = tuple(int(x) % d for x in g)
            if len(vec) != n:
                raise ValueError(f"generator length {len(vec)} does not match rank {n}")
            gens.append(vec)
        self.modulus = d
        self.rank = n
        self.generators = tuple(gens)
        rows = [list(g) for g in gens]
        rows += [[d * int(i == j) for j in range(n)] for i in range(n)]
        h = hnf_row(IntMatrix(rows, cols=n)).H
        self._basis = tuple(h.entries[i] for i in range(n))

    def lattice_basis(self) -> tuple[tuple[int, ...], ...]:
        """Hermite basis of the lattice (contains d*Z^n), upper triangular."""
        return self._basis

    def basis(self) -> tuple[tuple[int, ...], ...]:
        """Canonical nonzero generators, reduced mod d."""
        d = self.modulus
        reduced = [tuple(x % d for x in row) for row in self._basis]
        return tuple(row for row in reduced if any(row))

    @property
    def order(self) -> int:
        index = math.prod(self._basis[i][i] for i in range(self.rank))
        return self.modulus**self.rank // index

    def contains(self, element) -> bool:
        vec = [int(x) % self.modulus for x in element]
        if len(vec) != self.rank:
            raise ValueError("element length does not match rank")
        for i in range(self.rank):
            pivot = self._basis[i][i]
            if vec[i] % pivot:
                return False
            c = vec[i] // pivot
            if c:
                vec = [a - c * b for a, b in zip(vec, self._basis[i])]
        return not any(vec)

    def elements(self) -> list[tuple[int, ...]]:
        """All elements, sorted lexicographically."""
        d, n = self.modulus, self.rank
        zero = (0,) * n
        seen = {zero}
        frontier = [zero]
        while frontier:
            x = frontier.pop()
            for g in self.generators:
                y = tuple((a + b) % d for a, b in zip(x, g))
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return sorted(seen)

    def invariant_factors(self) -> tuple[int, ...]:
        """Invariant factors (> 1) of the subgroup as an abstract group."""
        if self.rank == 0:
            return ()
        scale = _scaled_upper_inverse(IntMatrix(self._basis, cols=self.rank), self.modulus)
        return tuple(f for f in snf(scale).factors if f > 1)

    def to_json(self) -> dict:
        return {
            "modulus": self.modulus,
            "rank": self.rank,
            "generators": [list(g) for g in self.basis()],
            "order": self.order,
        }

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteAbelianSubgroup):
            return NotImplemented
        return (
            self.modulus == other.modulus
            and self.rank == other.rank
            and self._basis == other._basis
        )

    def __hash__(self) -> int:
        return hash((self.modulus, self.rank, self._basis))

    def __repr__(self) -> str:
        return (
            f"FiniteAbelianSubgroup(modulus={self.modulus}, rank={self.rank}, "
            f"generators={list(self.basis())!r})"
        )


def deck_subgroup(decomposition: CoverDecomposition) -> FiniteAbelianSubgroup:
    """Deck group of the diagonal cover as a subgroup of (Z/d)^n.

    Generated by the rows of Mbar restricted to the first n columns, taken
    mod d: the image of Mbar^T Z^m inside Z^m / diag(d*I_n, I_{m-n}) Z^m
    projected to its first n coordinates.  Its order equals |det T|.
    """
    n = decomposition.U.rows
    d = decomposition.d
    gens = (tuple(x % d for x in row[:n]) for row in decomposition.Mbar.entries)
    return FiniteAbelianSubgroup(d, n, gens)


def annihilator(group: FiniteAbelianSubgroup) -> FiniteAbelianSubgroup:
    """Dual subgroup { j : sum_i j_i g_i = 0 mod d for every generator g }.

    An involution, with |G| * |annihilator(G)| = d^n.
    """
    d, n = group.modulus, group.rank
    gens = group.generators
    a = IntMatrix([list(g) for g in gens], cols=n)
    form = snf(a)
    out = []
    for i in range(n):
        di = form.factors[i] if i < len(form.factors) else 0
        c = d // math.gcd(di, d)
        out.append(tuple((form.Q.entries[r][i] * c) % d for r in range(n)))
    return FiniteAbelianSubgroup(d, n, out)


def count_affine_solutions(matrix: IntMatrix, rhs, modulus: int) -> int:
    """#{ x in (Z/N)^c : matrix @ x = rhs mod N }, exactly, via Smith form.

    The unimodular substitution x = Q y turns the system into independent
    congruences d_i y_i = (P rhs)_i mod N, each contributing gcd(d_i, N)
    solutions when solvable and zero otherwise.
    """
    modulus = int(modulus)
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    r, c = matrix.rows, matrix.cols
    b = tuple(int(x) for x in rhs)
    if len(b) != r:
        raise ValueError("rhs length does not match row count")
    form = snf(matrix)
    pb = [sum(form.P.entries[i][k] * b[k] for k in range(r)) for i in range(r)]
    total = 1
    for i in range(min(r, c)):
        g = math.gcd(form.factors[i], modulus)
        if pb[i] % g:
            return 0
        total *= g
    for i in range(min(r, c), r):
        if pb[i] % modulus:
            return 0
    return total * modulus ** max(0, c - r)
