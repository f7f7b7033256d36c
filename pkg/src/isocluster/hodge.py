"""Bigraded (degree, weight, perverse, character) dimension bookkeeping.

Cohomology here is pure combinatorics on tables of integer dimensions.  The
two building blocks are the punctured line C* and the surface
x y = z^d + 1; general tables are assembled by Kunneth products and
deck-group invariants.  Weights are stored as the even integer w with
Gr^W_w nonzero, perverse levels are normalized so the unit class sits at
(k, w, p) = (0, 0, 0), and each entry carries one character residue per
surface factor.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product

from . import variety
from .intlat import FiniteAbelianSubgroup, IntMatrix, annihilator

__all__ = [
    "TableEntry",
    "BigradedTable",
    "WeightPolynomial",
    "CheckReport",
    "AmbientMismatch",
    "torus_block",
    "surface_block",
    "kunneth",
    "deck_invariants",
    "pw_table",
    "check_pw",
    "check_chl",
    "weight_poly",
    "epoly",
]


class AmbientMismatch(ValueError):
    """Character tuples do not live in the deck group's ambient (Z/d)^n."""


@dataclass(frozen=True, order=True)
class TableEntry:
    """One graded piece: degree k, weight w (even), perverse level p,
    character tuple chi, and its dimension."""

    k: int
    w: int
    p: int
    chi: tuple[int, ...]
    dim: int

    def __post_init__(self):
        if self.k < 0 or self.p < 0:
            raise ValueError("degree and perverse level must be non-negative")
        if self.w % 2:
            raise ValueError("weights are even in every table produced here")
        if self.dim < 1:
            raise ValueError("dimensions are positive counts")


class BigradedTable:
    """Sorted, merged list of table entries for a variety of dimension D."""

    __slots__ = ("D", "entries")

    def __init__(self, dimension: int, entries):
        acc: Counter = Counter()
        for e in entries:
            if isinstance(e, TableEntry):
                acc[(e.k, e.w, e.p, e.chi)] += e.dim
            else:
                k, w, p, chi, dim = e
                acc[(int(k), int(w), int(p), tuple(int(c) for c in chi))] += int(dim)
        self.D = int(dimension)
        self.entries = tuple(
            TableEntry(k, w, p, chi, dim)
            for (k, w, p, chi), dim in sorted(acc.items())
        )

    def betti(self) -> tuple[int, ...]:
        """Dimension totals per cohomological degree, 0..max."""
        if not self.entries:
            return ()
        top = max(e.k for e in self.entries)
        out = [0] * (top + 1)
        for e in self.entries:
            out[e.k] += e.dim
        return tuple(out)

    def total_dim(self) -> int:
        return sum(e.dim for e in self.entries)

    def dims_by_degree_weight(self) -> dict[tuple[int, int], int]:
        out: Counter = Counter()
        for e in self.entries:
            out[(e.k, e.w)] += e.dim
        return dict(out)

    def to_json(self) -> dict:
        return {
            "D": self.D,
            "entries": [
                {"k": e.k, "w": e.w, "p": e.p, "chi": list(e.chi), "dim": e.dim}
                for e in self.entries
            ],
        }

    @classmethod
    def from_json(cls, obj) -> BigradedTable:
        if not isinstance(obj, dict) or "D" not in obj or "entries" not in obj:
            raise ValueError("table JSON must have keys D and entries")
        entries = [
            (e["k"], e["w"], e["p"], tuple(e["chi"]), e["dim"]) for e in obj["entries"]
        ]
        return cls(obj["D"], entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BigradedTable):
            return NotImplemented
        return self.D == other.D and self.entries == other.entries

    def __repr__(self) -> str:
        return f"BigradedTable(D={self.D}, entries={list(self.entries)!r})"


def torus_block() -> BigradedTable:
    """Table of C*: the unit class and a weight-2 circle class in degree 1.

    The perverse level equals the cohomological degree, which matches the
    weight filtration of the algebraic torus graded in half-weights.
    """
    return BigradedTable(1, [(0, 0, 0, (), 1), (1, 2, 1, (), 1)])


def surface_block(d: int) -> BigradedTable:
    """Table of the surface x y = z^d + 1 with its Z/d character grading.

    Degrees 0, 1, 2 carry one trivial-character class each at weights
    0, 2, 4, and H^2 additionally carries one weight-2 class for every
    nontrivial character j = 1..d-1: the d vanishing-cycle classes form the
    regular representation of the cyclic deck rotation, leaving the
    invariant line at full weight 4.  Point counts over many finite fields
    pin this table down exactly (E = q^2 + (d-2) q + 1).
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    entries = [(0, 0, 0, (0,), 1), (1, 2, 1, (0,), 1), (2, 4, 2, (0,), 1)]
    entries.extend((2, 2, 1, (j,), 1) for j in range(1, d))
    return BigradedTable(2, entries)


def _unit_table() -> BigradedTable:
    return BigradedTable(0, [(0, 0, 0, (), 1)])


def kunneth(tables) -> BigradedTable:
    """Product table: grades add, characters concatenate, dimensions multiply."""
    result = _unit_table()
    for table in tables:
        merged = (
            (
                a.k + b.k,
                a.w + b.w,
                a.p + b.p,
                a.chi + b.chi,
                a.dim * b.dim,
            )
            for a in result.entries
            for b in table.entries
        )
        result = BigradedTable(result.D + table.D, merged)
    return result


def deck_invariants(table: BigradedTable, deck: FiniteAbelianSubgroup) -> BigradedTable:
    """Keep the entries fixed by the deck action.

    A class with character tuple chi transforms by the pairing
    sum_i chi_i * g_i mod d under the deck element g, so exactly the chi in
    the annihilator of the deck subgroup survive; dimensions never change
    because each basis class spans a single character line.
    """
    d, n = deck.modulus, deck.rank
    for e in table.entries:
        if len(e.chi) != n or any(not (0 <= c < d) for c in e.chi):
            raise AmbientMismatch(
                f"character tuple {e.chi} does not live in (Z/{d})^{n}"
            )
    gens = deck.generators
    kept = [
        e
        for e in table.entries
        if all(sum(c * g for c, g in zip(e.chi, gen)) % d == 0 for gen in gens)
    ]
    return BigradedTable(table.D, kept)


def pw_table(matrix: IntMatrix) -> BigradedTable:
    """Assembled table of X(M) for full-column-rank M.

    Equals deck_invariants(kunneth(n surface blocks), deck) followed by a
    Kunneth product with m - n torus blocks, but assembled by enumerating
    the annihilator characters directly: only |det Mbar| characters survive,
    so this never materializes the d^n-sized product.
    """
    sd = variety.structure_decomposition(matrix)
    surviving = annihilator(sd.deck).elements()
    trivial = ((0, 0, 0), (1, 2, 1), (2, 4, 2))
    nontrivial = ((2, 2, 1),)
    acc: Counter = Counter()
    for chi in surviving:
        choices = [trivial if c == 0 else nontrivial for c in chi]
        for combo in product(*choices):
            k = sum(part[0] for part in combo)
            w = sum(part[1] for part in combo)
            p = sum(part[2] for part in combo)
            acc[(k, w, p, chi)] += 1
    core = BigradedTable(2 * sd.n, ((k, w, p, chi, dim) for (k, w, p, chi), dim in acc.items()))
    return kunneth([core] + [torus_block()] * sd.torus_rank)


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a symmetry check; failures are report content, never raises."""

    name: str
    passed: bool
    failures: tuple[str, ...] = ()
    skipped: str | None = None
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "failures": list(self.failures)}
        if self.skipped is not None:
            out["skipped"] = self.skipped
        out.update(self.details)
        return out


def check_pw(table: BigradedTable) -> CheckReport:
    """Verify p = w/2 with w even on every entry.

    This holds by construction of the torus and surface blocks, so on
    assembled tables it guards the product and quotient bookkeeping; the
    independent evidence for the weight side is the point-counting match.
    """
    failures = []
    for e in table.entries:
        if e.w % 2 or e.p != e.w // 2:
            failures.append(f"entry (k={e.k}, w={e.w}, p={e.p}, chi={e.chi}) has p != w/2")
    return CheckReport(
        name="p-equals-half-weight",
        passed=not failures,
        failures=tuple(failures),
        details={"entry_count": len(table.entries)},
    )


def check_chl(table: BigradedTable) -> CheckReport:
    """Weight-graded symmetry dim Gr^W_{D-2l} H^k = dim Gr^W_{D+2l} H^{k+2l}.

    The symmetry center is weight D (half-weight grading puts the middle of
    the range 0..2D at the dimension).  Only checked for even D: the
    odd-dimensional tables always contain an unpaired torus factor and the
    symmetry is not claimed for them.
    """
    if table.D % 2:
        return CheckReport(
            name="curious-hard-lefschetz",
            passed=True,
            skipped=f"dimension {table.D} is odd",
            details={"center_weight": table.D},
        )
    dims = table.dims_by_degree_weight()
    center = table.D
    top_degree = max((e.k for e in table.entries), default=0)
    failures = []
    for l in range(1, center // 2 + 1):
        for k in range(top_degree + 1):
            low = dims.get((k, center - 2 * l), 0)
            high = dims.get((k + 2 * l, center + 2 * l), 0)
            if low != high:
                failures.append(
                    f"dim Gr^W_{center - 2 * l} H^{k} = {low} but "
                    f"dim Gr^W_{center + 2 * l} H^{k + 2 * l} = {high}"
                )
    return CheckReport(
        name="curious-hard-lefschetz",
        passed=not failures,
        failures=tuple(failures),
        details={"center_weight": center},
    )


class WeightPolynomial:
    """WP(q, t) = sum dim Gr^W_{2w} H^k q^w t^k with exact integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        acc: Counter = Counter()
        for (w, k), coeff in dict(terms).items():
            if coeff:
                acc[(int(w), int(k))] += int(coeff)
        self.terms = {key: val for key, val in sorted(acc.items()) if val}

    def evaluate(self, q, t):
        return sum(c * q**w * t**k for (w, k), c in self.terms.items())

    def __mul__(self, other: WeightPolynomial) -> WeightPolynomial:
        acc: Counter = Counter()
        for (w1, k1), c1 in self.terms.items():
            for (w2, k2), c2 in other.terms.items():
                acc[(w1 + w2, k1 + k2)] += c1 * c2
        return WeightPolynomial(acc)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def to_json(self) -> list:
        return [[w, k, c] for (w, k), c in self.terms.items()]

    def __repr__(self) -> str:
        return f"WeightPolynomial({self.terms!r})"


def weight_poly(table: BigradedTable) -> WeightPolynomial:
    """Package the weight-graded Betti numbers; WP(1, 1) is the total rank."""
    acc: Counter = Counter()
    for e in table.entries:
        acc[(e.w // 2, e.k)] += e.dim
    return WeightPolynomial(acc)


def epoly(table: BigradedTable) -> tuple[int, ...]:
    """Counting polynomial E(q) = q^D * WP(1/q, -1), lowest coefficient first.

    Monic of degree D for every table built here; for a smooth variety of
    dimension D this is the polynomial that counts points over suitable
    finite fields.
    """
    coeffs = [0] * (table.D + 1)
    for e in table.entries:
        coeffs[table.D - e.w // 2] += e.dim * (-1 if e.k % 2 else 1)
    return tuple(coeffs)
