"""Descriptors and numerics for the varieties x_j y_j = prod_i z_i^{a_ij} + 1.

An m x n integer matrix M = (a_ij) cuts out an (n+m)-dimensional smooth
affine variety X(M) inside C^{2n} x (C*)^m, one equation per column.  For
full-column-rank M the variety factors as a finite abelian quotient of a
product of the surfaces x y = z^d + 1 times an algebraic torus; this module
computes that structure and evaluates the associated torus fibration
numerically.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass

from . import intlat
from .intlat import CoverDecomposition, FiniteAbelianGroup, FiniteAbelianSubgroup, IntMatrix

__all__ = [
    "VarietyDescriptor",
    "CoverDescriptor",
    "StructureDecomposition",
    "FibrationPoint",
    "SingularTransform",
    "NotOnVariety",
    "ZeroZ",
    "MEMBERSHIP_RTOL",
    "build_descriptor",
    "to_cluster_form",
    "cover_descriptor",
    "structure_decomposition",
    "fibration_eval",
    "random_point",
]

# Relative tolerance for membership residuals; double precision leaves
# plenty of headroom for the monomial degrees that occur here.
MEMBERSHIP_RTOL = 1e-9


class SingularTransform(ValueError):
    """The covering transform must have nonzero determinant."""


class NotOnVariety(ValueError):
    """The point fails the defining equations beyond the tolerance."""


class ZeroZ(ValueError):
    """Some torus coordinate is zero."""


@dataclass(frozen=True)
class VarietyDescriptor:
    """The defining data of X(M): one exponent column per equation."""

    matrix: IntMatrix

    @property
    def n(self) -> int:
        return self.matrix.cols

    @property
    def m(self) -> int:
        return self.matrix.rows

    @property
    def dimension(self) -> int:
        return self.n + self.m

    @property
    def equations(self) -> tuple[tuple[int, ...], ...]:
        """Exponent vector of the monomial in equation j, for j = 1..n."""
        return tuple(self.matrix.column(j) for j in range(self.n))

    def to_json(self) -> dict:
        return {
            "matrix": self.matrix.to_json(),
            "dimension": self.dimension,
            "equations": [list(col) for col in self.equations],
        }


def build_descriptor(matrix: IntMatrix) -> VarietyDescriptor:
    """Descriptor for X(M).  Defined for any integer matrix; rank conditions
    only matter for the structure decomposition downstream."""
    return VarietyDescriptor(matrix)


def to_cluster_form(matrix: IntMatrix) -> tuple[tuple[int, ...], ...]:
    """Exponents of the change of variables x'_j = y_j * prod_i z_i^{e_ij}.

    e is the negative part of M taken columnwise; substituting turns each
    equation x_j y_j = prod z^{a_ij} + 1 into the two-monomial form
    x_j x'_j = prod z^{a+_ij} + prod z^{a-_ij}.
    """
    return tuple(
        tuple(max(-matrix.entries[i][j], 0) for i in range(matrix.rows))
        for j in range(matrix.cols)
    )


@dataclass(frozen=True)
class CoverDescriptor:
    """The finite cover X(T M) -> X(M) induced by a full-rank T.

    x and y coordinates map identically; z_k pulls back to the monomial
    prod_l (z'_l)^{T_lk} (column k of T).  The deck group is the cokernel
    of T^T, of order |det T|.
    """

    T: IntMatrix
    source: IntMatrix
    target: IntMatrix
    deck: FiniteAbelianGroup

    def z_substitution(self, k: int) -> tuple[int, ...]:
        """Exponents over z'_1..z'_m of the pullback of z_k (1-based k)."""
        return self.T.column(k - 1)

    def to_json(self) -> dict:
        return {
            "T": self.T.to_json(),
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "deck_invariant_factors": list(self.deck.invariant_factors),
        }


def cover_descriptor(t: IntMatrix, matrix: IntMatrix) -> CoverDescriptor:
    if t.rows != t.cols:
        raise ValueError("covering transform must be square")
    if t.rows != matrix.rows:
        raise ValueError("transform size must match the z-coordinate count")
    if t.det() == 0:
        raise SingularTransform("covering transform must be invertible over Q")
    source = t @ matrix
    # The pullback of equation j has exponent vector T @ a_j; that this is
    # exactly column j of the source matrix is the compatibility identity.
    for j in range(matrix.cols):
        assert t.apply(matrix.column(j)) == source.column(j)
    return CoverDescriptor(T=t, source=source, target=matrix, deck=intlat.cokernel(t.transpose()))


@dataclass(frozen=True)
class StructureDecomposition:
    """X(M) as (surface power) / deck x torus: the data (d, deck, m - n)."""

    d: int
    n: int
    m: int
    deck: FiniteAbelianSubgroup
    torus_rank: int
    cover: CoverDecomposition

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "m": self.m,
            "torus_rank": self.torus_rank,
            "deck": self.deck.to_json(),
            "T": self.cover.T.to_json(),
            "Mbar": self.cover.Mbar.to_json(),
        }


def structure_decomposition(matrix: IntMatrix) -> StructureDecomposition:
    """Compute d, the deck subgroup of (Z/d)^n, and the residual torus rank.

    Requires full column rank (raises NotFullColumnRank otherwise).  The
    deck group acts purely by root-of-unity scalings of the first n
    z-coordinates, so downstream character bookkeeping sees only chi tuples
    in (Z/d)^n.
    """
    dec = intlat.cover_decompose(matrix)
    deck = intlat.deck_subgroup(dec)
    return StructureDecomposition(
        d=dec.d,
        n=matrix.cols,
        m=matrix.rows,
        deck=deck,
        torus_rank=matrix.rows - matrix.cols,
        cover=dec,
    )


@dataclass(frozen=True)
class FibrationPoint:
    x: tuple[complex, ...]
    y: tuple[complex, ...]
    z: tuple[complex, ...]


def _monomial(z: tuple[complex, ...], exponents) -> complex:
    value = complex(1.0)
    for zi, a in zip(z, exponents):
        if a:
            value *= zi**a
    return value


def _check_membership(desc: VarietyDescriptor, point: FibrationPoint) -> None:
    if len(point.x) != desc.n or len(point.y) != desc.n or len(point.z) != desc.m:
        raise ValueError("point has the wrong number of coordinates")
    if any(zk == 0 for zk in point.z):
        raise ZeroZ("z coordinates must be nonzero")
    for j, col in enumerate(desc.equations):
        mono = _monomial(point.z, col)
        lhs = point.x[j] * point.y[j]
        scale = 1.0 + abs(lhs) + abs(mono)
        if abs(lhs - (mono + 1)) > MEMBERSHIP_RTOL * scale:
            raise NotOnVariety(
                f"equation {j + 1}: |x*y - (monomial + 1)| = {abs(lhs - (mono + 1)):.3e} "
                f"exceeds tolerance"
            )


def fibration_eval(desc: VarietyDescriptor, point: FibrationPoint) -> tuple[float, ...]:
    """The fibration value (|x_j^2 - y_j^2| for j <= n, log|z_k| for k <= m).

    |.| of the first block is the modulus of the complex number x^2 - y^2,
    the only reading that is real-valued on complex points.  The point must
    satisfy the defining equations up to MEMBERSHIP_RTOL.
    """
    _check_membership(desc, point)
    values = [abs(point.x[j] ** 2 - point.y[j] ** 2) for j in range(desc.n)]
    values.extend(math.log(abs(zk)) for zk in point.z)
    return tuple(values)


def random_point(desc: VarietyDescriptor, rng_seed: int = 0) -> FibrationPoint:
    """Reproducible random point of X(M).

    z is sampled on the annulus 1/2 <= |z| <= 2 with uniform angle; each
    equation is then closed by a balanced splitting x_j y_j = c_j with
    |x_j| = |y_j| = sqrt(|c_j|) and a random phase.  If c_j happens to be 0,
    x_j = 0 and y_j is a random unit so that any pair satisfies the equation.
    """
    rng = random.Random(rng_seed)
    z = tuple(
        rng.uniform(0.5, 2.0) * cmath.exp(2j * math.pi * rng.random())
        for _ in range(desc.m)
    )
    xs, ys = [], []
    for col in desc.equations:
        c = _monomial(z, col) + 1
        if c == 0:
            xs.append(0j)
            ys.append(cmath.exp(2j * math.pi * rng.random()))
            continue
        phase = cmath.exp(2j * math.pi * rng.random())
        x = math.sqrt(abs(c)) * phase
        xs.append(x)
        ys.append(c / x)
    return FibrationPoint(x=tuple(xs), y=tuple(ys), z=z)
