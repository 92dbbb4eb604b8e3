"""Full-rank lattices: membership, duals, cosets, sublattice enumeration."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cached_property

from . import linalg
from .errors import (
    NotASublatticeError,
    NotInLatticeError,
    SingularMatrixError,
    ZeroVectorError,
)
from .linalg import Mat, Vec, mat, mat_vec, vec


class Lattice:
    """Lattice of full rank given by a column basis matrix.

    Values are immutable; all derived data (inverse, dual) is cached.
    Lattice equality means equality as point sets (mutual containment),
    since basis matrices are only unique up to unimodular column changes.
    """

    def __init__(self, basis):
        self.basis: Mat = mat(basis)
        self.dim = len(self.basis)
        if any(len(c) != self.dim for c in self.basis):
            raise ValueError("lattice basis must be square (full rank)")
        if linalg.det(self.basis) == 0:
            raise SingularMatrixError("lattice basis is singular")

    @staticmethod
    def standard(d: int) -> "Lattice":
        return Lattice(linalg.identity(d))

    @cached_property
    def inverse_basis(self) -> Mat:
        return linalg.inverse(self.basis)

    @cached_property
    def determinant(self) -> Fraction:
        """The positive lattice determinant |det(basis)|."""
        return abs(linalg.det(self.basis))

    def coordinates(self, v) -> Vec:
        """Exact coordinates of v in this basis."""
        return mat_vec(self.inverse_basis, vec(v))

    def contains(self, v) -> bool:
        return all(c.denominator == 1 for c in self.coordinates(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def dual(self) -> "Lattice":
        """The dual lattice {y : <y, x> in Z for all x here}."""
        return Lattice(linalg.dual_basis(self.basis))

    def is_sublattice_of(self, other: "Lattice") -> bool:
        return all(other.contains(col) for col in self.basis)

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.is_sublattice_of(other)
            and other.is_sublattice_of(self)
        )

    def __hash__(self):  # pragma: no cover - not used as dict key in hot paths
        return hash((self.dim, self.determinant))

    def __repr__(self):
        return f"Lattice(basis={[list(map(str, c)) for c in self.basis]})"

    def canonical_residue(self, v) -> Vec:
        """The representative of v + L inside the half-open cell sum [0,1) b_i."""
        coords = self.coordinates(v)
        fracs = tuple(c - math.floor(c) for c in coords)
        return mat_vec(self.basis, fracs)

    def primitive_part(self, v) -> Vec:
        """v divided by the gcd of its basis coordinates (primitive vector)."""
        v = vec(v)
        if linalg.is_zero(v):
            raise ZeroVectorError("primitive part of the zero vector")
        coords = self.coordinates(v)
        if any(c.denominator != 1 for c in coords):
            raise NotInLatticeError(f"{v} is not a lattice point")
        g = math.gcd(*[int(c) for c in coords])
        return mat_vec(self.basis, tuple(c / g for c in coords))

    def primitive_parallel(self, direction) -> Vec:
        """The primitive lattice vector positively parallel to a rational direction.

        Raises NotInLatticeError when the line through the direction meets the
        lattice only at the origin (impossible for rational data, but guarded).
        """
        direction = vec(direction)
        if linalg.is_zero(direction):
            raise ZeroVectorError("no direction")
        coords = self.coordinates(direction)
        scale = math.lcm(*[c.denominator for c in coords])
        ints = [int(c * scale) for c in coords]
        g = math.gcd(*ints)
        if g == 0:
            raise NotInLatticeError("direction not parallel to any lattice vector")
        return mat_vec(self.basis, tuple(Fraction(i, g) for i in ints))

    def to_json(self):
        from .jsonio import rational_out

        return {"basis": [[rational_out(e) for e in col] for col in self.basis]}


def index(sub: Lattice, sup: Lattice) -> int:
    """The index [sup : sub] = det(sub)/det(sup), verified to be integral."""
    if not sub.is_sublattice_of(sup):
        raise NotASublatticeError("first lattice is not contained in the second")
    ratio = sub.determinant / sup.determinant
    if ratio.denominator != 1:
        raise NotASublatticeError("determinant ratio is not integral")
    return int(ratio)


def sublattices_of_z2(det_value: int) -> list[tuple[int, int, int]]:
    """All (l, h, s) with l*h = det_value, 0 <= s < h; basis (l,0), (s,h).

    These triples are exactly the column bases whose row matrix is in
    Hermite normal form, so the list enumerates every sublattice of Z^2
    with the given determinant exactly once.
    """
    if det_value < 1:
        raise ValueError("determinant must be positive")
    out = []
    for l in range(1, det_value + 1):
        if det_value % l:
            continue
        h = det_value // l
        for s in range(h):
            out.append((l, h, s))
    return out


def lattice_from_lhs(l: int, h: int, s: int) -> Lattice:
    return Lattice(((l, 0), (s, h)))
