"""
Quadratic spaces over Q and lattices in them.

Vectors are rows and linear maps act on the right. A Lattice is a finitely
generated Z-module kept in canonical row-HNF form, so lattice equality is
equality of bases. Lattices may have rank below the ambient dimension; the
calculus below works in their rational span.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple
import logging

from src.quadlat.core import linalg
from src.quadlat.core.exactnum import RatIdeal, rat_gcd, to_rat
from src.quadlat.core.linalg import Matrix, Row
from src.quadlat.utils.error_handlers import (
    DegenerateForm,
    IsotropicVector,
    ZeroPairing,
)

logger = logging.getLogger(__name__)

Vector = Row


def as_vector(coords: Iterable) -> Vector:
    return tuple(to_rat(x) for x in coords)


@dataclass(frozen=True)
class QuadSpace:
    """
    A nondegenerate quadratic space (Q^n, phi) given by its Gram matrix
    gram[i][j] = phi(e_i, e_j).
    """
    gram: Matrix

    def __post_init__(self):
        g = tuple(tuple(to_rat(x) for x in row) for row in self.gram)
        object.__setattr__(self, 'gram', g)
        n = len(g)
        if n == 0 or any(len(row) != n for row in g):
            raise DegenerateForm("Gram matrix must be square and nonempty")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(i)):
            raise DegenerateForm("Gram matrix is not symmetric")
        if linalg.det(g) == 0:
            raise DegenerateForm("degenerate form: Gram matrix is singular")

    @classmethod
    def diagonal(cls, values: Sequence) -> 'QuadSpace':
        n = len(values)
        return cls(tuple(
            tuple(to_rat(values[i]) if i == j else Fraction(0) for j in range(n))
            for i in range(n)
        ))

    @classmethod
    def identity(cls, n: int) -> 'QuadSpace':
        return cls(linalg.identity(n))

    @property
    def n(self) -> int:
        return len(self.gram)

    def bilinear(self, x: Sequence, y: Sequence) -> Fraction:
        """phi(x, y)."""
        return linalg.dot(linalg.vecmat(x, self.gram), y)

    def value(self, x: Sequence) -> Fraction:
        """phi[x] = phi(x, x)."""
        return self.bilinear(x, x)

    def det(self) -> Fraction:
        return linalg.det(self.gram)

    def gram_of(self, basis: Sequence[Sequence]) -> Matrix:
        """Gram matrix of phi on the given rows."""
        return linalg.matmul(linalg.matmul(basis, self.gram), linalg.transpose(basis))

    def restrict(self, basis: Sequence[Sequence]) -> 'QuadSpace':
        return QuadSpace(self.gram_of(basis))


@dataclass(frozen=True)
class Lattice:
    """
    A Z-lattice in Q^dim, stored as its canonical row-HNF basis.

    Build instances with from_generators; the raw constructor trusts its input.
    """
    basis: Matrix
    dim: int

    @classmethod
    def from_generators(cls, gens: Iterable[Sequence], dim: Optional[int] = None) -> 'Lattice':
        rows = [as_vector(g) for g in gens]
        if dim is None:
            if not rows:
                raise ValueError("dimension required for an empty generator set")
            dim = len(rows[0])
        if any(len(r) != dim for r in rows):
            raise ValueError("generator length does not match the ambient dimension")
        return cls(linalg.rational_hnf(rows, dim), dim)

    @classmethod
    def standard(cls, n: int) -> 'Lattice':
        return cls.from_generators(linalg.identity(n))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def is_full_rank(self) -> bool:
        return self.rank == self.dim

    def coordinates(self, v: Sequence) -> Optional[Row]:
        """Coordinates of v in this basis, None outside the rational span."""
        return linalg.solve_left(self.basis, v)

    def __contains__(self, v) -> bool:
        coords = self.coordinates(as_vector(v))
        return coords is not None and all(c.denominator == 1 for c in coords)

    def contains_lattice(self, other: 'Lattice') -> bool:
        return all(row in self for row in other.basis)

    def in_basis(self, rows: Sequence[Sequence]) -> 'Lattice':
        """
        Re-expresses the lattice in the coordinates of the given independent
        rows, which must span a space containing it.
        """
        coords = []
        for b in self.basis:
            c = linalg.solve_left(rows, b)
            if c is None:
                raise ValueError("lattice is not contained in the span of the given rows")
            coords.append(c)
        return Lattice.from_generators(coords, dim=len(rows))

    def embed(self, rows: Sequence[Sequence]) -> 'Lattice':
        """Maps coordinates relative to rows back into the rows' ambient space."""
        ambient = len(rows[0])
        return Lattice.from_generators(
            [linalg.vecmat(b, rows) for b in self.basis], dim=ambient
        )

    def rows_as_strings(self) -> Tuple[Tuple[str, ...], ...]:
        return tuple(tuple(str(x) for x in row) for row in self.basis)


# ---------------------------------------------------------------------------
# Lattice calculus
# ---------------------------------------------------------------------------

def dual(lat: Lattice, space: QuadSpace) -> Lattice:
    """
    The dual lattice {x in span(L) : 2 phi(x, L) in Z}.

    Basis: inverse(2 B G B^T) B.
    """
    b = lat.basis
    two_gram = linalg.scale_rows(space.gram_of(b), 2)
    return Lattice.from_generators(linalg.matmul(linalg.inverse(two_gram), b), dim=lat.dim)


def is_integral(lat: Lattice, space: QuadSpace) -> bool:
    """phi[x] in Z for all x in L: phi[b_i] integral and 2 phi(b_i, b_j) integral."""
    g = space.gram_of(lat.basis)
    for i in range(len(g)):
        if g[i][i].denominator != 1:
            return False
        for j in range(i):
            if (2 * g[i][j]).denominator != 1:
                return False
    return True


def index_ideal(lat: Lattice, other: Lattice) -> RatIdeal:
    """
    [L/M]: |det| of the transition from L's basis to M's basis.
    Both lattices must span the same rational space.
    """
    if lat.rank != other.rank:
        raise ValueError("index ideal needs lattices of equal rank")
    transition = []
    for row in other.basis:
        c = lat.coordinates(row)
        if c is None:
            raise ValueError("lattices span different subspaces")
        transition.append(c)
    d = linalg.det(transition) if transition else Fraction(1)
    return RatIdeal.of(d)


def intersect(lat1: Lattice, lat2: Lattice) -> Lattice:
    """L1 cap L2 via the integer kernel of the stacked matrix [B1; -B2]."""
    stacked = list(lat1.basis) + [tuple(-x for x in row) for row in lat2.basis]
    if not stacked:
        return Lattice((), lat1.dim)
    kernel = linalg.integer_left_kernel(stacked)
    k = lat1.rank
    gens = [linalg.vecmat(x[:k], lat1.basis) for x in kernel]
    return Lattice.from_generators(gens, dim=lat1.dim)


def lattice_sum(lat1: Lattice, lat2: Lattice) -> Lattice:
    return Lattice.from_generators(list(lat1.basis) + list(lat2.basis), dim=lat1.dim)


def scale(ideal, lat: Lattice) -> Lattice:
    """a L for an ideal (or positive rational) a."""
    c = ideal.generator if isinstance(ideal, RatIdeal) else to_rat(ideal)
    return Lattice.from_generators(linalg.scale_rows(lat.basis, c), dim=lat.dim)


def equal(lat1: Lattice, lat2: Lattice) -> bool:
    return lat1 == lat2


def complement_basis(space: QuadSpace, h: Sequence) -> Tuple[Matrix, Matrix]:
    """
    Basis of W = h^perp and the Gram matrix of the restricted form psi.

    Raises:
        IsotropicVector: if phi[h] = 0
    """
    h = as_vector(h)
    if space.value(h) == 0:
        raise IsotropicVector(f"phi[h] = 0 for h = {[str(x) for x in h]}")
    functional = linalg.vecmat(h, space.gram)
    kernel = linalg.integer_left_kernel([(x,) for x in functional])
    w_basis = tuple(tuple(Fraction(x) for x in row) for row in kernel)
    return w_basis, space.gram_of(w_basis)


def intersect_with_subspace(lat: Lattice, w_basis: Sequence[Sequence]) -> Lattice:
    """
    {x in L : x in span(W)}, in the coordinates of w_basis.
    """
    annihilator = linalg.right_nullspace(w_basis, ncols=lat.dim)
    if not annihilator:
        return lat.in_basis(w_basis)
    projected = linalg.matmul(lat.basis, linalg.transpose(annihilator))
    kernel = linalg.integer_left_kernel(projected)
    gens = []
    for x in kernel:
        v = linalg.vecmat(x, lat.basis)
        gens.append(linalg.solve_left(w_basis, v))
    return Lattice.from_generators(gens, dim=len(w_basis))


def pairing_ideal(h: Sequence, lat: Lattice, space: QuadSpace) -> RatIdeal:
    """
    The ideal 2 phi(h, L), generated by 2 phi(h, b_i) over the basis.

    Raises:
        ZeroPairing: if every pairing vanishes
    """
    h = as_vector(h)
    g = rat_gcd(2 * space.bilinear(h, b) for b in lat.basis)
    if g == 0:
        raise ZeroPairing("h is orthogonal to the whole lattice")
    return RatIdeal.of(g)
