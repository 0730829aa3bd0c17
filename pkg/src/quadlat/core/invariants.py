"""
Classification invariants of ternary and quaternary spaces over Q.

Discriminant class, real index, characteristic quaternion algebra and its
ramification, core dimensions, and the discriminant-ideal formulas that
relate a quaternary space to the complement of a vector.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple
import logging

from sympy import primerange

from src.quadlat.core import linalg
from src.quadlat.core.exactnum import (
    INF,
    Place,
    RatIdeal,
    SquareClass,
    check_place,
    hilbert_symbol,
    is_local_norm,
    is_local_square,
    place_sort_key,
    ramification,
    relevant_places,
    squarefree_split,
    to_rat,
)
from src.quadlat.core.qspace import QuadSpace, complement_basis
from src.quadlat.utils.error_handlers import (
    PresentationNotFound,
    UnsupportedDimension,
)

logger = logging.getLogger(__name__)

SPLIT = 'split'
DIVISION = 'division'

PRESENTATION_SEARCH_BOUND = 2000


def orthogonalize(space: QuadSpace) -> Tuple[linalg.Matrix, Tuple[Fraction, ...]]:
    """
    Rational orthogonal basis by symmetric Gaussian elimination.

    Returns:
        (rows k_1..k_n in ambient coordinates, values phi[k_i])
    """
    n = space.n
    vecs = [list(row) for row in linalg.identity(n)]
    for i in range(n):
        j = next((j for j in range(i, n) if space.value(vecs[j]) != 0), None)
        if j is None:
            # All remaining diagonal values vanish: some pairing does not.
            j, k = next(
                (j, k) for j in range(i, n) for k in range(j + 1, n)
                if space.bilinear(vecs[j], vecs[k]) != 0
            )
            vecs[j] = [a + b for a, b in zip(vecs[j], vecs[k])]
        vecs[i], vecs[j] = vecs[j], vecs[i]
        ci = space.value(vecs[i])
        for k in range(i + 1, n):
            f = space.bilinear(vecs[k], vecs[i]) / ci
            if f:
                vecs[k] = [a - f * b for a, b in zip(vecs[k], vecs[i])]
    rows = tuple(tuple(v) for v in vecs)
    return rows, tuple(space.value(v) for v in rows)


def discriminant_class(space: QuadSpace) -> SquareClass:
    """delta = (-1)^{n(n-1)/2} det(phi) modulo squares."""
    n = space.n
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return SquareClass.of(sign * space.det())


def real_index(space: QuadSpace) -> int:
    """Number of positive minus number of negative diagonal values."""
    _, values = orthogonalize(space)
    return sum(1 if c > 0 else -1 for c in values)


def real_sign_condition(space: QuadSpace) -> bool:
    """
    Sign constraint tying the real index to delta:
    (-1)^{s/2} delta > 0 for n = 4 and (-1)^{(s-1)/2} delta > 0 for n = 3.
    """
    s = real_index(space)
    delta = discriminant_class(space).rep
    if space.n == 4:
        exponent = s // 2
    elif space.n == 3:
        exponent = (s - 1) // 2
    else:
        raise UnsupportedDimension(f"sign condition defined for n = 3, 4 (got {space.n})")
    return (-1) ** (exponent % 2) * delta > 0


class QuatClass:
    """
    A quaternion algebra over Q: a Hilbert pair (a, b) plus its ramification
    set. Equality is equality of ramification sets.
    """

    __slots__ = ('a', 'b', 'ram')

    def __init__(self, a, b, ram: Optional[Iterable[Place]] = None):
        self.a = to_rat(a)
        self.b = to_rat(b)
        if ram is None:
            ram = ramification(self.a, self.b)
        self.ram: Tuple[Place, ...] = tuple(sorted(set(ram), key=place_sort_key))

    @classmethod
    def of(cls, a, b) -> 'QuatClass':
        return cls(a, b)

    @classmethod
    def from_ramification(
        cls,
        ram: Iterable[Place],
        search_bound: int = PRESENTATION_SEARCH_BOUND
    ) -> 'QuatClass':
        """
        Finds a Hilbert pair for an even set of places by bounded search.

        Raises:
            PresentationNotFound: if the set is odd or the search is exhausted
        """
        target = tuple(sorted({check_place(v) for v in ram}, key=place_sort_key))
        if len(target) % 2:
            raise PresentationNotFound(f"ramification set {target} has odd cardinality")
        if not target:
            return cls(1, 1, ())
        d = 1
        for v in target:
            if v != INF:
                d *= v
        a_candidates = []
        for base in (d, 2 * d, 1, 2):
            for sign in (-1, 1):
                if sign * base not in a_candidates:
                    a_candidates.append(sign * base)
        b_candidates = [-1, 1, -2, 2]
        for ell in primerange(3, search_bound):
            b_candidates.extend((-ell, ell, -2 * ell, 2 * ell))
        for b in b_candidates:
            for a in a_candidates:
                if ramification(a, b) == target:
                    return cls(a, b, target)
        raise PresentationNotFound(
            f"no Hilbert pair found for {target} with primes below {search_bound}"
        )

    def is_split_at(self, v: Place) -> bool:
        return v not in self.ram

    def local_invariant(self, v: Place) -> int:
        return -1 if v in self.ram else 1

    def finite_ram(self) -> List[int]:
        return [v for v in self.ram if v != INF]

    def discriminant(self) -> RatIdeal:
        """D_B: product of the finite ramified primes."""
        return RatIdeal.from_factorization({p: 1 for p in self.finite_ram()})

    def __eq__(self, other) -> bool:
        return isinstance(other, QuatClass) and self.ram == other.ram

    def __hash__(self) -> int:
        return hash(self.ram)

    def __repr__(self) -> str:
        return f"QuatClass(a={self.a}, b={self.b}, ram={list(self.ram)})"


def ternary_class(psi: QuadSpace) -> QuatClass:
    """
    Q(psi) = (-c1 c2, -c1 c3) from an orthogonal basis.

    Raises:
        UnsupportedDimension: If psi is not ternary
    """
    if psi.n != 3:
        raise UnsupportedDimension(f"ternary_class needs n = 3 (got {psi.n})")
    _, (c1, c2, c3) = orthogonalize(psi)
    return QuatClass.of(-c1 * c2, -c1 * c3)


def _default_h(phi: QuadSpace) -> linalg.Row:
    rows, _ = orthogonalize(phi)
    return rows[-1]


def quaternary_class(phi: QuadSpace, h: Optional[Sequence] = None) -> QuatClass:
    """
    Q(phi) from the Brauer relation M_2(Q(phi)) = Q(psi) (x) {K, q}, using the
    complement of h (default: last vector of an orthogonalization).

    Args:
        phi: Nondegenerate quaternary space
        h: Anisotropic vector whose complement is used

    Returns:
        QuatClass: Q(phi), the same for every anisotropic h

    Raises:
        UnsupportedDimension: If phi is not quaternary
        IsotropicVector: If phi[h] = 0
    """
    if phi.n != 4:
        raise UnsupportedDimension(f"quaternary_class needs n = 4 (got {phi.n})")
    h = _default_h(phi) if h is None else tuple(to_rat(x) for x in h)
    w_basis, psi_gram = complement_basis(phi, h)
    psi_class = ternary_class(QuadSpace(psi_gram))
    q = phi.value(h)
    delta = discriminant_class(phi).rep
    places = relevant_places(psi_class.a, psi_class.b, delta, q)
    ram = [
        v for v in places
        if psi_class.local_invariant(v) * hilbert_symbol(delta, q, v) == -1
    ]
    return QuatClass.from_ramification(ram)


def quadratic_field_disc(delta: SquareClass) -> RatIdeal:
    """Discriminant of Q(sqrt(delta)) as an ideal of Z."""
    d = delta.rep
    if d == 1:
        return RatIdeal.unit()
    if d % 4 == 1:
        return RatIdeal.of(abs(d))
    return RatIdeal.of(4 * abs(d))


def core_dimension(space: QuadSpace, p: int, q_class: Optional[QuatClass] = None) -> int:
    """
    Dimension of the anisotropic kernel of the form over Q_p.

    n = 4: 0 or 4 when delta is a local square (4 iff p ramifies in Q(phi)),
    otherwise 2. n = 3: 3 iff p ramifies in Q(psi), otherwise 1.
    """
    check_place(p)
    if space.n == 4:
        q_class = q_class or quaternary_class(space)
        if is_local_square(discriminant_class(space).rep, p):
            return 4 if p in q_class.ram else 0
        return 2
    if space.n == 3:
        q_class = q_class or ternary_class(space)
        return 3 if p in q_class.ram else 1
    raise UnsupportedDimension(f"core dimension defined for n = 3, 4 (got {space.n})")


def real_char_class(s: int) -> str:
    """Q(phi) at the real place: division iff s = +-3, 4, 6 mod 8."""
    return DIVISION if s % 8 in (3, 4, 5, 6) else SPLIT


def _e_ideal(disc_field: RatIdeal, q_class: QuatClass) -> RatIdeal:
    ramified_in_k = set(disc_field.primes())
    return RatIdeal.from_factorization(
        {p: 1 for p in q_class.finite_ram() if p not in ramified_in_k}
    )


def quaternary_disc_ideal(delta: SquareClass, q_class: QuatClass) -> RatIdeal:
    """[L~/L] for maximal L: D_{K/Q} e^2."""
    d_k = quadratic_field_disc(delta)
    return d_k * _e_ideal(d_k, q_class) ** 2


def ternary_disc_ideal(delta_phi: SquareClass, q, d_psi: RatIdeal) -> RatIdeal:
    """[M~/M] for maximal M in the complement: (2 a^-1 D_psi^2) cap (2 a), delta q = a b^2."""
    a, _ = squarefree_split(delta_phi.rep * to_rat(q))
    two = RatIdeal.of(2)
    return (two / a * d_psi ** 2) & (two * a)


def b_ideal(q, disc_l: RatIdeal, disc_m: RatIdeal) -> RatIdeal:
    """
    b(q) with 2q[L~/L] = b(q)^2 [M~/M].

    Raises:
        NotASquare: if the quotient has an odd valuation
    """
    return (RatIdeal.of(2 * to_rat(q)) * disc_l / disc_m).sqrt()


def cha_case(
    delta: SquareClass,
    q,
    ram_b: Iterable[Place],
    v: Place,
    s_phi: int
) -> str:
    """
    Splitting of Q(psi) at v read off from delta, q, the ramification of
    Q(phi) and the real index of phi.

    Args:
        delta: Discriminant class of phi
        q: phi[h] as an int, Fraction or 'p/q' string
        ram_b: Ramified places of Q(phi)
        v: A rational prime or INF
        s_phi: Real index of phi

    Returns:
        str: SPLIT or DIVISION

    Raises:
        InvalidPlace: If v is neither a prime nor INF
        TypeError: If q is a float
    """
    v = check_place(v)
    q = to_rat(q)
    ram_b = set(ram_b)
    if v == INF:
        split_indices = (0, 2) if q > 0 else (0, -2)
        return SPLIT if s_phi in split_indices else DIVISION
    if is_local_square(delta.rep, v):
        return SPLIT if v not in ram_b else DIVISION
    norm = is_local_norm(q, delta.rep, v)
    if (v not in ram_b and norm) or (v in ram_b and not norm):
        return SPLIT
    return DIVISION


def complement_index(s_phi: int, q) -> int:
    """s(psi) = s(phi) - sign(q)."""
    q = to_rat(q)
    if q == 0:
        raise ValueError("q must be nonzero")
    return s_phi - (1 if q > 0 else -1)


@dataclass(frozen=True)
class SpaceInvariants:
    """n, delta, D_{K/Q}, Q, s_inf; core dimensions on demand."""
    space: QuadSpace
    n: int
    delta: SquareClass
    disc_field_disc: RatIdeal
    q_class: QuatClass
    s_inf: int

    def core_dimension(self, p: int) -> int:
        return core_dimension(self.space, p, self.q_class)

    def core_dims(self, primes: Iterable[int]) -> dict:
        return {p: self.core_dimension(p) for p in primes}


def space_invariants(space: QuadSpace) -> SpaceInvariants:
    """
    Collects the invariants of a ternary or quaternary space.

    Args:
        space: Nondegenerate space with n = 3 or n = 4

    Returns:
        SpaceInvariants: delta, the discriminant of Q(sqrt(delta)), the
        quaternion class and the real index

    Raises:
        UnsupportedDimension: If n is not 3 or 4
        PresentationNotFound: If no Hilbert pair is found for Q(phi)
    """
    if space.n == 4:
        q_class = quaternary_class(space)
    elif space.n == 3:
        q_class = ternary_class(space)
    else:
        raise UnsupportedDimension(f"invariants defined for n = 3, 4 (got {space.n})")
    delta = discriminant_class(space)
    return SpaceInvariants(
        space=space,
        n=space.n,
        delta=delta,
        disc_field_disc=quadratic_field_disc(delta),
        q_class=q_class,
        s_inf=real_index(space),
    )


def e_from_core_dims(inv: SpaceInvariants) -> RatIdeal:
    """
    e read from core dimensions: p | e iff t_p = 4, or t_p = 2 with p
    unramified in K and ramified in Q(phi).
    """
    ramified_in_k = set(inv.disc_field_disc.primes())
    primes = set(inv.q_class.finite_ram()) | ramified_in_k
    chosen = {}
    for p in primes:
        t = inv.core_dimension(p)
        if t == 4 or (t == 2 and p not in ramified_in_k and p in inv.q_class.ram):
            chosen[p] = 1
    return RatIdeal.from_factorization(chosen)


def e_ideal(inv: SpaceInvariants) -> RatIdeal:
    return _e_ideal(inv.disc_field_disc, inv.q_class)

