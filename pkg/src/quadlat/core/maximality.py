"""
Maximal integral lattices.

An integral lattice L is enlarged at p by adjoining v/p for a vector v of L
that pairs into pZ with all of L and has phi[v] in p^2 Z. L is maximal iff
no such v exists at any prime whose square divides [L~/L].
"""
from fractions import Fraction
from itertools import product
from typing import Iterator, List, Optional
import logging

from src.quadlat.core import linalg
from src.quadlat.core.exactnum import factor, valuation
from src.quadlat.core.qspace import Lattice, QuadSpace, dual, index_ideal, is_integral, scale
from src.quadlat.utils.error_handlers import NotIntegral

logger = logging.getLogger(__name__)


def _projective_points(basis: List[List[int]], p: int) -> Iterator[List[int]]:
    """Representatives of the projective points of the F_p-span of basis."""
    k = len(basis)
    n = len(basis[0]) if k else 0
    for lead in range(k):
        for tail in product(range(p), repeat=k - lead - 1):
            coeffs = [0] * lead + [1] + list(tail)
            yield [sum(c * b[j] for c, b in zip(coeffs, basis)) % p for j in range(n)]


def enlarge_at(lat: Lattice, space: QuadSpace, p: int) -> Optional[Lattice]:
    """
    L + Z v/p for the first admissible v found at p, or None.
    """
    gram = space.gram_of(lat.basis)
    r = len(gram)
    two_gram = [[int(2 * gram[i][j]) for j in range(r)] for i in range(r)]
    kernel = linalg.left_kernel_mod_p(two_gram, p)
    if not kernel:
        return None
    p2 = p * p
    for c in _projective_points(kernel, p):
        value = sum(
            c[i] * c[j] * (gram[i][j] if i == j else 2 * gram[i][j])
            for i in range(r) for j in range(i, r)
        )
        if value % p2 == 0:
            v = linalg.vecmat(c, lat.basis)
            logger.debug(f"enlarging at p={p} by {[str(x) for x in v]}/p")
            return Lattice.from_generators(
                list(lat.basis) + [tuple(x / p for x in v)], dim=lat.dim
            )
    return None


def discriminant_ideal(lat: Lattice, space: QuadSpace):
    """[L~/L]."""
    return index_ideal(dual(lat, space), lat)


def candidate_primes(lat: Lattice, space: QuadSpace) -> List[int]:
    """Primes with valuation >= 2 in [L~/L]."""
    return [p for p, e in discriminant_ideal(lat, space).factorization if e >= 2]


def _require_integral(lat: Lattice, space: QuadSpace) -> None:
    if not is_integral(lat, space):
        raise NotIntegral("lattice is not integral with respect to the form")


def is_maximal(lat: Lattice, space: QuadSpace) -> bool:
    """
    Raises:
        NotIntegral: if the lattice is not integral
    """
    _require_integral(lat, space)
    return all(enlarge_at(lat, space, p) is None for p in candidate_primes(lat, space))


def maximalize(lat: Lattice, space: QuadSpace) -> Lattice:
    """
    Enlarges an integral lattice until no prime admits an enlargement.

    Raises:
        NotIntegral: if the lattice is not integral
    """
    _require_integral(lat, space)
    steps = 0
    while True:
        for p in candidate_primes(lat, space):
            bigger = enlarge_at(lat, space, p)
            if bigger is not None:
                lat = bigger
                steps += 1
                break
        else:
            logger.debug(f"maximalized after {steps} enlargements")
            return lat


def integral_scaling(space: QuadSpace) -> Fraction:
    """
    Smallest positive c with c Z^n integral: v_p(c) = ceil(-m_p / 2), m_p the
    least valuation among phi[e_i] and 2 phi(e_i, e_j).
    """
    n = space.n
    entries = [space.gram[i][i] for i in range(n)]
    entries += [2 * space.gram[i][j] for i in range(n) for j in range(i)]
    entries = [x for x in entries if x != 0]
    primes = set()
    for x in entries:
        for part in (x.numerator, x.denominator):
            if abs(part) > 1:
                primes.update(factor(part).keys())
    c = Fraction(1)
    for p in primes:
        m = min(valuation(x, p) for x in entries)
        c *= Fraction(p) ** (-(m // 2))
    return c


def maximal_lattice(space: QuadSpace) -> Lattice:
    """A maximal lattice: maximalize the smallest integral scaling of Z^n."""
    start = scale(integral_scaling(space), Lattice.standard(space.n))
    return maximalize(start, space)
