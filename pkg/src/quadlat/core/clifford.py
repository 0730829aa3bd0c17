"""
Clifford algebras over Q and their orders.

Basis words are strictly increasing index tuples ordered by (grade, word);
the product table is derived once per algebra from e_i e_j + e_j e_i =
2 phi(e_i, e_j). For a ternary space the even part is a quaternion algebra,
identified with W through x -> x xi, xi = k1 k2 k3 for an orthogonal basis.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple
import logging

from src.quadlat.config.config import Config
from src.quadlat.core import linalg
from src.quadlat.core.exactnum import RatIdeal, to_rat
from src.quadlat.core.invariants import orthogonalize
from src.quadlat.core.qspace import (
    Lattice,
    QuadSpace,
    dual,
    index_ideal,
    intersect_with_subspace,
    is_integral,
)
from src.quadlat.utils.error_handlers import (
    ClosureDiverged,
    NotInOddPart,
    NotIntegral,
    NotInvertible,
    UnsupportedDimension,
)

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]

MAX_GENERATORS = 4


@dataclass(frozen=True)
class CliffordElt:
    """Coefficient vector over the basis words of its algebra."""
    coeffs: Tuple[Fraction, ...]

    def __add__(self, other: 'CliffordElt') -> 'CliffordElt':
        return CliffordElt(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: 'CliffordElt') -> 'CliffordElt':
        return CliffordElt(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> 'CliffordElt':
        return CliffordElt(tuple(-a for a in self.coeffs))

    def scaled(self, c) -> 'CliffordElt':
        c = to_rat(c)
        return CliffordElt(tuple(c * a for a in self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)


class CliffordAlg:
    """
    The Clifford algebra A(V) of a quadratic space of dimension <= 4.
    """

    def __init__(self, space: QuadSpace):
        if space.n > MAX_GENERATORS:
            raise UnsupportedDimension(f"Clifford algebras supported for n <= 4 (got {space.n})")
        self.space = space
        self.n = space.n
        self.gram = space.gram
        self.words: List[Word] = [
            w for k in range(self.n + 1) for w in combinations(range(self.n), k)
        ]
        self.index: Dict[Word, int] = {w: i for i, w in enumerate(self.words)}
        self.dim = len(self.words)
        self._memo: Dict[Tuple[Word, int], Dict[Word, Fraction]] = {}
        self._table = [
            [self._word_product(a, b) for b in self.words] for a in self.words
        ]
        self._reversed = [self._word_reversed(w) for w in self.words]
        self._memo.clear()
        self.even_indices = [i for i, w in enumerate(self.words) if len(w) % 2 == 0]
        self.odd_indices = [i for i, w in enumerate(self.words) if len(w) % 2 == 1]

    # -- structure constants -------------------------------------------------

    def _times_generator(self, word: Word, j: int) -> Dict[Word, Fraction]:
        key = (word, j)
        if key in self._memo:
            return self._memo[key]
        result: Dict[Word, Fraction] = {}

        def add(w: Word, c: Fraction) -> None:
            total = result.get(w, Fraction(0)) + c
            if total:
                result[w] = total
            else:
                result.pop(w, None)

        if not word:
            add((j,), Fraction(1))
        else:
            last, head = word[-1], word[:-1]
            if last < j:
                add(word + (j,), Fraction(1))
            elif last == j:
                add(head, self.gram[j][j])
            else:
                # e_last e_j = 2 phi(e_last, e_j) - e_j e_last
                pairing = 2 * self.gram[last][j]
                if pairing:
                    add(head, pairing)
                for w, c in self._times_generator(head, j).items():
                    for w2, c2 in self._times_generator(w, last).items():
                        add(w2, -c * c2)
        self._memo[key] = result
        return result

    def _fold(self, start: Dict[Word, Fraction], letters: Sequence[int]) -> Dict[int, Fraction]:
        current = start
        for j in letters:
            nxt: Dict[Word, Fraction] = {}
            for w, c in current.items():
                for w2, c2 in self._times_generator(w, j).items():
                    nxt[w2] = nxt.get(w2, Fraction(0)) + c * c2
            current = {w: c for w, c in nxt.items() if c}
        return {self.index[w]: c for w, c in current.items()}

    def _word_product(self, a: Word, b: Word) -> Dict[int, Fraction]:
        return self._fold({a: Fraction(1)}, b)

    def _word_reversed(self, w: Word) -> Dict[int, Fraction]:
        return self._fold({(): Fraction(1)}, tuple(reversed(w)))

    # -- elements ------------------------------------------------------------

    def zero(self) -> CliffordElt:
        return CliffordElt((Fraction(0),) * self.dim)

    def basis_element(self, i: int, c=1) -> CliffordElt:
        coeffs = [Fraction(0)] * self.dim
        coeffs[i] = to_rat(c)
        return CliffordElt(tuple(coeffs))

    def unit(self) -> CliffordElt:
        return self.basis_element(0)

    def word(self, w: Sequence[int]) -> CliffordElt:
        return self.basis_element(self.index[tuple(w)])

    def vector(self, coords: Sequence) -> CliffordElt:
        """Embeds a vector of V (coordinates on e_1..e_n)."""
        coeffs = [Fraction(0)] * self.dim
        for i, x in enumerate(coords):
            coeffs[self.index[(i,)]] = to_rat(x)
        return CliffordElt(tuple(coeffs))

    def element(self, coeffs: Sequence) -> CliffordElt:
        if len(coeffs) != self.dim:
            raise ValueError(f"expected {self.dim} coefficients, got {len(coeffs)}")
        return CliffordElt(tuple(to_rat(x) for x in coeffs))

    def multiply(self, x: CliffordElt, y: CliffordElt) -> CliffordElt:
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(x.coeffs):
            if not a:
                continue
            row = self._table[i]
            for j, b in enumerate(y.coeffs):
                if not b:
                    continue
                ab = a * b
                for k, c in row[j].items():
                    out[k] += ab * c
        return CliffordElt(tuple(out))

    def product(self, *factors: CliffordElt) -> CliffordElt:
        result = self.unit()
        for f in factors:
            result = self.multiply(result, f)
        return result

    def involute(self, x: CliffordElt) -> CliffordElt:
        """The canonical involution: reverses every basis word."""
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(x.coeffs):
            if a:
                for k, c in self._reversed[i].items():
                    out[k] += a * c
        return CliffordElt(tuple(out))

    def scalar_part(self, x: CliffordElt) -> Fraction:
        return x.coeffs[0]

    def vector_part(self, x: CliffordElt) -> Tuple[Fraction, ...]:
        return tuple(x.coeffs[self.index[(i,)]] for i in range(self.n))

    def is_even(self, x: CliffordElt) -> bool:
        return not any(x.coeffs[i] for i in self.odd_indices)

    def even_coords(self, x: CliffordElt) -> Tuple[Fraction, ...]:
        return tuple(x.coeffs[i] for i in self.even_indices)

    def from_even_coords(self, coords: Sequence) -> CliffordElt:
        coeffs = [Fraction(0)] * self.dim
        for i, x in zip(self.even_indices, coords):
            coeffs[i] = to_rat(x)
        return CliffordElt(tuple(coeffs))

    def even_unit_rows(self) -> linalg.Matrix:
        """Unit coordinate rows of the even words inside A(V)."""
        return tuple(self.basis_element(i).coeffs for i in self.even_indices)

    # -- forms on the even part ----------------------------------------------

    def norm(self, x: CliffordElt) -> Fraction:
        """nu[x] = x x* (scalar part)."""
        return self.scalar_part(self.multiply(x, self.involute(x)))

    def nu_bilinear(self, x: CliffordElt, y: CliffordElt) -> Fraction:
        """nu(x, y) with 2 nu(x, y) = x y* + y x*."""
        s = self.multiply(x, self.involute(y)) + self.multiply(y, self.involute(x))
        return self.scalar_part(s) / 2

    def trace_form(self, x: CliffordElt, y: CliffordElt) -> Fraction:
        """
        Reduced trace of x y*, computed as half the trace of left
        multiplication on the even part.
        """
        z = self.multiply(x, self.involute(y))
        total = Fraction(0)
        for i in self.even_indices:
            total += self.multiply(z, self.basis_element(i)).coeffs[i]
        return total / 2

    def inverse_even(self, alpha: CliffordElt) -> CliffordElt:
        """
        alpha^-1 = alpha* / nu[alpha] in a quaternion even part.

        Raises:
            NotInvertible: if nu[alpha] = 0
        """
        nu = self.norm(alpha)
        if nu == 0:
            raise NotInvertible("element has norm zero")
        return self.involute(alpha).scaled(1 / nu)


@dataclass(frozen=True)
class CliffordOrder:
    """A Z-lattice of coefficient vectors closed under multiplication."""
    module: Lattice
    contains_one: bool
    alg: CliffordAlg = field(compare=False, repr=False, hash=False)

    @property
    def rank(self) -> int:
        return self.module.rank

    def elements(self) -> List[CliffordElt]:
        return [CliffordElt(row) for row in self.module.basis]

    def even_lattice(self) -> Lattice:
        """The module in even-word coordinates (for orders in the even part)."""
        return self.module.in_basis(self.alg.even_unit_rows())

    def __eq__(self, other) -> bool:
        return isinstance(other, CliffordOrder) and self.module == other.module

    def __hash__(self) -> int:
        return hash(self.module)


def generated_order(
    lat: Lattice,
    alg: CliffordAlg,
    max_rounds: Optional[int] = None
) -> CliffordOrder:
    """
    A(N): the subring generated by Z and N, by multiplicative closure.

    Raises:
        NotIntegral: if N is not integral
        ClosureDiverged: if the module has not stabilized after max_rounds
    """
    if not is_integral(lat, alg.space):
        raise NotIntegral("A(N) is an order only for integral N")
    max_rounds = Config.CLOSURE_MAX_ROUNDS if max_rounds is None else max_rounds
    gens = [alg.vector(b) for b in lat.basis]
    module = Lattice.from_generators([alg.unit().coeffs], dim=alg.dim)
    for round_no in range(1, max_rounds + 1):
        products = [
            alg.multiply(CliffordElt(b), g).coeffs for b in module.basis for g in gens
        ]
        grown = Lattice.from_generators(list(module.basis) + products, dim=alg.dim)
        if grown == module:
            logger.debug(f"closure stable after {round_no} rounds, rank {module.rank}")
            return CliffordOrder(module, True, alg)
        module = grown
    raise ClosureDiverged(f"closure did not stabilize within {max_rounds} rounds")


def even_order(
    lat: Lattice,
    alg: CliffordAlg,
    max_rounds: Optional[int] = None
) -> CliffordOrder:
    """A+(N) = A+(V) cap A(N)."""
    full = generated_order(lat, alg, max_rounds)
    rows = alg.even_unit_rows()
    even = intersect_with_subspace(full.module, rows).embed(rows)
    return CliffordOrder(even, True, alg)


def conjugate_order(order: CliffordOrder, alpha: CliffordElt) -> CliffordOrder:
    """alpha^-1 o alpha."""
    alg = order.alg
    inv = alg.inverse_even(alpha)
    images = [alg.product(inv, x, alpha).coeffs for x in order.elements()]
    return CliffordOrder(Lattice.from_generators(images, dim=alg.dim), order.contains_one, alg)


# ---------------------------------------------------------------------------
# Quaternion structure of a ternary even Clifford algebra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuatStructure:
    host: CliffordAlg = field(compare=False, repr=False)
    xi: CliffordElt
    xi_norm: Fraction
    even_basis: Tuple[CliffordElt, ...]
    odd_part_rows: linalg.Matrix
    odd_part_basis: Tuple[CliffordElt, ...]
    nu_gram: linalg.Matrix

    @property
    def nu_space(self) -> QuadSpace:
        return QuadSpace(self.nu_gram)


def quaternionize(w_space: QuadSpace) -> QuatStructure:
    """
    xi, xi xi*, the trace-zero part A+(W)o and the norm Gram of A+(W)
    for a ternary space.
    """
    if w_space.n != 3:
        raise UnsupportedDimension(f"quaternionize needs n = 3 (got {w_space.n})")
    host = CliffordAlg(w_space)
    rows, values = orthogonalize(w_space)
    xi = host.product(*(host.vector(r) for r in rows))
    xi_norm = values[0] * values[1] * values[2]

    even_basis = tuple(host.basis_element(i) for i in host.even_indices)
    # y* + y on even coordinates; its left kernel is the trace-zero part
    trace_map = [host.even_coords(host.involute(b) + b) for b in even_basis]
    kernel = linalg.integer_left_kernel(trace_map)
    odd_rows = tuple(tuple(Fraction(x) for x in row) for row in kernel)
    odd_basis = tuple(host.from_even_coords(r) for r in odd_rows)
    nu_gram = tuple(
        tuple(host.nu_bilinear(a, b) for b in even_basis) for a in even_basis
    )
    return QuatStructure(
        host=host,
        xi=xi,
        xi_norm=xi_norm,
        even_basis=even_basis,
        odd_part_rows=odd_rows,
        odd_part_basis=odd_basis,
        nu_gram=nu_gram,
    )


def xi_map(x: Sequence, quat: QuatStructure) -> CliffordElt:
    """x -> x xi for x in W-coordinates."""
    return quat.host.multiply(quat.host.vector(x), quat.xi)


def xi_unmap(y: CliffordElt, quat: QuatStructure) -> Tuple[Fraction, ...]:
    """
    Inverse of xi_map: y xi* / (xi xi*).

    Raises:
        NotInOddPart: if y* != -y or y is not in the image
    """
    host = quat.host
    if host.involute(y) != -y or not host.is_even(y):
        raise NotInOddPart("element is not in the trace-zero even part")
    x = host.multiply(y, host.involute(quat.xi)).scaled(1 / quat.xi_norm)
    coords = host.vector_part(x)
    if x != host.vector(coords):
        raise NotInOddPart("element does not come from a vector of W")
    return coords


def odd_part_coordinates(y: CliffordElt, quat: QuatStructure) -> Optional[Tuple[Fraction, ...]]:
    """Coordinates of y on odd_part_basis; None if y is outside A+(W)o."""
    host = quat.host
    if not host.is_even(y):
        return None
    return linalg.solve_left(quat.odd_part_rows, host.even_coords(y))


def order_dual(order: CliffordOrder, quat: QuatStructure) -> Lattice:
    """{x in A+(W) : 2 nu(x, o) in Z}, in even-word coordinates."""
    lat = order.even_lattice()
    if lat.rank != 4:
        raise UnsupportedDimension(f"order dual needs a rank-4 order (got rank {lat.rank})")
    return dual(lat, quat.nu_space)


def order_discriminant(order: CliffordOrder, quat: QuatStructure) -> RatIdeal:
    """
    d(o) with [o~/o] = d(o)^2.

    Raises:
        NotASquare: if [o~/o] is not a square (not an order)
    """
    return index_ideal(order_dual(order, quat), order.even_lattice()).sqrt()


def tau_conjugate(alpha: CliffordElt, x: CliffordElt, alg: CliffordAlg) -> CliffordElt:
    """
    alpha^-1 x alpha.

    Raises:
        NotInvertible: if nu[alpha] = 0
    """
    return alg.product(alg.inverse_even(alpha), x, alpha)
