"""
Exact numeric kernel.
Rationals, trial-division factorization, fractional ideals of Z, square classes
and the local symbols (Hilbert symbol, local squares, local norms).
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union
import logging

from sympy import isprime, legendre_symbol, sieve

from src.quadlat.config.config import Config
from src.quadlat.utils.error_handlers import (
    FactorBoundExceeded,
    InvalidPlace,
    NotASquare,
)

logger = logging.getLogger(__name__)

Rat = Fraction
Place = Union[int, str]

INF = 'inf'


def to_rat(value) -> Fraction:
    """
    Converts an int, Fraction or 'p/q' string to a reduced Fraction.

    Floats are rejected: they cannot represent the inputs exactly.
    """
    if isinstance(value, float):
        raise TypeError(f"refusing inexact float value {value!r}")
    return Fraction(value)


def check_place(v: Place) -> Place:
    """
    Validates a place: a rational prime or the real place INF.

    Raises:
        InvalidPlace: if v is neither
    """
    if v == INF:
        return INF
    if isinstance(v, bool) or not isinstance(v, int) or not isprime(v):
        raise InvalidPlace(f"{v!r} is neither a rational prime nor the real place")
    return v


def place_sort_key(v: Place) -> Tuple[int, int]:
    """Sorts primes ascending, the real place last."""
    return (1, 0) if v == INF else (0, v)


def format_place(v: Place) -> Union[int, str]:
    return 'inf' if v == INF else v


# ---------------------------------------------------------------------------
# Factorization
# ---------------------------------------------------------------------------

@lru_cache(maxsize=8192)
def _factor_int(n: int, bound: int) -> Tuple[Tuple[int, int], ...]:
    exps: Dict[int, int] = {}
    for p in sieve.primerange(2, bound + 1):
        if p * p > n:
            break
        while n % p == 0:
            exps[p] = exps.get(p, 0) + 1
            n //= p
    if n > 1:
        if n > bound * bound:
            raise FactorBoundExceeded(
                f"cofactor {n} exceeds the trial-division bound {bound}^2"
            )
        exps[n] = exps.get(n, 0) + 1
    return tuple(sorted(exps.items()))


def factor(n, bound: Optional[int] = None) -> Dict[int, int]:
    """
    Signed-exponent factorization of |n| for a nonzero rational n.

    Args:
        n: Nonzero rational (int, Fraction or 'p/q' string)
        bound: Trial-division bound (default: Config.FACTOR_BOUND)

    Returns:
        Dict mapping prime -> nonzero exponent

    Raises:
        FactorBoundExceeded: If a residual cofactor > bound^2 survives
        ValueError: If n is zero
    """
    x = to_rat(n)
    if x == 0:
        raise ValueError("cannot factor zero")
    bound = Config.FACTOR_BOUND if bound is None else bound
    result = dict(_factor_int(abs(x.numerator), bound))
    for p, e in _factor_int(x.denominator, bound):
        result[p] = result.get(p, 0) - e
    return result


def valuation(x, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    x = to_rat(x)
    if x == 0:
        raise ValueError("valuation of zero is infinite")
    v = 0
    num, den = abs(x.numerator), x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def rat_gcd(values: Iterable) -> Fraction:
    """
    Positive generator of the Z-module spanned by rationals.
    Zero if every value is zero.
    """
    nums = 0
    dens = 1
    for value in values:
        x = to_rat(value)
        if x == 0:
            continue
        nums = gcd(nums, x.numerator)
        dens = dens * x.denominator // gcd(dens, x.denominator)
    return Fraction(abs(nums), dens)


# ---------------------------------------------------------------------------
# Fractional ideals of Z
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RatIdeal:
    """
    A fractional ideal of Z, stored as its positive rational generator plus
    the factorization of that generator.
    """
    generator: Fraction
    factorization: Tuple[Tuple[int, int], ...] = field(repr=False)

    @classmethod
    def of(cls, x, bound: Optional[int] = None) -> 'RatIdeal':
        """Ideal x*Z for a nonzero rational x (sign discarded)."""
        x = abs(to_rat(x))
        if x == 0:
            raise ValueError("the zero ideal is not a fractional ideal")
        return cls(x, tuple(sorted(factor(x, bound).items())))

    @classmethod
    def unit(cls) -> 'RatIdeal':
        return cls(Fraction(1), ())

    @classmethod
    def from_factorization(cls, exps: Dict[int, int]) -> 'RatIdeal':
        gen = Fraction(1)
        clean = {}
        for p, e in exps.items():
            if e:
                clean[p] = e
                gen *= Fraction(p) ** e
        return cls(gen, tuple(sorted(clean.items())))

    def exponents(self) -> Dict[int, int]:
        return dict(self.factorization)

    def valuation(self, p: int) -> int:
        return self.exponents().get(p, 0)

    def primes(self) -> List[int]:
        return [p for p, _ in self.factorization]

    def is_integral(self) -> bool:
        return all(e > 0 for _, e in self.factorization)

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factorization)

    def divides(self, other: 'RatIdeal') -> bool:
        """True iff other is contained in self."""
        return (other / self).is_integral()

    def _combine(self, other: 'RatIdeal', op) -> 'RatIdeal':
        a, b = self.exponents(), other.exponents()
        return RatIdeal.from_factorization(
            {p: op(a.get(p, 0), b.get(p, 0)) for p in set(a) | set(b)}
        )

    def __mul__(self, other: 'RatIdeal') -> 'RatIdeal':
        return self._combine(other, lambda x, y: x + y)

    def __truediv__(self, other: 'RatIdeal') -> 'RatIdeal':
        return self._combine(other, lambda x, y: x - y)

    def __add__(self, other: 'RatIdeal') -> 'RatIdeal':
        # Sum of ideals: gcd, valuationwise min.
        return self._combine(other, min)

    def __and__(self, other: 'RatIdeal') -> 'RatIdeal':
        # Intersection: lcm, valuationwise max.
        return self._combine(other, max)

    def __pow__(self, k: int) -> 'RatIdeal':
        return RatIdeal.from_factorization({p: e * k for p, e in self.factorization})

    def sqrt(self) -> 'RatIdeal':
        """
        The unique ideal whose square is self.

        Raises:
            NotASquare: if some valuation is odd
        """
        odd = [p for p, e in self.factorization if e % 2]
        if odd:
            raise NotASquare(f"ideal {self} has odd valuation at {odd}")
        return RatIdeal.from_factorization({p: e // 2 for p, e in self.factorization})

    def __str__(self) -> str:
        return str(self.generator)


def squarefree_split(x, bound: Optional[int] = None) -> Tuple[RatIdeal, RatIdeal]:
    """
    Splits |x|Z = a * r^2 with a squarefree and integral.

    Returns:
        (a, r)
    """
    exps = factor(x, bound)
    a = {p: e % 2 for p, e in exps.items()}
    r = {p: (e - e % 2) // 2 for p, e in exps.items()}
    return RatIdeal.from_factorization(a), RatIdeal.from_factorization(r)


# ---------------------------------------------------------------------------
# Square classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SquareClass:
    """Class of a nonzero rational modulo squares, by squarefree representative."""
    rep: int

    @classmethod
    def of(cls, x, bound: Optional[int] = None) -> 'SquareClass':
        x = to_rat(x)
        if x == 0:
            raise ValueError("zero has no square class")
        sign = -1 if x < 0 else 1
        rep = sign
        for p, e in factor(x, bound).items():
            if e % 2:
                rep *= p
        return cls(rep)

    def is_square(self) -> bool:
        return self.rep == 1

    def __mul__(self, other: 'SquareClass') -> 'SquareClass':
        return SquareClass.of(self.rep * other.rep)

    def __int__(self) -> int:
        return self.rep

    def __str__(self) -> str:
        return str(self.rep)


def is_rational_square(x) -> bool:
    x = to_rat(x)
    return x > 0 and SquareClass.of(x).is_square()


# ---------------------------------------------------------------------------
# Local symbols
# ---------------------------------------------------------------------------

def _as_integer(x: Fraction) -> int:
    # num*den lies in the square class of num/den
    return x.numerator * x.denominator


def _unit_split(n: int, p: int) -> Tuple[int, int]:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def hilbert_symbol(a, b, v: Place) -> int:
    """
    Hilbert symbol (a, b)_v.

    Returns +1 iff z^2 = a x^2 + b y^2 has a nontrivial solution over Q_v.
    """
    a, b = to_rat(a), to_rat(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    v = check_place(v)
    if v == INF:
        return -1 if a < 0 and b < 0 else 1

    alpha, u = _unit_split(_as_integer(a), v)
    beta, w = _unit_split(_as_integer(b), v)

    if v == 2:
        def eps(t: int) -> int:
            return ((t - 1) // 2) % 2

        def omega(t: int) -> int:
            return ((t * t - 1) // 8) % 2

        u8, w8 = u % 8, w % 8
        e = eps(u8) * eps(w8) + alpha * omega(w8) + beta * omega(u8)
        return -1 if e % 2 else 1

    sign = -1 if (alpha * beta * ((v - 1) // 2)) % 2 else 1
    lu = legendre_symbol(u % v, v)
    lw = legendre_symbol(w % v, v)
    return sign * (lu ** (beta % 2)) * (lw ** (alpha % 2))


def is_local_square(a, v: Place) -> bool:
    """True iff a is a square in Q_v."""
    a = to_rat(a)
    if a == 0:
        raise ValueError("zero is excluded")
    v = check_place(v)
    if v == INF:
        return a > 0
    val, u = _unit_split(_as_integer(a), v)
    if val % 2:
        return False
    if v == 2:
        return u % 8 == 1
    return legendre_symbol(u % v, v) == 1


def is_local_norm(q, delta, v: Place) -> bool:
    """True iff q is a norm from Q_v(sqrt(delta))."""
    if is_local_square(delta, v):
        return True
    return hilbert_symbol(q, delta, v) == 1


def relevant_places(*values) -> List[Place]:
    """
    Places where a Hilbert symbol of the given values can be -1:
    the real place, 2, and every prime dividing a numerator or denominator.
    """
    primes = {2}
    for value in values:
        x = to_rat(value)
        primes.update(factor(x).keys())
    return sorted(primes) + [INF]


def ramification(a, b, extra: Sequence = ()) -> Tuple[Place, ...]:
    """Places v with (a, b)_v = -1, primes ascending then INF."""
    return tuple(
        v for v in relevant_places(a, b, *extra) if hilbert_symbol(a, b, v) == -1
    )
