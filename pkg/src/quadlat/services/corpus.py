"""
Seeded random corpora of quaternary instances.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple
import logging
import random

from src.quadlat.core import linalg
from src.quadlat.core.exactnum import factor
from src.quadlat.core.qspace import Lattice
from src.quadlat.utils.error_handlers import FactorBoundExceeded

logger = logging.getLogger(__name__)

# Multipliers applied to h: halves leave L, doubles and triples are non-primitive.
H_VARIANTS = (Fraction(1), Fraction(1), Fraction(1), Fraction(1, 2), Fraction(2), Fraction(3))
H_ENTRY_BOUND = 2


@dataclass(frozen=True)
class CorpusEntry:
    """One instance to verify: a Gram matrix, h, and optionally a lattice."""
    gram: linalg.Matrix
    h: Tuple[Fraction, ...]
    lattice: Optional[Lattice] = None


def _is_smooth(x: Fraction, max_prime: int) -> bool:
    try:
        return all(p <= max_prime for p in factor(x))
    except FactorBoundExceeded:
        return False


def _random_gram(rng: random.Random, max_entry: int) -> linalg.Matrix:
    g = [[Fraction(0)] * 4 for _ in range(4)]
    for i in range(4):
        g[i][i] = Fraction(rng.randint(-max_entry, max_entry))
        for j in range(i):
            g[i][j] = g[j][i] = Fraction(rng.randint(-max_entry, max_entry), 2)
    return tuple(tuple(row) for row in g)


def _random_h(rng: random.Random) -> Tuple[Fraction, ...]:
    while True:
        h = [rng.randint(-H_ENTRY_BOUND, H_ENTRY_BOUND) for _ in range(4)]
        if any(h):
            c = rng.choice(H_VARIANTS)
            return tuple(c * x for x in h)


def gen_corpus(
    seed: int,
    count: int,
    max_entry: int = 6,
    max_prime: int = 97
) -> List[CorpusEntry]:
    """
    Deterministic corpus: integral Gram matrices (integer diagonal, half-integer
    off-diagonal) with max_prime-smooth determinant, and vectors h with
    max_prime-smooth q = phi[h] != 0.
    """
    rng = random.Random(seed)
    entries: List[CorpusEntry] = []
    rejected = 0
    while len(entries) < count:
        gram = _random_gram(rng, max_entry)
        d = linalg.det(gram)
        if d == 0 or not _is_smooth(d, max_prime):
            rejected += 1
            continue
        for _ in range(20):
            h = _random_h(rng)
            q = linalg.dot(linalg.vecmat(h, gram), h)
            if q != 0 and _is_smooth(q, max_prime):
                entries.append(CorpusEntry(gram=gram, h=h))
                break
        else:
            rejected += 1
    logger.info(f"generated {count} instances from seed {seed} ({rejected} candidates rejected)")
    return entries
