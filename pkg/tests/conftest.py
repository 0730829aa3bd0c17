"""
Pytest configuration and shared fixtures.
Provides standard quadratic spaces, the worked demo instance and small seeded corpora.
"""
import os
import sys
from fractions import Fraction
from pathlib import Path

import pytest

# Set testing environment variables BEFORE imports
os.environ.setdefault('QUADLAT_LOG_LEVEL', 'WARNING')
os.environ.setdefault('QUADLAT_WORKERS', '1')

project_root = Path(__file__).resolve().parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from src.quadlat.core.clifford import CliffordAlg, quaternionize
from src.quadlat.core.qspace import Lattice, QuadSpace
from src.quadlat.services.corpus import CorpusEntry, gen_corpus
from src.quadlat.services.report_collector import ReportCollector
from src.quadlat.services.verify import build_instance, demo_instance_data

HALF = Fraction(1, 2)


@pytest.fixture
def i3():
    """
    Sum-of-three-squares space.

    Returns:
        QuadSpace: diag(1, 1, 1)
    """
    return QuadSpace.identity(3)


@pytest.fixture
def i4():
    """
    Sum-of-four-squares space.

    Returns:
        QuadSpace: diag(1, 1, 1, 1)
    """
    return QuadSpace.identity(4)


@pytest.fixture
def hurwitz_lattice():
    """
    The maximal lattice Z^4 + Z(1/2, 1/2, 1/2, 1/2) of diag(1, 1, 1, 1).

    Returns:
        Lattice: Canonical HNF lattice
    """
    return Lattice.from_generators(
        [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (HALF, HALF, HALF, HALF)]
    )


@pytest.fixture
def i3_algebra(i3):
    """Clifford algebra of diag(1, 1, 1)."""
    return CliffordAlg(i3)


@pytest.fixture
def i3_quat(i3):
    """Quaternion structure of diag(1, 1, 1)."""
    return quaternionize(i3)


@pytest.fixture(scope='session')
def demo_instance():
    """
    The worked example phi = I_4, h = e_4.

    Returns:
        Instance: Fully derived complement setting
    """
    gram, h = demo_instance_data()
    return build_instance(gram, h)


@pytest.fixture(scope='session')
def diagonal_h_instance():
    """
    phi = I_4 with h = (0, 0, 1, 1): q = 2, psi = diag(1, 1, 2).

    Returns:
        Instance: Fully derived complement setting
    """
    gram, _ = demo_instance_data()
    return build_instance(gram, [0, 0, 1, 1])


@pytest.fixture
def demo_entry():
    """
    Corpus entry for the demo instance.

    Returns:
        CorpusEntry: I_4 with h = e_4
    """
    gram, h = demo_instance_data()
    return CorpusEntry(
        gram=tuple(tuple(Fraction(x) for x in row) for row in gram),
        h=tuple(Fraction(x) for x in h),
    )


@pytest.fixture(scope='session')
def small_corpus():
    """
    Three seeded random instances.

    Returns:
        list: CorpusEntry list for seed 42
    """
    return gen_corpus(seed=42, count=3)


@pytest.fixture
def report_collector():
    """
    Create a fresh ReportCollector instance.

    Returns:
        ReportCollector: Empty collector
    """
    return ReportCollector()
