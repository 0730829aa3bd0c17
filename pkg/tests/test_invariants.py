"""
Tests for discriminants, quaternion classes, core dimensions and the
discriminant-ideal formulas.
"""
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from src.quadlat.core import linalg
from src.quadlat.core.exactnum import INF, RatIdeal, SquareClass
from src.quadlat.core.invariants import (
    DIVISION,
    SPLIT,
    QuatClass,
    b_ideal,
    cha_case,
    complement_index,
    core_dimension,
    discriminant_class,
    e_from_core_dims,
    e_ideal,
    orthogonalize,
    quadratic_field_disc,
    quaternary_class,
    quaternary_disc_ideal,
    real_char_class,
    real_index,
    real_sign_condition,
    space_invariants,
    ternary_class,
    ternary_disc_ideal,
)
from src.quadlat.core.qspace import QuadSpace
from src.quadlat.utils.error_handlers import (
    InvalidPlace,
    NotASquare,
    PresentationNotFound,
    UnsupportedDimension,
)

small = st.integers(min_value=-4, max_value=4)


@st.composite
def symmetric_grams(draw, n=3):
    g = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = Fraction(draw(small))
        for j in range(i):
            g[i][j] = g[j][i] = Fraction(draw(small), 2)
    assume(linalg.det(g) != 0)
    return QuadSpace(tuple(tuple(r) for r in g))


class TestOrthogonalize:
    """Test suite for rational diagonalization."""

    def test_hyperbolic_plane(self):
        """Test a form with zero diagonal."""
        space = QuadSpace(((0, Fraction(1, 2)), (Fraction(1, 2), 0)))
        rows, values = orthogonalize(space)
        assert space.bilinear(rows[0], rows[1]) == 0
        assert values[0] * values[1] == space.det()

    @settings(max_examples=40)
    @given(symmetric_grams())
    def test_orthogonal_and_det_preserving(self, space):
        """Test pairwise orthogonality and that the product of values is det."""
        rows, values = orthogonalize(space)
        for i in range(3):
            for j in range(i):
                assert space.bilinear(rows[i], rows[j]) == 0
        assert values[0] * values[1] * values[2] == space.det()

    @settings(max_examples=40)
    @given(symmetric_grams())
    def test_sign_condition_holds(self, space):
        """Test the real sign constraint for every ternary space."""
        assert real_sign_condition(space)


class TestBasicInvariants:
    """Test suite for delta, real index and the sign condition."""

    def test_discriminant_class(self, i3, i4):
        """Test delta(I_4) = 1 and delta(I_3) = -1."""
        assert discriminant_class(i4) == SquareClass(1)
        assert discriminant_class(i3) == SquareClass(-1)

    def test_real_index(self):
        """Test signatures of diagonal forms."""
        assert real_index(QuadSpace.diagonal([1, 1, -1])) == 1
        assert real_index(QuadSpace.diagonal([-1, -1, -1, -1])) == -4

    def test_sign_condition(self, i3, i4):
        """Test the real sign constraint on the identity forms."""
        assert real_sign_condition(i4)
        assert real_sign_condition(i3)

    def test_sign_condition_dimension(self):
        """Test that n = 2 is rejected."""
        with pytest.raises(UnsupportedDimension):
            real_sign_condition(QuadSpace.identity(2))

    def test_quadratic_field_disc(self):
        """Test field discriminants for delta = 1, 5, 3, -1."""
        assert quadratic_field_disc(SquareClass(1)) == RatIdeal.unit()
        assert quadratic_field_disc(SquareClass(5)) == RatIdeal.of(5)
        assert quadratic_field_disc(SquareClass(3)) == RatIdeal.of(12)
        assert quadratic_field_disc(SquareClass(-1)) == RatIdeal.of(4)


class TestQuatClass:
    """Test suite for quaternion algebra classes."""

    def test_hamilton_quaternions(self):
        """Test that (-1, -1) ramifies at 2 and the real place."""
        hamilton = QuatClass.of(-1, -1)
        assert hamilton.ram == (2, INF)
        assert hamilton.discriminant() == RatIdeal.of(2)
        assert not hamilton.is_split_at(2)
        assert hamilton.is_split_at(3)

    def test_equality_by_ramification(self):
        """Test that different Hilbert pairs of one algebra compare equal."""
        assert QuatClass.of(-1, -1) == QuatClass.of(-1, -2)
        assert QuatClass.of(1, 7) == QuatClass.of(2, 3 * 3)

    @pytest.mark.parametrize('ram', [(), (2, 3), (3, INF), (2, 5, 7, INF), (13, 97)])
    def test_from_ramification(self, ram):
        """Test that a Hilbert pair is found for even ramification sets."""
        found = QuatClass.from_ramification(ram)
        assert found.ram == tuple(ram)
        assert QuatClass.of(found.a, found.b).ram == tuple(ram)

    def test_from_ramification_odd_set(self):
        """Test that an odd set raises PresentationNotFound."""
        with pytest.raises(PresentationNotFound):
            QuatClass.from_ramification([2])

    def test_ternary_class(self, i3):
        """Test Q(I_3) is the Hamilton quaternions."""
        assert ternary_class(i3).ram == (2, INF)

    def test_ternary_class_dimension(self, i4):
        """Test that ternary_class needs n = 3."""
        with pytest.raises(UnsupportedDimension):
            ternary_class(i4)

    def test_quaternary_class(self, i4):
        """Test Q(I_4) and the split class of two hyperbolic planes."""
        assert quaternary_class(i4).ram == (2, INF)
        assert quaternary_class(QuadSpace.diagonal([1, -1, 1, -1])).ram == ()

    @pytest.mark.parametrize('h', [(0, 0, 0, 1), (1, 1, 0, 0), (1, 2, 3, 0), (1, -1, 2, 5)])
    def test_quaternary_class_independent_of_h(self, h):
        """Test that Q(phi) does not depend on the complemented vector."""
        space = QuadSpace.diagonal([1, 2, -3, 5])
        assert quaternary_class(space, h) == quaternary_class(space)

    @settings(max_examples=50, deadline=None)
    @given(symmetric_grams(n=4), st.data())
    def test_quaternary_class_constant_over_random_h(self, space, data):
        """Test that twenty random anisotropic h all give the same Q(phi)."""
        expected = quaternary_class(space)
        vectors = st.tuples(*[st.integers(-5, 5)] * 4).filter(
            lambda v: space.value(v) != 0
        )
        for _ in range(20):
            h = data.draw(vectors)
            assert quaternary_class(space, h) == expected, h

    @settings(max_examples=100, deadline=None)
    @given(symmetric_grams(), st.lists(small, min_size=9, max_size=9))
    def test_ternary_class_isometry_invariant(self, space, entries):
        """Test that Q(psi) is unchanged under G -> P G P^T for invertible P."""
        p = [entries[0:3], entries[3:6], entries[6:9]]
        assume(linalg.det(p) != 0)
        moved = QuadSpace(space.gram_of(p))
        assert ternary_class(moved) == ternary_class(space)


class TestCoreDimensions:
    """Test suite for core dimensions and the real characteristic class."""

    def test_quaternary(self, i4):
        """Test t_2 = 4 and t_3 = 0 for I_4."""
        assert core_dimension(i4, 2) == 4
        assert core_dimension(i4, 3) == 0

    def test_quaternary_nonsquare_delta(self):
        """Test t_p = 2 where delta is not a local square."""
        assert core_dimension(QuadSpace.diagonal([1, 1, 1, 3]), 3) == 2

    def test_ternary(self, i3):
        """Test t_2 = 3 and t_3 = 1 for I_3."""
        assert core_dimension(i3, 2) == 3
        assert core_dimension(i3, 3) == 1

    @pytest.mark.parametrize('s,expected', [
        (4, DIVISION), (-4, DIVISION), (0, SPLIT), (2, SPLIT), (-2, DIVISION), (6, DIVISION),
        (3, DIVISION), (-3, DIVISION), (1, SPLIT), (-1, SPLIT),
    ])
    def test_real_char_class(self, s, expected):
        """Test the real class by index mod 8."""
        assert real_char_class(s) == expected

    def test_space_invariants(self, i4):
        """Test the invariant record of I_4."""
        inv = space_invariants(i4)
        assert inv.n == 4
        assert inv.delta.rep == 1
        assert inv.s_inf == 4
        assert inv.core_dims([2, 3]) == {2: 4, 3: 0}

    def test_space_invariants_binary_rejected(self):
        """Test that a binary space raises UnsupportedDimension."""
        with pytest.raises(UnsupportedDimension):
            space_invariants(QuadSpace.diagonal([1, 1]))

    def test_e_from_core_dims(self, i4):
        """Test that e read from core dimensions agrees with the ramification rule."""
        for space in (i4, QuadSpace.diagonal([1, 1, 1, 3]), QuadSpace.diagonal([1, 2, -3, 5])):
            inv = space_invariants(space)
            assert e_from_core_dims(inv) == e_ideal(inv)


class TestDiscriminantFormulas:
    """Test suite for the discriminant-ideal formulas."""

    def test_quaternary_disc_ideal(self):
        """Test D_K e^2 = 4 for delta = 1 and ramification {2, inf}."""
        assert quaternary_disc_ideal(SquareClass(1), QuatClass.of(-1, -1)) == RatIdeal.of(4)

    def test_ternary_disc_ideal(self):
        """Test [M~/M] = 8 for delta = 1, q = 1, D_psi = 2."""
        assert ternary_disc_ideal(SquareClass(1), 1, RatIdeal.of(2)) == RatIdeal.of(8)

    def test_b_ideal(self):
        """Test b(q) with 2 * 1 * 4 = 1^2 * 8."""
        assert b_ideal(1, RatIdeal.of(4), RatIdeal.of(8)) == RatIdeal.unit()

    def test_b_ideal_not_square(self):
        """Test that an odd valuation raises NotASquare."""
        with pytest.raises(NotASquare):
            b_ideal(1, RatIdeal.of(4), RatIdeal.of(4))

    def test_complement_index(self):
        """Test s(psi) = s(phi) - sign(q)."""
        assert complement_index(4, 1) == 3
        assert complement_index(0, Fraction(-1, 2)) == 1
        with pytest.raises(ValueError):
            complement_index(2, 0)

    def test_cha_case_real_place(self):
        """Test the real-place classifier for I_4 and a positive q."""
        assert cha_case(SquareClass(1), 1, (2, INF), INF, 4) == DIVISION
        assert cha_case(SquareClass(1), 1, (), INF, 2) == SPLIT
        assert cha_case(SquareClass(1), -1, (), INF, -2) == SPLIT

    def test_cha_case_finite_place(self):
        """Test that delta a local square makes Q(psi) follow Q(phi)."""
        assert cha_case(SquareClass(1), 1, (2, INF), 2, 4) == DIVISION
        assert cha_case(SquareClass(1), 1, (2, INF), 3, 4) == SPLIT

    def test_cha_case_bad_arguments(self):
        """Test the documented errors for a non-place and a float q."""
        with pytest.raises(InvalidPlace):
            cha_case(SquareClass(1), 1, (), 4, 4)
        with pytest.raises(TypeError):
            cha_case(SquareClass(1), 0.5, (), 3, 4)
