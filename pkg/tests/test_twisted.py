from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistcell.assembly import build_frames
from twistcell.diagrams import SetPartition, build_monoid
from twistcell.errors import SupportOutOfDomain
from twistcell.polyring import DeltaPoly
from twistcell.semigroups import FiniteSemigroup
from twistcell.twisted import (
    AlgebraElement,
    BetaMap,
    TwistingMap,
    alg_mul,
    alg_star,
    circ,
    validate_beta,
    validate_star_twist,
    validate_twisting,
)

D = DeltaPoly.delta_power


def algebra_elements(size, max_terms=3):
    coeff = st.builds(
        lambda c, p: DeltaPoly([0] * p + [c]),
        st.fractions(min_value=-3, max_value=3, max_denominator=4),
        st.integers(0, 2),
    )
    term = st.tuples(st.integers(0, size - 1), coeff)
    return st.lists(term, max_size=max_terms).map(
        lambda terms: AlgebraElement(
            {k: v for k, v in reversed(terms)}  # later duplicates win; fine for tests
        )
    )


class TestValidateTwisting:
    def test_trivial_passes(self):
        m = build_monoid("brauer", 2)
        assert validate_twisting(m.semigroup, TwistingMap.trivial(m.semigroup)).ok

    def test_delta_power_twisting_on_partition2(self):
        m = build_monoid("partition", 2)
        tw = TwistingMap.from_m_table(m.semigroup, m.m_table)
        assert validate_twisting(m.semigroup, tw).ok

    def test_mutated_left_zero_fails_with_witness(self):
        lz = FiniteSemigroup([[0, 0], [1, 1]])
        grid = [[D(1)] * 2 for _ in range(2)]
        assert validate_twisting(lz, TwistingMap.from_grid(lz, grid)).ok
        grid[0][1] = D(2)
        report = validate_twisting(lz, TwistingMap.from_grid(lz, grid))
        assert not report.ok and report.witness is not None


class TestValidateStarTwist:
    def test_trivial(self):
        m = build_monoid("tl", 3)
        assert validate_star_twist(m.semigroup, TwistingMap.trivial(m.semigroup), m.star_perm).ok

    def test_delta_power_on_brauer3(self):
        m = build_monoid("brauer", 3)
        tw = TwistingMap.from_m_table(m.semigroup, m.m_table)
        assert validate_star_twist(m.semigroup, tw, m.star_perm).ok

    def test_asymmetric_table_fails(self):
        m = build_monoid("tl", 2)
        grid = [[DeltaPoly.one()] * m.size for _ in range(m.size)]
        grid[0][1] = D(1)
        report = validate_star_twist(
            m.semigroup, TwistingMap.from_grid(m.semigroup, grid), m.star_perm
        )
        assert not report.ok and report.witness is not None


class TestAlgMul:
    def setup_method(self):
        self.m = build_monoid("tl", 2)
        self.alg = self.m.algebra()
        self.e = self.m.index_of(SetPartition(2, [[1, 2], [-1, -2]]))
        self.one = self.m.identity_index

    def test_hook_squares_to_delta_hook(self):
        e = AlgebraElement.basis(self.e)
        assert self.alg.mul(e, e) == AlgebraElement.basis(self.e, D(1))

    def test_identity_neutral(self):
        a = AlgebraElement({self.e: D(2), self.one: DeltaPoly.one()})
        assert self.alg.mul(self.alg.one(), a) == a

    def test_binomial_expansion(self):
        a = AlgebraElement({self.e: DeltaPoly.one(), self.one: DeltaPoly.one()})
        got = self.alg.mul(a, a)
        want = AlgebraElement(
            {self.e: DeltaPoly([2, 1]), self.one: DeltaPoly.one()}
        )
        assert got == want

    @settings(max_examples=60, deadline=None)
    @given(algebra_elements(15), algebra_elements(15), algebra_elements(15))
    def test_associativity_brauer3(self, a, b, c):
        alg = build_monoid("brauer", 3).algebra()
        assert alg.mul(alg.mul(a, b), c) == alg.mul(a, alg.mul(b, c))

    @settings(max_examples=40, deadline=None)
    @given(algebra_elements(15), algebra_elements(15), algebra_elements(15))
    def test_associativity_partition2(self, a, b, c):
        alg = build_monoid("partition", 2).algebra()
        assert alg.mul(alg.mul(a, b), c) == alg.mul(a, alg.mul(b, c))

    @settings(max_examples=40, deadline=None)
    @given(algebra_elements(5), algebra_elements(5), algebra_elements(5))
    def test_associativity_tl3(self, a, b, c):
        alg = build_monoid("tl", 3).algebra()
        assert alg.mul(alg.mul(a, b), c) == alg.mul(a, alg.mul(b, c))


class TestAlgStar:
    def test_basis_maps_to_starred_basis(self):
        m = build_monoid("brauer", 3)
        for i in (0, 3, 7):
            assert alg_star(AlgebraElement.basis(i), m.star_perm) == AlgebraElement.basis(
                int(m.star_perm[i])
            )

    @settings(max_examples=60, deadline=None)
    @given(algebra_elements(15))
    def test_involution(self, a):
        m = build_monoid("brauer", 3)
        assert alg_star(alg_star(a, m.star_perm), m.star_perm) == a

    @settings(max_examples=60, deadline=None)
    @given(algebra_elements(5), algebra_elements(5))
    def test_anti_homomorphism_tl3(self, a, b):
        alg = build_monoid("tl", 3).algebra()
        lhs = alg.star(alg.mul(a, b))
        rhs = alg.mul(alg.star(b), alg.star(a))
        assert lhs == rhs


class TestCirc:
    def setup_method(self):
        self.m = build_monoid("tl", 2)
        self.frames = build_frames(self.m)
        self.bottom = self.frames[1]
        self.e = self.bottom.one_index

    def test_constant_beta_is_untwisted_product(self):
        beta = BetaMap.ones(self.bottom.L_D, self.bottom.L_D_star)
        e = AlgebraElement.basis(self.e)
        assert circ(e, e, beta, self.m.semigroup) == e

    def test_alpha_beta_matches_twisted_product_at_two(self):
        tw = self.m.algebra().twisting.at(Fraction(2))
        beta = BetaMap.alpha_restricted(self.bottom.L_D, self.bottom.L_D_star, tw)
        for x in self.bottom.L_D:
            for y in self.bottom.L_D_star:
                a, b = AlgebraElement.basis(x), AlgebraElement.basis(y)
                assert circ(a, b, beta, self.m.semigroup) == alg_mul(a, b, tw)

    def test_support_out_of_domain(self):
        m = build_monoid("brauer", 2)
        frames = build_frames(m)
        hook_frame = frames[1]
        swap = m.index_of(SetPartition(2, [[1, -2], [2, -1]]))
        beta = BetaMap.ones(hook_frame.L_D, hook_frame.L_D_star)
        with pytest.raises(SupportOutOfDomain):
            circ(
                AlgebraElement.basis(swap),
                AlgebraElement.basis(hook_frame.one_index),
                beta,
                m.semigroup,
            )


class TestValidateBeta:
    def test_constant_beta_passes_on_diagram_monoids(self):
        for kind, n in [("tl", 3), ("brauer", 2), ("partition", 2)]:
            m = build_monoid(kind, n)
            tw = m.algebra().twisting
            for frame in build_frames(m):
                beta = BetaMap.ones(frame.L_D, frame.L_D_star)
                report = validate_beta(frame, beta, tw)
                assert report.ok, (kind, n, frame.d_class, report)

    def test_alpha_restricted_at_two_passes(self):
        m = build_monoid("tl", 2)
        tw = m.algebra().twisting.at(Fraction(2))
        for frame in build_frames(m):
            beta = BetaMap.alpha_restricted(frame.L_D, frame.L_D_star, tw)
            assert validate_beta(frame, beta, tw).ok

    def test_alpha_d_ratio_reported(self):
        m = build_monoid("tl", 2)
        tw = m.algebra().twisting
        frame = build_frames(m)[1]
        report = validate_beta(frame, BetaMap.ones(frame.L_D, frame.L_D_star), tw)
        assert report.info["alpha_D"] == D(1)

    def test_non_r_constant_table_fails(self):
        # a twisting that varies across an R-class breaks the mixed
        # identity for beta = 1: alpha(x, 1_D) != alpha(x, 1_D z)
        m = build_monoid("tl", 3)
        frame = build_frames(m)[1]
        size = m.size
        grid = [[DeltaPoly.one()] * size for _ in range(size)]
        grid[m.identity_index][frame.one_index] = DeltaPoly.const(2)
        tw = TwistingMap.from_grid(m.semigroup, grid)
        beta = BetaMap.ones(frame.L_D, frame.L_D_star)
        report = validate_beta(frame, beta, tw)
        assert not report.ok
        assert report.name == "beta-alpha" and len(report.witness) == 3


class TestBetaCircIdentities:
    """Linearized compatibility laws between the two products."""

    def _setup(self, kind, n, frame_pos, value=None):
        m = build_monoid(kind, n)
        tw = m.algebra().twisting if value is None else m.algebra().twisting.at(value)
        frame = build_frames(m)[frame_pos]
        if value is None:
            beta = BetaMap.ones(frame.L_D, frame.L_D_star)
        else:
            beta = BetaMap.alpha_restricted(frame.L_D, frame.L_D_star, tw)
        return m, tw, frame, beta

    @pytest.mark.parametrize("value", [None, Fraction(2)])
    def test_mixed_associativity(self, value):
        m, tw, frame, beta = self._setup("brauer", 3, 1, value)
        sg = m.semigroup
        group = frame.group.elements
        left = sorted(frame.L_D)[:4]
        right = sorted(frame.L_D_star)[:4]
        for g in group[:3]:
            b = AlgebraElement.basis(g)
            for x in left:
                a = AlgebraElement.basis(x)
                for z in right:
                    c = AlgebraElement.basis(z)
                    # (a o b) o c = a o (b o c) with b supported on the group
                    lhs = circ(circ(a, b, beta, sg), c, beta, sg)
                    rhs = circ(a, circ(b, c, beta, sg), beta, sg)
                    assert lhs == rhs
                    # (b . a') o c = b . (a' o c) for group-supported b
                    ap = AlgebraElement.basis(x)
                    lhs2 = circ(alg_mul(b, ap, tw), c, beta, sg)
                    rhs2 = alg_mul(b, circ(ap, c, beta, sg), tw)
                    assert lhs2 == rhs2
                    # (a o c) . b' = a o (c . b') for group-supported b'
                    lhs3 = alg_mul(circ(a, c, beta, sg), b, tw)
                    rhs3 = circ(a, alg_mul(c, b, tw), beta, sg)
                    assert lhs3 == rhs3

    @pytest.mark.parametrize("value", [None, Fraction(2)])
    def test_star_reverses_circ(self, value):
        m, tw, frame, beta = self._setup("brauer", 3, 1, value)
        sg = m.semigroup
        star = m.star_perm
        for x in sorted(frame.L_D)[:5]:
            for y in sorted(frame.L_D_star)[:5]:
                a, b = AlgebraElement.basis(x), AlgebraElement.basis(y)
                lhs = alg_star(circ(a, b, beta, sg), star)
                rhs = circ(alg_star(b, star), alg_star(a, star), beta, sg)
                assert lhs == rhs
