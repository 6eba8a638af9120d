from fractions import Fraction

import numpy as np
import pytest

from twistcell.assembly import (
    assemble,
    assemble_datum,
    build_frames,
    build_frames_generic,
    cell_source_modules,
    choose_uL,
    gram_factorization,
    group_data_for,
    induce_module,
    sandwich_matrix,
    semisimplicity_report,
)
from twistcell.cellular import phi_a, radical_oracle
from twistcell.diagrams import SetPartition, build_monoid
from twistcell.errors import (
    AlphaNotUnit,
    ModePreconditionFailed,
    NoStarFixedIdempotent,
    NotRegular,
)
from twistcell.polyring import DeltaPoly
from twistcell.semigroups import FiniteSemigroup, compute_green
from twistcell.twisted import AlgebraElement, TwistedAlgebra, TwistingMap, alg_mul

D = DeltaPoly.delta_power


class TestFrames:
    def test_tl3_two_trivial_frames(self):
        frames = build_frames(build_monoid("tl", 3))
        assert len(frames) == 2
        assert [f.group.order for f in frames] == [1, 1]

    def test_partition2_group_orders(self):
        frames = build_frames(build_monoid("partition", 2))
        assert [f.group.order for f in frames] == [2, 1, 1]

    def test_one_is_star_fixed_idempotent(self):
        for kind, n in [("partition", 3), ("brauer", 4), ("tl", 5)]:
            m = build_monoid(kind, n)
            for frame in build_frames(m):
                e = frame.one_index
                assert m.semigroup.mul(e, e) == e
                assert int(m.star_perm[e]) == e

    def test_u_reps_hit_right_classes(self):
        m = build_monoid("brauer", 4)
        for frame in build_frames(m):
            green = frame.green
            one_r = int(green.r_index[frame.one_index])
            for lc, u in zip(frame.l_class_ids, frame.u_reps):
                assert int(green.l_index[u]) == lc
                assert int(green.r_index[u]) == one_r

    def test_choose_uL_matches_frame(self):
        m = build_monoid("brauer", 3)
        for frame in build_frames(m):
            for lc, u in zip(frame.l_class_ids, frame.u_reps):
                assert choose_uL(m, frame, lc) == u

    def test_identity_l_class_uses_idempotent(self):
        # the representative of the idempotent's own L-class is 1_D itself
        for kind, n in [("partition", 2), ("brauer", 3), ("tl", 4)]:
            m = build_monoid(kind, n)
            for frame in build_frames(m):
                green = frame.green
                one_l = int(green.l_index[frame.one_index])
                pos = frame.l_class_ids.index(one_l)
                assert frame.u_reps[pos] == frame.one_index

    def test_theta_star_is_inversion(self):
        m = build_monoid("partition", 3)
        top = build_frames(m)[0]
        for p, idx in top.theta.items():
            inv = tuple(sorted(range(len(p)), key=lambda i: p[i]))
            assert int(m.star_perm[idx]) == top.theta[inv]


class TestAssembledDatum:
    def test_tl2_const_basis(self):
        m = build_monoid("tl", 2)
        a = assemble(m, "const-beta")
        assert len(a.datum.poset.labels) == 2
        supports = sorted(
            tuple(e.sorted_terms()) for e in a.datum.basis.values()
        )
        e = m.index_of(SetPartition(2, [[1, 2], [-1, -2]]))
        one = m.identity_index
        assert supports == sorted(
            [((e, DeltaPoly.one()),), ((one, DeltaPoly.one()),)]
        )

    def test_brauer3_cell_sizes(self):
        a = assemble(build_monoid("brauer", 3), "const-beta")
        total = 0
        for fi, frame in enumerate(a.frames):
            gcd = a.group_data[fi]
            for lam in gcd.datum.poset.labels:
                block = (len(frame.u_reps) * len(gcd.datum.mset(lam))) ** 2
                total += block
        assert total == 15 == a.datum.dimension

    def test_unit_alpha_matches_twisted_sandwiching(self):
        m = build_monoid("tl", 2)
        a = assemble(m, "unit-alpha", delta_value=Fraction(2))
        tw = a.algebra.twisting
        for fi, frame in enumerate(a.frames):
            gcd = a.group_data[fi]
            star = frame.star_perm
            for lam in gcd.datum.poset.labels:
                for lpos, u_l in enumerate(frame.u_reps):
                    for kpos, u_k in enumerate(frame.u_reps):
                        for s in gcd.datum.mset(lam):
                            for t in gcd.datum.mset(lam):
                                got = a.datum.basis[((fi, lam), (lpos, s), (kpos, t))]
                                group_elt = gcd.to_ambient(gcd.datum.basis[(lam, s, t)])
                                want = alg_mul(
                                    alg_mul(
                                        AlgebraElement.basis(int(star[u_l])),
                                        group_elt,
                                        tw,
                                    ),
                                    AlgebraElement.basis(u_k),
                                    tw,
                                )
                                assert got == want

    def test_star_transposes_assembled_indices(self):
        a = assemble(build_monoid("brauer", 3), "const-beta")
        alg = a.datum.algebra
        for (lam, s, t), elem in a.datum.basis.items():
            assert alg.star(elem) == a.datum.basis[(lam, t, s)]

    def test_lower_d_classes_inside_lower_span(self):
        a = assemble(build_monoid("tl", 4), "const-beta")
        labels = a.datum.poset.labels
        solver = a.datum.solver()
        for high in labels:
            for low in labels:
                if not a.datum.poset.less(low, high):
                    continue
                ms = a.datum.msets[low]
                coords = solver.coordinates(a.datum.basis[(low, ms[0], ms[0])])
                assert all(a.datum.poset.less(mu, high) for (mu, _, _) in coords)

    def test_unit_alpha_requires_rational_delta(self):
        m = build_monoid("tl", 2)
        with pytest.raises(ModePreconditionFailed):
            assemble(m, "unit-alpha")

    def test_unit_alpha_rejects_zero(self):
        m = build_monoid("tl", 2)
        with pytest.raises(ModePreconditionFailed):
            assemble(m, "unit-alpha", delta_value=Fraction(0))

    def test_mode_coherence_at_two(self):
        # both modes validate and give the same semisimplicity verdicts
        from twistcell.cellular import semisimple_by_gram

        for kind, n in [("tl", 3), ("brauer", 2), ("partition", 2)]:
            m = build_monoid(kind, n)
            const = assemble(m, "const-beta")
            units = assemble(m, "unit-alpha", delta_value=Fraction(2))
            v_const = semisimple_by_gram(const.datum, Fraction(2))
            v_units = semisimple_by_gram(units.datum, Fraction(2))
            assert v_const.semisimple == v_units.semisimple


class TestGeneralBetaMode:
    def test_matches_const_mode_with_unit_betas(self):
        m = build_monoid("tl", 3)
        frames = build_frames(m)
        group_data = [group_data_for(f, "const-beta") for f in frames]
        from twistcell.twisted import BetaMap

        betas = [BetaMap.ones(f.L_D, f.L_D_star) for f in frames]
        a = assemble_datum(
            m.algebra(), frames, group_data, "general-beta", betas=betas, monoid=m
        )
        b = assemble(m, "const-beta")
        assert a.datum.basis == b.datum.basis


class TestSandwich:
    def test_tl2_hook_frame(self):
        m = build_monoid("tl", 2)
        frames = build_frames(m)
        sw = sandwich_matrix(frames[1])
        e = m.index_of(SetPartition(2, [[1, 2], [-1, -2]]))
        assert sw.size == 1
        assert sw.entry(0, 0) == AlgebraElement.basis(e, D(1))

    def test_identity_frame_of_any_monoid(self):
        for kind, n in [("partition", 2), ("brauer", 3), ("tl", 4)]:
            m = build_monoid(kind, n)
            top = build_frames(m)[0]
            sw = sandwich_matrix(top)
            assert sw.size == 1
            entry = sw.entry(0, 0)
            ((z, coeff),) = entry.sorted_terms()
            assert z == m.identity_index and coeff == DeltaPoly.one()

    def test_brauer4_bottom_frame_exponents(self):
        # brute-force derived: diagonal entries carry delta^2, the rest delta
        m = build_monoid("brauer", 4)
        bottom = build_frames(m)[-1]
        sw = sandwich_matrix(bottom)
        assert sw.size == 3
        for i in range(3):
            for j in range(3):
                ((z, coeff),) = sw.entry(i, j).sorted_terms()
                assert z == m.semigroup.mul(
                    bottom.u_reps[i], int(m.star_perm[bottom.u_reps[j]])
                )
                assert coeff == (D(2) if i == j else D(1))

    def test_entries_zero_or_in_group(self):
        m = build_monoid("brauer", 4)
        for frame in build_frames(m):
            sw = sandwich_matrix(frame)
            group = set(frame.group.elements)
            for i in range(sw.size):
                for j in range(sw.size):
                    entry = sw.entry(i, j)
                    if not entry.is_zero:
                        ((z, _),) = entry.sorted_terms()
                        assert z in group

    def test_tl3_middle_frame_matrix(self):
        # hand-checked: P = [[delta, 1], [1, delta]] over the trivial group
        m = build_monoid("tl", 3)
        frame = build_frames(m)[1]
        sw = sandwich_matrix(frame)
        coeffs = [
            [sw.entry(i, j).sorted_terms()[0][1] for j in range(2)] for i in range(2)
        ]
        assert coeffs == [[D(1), DeltaPoly.one()], [DeltaPoly.one(), D(1)]]


class TestGramFactorization:
    def test_tl2_hook_cell(self):
        m = build_monoid("tl", 2)
        a = assemble(m, "const-beta")
        fact = gram_factorization(a, 1, (1,))
        assert fact.big_gram.entries == (D(1),)
        assert fact.matrices_equal and fact.dets_equal
        assert fact.det_big == D(1)
        assert fact.det_factored == D(1)

    def test_identity_frame_trivial_group(self):
        a = assemble(build_monoid("tl", 3), "const-beta")
        fact = gram_factorization(a, 0, (1,))
        assert fact.big_gram.entries == (DeltaPoly.one(),)
        assert fact.matrices_equal and fact.dets_equal

    @pytest.mark.parametrize("kind,n", [("brauer", 3), ("tl", 4)])
    def test_exact_identity_everywhere(self, kind, n):
        a = assemble(build_monoid(kind, n), "const-beta")
        for fi, frame in enumerate(a.frames):
            for lam in a.group_data[fi].datum.poset.labels:
                fact = gram_factorization(a, fi, lam)
                assert fact.matrices_equal, (kind, n, fi, lam)
                assert fact.dets_equal, (kind, n, fi, lam)

    @pytest.mark.parametrize("kind,n", [("brauer", 3), ("tl", 4)])
    def test_form_values_factor_through_sandwich_entries(self, kind, n):
        # the assembled form at ((L,s),(K,t)) equals the group form twisted
        # by the sandwich entry, tested entry by entry
        a = assemble(build_monoid(kind, n), "const-beta")
        for fi, frame in enumerate(a.frames):
            gcd = a.group_data[fi]
            sw = sandwich_matrix(frame, a.algebra.twisting)
            for lam in gcd.datum.poset.labels:
                big = phi_a(a.datum, (fi, lam), None)
                gm = gcd.datum.mset(lam)
                k = len(gm)
                for lpos in range(len(frame.u_reps)):
                    for kpos in range(len(frame.u_reps)):
                        entry = sw.entry(lpos, kpos)
                        if entry.is_zero:
                            small = None
                        else:
                            ((z, coeff),) = entry.sorted_terms()
                            amb = AlgebraElement.basis(gcd.from_monoid[z], coeff)
                            small = phi_a(gcd.datum, lam, amb, verify=False)
                        for si in range(k):
                            for ti in range(k):
                                got = big.entry(lpos * k + si, kpos * k + ti)
                                want = (
                                    DeltaPoly.zero()
                                    if small is None
                                    else small.entry(si, ti)
                                )
                                assert got == want


class TestSemisimplicityReport:
    def test_tl2_at_one(self):
        rep = semisimplicity_report(build_monoid("tl", 2), Fraction(1))
        assert rep.semisimple and rep.agree

    def test_tl3_at_one_not_semisimple(self):
        rep = semisimplicity_report(build_monoid("tl", 3), Fraction(1))
        assert not rep.semisimple and rep.agree

    def test_brauer2_at_two(self):
        rep = semisimplicity_report(build_monoid("brauer", 2), Fraction(2))
        assert rep.semisimple and rep.agree

    def test_zero_rejected_and_oracle_decides(self):
        m = build_monoid("tl", 2)
        with pytest.raises(AlphaNotUnit):
            semisimplicity_report(m, Fraction(0))
        assert not radical_oracle(m.semigroup, m.algebra().twisting, Fraction(0)).semisimple


class TestThreeRouteAgreement:
    """Sandwich criterion, assembled Gram determinants, and the trace form
    must all agree wherever the twist is invertible."""

    VALUES = [Fraction(-2), Fraction(-1), Fraction(1), Fraction(3), Fraction(2, 3)]

    @pytest.mark.parametrize("kind,n", [("tl", 4), ("brauer", 3), ("partition", 2)])
    def test_verdicts_coincide(self, kind, n):
        m = build_monoid(kind, n)
        const = assemble(m, "const-beta", validate=False)
        from twistcell.cellular import semisimple_by_gram

        for v in self.VALUES:
            rep = semisimplicity_report(m, v)
            gram = semisimple_by_gram(const.datum, v)
            assert rep.agree, (kind, n, v)
            assert gram.semisimple == rep.oracle_semisimple, (kind, n, v)

    def test_known_degenerate_points(self):
        # brute-force derived: the tested loci where these algebras drop
        # semisimplicity
        expected = {
            ("tl", 3): {Fraction(-1), Fraction(1)},
            ("brauer", 3): {Fraction(-2), Fraction(1)},
            ("partition", 2): {Fraction(1), Fraction(2)},
        }
        probe = [Fraction(v) for v in (-3, -2, -1, 1, 2, 3)]
        for (kind, n), bad in expected.items():
            m = build_monoid(kind, n)
            got = {v for v in probe if not semisimplicity_report(m, v).semisimple}
            assert got == bad, (kind, n, got)


class TestInducedModules:
    def test_trivial_module_over_tl2_hook_frame(self):
        m = build_monoid("tl", 2)
        a = assemble(m, "const-beta", validate=False)
        frame = a.frames[1]
        (lam, action), = [
            (l, act) for l, act in cell_source_modules(a, 1)
        ]
        mod = induce_module(frame, action)
        assert mod.dim == 1
        e = frame.one_index
        assert mod.matrices[e].entries == (D(1),)

    def test_identity_frame_reproduces_source(self):
        m = build_monoid("brauer", 3)
        a = assemble(m, "const-beta", validate=False)
        frame = a.frames[0]
        for lam, action in cell_source_modules(a, 0):
            mod = induce_module(frame, action)
            for g, mat in action.items():
                assert mod.matrices[g] == mat

    def test_sign_module_over_partition2_top(self):
        m = build_monoid("partition", 2)
        a = assemble(m, "const-beta", validate=False)
        frame = a.frames[0]
        modules = cell_source_modules(a, 0)
        sign = [act for lam, act in modules if lam == (1, 1)][0]
        mod = induce_module(frame, sign)  # verifies the product law internally
        assert mod.dim == 1

    @pytest.mark.parametrize("kind,n", [("partition", 2), ("brauer", 3), ("tl", 3)])
    def test_all_frames_all_cell_sources(self, kind, n):
        m = build_monoid(kind, n)
        a = assemble(m, "const-beta", validate=False)
        for fi, frame in enumerate(a.frames):
            for lam, action in cell_source_modules(a, fi):
                mod = induce_module(frame, action)
                assert mod.dim == len(frame.u_reps) * next(iter(action.values())).rows

    @pytest.mark.parametrize("kind,n", [("partition", 2), ("brauer", 3), ("tl", 3)])
    def test_induction_reproduces_cell_modules(self, kind, n):
        # inducing a group cell module gives exactly the assembled cell
        # module, after matching the K-th copy with the row (L, m) where
        # K is the R-class of star(u_L)
        from twistcell.cellular import cell_rho

        m = build_monoid(kind, n)
        a = assemble(m, "const-beta", validate=False)
        for fi, frame in enumerate(a.frames):
            green = frame.green
            for lam, action in cell_source_modules(a, fi):
                mod = induce_module(frame, action, verify=False)
                k = len(a.group_data[fi].datum.mset(lam))
                perm = []
                for u in frame.u_reps:
                    us = int(m.star_perm[u])
                    kpos = mod.r_class_ids.index(int(green.r_index[us]))
                    perm.extend(kpos * k + i for i in range(k))
                for s in range(m.size):
                    big = cell_rho(a.datum, (fi, lam), s, verify=False)
                    ind = mod.matrices[s]
                    for i in range(big.rows):
                        for j in range(big.cols):
                            assert big.entry(i, j) == ind.entry(perm[i], perm[j])


class TestGenericFrames:
    def test_generic_path_on_symmetric_group(self):
        from twistcell.groupdata import symmetric_group_algebra

        alg, _ = symmetric_group_algebra(3)
        frames = build_frames_generic(alg, compute_green(alg.semigroup))
        assert len(frames) == 1 and frames[0].group.order == 6

    def test_non_regular_semigroup_rejected(self):
        # 3-element null-ish semigroup: x*y = 0 except 1*1 = 2; D-class of 1
        # has no idempotent
        table = [[0, 0, 0], [0, 2, 0], [0, 0, 0]]
        sg = FiniteSemigroup(table)
        alg = TwistedAlgebra(sg, TwistingMap.trivial(sg), np.arange(3))
        with pytest.raises(NotRegular):
            build_frames_generic(alg, compute_green(sg))

    def test_no_star_fixed_idempotent_rejected(self):
        # left-zero pair with the swap: (xy)* = y*x* holds, both elements
        # idempotent, neither fixed by star
        table = [[0, 0], [1, 1]]
        sg = FiniteSemigroup(table)
        star = np.array([1, 0])
        alg = TwistedAlgebra(sg, TwistingMap.trivial(sg), star)
        with pytest.raises(NoStarFixedIdempotent):
            build_frames_generic(alg, compute_green(sg))

    def test_trivial_groups_assemble_generically(self):
        # the Temperley-Lieb monoid through the generic path, no theta
        m = build_monoid("tl", 3)
        alg = m.algebra()
        frames = build_frames_generic(alg, m.green())
        group_data = [group_data_for(f, "const-beta") for f in frames]
        a = assemble_datum(alg, frames, group_data, "const-beta", monoid=m)
        assert a.datum.dimension == 5
