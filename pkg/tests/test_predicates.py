"""Embedding predicate tests: paper-fact cases, derived cases with inline
oracles, the implication lattice, and witness determinism."""

import pytest

from permutability import (
    all_subgroups,
    build_from_spec,
    evaluate_predicate,
    generated_subgroup,
    is_abnormal,
    is_nss_permutable,
    is_permutable,
    is_s_permutable,
    is_s_semipermutable,
    is_semipermutable,
    is_ss_permutable,
    is_tau_quasinormal,
    ss_permutable_in_normalizer_pairs,
    sylow_subgroups,
    validate_ss_witnesses,
)
from permutability.predicates import predicate_bool

from conftest import ex1_2_spec, group


def sub_by_order(g, order, which=0):
    lat = all_subgroups(g)
    idx = [i for i, s in enumerate(lat.sizes) if s == order]
    return lat.subgroup(idx[which])


class TestPermutable:
    def test_normal_subgroup_is_permutable(self, s3):
        a3 = generated_subgroup(s3, [s3.resolve("c")])
        assert is_permutable(s3, a3).verdict
        assert is_s_permutable(s3, a3).verdict

    def test_transposition_not_s_permutable_in_s3(self, s3):
        h = generated_subgroup(s3, [s3.resolve("s")])
        v = is_s_permutable(s3, h)
        assert not v.verdict
        assert v.refutation is not None
        # the refuting Sylow is another order-2 subgroup
        assert v.refutation[1].order == 2

    def test_every_subgroup_of_d8_s_permutable(self, d8):
        lat = all_subgroups(d8)
        for i in range(len(lat.masks)):
            assert is_s_permutable(d8, lat.subgroup(i)).verdict


class TestSemipermutable:
    def test_example_1_2_subject_vacuously_s_semipermutable(self, ex1_2):
        h = generated_subgroup(ex1_2, [ex1_2.resolve("y"), ex1_2.resolve("w")])
        assert h.order == 6
        # |H| = 6 shares a prime with both Sylow orders 4 and 9
        assert is_s_semipermutable(ex1_2, h).verdict

    def test_transposition_s_semipermutable_in_s3(self, s3):
        h = generated_subgroup(s3, [s3.resolve("s")])
        assert is_s_semipermutable(s3, h).verdict

    def test_whole_group(self, s3):
        g_sub = sub_by_order(s3, 6)
        assert is_semipermutable(s3, g_sub).verdict
        assert is_s_semipermutable(s3, g_sub).verdict

    def test_semipermutable_vs_subgroup_quantifier(self, s4):
        # semipermutable quantifies all coprime subgroups, not just Sylows
        lat = all_subgroups(s4)
        for i in range(len(lat.masks)):
            h = lat.subgroup(i)
            if is_semipermutable(s4, h).verdict:
                assert is_s_semipermutable(s4, h).verdict


class TestSSPermutable:
    def test_example_1_2_subject_not_ss(self, ex1_2):
        h = generated_subgroup(ex1_2, [ex1_2.resolve("y"), ex1_2.resolve("w")])
        v = is_ss_permutable(ex1_2, h)
        assert not v.verdict
        assert v.refutation is not None
        supp, syl = v.refutation
        # refutation is re-checkable: supp supplements H but H fails its Sylow
        assert len({ex1_2.mult[a][b] for a in h.members for b in supp.members}) == 36
        prod_hs = {ex1_2.mult[a][b] for a in h.members for b in syl.members}
        prod_sh = {ex1_2.mult[b][a] for a in h.members for b in syl.members}
        assert prod_hs != prod_sh

    def test_a4_in_a5_ss_with_sylow5_witness(self, a5):
        a4 = sub_by_order(a5, 12)
        v = is_ss_permutable(a5, a4)
        assert v.verdict
        assert v.witness is not None and v.witness.order == 5

    def test_example_1_5_order2_not_ss(self, ex1_5):
        y2 = generated_subgroup(ex1_5, [ex1_5.power(ex1_5.resolve("y"), 2)])
        assert not is_ss_permutable(ex1_5, y2).verdict

    def test_whole_group_ss(self, s4):
        g_sub = sub_by_order(s4, 24)
        v = is_ss_permutable(s4, g_sub)
        assert v.verdict
        assert v.witness.order == 1  # canonical-least supplement is trivial


class TestNSSPermutable:
    def test_a4_in_a5_not_nss(self, a5):
        a4 = sub_by_order(a5, 12)
        v = is_nss_permutable(a5, a4)
        assert not v.verdict
        # only normal supplement is A5 itself
        assert v.refutation[0].order == 60

    def test_whole_group_nss_with_trivial_witness(self, s3):
        g_sub = sub_by_order(s3, 6)
        v = is_nss_permutable(s3, g_sub)
        assert v.verdict and v.witness.order == 1

    def test_every_subgroup_of_d8_nss(self, d8):
        lat = all_subgroups(d8)
        for i in range(len(lat.masks)):
            v = is_nss_permutable(d8, lat.subgroup(i))
            assert v.verdict

    def test_nss_implies_ss(self, s4, ex1_5):
        for g in (s4, ex1_5):
            lat = all_subgroups(g)
            for i in range(len(lat.masks)):
                h = lat.subgroup(i)
                if is_nss_permutable(g, h).verdict:
                    assert is_ss_permutable(g, h).verdict


class TestTauQuasinormal:
    def test_whole_group(self, s3):
        assert is_tau_quasinormal(s3, sub_by_order(s3, 6)).verdict

    def test_transposition_in_s3(self, s3):
        h = generated_subgroup(s3, [s3.resolve("s")])
        assert is_tau_quasinormal(s3, h).verdict

    @pytest.mark.parametrize("name", ["S3", "S4", "D8", "Ex1_5", "Ex1_2", "A4"])
    def test_ss_implies_tau(self, name):
        g = group(name)
        lat = all_subgroups(g)
        for i in range(len(lat.masks)):
            h = lat.subgroup(i)
            if is_ss_permutable(g, h).verdict:
                assert is_tau_quasinormal(g, h).verdict


class TestAbnormal:
    def test_whole_group_abnormal(self, s3):
        assert is_abnormal(s3, sub_by_order(s3, 6)).verdict

    def test_transposition_abnormal_in_s3(self, s3):
        # oracle: direct check over the six elements
        h = generated_subgroup(s3, [s3.resolve("s")])
        lat = all_subgroups(s3)
        for x in range(6):
            conj = {s3.conjugate(e, x) for e in h.members}
            join = lat.generated(set(h.members) | conj)
            assert join >> x & 1
        assert is_abnormal(s3, h).verdict

    def test_proper_normal_not_abnormal(self, s3):
        a3 = generated_subgroup(s3, [s3.resolve("c")])
        v = is_abnormal(s3, a3)
        assert not v.verdict

    def test_sylow_normalizers_abnormal(self, s4):
        # classical: N_G(P) is abnormal for Sylow P
        from permutability import normalizer
        for p in (2, 3):
            syl = sylow_subgroups(s4, p)[0]
            n = normalizer(s4, syl)
            assert is_abnormal(s4, n).verdict


class TestNormalizerPairs:
    def test_s3_p2_all_true(self, s3):
        for h, k, ss, nss in ss_permutable_in_normalizer_pairs(s3, 2):
            assert ss.verdict and nss.verdict

    def test_s4_p2_has_failing_pair(self, s4):
        # S4 is not a PST-group, so some pair must fail by the normalizer
        # characterization
        results = ss_permutable_in_normalizer_pairs(s4, 2)
        assert any(not ss.verdict for _, _, ss, _ in results)

    def test_sylow_in_own_normalizer(self, s4):
        # H = K Sylow: K is normal in N_G(K), hence SS-permutable there
        lat = all_subgroups(s4)
        for p in (2, 3):
            for i in lat.sylow_indices(p):
                nmask = lat.normalizer_idx_mask(i)
                assert predicate_bool(lat, "ss_permutable", i, nmask)


class TestImplicationLattice:
    @pytest.mark.parametrize(
        "name", ["S3", "S4", "D8", "A4", "Ex1_5", "Ex1_2", "C3:C4", "D12"])
    def test_implications(self, name):
        g = group(name)
        lat = all_subgroups(g)
        full = lat.full_mask
        for i in range(len(lat.masks)):
            normal = predicate_bool(lat, "normal", i, full)
            permutable = predicate_bool(lat, "permutable", i, full)
            s_perm = predicate_bool(lat, "s_permutable", i, full)
            semi = predicate_bool(lat, "semipermutable", i, full)
            s_semi = predicate_bool(lat, "s_semipermutable", i, full)
            ss = predicate_bool(lat, "ss_permutable", i, full)
            nss = predicate_bool(lat, "nss_permutable", i, full)
            tau = predicate_bool(lat, "tau_quasinormal", i, full)
            subnormal = predicate_bool(lat, "subnormal", i, full)
            if normal:
                assert permutable and nss
            if permutable:
                assert s_perm
            if s_perm:
                assert ss and subnormal  # Kegel direction included
            if nss:
                assert ss
            if ss:
                assert s_semi and tau
            if semi:
                assert s_semi


class TestWitnessDeterminism:
    def test_repeated_evaluation_identical(self, a5):
        a4 = sub_by_order(a5, 12)
        v1 = is_ss_permutable(a5, a4)
        v2 = is_ss_permutable(a5, a4)
        assert v1.witness.members == v2.witness.members

    def test_fresh_group_same_witness(self):
        g1 = build_from_spec(ex1_2_spec())
        g2 = build_from_spec(ex1_2_spec())
        h1 = generated_subgroup(g1, [g1.resolve("y")])
        h2 = generated_subgroup(g2, [g2.resolve("y")])
        v1 = is_ss_permutable(g1, h1)
        v2 = is_ss_permutable(g2, h2)
        assert v1.verdict == v2.verdict
        if v1.verdict:
            assert v1.witness.members == v2.witness.members

    @pytest.mark.parametrize("name", ["S3", "S4", "D8", "Ex1_5", "Ex1_2"])
    def test_all_witnesses_recheck(self, name):
        assert validate_ss_witnesses(group(name))


class TestDispatcher:
    def test_all_predicates_dispatch(self, s3):
        h = generated_subgroup(s3, [s3.resolve("s")])
        from permutability import PREDICATES
        for name in PREDICATES:
            v = evaluate_predicate(name, s3, h)
            assert isinstance(v.verdict, bool)

    def test_unknown_predicate(self, s3):
        from permutability import GroupError
        h = generated_subgroup(s3, [])
        with pytest.raises(GroupError):
            evaluate_predicate("frobnicate", s3, h)

    def test_subject_must_lie_in_universe(self, s3):
        from permutability import GroupError
        a3 = generated_subgroup(s3, [s3.resolve("c")])
        two = generated_subgroup(s3, [s3.resolve("s")])
        with pytest.raises(GroupError):
            is_ss_permutable(s3, a3, universe=two)
