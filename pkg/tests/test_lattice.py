"""Subgroup lattice tests.

Two independent oracles validate the enumeration: an exhaustive
powerset filter for orders <= 16, and a pairwise-join closure starting
from cyclic subgroups for A4, S4, A5.
"""

import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from permutability import (
    all_subgroups,
    alternating,
    complements,
    core,
    cyclic,
    dihedral,
    direct_product,
    generated_subgroup,
    hall_subgroups,
    is_normal,
    is_subnormal,
    maximal_subgroups,
    normal_closure,
    normalizer,
    permutation_group,
    permutes,
    product_set,
    relative_normal_closure,
    supplements,
    sylow_subgroups,
    symmetric,
)
from permutability.lattice import SubgroupSet, bits_list, mask_of

from conftest import group


def powerset_subgroup_masks(g):
    """Oracle: every subset containing the identity that is a subgroup."""
    n = g.order
    out = set()
    divisors = [d for d in range(1, n + 1) if n % d == 0]
    for d in divisors:
        for rest in itertools.combinations(range(1, n), d - 1):
            cand = (0,) + rest
            cset = set(cand)
            if all(g.mult[a][b] in cset for a in cand for b in cand):
                out.add(mask_of(cand))
    return out


def mulclose(g, seed):
    """Oracle closure: saturate products of a generating set (naive)."""
    elems = {0} | set(seed)
    frontier = list(elems)
    while frontier:
        new = []
        for a in frontier:
            for b in list(elems):
                for x in (g.mult[a][b], g.mult[b][a]):
                    if x not in elems:
                        elems.add(x)
                        new.append(x)
        frontier = new
    return frozenset(elems)


def join_closure_subgroup_count(g):
    """Oracle: close the set of cyclic subgroups under pairwise joins."""
    cyclics = set()
    for e in range(g.order):
        powers = set()
        x = 0
        while True:
            powers.add(x)
            x = g.mult[x][e]
            if x == 0:
                break
        cyclics.add(frozenset(powers | {0}))
    known = set(cyclics)
    frontier = list(known)
    while frontier:
        new = []
        for a in frontier:
            for b in list(known):
                if a <= b or b <= a:
                    continue
                j = mulclose(g, a | b)
                if j not in known:
                    known.add(j)
                    new.append(j)
        frontier = new
    return len(known)


SMALL_GROUPS_LE_16 = [
    cyclic(1), cyclic(7), cyclic(12), cyclic(16),
    dihedral(4), dihedral(6),
    direct_product(cyclic(2), cyclic(2)),
    direct_product(cyclic(2), cyclic(6)),
    permutation_group(8, {"i": [2, 3, 1, 0, 6, 7, 5, 4],
                          "j": [4, 5, 7, 6, 1, 0, 2, 3]}, name="Q8"),
]


class TestEnumeration:
    @pytest.mark.parametrize("g", SMALL_GROUPS_LE_16, ids=lambda g: g.name)
    def test_powerset_oracle_up_to_16(self, g):
        lat = all_subgroups(g)
        assert set(lat.masks) == powerset_subgroup_masks(g)

    def test_cyclic_prime_has_two_subgroups(self):
        assert len(all_subgroups(cyclic(13)).masks) == 2

    def test_s3_six_subgroups(self, s3):
        lat = all_subgroups(s3)
        assert len(lat.masks) == 6
        assert set(lat.masks) == powerset_subgroup_masks(s3)

    def test_join_closure_oracle_counts(self, s4, a4, a5):
        assert len(all_subgroups(a4).masks) == join_closure_subgroup_count(a4)== 10
        assert len(all_subgroups(s4).masks) == join_closure_subgroup_count(s4) == 30
        assert len(all_subgroups(a5).masks) == join_closure_subgroup_count(a5) == 59

    def test_canonical_order(self, s4):
        lat = all_subgroups(s4)
        keys = [(lat.sizes[i], lat.members[i]) for i in range(len(lat.masks))]
        assert keys == sorted(keys)

    def test_contains_trivial_and_full(self, d8):
        lat = all_subgroups(d8)
        assert lat.masks[0] == 1
        assert lat.masks[-1] == (1 << d8.order) - 1

    def test_closed_under_conjugation(self, s4):
        lat = all_subgroups(s4)
        for i in range(len(lat.masks)):
            for x in range(s4.order):
                assert lat.conj_idx[i][x] < len(lat.masks)

    def test_lagrange(self, ex1_8):
        lat = all_subgroups(ex1_8)
        assert all(ex1_8.order % s == 0 for s in lat.sizes)

    def test_inclusion_pairs(self, s3):
        lat = all_subgroups(s3)
        pairs = lat.inclusion
        trivial, full = 0, len(lat.masks) - 1
        assert all((trivial, j) in pairs for j in range(1, len(lat.masks)))
        assert all((i, full) in pairs for i in range(len(lat.masks) - 1))


class TestGeneratedSubgroup:
    def test_empty_seed(self, s3):
        assert generated_subgroup(s3, []).order == 1

    def test_example_1_2_subject_has_order_6(self, ex1_2):
        h = generated_subgroup(ex1_2, [ex1_2.resolve("y"), ex1_2.resolve("w")])
        assert h.order == 6
        assert 36 % h.order == 0

    def test_all_elements(self, s3):
        assert generated_subgroup(s3, range(6)).order == 6

    def test_matches_mulclose_oracle(self, a4):
        for seed in [(1,), (1, 2), (3, 5), (2, 7, 9)]:
            got = generated_subgroup(a4, seed)
            assert set(got.members) == set(mulclose(a4, seed))


class TestSylowHall:
    def test_s3_sylows(self, s3):
        assert len(sylow_subgroups(s3, 3)) == 1
        twos = sylow_subgroups(s3, 2)
        assert len(twos) == 3
        assert all(p.order == 2 for p in twos)

    def test_example_1_5_unique_sylow_5(self, ex1_5):
        syl = sylow_subgroups(ex1_5, 5)
        x = ex1_5.resolve("x")
        expected = {ex1_5.power(x, k) for k in range(5)}
        assert len(syl) == 1
        assert set(syl[0].members) == expected

    @pytest.mark.parametrize("name", ["S4", "A5", "Ex1_8", "D12"])
    def test_sylow_counts_one_mod_p(self, name):
        g = group(name)
        from permutability.series import pi
        for p in pi(g):
            count = len(sylow_subgroups(g, p))
            assert count % p == 1

    def test_hall_full_prime_set_is_group(self, s3):
        halls = hall_subgroups(s3, {2, 3})
        assert len(halls) == 1
        assert halls[0].order == 6

    def test_hall_single_prime_equals_sylow(self, s3):
        assert {h.mask for h in hall_subgroups(s3, {2})} == \
            {p.mask for p in sylow_subgroups(s3, 2)}

    def test_hall_2_3_of_a5(self, a5):
        halls = hall_subgroups(a5, {2, 3})
        assert len(halls) == 5
        assert all(h.order == 12 for h in halls)

    def test_hall_may_be_empty_for_nonsolvable(self, a5):
        # A5 has no subgroup of order 20's complement class {2,5} -> order 20
        halls = hall_subgroups(a5, {2, 5})
        assert halls == []


class TestNormalizerCoreClosure:
    def test_normalizer_of_group_is_group(self, s3):
        lat = all_subgroups(s3)
        g_set = lat.subgroup(len(lat.masks) - 1)
        assert normalizer(s3, g_set).mask == lat.full_mask

    def test_example_1_2_z_outside_normalizer(self, ex1_2):
        y = generated_subgroup(ex1_2, [ex1_2.resolve("y")])
        n = normalizer(ex1_2, y)
        assert not n.mask >> ex1_2.resolve("z") & 1

    def test_core_of_transposition_oracle(self, s3):
        t = s3.resolve("s")
        h = generated_subgroup(s3, [t])
        # oracle: intersect all conjugates directly
        inter = None
        for x in range(6):
            conj = {s3.conjugate(e, x) for e in h.members}
            inter = conj if inter is None else inter & conj
        assert set(core(s3, h).members) == inter == {0}

    def test_normal_closure_is_least_fixed_point(self, s4):
        lat = all_subgroups(s4)
        for i in (1, 5, 9):
            nc = normal_closure(s4, lat.subgroup(i))
            j = lat.index[nc.mask]
            assert all(lat.conj_idx[j][x] == j for x in range(s4.order))
            assert lat.masks[i] & ~nc.mask == 0

    def test_relative_closure_trivial_under(self, s3):
        t = generated_subgroup(s3, [s3.resolve("s")])
        triv = generated_subgroup(s3, [])
        assert relative_normal_closure(s3, t, triv).mask == t.mask

    def test_relative_closure_transposition_under_a3(self, s3):
        # oracle: conjugates of the transposition by A3 are all transpositions,
        # and together they generate the whole group
        t = s3.resolve("s")
        a3 = generated_subgroup(s3, [s3.resolve("c")])
        got = relative_normal_closure(s3, generated_subgroup(s3, [t]), a3)
        conjugates = {s3.conjugate(t, a) for a in a3.members}
        assert set(got.members) == set(mulclose(s3, conjugates))
        assert got.order == 6

    def test_relative_closure_of_normal_is_itself(self, s4):
        lat = all_subgroups(s4)
        full = lat.subgroup(len(lat.masks) - 1)
        for i in range(len(lat.masks)):
            if lat.is_normal_in(i, lat.full_mask):
                sub = lat.subgroup(i)
                assert relative_normal_closure(s4, sub, full).mask == sub.mask


class TestCommutators:
    def test_abelian_trivial(self):
        g = cyclic(12)
        from permutability import commutator_subgroup
        lat = all_subgroups(g)
        full = lat.subgroup(len(lat.masks) - 1)
        assert commutator_subgroup(g, full, full).order == 1

    def test_s3_derived_is_a3_oracle(self, s3):
        from permutability import commutator_subgroup
        lat = all_subgroups(s3)
        full = lat.subgroup(len(lat.masks) - 1)
        got = commutator_subgroup(s3, full, full)
        comms = {s3.commutator(a, b) for a in range(6) for b in range(6)}
        assert set(got.members) == set(mulclose(s3, comms))
        assert got.order == 3

    def test_direct_factors_commute(self, ex1_8):
        from permutability import commutator_subgroup
        g1 = generated_subgroup(ex1_8, [ex1_8.resolve("x"), ex1_8.resolve("z")])
        g2 = generated_subgroup(ex1_8, [ex1_8.resolve("y"), ex1_8.resolve("w")])
        assert commutator_subgroup(ex1_8, g1, g2).order == 1


class TestSubnormality:
    def test_group_in_itself(self, s3):
        lat = all_subgroups(s3)
        assert is_subnormal(s3, lat.subgroup(len(lat.masks) - 1))

    def test_a4_not_subnormal_in_a5(self, a5):
        lat = all_subgroups(a5)
        a4_idx = next(i for i, s in enumerate(lat.sizes) if s == 12)
        assert not is_subnormal(a5, lat.subgroup(a4_idx))

    def test_d8_all_subgroups_subnormal(self, d8):
        # oracle: nilpotent groups satisfy the normalizer condition, so every
        # subgroup is subnormal; D8 has exactly 10 subgroups
        lat = all_subgroups(d8)
        assert len(lat.masks) == 10
        assert all(is_subnormal(d8, lat.subgroup(i)) for i in range(10))

    def test_normal_implies_subnormal(self, s4):
        lat = all_subgroups(s4)
        for i in range(len(lat.masks)):
            if is_normal(s4, lat.subgroup(i)):
                assert is_subnormal(s4, lat.subgroup(i))


class TestMaximalSupplementsComplements:
    def test_supplements_of_group_include_trivial(self, s3):
        lat = all_subgroups(s3)
        full = lat.subgroup(len(lat.masks) - 1)
        supp_masks = {k.mask for k in supplements(s3, full)}
        assert 1 in supp_masks

    def test_supplements_always_include_group(self, s4):
        lat = all_subgroups(s4)
        for i in (0, 3, 11):
            assert lat.full_mask in {k.mask for k in supplements(s4, lat.subgroup(i))}

    def test_a5_a4_supplemented_by_sylow_5(self, a5):
        lat = all_subgroups(a5)
        a4_idx = next(i for i, s in enumerate(lat.sizes) if s == 12)
        supp = supplements(a5, lat.subgroup(a4_idx))
        syl5 = {p.mask for p in sylow_subgroups(a5, 5)}
        assert syl5 <= {k.mask for k in supp}

    def test_complements_of_a3_in_s3(self, s3):
        a3 = generated_subgroup(s3, [s3.resolve("c")])
        comps = complements(s3, a3)
        assert len(comps) == 3
        assert all(k.order == 2 for k in comps)

    def test_complements_subset_of_supplements(self, d8):
        lat = all_subgroups(d8)
        for i in range(len(lat.masks)):
            h = lat.subgroup(i)
            comp = {k.mask for k in complements(d8, h)}
            supp = {k.mask for k in supplements(d8, h)}
            assert comp <= supp

    def test_maximal_subgroups_of_s3(self, s3):
        maxes = {m.order for m in maximal_subgroups(s3)}
        assert maxes == {2, 3}


class TestProductsAndPermuting:
    def test_self_product_permutes(self, s3):
        h = generated_subgroup(s3, [s3.resolve("s")])
        assert permutes(s3, h, h)

    def test_transpositions_do_not_permute_oracle(self, s3):
        lat = all_subgroups(s3)
        twos = [lat.subgroup(i) for i, s in enumerate(lat.sizes) if s == 2]
        a, b = twos[0], twos[1]
        ab = {s3.mult[x][y] for x in a.members for y in b.members}
        ba = {s3.mult[y][x] for x in a.members for y in b.members}
        assert ab != ba
        assert product_set(s3, a, b) == ab
        assert not permutes(s3, a, b)

    def test_transposition_with_a3_permutes(self, s3):
        h = generated_subgroup(s3, [s3.resolve("s")])
        a3 = generated_subgroup(s3, [s3.resolve("c")])
        assert permutes(s3, h, a3)
        assert len(product_set(s3, h, a3)) == 6

    def test_permuting_product_is_closed(self, s4):
        lat = all_subgroups(s4)
        for i in range(len(lat.masks)):
            for j in range(i, len(lat.masks)):
                if lat.permutes(i, j):
                    prod = lat.product_mask(i, j)
                    mem = bits_list(prod)
                    assert all(
                        prod >> s4.mult[a][b] & 1 for a in mem for b in mem)


class TestSubgroupSetValidation:
    def test_from_members_validates_closure(self, s3):
        with pytest.raises(ValueError):
            SubgroupSet.from_members(s3, [0, s3.resolve("s"), s3.resolve("c")])

    def test_from_members_accepts_subgroup(self, s3):
        h = SubgroupSet.from_members(s3, [0, s3.resolve("s")])
        assert h.order == 2


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=1, max_value=24),
       st.sets(st.integers(min_value=0, max_value=23), max_size=3))
def test_generated_subgroup_order_divides_group_order(n, seed):
    g = cyclic(n)
    h = generated_subgroup(g, {e % n for e in seed})
    assert n % h.order == 0


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["S3", "D8", "A4", "C12"]),
       st.integers(min_value=0, max_value=10 ** 6))
def test_permutes_symmetric_and_product_sizes_match(name, pick):
    g = group(name)
    lat = all_subgroups(g)
    n = len(lat.masks)
    i, j = pick % n, (pick // n) % n
    assert lat.permutes(i, j) == lat.permutes(j, i)
    assert lat.product_mask(i, j).bit_count() == lat.product_size(i, j)
