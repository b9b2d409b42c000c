"""Group construction and table validation tests.

Derived expected values are computed by independent oracles written here
(repeated multiplication, hand-coded coset partitions, brute products).
"""

import itertools

import pytest

from permutability import (
    GroupSpec,
    InvalidAction,
    NotNormal,
    OrderCapExceeded,
    ParseError,
    RelationViolated,
    alternating,
    build_from_spec,
    cyclic,
    dihedral,
    direct_product,
    element_order,
    permutation_group,
    quotient,
    semidirect_product,
    subgroup_table,
    symmetric,
    verify_relations,
)
from permutability.tables import from_rows

from conftest import ex1_2_spec, ex1_5_spec, ex1_8_spec


def brute_order(group, e):
    """Oracle: repeated multiplication until the identity reappears."""
    k, x = 1, e
    while x != 0:
        x = group.mult[x][e]
        k += 1
    return k


class TestElementaryConstructions:
    def test_cyclic_one_is_trivial(self):
        g = cyclic(1)
        assert g.order == 1
        assert g.mult == ((0,),)

    def test_cyclic_orders(self):
        g = cyclic(12)
        assert g.order == 12
        assert element_order(g, g.resolve("a")) == 12

    def test_dihedral_structure(self):
        d8 = dihedral(4)
        assert d8.order == 8
        r, f = d8.resolve("r"), d8.resolve("f")
        assert element_order(d8, r) == 4
        assert element_order(d8, f) == 2
        # f inverts r
        assert d8.conjugate(r, f) == d8.inv[r]

    def test_symmetric_alternating_orders(self):
        assert symmetric(3).order == 6
        assert symmetric(4).order == 24
        assert alternating(4).order == 12
        assert alternating(5).order == 60

    def test_symmetric_identity_is_zero(self):
        s4 = symmetric(4)
        assert all(s4.mult[0][g] == g for g in range(24))

    def test_permutation_group_closure(self):
        q8 = permutation_group(8, {"i": [2, 3, 1, 0, 6, 7, 5, 4],
                                   "j": [4, 5, 7, 6, 1, 0, 2, 3]}, name="Q8")
        assert q8.order == 8
        assert verify_relations(q8, ["i^4", "i^2*j^-2", "j^-1*i*j*i"])

    def test_permutation_group_rejects_non_permutation(self):
        with pytest.raises(ValueError):
            permutation_group(3, {"a": [0, 0, 1]})

    def test_order_cap(self):
        with pytest.raises(OrderCapExceeded):
            symmetric(7)
        with pytest.raises(OrderCapExceeded):
            cyclic(400)
        assert cyclic(400, cap=500).order == 400


class TestValidation:
    def test_rejects_non_latin_square(self):
        rows = [[0, 1], [1, 0]]
        rows[1][1] = 1  # duplicate in row
        with pytest.raises(ValueError):
            from_rows([[0, 1], [1, 1]])

    def test_rejects_wrong_identity(self):
        # swap rows so element 0 is not the identity
        with pytest.raises(ValueError):
            from_rows([[1, 0], [0, 1]])

    def test_rejects_non_associative_latin_square(self):
        # a 5x5 Latin square with identity that is not a group table
        rows = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
        with pytest.raises(ValueError, match="associative"):
            from_rows(rows)


class TestBuildFromSpec:
    def test_example_1_5_realization(self):
        g = build_from_spec(ex1_5_spec())
        assert g.order == 20
        assert element_order(g, g.resolve("y")) == 4
        assert element_order(g, g.resolve("x")) == 5
        x, y = g.resolve("x"), g.resolve("y")
        assert g.conjugate(x, y) == g.power(x, 2)

    def test_example_1_2_relations_hold(self):
        # oracle: each declared relation evaluates to the identity directly
        g = build_from_spec(ex1_2_spec())
        assert g.order == 36
        assert verify_relations(g, ex1_2_spec().relations)

    def test_example_1_8_realization(self):
        g = build_from_spec(ex1_8_spec())
        assert g.order == 60
        assert verify_relations(g, ex1_8_spec().relations)

    def test_determinism(self):
        a = build_from_spec(ex1_2_spec())
        b = build_from_spec(ex1_2_spec())
        assert a.mult == b.mult
        assert a.generator_labels == b.generator_labels

    def test_relation_violation_detected(self):
        spec = GroupSpec(kind="cyclic", n=5, label="x", relations=("x^3",))
        with pytest.raises(RelationViolated):
            build_from_spec(spec)

    def test_invalid_action_not_automorphism(self):
        # x -> x^2 squares to x^4 = identity on C4: not a bijection
        spec = GroupSpec(kind="semidirect",
                         kernel=GroupSpec(kind="cyclic", n=4, label="x"),
                         actor=GroupSpec(kind="cyclic", n=2, label="z"),
                         action={"z": {"x": "x^2"}})
        with pytest.raises(InvalidAction):
            build_from_spec(spec)

    def test_invalid_action_not_homomorphism(self):
        # an order-4 automorphism assigned to an order-2 actor generator
        spec = GroupSpec(kind="semidirect",
                         kernel=GroupSpec(kind="cyclic", n=5, label="x"),
                         actor=GroupSpec(kind="cyclic", n=2, label="z"),
                         action={"z": {"x": "x^2"}})
        with pytest.raises(InvalidAction):
            build_from_spec(spec)

    def test_spec_cap(self):
        spec = GroupSpec(kind="direct", factors=(
            GroupSpec(kind="cyclic", n=20, label="a"),
            GroupSpec(kind="cyclic", n=21, label="b")))
        with pytest.raises(OrderCapExceeded):
            build_from_spec(spec)

    def test_bad_n_rejected_at_spec_level(self):
        with pytest.raises(ParseError):
            GroupSpec(kind="cyclic", n=0)


class TestDirectProduct:
    def test_trivial_factor_embeds(self):
        b = symmetric(3)
        g = direct_product(cyclic(1), b)
        assert g.order == b.order
        assert g.mult == b.mult

    def test_orders_divide_15(self):
        g = direct_product(cyclic(3, label="u"), cyclic(5, label="v"))
        assert g.order == 15
        for e in range(15):
            assert 15 % brute_order(g, e) == 0

    def test_s3_d10_product_order(self):
        g = direct_product(symmetric(3), dihedral(5))
        assert g.order == 60

    def test_label_collision_prefixed(self):
        g = direct_product(cyclic(2, label="a"), cyclic(3, label="a"))
        assert set(g.generator_labels) == {"f0.a", "f1.a"}

    def test_componentwise_multiplication(self):
        a, b = symmetric(3), cyclic(4)
        g = direct_product(a, b)
        for x1, y1 in itertools.product(range(6), range(4)):
            for x2, y2 in itertools.product(range(6), range(4)):
                lhs = g.mult[x1 * 4 + y1][x2 * 4 + y2]
                assert lhs == a.mult[x1][x2] * 4 + b.mult[y1][y2]


class TestSemidirect:
    def test_matches_example_1_5(self):
        g = semidirect_product(cyclic(5, label="x"), cyclic(4, label="y"),
                               {"y": {"x": "x^2"}})
        assert g.order == 20
        assert verify_relations(g, ["x^5", "y^4", "y^-1*x*y*x^-2"])

    def test_kernel_generators_must_generate(self):
        kernel = direct_product(cyclic(2, label="a"), cyclic(2, label="b"))
        # drop one generator label: the remaining one does not generate
        broken = subgroup_table(kernel, range(4))[0]
        broken.generator_labels.clear()
        broken.generator_labels["a"] = 1
        with pytest.raises(InvalidAction):
            semidirect_product(broken, cyclic(2, label="z"), {"z": {"a": "a"}})

    def test_action_must_cover_all_kernel_generators(self):
        kernel = direct_product(cyclic(3, label="a"), cyclic(3, label="b"))
        with pytest.raises(InvalidAction):
            semidirect_product(kernel, cyclic(2, label="z"), {"z": {"a": "a^-1"}})


class TestQuotient:
    def test_quotient_by_trivial(self, s3):
        q, proj = quotient(s3, [0])
        assert q.order == 6
        assert sorted(proj) == list(range(6))

    def test_s3_mod_a3_hand_coset_oracle(self, s3):
        # oracle: hand-coded coset partition of S3 by parity
        perms = list(itertools.permutations(range(3)))
        parity = []
        for p in perms:
            inversions = sum(1 for i in range(3) for j in range(i + 1, 3)
                             if p[i] > p[j])
            parity.append(inversions % 2)
        a3 = [i for i, s in enumerate(parity) if s == 0]
        q, proj = quotient(s3, a3)
        assert q.order == 2
        assert all(proj[i] == parity[i] for i in range(6))

    def test_example_1_5_mod_kernel_is_c4(self, ex1_5):
        x = ex1_5.resolve("x")
        kernel = [ex1_5.power(x, k) for k in range(5)]
        q, proj = quotient(ex1_5, kernel)
        assert q.order == 4
        assert element_order(q, proj[ex1_5.resolve("y")]) == 4

    def test_quotient_requires_normal(self, s3):
        t = s3.resolve("s")
        with pytest.raises(NotNormal):
            quotient(s3, [0, t])

    def test_projection_is_homomorphism(self, s4):
        from permutability import all_subgroups
        lat = all_subgroups(s4)
        v4 = next(i for i, m in enumerate(lat.masks)
                  if lat.sizes[i] == 4 and lat.is_normal_in(i, lat.full_mask))
        q, proj = quotient(s4, lat.members[v4])
        for a in range(24):
            for b in range(24):
                assert proj[s4.mult[a][b]] == q.mult[proj[a]][proj[b]]


class TestElementOrder:
    def test_identity(self, s3):
        assert element_order(s3, 0) == 1

    def test_example_1_5_y_has_order_4(self, ex1_5):
        assert element_order(ex1_5, ex1_5.resolve("y")) == 4

    def test_three_cycle_oracle(self, s3):
        three_cycles = [e for e in range(6) if brute_order(s3, e) == 3]
        assert len(three_cycles) == 2
        for e in three_cycles:
            assert element_order(s3, e) == 3


class TestVerifyRelations:
    def test_empty_list(self, s3):
        assert verify_relations(s3, [])

    def test_failing_relation(self):
        assert not verify_relations(cyclic(5, label="a"), ["a^3"])

    def test_subgroup_table_reindexes(self, s4):
        from permutability import all_subgroups
        lat = all_subgroups(s4)
        i = next(i for i, s in enumerate(lat.sizes) if s == 8)
        t, members = subgroup_table(s4, lat.members[i])
        assert t.order == 8
        for a in range(8):
            for b in range(8):
                assert members[t.mult[a][b]] == s4.mult[members[a]][members[b]]
