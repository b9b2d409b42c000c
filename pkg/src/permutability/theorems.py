"""Executable checks for the characterization theorems and lemmas.

Each check evaluates the statements of one theorem on a concrete group and
reports whether the claimed relation between them (equivalence, implication,
biconditional) holds.  Statement values are booleans or None when a statement
does not apply to the group; a report whose hypotheses fail entirely is
marked not applicable rather than vacuously passing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .classes import (
    is_bt_characterization,
    is_pst_characterization,
    is_sst_characterization,
    chief_factors_below_cyclic_and_G_isomorphic,
    is_complemented,
    is_transitive_class,
)
from .lattice import (
    SubgroupLattice,
    SubgroupSet,
    all_subgroups,
    bits_list,
    factorize,
    iter_bits,
    mask_of,
    p_part,
)
from .predicates import (
    predicate_bool,
    recheck_ss_witness,
    ss_permutable_in_normalizer_pairs,
    ss_witness_index,
)
from .series import (
    derived_series,
    fitting,
    frattini,
    generalized_fitting,
    hypercenter,
    is_sc_group,
    is_solvable_table,
    nilpotent_residual,
    pi,
    system_normalizer,
)
from .tables import GroupTable, direct_product_many, quotient, subgroup_table

THEOREM_IDS = (
    "T1_1", "A", "B", "C", "D", "E", "F", "G", "H", "I",
    "C1_4", "C1_6", "C1_7",
    "L2_1", "L2_2", "L2_4", "L2_5", "L2_6", "L2_7", "L2_8", "L3_1",
    "KEGEL",
)


@dataclass(frozen=True)
class TheoremReport:
    theorem_id: str
    group_name: str
    statements: tuple[tuple[str, bool | None], ...]
    passed: bool
    applicable: bool = True
    counterexamples: tuple[dict, ...] = ()
    notes: tuple[str, ...] = ()


def _members_of(lat: SubgroupLattice, i: int) -> list[int]:
    return lat.members[i]


def _sub_record(lat: SubgroupLattice, i: int) -> list[int]:
    return list(lat.members[i])


def _agree(statements) -> bool:
    vals = [v for _, v in statements if v is not None]
    return all(v == vals[0] for v in vals) if vals else True


def _forall(lat, pred: str, indices, umask=None):
    """(True, None) or (False, least failing index)."""
    if umask is None:
        umask = lat.full_mask
    for i in indices:
        if not predicate_bool(lat, pred, i, umask):
            return False, i
    return True, None


def _na_report(theorem_id: str, group: GroupTable, labels, note: str) -> TheoremReport:
    return TheoremReport(
        theorem_id, group.name,
        tuple((l, None) for l in labels),
        passed=True, applicable=False, notes=(note,))


def _prime_power_indices(lat: SubgroupLattice) -> list[int]:
    return [i for i in range(len(lat.masks)) if lat.is_prime_power(i)]


def _p_subgroup_indices(lat: SubgroupLattice, p: int) -> list[int]:
    return [i for i in range(len(lat.masks))
            if p_part(lat.sizes[i], p) == lat.sizes[i]]


def _sylow_commuting_away_from_residual(group: GroupTable) -> tuple[bool, tuple]:
    """[G_p, G_q] = 1 for distinct p, q outside the primes of the residual."""
    lat = all_subgroups(group)
    away = sorted(pi(group) - pi_of_order(nilpotent_residual(group).order))
    for ai in range(len(away)):
        for bi in range(ai + 1, len(away)):
            for ip in lat.sylow_indices(away[ai]):
                for iq in lat.sylow_indices(away[bi]):
                    if lat.commutator_mask(lat.masks[ip], lat.masks[iq]) != 1:
                        return False, (ip, iq)
    return True, ()


def pi_of_order(n: int) -> set[int]:
    return set(factorize(n))


# ---------------------------------------------------------------------------
# Theorem 1.1 and A-I


def check_theorem_1_1(group: GroupTable) -> TheoremReport:
    lat = all_subgroups(group)
    solvable = is_solvable_table(group)
    every = list(range(len(lat.masks)))
    pp = _prime_power_indices(lat)
    s3, w3 = _forall(lat, "semipermutable", every)
    s4, w4 = _forall(lat, "s_semipermutable", every)
    s5, w5 = _forall(lat, "semipermutable", pp)
    s6, w6 = _forall(lat, "s_semipermutable", pp)
    if solvable:
        s1 = is_transitive_class(group, "BT").verdict
        s2 = is_transitive_class(group, "SBT").verdict
        pst = is_transitive_class(group, "PST").verdict
        comm, _ = _sylow_commuting_away_from_residual(group)
        s7 = pst and comm
    else:
        s1 = s2 = s7 = None
    statements = (
        ("solvable_BT", s1), ("solvable_SBT", s2),
        ("all_semipermutable", s3), ("all_s_semipermutable", s4),
        ("prime_power_semipermutable", s5), ("prime_power_s_semipermutable", s6),
        ("solvable_PST_with_commuting_sylows", s7),
    )
    passed = _agree(statements)
    cx = []
    if not passed:
        for lbl, v in statements:
            cx.append({"statement": lbl, "value": v})
    return TheoremReport("T1_1", group.name, statements, passed,
                         counterexamples=tuple(cx))


def check_theorem_A(group: GroupTable) -> TheoremReport:
    sst = is_transitive_class(group, "SST").verdict
    nsst = is_transitive_class(group, "NSST").verdict
    sc = is_sc_group(group)
    passed = (not sst or sc) and (not nsst or sc)
    statements = (("SST", sst), ("NSST", nsst), ("SC", sc))
    return TheoremReport("A", group.name, statements, passed)


def check_theorem_B(group: GroupTable) -> TheoremReport:
    lat = all_subgroups(group)
    solvable = is_solvable_table(group)
    subnormal = [i for i in range(len(lat.masks)) if lat.is_subnormal(i)]
    fstar = generalized_fitting(group)
    inside_fstar = lat.subgroups_in(fstar.mask)
    r1, w1 = _forall(lat, "ss_permutable", subnormal)
    r2, w2 = _forall(lat, "nss_permutable", subnormal)
    r3, w3 = _forall(lat, "ss_permutable", inside_fstar)
    r4, w4 = _forall(lat, "nss_permutable", inside_fstar)
    statements = (
        ("solvable_subnormals_ss", solvable and r1),
        ("solvable_subnormals_nss", solvable and r2),
        ("fstar_subgroups_ss", r3),
        ("fstar_subgroups_nss", r4),
        ("solvable_PST", solvable and is_transitive_class(group, "PST").verdict),
    )
    passed = _agree(statements)
    cx = []
    if not passed:
        for (lbl, v), w in zip(statements, (w1, w2, w3, w4, None)):
            rec = {"statement": lbl, "value": v}
            if w is not None:
                rec["witness_subgroup"] = _sub_record(lat, w)
            cx.append(rec)
    return TheoremReport("B", group.name, statements, passed,
                         counterexamples=tuple(cx))


def check_theorem_C(group: GroupTable) -> TheoremReport:
    lat = all_subgroups(group)
    s1, s2 = True, True
    cx = []
    for p in sorted(pi(group)):
        for h, k, ss, nss in ss_permutable_in_normalizer_pairs(group, p):
            if s1 and not ss.verdict:
                s1 = False
                cx.append({"statement": "ss_in_normalizer", "prime": p,
                           "subject": list(h.members), "middle": list(k.members)})
            if s2 and not nss.verdict:
                s2 = False
                cx.append({"statement": "nss_in_normalizer", "prime": p,
                           "subject": list(h.members), "middle": list(k.members)})
        if not s1 and not s2:
            break
    s3 = is_solvable_table(group) and is_transitive_class(group, "PST").verdict
    statements = (("ss_in_normalizers", s1), ("nss_in_normalizers", s2),
                  ("solvable_PST", s3))
    passed = _agree(statements)
    return TheoremReport("C", group.name, statements, passed,
                         counterexamples=tuple(cx) if not passed else ())


_D_LABELS = ("SST", "NSST", "all_ss", "all_nss", "prime_power_ss",
             "prime_power_nss", "cyclic_prime_power_ss", "cyclic_prime_power_nss")


def check_theorem_D(group: GroupTable) -> TheoremReport:
    if not is_solvable_table(group):
        return _na_report("D", group, _D_LABELS, "requires a solvable group")
    lat = all_subgroups(group)
    every = list(range(len(lat.masks)))
    pp = _prime_power_indices(lat)
    cpp = lat.cyclic_prime_power_indices()
    vals = (
        is_transitive_class(group, "SST").verdict,
        is_transitive_class(group, "NSST").verdict,
        _forall(lat, "ss_permutable", every)[0],
        _forall(lat, "nss_permutable", every)[0],
        _forall(lat, "ss_permutable", pp)[0],
        _forall(lat, "nss_permutable", pp)[0],
        _forall(lat, "ss_permutable", cpp)[0],
        _forall(lat, "nss_permutable", cpp)[0],
    )
    statements = tuple(zip(_D_LABELS, vals))
    passed = _agree(statements)
    cx = tuple({"statement": l, "value": v} for l, v in statements) if not passed else ()
    return TheoremReport("D", group.name, statements, passed, counterexamples=cx)


_E_LABELS = ("frattini_product", "quotient_complemented", "hall_decomposition")


def check_theorem_E(group: GroupTable) -> TheoremReport:
    if not (is_solvable_table(group) and is_transitive_class(group, "SST").verdict):
        return _na_report("E", group, _E_LABELS, "requires a solvable SST-group")
    lat = all_subgroups(group)
    L = nilpotent_residual(group)
    D = system_normalizer(group)
    # the cited decomposition: D is a Hall subgroup and G = L x| D
    hall_ok = (math.gcd(D.order, group.order // D.order) == 1
               and L.order * D.order == group.order
               and (L.mask & D.mask) == 1)
    phi_g = frattini(group)
    tl, lmem = subgroup_table(group, L.members)
    phi_l_local = frattini(tl)
    phi_l = mask_of(lmem[e] for e in phi_l_local.members)
    td, dmem = subgroup_table(group, D.members)
    phi_d_local = frattini(td)
    phi_d = mask_of(dmem[e] for e in phi_d_local.members)
    li, di = lat.index[phi_l], lat.index[phi_d]
    product = lat.product_mask(li, di)
    phi_eq = product == phi_g.mask and (phi_l & phi_d) == 1
    q, _ = quotient(group, phi_g.members)
    comp = is_complemented(q).verdict
    statements = (("frattini_product", phi_eq),
                  ("quotient_complemented", comp),
                  ("hall_decomposition", hall_ok))
    passed = phi_eq and comp and hall_ok
    cx = ()
    if not passed:
        cx = ({"frattini": _sub_record(lat, lat.index[phi_g.mask]),
               "phi_L": bits_list(phi_l), "phi_D": bits_list(phi_d)},)
    return TheoremReport("E", group.name, statements, passed, counterexamples=cx)


_F_LABELS = ("SST", "p_subgroups_covered", "p_elements_covered")


def check_theorem_F(group: GroupTable) -> TheoremReport:
    if not (is_solvable_table(group) and is_transitive_class(group, "BT").verdict):
        return _na_report("F", group, _F_LABELS, "requires a solvable BT-group")
    lat = all_subgroups(group)
    L = nilpotent_residual(group)
    L_idx = lat.index[L.mask]
    away = sorted(pi(group) - pi_of_order(L.order))
    from .series import o_p
    from .tables import element_order

    def sylow_partners(p: int, hmask: int, hsize: int):
        """p-subgroups K_p with hmask * K_p a Sylow p-subgroup, with <K_p^L>."""
        target = p_part(group.order, p)
        for kp in _p_subgroup_indices(lat, p):
            prod = 0
            for x in iter_bits(hmask):
                prod |= lat.translate(x, kp)
            if prod.bit_count() != target or prod not in lat.index:
                continue
            yield kp, lat.relative_normal_closure(lat.masks[kp], L_idx)

    def covered_subgroups(p: int) -> bool:
        opg = o_p(group, p).mask
        for h in _p_subgroup_indices(lat, p):
            ok = False
            for kp, ncl in sylow_partners(p, lat.masks[h], lat.sizes[h]):
                comm = lat.commutator_mask(lat.masks[h], lat.masks[ncl])
                if comm & ~opg == 0:
                    ok = True
                    break
            if not ok:
                return False
        return True

    def covered_elements(p: int) -> bool:
        opg = o_p(group, p).mask
        for x in range(group.order):
            k = element_order(group, x)
            if p_part(k, p) != k:
                continue
            cyc = lat.generated([x])
            ok = False
            for kp, ncl in sylow_partners(p, cyc, cyc.bit_count()):
                comm = lat.commutator_mask(1 << x, lat.masks[ncl])
                if comm & ~opg == 0:
                    ok = True
                    break
            if not ok:
                return False
        return True

    s2 = all(covered_subgroups(p) for p in away)
    s3 = all(covered_elements(p) for p in away)
    s1 = is_transitive_class(group, "SST").verdict
    statements = tuple(zip(_F_LABELS, (s1, s2, s3)))
    passed = _agree(statements)
    cx = tuple({"statement": l, "value": v} for l, v in statements) if not passed else ()
    return TheoremReport("F", group.name, statements, passed, counterexamples=cx)


def check_theorem_G(groups: list[GroupTable], product: GroupTable | None = None) -> TheoremReport:
    if product is None:
        product = direct_product_many(groups)
    lhs = is_solvable_table(product) and is_transitive_class(product, "BT").verdict
    rhs = True
    for i, gi in enumerate(groups):
        if not (is_solvable_table(gi) and is_transitive_class(gi, "BT").verdict):
            rhs = False
            break
        li = nilpotent_residual(gi)
        for j, gj in enumerate(groups):
            if i != j and math.gcd(li.order, gj.order) != 1:
                rhs = False
                break
        if not rhs:
            break
    statements = (("product_solvable_BT", lhs), ("factors_BT_and_coprime_residuals", rhs))
    return TheoremReport("G", product.name, statements, lhs == rhs)


def check_theorem_H(groups: list[GroupTable], product: GroupTable | None = None) -> TheoremReport:
    if product is None:
        product = direct_product_many(groups)
    hyp = all(
        is_solvable_table(g) and is_transitive_class(g, "SST").verdict
        for g in groups
    ) and all(
        math.gcd(groups[i].order, groups[j].order) == 1
        for i in range(len(groups)) for j in range(i + 1, len(groups))
    )
    concl = is_solvable_table(product) and is_transitive_class(product, "SST").verdict
    statements = (("factors_SST_and_coprime", hyp), ("product_solvable_SST", concl))
    return TheoremReport("H", product.name, statements, (not hyp) or concl)


def _second_derived_mask(group: GroupTable, lat: SubgroupLattice, n_idx: int) -> int:
    m = lat.masks[n_idx]
    d1 = lat.commutator_mask(m, m)
    return lat.commutator_mask(d1, d1)


def check_theorem_I(group: GroupTable) -> TheoremReport:
    lat = all_subgroups(group)
    lhs_sst = is_solvable_table(group) and is_transitive_class(group, "SST").verdict
    lhs_bt = is_solvable_table(group) and is_transitive_class(group, "BT").verdict
    rhs_sst = rhs_bt = False
    for i in range(len(lat.masks)):
        if not lat.is_normal_in(i, lat.full_mask):
            continue
        tn, _ = subgroup_table(group, lat.members[i])
        if not (is_solvable_table(tn) and is_transitive_class(tn, "PST").verdict):
            continue
        dd = _second_derived_mask(group, lat, i)
        if dd == 1:
            q = group
        else:
            q, _ = quotient(group, bits_list(dd))
        if not is_solvable_table(q):
            continue
        if not rhs_sst and is_transitive_class(q, "SST").verdict:
            rhs_sst = True
        if not rhs_bt and is_transitive_class(q, "BT").verdict:
            rhs_bt = True
        if rhs_sst and rhs_bt:
            break
    statements = (
        ("solvable_SST", lhs_sst), ("exists_normal_pst_with_sst_quotient", rhs_sst),
        ("solvable_BT", lhs_bt), ("exists_normal_pst_with_bt_quotient", rhs_bt),
    )
    passed = (lhs_sst == rhs_sst) and (lhs_bt == rhs_bt)
    return TheoremReport(
        "I", group.name, statements, passed,
        notes=("hypercenter lifting per the final preliminary lemma",))


# ---------------------------------------------------------------------------
# corollaries


def check_corollary_1_4(group: GroupTable) -> TheoremReport:
    if not is_solvable_table(group):
        return _na_report("C1_4", group, ("SST", "BT"), "requires a solvable group")
    sst = is_transitive_class(group, "SST").verdict
    bt = is_transitive_class(group, "BT").verdict
    statements = (("SST", sst), ("BT", bt))
    return TheoremReport("C1_4", group.name, statements, (not sst) or bt)


def check_corollary_1_6(group: GroupTable) -> TheoremReport:
    labels = ("subgroups_SST", "quotients_SST")
    if not (is_solvable_table(group) and is_transitive_class(group, "SST").verdict):
        return _na_report("C1_6", group, labels, "requires a solvable SST-group")
    lat = all_subgroups(group)
    subs_ok, quots_ok = True, True
    cx = []
    for cls in lat.conjugacy_classes:
        i = cls[0]
        t, _ = subgroup_table(group, lat.members[i])
        if not (is_solvable_table(t) and is_transitive_class(t, "SST").verdict):
            subs_ok = False
            cx.append({"subgroup": _sub_record(lat, i)})
            break
    for i in range(len(lat.masks)):
        if not lat.is_normal_in(i, lat.full_mask):
            continue
        q, _ = quotient(group, lat.members[i])
        if not (is_solvable_table(q) and is_transitive_class(q, "SST").verdict):
            quots_ok = False
            cx.append({"quotient_by": _sub_record(lat, i)})
            break
    statements = (("subgroups_SST", subs_ok), ("quotients_SST", quots_ok))
    return TheoremReport("C1_6", group.name, statements, subs_ok and quots_ok,
                         counterexamples=tuple(cx))


def check_corollary_1_7(group: GroupTable) -> TheoremReport:
    labels = ("SST", "all_ss_or_abnormal", "all_nss_or_abnormal")
    if not is_solvable_table(group):
        return _na_report("C1_7", group, labels, "requires a solvable group")
    lat = all_subgroups(group)
    full = lat.full_mask
    s2 = s3 = True
    cx = []
    for i in range(len(lat.masks)):
        ab = None
        if not predicate_bool(lat, "ss_permutable", i, full):
            ab = predicate_bool(lat, "abnormal", i, full)
            if not ab:
                s2 = False
                cx.append({"statement": "all_ss_or_abnormal",
                           "subgroup": _sub_record(lat, i)})
        if s3 and not predicate_bool(lat, "nss_permutable", i, full):
            if ab is None:
                ab = predicate_bool(lat, "abnormal", i, full)
            if not ab:
                s3 = False
                cx.append({"statement": "all_nss_or_abnormal",
                           "subgroup": _sub_record(lat, i)})
        if not s2 and not s3:
            break
    s1 = is_transitive_class(group, "SST").verdict
    statements = (("SST", s1), ("all_ss_or_abnormal", s2), ("all_nss_or_abnormal", s3))
    passed = _agree(statements)
    return TheoremReport("C1_7", group.name, statements, passed,
                         counterexamples=tuple(cx) if not passed else ())


# ---------------------------------------------------------------------------
# lemmas

def _ss_true_indices(lat, normal_only=False) -> list[int]:
    pred = "nss_permutable" if normal_only else "ss_permutable"
    return [i for i in range(len(lat.masks))
            if predicate_bool(lat, pred, i, lat.full_mask)]


def _valid_witnesses(lat, h_idx, normal_only=False) -> list[int]:
    return [
        j for j in lat.supplement_indices(h_idx)
        if recheck_ss_witness(lat, h_idx, j, lat.full_mask, normal_only)
    ]


def check_lemma_2_1(group: GroupTable) -> TheoremReport:
    from .series import is_nilpotent_table

    lat = all_subgroups(group)
    full = lat.full_mask
    normals = [i for i in range(len(lat.masks)) if lat.is_normal_in(i, full)]
    nilpotent_normals = [
        n for n in normals
        if is_nilpotent_table(subgroup_table(group, lat.members[n])[0])
    ]
    items: dict[str, bool] = {}
    cx = []

    for variant, pred in (("ss", "ss_permutable"), ("nss", "nss_permutable")):
        normal_only = variant == "nss"
        true_idx = _ss_true_indices(lat, normal_only)
        # (1) restriction to intermediate subgroups
        ok = True
        for h in true_idx:
            hm = lat.masks[h]
            for l in range(len(lat.masks)):
                if hm & ~lat.masks[l]:
                    continue
                if not predicate_bool(lat, pred, h, lat.masks[l]):
                    ok = False
                    cx.append({"item": f"{variant}(1)", "subject": _sub_record(lat, h),
                               "intermediate": _sub_record(lat, l)})
                    break
            if not ok:
                break
        items[f"{variant}_1_restriction"] = ok

        # (2) image in quotients, (3) preimage lifting
        ok2 = ok3 = True
        for n in normals:
            q, proj = quotient(group, lat.members[n])
            qlat = all_subgroups(q)
            if ok2:
                for h in true_idx:
                    img = mask_of(proj[e] for e in lat.members[h])
                    img_idx = qlat.index[qlat.generated(iter_bits(img))]
                    assert qlat.masks[img_idx] == img  # image of a subgroup
                    if not predicate_bool(qlat, pred, img_idx, qlat.full_mask):
                        ok2 = False
                        cx.append({"item": f"{variant}(2)",
                                   "subject": _sub_record(lat, h),
                                   "modulo": _sub_record(lat, n)})
                        break
            if ok3:
                for lq in range(len(qlat.masks)):
                    if not predicate_bool(qlat, pred, lq, qlat.full_mask):
                        continue
                    pre = mask_of(e for e in range(group.order)
                                  if qlat.masks[lq] >> proj[e] & 1)
                    if not predicate_bool(lat, pred, lat.index[pre], full):
                        ok3 = False
                        cx.append({"item": f"{variant}(3)",
                                   "preimage": bits_list(pre),
                                   "modulo": _sub_record(lat, n)})
                        break
            if not ok2 and not ok3:
                break
        items[f"{variant}_2_quotient_image"] = ok2
        items[f"{variant}_3_quotient_lift"] = ok3

        # (6) conjugate witnesses, (7) nilpotent-normal product witnesses,
        # (8) Sylow products of p-subgroup subjects
        ok6 = ok7 = ok8 = True
        for h in true_idx:
            for k in _valid_witnesses(lat, h, normal_only):
                if ok6:
                    for x in range(group.order):
                        kc = lat.conj_idx[k][x]
                        if not recheck_ss_witness(lat, h, kc, full, normal_only):
                            ok6 = False
                            cx.append({"item": f"{variant}(6)",
                                       "subject": _sub_record(lat, h),
                                       "witness": _sub_record(lat, k),
                                       "conjugating_element": x})
                            break
                if ok7:
                    for n in nilpotent_normals:
                        nk = lat.index[lat.product_mask(n, k)]
                        if not recheck_ss_witness(lat, h, nk, full, normal_only):
                            ok7 = False
                            cx.append({"item": f"{variant}(7)",
                                       "subject": _sub_record(lat, h),
                                       "witness": _sub_record(lat, nk)})
                            break
                if ok8 and lat.is_prime_power(h):
                    (p, _), = factorize(lat.sizes[h]).items()
                    target = p_part(group.order, p)
                    for kp in lat.sylow_indices(p, lat.masks[k]):
                        if lat.product_mask(h, kp).bit_count() != target:
                            ok8 = False
                            cx.append({"item": f"{variant}(8)",
                                       "subject": _sub_record(lat, h),
                                       "sylow_of_witness": _sub_record(lat, kp)})
                            break
        items[f"{variant}_6_conjugate_witnesses"] = ok6
        items[f"{variant}_7_nilpotent_product_witnesses"] = ok7
        items[f"{variant}_8_sylow_products"] = ok8

    # (4) ss implies s-semipermutable; (5) inside Fitting implies s-permutable
    ss_true = _ss_true_indices(lat)
    ok4, w4 = _forall(lat, "s_semipermutable", ss_true)
    if not ok4:
        cx.append({"item": "(4)", "subject": _sub_record(lat, w4)})
    items["4_s_semipermutable"] = ok4
    f = fitting(group)
    in_f = [i for i in ss_true if lat.masks[i] & ~f.mask == 0]
    ok5, w5 = _forall(lat, "s_permutable", in_f)
    if not ok5:
        cx.append({"item": "(5)", "subject": _sub_record(lat, w5)})
    items["5_fitting_s_permutable"] = ok5

    statements = tuple(items.items())
    passed = all(items.values())
    return TheoremReport("L2_1", group.name, statements, passed,
                         counterexamples=tuple(cx))


def check_lemma_2_2(group: GroupTable) -> TheoremReport:
    lat = all_subgroups(group)
    checked = 0
    ok = True
    cx = []
    for i in range(len(lat.masks)):
        if not lat.is_normal_in(i, lat.full_mask):
            continue
        size = lat.sizes[i]
        if size == 1 or len(factorize(size)) != 1:
            continue
        checked += 1
        all_s_perm = _forall(lat, "s_permutable", lat.subgroups_in(lat.masks[i]))[0]
        module_side = chief_factors_below_cyclic_and_G_isomorphic(
            group, lat.subgroup(i))
        if all_s_perm != module_side:
            ok = False
            cx.append({"normal_p_subgroup": _sub_record(lat, i),
                       "all_subgroups_s_permutable": all_s_perm,
                       "chief_factors_cyclic_isomorphic": module_side})
    if checked == 0:
        return _na_report("L2_2", group, ("biconditional",),
                          "no nontrivial normal p-subgroups")
    return TheoremReport("L2_2", group.name, (("biconditional", ok),), ok,
                         counterexamples=tuple(cx))


def check_lemma_2_4(group: GroupTable) -> TheoremReport:
    if not is_solvable_table(group):
        return _na_report("L2_4", group, ("BT", "cyclic_pp_s_semipermutable"),
                          "requires a solvable group")
    lat = all_subgroups(group)
    bt = is_transitive_class(group, "BT").verdict
    cpp_ok, w = _forall(lat, "s_semipermutable", lat.cyclic_prime_power_indices())
    statements = (("BT", bt), ("cyclic_pp_s_semipermutable", cpp_ok))
    cx = ()
    if bt != cpp_ok and w is not None:
        cx = ({"witness": _sub_record(lat, w)},)
    return TheoremReport("L2_4", group.name, statements, bt == cpp_ok,
                         counterexamples=cx)


def check_lemma_2_5(group: GroupTable) -> TheoremReport:
    lat = all_subgroups(group)
    f = fitting(group)
    derived = lat.commutator_mask(lat.full_mask, lat.full_mask)
    if derived & ~f.mask:
        return _na_report("L2_5", group, ("ss_equals_nss",),
                          "requires a nilpotent-by-abelian group")
    ok = True
    cx = []
    for i in range(len(lat.masks)):
        ss = predicate_bool(lat, "ss_permutable", i, lat.full_mask)
        nss = predicate_bool(lat, "nss_permutable", i, lat.full_mask)
        if ss != nss:
            ok = False
            cx.append({"subject": _sub_record(lat, i), "ss": ss, "nss": nss})
            break
    return TheoremReport("L2_5", group.name, (("ss_equals_nss", ok),), ok,
                         counterexamples=tuple(cx))


def check_lemma_2_6(group: GroupTable) -> TheoremReport:
    lat = all_subgroups(group)
    solvable = is_solvable_table(group)
    ok_ss = ok_nss = True
    cx = []
    for variant, pred in (("ss", "ss_permutable"), ("nss", "nss_permutable")):
        true_idx = _ss_true_indices(lat, variant == "nss")
        for a_pos, i in enumerate(true_idx):
            for j in true_idx[a_pos:]:
                if math.gcd(lat.sizes[i], lat.sizes[j]) != 1:
                    continue
                if not solvable and not (
                        (lat.is_prime_power(i) or lat.sizes[i] == 1)
                        and (lat.is_prime_power(j) or lat.sizes[j] == 1)):
                    continue
                join = lat.index[lat.generated(
                    iter_bits(lat.masks[i] | lat.masks[j]))]
                if not predicate_bool(lat, pred, join, lat.full_mask):
                    if variant == "ss":
                        ok_ss = False
                    else:
                        ok_nss = False
                    cx.append({"item": variant, "first": _sub_record(lat, i),
                               "second": _sub_record(lat, j)})
                    break
            else:
                continue
            break
    statements = (("coprime_joins_ss", ok_ss), ("coprime_joins_nss", ok_nss))
    return TheoremReport("L2_6", group.name, statements, ok_ss and ok_nss,
                         counterexamples=tuple(cx))


def check_lemma_2_7(group: GroupTable) -> TheoremReport:
    labels = ("derived_system_normalizer_normal", "commutators_in_o_p")
    if not (is_solvable_table(group) and is_transitive_class(group, "PST").verdict):
        return _na_report("L2_7", group, labels, "requires a solvable PST-group")
    lat = all_subgroups(group)
    from .series import o_p
    D = system_normalizer(group)
    dprime = lat.commutator_mask(D.mask, D.mask)
    s1 = lat.is_normal_in(lat.index[dprime], lat.full_mask)
    s2 = True
    cx = []
    for h in _ss_true_indices(lat):
        if not lat.is_prime_power(h):
            continue
        (p, _), = factorize(lat.sizes[h]).items()
        opg = o_p(group, p).mask
        for k in _valid_witnesses(lat, h):
            for kp in lat.sylow_indices(p, lat.masks[k]):
                comm = lat.commutator_mask(lat.masks[h], lat.masks[kp])
                if comm & ~opg:
                    s2 = False
                    cx.append({"subject": _sub_record(lat, h),
                               "witness": _sub_record(lat, k),
                               "sylow": _sub_record(lat, kp)})
                    break
            if not s2:
                break
        if not s2:
            break
    statements = (("derived_system_normalizer_normal", s1),
                  ("commutators_in_o_p", s2))
    return TheoremReport("L2_7", group.name, statements, s1 and s2,
                         counterexamples=tuple(cx))


def check_lemma_2_8(group: GroupTable) -> TheoremReport:
    if not (is_solvable_table(group) and is_transitive_class(group, "BT").verdict):
        return _na_report("L2_8", group, ("commutator_condition_sufficient",),
                          "requires a solvable BT-group")
    lat = all_subgroups(group)
    from .series import o_p
    L_idx = lat.index[nilpotent_residual(group).mask]
    away = sorted(pi(group) - pi_of_order(lat.sizes[L_idx]))
    ok = True
    cx = []
    for p in away:
        opg = o_p(group, p).mask
        target = p_part(group.order, p)
        psubs = _p_subgroup_indices(lat, p)
        for h in psubs:
            if predicate_bool(lat, "ss_permutable", h, lat.full_mask):
                continue
            # the hypothesis must fail for every candidate K_p
            for kp in psubs:
                prod = lat.product_mask(h, kp)
                if prod.bit_count() != target or prod not in lat.index:
                    continue
                ncl = lat.relative_normal_closure(lat.masks[kp], L_idx)
                comm = lat.commutator_mask(lat.masks[h], lat.masks[ncl])
                if comm & ~opg == 0:
                    ok = False
                    cx.append({"subject": _sub_record(lat, h),
                               "p_subgroup": _sub_record(lat, kp)})
                    break
            if not ok:
                break
        if not ok:
            break
    return TheoremReport("L2_8", group.name,
                         (("commutator_condition_sufficient", ok),), ok,
                         counterexamples=tuple(cx))


def check_lemma_3_1(group: GroupTable) -> TheoremReport:
    labels = ("sst_lifts", "bt_lifts")
    if not (is_solvable_table(group) and is_transitive_class(group, "PST").verdict):
        return _na_report("L3_1", group, labels, "requires a solvable PST-group")
    z = hypercenter(group)
    q, _ = quotient(group, z.members)
    s1 = s2 = True
    if is_transitive_class(q, "SST").verdict and not is_transitive_class(group, "SST").verdict:
        s1 = False
    if is_transitive_class(q, "BT").verdict and not is_transitive_class(group, "BT").verdict:
        s2 = False
    statements = (("sst_lifts", s1), ("bt_lifts", s2))
    return TheoremReport("L3_1", group.name, statements, s1 and s2)


def check_kegel(group: GroupTable) -> TheoremReport:
    lat = all_subgroups(group)
    full = lat.full_mask
    s1 = True
    cx = []
    for i in range(len(lat.masks)):
        if predicate_bool(lat, "s_permutable", i, full) and not lat.is_subnormal(i):
            s1 = False
            cx.append({"statement": "s_permutable_implies_subnormal",
                       "subject": _sub_record(lat, i)})
            break
    statements = [("s_permutable_implies_subnormal", s1)]
    s2 = None
    if is_transitive_class(group, "PST").verdict:
        s2 = True
        for i in range(len(lat.masks)):
            if lat.is_subnormal(i) and not predicate_bool(lat, "s_permutable", i, full):
                s2 = False
                cx.append({"statement": "subnormal_implies_s_permutable_in_PST",
                           "subject": _sub_record(lat, i)})
                break
    statements.append(("subnormal_implies_s_permutable_in_PST", s2))
    passed = s1 and (s2 is None or s2)
    return TheoremReport("KEGEL", group.name, tuple(statements), passed,
                         counterexamples=tuple(cx))


def check_lemmas(group: GroupTable) -> list[TheoremReport]:
    return [
        check_lemma_2_1(group), check_lemma_2_2(group), check_lemma_2_4(group),
        check_lemma_2_5(group), check_lemma_2_6(group), check_lemma_2_7(group),
        check_lemma_2_8(group), check_lemma_3_1(group), check_kegel(group),
    ]


_CHECKS = {
    "T1_1": check_theorem_1_1,
    "A": check_theorem_A,
    "B": check_theorem_B,
    "C": check_theorem_C,
    "D": check_theorem_D,
    "E": check_theorem_E,
    "F": check_theorem_F,
    "I": check_theorem_I,
    "C1_4": check_corollary_1_4,
    "C1_6": check_corollary_1_6,
    "C1_7": check_corollary_1_7,
    "L2_1": check_lemma_2_1,
    "L2_2": check_lemma_2_2,
    "L2_4": check_lemma_2_4,
    "L2_5": check_lemma_2_5,
    "L2_6": check_lemma_2_6,
    "L2_7": check_lemma_2_7,
    "L2_8": check_lemma_2_8,
    "L3_1": check_lemma_3_1,
    "KEGEL": check_kegel,
}


def run_check(group: GroupTable, check_id: str,
              factors: list[GroupTable] | None = None) -> TheoremReport:
    """Run one theorem check; G and H need the direct factors of the group."""
    if check_id in ("G", "H"):
        if not factors or len(factors) < 2:
            return _na_report(check_id, group,
                              ("hypothesis", "conclusion"),
                              "group is not a direct product of >= 2 factors")
        fn = check_theorem_G if check_id == "G" else check_theorem_H
        return fn(factors, product=group)
    if check_id not in _CHECKS:
        raise ValueError(f"unknown theorem id {check_id!r}")
    return _CHECKS[check_id](group)


def report_to_dict(report: TheoremReport) -> dict:
    return {
        "theorem_id": report.theorem_id,
        "group": report.group_name,
        "applicable": report.applicable,
        "statements": [[label, value] for label, value in report.statements],
        "pass": report.passed,
        "counterexamples": list(report.counterexamples),
        "notes": list(report.notes),
    }


def validate_ss_witnesses(group: GroupTable) -> bool:
    """Recompute every SS/NSS verdict and re-check the stored witness."""
    lat = all_subgroups(group)
    for i in range(len(lat.masks)):
        for normal_only in (False, True):
            j = ss_witness_index(lat, i, lat.full_mask, normal_only)
            if j is not None and not recheck_ss_witness(
                    lat, i, j, lat.full_mask, normal_only):
                return False
    return True
