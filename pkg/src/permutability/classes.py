"""Group-level class decisions, via brute force and via characterizations.

Transitive classes (T, PT, PST, BT, SBT, SST, NSST) are decided by scanning
all chains H <= K <= G; the corresponding characterizations are computed
independently so their agreement can itself be checked.  Characterizations
are only defined for solvable groups and return a None verdict otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NotNormal, NotPGroup, UnknownRelation
from .lattice import (
    SubgroupSet,
    all_subgroups,
    bits_list,
    factorize,
    iter_bits,
    mask_of,
    p_part,
)
from .predicates import predicate_bool
from .series import (
    chief_factor_orders,
    chief_series,
    is_nilpotent_table,
    is_sc_group,
    is_solvable_table,
    nilpotent_residual,
    pi,
)
from .tables import GroupTable, element_order, quotient, subgroup_table

TRANSITIVE_RELATIONS = {
    "T": "normal",
    "PT": "permutable",
    "PST": "s_permutable",
    "BT": "semipermutable",
    "SBT": "s_semipermutable",
    "SST": "ss_permutable",
    "NSST": "nss_permutable",
}

RELATION_TO_CLASS = {v: k for k, v in TRANSITIVE_RELATIONS.items()}

CLASS_IDS = ("T", "PT", "PST", "BT", "SBT", "SST", "NSST", "SC",
             "nilpotent", "solvable", "supersolvable", "complemented")


@dataclass(frozen=True)
class ClassVerdict:
    """One class decision; verdict None means the route is not applicable."""

    class_id: str
    via: str
    verdict: bool | None
    counterexample: tuple[SubgroupSet, ...] | None = None
    note: str | None = None


def is_transitive_class(group: GroupTable, relation: str) -> ClassVerdict:
    """Brute-force transitivity of a subgroup relation over all chains.

    rel(H in K) is evaluated with the quantifiers restricted to K, which
    agrees with evaluating the relation in K's own re-indexed table.
    The counterexample, when present, is the canonical-least failing chain
    ordered by (subject, intermediate) lattice position.
    """
    if relation in TRANSITIVE_RELATIONS:
        relation = TRANSITIVE_RELATIONS[relation]
    if relation not in RELATION_TO_CLASS:
        raise UnknownRelation(f"no transitive class for relation {relation!r}")
    class_id = RELATION_TO_CLASS[relation]
    lat = all_subgroups(group)
    key = ("transitive", relation)
    if key in lat.memo:
        return lat.memo[key]
    full = lat.full_mask
    n_sub = len(lat.masks)
    col = [predicate_bool(lat, relation, i, full) for i in range(n_sub)]
    result = ClassVerdict(class_id, "bruteforce", True)
    for h in range(n_sub):
        if col[h]:
            continue
        hmask = lat.masks[h]
        for k in range(n_sub):
            if not col[k] or hmask & ~lat.masks[k]:
                continue
            if predicate_bool(lat, relation, h, lat.masks[k]):
                result = ClassVerdict(
                    class_id, "bruteforce", False,
                    counterexample=(lat.subgroup(h), lat.subgroup(k)))
                break
        if not result.verdict:
            break
    lat.memo[key] = result
    return result


# ---------------------------------------------------------------------------
# structural classes


def is_nilpotent(group: GroupTable) -> ClassVerdict:
    return ClassVerdict("nilpotent", "bruteforce", is_nilpotent_table(group))


def is_solvable(group: GroupTable) -> ClassVerdict:
    return ClassVerdict("solvable", "bruteforce", is_solvable_table(group))


def is_supersolvable(group: GroupTable) -> ClassVerdict:
    """Chief factors all of prime order; agrees with solvable + SC."""
    lat = all_subgroups(group)
    if "supersolvable" not in lat.memo:
        from .lattice import is_prime
        verdict = all(is_prime(d) for d in chief_factor_orders(group))
        alt = is_solvable_table(group) and is_sc_group(group)
        assert verdict == alt, "supersolvable must equal solvable and SC"
        lat.memo["supersolvable"] = ClassVerdict("supersolvable", "bruteforce", verdict)
    return lat.memo["supersolvable"]


def is_sc(group: GroupTable) -> ClassVerdict:
    return ClassVerdict("SC", "bruteforce", is_sc_group(group))


def _elementary_abelian(group: GroupTable, members: list[int]) -> bool:
    mult = group.mult
    for a in members:
        row = mult[a]
        for b in members:
            if row[b] != mult[b][a]:
                return False
    size = len(members)
    if size == 1:
        return True
    (p, _), = factorize(size).items()
    return all(element_order(group, a) in (1, p) for a in members)


def is_complemented(group: GroupTable) -> ClassVerdict:
    """Every subgroup has a complement; cross-checked against the
    supersolvable-with-elementary-abelian-Sylows characterization."""
    lat = all_subgroups(group)
    if "complemented" in lat.memo:
        return lat.memo["complemented"]
    verdict = True
    cx = None
    for i in range(len(lat.masks)):
        if not lat.complement_indices(i):
            verdict = False
            cx = (lat.subgroup(i),)
            break
    hall = is_supersolvable(group).verdict and all(
        _elementary_abelian(group, lat.members[i])
        for p in sorted(pi(group))
        for i in lat.sylow_indices(p)
    )
    assert verdict == hall, "complemented must match the Hall characterization"
    out = ClassVerdict("complemented", "bruteforce", verdict, counterexample=cx)
    lat.memo["complemented"] = out
    return out


# ---------------------------------------------------------------------------
# characterizations


def acts_by_power_automorphisms(group: GroupTable, n: SubgroupSet) -> bool:
    """Conjugation maps every element of n into its own cyclic subgroup."""
    lat = all_subgroups(group)
    n_idx = lat.index[n.mask]
    if not lat.is_normal_in(n_idx, lat.full_mask):
        raise NotNormal("power-automorphism test requires a normal subgroup")
    mult, inv = group.mult, group.inv
    verdict = True
    for l in n.members:
        cyc = lat.generated([l])
        for x in range(group.order):
            if not cyc >> mult[mult[inv[x]][l]][x] & 1:
                verdict = False
                break
        if not verdict:
            break
    # equivalent formulation: every subgroup of n is normal in the group
    alt = all(
        lat.is_normal_in(i, lat.full_mask)
        for i in lat.subgroups_in(n.mask)
    )
    assert verdict == alt, "power-automorphism characterizations disagree"
    return verdict


def is_pst_characterization(group: GroupTable) -> ClassVerdict:
    """Nilpotent residual abelian Hall, acted on by power automorphisms."""
    if not is_solvable_table(group):
        return ClassVerdict("PST", "characterization", None,
                            note="not applicable: group is not solvable")
    lat = all_subgroups(group)
    if "pst_char" in lat.memo:
        return lat.memo["pst_char"]
    L = nilpotent_residual(group)
    mult = group.mult
    mem = L.members
    verdict, note = True, None
    if any(mult[a][b] != mult[b][a] for a in mem for b in mem):
        verdict, note = False, "nilpotent residual is not abelian"
    elif math.gcd(L.order, group.order // L.order) != 1:
        verdict, note = False, "nilpotent residual is not a Hall subgroup"
    elif not acts_by_power_automorphisms(group, L):
        verdict, note = False, "conjugation is not by power automorphisms"
    out = ClassVerdict("PST", "characterization", verdict,
                       counterexample=(L,) if not verdict else None, note=note)
    lat.memo["pst_char"] = out
    return out


def is_bt_characterization(group: GroupTable) -> ClassVerdict:
    """PST plus commuting Sylow pairs for primes away from the residual."""
    if not is_solvable_table(group):
        return ClassVerdict("BT", "characterization", None,
                            note="not applicable: group is not solvable")
    lat = all_subgroups(group)
    if "bt_char" in lat.memo:
        return lat.memo["bt_char"]
    base = is_pst_characterization(group)
    if not base.verdict:
        out = ClassVerdict("BT", "characterization", False,
                           counterexample=base.counterexample, note=base.note)
        lat.memo["bt_char"] = out
        return out
    L = nilpotent_residual(group)
    away = sorted(pi(group) - set(factorize(L.order)))
    verdict, cx = True, None
    for a_i in range(len(away)):
        for b_i in range(a_i + 1, len(away)):
            p, q = away[a_i], away[b_i]
            for ip in lat.sylow_indices(p):
                for iq in lat.sylow_indices(q):
                    if lat.commutator_mask(lat.masks[ip], lat.masks[iq]) != 1:
                        verdict = False
                        cx = (lat.subgroup(ip), lat.subgroup(iq))
                        break
                if not verdict:
                    break
            if not verdict:
                break
        if not verdict:
            break
    out = ClassVerdict("BT", "characterization", verdict, counterexample=cx)
    lat.memo["bt_char"] = out
    return out


def is_sst_characterization(group: GroupTable) -> ClassVerdict:
    """Every cyclic subgroup of prime power order is SS-permutable."""
    if not is_solvable_table(group):
        return ClassVerdict("SST", "characterization", None,
                            note="not applicable: group is not solvable")
    lat = all_subgroups(group)
    if "sst_char" in lat.memo:
        return lat.memo["sst_char"]
    verdict, cx = True, None
    for i in lat.cyclic_prime_power_indices():
        if not predicate_bool(lat, "ss_permutable", i, lat.full_mask):
            verdict, cx = False, (lat.subgroup(i),)
            break
    out = ClassVerdict("SST", "characterization", verdict, counterexample=cx)
    lat.memo["sst_char"] = out
    return out


def chief_factors_below_cyclic_and_G_isomorphic(group: GroupTable,
                                                n: SubgroupSet) -> bool:
    """Chief factors under a normal p-subgroup are all prime order with one
    shared conjugation power map."""
    lat = all_subgroups(group)
    n_idx = lat.index[n.mask]
    if not lat.is_normal_in(n_idx, lat.full_mask):
        raise NotNormal("chief-factor test requires a normal subgroup")
    fact = factorize(n.order) if n.order > 1 else {}
    if len(fact) > 1:
        raise NotPGroup("chief-factor test requires a p-group")
    if n.order == 1:
        return True
    (p, _), = fact.items()
    # maximal chain of G-normal subgroups from 1 up to n
    chain = [1]
    while chain[-1] != n.mask:
        candidates = [
            lat.masks[i] for i in lat.subgroups_in(n.mask)
            if lat.masks[i] & ~n.mask == 0
            and lat.masks[i] != chain[-1]
            and chain[-1] & ~lat.masks[i] == 0
            and lat.is_normal_in(i, lat.full_mask)
        ]
        nxt = min(candidates, key=lambda m: (m.bit_count(), bits_list(m)))
        chain.append(nxt)
    maps = []
    mult, inv = group.mult, group.inv
    for below, above in zip(chain, chain[1:]):
        if above.bit_count() // below.bit_count() != p:
            return False
        gen = next(e for e in iter_bits(above) if not below >> e & 1)
        # cosets of the lower term by powers of the chosen generator
        cosets = {0: below}
        cur = gen
        for k in range(1, p):
            cm = 0
            for b in iter_bits(below):
                cm |= 1 << mult[b][cur]
            cosets[k] = cm
            cur = mult[cur][gen]
        pmap = []
        for g in range(group.order):
            c = mult[mult[inv[g]][gen]][g]
            k = next(k for k, m in cosets.items() if m >> c & 1)
            pmap.append(k)
        maps.append(tuple(pmap))
    return all(m == maps[0] for m in maps)


def classify(group: GroupTable) -> dict[str, dict[str, bool | None]]:
    """All class verdicts by both routes; disagreements are preserved."""
    out: dict[str, dict[str, bool | None]] = {}
    for cid in ("T", "PT", "PST", "BT", "SBT", "SST", "NSST"):
        out[cid] = {"bruteforce": is_transitive_class(group, cid).verdict}
    out["PST"]["characterization"] = is_pst_characterization(group).verdict
    out["BT"]["characterization"] = is_bt_characterization(group).verdict
    out["SST"]["characterization"] = is_sst_characterization(group).verdict
    out["SC"] = {"bruteforce": is_sc(group).verdict}
    out["nilpotent"] = {"bruteforce": is_nilpotent(group).verdict}
    out["solvable"] = {"bruteforce": is_solvable(group).verdict}
    out["supersolvable"] = {"bruteforce": is_supersolvable(group).verdict}
    out["complemented"] = {"bruteforce": is_complemented(group).verdict}
    return out


def class_verdict_bool(group: GroupTable, class_id: str) -> bool | None:
    """The canonical boolean for one class id (brute force where available)."""
    if class_id in TRANSITIVE_RELATIONS:
        return is_transitive_class(group, class_id).verdict
    if class_id == "SC":
        return is_sc(group).verdict
    if class_id == "nilpotent":
        return is_nilpotent(group).verdict
    if class_id == "solvable":
        return is_solvable(group).verdict
    if class_id == "supersolvable":
        return is_supersolvable(group).verdict
    if class_id == "complemented":
        return is_complemented(group).verdict
    raise UnknownRelation(f"unknown class id {class_id!r}")
