"""Characteristic subgroups and series.

Derived / central series, nilpotent residual, O_p and O^p, Fitting and
generalized Fitting subgroups, Frattini subgroup, hypercenter, chief series,
and system normalizers.  Several subgroups are computed by two independent
characterizations and cross-asserted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotPrime, NotSolvable, SystemNotFound
from .lattice import (
    SubgroupLattice,
    SubgroupSet,
    all_subgroups,
    bits_list,
    commutator_closure,
    factorize,
    generated_mask,
    iter_bits,
    mask_of,
    normal_closure_mask,
    p_part,
    require_prime,
)
from .tables import GroupTable, element_order, quotient, subgroup_table

_CROSS_CHECK_LIMIT = 60


@dataclass(frozen=True)
class SeriesRecord:
    """A normal series of a group, most notably derived/central/chief."""

    parent: GroupTable
    kind: str
    terms: tuple[SubgroupSet, ...]


def pi(group: GroupTable) -> set[int]:
    """Set of primes dividing the group order."""
    return set(factorize(group.order))


def order_p_part(group: GroupTable, p: int) -> int:
    require_prime(p)
    return p_part(group.order, p)


def center_mask(group: GroupTable) -> int:
    mult = group.mult
    n = group.order
    return mask_of(
        z for z in range(n) if all(mult[z][g] == mult[g][z] for g in range(n))
    )


def derived_subgroup(group: GroupTable) -> SubgroupSet:
    full = (1 << group.order) - 1
    return SubgroupSet(group, commutator_closure(group, full, full))


def derived_series(group: GroupTable) -> SeriesRecord:
    full = (1 << group.order) - 1
    terms = [full]
    while True:
        nxt = commutator_closure(group, terms[-1], terms[-1])
        if nxt == terms[-1]:
            break
        terms.append(nxt)
    return SeriesRecord(group, "derived",
                        tuple(SubgroupSet(group, m) for m in terms))


def lower_central_series(group: GroupTable) -> SeriesRecord:
    full = (1 << group.order) - 1
    terms = [full]
    while True:
        nxt = commutator_closure(group, terms[-1], full)
        if nxt == terms[-1]:
            break
        terms.append(nxt)
    return SeriesRecord(group, "lower_central",
                        tuple(SubgroupSet(group, m) for m in terms))


def upper_central_series(group: GroupTable) -> SeriesRecord:
    mult, inv = group.mult, group.inv
    n = group.order
    terms = [1]
    while True:
        prev = terms[-1]
        cur = 0
        for z in range(n):
            riz = mult[inv[z]]
            ok = True
            for g in range(n):
                comm = mult[riz[inv[g]]][mult[z][g]]
                if not prev >> comm & 1:
                    ok = False
                    break
            if ok:
                cur |= 1 << z
        if cur == prev:
            break
        terms.append(cur)
    return SeriesRecord(group, "upper_central",
                        tuple(SubgroupSet(group, m) for m in terms))


def is_solvable_table(group: GroupTable) -> bool:
    return derived_series(group).terms[-1].mask == 1


def is_nilpotent_table(group: GroupTable) -> bool:
    return lower_central_series(group).terms[-1].mask == 1


def hypercenter(group: GroupTable) -> SubgroupSet:
    return upper_central_series(group).terms[-1]


def nilpotent_residual(group: GroupTable) -> SubgroupSet:
    """Stable term of the lower central series.

    For small groups this is cross-checked against the direct characterization
    as the least normal subgroup with nilpotent quotient.
    """
    res = lower_central_series(group).terms[-1]
    if group.order <= _CROSS_CHECK_LIMIT:
        lat = all_subgroups(group)
        best = None
        for i, m in enumerate(lat.masks):
            if not lat.is_normal_in(i, lat.full_mask):
                continue
            q, _ = quotient(group, lat.members[i])
            if is_nilpotent_table(q):
                if best is None or lat.sizes[i] < best.bit_count():
                    best = m
        assert best == res.mask, "residual characterizations disagree"
    return res


def o_p(group: GroupTable, p: int) -> SubgroupSet:
    """Largest normal p-subgroup, computed as the Sylow-p intersection."""
    require_prime(p)
    lat = all_subgroups(group)
    key = ("o_p", p)
    if key in lat.memo:
        return lat.memo[key]
    inter = lat.full_mask
    for i in lat.sylow_indices(p):
        inter &= lat.masks[i]
    # cross-check: the biggest normal p-subgroup in the lattice
    best = 1
    for i, m in enumerate(lat.masks):
        if (p_part(lat.sizes[i], p) == lat.sizes[i]
                and lat.is_normal_in(i, lat.full_mask)
                and lat.sizes[i] > best.bit_count()):
            best = m
    assert best == inter, "O_p characterizations disagree"
    out = SubgroupSet(group, inter)
    lat.memo[key] = out
    return out


def o_p_residual(group: GroupTable, p: int) -> SubgroupSet:
    """O^p: subgroup generated by all elements of order coprime to p."""
    require_prime(p)
    lat = all_subgroups(group)
    key = ("o_p_res", p)
    if key in lat.memo:
        return lat.memo[key]
    seeds = [e for e in range(group.order) if element_order(group, e) % p != 0]
    m = generated_mask(group, seeds)
    # cross-check: least normal subgroup with p-group quotient
    best = None
    for i, mm in enumerate(lat.masks):
        if not lat.is_normal_in(i, lat.full_mask):
            continue
        quot = group.order // lat.sizes[i]
        if p_part(quot, p) == quot and (best is None or lat.sizes[i] < best.bit_count()):
            best = mm
    assert best == m, "O^p characterizations disagree"
    out = SubgroupSet(group, m)
    lat.memo[key] = out
    return out


def fitting(group: GroupTable) -> SubgroupSet:
    """Product of the subgroups O_p over all primes p dividing the order."""
    lat = all_subgroups(group)
    if "fitting" in lat.memo:
        return lat.memo["fitting"]
    cur = lat.index[1]
    for p in sorted(pi(group)):
        op_idx = lat.index[o_p(group, p).mask]
        cur = lat.index[lat.product_mask(cur, op_idx)]
    mask = lat.masks[cur]
    table, _ = subgroup_table(group, bits_list(mask))
    assert is_nilpotent_table(table), "Fitting subgroup must be nilpotent"
    if group.order <= _CROSS_CHECK_LIMIT:
        for i, m in enumerate(lat.masks):
            if lat.is_normal_in(i, lat.full_mask) and m & ~mask != 0:
                t, _ = subgroup_table(group, lat.members[i])
                assert not is_nilpotent_table(t), \
                    "Fitting subgroup must contain every normal nilpotent subgroup"
    out = SubgroupSet(group, mask)
    lat.memo["fitting"] = out
    return out


def _components(group: GroupTable, lat: SubgroupLattice) -> list[int]:
    """Subnormal quasisimple subgroups (perfect with simple central quotient)."""
    out = []
    for i, m in enumerate(lat.masks):
        if lat.sizes[i] == 1:
            continue
        if lat.commutator_mask(m, m) != m:
            continue
        if not lat.is_subnormal(i):
            continue
        table, _ = subgroup_table(group, lat.members[i])
        z = center_mask(table)
        q, _ = quotient(table, bits_list(z))
        if is_simple_table(q):
            out.append(i)
    return out


def generalized_fitting(group: GroupTable) -> SubgroupSet:
    """F(G) together with the layer generated by the components."""
    lat = all_subgroups(group)
    if "fstar" in lat.memo:
        return lat.memo["fstar"]
    f = fitting(group)
    layer_seed = 0
    for i in _components(group, lat):
        layer_seed |= lat.masks[i]
    mask = generated_mask(group, iter_bits(f.mask | layer_seed))
    assert f.mask & ~mask == 0, "F* must contain F"
    if is_solvable_table(group):
        assert mask == f.mask, "F* must equal F for solvable groups"
    out = SubgroupSet(group, mask)
    lat.memo["fstar"] = out
    return out


def frattini(group: GroupTable) -> SubgroupSet:
    lat = all_subgroups(group)
    if "frattini" in lat.memo:
        return lat.memo["frattini"]
    mask = lat.full_mask
    for i in lat.maximal_indices():
        mask &= lat.masks[i]
    idx = lat.index[mask]
    assert lat.is_normal_in(idx, lat.full_mask), "Frattini subgroup must be normal"
    out = SubgroupSet(group, mask)
    lat.memo["frattini"] = out
    return out


# ---------------------------------------------------------------------------
# chief series


def is_simple_table(group: GroupTable) -> bool:
    if group.order == 1:
        return False
    full = (1 << group.order) - 1
    for x in range(1, group.order):
        if normal_closure_mask(group, [x]) != full:
            return False
    return True


def _minimal_normal_masks(group: GroupTable) -> list[int]:
    seen_cyclic: set[int] = set()
    closures: set[int] = set()
    for x in range(1, group.order):
        c = generated_mask(group, [x])
        if c in seen_cyclic:
            continue
        seen_cyclic.add(c)
        closures.add(normal_closure_mask(group, [x]))
    out = []
    for m in closures:
        if not any(o != m and o & ~m == 0 for o in closures):
            out.append(m)
    return out


def _chief_terms(group: GroupTable, greatest: bool = False) -> list[int]:
    """Ascending chief series as masks, from trivial to the whole group."""
    n = group.order
    full = (1 << n) - 1
    terms = [1]
    cur = 1
    while cur != full:
        q, proj = quotient(group, bits_list(cur))
        mins = _minimal_normal_masks(q)
        keyed = sorted(mins, key=lambda m: (m.bit_count(), bits_list(m)))
        chosen = keyed[-1] if greatest else keyed[0]
        cur = mask_of(e for e in range(n) if chosen >> proj[e] & 1)
        terms.append(cur)
    return terms


def chief_series(group: GroupTable, greatest: bool = False) -> SeriesRecord:
    """Chief series, descending from the group to the trivial subgroup.

    Built by repeatedly taking the canonical-least minimal normal subgroup of
    the current quotient (canonical-greatest under the alternate tie-break).
    The factor-order multiset is Jordan-Hoelder invariant; for small groups
    both tie-breaks are compared.
    """
    lat = all_subgroups(group)
    key = ("chief", greatest)
    if key in lat.memo:
        return lat.memo[key]
    terms = _chief_terms(group, greatest)
    if not greatest and group.order <= _CROSS_CHECK_LIMIT:
        other = _chief_terms(group, greatest=True)
        orders = sorted(
            b.bit_count() // a.bit_count() for a, b in zip(terms, terms[1:]))
        orders2 = sorted(
            b.bit_count() // a.bit_count() for a, b in zip(other, other[1:]))
        assert orders == orders2, "chief factor orders must not depend on tie-break"
    rec = SeriesRecord(group, "chief",
                       tuple(SubgroupSet(group, m) for m in reversed(terms)))
    lat.memo[key] = rec
    return rec


def chief_factors(group: GroupTable) -> list[GroupTable]:
    """Each chief factor as its own quotient table, top factor first."""
    rec = chief_series(group)
    out = []
    for big, small in zip(rec.terms, rec.terms[1:]):
        if big.mask == (1 << group.order) - 1:
            table = group
            members = list(range(group.order))
        else:
            table, members = subgroup_table(group, big.members)
        idx = {e: i for i, e in enumerate(members)}
        sub = [idx[e] for e in small.members]
        factor, _ = quotient(table, sub)
        out.append(factor)
    return out


def is_sc_group(group: GroupTable) -> bool:
    """True iff every chief factor is simple."""
    lat = all_subgroups(group)
    if "sc" not in lat.memo:
        lat.memo["sc"] = all(is_simple_table(f) for f in chief_factors(group))
    return lat.memo["sc"]


def chief_factor_orders(group: GroupTable) -> list[int]:
    rec = chief_series(group)
    return [b.order // s.order for b, s in zip(rec.terms, rec.terms[1:])]


# ---------------------------------------------------------------------------
# system normalizers


def _sylow_system(lat: SubgroupLattice) -> list[int] | None:
    """First pairwise-permuting tuple of Sylow subgroups, in canonical order."""
    primes = sorted(factorize(lat.group.order))
    lists = [lat.sylow_indices(p) for p in primes]
    chosen: list[int] = []

    def descend(k: int) -> bool:
        if k == len(lists):
            return True
        for cand in lists[k]:
            if all(lat.permutes(prev, cand) for prev in chosen):
                chosen.append(cand)
                if descend(k + 1):
                    return True
                chosen.pop()
        return False

    return chosen if descend(0) else None


def _all_sylow_systems(lat: SubgroupLattice) -> list[list[int]]:
    primes = sorted(factorize(lat.group.order))
    lists = [lat.sylow_indices(p) for p in primes]
    out: list[list[int]] = []
    chosen: list[int] = []

    def descend(k: int) -> None:
        if k == len(lists):
            out.append(list(chosen))
            return
        for cand in lists[k]:
            if all(lat.permutes(prev, cand) for prev in chosen):
                chosen.append(cand)
                descend(k + 1)
                chosen.pop()

    descend(0)
    return out


def system_normalizer(group: GroupTable) -> SubgroupSet:
    """Intersection of the normalizers of a deterministic Sylow system."""
    if not is_solvable_table(group):
        raise NotSolvable(f"{group.name} is not solvable")
    lat = all_subgroups(group)
    if "sysnorm" in lat.memo:
        return lat.memo["sysnorm"]
    system = _sylow_system(lat)
    if system is None:
        raise SystemNotFound(f"{group.name}: no permuting Sylow system found")
    mask = lat.full_mask
    for i in system:
        mask &= lat.normalizer_idx_mask(i)
    table, _ = subgroup_table(group, bits_list(mask))
    assert is_nilpotent_table(table), "system normalizer must be nilpotent"
    if group.order <= _CROSS_CHECK_LIMIT:
        idx = lat.index[mask]
        orbit = {lat.conj_idx[idx][x] for x in range(group.order)}
        for other in _all_sylow_systems(lat):
            m2 = lat.full_mask
            for i in other:
                m2 &= lat.normalizer_idx_mask(i)
            assert lat.index[m2] in orbit, "system normalizers must be conjugate"
    out = SubgroupSet(group, mask)
    lat.memo["sysnorm"] = out
    return out
