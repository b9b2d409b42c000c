"""Subgroup embedding predicates with deterministic witnesses.

Every predicate can be evaluated inside an ambient subgroup ("universe"): the
quantifiers then range over Sylow subgroups, supplements etc. of the universe,
which matches evaluating the predicate in the universe's own re-indexed group
table because products, orders and Sylow subgroups of subgroups are intrinsic.

Witnesses and refutations follow the canonical subgroup order (size, then
member tuple), so equal inputs always produce identical outputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import GroupError
from .lattice import (
    SubgroupLattice,
    SubgroupSet,
    all_subgroups,
    factorize,
    iter_bits,
)
from .tables import GroupTable

PREDICATES = (
    "normal", "permutable", "s_permutable", "semipermutable",
    "s_semipermutable", "ss_permutable", "nss_permutable",
    "tau_quasinormal", "abnormal", "subnormal",
)


@dataclass(frozen=True)
class PredicateVerdict:
    """One predicate evaluation with a re-checkable witness or refutation."""

    predicate: str
    subject: SubgroupSet
    verdict: bool
    witness: SubgroupSet | None = None
    refutation: tuple[SubgroupSet, SubgroupSet] | None = None
    universe: SubgroupSet | None = None


def _universe_mask(lat: SubgroupLattice, universe) -> int:
    if universe is None:
        return lat.full_mask
    umask = universe.mask if isinstance(universe, SubgroupSet) else int(universe)
    if umask not in lat.index:
        raise GroupError("universe is not a subgroup of the parent group")
    return umask


def _subject_index(lat: SubgroupLattice, h, umask: int) -> int:
    hmask = h.mask if isinstance(h, SubgroupSet) else lat.masks[h]
    if hmask & ~umask:
        raise GroupError("subject subgroup is not contained in the universe")
    return lat.index[hmask]


# -- cached cores ------------------------------------------------------------
# Each core returns a tuple; element 0 is the boolean verdict.  The rest
# identifies the witness / refutation by lattice index.


def _pred_cache(lat: SubgroupLattice) -> dict:
    return lat.memo.setdefault("pred", {})


def _sylows_of_subgroup(lat: SubgroupLattice, j: int) -> list[int]:
    """All Sylow subgroups of subgroup j, for every prime dividing |H_j|."""
    key = ("syl_of", j)
    got = lat.memo.get(key)
    if got is None:
        got = []
        for p in sorted(factorize(lat.sizes[j])):
            got.extend(lat.sylow_indices(p, lat.masks[j]))
        got.sort()
        lat.memo[key] = got
    return got


def _quantified_core(lat, h_idx, umask, pred) -> tuple:
    """Universal quantification of permutes() over a family of subgroups."""
    cache = _pred_cache(lat)
    key = (pred, umask, h_idx)
    got = cache.get(key)
    if got is not None:
        return got
    hsize = lat.sizes[h_idx]
    if pred == "permutable":
        family = lat.subgroups_in(umask)
    elif pred == "s_permutable":
        family = [i for p in sorted(factorize(umask.bit_count()))
                  for i in lat.sylow_indices(p, umask)]
    elif pred == "semipermutable":
        family = [i for i in lat.subgroups_in(umask)
                  if math.gcd(lat.sizes[i], hsize) == 1]
    elif pred == "s_semipermutable":
        family = [i for p in sorted(factorize(umask.bit_count()))
                  if hsize % p != 0
                  for i in lat.sylow_indices(p, umask)]
    elif pred == "tau_quasinormal":
        u_idx = lat.index[umask]
        family = []
        for p in sorted(factorize(umask.bit_count())):
            if hsize % p == 0:
                continue
            for i in lat.sylow_indices(p, umask):
                ncl = lat.relative_normal_closure(lat.masks[i], u_idx)
                if math.gcd(hsize, lat.sizes[ncl]) != 1:
                    family.append(i)
    else:  # pragma: no cover
        raise ValueError(pred)
    verdict: tuple = (True, None)
    for i in sorted(family):
        if not lat.permutes(h_idx, i):
            verdict = (False, i)
            break
    cache[key] = verdict
    return verdict


def _supplement_ok(lat, h_idx, j) -> int | None:
    """None if H permutes with every Sylow subgroup of K_j, else least failure."""
    for s in _sylows_of_subgroup(lat, j):
        if not lat.permutes(h_idx, s):
            return s
    return None


def _ss_core(lat, h_idx, umask, normal_only: bool) -> tuple:
    cache = _pred_cache(lat)
    key = ("nss" if normal_only else "ss", umask, h_idx)
    got = cache.get(key)
    if got is not None:
        return got
    candidates = lat.supplement_indices(h_idx, umask)
    if normal_only:
        candidates = [j for j in candidates if lat.is_normal_in(j, umask)]
    result = None
    for j in candidates:
        fail = _supplement_ok(lat, h_idx, j)
        if fail is None:
            result = (True, j)
            break
    if result is None:
        j0 = candidates[0]  # the universe itself always supplements
        result = (False, j0, _supplement_ok(lat, h_idx, j0))
    cache[key] = result
    return result


def _abnormal_core(lat, h_idx, umask) -> tuple:
    cache = _pred_cache(lat)
    key = ("abnormal", umask, h_idx)
    got = cache.get(key)
    if got is not None:
        return got
    hmask = lat.masks[h_idx]
    joins = lat.memo.setdefault("joins", {})
    result: tuple = (True, None, None)
    for x in iter_bits(umask):
        c = lat.conj_idx[h_idx][x]
        jkey = (h_idx, c) if h_idx <= c else (c, h_idx)
        join = joins.get(jkey)
        if join is None:
            join = lat.generated(iter_bits(hmask | lat.masks[c]))
            joins[jkey] = join
        if not join >> x & 1:
            result = (False, lat.index[join], x)
            break
    cache[key] = result
    return result


def _subnormal_core(lat, h_idx, umask) -> tuple:
    cache = _pred_cache(lat)
    key = ("subnormal", umask, h_idx)
    got = cache.get(key)
    if got is not None:
        return got
    hmask = lat.masks[h_idx]
    cur = lat.index[umask]
    while True:
        nxt = lat.relative_normal_closure(hmask, cur)
        if lat.masks[nxt] == hmask:
            got = (True, None)
            break
        if nxt == cur:
            got = (False, cur)
            break
        cur = nxt
    cache[key] = got
    return got


# -- public API ----------------------------------------------------------------


def _verdict(lat, pred, h_idx, umask, verdict, witness_idx=None, refut=None):
    return PredicateVerdict(
        predicate=pred,
        subject=lat.subgroup(h_idx),
        verdict=verdict,
        witness=None if witness_idx is None else lat.subgroup(witness_idx),
        refutation=refut,
        universe=lat.subgroup(lat.index[umask]),
    )


def _quantified(group, h, universe, pred) -> PredicateVerdict:
    lat = all_subgroups(group)
    umask = _universe_mask(lat, universe)
    h_idx = _subject_index(lat, h, umask)
    res = _quantified_core(lat, h_idx, umask, pred)
    refut = None
    if not res[0]:
        refut = (lat.subgroup(h_idx), lat.subgroup(res[1]))
    return _verdict(lat, pred, h_idx, umask, res[0], refut=refut)


def is_permutable(group: GroupTable, h, universe=None) -> PredicateVerdict:
    """H permutes with every subgroup of the universe."""
    return _quantified(group, h, universe, "permutable")


def is_s_permutable(group: GroupTable, h, universe=None) -> PredicateVerdict:
    """H permutes with every Sylow subgroup of the universe."""
    return _quantified(group, h, universe, "s_permutable")


def is_semipermutable(group: GroupTable, h, universe=None) -> PredicateVerdict:
    """H permutes with every subgroup of coprime order."""
    return _quantified(group, h, universe, "semipermutable")


def is_s_semipermutable(group: GroupTable, h, universe=None) -> PredicateVerdict:
    """H permutes with every Sylow p-subgroup for p not dividing |H|."""
    return _quantified(group, h, universe, "s_semipermutable")


def is_tau_quasinormal(group: GroupTable, h, universe=None) -> PredicateVerdict:
    """H permutes with Sylow p-subgroups P, p coprime to |H|, gcd(|H|,|<P^G>|) > 1."""
    return _quantified(group, h, universe, "tau_quasinormal")


def is_ss_permutable(group: GroupTable, h, universe=None) -> PredicateVerdict:
    """H has a supplement K permuting-wise compatible with all Sylows of K."""
    lat = all_subgroups(group)
    umask = _universe_mask(lat, universe)
    h_idx = _subject_index(lat, h, umask)
    res = _ss_core(lat, h_idx, umask, normal_only=False)
    if res[0]:
        return _verdict(lat, "ss_permutable", h_idx, umask, True, witness_idx=res[1])
    refut = (lat.subgroup(res[1]), lat.subgroup(res[2]))
    return _verdict(lat, "ss_permutable", h_idx, umask, False, refut=refut)


def is_nss_permutable(group: GroupTable, h, universe=None) -> PredicateVerdict:
    """As SS-permutability but quantified over normal supplements only."""
    lat = all_subgroups(group)
    umask = _universe_mask(lat, universe)
    h_idx = _subject_index(lat, h, umask)
    res = _ss_core(lat, h_idx, umask, normal_only=True)
    if res[0]:
        return _verdict(lat, "nss_permutable", h_idx, umask, True, witness_idx=res[1])
    refut = (lat.subgroup(res[1]), lat.subgroup(res[2]))
    return _verdict(lat, "nss_permutable", h_idx, umask, False, refut=refut)


def is_abnormal(group: GroupTable, h, universe=None) -> PredicateVerdict:
    """x lies in <H, H^x> for every x (standard abnormality)."""
    lat = all_subgroups(group)
    umask = _universe_mask(lat, universe)
    h_idx = _subject_index(lat, h, umask)
    res = _abnormal_core(lat, h_idx, umask)
    refut = None
    if not res[0]:
        cyc = lat.index[lat.generated([res[2]])]
        refut = (lat.subgroup(res[1]), lat.subgroup(cyc))
    return _verdict(lat, "abnormal", h_idx, umask, res[0], refut=refut)


def is_normal_pred(group: GroupTable, h, universe=None) -> PredicateVerdict:
    lat = all_subgroups(group)
    umask = _universe_mask(lat, universe)
    h_idx = _subject_index(lat, h, umask)
    ok = lat.is_normal_in(h_idx, umask)
    refut = None
    if not ok:
        x = next(x for x in iter_bits(umask) if lat.conj_idx[h_idx][x] != h_idx)
        refut = (lat.subgroup(lat.conj_idx[h_idx][x]),
                 lat.subgroup(lat.index[lat.generated([x])]))
    return _verdict(lat, "normal", h_idx, umask, ok, refut=refut)


def is_subnormal_pred(group: GroupTable, h, universe=None) -> PredicateVerdict:
    lat = all_subgroups(group)
    umask = _universe_mask(lat, universe)
    h_idx = _subject_index(lat, h, umask)
    res = _subnormal_core(lat, h_idx, umask)
    refut = None
    if not res[0]:
        refut = (lat.subgroup(res[1]), lat.subgroup(h_idx))
    return _verdict(lat, "subnormal", h_idx, umask, res[0], refut=refut)


_DISPATCH = {
    "normal": is_normal_pred,
    "permutable": is_permutable,
    "s_permutable": is_s_permutable,
    "semipermutable": is_semipermutable,
    "s_semipermutable": is_s_semipermutable,
    "ss_permutable": is_ss_permutable,
    "nss_permutable": is_nss_permutable,
    "tau_quasinormal": is_tau_quasinormal,
    "abnormal": is_abnormal,
    "subnormal": is_subnormal_pred,
}


def evaluate_predicate(name: str, group: GroupTable, h, universe=None) -> PredicateVerdict:
    if name not in _DISPATCH:
        raise GroupError(f"unknown predicate {name!r}")
    return _DISPATCH[name](group, h, universe)


def predicate_bool(lat: SubgroupLattice, name: str, h_idx: int, umask: int) -> bool:
    """Fast boolean evaluation against the cached cores."""
    if name in ("permutable", "s_permutable", "semipermutable",
                "s_semipermutable", "tau_quasinormal"):
        return _quantified_core(lat, h_idx, umask, name)[0]
    if name == "ss_permutable":
        return _ss_core(lat, h_idx, umask, normal_only=False)[0]
    if name == "nss_permutable":
        return _ss_core(lat, h_idx, umask, normal_only=True)[0]
    if name == "normal":
        return lat.is_normal_in(h_idx, umask)
    if name == "subnormal":
        return _subnormal_core(lat, h_idx, umask)[0]
    if name == "abnormal":
        return _abnormal_core(lat, h_idx, umask)[0]
    raise GroupError(f"unknown predicate {name!r}")


def ss_witness_index(lat: SubgroupLattice, h_idx: int, umask: int,
                     normal_only: bool = False) -> int | None:
    res = _ss_core(lat, h_idx, umask, normal_only)
    return res[1] if res[0] else None


def recheck_ss_witness(lat: SubgroupLattice, h_idx: int, k_idx: int, umask: int,
                       normal_only: bool = False) -> bool:
    """Independently re-verify a stored supplement witness."""
    usize = umask.bit_count()
    if lat.sizes[h_idx] * lat.sizes[k_idx] != usize * (
            lat.masks[h_idx] & lat.masks[k_idx]).bit_count():
        return False
    if normal_only and not lat.is_normal_in(k_idx, umask):
        return False
    return _supplement_ok(lat, h_idx, k_idx) is None


def ss_permutable_in_normalizer_pairs(group: GroupTable, p: int):
    """For every pair of p-subgroups H <= K, the SS and NSS verdicts in N_G(K).

    Returns a list of (H, K, ss_verdict, nss_verdict) tuples in canonical order.
    """
    lat = all_subgroups(group)
    from .lattice import p_part, require_prime
    require_prime(p)
    psubs = [i for i in range(len(lat.masks))
             if p_part(lat.sizes[i], p) == lat.sizes[i]]
    out = []
    for k in psubs:
        nmask = lat.normalizer_idx_mask(k)
        for h in psubs:
            if lat.masks[h] & ~lat.masks[k]:
                continue
            ss = is_ss_permutable(group, lat.subgroup(h), lat.subgroup(lat.index[nmask]))
            nss = is_nss_permutable(group, lat.subgroup(h), lat.subgroup(lat.index[nmask]))
            out.append((lat.subgroup(h), lat.subgroup(k), ss, nss))
    return out
