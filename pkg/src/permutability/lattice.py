"""Subgroup enumeration and queries over a fixed parent group.

Subgroups are bitmasks over element ids.  The lattice holds every subgroup in
canonical order (size, then the sorted member tuple), conjugation maps, and
memo tables for set products; it is computed once per group and then shared
immutably.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from .errors import NotPrime, OrderCapExceeded
from .tables import DEFAULT_ORDER_CAP, GroupTable


def iter_bits(mask: int):
    while mask:
        lsb = mask & -mask
        yield lsb.bit_length() - 1
        mask ^= lsb


def bits_list(mask: int) -> list[int]:
    return list(iter_bits(mask))


def mask_of(ids) -> int:
    m = 0
    for e in ids:
        m |= 1 << e
    return m


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def require_prime(p: int) -> None:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")


def p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        out *= p
        n //= p
    return out


@dataclass(frozen=True)
class SubgroupSet:
    """A subgroup of a fixed parent group as a bitmask of element ids."""

    group: GroupTable
    mask: int

    @cached_property
    def members(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.mask))

    @property
    def order(self) -> int:
        return self.mask.bit_count()

    @classmethod
    def from_members(cls, group: GroupTable, members) -> "SubgroupSet":
        """Validated construction: identity, closure, inverses, Lagrange."""
        mask = mask_of(members) | 1
        mult = group.mult
        elems = bits_list(mask)
        for a in elems:
            row = mult[a]
            for b in elems:
                if not mask >> row[b] & 1:
                    raise ValueError("member set is not closed under multiplication")
        for a in elems:
            if not mask >> group.inv[a] & 1:
                raise ValueError("member set is not closed under inverses")
        assert group.order % mask.bit_count() == 0
        return cls(group, mask)

    def key(self) -> tuple[int, tuple[int, ...]]:
        return (self.order, self.members)

    def __repr__(self) -> str:
        return f"SubgroupSet(order={self.order}, members={self.members})"


def _closure_extend(mult, hmask: int, hmembers: list[int], hgens: tuple[int, ...],
                    e: int) -> int:
    """Mask of <H, e> given subgroup H with generating set hgens."""
    gens = list(dict.fromkeys(hgens)) + [e]
    u = hmask
    cm = 0
    for h in hmembers:
        cm |= 1 << mult[h][e]
    u |= cm
    queue = [e]
    i = 0
    while i < len(queue):
        t = queue[i]
        i += 1
        row_t = mult[t]
        for s in gens:
            x = row_t[s]
            if not u >> x & 1:
                cm = 0
                for h in hmembers:
                    cm |= 1 << mult[h][x]
                u |= cm
                queue.append(x)
    return u


def _coset_mask(mult, hmembers: list[int], e: int) -> int:
    cm = 0
    for h in hmembers:
        cm |= 1 << mult[h][e]
    return cm


def generated_mask(group: GroupTable, seed) -> int:
    """Mask of the subgroup generated by the given element ids (table only)."""
    mult = group.mult
    u = 1
    gens: tuple[int, ...] = ()
    for e in sorted(set(seed)):
        if not u >> e & 1:
            u = _closure_extend(mult, u, bits_list(u), gens, e)
            gens = gens + (e,)
    return u


def commutator_closure(group: GroupTable, amask: int, bmask: int) -> int:
    """Mask of the subgroup generated by all [a, b], a in A, b in B."""
    mult, inv = group.mult, group.inv
    seeds = set()
    for a in iter_bits(amask):
        ria = mult[inv[a]]
        for b in iter_bits(bmask):
            seeds.add(mult[ria[inv[b]]][mult[a][b]])
    seeds.discard(0)
    return generated_mask(group, seeds)


def normal_closure_mask(group: GroupTable, seed) -> int:
    """Mask of the least normal subgroup containing the seed elements."""
    mult, inv = group.mult, group.inv
    cur = generated_mask(group, seed)
    n = group.order
    while True:
        extra = 0
        for x in range(n):
            rix = mult[inv[x]]
            for h in iter_bits(cur):
                y = mult[rix[h]][x]
                if not cur >> y & 1:
                    extra |= 1 << y
        if extra == 0:
            return cur
        cur = generated_mask(group, iter_bits(cur | extra))


class SubgroupLattice:
    """All subgroups of a group, with conjugacy structure and product caches."""

    def __init__(self, group: GroupTable, cap: int | None = DEFAULT_ORDER_CAP):
        if cap is not None and group.order > cap:
            raise OrderCapExceeded(f"order {group.order} exceeds cap {cap}")
        self.group = group
        self._enumerate()
        self._build_conjugation()
        self._translate: dict[tuple[int, int], int] = {}
        self._products: dict[tuple[int, int], int] = {}
        self._permutes: dict[tuple[int, int], bool] = {}
        self._in_universe: dict[int, list[int]] = {}
        self._sylow_in: dict[tuple[int, int], list[int]] = {}
        self._normal_closure: dict[int, int] = {}
        self._subnormal: dict[int, bool] = {}
        self.memo: dict = {}

    # -- enumeration ------------------------------------------------------

    def _enumerate(self) -> None:
        g = self.group
        n = g.order
        mult = g.mult
        found: dict[int, tuple[int, ...]] = {1: ()}
        queue: list[int] = [1]
        qi = 0
        while qi < len(queue):
            hmask = queue[qi]
            qi += 1
            hgens = found[hmask]
            hmembers = bits_list(hmask)
            covered = hmask
            for e in range(n):
                if covered >> e & 1:
                    continue
                kmask = _closure_extend(mult, hmask, hmembers, hgens, e)
                if kmask not in found:
                    found[kmask] = hgens + (e,)
                    queue.append(kmask)
                covered |= _coset_mask(mult, hmembers, e)
        order_key = lambda m: (m.bit_count(), bits_list(m))
        masks = sorted(found, key=order_key)
        self.masks: list[int] = masks
        self.sizes: list[int] = [m.bit_count() for m in masks]
        self.gens: list[tuple[int, ...]] = [found[m] for m in masks]
        self.members: list[list[int]] = [bits_list(m) for m in masks]
        self.index: dict[int, int] = {m: i for i, m in enumerate(masks)}
        self.subgroups: list[SubgroupSet] = [SubgroupSet(g, m) for m in masks]
        self.full_mask = masks[-1]

    def _build_conjugation(self) -> None:
        g = self.group
        n = g.order
        mult, inv = g.mult, g.inv
        conj_idx: list[list[int]] = []
        for i, mask in enumerate(self.masks):
            mem = self.members[i]
            row = [0] * n
            for x in range(n):
                rix = mult[inv[x]]
                cm = 0
                for h in mem:
                    cm |= 1 << mult[rix[h]][x]
                row[x] = self.index[cm]
            conj_idx.append(row)
        self.conj_idx = conj_idx
        classes: list[list[int]] = []
        seen = [False] * len(self.masks)
        for i in range(len(self.masks)):
            if seen[i]:
                continue
            orbit = sorted(set(conj_idx[i]))
            for j in orbit:
                seen[j] = True
            classes.append(orbit)
        self.conjugacy_classes = classes

    # -- basic queries -----------------------------------------------------

    def index_of(self, mask: int) -> int:
        return self.index[mask]

    def subgroup(self, i: int) -> SubgroupSet:
        return self.subgroups[i]

    @cached_property
    def inclusion(self) -> list[tuple[int, int]]:
        """All pairs (i, j) with subgroup i properly contained in subgroup j."""
        out = []
        masks = self.masks
        for i, mi in enumerate(masks):
            for j, mj in enumerate(masks):
                if i != j and mi & ~mj == 0:
                    out.append((i, j))
        return out

    def subgroups_in(self, umask: int) -> list[int]:
        got = self._in_universe.get(umask)
        if got is None:
            got = [i for i, m in enumerate(self.masks) if m & ~umask == 0]
            self._in_universe[umask] = got
        return got

    def normalizer_idx_mask(self, i: int) -> int:
        row = self.conj_idx[i]
        return mask_of(x for x in range(self.group.order) if row[x] == i)

    def is_normal_in(self, i: int, umask: int) -> bool:
        row = self.conj_idx[i]
        for x in iter_bits(umask):
            if row[x] != i:
                return False
        return True

    def conjugate_index(self, i: int, x: int) -> int:
        return self.conj_idx[i][x]

    # -- products ----------------------------------------------------------

    def translate(self, x: int, j: int) -> int:
        """Mask of the left coset x * H_j."""
        key = (x, j)
        got = self._translate.get(key)
        if got is None:
            row = self.group.mult[x]
            got = 0
            for y in self.members[j]:
                got |= 1 << row[y]
            self._translate[key] = got
        return got

    def product_mask(self, i: int, j: int) -> int:
        key = (i, j)
        got = self._products.get(key)
        if got is None:
            got = 0
            for x in self.members[i]:
                got |= self.translate(x, j)
            self._products[key] = got
        return got

    def product_size(self, i: int, j: int) -> int:
        # |HK| = |H||K| / |H n K| holds for the set product of two subgroups.
        return self.sizes[i] * self.sizes[j] // (self.masks[i] & self.masks[j]).bit_count()

    def permutes(self, i: int, j: int) -> bool:
        if i == j:
            return True
        key = (i, j) if i < j else (j, i)
        got = self._permutes.get(key)
        if got is None:
            ab = self.product_mask(i, j)
            got = ab == self.product_mask(j, i)
            if got:
                # sanity: a permuting product is a subgroup
                inv = self.group.inv
                assert all(ab >> inv[x] & 1 for x in iter_bits(ab))
                assert self.group.order % ab.bit_count() == 0
            self._permutes[key] = got
        return got

    # -- named subgroup families --------------------------------------------

    def sylow_indices(self, p: int, umask: int | None = None) -> list[int]:
        require_prime(p)
        if umask is None:
            umask = self.full_mask
        usize = umask.bit_count()
        key = (p, umask)
        got = self._sylow_in.get(key)
        if got is None:
            target = p_part(usize, p)
            got = [i for i in self.subgroups_in(umask) if self.sizes[i] == target]
            self._sylow_in[key] = got
        return got

    def hall_indices(self, primes, umask: int | None = None) -> list[int]:
        if umask is None:
            umask = self.full_mask
        usize = umask.bit_count()
        target = math.prod(p_part(usize, p) for p in set(primes)) if primes else 1
        return [i for i in self.subgroups_in(umask) if self.sizes[i] == target]

    def cyclic_prime_power_indices(self, umask: int | None = None) -> list[int]:
        """Nontrivial cyclic subgroups of prime power order."""
        if umask is None:
            umask = self.full_mask
        out = []
        for i in self.subgroups_in(umask):
            size = self.sizes[i]
            if size == 1 or len(factorize(size)) != 1:
                continue
            if self.is_cyclic(i):
                out.append(i)
        return out

    def is_cyclic(self, i: int) -> bool:
        mask = self.masks[i]
        size = self.sizes[i]
        mult = self.group.mult
        for e in self.members[i]:
            k, x = 1, e
            while x != 0:
                x = mult[x][e]
                k += 1
            if k == size:
                return True
        return size == 1

    def is_prime_power(self, i: int) -> bool:
        return len(factorize(self.sizes[i])) == 1 and self.sizes[i] > 1

    # -- closures ------------------------------------------------------------

    def generated(self, seed) -> int:
        """Mask of the subgroup generated by the given element ids."""
        return generated_mask(self.group, seed)

    def generated_index(self, seed) -> int:
        return self.index[self.generated(seed)]

    def normal_closure(self, i: int) -> int:
        got = self._normal_closure.get(i)
        if got is None:
            union = 0
            for j in set(self.conj_idx[i]):
                union |= self.masks[j]
            got = self.index[self.generated(iter_bits(union))]
            self._normal_closure[i] = got
        return got

    def core(self, i: int) -> int:
        mask = self.full_mask
        for j in set(self.conj_idx[i]):
            mask &= self.masks[j]
        return self.index[mask]

    def relative_normal_closure(self, hmask: int, under_idx: int) -> int:
        """Least subgroup containing hmask closed under conjugation by U."""
        g = self.group
        mult, inv = g.mult, g.inv
        ugens = self.gens[under_idx] or tuple(self.members[under_idx])
        cur = self.generated(iter_bits(hmask))
        while True:
            extra = 0
            for x in ugens:
                rix = mult[inv[x]]
                for h in iter_bits(cur):
                    y = mult[rix[h]][x]
                    if not cur >> y & 1:
                        extra |= 1 << y
            if extra == 0:
                return self.index[cur]
            cur = self.generated(list(iter_bits(cur | extra)))

    def commutator_mask(self, amask: int, bmask: int) -> int:
        """Subgroup generated by all commutators [a, b], a in A, b in B."""
        return commutator_closure(self.group, amask, bmask)

    # -- normality chains ------------------------------------------------------

    def is_subnormal(self, i: int) -> bool:
        got = self._subnormal.get(i)
        if got is None:
            hmask = self.masks[i]
            cur = len(self.masks) - 1
            while True:
                nxt = self.relative_normal_closure(hmask, cur)
                if self.masks[nxt] == hmask:
                    got = True
                    break
                if nxt == cur:
                    got = False
                    break
                cur = nxt
            self._subnormal[i] = got
        return got

    def subnormal_stall_index(self, i: int) -> int:
        """Where the iterated normal-closure chain stabilizes."""
        hmask = self.masks[i]
        cur = len(self.masks) - 1
        while True:
            nxt = self.relative_normal_closure(hmask, cur)
            if self.masks[nxt] == hmask or nxt == cur:
                return nxt
            cur = nxt

    # -- supplements -------------------------------------------------------------

    def maximal_indices(self, umask: int | None = None) -> list[int]:
        if umask is None:
            umask = self.full_mask
        inside = self.subgroups_in(umask)
        proper = [i for i in inside if self.masks[i] != umask]
        out = []
        for i in proper:
            mi = self.masks[i]
            if not any(j != i and mi & ~self.masks[j] == 0 for j in proper):
                out.append(i)
        return out

    def supplement_indices(self, i: int, umask: int | None = None) -> list[int]:
        """Subgroups K of the universe with H*K equal to the whole universe."""
        if umask is None:
            umask = self.full_mask
        usize = umask.bit_count()
        hmask = self.masks[i]
        hsize = self.sizes[i]
        out = []
        for j in self.subgroups_in(umask):
            if hsize * self.sizes[j] == usize * (hmask & self.masks[j]).bit_count():
                out.append(j)
        return out

    def complement_indices(self, i: int, umask: int | None = None) -> list[int]:
        if umask is None:
            umask = self.full_mask
        usize = umask.bit_count()
        hmask = self.masks[i]
        hsize = self.sizes[i]
        return [
            j for j in self.subgroups_in(umask)
            if (hmask & self.masks[j]).bit_count() == 1 and hsize * self.sizes[j] == usize
        ]


_LATTICE_CACHE: dict[int, SubgroupLattice] = {}
_CACHE_LIMIT = 512


def all_subgroups(group: GroupTable, cap: int | None = DEFAULT_ORDER_CAP) -> SubgroupLattice:
    """The (memoized) subgroup lattice of a group."""
    hit = _LATTICE_CACHE.get(id(group))
    if hit is not None and hit.group is group:
        return hit
    lat = SubgroupLattice(group, cap=cap)
    if len(_LATTICE_CACHE) >= _CACHE_LIMIT:
        _LATTICE_CACHE.clear()
    _LATTICE_CACHE[id(group)] = lat
    return lat


# ---------------------------------------------------------------------------
# spec-level operations on SubgroupSet values


def generated_subgroup(group: GroupTable, seed) -> SubgroupSet:
    """Least subgroup containing the seed element ids."""
    lat = all_subgroups(group)
    return lat.subgroup(lat.generated_index(seed))


def sylow_subgroups(group: GroupTable, p: int) -> list[SubgroupSet]:
    lat = all_subgroups(group)
    idxs = lat.sylow_indices(p)
    assert idxs, "Sylow subgroups exist for every prime"
    assert len(idxs) % p == 1, "Sylow count must be 1 mod p"
    orbit = {lat.conj_idx[idxs[0]][x] for x in range(group.order)}
    assert orbit == set(idxs), "Sylow subgroups must be conjugate"
    return [lat.subgroup(i) for i in idxs]


def hall_subgroups(group: GroupTable, primes) -> list[SubgroupSet]:
    lat = all_subgroups(group)
    return [lat.subgroup(i) for i in lat.hall_indices(primes)]


def normalizer(group: GroupTable, h: SubgroupSet) -> SubgroupSet:
    lat = all_subgroups(group)
    return lat.subgroup(lat.index[lat.normalizer_idx_mask(lat.index[h.mask])])


def centralizer(group: GroupTable, elements) -> SubgroupSet:
    elems = list(elements)
    mult = group.mult
    mask = mask_of(
        x for x in range(group.order)
        if all(mult[x][s] == mult[s][x] for s in elems)
    )
    return SubgroupSet(group, mask)


def core(group: GroupTable, h: SubgroupSet) -> SubgroupSet:
    lat = all_subgroups(group)
    return lat.subgroup(lat.core(lat.index[h.mask]))


def normal_closure(group: GroupTable, h: SubgroupSet) -> SubgroupSet:
    lat = all_subgroups(group)
    return lat.subgroup(lat.normal_closure(lat.index[h.mask]))


def relative_normal_closure(group: GroupTable, h: SubgroupSet,
                            under: SubgroupSet) -> SubgroupSet:
    lat = all_subgroups(group)
    return lat.subgroup(lat.relative_normal_closure(h.mask, lat.index[under.mask]))


def commutator_subgroup(group: GroupTable, a: SubgroupSet, b: SubgroupSet) -> SubgroupSet:
    lat = all_subgroups(group)
    return lat.subgroup(lat.index[lat.commutator_mask(a.mask, b.mask)])


def is_normal(group: GroupTable, h: SubgroupSet) -> bool:
    lat = all_subgroups(group)
    return lat.is_normal_in(lat.index[h.mask], lat.full_mask)


def is_subnormal(group: GroupTable, h: SubgroupSet) -> bool:
    lat = all_subgroups(group)
    return lat.is_subnormal(lat.index[h.mask])


def maximal_subgroups(group: GroupTable) -> list[SubgroupSet]:
    lat = all_subgroups(group)
    return [lat.subgroup(i) for i in lat.maximal_indices()]


def supplements(group: GroupTable, h: SubgroupSet) -> list[SubgroupSet]:
    lat = all_subgroups(group)
    return [lat.subgroup(j) for j in lat.supplement_indices(lat.index[h.mask])]


def complements(group: GroupTable, h: SubgroupSet) -> list[SubgroupSet]:
    lat = all_subgroups(group)
    return [lat.subgroup(j) for j in lat.complement_indices(lat.index[h.mask])]


def product_set(group: GroupTable, a: SubgroupSet, b: SubgroupSet) -> set[int]:
    lat = all_subgroups(group)
    return set(iter_bits(lat.product_mask(lat.index[a.mask], lat.index[b.mask])))


def permutes(group: GroupTable, a: SubgroupSet, b: SubgroupSet) -> bool:
    lat = all_subgroups(group)
    return lat.permutes(lat.index[a.mask], lat.index[b.mask])
