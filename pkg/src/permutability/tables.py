"""Finite groups as explicit multiplication tables.

Element ids are dense integers 0..order-1 and the identity is always id 0.
Every constructor validates the table: Latin square, identity law, two-sided
inverses, and associativity (exhaustive up to EXHAUSTIVE_ASSOC_LIMIT,
generator-anchored plus a fixed pseudorandom sample above it).
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidAction, NotNormal, OrderCapExceeded, RelationViolated, UnknownLabel
from .words import ElementWord

DEFAULT_ORDER_CAP = 360
EXHAUSTIVE_ASSOC_LIMIT = 256
_SAMPLE_SEED = 0


@dataclass(frozen=True)
class GroupTable:
    """A finite group given by its full multiplication table."""

    order: int
    mult: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    generator_labels: dict[str, int] = field(default_factory=dict)
    name: str = "G"

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def conjugate(self, a: int, x: int) -> int:
        """x^-1 * a * x."""
        m = self.mult
        return m[m[self.inv[x]][a]][x]

    def commutator(self, a: int, b: int) -> int:
        """a^-1 * b^-1 * a * b."""
        m = self.mult
        return m[m[self.inv[a]][self.inv[b]]][m[a][b]]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv[a], -k
        if k >= self.order:
            k %= element_order(self, a)
        e = 0
        m = self.mult
        for _ in range(k):
            e = m[e][a]
        return e

    def resolve(self, label: str) -> int:
        try:
            return self.generator_labels[label]
        except KeyError:
            raise UnknownLabel(f"{self.name}: unknown generator label {label!r}") from None

    def __repr__(self) -> str:
        return f"GroupTable({self.name!r}, order={self.order})"


def _check_associativity(m: np.ndarray, generators, sample_size: int | None) -> None:
    n = m.shape[0]
    if n <= EXHAUSTIVE_ASSOC_LIMIT:
        for a in range(n):
            if not np.array_equal(m[m[a]], m[a][m]):
                raise ValueError(f"table is not associative at a={a}")
        return
    # Large tables: all triples through a generator, plus a fixed random sample.
    for g in set(generators):
        if not np.array_equal(m[m[g]], m[g][m]):
            raise ValueError(f"table is not associative at generator {g}")
        if not np.array_equal(m[m[:, g]][:, :], m[:, m[g]]):
            raise ValueError(f"table is not associative through generator {g}")
    rng = random.Random(_SAMPLE_SEED)
    count = max(10 * n, sample_size or 0)
    for _ in range(count):
        a, b, c = rng.randrange(n), rng.randrange(n), rng.randrange(n)
        if m[m[a, b], c] != m[a, m[b, c]]:
            raise ValueError(f"table is not associative at ({a},{b},{c})")


def from_rows(
    rows,
    generator_labels: dict[str, int] | None = None,
    name: str = "G",
    cap: int | None = DEFAULT_ORDER_CAP,
    assoc_sample: int | None = None,
) -> GroupTable:
    """Build and fully validate a GroupTable from raw multiplication rows."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty multiplication table")
    if cap is not None and n > cap:
        raise OrderCapExceeded(f"group order {n} exceeds cap {cap}")
    m = np.asarray(rows, dtype=np.int64)
    if m.shape != (n, n):
        raise ValueError(f"table must be square, got shape {m.shape}")
    if m.min() < 0 or m.max() >= n:
        raise ValueError("table entries out of range")
    idr = np.arange(n)
    if not (np.sort(m, axis=1) == idr).all() or not (np.sort(m, axis=0) == idr[:, None]).all():
        raise ValueError("table is not a Latin square")
    if not np.array_equal(m[0], idr) or not np.array_equal(m[:, 0], idr):
        raise ValueError("element 0 is not a two-sided identity")
    labels = dict(generator_labels or {})
    for lbl, e in labels.items():
        if not 0 <= e < n:
            raise ValueError(f"label {lbl!r} maps to invalid element {e}")
    _check_associativity(m, labels.values(), assoc_sample)
    inv = (m == 0).argmax(axis=1)
    if (m[idr, inv] != 0).any() or (m[inv, idr] != 0).any():
        raise ValueError("inverses are not two-sided")
    return GroupTable(
        order=n,
        mult=tuple(tuple(int(x) for x in row) for row in m),
        inv=tuple(int(x) for x in inv),
        generator_labels=labels,
        name=name,
    )


# ---------------------------------------------------------------------------
# elementary constructions


def cyclic(n: int, label: str = "a", name: str | None = None,
           cap: int | None = DEFAULT_ORDER_CAP) -> GroupTable:
    if n < 1:
        raise ValueError(f"cyclic order must be >= 1, got {n}")
    rows = [[(i + j) % n for j in range(n)] for i in range(n)]
    return from_rows(rows, {label: 1 % n}, name or f"C{n}", cap=cap)


def dihedral(n: int, name: str | None = None, cap: int | None = DEFAULT_ORDER_CAP) -> GroupTable:
    """Dihedral group of order 2n; 'r' rotation, 'f' flip."""
    if n < 1:
        raise ValueError(f"dihedral parameter must be >= 1, got {n}")
    order = 2 * n

    def enc(r, s):
        return r + n * s

    rows = [[0] * order for _ in range(order)]
    for r1, s1, r2, s2 in itertools.product(range(n), (0, 1), range(n), (0, 1)):
        r = (r1 + (r2 if s1 == 0 else -r2)) % n
        rows[enc(r1, s1)][enc(r2, s2)] = enc(r, s1 ^ s2)
    return from_rows(rows, {"r": enc(1 % n, 0), "f": enc(0, 1)}, name or f"D{order}", cap=cap)


def _perm_parity(p) -> int:
    seen = [False] * len(p)
    parity = 0
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity


def _perm_table(perms: list[tuple[int, ...]], labels: dict[str, tuple[int, ...]],
                name: str, cap: int | None) -> GroupTable:
    perms = sorted(perms)
    index = {p: i for i, p in enumerate(perms)}
    rows = [[index[tuple(a[b[k]] for k in range(len(b)))] for b in perms] for a in perms]
    lbl_ids = {lbl: index[p] for lbl, p in labels.items()}
    return from_rows(rows, lbl_ids, name, cap=cap)


def symmetric(n: int, name: str | None = None, cap: int | None = DEFAULT_ORDER_CAP) -> GroupTable:
    if n < 1:
        raise ValueError(f"symmetric degree must be >= 1, got {n}")
    if cap is not None and math.factorial(n) > cap:
        raise OrderCapExceeded(f"S{n} has order {math.factorial(n)} > cap {cap}")
    perms = list(itertools.permutations(range(n)))
    labels = {}
    if n >= 2:
        labels["s"] = tuple([1, 0] + list(range(2, n)))
        labels["c"] = tuple(list(range(1, n)) + [0])
    return _perm_table(perms, labels, name or f"S{n}", cap)


def alternating(n: int, name: str | None = None, cap: int | None = DEFAULT_ORDER_CAP) -> GroupTable:
    if n < 1:
        raise ValueError(f"alternating degree must be >= 1, got {n}")
    if cap is not None and n >= 2 and math.factorial(n) // 2 > cap:
        raise OrderCapExceeded(f"A{n} has order {math.factorial(n) // 2} > cap {cap}")
    perms = [p for p in itertools.permutations(range(n)) if _perm_parity(p) == 0]
    labels = {}
    if n >= 3:
        labels["t"] = tuple([1, 2, 0] + list(range(3, n)))
        if n % 2 == 1:
            labels["c"] = tuple(list(range(1, n)) + [0])
        else:
            labels["c"] = tuple([0] + list(range(2, n)) + [1])
    return _perm_table(perms, labels, name or f"A{n}", cap)


def permutation_group(degree: int, generators: dict[str, list[int] | tuple[int, ...]],
                      name: str = "P", cap: int | None = DEFAULT_ORDER_CAP) -> GroupTable:
    """Closure of labeled permutations of 0..degree-1 under composition."""
    if degree < 1:
        raise ValueError(f"degree must be >= 1, got {degree}")
    gens = {}
    for lbl, p in generators.items():
        p = tuple(int(x) for x in p)
        if sorted(p) != list(range(degree)):
            raise ValueError(f"generator {lbl!r} is not a permutation of 0..{degree - 1}")
        gens[lbl] = p
    identity = tuple(range(degree))
    elems = {identity}
    frontier = [identity]
    gen_perms = list(gens.values())
    while frontier:
        nxt = []
        for a in frontier:
            for g in gen_perms:
                q = tuple(a[g[k]] for k in range(degree))
                if q not in elems:
                    elems.add(q)
                    nxt.append(q)
                    if cap is not None and len(elems) > cap:
                        raise OrderCapExceeded(
                            f"permutation closure exceeds cap {cap}")
        frontier = nxt
    return _perm_table(list(elems), gens, name, cap)


# ---------------------------------------------------------------------------
# products and quotients


def direct_product_many(factors: list[GroupTable], name: str | None = None,
                        cap: int | None = DEFAULT_ORDER_CAP) -> GroupTable:
    if not factors:
        raise ValueError("direct product needs at least one factor")
    order = math.prod(t.order for t in factors)
    if cap is not None and order > cap:
        raise OrderCapExceeded(f"direct product order {order} exceeds cap {cap}")

    radix = [t.order for t in factors]

    def enc(coords):
        e = 0
        for c, r in zip(coords, radix):
            e = e * r + c
        return e

    coords_of = []
    for e in range(order):
        c, rem = [], e
        for r in reversed(radix):
            c.append(rem % r)
            rem //= r
        coords_of.append(tuple(reversed(c)))

    rows = [
        [enc([t.mult[a[i]][b[i]] for i, t in enumerate(factors)]) for b in coords_of]
        for a in coords_of
    ]

    all_labels = [lbl for t in factors for lbl in t.generator_labels]
    labels = {}
    for i, t in enumerate(factors):
        for lbl, e in t.generator_labels.items():
            key = lbl if all_labels.count(lbl) == 1 else f"f{i}.{lbl}"
            coords = [0] * len(factors)
            coords[i] = e
            labels[key] = enc(coords)
    prod_name = name or "x".join(t.name for t in factors)
    return from_rows(rows, labels, prod_name, cap=cap)


def direct_product(a: GroupTable, b: GroupTable, name: str | None = None,
                   cap: int | None = DEFAULT_ORDER_CAP) -> GroupTable:
    return direct_product_many([a, b], name=name, cap=cap)


def _extend_map_over_group(group: GroupTable, gen_images: dict[int, int]) -> list[int] | None:
    """Extend a map on generators multiplicatively; None if gens don't generate."""
    n = group.order
    out = [-1] * n
    out[0] = 0
    for g, img in gen_images.items():
        out[g] = img
    queue = [0] + list(gen_images)
    seen = [False] * n
    for e in queue:
        seen[e] = True
    mult = group.mult
    i = 0
    while i < len(queue):
        a = queue[i]
        i += 1
        for g, img in gen_images.items():
            b = mult[a][g]
            if not seen[b]:
                seen[b] = True
                out[b] = mult[out[a]][img]
                queue.append(b)
    if not all(seen):
        return None
    return out


def semidirect_product(
    kernel: GroupTable,
    actor: GroupTable,
    action: dict[str, dict[str, ElementWord | str]],
    name: str | None = None,
    cap: int | None = DEFAULT_ORDER_CAP,
) -> GroupTable:
    """Split extension kernel : actor.

    ``action[a][k]`` is the word for the conjugate k^a = a^-1 * k * a of the
    kernel generator labeled ``k`` by the actor generator labeled ``a``.  Each
    generator map must extend to an automorphism of the kernel and the whole
    assignment must extend to a homomorphism actor -> Aut(kernel); both are
    verified, not assumed.
    """
    nk, na = kernel.order, actor.order
    order = nk * na
    if cap is not None and order > cap:
        raise OrderCapExceeded(f"semidirect product order {order} exceeds cap {cap}")

    kernel_gens = dict(kernel.generator_labels)
    actor_gens = dict(actor.generator_labels)
    for lbl in action:
        if lbl not in actor_gens:
            raise InvalidAction(f"action references unknown actor generator {lbl!r}")

    # Conjugation maps for each actor generator, extended over the kernel.
    conj: dict[int, list[int]] = {}
    for lbl, gid in actor_gens.items():
        maps = action.get(lbl, {})
        gen_images = {}
        for klbl, kid in kernel_gens.items():
            if klbl not in maps:
                raise InvalidAction(
                    f"action of {lbl!r} does not define image of kernel generator {klbl!r}")
            word = maps[klbl]
            if isinstance(word, str):
                word = ElementWord.parse(word)
            gen_images[kid] = word.evaluate(kernel)
        alpha = _extend_map_over_group(kernel, gen_images)
        if alpha is None:
            raise InvalidAction("kernel generator labels do not generate the kernel")
        if sorted(alpha) != list(range(nk)):
            raise InvalidAction(f"action of {lbl!r} is not a bijection of the kernel")
        mk = kernel.mult
        for a in range(nk):
            ra = mk[a]
            aa = alpha[a]
            for b in range(nk):
                if alpha[ra[b]] != mk[aa][alpha[b]]:
                    raise InvalidAction(
                        f"action of {lbl!r} is not multiplication-preserving")
        if gid in conj and conj[gid] != alpha:
            raise InvalidAction(f"conflicting action for actor element {gid}")
        conj[gid] = alpha

    # Extend to every actor element.  Conjugation is an antihomomorphism:
    # k^(a*b) = (k^a)^b, so alpha_{a*b} = alpha_b . alpha_a.
    identity_map = list(range(nk))
    alphas: list[list[int] | None] = [None] * na
    alphas[0] = identity_map
    for gid, m in conj.items():
        if gid == 0:
            if m != identity_map:
                raise InvalidAction("identity actor element must act trivially")
        alphas[gid] = m
    ma = actor.mult
    queue = [0] + [g for g in conj if g != 0]
    i = 0
    while i < len(queue):
        a = queue[i]
        i += 1
        for gid, gm in conj.items():
            b = ma[a][gid]
            if alphas[b] is None:
                am = alphas[a]
                alphas[b] = [gm[am[k]] for k in range(nk)]
                queue.append(b)
    if any(m is None for m in alphas):
        raise InvalidAction("actor generator labels do not generate the actor")

    kgen_ids = sorted(set(kernel_gens.values()))
    for a in range(na):
        ra = ma[a]
        am = alphas[a]
        for b in range(na):
            bm = alphas[b]
            abm = alphas[ra[b]]
            for k in kgen_ids:
                if abm[k] != bm[am[k]]:
                    raise InvalidAction(
                        "action does not define a homomorphism into Aut(kernel)")

    # Left-action maps for the product formula: phi_a = alpha_a^-1.
    phis = []
    for m in alphas:
        p = [0] * nk
        for k in range(nk):
            p[m[k]] = k
        phis.append(p)

    def enc(n_id, h_id):
        return n_id * na + h_id

    mk = kernel.mult
    rows = [[0] * order for _ in range(order)]
    for n1 in range(nk):
        for h1 in range(na):
            row = rows[enc(n1, h1)]
            phi = phis[h1]
            mrow = mk[n1]
            arow = ma[h1]
            for n2 in range(nk):
                t = mrow[phi[n2]]
                base = n2 * na
                for h2 in range(na):
                    row[base + h2] = enc(t, arow[h2])

    all_labels = list(kernel_gens) + list(actor_gens)
    labels = {}
    for lbl, e in kernel_gens.items():
        key = lbl if all_labels.count(lbl) == 1 else f"k.{lbl}"
        labels[key] = enc(e, 0)
    for lbl, e in actor_gens.items():
        key = lbl if all_labels.count(lbl) == 1 else f"a.{lbl}"
        labels[key] = enc(0, e)
    sd_name = name or f"{kernel.name}:{actor.name}"
    return from_rows(rows, labels, sd_name, cap=cap)


def subgroup_table(group: GroupTable, members) -> tuple[GroupTable, list[int]]:
    """Re-index a subgroup as its own GroupTable; returns (table, old ids)."""
    elems = sorted(members)
    if not elems or elems[0] != 0:
        raise ValueError("subgroup must contain the identity")
    index = {e: i for i, e in enumerate(elems)}
    mult = group.mult
    try:
        rows = [[index[mult[a][b]] for b in elems] for a in elems]
    except KeyError:
        raise ValueError("member set is not closed under multiplication") from None
    labels = {lbl: index[e] for lbl, e in group.generator_labels.items() if e in index}
    table = from_rows(rows, labels, f"{group.name}|{len(elems)}", cap=None)
    return table, elems


def quotient(group: GroupTable, normal_members) -> tuple[GroupTable, tuple[int, ...]]:
    """Quotient by a normal subgroup; coset ids ordered by least member.

    Returns (table, projection) where projection maps element ids to coset ids.
    """
    nm = sorted(set(normal_members))
    if not nm or nm[0] != 0:
        raise NotNormal("normal subgroup must contain the identity")
    mult = group.mult
    inv = group.inv
    nset = set(nm)
    for x in range(group.order):
        ix = inv[x]
        for h in nm:
            if mult[mult[ix][h]][x] not in nset:
                raise NotNormal(f"subgroup is not normal (conjugation by {x} escapes)")
    order = group.order
    proj = [-1] * order
    reps = []
    for e in range(order):
        if proj[e] == -1:
            cid = len(reps)
            reps.append(e)
            for h in nm:
                proj[mult[h][e]] = cid
    q = len(reps)
    rows = [[proj[mult[a][b]] for b in reps] for a in reps]
    labels = {lbl: proj[e] for lbl, e in group.generator_labels.items()}
    table = from_rows(rows, labels, f"{group.name}/{len(nm)}", cap=None)
    p = np.asarray(proj)
    m = np.asarray(group.mult)
    qm = np.asarray(table.mult)
    if order <= EXHAUSTIVE_ASSOC_LIMIT:
        ok = np.array_equal(p[m], qm[p[:, None], p[None, :]])
    else:
        rng = random.Random(_SAMPLE_SEED)
        ok = all(
            p[m[a, b]] == qm[p[a], p[b]]
            for a, b in ((rng.randrange(order), rng.randrange(order))
                         for _ in range(10 * order))
        )
    if not ok:
        raise NotNormal("projection is not a homomorphism")
    return table, tuple(proj)


def element_order(group: GroupTable, e: int) -> int:
    """Least k >= 1 with e^k = identity."""
    if not 0 <= e < group.order:
        raise ValueError(f"element id {e} out of range")
    mult = group.mult
    k, x = 1, e
    while x != 0:
        x = mult[x][e]
        k += 1
    assert group.order % k == 0, "element order must divide group order"
    return k


def verify_relations(group: GroupTable, words) -> bool:
    """True iff every word evaluates to the identity."""
    for w in words:
        if isinstance(w, str):
            w = ElementWord.parse(w)
        if w.evaluate(group) != 0:
            return False
    return True
