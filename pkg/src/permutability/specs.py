"""Construction trees for concrete groups and their realization as tables.

A GroupSpec is a tree of construction nodes (cyclic, dihedral, symmetric,
alternating, permutation, direct, semidirect).  Any node may declare relation
words that must evaluate to the identity in the built table; the builder
verifies them instead of trusting the spec.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import tables
from .errors import ParseError, RelationViolated, UnknownKind
from .tables import DEFAULT_ORDER_CAP, GroupTable
from .words import ElementWord

KINDS = ("cyclic", "dihedral", "symmetric", "alternating", "permutation",
         "direct", "semidirect")


@dataclass(frozen=True)
class GroupSpec:
    """One node of a group construction tree."""

    kind: str
    n: int | None = None
    label: str | None = None
    degree: int | None = None
    generators: dict[str, tuple[int, ...]] | None = None
    factors: tuple["GroupSpec", ...] = ()
    kernel: "GroupSpec | None" = None
    actor: "GroupSpec | None" = None
    action: dict[str, dict[str, str]] | None = None
    relations: tuple[str, ...] = ()
    name: str | None = None
    subgroups: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise UnknownKind(f"unknown group spec kind {self.kind!r}")
        if self.kind in ("cyclic", "dihedral", "symmetric", "alternating"):
            if self.n is None or self.n < 1:
                raise ParseError(f"{self.kind} requires n >= 1, got {self.n}")
        elif self.kind == "permutation":
            if self.degree is None or self.degree < 1:
                raise ParseError(f"permutation requires degree >= 1, got {self.degree}")
            if self.generators is None:
                raise ParseError("permutation requires a generators map")
        elif self.kind == "direct":
            if not self.factors:
                raise ParseError("direct requires at least one factor")
        elif self.kind == "semidirect":
            if self.kernel is None or self.actor is None or self.action is None:
                raise ParseError("semidirect requires kernel, actor and action")


def build_from_spec(spec: GroupSpec, cap: int | None = DEFAULT_ORDER_CAP,
                    assoc_sample: int | None = None) -> GroupTable:
    """Realize a spec tree as a validated GroupTable.

    Deterministic: equal specs produce identical tables.  Declared relations
    are evaluated in the built table and RelationViolated is raised on any
    failure.
    """
    k = spec.kind
    if k == "cyclic":
        g = tables.cyclic(spec.n, spec.label or "a", cap=cap)
    elif k == "dihedral":
        g = tables.dihedral(spec.n, cap=cap)
    elif k == "symmetric":
        g = tables.symmetric(spec.n, cap=cap)
    elif k == "alternating":
        g = tables.alternating(spec.n, cap=cap)
    elif k == "permutation":
        g = tables.permutation_group(spec.degree, spec.generators,
                                     name=spec.name or "P", cap=cap)
    elif k == "direct":
        parts = [build_from_spec(f, cap=cap, assoc_sample=assoc_sample)
                 for f in spec.factors]
        g = tables.direct_product_many(parts, cap=cap)
    elif k == "semidirect":
        kern = build_from_spec(spec.kernel, cap=cap, assoc_sample=assoc_sample)
        act = build_from_spec(spec.actor, cap=cap, assoc_sample=assoc_sample)
        g = tables.semidirect_product(kern, act, spec.action, cap=cap)
    else:  # pragma: no cover - guarded by __post_init__
        raise UnknownKind(k)
    if spec.name:
        g = GroupTable(g.order, g.mult, g.inv, g.generator_labels, spec.name)
    for text in spec.relations:
        word = ElementWord.parse(text)
        if word.evaluate(g) != 0:
            raise RelationViolated(f"{g.name}: relation {text!r} is not the identity")
    return g


def resolve_subgroup_words(spec: GroupSpec, group: GroupTable, text: str) -> list[int]:
    """Element ids for a comma-separated generator-word list or a named alias."""
    if text in spec.subgroups:
        text = spec.subgroups[text]
    parts = [p for p in text.split(",") if p.strip()]
    return [ElementWord.parse(p).evaluate(group) for p in parts]
