"""Words in named generators, e.g. ``"z^-1*x*z*x"`` or ``"y^2"``.

A word is a sequence of (label, exponent) terms separated by ``*`` or
whitespace.  Labels resolve against a group's ``generator_labels``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .errors import ParseError

if TYPE_CHECKING:
    from .tables import GroupTable

_TERM_RE = re.compile(r"([A-Za-z_][A-Za-z0-9_.]*)(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class ElementWord:
    """A product of generator powers."""

    terms: tuple[tuple[str, int], ...]

    @classmethod
    def parse(cls, text: str) -> "ElementWord":
        text = text.strip()
        if not text:
            return cls(())
        terms = []
        for chunk in re.split(r"[*\s]+", text):
            m = _TERM_RE.match(chunk)
            if m is None:
                raise ParseError(f"cannot parse word term {chunk!r} in {text!r}")
            label, exp = m.group(1), m.group(2)
            terms.append((label, 1 if exp is None else int(exp)))
        return cls(tuple(terms))

    def evaluate(self, group: "GroupTable") -> int:
        """Element id of this word in ``group``; raises UnknownLabel."""
        e = 0
        for label, exp in self.terms:
            g = group.resolve(label)
            e = group.mult[e][group.power(g, exp)]
        return e

    def __str__(self) -> str:
        return "*".join(l if k == 1 else f"{l}^{k}" for l, k in self.terms)


def parse_words(texts) -> tuple[ElementWord, ...]:
    return tuple(ElementWord.parse(t) for t in texts)
