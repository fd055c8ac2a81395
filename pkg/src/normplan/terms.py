"""Ground terms that occur as atom arguments.

Plain arguments are symbols (lowercase strings) or integers.  Two structured
terms also appear inside norm atoms: a ground `Action` (the argument of
`permitted(e)`) and a `Happening` (the possibly-negated action inside
`obl(h)`).  All terms are immutable, hashable and carry a total order so
every downstream container can be sorted deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

SimpleTerm = Union[str, int]


@dataclass(frozen=True, order=True)
class Action:
    """A ground action atom, e.g. move(l4, l1) or wait."""

    name: str
    args: tuple[SimpleTerm, ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.name
        return f"{self.name}({', '.join(str(a) for a in self.args)})"


@dataclass(frozen=True, order=True)
class Happening:
    """An elementary action or its negation; obl(-e) forbids executing e."""

    action: Action
    negated: bool = False

    def __str__(self) -> str:
        return ("-" if self.negated else "") + str(self.action)


Term = Union[str, int, Action, Happening]

# Type tags keep the order total across mixed argument types.
_TYPE_RANK = {int: 0, str: 1, Action: 2, Happening: 3}


def term_key(term: Term):
    """Sort key giving a total order over all term kinds."""
    if isinstance(term, bool):  # bool is an int subclass; reject early
        raise TypeError("bool is not a term")
    if isinstance(term, int):
        return (0, term)
    if isinstance(term, str):
        return (1, term)
    if isinstance(term, Action):
        return (2, term.name, tuple(term_key(a) for a in term.args))
    if isinstance(term, Happening):
        return (3, term_key(term.action), term.negated)
    raise TypeError(f"not a term: {term!r}")
