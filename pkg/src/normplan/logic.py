"""Ground normal-logic-program evaluator with stable-model semantics.

Supports classical negation (literal pairing plus a consistency check) and
constraints (headless rules).  Answer sets are computed by guess-and-check:
the guess ranges over the literals that occur under default negation and
also in some rule head -- the only literals whose truth can branch.  Per-state
policy programs in this codebase have at most a handful of such literals, so
no external solver is needed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Optional

from .errors import Contradiction, InconsistentSet, ProgramTooLarge
from .terms import Term, term_key


@dataclass(frozen=True)
class Atom:
    """A ground atom: predicate applied to ground terms."""

    predicate: str
    args: tuple[Term, ...] = ()

    def __post_init__(self):
        if not self.predicate:
            raise ValueError("predicate must be nonempty")

    def sort_key(self):
        return (self.predicate, tuple(term_key(a) for a in self.args))

    def __str__(self) -> str:
        if not self.args:
            return self.predicate
        return f"{self.predicate}({', '.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class Literal:
    """An atom or its classical negation (rendered with a leading '-')."""

    atom: Atom
    positive: bool = True

    @property
    def complement(self) -> "Literal":
        return Literal(self.atom, not self.positive)

    def sort_key(self):
        return (*self.atom.sort_key(), not self.positive)

    def __str__(self) -> str:
        return ("" if self.positive else "-") + str(self.atom)


def sorted_literals(literals: Iterable[Literal]) -> tuple[Literal, ...]:
    return tuple(sorted(literals, key=Literal.sort_key))


def is_consistent(literals: Iterable[Literal]) -> bool:
    seen = set(literals)
    return not any(lit.complement in seen for lit in seen)


@dataclass(frozen=True)
class GroundRule:
    """head <- pos_body, not neg_body.  head None encodes a constraint."""

    head: Optional[Literal]
    pos_body: FrozenSet[Literal] = frozenset()
    neg_body: FrozenSet[Literal] = frozenset()

    def __str__(self) -> str:
        parts = [str(b) for b in sorted_literals(self.pos_body)]
        parts += [f"not {b}" for b in sorted_literals(self.neg_body)]
        head = str(self.head) if self.head is not None else ""
        if parts:
            return f"{head} :- {', '.join(parts)}."
        return f"{head}." if head else ":- ."


def rule(head: Optional[Literal], pos: Iterable[Literal] = (),
         neg: Iterable[Literal] = ()) -> GroundRule:
    return GroundRule(head, frozenset(pos), frozenset(neg))


def fact(literal: Literal) -> GroundRule:
    return GroundRule(literal, frozenset(), frozenset())


@dataclass(frozen=True)
class GroundProgram:
    """An immutable list of ground rules plus the atoms they mention."""

    rules: tuple[GroundRule, ...]
    herbrand: frozenset[Atom] = field(default=frozenset(), compare=False)

    @classmethod
    def of(cls, rules: Iterable[GroundRule]) -> "GroundProgram":
        rules = tuple(rules)
        atoms = set()
        for r in rules:
            if r.head is not None:
                atoms.add(r.head.atom)
            for lit in itertools.chain(r.pos_body, r.neg_body):
                atoms.add(lit.atom)
        return cls(rules, frozenset(atoms))

    def dumps(self) -> str:
        """Debug dump, one rule per line, in rule order."""
        return "\n".join(str(r) for r in self.rules) + ("\n" if self.rules else "")


def reduct(program: GroundProgram, candidate: Iterable[Literal]) -> tuple[GroundRule, ...]:
    """Gelfond-Lifschitz reduct of `program` w.r.t. a consistent literal set.

    Drops every rule whose neg_body intersects the candidate and strips the
    neg_body from the remaining rules.
    """
    candidate = frozenset(candidate)
    if not is_consistent(candidate):
        raise InconsistentSet(f"candidate contains a complementary pair: "
                              f"{[str(l) for l in sorted_literals(candidate)]}")
    kept = []
    for r in program.rules:
        if r.neg_body & candidate:
            continue
        kept.append(GroundRule(r.head, r.pos_body, frozenset()))
    return tuple(kept)


def least_model(positive_rules: Iterable[GroundRule]) -> frozenset[Literal]:
    """Minimal closed literal set of a program without default negation.

    Raises Contradiction if the closure derives a complementary pair or
    satisfies the body of a constraint.
    """
    rules = list(positive_rules)
    for r in rules:
        if r.neg_body:
            raise ValueError("least_model requires a positive program")
    derived: set[Literal] = set()
    pending = [r for r in rules]
    changed = True
    while changed:
        changed = False
        remaining = []
        for r in pending:
            if r.pos_body <= derived:
                if r.head is None:
                    raise Contradiction(f"constraint violated: {r}")
                if r.head not in derived:
                    if r.head.complement in derived:
                        raise Contradiction(f"derived complementary pair on {r.head.atom}")
                    derived.add(r.head)
                    changed = True
            else:
                remaining.append(r)
        pending = remaining
    # Constraints whose bodies never closed are satisfied; nothing else to do.
    return frozenset(derived)


def _guess_literals(program: GroundProgram) -> tuple[Literal, ...]:
    """Literals whose truth can branch: in some neg_body and some head."""
    heads = {r.head for r in program.rules if r.head is not None}
    in_neg = set()
    for r in program.rules:
        in_neg |= r.neg_body
    return sorted_literals(in_neg & heads)


def answer_sets(program: GroundProgram, max_guess: int = 24) -> tuple[frozenset[Literal], ...]:
    """All stable models of `program`, deterministically ordered.

    Enumerates subsets of the guess literals (head literals occurring under
    default negation); each subset fixes the reduct, whose least model is
    stable iff it agrees with the guess.  Programs whose guess set exceeds
    `max_guess` raise ProgramTooLarge.
    """
    guesses = _guess_literals(program)
    if len(guesses) > max_guess:
        raise ProgramTooLarge(
            f"{len(guesses)} branching literals exceed the bound of {max_guess}")
    # neg-body literals never appearing in a head are always false: rules
    # negated on them survive the reduct unconditionally.
    found: set[frozenset[Literal]] = set()
    for bits in itertools.product((False, True), repeat=len(guesses)):
        chosen = frozenset(g for g, bit in zip(guesses, bits) if bit)
        if not is_consistent(chosen):
            continue
        try:
            model = least_model(reduct(program, chosen))
        except Contradiction:
            continue
        if not is_consistent(model):
            continue
        if frozenset(model & set(guesses)) == chosen:
            found.add(model)
    return tuple(sorted(found, key=lambda s: tuple(l.sort_key() for l in sorted_literals(s))))


def cautious_entails(program: GroundProgram, literal: Literal,
                     max_guess: int = 24) -> bool:
    """True iff the program has at least one answer set and `literal` is in
    all of them."""
    sets = answer_sets(program, max_guess=max_guess)
    if not sets:
        return False
    return all(literal in s for s in sets)
