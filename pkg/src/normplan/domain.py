"""The dynamic domain: signature, states, causal laws, scenarios.

A scenario file fully describes one planning world: sorts, static facts,
inertial fluents, guarded action schemas, causal laws (with variables,
grounded at load time), a complete initial state, subgoals and a horizon.
States are complete and consistent sets of fluent literals; `successor`
implements the deterministic transition function.

Static atoms are closed-world: a negative static literal holds iff the
positive atom is absent from the scenario's static facts.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .errors import (NondeterministicEffect, NotExecutable, ParseError,
                     StateSpaceCapExceeded, UnknownAction, ValidationError)
from .logic import Atom, Literal, sorted_literals
from .syntax import (TokenStream, is_variable, parse_flat_literal,
                     parse_simple_args, tokenize)
from .terms import Action, SimpleTerm


@dataclass(frozen=True)
class Schema:
    """Predicate schema: name plus the sort of each argument position."""

    name: str
    arg_sorts: tuple[str, ...] = ()


@dataclass(frozen=True)
class ActionSchema(Schema):
    """Action schema with named parameters and an optional static guard
    restricting its ground instances (e.g. move(L1, L2) is an action only
    when connected(L1, L2) holds)."""

    params: tuple[str, ...] = ()
    guard: tuple[Literal, ...] = ()

    def __post_init__(self):
        if self.params and len(self.params) != len(self.arg_sorts):
            raise ValidationError(
                f"{self.name}: params must name every argument position")


@dataclass(frozen=True)
class DomainSignature:
    sorts: Mapping[str, tuple[str, ...]]
    statics: tuple[Schema, ...]
    fluents: tuple[Schema, ...]
    actions: tuple[ActionSchema, ...]

    def __post_init__(self):
        names = [s.name for s in self.statics + self.fluents + self.actions]
        if len(set(names)) != len(names):
            raise ValidationError("static, fluent and action names must be disjoint")
        if not any(a.name == "wait" and not a.arg_sorts for a in self.actions):
            raise ValidationError("signature must declare a nullary action 'wait'")
        for schema in self.statics + self.fluents + self.actions:
            for sort in schema.arg_sorts:
                if sort not in self.sorts:
                    raise ValidationError(f"{schema.name}: unknown sort {sort!r}")

    def static_schema(self, name: str) -> Optional[Schema]:
        return next((s for s in self.statics if s.name == name), None)

    def fluent_schema(self, name: str) -> Optional[Schema]:
        return next((s for s in self.fluents if s.name == name), None)

    def action_schema(self, name: str) -> Optional[ActionSchema]:
        return next((s for s in self.actions if s.name == name), None)

    def ground_fluent_atoms(self) -> tuple[Atom, ...]:
        atoms = []
        for schema in self.fluents:
            for args in itertools.product(*(self.sorts[s] for s in schema.arg_sorts)):
                atoms.append(Atom(schema.name, args))
        return tuple(atoms)


@dataclass(frozen=True)
class State:
    """A complete, consistent set of ground fluent literals."""

    literals: frozenset[Literal]

    def holds(self, literal: Literal) -> bool:
        return literal in self.literals

    def positives(self) -> tuple[Literal, ...]:
        return sorted_literals(l for l in self.literals if l.positive)

    def validate(self, signature: DomainSignature) -> None:
        atoms = {lit.atom for lit in self.literals}
        expected = set(signature.ground_fluent_atoms())
        missing = expected - atoms
        if missing:
            names = ", ".join(str(a) for a in sorted(missing, key=Atom.sort_key)[:5])
            raise ValidationError(f"initial state incomplete: no literal for {names}"
                                  + (" ..." if len(missing) > 5 else ""))
        extra = atoms - expected
        if extra:
            names = ", ".join(str(a) for a in sorted(extra, key=Atom.sort_key)[:5])
            raise ValidationError(f"state mentions unknown fluent atoms: {names}")
        for lit in self.literals:
            if lit.complement in self.literals:
                raise ValidationError(f"state is inconsistent on {lit.atom}")

    @classmethod
    def from_positives(cls, signature: DomainSignature,
                       positives: Iterable[Literal]) -> "State":
        """Completes a set of positive literals with negative literals for
        every unmentioned ground fluent atom."""
        positives = set(positives)
        mentioned = {lit.atom for lit in positives}
        literals = set(positives)
        for atom in signature.ground_fluent_atoms():
            if atom not in mentioned:
                literals.add(Literal(atom, positive=False))
        return cls(frozenset(literals))

    def __str__(self) -> str:
        return "{" + ", ".join(str(l) for l in self.positives()) + "}"


@dataclass(frozen=True)
class CausalLaw:
    """Ground causal law.

    dynamic:       trigger causes head if conditions
    static:        head if conditions
    executability: impossible trigger if conditions
    """

    kind: str  # dynamic | static | executability
    trigger: Optional[Action] = None
    head: Optional[Literal] = None
    conditions: frozenset[Literal] = frozenset()

    def __post_init__(self):
        if self.kind not in ("dynamic", "static", "executability"):
            raise ValidationError(f"unknown law kind {self.kind!r}")
        if self.kind == "dynamic" and (self.trigger is None or self.head is None):
            raise ValidationError("dynamic law needs a trigger and a head")
        if self.kind == "static" and (self.trigger is not None or self.head is None):
            raise ValidationError("static law has a head and no trigger")
        if self.kind == "executability" and (self.trigger is None or self.head is not None):
            raise ValidationError("executability law has a trigger and no head")


class Scenario:
    """Validated, immutable planning world loaded from a scenario document."""

    def __init__(self, *, id: str, name: str, signature: DomainSignature,
                 laws: tuple[CausalLaw, ...], initial: State,
                 statics_facts: frozenset[Atom], subgoals: tuple[Literal, ...],
                 horizon: int, display: Optional[dict] = None):
        if horizon < 1:
            raise ValidationError(f"horizon must be >= 1, got {horizon}")
        initial.validate(signature)
        self.id = id
        self.name = name
        self.signature = signature
        self.laws = laws
        self.initial = initial
        self.statics_facts = statics_facts
        self.subgoals = subgoals
        self.horizon = horizon
        self.display = display
        ground_fluents = set(signature.ground_fluent_atoms())
        for sub in subgoals:
            if sub.atom not in ground_fluents:
                raise ValidationError(f"subgoal {sub} is not a ground fluent")
        self.ground_actions = self._ground_actions()
        self._actions_by_key = {(a.name, a.args): a for a in self.ground_actions}
        self._dynamic_by_action: dict[Action, list[CausalLaw]] = {}
        self._exec_by_action: dict[Action, list[CausalLaw]] = {}
        self._static_laws = tuple(l for l in laws if l.kind == "static")
        # wait must stay an always-executable no-op in every scenario.
        for law in laws:
            if law.trigger is not None and law.trigger.name == "wait":
                raise ValidationError("laws may not trigger on wait")
        for law in laws:
            if law.kind == "dynamic":
                self._dynamic_by_action.setdefault(law.trigger, []).append(law)
            elif law.kind == "executability":
                self._exec_by_action.setdefault(law.trigger, []).append(law)

    def _ground_actions(self) -> tuple[Action, ...]:
        actions = []
        for schema in self.signature.actions:
            params = schema.params or tuple(
                f"A{i + 1}" for i in range(len(schema.arg_sorts)))
            for args in itertools.product(
                    *(self.signature.sorts[s] for s in schema.arg_sorts)):
                subst = dict(zip(params, args))
                if all(self.static_holds(substitute_literal(g, subst))
                       for g in schema.guard):
                    actions.append(Action(schema.name, args))
        return tuple(sorted(actions))

    def action(self, name: str, args: tuple[SimpleTerm, ...] = ()) -> Action:
        """The ground action with these arguments; raises UnknownAction for
        undeclared names, ValidationError for non-ground instances."""
        if self.signature.action_schema(name) is None:
            raise UnknownAction(f"unknown action symbol {name!r}")
        act = self._actions_by_key.get((name, args))
        if act is None:
            raise ValidationError(f"{Action(name, args)} is not a ground action "
                                  "of this scenario")
        return act

    def static_holds(self, literal: Literal) -> bool:
        """Closed-world truth of a static literal."""
        present = literal.atom in self.statics_facts
        return present if literal.positive else not present

    def condition_holds(self, literal: Literal, state: State) -> bool:
        name = literal.atom.predicate
        if self.signature.fluent_schema(name) is not None:
            return state.holds(literal)
        if self.signature.static_schema(name) is not None:
            return self.static_holds(literal)
        raise ValidationError(f"condition {literal} is neither fluent nor static")

    def is_ground_action(self, action: Action) -> bool:
        return (action.name, action.args) in self._actions_by_key

    def subgoal_count(self, state: State) -> int:
        return sum(1 for sub in self.subgoals if state.holds(sub))


def substitute_literal(template: Literal, subst: Mapping[str, SimpleTerm]) -> Literal:
    new_args = []
    for arg in template.atom.args:
        if is_variable(arg):
            if arg not in subst:
                raise ValidationError(f"unbound variable {arg} in {template}")
            new_args.append(subst[arg])
        else:
            new_args.append(arg)
    return Literal(Atom(template.atom.predicate, tuple(new_args)), template.positive)


def executable(state: State, action: Action, scenario: Scenario) -> bool:
    """True iff the action is a ground action of the scenario and no
    executability law fires against it in `state`."""
    if scenario.signature.action_schema(action.name) is None:
        raise UnknownAction(f"unknown action symbol {action.name!r}")
    if not scenario.is_ground_action(action):
        return False
    for law in scenario._exec_by_action.get(action, ()):
        if all(scenario.condition_holds(c, state) for c in law.conditions):
            return False
    return True


def successor(state: State, action: Action, scenario: Scenario) -> State:
    """The unique next state: direct effects, closed under static laws,
    inertia for untouched fluents."""
    if not executable(state, action, scenario):
        raise NotExecutable(f"{action} is not executable in {state}")

    effects: dict[Atom, Literal] = {}
    for law in scenario._dynamic_by_action.get(action, ()):
        if all(scenario.condition_holds(c, state) for c in law.conditions):
            prior = effects.get(law.head.atom)
            if prior is not None and prior != law.head:
                raise NondeterministicEffect(
                    f"{action} causes both {prior} and {law.head}")
            effects[law.head.atom] = law.head

    # Inertia first, then a naive fixpoint over static laws; a static head
    # overrides an inertia-carried literal but may not contradict a direct
    # effect or another static derivation.
    assigned: dict[Atom, Literal] = dict(effects)
    from_inertia: set[Atom] = set()
    for lit in state.literals:
        if lit.atom not in assigned:
            assigned[lit.atom] = lit
            from_inertia.add(lit.atom)

    max_rounds = len(assigned) + 2
    for _ in range(max_rounds):
        changed = False
        probe = State(frozenset(assigned.values()))
        for law in scenario._static_laws:
            if not all(scenario.condition_holds(c, probe) for c in law.conditions):
                continue
            current = assigned.get(law.head.atom)
            if current == law.head:
                continue
            if current is not None and law.head.atom not in from_inertia:
                raise NondeterministicEffect(
                    f"static closure contradicts {current} with {law.head}")
            assigned[law.head.atom] = law.head
            from_inertia.discard(law.head.atom)
            changed = True
        if not changed:
            break
    else:
        raise NondeterministicEffect("static closure did not reach a fixpoint")

    result = State(frozenset(assigned.values()))
    result.validate(scenario.signature)
    return result


def reachable_states(scenario: Scenario, cap: int = 100_000) -> frozenset[State]:
    """BFS closure of `successor` over executable ground actions."""
    seen = {scenario.initial}
    frontier = [scenario.initial]
    while frontier:
        next_frontier = []
        for state in frontier:
            for action in scenario.ground_actions:
                if not executable(state, action, scenario):
                    continue
                nxt = successor(state, action, scenario)
                if nxt not in seen:
                    if len(seen) >= cap:
                        raise StateSpaceCapExceeded(
                            f"more than {cap} reachable states")
                    seen.add(nxt)
                    next_frontier.append(nxt)
        frontier = next_frontier
    return frozenset(seen)


# --- scenario documents -----------------------------------------------------

def load_scenario(document: str | dict) -> Scenario:
    """Parses and validates a scenario document (JSON text or dict)."""
    if isinstance(document, str):
        try:
            doc = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from exc
    else:
        doc = document
    if not isinstance(doc, dict):
        raise ValidationError("scenario document must be a JSON object")

    for key in ("id", "sorts", "statics", "fluents", "actions", "laws",
                "initial", "subgoals", "horizon"):
        if key not in doc:
            raise ValidationError(f"scenario document missing key {key!r}")

    sorts = {name: tuple(objs) for name, objs in doc["sorts"].items()}
    static_schemas = tuple(Schema(s["name"], tuple(s["args"]))
                           for s in doc["statics"].get("schemas", ()))
    fluent_schemas = tuple(Schema(s["name"], tuple(s["args"]))
                           for s in doc["fluents"])

    action_schemas = []
    for spec in doc["actions"]:
        guard = tuple(parse_flat_literal(g, allow_vars=True)
                      for g in spec.get("guard", ()))
        action_schemas.append(ActionSchema(spec["name"], tuple(spec["args"]),
                                           tuple(spec.get("params", ())), guard))
    signature = DomainSignature(sorts, static_schemas, fluent_schemas,
                                tuple(action_schemas))

    statics_facts = set()
    for text in doc["statics"].get("facts", ()):
        lit = parse_flat_literal(text)
        if not lit.positive:
            raise ValidationError(f"static facts must be positive: {text}")
        _check_ground_atom(lit.atom, signature, kind="static")
        statics_facts.add(lit.atom)

    laws = []
    for law_doc in doc["laws"]:
        laws.extend(_ground_law(law_doc, signature))

    initial_literals = set()
    for text in doc["initial"]:
        lit = parse_flat_literal(text)
        _check_ground_atom(lit.atom, signature, kind="fluent")
        initial_literals.add(lit)
    initial = State(frozenset(initial_literals))

    subgoals = []
    for text in doc["subgoals"]:
        lit = parse_flat_literal(text)
        _check_ground_atom(lit.atom, signature, kind="fluent")
        subgoals.append(lit)

    horizon = doc["horizon"]
    if not isinstance(horizon, int) or horizon < 1:
        raise ValidationError(f"horizon must be a positive integer, got {horizon!r}")

    return Scenario(id=doc["id"], name=doc.get("name", doc["id"]),
                    signature=signature, laws=tuple(laws), initial=initial,
                    statics_facts=frozenset(statics_facts),
                    subgoals=tuple(subgoals), horizon=horizon,
                    display=doc.get("display"))


def load_scenario_file(path) -> Scenario:
    from pathlib import Path
    return load_scenario(Path(path).read_text(encoding="utf-8"))


def _check_ground_atom(atom: Atom, signature: DomainSignature, kind: str) -> None:
    schema = (signature.fluent_schema(atom.predicate) if kind == "fluent"
              else signature.static_schema(atom.predicate))
    if schema is None:
        raise ValidationError(f"unknown {kind} predicate {atom.predicate!r}")
    if len(atom.args) != len(schema.arg_sorts):
        raise ValidationError(f"{atom}: expected {len(schema.arg_sorts)} arguments")
    for arg, sort in zip(atom.args, schema.arg_sorts):
        if is_variable(arg):
            raise ValidationError(f"{atom}: arguments must be ground")
        if arg not in signature.sorts[sort]:
            raise ValidationError(f"{atom}: {arg!r} is not in sort {sort!r}")


def _parse_action_template(text: str, signature: DomainSignature):
    ts = TokenStream(tokenize(text))
    name = ts.expect("name").text
    args = parse_simple_args(ts, allow_vars=True)
    if not ts.at("end"):
        raise ts.error(f"trailing input after action: {ts.current.text!r}")
    schema = signature.action_schema(name)
    if schema is None:
        raise UnknownAction(f"unknown action symbol {name!r}")
    if len(args) != len(schema.arg_sorts):
        raise ValidationError(f"{text}: expected {len(schema.arg_sorts)} arguments")
    return name, args


def _ground_law(law_doc: dict, signature: DomainSignature) -> list[CausalLaw]:
    kind = law_doc.get("kind")
    variables: dict[str, str] = dict(law_doc.get("vars", {}))
    for var, sort in variables.items():
        if sort not in signature.sorts:
            raise ValidationError(f"law variable {var}: unknown sort {sort!r}")

    trigger = law_doc.get("trigger")
    head = law_doc.get("head")
    conditions = [parse_flat_literal(c, allow_vars=True)
                  for c in law_doc.get("conditions", ())]
    head_lit = parse_flat_literal(head, allow_vars=True) if head else None
    trig = _parse_action_template(trigger, signature) if trigger else None

    names = sorted(variables)
    grounded = []
    for values in itertools.product(*(signature.sorts[variables[v]] for v in names)):
        subst = dict(zip(names, values))
        g_trigger = None
        if trig is not None:
            name, args = trig
            g_args = tuple(subst[a] if is_variable(a) else a for a in args)
            g_trigger = Action(name, g_args)
        g_head = substitute_literal(head_lit, subst) if head_lit else None
        g_conds = frozenset(substitute_literal(c, subst) for c in conditions)
        grounded.append(CausalLaw(kind=kind, trigger=g_trigger, head=g_head,
                                  conditions=g_conds))
    return grounded
