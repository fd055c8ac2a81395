"""Authorization/obligation policy engine.

Parses policy text (strict and defeasible statements plus preferences),
grounds it against a scenario, translates (policy, state) pairs into ground
programs, and answers the compliance questions the planner needs: the
per-state policy map, consistency/categoricity analysis, authorization
classification and obligation compliance.

Translation of a policy statement with head H and condition C:

    strict:       H <- C
    defeasible d: H <- C, not ab(d, ...), not -H
    prefer(i, j): ab(j, ...) <- C_i        (one rule per instance pair)

Statement conditions keep their static literals; the per-state program adds
all static facts, so a ground instance simply never fires where its statics
are false.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Optional, Sequence

from .domain import Scenario, State
from .errors import (CyclicPreference, InconsistentPolicyAt, NotCategoricalAt,
                     ParseError, UnknownLabel, ValidationError)
from .logic import (Atom, GroundProgram, GroundRule, Literal, answer_sets,
                    fact, rule, sorted_literals)
from .syntax import TokenStream, is_variable, parse_simple_args, tokenize
from .terms import Action, Happening, SimpleTerm

MODAL_PREDICATES = ("permitted", "obl")


class AuthorizationClass(Enum):
    STRONGLY_COMPLIANT = "strongly_compliant"
    WEAKLY_COMPLIANT_ONLY = "weakly_compliant_only"  # only meaningful for
    # non-categorical analysis; coincides with UNDERSPECIFIED otherwise
    NON_COMPLIANT = "non_compliant"
    UNDERSPECIFIED = "underspecified"


@dataclass(frozen=True)
class PolicyStatement:
    """One ground policy statement."""

    modality: str  # "authorization" | "obligation"
    positive: bool  # sign of the permitted/obl literal
    subject: Happening
    cond: tuple[Literal, ...] = ()
    defeasible: bool = False
    label: Optional[str] = None
    # Substitution values that produced this instance, in sorted-variable
    # order; they key the instance's ab atom.
    ground_values: tuple[SimpleTerm, ...] = ()

    def __post_init__(self):
        if self.defeasible != (self.label is not None):
            raise ValidationError("defeasible statements and only they carry a label")
        if self.modality == "authorization" and self.subject.negated:
            raise ValidationError("authorization subjects are elementary actions")

    def head_literal(self) -> Literal:
        if self.modality == "authorization":
            atom = Atom("permitted", (self.subject.action,))
        else:
            atom = Atom("obl", (self.subject,))
        return Literal(atom, self.positive)

    def ab_atom(self) -> Atom:
        assert self.label is not None
        return Atom("ab", (self.label, *self.ground_values))


@dataclass(frozen=True)
class PreferenceStatement:
    stronger: str
    weaker: str


@dataclass(frozen=True)
class Policy:
    """Ground policy: statements, preferences, and the scenario they were
    grounded against."""

    statements: tuple[PolicyStatement, ...]
    preferences: tuple[PreferenceStatement, ...]
    scenario: Scenario = field(compare=False)

    def labeled(self, label: str) -> tuple[PolicyStatement, ...]:
        return tuple(s for s in self.statements if s.label == label)

    def merged_with(self, *others: "Policy") -> "Policy":
        statements = list(self.statements)
        preferences = list(self.preferences)
        for other in others:
            if other.scenario is not self.scenario:
                raise ValidationError("policies grounded against different scenarios")
            statements.extend(other.statements)
            preferences.extend(other.preferences)
        _check_preferences(statements, preferences)
        return Policy(tuple(statements), tuple(preferences), self.scenario)


@dataclass(frozen=True)
class PolicyMap:
    """Permitted/obl literals holding at one state, plus whether the policy
    is categorical there."""

    literals: tuple[Literal, ...]
    categorical_here: bool

    def __contains__(self, literal: Literal) -> bool:
        return literal in self.literals


def permitted_literal(action: Action, positive: bool = True) -> Literal:
    return Literal(Atom("permitted", (action,)), positive)


def obl_literal(happening: Happening, positive: bool = True) -> Literal:
    return Literal(Atom("obl", (happening,)), positive)


# --- parsing ----------------------------------------------------------------

def parse_policy(text: str, scenario: Scenario) -> Policy:
    """Parses policy text: one statement per line, '#' comments.

    Strict:      [-]permitted(e) if cond   /   [-]obl(h) if cond
    Defeasible:  d: normally <same forms>
    Preference:  prefer(d1, d2)

    Capitalized identifiers are variables, grounded against the scenario.
    """
    statements: list[PolicyStatement] = []
    preferences: list[PreferenceStatement] = []
    labels: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        ts = TokenStream(tokenize(line, lineno), lineno)
        if ts.at("name", "prefer"):
            preferences.append(_parse_preference(ts))
            continue
        stmt_instances = _parse_statement(ts, scenario, lineno)
        if stmt_instances and stmt_instances[0].label is not None:
            label = stmt_instances[0].label
            if label in labels:
                raise ParseError(f"duplicate defeasible label {label!r}", lineno)
            labels.add(label)
        statements.extend(stmt_instances)
    _check_preferences(statements, preferences)
    return Policy(tuple(statements), tuple(preferences), scenario)


def load_policy_file(path, scenario: Scenario) -> Policy:
    from pathlib import Path
    return parse_policy(Path(path).read_text(encoding="utf-8"), scenario)


def _parse_preference(ts: TokenStream) -> PreferenceStatement:
    ts.expect("name", "prefer")
    ts.expect("punct", "(")
    stronger = ts.expect("name").text
    ts.expect("punct", ",")
    weaker = ts.expect("name").text
    ts.expect("punct", ")")
    if not ts.at("end"):
        raise ts.error("trailing input after prefer statement")
    return PreferenceStatement(stronger, weaker)


def _check_preferences(statements: Sequence[PolicyStatement],
                       preferences: Sequence[PreferenceStatement]) -> None:
    labels = {s.label for s in statements if s.label is not None}
    graph: dict[str, set[str]] = {}
    for pref in preferences:
        for label in (pref.stronger, pref.weaker):
            if label not in labels:
                raise UnknownLabel(f"prefer references unknown label {label!r}")
        graph.setdefault(pref.stronger, set()).add(pref.weaker)
        if pref.stronger == pref.weaker:
            raise CyclicPreference(f"prefer({pref.stronger}, {pref.weaker}) is reflexive")
    # DFS cycle detection over the stronger-than digraph.
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {label: WHITE for label in graph}
    def visit(node: str) -> None:
        color[node] = GRAY
        for succ in graph.get(node, ()):
            c = color.get(succ, WHITE)
            if c == GRAY:
                raise CyclicPreference(f"preference cycle through {succ!r}")
            if c == WHITE:
                visit(succ)
        color[node] = BLACK
    for label in list(graph):
        if color[label] == WHITE:
            visit(label)


def _parse_statement(ts: TokenStream, scenario: Scenario,
                     lineno: int) -> list[PolicyStatement]:
    label: Optional[str] = None
    defeasible = False
    if ts.current.kind == "name" and ts.tokens[ts.i + 1].text == ":":
        label = ts.advance().text
        ts.advance()  # ':'
        ts.expect("name", "normally")
        defeasible = True
    elif ts.at("name", "normally"):
        raise ts.error("'normally' requires a leading label")

    positive = True
    if ts.at("punct", "-"):
        ts.advance()
        positive = False
    modal = ts.expect("name").text
    if modal not in MODAL_PREDICATES:
        raise ts.error(f"expected permitted(...) or obl(...), found {modal!r}")
    ts.expect("punct", "(")
    negated_subject = False
    if ts.at("punct", "-"):
        if modal == "permitted":
            raise ts.error("authorization subjects are elementary actions, not -e")
        ts.advance()
        negated_subject = True
    subj_name = ts.expect("name").text
    subj_args = parse_simple_args(ts, allow_vars=True)
    ts.expect("punct", ")")

    cond: list[Literal] = []
    if ts.at("name", "if"):
        ts.advance()
        while True:
            cond.append(_read_cond_literal(ts))
            if ts.at("punct", ","):
                ts.advance()
                continue
            break
    if not ts.at("end"):
        raise ts.error(f"trailing input: {ts.current.text!r}")

    return _ground_statement(
        scenario, lineno,
        modality="authorization" if modal == "permitted" else "obligation",
        positive=positive, subj_name=subj_name, subj_args=subj_args,
        negated_subject=negated_subject, cond=tuple(cond), defeasible=defeasible,
        label=label)


def _read_cond_literal(ts: TokenStream) -> Literal:
    """A condition literal: fluent/static atom, or a permitted/obl atom with
    an action (or negated action) argument.  prefer is rejected here."""
    positive = True
    if ts.at("punct", "-"):
        ts.advance()
        positive = False
    name = ts.expect("name").text
    if name == "prefer":
        raise ts.error("prefer atoms may not occur in conditions")
    if name in MODAL_PREDICATES:
        ts.expect("punct", "(")
        negated = False
        if ts.at("punct", "-"):
            if name == "permitted":
                raise ts.error("authorization subjects are elementary actions, not -e")
            ts.advance()
            negated = True
        inner_name = ts.expect("name").text
        inner_args = parse_simple_args(ts, allow_vars=True)
        ts.expect("punct", ")")
        # Variables inside become ground in _ground_statement; build a
        # template action for now.
        action = Action(inner_name, inner_args)
        if name == "permitted":
            return Literal(Atom("permitted", (action,)), positive)
        return Literal(Atom("obl", (Happening(action, negated),)), positive)
    args = parse_simple_args(ts, allow_vars=True)
    return Literal(Atom(name, args), positive)


def _infer_sorts(scenario: Scenario, lineno: int, subj_name: str,
                 subj_args: tuple, cond: tuple[Literal, ...]) -> dict[str, str]:
    signature = scenario.signature
    var_sorts: dict[str, str] = {}

    def note(var: str, sort: str, context: str) -> None:
        if var_sorts.setdefault(var, sort) != sort:
            raise ParseError(f"variable {var} used with conflicting sorts "
                             f"({var_sorts[var]} vs {sort}) in {context}", lineno)

    def note_args(args: tuple, schema, context: str) -> None:
        if schema is None:
            raise ParseError(f"unknown predicate in {context}", lineno)
        if len(args) != len(schema.arg_sorts):
            raise ParseError(f"wrong arity in {context}", lineno)
        for arg, sort in zip(args, schema.arg_sorts):
            if is_variable(arg):
                note(arg, sort, context)
            elif arg not in signature.sorts[sort]:
                raise ParseError(f"{arg!r} is not in sort {sort!r} in {context}", lineno)

    note_args(subj_args, signature.action_schema(subj_name), subj_name)
    for lit in cond:
        atom = lit.atom
        if atom.predicate in MODAL_PREDICATES:
            inner = atom.args[0]
            action = inner.action if isinstance(inner, Happening) else inner
            note_args(action.args, signature.action_schema(action.name),
                      str(atom))
        else:
            schema = (signature.fluent_schema(atom.predicate)
                      or signature.static_schema(atom.predicate))
            note_args(atom.args, schema, str(atom))
    return var_sorts


def _ground_statement(scenario: Scenario, lineno: int, *, modality: str,
                      positive: bool, subj_name: str, subj_args: tuple,
                      negated_subject: bool, cond: tuple[Literal, ...],
                      defeasible: bool, label: Optional[str]) -> list[PolicyStatement]:
    if scenario.signature.action_schema(subj_name) is None:
        raise ParseError(f"unknown action symbol {subj_name!r}", lineno)
    var_sorts = _infer_sorts(scenario, lineno, subj_name, subj_args, cond)
    names = sorted(var_sorts)
    instances: list[PolicyStatement] = []
    for values in itertools.product(
            *(scenario.signature.sorts[var_sorts[v]] for v in names)):
        subst = dict(zip(names, values))
        action = Action(subj_name, tuple(
            subst[a] if is_variable(a) else a for a in subj_args))
        if not scenario.is_ground_action(action):
            continue
        g_cond = []
        drop = False
        for lit in cond:
            g_lit = _substitute_cond(lit, subst, scenario)
            if g_lit is None:
                drop = True
                break
            g_cond.append(g_lit)
        if drop:
            continue
        instances.append(PolicyStatement(
            modality=modality, positive=positive,
            subject=Happening(action, negated_subject),
            cond=tuple(g_cond), defeasible=defeasible, label=label,
            ground_values=values))
    return instances


def _substitute_cond(lit: Literal, subst: Mapping[str, SimpleTerm],
                     scenario: Scenario) -> Optional[Literal]:
    """Grounds a condition literal; returns None when a modal condition's
    action is not a ground action of the scenario (the atom can never hold)."""
    atom = lit.atom
    if atom.predicate in MODAL_PREDICATES:
        inner = atom.args[0]
        negated = isinstance(inner, Happening) and inner.negated
        action = inner.action if isinstance(inner, Happening) else inner
        g_action = Action(action.name, tuple(
            subst[a] if is_variable(a) else a for a in action.args))
        if not scenario.is_ground_action(g_action):
            return None
        if atom.predicate == "permitted":
            return Literal(Atom("permitted", (g_action,)), lit.positive)
        return Literal(Atom("obl", (Happening(g_action, negated),)), lit.positive)
    new_args = tuple(subst[a] if is_variable(a) else a for a in atom.args)
    return Literal(Atom(atom.predicate, new_args), lit.positive)


# --- translation and evaluation ----------------------------------------------

def translate(policy: Policy, state: State) -> GroundProgram:
    """The ground program for (policy, state): state literals and static
    facts as facts, statements as rules, preferences as ab rules."""
    rules: list[GroundRule] = []
    for lit in sorted_literals(state.literals):
        rules.append(fact(lit))
    for atom in sorted(policy.scenario.statics_facts, key=Atom.sort_key):
        rules.append(fact(Literal(atom, True)))
    for stmt in policy.statements:
        head = stmt.head_literal()
        if stmt.defeasible:
            rules.append(rule(head, pos=stmt.cond,
                              neg=(Literal(stmt.ab_atom(), True), head.complement)))
        else:
            rules.append(rule(head, pos=stmt.cond))
    for pref in policy.preferences:
        for weaker in policy.labeled(pref.weaker):
            for stronger in policy.labeled(pref.stronger):
                rules.append(rule(Literal(weaker.ab_atom(), True),
                                  pos=stronger.cond))
    return GroundProgram.of(rules)


def _restrict_to_norms(literals: Iterable[Literal]) -> tuple[Literal, ...]:
    return sorted_literals(l for l in literals
                           if l.atom.predicate in MODAL_PREDICATES)


def policy_map(policy: Policy, state: State) -> PolicyMap:
    """The permitted/obl literals entailed at `state` (cautiously, over all
    answer sets); raises InconsistentPolicyAt when no answer set exists."""
    sets = answer_sets(translate(policy, state))
    if not sets:
        raise InconsistentPolicyAt(state)
    common = frozenset.intersection(*sets)
    return PolicyMap(_restrict_to_norms(common), categorical_here=len(sets) == 1)


@dataclass
class AnalysisReport:
    consistent: bool
    categorical: bool
    witnesses: dict[str, tuple[State, ...]]


def analyze(policy: Policy, states: Iterable[State]) -> AnalysisReport:
    """Def.-style consistency/categoricity check over a set of states."""
    inconsistent: list[State] = []
    non_categorical: list[State] = []
    for state in states:
        try:
            pmap = policy_map(policy, state)
        except InconsistentPolicyAt:
            inconsistent.append(state)
            continue
        if not pmap.categorical_here:
            non_categorical.append(state)
    witnesses = {}
    if inconsistent:
        witnesses["inconsistent"] = tuple(inconsistent)
    if non_categorical:
        witnesses["non_categorical"] = tuple(non_categorical)
    return AnalysisReport(consistent=not inconsistent,
                          categorical=not inconsistent and not non_categorical,
                          witnesses=witnesses)


class PolicyEvaluator:
    """Memoizing wrapper around policy_map for one policy.

    Planning touches the same states many times; maps are immutable so a
    plain dict cache is safe (read-mostly, per evaluator instance).
    """

    def __init__(self, policy: Policy):
        self.policy = policy
        self._cache: dict[State, PolicyMap] = {}

    def map_at(self, state: State) -> PolicyMap:
        pmap = self._cache.get(state)
        if pmap is None:
            pmap = policy_map(self.policy, state)
            self._cache[state] = pmap
        return pmap

    def categorical_map_at(self, state: State) -> PolicyMap:
        pmap = self.map_at(state)
        if not pmap.categorical_here:
            raise NotCategoricalAt(state)
        return pmap

    def classify_authorization(self, state: State, action: Action) -> AuthorizationClass:
        pmap = self.categorical_map_at(state)
        if permitted_literal(action, True) in pmap:
            return AuthorizationClass.STRONGLY_COMPLIANT
        if permitted_literal(action, False) in pmap:
            return AuthorizationClass.NON_COMPLIANT
        return AuthorizationClass.UNDERSPECIFIED

    def obligation_compliant(self, state: State, action: Action) -> bool:
        pmap = self.categorical_map_at(state)
        for lit in pmap.literals:
            if lit.atom.predicate != "obl" or not lit.positive:
                continue
            happening = lit.atom.args[0]
            if happening.negated:
                if happening.action == action:
                    return False
            elif happening.action != action:
                return False
        return True

    def modality_ambiguous(self, state: State, action: Action) -> bool:
        pmap = self.categorical_map_at(state)
        return (obl_literal(Happening(action), True) in pmap
                and permitted_literal(action, False) in pmap)


def classify_authorization(policy: Policy, state: State,
                           action: Action) -> AuthorizationClass:
    return PolicyEvaluator(policy).classify_authorization(state, action)


def obligation_compliant(policy: Policy, state: State, action: Action) -> bool:
    return PolicyEvaluator(policy).obligation_compliant(state, action)


def modality_ambiguous(policy: Policy, state: State, action: Action) -> bool:
    return PolicyEvaluator(policy).modality_ambiguous(state, action)
