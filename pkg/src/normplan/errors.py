"""Exception hierarchy shared across the engine.

Every error raised by the library derives from NormplanError so callers
(CLI, HTTP service) can distinguish engine failures from programming bugs.
"""

from __future__ import annotations


class NormplanError(Exception):
    """Base class for all engine errors."""


# --- logic kernel ---------------------------------------------------------

class InconsistentSet(NormplanError):
    """A candidate literal set contains a complementary pair."""


class Contradiction(NormplanError):
    """Closure of a positive program derived a complementary pair or
    violated a constraint."""


class ProgramTooLarge(NormplanError):
    """The guess set of a program exceeds the configured enumeration bound."""


# --- dynamic domain -------------------------------------------------------

class UnknownAction(NormplanError):
    """Action symbol not declared in the domain signature."""


class NotExecutable(NormplanError):
    """An executability condition fires against the requested action."""


class NondeterministicEffect(NormplanError):
    """Direct effects of an action conflict on some fluent."""


class StateSpaceCapExceeded(NormplanError):
    """Reachability expansion hit the configured state cap."""


# --- parsing and validation -----------------------------------------------

class ParseError(NormplanError):
    """Malformed policy or scenario text.

    `line` and `column` are 1-based when known, else None.
    """

    def __init__(self, message: str, line: int | None = None,
                 column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", col {column}" if column else "") + ")"
        super().__init__(message + where)


class ValidationError(NormplanError):
    """Structurally valid input that violates a semantic invariant."""


class UnknownLabel(NormplanError):
    """A preference names a defeasible label that does not exist."""


class CyclicPreference(NormplanError):
    """The preference relation over defeasible labels has a cycle."""


# --- policy evaluation ------------------------------------------------------

class InconsistentPolicyAt(NormplanError):
    """No answer set exists for the policy at the given state."""

    def __init__(self, state):
        self.state = state
        super().__init__(f"policy has no answer set at state {state}")


class NotCategoricalAt(NormplanError):
    """More than one answer set exists for the policy at the given state."""

    def __init__(self, state):
        self.state = state
        super().__init__(f"policy is not categorical at state {state}")


# --- planning ----------------------------------------------------------------

class MissingMetric(NormplanError):
    """A metric vector lacks a metric required by the active behavior mode."""


class NoPlan(NormplanError):
    """No trajectory satisfies the mode's hard constraints."""


class NotCategorical(NormplanError):
    """Planning requires a categorical policy; see `state` for a witness."""

    def __init__(self, state):
        self.state = state
        super().__init__(f"planner requires a categorical policy; witness state {state}")


class SolveTimeout(NormplanError):
    """A solve exceeded its deadline."""


class IterationOutOfRange(NormplanError):
    """Controller iteration index outside [0, number of mode changes]."""
