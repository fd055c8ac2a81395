"""normplan: norm-aware planning with controller-switchable behavior modes.

The library layers, bottom to top:

- `logic`: stable-model evaluation of ground programs,
- `domain`: scenarios, states, and the transition function,
- `policy`: authorization/obligation policies and compliance,
- `modes` / `planner`: behavior modes and lexicographic plan search,
- `controller`: the mode-change solve loop and annotated plans,
- `catalog` / `service` / `cli`: packaged data, HTTP facade, command line.
"""

from .catalog import Catalog, grid_metadata, with_horizon
from .controller import (AnnotatedPlan, LearnedInfo, ModeChange, ModeSchedule,
                         PlanSegment, PlanStep, ValidationIssue, compute_n1,
                         describe_action, extract_learned_info,
                         generate_plan_with_mode_changes, validate_schedule)
from .domain import (ActionSchema, CausalLaw, DomainSignature, Scenario,
                     Schema, State, executable, load_scenario,
                     load_scenario_file, reachable_states, successor)
from .errors import (Contradiction, CyclicPreference, InconsistentPolicyAt,
                     InconsistentSet, IterationOutOfRange, MissingMetric,
                     NondeterministicEffect, NoPlan, NormplanError,
                     NotCategorical, NotCategoricalAt, NotExecutable,
                     ParseError, ProgramTooLarge, SolveTimeout,
                     StateSpaceCapExceeded, UnknownAction, UnknownLabel,
                     ValidationError)
from .logic import (Atom, GroundProgram, GroundRule, Literal, answer_sets,
                    cautious_entails, fact, least_model, reduct, rule,
                    sorted_literals)
from .modes import (BUILTIN_MODES, NORMAL, RISKY, SAFE, BehaviorMode,
                    MetricVector, compare_lex)
from .planner import (PlanResult, Trajectory, effective_policy,
                      evaluate_metrics, initial_prefix, plan)
from .policy import (AnalysisReport, AuthorizationClass, Policy,
                     PolicyEvaluator, PolicyMap, PolicyStatement,
                     PreferenceStatement, analyze, classify_authorization,
                     load_policy_file, modality_ambiguous,
                     obligation_compliant, parse_policy, policy_map,
                     translate)
from .terms import Action, Happening

__version__ = "0.1.0"
