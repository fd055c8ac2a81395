"""Policies, their ground programs, and compliance classification.

Shows the policy text format, the per-state translation, policy maps,
consistency/categoricity analysis, and how defeasible statements with
preferences behave.

    python3 demos/03_policies_and_compliance.py
"""

from normplan import (Action, Catalog, PolicyEvaluator, analyze,
                      obligation_compliant, parse_policy, policy_map,
                      reachable_states, successor, translate)

catalog = Catalog()
s1 = catalog.scenario("s1")

# ---------------------------------------------------------------------------
# 1. The base mining policy: collect gold, then silver, then iron —
#    expressed as two conditional prohibitions.
base = catalog.base_policy(s1)
for stmt in base.statements:
    print("statement:", stmt.head_literal(), "if",
          [str(c) for c in stmt.cond])

# ---------------------------------------------------------------------------
# 2. Translating (policy, state) gives a ground program: the state and the
#    static facts become facts, statements become rules.
program = translate(base, s1.initial)
print(f"\nground program for the initial state: {len(program.rules)} rules; "
      "the two policy rules:")
print("\n".join(program.dumps().splitlines()[-2:]))

# 3. The policy map collects the permitted/obl literals that follow.
pmap = policy_map(base, s1.initial)
print("policy map at start:", [str(l) for l in pmap.literals])

after_gold = s1.initial
for step in (("move", ("l4", "l1")), ("move", ("l1", "l0")),
             ("collect", ("gold",))):
    after_gold = successor(after_gold, s1.action(*step), s1)
print("policy map after collecting gold:",
      [str(l) for l in policy_map(base, after_gold).literals])

# ---------------------------------------------------------------------------
# 4. Compliance.  Collecting silver first violates an obligation.
print("\ncollect silver compliant at start?",
      obligation_compliant(base, s1.initial, Action("collect", ("silver",))))
print("move l4->l1 compliant at start?",
      obligation_compliant(base, s1.initial, Action("move", ("l4", "l1"))))

# Mining has no authorization statements, so every action is underspecified.
evaluator = PolicyEvaluator(base)
print("authorization class of move l4->l1:",
      evaluator.classify_authorization(s1.initial,
                                       Action("move", ("l4", "l1"))).value)

# ---------------------------------------------------------------------------
# 5. Analysis over all reachable states: the mining policies are consistent
#    (an answer set everywhere) and categorical (exactly one).
report = analyze(base, reachable_states(s1))
print(f"\nbase policy: consistent={report.consistent} "
      f"categorical={report.categorical}")

demo = catalog.named_policy("demo/inconsistent", s1)
report = analyze(demo, list(reachable_states(s1))[:5])
print(f"inconsistent demo policy: consistent={report.consistent}, "
      f"witnesses={len(report.witnesses.get('inconsistent', ()))}")

# ---------------------------------------------------------------------------
# 6. Defeasible statements are defaults; strict statements and preferred
#    defaults override them.
text = """\
d1: normally permitted(wait)
d2: normally -permitted(wait)
prefer(d1, d2)
"""
preferring = parse_policy(text, s1)
print("\nwith prefer(d1, d2):",
      [str(l) for l in policy_map(preferring, s1.initial).literals])
