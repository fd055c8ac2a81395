"""Planning the same scenario under the three behavior modes.

The metric priorities tell the story: safe maximizes explicit compliance
before plan length, normal prefers shorter plans, risky only cares about
subgoals and brevity and ignores the obligations entirely.

    python3 demos/04_behavior_modes.py
"""

from normplan import Catalog, describe_action, plan

catalog = Catalog()
s1 = catalog.scenario("s1")
base = catalog.base_policy(s1)
modes = catalog.modes_for(s1)

for name in ("safe", "normal", "risky"):
    mode = modes[name]
    result = plan(s1, base, mode)
    actions = [a for a in result.trajectory.actions if a.name != "wait"]
    print(f"--- {name} ---")
    print("priorities:", " > ".join(mode.priority_order))
    print("hard obligation compliance:", mode.forbid_obligation_noncompliance)
    print("metrics:", result.metrics.as_dict())
    for i, action in enumerate(actions):
        print(f"  {i}. {describe_action(action)}")
    waits = len(result.trajectory.actions) - len(actions)
    if waits:
        print(f"  ... waits for the remaining {waits} steps")
    print()

# The headline trade-off: cautious modes produce longer plans.  On this
# scenario the effective plan lengths are 14 >= 12 >= 7.
lengths = {name: s1.horizon - plan(s1, base, modes[name]).metrics["wait_count"]
           for name in ("safe", "normal", "risky")}
print("effective plan lengths:", lengths)
