"""The controller loop: changing behavior modes mid-plan.

Replays the mode-change walkthrough on s1 (safe, then normal at step 3,
then risky at step 7) and the s9 story where only escalating boldness
collects all three ores.

    python3 demos/05_changing_modes_mid_plan.py
"""

from normplan import Catalog, ModeChange, ModeSchedule, plan

catalog = Catalog()

# ---------------------------------------------------------------------------
# 1. s1 with two mode changes.  Each change triggers a re-solve from its
#    step; earlier actions are frozen as learned information and are never
#    re-judged under the new, different rules.
schedule = ModeSchedule("safe", (ModeChange(3, "normal"), ModeChange(7, "risky")))
annotated = catalog.solve("s1", schedule)
print(annotated.to_text())
print("per-iteration metrics (each over its replanned window):")
for segment, metrics in zip(annotated.segments, annotated.final_metrics):
    print(f"  {segment.mode:<7} from step {segment.from_step:>2}: "
          f"{metrics.as_dict()}")

# ---------------------------------------------------------------------------
# 2. s9: the safe agent collects gold and then waits; silver sits on a
#    medium-risk cell and iron behind high-risk ground.
s9 = catalog.scenario("s9")
base = catalog.base_policy(s9)
modes = catalog.modes_for(s9)
for name in ("safe", "normal", "risky"):
    result = plan(s9, base, modes[name])
    print(f"\npure {name}: subgoals={result.metrics['subgoal_count']} "
          f"waits={result.metrics['wait_count']}")

# Escalating at the right moments rescues the mission without any waiting
# before the last collection:
fast = catalog.solve("s9", ModeSchedule(
    "safe", (ModeChange(2, "normal"), ModeChange(4, "risky"))))
print("\nescalation at steps 2 and 4:")
print(fast.to_text())

# Escalating later leaves one wait in each cautious segment:
slow = catalog.solve("s9", ModeSchedule(
    "safe", (ModeChange(3, "normal"), ModeChange(6, "risky"))))
print("escalation at steps 3 and 6:")
print(slow.to_text())
waits = [(s.index, s.mode) for s in slow.steps if s.action.name == "wait"]
print("waits (step, mode in effect):", waits)
