"""The mining world as a transition system.

Loads the packaged grid scenarios, steps through states with `successor`,
and explores reachability.

    python3 demos/02_mining_world.py
"""

from normplan import (Action, Catalog, executable, grid_metadata,
                      reachable_states, successor)

catalog = Catalog()
s1 = catalog.scenario("s1")

# ---------------------------------------------------------------------------
# 1. The scenario: a 3x3 grid, three ores, an agent in the hazardous center.
meta = grid_metadata(s1)
print(f"{s1.id}: {s1.name}")
print(f"agent at {meta['agent']}, ores {meta['ores']}, horizon {s1.horizon}")
for row in range(meta["rows"]):
    cells = [c for c in meta["cells"] if c["row"] == row]
    print("  " + "  ".join(f"{c['id']}:{c['risk'][0]}" for c in cells))

# ---------------------------------------------------------------------------
# 2. Acting.  States are complete sets of fluent literals; successor applies
#    direct effects plus inertia.  wait changes nothing.
state = s1.initial
for name, args in [("move", ("l4", "l1")), ("move", ("l1", "l0")),
                   ("collect", ("gold",)), ("wait", ())]:
    action = s1.action(name, args)
    state = successor(state, action, s1)
    print(f"after {action}: {state}")

# ---------------------------------------------------------------------------
# 3. Executability: moves need adjacency, collects need co-location.
print("\nmove l4->l0 executable in the initial state?",
      executable(s1.initial, Action("move", ("l4", "l0")), s1))
print("move l4->l1 executable in the initial state?",
      executable(s1.initial, s1.action("move", ("l4", "l1")), s1))
print("collect gold executable in the initial state?",
      executable(s1.initial, s1.action("collect", ("gold",)), s1))

# ---------------------------------------------------------------------------
# 4. The whole reachable space is small: 9 positions x 8 ore combinations.
states = reachable_states(s1)
print(f"\nreachable states: {len(states)}")
