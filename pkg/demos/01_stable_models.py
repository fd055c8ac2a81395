"""A tour of the ground-program evaluator.

Builds a few tiny programs by hand and walks through the reduct, least
models, answer sets and cautious entailment.  Run directly:

    python3 demos/01_stable_models.py
"""

from normplan import (Atom, GroundProgram, Literal, answer_sets,
                      cautious_entails, fact, least_model, reduct, rule)


def lit(name):
    return Literal(Atom(name.lstrip("-")), positive=not name.startswith("-"))


# ---------------------------------------------------------------------------
# 1. Facts and forward chaining.  A positive program has a unique least
#    model: everything derivable, nothing more.
program = GroundProgram.of([
    fact(lit("raining")),
    rule(lit("wet"), pos=[lit("raining")]),
])
print("least model:", sorted(str(l) for l in least_model(program.rules)))

# ---------------------------------------------------------------------------
# 2. Default negation introduces choice.  The classic even loop
#    {a <- not b, b <- not a} has two stable models.
even_loop = GroundProgram.of([
    rule(lit("a"), neg=[lit("b")]),
    rule(lit("b"), neg=[lit("a")]),
])
print("\neven loop program:")
print(even_loop.dumps())
for model in answer_sets(even_loop):
    print("stable model:", sorted(str(l) for l in model))

# The reduct explains why: guessing {a} deletes the rule for b and strips
# the negation from the rule for a, whose least model is {a} again.
print("reduct w.r.t. {a}:", [str(r) for r in reduct(even_loop, {lit("a")})])

# ---------------------------------------------------------------------------
# 3. Cautious entailment holds only for literals in *every* stable model,
#    so neither a nor b is entailed here.
print("\nentails a?", cautious_entails(even_loop, lit("a")))
print("entails b?", cautious_entails(even_loop, lit("b")))

# ---------------------------------------------------------------------------
# 4. Constraints prune models; classical negation can contradict.
constrained = GroundProgram.of([
    rule(lit("a"), neg=[lit("b")]),
    rule(lit("b"), neg=[lit("a")]),
    rule(None, pos=[lit("a")]),  # forbid a
])
print("\nwith ':- a' only one model survives:",
      [sorted(str(l) for l in m) for m in answer_sets(constrained)])

contradictory = GroundProgram.of([fact(lit("p")), fact(lit("-p"))])
print("complementary facts leave no model:", answer_sets(contradictory))
