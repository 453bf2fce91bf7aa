"""Both heuristics on the grid task, state by state along a known plan.

Run:  python3 demos/heuristics_tour.py
"""
from mptplan import fixtures
from mptplan.compilation import compile_task
from mptplan.heuristics import CausalGraphHeuristic, FFHeuristic
from mptplan.task import apply

task = fixtures.load("grid1")
compiled = compile_task(task)
cg, ff = CausalGraphHeuristic(compiled), FFHeuristic(compiled)

plan = ["move-robot (1,1) (1,2)", "move-robot (1,2) (2,2)", "move-robot (2,2) (3,2)",
        "pickup-key (3,2)", "move-robot (3,2) (2,2)", "unlock-door",
        "move-robot (2,2) (2,1)", "drop-key (2,1)"]
by_name = {o.name: o for o in task.operators}


def show(s):
    return " ".join(task.fact_name(v, d) for v, d in enumerate(s))


s = task.initial
for step in [None] + plan:
    if step is not None:
        s = apply(task, s, by_name[step])
    h1, h2 = cg.evaluate(s), ff.evaluate(s)
    helpful = [task.operators[o].name for o in h1.preferred]
    print(f"{show(s):32s} cg={h1.value:<3} ff={h2.value:<3} helpful={helpful}")

# With the key in hand cg suggests (3,1): the door's conditions on the robot are
# pruned away, so going round by (3,1) looks exactly as cheap as going by (2,2).
print("\nrelaxed plan at the start:",
      [task.operators[o].name for o in ff.evaluate(task.initial).relaxed_plan])
