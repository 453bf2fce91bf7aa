"""Goal-by-goal search and the polynomial solver for easy tasks.

Run:  python3 demos/fibs_and_easy.py
"""
import random

from mptplan import fixtures
from mptplan.compilation import compile_task
from mptplan.random_tasks import random_easy_task
from mptplan.search import SearchConfig, search, solve_easy_mpt
from mptplan.task import validate_plan

# x=on first, then y=on needs x off again: protecting x makes the first pass fail
task = fixtures.load("nonserializable")
r = search(compile_task(task), SearchConfig(engine="fibs"))
for p in r.info["passes"]:
    kind = "protected" if p["protected"] else "unprotected"
    print(f"{kind:12s} pass: {p['outcome']} after committing {p['goals_committed']} goal(s)")
print("plan:", [task.operators[o].name for o in r.plan])

# only the transport task meets the conditions of the easy-task solver
for name in fixtures.NAMES:
    result = solve_easy_mpt(fixtures.load(name))
    print(f"{name:16s} {'solved' if result.applicable else 'not applicable: ' + result.reason}")

rng = random.Random(0)
for i in range(5):
    t = random_easy_task(rng)
    result = solve_easy_mpt(t)
    print(f"random {i}: {len(t.variables)} vars, plan of {len(result.plan)} steps, "
          f"valid={validate_plan(t, result.plan).valid}, dtg searches={result.dtg_searches}, "
          f"backtracks={result.backtracks}")
