"""Every engine on every bundled task, with the search counters.

Run:  python3 demos/search_engines.py
"""
from mptplan import fixtures
from mptplan.compilation import compile_task
from mptplan.search import SearchConfig, search
from mptplan.task import validate_plan

configs = [
    SearchConfig(engine="gbfs", heuristic="cg", preferred="none"),
    SearchConfig(engine="gbfs", heuristic="cg", preferred="ht"),
    SearchConfig(engine="gbfs", heuristic="ff", preferred="ha"),
    SearchConfig(engine="mhbfs", heuristic="both", preferred="ht+ha"),
    SearchConfig(engine="fibs"),
    SearchConfig(engine="portfolio"),
]

for name in fixtures.NAMES:
    task = fixtures.load(name)
    compiled = compile_task(task)
    print(name)
    for cfg in configs:
        r = search(compiled, cfg)
        plan = compiled.to_original_plan(r.plan) if r.plan is not None else None
        ok = plan is not None and validate_plan(task, plan).valid
        s = r.stats
        print(f"  {cfg.label:28s} {r.outcome:12s} len={len(plan) if plan else '-':<3} valid={ok!s:5} "
              f"exp={s.expansions:<4} gen={s.generations:<4} evals={s.evaluations}")
        if "winner" in r.info:
            print(f"  {'':28s} won by {r.info['winner']}")

# a plan the grid task accepts
task = fixtures.load("grid1")
compiled = compile_task(task)
r = search(compiled, SearchConfig(engine="gbfs", heuristic="cg", preferred="ht"))
print()
for o in compiled.to_original_plan(r.plan):
    print(" ", task.operators[o].name)
