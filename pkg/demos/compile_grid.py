"""Compile the grid task and look at what the compiler built.

Run:  python3 demos/compile_grid.py
"""
from mptplan import fixtures
from mptplan.compilation import compile_task
from mptplan.dot import export_dot

task = fixtures.load("grid1")
compiled = compile_task(task, prune=False)
names = [v.name for v in task.variables]

cg = compiled.causal_graph
print("causal graph arcs (weight = number of inducing transitions):")
for (a, b), w in sorted(cg.weights.items()):
    kept = "kept" if (a, b) in cg.pruned else "dropped"
    print(f"  {names[a]} -> {names[b]}  w={w}  {kept}")

# the full graph has one cycle through all three variables
print("full graph acyclic:", cg.is_acyclic())
print("pruned arcs:", sorted((names[a], names[b]) for a, b in cg.pruned))

door = names.index("d")
for t in compiled.dtgs[door].transitions:
    cond = ", ".join(task.fact_name(u, e) for u, e in t.condition)
    print(f"door {task.variables[door].domain[t.source]} -> {task.variables[door].domain[t.target]} needs {cond}")

print()
print(export_dot(compiled, "pruned-cg"))

# with derived variables: f is true when the robot is boxed into a corner by an open door
grid1f = fixtures.load("grid1f")
print(export_dot(compile_task(grid1f), "xdtg:f"))
