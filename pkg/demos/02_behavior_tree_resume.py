"""A behaviour tree that picks up where it left off.

A multi-tick action returns RUNNING, which leaves a bookmark; the next
tick descends straight to that leaf without re-evaluating anything to its
left. Watch the registry call log to see the guard fire exactly once.
"""

import random

from wargrid import Blackboard, NodeStatus, Registry, TickTrace, TreeState, tick
from wargrid.bt import action, condition, sequence

S, R = NodeStatus.SUCCESS, NodeStatus.RUNNING

registry = Registry()
registry.register_condition("area_clear", lambda bb: True)

breach_steps = [R, R, S]  # takes three ticks to finish
registry.register_action("breach_door", lambda bb: breach_steps.pop(0))
registry.register_action("sweep_room", lambda bb: S)

tree = sequence(condition("area_clear"), action("breach_door"), action("sweep_room"))
state = TreeState()
rng = random.Random(0)

for n in range(1, 4):
    trace = TickTrace()
    status = tick(tree, state, Blackboard(), rng, registry, trace)
    print(f"tick {n}: {status.value:8s} bookmark={state.bookmark} calls={trace.calls}")

print()
print("the guard ran once, on tick 1; ticks 2 and 3 resumed at the breach")
