"""Walk through the bot's utility curves.

The aggression input x folds threat, health, and ammunition into one
number. e^{-x} then splits two-way choices (cautious vs aggressive), and
the reload urgency e^{1/magazine} explodes as the magazine drains.
"""

from wargrid import AgentVitals, UtilityWeights, aggression_input, binary_split, normalize, reload_utility

weights = UtilityWeights(alpha=1.0, beta=1.0, gamma=1.0)

print("aggression input for a few situations")
print(f"{'threat':>7} {'health':>7} {'ammo':>6} {'x':>6} {'cautious':>9} {'aggressive':>11}")
for threat, health, ammo in [(0.0, 1.0, 1.0), (0.3, 1.0, 0.8), (0.8, 0.6, 0.5), (1.0, 0.2, 0.1)]:
    vitals = AgentVitals(threat=threat, health=health, ammo=ammo)
    x = aggression_input(vitals, weights)
    cautious, aggressive = binary_split(x)
    print(f"{threat:>7.2f} {health:>7.2f} {ammo:>6.2f} {x:>6.2f} {cautious:>9.4f} {aggressive:>11.4f}")

print()
print("reload urgency against the other cover options as the magazine drains")
print(f"{'magazine':>9} {'reload':>12} {'P(reload)':>10}")
for magazine in [1.0, 0.8, 0.6, 0.4, 0.2, 0.1, 0.0]:
    reload_score = reload_utility(magazine, cap=1e6)
    others = [0.7, 0.4, 0.3]  # peek, blind fire, relocate at a fixed situation
    p = normalize([reload_score] + others)[0]
    print(f"{magazine:>9.2f} {reload_score:>12.4g} {p:>10.4f}")

print()
print("the empty magazine hits the cap, so reload dominates but stays finite")
