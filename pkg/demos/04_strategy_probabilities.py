"""Counting favorable emphasis combinations, exactly.

A strategy row scores an emphasis vector by dot product; discretizing
emphasis to L levels makes "what fraction of combinations clears R" an
exact rational count. The dynamic program gives the same answer as brute
enumeration, and a zero payoff entry collapses its axis entirely.
"""

from fractions import Fraction

from wargrid import (
    RankingTable,
    effective_support,
    favorable_probability,
    favorable_probability_dp,
    rank_update,
)

row = [1.0, 2.0]
print(f"row {row}, three emphasis levels, target score >= 1.5")
p = favorable_probability(row, Fraction(3, 2), ">=", levels=3)
dp = favorable_probability_dp(row, Fraction(3, 2), ">=", levels=3)
print(f"  enumeration: {p} = {float(p):.4f}")
print(f"  dynamic program: {dp} (identical, exact rational arithmetic)")

print()
zero_row = [1.0, 0.0, 2.0, 0.0]
print(f"row {zero_row} has effective support {effective_support(zero_row)}")
full = favorable_probability(zero_row, 1.5, ">=", levels=3)
collapsed = favorable_probability(zero_row, 1.5, ">=", levels=3, axis_levels=[3, 1, 3, 1])
print(f"  full grid: {full}   zero axes collapsed: {collapsed} (same)")

print()
print("iterative refinement of payoff estimates re-ranks strategies:")
table = RankingTable.create(3)
observations = [(0, 2.0), (1, 5.0), (2, 1.0), (1, 4.0), (0, 6.0), (0, 7.0)]
for strategy, payoff in observations:
    table = rank_update(table, strategy, payoff, learning_rate=0.5)
    avgs = ", ".join(f"{a:.2f}" for a in table.averages)
    print(f"  played {strategy} payoff {payoff}: averages [{avgs}] ranks {table.ranks}")
