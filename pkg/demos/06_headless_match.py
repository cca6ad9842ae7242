"""A complete headless match, twice, to show replay determinism.

The scripted intruder makes noise, then approaches; the bot escalates
through its modes, decided tick by tick by the behaviour tree and the
utility reasoners. Same seed, same script: identical log digest.
"""

from wargrid import parse_scenario, run_scenario

SCENARIO = """\
map:
  ############
  #B....#....#
  #.....#....#
  #..C.....I.#
  #.....#....#
  #....C#....#
  ############
seed: 5
ticks: 160
waypoints: 1,1 4,1 4,5 1,5
script: wait*10 fire move_w*6 wait*40 fire wait*100
"""

config = parse_scenario(SCENARIO)
first = run_scenario(config)
second = run_scenario(config)

print("mode occupancy:", first.mode_occupancy)
print("actions taken: ", dict(sorted(first.actions.items())))
print("shots (bot/intruder):", first.shots.get("bot", 0), "/", first.shots.get("intruder", 0))
print("final bot health:", first.bot_health, " intruder health:", first.intruder_health)
print()
print("digest, run 1:", first.digest)
print("digest, run 2:", second.digest)
print("identical:", first.digest == second.digest)
