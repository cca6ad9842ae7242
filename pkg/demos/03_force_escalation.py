"""The force scalar driving patrol -> active search -> attack.

Stimuli raise the force, time decays it, thresholds switch the mode, and
attack freezes the decay until contact is lost long enough.
"""

from wargrid import ForceConfig, ForceState, Stimulus, StimulusKind, apply_stimulus, decay_tick, transition
from wargrid.force import note_contact_lost

state = ForceState(config=ForceConfig(t_active=40, t_passive=10, lost_contact_ticks=5))

timeline = {
    3: StimulusKind.RUSTLING,
    5: StimulusKind.FOOTSTEPS,
    8: StimulusKind.GUNSHOT,
    20: StimulusKind.VISUAL_CONTACT,
}
contact_until = 24  # visual contact holds for a few ticks, then the enemy slips away

print(f"{'tick':>4} {'stimulus':>14} {'force':>7} {'mode':>14} {'detected':>8}")
for t in range(1, 36):
    stim = timeline.get(t)
    if stim is not None:
        state = apply_stimulus(state, Stimulus(stim, (0, 0), t))
    if state.detected and not (stim is StimulusKind.VISUAL_CONTACT or t <= contact_until):
        state = note_contact_lost(state)
    state = decay_tick(state)
    state = transition(state)
    name = stim.value if stim else ""
    print(f"{t:>4} {name:>14} {state.force:>7.1f} {state.mode.value:>14} {str(state.detected):>8}")

print()
print("note the frozen force while in attack, and the drop back to active")
print("search (force pinned at the threshold) once contact stays lost")
