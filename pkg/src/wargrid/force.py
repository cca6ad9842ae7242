"""Global escalation scalar ("force") and mode switching.

Intruder cues raise the force, time decays it, and crossing thresholds
moves the bot between patrol, active search, and attack. Attack freezes
the decay entirely; leaving attack requires losing contact for a
configured number of ticks.

State transitions are pure: each operation returns a new ForceState.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum


class StimulusKind(Enum):
    GUNSHOT = "gunshot"
    FOOTSTEPS = "footsteps"
    RUSTLING = "rustling"
    VISUAL_CONTACT = "visual_contact"


class Mode(Enum):
    PATROL = "patrol"
    ACTIVE_SEARCH = "active_search"
    ATTACK = "attack"


@dataclass(frozen=True)
class Stimulus:
    kind: StimulusKind
    position: tuple[int, int]
    tick: int


@dataclass(frozen=True)
class ForceConfig:
    """Gains, decay, and thresholds driving the force scalar.

    Setting t_passive equal to t_active recovers single-threshold
    switching; keeping it lower adds hysteresis so the mode does not
    flicker around the boundary.
    """

    gain_gunshot: float = 50.0
    gain_footsteps: float = 15.0
    gain_rustling: float = 8.0
    gain_visual: float = 50.0
    decay: float = 1.0
    decay_mode: str = "linear"  # "linear" or "exponential"
    decay_factor: float = 0.98  # per-tick multiplier in exponential mode
    t_active: float = 40.0
    t_passive: float = 10.0
    ceiling: float = 100.0
    lost_contact_ticks: int = 50

    def __post_init__(self) -> None:
        for name in ("gain_gunshot", "gain_footsteps", "gain_rustling", "gain_visual"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")
        if self.decay < 0:
            raise ValueError("decay must be nonnegative")
        if self.decay_mode not in ("linear", "exponential"):
            raise ValueError(f"unknown decay_mode {self.decay_mode!r}")
        if not 0.0 <= self.decay_factor <= 1.0:
            raise ValueError("decay_factor must be in [0, 1]")
        if self.t_active <= 0:
            raise ValueError("t_active must be positive")
        if self.t_passive < 0:
            raise ValueError("t_passive must be nonnegative")
        if self.t_passive > self.t_active:
            raise ValueError("t_passive must not exceed t_active")
        if self.ceiling <= 0:
            raise ValueError("ceiling must be positive")
        if self.lost_contact_ticks < 1:
            raise ValueError("lost_contact_ticks must be at least 1")

    def gain_for(self, kind: StimulusKind) -> float:
        return {
            StimulusKind.GUNSHOT: self.gain_gunshot,
            StimulusKind.FOOTSTEPS: self.gain_footsteps,
            StimulusKind.RUSTLING: self.gain_rustling,
            StimulusKind.VISUAL_CONTACT: self.gain_visual,
        }[kind]


@dataclass(frozen=True)
class ForceState:
    config: ForceConfig = ForceConfig()
    force: float = 0.0
    mode: Mode = Mode.PATROL
    detected: bool = False
    lost_ticks: int = 0


def apply_stimulus(state: ForceState, stimulus: Stimulus) -> ForceState:
    """Raise the force by the stimulus gain, clamped to the ceiling.

    Visual contact additionally sets the detected flag consumed by
    transition() and resets the lost-contact counter.
    """
    force = min(state.config.ceiling, state.force + state.config.gain_for(stimulus.kind))
    if stimulus.kind is StimulusKind.VISUAL_CONTACT:
        return replace(state, force=force, detected=True, lost_ticks=0)
    return replace(state, force=force)


def decay_tick(state: ForceState) -> ForceState:
    """One tick of decay; in attack mode the force is frozen."""
    if state.mode is Mode.ATTACK:
        return state
    if state.config.decay_mode == "linear":
        force = max(0.0, state.force - state.config.decay)
    else:
        force = state.force * state.config.decay_factor
    return replace(state, force=force)


def note_contact_lost(state: ForceState) -> ForceState:
    """Count one tick without visual contact; clears detection once the
    lost-contact budget is spent."""
    if not state.detected:
        return state
    lost = state.lost_ticks + 1
    if lost >= state.config.lost_contact_ticks:
        return replace(state, detected=False, lost_ticks=0)
    return replace(state, lost_ticks=lost)


def transition(state: ForceState) -> ForceState:
    """Apply the mode-switching rules for the current force and detection.

    Detection forces attack. Leaving attack (detection lost) drops to
    active search with the force pinned at t_active so the bot keeps
    searching. Otherwise patrol escalates at force >= t_active and active
    search relaxes below t_passive.
    """
    cfg = state.config
    if state.detected:
        if state.mode is not Mode.ATTACK:
            return replace(state, mode=Mode.ATTACK)
        return state
    if state.mode is Mode.ATTACK:
        return replace(state, mode=Mode.ACTIVE_SEARCH, force=cfg.t_active)
    if state.mode is Mode.PATROL and state.force >= cfg.t_active:
        return replace(state, mode=Mode.ACTIVE_SEARCH)
    if state.mode is Mode.ACTIVE_SEARCH and state.force < cfg.t_passive:
        return replace(state, mode=Mode.PATROL)
    return state
