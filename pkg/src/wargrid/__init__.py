"""wargrid: deterministic grid-world combat sim with a behaviour-tree bot
driven by utility reasoners, plus strategy-matrix and tropical analysis."""

from .bt import (
    BehaviorNode,
    Blackboard,
    Diagnostic,
    NodeStatus,
    Registry,
    TickTrace,
    TreeState,
    action,
    condition,
    reasoner,
    reset,
    selector,
    sequence,
    tick,
    validate,
)
from .config import SimConfig, expand_script, parse_map
from .dsl import ParseError, ScenarioError, parse_scenario, parse_tree, serialize
from .force import (
    ForceConfig,
    ForceState,
    Mode,
    Stimulus,
    StimulusKind,
    apply_stimulus,
    decay_tick,
    note_contact_lost,
    transition,
)
from .polynomial import SymbolicPoly, parse_polynomial, poly_compose
from .strategy import (
    RankingTable,
    StrategyMatrix,
    effective_support,
    emphasis_grid,
    favorable_probability,
    favorable_probability_dp,
    quantize_row,
    rank_update,
    score,
)
from .tropical import (
    Box,
    Convention,
    TropicalPoly,
    argmax_term,
    extremum_over_box,
    extremum_over_box_fast,
    region_sample,
    trop_eval,
    tropicalize,
)
from .utility import (
    AgentVitals,
    UtilityWeights,
    aggression_input,
    binary_split,
    decay_utility,
    normalize,
    reload_utility,
)
from .world import EventLog, SummaryStats, World, run_match, run_scenario

__version__ = "0.1.0"
