"""Exact values and optimal play for Dots & Boxes endgames of loops and long chains."""

from .measures import MeasureSet, controlled_value, measures, terminal_bonus
from .oracle import Oracle
from .position import (
    Component,
    ComponentNotPresentError,
    EmptyPositionError,
    EMPTY,
    NotationError,
    Position,
    chain,
    enumerate_positions,
    format_position,
    loop,
    parse,
)
from .strategy import (
    OpenerRationale,
    OpenerRule,
    Response,
    StandardMoveReason,
    controller_decision,
    endgame_outcome,
    opener_move,
    standard_move,
    value_exceeds_two,
    value_explicit,
    value_procedural,
)

__all__ = [
    "Component",
    "ComponentNotPresentError",
    "EMPTY",
    "EmptyPositionError",
    "MeasureSet",
    "NotationError",
    "OpenerRationale",
    "OpenerRule",
    "Oracle",
    "Position",
    "Response",
    "StandardMoveReason",
    "chain",
    "controlled_value",
    "controller_decision",
    "endgame_outcome",
    "enumerate_positions",
    "format_position",
    "loop",
    "measures",
    "opener_move",
    "parse",
    "standard_move",
    "terminal_bonus",
    "value_exceeds_two",
    "value_explicit",
    "value_procedural",
]
