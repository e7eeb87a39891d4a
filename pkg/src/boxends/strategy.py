"""Closed-form values and optimal play, no search involved.

Two independent closed forms for the game value live here: an explicit
case table (``value_explicit``) and a procedural reduction that strips a
position down to its core and replays the removed components as integer
operators (``value_procedural``).  They must always agree, with each
other and with the search oracle; the verify module checks that
exhaustively.

Move selection is also closed form.  The opener's standard move is the
3-chain if there is one, else the shortest loop, else the shortest
chain; three exceptional shapes make the shortest loop optimal instead.
The controller keeps control exactly when the remainder is worth enough
to pay for the declined boxes.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .measures import MeasureSet, controlled_value, measures
from .position import (
    Component,
    EmptyPositionError,
    Position,
    THREE_CHAIN,
    chain,
    loop,
)


class ContradictionError(RuntimeError):
    """Two closed-form cases that both apply disagreed; an implementation bug."""


class OpenerRule(str, Enum):
    """Which rule picked the opener's move."""

    LONE_THREE_WITH_LOOPS = "lone_three_with_loops"
    FOUR_LOOP_NEAR_ZERO = "four_loop_near_zero"
    FOUR_LOOP_DEFICIT = "four_loop_deficit"
    STANDARD = "standard_move"


class StandardMoveReason(str, Enum):
    THREE_CHAIN = "three_chain"
    SHORTEST_LOOP = "shortest_loop"
    SHORTEST_CHAIN = "shortest_chain"


class Response(str, Enum):
    KEEP = "keep"
    GIVE_UP = "give_up"


@dataclass(frozen=True)
class OpenerRationale:
    chosen: Component
    rule: OpenerRule
    standard_move_reason: StandardMoveReason | None = None


@dataclass(frozen=True)
class CoreSplit:
    """A position split into its core and the components stripped from it."""

    core: Position
    theta_prime: int  # 3-chains outside the core, 0 or 1
    four_loops_outside: int
    six_loops_outside: int


@dataclass(frozen=True)
class OperatorTrace:
    """Checkpoints of the procedural reduction, for inspection and tests."""

    core: Position
    core_value: int
    after_six_loops: int
    after_three_chain: int
    value: int


# The two shapes that get special-cased below: a 4-loop with exactly
# three 3-chains (no loop exception applies) and with exactly two
# (the zero-value shortcut does not apply).
_FOUR_LOOP_THREE_THREES = Position.of(loop(4), chain(3), chain(3), chain(3))
_FOUR_LOOP_TWO_THREES = Position.of(loop(4), chain(3), chain(3))


def _standard(pos: Position) -> tuple[Component, StandardMoveReason]:
    if THREE_CHAIN in pos:
        return THREE_CHAIN, StandardMoveReason.THREE_CHAIN
    loops = [c for c in pos if c.loop]
    if loops:
        return min(loops), StandardMoveReason.SHORTEST_LOOP
    return min(pos.components), StandardMoveReason.SHORTEST_CHAIN


def standard_move(pos: Position) -> Component:
    """3-chain if present, else shortest loop, else shortest chain."""
    if pos.is_empty:
        raise EmptyPositionError("no move in the empty position")
    return _standard(pos)[0]


def opener_move(pos: Position) -> OpenerRationale:
    """An optimal opening together with the rule that selected it.

    The standard move is optimal except in three shapes, all of which open
    the shortest loop instead: a lone 3-chain among loops when the
    controlled value is at least 2; a 4-loop present when the controlled
    value is -1, 0 or 1 (unless the rest is exactly three 3-chains); and a
    4-loop plus a lone 3-chain over a multiple-of-four remainder when the
    controlled value is at most -2.
    """
    if pos.is_empty:
        raise EmptyPositionError("no move in the empty position")
    m = measures(pos)
    shortest_loop = min((c for c in pos if c.loop), default=None)
    if shortest_loop is not None:
        if m.c >= 2 and m.num_chains == 1 and m.theta == 1:
            return OpenerRationale(shortest_loop, OpenerRule.LONE_THREE_WITH_LOOPS)
        if m.c in (-1, 0, 1) and m.f >= 1 and pos != _FOUR_LOOP_THREE_THREES:
            return OpenerRationale(shortest_loop, OpenerRule.FOUR_LOOP_NEAR_ZERO)
        if m.c <= -2 and m.f >= 1 and m.theta == 1 and (m.size - 7) % 4 == 0:
            return OpenerRationale(shortest_loop, OpenerRule.FOUR_LOOP_DEFICIT)
    comp, reason = _standard(pos)
    return OpenerRationale(comp, OpenerRule.STANDARD, reason)


def controller_decision(remainder: Position, opened: Component) -> Response:
    """Keep or give up control once ``opened`` is on the table.

    ``remainder`` is the position with ``opened`` already removed.  Keeping
    declines four boxes of a loop, worth it only if the remainder pays more
    than 4 under committed control, or two boxes of a chain, worth it only
    if the remainder's value exceeds 2.
    """
    if opened.loop:
        keep = controlled_value(remainder) > 4
    else:
        keep = value_exceeds_two(remainder)
    return Response.KEEP if keep else Response.GIVE_UP


def _reduced_shape(m: MeasureSet) -> bool:
    # Shapes whose value survives the core reduction: no 3-chains, or a
    # single 3-chain with total size 3 mod 4.
    return m.theta == 0 or (m.theta == 1 and m.size % 4 == 3)


def value_exceeds_two(pos: Position) -> bool:
    """Whether the position's value is strictly greater than 2."""
    if pos.is_empty:
        return False
    m = measures(pos)
    if m.c > 2:
        return True
    shape = (m.theta == 1 and m.size % 4 == 3) or (m.theta == 0 and m.size % 4 != 2)
    if not shape:
        return False
    t = m.c + 4 * m.f
    if t > 2:
        return m.c % 8 in (3, 4, 5)
    if t < 2:
        return m.f % 2 == 0
    return False


# Value by residue of the controlled value mod 8, in the regime where the
# 4-loop operator is applied to a start above its fixed band.
_RESIDUE_VALUE = {0: 0, 1: 1, 2: 2, 3: 3, 4: 4, 5: 3, 6: 2, 7: 1}


def _explicit(pos: Position) -> tuple[int, str]:
    if pos.is_empty:
        raise EmptyPositionError("the empty position has no explicit case")
    m = measures(pos)
    if m.c >= 2:
        return m.c, "controlled"
    if m.c == 0 and m.f >= 1 and pos != _FOUR_LOOP_TWO_THREES:
        return 0, "balanced_four_loop"
    if _reduced_shape(m):
        if m.c + 4 * m.f >= 2:
            return _RESIDUE_VALUE[m.c % 8], "reduced_high"
        if m.size % 2:
            return (1 if m.f % 2 else 3), "reduced_low_odd"
        if m.size % 4 == 2:
            return 2, "reduced_low_two"
        return (0 if m.f % 2 else 4), "reduced_low_zero"
    return (1 if m.size % 2 else 2), "parity"


def value_explicit(pos: Position) -> int:
    """The game value, from the explicit case table.  Cases are tried in order."""
    return _explicit(pos)[0]


def explicit_case(pos: Position) -> str:
    """Label of the first explicit case that applies (for coverage reporting)."""
    return _explicit(pos)[1]


def core(pos: Position) -> CoreSplit:
    """Strip 4-loops, 6-loops and a stray 3-chain down to the core.

    The core keeps every loop of length 8 or more and, if the position has
    any chain of length 4 or more, all such chains (a lone 3-chain then
    stays outside); a 3-chain that is the only chain stays in the core.
    Requires at most one 3-chain.
    """
    m = measures(pos)
    if m.theta > 1:
        raise ValueError(f"core is only defined with at most one 3-chain, got {m.theta}")
    kept: list[Component] = []
    theta_prime = 0
    for comp in pos:
        if comp.loop:
            if comp.length >= 8:
                kept.append(comp)
        elif comp.length >= 4:
            kept.append(comp)
    if m.theta == 1:
        if m.num_chains == 1:
            kept.append(THREE_CHAIN)
        else:
            theta_prime = 1
    return CoreSplit(Position(tuple(kept)), theta_prime, m.f, m.s)


def six_loop_step(x: int) -> int:
    """Value after adding a 6-loop."""
    return abs(x - 4) + 2


def three_chain_step(x: int) -> int:
    """Value after adding the lone 3-chain."""
    return x - 1


def four_loop_step(x: int) -> int:
    """Value after adding a 4-loop."""
    return abs(x - 4)


def operator_trace(pos: Position) -> OperatorTrace:
    """Run the core reduction and replay the stripped components in order.

    Start from the controlled value of the core, then apply one step per
    6-loop, per stray 3-chain, per 4-loop, in that order.  Only valid for
    positions in the reduced shape (at most one 3-chain, and if one, total
    size 3 mod 4).
    """
    split = core(pos)
    x = controlled_value(split.core)
    start = x
    for _ in range(split.six_loops_outside):
        x = six_loop_step(x)
    after_six = x
    for _ in range(split.theta_prime):
        x = three_chain_step(x)
    after_three = x
    for _ in range(split.four_loops_outside):
        x = four_loop_step(x)
    return OperatorTrace(split.core, start, after_six, after_three, x)


def procedural_cases(pos: Position) -> dict[str, int]:
    """Every procedural case that applies, with the value each one yields.

    The cases overlap; whenever several apply they must agree.  When none
    does, the fallback decides by parity.
    """
    if pos.is_empty:
        raise EmptyPositionError("the empty position has no procedural case")
    m = measures(pos)
    results: dict[str, int] = {}
    if m.c >= 2:
        results["controlled"] = m.c
    if m.c == 0 and m.f >= 1 and pos != _FOUR_LOOP_TWO_THREES:
        results["balanced_four_loop"] = 0
    if _reduced_shape(m):
        results["operator_chain"] = operator_trace(pos).value
    if not results:
        results["parity"] = 1 if m.size % 2 else 2
    return results


def value_procedural(pos: Position) -> int:
    """The game value, from the overlapping procedural cases."""
    cases = procedural_cases(pos)
    values = set(cases.values())
    if len(values) > 1:
        raise ContradictionError(f"procedural cases disagree on {pos}: {cases}")
    return values.pop()


def endgame_outcome(advantage: int, pos: Position) -> int:
    """Overall margin for the player ``advantage`` boxes ahead who must open.

    Positive means that player still wins the whole game, negative that
    opening the endgame costs them the lead.
    """
    v = 0 if pos.is_empty else value_explicit(pos)
    return advantage - v
