"""Scalar measures of a position: component counts, terminal bonus, controlled value."""

from __future__ import annotations

from dataclasses import dataclass

from .position import Position


@dataclass(frozen=True)
class MeasureSet:
    size: int
    theta: int  # number of 3-chains
    f: int  # number of 4-loops
    s: int  # number of 6-loops
    num_chains: int
    num_loops: int
    tb: int
    c: int


def terminal_bonus(pos: Position) -> int:
    """Extra margin the controller banks from how the endgame must end.

    0 for the empty position, 8 when only loops remain, 6 when only loops
    and 3-chains remain (at least one of each), 4 in every other case.
    """
    if pos.is_empty:
        return 0
    num_chains = sum(1 for c in pos if not c.loop)
    if num_chains == 0:
        return 8
    num_loops = len(pos) - num_chains
    theta = sum(1 for c in pos if not c.loop and c.length == 3)
    if num_loops > 0 and theta == num_chains:
        return 6
    return 4


def measures(pos: Position) -> MeasureSet:
    size = 0
    theta = f = s = num_chains = num_loops = 0
    for comp in pos:
        size += comp.length
        if comp.loop:
            num_loops += 1
            if comp.length == 4:
                f += 1
            elif comp.length == 6:
                s += 1
        else:
            num_chains += 1
            if comp.length == 3:
                theta += 1
    tb = terminal_bonus(pos)
    c = size - 4 * num_chains - 8 * num_loops + tb
    # Cross-check against the per-component form: each chain is worth its
    # length minus 4 to the controller, each loop its length minus 8.
    assert c == (
        sum(comp.length - 4 for comp in pos if not comp.loop)
        + sum(comp.length - 8 for comp in pos if comp.loop)
        + tb
    )
    return MeasureSet(size, theta, f, s, num_chains, num_loops, tb, c)


def controlled_value(pos: Position) -> int:
    """Margin a player wins by after publicly committing to keep control."""
    return measures(pos).c
