from __future__ import annotations

import pytest
from hypothesis import given

from boxends.measures import controlled_value, measures
from boxends.oracle import Oracle
from boxends.position import EMPTY, EmptyPositionError, Position, chain, enumerate_positions, loop, parse
from boxends.strategy import (
    ContradictionError,
    OpenerRule,
    Response,
    StandardMoveReason,
    controller_decision,
    core,
    endgame_outcome,
    explicit_case,
    four_loop_step,
    opener_move,
    operator_trace,
    procedural_cases,
    six_loop_step,
    standard_move,
    three_chain_step,
    value_exceeds_two,
    value_explicit,
    value_procedural,
)

from test_position import positions


def test_standard_move_prefers_three_chain() -> None:
    assert standard_move(parse("3+5+8l")) == chain(3)
    assert standard_move(parse("4+6l+8l")) == loop(6)
    assert standard_move(parse("4+5")) == chain(4)
    with pytest.raises(EmptyPositionError):
        standard_move(EMPTY)


def test_opener_move_standard_cases() -> None:
    advice = opener_move(parse("3^5+4l+8l"))
    assert advice.chosen == chain(3)
    assert advice.rule is OpenerRule.STANDARD
    assert advice.standard_move_reason is StandardMoveReason.THREE_CHAIN

    advice = opener_move(parse("12+10l"))
    assert advice.chosen == loop(10)
    assert advice.standard_move_reason is StandardMoveReason.SHORTEST_LOOP

    advice = opener_move(parse("4+5"))
    assert advice.chosen == chain(4)
    assert advice.standard_move_reason is StandardMoveReason.SHORTEST_CHAIN


def test_opener_move_lone_three_with_loops() -> None:
    advice = opener_move(parse("3+8l+8l"))
    assert advice.chosen == loop(8)
    assert advice.rule is OpenerRule.LONE_THREE_WITH_LOOPS


def test_opener_move_four_loop_near_zero() -> None:
    advice = opener_move(parse("3+4l+8l"))
    assert advice.chosen == loop(4)
    assert advice.rule is OpenerRule.FOUR_LOOP_NEAR_ZERO


def test_opener_move_near_zero_exclusion() -> None:
    # The one near-balance shape with a 4-loop where the loop is wrong.
    advice = opener_move(parse("3^3+4l"))
    assert advice.chosen == chain(3)
    assert advice.rule is OpenerRule.STANDARD


def test_opener_move_four_loop_deficit() -> None:
    pos = parse("3+4l+6l^4")
    assert controlled_value(pos) == -7
    advice = opener_move(pos)
    assert advice.chosen == loop(4)
    assert advice.rule is OpenerRule.FOUR_LOOP_DEFICIT


def test_opener_move_is_always_optimal_small() -> None:
    oracle = Oracle()
    for pos in enumerate_positions(16):
        advice = opener_move(pos)
        assert oracle.value_given_open(pos, advice.chosen) == oracle.value(pos), str(pos)


def test_controller_decision_examples() -> None:
    assert controller_decision(parse("12"), loop(10)) is Response.KEEP
    assert controller_decision(parse("3"), chain(3)) is Response.KEEP
    assert controller_decision(parse("3^3"), chain(3)) is Response.GIVE_UP
    assert controller_decision(EMPTY, chain(12)) is Response.GIVE_UP
    assert controller_decision(parse("3+4l"), loop(8)) is Response.GIVE_UP


def test_value_exceeds_two_examples() -> None:
    assert value_exceeds_two(parse("12+10l"))
    assert value_exceeds_two(parse("3"))
    assert not value_exceeds_two(parse("3^3"))
    assert not value_exceeds_two(EMPTY)
    assert not value_exceeds_two(parse("3+4l"))


def test_value_exceeds_two_matches_oracle_small() -> None:
    oracle = Oracle()
    for pos in enumerate_positions(16):
        assert value_exceeds_two(pos) == (oracle.value(pos) > 2), str(pos)


def test_value_explicit_examples() -> None:
    assert value_explicit(parse("12+10l")) == 14
    assert value_explicit(parse("3^5+4l+8l")) == 1
    assert value_explicit(parse("4l+4+4+4+8l")) == 0
    assert value_explicit(parse("6l^4")) == 4
    assert value_explicit(parse("3+3+4l")) == 2  # the excluded near-balance shape
    with pytest.raises(EmptyPositionError):
        value_explicit(EMPTY)


def test_explicit_case_labels() -> None:
    assert explicit_case(parse("12+10l")) == "controlled"
    assert explicit_case(parse("4l+4+4+4+8l")) == "balanced_four_loop"
    assert explicit_case(parse("3+4l^2")) == "reduced_high"
    assert explicit_case(parse("3+4l+6l^2")) == "reduced_low_odd"
    assert explicit_case(parse("6l^5")) == "reduced_low_two"
    assert explicit_case(parse("6l^4")) == "reduced_low_zero"
    assert explicit_case(parse("3^3")) == "parity"


def test_core_examples() -> None:
    split = core(parse("3+4l+6l+12+8l"))
    assert split.core == parse("12+8l")
    assert split.theta_prime == 1
    assert split.four_loops_outside == 1
    assert split.six_loops_outside == 1

    # A lone 3-chain with no longer chain stays in the core.
    split = core(parse("3+6l+8l"))
    assert split.core == parse("3+8l")
    assert split.theta_prime == 0

    split = core(parse("4l^3+6l"))
    assert split.core == EMPTY
    assert split.theta_prime == 0

    with pytest.raises(ValueError):
        core(parse("3^2+8l"))


def test_core_controlled_value_floor() -> None:
    # Nonempty cores always sit comfortably above the operator fixed band.
    for pos in enumerate_positions(20):
        if measures(pos).theta <= 1:
            split = core(pos)
            if not split.core.is_empty:
                assert controlled_value(split.core) >= 3, str(pos)


def test_core_stable_under_reduction_extras() -> None:
    # The core is a fixed point: reducing it again changes nothing, and
    # putting back the stripped components one at a time never changes it.
    for pos in enumerate_positions(16):
        if measures(pos).theta > 1:
            continue
        split = core(pos)
        assert core(split.core).core == split.core, str(pos)
        extras = (
            [loop(6)] * split.six_loops_outside
            + [chain(3)] * split.theta_prime
            + [loop(4)] * split.four_loops_outside
        )
        partial = split.core
        for comp in extras:
            partial = partial.add(comp)
            assert core(partial).core == split.core, f"{pos} after adding {comp}"
        assert partial == pos


def test_operator_steps() -> None:
    assert six_loop_step(18) == 16
    assert six_loop_step(4) == 2
    assert six_loop_step(2) == 4
    assert six_loop_step(0) == 6
    assert three_chain_step(4) == 3
    assert four_loop_step(3) == 1
    assert four_loop_step(1) == 3
    assert four_loop_step(0) == 4
    assert four_loop_step(4) == 0


def test_operator_trace_large_position() -> None:
    pos = parse("8l^2+18+6l^9+3+4l^101")
    assert pos.size == 495
    trace = operator_trace(pos)
    assert trace.core == parse("18+8l^2")
    assert trace.core_value == 18
    assert trace.after_six_loops == 4
    assert trace.after_three_chain == 3
    assert trace.value == 1
    assert value_procedural(pos) == 1
    assert value_explicit(pos) == 1


def test_procedural_cases_overlap_and_agree() -> None:
    cases = procedural_cases(parse("12+10l"))
    assert cases["controlled"] == 14
    assert cases["operator_chain"] == 14
    assert value_procedural(parse("12+10l")) == 14

    cases = procedural_cases(parse("3+3+6l"))
    assert cases == {"controlled": 2}
    assert value_procedural(parse("3+3+6l")) == 2

    cases = procedural_cases(parse("3^3"))
    assert cases == {"parity": 1}
    with pytest.raises(EmptyPositionError):
        procedural_cases(EMPTY)


def test_procedural_contradiction_is_detected(monkeypatch) -> None:
    # Sanity-check the guard itself with a doctored case map.
    from boxends import strategy

    monkeypatch.setattr(strategy, "procedural_cases", lambda pos: {"a": 1, "b": 2})
    with pytest.raises(ContradictionError):
        strategy.value_procedural(parse("3"))


def test_closed_forms_match_oracle_small() -> None:
    oracle = Oracle()
    for pos in enumerate_positions(16):
        v = oracle.value(pos)
        assert value_explicit(pos) == v, str(pos)
        assert value_procedural(pos) == v, str(pos)


def test_endgame_outcome() -> None:
    assert endgame_outcome(2, parse("3+6l^2")) == -1
    assert endgame_outcome(15, parse("12+10l")) == 1
    assert endgame_outcome(0, EMPTY) == 0
    assert endgame_outcome(-2, parse("4l")) == -6


@given(positions)
def test_closed_forms_agree_everywhere(pos: Position) -> None:
    if pos.is_empty:
        return
    assert value_explicit(pos) == value_procedural(pos)
    assert value_exceeds_two(pos) == (value_explicit(pos) > 2)
