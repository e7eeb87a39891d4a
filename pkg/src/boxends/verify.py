"""Cross-checks between the closed forms, the search oracle, and the engine.

Each check walks a family of positions and records any disagreement as a
failure; an empty failure list is the pass condition.  Reports carry
per-case hit counters so a run can also show that no branch of the
closed forms went unexercised.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import engine
from .measures import controlled_value, measures, terminal_bonus
from .oracle import Oracle
from .position import (
    EMPTY,
    Position,
    chain,
    enumerate_positions,
    loop,
    parse,
)
from .strategy import (
    Response,
    controller_decision,
    explicit_case,
    opener_move,
    operator_trace,
    procedural_cases,
    value_exceeds_two,
    value_explicit,
    value_procedural,
)

DEFAULT_MAX_SIZE = 36


@dataclass(frozen=True)
class Failure:
    position: str
    check: str
    expected: str
    actual: str

    def to_dict(self) -> dict[str, str]:
        return {
            "position": self.position,
            "check": self.check,
            "expected": self.expected,
            "actual": self.actual,
        }


@dataclass
class VerifyReport:
    family: str
    positions_checked: int
    failures: list[Failure]
    elapsed: float
    case_counts: dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "positions_checked": self.positions_checked,
            "failures": [f.to_dict() for f in self.failures],
            "elapsed": self.elapsed,
            "case_counts": dict(sorted(self.case_counts.items())),
            "passed": self.passed,
        }

    def summary(self) -> str:
        verdict = "ok" if self.passed else f"{len(self.failures)} FAILURES"
        return (
            f"{self.family}: {self.positions_checked} positions, "
            f"{verdict}, {self.elapsed:.2f}s"
        )


def check_equivalence(max_size: int = DEFAULT_MAX_SIZE) -> VerifyReport:
    """Exhaustively compare every route to the value and the move choices.

    For each nonempty position up to ``max_size``: the explicit and
    procedural closed forms must equal the oracle value, the exceeds-two
    predicate must match it, the advised opening must be an argmin of the
    opened values, the controller decision must pick the larger response
    margin for every possible opening, and the committed-control search
    must land on the controlled value.
    """
    start = time.perf_counter()
    oracle = Oracle()
    failures: list[Failure] = []
    counts: dict[str, int] = {}

    def hit(key: str) -> None:
        counts[key] = counts.get(key, 0) + 1

    n = 0
    for pos in enumerate_positions(max_size):
        n += 1
        text = str(pos)
        v = oracle.value(pos)
        ve = value_explicit(pos)
        vp = value_procedural(pos)
        if not (v == ve == vp):
            failures.append(Failure(text, "value", str(v), f"explicit={ve} procedural={vp}"))
        if value_exceeds_two(pos) != (v > 2):
            failures.append(Failure(text, "exceeds_two", str(v > 2), str(value_exceeds_two(pos))))
        advice = opener_move(pos)
        if oracle.value_given_open(pos, advice.chosen) != v:
            failures.append(
                Failure(text, "opener_argmin", f"margin {v}", f"open {advice.chosen}")
            )
        hit(f"explicit:{explicit_case(pos)}")
        for case in procedural_cases(pos):
            hit(f"procedural:{case}")
        rule = f"opener:{advice.rule.value}"
        if advice.standard_move_reason is not None:
            rule += f":{advice.standard_move_reason.value}"
        hit(rule)
        for comp in pos.distinct():
            keep, give = oracle.response_margins(pos, comp)
            decision = controller_decision(pos.remove(comp), comp)
            achieved = keep if decision is Response.KEEP else give
            if achieved != max(keep, give):
                failures.append(
                    Failure(
                        text,
                        "controller_response",
                        f"open {comp}: max({keep}, {give})",
                        decision.value,
                    )
                )
        if oracle.committed_control_value(pos) != controlled_value(pos):
            failures.append(
                Failure(
                    text,
                    "committed_control",
                    str(controlled_value(pos)),
                    str(oracle.committed_control_value(pos)),
                )
            )
    return VerifyReport("equivalence", n, failures, time.perf_counter() - start, counts)


def check_invariants(max_size: int = DEFAULT_MAX_SIZE) -> VerifyReport:
    """Structural facts that hold for every position up to ``max_size``."""
    start = time.perf_counter()
    oracle = Oracle()
    failures: list[Failure] = []

    def expect(pos: Position, check: str, cond: bool, detail: str = "") -> None:
        if not cond:
            failures.append(Failure(str(pos), check, "true", detail or "false"))

    n = 0
    for pos in enumerate_positions(max_size):
        n += 1
        m = measures(pos)
        v = oracle.value(pos)
        expect(pos, "value_nonnegative", v >= 0, str(v))
        expect(pos, "controlled_at_most_value", m.c <= v, f"c={m.c} v={v}")
        expect(pos, "value_parity", v % 2 == m.size % 2, f"v={v}")
        expect(pos, "controlled_parity", m.c % 2 == m.size % 2, f"c={m.c}")
        expect(pos, "bonus_in_range", m.tb in (0, 4, 6, 8), str(m.tb))
        if m.c >= 2:
            expect(pos, "controlled_regime", v == m.c, f"c={m.c} v={v}")
        if m.theta == 0:
            expect(pos, "no_threes_mod4", (m.size - m.c) % 4 == 0, f"c={m.c}")
            if m.size % 2 == 0:
                expect(pos, "no_threes_value_mod4", (m.size - v) % 4 == 0, f"v={v}")
        for comp in pos.distinct():
            expect(
                pos,
                "opened_value_parity",
                oracle.value_given_open(pos, comp) % 2 == m.size % 2,
                f"open {comp}",
            )
            expect(
                pos,
                "bonus_after_removal",
                terminal_bonus(pos.remove(comp)) in (0, 4, 6, 8),
                f"open {comp}",
            )
    return VerifyReport("invariants", n, failures, time.perf_counter() - start)


def check_self_consistency(
    max_size: int = 200, count: int = 200, seed: int = 0
) -> VerifyReport:
    """Closed form against closed form on random large positions.

    The oracle cannot reach these sizes, so this family only demands that
    the explicit table and the procedural reduction agree with each other
    (and with the exceeds-two predicate).  Sampling is deterministic for a
    given seed.
    """
    start = time.perf_counter()
    rng = random.Random(seed)
    failures: list[Failure] = []
    for _ in range(count):
        pos = _random_position(rng, max_size)
        ve = value_explicit(pos)
        vp = value_procedural(pos)
        if ve != vp:
            failures.append(Failure(str(pos), "closed_forms", str(ve), str(vp)))
        if value_exceeds_two(pos) != (ve > 2):
            failures.append(Failure(str(pos), "exceeds_two", str(ve > 2), "mismatch"))
    return VerifyReport("self_consistency", count, failures, time.perf_counter() - start)


def _random_position(rng: random.Random, max_size: int) -> Position:
    target = rng.randint(3, max_size)
    comps = []
    budget = target
    while budget >= 3:
        if budget >= 4 and rng.random() < 0.5:
            length = rng.randrange(4, budget + 1, 2)
            comps.append(loop(length))
        else:
            comps.append(chain(rng.randint(3, budget)))
        budget = target - sum(c.length for c in comps)
        if comps and rng.random() < 0.2:
            break
    return Position(tuple(comps))


def check_worked_examples() -> VerifyReport:
    """Fixed positions with independently known values, moves and scores."""
    start = time.perf_counter()
    oracle = Oracle()
    failures: list[Failure] = []

    def expect(pos: str, check: str, expected: object, actual: object) -> None:
        if expected != actual:
            failures.append(Failure(pos, check, str(expected), str(actual)))

    checks: list[tuple[str, str, object, Callable[[], object]]] = [
        ("0", "terminal_bonus", 0, lambda: terminal_bonus(EMPTY)),
        ("4l+8l", "terminal_bonus", 8, lambda: terminal_bonus(parse("4l+8l"))),
        ("3+4l+8l", "terminal_bonus", 6, lambda: terminal_bonus(parse("3+4l+8l"))),
        ("3+4", "terminal_bonus", 4, lambda: terminal_bonus(parse("3+4"))),
        ("3^5+4l+8l", "controlled_value", -3, lambda: controlled_value(parse("3^5+4l+8l"))),
        ("0", "value", 0, lambda: oracle.value(EMPTY)),
        ("3+3", "value_given_open", 2, lambda: oracle.value_given_open(parse("3+3"), chain(3))),
        ("3+4l+8l", "value", 1, lambda: oracle.value(parse("3+4l+8l"))),
        (
            "3^n",
            "value_sequence",
            [0, 3, 2, 1, 2, 1, 2, 1],
            lambda: [oracle.value(Position.of(*[chain(3)] * k)) for k in range(8)],
        ),
        (
            "3^5+4l+8l",
            "optimal_openings",
            ("3",),
            lambda: tuple(str(c) for c in oracle.optimal_openings(parse("3^5+4l+8l"))),
        ),
        (
            "3^5+4l+8l",
            "optimal_lines",
            {
                ("3", "3", "4l", "3", "3", "8l", "3"),
                ("3", "4l", "3", "3", "3", "8l", "3"),
            },
            lambda: {
                tuple(str(c) for c in line)
                for line in oracle.optimal_lines(parse("3^5+4l+8l"))
            },
        ),
        (
            "3+4l+8l",
            "opener_move",
            "4l",
            lambda: str(opener_move(parse("3+4l+8l")).chosen),
        ),
        (
            "3^3+4l",
            "opener_move",
            "3",
            lambda: str(opener_move(parse("3^3+4l")).chosen),
        ),
        (
            "12+10l opened 10l",
            "controller_decision",
            Response.KEEP,
            lambda: controller_decision(parse("12"), loop(10)),
        ),
        (
            "3+3 opened 3",
            "controller_decision",
            Response.KEEP,
            lambda: controller_decision(parse("3"), chain(3)),
        ),
        (
            "3^4 opened 3",
            "controller_decision",
            Response.GIVE_UP,
            lambda: controller_decision(parse("3^3"), chain(3)),
        ),
        (
            "8l^2+18+6l^9+3+4l^101",
            "operator_trace",
            (18, 4, 3, 1),
            lambda: _trace_tuple(parse("8l^2+18+6l^9+3+4l^101")),
        ),
        (
            "8l^2+18+6l^9+3+4l^101",
            "value_explicit",
            1,
            lambda: value_explicit(parse("8l^2+18+6l^9+3+4l^101")),
        ),
        ("12+10l loop first", "final_totals", (7, 18), lambda: _figure_line(True)),
        ("12+10l chain first", "final_totals", (5, 20), lambda: _figure_line(False)),
    ]
    checks.extend(_table_checks(oracle))
    for pos_text, check, expected, compute in checks:
        try:
            actual = compute()
        except Exception as exc:  # a crash is a failure, not an abort
            actual = f"raised {type(exc).__name__}: {exc}"
        expect(pos_text, check, expected, actual)
    return VerifyReport(
        "worked_examples", len(checks), failures, time.perf_counter() - start
    )


def _trace_tuple(pos: Position) -> tuple[int, int, int, int]:
    t = operator_trace(pos)
    return (t.core_value, t.after_six_loops, t.after_three_chain, t.value)


def _figure_line(loop_first: bool) -> tuple[int, int]:
    # A 12-chain plus a 10-loop, with the opener three boxes ahead from the
    # earlier part of the game.
    state = engine.new_game(parse("12+10l"), prior_advantage=3)
    order = [loop(10), chain(12)] if loop_first else [chain(12), loop(10)]
    state = engine.apply(state, engine.Open(order[0]))
    state = engine.apply(state, engine.KEEP)
    state = engine.apply(state, engine.Open(order[1]))
    state = engine.apply(state, engine.GIVE_UP)
    return state.totals


def _table_checks(oracle: Oracle) -> list[tuple[str, str, object, Callable[[], object]]]:
    # Values for positions of three-chains and four-loops only, theta down
    # and f across.
    table = [
        [0, 4, 0, 4, 0, 4, 0],
        [3, 1, 3, 1, 3, 1, 3],
        [2, 2, 2, 2, 2, 2, 2],
        [1, 1, 1, 1, 1, 1, 1],
    ]
    out: list[tuple[str, str, object, Callable[[], object]]] = []
    for theta, row in enumerate(table):
        for f, expected in enumerate(row):
            pos = Position.of(*([chain(3)] * theta + [loop(4)] * f))
            out.append(
                (
                    str(pos),
                    "threes_and_four_loops",
                    expected,
                    (lambda p=pos: oracle.value(p)),
                )
            )
    return out


def check_engine(max_size: int = 20) -> VerifyReport:
    """Playout margins line up with the values they are supposed to realize.

    Optimal policies on both sides reproduce the value whichever mix of
    closed-form and oracle play is used.  A committed controller never
    falls below the controlled value, and the best-responding opener holds
    it to exactly that.
    """
    start = time.perf_counter()
    oracle = Oracle()
    closed = engine.ClosedFormPolicy()
    searched = engine.OraclePolicy(oracle)
    committed = engine.CommittedControlPolicy()
    exploiter = engine.CommittedBestResponsePolicy(oracle)
    failures: list[Failure] = []
    n = 0
    for pos in enumerate_positions(max_size):
        n += 1
        v = oracle.value(pos)
        c = controlled_value(pos)
        for opener_policy in (closed, searched):
            for controller_policy in (closed, searched):
                margin, _ = engine.playout(pos, opener_policy, controller_policy)
                if margin != v:
                    failures.append(
                        Failure(
                            str(pos),
                            "optimal_playout",
                            str(v),
                            f"{type(opener_policy).__name__} vs "
                            f"{type(controller_policy).__name__}: {margin}",
                        )
                    )
        margin, _ = engine.playout(pos, exploiter, committed)
        if margin != c:
            failures.append(Failure(str(pos), "committed_exact", str(c), str(margin)))
        margin, _ = engine.playout(pos, searched, committed)
        if margin < c:
            failures.append(Failure(str(pos), "committed_floor", f">= {c}", str(margin)))
    return VerifyReport("engine", n, failures, time.perf_counter() - start)


def run_all(max_size: int = DEFAULT_MAX_SIZE, seed: int = 0) -> list[VerifyReport]:
    return [
        check_worked_examples(),
        check_equivalence(max_size),
        check_invariants(max_size),
        check_engine(min(max_size, 20)),
        check_self_consistency(seed=seed),
    ]
