"""Turn-by-turn play of an endgame between two policies.

The engine enforces only the rules: the opener names a component, the
controller answers keep (decline the handout, stay controller) or give
up (take everything, become the opener).  Player 0 is always the player
who opened first; roles swap on every give up.  Margins are reported
from the initial controller's point of view, so optimal play from both
sides reproduces the position's value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Protocol

from .oracle import Oracle
from .position import Component, EmptyPositionError, Position, THREE_CHAIN
from .strategy import Response, controller_decision, opener_move, standard_move


class IllegalActionError(ValueError):
    """An action that the current state does not allow."""


@dataclass(frozen=True)
class Open:
    component: Component


@dataclass(frozen=True)
class Keep:
    pass


@dataclass(frozen=True)
class GiveUp:
    pass


Action = Open | Keep | GiveUp

KEEP = Keep()
GIVE_UP = GiveUp()

OPENER = "opener"
CONTROLLER = "controller"


@dataclass(frozen=True)
class TranscriptEntry:
    action: Action
    player: int
    role: str


@dataclass(frozen=True)
class GameState:
    remaining: Position
    pending: Component | None
    opener: int  # player index currently obliged to open
    boxes: tuple[int, int]
    prior_advantage: int
    transcript: tuple[TranscriptEntry, ...] = field(default=())

    @property
    def controller(self) -> int:
        return 1 - self.opener

    @property
    def terminal(self) -> bool:
        return self.pending is None and self.remaining.is_empty

    @property
    def to_act(self) -> str:
        """Role that must act next: the controller iff a component is pending."""
        return CONTROLLER if self.pending is not None else OPENER

    @property
    def margin(self) -> int:
        """Box difference from the initial controller's point of view."""
        return self.boxes[1] - self.boxes[0]

    @property
    def totals(self) -> tuple[int, int]:
        """Per-player totals with the prior advantage credited to player 0."""
        return (self.boxes[0] + self.prior_advantage, self.boxes[1])


def new_game(pos: Position, prior_advantage: int = 0) -> GameState:
    if pos.is_empty:
        raise EmptyPositionError("cannot start a game from the empty position")
    return GameState(pos, None, 0, (0, 0), prior_advantage)


def legal_actions(state: GameState) -> list[Action]:
    if state.terminal:
        raise IllegalActionError("the game is over")
    if state.pending is None:
        return [Open(c) for c in state.remaining.distinct()]
    return [KEEP, GIVE_UP]


def apply(state: GameState, action: Action) -> GameState:
    """The state after one action, validated against the rules."""
    if state.terminal:
        raise IllegalActionError("the game is over")
    if isinstance(action, Open):
        if state.pending is not None:
            raise IllegalActionError("the controller must respond before the next opening")
        if action.component not in state.remaining:
            raise IllegalActionError(f"{action.component} is not on the board")
        entry = TranscriptEntry(action, state.opener, OPENER)
        return GameState(
            state.remaining.remove(action.component),
            action.component,
            state.opener,
            state.boxes,
            state.prior_advantage,
            state.transcript + (entry,),
        )
    if state.pending is None:
        raise IllegalActionError("nothing is open to respond to")
    entry = TranscriptEntry(action, state.controller, CONTROLLER)
    boxes = list(state.boxes)
    if isinstance(action, Keep):
        handout = 4 if state.pending.loop else 2
        boxes[state.controller] += state.pending.length - handout
        boxes[state.opener] += handout
        opener = state.opener  # keeping control leaves the opener on the hook
    else:
        boxes[state.controller] += state.pending.length
        opener = state.controller  # taking everything obliges the next opening
    return GameState(
        state.remaining,
        None,
        opener,
        (boxes[0], boxes[1]),
        state.prior_advantage,
        state.transcript + (entry,),
    )


class Policy(Protocol):
    def choose_open(self, pos: Position) -> Component: ...

    def choose_response(self, remainder: Position, opened: Component) -> Response: ...


class ClosedFormPolicy:
    """Optimal play from the closed forms, for either seat."""

    def choose_open(self, pos: Position) -> Component:
        return opener_move(pos).chosen

    def choose_response(self, remainder: Position, opened: Component) -> Response:
        return controller_decision(remainder, opened)


class OraclePolicy:
    """Optimal play from the search oracle; ties break in canonical order."""

    def __init__(self, oracle: Oracle | None = None) -> None:
        self.oracle = oracle or Oracle()

    def choose_open(self, pos: Position) -> Component:
        return min(pos.distinct(), key=lambda c: (self.oracle.value_given_open(pos, c), c))

    def choose_response(self, remainder: Position, opened: Component) -> Response:
        v = self.oracle.value(remainder)
        handout = 4 if opened.loop else 2
        keep = (opened.length - 2 * handout) + v
        give = opened.length - v
        return Response.KEEP if keep > give else Response.GIVE_UP


class CommittedControlPolicy:
    """The publicly committed controller: keep until the last component,
    or until a loop is opened with only 3-chains left; after giving up,
    open 3-chains until control returns."""

    def choose_open(self, pos: Position) -> Component:
        if THREE_CHAIN in pos:
            return THREE_CHAIN
        return standard_move(pos)  # only reachable if misused as a plain opener

    def choose_response(self, remainder: Position, opened: Component) -> Response:
        if remainder.is_empty:
            return Response.GIVE_UP
        if opened.loop and all(c == THREE_CHAIN for c in remainder):
            return Response.GIVE_UP
        return Response.KEEP


class CommittedBestResponsePolicy:
    """The opener that exploits a committed controller as hard as possible.

    Openings minimize the committed controller's margin; the only response
    decisions this player ever faces against a committed controller are the
    3-chains the committed player reopens after surrendering control, and
    those mirror the same search.  Meaningless against other opponents.
    """

    def __init__(self, oracle: Oracle | None = None) -> None:
        self.oracle = oracle or Oracle()

    def choose_open(self, pos: Position) -> Component:
        return min(
            pos.distinct(),
            key=lambda c: (self.oracle.committed_response_margin(pos, c), c),
        )

    def choose_response(self, remainder: Position, opened: Component) -> Response:
        # Margins below are the committed player's; pick the smaller one.
        handout = 4 if opened.loop else 2
        give = -opened.length
        keep = 2 * handout - opened.length
        if not remainder.is_empty:
            give += self.oracle.committed_control_value(remainder)
            keep += self.oracle.committed_reopening_value(remainder)
        return Response.GIVE_UP if give <= keep else Response.KEEP


def playout(
    pos: Position,
    opener_policy: Policy,
    controller_policy: Policy,
    prior_advantage: int = 0,
) -> tuple[int, GameState]:
    """Play the endgame out and return (margin, final state).

    Policies are attached to players, not roles: ``opener_policy`` drives
    player 0, who opens first, and keeps driving it after any role swap.
    """
    state = new_game(pos, prior_advantage)
    policies = (opener_policy, controller_policy)
    while not state.terminal:
        if state.pending is None:
            component = policies[state.opener].choose_open(state.remaining)
            state = apply(state, Open(component))
        else:
            response = policies[state.controller].choose_response(state.remaining, state.pending)
            state = apply(state, KEEP if response is Response.KEEP else GIVE_UP)
    return state.margin, state
