"""Ground-truth evaluation by memoized search over the keep/give recurrence.

Nothing here knows the closed forms.  The oracle recurses on the actual
game: the opener picks a component, the controller either keeps control
(all but two boxes of a chain, all but four of a loop) or gives it up
(takes everything and opens next).  Values are cached on the canonical
position, so a single instance amortizes across queries.
"""

from __future__ import annotations

from .position import Component, EmptyPositionError, Position, THREE_CHAIN


def _handout(component: Component) -> int:
    return 4 if component.loop else 2


class Oracle:
    """Memoized exact evaluator.

    Results depend only on the multiset of components, so the canonical
    position is the cache key.  Inserts are idempotent; sharing one
    instance across threads is safe because a stale read merely recomputes
    the same value.
    """

    def __init__(self) -> None:
        self._value: dict[Position, int] = {}
        self._lines: dict[Position, frozenset[tuple[Component, ...]]] = {}
        self._committed: dict[Position, int] = {}
        self._reopening: dict[Position, int] = {}

    def value(self, pos: Position) -> int:
        """Final margin for the controller under optimal play by both sides."""
        if pos.is_empty:
            return 0
        v = self._value.get(pos)
        if v is None:
            v = min(self.value_given_open(pos, c) for c in pos.distinct())
            self._value[pos] = v
        return v

    def value_given_open(self, pos: Position, component: Component) -> int:
        """Controller's margin when the opener opens ``component`` of ``pos``."""
        rest = pos.remove(component)
        h = _handout(component)
        return (component.length - h) + abs(self.value(rest) - h)

    def response_margins(self, pos: Position, component: Component) -> tuple[int, int]:
        """(keep, give up) margins for the controller once ``component`` is opened.

        Exposed separately so ties between the two replies stay visible;
        ``value_given_open`` is their maximum.
        """
        rest = pos.remove(component)
        v = self.value(rest)
        h = _handout(component)
        keep = (component.length - 2 * h) + v
        give = component.length - v
        return keep, give

    def optimal_openings(self, pos: Position) -> tuple[Component, ...]:
        """Distinct components whose opening achieves the position's value."""
        if pos.is_empty:
            raise EmptyPositionError("the empty position has nothing to open")
        v = self.value(pos)
        return tuple(c for c in pos.distinct() if self.value_given_open(pos, c) == v)

    def optimal_lines(self, pos: Position) -> frozenset[tuple[Component, ...]]:
        """Every opening order in which each opening is optimal at its turn."""
        if pos.is_empty:
            raise EmptyPositionError("the empty position has no lines of play")
        return self._optimal_lines(pos)

    def _optimal_lines(self, pos: Position) -> frozenset[tuple[Component, ...]]:
        if pos.is_empty:
            return frozenset({()})
        lines = self._lines.get(pos)
        if lines is None:
            lines = frozenset(
                (first,) + rest
                for first in self.optimal_openings(pos)
                for rest in self._optimal_lines(pos.remove(first))
            )
            self._lines[pos] = lines
        return lines

    def committed_control_value(self, pos: Position) -> int:
        """Margin for a player publicly committed to the control strategy.

        The committed player keeps control until the opponent opens the last
        component, or opens a loop when only 3-chains remain; then they take
        everything and, if any 3-chains are left, open them until control is
        regained.  The opponent plays a best response.  Computed by direct
        search, with no reference to the closed form.
        """
        if pos.is_empty:
            return 0
        d = self._committed.get(pos)
        if d is None:
            d = min(self._committed_response(pos, c) for c in pos.distinct())
            self._committed[pos] = d
        return d

    def committed_response_margin(self, pos: Position, component: Component) -> int:
        """Committed player's margin when the opponent opens ``component``."""
        return self._committed_response(pos, component)

    def committed_reopening_value(self, pos: Position) -> int:
        """Committed player's margin while reopening 3-chains after a give up.

        Only defined when ``pos`` consists of 3-chains, the one situation the
        control strategy can reach after surrendering control.
        """
        if pos.is_empty or any(c != THREE_CHAIN for c in pos):
            raise ValueError(f"reopening only happens among 3-chains, got {pos}")
        return self._reopening_value(pos)

    def _committed_response(self, pos: Position, component: Component) -> int:
        rest = pos.remove(component)
        if rest.is_empty:
            return component.length  # last component: take it all
        if component.loop and all(c == THREE_CHAIN for c in rest):
            return component.length + self._reopening_value(rest)
        h = _handout(component)
        return (component.length - 2 * h) + self.committed_control_value(rest)

    def _reopening_value(self, pos: Position) -> int:
        # The committed player gave up control and now opens 3-chains; the
        # opponent answers each one however suits it best.
        d = self._reopening.get(pos)
        if d is None:
            rest = pos.remove(THREE_CHAIN)
            if rest.is_empty:
                give = -3  # opponent takes the final chain
                keep = 1  # opponent declines two boxes, game ends
            else:
                give = -3 + self.committed_control_value(rest)
                keep = 1 + self._reopening_value(rest)
            d = min(give, keep)
            self._reopening[pos] = d
        return d
