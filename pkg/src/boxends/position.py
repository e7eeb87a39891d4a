"""Abstract endgame positions: multisets of loops and long chains.

A position carries no board geometry.  It is just a bag of components,
each either a chain of three or more boxes or a loop of an even number
(at least four) of boxes.  Everything downstream (values, strategy, the
game engine) works on this abstraction.

Notation: chains are written as their length, loops get an ``l`` suffix,
components are joined with ``+`` and repeats may be collapsed with
``^``.  So ``3^5+4l+8l`` is five 3-chains, a 4-loop and an 8-loop, and
``0`` is the empty position.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator


class NotationError(ValueError):
    """A position string does not conform to the notation grammar."""


class ComponentNotPresentError(ValueError):
    """A component was removed from a position that does not contain it."""


class EmptyPositionError(ValueError):
    """An operation that needs at least one component got the empty position."""


@dataclass(frozen=True, order=True)
class Component:
    """One loop or chain, identified by kind and box count.

    Ordering sorts chains before loops and shorter before longer, which
    is the canonical display order.
    """

    loop: bool
    length: int

    def __post_init__(self) -> None:
        if self.loop:
            if self.length < 4 or self.length % 2:
                raise ValueError(f"loop length must be even and at least 4, got {self.length}")
        elif self.length < 3:
            raise ValueError(f"chain length must be at least 3, got {self.length}")

    @property
    def notation(self) -> str:
        return f"{self.length}l" if self.loop else str(self.length)

    def __str__(self) -> str:
        return self.notation


def chain(length: int) -> Component:
    return Component(False, length)


def loop(length: int) -> Component:
    return Component(True, length)


THREE_CHAIN = chain(3)
FOUR_LOOP = loop(4)
SIX_LOOP = loop(6)


@dataclass(frozen=True)
class Position:
    """An immutable multiset of components, stored in canonical order."""

    components: tuple[Component, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(sorted(self.components)))

    @classmethod
    def of(cls, *components: Component) -> "Position":
        return cls(tuple(components))

    @property
    def size(self) -> int:
        return sum(c.length for c in self.components)

    @property
    def is_empty(self) -> bool:
        return not self.components

    def __iter__(self) -> Iterator[Component]:
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __contains__(self, component: Component) -> bool:
        return component in self.components

    def __str__(self) -> str:
        return format_position(self)

    def distinct(self) -> tuple[Component, ...]:
        """The distinct components, in canonical order."""
        out: list[Component] = []
        for c in self.components:
            if not out or c != out[-1]:
                out.append(c)
        return tuple(out)

    def counts(self) -> tuple[tuple[Component, int], ...]:
        """(component, multiplicity) pairs in canonical order."""
        out: list[tuple[Component, int]] = []
        for c in self.components:
            if out and out[-1][0] == c:
                out[-1] = (c, out[-1][1] + 1)
            else:
                out.append((c, 1))
        return tuple(out)

    def count(self, component: Component) -> int:
        return self.components.count(component)

    def remove(self, component: Component) -> "Position":
        """The position with one occurrence of ``component`` taken out."""
        if component not in self.components:
            raise ComponentNotPresentError(f"{component} does not occur in {self}")
        i = self.components.index(component)
        return Position(self.components[:i] + self.components[i + 1 :])

    def add(self, component: Component) -> "Position":
        return Position(self.components + (component,))


EMPTY = Position()

_TERM = re.compile(r"^(\d+)(l?)(?:\^(\d+))?$")


def parse(text: str) -> Position:
    """Parse position notation.  Whitespace is ignored, case does not matter."""
    compact = "".join(text.split()).lower()
    if not compact:
        raise NotationError("empty notation (the empty position is written '0')")
    if compact == "0":
        return EMPTY
    comps: list[Component] = []
    for term in compact.split("+"):
        m = _TERM.match(term)
        if m is None:
            raise NotationError(f"malformed term {term!r}")
        length = int(m.group(1))
        reps = int(m.group(3)) if m.group(3) else 1
        if reps < 1:
            raise NotationError(f"repeat count must be positive in {term!r}")
        try:
            comp = Component(bool(m.group(2)), length)
        except ValueError as exc:
            raise NotationError(f"bad component {term!r}: {exc}") from None
        comps.extend([comp] * reps)
    return Position(tuple(comps))


def format_position(pos: Position) -> str:
    """Canonical notation: chains ascending, then loops ascending, runs collapsed."""
    if pos.is_empty:
        return "0"
    parts = []
    for comp, n in pos.counts():
        parts.append(comp.notation if n == 1 else f"{comp.notation}^{n}")
    return "+".join(parts)


def components_up_to(max_size: int) -> list[Component]:
    """Every legal component of length <= max_size, in canonical order."""
    chains = [chain(n) for n in range(3, max_size + 1)]
    loops = [loop(n) for n in range(4, max_size + 1, 2)]
    return chains + loops


def enumerate_positions(max_size: int) -> Iterator[Position]:
    """Yield every nonempty position of total size <= max_size exactly once.

    Order is deterministic: ascending total size, then canonical component
    tuple.  Components inside a position are generated in nondecreasing
    canonical order, so no multiset appears twice.
    """
    comps = components_up_to(max_size)

    def exact(target: int) -> list[Position]:
        found: list[Position] = []

        def rec(remaining: int, start: int, acc: tuple[Component, ...]) -> None:
            if remaining == 0:
                found.append(Position(acc))
                return
            for i in range(start, len(comps)):
                c = comps[i]
                if c.length <= remaining:
                    rec(remaining - c.length, i, acc + (c,))

        rec(target, 0, ())
        found.sort(key=lambda p: p.components)
        return found

    for target in range(3, max_size + 1):
        yield from exact(target)
