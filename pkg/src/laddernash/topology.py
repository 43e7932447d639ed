"""Ladder and circular-ladder (prism) graphs with a fixed player indexing.

Players ``0..n-1`` form the top row left to right and ``n..2n-1`` the bottom
row left to right; rung ``i`` joins players ``i`` and ``n + i``.  Every other
module, and every text format, relies on this indexing.
"""

from __future__ import annotations

import enum
import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .errors import ParseError, TooSmall
from .game import Strategy, as_strategy


class GraphKind(str, enum.Enum):
    LADDER = "ladder"
    CIRCULAR = "circular"

    def __str__(self) -> str:
        return self.value


class EdgeClass(str, enum.Enum):
    RUNG = "rung"
    TOP_RAIL = "top_rail"
    BOTTOM_RAIL = "bottom_rail"


MIN_RUNGS = {GraphKind.LADDER: 2, GraphKind.CIRCULAR: 3}


@dataclass(frozen=True)
class LadderTopology:
    kind: GraphKind
    n: int
    adjacency: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int, EdgeClass], ...]

    @property
    def players(self) -> int:
        return 2 * self.n

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])

    def edge_class(self, u: int, v: int) -> EdgeClass:
        n = self.n
        if abs(u - v) == n:
            return EdgeClass.RUNG
        return EdgeClass.TOP_RAIL if u < n else EdgeClass.BOTTOM_RAIL

    def incident(self, i: int) -> list[tuple[int, EdgeClass]]:
        """Neighbours of ``i`` in (left, right, across) order with their edge class."""
        return [(j, self.edge_class(i, j)) for j in self.adjacency[i]]


def build(kind: GraphKind | str, n: int) -> LadderTopology:
    kind = GraphKind(kind)
    if n < MIN_RUNGS[kind]:
        raise TooSmall(f"{kind} needs n >= {MIN_RUNGS[kind]}, got n={n}")
    circular = kind is GraphKind.CIRCULAR
    adjacency = []
    for i in range(2 * n):
        row, col = divmod(i, n)
        base = row * n
        nbrs = []
        if col > 0 or circular:
            nbrs.append(base + (col - 1) % n)
        if col < n - 1 or circular:
            nbrs.append(base + (col + 1) % n)
        nbrs.append((1 - row) * n + col)
        adjacency.append(tuple(nbrs))

    edges = [(i, n + i, EdgeClass.RUNG) for i in range(n)]
    last = n if circular else n - 1
    for i in range(last):
        j = (i + 1) % n
        edges.append((i, j, EdgeClass.TOP_RAIL))
        edges.append((n + i, n + j, EdgeClass.BOTTOM_RAIL))
    return LadderTopology(kind, n, tuple(adjacency), tuple(edges))


def rung_blocks(n: int) -> tuple[int, bool]:
    """Split ``n`` rungs into ``k`` two-rung blocks plus an optional half block.

    ``2n = 4k`` for even ``n`` and ``2n = 4k + 2`` for odd ``n``.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    k, rem = divmod(n, 2)
    return k, bool(rem)


def rungs_for_blocks(k: int, half_block: bool = False) -> int:
    return 2 * k + int(half_block)


_PROFILE_RE = re.compile(r"[ab]*")


@dataclass(frozen=True)
class StrategyProfile:
    assignment: tuple[Strategy, ...]

    def __post_init__(self):
        cells = tuple(as_strategy(s) for s in self.assignment)
        if len(cells) % 2:
            raise ValueError("a profile needs an even number of players")
        object.__setattr__(self, "assignment", cells)

    @property
    def n(self) -> int:
        return len(self.assignment) // 2

    @property
    def top(self) -> tuple[Strategy, ...]:
        return self.assignment[: self.n]

    @property
    def bottom(self) -> tuple[Strategy, ...]:
        return self.assignment[self.n :]

    def column(self, i: int) -> tuple[Strategy, Strategy]:
        return self.assignment[i], self.assignment[self.n + i]

    @classmethod
    def from_columns(cls, columns: Iterable[tuple[Strategy, Strategy]]) -> StrategyProfile:
        cols = list(columns)
        return cls(tuple(c[0] for c in cols) + tuple(c[1] for c in cols))

    def swapped(self) -> StrategyProfile:
        """Exchange a and b everywhere."""
        return StrategyProfile(tuple(s.swap() for s in self.assignment))

    def rows_flipped(self) -> StrategyProfile:
        return StrategyProfile(self.bottom + self.top)

    def reversed(self) -> StrategyProfile:
        """Left-right mirror image."""
        return StrategyProfile(self.top[::-1] + self.bottom[::-1])

    def to_int(self) -> int:
        """Encode with player 0 as the most significant bit and b = 1.

        Integer order then equals lexicographic order of the text form.
        """
        value = 0
        for s in self.assignment:
            value = (value << 1) | (s is Strategy.B)
        return value

    @classmethod
    def from_int(cls, value: int, n: int) -> StrategyProfile:
        size = 2 * n
        return cls(
            tuple(
                Strategy.B if (value >> (size - 1 - i)) & 1 else Strategy.A
                for i in range(size)
            )
        )

    def __str__(self) -> str:
        return profile_to_string(self)


def profile_from_string(text: str) -> StrategyProfile:
    """Parse ``top|bottom``, e.g. ``"abaaba|babbab"``.

    Errors carry the UTF-8 byte offset of the offending position.
    """

    def fail(message: str, index: int) -> ParseError:
        return ParseError(message, len(text[:index].encode("utf-8")))

    bar = text.find("|")
    if bar < 0:
        raise fail("missing '|' separator", len(text))
    top, bottom = text[:bar], text[bar + 1 :]
    for offset, part in ((0, top), (bar + 1, bottom)):
        m = _PROFILE_RE.match(part)
        if m.end() != len(part):
            raise fail(f"unexpected character {part[m.end()]!r}", offset + m.end())
    if not top:
        raise fail("empty row", bar)
    if len(top) != len(bottom):
        raise fail(f"row lengths differ ({len(top)} vs {len(bottom)})", len(text))
    return StrategyProfile(tuple(top) + tuple(bottom))


def profile_to_string(profile: StrategyProfile) -> str:
    return "".join(s.value for s in profile.top) + "|" + "".join(
        s.value for s in profile.bottom
    )


def check_profile(t: LadderTopology, profile: StrategyProfile) -> None:
    if profile.n != t.n:
        raise ValueError(f"profile has {2 * profile.n} players, topology has {t.players}")


def degree_sequence(t: LadderTopology) -> Sequence[int]:
    return sorted(t.degree(i) for i in range(t.players))
