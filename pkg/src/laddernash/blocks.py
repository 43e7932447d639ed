"""Block decomposition and transfer-matrix counting.

An equilibrium on a ladder is cut into 2x2 blocks (two consecutive rungs).
For each of the two base regimes there is a small alphabet of blocks and a
sticking relation saying which block may sit immediately to the left of
which.  Valid equilibria are then walks in the block graph with restricted
first and last blocks, so counts are entries of integer matrix powers, and
circular ladders are closed walks, counted by the trace.

Case 1 is the MINORITY_A regime and case 2 the LONE_A regime; the two
mirrored regimes reuse these systems through the a<->b swap.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .errors import InvalidChain, SizeLimit, TooSmall, UnsupportedParity
from .game import Regime, Strategy
from .topology import GraphKind, StrategyProfile, rung_blocks

A, B = Strategy.A, Strategy.B

DEFAULT_CHAIN_LIMIT = 200_000

Matrix = tuple[tuple[int, ...], ...]


class Case(enum.IntEnum):
    CASE1 = 1  # MINORITY_A
    CASE2 = 2  # LONE_A

    @classmethod
    def for_regime(cls, regime: Regime) -> tuple[Case, bool]:
        """Base case for ``regime`` and whether profiles must be a<->b swapped."""
        return cls(regime.case), regime.is_mirrored

    @property
    def regime(self) -> Regime:
        return Regime.MINORITY_A if self is Case.CASE1 else Regime.LONE_A


@dataclass(frozen=True)
class Block:
    id: int
    top: tuple[Strategy, Strategy]
    bottom: tuple[Strategy, Strategy]

    @property
    def columns(self) -> tuple[tuple[Strategy, Strategy], tuple[Strategy, Strategy]]:
        return (self.top[0], self.bottom[0]), (self.top[1], self.bottom[1])


@dataclass(frozen=True)
class SpecialSolution:
    """A fixed whole-graph equilibrium outside the counted block alphabet.

    Its columns alternate between two uniform columns, starting with
    ``first`` on both rows.
    """

    label: str
    kind: GraphKind
    first: Strategy

    def applies(self, n: int) -> bool:
        _, odd = rung_blocks(n)
        return odd if self.kind is GraphKind.LADDER else not odd

    def profile(self, n: int) -> StrategyProfile:
        cols = []
        s = self.first
        for _ in range(n):
            cols.append((s, s))
            s = s.swap()
        return StrategyProfile.from_columns(cols)

    def chain_text(self, n: int) -> str:
        k, odd = rung_blocks(n)
        text = "4" * k
        if self.kind is GraphKind.LADDER and odd:
            text += "+S"
        if self.first is A:
            text += "+X"
        return text


@dataclass(frozen=True)
class BlockSystem:
    case: Case
    blocks: tuple[Block, ...]
    left_adjacency: Matrix  # [i][j] == 1 iff block i may precede block j
    start_allowed: frozenset[int]
    end_allowed_even_n: frozenset[int]
    end_allowed_odd_n: frozenset[int] | None
    special_ids: frozenset[int] = frozenset()
    specials: tuple[SpecialSolution, ...] = field(default=())

    @property
    def counted_ids(self) -> tuple[int, ...]:
        """Blocks that take part in transfer-matrix counting."""
        return tuple(b.id for b in self.blocks if b.id not in self.special_ids)

    def block(self, i: int) -> Block:
        return self.blocks[i]

    def successors(self, i: int) -> list[int]:
        return [j for j, ok in enumerate(self.left_adjacency[i]) if ok]

    def predecessors(self, j: int) -> list[int]:
        return [i for i, row in enumerate(self.left_adjacency) if row[j]]

    def transfer_matrix(self) -> Matrix:
        ids = self.counted_ids
        return tuple(tuple(self.left_adjacency[i][j] for j in ids) for i in ids)

    def ladder_policy(self, n: int) -> tuple[frozenset[int], frozenset[int]]:
        _, odd = rung_blocks(n)
        if not odd:
            return self.start_allowed, self.end_allowed_even_n
        if self.end_allowed_odd_n is None:
            raise UnsupportedParity(f"case {int(self.case)} has no rules for odd n (n={n})")
        return self.start_allowed, self.end_allowed_odd_n

    def ladder_specials(self, n: int) -> list[SpecialSolution]:
        return [s for s in self.specials if s.kind is GraphKind.LADDER and s.applies(n)]

    def circular_specials(self, n: int) -> list[SpecialSolution]:
        return [s for s in self.specials if s.kind is GraphKind.CIRCULAR and s.applies(n)]


def _block(i: int, top: str, bottom: str) -> Block:
    return Block(i, (Strategy(top[0]), Strategy(top[1])), (Strategy(bottom[0]), Strategy(bottom[1])))


def _adjacency(size: int, predecessors: dict[int, Iterable[int]]) -> Matrix:
    rows = [[0] * size for _ in range(size)]
    for j, preds in predecessors.items():
        for i in preds:
            rows[i][j] = 1
    return tuple(tuple(r) for r in rows)


_CASE1 = BlockSystem(
    case=Case.CASE1,
    blocks=(
        _block(0, "ab", "ba"),
        _block(1, "ba", "ab"),
        _block(2, "aa", "bb"),
        _block(3, "bb", "aa"),
        _block(4, "ba", "ba"),
    ),
    left_adjacency=_adjacency(
        5, {0: (0, 1, 3), 1: (0, 1, 2), 2: (0, 3), 3: (1, 2), 4: (4,)}
    ),
    start_allowed=frozenset({0, 1}),
    end_allowed_even_n=frozenset({0, 1}),
    end_allowed_odd_n=frozenset({0, 1, 2, 3}),
    special_ids=frozenset({4}),
    specials=(
        SpecialSolution("block-4 chain", GraphKind.LADDER, B),
        SpecialSolution("block-4 cycle", GraphKind.CIRCULAR, B),
        SpecialSolution("swapped block-4 cycle", GraphKind.CIRCULAR, A),
    ),
)

_CASE2 = BlockSystem(
    case=Case.CASE2,
    blocks=(
        _block(0, "ab", "ba"),
        _block(1, "ab", "bb"),
        _block(2, "ba", "ab"),
        _block(3, "bb", "ab"),
        _block(4, "ba", "bb"),
        _block(5, "bb", "ba"),
    ),
    left_adjacency=_adjacency(
        6,
        {0: (0, 3, 5), 1: (0, 3, 5), 2: (1, 2, 4), 3: (1, 2, 4), 4: (0, 5), 5: (2, 4)},
    ),
    start_allowed=frozenset({0, 1, 2, 3}),
    end_allowed_even_n=frozenset({0, 2, 4, 5}),
    end_allowed_odd_n=None,
)


def block_system(case: Case | int) -> BlockSystem:
    return _CASE1 if Case(case) is Case.CASE1 else _CASE2


# -- exact integer linear algebra -------------------------------------------


def _matmul(x: Matrix, y: Matrix) -> Matrix:
    cols = list(zip(*y))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in x)


def _identity(size: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(size)) for i in range(size))


def matrix_power(m: Matrix, e: int) -> Matrix:
    if e < 0:
        raise ValueError("negative exponent")
    result = _identity(len(m))
    base = m
    while e:
        if e & 1:
            result = _matmul(result, base)
        base = _matmul(base, base)
        e >>= 1
    return result


def _positions(sys: BlockSystem, ids: Iterable[int] | None) -> list[int]:
    counted = sys.counted_ids
    if ids is None:
        return list(range(len(counted)))
    wanted = set(ids)
    unknown = wanted - set(b.id for b in sys.blocks)
    if unknown:
        raise ValueError(f"unknown block ids {sorted(unknown)}")
    return [pos for pos, bid in enumerate(counted) if bid in wanted]


# -- counting ---------------------------------------------------------------


def chain_count(
    sys: BlockSystem,
    k: int,
    start_policy: Iterable[int] | None = None,
    end_policy: Iterable[int] | None = None,
) -> int:
    """Number of length-``k`` chains of counted blocks with the given ends.

    ``None`` for a policy means any counted block.
    """
    if k < 1:
        raise ValueError(f"chain length must be >= 1, got {k}")
    power = matrix_power(sys.transfer_matrix(), k - 1)
    starts, ends = _positions(sys, start_policy), _positions(sys, end_policy)
    return sum(power[i][j] for i in starts for j in ends)


def chain_count_sequence(
    sys: BlockSystem,
    k_max: int,
    start_policy: Iterable[int] | None = None,
    end_policy: Iterable[int] | None = None,
) -> list[int]:
    """``[chain_count(sys, k, ...) for k in 1..k_max]`` in one pass."""
    m = sys.transfer_matrix()
    size = len(m)
    starts, ends = _positions(sys, start_policy), set(_positions(sys, end_policy))
    row = [int(i in starts) for i in range(size)]
    out = []
    for _ in range(k_max):
        out.append(sum(row[j] for j in ends))
        row = [sum(row[i] * m[i][j] for i in range(size)) for j in range(size)]
    return out


def ladder_count_blocks(case: Case | int, n: int) -> int:
    sys = block_system(case)
    if n < 2:
        raise TooSmall(f"ladder needs n >= 2, got n={n}")
    k, _ = rung_blocks(n)
    start, end = sys.ladder_policy(n)
    return chain_count(sys, k, start, end) + len(sys.ladder_specials(n))


def circular_count_blocks(case: Case | int, k: int) -> int:
    """Equilibria on the circular ladder with ``n = 2k`` rungs.

    Closed walks of length ``k`` in the block graph (a chain is valid when its
    last block may precede its first), plus the fixed special cycles.
    """
    if k < 2:
        raise TooSmall(f"circular ladder needs k >= 2 blocks, got k={k}")
    sys = block_system(case)
    power = matrix_power(sys.transfer_matrix(), k)
    trace = sum(power[i][i] for i in range(len(power)))
    return trace + len(sys.circular_specials(2 * k))


@dataclass(frozen=True)
class ChainCounts:
    """Exact pair counts for unrestricted length-``k`` chains.

    ``pairs[j][m]`` is the number of chains starting with block ``ids[j]`` and
    ending with block ``ids[m]``.
    """

    k: int
    ids: tuple[int, ...]
    pairs: Matrix

    def pair(self, start: int, end: int) -> int:
        return self.pairs[self.ids.index(start)][self.ids.index(end)]

    def starting(self, j: int) -> int:
        return sum(self.pairs[self.ids.index(j)])

    def ending(self, j: int) -> int:
        col = self.ids.index(j)
        return sum(row[col] for row in self.pairs)

    @property
    def total(self) -> int:
        return sum(map(sum, self.pairs))


def pair_counts(sys: BlockSystem, k: int) -> ChainCounts:
    if k < 1:
        raise ValueError(f"chain length must be >= 1, got {k}")
    return ChainCounts(k, sys.counted_ids, matrix_power(sys.transfer_matrix(), k - 1))


def recurrence_check(sequence: Sequence[int]) -> bool:
    """True iff every consecutive triple obeys N(k) = 3 N(k-1) - N(k-2)."""
    if len(sequence) < 3:
        raise ValueError("need at least three terms")
    return all(
        sequence[i] == 3 * sequence[i - 1] - sequence[i - 2] for i in range(2, len(sequence))
    )


# -- chains and profiles ----------------------------------------------------


def enumerate_chains(
    sys: BlockSystem,
    k: int,
    start_policy: Iterable[int] | None = None,
    end_policy: Iterable[int] | None = None,
    *,
    wrap: bool = False,
    limit: int = DEFAULT_CHAIN_LIMIT,
) -> list[tuple[int, ...]]:
    """All valid chains of counted blocks, in lexicographic block-id order.

    With ``wrap`` the last block must also be allowed to precede the first,
    as on the circular ladder.
    """
    if k < 1:
        raise ValueError(f"chain length must be >= 1, got {k}")
    start_pos, end_pos = _positions(sys, start_policy), _positions(sys, end_policy)
    starts = [sys.counted_ids[p] for p in start_pos]
    ends = {sys.counted_ids[p] for p in end_pos}
    m = sys.transfer_matrix()
    power = matrix_power(m, k - 1)
    expected = sum(
        power[i][j] * (m[j][i] if wrap else 1) for i in start_pos for j in end_pos
    )
    if expected > limit:
        raise SizeLimit(f"{expected} chains exceeds the listing limit of {limit}")

    counted = set(sys.counted_ids)
    adj = sys.left_adjacency
    out: list[tuple[int, ...]] = []
    stack: list[tuple[int, ...]] = [(s,) for s in reversed(starts)]
    while stack:
        chain = stack.pop()
        if len(chain) == k:
            if chain[-1] in ends and (not wrap or adj[chain[-1]][chain[0]]):
                out.append(chain)
            continue
        nxt = [j for j in sys.successors(chain[-1]) if j in counted]
        stack.extend(chain + (j,) for j in reversed(nxt))
    return out


def validate_chain(sys: BlockSystem, chain: Sequence[int]) -> None:
    if not chain:
        raise InvalidChain("empty chain")
    for bid in chain:
        if not 0 <= bid < len(sys.blocks):
            raise InvalidChain(f"unknown block id {bid}")
    for left, right in zip(chain, chain[1:]):
        if not sys.left_adjacency[left][right]:
            raise InvalidChain(f"block {left} cannot precede block {right}")


def chain_to_profile(
    sys: BlockSystem, chain: Sequence[int], *, semi_block: bool = False
) -> StrategyProfile:
    """Concatenate block columns left to right.

    The case-1 half block for odd ``n`` is the a<->b swap of the last column.
    """
    validate_chain(sys, chain)
    cols = [c for bid in chain for c in sys.block(bid).columns]
    if semi_block:
        if sys.end_allowed_odd_n is None:
            raise UnsupportedParity(f"case {int(sys.case)} has no half-block rule")
        last_top, last_bottom = cols[-1]
        cols.append((last_top.swap(), last_bottom.swap()))
    return StrategyProfile.from_columns(cols)


def format_chain(chain: Sequence[int], semi_block: bool = False) -> str:
    return "".join(str(b) for b in chain) + ("+S" if semi_block else "")


def parse_chain(text: str) -> tuple[tuple[int, ...], bool]:
    semi = text.endswith("+S")
    body = text[:-2] if semi else text
    if not body or not body.isdigit():
        raise InvalidChain(f"bad chain text {text!r}")
    return tuple(int(c) for c in body), semi


@dataclass(frozen=True)
class Decomposition:
    profile: StrategyProfile
    chain: str


def _maybe_swap(profile: StrategyProfile, swap: bool) -> StrategyProfile:
    return profile.swapped() if swap else profile


def ladder_solutions(case: Case | int, n: int, *, swap: bool = False) -> list[Decomposition]:
    """Every ladder equilibrium built from blocks, sorted by profile text."""
    sys = block_system(case)
    k, odd = rung_blocks(n)
    start, end = sys.ladder_policy(n)
    out = []
    for chain in enumerate_chains(sys, k, start, end):
        prof = chain_to_profile(sys, chain, semi_block=odd)
        out.append(Decomposition(_maybe_swap(prof, swap), format_chain(chain, odd)))
    for special in sys.ladder_specials(n):
        out.append(Decomposition(_maybe_swap(special.profile(n), swap), special.chain_text(n)))
    return sorted(out, key=lambda d: d.profile.to_int())


def circular_solutions(case: Case | int, k: int, *, swap: bool = False) -> list[Decomposition]:
    """Every circular-ladder equilibrium with ``n = 2k`` rungs, from blocks."""
    if k < 2:
        raise TooSmall(f"circular ladder needs k >= 2 blocks, got k={k}")
    sys = block_system(case)
    out = [
        Decomposition(_maybe_swap(chain_to_profile(sys, chain), swap), format_chain(chain))
        for chain in enumerate_chains(sys, k, wrap=True)
    ]
    for special in sys.circular_specials(2 * k):
        out.append(Decomposition(_maybe_swap(special.profile(2 * k), swap), special.chain_text(2 * k)))
    return sorted(out, key=lambda d: d.profile.to_int())
