"""Brute-force enumeration of pure Nash equilibria over all 2^(2n) profiles.

``is_equilibrium`` checks one profile with exact rational payoffs and is the
reference definition.  The enumerators scan the profile space in integer
chunks with numpy, using an integer-scaled form of the same strict
inequality, and filter one player at a time so most profiles are discarded
after a few players.
"""

from __future__ import annotations

import math
import os
from collections.abc import Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import SizeLimit
from .game import PayoffParams, Strategy, reduce, regime_of
from .topology import EdgeClass, LadderTopology, StrategyProfile, check_profile

MAX_PLAYERS_ENV = "LADDERNASH_MAX_PLAYERS"
DEFAULT_MAX_PLAYERS = 26
CHUNK_BITS = 20


def max_players() -> int:
    """Oracle size limit, overridable through ``LADDERNASH_MAX_PLAYERS``."""
    raw = os.environ.get(MAX_PLAYERS_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_MAX_PLAYERS
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{MAX_PLAYERS_ENV} must be an integer, got {raw!r}") from None
    if value < 4:
        raise ValueError(f"{MAX_PLAYERS_ENV} must be at least 4, got {value}")
    return value


@dataclass(frozen=True)
class PayoffAssignment:
    """Payoffs per edge class; uniform when all three classes share one game."""

    rung: PayoffParams
    top_rail: PayoffParams
    bottom_rail: PayoffParams

    @classmethod
    def uniform(cls, params: PayoffParams) -> PayoffAssignment:
        return cls(params, params, params)

    @classmethod
    def per_edge_class(
        cls, rung: PayoffParams, top_rail: PayoffParams, bottom_rail: PayoffParams
    ) -> PayoffAssignment:
        return cls(rung, top_rail, bottom_rail)

    @property
    def mode(self) -> str:
        return "uniform" if self.rung == self.top_rail == self.bottom_rail else "per_edge_class"

    def for_class(self, edge_class: EdgeClass) -> PayoffParams:
        if edge_class is EdgeClass.RUNG:
            return self.rung
        if edge_class is EdgeClass.TOP_RAIL:
            return self.top_rail
        return self.bottom_rail

    def regime(self):
        """Regime shared by all edge classes, or None when they disagree."""
        regimes = {regime_of(reduce(p)) for p in (self.rung, self.top_rail, self.bottom_rail)}
        return regimes.pop() if len(regimes) == 1 else None


@dataclass(frozen=True)
class EquilibriumSet:
    topology: LadderTopology
    profiles: tuple[StrategyProfile, ...]

    @property
    def count(self) -> int:
        return len(self.profiles)

    def strings(self) -> list[str]:
        return [str(p) for p in self.profiles]

    def __contains__(self, profile: StrategyProfile) -> bool:
        return profile in set(self.profiles)


def player_payoff(
    t: LadderTopology, pay: PayoffAssignment, prof: StrategyProfile, i: int, s: Strategy
) -> Fraction:
    """Mean payoff of player ``i`` playing ``s`` against the profile's neighbours."""
    incident = t.incident(i)
    total = sum(
        (pay.for_class(cls).payoff(s, prof.assignment[j]) for j, cls in incident),
        Fraction(0),
    )
    return total / len(incident)


def is_equilibrium(t: LadderTopology, pay: PayoffAssignment, prof: StrategyProfile) -> bool:
    """True iff every player's strategy is its strict best response."""
    check_profile(t, prof)
    for i, played in enumerate(prof.assignment):
        if player_payoff(t, pay, prof, i, played) <= player_payoff(
            t, pay, prof, i, played.swap()
        ):
            return False
    return True


def _integer_weights(pay: PayoffAssignment) -> dict[EdgeClass, tuple[int, int]]:
    """Per-class (x, y) scaled by a common denominator to integers.

    Playing a instead of b gains y against a b-neighbour and loses x against
    an a-neighbour; the mean over incident edges keeps the sign of the sum.
    """
    reduced = {cls: reduce(pay.for_class(cls)) for cls in EdgeClass}
    scale = math.lcm(*(v.denominator for rp in reduced.values() for v in (rp.x, rp.y)))
    return {
        cls: (int(rp.x * scale), int(rp.y * scale)) for cls, rp in reduced.items()
    }


class _Scanner:
    def __init__(self, t: LadderTopology, pay: PayoffAssignment):
        self.t = t
        self.size = t.players
        weights = _integer_weights(pay)
        bound = max(x + y for x, y in weights.values()) * 3
        # Fall back to Python ints when scaled payoffs overflow int64.
        self.dtype = np.int64 if bound < 2**62 else object
        self.terms = []
        for i in range(self.size):
            terms = []
            for j, cls in t.incident(i):
                x, y = weights[cls]
                terms.append((self.size - 1 - j, x, x + y))
            self.terms.append(terms)

    def scan(self, lo: int, hi: int) -> np.ndarray:
        """Profiles in ``[lo, hi)`` that are equilibria, ascending."""
        cand = np.arange(lo, hi, dtype=np.int64)
        for i in range(self.size):
            if cand.size == 0:
                break
            diff = np.zeros(cand.size, dtype=self.dtype)
            for shift, x, span in self.terms[i]:
                bit = (cand >> shift) & 1
                diff += bit.astype(self.dtype) * span - x
            own = ((cand >> (self.size - 1 - i)) & 1).astype(bool)
            keep = np.where(own, diff < 0, diff > 0).astype(bool)
            cand = cand[keep]
        return cand


def _ranges(total: int, chunk: int) -> Iterator[tuple[int, int]]:
    for lo in range(0, total, chunk):
        yield lo, min(total, lo + chunk)


def _check_size(t: LadderTopology, limit: int | None) -> None:
    limit = max_players() if limit is None else limit
    if t.players > limit:
        raise SizeLimit(f"{t.players} players exceeds the oracle limit of {limit}")


def _scan_all(
    t: LadderTopology,
    pay: PayoffAssignment,
    limit: int | None,
    workers: int,
    chunk_bits: int,
) -> list[np.ndarray]:
    _check_size(t, limit)
    scanner = _Scanner(t, pay)
    chunks = list(_ranges(1 << t.players, 1 << chunk_bits))
    if workers <= 1 or len(chunks) == 1:
        return [scanner.scan(lo, hi) for lo, hi in chunks]
    # map() preserves chunk order, so the merge is a plain concatenation.
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda r: scanner.scan(*r), chunks))


def enumerate_equilibria(
    t: LadderTopology,
    pay: PayoffAssignment,
    *,
    limit: int | None = None,
    workers: int = 1,
    chunk_bits: int = CHUNK_BITS,
) -> EquilibriumSet:
    parts = _scan_all(t, pay, limit, workers, chunk_bits)
    profiles = tuple(
        StrategyProfile.from_int(int(v), t.n) for part in parts for v in part
    )
    return EquilibriumSet(t, profiles)


def count_equilibria(
    t: LadderTopology,
    pay: PayoffAssignment,
    *,
    limit: int | None = None,
    workers: int = 1,
    chunk_bits: int = CHUNK_BITS,
) -> int:
    return sum(int(part.size) for part in _scan_all(t, pay, limit, workers, chunk_bits))
