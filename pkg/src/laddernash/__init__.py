"""Counting pure Nash equilibria of anti-coordination games on ladder graphs."""

from .blocks import Case, block_system, circular_count_blocks, ladder_count_blocks
from .game import PayoffParams, Regime, Strategy, reduce, regime_of
from .oracle import PayoffAssignment, count_equilibria, enumerate_equilibria
from .topology import GraphKind, StrategyProfile, build, profile_from_string

__version__ = "0.1.0"

__all__ = [
    "Case",
    "GraphKind",
    "PayoffAssignment",
    "PayoffParams",
    "Regime",
    "Strategy",
    "StrategyProfile",
    "block_system",
    "build",
    "circular_count_blocks",
    "count_equilibria",
    "enumerate_equilibria",
    "ladder_count_blocks",
    "profile_from_string",
    "reduce",
    "regime_of",
]
