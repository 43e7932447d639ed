"""Two-choice anti-coordination game and its best-response regimes.

A single pairwise game has payoffs (p, q, r, s) for the row player:

    a vs a -> p      a vs b -> q
    b vs a -> r      b vs b -> s

With x = r - p > 0 and y = q - s > 0 the pure equilibria of the pairwise game
are (a, b) and (b, a).  On a graph each player averages the payoffs of all its
incident games, and the sign of a handful of linear forms in (x, y) decides
which strategy is the best response to each neighbourhood.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import BadDegree, InvalidGame, NonGenericParameters


class Strategy(str, enum.Enum):
    A = "a"
    B = "b"

    def swap(self) -> Strategy:
        return Strategy.B if self is Strategy.A else Strategy.A

    def __str__(self) -> str:
        return self.value


def as_strategy(value: Strategy | str) -> Strategy:
    if isinstance(value, Strategy):
        return value
    try:
        return Strategy(value)
    except ValueError:
        raise ValueError(f"not a strategy: {value!r}") from None


def as_fraction(value) -> Fraction:
    """Convert ints, strings like ``"3/2"``, Fractions or finite floats exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidGame("payoffs must be numbers, not booleans")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise InvalidGame(f"payoff must be finite, got {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise InvalidGame(f"cannot read payoff {value!r}") from None
    raise InvalidGame(f"unsupported payoff type {type(value).__name__}")


@dataclass(frozen=True)
class PayoffParams:
    p: Fraction
    q: Fraction
    r: Fraction
    s: Fraction

    def __post_init__(self):
        for name in "pqrs":
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if not self.r > self.p:
            raise InvalidGame(f"need r > p, got r={self.r}, p={self.p}")
        if not self.q > self.s:
            raise InvalidGame(f"need q > s, got q={self.q}, s={self.s}")

    def payoff(self, own: Strategy, other: Strategy) -> Fraction:
        """Row-player payoff of one pairwise game."""
        if own is Strategy.A:
            return self.p if other is Strategy.A else self.q
        return self.r if other is Strategy.A else self.s


@dataclass(frozen=True)
class ReducedParams:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        x, y = as_fraction(self.x), as_fraction(self.y)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        if x <= 0 or y <= 0:
            raise InvalidGame(f"need x > 0 and y > 0, got x={x}, y={y}")
        if y == x or y == 2 * x or 2 * y == x:
            raise NonGenericParameters(f"boundary parameters x={x}, y={y}")

    # Common denominators are dropped, only signs matter.
    @property
    def f(self) -> Fraction:
        return -2 * self.x + self.y

    @property
    def g(self) -> Fraction:
        return 2 * self.y - self.x

    @property
    def h(self) -> Fraction:
        return self.y - self.x


class Sign(enum.Enum):
    NEGATIVE = -1
    POSITIVE = 1


@dataclass(frozen=True)
class RegimeSignature:
    sign_f: Sign
    sign_g: Sign
    sign_h: Sign

    @classmethod
    def of(cls, rp: ReducedParams) -> RegimeSignature:
        def sign(v: Fraction) -> Sign:
            return Sign.POSITIVE if v > 0 else Sign.NEGATIVE

        return cls(sign(rp.f), sign(rp.g), sign(rp.h))


class Regime(str, enum.Enum):
    LONE_A = "LONE_A"  # x/2 > y
    MINORITY_A = "MINORITY_A"  # x > y > x/2
    MINORITY_B = "MINORITY_B"  # 2x > y > x
    LONE_B = "LONE_B"  # y > 2x

    @property
    def mirror(self) -> Regime:
        return _MIRROR[self]

    @property
    def is_mirrored(self) -> bool:
        """True for the regimes handled through the a<->b swap."""
        return self in (Regime.MINORITY_B, Regime.LONE_B)

    @property
    def case(self) -> int:
        """1 for the minority regimes, 2 for the lone regimes."""
        return 1 if self in (Regime.MINORITY_A, Regime.MINORITY_B) else 2

    def __str__(self) -> str:
        return self.value


_MIRROR = {
    Regime.LONE_A: Regime.LONE_B,
    Regime.LONE_B: Regime.LONE_A,
    Regime.MINORITY_A: Regime.MINORITY_B,
    Regime.MINORITY_B: Regime.MINORITY_A,
}

_BY_SIGNATURE = {
    (Sign.NEGATIVE, Sign.NEGATIVE, Sign.NEGATIVE): Regime.LONE_A,
    (Sign.NEGATIVE, Sign.POSITIVE, Sign.NEGATIVE): Regime.MINORITY_A,
    (Sign.NEGATIVE, Sign.POSITIVE, Sign.POSITIVE): Regime.MINORITY_B,
    (Sign.POSITIVE, Sign.POSITIVE, Sign.POSITIVE): Regime.LONE_B,
}

# One representative payoff set per regime; used when the caller gives none.
REPRESENTATIVE_PAYOFFS = {
    Regime.MINORITY_A: (0, 2, 3, 0),
    Regime.LONE_A: (0, 1, 3, 0),
    Regime.MINORITY_B: (0, 3, 2, 0),
    Regime.LONE_B: (0, 3, 1, 0),
}


def representative_params(regime: Regime) -> PayoffParams:
    return PayoffParams(*REPRESENTATIVE_PAYOFFS[regime])


def reduce(params: PayoffParams) -> ReducedParams:
    """Return (x, y) = (r - p, q - s); boundary values are rejected."""
    return ReducedParams(params.r - params.p, params.q - params.s)


def regime_of(rp: ReducedParams) -> Regime:
    sig = RegimeSignature.of(rp)
    return _BY_SIGNATURE[(sig.sign_f, sig.sign_g, sig.sign_h)]


def _opponent_counts(opponents: Iterable[Strategy | str]) -> Counter:
    counts = Counter(as_strategy(o) for o in opponents)
    size = sum(counts.values())
    if size not in (2, 3):
        raise BadDegree(f"opponent multiset must have 2 or 3 members, got {size}")
    return counts


def averaged_payoff(
    s: Strategy | str, opponents: Iterable[Strategy | str], params: PayoffParams
) -> Fraction:
    """Mean payoff of playing ``s`` against every member of ``opponents``."""
    own = as_strategy(s)
    counts = _opponent_counts(opponents)
    total = sum(
        (params.payoff(own, other) * k for other, k in counts.items()), Fraction(0)
    )
    return total / sum(counts.values())


def best_response(reg: Regime, opponents: Iterable[Strategy | str]) -> Strategy:
    counts = _opponent_counts(opponents)
    n_a, n_b = counts[Strategy.A], counts[Strategy.B]
    size = n_a + n_b
    if reg is Regime.MINORITY_A:
        return Strategy.A if n_b >= 2 else Strategy.B
    if reg is Regime.LONE_A:
        return Strategy.A if n_b == size else Strategy.B
    if reg is Regime.MINORITY_B:
        return Strategy.B if n_a >= 2 else Strategy.A
    return Strategy.B if n_a == size else Strategy.A
