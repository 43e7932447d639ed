"""Exception hierarchy shared by every module."""

from __future__ import annotations


class LadderNashError(Exception):
    """Base class for all library errors."""


class InvalidGame(LadderNashError, ValueError):
    """Payoffs do not describe an anti-coordination game (needs r > p and q > s)."""


class NonGenericParameters(LadderNashError, ValueError):
    """(x, y) sits on a regime boundary: y == x, y == 2x or 2y == x."""


class BadDegree(LadderNashError, ValueError):
    """Opponent multiset is not of size 2 or 3."""


class TooSmall(LadderNashError, ValueError):
    """Rung count below the minimum for the requested graph kind."""


class ParseError(LadderNashError, ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class SizeLimit(LadderNashError):
    """A brute-force or listing request exceeds the configured size limit."""


class UnsupportedParity(LadderNashError, ValueError):
    """The block engine has no rules for this parity of n."""


class InvalidChain(LadderNashError, ValueError):
    """A block sequence violates the sticking rules of its block system."""


class NonIntegerResult(LadderNashError, ArithmeticError):
    """An exact recursive formula produced a non-integer count."""
