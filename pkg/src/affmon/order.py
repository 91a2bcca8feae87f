"""The "lower" monomial order: compare exponents from the last variable down."""

from __future__ import annotations

from typing import Sequence


def lower_key(v: Sequence[int]) -> tuple[int, ...]:
    """Sort key realising the lower order (t_r most significant)."""
    return tuple(reversed(v))


def lower_than(x: Sequence[int], y: Sequence[int]) -> bool:
    """True iff x is strictly lower than y: at the highest index where they
    differ, x has the smaller exponent."""
    if len(x) != len(y):
        from .errors import InputError
        raise InputError("exponent vectors of different lengths")
    for a, b in zip(reversed(x), reversed(y)):
        if a != b:
            return a < b
    return False
