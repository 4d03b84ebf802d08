from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

GUARD_DIGITS = 15


@dataclass(frozen=True)
class BigReal:
    """An mpf value with a conservative bound on its absolute error."""

    value: mpmath.mpf
    err: mpmath.mpf
    digits: int

    def __float__(self):
        return float(self.value)

    def __str__(self):
        return mpmath.nstr(self.value, self.digits)

    def decimal(self, digits: int | None = None) -> str:
        """Fixed-point decimal string with the requested number of digits after the point."""
        d = self.digits if digits is None else digits
        with mpmath.workdps(d + 10):
            return mpmath.nstr(self.value, d + max(1, int(mpmath.log10(abs(self.value)) + 1))
                               if self.value else d, strip_zeros=False)

    def certified_digits(self) -> float:
        if self.err == 0:
            return math.inf
        return -float(mpmath.log10(self.err))


def working_dps(digits: int, extra: int = 0) -> int:
    return digits + GUARD_DIGITS + extra


def tol(digits: int) -> mpmath.mpf:
    return mpmath.mpf(10) ** (-digits)
