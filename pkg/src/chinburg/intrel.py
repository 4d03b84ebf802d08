"""Integer relations among high-precision reals via LLL on an integer lattice."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import mpmath

from chinburg.numerics.bigreal import BigReal

GUARD = 10
HEIGHT_CAP = 10**12
DEFAULT_DELTA = Fraction(99, 100)


# ----------------------------------------------------------------------
# integral LLL (all arithmetic in Z)
# ----------------------------------------------------------------------

def _round_div(a: int, b: int) -> int:
    """Nearest integer to a/b for b > 0."""
    return (2 * a + b) // (2 * b)


def lll_reduce(basis: Sequence[Sequence[int]], delta: Fraction = DEFAULT_DELTA) -> list[list[int]]:
    """delta-LLL reduction of linearly independent integer rows.

    Works with the integral Gram-Schmidt data d_i (Gram determinants) and
    lambda_{k,j} = d_{j+1} mu_{k,j}, so no rational arithmetic is needed.
    """
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise ValueError("delta must lie in (1/4, 1)")
    p, q = delta.numerator, delta.denominator
    b = [list(map(int, row)) for row in basis]
    n = len(b)
    if n <= 1:
        return b

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    # 1-indexed bookkeeping: d[0] = 1, d[i] for the first i rows; lam[k][j], j < k
    d = [1] + [0] * n
    lam = [[0] * (n + 1) for _ in range(n + 1)]
    row = lambda i: b[i - 1]  # noqa: E731

    def redi(k, l):
        if 2 * abs(lam[k][l]) > d[l]:
            r = _round_div(lam[k][l], d[l])
            b[k - 1] = [x - r * y for x, y in zip(row(k), row(l))]
            lam[k][l] -= r * d[l]
            for i in range(1, l):
                lam[k][i] -= r * lam[l][i]

    def swapi(k, kmax):
        b[k - 1], b[k - 2] = b[k - 2], b[k - 1]
        for j in range(1, k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lm = lam[k][k - 1]
        B = (d[k - 2] * d[k] + lm * lm) // d[k - 1]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k] * lam[i][k - 1] - lm * t) // d[k - 1]
            lam[i][k - 1] = (B * t + lm * lam[i][k]) // d[k]
        d[k - 1] = B

    d[1] = dot(b[0], b[0])
    if d[1] == 0:
        raise ValueError("basis rows are linearly dependent")
    k, kmax = 2, 1
    while k <= n:
        if k > kmax:
            kmax = k
            for j in range(1, k + 1):
                u = dot(row(k), row(j))
                for i in range(1, j):
                    u = (d[i] * u - lam[k][i] * lam[j][i]) // d[i - 1]
                if j < k:
                    lam[k][j] = u
                else:
                    if u == 0:
                        raise ValueError("basis rows are linearly dependent")
                    d[k] = u
        while True:
            redi(k, k - 1)
            lm = lam[k][k - 1]
            if q * d[k] * d[k - 2] < p * d[k - 1] ** 2 - q * lm * lm:
                swapi(k, kmax)
                k = max(2, k - 1)
                continue
            for l in range(k - 2, 0, -1):
                redi(k, l)
            k += 1
            break
    return b


def is_lll_reduced(basis: Sequence[Sequence[int]], delta: Fraction = DEFAULT_DELTA) -> bool:
    """Check size reduction and the Lovasz condition with exact rationals."""
    rows = [[Fraction(x) for x in r] for r in basis]
    n = len(rows)
    star: list[list[Fraction]] = []
    norms: list[Fraction] = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        v = rows[i][:]
        for j in range(i):
            mu[i][j] = sum(x * y for x, y in zip(rows[i], star[j])) / norms[j]
            v = [x - mu[i][j] * y for x, y in zip(v, star[j])]
        star.append(v)
        norms.append(sum(x * x for x in v))
    for i in range(n):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    for k in range(1, n):
        if norms[k] < (Fraction(delta) - mu[k][k - 1] ** 2) * norms[k - 1]:
            return False
    return True


# ----------------------------------------------------------------------
# lindep
# ----------------------------------------------------------------------

@dataclass
class RelationResult:
    coefficients: tuple[int, ...]
    residual: mpmath.mpf
    rationals: tuple[Fraction, ...]
    detected_at: int
    confirmed_at: int | None = None
    confirm_residual: mpmath.mpf | None = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "coefficients": list(self.coefficients),
            "rationals": [str(r) for r in self.rationals],
            "residual": mpmath.nstr(self.residual, 5),
            "detected_at": self.detected_at,
            "confirmed_at": self.confirmed_at,
            "confirm_residual": (mpmath.nstr(self.confirm_residual, 5)
                                 if self.confirm_residual is not None else None),
            "notes": list(self.notes),
        }


def _values(xs) -> list:
    return [x.value if isinstance(x, BigReal) else mpmath.mpf(x) for x in xs]


def _residual(n, vals):
    return abs(mpmath.fsum(c * v for c, v in zip(n, vals)))


def _threshold(n, digits):
    return sum(abs(c) for c in n) * mpmath.mpf(10) ** (-(digits - GUARD - GUARD // 2))


def lindep(xs: Sequence, digits: int,
           recompute: Callable[[int], Sequence] | None = None) -> RelationResult | None:
    """Find integers n with n_0 x_0 + ... + n_s x_s ~ 0, n_0 > 0.

    The candidate must have small residual at `digits` and, when `recompute`
    is given, keep a correspondingly smaller residual for the values
    recomputed at 1.5 * digits. Returns None when no candidate survives.
    """
    if len(xs) < 2:
        raise ValueError("need at least two numbers")
    with mpmath.workdps(digits + 2 * GUARD):
        vals = _values(xs)
        scale = mpmath.mpf(10) ** (digits - GUARD)
        m = len(vals)
        basis = [[1 if j == i else 0 for j in range(m)] + [int(mpmath.nint(scale * v))]
                 for i, v in enumerate(vals)]
        reduced = lll_reduce(basis)
        candidates = sorted(reduced, key=lambda r: sum(c * c for c in r[:m]))
        for r in candidates:
            n = r[:m]
            if not any(n) or n[0] == 0:
                continue
            if max(abs(c) for c in n) > HEIGHT_CAP:
                continue
            res = _residual(n, vals)
            if res >= _threshold(n, digits):
                continue
            if n[0] < 0:
                n = [-c for c in n]
            out = RelationResult(
                coefficients=tuple(n),
                residual=res,
                rationals=tuple(Fraction(-c, n[0]) for c in n[1:]),
                detected_at=digits,
            )
            if recompute is None:
                out.notes.append("not re-verified: no recompute callable")
                return out
            high = (3 * digits) // 2
            if not confirm(out, recompute, high):
                return None
            return out
        return None


def confirm(rel: RelationResult, recompute: Callable[[int], Sequence], digits: int) -> bool:
    """Re-check a relation against values recomputed at higher precision."""
    with mpmath.workdps(digits + 2 * GUARD):
        vals = _values(recompute(digits))
        res = _residual(rel.coefficients, vals)
        ok = res < _threshold(rel.coefficients, digits)
    if ok:
        rel.confirmed_at = digits
        rel.confirm_residual = res
    else:
        rel.notes.append(f"re-verification at {digits} digits failed (residual {mpmath.nstr(res, 5)})")
    return ok
