"""Exact univariate integer polynomials.

Coefficients are stored in ascending degree order, which is also the wire
format used everywhere else in the package (``"1,1"`` is ``1 + x``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterable, NamedTuple

from chinburg.arith import divisors, euler_phi, indices_with_phi_at_most, squarefree_split


class IntPoly:
    """Immutable polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    def __reduce__(self):
        return (IntPoly, (self.coeffs,))

    # -- construction -------------------------------------------------
    @classmethod
    def x_power(cls, k: int, c: int = 1) -> IntPoly:
        return cls([0] * k + [c])

    @classmethod
    def const(cls, c: int) -> IntPoly:
        return cls([c])

    @classmethod
    def parse(cls, text: str) -> IntPoly:
        """Parse the ascending comma-separated format, e.g. ``"1,0,1"``."""
        parts = [t.strip() for t in text.strip().split(",")]
        if not parts or any(not t for t in parts):
            raise ValueError(f"malformed coefficient list: {text!r}")
        try:
            return cls(int(t) for t in parts)
        except ValueError:
            raise ValueError(f"malformed coefficient list: {text!r}") from None

    def dumps(self) -> str:
        return ",".join(str(c) for c in self.coeffs) if self.coeffs else "0"

    # -- basic properties ---------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def ord0(self) -> int:
        """Order of vanishing at x = 0."""
        if self.is_zero:
            raise ValueError("ord0 of the zero polynomial")
        k = 0
        while self.coeffs[k] == 0:
            k += 1
        return k

    def content(self) -> int:
        return reduce(math.gcd, self.coeffs, 0)

    def primitive(self) -> IntPoly:
        """Primitive part normalized to a positive leading coefficient."""
        if self.is_zero:
            return self
        c = self.content()
        if self.lead < 0:
            c = -c
        return IntPoly(x // c for x in self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> IntPoly:
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def reverse(self) -> IntPoly:
        """x^deg * p(1/x)."""
        return IntPoly(reversed(self.coeffs))

    def shift(self, k: int) -> IntPoly:
        """Multiply by x^k (k >= 0) or divide by x^-k (exactly)."""
        if k >= 0:
            return IntPoly((0,) * k + self.coeffs) if self.coeffs else self
        if any(self.coeffs[: -k]):
            raise ValueError("not divisible by the requested power of x")
        return IntPoly(self.coeffs[-k:])

    def compose_neg(self) -> IntPoly:
        """p(-x)."""
        return IntPoly(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))

    # -- arithmetic ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly([other])
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        return IntPoly(-c for c in self.coeffs)

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        other = _coerce(other)
        if self.is_zero or other.is_zero:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = IntPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def divmod(self, other: IntPoly) -> tuple[IntPoly, IntPoly] | None:
        """Division with remainder over Z; None if a quotient coefficient is not integral."""
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return IntPoly(), self
        lc = other.lead
        od = other.degree
        quot = [0] * (dq + 1)
        for k in range(dq, -1, -1):
            top = rem[k + od]
            if top:
                q, r = divmod(top, lc)
                if r:
                    return None
                quot[k] = q
                for j, c in enumerate(other.coeffs):
                    rem[k + j] -= q * c
        return IntPoly(quot), IntPoly(rem)

    def divides(self, other: IntPoly) -> bool:
        """True if self | other in Z[x]."""
        res = other.divmod(self)
        return res is not None and res[1].is_zero

    def exact_div(self, other) -> IntPoly:
        if isinstance(other, int):
            if any(c % other for c in self.coeffs):
                raise ArithmeticError("inexact integer division")
            return IntPoly(c // other for c in self.coeffs)
        res = self.divmod(other)
        if res is None or not res[1].is_zero:
            raise ArithmeticError(f"{other} does not divide {self}")
        return res[0]

    __floordiv__ = exact_div

    def prem(self, other: IntPoly) -> IntPoly:
        """Pseudo-remainder of self by other."""
        d = self.degree - other.degree
        if d < 0:
            return self
        scaled = self * other.lead ** (d + 1)
        return scaled.divmod(other)[1]

    # -- display --------------------------------------------------------
    def __repr__(self):
        return f"IntPoly([{self.dumps()}])"

    def __str__(self):
        if self.is_zero:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            mag = abs(c)
            body = str(mag) if (mag != 1 or i == 0) else ""
            if body and mono:
                body += "*"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body + mono))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, t in terms[1:]:
            out += f" {sign} {t}"
        return out


def _coerce(p) -> IntPoly:
    if isinstance(p, IntPoly):
        return p
    if isinstance(p, int):
        return IntPoly([p])
    raise TypeError(f"cannot use {type(p).__name__} as IntPoly")


X = IntPoly([0, 1])
ONE = IntPoly([1])


# ----------------------------------------------------------------------
# gcd and squarefree machinery
# ----------------------------------------------------------------------

def poly_gcd(p: IntPoly, q: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient (subresultant PRS)."""
    if p.is_zero and q.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    if p.is_zero:
        return q.primitive()
    if q.is_zero:
        return p.primitive()
    a, b = p.primitive(), q.primitive()
    if a.degree < b.degree:
        a, b = b, a
    g = h = 1
    while True:
        d = a.degree - b.degree
        r = a.prem(b)
        if r.is_zero:
            return b.primitive()
        if r.degree == 0:
            return ONE
        a, b = b, r.exact_div(g * h**d)
        g = a.lead
        h = g**d // h ** (d - 1) if d >= 1 else h


def squarefree_decomposition(p: IntPoly) -> list[tuple[IntPoly, int]]:
    """Yun's algorithm on the primitive part of p.

    Returns [(f_i, i)] with each f_i primitive, squarefree, pairwise coprime and
    positive leading, such that primitive(p) == prod f_i**i. Constant factors
    f_i == 1 are omitted.
    """
    a = p.primitive()
    if a.degree <= 0:
        return []
    da = a.derivative()
    b = poly_gcd(a, da)
    c = a.exact_div(b)
    d = da.exact_div(b) - c.derivative()
    out = []
    i = 1
    while c.degree > 0:
        f = poly_gcd(c, d) if not d.is_zero else c.primitive()
        c = c.exact_div(f)
        d = d.exact_div(f) - c.derivative()
        if f.degree > 0:
            out.append((f, i))
        i += 1
    return out


def squarefree_part(p: IntPoly) -> IntPoly:
    """Product of the distinct irreducible factors of primitive(p)."""
    return reduce(lambda acc, fi: acc * fi[0], squarefree_decomposition(p), ONE)


# ----------------------------------------------------------------------
# discriminant and its g*h^2 split
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class DiscriminantSplit:
    delta: IntPoly
    g: IntPoly
    h: IntPoly


def discriminant(a: IntPoly, b: IntPoly) -> IntPoly:
    """Discriminant in y of a(x)(y^2+1) + b(x)y, namely b^2 - 4a^2."""
    return b * b - a * a * 4


def gh_split(delta: IntPoly) -> DiscriminantSplit:
    """Write delta = g*h^2 with g squarefree (content included) and lead(h) > 0."""
    if delta.is_zero:
        raise ValueError("gh_split of the zero polynomial")
    sign = 1 if delta.lead > 0 else -1
    kernel, root = squarefree_split(delta.content())
    g = IntPoly([sign * kernel])
    h = IntPoly([root])
    for f, i in squarefree_decomposition(delta):
        if i % 2:
            g = g * f
        if i >= 2:
            h = h * f ** (i // 2)
    return DiscriminantSplit(delta=delta, g=g, h=h)


# ----------------------------------------------------------------------
# reciprocity
# ----------------------------------------------------------------------

class Reciprocity(NamedTuple):
    shift: int
    sign: int


def shifted_reciprocal_shift(p: IntPoly) -> Reciprocity | None:
    """The unique (l, eps) with x^l p(1/x) == eps*p(x), if any."""
    if p.is_zero:
        raise ValueError("reciprocity of the zero polynomial")
    ell = p.degree + p.ord0()
    for eps in (1, -1):
        if all(p[ell - i] == eps * p[i] for i in range(ell + 1)):
            return Reciprocity(ell, eps)
    return None


# ----------------------------------------------------------------------
# cyclotomic polynomials
# ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def cyclotomic(n: int) -> IntPoly:
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    p = IntPoly.x_power(n) - 1
    for d in divisors(n):
        if d < n:
            p = p.exact_div(cyclotomic(d))
    return p


class CyclotomicFactorization(NamedTuple):
    x_power: int
    factors: tuple[int, ...]   # sorted multiset of cyclotomic indices

    def polynomial(self) -> IntPoly:
        p = IntPoly.x_power(self.x_power)
        for n in self.factors:
            p = p * cyclotomic(n)
        return p


def detect_cyclotomic_product(p: IntPoly) -> CyclotomicFactorization | None:
    """Factor p as x^k * prod Phi_n, or return None."""
    if p.is_zero:
        raise ValueError("zero polynomial")
    k = p.ord0()
    r = p.shift(-k)
    if abs(r.lead) != 1 or abs(r[0]) != 1:
        return None
    factors = []
    for n in indices_with_phi_at_most(max(r.degree, 0)):
        if euler_phi(n) > r.degree:
            continue
        phi_n = cyclotomic(n)
        while r.degree >= phi_n.degree:
            res = r.divmod(phi_n)
            if res is None or not res[1].is_zero:
                break
            r = res[0]
            factors.append(n)
        if r.degree == 0:
            break
    if r != ONE:
        return None
    return CyclotomicFactorization(k, tuple(factors))
