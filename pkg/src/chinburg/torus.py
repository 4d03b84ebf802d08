"""Exact analysis of reciprocal polynomials on the unit circle.

An even-shift reciprocal polynomial p with x^(2m) p(1/x) = p(x) can be written
as p(x) = x^m T(x + 1/x). On the circle u = x + 1/x = 2cos(theta) runs over
[-2, 2], so toric roots of p are the real roots of T in [-2, 2] and the sign of
x^-m p(x) there is the sign of T. All isolation and sign work below is exact
(Sturm sequences, Fraction arithmetic).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property

import mpmath

from chinburg.polyz import (
    DiscriminantSplit,
    IntPoly,
    shifted_reciprocal_shift,
    squarefree_decomposition,
)


class RootType(str, Enum):
    I = "I"
    II_PLUS = "II+"
    II_MINUS = "II-"


@dataclass(frozen=True)
class UTransform:
    source: IntPoly
    t_poly: IntPoly          # integer coefficients, ascending in u
    half_shift: int

    def __call__(self, u):
        return self.t_poly(u)


def u_transform(p: IntPoly) -> UTransform:
    """Return T with p(x) = x^m T(x + 1/x)."""
    if p.is_zero:
        raise ValueError("u_transform of the zero polynomial")
    rec = shifted_reciprocal_shift(p)
    if rec is None or rec.shift % 2 or rec.sign != 1:
        raise ValueError(f"{p} is not an even-shift reciprocal polynomial with sign +1")
    m = rec.shift // 2
    u = IntPoly([0, 1])
    d_prev, d_cur = IntPoly([2]), u
    t = IntPoly([p[m]])
    for j in range(1, m + 1):
        t = t + d_cur * p[m + j]
        d_prev, d_cur = d_cur, u * d_cur - d_prev
    return UTransform(source=p, t_poly=t, half_shift=m)


# ----------------------------------------------------------------------
# Sturm sequences
# ----------------------------------------------------------------------

def _sign(v) -> int:
    return (v > 0) - (v < 0)


class Sturm:
    """Sturm chain of a squarefree integer polynomial."""

    def __init__(self, f: IntPoly):
        self.f = f
        chain = [f, f.derivative()]
        while chain[-1].degree > 0:
            a, b = chain[-2], chain[-1]
            d = a.degree - b.degree
            r = a.prem(b)
            if b.lead < 0 and (d + 1) % 2:
                r = -r
            if r.is_zero:
                break
            c = r.content()
            chain.append(IntPoly(-x // c for x in r.coeffs))
        self.chain = chain

    def variations(self, x: Fraction) -> int:
        signs = [s for s in (_sign(p(x)) for p in self.chain) if s]
        return sum(1 for s0, s1 in zip(signs, signs[1:]) if s0 != s1)

    def count(self, lo: Fraction, hi: Fraction) -> int:
        """Number of distinct roots in (lo, hi]."""
        return self.variations(lo) - self.variations(hi)


@dataclass
class _Root:
    lo: Fraction
    hi: Fraction
    factor: IntPoly          # squarefree polynomial in u having this root (simple)
    mult: int                # multiplicity in u
    exact: Fraction | None = None


def _linear_factor(r: Fraction) -> IntPoly:
    return IntPoly([-r.numerator, r.denominator])


def _isolate_component(f: IntPoly, mult: int) -> list[_Root]:
    """Isolate roots of a squarefree f in [-2, 2]; exact rational roots divided out."""
    roots: list[_Root] = []
    two = Fraction(2)
    for end in (two, -two):
        if f(end) == 0:
            lin = _linear_factor(end)
            roots.append(_Root(end, end, lin, mult, exact=end))
            f = f.exact_div(lin)
    while True:
        found_exact = None
        if f.degree <= 0:
            break
        st = Sturm(f)
        pending = [(-two, two, st.count(-two, two))]
        isolated = []
        while pending and found_exact is None:
            lo, hi, n = pending.pop()
            if n == 0:
                continue
            if n == 1:
                isolated.append((lo, hi))
                continue
            mid = (lo + hi) / 2
            if f(mid) == 0:
                found_exact = mid
                break
            pending.append((mid, hi, st.count(mid, hi)))
            pending.append((lo, mid, st.count(lo, mid)))
        if found_exact is not None:
            lin = _linear_factor(found_exact)
            roots.append(_Root(found_exact, found_exact, lin, mult, exact=found_exact))
            f = f.exact_div(lin)
            continue
        for lo, hi in isolated:
            roots.append(_detect_rational(f, lo, hi, mult))
        break
    return roots


def _detect_rational(f: IntPoly, lo: Fraction, hi: Fraction, mult: int) -> _Root:
    """Refine a sign-changing isolating interval and test for a rational root."""
    bound = abs(f.lead)
    target = Fraction(1, 2 * bound * bound)
    flo = _sign(f(lo))
    while hi - lo >= target:
        mid = (lo + hi) / 2
        fm = _sign(f(mid))
        if fm == 0:
            return _Root(mid, mid, _linear_factor(mid), mult, exact=mid)
        if fm == flo:
            lo = mid
        else:
            hi = mid
    cand = ((lo + hi) / 2).limit_denominator(bound)
    if lo < cand < hi and f(cand) == 0:
        return _Root(cand, cand, _linear_factor(cand), mult, exact=cand)
    return _Root(lo, hi, f, mult)


def _separate(roots: list[_Root], t: IntPoly) -> None:
    """Shrink intervals until pairwise disjoint with endpoints that are not roots of t."""
    two = Fraction(2)
    for r in roots:
        if r.exact is not None:
            w = Fraction(1, 4)
            r.lo = max(r.exact - w, -two)
            r.hi = min(r.exact + w, two)
    changed = True
    while changed:
        changed = False
        roots.sort(key=lambda r: (r.lo, r.hi))
        for r in roots:
            if _tighten_endpoints(r, t):
                changed = True
        for a, b in zip(roots, roots[1:]):
            if a.hi >= b.lo:
                _halve(a)
                _halve(b)
                changed = True


def _halve(r: _Root) -> None:
    if r.exact is not None:
        x = r.exact
        if r.lo < x:
            r.lo = (r.lo + x) / 2
        if r.hi > x:
            r.hi = (r.hi + x) / 2
        return
    mid = (r.lo + r.hi) / 2
    f = r.factor
    fm = _sign(f(mid))
    if fm == 0:
        r.lo = r.hi = r.exact = mid
        r.factor = _linear_factor(mid)
        return
    if _sign(f(r.lo)) == fm:
        r.lo = mid
    else:
        r.hi = mid


def _tighten_endpoints(r: _Root, t: IntPoly) -> bool:
    """Make sure t does not vanish at an endpoint that is not the root itself."""
    changed = False
    for _ in range(200):
        bad = (r.lo != r.exact and t(r.lo) == 0) or (r.hi != r.exact and t(r.hi) == 0)
        if not bad:
            break
        _halve(r)
        changed = True
    return changed


# ----------------------------------------------------------------------
# records
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ToricRootRecord:
    """A conjugate pair (or the point +-1) of unit-circle roots, in u-coordinates."""

    u_interval: tuple[Fraction, Fraction]
    u_exact: Fraction | None
    u_factor: IntPoly          # squarefree integer polynomial in u, simple root here
    mult_in_delta: int         # multiplicity as a root in x
    mult_in_h: int
    kind: RootType

    @property
    def is_boundary(self) -> bool:
        return self.u_exact is not None and abs(self.u_exact) == 2

    @property
    def minimal_poly(self) -> IntPoly | None:
        """Minimal polynomial of alpha in x, when alpha has degree <= 2."""
        u0 = self.u_exact
        if u0 is None:
            return None
        if u0 == 2:
            return IntPoly([-1, 1])
        if u0 == -2:
            return IntPoly([1, 1])
        s, t = u0.numerator, u0.denominator
        return IntPoly([t, -s, t])

    @cached_property
    def alpha_degree(self) -> int:
        """[Q(alpha):Q]."""
        if self.u_exact is not None:
            return 1 if self.is_boundary else 2
        return 2 * _u_minimal_degree(self.u_factor, self.u_interval)

    def theta_interval(self, dps: int = 30) -> tuple[mpmath.mpf, mpmath.mpf]:
        """Isolating interval for theta = arccos(u/2) in [0, pi] (decreasing map)."""
        with mpmath.workdps(dps):
            lo, hi = self.u_interval
            return (mpmath.acos(mpmath.mpf(hi.numerator) / hi.denominator / 2),
                    mpmath.acos(mpmath.mpf(lo.numerator) / lo.denominator / 2))

    def refine_u(self, dps: int) -> mpmath.mpf:
        """The root u0 to dps digits."""
        if self.u_exact is not None:
            with mpmath.workdps(dps):
                return mpmath.mpf(self.u_exact.numerator) / self.u_exact.denominator
        return refine_simple_root(self.u_factor, self.u_interval, dps)

    def refine_theta(self, dps: int) -> mpmath.mpf:
        if self.u_exact == 2:
            return mpmath.mpf(0)
        if self.u_exact == -2:
            with mpmath.workdps(dps):
                return +mpmath.pi
        with mpmath.workdps(dps + 10):
            u0 = self.refine_u(dps + 10)
            return mpmath.acos(u0 / 2)


def _u_minimal_degree(f: IntPoly, interval) -> int:
    """Degree of the irreducible factor of f owning the isolated root."""
    import sympy

    u = sympy.Symbol("u")
    expr = sympy.Poly(list(reversed(f.coeffs)), u)
    lo, hi = interval
    for fac, _ in expr.factor_list()[1]:
        coeffs = [int(c) for c in reversed(fac.all_coeffs())]
        g = IntPoly(coeffs)
        if g.degree > 0 and Sturm(g).count(lo, hi) == 1:
            return g.degree
    raise AssertionError("isolated root not found in any factor")


def refine_simple_root(f: IntPoly, interval, dps: int) -> mpmath.mpf:
    """Safeguarded Newton iteration for a simple root of f inside interval."""
    lo_q, hi_q = interval
    df = f.derivative()
    with mpmath.workdps(dps + 10):
        lo = mpmath.mpf(lo_q.numerator) / lo_q.denominator
        hi = mpmath.mpf(hi_q.numerator) / hi_q.denominator
        slo = _sign(f(lo))
        x = (lo + hi) / 2
        tol = mpmath.mpf(10) ** (-(dps + 5))
        for _ in range(10 * dps + 200):
            fx = f(x)
            if fx == 0:
                break
            if _sign(fx) == slo:
                lo = x
            else:
                hi = x
            d = df(x)
            step_ok = False
            if d != 0:
                nx = x - fx / d
                if lo < nx < hi:
                    step_ok = True
                    if abs(nx - x) < tol:
                        x = nx
                        break
                    x = nx
            if not step_ok:
                x = (lo + hi) / 2
            if hi - lo < tol:
                break
    return +x


def isolate_toric_roots(T: UTransform) -> list[ToricRootRecord]:
    """All roots of T in [-2, 2], sorted by u, with exact multiplicity and type."""
    t = T.t_poly
    if t.is_zero:
        raise ValueError("zero transform")
    raw: list[_Root] = []
    for f, i in squarefree_decomposition(t):
        raw.extend(_isolate_component(f, i))
    _separate(raw, t)
    raw.sort(key=lambda r: r.lo)
    out = []
    for r in raw:
        x_mult = 2 * r.mult if (r.exact is not None and abs(r.exact) == 2) else r.mult
        kind = _classify(t, r)
        out.append(ToricRootRecord(
            u_interval=(r.lo, r.hi),
            u_exact=r.exact,
            u_factor=r.factor,
            mult_in_delta=x_mult,
            mult_in_h=x_mult // 2,
            kind=kind,
        ))
    return out


def _classify(t: IntPoly, r: _Root) -> RootType:
    if r.exact is not None and abs(r.exact) == 2:
        probe = r.lo if r.exact == 2 else r.hi
        return RootType.II_PLUS if t(probe) > 0 else RootType.II_MINUS
    if r.mult % 2:
        return RootType.I
    return RootType.II_PLUS if t(r.hi) > 0 else RootType.II_MINUS


def classify_type(T_delta: UTransform, root: ToricRootRecord) -> RootType:
    """Type of a toric root, from the sign of T on the root's isolating interval."""
    r = _Root(root.u_interval[0], root.u_interval[1], root.u_factor,
              root.mult_in_delta // 2 if root.is_boundary else root.mult_in_delta,
              root.u_exact)
    return _classify(T_delta.t_poly, r)


def toric_roots_of_h(split: DiscriminantSplit) -> list[ToricRootRecord]:
    """Unit-circle roots of h, found among those of delta = g*h^2."""
    return [r for r in isolate_toric_roots(u_transform(split.delta)) if r.mult_in_h >= 1]
