"""Mahler measures of a(x)(y^2+1) + b(x)y and of p(x)y + q(x).

Both reduce, by Jensen's formula in y, to one-dimensional integrals over
theta in [0, pi] (the integrands are even in theta). The integration
range is cut at every unit-circle zero of the relevant polynomials so
that each panel has a smooth interior and at worst log / sqrt endpoint
singularities, which the tanh-sinh rule absorbs.
"""

from __future__ import annotations

import math
from math import gcd
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from chinburg.arith import indices_with_phi_at_most
from chinburg.numerics.bigreal import BigReal, tol, working_dps
from chinburg.numerics.quadrature import tanh_sinh
from chinburg.polyz import (
    IntPoly, cyclotomic, poly_gcd, shifted_reciprocal_shift, squarefree_decomposition,
)
from chinburg.torus import isolate_toric_roots, u_transform


# ----------------------------------------------------------------------
# log|p(e^{i theta})| in factored form
# ----------------------------------------------------------------------

class CircleLog:
    """log|p(e^{i theta})| and m(p) for an integer polynomial p.

    Cyclotomic factors are evaluated root by root as |2 sin(theta/2 - pi j/n)|
    (gcd(j, n) = 1), everything else through its complex roots, so the value
    stays accurate next to unit-circle zeros. The Moebius form
    prod_{d | n} |2 sin(d theta/2)|^mu(n/d) is avoided on purpose: its
    removable 0/0 points destroy relative precision.
    """

    def __init__(self, p: IntPoly, dps: int):
        if p.is_zero:
            raise ValueError("log of the zero polynomial")
        self.dps = dps
        rest = p.shift(-p.ord0())
        cyclo: dict[int, int] = {}
        for n in indices_with_phi_at_most(max(rest.degree, 0)):
            phi = cyclotomic(n)
            if phi.degree > rest.degree:
                continue
            while phi.divides(rest):
                rest = rest.exact_div(phi)
                cyclo[n] = cyclo.get(n, 0) + 1
        self.cyclotomic_factors = tuple(sorted(cyclo.items()))
        self.rest = rest
        with mpmath.workdps(dps + 20):
            self.half_angles = tuple(
                (mpmath.pi * j / n, e)
                for n, e in self.cyclotomic_factors
                for j in range(1, n + 1) if gcd(j, n) == 1
            )
            self.log_lead = mpmath.log(abs(rest.lead))
            roots = []
            if rest.degree > 0:
                for f, mult in squarefree_decomposition(rest):
                    if f.degree <= 0:
                        continue
                    desc = list(reversed(f.coeffs))
                    if f.degree == 1:
                        rs = [mpmath.mpf(-f.coeffs[0]) / f.coeffs[1]]
                    else:
                        rs = mpmath.polyroots(desc, maxsteps=200 + 20 * f.degree,
                                              extraprec=4 * (dps + 20))
                    roots.extend((mpmath.mpc(r), mult) for r in rs)
            self.roots = tuple(roots)

    def mahler(self) -> mpmath.mpf:
        """m(p) = log|lead| + sum of log|root| over roots outside the unit disk."""
        with mpmath.workdps(self.dps + 10):
            acc = self.log_lead
            for r, mult in self.roots:
                a = abs(r)
                if a > 1:
                    acc += mult * mpmath.log(a)
            return +acc

    def __call__(self, theta):
        prod = mpmath.mpf(1)
        half = theta / 2
        for phi, e in self.half_angles:
            s = 2 * mpmath.sin(half - phi)
            prod *= s if e == 1 else s ** e
        prod = abs(prod)
        if prod == 0:
            return None
        acc = mpmath.log(prod) + self.log_lead
        if self.roots:
            z = mpmath.expj(theta)
            for r, mult in self.roots:
                dist = abs(z - r)
                if dist == 0:
                    return None
                acc += mult * mpmath.log(dist)
        return acc


class StableUEval:
    """T(2 cos theta) for an integer polynomial T, accurate near theta = 0 and pi.

    Near u = 2 we expand in w = 2 - u = 4 sin^2(theta/2), near u = -2 in
    w = u + 2 = 4 cos^2(theta/2); both w are computed without cancellation.
    """

    def __init__(self, t: IntPoly):
        self.near_plus = _compose_linear(t, 2, -1)
        self.near_minus = _compose_linear(t, -2, 1)

    def __call__(self, theta):
        if theta <= mpmath.pi / 2:
            w = 4 * mpmath.sin(theta / 2) ** 2
            return self.near_plus(w)
        w = 4 * mpmath.cos(theta / 2) ** 2
        return self.near_minus(w)


def _compose_linear(t: IntPoly, c0: int, c1: int) -> IntPoly:
    """t(c0 + c1*w) as a polynomial in w."""
    lin = IntPoly([c0, c1])
    out = IntPoly([])
    for c in reversed(t.coeffs):
        out = out * lin + c
    return out


# ----------------------------------------------------------------------
# panel plans
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Panel:
    theta_lo: mpmath.mpf
    theta_hi: mpmath.mpf
    active: bool            # integrand is nonzero on this panel
    lo_kind: str            # "end" | "root"
    hi_kind: str


@dataclass(frozen=True)
class QuadraturePlan:
    panels: tuple[Panel, ...]
    dps: int

    @property
    def active(self) -> tuple[Panel, ...]:
        return tuple(p for p in self.panels if p.active)


def build_plan(cut_poly: IntPoly, sign_poly: IntPoly, dps: int) -> QuadraturePlan:
    """Cut [0, pi] at the unit-circle zeros of cut_poly; a panel is active when
    sign_poly's u-transform is positive on it (decided by exact rational probes).

    cut_poly must be divisible by sign_poly's u-transform zero set, i.e. include it.
    """
    t_cut = u_transform(cut_poly).t_poly
    t_sign = u_transform(sign_poly).t_poly
    records = isolate_toric_roots(u_transform(cut_poly))
    # cuts in increasing u: (lo, hi, record or None)
    cuts: list[tuple[Fraction, Fraction, object]] = []
    if not (records and records[0].u_exact == -2):
        cuts.append((Fraction(-2), Fraction(-2), None))
    cuts.extend((r.u_interval[0], r.u_interval[1], r) for r in records)
    if not (records and records[-1].u_exact == 2):
        cuts.append((Fraction(2), Fraction(2), None))

    def theta_of(cut):
        lo, hi, rec = cut
        if rec is None:
            return mpmath.mpf(0) if lo == 2 else +mpmath.pi
        return rec.refine_theta(dps)

    with mpmath.workdps(dps):
        thetas = [theta_of(c) for c in cuts]
        panels = []
        for i in range(len(cuts) - 1):
            left, right = cuts[i], cuts[i + 1]
            a, b = left[1], right[0]
            probe = (a + b) / 2 if a < b else a
            val = t_sign(probe)
            if t_cut(probe) == 0:  # pragma: no cover - isolation guarantees a gap
                raise AssertionError("probe hit a root")
            # u increases while theta decreases
            panels.append(Panel(
                theta_lo=thetas[i + 1], theta_hi=thetas[i],
                active=val > 0,
                lo_kind="end" if right[2] is None else "root",
                hi_kind="end" if left[2] is None else "root",
            ))
        panels.reverse()
        return QuadraturePlan(tuple(panels), dps)


def _integrate_plan(plan: QuadraturePlan, integrand, digits: int, wp: int):
    active = plan.active
    total = mpmath.mpf(0)
    err = mpmath.mpf(0)
    if not active:
        return total, err
    per_panel = tol(digits + 8) / len(active)
    for panel in active:
        res = tanh_sinh(integrand, panel.theta_lo, panel.theta_hi, per_panel, wp)
        total += res.value
        err += res.err
    return total, err


def _precision(digits: int, panels: int) -> int:
    return working_dps(digits, int(2 * math.log10(max(panels, 1))) + 1)


def _reciprocal_pair(a: IntPoly, b: IntPoly) -> int:
    ra, rb = shifted_reciprocal_shift(a), shifted_reciprocal_shift(b)
    if (ra is None or rb is None or ra.sign != 1 or rb.sign != 1
            or ra.shift != rb.shift or ra.shift % 2):
        raise ValueError("a and b must be 2l-shifted reciprocal with a common shift")
    return ra.shift // 2


# ----------------------------------------------------------------------
# public measures
# ----------------------------------------------------------------------

@lru_cache(maxsize=256)
def mahler_quadratic(a: IntPoly, b: IntPoly, digits: int) -> BigReal:
    """m(a(x)(y^2 + 1) + b(x) y).

    For fixed x = e^{i theta} the two y-roots have product 1; when the
    normalized discriminant is <= 0 they both lie on the unit circle and
    contribute nothing, otherwise the larger one has modulus
    (|b~| + sqrt(Delta~)) / (2|a~|).
    """
    if a.is_zero or b.is_zero:
        raise ValueError("a and b must be nonzero")
    _reciprocal_pair(a, b)
    delta = b * b - a * a * 4
    if delta.is_zero:
        raise ValueError("discriminant vanishes identically")
    cut = delta * a
    probe_plan = build_plan(cut, delta, 30)
    wp = _precision(digits, len(probe_plan.panels))
    with mpmath.workdps(wp):
        plan = build_plan(cut, delta, wp)
        log_a = CircleLog(a, wp)
        log2 = mpmath.log(2)
        common = poly_gcd(a, b)
        if common.degree <= 0:
            B = StableUEval(u_transform(b).t_poly)
            D = StableUEval(u_transform(delta).t_poly)

            def integrand(theta):
                la = log_a(theta)
                if la is None:
                    return None
                d = D(theta)
                if d < 0:
                    d = mpmath.mpf(0)
                s = abs(B(theta)) + mpmath.sqrt(d)
                if s == 0:
                    return None
                return mpmath.log(s) - log2 - la
        else:
            # a, b, sqrt(delta) share the zeros of `common`; cancel |common| pointwise
            # so nothing is evaluated as a vanishing polynomial next to those zeros.
            # delta / common^2 is still even-shift reciprocal (sign +1), b / common need not be,
            # but it cannot vanish where delta / common^2 does.
            a1, b1 = a.exact_div(common), b.exact_div(common)
            log_a1 = CircleLog(a1, wp)
            b1_desc = list(reversed(b1.coeffs))
            D1 = StableUEval(u_transform(b1 * b1 - a1 * a1 * 4).t_poly)

            def integrand(theta):
                la = log_a1(theta)
                if la is None:
                    return None
                d = D1(theta)
                if d < 0:
                    d = mpmath.mpf(0)
                s = abs(mpmath.polyval(b1_desc, mpmath.expj(theta))) + mpmath.sqrt(d)
                if s == 0:
                    return None
                return mpmath.log(s) - log2 - la

        integral, err = _integrate_plan(plan, integrand, digits, wp)
        value = log_a.mahler() + integral / mpmath.pi
        err = err / mpmath.pi + tol(wp - 5)
        return BigReal(+value, err, digits)


@lru_cache(maxsize=256)
def mahler_linear(p: IntPoly, q: IntPoly, digits: int) -> BigReal:
    """m(p(x) y + q(x)) = m(p) + (1/pi) int_0^pi log+ |q/p|(e^{i theta}) d theta."""
    if p.is_zero or q.is_zero:
        raise ValueError("p and q must be nonzero")
    rp = p * p.reverse()
    rq = q * q.reverse()
    n = max(p.degree, q.degree)
    s = q * q.reverse() * IntPoly.x_power(n - q.degree) - p * p.reverse() * IntPoly.x_power(n - p.degree)
    wp0 = working_dps(digits)
    with mpmath.workdps(wp0):
        log_p0 = CircleLog(p, wp0)
        base = log_p0.mahler()
    if s.is_zero:
        return BigReal(+base, tol(wp0 - 5), digits)
    cut = s * rp * rq
    probe_plan = build_plan(cut, s, 30)
    wp = _precision(digits, len(probe_plan.panels))
    with mpmath.workdps(wp):
        plan = build_plan(cut, s, wp)
        log_p = CircleLog(p, wp)
        log_q = CircleLog(q, wp)

        def integrand(theta):
            lq = log_q(theta)
            lp = log_p(theta)
            if lq is None or lp is None:
                return None
            return lq - lp

        integral, err = _integrate_plan(plan, integrand, digits, wp)
        value = log_p.mahler() + integral / mpmath.pi
        err = err / mpmath.pi + tol(wp - 5)
        return BigReal(+value, err, digits)


def mahler_univariate(p: IntPoly, digits: int) -> BigReal:
    wp = working_dps(digits)
    with mpmath.workdps(wp):
        return BigReal(+CircleLog(p, wp).mahler(), tol(wp - 5), digits)
