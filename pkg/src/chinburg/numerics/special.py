"""Kronecker characters, Clausen / Bloch-Wigner dilogarithms and d_f = L'(chi_-f, -1)."""

from __future__ import annotations

from functools import lru_cache

import mpmath

from chinburg.fields import is_fundamental_conductor
from chinburg.numerics.bigreal import BigReal, tol, working_dps


class InconsistencyError(RuntimeError):
    """Two independent evaluations of the same quantity disagree."""


# ----------------------------------------------------------------------
# characters
# ----------------------------------------------------------------------

def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a | n)."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a | n), n odd positive
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker_chi(f: int, u: int) -> int:
    """chi_{-f}(u) = (-f | u) for -f a negative fundamental discriminant."""
    if not is_fundamental_conductor(f):
        raise ValueError(f"-{f} is not a fundamental discriminant")
    return kronecker(-f, u)


def suggest_conductor(f: int) -> int | None:
    """Nearest sensible fundamental conductor for a user-supplied f (4f when f = 1, 2 mod 4)."""
    if f > 0 and not is_fundamental_conductor(f) and is_fundamental_conductor(4 * f):
        return 4 * f
    return None


# ----------------------------------------------------------------------
# Clausen function
# ----------------------------------------------------------------------

@lru_cache(maxsize=32)
def _clausen_coefficients(dps: int) -> tuple:
    """c_k = |B_2k| / (2k (2k+1) (2k)!) (2pi)^2k, with enough terms for dps digits at theta <= pi."""
    with mpmath.workdps(dps + 10):
        out = []
        eps = mpmath.mpf(10) ** (-(dps + 5))
        two_pi_sq = (2 * mpmath.pi) ** 2
        k = 1
        scale = mpmath.mpf(1)
        while True:
            b = abs(mpmath.bernoulli(2 * k))
            scale *= two_pi_sq
            c = b / (2 * k * (2 * k + 1) * mpmath.factorial(2 * k))
            out.append(c)
            # at theta = pi the term is c * pi^(2k+1)
            if c * mpmath.pi ** (2 * k + 1) < eps:
                break
            k += 1
        return tuple(out)


def clausen(theta, digits: int) -> BigReal:
    """Cl_2(theta) = sum sin(n theta)/n^2 via the expansion around theta = 0."""
    wp = working_dps(digits)
    with mpmath.workdps(wp):
        t = mpmath.mpf(theta)
        two_pi = 2 * mpmath.pi
        t = t - two_pi * mpmath.floor(t / two_pi)      # [0, 2pi)
        sign = 1
        if t > mpmath.pi:
            t = two_pi - t
            sign = -1
        if t == 0:
            return BigReal(mpmath.mpf(0), mpmath.mpf(0), digits)
        val, err = _clausen_reduced(t, wp)
        return BigReal(sign * val, err, digits)


def _clausen_reduced(t, wp):
    """Cl_2 on (0, pi]."""
    coeffs = _clausen_coefficients(wp)
    t2 = t * t
    acc = mpmath.mpf(0)
    power = t
    last = mpmath.mpf(0)
    for c in coeffs:
        power *= t2
        last = c * power
        acc += last
    err = 2 * abs(last) + mpmath.mpf(10) ** (-(wp - 2))
    return t - t * mpmath.log(t) + acc, err


def clausen_value(theta) -> mpmath.mpf:
    """Cl_2 at the ambient mpmath precision (no error bookkeeping)."""
    with mpmath.workdps(mpmath.mp.dps + 5):
        t = mpmath.mpf(theta)
        two_pi = 2 * mpmath.pi
        t = t - two_pi * mpmath.floor(t / two_pi)
        sign = 1
        if t > mpmath.pi:
            t = two_pi - t
            sign = -1
        if t == 0:
            return mpmath.mpf(0)
        val, _ = _clausen_reduced(t, mpmath.mp.dps)
    return +(sign * val)


# ----------------------------------------------------------------------
# dilogarithm and Bloch-Wigner function
# ----------------------------------------------------------------------

def _li2_series(w):
    """Li_2(w) = sum B_n L^(n+1)/(n+1)!, L = -log(1-w); needs |L| < 2pi."""
    L = -mpmath.log(1 - w)
    eps = mpmath.mpf(10) ** (-(mpmath.mp.dps + 3))
    acc = L - L * L / 4          # B_0 = 1, B_1 = -1/2
    L2 = L * L
    power = L
    fact = mpmath.mpf(1)
    k = 1
    while True:
        power *= L2
        fact *= (2 * k) * (2 * k + 1)
        term = mpmath.bernoulli(2 * k) * power / fact
        acc += term
        if abs(term) < eps * max(1, abs(acc)):
            break
        k += 1
    return acc


def li2(z):
    """Principal-branch dilogarithm via series and the inversion/reflection formulas."""
    z = mpmath.mpmathify(z)
    if z == 0:
        return mpmath.mpf(0)
    if z == 1:
        return mpmath.pi ** 2 / 6
    if abs(z) <= 0.5:
        acc, power, n = mpmath.mpc(0), mpmath.mpc(1), 1
        eps = mpmath.mpf(10) ** (-(mpmath.mp.dps + 3))
        while True:
            power *= z
            term = power / (n * n)
            acc += term
            if abs(term) < eps:
                break
            n += 1
        return acc
    if abs(z) > 1:
        # Li2(z) = -Li2(1/z) - pi^2/6 - log(-z)^2 / 2
        return -li2(1 / z) - mpmath.pi ** 2 / 6 - mpmath.log(-z) ** 2 / 2
    if mpmath.re(z) > 0.5:
        # Li2(z) = pi^2/6 - log(z) log(1-z) - Li2(1-z)
        return mpmath.pi ** 2 / 6 - mpmath.log(z) * mpmath.log(1 - z) - li2(1 - z)
    return _li2_series(z)


def bloch_wigner(z) -> mpmath.mpf:
    """D(z) = Im Li_2(z) + arg(1 - z) log|z|, at the ambient precision."""
    z = mpmath.mpc(z)
    if z == 0 or z == 1:
        return mpmath.mpf(0)
    if mpmath.im(z) == 0:
        return mpmath.mpf(0)
    if abs(abs(z) - 1) == 0:
        return clausen_value(mpmath.arg(z))
    # six-fold symmetry: D(z) = D(1-1/z) = D(1/(1-z)) = -D(1/z) = -D(1-z) = -D(z/(z-1))
    candidates = (
        (z, 1), (1 - 1 / z, 1), (1 / (1 - z), 1),
        (1 / z, -1), (1 - z, -1), (z / (z - 1), -1),
    )
    for w, s in candidates:
        if abs(w) <= 1 and mpmath.re(w) <= 0.5:
            break
    else:  # pragma: no cover - one of the six always qualifies
        raise AssertionError("no reduced representative")
    val = mpmath.im(_li2_series(w)) + mpmath.arg(1 - w) * mpmath.log(abs(w))
    return s * val


# ----------------------------------------------------------------------
# Hurwitz zeta at s = 2 and d_f
# ----------------------------------------------------------------------

def hurwitz_zeta2(a, dps: int | None = None):
    """zeta(2, a) for a > 0 by Euler-Maclaurin. Returns (value, error bound)."""
    dps = dps or mpmath.mp.dps
    with mpmath.workdps(dps + 10):
        a = mpmath.mpf(a)
        eps = mpmath.mpf(10) ** (-(dps + 5))
        n_terms = int(0.4 * dps) + 10
        acc = mpmath.fsum((k + a) ** -2 for k in range(n_terms))
        x = n_terms + a
        acc += 1 / x + 1 / (2 * x * x)
        x2 = x * x
        power = 1 / (x2 * x)
        j = 1
        while True:
            term = mpmath.bernoulli(2 * j) * power
            if abs(term) < eps:
                err = abs(term)
                break
            acc += term
            power /= x2
            j += 1
        return +acc, err


def _route_clausen(f: int, wp: int):
    """d_f = (f / 2pi) sum_{0<u<f/2} chi(u) Cl_2(2 pi u / f)."""
    with mpmath.workdps(wp):
        total = mpmath.mpf(0)
        err = mpmath.mpf(0)
        for u in range(1, (f + 1) // 2):
            c = kronecker(-f, u)
            if c == 0:
                continue
            theta = 2 * mpmath.pi * u / f
            val, e = _clausen_reduced(theta, wp)
            total += c * val
            err += e
        scale = f / (2 * mpmath.pi)
        return total * scale, err * scale


def _route_hurwitz(f: int, wp: int):
    """d_f = f^(3/2) L(chi, 2) / (4 pi), L(chi, 2) = f^-2 sum chi(u) zeta(2, u/f)."""
    with mpmath.workdps(wp):
        total = mpmath.mpf(0)
        err = mpmath.mpf(0)
        for u in range(1, f):
            c = kronecker(-f, u)
            if c == 0:
                continue
            val, e = hurwitz_zeta2(mpmath.mpf(u) / f, wp)
            total += c * val
            err += e
        scale = mpmath.sqrt(f) / (4 * mpmath.pi * f)
        return total * scale, err * scale


@lru_cache(maxsize=512)
def l_prime_minus1(f: int, digits: int) -> BigReal:
    """d_f = L'(chi_-f, -1), computed by two independent routes that must agree."""
    if not is_fundamental_conductor(f):
        raise ValueError(f"-{f} is not a fundamental discriminant")
    wp = working_dps(digits)
    with mpmath.workdps(wp):
        v1, e1 = _route_clausen(f, wp)
        v2, e2 = _route_hurwitz(f, wp)
        slack = e1 + e2 + tol(wp - 5)
        if abs(v1 - v2) > slack:
            raise InconsistencyError(
                f"d_{f}: Clausen route {mpmath.nstr(v1, 20)} vs Hurwitz route "
                f"{mpmath.nstr(v2, 20)} differ by {mpmath.nstr(abs(v1 - v2), 5)}"
            )
        return BigReal(v1, max(e1, abs(v1 - v2)) + tol(wp - 5), digits)


def d_value_routes(f: int, digits: int) -> tuple[BigReal, BigReal]:
    """d_f by the Clausen route and by the Hurwitz-zeta route, separately."""
    if not is_fundamental_conductor(f):
        raise ValueError(f"-{f} is not a fundamental discriminant")
    wp = working_dps(digits)
    with mpmath.workdps(wp):
        v1, e1 = _route_clausen(f, wp)
        v2, e2 = _route_hurwitz(f, wp)
    return BigReal(v1, e1, digits), BigReal(v2, e2, digits)


def d_value(f: int, digits: int) -> mpmath.mpf:
    return l_prime_minus1(f, digits).value


# ----------------------------------------------------------------------
# Cassaigne-Maillot and the sine-product identity
# ----------------------------------------------------------------------

def cassaigne_maillot(a_len, b_len, c_len, digits: int) -> BigReal:
    """m(ax + by + c) for |a|, |b|, |c| the sides of a non-degenerate triangle."""
    wp = working_dps(digits)
    with mpmath.workdps(wp):
        A, B, C = (mpmath.mpf(v) for v in (a_len, b_len, c_len))
        if min(A, B, C) <= 0 or A >= B + C or B >= A + C or C >= A + B:
            raise ValueError("side lengths do not form a non-degenerate triangle")
        s = (A + B + C) / 2
        slack = min(s - A, s - B, s - C)
        if slack < tol(wp // 2):
            raise ValueError("triangle too close to degenerate for the requested precision")
        alpha = _opposite_angle(A, B, C, s)
        beta = _opposite_angle(B, A, C, s)
        gamma = mpmath.pi - alpha - beta
        d = bloch_wigner(B / A * mpmath.expjpi(gamma / mpmath.pi))
        val = (alpha * mpmath.log(A) + beta * mpmath.log(B) + gamma * mpmath.log(C) + d) / mpmath.pi
        err = tol(wp - 5) / slack
        return BigReal(val, err, digits)


def _opposite_angle(x, y, z, s):
    """Angle opposite side x, by the half-angle formula (stable near degeneracy)."""
    return 2 * mpmath.atan(mpmath.sqrt((s - y) * (s - z) / (s * (s - x))))


def verify_thm41(f: int, digits: int) -> dict:
    """Check log(alpha_f) + f sum chi(u) G(u) == 2 d_f, G(u) = m(x + y + 2 sin(pi u/f))."""
    if not is_fundamental_conductor(f):
        raise ValueError(f"-{f} is not a fundamental discriminant")
    wp = working_dps(digits)
    with mpmath.workdps(wp):
        log_alpha = mpmath.mpf(0)
        g_sum = mpmath.mpf(0)
        err = mpmath.mpf(0)
        for u in range(1, (f + 1) // 2):
            c = kronecker(-f, u)
            if c == 0:
                continue
            side = 2 * mpmath.sin(mpmath.pi * u / f)
            log_alpha += -2 * c * u * mpmath.log(side)
            G = cassaigne_maillot(1, 1, side, wp)
            g_sum += c * G.value
            err += G.err
        lhs = log_alpha + f * g_sum
        rhs = 2 * l_prime_minus1(f, digits).value
        ok = abs(lhs - rhs) < tol(digits - 10)
        return {"f": f, "lhs": lhs, "rhs": rhs, "diff": abs(lhs - rhs), "ok": bool(ok)}
