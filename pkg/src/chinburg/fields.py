"""Quadratic-field bookkeeping for toric roots of degree <= 2.

Square classes of Q^x are represented by signed squarefree integers; the
multiquadratic field Q(sqrt(m_1), ..., sqrt(m_k)) is identified with the
subgroup of Q^x/Q^x2 generated by the m_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from chinburg.arith import squarefree_split
from chinburg.polyz import IntPoly
from chinburg.torus import ToricRootRecord


class Unsupported(Exception):
    """Raised for toric roots of degree > 2, which are outside the supported range."""


class SquarefreeKernel(NamedTuple):
    sign: int
    kernel: int
    square: Fraction

    @property
    def signed(self) -> int:
        return self.sign * self.kernel


def squarefree_kernel(q) -> SquarefreeKernel:
    """q = sign * kernel * square**2 with kernel a positive squarefree integer."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("squarefree kernel of 0")
    n, d = q.numerator, q.denominator
    kernel, root = squarefree_split(n * d)
    return SquarefreeKernel(1 if n > 0 else -1, kernel, Fraction(root, d))


def fundamental_conductor(d: int) -> int:
    """Conductor f of Q(sqrt(d)) for negative squarefree d, i.e. -f is its discriminant."""
    if d >= 0:
        raise ValueError("expected a negative squarefree integer")
    return -d if d % 4 == 1 else -4 * d


def is_fundamental_conductor(f: int) -> bool:
    """True when -f is a negative fundamental discriminant."""
    if f <= 0:
        return False
    if f % 4 == 3:
        return squarefree_split(f)[1] == 1
    if f % 4 == 0:
        m = f // 4
        return m % 4 in (1, 2) and squarefree_split(m)[1] == 1
    return False


@dataclass(frozen=True)
class QuadElement:
    """A + B*sqrt(d1) with d1 squarefree; B == 0 forces d1 == 1."""

    A: Fraction
    B: Fraction
    d1: int

    def __post_init__(self):
        if self.B == 0 and self.d1 != 1:
            object.__setattr__(self, "d1", 1)


def _alpha_coordinates(u0: Fraction) -> tuple[Fraction, int]:
    """alpha = u0/2 + s*sqrt(d1) for the root of x^2 - u0*x + 1 in the upper half plane."""
    ker = squarefree_kernel(u0 * u0 - 4)
    return ker.square / 2, ker.signed


def eval_g_at_quadratic(g: IntPoly, u0) -> QuadElement:
    """g(alpha) in the form A + B*sqrt(d1), alpha as above; needs |u0| < 2."""
    u0 = Fraction(u0)
    if abs(u0) >= 2:
        raise ValueError("u0 must lie strictly inside (-2, 2)")
    # powers of alpha as c0 + c1*alpha, reduced by alpha^2 = u0*alpha - 1
    c0, c1 = Fraction(0), Fraction(0)
    for coef in reversed(g.coeffs):
        c0, c1 = -c1 + coef, c0 + c1 * u0
    s, d1 = _alpha_coordinates(u0)
    return QuadElement(c0 + c1 * u0 / 2, c1 * s, d1)


class MultiquadraticResult(NamedTuple):
    ok: bool
    m1: int | None
    m2: int | None


def multiquadratic_test(e: QuadElement) -> MultiquadraticResult:
    """Does sqrt(A + B*sqrt(d1)) lie in a biquadratic field Q(sqrt(m1), sqrt(m2))?"""
    if e.A == 0 and e.B == 0:
        raise ValueError("zero element")
    if e.B == 0:
        m = squarefree_kernel(e.A).signed
        return MultiquadraticResult(True, m, m)
    norm = e.A * e.A - e.B * e.B * e.d1
    if norm < 0:
        return MultiquadraticResult(False, None, None)
    ker = squarefree_kernel(norm) if norm else None
    if ker is None or ker.kernel != 1:
        return MultiquadraticResult(False, None, None)
    N = ker.square
    return MultiquadraticResult(
        True,
        squarefree_kernel((e.A + N) / 2).signed,
        squarefree_kernel((e.A - N) / 2).signed,
    )


def _square_class_group(generators) -> set[int]:
    group = {1}
    for m in generators:
        group |= {squarefree_kernel(x * m).signed for x in group}
    return group


def conductors_of_group(generators) -> frozenset[int]:
    """Conductors of the imaginary quadratic subfields of Q(sqrt(m) : m in generators)."""
    return frozenset(fundamental_conductor(m) for m in _square_class_group(generators) if m < 0)


class MultiquadraticFailure(Exception):
    """sqrt(g(alpha)) does not lie in a multiquadratic field."""


def conductor_set(alpha: ToricRootRecord, g: IntPoly) -> frozenset[int]:
    """F_alpha for the minimal field Q(alpha, sqrt(g(alpha))).

    Raises Unsupported for alpha of degree > 2 and MultiquadraticFailure when
    sqrt(g(alpha)) generates a non-multiquadratic extension.
    """
    u0 = alpha.u_exact
    if u0 is None:
        raise Unsupported(f"toric root of degree {alpha.alpha_degree} > 2")
    if abs(u0) == 2:
        value = g(int(u0) // 2)
        assert value != 0, "g vanishes at a root of h"
        return conductors_of_group([squarefree_kernel(value).signed])
    e = eval_g_at_quadratic(g, u0)
    assert e.A != 0 or e.B != 0, "g vanishes at a root of h"
    res = multiquadratic_test(e)
    if not res.ok:
        raise MultiquadraticFailure(f"sqrt({e.A} + {e.B}*sqrt({e.d1})) is not multiquadratic")
    _, d1 = _alpha_coordinates(u0)
    return conductors_of_group([d1, res.m1, res.m2])
