from chinburg.numerics.bigreal import BigReal
from chinburg.numerics.mahler import (
    CircleLog,
    QuadraturePlan,
    build_plan,
    mahler_linear,
    mahler_quadratic,
    mahler_univariate,
)
from chinburg.numerics.quadrature import QuadratureError, tanh_sinh
from chinburg.numerics.special import (
    InconsistencyError,
    bloch_wigner,
    cassaigne_maillot,
    clausen,
    d_value,
    d_value_routes,
    hurwitz_zeta2,
    kronecker,
    kronecker_chi,
    l_prime_minus1,
    li2,
    verify_thm41,
)

__all__ = [
    "BigReal", "CircleLog", "InconsistencyError", "QuadratureError", "QuadraturePlan",
    "bloch_wigner", "build_plan", "cassaigne_maillot", "clausen", "d_value", "d_value_routes",
    "hurwitz_zeta2", "kronecker", "kronecker_chi", "l_prime_minus1", "li2",
    "mahler_linear", "mahler_quadratic", "mahler_univariate", "tanh_sinh", "verify_thm41",
]
