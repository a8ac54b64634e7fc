"""Newman polynomials and the rational approximants built from them.

N_r(x) = prod_{i=1}^{r-1} (x + a^i) with a = exp(-1/sqrt(r)) achieves the
exp(-sqrt(r)) approximation rate for |x| on [-1, 1] via

    A_r(x) = x * (N_r(x) - N_r(-x)) / (N_r(x) + N_r(-x)),

and the ReLU follows from (x + |x|)/2.  All rationals here are carried in
factored form: the expanded coefficients of N_r are catastrophically
ill-conditioned, while the factored ratio is stable for any r.  Expansion
to coefficients (needed for collapse and term-count audits) is available
through RationalFn.expand for degree <= 64 only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .algebra import FactoredSum, FactoredUniPoly, RationalFn
from .errors import PreconditionError
from .numcore import Interval


@dataclass(frozen=True)
class NewmanParams:
    """Derived constants for degree r and half-width b."""

    r: int
    b: float = 1.0

    def __post_init__(self):
        if self.r < 5:
            raise PreconditionError(f"Newman construction needs r >= 5, got {self.r}")
        if self.b < 1:
            raise PreconditionError(f"half-width b must be >= 1, got {self.b}")

    @property
    def alpha(self) -> float:
        return math.exp(-1.0 / math.sqrt(self.r))

    @property
    def eps_rb(self) -> float:
        return 1.5 * math.exp(-math.sqrt(self.r))


def newman_poly(r: int) -> FactoredUniPoly:
    """N_r in factored form: roots -a^i for i = 1..r-1, unit scale."""
    a = NewmanParams(r).alpha
    return FactoredUniPoly(1.0, [-(a ** i) for i in range(1, r)])


def _mirrored(r: int, b: float = 1.0) -> tuple[FactoredUniPoly, FactoredUniPoly]:
    """x -> N_r(x/b) and x -> N_r(-x/b), both as factored polynomials in x."""
    a = NewmanParams(r, b).alpha
    scale = b ** (-(r - 1))
    pos = FactoredUniPoly(scale, [-(b * a ** i) for i in range(1, r)])
    neg = FactoredUniPoly(scale * (-1.0) ** (r - 1), [b * a ** i for i in range(1, r)])
    return pos, neg


def newman_abs(r: int) -> RationalFn:
    """Rational approximant of |x| on [-1, 1], accurate to 3 exp(-sqrt(r)).

    The denominator N_r(x) + N_r(-x) is strictly positive on all of R, so
    the function is defined everywhere.
    """
    npos, nneg = _mirrored(r)
    x = FactoredUniPoly(1.0, [0.0])
    num = FactoredSum([(1.0, (x, npos)), (-1.0, (x, nneg))])
    den = FactoredSum([(1.0, (npos,)), (1.0, (nneg,))])
    return RationalFn(num, den, (Interval(-1.0, 1.0),))


class ReluApproximants(NamedTuple):
    tilde: RationalFn
    clipped: RationalFn


def newman_relu(r: int, b: float = 1.0) -> ReluApproximants:
    """Degree-r rational approximants of the ReLU on [-b, b].

    ``tilde`` is (x + b A_r(x/b))/2, within b*eps of the ReLU;
    ``clipped`` recenters it to (1 - 2 eps) tilde + b eps, within 3 b eps
    and with range inside [0, b] on [-b, b], eps = 1.5 exp(-sqrt(r)).
    """
    params = NewmanParams(r, b)
    eps = params.eps_rb
    if eps > 0.5:
        raise PreconditionError(
            f"clipped form needs eps_rb <= 1/2; r={r} gives eps_rb={eps}")
    npos, nneg = _mirrored(r, b)
    x = FactoredUniPoly(1.0, [0.0])
    dom = (Interval(-b, b),)
    # (x + b A_r(x/b))/2 simplifies to x N_r(x/b) / (N_r(x/b) + N_r(-x/b))
    den = FactoredSum([(1.0, (npos,)), (1.0, (nneg,))])
    tilde = RationalFn(FactoredSum([(1.0, (x, npos))]), den, dom)
    clipped_num = FactoredSum([
        (1.0 - 2.0 * eps, (x, npos)),
        (b * eps, (npos,)),
        (b * eps, (nneg,)),
    ])
    clipped = RationalFn(clipped_num, den, dom)
    return ReluApproximants(tilde=tilde, clipped=clipped)


def newman_threshold(r: int) -> RationalFn:
    """N_r(x) / (N_r(x) + N_r(-x)): a rational step-function approximant.

    Takes the value exactly 1/2 at x = 0 and converges to the unit step
    away from the origin.
    """
    npos, nneg = _mirrored(r)
    num = FactoredSum([(1.0, (npos,))])
    den = FactoredSum([(1.0, (npos,)), (1.0, (nneg,))])
    return RationalFn(num, den, (Interval(-1.0, 1.0),))


def required_degree(eps: float, b: float = 1.0, clipped: bool = True) -> int:
    """Smallest r >= 5 whose ReLU approximant meets the eps bound on [-b, b].

    The clipped form carries the bound (9b/2) exp(-sqrt(r)); with
    ``clipped=False`` the tilde-form constant (3b/2) is used instead.  The
    closed-form seed max(5, ceil(ln(C/eps)^2)) is adjusted by direct
    inequality checks so the result is exactly minimal.
    """
    if not 0 < eps <= 1:
        raise PreconditionError(f"eps must lie in (0, 1], got {eps}")
    if b < 1:
        raise PreconditionError(f"b must be >= 1, got {b}")
    const = 4.5 * b if clipped else 1.5 * b

    def ok(r):
        return const * math.exp(-math.sqrt(r)) <= eps

    r = max(5, math.ceil(math.log(const / eps) ** 2)) if const > eps else 5
    while not ok(r):
        r += 1
    while r > 5 and ok(r - 1):
        r -= 1
    return r
