"""Associated special functions and their second-order operator.

For a family polynomial P_ell of degree ell and 0 <= m <= ell, the
associated special function is

    F_{ell,m}(s) = kappa(s)^m  d^m/ds^m P_ell(s),      kappa = sqrt(sigma),

and it satisfies H_m F_{ell,m} = lambda_ell F_{ell,m} with the operator

    H_m = -sigma d^2/ds^2 - tau d/ds
          + m(m-2)/4 (sigma')^2/sigma + m tau sigma'/(2 sigma)
          - m(m-2)/2 sigma'' - m tau'.

The multiplication part has a genuine pole where sigma vanishes (the
interval endpoints); evaluating there raises SingularPoint.  For each
fixed m the functions with different ell are orthogonal under the
weighted scalar product <f, g> = integral f g rho ds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import (
    DegreeBeyondCutoff, OrderExceedsDegree, SingularPoint,
)
from .expr import Expr, add, evaluate, mul, pow_, simplify
from .families import FamilySpec, cutoff, eigenvalue, weight
from .oracle import integrate
from .polynomials import Poly, phi

__all__ = [
    "SpecialFunction", "HmOperator", "special_function", "hm_operator",
    "multiplication_part", "apply_hm", "scalar_product",
]


@dataclass(frozen=True)
class SpecialFunction:
    """F_{ell,m}(s) = kappa^m(s) * poly_part(s) with poly_part the m-th
    derivative of the degree-ell family polynomial."""

    family: FamilySpec
    ell: int
    m: int
    poly_part: Poly

    def __call__(self, s):
        return self.family.sigma(s) ** (self.m / 2.0) * self.poly_part(s)

    @property
    def expr(self) -> Expr:
        return simplify(mul(
            pow_(self.family.sigma_expr, Fraction(self.m, 2)),
            self.poly_part.to_expr()))

    @property
    def eigenvalue(self) -> float:
        return eigenvalue(self.family, self.ell)


def special_function(family: FamilySpec, ell: int, m: int) -> SpecialFunction:
    if not 0 <= m:
        raise ValueError("m must be a nonnegative integer")
    if m > ell:
        raise OrderExceedsDegree(f"m={m} exceeds ell={ell}")
    cap = cutoff(family)
    if ell >= cap.lambda_cap:
        raise DegreeBeyondCutoff(
            f"ell={ell} is beyond the cutoff Lambda={cap.lambda_cap:g}")
    return SpecialFunction(family, ell, m, phi(family, ell).deriv(m))


def multiplication_part(family: FamilySpec, m: int) -> Expr:
    """The zeroth-order coefficient of H_m; identically zero at m = 0."""
    sig = family.sigma_expr
    dsig = simplify(sig.diff())
    a = family.sigma_coeffs[0]
    return simplify(add(
        mul(Fraction(m * (m - 2), 4), pow_(dsig, 2), pow_(sig, -1)),
        mul(Fraction(m, 2), family.tau_expr, dsig, pow_(sig, -1)),
        mul(-m * (m - 2), a),          # -(1/2) m (m-2) sigma'' with sigma''=2a
        mul(-m, family.alpha),         # -m tau'
    ))


@dataclass(frozen=True)
class HmOperator:
    """H_m f = -sigma f'' - tau f' + (multiplication part) f."""

    family: FamilySpec
    m: int
    mult: Expr

    def coefficient_exprs(self):
        """(second-derivative, first-derivative, multiplication) coefficients."""
        return (mul(-1, self.family.sigma_expr),
                mul(-1, self.family.tau_expr),
                self.mult)


def hm_operator(family: FamilySpec, m: int) -> HmOperator:
    return HmOperator(family, m, multiplication_part(family, m))


@lru_cache(maxsize=512)
def _expr_triple(e: Expr):
    d1 = simplify(e.diff())
    d2 = simplify(d1.diff())
    return e, d1, d2


def _as_derivative_triple(f):
    """(f, f', f'') evaluators from an Expr, SpecialFunction, or triple."""
    if isinstance(f, SpecialFunction):
        f = f.expr
    if isinstance(f, Expr):
        e0, e1, e2 = _expr_triple(f)
        return (lambda s: evaluate(e0, s),
                lambda s: evaluate(e1, s),
                lambda s: evaluate(e2, s))
    f0, f1, f2 = f
    return f0, f1, f2


def apply_hm(op: HmOperator, f, s):
    """Evaluate (H_m f)(s); derivatives of f are analytic, never finite
    differences.  f may be an Expr, a SpecialFunction, or a triple of
    callables (f, f', f''); s may be a scalar or an array."""
    if np.any(np.asarray(op.family.sigma(s)) == 0.0):
        raise SingularPoint(f"sigma vanishes at s={s}")
    f0, f1, f2 = _as_derivative_triple(f)
    mult = evaluate(op.mult, s) if op.m else 0.0
    return (-op.family.sigma(s) * f2(s) - op.family.tau(s) * f1(s)
            + mult * f0(s))


def scalar_product(family: FamilySpec, f, g, tol: float = 1e-9):
    """<f, g> = integral of f g rho over the family interval.

    f and g may be Exprs, SpecialFunctions, or plain callables; raises
    QuadratureNoConverge when the adaptive error estimate cannot be
    brought below tol.
    """
    rho = weight(family)

    def as_callable(u):
        if isinstance(u, SpecialFunction):
            return u
        if isinstance(u, Expr):
            return lambda s: evaluate(u, s)
        return u

    fc, gc = as_callable(f), as_callable(g)
    integrand = lambda s: fc(s) * gc(s) * evaluate(rho, s)
    return integrate(integrand, family.interval, tol).value
