"""Generator of new explicitly solvable Schrodinger-type systems.

Pipeline, in order:

1. eliminate_first_derivative: gauge away the B d/dr term of
   [A d^2/dr^2 + B d/dr + C] psi = 0 with h = exp(integral B/(2A)),
   leaving [d^2/dr^2 + Q] (h psi) = 0,
   Q = (4AC - 2AB' + 2BA' - B^2)/(4A^2).

2. decompose: write the oscillator-family Schrodinger equation as
   [-d^2/dx^2 + C1*I1(x) + Cm1*Im1(x) + C0] Psi = 0 with I1 = x^2,
   Im1 = x, C1 = alpha^2/4, Cm1 = alpha*beta/2,
   C0 = beta^2/4 + alpha/2 - alpha*m + alpha*ell.

3. substitute: apply r -> x(r) with x'(r) = 1/sqrt(I(x(r))) for the
   term of index -k (the index k names the term that SURVIVES in the
   transformed potential: k=+1 gives the cube-root map
   x = (3r/2)^(2/3) and correction -5/(36 r^2); k=-1 gives x = sqrt(2r)
   and correction -3/(16 r^2)).  The transformed function
   (I(x(r)))^(1/4) Psi(x(r)) solves -u'' + W(r) u = E u with
   E = -(coefficient of the map-defining term).

4. solve_params_*: invert the parameter identifications to produce
   closed-form eigenpairs of the two target potentials

     c1 (3r/2)^(2/3) + c2 (2/(3r))^(2/3) - 5/(36 r^2)      (cube root)
     c1 / sqrt(2r)   + c2 / (2r)         - 3/(16 r^2)      (square root)

   via explicit square roots (first case) or a real cubic in alpha
   solved by Cardano with a Newton polish (second case, E = -alpha^2/4).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    Inadmissible, MapNotClosedForm, NoAdmissibleRoot, NonIntegrableGauge,
    Unimplemented,
)
from .expr import (
    VAR, Const, Expr, add, as_fraction, compose, differentiate, evaluate,
    exp_, fun_, mul, pow_, power_terms, simplify,
)
from .families import FamilySpec, SigmaCase
from .polynomials import hermite_poly
from .schrodinger import wavefunction

__all__ = [
    "SecondOrderODE", "EliminationResult", "TermDecomposition",
    "SubstitutionMap", "SubstitutionResult", "GeneratedSystem",
    "ClosedFormEigenpair", "Provenance",
    "eliminate_first_derivative", "decompose", "substitute",
    "transformed_system", "solve_params_quantsys",
    "solve_params_inverse_sqrt", "reproduce_dw", "boundary_ratio",
]

INF = math.inf


@dataclass(frozen=True)
class SecondOrderODE:
    """[A(r) d^2/dr^2 + B(r) d/dr + C(r)] psi = 0 with A nonvanishing."""

    a: Expr
    b: Expr
    c: Expr
    interval: tuple = (0.0, INF)


@dataclass(frozen=True)
class EliminationResult:
    gauge: Expr                 # h(r) = exp(integral B/(2A))
    normalized_potential: Expr  # Q(r); [d^2/dr^2 + Q](h psi) = 0


def antiderivative_of_powers(e: Expr):
    """Closed-form antiderivative of a sum of constant multiples of
    rational powers of the variable (the 1/r term integrates to log r);
    None when e is not of that shape."""
    terms = power_terms(e)
    if terms is None:
        return None
    parts = []
    for q, c in terms.items():
        if c == 0.0:
            continue
        if q == -1:
            parts.append(mul(c, fun_("log", VAR)))
        else:
            parts.append(mul(c / float(q + 1), pow_(VAR, q + 1)))
    return add(*parts) if parts else Const(0.0)


def eliminate_first_derivative(ode: SecondOrderODE,
                               antiderivative: Expr | None = None
                               ) -> EliminationResult:
    """Remove the first-order term by the gauge factor h = exp(int B/2A).

    The integral is found symbolically for B/(2A) a sum of rational
    powers of r; for anything else the caller must supply the
    antiderivative or NonIntegrableGauge is raised.
    """
    g = simplify(mul(ode.b, pow_(mul(2, ode.a), -1)))
    primitive = antiderivative if antiderivative is not None \
        else antiderivative_of_powers(g)
    if primitive is None:
        raise NonIntegrableGauge(
            "no closed-form antiderivative for B/(2A); supply one")
    gauge = simplify(exp_(primitive))
    da = differentiate(ode.a)
    db = differentiate(ode.b)
    q = simplify(mul(
        add(mul(4, ode.a, ode.c), mul(-2, ode.a, db), mul(2, ode.b, da),
            mul(-1, pow_(ode.b, 2))),
        pow_(mul(4, pow_(ode.a, 2)), -1)))
    return EliminationResult(gauge, q)


@dataclass(frozen=True)
class TermDecomposition:
    """C1*I1(x) + Cm1*Im1(x) + C0(ell); x is the variable of i_plus/i_minus."""

    i_plus: Expr            # I_{+1}(x)
    i_minus: Expr           # I_{-1}(x)
    c_plus: float           # C_{+1}(alpha, beta, m)
    c_minus: float          # C_{-1}(alpha, beta, m)
    c_zero: object          # ell -> C_0(alpha, beta, m, ell)
    alpha: float | None = None
    beta: float | None = None
    m: int | None = None

    def term(self, k: int):
        if k == 1:
            return self.c_plus, self.i_plus
        if k == -1:
            return self.c_minus, self.i_minus
        raise ValueError("k must be +1 or -1")

    def reassemble(self, ell: int) -> Expr:
        """The potential-minus-eigenvalue this decomposition encodes."""
        return simplify(add(mul(self.c_plus, self.i_plus),
                            mul(self.c_minus, self.i_minus),
                            self.c_zero(ell)))


def decompose(family: FamilySpec, m: int) -> TermDecomposition:
    """Term decomposition of the family's Schrodinger equation.

    Shipped for the constant-sigma (oscillator) case; the other five
    families would need their own I/C tables.
    """
    if family.sigma_case is not SigmaCase.ONE:
        raise Unimplemented(
            "term decomposition is only shipped for the sigma = 1 case")
    al, be = family.alpha, family.beta
    return TermDecomposition(
        i_plus=pow_(VAR, 2),
        i_minus=VAR,
        c_plus=al * al / 4.0,
        c_minus=al * be / 2.0,
        c_zero=lambda ell: be * be / 4.0 + al / 2.0 - al * m + al * ell,
        alpha=al, beta=be, m=m)


@dataclass(frozen=True)
class SubstitutionMap:
    """r -> x(r) with x'(r) = 1/sqrt(I(x(r))) for the map-defining term."""

    k: int                  # index of the SURVIVING term
    x_of_r: Expr
    source: tuple
    target: tuple
    i_map: Expr             # I_{-k}, the map-defining term


def _solve_monomial_map(i_map: Expr) -> Expr:
    """Closed-form x(r) solving x' = 1/sqrt(i_map(x)) for i_map = x^p."""
    terms = power_terms(i_map)
    if terms is None:
        raise MapNotClosedForm(f"cannot solve x' = 1/sqrt(I) for I = {i_map}")
    live = {q: c for q, c in terms.items() if c != 0.0}
    if len(live) != 1:
        raise MapNotClosedForm("map-defining term must be a single monomial")
    (p, c), = live.items()
    if c != 1.0 or p == -2:
        raise MapNotClosedForm(
            "map solvable only for a monic monomial with exponent != -2")
    # x^{p/2} dx = dr  =>  x = (((p+2)/2) r)^{2/(p+2)}
    scale = as_fraction(p + 2) / 2
    return pow_(mul(scale, VAR), 2 / as_fraction(p + 2))


@dataclass(frozen=True)
class SubstitutionResult:
    map: SubstitutionMap
    energy: float           # E = -(coefficient of the map-defining term)
    gauge: Expr             # (I(x(r)))^{1/4}

    def potential(self, dec: TermDecomposition, ell: int) -> Expr:
        k = self.map.k
        c_keep, i_keep = dec.term(k)
        x_of_r = self.map.x_of_r
        ix = simplify(compose(self.map.i_map, x_of_r))
        ikx = simplify(compose(i_keep, x_of_r))
        d1x = simplify(compose(differentiate(self.map.i_map), x_of_r))
        d2x = simplify(compose(
            differentiate(differentiate(self.map.i_map)), x_of_r))
        return simplify(add(
            mul(c_keep, ikx, pow_(ix, -1)),
            mul(dec.c_zero(ell), pow_(ix, -1)),
            mul(Fraction(-5, 16), pow_(d1x, 2), pow_(ix, -3)),
            mul(Fraction(1, 4), d2x, pow_(ix, -2)),
        ))


def substitute(dec: TermDecomposition, k: int,
               x_of_r: Expr | None = None) -> SubstitutionResult:
    """Change of variable killing the index -k term.

    k = +1 keeps C1*I1 and uses the map solving x' = 1/sqrt(I_{-1});
    k = -1 keeps C_{-1}*I_{-1} and uses x' = 1/sqrt(I_{+1}).  For the
    oscillator decomposition these are x = (3r/2)^(2/3) and x = sqrt(2r)
    with corrections -5/(36 r^2) and -3/(16 r^2) respectively.
    """
    if k not in (1, -1):
        raise ValueError("k must be +1 or -1")
    c_map, i_map = dec.term(-k)
    if x_of_r is None:
        x_of_r = _solve_monomial_map(i_map)
    smap = SubstitutionMap(k, simplify(x_of_r), (0.0, INF), (0.0, INF),
                           i_map)
    gauge = simplify(pow_(compose(i_map, smap.x_of_r), Fraction(1, 4)))
    return SubstitutionResult(smap, -c_map, gauge)


@dataclass(frozen=True)
class Provenance:
    source: str
    ell: int | None = None
    m: int | None = None
    k: int | None = None
    branch: str | None = None


@dataclass(frozen=True)
class GeneratedSystem:
    """-d^2/dr^2 + potential on the interval, one analytic eigenpair
    (energy, psi) attached, plus the gauge that produced it."""

    potential: Expr
    energy: float
    gauge: Expr
    provenance: Provenance
    psi: Expr | None = None
    interval: tuple = (0.0, INF)


def transformed_system(family: FamilySpec, ell: int, m: int,
                       k: int) -> GeneratedSystem:
    """Run decompose + substitute on a family eigenpair; the returned
    psi = gauge * Psi_{ell,m}(x(r)) solves -psi'' + W psi = E psi."""
    dec = decompose(family, m)
    sub = substitute(dec, k)
    w = sub.potential(dec, ell)
    psi_x = wavefunction(family, ell, m)
    psi_r = simplify(mul(sub.gauge, compose(psi_x, sub.map.x_of_r)))
    return GeneratedSystem(w, sub.energy, sub.gauge,
                           Provenance("family", ell, m, k, None), psi_r)


def _hermite_expr(n: int, arg: Expr) -> Expr:
    coeffs = hermite_poly(n).coeffs
    terms = [mul(c, pow_(arg, j)) for j, c in enumerate(coeffs) if c != 0.0]
    return add(*terms)


@dataclass(frozen=True)
class ClosedFormEigenpair:
    """One closed-form eigenpair of a generated potential."""

    n: int
    branch: str             # '+' or '-'
    c1: float
    c2: float
    energy: float
    psi: Expr
    alpha: float
    beta: float
    degenerate: bool = False
    provenance_kind: str = "cuberoot"

    @property
    def interval(self):
        return (0.0, INF)

    @property
    def potential(self) -> Expr:
        if self.provenance_kind == "cuberoot":
            return cuberoot_potential(self.c1, self.c2)
        return inverse_sqrt_potential(self.c1, self.c2)


def cuberoot_potential(c1: float, c2: float) -> Expr:
    """c1 (3r/2)^(2/3) + c2 (2/(3r))^(2/3) - 5/(36 r^2)."""
    return simplify(add(
        mul(c1, pow_(mul(Fraction(3, 2), VAR), Fraction(2, 3))),
        mul(c2, pow_(mul(Fraction(3, 2), VAR), Fraction(-2, 3))),
        mul(Fraction(-5, 36), pow_(VAR, -2))))


def inverse_sqrt_potential(c1: float, c2: float) -> Expr:
    """c1 / sqrt(2r) + c2 / (2r) - 3/(16 r^2)."""
    return simplify(add(
        mul(c1, pow_(mul(2, VAR), Fraction(-1, 2))),
        mul(c2 / 2.0, pow_(VAR, -1)),
        mul(Fraction(-3, 16), pow_(VAR, -2))))


def _branch_sign(branch) -> int:
    if branch in (1, +1, "+"):
        return 1
    if branch in (-1, "-"):
        return -1
    raise ValueError("branch must be '+' or '-'")


def solve_params_quantsys(c1: float, c2: float, n: int,
                          branch) -> ClosedFormEigenpair:
    """Closed-form eigenpair of the cube-root potential.

    alpha = -2 sqrt(c1), beta = sign * 2 sqrt(c2 + sqrt(c1)(1+2n)),
    E = sign * 2 sqrt(c1 c2 + c1 sqrt(c1) (1+2n)); admissible when the
    inner radicand is nonnegative, i.e. n >= -c2/(2 sqrt(c1)) - 1/2.
    """
    if c1 <= 0:
        raise ValueError("c1 must be positive")
    if n < 0:
        raise ValueError("n must be a nonnegative integer")
    sign = _branch_sign(branch)
    rad = c2 + math.sqrt(c1) * (1 + 2 * n)
    if rad < 0:
        raise Inadmissible(
            f"c2 + sqrt(c1)(1+2n) = {rad:g} < 0 for n={n}; "
            f"need n >= {-c2 / (2 * math.sqrt(c1)) - 0.5:g}")
    alpha = -2.0 * math.sqrt(c1)
    beta = sign * 2.0 * math.sqrt(rad)
    # equals c1 * rad exactly; may round below zero at the boundary
    rad2 = max(c1 * c2 + c1 * math.sqrt(c1) * (1 + 2 * n), 0.0)
    energy = sign * 2.0 * math.sqrt(rad2)
    # r^{1/6} exp(-A r^{4/3} + sign B r^{2/3}) H_n(q r^{2/3} - sign d)
    amp_a = 0.75 * (1.5 ** (1.0 / 3.0)) * math.sqrt(c1)
    amp_b = (2.25 ** (1.0 / 3.0)) * math.sqrt(rad)
    herm_q = (c1 ** 0.25) * (2.25 ** (1.0 / 3.0))
    herm_d = math.sqrt(rad) / (c1 ** 0.25)
    r23 = pow_(VAR, Fraction(2, 3))
    psi = simplify(mul(
        pow_(VAR, Fraction(1, 6)),
        exp_(add(mul(-amp_a, pow_(VAR, Fraction(4, 3))),
                 mul(sign * amp_b, r23))),
        _hermite_expr(n, add(mul(herm_q, r23), -sign * herm_d))))
    return ClosedFormEigenpair(n, "+" if sign > 0 else "-", c1, c2,
                               energy, psi, alpha, beta,
                               provenance_kind="cuberoot")


def _real_cubic_roots(a3: float, a2: float, a1: float, a0: float):
    """Real roots of a3 x^3 + a2 x^2 + a1 x + a0 (a3 != 0) via the
    trigonometric/hyperbolic Cardano branches, each polished by Newton."""
    p_ = a2 / a3
    q_ = a1 / a3
    r_ = a0 / a3
    big_p = q_ - p_ * p_ / 3.0
    big_q = 2.0 * p_ ** 3 / 27.0 - p_ * q_ / 3.0 + r_
    disc = -4.0 * big_p ** 3 - 27.0 * big_q ** 2
    roots = []
    if abs(big_q) < 1e-300 and abs(big_p) < 1e-300:
        roots = [0.0]
    elif big_p == 0.0:
        roots = [-math.copysign(abs(big_q) ** (1.0 / 3.0), big_q)]
    elif disc > 0:
        # three distinct real roots
        mag = 2.0 * math.sqrt(-big_p / 3.0)
        arg = 3.0 * big_q / (big_p * mag)
        arg = min(1.0, max(-1.0, arg))
        theta = math.acos(arg)
        roots = [mag * math.cos(theta / 3.0 - 2.0 * math.pi * j / 3.0)
                 for j in range(3)]
    elif big_p < 0:
        mag = 2.0 * math.sqrt(-big_p / 3.0)
        u = -3.0 * abs(big_q) / (big_p * mag)
        t = -math.copysign(mag, big_q) * math.cosh(math.acosh(u) / 3.0)
        roots = [t]
    else:
        mag = 2.0 * math.sqrt(big_p / 3.0)
        u = 3.0 * big_q / (big_p * mag)
        t = -mag * math.sinh(math.asinh(u) / 3.0)
        roots = [t]

    out = []
    for t in roots:
        x = t - p_ / 3.0
        for _ in range(2):  # Newton polish on the original cubic
            fx = ((a3 * x + a2) * x + a1) * x + a0
            dfx = (3.0 * a3 * x + 2.0 * a2) * x + a1
            if dfx != 0.0:
                x -= fx / dfx
        if not any(abs(x - y) <= 1e-9 * max(1.0, abs(y)) for y in out):
            out.append(x)
    return sorted(out)


def solve_params_inverse_sqrt(c1: float, c2: float, n: int):
    """Closed-form eigenpairs of the inverse-square-root potential.

    Eliminating beta = 2 c1/alpha from {alpha beta/2 = c1,
    beta^2/4 + alpha/2 + alpha n = c2} gives the real cubic

        (n + 1/2) alpha^3 - c2 alpha^2 + c1^2 = 0,

    solved for all real roots; roots with alpha < 0 yield eigenpairs
    with E = -alpha^2/4.  c1 = 0 degenerates to the pure beta = 0
    branch (cubic factor alpha^2), flagged on the output.
    """
    if n < 0:
        raise ValueError("n must be a nonnegative integer")
    degenerate = c1 == 0.0
    if degenerate:
        roots = [c2 / (n + 0.5)]
    else:
        roots = _real_cubic_roots(n + 0.5, -c2, 0.0, c1 * c1)
    pairs = []
    for alpha in roots:
        if alpha >= 0.0:
            continue
        beta = 0.0 if degenerate else 2.0 * c1 / alpha
        energy = -alpha * alpha / 4.0
        # r^{1/4} exp(alpha r/2 + (beta/sqrt 2) sqrt r) H_n(...)
        sqr = pow_(VAR, Fraction(1, 2))
        arg = add(mul(math.sqrt(-alpha), sqr),
                  -beta / math.sqrt(-2.0 * alpha))
        psi = simplify(mul(
            pow_(VAR, Fraction(1, 4)),
            exp_(add(mul(alpha / 2.0, VAR), mul(beta / math.sqrt(2.0), sqr))),
            _hermite_expr(n, arg)))
        pairs.append(ClosedFormEigenpair(
            n, "+" if beta >= 0 else "-", c1, c2, energy, psi, alpha, beta,
            degenerate=degenerate, provenance_kind="invsqrt"))
    if not pairs:
        raise NoAdmissibleRoot(
            f"no real root with alpha < 0 for c1={c1:g}, c2={c2:g}, n={n}")
    return pairs


def reproduce_dw(theta: float, rho_coeff: float, lam: float, which: int,
                 i_map: Expr | None = None,
                 x_of_r: Expr | None = None) -> GeneratedSystem:
    """Transform the translated harmonic oscillator
    [-d^2/dx^2 + theta^2 x^2 + rho x + lam] phi = 0 through the generic
    pipeline; which=1 is the sqrt(2r) route, which=2 the cube-root route.

    i_map overrides the map-defining term (x^2 or x by default) with an
    arbitrary expression; x_of_r supplies the change of variable directly
    when x' = 1/sqrt(i_map(x)) has no closed form in the IR.
    """
    if which not in (1, 2):
        raise ValueError("which must be 1 or 2")
    k = -1 if which == 1 else 1
    i_plus, i_minus = pow_(VAR, 2), VAR
    if i_map is not None:
        if k == -1:
            i_plus = i_map
        else:
            i_minus = i_map
    dec = TermDecomposition(
        i_plus=i_plus, i_minus=i_minus,
        c_plus=theta * theta, c_minus=rho_coeff,
        c_zero=lambda ell: lam)
    sub = substitute(dec, k, x_of_r)
    w = sub.potential(dec, 0)
    return GeneratedSystem(w, sub.energy, sub.gauge,
                           Provenance("dw", k=k))


def boundary_ratio(pair, r0: float, r1: float) -> float:
    """psi(r0)/psi(r1) for matching a finite-difference wall to the known
    near-origin behavior of a closed-form eigenfunction."""
    return float(evaluate(pair.psi, r0) / evaluate(pair.psi, r1))
