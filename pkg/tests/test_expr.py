import math
from fractions import Fraction

import numpy as np
import pytest

from solvable.errors import DomainError, ExprSyntaxError, NonRationalExponent
from solvable.expr import (
    VAR, Add, Const, Exp, Fun, Mul, Pow, Var,
    add, compose, differentiate, evaluate, exp_, fun_, mul, parse, pow_,
    power_terms, print_expr, simplify,
)

X = VAR

# Corpus covering every node kind, used by the derivative, round-trip,
# and idempotence checks below.
CORPUS = [
    Const(3.5),
    X,
    add(X, 1),
    add(pow_(X, 2), mul(-1, X), 4),
    mul(2, X),
    mul(X, add(X, 1)),
    pow_(X, 2),
    pow_(X, 3),
    pow_(X, Fraction(1, 2)),
    pow_(X, Fraction(2, 3)),
    pow_(X, Fraction(-1, 2)),
    pow_(add(1, pow_(X, 2)), Fraction(-3, 2)),
    pow_(mul(Fraction(3, 2), X), Fraction(2, 3)),
    exp_(X),
    exp_(mul(Fraction(-1, 2), pow_(X, 2))),
    exp_(add(X, mul(-1, pow_(X, 2)))),
    mul(pow_(X, 2), exp_(mul(-1, X))),
    mul(exp_(X), exp_(mul(-1, X))),
    add(exp_(X), pow_(X, Fraction(5, 2))),
    fun_("sin", X),
    fun_("cos", mul(2, X)),
    fun_("sinh", X),
    fun_("cosh", mul(Fraction(1, 2), X)),
    fun_("log", add(1, pow_(X, 2))),
    fun_("arctan", X),
    fun_("arcsin", mul(Fraction(1, 3), X)),
    mul(fun_("log", X), pow_(X, -1)),
    add(mul(3, pow_(X, Fraction(4, 3))), mul(-2, pow_(X, Fraction(1, 3)))),
    mul(add(X, 1), add(X, -1), X),
    exp_(fun_("log", X)),
]


def central_diff(e, x, h=1e-5):
    return (evaluate(e, x + h) - evaluate(e, x - h)) / (2 * h)


@pytest.mark.parametrize("e", CORPUS, ids=[print_expr(e) for e in CORPUS])
def test_derivative_matches_finite_differences(e):
    rng = np.random.RandomState(42)
    de = differentiate(e)
    checked = 0
    for _ in range(40):
        x = rng.uniform(0.2, 2.5)  # safe for every corpus member
        try:
            sym = evaluate(de, x)
            num = central_diff(e, x)
        except DomainError:
            continue
        assert sym == pytest.approx(num, rel=1e-6, abs=1e-8)
        checked += 1
        if checked >= 10:
            break
    assert checked >= 10


@pytest.mark.parametrize("e", CORPUS, ids=[print_expr(e) for e in CORPUS])
def test_simplify_idempotent_and_value_preserving(e):
    s1 = simplify(e)
    s2 = simplify(s1)
    assert s1 == s2
    rng = np.random.RandomState(7)
    for x in rng.uniform(0.2, 2.5, size=10):
        assert evaluate(s1, x) == pytest.approx(evaluate(e, x), rel=1e-12)


@pytest.mark.parametrize("e", CORPUS, ids=[print_expr(e) for e in CORPUS])
def test_print_parse_round_trip(e):
    back = parse(print_expr(e))
    rng = np.random.RandomState(3)
    for x in rng.uniform(0.2, 2.5, size=10):
        assert evaluate(back, x) == pytest.approx(evaluate(e, x), rel=1e-12)


class TestParse:
    def test_power(self):
        assert parse("x^2") == Pow(X, Fraction(2))

    def test_rational_power_of_scaled_variable(self):
        e = parse("(3*r/2)^(2/3)")
        assert e == pow_(mul(Fraction(3, 2), X), Fraction(2, 3))
        assert evaluate(e, 2 / 3) == pytest.approx(1.0)

    def test_gaussian(self):
        e = parse("exp(-x^2/2)")
        assert e == exp_(mul(-0.5, pow_(X, 2)))
        assert evaluate(e, 0.0) == 1.0

    def test_sqrt(self):
        assert parse("sqrt(x)") == Pow(X, Fraction(1, 2))

    def test_decimal_exponent(self):
        assert parse("x^0.5") == Pow(X, Fraction(1, 2))

    def test_variable_names(self):
        assert parse("r^2") == parse("x^2") == parse("s^2")

    def test_syntax_error_position(self):
        with pytest.raises(ExprSyntaxError) as err:
            parse("x + @")
        assert err.value.position == 4

    def test_unbalanced(self):
        with pytest.raises(ExprSyntaxError):
            parse("(x + 1")

    def test_unknown_name(self):
        with pytest.raises(ExprSyntaxError):
            parse("y + 1")

    def test_non_rational_exponent(self):
        with pytest.raises(NonRationalExponent):
            parse("x^x")

    def test_non_rational_exponent_expression(self):
        with pytest.raises(NonRationalExponent):
            parse("x^(1+1)")


class TestEvaluate:
    def test_square(self):
        assert evaluate(parse("x^2"), 3.0) == 9.0

    def test_unit_base(self):
        assert evaluate(parse("(3*r/2)^(2/3)"), 2 / 3) == pytest.approx(1.0)

    def test_exp_at_zero(self):
        assert evaluate(parse("exp(-x^2/2)"), 0.0) == 1.0

    def test_array_input(self):
        xs = np.linspace(0.5, 2.0, 7)
        vals = evaluate(parse("x^2 + 1"), xs)
        assert np.allclose(vals, xs ** 2 + 1)

    def test_negative_fractional_power_raises(self):
        with pytest.raises(DomainError):
            evaluate(pow_(X, Fraction(1, 2)), -1.0)

    def test_pole_raises(self):
        with pytest.raises(DomainError):
            evaluate(pow_(X, -1), 0.0)

    def test_log_domain(self):
        with pytest.raises(DomainError):
            evaluate(fun_("log", X), -2.0)


class TestDifferentiate:
    def test_power_rule(self):
        assert differentiate(parse("x^2")) == mul(2, X)

    def test_cube_root_map_derivative(self):
        e = pow_(mul(Fraction(3, 2), X), Fraction(2, 3))
        de = differentiate(e)
        expected = pow_(mul(Fraction(3, 2), X), Fraction(-1, 3))
        for r in (0.5, 1.0, 2.0, 5.0):
            assert evaluate(de, r) == pytest.approx(
                evaluate(expected, r), rel=1e-12)

    def test_gaussian_derivative(self):
        e = parse("exp(-x^2/2)")
        de = differentiate(e)
        for x in (-1.0, 0.0, 0.7, 2.0):
            assert evaluate(de, x) == pytest.approx(
                -x * math.exp(-x * x / 2), rel=1e-12, abs=1e-15)


class TestCompose:
    def test_square_of_sqrt(self):
        # substituting x = sqrt(2 r) into x^2 collapses to a multiple of r
        e = compose(parse("x^2"), parse("sqrt(2*r)"))
        terms = power_terms(e)
        assert set(terms) == {Fraction(1)}
        assert terms[Fraction(1)] == pytest.approx(2.0, rel=1e-15)

    def test_identity_inner(self):
        v = parse("x^2 - 1")
        assert compose(v, X) == v

    def test_variable_itself(self):
        inner = pow_(mul(Fraction(3, 2), X), Fraction(2, 3))
        assert compose(X, inner) == inner


class TestSimplify:
    def test_exp_cancellation(self):
        e = Mul((Exp(X), Exp(Mul((Const(-1.0), Var())))))
        assert simplify(e) == Const(1.0)

    def test_power_merge(self):
        e = Mul((Pow(X, Fraction(1, 2)), Pow(X, Fraction(1, 2))))
        assert simplify(e) == X

    def test_pow_of_pow_integer_outer(self):
        e = Pow(Pow(X, Fraction(1, 2)), Fraction(2))
        assert simplify(e) == X

    def test_pow_of_pow_fractional_outer_kept(self):
        e = Pow(Pow(X, Fraction(2)), Fraction(1, 2))
        assert simplify(e) == e  # |x| != x, must not collapse

    def test_exp_of_log(self):
        assert simplify(Exp(Fun("log", X))) == X

    def test_scaled_log_in_exp(self):
        e = exp_(mul(Fraction(1, 2), fun_("log", X)))
        assert e == Pow(X, Fraction(1, 2))


class TestPowerTerms:
    def test_plain(self):
        t = power_terms(parse("2*x^2 - 3*x + 4"))
        assert t == {Fraction(2): 2.0, Fraction(1): -3.0, Fraction(0): 4.0}

    def test_fractional(self):
        t = power_terms(add(mul(-0.1875, pow_(X, -2)), pow_(X, Fraction(1, 2))))
        assert t[Fraction(-2)] == -0.1875
        assert t[Fraction(1, 2)] == 1.0

    def test_not_a_power_sum(self):
        assert power_terms(exp_(X)) is None


def test_operator_sugar():
    e = (X ** 2 - 1) / (X + 2)
    assert evaluate(e, 2.0) == pytest.approx(0.75)
    assert evaluate(-X + 3, 1.0) == 2.0


def test_simplify_is_fixed_point_on_pipeline_outputs():
    # machine-built expressions (potentials, wavefunctions, generated
    # eigenfunctions) must already be in normal form, or repeated passes
    # would change structure and break determinism
    from solvable.families import FamilySpec, SigmaCase
    from solvable.generator import solve_params_quantsys, transformed_system
    from solvable.schrodinger import potential, wavefunction

    fam = FamilySpec(SigmaCase.S2, -7.0, 1.0)
    for e in (potential(fam, 1).potential,
              wavefunction(fam, 2, 1),
              solve_params_quantsys(1.3, -0.4, 2, "-").psi,
              transformed_system(
                  FamilySpec(SigmaCase.ONE, -1.7, 0.9), 3, 1, -1).psi):
        assert simplify(e) == e
