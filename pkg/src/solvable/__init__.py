"""Exactly solvable Schrodinger-type systems.

A numpy-based library covering the six hypergeometric-type weight
families (their orthogonal polynomials, associated special functions,
and Schrodinger potentials via closed-form changes of variable) plus a
generator of new explicitly solvable potentials by gauge transformation
and a further change of variable.  Every closed-form result can be
cross-checked against an independent numerical oracle (adaptive
Gauss-Legendre quadrature and a Sturm-sequence finite-difference
eigensolver).

Quick start
-----------
>>> from solvable import FamilySpec, SigmaCase, potential, eigenvalue
>>> fam = FamilySpec(SigmaCase.ONE, alpha=-2.0, beta=0.0)
>>> system = potential(fam, m=0, attach_ells=(0, 1, 2))  # V(x) = x^2 - 1
>>> eigenvalue(fam, 2)
4.0

>>> from solvable import solve_params_quantsys
>>> pair = solve_params_quantsys(c1=1.0, c2=0.0, n=0, branch="+")
>>> pair.energy
2.0
"""

from .errors import (
    DegenerateRecursion, DegreeBeyondCutoff, DomainError, ExprSyntaxError,
    FamilyConstraintError, Inadmissible, MapNotClosedForm, NoAdmissibleRoot,
    NonIntegrableGauge, NonRationalExponent, OrderExceedsDegree,
    QuadratureNoConverge, SingularPoint, SolvableError, Unimplemented,
    UnsupportedCorrespondence,
)
from .expr import (
    Expr, compose, differentiate, evaluate, parse, power_terms, print_expr,
    simplify,
)
from .families import (
    ALL_CASES, FamilyCutoff, FamilySpec, SigmaCase, cutoff, eigenvalue,
    weight,
)
from .polynomials import (
    Poly, classical_match, hermite_value, jacobi_value, laguerre_value,
    phi, phi_rodrigues,
)
from .specfun import (
    HmOperator, SpecialFunction, apply_hm, hm_operator, scalar_product,
    special_function,
)
from .schrodinger import (
    SchrodingerSystem, VariableMap, potential, schrodinger_residual,
    variable_map, wavefunction,
)
from .generator import (
    ClosedFormEigenpair, GeneratedSystem, SecondOrderODE, TermDecomposition,
    cuberoot_potential, decompose, eliminate_first_derivative,
    inverse_sqrt_potential, reproduce_dw, solve_params_inverse_sqrt,
    solve_params_quantsys, substitute, transformed_system,
)
from .oracle import (
    FDHamiltonian,eigenvalues_below, fd_hamiltonian,
    fd_hamiltonian_indicial, integrate, residual_norm,
    richardson_eigenvalues,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_CASES", "ClosedFormEigenpair", "DegenerateRecursion",
    "DegreeBeyondCutoff", "DomainError", "Expr", "ExprSyntaxError",
    "FDHamiltonian", "FamilyConstraintError", "FamilyCutoff", "FamilySpec",
    "GeneratedSystem", "HmOperator", "Inadmissible", "MapNotClosedForm",
    "NoAdmissibleRoot", "NonIntegrableGauge", "NonRationalExponent",
    "OrderExceedsDegree", "Poly", "QuadratureNoConverge",
    "SchrodingerSystem", "SecondOrderODE", "SigmaCase", "SingularPoint",
    "SolvableError", "SpecialFunction", "TermDecomposition",
    "Unimplemented", "UnsupportedCorrespondence", "VariableMap",
    "apply_hm", "classical_match", "compose", "cuberoot_potential",
    "cutoff", "decompose", "differentiate", "eigenvalue",
    "eigenvalues_below", "eliminate_first_derivative", "evaluate",
    "fd_hamiltonian", "fd_hamiltonian_indicial", "hermite_value",
    "hm_operator", "integrate", "inverse_sqrt_potential", "jacobi_value",
    "laguerre_value", "parse", "phi", "phi_rodrigues", "potential",
    "power_terms", "print_expr", "reproduce_dw", "residual_norm",
    "richardson_eigenvalues", "scalar_product", "schrodinger_residual",
    "simplify", "solve_params_inverse_sqrt", "solve_params_quantsys",
    "special_function", "substitute", "transformed_system", "variable_map",
    "wavefunction", "weight",
]
