# The six weight families of the hypergeometric-type equation
#
#   sigma(s) y'' + (alpha s + beta) y' + lambda y = 0
#
# Each choice of sigma comes with a positive weight rho solving the
# Pearson identity (sigma rho)' = tau rho on its natural interval, and a
# ladder of eigenvalues lambda_ell at which polynomial solutions exist.

import numpy as np

from solvable import ALL_CASES, FamilySpec, cutoff, eigenvalue, weight
from solvable.expr import differentiate, evaluate, mul, print_expr
from solvable.families import sample_points

REPRESENTATIVE = {
    "1": (-2.0, 1.0),
    "s": (-1.0, 2.0),
    "1-s^2": (-5.0, 1.0),
    "s^2-1": (-7.0, 10.0),
    "s^2": (-7.0, 1.0),
    "s^2+1": (-5.0, 1.0),
}

for case in ALL_CASES:
    alpha, beta = REPRESENTATIVE[case.value]
    fam = FamilySpec(case, alpha, beta)
    rho = weight(fam)
    cap = cutoff(fam)

    print(f"sigma = {case.value:7s}  alpha={alpha:g} beta={beta:g}  "
          f"interval={fam.interval}")
    print(f"  rho(s)   = {print_expr(rho, 's')}")
    if cap.unbounded:
        print("  cutoff   : infinite polynomial system")
    else:
        print(f"  cutoff   : Lambda={cap.lambda_cap:g}, largest degree "
              f"L={cap.max_degree}")

    # Pearson identity, checked by the same symbolic differentiation the
    # generator uses
    lhs = differentiate(mul(fam.sigma_expr, rho))
    ss = sample_points(fam, 200)
    dev = max(abs(evaluate(lhs, s) - fam.tau(s) * evaluate(rho, s))
              for s in ss)
    print(f"  (sigma rho)' = tau rho   max deviation {dev:.2e}")

    top = cap.max_degree if cap.max_degree is not None else 5
    lams = [eigenvalue(fam, ell) for ell in range(top + 1)]
    print(f"  lambda_0..{top} = {np.array(lams)}")
    print()
