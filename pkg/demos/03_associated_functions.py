# Associated special functions F_{ell,m} = kappa^m d^m/ds^m P_ell and
# their second-order operator: differentiating the polynomial equation m
# times and multiplying by kappa^m = sigma^(m/2) yields an eigenproblem
# with the *same* eigenvalue ladder, and for each fixed m the F_{ell,m}
# stay orthogonal under the original weight.

import math

import numpy as np

from solvable import (
    FamilySpec, SigmaCase, apply_hm, eigenvalue, hm_operator,
    scalar_product, special_function,
)
from solvable.families import sample_points

fam = FamilySpec(SigmaCase.S, -1.0, 2.0)

print("eigenrelation residuals for sigma = s, alpha=-1, beta=2:")
pts = sample_points(fam, 100)
for ell in range(4):
    lam = eigenvalue(fam, ell)
    for m in range(ell + 1):
        op = hm_operator(fam, m)
        f = special_function(fam, ell, m)
        res = np.max(np.abs(apply_hm(op, f, pts) - lam * f(pts))
                     / (1 + np.abs(lam * f(pts))))
        print(f"  ell={ell} m={m}: lambda={lam:g}  max residual {res:.2e}")
print()

print("orthogonality at fixed m=1 (normalized inner products):")
fns = {ell: special_function(fam, ell, 1) for ell in range(1, 5)}
norms = {ell: math.sqrt(scalar_product(fam, f, f)) for ell, f in fns.items()}
for ell in fns:
    row = []
    for k in fns:
        inner = scalar_product(
            fam, lambda s: fns[ell](s) / norms[ell],
            lambda s: fns[k](s) / norms[k])
        row.append(f"{inner:+.1e}")
    print(f"  ell={ell}: " + "  ".join(row))
