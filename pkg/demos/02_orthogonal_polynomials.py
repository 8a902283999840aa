# Three independent routes to the same polynomials:
#   1. the downward coefficient recursion (primary construction),
#   2. the Rodrigues construction (1/rho) d^ell [sigma^ell rho],
#   3. the classical Hermite/Laguerre/Jacobi three-term recurrences.
# Routes 2 and 3 act as oracles for route 1.

import numpy as np

from solvable import FamilySpec, SigmaCase, classical_match, phi, phi_rodrigues
from solvable.families import sample_points

hermite_like = FamilySpec(SigmaCase.ONE, -2.0, 0.0)
laguerre_like = FamilySpec(SigmaCase.S, -1.0, 1.0)
bessel_like = FamilySpec(SigmaCase.S2, -7.0, 1.0)

print("monic polynomials from the recursion (sigma = 1, alpha=-2, beta=0):")
for ell in range(5):
    print(f"  ell={ell}: coefficients {phi(hermite_like, ell).coeffs}")
print()

print("Rodrigues route agrees up to one constant:")
for fam, label in ((hermite_like, "sigma=1"), (laguerre_like, "sigma=s"),
                   (bessel_like, "sigma=s^2")):
    xs = sample_points(fam, 50)
    for ell in (1, 3):
        p = phi(fam, ell)(xs)
        q = phi_rodrigues(fam, ell)(xs)
        const = np.dot(q, p) / np.dot(p, p)
        dev = np.max(np.abs(q - const * p)) / np.max(np.abs(q))
        print(f"  {label:9s} ell={ell}: constant {const:+.6g}, "
              f"pointwise deviation {dev:.2e}")
print()

print("classical correspondences (fitted proportionality constants):")
for ell in range(4):
    rep = classical_match(hermite_like, ell)
    print(f"  H_{ell}: constant {rep.constant:+g}  "
          f"(2^ell = {2 ** ell}), deviation {rep.max_rel_dev:.2e}")
rep = classical_match(laguerre_like, 1)
print(f"  L_1^0: constant {rep.constant:+g}, deviation {rep.max_rel_dev:.2e}")
rep = classical_match(bessel_like, 2)
print(f"  (s/beta)^2 L_2^(1-alpha-4)(beta/s): constant {rep.constant:+g}, "
      f"deviation {rep.max_rel_dev:.2e}")
