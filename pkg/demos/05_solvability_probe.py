"""
Deciding whether a concrete system has a common root
====================================================

With rational coefficients the resultant is a single exact rational; it is
zero exactly when the system has a nontrivial common root.
"""

from gmpy2 import mpq

from resultants import force_common_root, random_dense, solvability_probe
from resultants.system import evaluate_poly

root = [mpq(1), mpq(-2), mpq(3, 2)]
s = force_common_root(3, [2, 1, 2], root, seed=7)
print("values at the planted root:", [str(evaluate_poly(p, root)) for p in s.polys])
print("probe with a planted root:", solvability_probe(s))

generic = random_dense(3, [2, 1, 2], seed=7)
print("probe for a random system:", solvability_probe(generic))

# scaling f1 by lam multiplies the resultant by lam^d1
lam = mpq(3, 5)
scaled = generic.replace(0, generic.polys[0].scaled(lam))
d1 = generic.degree_data().d_vec[0]
print("scaling check:", solvability_probe(scaled) == lam**d1 * solvability_probe(generic))
