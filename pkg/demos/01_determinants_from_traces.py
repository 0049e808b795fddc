"""
Determinants as Schur polynomials of traces
===========================================

A linear map is the degree-1 case of everything in this package.  Its
determinant is (-1)^n P_n evaluated at t_k = -tr(f^k)/k.
"""

from resultants import MPoly, coeff_symbol, determinant_special, resultant, build_symbolic, schur_poly
from resultants.resultant import leibniz_determinant

# the first few Schur polynomials, symbolic in t1, t2, ...
for k in range(5):
    print(f"P_{k} =", schur_poly(k))

# a generic 3x3 matrix; entry (i, j) is the x_j coefficient of the i-th linear form
n = 3
f = [[MPoly.symbol(coeff_symbol(i + 1, (j + 1,))) for j in range(n)] for i in range(n)]

via_traces = determinant_special(f)
print("\ndet via traces:", via_traces)
print("matches Leibniz:", via_traces == leibniz_determinant(f))

# the resultant engine gives the same polynomial for degrees [1, 1, 1]
print("matches resultant([1,1,1]):", resultant(build_symbolic(3, [1, 1, 1])).value == via_traces)

# numbers work too
print("det [[2, 1/2], [3, 4]] =", determinant_special([[2, MPoly.constant(1) / 2], [3, 4]]))
