"""
Resultants of two binary forms
==============================

For n = 2 the classical Sylvester determinant is available, so the trace
construction can be compared against it directly.
"""

import time

from resultants import build_symbolic, resultant, sylvester_resultant

s = build_symbolic(2, [2, 2])
res = resultant(s)
print("R_2,2 =", res.value)
print("terms:", res.term_count, " degrees d_i:", res.degree_data.d_vec)

for degrees in ([1, 2], [2, 3], [3, 3]):
    s = build_symbolic(2, degrees)
    start = time.perf_counter()
    ours = resultant(s).value
    took = time.perf_counter() - start
    sylv = sylvester_resultant(*s.polys)
    sign = "+" if ours == sylv else "-" if ours == -sylv else "?"
    print(f"R_{degrees}: {len(ours)} terms in {took:.3f}s, equals {sign}Sylvester")
