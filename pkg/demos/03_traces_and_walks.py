"""
Generalized traces and closed walks
===================================

T_k pairs the operator f_1(d/dA_1.)^k1 ... against tr A^m.  Only the edge
multiplicity matrix E of each closed walk matters, and walk_count(E) says how
many index cycles of tr A^m produce A^E.
"""

from resultants import build_symbolic, walk_count
from resultants.traces import TraceTable, pairing_plan, trace_power

print("tr A^3 (2x2) =", trace_power(2, 3))
print("walks for E = [[1,1],[1,0]]:", walk_count(((1, 1), (1, 0))))
print("walks for E = [[0,2],[1,0]] (unbalanced):", walk_count(((0, 2), (1, 0))))

# the pairing plan lists the exponent matrices that survive, with their weights
for e, w in pairing_plan((2, 2), (1, 1)):
    print("  E =", e, " weight", w)

table = TraceTable(build_symbolic(2, [2, 2]))
for k in range(1, 5):
    print(f"T_{k} =", table.aggregated(k))
