"""
Three ternary quadrics
======================

R_2,2,2 is the first genuinely multidimensional example.  The trace table has
124 gradings; with default settings the whole polynomial takes a few seconds.
Pass --jobs N to spread the traces over N processes.
"""

import sys
import time

from resultants import build_symbolic, resultant

jobs = int(sys.argv[sys.argv.index("--jobs") + 1]) if "--jobs" in sys.argv else 1

start = time.perf_counter()
res = resultant(build_symbolic(3, [2, 2, 2]), jobs=jobs)
print(f"R_2,2,2: {res.term_count} terms in {time.perf_counter() - start:.1f}s")
print("budget report:", res.trace_budget_report)

# the first few terms in canonical order
print(" + ".join(str(res.value).split(" + ")[:4]), "+ ...")
