"""
Searching for minimum locating arrays
=====================================

Start at a known lower bound and add rows until the solver finds an array.
If it finds one straight away, the array is as small as possible.
"""

import time

from locarray import SearchConfig, SutModel, find_minimum, lower_bound

print(f"{'SUT':6s} {'bound':>5s} {'size':>5s} {'secs':>7s} {'min?':>5s}  log")
for k in range(3, 7):
    model = SutModel(k, 2, 2)
    start = time.perf_counter()
    result = find_minimum(SearchConfig(model))
    trail = " ".join(f"{e.n}:{e.outcome}" for e in result.log)
    print(f"2^{k:<4d} {lower_bound(model):5d} {result.n:5d} {time.perf_counter() - start:7.2f} "
          f"{'Yes' if result.is_minimum else '?':>5s}  {trail}")

# With three levels the table bound is not tight: the solver must prove 14 rows impossible
result = find_minimum(SearchConfig(SutModel(3, 3, 2)))
print("3^3:", [(e.n, e.outcome) for e in result.log], "minimum:", result.is_minimum)
print(result.array.to_text())

# Starting below the bound walks up one size at a time, each step an UNSAT proof
result = find_minimum(SearchConfig(SutModel(3, 2, 2), n_start_override=4))
print("2^3 from 4 rows:", [(e.n, e.outcome) for e in result.log])

# Results serialise to JSON for later reporting
print(result.to_json())
