"""
Handing the hard instances to an external solver
================================================

The builtin CDCL engine is fine for small searches. For UNSAT proofs on larger
SUTs any DIMACS solver can be plugged in through a command template.
"""

import importlib.util
import sys

from locarray import NoArrayFound, SearchConfig, SutModel, find_minimum
from locarray.backend import EXTERNAL, BackendConfig

if importlib.util.find_spec("pysat") is None:
    sys.exit("python-sat is not installed: pip install python-sat")

# {input} becomes the DIMACS path; the runner prints standard s/v lines
command = f"{sys.executable} -m locarray.pysat_runner --solver cadical195 {{input}}"
backend = BackendConfig(EXTERNAL, timeout=1800, command=command)

# Eight binary factors: 10 rows is the bound, and it is not achievable
result = find_minimum(SearchConfig(SutModel(8, 2, 2), backend=backend))
for e in result.log:
    print(f"n={e.n:3d} {e.outcome} {e.seconds:8.2f}s")
print("minimum size:", result.n, "proved:", result.is_minimum)

# A deliberately tiny timeout shows what happens when a proof does not finish;
# n_max caps the walk, which would otherwise continue up to v^k rows
impatient = BackendConfig(EXTERNAL, timeout=0.5, command=command)
try:
    result = find_minimum(SearchConfig(SutModel(8, 2, 2), backend=impatient, n_max=11))
    print([(e.n, e.outcome) for e in result.log], "proved:", result.is_minimum)
except NoArrayFound as exc:
    print(exc, [(e.n, e.outcome) for e in exc.log])
