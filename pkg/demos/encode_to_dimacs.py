"""
From a test-design question to a CNF formula
============================================

Does a 7 row (1-bar, 2)-locating array exist for four binary factors?
Encode the question, look at the formula, hand it to a solver, read the array back.
"""

from collections import Counter
from pathlib import Path
import tempfile

from locarray import EncodingConfig, Scheme, SutModel, decode, encode, is_locating_bar1t, solve, write_dimacs
from locarray.backend import BackendConfig, Sat

model = SutModel(k=4, v=2, t=2)

# The two encodings differ in how a row "covers" an interaction
for scheme in Scheme:
    cnf = encode(model, 7, EncodingConfig(scheme))
    sizes = Counter()
    for group in cnf.groups:
        sizes[group.tag] += len(group.clauses)
    print(f"{scheme.value:6s} {cnf.variable_count:5d} vars {cnf.clause_count:6d} clauses", dict(sizes))

# Symmetry breaking and the first-row fix prune equivalent arrays
for sb in (False, True):
    cnf = encode(model, 7, EncodingConfig(symmetry_breaking=sb, fix_first_row=sb))
    print(f"symmetry breaking={sb}: {cnf.clause_count} clauses")

# DIMACS plus a sidecar map is all an outside solver needs
cnf = encode(model, 7)
out = Path(tempfile.mkdtemp()) / "k4_n7.cnf"
out.write_bytes(write_dimacs(cnf))
out.with_suffix(".cnf.map").write_text("\n".join(cnf.variable_map.lines()) + "\n")
print(out.read_text().splitlines()[0], "written to", out)
print(*cnf.variable_map.lines()[:3], sep="\n")

result = solve(cnf, BackendConfig())
assert isinstance(result, Sat)
array = decode(cnf, result.assignment)
print(array.to_text())
print("locating:", is_locating_bar1t(array))

# One row fewer is impossible
print("6 rows:", solve(encode(model, 6), BackendConfig()).code)
