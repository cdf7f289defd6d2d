"""Minimal DIMACS front end for the solvers bundled with python-sat.

Usage: ``python -m locarray.pysat_runner [--solver glucose4] instance.cnf``

Prints ``s SATISFIABLE`` / ``s UNSATISFIABLE`` and ``v`` lines and exits
with 10 / 20, so it can be used as an external backend command.
"""

import argparse
import sys


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="pysat_runner")
    parser.add_argument("path")
    parser.add_argument("--solver", default="glucose4")
    args = parser.parse_args(argv)
    try:
        from pysat.formula import CNF
        from pysat.solvers import Solver
    except ImportError:
        print("c python-sat is not installed", file=sys.stderr)
        return 1

    formula = CNF(from_file=args.path)
    with Solver(name=args.solver, bootstrap_with=formula.clauses) as solver:
        sat = solver.solve()
        if not sat:
            print("s UNSATISFIABLE")
            return 20
        model = solver.get_model() or []
    print("s SATISFIABLE")
    lits = list(model) + [0]
    for start in range(0, len(lits), 20):
        print("v " + " ".join(map(str, lits[start:start + 20])))
    return 10


if __name__ == "__main__":
    sys.exit(main())
