import itertools
import random
import sys
import textwrap

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from locarray.backend import (
    EXTERNAL,
    PARSE_FAILURE,
    RESOURCE,
    TIMEOUT,
    BackendConfig,
    Sat,
    Unknown,
    Unsat,
    builtin_solve,
    check_assignment,
    solve,
)
from locarray.cdcl import CdclSolver, luby


def truth_table_sat(n_vars, clauses):
    for bits in itertools.product([False, True], repeat=n_vars):
        if all(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in clauses):
            return True
    return False


def random_3cnf(rng, n_vars, n_clauses):
    return [
        tuple(v if rng.random() < 0.5 else -v for v in rng.sample(range(1, n_vars + 1), 3))
        for _ in range(n_clauses)
    ]


def pigeonhole(pigeons, holes):
    var = lambda p, h: p * holes + h + 1
    clauses = [tuple(var(p, h) for h in range(holes)) for p in range(pigeons)]
    for h in range(holes):
        for p, q in itertools.combinations(range(pigeons), 2):
            clauses.append((-var(p, h), -var(q, h)))
    return pigeons * holes, clauses


def test_luby_prefix():
    assert [luby(i) for i in range(15)] == [1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]


def test_empty_clause_set_is_sat():
    out = builtin_solve((3, []))
    assert isinstance(out, Sat)
    assert set(out.assignment) == {1, 2, 3}


def test_empty_clause_is_unsat():
    assert isinstance(builtin_solve((2, [(1, 2), ()])), Unsat)


def test_contradicting_units():
    assert isinstance(builtin_solve((1, [(1,), (-1,)])), Unsat)


def test_unit_chain_needs_no_decisions():
    n = 50
    clauses = [(1,)] + [(-i, i + 1) for i in range(1, n)]
    solver = CdclSolver(n, clauses)
    assert solver.solve()
    assert solver.stats.decisions == 0
    assert all(solver.model)


@pytest.mark.parametrize("pigeons,holes", [(3, 2), (4, 3), (5, 4)])
def test_pigeonhole_unsat(pigeons, holes):
    assert isinstance(builtin_solve(pigeonhole(pigeons, holes)), Unsat)


def test_pigeonhole_fits():
    out = builtin_solve(pigeonhole(4, 4))
    assert isinstance(out, Sat)


@pytest.mark.parametrize("seed", range(40))
def test_random_3cnf_against_truth_table(seed):
    rng = random.Random(seed)
    n_vars = rng.randint(3, 12)
    # around the phase transition ratio 4.26 so both verdicts occur
    clauses = random_3cnf(rng, n_vars, int(n_vars * rng.uniform(3.0, 6.0)))
    out = builtin_solve((n_vars, clauses))
    assert isinstance(out, Sat) == truth_table_sat(n_vars, clauses)
    if isinstance(out, Sat):
        check_assignment(clauses, out.assignment)


def test_random_8var_full_enumeration_agreement():
    rng = random.Random(2024)
    verdicts = set()
    for _ in range(60):
        clauses = random_3cnf(rng, 8, rng.randint(25, 45))
        expected = truth_table_sat(8, clauses)
        assert isinstance(builtin_solve((8, clauses)), Sat) == expected
        verdicts.add(expected)
    assert verdicts == {True, False}


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 10).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.lists(st.integers(1, n).flatmap(lambda v: st.sampled_from([v, -v])), min_size=1, max_size=4),
             max_size=40))))
def test_property_truth_table(instance):
    n_vars, clauses = instance
    out = builtin_solve((n_vars, clauses))
    assert isinstance(out, Sat) == truth_table_sat(n_vars, clauses)
    if isinstance(out, Sat):
        check_assignment(clauses, out.assignment)


def test_harder_random_instance_model_is_sound():
    rng = random.Random(7)
    clauses = random_3cnf(rng, 120, 480)
    out = builtin_solve((120, clauses))
    assert isinstance(out, (Sat, Unsat))
    if isinstance(out, Sat):
        check_assignment(clauses, out.assignment)


def test_deterministic_under_seed():
    rng = random.Random(11)
    clauses = random_3cnf(rng, 80, 330)
    a = builtin_solve((80, clauses), seed=3)
    b = builtin_solve((80, clauses), seed=3)
    assert type(a) is type(b)
    assert a.stats == b.stats
    if isinstance(a, Sat):
        assert a.assignment == b.assignment


def test_timeout_yields_unknown():
    out = builtin_solve(pigeonhole(10, 9), timeout=0.2)
    assert isinstance(out, Unknown) and out.reason == TIMEOUT


def test_monotone_timeout():
    instance = pigeonhole(5, 4)
    assert isinstance(builtin_solve(instance), Unsat)
    assert isinstance(builtin_solve(instance, timeout=600), Unsat)


def test_literal_out_of_range():
    with pytest.raises(ValueError):
        CdclSolver(2, [(1, 3)])


def test_config_validation():
    with pytest.raises(ValueError):
        BackendConfig(timeout=0)
    with pytest.raises(ValueError):
        BackendConfig(backend=EXTERNAL)
    with pytest.raises(ValueError):
        BackendConfig(threads=0)


# -- external backend -------------------------------------------------------------

FAKE_SOLVER = textwrap.dedent(
    """
    import sys
    from locarray.encoder import read_dimacs
    from locarray.backend import builtin_solve, Sat
    mode = sys.argv[1]
    n_vars, clauses = read_dimacs(open(sys.argv[2]).read())
    if mode == "sleep":
        import time; time.sleep(30)
    if mode == "garbage":
        print("hello"); sys.exit(0)
    out = builtin_solve((n_vars, clauses))
    if isinstance(out, Sat):
        if mode == "lie":
            print("s SATISFIABLE"); print("v " + " ".join(str(-v) for v in range(1, n_vars + 1)) + " 0")
            sys.exit(10)
        if mode != "exitcode":
            print("s SATISFIABLE")
        print("v " + " ".join(str(v if b else -v) for v, b in out.assignment.items()) + " 0")
        sys.exit(10)
    if mode != "exitcode":
        print("s UNSATISFIABLE")
    sys.exit(20)
    """
)


@pytest.fixture
def fake_solver(tmp_path):
    script = tmp_path / "fake_solver.py"
    script.write_text(FAKE_SOLVER)
    return lambda mode: f"{sys.executable} {script} {mode} {{input}}"


@pytest.mark.parametrize("mode", ["normal", "exitcode"])
def test_external_agrees_with_builtin(fake_solver, mode):
    config = BackendConfig(EXTERNAL, timeout=60, command=fake_solver(mode))
    rng = random.Random(5)
    for _ in range(6):
        clauses = random_3cnf(rng, 10, 45)
        ext = solve((10, clauses), config)
        assert type(ext) is type(builtin_solve((10, clauses)))


def test_external_timeout_kills_process(fake_solver):
    config = BackendConfig(EXTERNAL, timeout=0.5, command=fake_solver("sleep"))
    out = solve((2, [(1, 2)]), config)
    assert isinstance(out, Unknown) and out.reason == TIMEOUT


def test_external_parse_failure(fake_solver):
    out = solve((2, [(1, 2)]), BackendConfig(EXTERNAL, timeout=30, command=fake_solver("garbage")))
    assert isinstance(out, Unknown) and out.reason == PARSE_FAILURE


def test_external_launch_failure():
    out = solve((2, [(1, 2)]), BackendConfig(EXTERNAL, timeout=5, command="/nonexistent/solver {input}"))
    assert isinstance(out, Unknown) and out.reason == RESOURCE


def test_external_wrong_model_is_caught(fake_solver):
    from locarray.backend import UnsoundModel

    with pytest.raises(UnsoundModel):
        solve((2, [(1,), (2,)]), BackendConfig(EXTERNAL, timeout=30, command=fake_solver("lie")))


def test_pysat_runner_agrees_with_builtin():
    pytest.importorskip("pysat")
    config = BackendConfig(EXTERNAL, timeout=60, command=f"{sys.executable} -m locarray.pysat_runner {{input}}")
    for instance in [pigeonhole(4, 3), pigeonhole(3, 3)]:
        assert type(solve(instance, config)) is type(builtin_solve(instance))
