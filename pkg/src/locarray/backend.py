"""Solve CNF instances with the builtin CDCL engine or an external solver."""

from __future__ import annotations

import logging
import os
import shlex
import subprocess
import tempfile
import time
from dataclasses import dataclass, field

from .cdcl import CdclSolver, SolverTimeout
from .encoder import CnfInstance, DimacsParseError, read_dimacs_result, write_dimacs

log = logging.getLogger(__name__)

BUILTIN = "builtin"
EXTERNAL = "external"

TIMEOUT = "timeout"
RESOURCE = "resource"
PARSE_FAILURE = "parse-failure"


@dataclass(frozen=True)
class BackendConfig:
    """``command`` is a template for the external backend.

    Placeholders ``{input}`` (DIMACS path) and ``{threads}`` are substituted;
    without ``{input}`` the path is appended as the last argument.
    """

    backend: str = BUILTIN
    timeout: float = 3600.0
    command: str | None = None
    threads: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.backend not in (BUILTIN, EXTERNAL):
            raise ValueError(f"unknown backend {self.backend!r}")
        if not self.timeout > 0:
            raise ValueError("timeout must be positive")
        if self.threads < 1:
            raise ValueError("threads must be a positive integer")
        if self.backend == EXTERNAL and not self.command:
            raise ValueError("external backend needs a command template")

    def to_dict(self) -> dict:
        return {"backend": self.backend, "timeout": self.timeout, "command": self.command,
                "threads": self.threads, "seed": self.seed}


@dataclass(frozen=True)
class Sat:
    assignment: dict[int, bool]
    wall_time: float = 0.0
    stats: dict = field(default_factory=dict, compare=False)
    code = "S"


@dataclass(frozen=True)
class Unsat:
    wall_time: float = 0.0
    stats: dict = field(default_factory=dict, compare=False)
    code = "U"


@dataclass(frozen=True)
class Unknown:
    reason: str
    detail: str = ""
    wall_time: float = 0.0
    code = "T"


SolveOutcome = Sat | Unsat | Unknown


class UnsoundModel(RuntimeError):
    """A backend returned an assignment that violates a clause."""


def _as_clauses(cnf):
    if isinstance(cnf, CnfInstance):
        return cnf.variable_count, cnf.clauses
    n_vars, clauses = cnf
    return n_vars, clauses


def check_assignment(clauses, assignment: dict[int, bool]):
    for c in clauses:
        if not any(assignment.get(abs(l), False) == (l > 0) for l in c):
            raise UnsoundModel(f"clause {tuple(c)} is falsified")


def builtin_solve(cnf, timeout: float | None = None, seed: int = 0) -> SolveOutcome:
    """Run the builtin CDCL engine. ``cnf`` is a CnfInstance or (n_vars, clauses)."""
    n_vars, clauses = _as_clauses(cnf)
    start = time.perf_counter()
    deadline = None if timeout is None else start + timeout
    solver = CdclSolver(n_vars, clauses, seed=seed)
    try:
        result = solver.solve(deadline)
    except SolverTimeout:
        return Unknown(TIMEOUT, f"no verdict within {timeout} s", time.perf_counter() - start)
    elapsed = time.perf_counter() - start
    stats = vars(solver.stats).copy()
    if result:
        assignment = {v + 1: bool(b) for v, b in enumerate(solver.model)}
        return Sat(assignment, elapsed, stats)
    return Unsat(elapsed, stats)


def external_solve(cnf, command: str, timeout: float, threads: int = 1) -> SolveOutcome:
    n_vars, clauses = _as_clauses(cnf)
    with tempfile.TemporaryDirectory(prefix="locarray-") as tmp:
        path = os.path.join(tmp, "instance.cnf")
        with open(path, "wb") as fh:
            fh.write(write_dimacs(clauses, n_vars))
        if "{input}" in command:
            argv = shlex.split(command.format(input=path, threads=threads))
        else:
            argv = shlex.split(command.format(threads=threads)) + [path]
        start = time.perf_counter()
        try:
            proc = subprocess.Popen(argv, stdout=subprocess.PIPE, stderr=subprocess.PIPE, text=True)
        except OSError as exc:
            return Unknown(RESOURCE, f"cannot launch {argv[0]!r}: {exc}")
        try:
            out, err = proc.communicate(timeout=timeout)
        except subprocess.TimeoutExpired:
            proc.kill()
            proc.communicate()
            return Unknown(TIMEOUT, f"external solver exceeded {timeout} s", time.perf_counter() - start)
        elapsed = time.perf_counter() - start
    try:
        values = read_dimacs_result(out, proc.returncode)
    except DimacsParseError as exc:
        log.warning("unparseable solver output (exit %s): %s", proc.returncode, err.strip()[-500:])
        return Unknown(PARSE_FAILURE, str(exc), elapsed)
    if values is None:
        return Unsat(elapsed)
    assignment = {v: values.get(v, False) for v in range(1, n_vars + 1)}
    return Sat(assignment, elapsed)


def solve(cnf, config: BackendConfig = BackendConfig()) -> SolveOutcome:
    """Solve under ``config``; SAT models are re-checked against every clause."""
    if config.backend == BUILTIN:
        outcome = builtin_solve(cnf, config.timeout, config.seed)
    else:
        outcome = external_solve(cnf, config.command, config.timeout, config.threads)
    if isinstance(outcome, Sat):
        check_assignment(_as_clauses(cnf)[1], outcome.assignment)
    return outcome
