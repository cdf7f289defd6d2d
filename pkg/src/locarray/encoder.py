"""CNF encodings of "a (1-bar, t)-locating array with n rows exists".

Two schemes share one-hot cell variables ``x[r, i, l]`` (row r, factor i,
level l is true):

* ``naive`` defines a row-coverage indicator per (row, interaction) with a
  Tseitin AND and states covering / pairwise distinguishing over those.
* ``alt`` adds one-hot alternative-matrix variables ``y[r, (i1..it), L]``
  where ``L`` is the base-v number formed by the row's levels on the factor
  tuple, channels them to ``x`` and states covering / distinguishing
  directly over ``y`` literals.

Optional extras: all-zero first row, strict row lex order and non-strict
column lex order. Variable ids: all ``x`` by (r, i, l), then all ``y`` by
(r, tuple, L), then auxiliaries in emission order. Clause order is fixed,
so the DIMACS output is byte-for-byte reproducible.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .model import (
    Interaction,
    ModelError,
    SutModel,
    TestArray,
    enumerate_interactions,
    is_locating_bar1t,
)

COVERING = "covering"
LOCATING = "locating"
CHANNEL = "channel"
EXACTLY_ONE = "exactly-one"
LEX_ROW = "lex-row"
LEX_COL = "lex-col"
FIRST_ROW = "first-row"


class EncodingError(ValueError):
    pass


class MalformedAssignment(EncodingError):
    pass


class DimacsParseError(ValueError):
    pass


class Scheme(str, enum.Enum):
    NAIVE = "naive"
    ALTERNATIVE = "alt"


@dataclass(frozen=True)
class EncodingConfig:
    scheme: Scheme = Scheme.ALTERNATIVE
    symmetry_breaking: bool = True
    fix_first_row: bool = True
    skip_conflicting_pairs: bool = True

    def __post_init__(self):
        object.__setattr__(self, "scheme", Scheme(self.scheme))

    def label(self) -> str:
        parts = [self.scheme.value]
        if self.symmetry_breaking:
            parts.append("sb")
        if self.fix_first_row:
            parts.append("fix")
        if self.skip_conflicting_pairs:
            parts.append("skip")
        return "+".join(parts)

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme.value,
            "symmetry_breaking": self.symmetry_breaking,
            "fix_first_row": self.fix_first_row,
            "skip_conflicting_pairs": self.skip_conflicting_pairs,
        }


@dataclass
class VariableMap:
    x: dict[tuple[int, int, int], int] = field(default_factory=dict)
    y: dict[tuple[int, tuple[int, ...], int], int] = field(default_factory=dict)
    aux: dict[int, tuple[str, tuple]] = field(default_factory=dict)
    n_vars: int = 0

    def new(self) -> int:
        self.n_vars += 1
        return self.n_vars

    def new_aux(self, tag: str, key: tuple) -> int:
        var = self.new()
        self.aux[var] = (tag, key)
        return var

    def lines(self) -> list[str]:
        """Sidecar map, one line per variable in id order."""
        out = {}
        for (r, i, l), var in self.x.items():
            out[var] = f"{var} x {r} {i} {l}"
        for (r, tup, L), var in self.y.items():
            out[var] = f"{var} y {r} {','.join(map(str, tup))} {L}"
        for var, (tag, key) in self.aux.items():
            out[var] = f"{var} aux {tag} " + " ".join(_fmt_key(part) for part in key)
        return [out[var].rstrip() for var in sorted(out)]


def _fmt_key(part) -> str:
    if isinstance(part, Interaction):
        return ",".join(f"{f}:{l}" for f, l in part.entries)
    if isinstance(part, tuple):
        return ",".join(map(str, part))
    return str(part)


@dataclass(frozen=True)
class ClauseGroup:
    tag: str
    key: tuple
    clauses: tuple[tuple[int, ...], ...]


@dataclass
class CnfInstance:
    model: SutModel
    n: int
    config: EncodingConfig
    variable_map: VariableMap
    groups: list[ClauseGroup]

    @property
    def variable_count(self) -> int:
        return self.variable_map.n_vars

    @property
    def clauses(self) -> list[tuple[int, ...]]:
        return [c for g in self.groups for c in g.clauses]

    @property
    def clause_count(self) -> int:
        return sum(len(g.clauses) for g in self.groups)

    def groups_tagged(self, tag: str) -> list[ClauseGroup]:
        return [g for g in self.groups if g.tag == tag]

    def check(self):
        """Assert the structural invariants of the instance."""
        n = self.variable_count
        for g in self.groups:
            for c in g.clauses:
                lits = set(c)
                if any(-l in lits for l in lits):
                    raise EncodingError(f"tautological clause {c} in {g.tag}")
                if any(l == 0 or abs(l) > n for l in c):
                    raise EncodingError(f"clause {c} references an unknown variable")


# -- clause emitters ------------------------------------------------------------


def emit_exactly_one(lits: Sequence[int]) -> list[tuple[int, ...]]:
    """At-least-one clause plus pairwise at-most-one clauses."""
    if len(lits) < 2:
        raise EncodingError("exactly-one needs at least two candidate literals")
    clauses = [tuple(lits)]
    clauses += [(-a, -b) for a, b in itertools.combinations(lits, 2)]
    return clauses


def tuple_value(levels: Sequence[int], v: int) -> int:
    """Base-v number with the first level as the most significant digit."""
    out = 0
    for l in levels:
        out = out * v + l
    return out


def tuple_levels(value: int, v: int, t: int) -> tuple[int, ...]:
    digits = []
    for _ in range(t):
        value, d = divmod(value, v)
        digits.append(d)
    return tuple(reversed(digits))


class _Builder:
    def __init__(self, model: SutModel, n: int, config: EncodingConfig):
        self.model, self.n, self.config = model, n, config
        self.vm = VariableMap()
        self.groups: list[ClauseGroup] = []
        self.interactions = enumerate_interactions(model)
        self.tuples = list(itertools.combinations(range(1, model.k + 1), model.t))
        self.indicator: dict[tuple[int, Interaction], int] = {}

        k, v = model.k, model.v
        for r in range(1, n + 1):
            for i in range(1, k + 1):
                for l in range(v):
                    self.vm.x[(r, i, l)] = self.vm.new()
        if config.scheme is Scheme.ALTERNATIVE:
            span = v**model.t
            for r in range(1, n + 1):
                for tup in self.tuples:
                    for L in range(span):
                        self.vm.y[(r, tup, L)] = self.vm.new()

    def x(self, r, i, l) -> int:
        return self.vm.x[(r, i, l)]

    def add(self, tag, key, clauses):
        seen = set()
        unique = []
        for c in clauses:
            c = tuple(c)
            if c not in seen:
                seen.add(c)
                unique.append(c)
        self.groups.append(ClauseGroup(tag, key, tuple(unique)))

    def covers(self, r: int, T: Interaction) -> int:
        """Literal that is true iff row r covers T."""
        if self.config.scheme is Scheme.ALTERNATIVE:
            return self.vm.y[(r, T.factors, tuple_value(T.levels, self.model.v))]
        return self.indicator[(r, T)]


def emit_cell_domains(b: _Builder):
    m = b.model
    for r in range(1, b.n + 1):
        for i in range(1, m.k + 1):
            b.add(EXACTLY_ONE, ("x", r, i), emit_exactly_one([b.x(r, i, l) for l in range(m.v)]))
    if b.config.scheme is not Scheme.ALTERNATIVE:
        return
    span = m.v**m.t
    for r in range(1, b.n + 1):
        for tup in b.tuples:
            lits = [b.vm.y[(r, tup, L)] for L in range(span)]
            b.add(EXACTLY_ONE, ("y", r, tup), emit_exactly_one(lits))


def emit_channel(b: _Builder):
    """x levels on a factor tuple select the matching y value, and back."""
    m = b.model
    for r in range(1, b.n + 1):
        for tup in b.tuples:
            clauses = []
            for levels in itertools.product(range(m.v), repeat=m.t):
                y = b.vm.y[(r, tup, tuple_value(levels, m.v))]
                xs = [b.x(r, i, l) for i, l in zip(tup, levels)]
                clauses.append(tuple(-x for x in xs) + (y,))
                clauses += [(-y, x) for x in xs]
            b.add(CHANNEL, (r, tup), clauses)


def emit_first_row_zero(b: _Builder):
    for i in range(1, b.model.k + 1):
        b.add(FIRST_ROW, (i,), [(b.x(1, i, 0),)])


def emit_covering(b: _Builder):
    naive = b.config.scheme is Scheme.NAIVE
    for T in b.interactions:
        clauses = []
        if naive:
            for r in range(1, b.n + 1):
                p = b.vm.new_aux(COVERING, (r, T))
                b.indicator[(r, T)] = p
                xs = [b.x(r, f, l) for f, l in T.entries]
                clauses += [(-p, x) for x in xs]
                clauses.append((p,) + tuple(-x for x in xs))
        top = tuple(b.covers(r, T) for r in range(1, b.n + 1))
        b.add(COVERING, (T,), [top] + clauses)


def emit_locating(b: _Builder):
    """Some row covers exactly one interaction of each distinct pair."""
    skip = b.config.skip_conflicting_pairs
    for T1, T2 in itertools.combinations(b.interactions, 2):
        if skip and T1.conflicts_with(T2):
            continue
        clauses = []
        top = []
        for r in range(1, b.n + 1):
            a, c = b.covers(r, T1), b.covers(r, T2)
            z = b.vm.new_aux(LOCATING, (r, T1, T2))
            top.append(z)
            clauses += [(-z, a, c), (-z, -a, -c), (z, -a, c), (z, a, -c)]
        b.add(LOCATING, (T1, T2), [tuple(top)] + clauses)


def _lex_clauses(b: _Builder, tag, key, left, right, strict) -> list[tuple[int, ...]]:
    """left <=_lex right over one-hot integer vectors (strict if asked).

    ``left`` and ``right`` are lists of per-position level->literal lists.
    Auxiliary e_j means "positions 1..j are pairwise equal".
    """
    v = b.model.v
    size = len(left)
    clauses = []
    prev = None
    for j in range(size):
        guard = () if prev is None else (-prev,)
        a, c = left[j], right[j]
        for la in range(v):
            for lc in range(la):
                clauses.append(guard + (-a[la], -c[lc]))
        last = j == size - 1
        if last and not strict:
            break
        if last:
            clauses += [guard + (-a[l], -c[l]) for l in range(v)]
        else:
            e = b.vm.new_aux(tag, key + (j + 1,))
            clauses += [guard + (-a[l], -c[l], e) for l in range(v)]
            prev = e
    return clauses


def emit_lex_rows(b: _Builder):
    m = b.model
    for r in range(1, b.n):
        left = [[b.x(r, i, l) for l in range(m.v)] for i in range(1, m.k + 1)]
        right = [[b.x(r + 1, i, l) for l in range(m.v)] for i in range(1, m.k + 1)]
        b.add(LEX_ROW, (r,), _lex_clauses(b, LEX_ROW, (r,), left, right, strict=True))


def emit_lex_cols(b: _Builder):
    m = b.model
    for i in range(1, m.k):
        left = [[b.x(r, i, l) for l in range(m.v)] for r in range(1, b.n + 1)]
        right = [[b.x(r, i + 1, l) for l in range(m.v)] for r in range(1, b.n + 1)]
        b.add(LEX_COL, (i,), _lex_clauses(b, LEX_COL, (i,), left, right, strict=False))


def encode(model: SutModel, n: int, config: EncodingConfig = EncodingConfig()) -> CnfInstance:
    """CNF that is satisfiable iff an n-row (1-bar, t)-locating array exists."""
    if n < 1:
        raise EncodingError("row count must be at least 1")
    if config.symmetry_breaking and n > model.v**model.k:
        raise EncodingError(f"n={n} exceeds v^k={model.v ** model.k}; row ordering would force UNSAT")
    b = _Builder(model, n, config)
    emit_cell_domains(b)
    if config.scheme is Scheme.ALTERNATIVE:
        emit_channel(b)
    if config.fix_first_row:
        emit_first_row_zero(b)
    emit_covering(b)
    emit_locating(b)
    if config.symmetry_breaking:
        emit_lex_rows(b)
        emit_lex_cols(b)
    return CnfInstance(model, n, config, b.vm, b.groups)


# -- decoding -----------------------------------------------------------------


def _truth_lookup(assignment) -> callable:
    if isinstance(assignment, Mapping):
        return lambda var: bool(assignment.get(var, False))
    seq = list(assignment)
    return lambda var: bool(seq[var - 1])


def decode(cnf: CnfInstance, assignment, verify: bool = True) -> TestArray:
    """Read the array out of a satisfying assignment.

    ``assignment`` is either a mapping var -> bool or a sequence whose entry
    ``var - 1`` is the truth value of ``var``.
    """
    truth = _truth_lookup(assignment)
    m = cnf.model
    cells = np.zeros((cnf.n, m.k), dtype=np.int64)
    for r in range(1, cnf.n + 1):
        for i in range(1, m.k + 1):
            levels = [l for l in range(m.v) if truth(cnf.variable_map.x[(r, i, l)])]
            if len(levels) != 1:
                raise MalformedAssignment(f"cell ({r}, {i}) has true levels {levels}")
            cells[r - 1, i - 1] = levels[0]
    array = TestArray(cells, m)
    if verify and not is_locating_bar1t(array):
        raise EncodingError("decoded array is not (1-bar, t)-locating")
    return array


def decode_alternative_matrix(cnf: CnfInstance, assignment) -> dict[tuple[int, tuple[int, ...]], int]:
    """y values per (row, factor tuple) from an assignment of an ``alt`` encoding."""
    truth = _truth_lookup(assignment)
    out = {}
    for (r, tup, L), var in cnf.variable_map.y.items():
        if truth(var):
            if (r, tup) in out:
                raise MalformedAssignment(f"y slot ({r}, {tup}) has several true values")
            out[(r, tup)] = L
    return out


def array_units(cnf: CnfInstance, array: TestArray) -> list[tuple[int]]:
    """Unit clauses pinning the x variables to the cells of ``array``."""
    if array.n_rows != cnf.n or array.model.k != cnf.model.k:
        raise EncodingError("array shape does not match the encoding")
    units = []
    for (r, i, l), var in cnf.variable_map.x.items():
        units.append((var,) if array.cells[r - 1, i - 1] == l else (-var,))
    return units


# -- DIMACS ---------------------------------------------------------------------


def write_dimacs(cnf_or_clauses, n_vars: int | None = None) -> bytes:
    if isinstance(cnf_or_clauses, CnfInstance):
        n_vars = cnf_or_clauses.variable_count
        clauses = cnf_or_clauses.clauses
    else:
        clauses = list(cnf_or_clauses)
        if n_vars is None:
            n_vars = max((abs(l) for c in clauses for l in c), default=0)
    lines = [f"p cnf {n_vars} {len(clauses)}"]
    lines += [" ".join(map(str, c)) + " 0" for c in clauses]
    return ("\n".join(lines) + "\n").encode()


def read_dimacs(data: bytes | str) -> tuple[int, list[tuple[int, ...]]]:
    """Parse DIMACS CNF into (variable count, clauses)."""
    if isinstance(data, bytes):
        data = data.decode()
    n_vars = n_clauses = None
    clauses, current = [], []
    for line in data.splitlines():
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsParseError(f"bad problem line: {line!r}")
            n_vars, n_clauses = int(parts[2]), int(parts[3])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if current:
        clauses.append(tuple(current))
    if n_vars is None:
        raise DimacsParseError("missing problem line")
    if n_clauses != len(clauses):
        raise DimacsParseError(f"header declares {n_clauses} clauses, found {len(clauses)}")
    return n_vars, clauses


def read_dimacs_result(text: str, exit_code: int | None = None) -> dict[int, bool] | None:
    """Parse SAT competition style solver output.

    Returns a var -> bool mapping for SAT, None for UNSAT. Exit codes 10/20
    stand in for a missing ``s`` line. Raises DimacsParseError otherwise.
    """
    status = None
    values: dict[int, bool] = {}
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("s "):
            word = line[2:].strip().upper()
            if word == "SATISFIABLE":
                status = "SAT"
            elif word == "UNSATISFIABLE":
                status = "UNSAT"
            else:
                raise DimacsParseError(f"solver reported {word!r}")
        elif line.startswith("v ") or line == "v":
            try:
                lits = [int(tok) for tok in line[1:].split()]
            except ValueError:
                raise DimacsParseError(f"bad value line: {line!r}") from None
            for lit in lits:
                if lit:
                    values[abs(lit)] = lit > 0
    if status is None:
        status = {10: "SAT", 20: "UNSAT"}.get(exit_code)
    if status == "UNSAT":
        return None
    if status == "SAT":
        if not values:
            raise DimacsParseError("SAT reported without a model")
        return values
    raise DimacsParseError("no satisfiability verdict in solver output")
