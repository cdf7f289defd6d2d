"""SUT model, interactions, test arrays and the definitional verifier.

Factors are numbered 1..k and levels 0..v-1. Rows are numbered 1..N when
they leave this module (``rho`` returns 1-based row numbers) so results can
be read against printed arrays directly.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from math import comb
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np


class ModelError(ValueError):
    """Raised for invalid models, arrays, interactions or outcome vectors."""


@dataclass(frozen=True)
class SutModel:
    k: int
    v: int
    t: int

    def __post_init__(self):
        for name in ("k", "v", "t"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or value < 1:
                raise ModelError(f"{name} must be a positive integer, got {value!r}")
        if self.v < 2:
            raise ModelError("v must be at least 2")
        if self.t > self.k:
            raise ModelError(f"strength t={self.t} exceeds factor count k={self.k}")

    @property
    def n_interactions(self) -> int:
        return comb(self.k, self.t) * self.v**self.t


@functools.total_ordering
@dataclass(frozen=True)
class Interaction:
    """A set of (factor, level) pairs kept sorted by factor.

    Interactions order by factor tuple, then level tuple (enumeration order).
    """

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        entries = tuple(sorted((int(f), int(l)) for f, l in self.entries))
        factors = [f for f, _ in entries]
        if len(set(factors)) != len(factors):
            raise ModelError(f"interaction repeats a factor: {entries}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, *pairs: tuple[int, int]) -> "Interaction":
        return cls(tuple(pairs))

    @property
    def factors(self) -> tuple[int, ...]:
        return tuple(f for f, _ in self.entries)

    @property
    def levels(self) -> tuple[int, ...]:
        return tuple(l for _, l in self.entries)

    @property
    def strength(self) -> int:
        return len(self.entries)

    def conflicts_with(self, other: "Interaction") -> bool:
        """True when both interactions fix some shared factor to different levels."""
        mine = dict(self.entries)
        return any(f in mine and mine[f] != l for f, l in other.entries)

    def validate(self, model: SutModel):
        for f, l in self.entries:
            if not 1 <= f <= model.k or not 0 <= l < model.v:
                raise ModelError(f"({f}, {l}) is outside the model {model}")

    def sort_key(self):
        return (len(self.entries), self.factors, self.levels)

    def __lt__(self, other):
        if not isinstance(other, Interaction):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def __len__(self):
        return len(self.entries)

    def __str__(self):
        return "(" + ", ".join(f"F{f}={l}" for f, l in self.entries) + ")"


def enumerate_interactions(model: SutModel) -> list[Interaction]:
    """All strength-t interactions, ordered by factor tuple then level tuple."""
    out = []
    for factors in itertools.combinations(range(1, model.k + 1), model.t):
        for levels in itertools.product(range(model.v), repeat=model.t):
            out.append(Interaction(tuple(zip(factors, levels))))
    return out


@dataclass(frozen=True, eq=False)
class TestArray:
    """An N x k array of levels. Cells are stored as a read-only int8 matrix."""

    __test__ = False  # keep pytest from collecting this class

    cells: np.ndarray
    model: SutModel
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        cells = np.array(self.cells, dtype=np.int64)
        if cells.ndim != 2:
            raise ModelError("array cells must be two-dimensional")
        if cells.shape[0] == 0:
            raise ModelError("array must have at least one row")
        if cells.shape[1] != self.model.k:
            raise ModelError(f"expected {self.model.k} columns, got {cells.shape[1]}")
        if cells.min() < 0 or cells.max() >= self.model.v:
            raise ModelError(f"cell values must lie in 0..{self.model.v - 1}")
        cells = cells.astype(np.int8 if self.model.v <= 127 else np.int64)
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], v: int, t: int) -> "TestArray":
        rows = [list(r) for r in rows]
        if not rows:
            raise ModelError("array must have at least one row")
        return cls(np.array(rows), SutModel(len(rows[0]), v, t))

    @property
    def n_rows(self) -> int:
        return self.cells.shape[0]

    def __eq__(self, other):
        if not isinstance(other, TestArray):
            return NotImplemented
        return self.model == other.model and np.array_equal(self.cells, other.cells)

    def __hash__(self):
        return hash((self.model, self.cells.tobytes()))

    def rows(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in row) for row in self.cells]

    def rho_index(self) -> dict[Interaction, frozenset[int]]:
        """Map every strength-t interaction to its covering row set (cached)."""
        if self._index is None:
            index = {}
            cells = self.cells
            for factors in itertools.combinations(range(self.model.k), self.model.t):
                sub = cells[:, factors]
                groups: dict[tuple, list[int]] = {}
                for r, levels in enumerate(map(tuple, sub.tolist()), start=1):
                    groups.setdefault(levels, []).append(r)
                fs = tuple(f + 1 for f in factors)
                for levels in itertools.product(range(self.model.v), repeat=self.model.t):
                    index[Interaction(tuple(zip(fs, levels)))] = frozenset(groups.get(levels, ()))
            object.__setattr__(self, "_index", index)
        return self._index

    def to_text(self) -> str:
        m = self.model
        lines = [f"{self.n_rows} {m.k} {m.v} {m.t}"]
        lines += [" ".join(str(int(x)) for x in row) for row in self.cells]
        return "\n".join(lines) + "\n"


def rho(array: TestArray, interaction: Interaction | Iterable[Interaction]) -> frozenset[int]:
    """1-based rows of ``array`` covering ``interaction``.

    Given a collection of interactions, returns the union of their row sets.
    The empty interaction and the empty collection both map to the empty set.
    """
    if not isinstance(interaction, Interaction):
        out: set[int] = set()
        for item in interaction:
            out |= rho(array, item)
        return frozenset(out)
    if len(interaction) == 0:
        return frozenset()
    interaction.validate(array.model)
    mask = np.ones(array.n_rows, dtype=bool)
    for f, l in interaction.entries:
        mask &= array.cells[:, f - 1] == l
    return frozenset(int(r) + 1 for r in np.flatnonzero(mask))


def uncovered_interactions(array: TestArray) -> list[Interaction]:
    return [T for T, rows in array.rho_index().items() if not rows]


def indistinguishable_pairs(array: TestArray) -> list[tuple[Interaction, Interaction]]:
    """Unordered pairs of distinct interactions with equal row sets, sorted."""
    buckets: dict[frozenset[int], list[Interaction]] = {}
    for T, rows in array.rho_index().items():
        buckets.setdefault(rows, []).append(T)
    pairs = []
    for group in buckets.values():
        for pair in itertools.combinations(sorted(group), 2):
            pairs.append(pair)
    return sorted(pairs)


def is_covering(array: TestArray) -> bool:
    return all(array.rho_index().values())


def is_locating_1t(array: TestArray) -> bool:
    index = array.rho_index()
    return len(set(index.values())) == len(index)


def is_locating_bar1t(array: TestArray) -> bool:
    return is_covering(array) and is_locating_1t(array)


# -- fault localization --------------------------------------------------------

PASS, FAIL = "P", "F"


@dataclass(frozen=True)
class NoFault:
    def __str__(self):
        return "NoFault"


@dataclass(frozen=True)
class Located:
    interaction: Interaction

    def __str__(self):
        return f"Located {self.interaction}"


@dataclass(frozen=True)
class Inconsistent:
    reason: str
    candidates: tuple[Interaction, ...] = ()

    def __str__(self):
        return f"Inconsistent: {self.reason}"


LocateResult = NoFault | Located | Inconsistent


def parse_outcomes(text: str) -> tuple[str, ...]:
    """Parse a P/F line. Whitespace is ignored."""
    verdicts = tuple(ch for ch in text if not ch.isspace())
    bad = {ch for ch in verdicts if ch not in (PASS, FAIL)}
    if bad:
        raise ModelError(f"outcome characters must be P or F, got {sorted(bad)}")
    return verdicts


def simulate_outcomes(array: TestArray, faulty: Iterable[Interaction]) -> tuple[str, ...]:
    """Outcome vector when exactly the given interactions trigger failures."""
    failing = rho(array, list(faulty))
    return tuple(FAIL if r in failing else PASS for r in range(1, array.n_rows + 1))


def locate_fault(array: TestArray, outcomes: Sequence[str] | str) -> LocateResult:
    """Identify the single failure-triggering interaction from test outcomes.

    Assumes at most one strength-t interaction triggers failures. When no
    interaction, or more than one, explains the fail set the result is
    ``Inconsistent`` rather than a guess.
    """
    if isinstance(outcomes, str):
        outcomes = parse_outcomes(outcomes)
    if len(outcomes) != array.n_rows:
        raise ModelError(f"got {len(outcomes)} outcomes for {array.n_rows} rows")
    fails = frozenset(r for r, o in enumerate(outcomes, start=1) if o == FAIL)
    if not fails:
        return NoFault()
    matches = tuple(T for T, rows in array.rho_index().items() if rows == fails)
    if len(matches) == 1:
        return Located(matches[0])
    if not matches:
        return Inconsistent("no single interaction explains the failed rows")
    return Inconsistent(f"{len(matches)} interactions explain the failed rows", matches)


# -- text formats ----------------------------------------------------------------


def parse_array(text: str) -> TestArray:
    """Parse the ``N k v t`` header followed by N rows of k levels."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ModelError("empty array file")
    try:
        header = [int(x) for x in lines[0]]
        rows = [[int(x) for x in ln] for ln in lines[1:]]
    except ValueError as exc:
        raise ModelError(f"non-integer token: {exc}") from None
    if len(header) != 4:
        raise ModelError("header must be 'N k v t'")
    n, k, v, t = header
    if len(rows) != n:
        raise ModelError(f"header declares {n} rows, found {len(rows)}")
    if any(len(r) != k for r in rows):
        raise ModelError(f"every row must have {k} entries")
    return TestArray(np.array(rows).reshape(n, k), SutModel(k, v, t))


def read_array(path: str | Path) -> TestArray:
    return parse_array(Path(path).read_text())


def write_array(array: TestArray, path: str | Path):
    Path(path).write_text(array.to_text())


def fixture(name: str) -> TestArray:
    """Load a bundled fixture: ``covering5``, ``locating7`` or ``locating11``."""
    return read_array(Path(__file__).parent / "data" / f"{name}.txt")
