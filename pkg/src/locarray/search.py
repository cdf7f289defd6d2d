"""Grow N from a lower bound until a locating array is found."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .backend import BackendConfig, Sat, Unknown, Unsat, solve
from .encoder import EncodingConfig, decode, encode
from .model import SutModel, TestArray, is_locating_bar1t

log = logging.getLogger(__name__)

# Published lower bounds on the size of minimum (1-bar, 2)-locating arrays,
# keyed by (k, v).
KNOWN_BOUNDS_T2 = {
    (3, 2): 6, (4, 2): 7, (5, 2): 8, (6, 2): 9, (7, 2): 10, (8, 2): 10,
    (9, 2): 11, (10, 2): 11, (11, 2): 11, (12, 2): 11,
    **{(k, 2): 12 for k in range(13, 24)},
    (3, 3): 14, (4, 3): 16, (5, 3): 17, (6, 3): 17, (7, 3): 18, (8, 3): 20,
    (9, 3): 21, (10, 3): 22, (11, 3): 22, (12, 3): 23, (13, 3): 24,
}


class NoArrayFound(RuntimeError):
    def __init__(self, message, log_entries):
        super().__init__(message)
        self.log = log_entries


def lower_bound_with_source(model: SutModel) -> tuple[int, str]:
    trivial = model.v**model.t
    if model.t == 2 and (model.k, model.v) in KNOWN_BOUNDS_T2:
        return max(trivial, KNOWN_BOUNDS_T2[(model.k, model.v)]), "table"
    return trivial, "trivial"


def lower_bound(model: SutModel) -> int:
    return lower_bound_with_source(model)[0]


@dataclass
class SearchConfig:
    model: SutModel
    encoding: EncodingConfig = field(default_factory=EncodingConfig)
    backend: BackendConfig = field(default_factory=BackendConfig)
    n_start_override: int | None = None
    n_max: int | None = None

    def __post_init__(self):
        if self.n_max is None:
            self.n_max = self.model.v**self.model.k
        if self.n_max < self.n_start:
            raise ValueError(f"n_max={self.n_max} is below the starting size {self.n_start}")

    @property
    def n_start(self) -> int:
        if self.n_start_override is not None:
            return self.n_start_override
        return lower_bound(self.model)


@dataclass(frozen=True)
class LogEntry:
    n: int
    outcome: str  # S, U or T
    seconds: float
    detail: str = ""


@dataclass
class SearchOutcome:
    array: TestArray
    n: int
    is_minimum: bool
    log: list[LogEntry]
    encoding: EncodingConfig
    backend: BackendConfig

    @property
    def model(self) -> SutModel:
        return self.array.model

    def to_dict(self) -> dict:
        m = self.model
        return {
            "k": m.k, "v": m.v, "t": m.t,
            "n": self.n,
            "is_minimum": self.is_minimum,
            "encoding": self.encoding.to_dict(),
            "backend": self.backend.to_dict(),
            "log": [{"n": e.n, "outcome": e.outcome, "seconds": round(e.seconds, 6)} for e in self.log],
            "array": self.array.cells.astype(int).tolist(),
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "SearchOutcome":
        model = SutModel(data["k"], data["v"], data["t"])
        backend = dict(data.get("backend", {}))
        return cls(
            array=TestArray(np.array(data["array"]), model),
            n=data["n"],
            is_minimum=data["is_minimum"],
            log=[LogEntry(e["n"], e["outcome"], e["seconds"]) for e in data["log"]],
            encoding=EncodingConfig(**data.get("encoding", {})),
            backend=BackendConfig(**backend),
        )

    def save(self, path: str | Path):
        Path(path).write_text(self.to_json(indent=2) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "SearchOutcome":
        return cls.from_dict(json.loads(Path(path).read_text()))


def find_minimum(config: SearchConfig) -> SearchOutcome:
    """Solve n = start, start+1, ... until SAT.

    Minimality is claimed only when every size below the answer, down to the
    known lower bound, was proven UNSAT.
    """
    model = config.model
    is_minimum = config.n_start <= lower_bound(model)
    entries: list[LogEntry] = []
    for n in range(config.n_start, config.n_max + 1):
        cnf = encode(model, n, config.encoding)
        log.info("solving %s n=%d (%d vars, %d clauses)", model, n, cnf.variable_count, cnf.clause_count)
        outcome = solve(cnf, config.backend)
        if isinstance(outcome, Sat):
            entries.append(LogEntry(n, "S", outcome.wall_time))
            array = decode(cnf, outcome.assignment)
            if not is_locating_bar1t(array):
                raise AssertionError("decoded array failed re-verification")
            return SearchOutcome(array, n, is_minimum, entries, config.encoding, config.backend)
        if isinstance(outcome, Unsat):
            entries.append(LogEntry(n, "U", outcome.wall_time))
        else:
            assert isinstance(outcome, Unknown)
            entries.append(LogEntry(n, "T", outcome.wall_time, f"{outcome.reason}: {outcome.detail}"))
            is_minimum = False
    raise NoArrayFound(f"no locating array with at most {config.n_max} rows", entries)
