"""A conflict-driven clause learning SAT solver in pure Python.

Literals are DIMACS integers at the interface. Internally variable ``x``
(1-based) maps to literal codes ``2*(x-1)`` (positive) and ``2*(x-1)+1``
(negative), so negation is ``lit ^ 1`` and the variable index is ``lit >> 1``.

Features: two-watched-literal propagation with a separate binary-clause
path, first-UIP learning with recursive minimization, VSIDS activities on a
lazy heap, phase saving, Luby restarts and activity/LBD based learnt clause
deletion.
"""

from __future__ import annotations

import heapq
import random
import time
from dataclasses import dataclass

TRUE, FALSE, UNDEF = 1, -1, 0


class SolverTimeout(Exception):
    pass


def luby(i: int) -> int:
    """i-th element (0-based) of the Luby sequence 1 1 2 1 1 2 4 ..."""
    size, seq = 1, 0
    while size < i + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != i:
        size = (size - 1) >> 1
        seq -= 1
        i = i % size
    return 1 << seq


@dataclass
class SolverStats:
    decisions: int = 0
    conflicts: int = 0
    propagations: int = 0
    restarts: int = 0
    learnts_deleted: int = 0


class CdclSolver:
    """Single-use CDCL solver over a fixed clause set.

    ``solve`` returns True (model available in ``model``), False, or raises
    ``SolverTimeout`` once the deadline passes.
    """

    restart_unit = 100
    var_decay = 0.95
    clause_decay = 0.999
    first_reduce = 2000
    reduce_increment = 300

    def __init__(self, n_vars: int, clauses, seed: int = 0):
        self.n_vars = n_vars
        n_lits = 2 * n_vars
        self.val = [UNDEF] * n_lits
        self.level = [0] * n_vars
        self.reason = [None] * n_vars
        self.phase = [False] * n_vars
        self.seen = [0] * n_vars
        self.watches = [[] for _ in range(n_lits)]
        self.bin_watches = [[] for _ in range(n_lits)]
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.learnts: list[list[int]] = []
        self.clause_act: dict[int, float] = {}
        self.clause_lbd: dict[int, int] = {}
        self.cla_inc = 1.0
        self.stats = SolverStats()
        self.model: list[bool] | None = None
        self.ok = True

        rng = random.Random(seed)
        # tiny seeded perturbation fixes the initial decision order
        self.activity = [rng.random() * 1e-5 for _ in range(n_vars)]
        self.var_inc = 1.0
        self.heap = [(-a, v) for v, a in enumerate(self.activity)]
        heapq.heapify(self.heap)

        for clause in clauses:
            if not self._add_input_clause(clause):
                self.ok = False
                break

    # -- clause database ------------------------------------------------------

    @staticmethod
    def _internal(d: int) -> int:
        return 2 * (d - 1) if d > 0 else 2 * (-d - 1) + 1

    def _add_input_clause(self, clause) -> bool:
        lits = set()
        for d in clause:
            d = int(d)
            if d == 0 or abs(d) > self.n_vars:
                raise ValueError(f"literal {d} out of range 1..{self.n_vars}")
            lits.add(self._internal(d))
        if any(l ^ 1 in lits for l in lits):
            return True  # tautology
        val = self.val
        if any(val[l] == TRUE for l in lits):
            return True
        lits = sorted(l for l in lits if val[l] != FALSE)
        if not lits:
            return False
        if len(lits) == 1:
            self._enqueue(lits[0], None)
            return self._propagate() is None
        self._attach(lits)
        return True

    def _attach(self, c: list[int]):
        if len(c) == 2:
            a, b = c
            self.bin_watches[a].append((b, [b, a]))
            self.bin_watches[b].append((a, [a, b]))
        else:
            self.watches[c[0]].append(c)
            self.watches[c[1]].append(c)

    # -- assignment -----------------------------------------------------------

    def _enqueue(self, lit: int, reason):
        v = lit >> 1
        self.val[lit] = TRUE
        self.val[lit ^ 1] = FALSE
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)

    def _propagate(self):
        """Unit propagation. Returns a conflicting clause or None."""
        val = self.val
        trail = self.trail
        watches = self.watches
        bin_watches = self.bin_watches
        level = self.level
        reason = self.reason
        dl = len(self.trail_lim)
        qhead = self.qhead
        props = 0
        while qhead < len(trail):
            false_lit = trail[qhead] ^ 1
            qhead += 1
            props += 1
            for other, rc in bin_watches[false_lit]:
                vo = val[other]
                if vo == UNDEF:
                    val[other] = TRUE
                    val[other ^ 1] = FALSE
                    level[other >> 1] = dl
                    reason[other >> 1] = rc
                    trail.append(other)
                elif vo == FALSE:
                    self.qhead = len(trail)
                    self.stats.propagations += props
                    return rc
            ws = watches[false_lit]
            i = j = 0
            n = len(ws)
            while i < n:
                c = ws[i]
                i += 1
                if c[0] == false_lit:
                    c[0] = c[1]
                    c[1] = false_lit
                first = c[0]
                if val[first] == TRUE:
                    ws[j] = c
                    j += 1
                    continue
                for kk in range(2, len(c)):
                    lk = c[kk]
                    if val[lk] != FALSE:
                        c[1] = lk
                        c[kk] = false_lit
                        watches[lk].append(c)
                        break
                else:
                    ws[j] = c
                    j += 1
                    if val[first] == FALSE:
                        while i < n:
                            ws[j] = ws[i]
                            j += 1
                            i += 1
                        del ws[j:]
                        self.qhead = len(trail)
                        self.stats.propagations += props
                        return c
                    val[first] = TRUE
                    val[first ^ 1] = FALSE
                    level[first >> 1] = dl
                    reason[first >> 1] = c
                    trail.append(first)
            del ws[j:]
        self.qhead = qhead
        self.stats.propagations += props
        return None

    def _cancel_until(self, lvl: int):
        if len(self.trail_lim) <= lvl:
            return
        val, phase, heap, activity = self.val, self.phase, self.heap, self.activity
        reason = self.reason
        start = self.trail_lim[lvl]
        trail = self.trail
        for idx in range(len(trail) - 1, start - 1, -1):
            lit = trail[idx]
            v = lit >> 1
            val[lit] = UNDEF
            val[lit ^ 1] = UNDEF
            reason[v] = None
            phase[v] = not (lit & 1)
            heapq.heappush(heap, (-activity[v], v))
        del trail[start:]
        del self.trail_lim[lvl:]
        self.qhead = start

    # -- heuristics -----------------------------------------------------------

    def _bump_var(self, v: int):
        act = self.activity[v] + self.var_inc
        self.activity[v] = act
        if act > 1e100:
            self.activity = [a * 1e-100 for a in self.activity]
            self.var_inc *= 1e-100
            self.heap = [(-self.activity[u], u) for u in range(self.n_vars) if self.val[2 * u] == UNDEF]
            heapq.heapify(self.heap)
        elif self.val[2 * v] == UNDEF:
            heapq.heappush(self.heap, (-act, v))

    def _bump_clause(self, c):
        key = id(c)
        act = self.clause_act.get(key)
        if act is None:
            return
        act += self.cla_inc
        self.clause_act[key] = act
        if act > 1e20:
            for kk in self.clause_act:
                self.clause_act[kk] *= 1e-20
            self.cla_inc *= 1e-20

    def _pick_branch(self) -> int | None:
        heap, val, activity = self.heap, self.val, self.activity
        if len(heap) > 8 * self.n_vars + 1024:
            heap = self.heap = [(-activity[u], u) for u in range(self.n_vars) if val[2 * u] == UNDEF]
            heapq.heapify(heap)
        while heap:
            neg_act, v = heapq.heappop(heap)
            if val[2 * v] == UNDEF and -neg_act == activity[v]:
                return 2 * v + (0 if self.phase[v] else 1)
        if len(self.trail) < self.n_vars:
            # heap entries were stale; rebuild from scratch
            self.heap = [(-activity[u], u) for u in range(self.n_vars) if val[2 * u] == UNDEF]
            heapq.heapify(self.heap)
            return self._pick_branch()
        return None

    # -- conflict analysis ----------------------------------------------------

    def _analyze(self, confl):
        seen, level, reason, trail = self.seen, self.level, self.reason, self.trail
        dl = len(self.trail_lim)
        learnt = [0]
        path = 0
        p = -1
        idx = len(trail) - 1
        c = confl
        while True:
            self._bump_clause(c)
            for q in (c if p == -1 else c[1:]):
                v = q >> 1
                if not seen[v] and level[v] > 0:
                    self._bump_var(v)
                    seen[v] = 1
                    if level[v] >= dl:
                        path += 1
                    else:
                        learnt.append(q)
            while not seen[trail[idx] >> 1]:
                idx -= 1
            p = trail[idx]
            idx -= 1
            v = p >> 1
            c = reason[v]
            seen[v] = 0
            path -= 1
            if path == 0:
                break
        learnt[0] = p ^ 1

        # recursive minimization
        to_clear = list(learnt[1:])
        levels_mask = 0
        for q in learnt[1:]:
            levels_mask |= 1 << (level[q >> 1] & 63)
        kept = [learnt[0]]
        for q in learnt[1:]:
            if reason[q >> 1] is None or not self._redundant(q, levels_mask, to_clear):
                kept.append(q)
        for q in to_clear:
            seen[q >> 1] = 0
        learnt = kept

        if len(learnt) == 1:
            bt = 0
        else:
            best = 1
            for kk in range(2, len(learnt)):
                if level[learnt[kk] >> 1] > level[learnt[best] >> 1]:
                    best = kk
            learnt[1], learnt[best] = learnt[best], learnt[1]
            bt = level[learnt[1] >> 1]
        return learnt, bt

    def _redundant(self, lit, levels_mask, to_clear) -> bool:
        seen, level, reason = self.seen, self.level, self.reason
        stack = [lit]
        top = len(to_clear)
        while stack:
            c = reason[stack.pop() >> 1]
            for q in c[1:]:
                v = q >> 1
                if not seen[v] and level[v] > 0:
                    if reason[v] is not None and (levels_mask >> (level[v] & 63)) & 1:
                        seen[v] = 1
                        stack.append(q)
                        to_clear.append(q)
                    else:
                        for u in to_clear[top:]:
                            seen[u >> 1] = 0
                        del to_clear[top:]
                        return False
        return True

    def _lbd(self, c) -> int:
        level = self.level
        return len({level[q >> 1] for q in c})

    def _reduce_db(self):
        val, reason = self.val, self.reason

        def locked(c):
            return val[c[0]] == TRUE and reason[c[0] >> 1] is c

        act, lbd = self.clause_act, self.clause_lbd
        ranked = sorted(self.learnts, key=lambda c: (-lbd[id(c)], act[id(c)]))
        limit = len(ranked) // 2
        keep, drop = [], set()
        for pos, c in enumerate(ranked):
            if pos < limit and lbd[id(c)] > 2 and not locked(c):
                drop.add(id(c))
            else:
                keep.append(c)
        if not drop:
            return
        for key in drop:
            del act[key]
            del lbd[key]
        self.stats.learnts_deleted += len(drop)
        self.learnts = keep
        for ws in self.watches:
            if ws:
                ws[:] = [c for c in ws if id(c) not in drop]

    # -- main loop ------------------------------------------------------------

    def solve(self, deadline: float | None = None) -> bool:
        if not self.ok:
            return False
        if self._propagate() is not None:
            self.ok = False
            return False
        stats = self.stats
        restart_idx = 0
        conflicts_left = luby(restart_idx) * self.restart_unit
        next_reduce = self.first_reduce
        reduce_step = self.first_reduce
        clock = time.perf_counter
        while True:
            confl = self._propagate()
            if confl is not None:
                stats.conflicts += 1
                conflicts_left -= 1
                if not self.trail_lim:
                    self.ok = False
                    return False
                learnt, bt = self._analyze(confl)
                self._cancel_until(bt)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    self._attach(learnt)
                    if len(learnt) > 2:
                        self.learnts.append(learnt)
                        self.clause_act[id(learnt)] = self.cla_inc
                        self.clause_lbd[id(learnt)] = self._lbd(learnt)
                    self._enqueue(learnt[0], learnt if len(learnt) > 2 else [learnt[0], learnt[1]])
                self.var_inc /= self.var_decay
                self.cla_inc /= self.clause_decay
                if deadline is not None and not stats.conflicts & 127 and clock() > deadline:
                    raise SolverTimeout
            else:
                if conflicts_left <= 0:
                    restart_idx += 1
                    conflicts_left = luby(restart_idx) * self.restart_unit
                    stats.restarts += 1
                    self._cancel_until(0)
                    if deadline is not None and clock() > deadline:
                        raise SolverTimeout
                    continue
                if stats.conflicts >= next_reduce:
                    reduce_step += self.reduce_increment
                    next_reduce = stats.conflicts + reduce_step
                    self._reduce_db()
                lit = self._pick_branch()
                if lit is None:
                    self.model = [self.val[2 * v] == TRUE for v in range(self.n_vars)]
                    return True
                stats.decisions += 1
                if deadline is not None and not stats.decisions & 1023 and clock() > deadline:
                    raise SolverTimeout
                self.trail_lim.append(len(self.trail))
                self._enqueue(lit, None)
