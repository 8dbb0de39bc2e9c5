"""Backtracking search for AGM operator tables on a fixed epistemic space.

All postulates relate cells of a single state, so the table decomposes
into independent rows: a table exists iff every row has an admissible
assignment, and the number of tables is the product of per-row counts.
Rows are searched in state declaration order, cells by ascending input
bitmask, with binary postulates checked as soon as all three cells they
mention are assigned.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from math import prod

import numpy as np

from .logic import ModelSet, is_subset
from .operators import OperatorTable
from .space import EpistemicSpace

DEFAULT_BUDGET = 10**8


class BudgetExhausted(RuntimeError):
    def __init__(self, nodes: int):
        super().__init__(f"search budget exhausted after {nodes} nodes")
        self.nodes = nodes


@dataclass(frozen=True)
class SearchConfig:
    kind: str
    node_budget: int = DEFAULT_BUDGET
    count_cap: int | None = None
    parallel: bool = False

    def __post_init__(self):
        if self.kind not in ("revision", "contraction"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.node_budget <= 0:
            raise ValueError("node_budget must be positive")


@dataclass(frozen=True)
class ExistenceResult:
    exists: bool
    witness: OperatorTable | None
    exhausted: bool
    nodes_visited: int
    empty_cell: tuple[str, ModelSet] | None = None

    @property
    def certificate(self) -> bool:
        return not self.exists and self.exhausted


@dataclass(frozen=True)
class CountResult:
    count: int
    exact: bool
    nodes_visited: int


def cell_domain(kind: str, bel: ModelSet, m: ModelSet, full: ModelSet, family) -> list[ModelSet]:
    """Realized result model sets allowed by the unary postulates at input ``m``."""
    if kind == "contraction":
        if not is_subset(bel, m) or m == full:
            cands = [bel]
        else:
            cands = [
                x for x in sorted(family)
                if is_subset(bel, x) and is_subset(x & m, bel) and not is_subset(x, m)
            ]
    else:
        if bel & m:
            cands = [bel & m]
        elif m == 0:
            cands = [0]
        else:
            cands = [x for x in sorted(family) if x and is_subset(x, m)]
    return [x for x in cands if x in family]


def _consistent(kind: str, row: list, m: ModelSet) -> bool:
    """Binary postulates over pairs involving cell ``m`` and earlier cells."""
    xm = row[m]
    if kind == "revision":
        for k in range(m + 1):
            xk = row[k]
            mk = row[m & k]
            # (M, N) = (m, k) and (k, m)
            lhs = xm & k
            if lhs & ~mk or (lhs and mk & ~lhs):
                return False
            lhs = xk & m
            if lhs & ~mk or (lhs and mk & ~lhs):
                return False
    else:
        for k in range(m + 1):
            xk = row[k]
            mk = row[m & k]
            if mk & ~(xm | xk):
                return False
            # C7 with (M, N) = (k, m) then (m, k)
            if mk & ~m and xm & ~mk:
                return False
            if mk & ~k and xk & ~mk:
                return False
    return True


class _RowSearch:
    def __init__(self, kind: str, domains: list[list[ModelSet]], weights: dict, budget: int,
                 count: bool, cap: int | None):
        self.kind = kind
        self.domains = domains
        self.weights = weights
        self.budget = budget
        self.count_mode = count
        self.cap = cap
        self.nodes = 0
        self.total = 0
        self.solution: list | None = None
        self.row: list = [0] * len(domains)

    def run(self):
        self._go(0, 1)

    def _go(self, m: int, weight: int) -> bool:
        """Returns True to stop the whole search."""
        if m == len(self.domains):
            if self.count_mode:
                self.total += weight
                return self.cap is not None and self.total >= self.cap
            self.solution = list(self.row)
            return True
        for x in self.domains[m]:
            self.nodes += 1
            if self.nodes > self.budget:
                raise BudgetExhausted(self.nodes)
            self.row[m] = x
            if _consistent(self.kind, self.row, m):
                if self._go(m + 1, weight * self.weights[x]):
                    return True
        return False


def _search_row(args):
    kind, domains, weights, budget, count, cap = args
    rs = _RowSearch(kind, domains, weights, budget, count, cap)
    try:
        rs.run()
    except BudgetExhausted:
        return None, rs.nodes, None
    return (rs.total if count else rs.solution), rs.nodes, True


def _rows(space: EpistemicSpace, kind: str):
    fam = space.family
    full = space.sig.full
    k = space.sig.num_model_sets
    return [[cell_domain(kind, space.bel[s], m, full, fam) for m in range(k)] for s in space.states]


def _run_rows(space: EpistemicSpace, config: SearchConfig, count: bool):
    """Search each row; returns per-row results up to the first empty one."""
    weights = Counter(space.bel.values())
    jobs = [
        (config.kind, doms, weights, config.node_budget, count, config.count_cap)
        for doms in _rows(space, config.kind)
    ]
    results = []
    used = 0
    if config.parallel and len(jobs) > 1:
        with ProcessPoolExecutor() as ex:
            raw = list(ex.map(_search_row, jobs))
        for value, nodes, ok in raw:
            used += nodes
            if ok is None or used > config.node_budget:
                raise BudgetExhausted(used)
            results.append(value)
            if not value:
                break
    else:
        for job in jobs:
            remaining = config.node_budget - used
            value, nodes, ok = _search_row(job[:3] + (remaining,) + job[4:])
            used += nodes
            if ok is None:
                raise BudgetExhausted(used)
            results.append(value)
            if not value:
                break
    return results, used


def first_empty_cell(space: EpistemicSpace, kind: str) -> tuple[str, ModelSet] | None:
    for s, doms in zip(space.states, _rows(space, kind)):
        for m, d in enumerate(doms):
            if not d:
                return s, m
    return None


def exists_operator(space: EpistemicSpace, config: SearchConfig) -> ExistenceResult:
    """Find an AGM table of ``config.kind`` or certify that none exists.

    Raises ``BudgetExhausted`` when the node budget runs out first.
    """
    empty = first_empty_cell(space, config.kind)
    if empty is not None:
        return ExistenceResult(False, None, True, 0, empty)
    rows, nodes = _run_rows(space, config, count=False)
    if len(rows) < len(space.states) or not rows[-1]:
        return ExistenceResult(False, None, True, nodes)
    rep = space.realized().rep
    targets = []
    for s, row in zip(space.states, rows):
        bel = space.bel[s]
        targets.append(tuple(s if x == bel else rep[x] for x in row))
    return ExistenceResult(True, OperatorTable(space, config.kind, tuple(targets)), False, nodes)


def count_operators(space: EpistemicSpace, config: SearchConfig) -> CountResult:
    """Number of distinct AGM tables (state-valued), capped by ``count_cap``."""
    if first_empty_cell(space, config.kind) is not None:
        return CountResult(0, True, 0)
    rows, nodes = _run_rows(space, config, count=True)
    if len(rows) < len(space.states):
        return CountResult(0, True, nodes)
    total = prod(rows)
    if config.count_cap is not None and total >= config.count_cap:
        # a row hitting the cap stops early, so the product is a lower bound
        return CountResult(config.count_cap, False, nodes)
    return CountResult(total, True, nodes)


# --------------------------------------------------------------------------
# naive oracle


NAIVE_LIMIT = 5_000_000


def naive_count(space: EpistemicSpace, kind: str) -> int:
    """Count AGM tables by testing every state-valued table.

    Evaluates the postulates directly, vectorised over all candidate tables;
    shares no code with the backtracking search.
    """
    states = space.states
    e = len(states)
    k = space.sig.num_model_sets
    full = space.sig.full
    cells = e * k
    total = e ** cells
    if total > NAIVE_LIMIT:
        raise ValueError(f"{total} candidate tables exceeds the naive limit")
    bel = np.array([space.bel[s] for s in states], dtype=np.int64)
    idx = np.arange(total, dtype=np.int64)
    choice = np.empty((total, cells), dtype=np.int64)
    for c in range(cells):
        choice[:, c] = (idx // e ** (cells - 1 - c)) % e
    models = bel[choice]
    ok = np.ones(total, dtype=bool)

    def sub(a, b):
        return (a & ~b) == 0

    for i in range(e):
        b = int(bel[i])
        x = models[:, i * k:(i + 1) * k]
        for m in range(k):
            xm = x[:, m]
            if kind == "revision":
                ok &= sub(xm, m)
                if m & b:
                    ok &= xm == (b & m)
                if m:
                    ok &= xm != 0
            else:
                ok &= sub(b, xm)
                if not is_subset(b, m):
                    ok &= sub(xm, b)
                if m != full:
                    ok &= ~sub(xm, m)
                ok &= sub(xm & m, b)
        for m, n in product(range(k), repeat=2):
            xm, xn, xmn = x[:, m], x[:, n], x[:, m & n]
            if kind == "revision":
                lhs = xm & n
                ok &= sub(lhs, xmn)
                ok &= (lhs == 0) | sub(xmn, lhs)
            else:
                ok &= sub(xmn, xm | xn)
                ok &= sub(xmn, n) | sub(xn, xmn)
    return int(ok.sum())
