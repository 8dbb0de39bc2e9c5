"""Exhaustive checking of the revision (R1-R6) and contraction (C1-C7) postulates.

Postulates are evaluated on model sets.  For a state with belief models
``bel`` and a table row ``X`` (input model set -> result model set):

    R1  X[M] <= M
    R2  M & bel != 0  =>  X[M] == bel & M
    R3  M != 0  =>  X[M] != 0
    R4  vacuous (tables are keyed by model sets)
    R5  X[M] & N <= X[M & N]
    R6  X[M] & N != 0  =>  X[M & N] <= X[M] & N

    C1  bel <= X[M]
    C2  not bel <= M  =>  X[M] <= bel
    C3  M != full  =>  not X[M] <= M
    C4  X[M] & M <= bel
    C5  vacuous
    C6  X[M & N] <= X[M] | X[N]
    C7  not X[M & N] <= N  =>  X[N] <= X[M & N]

``formula_level_verdicts`` evaluates the same postulates on formulas via
``holds``/``expand`` and is used to cross-check these transcriptions.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .logic import (
    BOTTOM,
    And,
    Formula,
    Iff,
    ModelSet,
    Not,
    Signature,
    expand,
    formula_with_models,
    holds,
    is_subset,
)
from .operators import KindMismatch, OperatorTable, apply
from .space import EpistemicSpace

REVISION_POSTULATES = ("R1", "R2", "R3", "R4", "R5", "R6")
CONTRACTION_POSTULATES = ("C1", "C2", "C3", "C4", "C5", "C6", "C7")
UNARY = {"R1", "R2", "R3", "C1", "C2", "C3", "C4"}
BINARY = {"R5", "R6", "C6", "C7"}
VACUOUS = {"R4", "C5"}

SAMPLE_SEED = 20230901
SAMPLE_PAIRS = 1 << 20

_RELATION = {
    "R1": "actual <= expected",
    "R2": "actual == expected",
    "R3": "actual != {}",
    "R5": "expected <= actual",
    "R6": "actual <= expected",
    "C1": "expected <= actual",
    "C2": "actual <= expected",
    "C3": "not actual <= expected",
    "C4": "actual <= expected",
    "C6": "actual <= expected",
    "C7": "actual <= expected",
}


@dataclass(frozen=True)
class QuantificationPlan:
    n: int
    inputs: int
    pairs: int
    exhaustive: bool
    seed: int | None = None

    def describe(self) -> str:
        if self.exhaustive:
            return f"n={self.n}: exhaustive, {self.inputs} inputs and {self.pairs} pairs per state"
        return (
            f"n={self.n}: exhaustive over {self.inputs} inputs, "
            f"non-exhaustive sample of {self.pairs} pairs per state (seed {self.seed})"
        )

    def pair_iter(self) -> Sequence[tuple[int, int]] | None:
        """Sampled pairs, or None when all pairs are enumerated."""
        if self.exhaustive:
            return None
        rng = random.Random(self.seed)
        k = self.inputs
        return [(rng.randrange(k), rng.randrange(k)) for _ in range(self.pairs)]


def quantification_plan(sig: Signature, seed: int = SAMPLE_SEED) -> QuantificationPlan:
    k = sig.num_model_sets
    if sig.n <= 3:
        return QuantificationPlan(sig.n, k, k * k, True)
    return QuantificationPlan(sig.n, k, SAMPLE_PAIRS, False, seed)


@dataclass(frozen=True)
class ViolationReport:
    postulate: str
    state: str
    input_m: ModelSet
    input_n: ModelSet | None
    expected: ModelSet
    actual: ModelSet

    @property
    def relation(self) -> str:
        return _RELATION[self.postulate]

    def to_json(self, sig: Signature) -> dict:
        return {
            "postulate": self.postulate,
            "state": self.state,
            "input_models": sig.model_strs(self.input_m),
            "pair_models": None if self.input_n is None else sig.model_strs(self.input_n),
            "expected": sig.model_strs(self.expected),
            "actual": sig.model_strs(self.actual),
            "relation": self.relation,
        }

    def text(self, sig: Signature) -> str:
        where = f"input {sig.show(self.input_m)}"
        if self.input_n is not None:
            where += f", pair {sig.show(self.input_n)}"
        return (
            f"{self.postulate} violated at {self.state}, {where}: "
            f"expected {sig.show(self.expected)}, actual {sig.show(self.actual)} "
            f"(needs {self.relation})"
        )


@dataclass(frozen=True)
class VerifyReport:
    kind: str
    plan: QuantificationPlan
    violations: list[ViolationReport] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def postulates(self) -> tuple[str, ...]:
        return REVISION_POSTULATES if self.kind == "revision" else CONTRACTION_POSTULATES

    def violated(self) -> set[str]:
        return {v.postulate for v in self.violations}

    def to_json(self, sig: Signature) -> dict:
        return {
            "kind": self.kind,
            "plan": self.plan.describe(),
            "exhaustive": self.plan.exhaustive,
            "postulates": {
                p: ("vacuous" if p in VACUOUS else "violated" if p in self.violated() else "ok")
                for p in self.postulates
            },
            "violations": [v.to_json(sig) for v in self.violations],
        }

    def text(self, sig: Signature) -> str:
        lines = [f"plan: {self.plan.describe()}"]
        for p in self.postulates:
            status = "vacuous (keyed by models)" if p in VACUOUS else (
                "VIOLATED" if p in self.violated() else "ok")
            lines.append(f"  {p}: {status}")
        for v in self.violations:
            lines.append(v.text(sig))
        clean = len(self.postulates) - len(self.violated())
        lines.append(f"{clean}/{len(self.postulates)} postulates clean")
        return "\n".join(lines)


# --------------------------------------------------------------------------
# single instances


def check_unary(p: str, bel: ModelSet, row: Sequence[ModelSet], m: ModelSet, full: ModelSet):
    """Return None if postulate ``p`` holds at input ``m``, else (expected, actual)."""
    x = row[m]
    if p == "R1":
        return None if is_subset(x, m) else (m, x)
    if p == "R2":
        return None if not (m & bel) or x == bel & m else (bel & m, x)
    if p == "R3":
        return None if not m or x else (m, x)
    if p == "C1":
        return None if is_subset(bel, x) else (bel, x)
    if p == "C2":
        return None if is_subset(bel, m) or is_subset(x, bel) else (bel, x)
    if p == "C3":
        return None if m == full or not is_subset(x, m) else (m, x)
    if p == "C4":
        return None if is_subset(x & m, bel) else (bel, x & m)
    raise ValueError(p)


def check_binary(p: str, row: Sequence[ModelSet], m: ModelSet, n: ModelSet):
    xm, xmn = row[m], row[m & n]
    if p == "R5":
        lhs = xm & n
        return None if is_subset(lhs, xmn) else (lhs, xmn)
    if p == "R6":
        lhs = xm & n
        return None if not lhs or is_subset(xmn, lhs) else (lhs, xmn)
    if p == "C6":
        union = xm | row[n]
        return None if is_subset(xmn, union) else (union, xmn)
    if p == "C7":
        xn = row[n]
        return None if is_subset(xmn, n) or is_subset(xn, xmn) else (xmn, xn)
    raise ValueError(p)


def transcription_verdicts(table: OperatorTable, state: str, m: ModelSet, n: ModelSet) -> dict[str, bool]:
    """Model-set verdict of every postulate of the table's kind at (state, m, n)."""
    space = table.space
    row = table.model_rows()[space.index(state)]
    bel = space.bel[state]
    full = space.sig.full
    names = REVISION_POSTULATES if table.kind == "revision" else CONTRACTION_POSTULATES
    out = {}
    for p in names:
        if p in VACUOUS:
            out[p] = True
        elif p in UNARY:
            out[p] = check_unary(p, bel, row, m, full) is None
        else:
            out[p] = check_binary(p, row, m, n) is None
    return out


# --------------------------------------------------------------------------
# whole tables


def _verify(space: EpistemicSpace, table: OperatorTable, names, collect_all: bool,
            plan: QuantificationPlan) -> VerifyReport:
    full = space.sig.full
    k = space.sig.num_model_sets
    unary = [p for p in names if p in UNARY]
    binary = [p for p in names if p in BINARY]
    sample = plan.pair_iter()
    found: list[ViolationReport] = []
    done: set[str] = set()
    for s, row in zip(space.states, table.model_rows()):
        bel = space.bel[s]
        for p in unary:
            if p in done:
                continue
            for m in range(k):
                bad = check_unary(p, bel, row, m, full)
                if bad:
                    found.append(ViolationReport(p, s, m, None, *bad))
                    if not collect_all:
                        done.add(p)
                        break
        for p in binary:
            if p in done:
                continue
            pairs = sample if sample is not None else ((m, n) for m in range(k) for n in range(k))
            for m, n in pairs:
                bad = check_binary(p, row, m, n)
                if bad:
                    found.append(ViolationReport(p, s, m, n, *bad))
                    if not collect_all:
                        done.add(p)
                        break
    order = {p: i for i, p in enumerate(names)}
    found.sort(key=lambda v: (order[v.postulate], space.index(v.state), v.input_m, -1 if v.input_n is None else v.input_n))
    return VerifyReport(table.kind, plan, found)


def verify_revision(space: EpistemicSpace, table: OperatorTable, collect_all: bool = False,
                    plan: QuantificationPlan | None = None) -> VerifyReport:
    if table.kind != "revision":
        raise KindMismatch(f"expected a revision table, got {table.kind}")
    return _verify(space, table, REVISION_POSTULATES, collect_all, plan or quantification_plan(space.sig))


def verify_contraction(space: EpistemicSpace, table: OperatorTable, collect_all: bool = False,
                       plan: QuantificationPlan | None = None) -> VerifyReport:
    if table.kind != "contraction":
        raise KindMismatch(f"expected a contraction table, got {table.kind}")
    return _verify(space, table, CONTRACTION_POSTULATES, collect_all, plan or quantification_plan(space.sig))


def verify(table: OperatorTable, collect_all: bool = False) -> VerifyReport:
    fn = verify_revision if table.kind == "revision" else verify_contraction
    return fn(table.space, table, collect_all)


# --------------------------------------------------------------------------
# formula-level oracle


def _bel_subset(x: ModelSet, y: ModelSet, probes: Sequence[Formula], sig: Signature) -> bool:
    """Bel(x) <= Bel(y), quantifying over one probe formula per equivalence class."""
    return all(holds(y, g, sig) for g in probes if holds(x, g, sig))


def probe_formulas(sig: Signature) -> list[Formula]:
    return [formula_with_models(g, sig) for g in range(sig.num_model_sets)]


def formula_level_verdicts(table: OperatorTable, state: str, alpha: Formula, beta: Formula,
                           alpha_variant: Formula, probes: Sequence[Formula] | None = None) -> dict[str, bool]:
    """Evaluate the postulates on formulas, belief sets compared through entailment."""
    space = table.space
    sig = space.sig
    probes = probes if probes is not None else probe_formulas(sig)
    full = sig.full
    bel = space.bel[state]

    def res(f: Formula) -> ModelSet:
        return space.bel[apply(table, state, f)]

    def same(x, y):
        return _bel_subset(x, y, probes, sig) and _bel_subset(y, x, probes, sig)

    def consistent(x: ModelSet) -> bool:
        return not holds(x, BOTTOM, sig)

    def equivalent(f: Formula, g: Formula) -> bool:
        return holds(full, Iff(f, g), sig)

    a, b, ab = res(alpha), res(beta), res(And(alpha, beta))
    out: dict[str, bool] = {}
    if table.kind == "revision":
        out["R1"] = holds(a, alpha, sig)
        e = expand(bel, alpha, sig)
        out["R2"] = not consistent(e) or same(a, e)
        out["R3"] = holds(full, Not(alpha), sig) or consistent(a)
        out["R4"] = not equivalent(alpha, alpha_variant) or same(a, res(alpha_variant))
        ae = expand(a, beta, sig)
        out["R5"] = _bel_subset(ab, ae, probes, sig)
        out["R6"] = not consistent(ae) or _bel_subset(ae, ab, probes, sig)
    else:
        out["C1"] = _bel_subset(a, bel, probes, sig)
        out["C2"] = holds(bel, alpha, sig) or _bel_subset(bel, a, probes, sig)
        out["C3"] = holds(full, alpha, sig) or not holds(a, alpha, sig)
        out["C4"] = _bel_subset(bel, expand(a, alpha, sig), probes, sig)
        out["C5"] = not equivalent(alpha, alpha_variant) or same(a, res(alpha_variant))
        out["C6"] = all(holds(ab, g, sig) for g in probes if holds(a, g, sig) and holds(b, g, sig))
        out["C7"] = holds(ab, beta, sig) or _bel_subset(ab, b, probes, sig)
    return out

