"""Operator tables and the full meet / maxichoice / linear constructions."""
from __future__ import annotations

import heapq
import json
from dataclasses import dataclass
from typing import Any, Callable, Iterator, Literal, Mapping

from .logic import (
    Formula,
    LinearOrder,
    ModelSet,
    TotalPreorder,
    is_subset,
    members,
    min_of,
    models_of,
    popcount,
)
from .space import EpistemicSpace, FormatError, space_from_doc

Kind = Literal["revision", "contraction"]
KINDS = ("revision", "contraction")


class MissingState(Exception):
    """A construction needs a model set that no state believes.

    ``state``/``input``/``models`` describe the first offending cell in
    row-major order; ``cells`` lists every offending cell.
    """

    def __init__(self, space: EpistemicSpace, cells: list[tuple[str, ModelSet, ModelSet]]):
        self.space = space
        self.cells = cells
        self.state, self.input, self.models = cells[0]
        sig = space.sig
        super().__init__(
            f"no state with models {sig.show(self.models)} "
            f"(needed for {self.state} on input {sig.show(self.input)})"
        )

    @property
    def missing(self) -> list[ModelSet]:
        return sorted({m for _, _, m in self.cells})


class UnknownState(KeyError):
    pass


class KindMismatch(ValueError):
    pass


# --------------------------------------------------------------------------
# tables


@dataclass(frozen=True)
class OperatorTable:
    """Total map (state, input model set) -> state.

    ``targets[i][m]`` is the result of applying the operator to the ``i``-th
    state of ``space`` with input model set ``m``.
    """

    space: EpistemicSpace
    kind: Kind
    targets: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown operator kind {self.kind!r}")
        targets = tuple(tuple(row) for row in self.targets)
        object.__setattr__(self, "targets", targets)
        if len(targets) != len(self.space.states):
            raise ValueError("one row per state required")
        width = self.space.sig.num_model_sets
        known = set(self.space.states)
        for row in targets:
            if len(row) != width:
                raise ValueError(f"each row needs {width} entries")
            for t in row:
                if t not in known:
                    raise UnknownState(t)

    def result(self, state: str, m: ModelSet) -> str:
        try:
            i = self.space.index(state)
        except KeyError:
            raise UnknownState(state) from None
        return self.targets[i][m]

    def models(self, state: str, m: ModelSet) -> ModelSet:
        return self.space.bel[self.result(state, m)]

    def model_rows(self) -> list[list[ModelSet]]:
        bel = self.space.bel
        return [[bel[t] for t in row] for row in self.targets]

    @property
    def entries(self) -> dict[tuple[str, ModelSet], str]:
        return {
            (s, m): t
            for s, row in zip(self.space.states, self.targets)
            for m, t in enumerate(row)
        }

    def with_cell(self, state: str, m: ModelSet, target: str) -> "OperatorTable":
        i = self.space.index(state)
        rows = [list(r) for r in self.targets]
        rows[i][m] = target
        return OperatorTable(self.space, self.kind, tuple(map(tuple, rows)))

    def to_doc(self) -> dict:
        sig = self.space.sig
        entries = [
            {"state": s, "input_models": sig.model_strs(m), "result": t}
            for s, row in zip(self.space.states, self.targets)
            for m, t in enumerate(row)
        ]
        return {"kind": self.kind, "space": self.space.to_doc(), "entries": entries}


def apply(table: OperatorTable, state: str, f: Formula) -> str:
    return table.result(state, models_of(f, table.space.sig))


def table_from_doc(doc: Any) -> OperatorTable:
    if not isinstance(doc, dict):
        raise FormatError("operator table document must be a JSON object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise FormatError(f"'kind' must be one of {KINDS}")
    space = space_from_doc(doc.get("space"))
    sig = space.sig
    entries = doc.get("entries")
    if not isinstance(entries, list):
        raise FormatError("'entries' must be a list")
    cells: dict[tuple[str, ModelSet], str] = {}
    for k, e in enumerate(entries):
        if not isinstance(e, dict) or not {"state", "input_models", "result"} <= set(e):
            raise FormatError(f"entry #{k} needs 'state', 'input_models' and 'result'")
        if e["state"] not in space.bel or e["result"] not in space.bel:
            raise FormatError(f"entry #{k} names an unknown state")
        try:
            m = sig.parse_models(e["input_models"])
        except (ValueError, TypeError, AttributeError) as err:
            raise FormatError(f"entry #{k}: {err}") from None
        key = (e["state"], m)
        if key in cells:
            raise FormatError(f"entry #{k} duplicates an earlier cell")
        cells[key] = e["result"]
    rows = []
    for s in space.states:
        row = []
        for m in range(sig.num_model_sets):
            if (s, m) not in cells:
                raise FormatError(f"table has no entry for {s} on {sig.show(m)}")
            row.append(cells[(s, m)])
        rows.append(tuple(row))
    return OperatorTable(space, kind, tuple(rows))


def load_table(document: bytes | str) -> OperatorTable:
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e.msg}", e.pos) from None
    return table_from_doc(doc)


def dump_table(table: OperatorTable) -> str:
    return json.dumps(table.to_doc(), indent=1) + "\n"


def load_orders(doc: Any, space: EpistemicSpace) -> dict[str, LinearOrder]:
    """Per-state linear orders from ``{"default": ..., "per_state": {...}}``."""
    if not isinstance(doc, dict):
        raise FormatError("orders document must be a JSON object")
    sig = space.sig
    per_state = doc.get("per_state", {})
    if not isinstance(per_state, dict):
        raise FormatError("'per_state' must be an object")
    for s in per_state:
        if s not in space.bel:
            raise FormatError(f"orders given for unknown state {s!r}")
    try:
        default = LinearOrder.parse(doc["default"], sig) if "default" in doc else None
        orders = {s: LinearOrder.parse(o, sig) for s, o in per_state.items()}
    except (ValueError, AttributeError) as e:
        raise FormatError(str(e)) from None
    out = {}
    for s in space.states:
        if s in orders:
            out[s] = orders[s]
        elif default is not None:
            out[s] = default
        else:
            raise FormatError(f"no order for state {s!r} and no default")
    return out


# --------------------------------------------------------------------------
# cell rules


def fm_contraction_models(bel: ModelSet, m: ModelSet, full: ModelSet) -> ModelSet:
    neg = full & ~m
    return bel if bel & neg else bel | neg


def mc_contraction_models(bel: ModelSet, m: ModelSet, full: ModelSet, order: LinearOrder) -> ModelSet:
    neg = full & ~m
    return bel if bel & neg else bel | min_of(neg, order)


def fm_revision_models(bel: ModelSet, m: ModelSet) -> ModelSet:
    return bel & m or m


def mc_revision_models(bel: ModelSet, m: ModelSet, order: LinearOrder) -> ModelSet:
    return bel & m or min_of(m, order)


def _build(space: EpistemicSpace, kind: Kind, rule: Callable[[str, ModelSet], ModelSet]) -> OperatorTable:
    rep = space.realized().rep
    rows = []
    missing = []
    for s in space.states:
        bel = space.bel[s]
        row = []
        for m in range(space.sig.num_model_sets):
            want = rule(s, m)
            if want == bel:
                row.append(s)
            elif want in rep:
                row.append(rep[want])
            else:
                missing.append((s, m, want))
                row.append(s)
        rows.append(tuple(row))
    if missing:
        raise MissingState(space, missing)
    return OperatorTable(space, kind, tuple(rows))


def build_full_meet_contraction(space: EpistemicSpace) -> OperatorTable:
    full = space.sig.full
    return _build(space, "contraction", lambda s, m: fm_contraction_models(space.bel[s], m, full))


def build_maxichoice_contraction(space: EpistemicSpace, orders: Mapping[str, LinearOrder]) -> OperatorTable:
    full = space.sig.full
    _check_orders(space, orders)
    return _build(
        space, "contraction", lambda s, m: mc_contraction_models(space.bel[s], m, full, orders[s])
    )


def build_linear_contraction(space: EpistemicSpace, order: LinearOrder) -> OperatorTable:
    return build_maxichoice_contraction(space, {s: order for s in space.states})


def build_full_meet_revision(space: EpistemicSpace) -> OperatorTable:
    return _build(space, "revision", lambda s, m: fm_revision_models(space.bel[s], m))


def build_maxichoice_revision(space: EpistemicSpace, orders: Mapping[str, LinearOrder]) -> OperatorTable:
    _check_orders(space, orders)
    return _build(space, "revision", lambda s, m: mc_revision_models(space.bel[s], m, orders[s]))


def build_linear_revision(space: EpistemicSpace, order: LinearOrder) -> OperatorTable:
    return build_maxichoice_revision(space, {s: order for s in space.states})


def _check_orders(space: EpistemicSpace, orders: Mapping[str, LinearOrder]):
    for s in space.states:
        if s not in orders:
            raise ValueError(f"no linear order for state {s!r}")
        if len(orders[s].ranking) != space.sig.size:
            raise ValueError(f"order for {s!r} has the wrong length")


BUILDERS = {
    "fm-contraction": ("contraction", "full-meet"),
    "mc-contraction": ("contraction", "maxichoice"),
    "lin-contraction": ("contraction", "linear"),
    "fm-revision": ("revision", "full-meet"),
    "mc-revision": ("revision", "maxichoice"),
    "lin-revision": ("revision", "linear"),
}


def build(space: EpistemicSpace, name: str, orders: Mapping[str, LinearOrder] | None = None) -> OperatorTable:
    """Dispatch on a CLI-style construction name such as ``lin-revision``."""
    if name not in BUILDERS:
        raise ValueError(f"unknown construction {name!r}; expected one of {', '.join(sorted(BUILDERS))}")
    kind, shape = BUILDERS[name]
    if shape == "full-meet":
        return build_full_meet_contraction(space) if kind == "contraction" else build_full_meet_revision(space)
    if orders is None:
        orders = {s: LinearOrder.identity(space.sig) for s in space.states}
    if shape == "linear":
        distinct = {orders[s] for s in space.states}
        if len(distinct) != 1:
            raise ValueError("a linear construction needs one order shared by all states")
        (order,) = distinct
        if kind == "contraction":
            return build_linear_contraction(space, order)
        return build_linear_revision(space, order)
    if kind == "contraction":
        return build_maxichoice_contraction(space, orders)
    return build_maxichoice_revision(space, orders)


# --------------------------------------------------------------------------
# faithful assignments


@dataclass(frozen=True)
class FaithfulAssignment:
    preorders: Mapping[str, TotalPreorder]

    def __getitem__(self, state: str) -> TotalPreorder:
        return self.preorders[state]


@dataclass(frozen=True)
class Witness:
    ok: bool
    state: str | None = None
    input: ModelSet | None = None
    expected: ModelSet | None = None
    actual: ModelSet | None = None

    def __bool__(self) -> bool:
        return self.ok


def induce_assignment_linear(space: EpistemicSpace, order: LinearOrder) -> FaithfulAssignment:
    """Believed worlds at rank 0, the rest ranked densely after them by ``order``."""
    out = {}
    for s in space.states:
        bel = space.bel[s]
        level = [0] * space.sig.size
        rank = 1 if bel else 0
        for w in order.ranking:
            if not (bel >> w) & 1:
                level[w] = rank
                rank += 1
        out[s] = TotalPreorder(tuple(level))
    return FaithfulAssignment(out)


def flat_over_complement(space: EpistemicSpace) -> FaithfulAssignment:
    """Believed worlds at rank 0, everything else tied at rank 1."""
    return FaithfulAssignment({
        s: TotalPreorder(tuple(0 if (space.bel[s] >> w) & 1 else 1 for w in space.sig.interpretations()))
        for s in space.states
    })


def check_faithful(assign: FaithfulAssignment, space: EpistemicSpace) -> Witness:
    full = space.sig.full
    for s in space.states:
        bel = space.bel[s]
        if bel:
            lowest = min_of(full, assign[s])
            if lowest != bel:
                return Witness(False, state=s, expected=bel, actual=lowest)
    return Witness(True)


def check_contraction_compatible(assign: FaithfulAssignment, table: OperatorTable) -> Witness:
    if table.kind != "contraction":
        raise KindMismatch("contraction-compatibility needs a contraction table")
    space = table.space
    full = space.sig.full
    for s in space.states:
        bel = space.bel[s]
        for m in range(space.sig.num_model_sets):
            want = bel | min_of(full & ~m, assign[s])
            got = table.models(s, m)
            if got != want:
                return Witness(False, state=s, input=m, expected=want, actual=got)
    return Witness(True)


# --------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class Classification:
    is_full_meet: bool
    maxichoice_orders: dict[str, LinearOrder] | None
    linear_order: LinearOrder | None

    @property
    def is_maxichoice(self) -> bool:
        return self.maxichoice_orders is not None

    @property
    def is_linear(self) -> bool:
        return self.linear_order is not None


def _choice_rows(table: OperatorTable, state: str) -> Iterator[tuple[ModelSet, ModelSet, ModelSet | None]]:
    """Yield (input, candidate set, chosen part) for every row of ``state``.

    The candidate set is the set a maxichoice rule would minimise over; it
    is ``None``-chosen when the row falls in the forced branch, where the
    chosen part must be empty.
    """
    space = table.space
    full = space.sig.full
    bel = space.bel[state]
    for m in range(space.sig.num_model_sets):
        got = table.models(state, m)
        if table.kind == "contraction":
            neg = full & ~m
            if bel & neg or not neg:
                yield m, 0, None if got == bel else -1
            elif is_subset(bel, got) and is_subset(got, bel | neg):
                yield m, neg, got & ~bel
            else:
                yield m, neg, -1
        else:
            if bel & m or not m:
                yield m, 0, None if got == (bel & m) else -1
            elif is_subset(got, m):
                yield m, m, got
            else:
                yield m, m, -1


def _choices(table: OperatorTable, state: str) -> list[tuple[ModelSet, int]] | None:
    """(candidate set, chosen world) pairs, or None if some row is not maxichoice-shaped."""
    out = []
    for _, cand, chosen in _choice_rows(table, state):
        if chosen is None:
            continue
        if chosen == -1 or popcount(chosen) != 1:
            return None
        out.append((cand, chosen.bit_length() - 1))
    return out


def _order_from_choices(choices: list[tuple[ModelSet, int]], size: int) -> LinearOrder | None:
    """Linear extension of "chosen beats the rest of its candidate set".

    Worlds no row discriminates are placed by ascending interpretation index.
    Returns None when the choices are cyclic or no extension reproduces them.
    """
    beats: dict[int, set[int]] = {w: set() for w in range(size)}
    for cand, w in choices:
        for v in members(cand):
            if v != w:
                beats[w].add(v)
    indegree = [0] * size
    for w in range(size):
        for v in beats[w]:
            indegree[v] += 1
    ready = [w for w in range(size) if indegree[w] == 0]
    heapq.heapify(ready)
    ranking = []
    while ready:
        w = heapq.heappop(ready)
        ranking.append(w)
        for v in beats[w]:
            indegree[v] -= 1
            if indegree[v] == 0:
                heapq.heappush(ready, v)
    if len(ranking) != size:
        return None
    order = LinearOrder(tuple(ranking))
    if all(min_of(cand, order) == 1 << w for cand, w in choices):
        return order
    return None


def classify_operator(table: OperatorTable) -> Classification:
    space = table.space
    full = space.sig.full
    size = space.sig.size

    if table.kind == "contraction":
        fm = all(
            table.models(s, m) == fm_contraction_models(space.bel[s], m, full)
            for s in space.states
            for m in range(space.sig.num_model_sets)
        )
    else:
        fm = all(
            table.models(s, m) == fm_revision_models(space.bel[s], m)
            for s in space.states
            for m in range(space.sig.num_model_sets)
        )

    per_state: dict[str, LinearOrder] = {}
    all_choices: list[tuple[ModelSet, int]] = []
    for s in space.states:
        ch = _choices(table, s)
        if ch is None:
            return Classification(fm, None, None)
        order = _order_from_choices(ch, size)
        if order is None:
            return Classification(fm, None, None)
        per_state[s] = order
        all_choices.extend(ch)
    linear = _order_from_choices(all_choices, size)
    return Classification(fm, per_state, linear)
