"""Graphviz rendering of operator tables.

One node per state.  For each source state, inputs mapping to the same
target are merged into one edge labelled with the canonical formulas of
those inputs; the inputs that leave the state unchanged form a single
self-loop labelled ``*``.
"""
from __future__ import annotations

from .logic import canonical_text
from .operators import OperatorTable


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(table: OperatorTable, name: str = "operator") -> str:
    space = table.space
    sig = space.sig
    lines = [f"digraph {_q(name)} {{", "  rankdir=LR;", "  node [shape=circle];"]
    for s in space.states:
        lines.append(f"  {_q(s)};")
    for s, row in zip(space.states, table.targets):
        groups: dict[str, list[int]] = {}
        for m, t in enumerate(row):
            groups.setdefault(t, []).append(m)
        if s in groups:
            lines.append(f"  {_q(s)} -> {_q(s)} [label=\"*\"];")
        for t in space.states:
            if t == s or t not in groups:
                continue
            label = ", ".join(canonical_text(m, sig) for m in groups[t])
            lines.append(f"  {_q(s)} -> {_q(t)} [label={_q(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
