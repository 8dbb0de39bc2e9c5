"""Brute-force audits of the realizability characterizations on tiny spaces.

Each audited space has one state per realized model set.  For ``n = 1``
all 15 non-empty families are covered; for ``n = 2`` families are drawn
from a seeded generator.  A record whose search outcome disagrees with the
closure conditions is a falsification.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Iterable

from .generate import all_families, random_family, random_order, space_of_family
from .logic import Signature
from .operators import (
    MissingState,
    build_full_meet_contraction,
    build_full_meet_revision,
    build_linear_contraction,
    build_linear_revision,
    build_maxichoice_contraction,
    build_maxichoice_revision,
    check_contraction_compatible,
    check_faithful,
    induce_assignment_linear,
)
from .search import SearchConfig, count_operators, exists_operator, naive_count
from .space import EpistemicSpace, check_unbiased, check_zc, check_zr1, check_zr2
from .verify import verify

NAIVE_MAX_STATES = 3
ATOM_NAMES = ("a", "b", "c", "d")


@dataclass
class AuditReport:
    records: list[dict[str, Any]] = field(default_factory=list)

    @property
    def falsifications(self) -> list[dict[str, Any]]:
        return [r for r in self.records if not r["agree"]]

    @property
    def agreements(self) -> int:
        return sum(r["checks_passed"] for r in self.records)

    @property
    def checks(self) -> int:
        return sum(r["checks"] for r in self.records)


def audit_signature(n: int) -> Signature:
    return Signature(ATOM_NAMES[:n])


def audit_spaces(n: int, sample_count: int = 100, seed: int = 0) -> list[EpistemicSpace]:
    if n not in (1, 2):
        raise ValueError("audits support n = 1 or n = 2")
    sig = audit_signature(n)
    if n == 1:
        return [space_of_family(f, sig) for f in all_families(sig)]
    rng = random.Random(seed)
    return [space_of_family(random_family(sig, rng), sig) for _ in range(sample_count)]


def _family_doc(space: EpistemicSpace) -> dict:
    return {"family": sorted(space.family), "family_models": [space.sig.model_strs(m) for m in sorted(space.family)]}


def _builds(fn, *args) -> tuple[bool, Any]:
    try:
        return True, fn(*args)
    except MissingState as e:
        return False, e


def audit_space(space: EpistemicSpace, budget: int | None = None, naive: bool = True) -> dict[str, Any]:
    """Compare search-based existence with the closure conditions on one space."""
    cfg = {} if budget is None else {"node_budget": budget}
    zc, zr1, zr2, unb = check_zc(space), check_zr1(space), check_zr2(space), check_unbiased(space)
    con = exists_operator(space, SearchConfig("contraction", **cfg))
    rev = exists_operator(space, SearchConfig("revision", **cfg))
    fm_ok, _ = _builds(build_full_meet_revision, space)
    rec: dict[str, Any] = _family_doc(space)
    rec.update(
        zc=zc.ok, zr1=zr1.ok, zr2=zr2.ok, unbiased=unb.ok,
        contraction_exists=con.exists, contraction_certificate=con.certificate,
        revision_exists=rev.exists, revision_certificate=rev.certificate,
        fm_revision_builds=fm_ok,
        nodes={"contraction": con.nodes_visited, "revision": rev.nodes_visited},
    )
    checks = [
        con.exists == zc.ok,
        rev.exists == (zr1.ok and zr2.ok),
        fm_ok == unb.ok,
        con.exists or con.certificate,
        rev.exists or rev.certificate,
    ]
    for res in (con, rev):
        if res.exists:
            checks.append(verify(res.witness).ok)
    rec["naive"] = None
    if naive and space.sig.n == 1 and len(space.states) <= NAIVE_MAX_STATES:
        nc, nr = naive_count(space, "contraction"), naive_count(space, "revision")
        rec["naive"] = {"contraction": nc, "revision": nr}
        checks += [(nc > 0) == con.exists, (nr > 0) == rev.exists]
    rec["checks"] = len(checks)
    rec["checks_passed"] = sum(checks)
    rec["agree"] = all(checks)
    return rec


def audit_theorems(n: int, sample_count: int = 100, seed: int = 0, budget: int | None = None) -> AuditReport:
    return AuditReport([audit_space(sp, budget) for sp in audit_spaces(n, sample_count, seed)])


def equivalence_record(space: EpistemicSpace, rng: random.Random) -> dict[str, Any]:
    """Run all six constructions and check they succeed exactly when predicted."""
    sig = space.sig
    zc = check_zc(space).ok
    zr = check_zr1(space).ok and check_zr2(space).ok
    unb = check_unbiased(space).ok
    order = random_order(sig, rng)
    orders = {s: random_order(sig, rng) for s in space.states}
    builds = {
        "fm-contraction": (build_full_meet_contraction, (space,), zc),
        "mc-contraction": (build_maxichoice_contraction, (space, orders), zc),
        "lin-contraction": (build_linear_contraction, (space, order), zc),
        "fm-revision": (build_full_meet_revision, (space,), unb),
        "mc-revision": (build_maxichoice_revision, (space, orders), zr),
        "lin-revision": (build_linear_revision, (space, order), zr),
    }
    rec: dict[str, Any] = _family_doc(space)
    rec.update(zc=zc, zr=zr, unbiased=unb, order=order.text(sig))
    agree = True
    for name, (fn, args, predicted) in builds.items():
        ok, out = _builds(fn, *args)
        clean = verify(out).ok if ok else None
        rec[name] = "clean" if clean else ("violations" if ok else "missing-state")
        agree &= ok == predicted and (clean is None or clean)
    if zc:
        lin = build_linear_contraction(space, order)
        assign = induce_assignment_linear(space, order)
        faithful = check_faithful(assign, space).ok
        compatible = check_contraction_compatible(assign, lin).ok
        rec["assignment"] = {"faithful": faithful, "compatible": compatible}
        agree &= faithful and compatible
    rec["agree"] = agree
    rec["checks"] = 1
    rec["checks_passed"] = int(agree)
    return rec


def audit_equivalences(n: int, sample_count: int = 100, seed: int = 0) -> AuditReport:
    rng = random.Random(seed + 1)
    return AuditReport([equivalence_record(sp, rng) for sp in audit_spaces(n, sample_count, seed)])


@dataclass(frozen=True)
class CountRecord:
    family: tuple[int, ...]
    contraction: int
    revision: int
    naive_contraction: int | None
    naive_revision: int | None

    @property
    def agree(self) -> bool:
        return all(
            naive is None or naive == count
            for naive, count in ((self.naive_contraction, self.contraction), (self.naive_revision, self.revision))
        )

    def to_json(self, sig: Signature) -> dict:
        return {
            "family": list(self.family),
            "family_models": [sig.model_strs(m) for m in self.family],
            "contraction": self.contraction,
            "revision": self.revision,
            "naive_contraction": self.naive_contraction,
            "naive_revision": self.naive_revision,
            "agree": self.agree,
        }


def count_record(space: EpistemicSpace, budget: int | None = None, naive: bool = True) -> CountRecord:
    cfg = {} if budget is None else {"node_budget": budget}
    c = count_operators(space, SearchConfig("contraction", **cfg))
    r = count_operators(space, SearchConfig("revision", **cfg))
    nc = nr = None
    if naive and space.sig.n == 1 and len(space.states) <= NAIVE_MAX_STATES:
        nc, nr = naive_count(space, "contraction"), naive_count(space, "revision")
    return CountRecord(tuple(sorted(space.family)), c.count, r.count, nc, nr)


def find_count_asymmetry(n: int = 1, budget: int | None = None) -> list[CountRecord]:
    if n != 1:
        raise ValueError("count asymmetry scan supports n = 1 only")
    return [count_record(sp, budget) for sp in audit_spaces(1)]


def summarize_asymmetry(records: Iterable[CountRecord]) -> dict[str, list[tuple[int, ...]]]:
    records = list(records)
    return {
        "more_contraction": [r.family for r in records if r.contraction > r.revision],
        "more_revision": [r.family for r in records if r.revision > r.contraction],
        "equal": [r.family for r in records if r.revision == r.contraction],
    }

