"""Epistemic spaces and the realizability conditions on them."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Mapping

from .logic import (
    FormulaSyntaxError,
    ModelSet,
    Signature,
    is_subset,
    models_of,
    parse_formula,
    subsets,
    supersets,
)


class FormatError(ValueError):
    def __init__(self, message: str, pos: int | None = None):
        super().__init__(message if pos is None else f"{message} (position {pos})")
        self.pos = pos


class DuplicateStateId(FormatError):
    pass


class EmptySpace(FormatError):
    pass


@dataclass(frozen=True)
class EpistemicSpace:
    sig: Signature
    states: tuple[str, ...]
    bel: Mapping[str, ModelSet]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        states = tuple(self.states)
        object.__setattr__(self, "states", states)
        if not states:
            raise EmptySpace("an epistemic space needs at least one state")
        seen = set()
        for s in states:
            if not isinstance(s, str) or not s:
                raise FormatError(f"state ids must be non-empty strings, got {s!r}")
            if s in seen:
                raise DuplicateStateId(f"duplicate state id {s!r}")
            seen.add(s)
        bel = dict(self.bel)
        if set(bel) != seen:
            raise FormatError("belief map must cover exactly the declared states")
        for s, m in bel.items():
            if m < 0 or m > self.sig.full:
                raise FormatError(f"model set of {s!r} out of range")
        object.__setattr__(self, "bel", bel)
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(states)})

    @classmethod
    def from_models(cls, sig: Signature, beliefs: Mapping[str, ModelSet]) -> "EpistemicSpace":
        return cls(sig, tuple(beliefs), dict(beliefs))

    def index(self, state: str) -> int:
        return self._index[state]

    def beliefs(self) -> list[ModelSet]:
        """Model sets in state declaration order."""
        return [self.bel[s] for s in self.states]

    @property
    def family(self) -> frozenset[ModelSet]:
        return frozenset(self.bel.values())

    def realized(self) -> "RealizedFamily":
        return RealizedFamily.of(self)

    def to_doc(self) -> dict:
        return {
            "atoms": list(self.sig.atoms),
            "states": [{"id": s, "models": self.sig.model_strs(self.bel[s])} for s in self.states],
        }


@dataclass(frozen=True)
class RealizedFamily:
    family: frozenset[ModelSet]
    rep: Mapping[ModelSet, str]

    @classmethod
    def of(cls, space: EpistemicSpace) -> "RealizedFamily":
        rep: dict[ModelSet, str] = {}
        for s in space.states:
            m = space.bel[s]
            if m not in rep or s < rep[m]:
                rep[m] = s
        return cls(frozenset(rep), rep)

    def __contains__(self, m: ModelSet) -> bool:
        return m in self.rep


# --------------------------------------------------------------------------
# loading


def space_from_doc(doc: Any) -> EpistemicSpace:
    if not isinstance(doc, dict):
        raise FormatError("space document must be a JSON object")
    atoms = doc.get("atoms")
    if not isinstance(atoms, list) or not all(isinstance(a, str) for a in atoms):
        raise FormatError("'atoms' must be a list of strings")
    try:
        sig = Signature(tuple(atoms))
    except ValueError as e:
        raise FormatError(str(e)) from None
    states = doc.get("states")
    if not isinstance(states, list):
        raise FormatError("'states' must be a list")
    if not states:
        raise EmptySpace("an epistemic space needs at least one state")
    ids: list[str] = []
    bel: dict[str, ModelSet] = {}
    for k, entry in enumerate(states):
        if not isinstance(entry, dict) or not isinstance(entry.get("id"), str) or not entry["id"]:
            raise FormatError(f"state #{k} needs a non-empty string 'id'")
        sid = entry["id"]
        if sid in bel:
            raise DuplicateStateId(f"duplicate state id {sid!r}")
        has_f, has_m = "beliefs" in entry, "models" in entry
        if has_f == has_m:
            raise FormatError(f"state {sid!r} needs exactly one of 'beliefs' or 'models'")
        if has_f:
            if not isinstance(entry["beliefs"], str):
                raise FormatError(f"state {sid!r}: 'beliefs' must be a formula string")
            try:
                m = models_of(parse_formula(entry["beliefs"], sig), sig)
            except FormulaSyntaxError as e:
                raise FormatError(f"state {sid!r}: {e}", e.pos) from None
        else:
            if not isinstance(entry["models"], list):
                raise FormatError(f"state {sid!r}: 'models' must be a list of bitstrings")
            try:
                m = sig.parse_models(entry["models"])
            except (ValueError, AttributeError) as e:
                raise FormatError(f"state {sid!r}: {e}") from None
        ids.append(sid)
        bel[sid] = m
    return EpistemicSpace(sig, tuple(ids), bel)


def load_space(document: bytes | str) -> EpistemicSpace:
    """Parse a space document (JSON).

    Raises ``FormatError`` (including its subclasses ``DuplicateStateId`` and
    ``EmptySpace``) or ``UnknownAtom``.
    """
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e.msg}", e.pos) from None
    return space_from_doc(doc)


def dump_space(space: EpistemicSpace) -> str:
    return json.dumps(space.to_doc(), indent=2) + "\n"


# --------------------------------------------------------------------------
# realizability conditions


@dataclass(frozen=True)
class Verdict:
    ok: bool
    state: str | None = None
    models: ModelSet | None = None
    interpretation: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_zc(space: EpistemicSpace) -> Verdict:
    """Upward closure: every superset of a realized model set is realized."""
    fam = space.family
    full = space.sig.full
    for s in space.states:
        for m in supersets(space.bel[s], full):
            if m not in fam:
                return Verdict(False, state=s, models=m)
    return Verdict(True)


def check_zr1(space: EpistemicSpace) -> Verdict:
    fam = space.family
    for w in space.sig.interpretations():
        if 1 << w not in fam:
            return Verdict(False, interpretation=w, models=1 << w)
    return Verdict(True)


def check_zr2(space: EpistemicSpace) -> Verdict:
    """Downward closure: every subset of a realized model set is realized."""
    fam = space.family
    for s in space.states:
        for m in subsets(space.bel[s]):
            if m not in fam:
                return Verdict(False, state=s, models=m)
    return Verdict(True)


def check_unbiased(space: EpistemicSpace) -> Verdict:
    fam = space.family
    for m in range(space.sig.num_model_sets):
        if m not in fam:
            return Verdict(False, models=m)
    return Verdict(True)


@dataclass(frozen=True)
class RealizabilityReport:
    zc: Verdict
    zr1: Verdict
    zr2: Verdict
    unbiased: Verdict

    @property
    def contraction_realizable(self) -> bool:
        return self.zc.ok

    @property
    def revision_realizable(self) -> bool:
        return self.zr1.ok and self.zr2.ok

    @property
    def full_meet_revision_exists(self) -> bool:
        return self.unbiased.ok

    def to_json(self, space: EpistemicSpace) -> dict:
        def w(v: Verdict) -> dict:
            out: dict[str, Any] = {"holds": v.ok}
            if not v.ok:
                if v.state is not None:
                    out["state"] = v.state
                if v.interpretation is not None:
                    out["interpretation"] = space.sig.interp_str(v.interpretation)
                out["missing_models"] = space.sig.model_strs(v.models)
            return out

        return {
            "zc": w(self.zc),
            "zr1": w(self.zr1),
            "zr2": w(self.zr2),
            "unbiased": w(self.unbiased),
            "contraction_realizable": self.contraction_realizable,
            "revision_realizable": self.revision_realizable,
            "full_meet_revision_exists": self.full_meet_revision_exists,
        }

    def text(self, space: EpistemicSpace) -> str:
        sig = space.sig

        def why(v: Verdict) -> str:
            if v.interpretation is not None:
                return f"no state believes exactly {{{sig.interp_str(v.interpretation)}}}"
            where = f"{v.state}, " if v.state is not None else ""
            return f"{where}{sig.show(v.models)} unrealized"

        lines = []
        if self.contraction_realizable:
            lines.append("contraction: realizable")
        else:
            lines.append(f"contraction: not realizable (witness: {why(self.zc)})")
        if self.revision_realizable:
            lines.append("revision: realizable")
        else:
            bad = self.zr1 if not self.zr1.ok else self.zr2
            tag = "ZR1" if not self.zr1.ok else "ZR2"
            lines.append(f"revision: not realizable ({tag} witness: {why(bad)})")
        if self.full_meet_revision_exists:
            lines.append("full-meet revision: yes")
        else:
            lines.append(f"full-meet revision: no (witness: {why(self.unbiased)})")
        return "\n".join(lines)


def realizability_report(space: EpistemicSpace) -> RealizabilityReport:
    return RealizabilityReport(
        zc=check_zc(space),
        zr1=check_zr1(space),
        zr2=check_zr2(space),
        unbiased=check_unbiased(space),
    )


def literal_zc(space: EpistemicSpace) -> bool:
    """Direct double-loop reading of the upward closure condition."""
    sig = space.sig
    for s in space.states:
        for m in range(sig.num_model_sets):
            if is_subset(space.bel[s], m) and not any(space.bel[t] == m for t in space.states):
                return False
    return True


def literal_zr2(space: EpistemicSpace) -> bool:
    sig = space.sig
    for s in space.states:
        for m in range(sig.num_model_sets):
            if is_subset(m, space.bel[s]) and not any(space.bel[t] == m for t in space.states):
                return False
    return True
