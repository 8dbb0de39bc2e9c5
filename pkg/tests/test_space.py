import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from esbc.generate import all_families, space_of_family
from esbc.logic import Signature, UnknownAtom, subsets, supersets
from esbc.space import (
    DuplicateStateId,
    EmptySpace,
    EpistemicSpace,
    FormatError,
    check_unbiased,
    check_zc,
    check_zr1,
    check_zr2,
    dump_space,
    literal_zc,
    literal_zr2,
    load_space,
    realizability_report,
)

SIG2 = Signature(("a", "b"))


def space_of(sig, *model_lists):
    return EpistemicSpace.from_models(sig, {f"s{i}": sig.parse_models(ms) for i, ms in enumerate(model_lists)})


class TestLoading:
    def test_e1_beliefs(self, e1):
        sig = e1.sig
        assert e1.states == ("psi_a", "psi_na", "psi_top")
        assert [sig.model_strs(e1.bel[s]) for s in e1.states] == [["1"], ["0"], ["0", "1"]]

    def test_e2_has_inconsistent_state(self, e2):
        assert e2.bel["psi_bot"] == 0
        assert len(e2.family) == 5

    def test_dump_load_roundtrip(self, e2):
        again = load_space(dump_space(e2))
        assert again == e2

    def test_invalid_json_has_position(self):
        with pytest.raises(FormatError) as exc:
            load_space('{"atoms": ["a"], "states": [}')
        assert exc.value.pos == 28

    def test_formula_error_has_position(self):
        doc = {"atoms": ["a"], "states": [{"id": "x", "beliefs": "a &"}]}
        with pytest.raises(FormatError) as exc:
            load_space(json.dumps(doc))
        assert exc.value.pos == 3

    def test_duplicate_ids(self):
        doc = {"atoms": ["a"], "states": [{"id": "x", "beliefs": "a"}, {"id": "x", "beliefs": "~a"}]}
        with pytest.raises(DuplicateStateId):
            load_space(json.dumps(doc))

    def test_empty(self):
        with pytest.raises(EmptySpace):
            load_space(json.dumps({"atoms": ["a"], "states": []}))

    def test_unknown_atom(self):
        doc = {"atoms": ["a"], "states": [{"id": "x", "beliefs": "b"}]}
        with pytest.raises(UnknownAtom):
            load_space(json.dumps(doc))

    @pytest.mark.parametrize(
        "doc",
        [
            [],
            {"states": []},
            {"atoms": ["a"], "states": [{"beliefs": "a"}]},
            {"atoms": ["a"], "states": [{"id": "x"}]},
            {"atoms": ["a"], "states": [{"id": "x", "beliefs": "a", "models": ["1"]}]},
            {"atoms": ["a"], "states": [{"id": "x", "models": ["11"]}]},
            {"atoms": ["a", "a"], "states": [{"id": "x", "models": []}]},
        ],
    )
    def test_malformed(self, doc):
        with pytest.raises(FormatError):
            load_space(json.dumps(doc))


class TestConditions:
    def test_e1(self, e1):
        r = realizability_report(e1)
        assert r.contraction_realizable
        assert not r.revision_realizable
        assert r.zr1.ok and not r.zr2.ok
        assert (r.zr2.state, r.zr2.models) == ("psi_a", 0)
        assert not r.full_meet_revision_exists and r.unbiased.models == 0

    def test_e2(self, e2):
        r = realizability_report(e2)
        sig = e2.sig
        assert r.revision_realizable
        assert not r.contraction_realizable
        assert r.zc.state == "psi_11"
        assert sig.model_strs(r.zc.models) == ["01", "11"]
        # smallest unrealized set by bitmask
        assert sig.model_strs(r.unbiased.models) == ["01", "11"]

    def test_e2_text(self, e2):
        text = realizability_report(e2).text(e2)
        assert "contraction: not realizable (witness: psi_11, {01, 11} unrealized)" in text
        assert "revision: realizable" in text

    def test_zr1_witness_names_interpretation(self):
        sp = space_of(SIG2, ["11"], [])
        v = check_zr1(sp)
        assert not v.ok and SIG2.interp_str(v.interpretation) == "01"

    def test_unbiased_full(self):
        sig = Signature(("a",))
        sp = space_of_family(range(4), sig)
        assert check_unbiased(sp).ok and check_zc(sp).ok and check_zr2(sp).ok

    def test_json_shape(self, e1):
        doc = realizability_report(e1).to_json(e1)
        assert doc["zr2"] == {"holds": False, "state": "psi_a", "missing_models": []}
        assert doc["contraction_realizable"] is True


def closure_oracle(fam, full, up):
    """Direct set-based closure check."""
    for m in fam:
        for x in range(full + 1):
            rel = (m & x) == m if up else (x & m) == x
            if rel and x not in fam:
                return False
    return True


class TestAgainstOracles:
    def test_all_n1_families(self):
        sig = Signature(("a",))
        for fam in all_families(sig):
            sp = space_of_family(fam, sig)
            assert check_zc(sp).ok == closure_oracle(set(fam), sig.full, True) == literal_zc(sp)
            assert check_zr2(sp).ok == closure_oracle(set(fam), sig.full, False) == literal_zr2(sp)

    def test_random_n2_families(self):
        rng = random.Random(3)
        for _ in range(300):
            fam = {m for m in range(16) if rng.random() < 0.4} or {0}
            sp = space_of_family(fam, SIG2)
            assert check_zc(sp).ok == closure_oracle(fam, 15, True) == literal_zc(sp)
            assert check_zr2(sp).ok == closure_oracle(fam, 15, False) == literal_zr2(sp)


@given(st.sets(st.integers(0, 15), min_size=1))
def test_witness_is_really_missing(fam):
    sp = space_of_family(fam, SIG2)
    for check in (check_zc, check_zr2, check_unbiased):
        v = check(sp)
        if not v.ok:
            assert v.models not in fam
    v = check_zc(sp)
    if not v.ok:
        assert v.models in set(supersets(sp.bel[v.state], 15))
    v = check_zr2(sp)
    if not v.ok:
        assert v.models in set(subsets(sp.bel[v.state]))


@given(st.sets(st.integers(0, 15), min_size=1))
def test_closing_a_family_restores_the_condition(fam):
    # closing under supersets always yields ZC
    sp = space_of_family(fam, SIG2)
    up = set(fam)
    for m in fam:
        up.update(supersets(m, 15))
    assert check_zc(space_of_family(up, SIG2)).ok
    down = set(fam)
    for m in fam:
        down.update(subsets(m))
    assert check_zr2(space_of_family(down, SIG2)).ok
    if check_unbiased(sp).ok:
        assert check_zc(sp).ok and check_zr1(sp).ok and check_zr2(sp).ok
