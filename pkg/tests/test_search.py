import random
from itertools import product

import pytest

from esbc.generate import all_families, random_family, random_space, space_of_family
from esbc.logic import Signature, is_subset
from esbc.search import (
    BudgetExhausted,
    SearchConfig,
    cell_domain,
    count_operators,
    exists_operator,
    first_empty_cell,
    naive_count,
)
from esbc.space import check_zc, check_zr1, check_zr2
from esbc.verify import check_unary, verify

SIG1 = Signature(("a",))
SIG2 = Signature(("a", "b"))


class TestCellDomain:
    @pytest.mark.parametrize("kind,names", [("revision", ("R1", "R2", "R3")),
                                            ("contraction", ("C1", "C2", "C3", "C4"))])
    def test_domain_equals_unary_filter(self, kind, names):
        # brute force over every realized set at every cell
        rng = random.Random(1)
        for _ in range(50):
            fam = random_family(SIG2, rng)
            for bel in fam:
                for m in range(16):
                    row = [0] * 16
                    allowed = []
                    for x in sorted(fam):
                        row[m] = x
                        if all(check_unary(p, bel, row, m, 15) is None for p in names):
                            allowed.append(x)
                    assert cell_domain(kind, bel, m, 15, fam) == allowed

    def test_e1_revision_has_empty_cell(self, e1):
        assert first_empty_cell(e1, "revision") == ("psi_a", 0)

    def test_e2_contraction_has_empty_cell(self, e2):
        s, m = first_empty_cell(e2, "contraction")
        assert s == "psi_11" and e2.sig.model_strs(m) == ["11"]
        mod_a = e2.sig.parse_models(["11", "10"])
        assert cell_domain("contraction", e2.bel["psi_11"], mod_a, 15, e2.family) == []


class TestExistence:
    def test_examples(self, e1, e2):
        assert exists_operator(e1, SearchConfig("contraction")).exists
        r = exists_operator(e1, SearchConfig("revision"))
        assert not r.exists and r.certificate and r.empty_cell == ("psi_a", 0)
        assert exists_operator(e2, SearchConfig("revision")).exists
        assert exists_operator(e2, SearchConfig("contraction")).certificate

    def test_witness_verifies(self, e2):
        r = exists_operator(e2, SearchConfig("revision"))
        assert verify(r.witness).ok
        assert not r.exhausted

    def test_matches_conditions_n2(self):
        rng = random.Random(9)
        for _ in range(60):
            sp = space_of_family(random_family(SIG2, rng), SIG2)
            assert exists_operator(sp, SearchConfig("contraction")).exists == check_zc(sp).ok
            assert exists_operator(sp, SearchConfig("revision")).exists == (check_zr1(sp).ok and check_zr2(sp).ok)

    def test_budget_is_distinct_outcome(self):
        sp = space_of_family(range(16), SIG2)
        with pytest.raises(BudgetExhausted):
            exists_operator(sp, SearchConfig("revision", node_budget=5))
        with pytest.raises(BudgetExhausted):
            count_operators(sp, SearchConfig("contraction", node_budget=5))

    def test_bad_config(self):
        with pytest.raises(ValueError):
            SearchConfig("merge")
        with pytest.raises(ValueError):
            SearchConfig("revision", node_budget=0)


class TestCounting:
    def test_e1(self, e1):
        assert count_operators(e1, SearchConfig("contraction")).count == 1
        assert count_operators(e1, SearchConfig("revision")).count == 0

    @pytest.mark.parametrize("fam", [f for f in all_families(SIG1) if len(f) <= 3])
    def test_naive_agrees_n1(self, fam):
        sp = space_of_family(fam, SIG1)
        for kind in ("revision", "contraction"):
            assert count_operators(sp, SearchConfig(kind)).count == naive_count(sp, kind)

    def test_naive_agrees_with_repeated_beliefs(self):
        rng = random.Random(4)
        for _ in range(15):
            sp = random_space(SIG1, rng, max_states=3)
            for kind in ("revision", "contraction"):
                assert count_operators(sp, SearchConfig(kind)).count == naive_count(sp, kind)

    def test_cap(self):
        sp = space_of_family(range(16), SIG2)
        r = count_operators(sp, SearchConfig("revision", count_cap=10))
        assert r.count == 10 and not r.exact

    def test_naive_limit(self, e2):
        with pytest.raises(ValueError):
            naive_count(e2, "revision")


def brute_rows(space, kind):
    """Per-row enumeration straight from the verifier, independent of the search."""
    from esbc.operators import OperatorTable

    k = space.sig.num_model_sets
    total = 1
    for s in space.states:
        n_ok = 0
        for row in product(space.states, repeat=k):
            rows = [tuple(row) if t == s else (t,) * k for t in space.states]
            table = OperatorTable(space, kind, tuple(rows))
            report = verify(table, collect_all=True)
            if not any(v.state == s for v in report.violations):
                n_ok += 1
        total *= n_ok
    return total


@pytest.mark.parametrize("fam", [(1, 3), (0, 1, 2), (0, 1, 2, 3), (2, 3)])
def test_row_decomposition(fam):
    sp = space_of_family(fam, SIG1)
    for kind in ("revision", "contraction"):
        assert count_operators(sp, SearchConfig(kind)).count == brute_rows(sp, kind)


def test_parallel_is_deterministic():
    rng = random.Random(2)
    for _ in range(4):
        sp = space_of_family(random_family(SIG2, rng, style=3), SIG2)
        for kind in ("revision", "contraction"):
            a = exists_operator(sp, SearchConfig(kind))
            b = exists_operator(sp, SearchConfig(kind, parallel=True))
            assert a == b
            assert count_operators(sp, SearchConfig(kind)).count == count_operators(
                sp, SearchConfig(kind, parallel=True)).count


def test_witness_cells_inside_domains():
    sp = space_of_family(range(16), SIG2)
    r = exists_operator(sp, SearchConfig("contraction"))
    for s, row in zip(sp.states, r.witness.model_rows()):
        for m, x in enumerate(row):
            assert is_subset(sp.bel[s], x)
