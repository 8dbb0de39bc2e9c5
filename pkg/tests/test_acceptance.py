"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""
import random
import time

from esbc.audit import audit_equivalences, audit_signature, audit_theorems, find_count_asymmetry
from esbc.generate import random_formula, random_space, random_table, random_variant, space_of_family
from esbc.logic import LinearOrder, Signature, TotalPreorder, models_of
from esbc.operators import (
    FaithfulAssignment,
    MissingState,
    build_full_meet_revision,
    build_linear_contraction,
    build_maxichoice_revision,
    check_contraction_compatible,
    check_faithful,
    classify_operator,
    induce_assignment_linear,
)
from esbc.search import SearchConfig, count_operators, naive_count
from esbc.space import realizability_report
from esbc.verify import formula_level_verdicts, transcription_verdicts, verify_contraction, verify_revision


def report(capsys, n, ok, detail, started):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail}; {time.perf_counter() - started:.2f}s)"
    with capsys.disabled():
        print("\n" + line)
    return line


def test_criterion_1_example_one(capsys, e1):
    t0 = time.perf_counter()
    r = realizability_report(e1)
    order = LinearOrder.parse("1,0", e1.sig)
    table = build_linear_contraction(e1, order)
    v = verify_contraction(e1, table)
    c = classify_operator(table)
    checks = {
        "contraction realizable": r.contraction_realizable,
        "revision not realizable": not r.revision_realizable,
        "no full-meet revision": not r.full_meet_revision_exists,
        "7/7 clean": v.ok and len(v.postulates) == 7,
        "linear a before ~a": c.is_linear and c.linear_order.text(e1.sig) == "1,0",
    }
    elapsed = time.perf_counter() - t0
    ok = all(checks.values()) and elapsed < 1
    report(capsys, 1, ok, ", ".join(k for k, good in checks.items() if good), t0)
    assert checks == {k: True for k in checks}
    assert elapsed < 1


def test_criterion_2_example_two(capsys, e2, ex2_orders):
    t0 = time.perf_counter()
    sig = e2.sig
    r = realizability_report(e2)
    table = build_maxichoice_revision(e2, ex2_orders)
    v = verify_revision(e2, table)
    try:
        build_full_meet_revision(e2)
        missing = None
    except MissingState as e:
        missing = e.missing
    checks = {
        "revision realizable": r.revision_realizable,
        "contraction witness (psi_11, {01, 11})": not r.contraction_realizable
        and (r.zc.state, sig.model_strs(r.zc.models)) == ("psi_11", ["01", "11"]),
        "R1-R6 clean over 16 inputs / 256 pairs": v.ok and v.plan.exhaustive and (v.plan.inputs, v.plan.pairs) == (16, 256),
        "fm-revision MissingState {01, 11}": missing is not None and sig.parse_models(["01", "11"]) in missing,
    }
    elapsed = time.perf_counter() - t0
    ok = all(checks.values()) and elapsed < 1
    report(capsys, 2, ok, ", ".join(k for k, good in checks.items() if good), t0)
    assert checks == {k: True for k in checks}
    assert elapsed < 1


def test_criterion_3_theorem_audit_n1(capsys):
    t0 = time.perf_counter()
    audit = audit_theorems(1)
    agreements = 0
    certificates_ok = True
    naive_ok = True
    for rec in audit.records:
        agreements += rec["contraction_exists"] == rec["zc"]
        agreements += rec["revision_exists"] == (rec["zr1"] and rec["zr2"])
        for kind in ("contraction", "revision"):
            if not rec[f"{kind}_exists"]:
                certificates_ok &= bool(rec[f"{kind}_certificate"])
                if len(rec["family"]) <= 3:
                    naive_ok &= rec["naive"] is not None and rec["naive"][kind] == 0
    elapsed = time.perf_counter() - t0
    ok = len(audit.records) == 15 and agreements == 30 and certificates_ok and naive_ok and not audit.falsifications
    report(capsys, 3, ok and elapsed < 60,
           f"{agreements}/30 agreements, certificates {'ok' if certificates_ok else 'missing'}, "
           f"naive cross-check {'ok' if naive_ok else 'disagrees'}", t0)
    assert len(audit.records) == 15
    assert agreements == 30
    assert certificates_ok and naive_ok
    assert not audit.falsifications
    assert elapsed < 60


def test_criterion_4_equivalence_audit(capsys):
    t0 = time.perf_counter()
    n1 = audit_equivalences(1)
    n2 = audit_equivalences(2, 100, seed=0)
    records = n1.records + n2.records
    zc_clean = all(
        all(rec[k] == "clean" for k in ("fm-contraction", "mc-contraction", "lin-contraction"))
        for rec in records if rec["zc"]
    )
    revision_exact = all(
        (rec["mc-revision"] == "clean") == rec["zr"] and (rec["lin-revision"] == "clean") == rec["zr"]
        and (rec["fm-revision"] == "clean") == rec["unbiased"]
        for rec in records
    )
    falsified = len(n1.falsifications) + len(n2.falsifications)
    elapsed = time.perf_counter() - t0
    ok = zc_clean and revision_exact and falsified == 0 and elapsed < 300
    report(capsys, 4, ok, f"{len(records)} spaces, {sum(r['zc'] for r in records)} with ZC, "
                          f"{falsified} falsifications", t0)
    assert zc_clean and revision_exact
    assert falsified == 0
    assert elapsed < 300


def test_criterion_5_transcription_oracle(capsys):
    t0 = time.perf_counter()
    rng = random.Random(20230901)
    disagreements = []
    variants = 0
    for i in range(1000):
        n = 1 + i % 2
        sig = Signature(("a", "b")[:n])
        kind = "revision" if rng.random() < 0.5 else "contraction"
        space = random_space(sig, rng, max_states=4)
        table = random_table(space, kind, rng)
        state = rng.choice(space.states)
        alpha, beta = random_formula(sig, rng), random_formula(sig, rng)
        if rng.random() < 0.75:
            other = random_variant(alpha, rng, steps=rng.randint(1, 4))
            variants += 1
        else:
            other = random_formula(sig, rng)
        m, k = models_of(alpha, sig), models_of(beta, sig)
        model_level = transcription_verdicts(table, state, m, k)
        formula_level = formula_level_verdicts(table, state, alpha, beta, other)
        if model_level != formula_level:
            disagreements.append((i, model_level, formula_level))
    report(capsys, 5, not disagreements,
           f"1000 instances, {variants} with syntactic variants, {len(disagreements)} disagreements", t0)
    assert disagreements == []


def test_criterion_6_counting(capsys, e1):
    t0 = time.perf_counter()
    con = count_operators(e1, SearchConfig("contraction"))
    rev = count_operators(e1, SearchConfig("revision"))
    naive_con = naive_count(e1, "contraction")
    naive_rev = naive_count(e1, "revision")
    records = find_count_asymmetry(1)
    elapsed = time.perf_counter() - t0
    ok = (con.exact and con.count >= 1 and con.count == naive_con and rev.count == 0 == naive_rev
          and len(records) == 15 and all(r.agree for r in records) and elapsed < 120)
    more_con = sum(r.contraction > r.revision for r in records)
    more_rev = sum(r.revision > r.contraction for r in records)
    report(capsys, 6, ok, f"E1 contraction={con.count} (naive {naive_con}), revision={rev.count}; "
                          f"15 families: {more_con} favour contraction, {more_rev} favour revision", t0)
    assert con.exact and con.count >= 1
    assert con.count == naive_con
    assert rev.count == 0 == naive_rev
    assert len(records) == 15 and all(r.agree for r in records)
    assert elapsed < 120


def test_criterion_7_faithful_assignments(capsys, e1):
    t0 = time.perf_counter()
    checked = 0
    failures = []
    order = LinearOrder.parse("1,0", e1.sig)
    cases = [(e1, order)]
    # every linear contraction built by the equivalence audit, rebuilt from its record
    for n, audit in ((1, audit_equivalences(1)), (2, audit_equivalences(2, 100, seed=0))):
        sig = audit_signature(n)
        for rec in audit.records:
            if rec["zc"]:
                cases.append((space_of_family(rec["family"], sig), LinearOrder.parse(rec["order"], sig)))
    for sp, o in cases:
        table = build_linear_contraction(sp, o)
        assign = induce_assignment_linear(sp, o)
        checked += 1
        if not (check_faithful(assign, sp).ok and check_contraction_compatible(assign, table).ok):
            failures.append((sp.states, o))
    flat = FaithfulAssignment({s: TotalPreorder.flat(e1.sig) for s in e1.states})
    w = check_contraction_compatible(flat, build_linear_contraction(e1, order))
    negative_ok = not w.ok and (w.state, w.input) == ("psi_a", 0)
    report(capsys, 7, not failures and negative_ok,
           f"{checked} linear contractions faithful and compatible, {len(failures)} failures; "
           f"flat witness ({w.state}, {e1.sig.show(w.input)})", t0)
    assert failures == []
    assert negative_ok
