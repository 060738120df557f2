import pytest

from cliffbreak.claims import (
    CATALOGUE,
    DISCREPANCY,
    FAIL,
    PASS,
    STATED_CLASSES,
    Claim,
    ClaimContext,
    new_details,
    run_claim,
    run_claims,
    select,
)
from cliffbreak.structure import classify_table
from cliffbreak.algebra import Signature

EXPECTED_DISCREPANCIES = {"C07-literal", "C09-literal"}


@pytest.fixture(scope="module")
def full_run():
    return {r.id: r for r in run_claims(seed=42)}


def test_ids_unique_and_stable():
    ids = [c.id for c in CATALOGUE]
    assert len(ids) == len(set(ids))
    for prefix in [f"C{n:02d}" for n in range(1, 17)]:
        assert any(i.startswith(prefix) for i in ids), prefix


def test_expected_status_contract(full_run):
    for cid, r in full_run.items():
        want = DISCREPANCY if cid in EXPECTED_DISCREPANCIES else PASS
        assert r.status == want, (cid, r.details)
        assert r.as_expected


def test_discrepancies_carry_counterevidence(full_run):
    lit7 = full_run["C07-literal"].details
    assert lit7["ranks"]["centralizer of i*g5 in span(i,j,k)"] == 3
    assert lit7["ranks"]["centralizer of g5 in span(i,j,k)"] == 1
    lit9 = full_run["C09-literal"].details
    assert lit9["checks"]["literal triples"] is False
    assert any("2*i*g1*g2*g3" in n for n in lit9["notes"])


def test_sorted_by_id():
    ids = [r.id for r in run_claims("C1")]
    assert ids == sorted(ids)


def test_filter():
    assert len(run_claims("C01")) == 19
    assert run_claims("nope") == []
    assert [c.id for c in select("C14")] == [c.id for c in CATALOGUE if c.id.startswith("C14")]


def test_stated_classes_match_table():
    assert len(STATED_CLASSES) == 19
    for (p, q), iso in STATED_CLASSES:
        assert classify_table(Signature(p, q)) == iso


@pytest.mark.parametrize("claim_id", [c.id for c in CATALOGUE])
def test_isolation(claim_id, full_run):
    alone = run_claim(claim_id, seed=42)
    assert alone.status == full_run[claim_id].status
    assert alone.details == full_run[claim_id].details


def test_deterministic_given_seed():
    a = [r.to_dict() for r in run_claims("C17", seed=7)]
    b = [r.to_dict() for r in run_claims("C17", seed=7)]
    assert a == b


def test_parallel_matches_serial(full_run):
    par = run_claims(seed=42, jobs=2)
    assert [r.to_dict() for r in par] == [full_run[k].to_dict() for k in sorted(full_run)]


def test_runner_turns_exceptions_into_fail():
    def broken(ctx):
        raise RuntimeError("boom")

    r = run_claim(Claim("X-broken", "always raises", "", broken))
    assert r.status == FAIL and "boom" in r.details["notes"][0]


def test_claims_are_data():
    # a new claim needs nothing but a record
    def trivial(ctx: ClaimContext):
        d = new_details()
        d["checks"]["seed passed through"] = ctx.seed == 11
        return PASS if all(d["checks"].values()) else FAIL, d

    r = run_claim(Claim("X-extra", "extra", "", trivial), seed=11)
    assert r.status == PASS


def test_key_quantities(full_run):
    c06 = full_run["C06-centralizer"].details
    assert c06["ranks"]["centralizer"] == 8
    assert c06["factors"]["centralizer"] == "M(2,C)"
    assert c06["signatures"] == {"j,k,g5": "(1,2)", "j*g5,k*g5,g5": "(3,0)"}
    c12 = full_run["C12-parameters"].details["ranks"]
    assert list(c12.values()) == [21, 4, 25, 28]
    c15 = full_run["C15-cl32-split"].details
    assert c15["ranks"]["plus"] == c15["ranks"]["minus"] == 16
    assert full_run["C15-cl43"].details["factors"]["Cl(4,4) table"] == "M(16,R)"
    assert full_run["C02-cl33-gamma5"].details["pseudoscalar_factor"] == {"g0": "-1"}
    assert full_run["C02-cl33-gamma0"].details["pseudoscalar_factor"] == {"g5": "1"}


def test_parameter_ranks_by_matrices(dirac_h):
    from cliffbreak.claims import LEFT_LABELS, PSEUDO_LABELS, RIGHT_LABELS, TRIPLET
    from cliffbreak.parser import eval_text
    from oracles import dirac_matrix, real_rank

    m = lambda t: dirac_matrix(eval_text(t, dirac_h))
    main = [m(f"{a}*{b}") for a in LEFT_LABELS for b in RIGHT_LABELS]
    pseudo = [m(t) for t in PSEUDO_LABELS]
    trip = [m(t) for t in TRIPLET]
    assert [real_rank(main), real_rank(pseudo), real_rank(main + pseudo), real_rank(main + pseudo + trip)] == \
        [21, 4, 25, 28]
