import pytest

from ordhull.errors import UnknownStatement
from ordhull.statements import STATEMENTS, check_statement, check_statements, function_batch
from ordhull.verifier import InstanceFamily, enumerate_instances, run_suite


def test_diamond_full_suite_holds(diamond):
    reports = run_suite(diamond)
    assert len(reports) == len(STATEMENTS)
    assert all(r.verdict == "holds" for r in reports), [r.stmt for r in reports if r.verdict != "holds"]


def test_thm3_i_on_flat_function(diamond):
    r = check_statement(diamond, "THM3_I", {"a": "01", "b": "01"})
    assert r.verdict == "holds" and r.hypotheses_met


def test_thm1_l_invariant_function(chain):
    r = check_statement(chain, "THM1_L", chain.functions["f_invariant"])
    assert r.verdict == "holds"


def test_chain_fixture_all_tables(chain):
    r = check_statement(chain, "CHAIN_E")
    assert r.verdict == "holds"
    # two carrier points, three values
    assert len(function_batch(chain)) == 9


def test_gap_witness_is_a_finding_not_a_violation(gap_antichain):
    r = check_statement(gap_antichain, "THM2_L", gap_antichain.functions["f_gap"])
    assert r.verdict == "fails"
    assert r.findings == ["iff"] and r.violations == []
    assert r.witness["f"] == {"a": "p", "b": "q", "c": "TOP"}
    assert set(r.witness["envelope"].values()) == {"BOT"}


def test_run_suite_reports_gap_on_antichain_variant(gap_antichain):
    reports = {r.stmt: r for r in run_suite(gap_antichain)}
    assert reports["THM2_L"].verdict == "fails"
    assert reports["THM2_L"].witness is not None


def test_unknown_statement(diamond):
    with pytest.raises(UnknownStatement):
        check_statement(diamond, "THM9")


def test_lowercase_ids_accepted(diamond):
    assert check_statement(diamond, "lemma1").stmt == "LEMMA1"


def test_skipped_without_group_target():
    fam = InstanceFamily(2, 2, 2, h_kind="semigroup", t_group=False)
    inst = next(i for i in enumerate_instances(fam) if not i.T.is_group)
    assert check_statement(inst, "THM3_I").verdict == "skipped"


def test_engines_agree_on_records():
    fam = InstanceFamily(2, 2, 3)
    for inst in list(enumerate_instances(fam))[::7]:
        fast = [r.to_record() for r in check_statements(inst)]
        ref = [r.to_record() for r in check_statements(inst, engine="reference")]
        assert fast == ref


def test_sampled_batch_is_seeded_and_contains_constants():
    fam = InstanceFamily(4, 4, 5, mode="random", seed=3, count=5)
    for inst in enumerate_instances(fam):
        a = function_batch(inst, seed=9, sample=16)
        b = function_batch(inst, seed=9, sample=16)
        assert (a == b).all()
        assert (a[0] == inst.C.bottom).all() and (a[1] == inst.C.top).all()
