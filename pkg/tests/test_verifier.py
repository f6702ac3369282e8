import json

import pytest

from ordhull.errors import BoundsTooLarge, OrdhullError
from ordhull.instancefile import load_instance
from ordhull.statements import check_statement
from ordhull.verifier import (InstanceFamily, enumerate_instances, find_isomorphism, hunt,
                              write_findings)


def test_bounds():
    with pytest.raises(BoundsTooLarge):
        InstanceFamily(6, 6, 6)
    with pytest.raises(BoundsTooLarge):
        InstanceFamily(5, 4, 5, mode="random")
    InstanceFamily(4, 4, 5, mode="random")


def test_small_family_contains_chain_fixture(chain):
    fam = InstanceFamily(2, 2, 3)
    assert any(find_isomorphism(inst, None, chain, None) for inst in enumerate_instances(fam))


def test_exhaustive_stream_is_stable():
    fam = InstanceFamily(2, 2, 3)
    a = [i.digest for i in enumerate_instances(fam)]
    b = [i.digest for i in enumerate_instances(fam)]
    assert a == b and len(set(a)) == len(a)


def test_random_stream_is_seeded():
    fam = InstanceFamily(4, 4, 5, mode="random", seed=42, count=100)
    a = [i.digest for i in enumerate_instances(fam)]
    assert a == [i.digest for i in enumerate_instances(fam)]
    assert len(a) == 100
    other = InstanceFamily(4, 4, 5, mode="random", seed=43, count=100)
    assert a != [i.digest for i in enumerate_instances(other)]


def test_family_constraints_respected():
    for inst in enumerate_instances(InstanceFamily(2, 3, 3, free=False)):
        assert not inst.flags["free"] and inst.flags["t_group"]
    for inst in enumerate_instances(InstanceFamily(3, 2, 2, h_kind="semigroup", t_group=False)):
        assert not inst.flags["h_group"]


def test_empty_targets():
    with pytest.raises(OrdhullError):
        hunt(InstanceFamily(2, 2, 2), [], 10)


def test_hunt_rediscovers_gap_witness(gap_antichain, tmp_path):
    summary = hunt(InstanceFamily(2, 3, 4, free=False), ["THM2_L"], 1000)
    assert summary.results and summary.unconfirmed == 0
    assert all(r.confirmed and not r.violation for r in summary.results)
    gap = gap_antichain.functions["f_gap"].as_dict()
    assert any(find_isomorphism(r.instance, r.function, gap_antichain, gap) for r in summary.results)

    paths = write_findings(summary.results[:3], tmp_path)
    lines = (tmp_path / "findings.jsonl").read_text().splitlines()
    assert len(paths) == 3 == len(lines)
    for p, line in zip(paths, lines):
        inst = load_instance(p)
        rec = json.loads(line)
        r = check_statement(inst, rec["stmt"], inst.functions["witness"])
        assert r.verdict == "fails" and rec["part"] in r.findings + r.violations


def test_hunt_is_deterministic():
    fam = InstanceFamily(4, 4, 5, mode="random", seed=5, count=30, free=False)
    a = hunt(fam, ["THM2_L", "THM3_II"], 30, seed=1, f_sample=32)
    b = hunt(fam, ["THM2_L", "THM3_II"], 30, seed=1, f_sample=32)
    assert [r.to_record() for r in a.results] == [r.to_record() for r in b.results]


def test_semigroup_hunt_entries_are_confirmed():
    fam = InstanceFamily(3, 2, 3, h_kind="semigroup", t_group=False)
    s = hunt(fam, ["THM3_I"], 300)
    assert s.unconfirmed == 0
    assert all(r.confirmed for r in s.results)


def test_budget_zero():
    s = hunt(InstanceFamily(2, 2, 2), ["LEMMA1"], 0)
    assert s.examined == 0 and s.results == []
