import numpy as np
import pytest

from ordhull.envelope import (check_on_generators, classify, left_multiply, lower_envelope,
                              regularized_majorant, regularized_minorant, upper_envelope, workspace)
from ordhull.errors import GroupModeOnNonGroup, NotGenerating, OrbitwiseNeedsGroups, TargetNotGroup
from ordhull.instancefile import load_fixture
from ordhull.reference import ReferenceEngine
from ordhull.verifier import InstanceFamily, enumerate_instances

ALL = {"HG", "HGC", "SUB", "SUPER"}


def const(inst, label):
    return {x: label for x in inst.X}


def test_classify_examples(diamond):
    assert classify(diamond, {"a": "01", "b": "10"}) == ALL
    assert classify(diamond, {"a": "01", "b": "01"}) == frozenset()


def test_symbol_constants_are_hgc(swap_antichain):
    inst = swap_antichain
    for sym in ("BOT", "TOP"):
        cls = classify(inst, const(inst, sym))
        assert "HGC" in cls and "HG" not in cls


def test_generators_match_full_check(diamond):
    assert check_on_generators(diamond, {"a": "01", "b": "10"}, ["g"])
    assert not check_on_generators(diamond, {"a": "01", "b": "01"}, ["g"])
    assert check_on_generators(diamond, {"a": "01", "b": "10"}, ["g"], mode="group")
    with pytest.raises(NotGenerating):
        check_on_generators(diamond, {"a": "01", "b": "10"}, ["e"])


def test_group_mode_needs_group():
    from ordhull.verifier import InstanceFamily
    fam = InstanceFamily(2, 2, 2, h_kind="semigroup", t_group=False)
    inst = next(iter(enumerate_instances(fam)))
    f = [inst.C.labels[0]] * len(inst.X)
    with pytest.raises(GroupModeOnNonGroup):
        check_on_generators(inst, f, inst.H.elements, mode="group")


@pytest.mark.parametrize("algorithm", ["bruteforce", "orbitwise"])
def test_envelope_examples(diamond, chain, algorithm):
    flat = {"a": "01", "b": "01"}
    assert lower_envelope(diamond, flat, "HG", algorithm).as_dict() == {"a": "00", "b": "00"}
    assert upper_envelope(diamond, flat, "HG", algorithm).as_dict() == {"a": "11", "b": "11"}
    hom = {"a": "01", "b": "10"}
    for cls in ("HG", "HGC"):
        assert lower_envelope(diamond, hom, cls, algorithm).as_dict() == hom
        assert upper_envelope(diamond, hom, cls, algorithm).as_dict() == hom
    split = {"a": "0", "b": "2"}
    assert lower_envelope(chain, split, "HG", algorithm).as_dict() == {"a": "0", "b": "0"}
    assert upper_envelope(chain, split, "HG", algorithm).as_dict() == {"a": "2", "b": "2"}


def test_homogeneous_is_its_own_envelope_in_every_class(diamond):
    hom = {"a": "01", "b": "10"}
    for cls in ("HG", "HGC", "SUB", "SUPER"):
        assert lower_envelope(diamond, hom, cls).as_dict() == hom
        assert upper_envelope(diamond, hom, cls).as_dict() == hom


def test_empty_family_gives_unit(gap_antichain):
    inst = gap_antichain
    gap = inst.functions["f_gap"]
    assert set(lower_envelope(inst, gap, "HG").as_dict().values()) == {"BOT"}
    assert set(lower_envelope(inst, gap, "HG", "orbitwise").as_dict().values()) == {"BOT"}


def test_regularization_examples(diamond, chain):
    flat = {"a": "01", "b": "01"}
    assert regularized_minorant(diamond, flat).as_dict() == {"a": "00", "b": "00"}
    assert regularized_majorant(diamond, flat).as_dict() == {"a": "11", "b": "11"}
    hom = {"a": "01", "b": "10"}
    assert regularized_minorant(diamond, hom).as_dict() == hom
    assert regularized_majorant(diamond, hom).as_dict() == hom
    split = {"a": "0", "b": "2"}
    assert regularized_minorant(chain, split).as_dict() == {"a": "0", "b": "0"}
    assert regularized_majorant(chain, split).as_dict() == {"a": "2", "b": "2"}


def test_left_multiply(diamond, swap_antichain):
    hom = {"a": "01", "b": "10"}
    moved = left_multiply(diamond, "g", hom)
    assert moved.as_dict() == {"a": "10", "b": "01"}
    assert "HG" in classify(diamond, moved)
    assert left_multiply(diamond, "e", hom).as_dict() == hom
    inst = swap_antichain
    t = inst.T.elements[1]
    assert set(left_multiply(inst, t, const(inst, "BOT")).as_dict().values()) == {"BOT"}


def test_non_group_preconditions():
    fam = InstanceFamily(2, 2, 2, h_kind="semigroup", t_group=False)
    for inst in enumerate_instances(fam):
        if not inst.T.is_group:
            break
    f = [inst.C.labels[0]] * len(inst.X)
    with pytest.raises(OrbitwiseNeedsGroups):
        lower_envelope(inst, f, "HG", "orbitwise")
    with pytest.raises(TargetNotGroup):
        regularized_minorant(inst, f)


def test_fast_engine_matches_reference_on_small_family():
    fam = InstanceFamily(2, 2, 3)
    count = 0
    for inst in enumerate_instances(fam):
        ws, ref = workspace(inst), ReferenceEngine(inst)
        fs = ws.tables
        assert np.array_equal(ws.classify(fs), ref.classify(fs))
        for cls in ("HG", "HGC", "SUB", "SUPER"):
            assert np.array_equal(ws.lower(fs, cls), ref.lower(fs, cls))
            assert np.array_equal(ws.upper(fs, cls), ref.upper(fs, cls))
        if inst.T.is_group:
            assert np.array_equal(ws.reg_min(fs), ref.reg_min(fs))
            assert np.array_equal(ws.reg_max(fs), ref.reg_max(fs))
        count += 1
    assert count > 20


def test_semigroup_instances_match_reference():
    fam = InstanceFamily(2, 2, 2, h_kind="semigroup", t_group=False)
    for inst in enumerate_instances(fam):
        ws, ref = workspace(inst), ReferenceEngine(inst)
        fs = ws.tables
        for cls in ("HG", "HGC", "SUB", "SUPER"):
            assert np.array_equal(ws.lower(fs, cls), ref.lower(fs, cls))
            assert np.array_equal(ws.upper(fs, cls), ref.upper(fs, cls))
