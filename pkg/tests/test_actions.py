import numpy as np
import pytest

from ordhull.actions import (CarrierAction, OrderedAction, carrier_actions, is_free, orbit,
                             orbit_by_iteration, orbit_image_check, orbit_partition, ordered_actions,
                             stabilizer, stationary_elements, validate_action)
from ordhull.algebra import FiniteSemigroup, cyclic_group, group_catalog, semigroup_catalog
from ordhull.errors import Ax0Violation, Ax1Violation, Ax2Violation, NotAGroup
from ordhull.order import closure, complete

Z2 = cyclic_group(2, ["e", "g"])
DIAMOND = complete(closure([("00", "01"), ("00", "10"), ("01", "11"), ("10", "11")], ["00", "01", "10", "11"]))
CHAIN = complete(closure([("0", "1"), ("1", "2")], ["0", "1", "2"]))


def swap(points=("a", "b", "c")):
    row = list(range(len(points)))
    row[0], row[1] = 1, 0
    return CarrierAction(Z2, points, [list(range(len(points))), row])


def test_swap_is_valid():
    validate_action(swap(("a", "b")))


def test_diamond_coordinate_swap_is_monotone():
    A = OrderedAction.from_base(Z2, DIAMOND, [[0, 1, 2, 3], [0, 2, 1, 3]])
    validate_action(A)


def test_chain_reversal_violates_monotonicity():
    A = OrderedAction.from_base(Z2, CHAIN, [[0, 1, 2], [2, 1, 0]])
    with pytest.raises(Ax2Violation) as e:
        validate_action(A)
    assert len(e.value.witness) == 3


def test_identity_must_act_trivially():
    A = CarrierAction(Z2, ["a", "b"], [[1, 0], [1, 0]])
    with pytest.raises((Ax0Violation, Ax1Violation)):
        validate_action(A)


def test_symbols_are_fixed():
    C = complete(closure([], ["p", "q"]))
    A = OrderedAction(Z2, C, [[0, 1, 2, 3], [1, 0, 3, 2]])
    with pytest.raises(Ax2Violation):
        validate_action(A)
    ok = OrderedAction.from_base(Z2, C, [[0, 1], [1, 0]])
    assert {"BOT", "TOP"} <= stationary_elements(validate_action(ok))


def test_orbits_and_stabilizers():
    A = swap()
    assert orbit(A, "a") == {"a", "b"}
    assert orbit(A, "c") == {"c"}
    assert stabilizer(A, "a") == {"e"}
    assert stabilizer(A, "c") == {"e", "g"}
    assert stationary_elements(A) == {"c"}
    P = orbit_partition(A)
    assert P.orbits == (frozenset({"a", "b"}), frozenset({"c"}))
    assert P.representatives == ("a", "c")
    assert not is_free(A)
    assert is_free(swap(("a", "b")))


def test_trivial_group_action():
    triv = cyclic_group(1, ["e"])
    A = CarrierAction(triv, ["a", "b"], [[0, 1]])
    assert orbit_partition(A).orbits == (frozenset({"a"}), frozenset({"b"}))
    assert stabilizer(A, "a") == {"e"}


def test_translation_action_is_one_orbit():
    A = CarrierAction(Z2, ["e", "g"], Z2.table)
    assert len(orbit_partition(A).orbits) == 1


def test_partition_needs_group():
    lz = FiniteSemigroup(["a", "b"], [[0, 0], [1, 1]])
    A = CarrierAction(lz, ["x", "y"], [[0, 0], [1, 1]])
    validate_action(A)
    with pytest.raises(NotAGroup):
        orbit_partition(A)


def test_orbit_matches_iteration_on_catalog():
    for n in range(1, 4):
        for H in semigroup_catalog(n):
            for table in carrier_actions(H, 3):
                A = CarrierAction(H, ["x0", "x1", "x2"], table)
                for x in A.carrier:
                    assert orbit(A, x) == orbit_by_iteration(A, x)


def test_enumerated_actions_validate():
    for H in group_catalog(4) + group_catalog(2):
        for table in carrier_actions(H, 3, dedupe=False):
            validate_action(CarrierAction(H, ["x0", "x1", "x2"], table))
    for table in ordered_actions(Z2, DIAMOND.base, dedupe=False):
        validate_action(OrderedAction.from_base(Z2, DIAMOND, table))


def test_dedupe_only_removes_relabelings():
    full = {tuple(map(tuple, t)) for t in carrier_actions(Z2, 3, dedupe=False)}
    reps = list(carrier_actions(Z2, 3, dedupe=True))
    assert len(reps) < len(full)
    # Z2 on 3 points up to relabeling: trivial, one swap with a fixed point
    assert len(reps) == 2


def test_orbit_image_check(diamond):
    hom = diamond.functions["f_hom"].array
    v = orbit_image_check(diamond.action_X, diamond.action_S, diamond.hom, hom)
    assert v.ok
    flat = diamond.functions["f_flat"].array
    v = orbit_image_check(diamond.action_X, diamond.action_S, diamond.hom, flat)
    assert v.inclusion and not v.equality


def test_orbit_image_constant_trivial_target(chain):
    f = np.full(len(chain.X), 1)
    assert orbit_image_check(chain.action_X, chain.action_S, chain.hom, f).ok
