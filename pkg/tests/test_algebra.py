import pytest

from ordhull.algebra import (FiniteSemigroup, Homomorphism, adjoin_identity, cyclic_group, epimorphisms,
                             generate, group_catalog, is_generating, klein_group, left_zero,
                             restrict_to_image, semigroup_catalog)
from ordhull.errors import EmptyGenerators, GroupModeOnNonGroup, NotAHomomorphism, NotAssociative


def test_z2_is_commutative_group():
    z2 = cyclic_group(2, ["e", "g"])
    assert z2.is_group and z2.is_commutative and z2.elements[z2.identity] == "e"


def test_left_zero_flags():
    lz = left_zero(2, ["a", "b"])
    assert lz.identity is None and not lz.is_group and not lz.is_commutative


def test_nonassociative_table():
    with pytest.raises(NotAssociative):
        FiniteSemigroup.from_labels(["a", "b"], [["b", "a"], ["a", "a"]])


def test_adjoin_identity():
    M, _ = adjoin_identity(left_zero(2, ["a", "b"]))
    assert len(M) == 3 and M.is_monoid and M.elements[M.identity] == "1"
    z2 = cyclic_group(2)
    assert adjoin_identity(z2)[0] is z2


def test_generate_examples():
    z4 = cyclic_group(4, ["e", "g", "g2", "g3"])
    assert generate(z4, ["g"]) == frozenset(z4.elements)
    assert generate(left_zero(2, ["a", "b"]), ["a"]) == {"a"}
    z2 = cyclic_group(2, ["e", "g"])
    assert generate(z2, ["g"], "group") == {"e", "g"}
    assert is_generating(z4, ["g"])
    assert not is_generating(z2, ["e"])
    assert is_generating(z2, ["g"], "group")


def test_generate_errors():
    z2 = cyclic_group(2, ["e", "g"])
    with pytest.raises(EmptyGenerators):
        generate(z2, [])
    with pytest.raises(GroupModeOnNonGroup):
        generate(left_zero(2, ["a", "b"]), ["a"], "group")


def test_restrict_to_image():
    z4 = cyclic_group(4)
    z2 = cyclic_group(2)
    parity = Homomorphism(z4, z2, [0, 1, 0, 1])
    assert restrict_to_image(parity) is parity
    trivial = restrict_to_image(Homomorphism(z2, z2, [0, 0]))
    assert len(trivial.target) == 1 and trivial.target.is_group


def test_not_a_homomorphism():
    z2 = cyclic_group(2)
    with pytest.raises(NotAHomomorphism):
        Homomorphism(z2, z2, [1, 0])


def test_catalog_counts():
    # semigroups up to isomorphism: 1, 5, 24, 188
    assert [len(semigroup_catalog(n)) for n in range(1, 5)] == [1, 5, 24, 188]
    assert [len(group_catalog(n)) for n in range(1, 5)] == [1, 1, 1, 2]


def test_epimorphisms_of_klein_group():
    v4 = klein_group()
    images = sorted(len(h.target) for h in epimorphisms(v4))
    # trivial quotient, three quotients of order 2, the identity
    assert images == [1, 2, 2, 2, 4]
    for h in epimorphisms(v4):
        assert h.is_surjective
