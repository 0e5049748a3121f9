#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import pytest

from groups.permgroup import compose, symmetric_group
from groups.fpgroups import Homomorphism, integers, integer_lattice, free_group, enumerate_homs
from groups.actions import action_invariant, actions_equivalent, decompose_transitives
from utils.errors import DomainError
from tests.conftest import perm


def test_conjugate_actions_are_equivalent():
    phi = Homomorphism(free_group(2), 4, (perm(1, 2, 3, 0), perm(1, 0, 3, 2)))
    alpha = perm(2, 0, 3, 1)
    psi = phi.conjugate(alpha)
    intertwiner = actions_equivalent(phi, psi)
    assert intertwiner is not None
    # φ2(g) = α⁻¹ φ1(g) α
    for image1, image2 in zip(phi.images, psi.images):
        assert compose(intertwiner.inverse(), compose(image1, intertwiner)) == image2


def test_different_cycle_types_are_not_equivalent():
    phi = Homomorphism(integers(), 3, (perm(1, 2, 0),))
    psi = Homomorphism(integers(), 3, (perm(1, 0, 2),))
    assert actions_equivalent(phi, psi) is None
    assert action_invariant(phi) != action_invariant(psi)


def test_same_invariant_inequivalent_actions():
    # b = a и b = a⁻¹: одинаковые цикловые типы, но разные подгруппы ℤ⊕ℤ
    phi = Homomorphism(integer_lattice(), 3, (perm(1, 2, 0), perm(1, 2, 0)))
    psi = Homomorphism(integer_lattice(), 3, (perm(1, 2, 0), perm(2, 0, 1)))
    assert action_invariant(phi) == action_invariant(psi)
    assert actions_equivalent(phi, psi) is None


def test_degree_mismatch_is_an_error():
    with pytest.raises(DomainError):
        actions_equivalent(Homomorphism(integers(), 2, (perm(1, 0),)), Homomorphism(integers(), 3, (perm(1, 0, 2),)))


def test_decomposition_groups_equivalent_orbits():
    phi = Homomorphism(integers(), 7, (perm(1, 0, 3, 2, 4, 6, 5),))
    decomposition = decompose_transitives(phi)
    assert decomposition.degree == 7
    assert sorted((a.degree, m) for a, m in decomposition.constituents) == [(1, 1), (2, 3)]


def test_every_action_decomposes_into_its_degree():
    for phi in enumerate_homs(integer_lattice(), symmetric_group(4)):
        decomposition = decompose_transitives(phi)
        assert decomposition.degree == 4
        assert sum(decomposition.multiplicities) == len(phi.orbits())
