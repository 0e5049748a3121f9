#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import pytest
from sympy import divisor_sigma

from groups.permgroup import symmetric_group, commuting_pairs, orbits
from lattices.hnf import (HnfMatrix, hnf_from_dict, hnf_canonicalize, hnf_enumerate, hnf_compose, rebase,
                          orbit_hnf, tau_of)
from utils.errors import DomainError, InputParseError
from tests.conftest import perm


@pytest.mark.parametrize("n", range(1, 13))
def test_enumerate_count_is_sigma(n):
    matrices = hnf_enumerate(n)
    assert len(matrices) == int(divisor_sigma(n))
    assert len(set(matrices)) == len(matrices)
    assert all(h.index() == n for h in matrices)


def test_enumerate_index_two_order():
    assert hnf_enumerate(2) == [HnfMatrix(2, 0, 1), HnfMatrix(1, 0, 2), HnfMatrix(1, 1, 2)]


def test_invalid_matrix():
    with pytest.raises(DomainError):
        HnfMatrix(1, 2, 2)


def test_canonicalize_recovers_basis():
    h = HnfMatrix(3, 1, 2)
    assert hnf_canonicalize(*h.basis()) == h


@pytest.mark.parametrize("unimodular", [((1, 0), (0, 1)), ((0, 1), (1, 0)), ((2, 1), (1, 1)), ((1, -3), (0, 1))])
def test_canonical_form_is_basis_independent(unimodular):
    h = HnfMatrix(2, 1, 3)
    assert hnf_canonicalize(*rebase(h, unimodular)) == h


def test_rebase_requires_unimodular():
    with pytest.raises(DomainError):
        rebase(HnfMatrix.identity(), ((2, 0), (0, 1)))


def test_canonicalize_rejects_rank_one():
    with pytest.raises(DomainError):
        hnf_canonicalize((1, 2), (2, 4))


def test_contains():
    h = HnfMatrix(2, 1, 3)
    assert h.contains((3, 0))
    assert h.contains((1, 2))
    assert not h.contains((1, 0))
    assert not h.contains((0, 1))


def test_compose_multiplies_index():
    inner, outer = HnfMatrix(1, 1, 2), HnfMatrix(2, 0, 1)
    composed = hnf_compose(inner, outer)
    assert composed.index() == inner.index() * outer.index()
    assert hnf_compose(inner, HnfMatrix.identity()) == inner
    assert hnf_compose(HnfMatrix.identity(), outer) == outer


def test_orbit_hnf_for_two_point_actions():
    swap, identity = perm(1, 0), perm(0, 1)
    assert orbit_hnf(swap, identity, (0, 1)) == HnfMatrix(1, 0, 2)
    assert orbit_hnf(identity, swap, (0, 1)) == HnfMatrix(2, 0, 1)
    assert orbit_hnf(swap, swap, (0, 1)) == HnfMatrix(1, 1, 2)


def test_orbit_hnf_is_basepoint_independent():
    for x, y in commuting_pairs(symmetric_group(4)):
        for block in orbits((x, y), 4):
            assert len({orbit_hnf(x, y, block, point) for point in block}) == 1


def test_orbit_hnf_requires_commuting():
    with pytest.raises(DomainError):
        orbit_hnf(perm(1, 2, 0), perm(1, 0, 2), (0, 1, 2))


def test_tau_of():
    assert tau_of(HnfMatrix(1, 1, 2), 2j) == pytest.approx(0.5 + 1j)
    assert tau_of(HnfMatrix(2, 0, 1), 1j) == pytest.approx(2j)
    with pytest.raises(DomainError):
        tau_of(HnfMatrix.identity(), -1j)


def test_dict_format():
    h = HnfMatrix(2, 1, 3)
    assert h.to_dict() == {'mu': 2, 'kappa': 1, 'lambda': 3}
    assert hnf_from_dict(h.to_dict()) == h
    with pytest.raises(InputParseError):
        hnf_from_dict({'mu': 1})
