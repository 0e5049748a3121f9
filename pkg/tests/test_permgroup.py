#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import pytest
from sympy.combinatorics import Permutation as SymPermutation, PermutationGroup as SymPermutationGroup
from sympy.combinatorics.named_groups import SymmetricGroup

from groups.permgroup import (Permutation, compose, group_closure, orbits, orbit_of, commuting_pairs,
                              element_centralizer_order, symmetric_group, cyclic_group, trivial_group,
                              centralizer_in_sym, wreath_element, wreath_product, wreath_equivalent,
                              orbit_size_multiset)
from utils.errors import BoundExceededError, DomainError
from tests.conftest import perm


def test_compose_applies_right_factor_first():
    p = perm(1, 2, 0)
    q = perm(1, 0, 2)
    # (p∘q)(0) = p(q(0)) = p(1) = 2
    assert compose(p, q).images == (2, 1, 0)
    assert (p * q).images == (2, 1, 0)
    assert compose(q, p).images == (0, 2, 1)


def test_permutation_rejects_non_bijection():
    with pytest.raises(DomainError):
        Permutation((0, 0, 1))


def test_inverse_and_power():
    p = Permutation.from_cycles(4, (0, 1, 2, 3))
    assert compose(p, p.inverse()).is_identity()
    assert p.power(4).is_identity()
    assert p.power(-1) == p.inverse()
    assert p.cycle_type() == (4,)


@pytest.mark.parametrize("degree", [1, 2, 3, 4, 5])
def test_symmetric_group_order_matches_sympy(degree):
    assert symmetric_group(degree).order == SymmetricGroup(degree).order()


def test_closure_of_generators_matches_sympy():
    generators = [perm(1, 2, 3, 0, 4), perm(0, 1, 2, 4, 3)]
    ours = group_closure(generators, 5)
    theirs = SymPermutationGroup([SymPermutation(list(g.images)) for g in generators])
    assert ours.order == theirs.order()


def test_closure_is_sorted_and_contains_identity(s3):
    assert s3.elements[0].is_identity()
    assert list(s3.elements) == sorted(s3.elements)


def test_closure_respects_bound():
    with pytest.raises(BoundExceededError) as info:
        symmetric_group(5, bound=50)
    assert info.value.bound == 50


def test_orbits_are_sorted_blocks():
    assert orbits([perm(1, 0, 2, 4, 3)], 5) == ((0, 1), (2,), (3, 4))
    assert orbits([], 3) == ((0,), (1,), (2,))
    assert orbit_of(3, [perm(1, 0, 2, 4, 3)]) == (3, 4)


def test_commuting_pairs_count_is_order_times_classes(s3):
    # |S_3| · 3 класса сопряженности
    assert len(commuting_pairs(s3)) == 18
    assert len(commuting_pairs(symmetric_group(4))) == 24 * 5


def test_element_centralizer_order(s3):
    transposition = perm(1, 0, 2)
    assert element_centralizer_order(s3, transposition) == 2


def test_centralizer_in_sym_matches_sympy():
    x = Permutation.from_cycles(4, (0, 1), (2, 3))
    ours = centralizer_in_sym([x], 4)
    theirs = SymmetricGroup(4).centralizer(SymPermutationGroup([SymPermutation([1, 0, 3, 2])]))
    assert ours.order == theirs.order() == 8


def test_cyclic_and_trivial_groups():
    assert cyclic_group(5).order == 5
    assert cyclic_group(5).is_abelian()
    assert trivial_group().order == 1
    assert trivial_group(3).degree == 3


class TestWreathProduct:
    def test_order_and_degree(self, s2, s3):
        wreath = wreath_product(s3, s2)
        assert wreath.degree == 6
        assert wreath.order == 6 ** 2 * 2
        assert wreath.factors == (s3, s2)

    def test_element_acts_fiberwise(self):
        lam = [perm(1, 0), perm(0, 1), perm(1, 0)]
        omega = perm(2, 0, 1)
        element = wreath_element(lam, omega, 2)
        # (x, y) -> (λ(y)x, ωy), точка x + 2y
        assert element(0) == 1 + 2 * 2
        assert element(2) == 0 + 2 * 0
        assert element(5) == 0 + 2 * 1

    def test_multiplication_rule(self, s2, c3):
        degree1 = 2
        lam1 = [perm(1, 0), perm(0, 1), perm(0, 1)]
        lam2 = [perm(0, 1), perm(1, 0), perm(1, 0)]
        w1, w2 = perm(1, 2, 0), perm(2, 0, 1)
        left = compose(wreath_element(lam1, w1, degree1), wreath_element(lam2, w2, degree1))
        twisted = [compose(lam1[w2.images[y]], lam2[y]) for y in range(3)]
        assert left == wreath_element(twisted, compose(w1, w2), degree1)

    def test_bound(self, s3):
        with pytest.raises(BoundExceededError):
            wreath_product(s3, s3, bound=1000)

    def test_not_commutative(self, s2, c3):
        assert not wreath_equivalent(wreath_product(s2, c3), wreath_product(c3, s2))

    def test_associative_up_to_equivalence(self, s2, c3):
        left = wreath_product(wreath_product(s2, s2), c3)
        right = wreath_product(s2, wreath_product(s2, c3))
        assert wreath_equivalent(left, right)
        assert orbit_size_multiset(left) == (12,)

    def test_generators_span_group_when_top_is_intransitive(self, s2):
        wreath = wreath_product(s2, trivial_group(2))
        assert wreath.order == 4
        assert orbits(wreath.generators, 4) == ((0, 1), (2, 3))
        assert group_closure(wreath.generators, 4).order == wreath.order

    def test_orbits_are_products_of_factor_orbits(self):
        # Ω1 и Ω2 на трех точках с орбитами {0, 1} и {2}
        omega1 = group_closure([perm(1, 0, 2)], 3)
        omega2 = group_closure([perm(1, 0, 2)], 3)
        wreath = wreath_product(omega1, omega2)

        expected = sorted(len(xi) * len(eta) for xi in orbits(omega1.generators, 3)
                          for eta in orbits(omega2.generators, 3))
        assert orbit_size_multiset(wreath) == tuple(expected) == (1, 2, 2, 4)
        assert group_closure(wreath.generators, 9).order == wreath.order == 2 ** 3 * 2
