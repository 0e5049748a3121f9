#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import pytest

from classfun.functions import (ConstantClassFunction, LatticeClassFunction, TranslatedClassFunction,
                                cyclic_table, DOMAIN_GENERAL)
from classfun.ring import Poly
from groups.fpgroups import trivial_presentation, integers, integer_lattice
from groups.permgroup import symmetric_group, cyclic_group, commuting_pairs, orbits
from lattices.hnf import HnfMatrix, hnf_canonicalize, orbit_hnf, rebase
from transform.orbifold import (transform_at_G, transform_Z, transform_ZZ, orbifold_transform, transform_value,
                                TransformedSequence, TransformedLattice)
from utils.errors import DomainError
from tests.conftest import zv, zh


def _transform_in_basis(function, omega, w1, w2):
    """Сумма по Hom(H, Ω), где H задана произвольным базисом (w1, w2)"""
    def ambient(i, j):
        return i * w1[0] + j * w2[0], i * w1[1] + j * w2[1]

    total = Poly.zero()
    for x, y in commuting_pairs(omega):
        term = Poly.constant(1)
        for block in orbits((x, y), omega.degree):
            (a1, b1), (a2, b2) = orbit_hnf(x, y, block).basis()
            term = term * function.value(hnf_canonicalize(ambient(a1, b1), ambient(a2, b2)))
        total = total + term
    return total.div_int(omega.order)


class TestSequenceDomain:
    def test_s2(self, sequence, s2):
        assert transform_Z(sequence, s2) == (zv(1) ** 2 + zv(2)) / 2

    def test_s2_on_subgroup(self, sequence, s2):
        assert transform_Z(sequence, s2, 3) == (zv(3) ** 2 + zv(6)) / 2

    def test_cyclic_group(self, sequence):
        expected = (zv(1) ** 4 + zv(2) ** 2 + zv(4) * 2) / 4
        assert transform_Z(sequence, cyclic_group(4)) == expected

    def test_trivial_group(self, sequence, trivial):
        assert transform_Z(sequence, trivial, 5) == zv(5)

    def test_bad_index(self, sequence, s2):
        with pytest.raises(DomainError):
            transform_Z(sequence, s2, 0)

    def test_domain_mismatch(self, lattice, s2):
        with pytest.raises(DomainError):
            transform_Z(lattice, s2)


class TestLatticeDomain:
    def test_s2_four_commuting_pairs(self, lattice, s2):
        expected = (zh(1, 0, 1) ** 2 + zh(1, 0, 2) + zh(2, 0, 1) + zh(1, 1, 2)) / 2
        assert transform_ZZ(lattice, s2) == expected

    def test_on_subgroup_composes_hnf(self, lattice, trivial):
        h = HnfMatrix(2, 1, 3)
        assert transform_ZZ(lattice, trivial, h) == zh(2, 1, 3)

    def test_constant_counts_commuting_pairs(self, s3):
        ones = LatticeClassFunction.from_tau(lambda tau: 1, 1j)
        assert transform_ZZ(ones, s3).value == pytest.approx(18 / 6)

    @pytest.mark.parametrize("unimodular", [((0, 1), (1, 0)), ((2, 1), (1, 1)), ((1, -3), (0, 1)), ((-1, 0), (1, 1))])
    def test_value_does_not_depend_on_subgroup_basis(self, lattice, s3, unimodular):
        h = HnfMatrix(2, 1, 3)
        w1, w2 = rebase(h, unimodular)
        assert hnf_canonicalize(w1, w2) == h
        assert _transform_in_basis(lattice, s3, w1, w2) == transform_ZZ(lattice, s3, h)


class TestGeneralDomain:
    def test_trivial_group_gives_power(self, s3):
        c = zv(1) + 1
        result = transform_at_G(trivial_presentation(), ConstantClassFunction(c, DOMAIN_GENERAL), s3)
        assert result.hom_count == 1
        assert result.value == c ** 3 / 6

    def test_agrees_with_sequence_domain(self, sequence, s3):
        result = transform_at_G(integers(), TranslatedClassFunction(sequence), s3)
        assert result.hom_count == 6
        assert result.value == transform_Z(sequence, s3)

    def test_agrees_with_lattice_domain(self, lattice, s3):
        result = transform_at_G(integer_lattice(), TranslatedClassFunction(lattice), s3)
        assert result.hom_count == 18
        assert result.value == transform_ZZ(lattice, s3)

    def test_table_function(self, s2):
        result = transform_at_G(integers(), cyclic_table(2), s2)
        assert result.value == (zv(1) ** 2 + zv(2)) / 2

    def test_audit(self, sequence, s2):
        result = transform_at_G(integers(), TranslatedClassFunction(sequence), s2, audit=True)
        assert [entry['orbit_sizes'] for entry in result.audit] == [[1, 1], [2]]
        assert 'audit' in result.to_dict()
        assert 'audit' not in transform_at_G(integers(), TranslatedClassFunction(sequence), s2).to_dict()

    def test_rejects_non_general_function(self, sequence, s2):
        with pytest.raises(DomainError):
            transform_at_G(integers(), sequence, s2)


class TestLazyTransforms:
    def test_sequence(self, sequence, s2):
        transformed = orbifold_transform(sequence, s2)
        assert isinstance(transformed, TransformedSequence)
        assert transformed.value(2) == transform_Z(sequence, s2, 2)

    def test_lattice(self, lattice, s2):
        transformed = orbifold_transform(lattice, s2)
        assert isinstance(transformed, TransformedLattice)
        h = HnfMatrix(1, 1, 2)
        assert transformed.value(h) == transform_ZZ(lattice, s2, h)

    def test_general_domain_has_no_lazy_form(self, s2):
        with pytest.raises(DomainError):
            orbifold_transform(cyclic_table(1), s2)

    def test_transform_value_dispatch(self, sequence, lattice, s2):
        assert transform_value(sequence, s2) == transform_Z(sequence, s2, 1)
        assert transform_value(lattice, s2) == transform_ZZ(lattice, s2)
        with pytest.raises(DomainError):
            transform_value(cyclic_table(1), s2)

    def test_iterated_transform_of_symmetric_groups(self, sequence):
        twice = orbifold_transform(orbifold_transform(sequence, symmetric_group(2)), symmetric_group(2))
        assert twice.value(1) == (zv(1) ** 4 + zv(1) ** 2 * zv(2) * 2 + zv(2) ** 2 * 3 + zv(4) * 2) / 8
