#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import pytest

from classfun.ring import Poly
from classfun.functions import ConstantClassFunction, LatticeClassFunction, DOMAIN_Z, DOMAIN_ZZ
from symprod.exponential import (hecke_sum, symmetric_product, closed_form_symmetric_product, expoid_verify)
from utils.errors import BoundExceededError, DomainError
from tests.conftest import zv, zh


class TestHeckeSum:
    def test_sequence_has_one_subgroup_per_index(self, sequence):
        assert hecke_sum(sequence, DOMAIN_Z, 3) == zv(3)

    def test_lattice_sums_over_hnf(self, lattice):
        assert hecke_sum(lattice, DOMAIN_ZZ, 2) == zh(2, 0, 1) + zh(1, 0, 2) + zh(1, 1, 2)

    def test_domain_mismatch(self, sequence):
        with pytest.raises(DomainError):
            hecke_sum(sequence, DOMAIN_ZZ, 1)

    def test_index_must_be_positive(self, sequence):
        with pytest.raises(DomainError):
            hecke_sum(sequence, DOMAIN_Z, 0)


class TestSymmetricProduct:
    def test_second_symmetric_product(self, sequence):
        assert symmetric_product(sequence, DOMAIN_Z, 2) == (zv(1) ** 2 + zv(2)) / 2

    def test_zeroth_is_one(self, sequence, lattice):
        assert symmetric_product(sequence, DOMAIN_Z, 0) == Poly.one()
        assert symmetric_product(lattice, DOMAIN_ZZ, 0) == Poly.one()

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_lattice_matches_closed_form(self, lattice, n):
        assert symmetric_product(lattice, DOMAIN_ZZ, n) == closed_form_symmetric_product(lattice, DOMAIN_ZZ, n)

    def test_lattice_s2_value(self, lattice):
        expected = (zh(1, 0, 1) ** 2 + zh(1, 0, 2) + zh(2, 0, 1) + zh(1, 1, 2)) / 2
        assert symmetric_product(lattice, DOMAIN_ZZ, 2) == expected

    def test_bound(self, sequence):
        with pytest.raises(BoundExceededError):
            symmetric_product(sequence, DOMAIN_Z, 8)
        with pytest.raises(BoundExceededError):
            symmetric_product(sequence, DOMAIN_Z, 3, bound=2)

    def test_numeric(self):
        function = LatticeClassFunction.from_tau(lambda tau: tau ** 2, 0.2 + 1.1j)
        direct = symmetric_product(function, DOMAIN_ZZ, 3)
        assert direct.is_close(closed_form_symmetric_product(function, DOMAIN_ZZ, 3))


class TestExpoid:
    def test_sequence(self, sequence):
        report = expoid_verify(sequence, DOMAIN_Z, 4)
        assert report.passed
        assert report.lhs[3] == (zv(1) ** 3 + zv(1) * zv(2) * 3 + zv(3) * 2) / 6

    def test_lattice(self, lattice):
        assert expoid_verify(lattice, DOMAIN_ZZ, 3).passed

    def test_zero_function(self):
        report = expoid_verify(ConstantClassFunction(Poly.zero(), DOMAIN_Z), DOMAIN_Z, 4)
        assert report.passed
        assert report.lhs[0] == Poly.one()
        assert all(report.lhs[n].is_zero() for n in range(1, 5))

    def test_numeric(self):
        function = LatticeClassFunction.from_tau(lambda tau: tau ** 2, 0.2 + 1.1j)
        assert expoid_verify(function, DOMAIN_ZZ, 3).passed

    def test_report_dict(self, sequence):
        data = expoid_verify(sequence, DOMAIN_Z, 2).to_dict()
        assert data['passed'] and data['order'] == 2
        assert len(data['lhs']) == len(data['rhs']) == 3

    def test_negative_order(self, sequence):
        with pytest.raises(DomainError):
            expoid_verify(sequence, DOMAIN_Z, -1)
