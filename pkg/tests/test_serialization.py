#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import json

import pytest

from classfun.ring import Poly, ComplexNum
from classfun.functions import DOMAIN_Z, DOMAIN_ZZ, DOMAIN_GENERAL
from lattices.hnf import HnfMatrix
from utils.errors import InputParseError, BoundExceededError
from utils.serialization import (parse_json_text, load_json, dump_json, parse_group_expression, parse_group,
                                 parse_group_argument, parse_presentation_spec, parse_handle, ring_to_tsv,
                                 series_to_tsv, rows_to_tsv)
from tests.conftest import zv


class TestJson:
    def test_error_carries_position(self):
        with pytest.raises(InputParseError) as info:
            parse_json_text('{\n  "a": 1,\n  "b": }', source='request.json')
        assert info.value.line == 3
        assert info.value.column == 8
        assert "request.json" in str(info.value)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputParseError):
            load_json(tmp_path / 'absent.json')

    def test_dump_is_deterministic(self):
        assert dump_json({'b': 1, 'a': 'τ'}) == '{\n  "a": "τ",\n  "b": 1\n}'


class TestGroups:
    @pytest.mark.parametrize("name,degree,order", [
        ("trivial", 1, 1), ("S3", 3, 6), ("C5", 5, 5), ("S1", 1, 1), ("(S2)", 2, 2),
    ])
    def test_named(self, name, degree, order):
        group = parse_group_expression(name)
        assert (group.degree, group.order) == (degree, order)

    def test_wreath_expression_is_left_associative(self):
        group = parse_group_expression("S2 wr C3 wr S2")
        assert group.degree == 12
        assert group.order == (2 ** 3 * 3) ** 2 * 2
        assert group.name == "S2 wr C3 wr S2"

    @pytest.mark.parametrize("name", ["S8", "C13", "A4", "", "S2 wr"])
    def test_unknown(self, name):
        with pytest.raises(InputParseError):
            parse_group_expression(name)

    def test_bound_is_enforced(self):
        with pytest.raises(BoundExceededError):
            parse_group_expression("S3 wr S3", bound=100)

    def test_from_dict(self):
        group = parse_group({'degree': 4, 'generators': [[1, 2, 3, 0]]})
        assert group.order == 4

    @pytest.mark.parametrize("data", [{'generators': []}, {'degree': 0}, {'degree': 2, 'generators': [[0, 0]]}, [1]])
    def test_bad_dict(self, data):
        with pytest.raises(InputParseError):
            parse_group(data)

    def test_argument_from_file(self, tmp_path):
        path = tmp_path / 'group.json'
        path.write_text(json.dumps({'degree': 3, 'generators': [[1, 0, 2], [1, 2, 0]]}), encoding='utf-8')
        assert parse_group_argument(str(path)).order == 6
        assert parse_group_argument("C4").order == 4

    def test_presentation_spec(self):
        assert parse_presentation_spec("ZxZ").generator_count == 2
        custom = parse_presentation_spec({'generators': ['a'], 'relators': ['aaa']})
        assert custom.generator_count == 1


class TestHandles:
    def test_sequence_handle(self):
        assert parse_handle(4, DOMAIN_Z) == 4
        assert parse_handle(None, DOMAIN_Z) is None

    def test_lattice_handle(self):
        assert parse_handle({'mu': 1, 'kappa': 1, 'lambda': 2}, DOMAIN_ZZ) == HnfMatrix(1, 1, 2)

    @pytest.mark.parametrize("raw,domain", [
        (0, DOMAIN_Z), (True, DOMAIN_Z), ("2", DOMAIN_Z), ({'mu': 1}, DOMAIN_ZZ),
        (1, DOMAIN_GENERAL), (1, 'Q'),
    ])
    def test_rejects(self, raw, domain):
        with pytest.raises(InputParseError):
            parse_handle(raw, domain)


class TestTsv:
    def test_poly(self):
        assert ring_to_tsv(zv(1) ** 2 / 2 + 1) == "coeff\tmonomial\n1/2\tz_1^2\n1/1\t1\n"

    def test_complex(self):
        assert ring_to_tsv(ComplexNum(1.5 - 2j)) == "re\tim\n1.5\t-2.0\n"

    def test_series(self):
        text = series_to_tsv([Poly.one(), zv(1)])
        assert text.splitlines() == ["power\tcoeff\tmonomial", "0\t1/1\t1", "1\t1/1\tz_1"]

    def test_rows(self):
        assert rows_to_tsv(['a', 'b'], [[1, 2]]) == "a\tb\n1\t2\n"
