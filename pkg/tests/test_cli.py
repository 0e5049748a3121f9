#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import json

import pytest
from click.testing import CliRunner

from config import Config
from main import cli
from tests.conftest import zv, zh


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def request_file(tmp_path):
    def write(payload, name='request.json'):
        path = tmp_path / name
        text = payload if isinstance(payload, str) else json.dumps(payload)
        path.write_text(text, encoding='utf-8')
        return str(path)
    return write


def run(runner, *args):
    return runner.invoke(cli, list(args), obj={})


class TestCycleIndex:
    def test_json(self, runner):
        result = run(runner, 'cycle-index', 'S3')
        assert result.exit_code == 0, result.output
        data = json.loads(result.stdout)
        assert (data['degree'], data['order'], data['group']) == (3, 6, 'S3')
        assert len(data['polynomial']) == 3

    def test_tsv(self, runner):
        result = run(runner, '--format', 'tsv', 'cycle-index', 'S2')
        assert result.exit_code == 0
        assert result.stdout == "coeff\tmonomial\n1/2\tt_1^2\n1/2\tt_2\n"

    def test_bound_exceeded(self, runner):
        result = run(runner, '--bound', '100', 'cycle-index', 'S3 wr S3')
        assert result.exit_code == 3

    def test_unknown_group(self, runner):
        assert run(runner, 'cycle-index', 'A5').exit_code == 2


class TestTransform:
    def test_sequence(self, runner, request_file):
        path = request_file({'class_function': {'domain': 'Z'}, 'omega': 'S2'})
        result = run(runner, 'transform', path)
        assert result.exit_code == 0, result.output
        assert json.loads(result.stdout)['value'] == ((zv(1) ** 2 + zv(2)) / 2).to_json()

    def test_nested_omega(self, runner, request_file):
        path = request_file({'class_function': {'domain': 'Z'}, 'omega': ['S2', 'S2']})
        data = json.loads(run(runner, 'transform', path).stdout)
        expected = (zv(1) ** 4 + zv(1) ** 2 * zv(2) * 2 + zv(2) ** 2 * 3 + zv(4) * 2) / 8
        assert data['value'] == expected.to_json()

    def test_lattice_handle(self, runner, request_file):
        path = request_file({'class_function': {'domain': 'ZxZ'}, 'omega': 'trivial',
                             'handle': {'mu': 2, 'kappa': 1, 'lambda': 3}})
        data = json.loads(run(runner, 'transform', path).stdout)
        assert data['value'] == zh(2, 1, 3).to_json()
        assert data['handle'] == {'mu': 2, 'kappa': 1, 'lambda': 3}

    def test_general_domain_with_audit(self, runner, request_file):
        path = request_file({'group': 'trivial', 'omega': {'degree': 2, 'generators': [[1, 0]]},
                             'class_function': {'domain': 'general', 'kind': 'constant', 'value': '1/2'}})
        result = run(runner, 'transform', path, '--audit')
        assert result.exit_code == 0, result.output
        data = json.loads(result.stdout)
        assert data['hom_count'] == 1
        assert data['value'] == [{'coeff': '1/8', 'monomial': {}}]
        assert data['audit'] == [{'images': [], 'orbit_sizes': [1, 1]}]

    def test_malformed_json(self, runner, request_file):
        path = request_file('{"omega": "S2",')
        result = run(runner, 'transform', path)
        assert result.exit_code == 2

    def test_missing_fields(self, runner, request_file):
        assert run(runner, 'transform', request_file({'omega': 'S2'})).exit_code == 2

    def test_handle_error(self, runner, request_file):
        path = request_file({'class_function': {'domain': 'Z'}, 'omega': 'S2', 'handle': 0})
        assert run(runner, 'transform', path).exit_code == 2

    @pytest.mark.parametrize("tau", [["x", 1], [None, 1], [[0], 1]])
    def test_non_numeric_tau(self, runner, request_file, tau):
        path = request_file({'omega': 'S2',
                             'class_function': {'domain': 'ZxZ', 'kind': 'numeric', 'tau': tau}})
        result = run(runner, 'transform', path)
        assert result.exit_code == 2
        assert isinstance(result.exception, SystemExit)
        assert 'tau' in result.output

    @pytest.mark.parametrize("entry", [
        {'images': [[1, 0]]},
        {'images': [["a", 0]], 'value': 1},
        "не объект",
    ])
    def test_malformed_table_entry(self, runner, request_file, entry):
        path = request_file({'group': 'Z', 'omega': 'S2',
                             'class_function': {'domain': 'general', 'kind': 'table', 'entries': [entry]}})
        result = run(runner, 'transform', path)
        assert result.exit_code == 2
        assert isinstance(result.exception, SystemExit)


class TestSymprod:
    def test_value(self, runner):
        result = run(runner, 'symprod', '--domain', 'Z', '--degree', '2')
        assert json.loads(result.stdout)['value'] == ((zv(1) ** 2 + zv(2)) / 2).to_json()

    def test_expoid(self, runner):
        result = run(runner, 'symprod', '--domain', 'ZxZ', '--expoid', '3')
        assert result.exit_code == 0
        assert json.loads(result.stdout)['passed']

    def test_numeric_requires_lattice(self, runner):
        assert run(runner, 'symprod', '--invariant', 'klein-j', '--tau', '0', '1').exit_code == 2

    def test_numeric(self, runner):
        result = run(runner, 'symprod', '--domain', 'ZxZ', '--degree', '2', '--invariant', 'constant',
                     '--tau', '0.1', '1.2')
        assert result.exit_code == 0, result.output
        # S_2: две коммутирующие пары на элемент, Z ≡ 1
        assert json.loads(result.stdout)['value']['re'] == pytest.approx(2)

    def test_degree_bound(self, runner):
        assert run(runner, 'symprod', '--degree', '9').exit_code == 3


class TestTorus:
    def test_constant_counts_classes(self, runner):
        result = run(runner, 'torus', '--omega', 'S3', '--tau', '0', '1', '--invariant', 'constant', '--samples', '2')
        assert result.exit_code == 0, result.output
        data = json.loads(result.stdout)
        assert data['value']['re'] == pytest.approx(3)
        assert len(data['samples']) == 2

    def test_real_axis(self, runner):
        assert run(runner, 'torus', '--omega', 'S2', '--tau', '0', '0').exit_code == 2

    def test_truncation_flag(self, runner):
        short = json.loads(run(runner, '--truncate', '2', 'torus', '--omega', 'trivial', '--tau', '0', '1').stdout)
        full = json.loads(run(runner, 'torus', '--omega', 'trivial', '--tau', '0', '1').stdout)
        # без q^3 и старших членов j(i) заметно отходит от 1728
        assert short['value']['re'] == pytest.approx(1728, rel=1e-2)
        assert short['value']['re'] != pytest.approx(full['value']['re'], rel=1e-6)
        assert full['value']['re'] == pytest.approx(1728, rel=1e-9)


class TestCensus:
    def test_sizes(self, runner):
        result = run(runner, 'census', 'Z', '--degree', '3')
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert [row['observed'] for row in data['classes']] == [1, 3, 2]

    def test_bound(self, runner):
        assert run(runner, 'census', 'Z', '--degree', '9').exit_code == 3


class TestVerify:
    def test_trivial_suite(self, runner):
        result = run(runner, 'verify', 'trivial')
        assert result.exit_code == 0, result.output
        data = json.loads(result.stdout)
        assert data['passed']
        assert data['config_hash'] == Config().config_hash()
        assert data['invocation']['command'] == 'verify'
        assert data['invocation']['options'] == {'suites': ['trivial']}
        assert [suite['suite'] for suite in data['suites']] == ['trivial']

    def test_seed_is_recorded(self, runner):
        data = json.loads(run(runner, '--seed', '5', 'verify', 'trivial').stdout)
        assert data['invocation']['global'] == {'seed': 5}

    def test_unknown_suite(self, runner):
        assert run(runner, 'verify', 'bogus').exit_code == 2

    def test_bad_tolerance(self, runner):
        assert run(runner, '--tol', '0.5', 'verify', 'trivial').exit_code == 2
