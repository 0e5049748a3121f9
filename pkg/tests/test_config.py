#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import pytest

from config import Config, get_config, set_config


def test_defaults(fresh_config):
    assert fresh_config.enumeration_bound == 2_000_000
    assert fresh_config.j_order == 20
    assert fresh_config.tolerance == 1e-9
    assert fresh_config.output_format == 'json'
    assert get_config() is fresh_config


def test_environment(monkeypatch):
    monkeypatch.setenv('WORK_BOUND', '1_000')
    monkeypatch.setenv('OUTPUT_FORMAT', 'TSV')
    config = Config()
    assert config.work_bound == 1000
    assert config.output_format == 'tsv'


@pytest.mark.parametrize("name,value", [
    ('J_ORDER', '0'), ('J_ORDER', 'many'), ('NUMERIC_TOLERANCE', '0.1'), ('OUTPUT_FORMAT', 'xml'),
    ('CENSUS_MAX_DEGREE', '9'),
])
def test_invalid_environment(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ValueError):
        Config()


def test_overrides_keep_original(fresh_config):
    updated = fresh_config.with_overrides(j_order=30, tolerance=None)
    assert updated.j_order == 30
    assert updated.tolerance == fresh_config.tolerance
    assert fresh_config.j_order == 20


def test_overrides_are_validated(fresh_config):
    with pytest.raises(ValueError):
        fresh_config.with_overrides(max_workers=0)
    with pytest.raises(ValueError):
        fresh_config.with_overrides(colour='red')


def test_hash_tracks_settings(fresh_config):
    assert fresh_config.config_hash() == Config().config_hash()
    assert fresh_config.config_hash() != fresh_config.with_overrides(random_seed=1).config_hash()


def test_set_config_replaces_active(fresh_config):
    updated = fresh_config.with_overrides(work_bound=10)
    set_config(updated)
    assert get_config().work_bound == 10
