#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import pytest

from config import Config, set_config
from classfun.ring import Poly, z, z_hnf
from classfun.functions import SequenceClassFunction, LatticeClassFunction
from groups.permgroup import Permutation, symmetric_group, cyclic_group, trivial_group
from utils.metrics import metrics_collector


@pytest.fixture(autouse=True)
def fresh_config(monkeypatch, tmp_path):
    """Конфигурация по умолчанию для каждого теста, лог - во временный каталог"""
    for name in ('ENUMERATION_BOUND', 'WORK_BOUND', 'WREATH_PAIR_BOUND', 'SYMMETRIC_MAX_DEGREE',
                 'CENSUS_MAX_DEGREE', 'EXPOID_ORDER_Z', 'EXPOID_ORDER_ZZ', 'J_ORDER', 'NUMERIC_TOLERANCE',
                 'OUTPUT_FORMAT', 'RANDOM_SEED', 'MAX_WORKERS', 'LOG_LEVEL'):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv('LOG_FILE', str(tmp_path / 'orbifold.log'))
    config = Config()
    set_config(config)
    yield config
    metrics_collector.reset_metrics()


@pytest.fixture
def s2():
    return symmetric_group(2)


@pytest.fixture
def s3():
    return symmetric_group(3)


@pytest.fixture
def c3():
    return cyclic_group(3)


@pytest.fixture
def trivial():
    return trivial_group()


@pytest.fixture
def sequence():
    return SequenceClassFunction()


@pytest.fixture
def lattice():
    return LatticeClassFunction()


def zv(n: int) -> Poly:
    return Poly.var(z(n))


def zh(mu: int, kappa: int, lam: int) -> Poly:
    return Poly.var(z_hnf(mu, kappa, lam))


def perm(*images: int) -> Permutation:
    return Permutation(tuple(images))
