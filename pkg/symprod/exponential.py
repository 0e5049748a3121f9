#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Симметрические произведения Z_n = Z≀S_n и экспоненциальное тождество

    Σ_n p^n Z_n(G) = exp( Σ_n p^n Z^[n](G) / n ),

где Z^[n] - сумма Z по всем подгруппам индекса n (обобщенный оператор Гекке).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Any

from config import get_config
from classfun.ring import Poly, ComplexNum, RingElem, t, ring_equal
from classfun.series import TruncatedSeries, series_exp
from classfun.functions import ClassFunction, DOMAIN_Z, DOMAIN_ZZ
from groups.permgroup import symmetric_group
from lattices.hnf import HnfMatrix, hnf_enumerate
from symprod.cycle_index import schur_polynomial
from transform.orbifold import transform_Z, transform_ZZ
from utils.errors import BoundExceededError, ConsistencyError, DomainError
from utils.metrics import track_function

logger = logging.getLogger(__name__)


def _check_domain(function: ClassFunction, domain: str):
    if domain not in (DOMAIN_Z, DOMAIN_ZZ):
        raise DomainError(f"Домен должен быть Z или ZxZ, получено {domain!r}")
    if function.domain != domain:
        raise DomainError(f"Классовая функция задана на домене {function.domain}, а не {domain}")


def _one(function: ClassFunction) -> RingElem:
    return ComplexNum(1) if function.numeric else Poly.one()


def hecke_sum(function: ClassFunction, domain: str, n: int) -> RingElem:
    """Z^[n]: сумма значений по подгруппам индекса n"""
    _check_domain(function, domain)
    if n < 1:
        raise DomainError(f"Индекс должен быть положительным: {n}")
    if domain == DOMAIN_Z:
        return function.value(n)
    total = ComplexNum(0) if function.numeric else Poly.zero()
    for h in hnf_enumerate(n):
        total = total + function.value(h)
    return total


def _check_symmetric_bound(n: int, bound: int = None):
    limit = bound if bound is not None else get_config().symmetric_max_degree
    if n > limit:
        raise BoundExceededError(f"симметрическое произведение S_{n}", n, limit)


def _direct_symmetric_product(function: ClassFunction, domain: str, n: int) -> RingElem:
    if n == 0:
        return _one(function)
    group = symmetric_group(n)
    if domain == DOMAIN_Z:
        return transform_Z(function, group, 1)
    return transform_ZZ(function, group, HnfMatrix.identity())


def closed_form_symmetric_product(function: ClassFunction, domain: str, n: int) -> RingElem:
    """P_n(Z^[1], …, Z^[n])"""
    if n == 0:
        return _one(function)
    polynomial = schur_polynomial(n)
    return polynomial.substitute({t(k): hecke_sum(function, domain, k) for k in range(1, n + 1)})


@track_function("symmetric_product")
def symmetric_product(function: ClassFunction, domain: str, n: int, bound: int = None) -> RingElem:
    """Z_n(G) прямым преобразованием и по замкнутой формуле; расхождение - ошибка"""
    _check_domain(function, domain)
    if n < 0:
        raise DomainError(f"Степень должна быть неотрицательной: {n}")
    _check_symmetric_bound(n, bound)

    direct = _direct_symmetric_product(function, domain, n)
    closed = closed_form_symmetric_product(function, domain, n)
    if not ring_equal(direct, closed):
        logger.error(f"❌ Z_{n} ({domain}): прямое {direct} ≠ замкнутая форма {closed}")
        raise ConsistencyError(f"Замкнутая формула симметрического произведения нарушена при n={n}")
    return direct


@dataclass(frozen=True)
class ExpoidReport:
    """Обе стороны экспоненциального тождества до порядка N"""
    domain: str
    order: int
    lhs: TruncatedSeries
    rhs: TruncatedSeries
    passed: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            'domain': self.domain,
            'order': self.order,
            'passed': self.passed,
            'lhs': self.lhs.to_json(),
            'rhs': self.rhs.to_json(),
        }


@track_function("expoid_verify")
def expoid_verify(function: ClassFunction, domain: str, order: int, bound: int = None) -> ExpoidReport:
    """Σ p^n Z_n(G) против exp(Σ p^n Z^[n]/n), покоэффициентно до p^N"""
    _check_domain(function, domain)
    if order < 0:
        raise DomainError(f"Порядок усечения должен быть неотрицательным: {order}")
    _check_symmetric_bound(order, bound)

    lhs = TruncatedSeries(order, tuple(_direct_symmetric_product(function, domain, n) for n in range(order + 1)))
    generator = TruncatedSeries(order, (ComplexNum(0) if function.numeric else Poly.zero(),) + tuple(
        hecke_sum(function, domain, n) * Fraction(1, n) for n in range(1, order + 1)))
    rhs = series_exp(generator)

    passed = lhs.equals(rhs)
    if passed:
        logger.info(f"✅ Экспоненциальное тождество ({domain}) выполнено до p^{order}")
    else:
        logger.error(f"❌ Экспоненциальное тождество ({domain}) нарушено до p^{order}")
    return ExpoidReport(domain, order, lhs, rhs, passed)
