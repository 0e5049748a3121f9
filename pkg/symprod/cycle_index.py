#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Tuple, Any

from classfun.ring import Poly, t
from classfun.series import TruncatedSeries, series_exp
from groups.permgroup import PermGroup, symmetric_group
from utils.errors import ConsistencyError, DomainError
from utils.metrics import track_function

logger = logging.getLogger(__name__)

# P_n сверяется с индикатором циклов S_n до этой степени
SCHUR_CROSSCHECK_DEGREE = 6


@dataclass(frozen=True)
class CycleIndex:
    """Индикатор циклов P_Ω(t_1, …, t_d)"""
    group: str
    degree: int
    order: int
    polynomial: Poly

    def to_dict(self) -> Dict[str, Any]:
        return {
            'group': self.group,
            'degree': self.degree,
            'order': self.order,
            'polynomial': self.polynomial.to_json(),
        }


def _check_cycle_index(polynomial: Poly, degree: int):
    if polynomial.coefficient_sum() != 1:
        raise ConsistencyError(f"Коэффициенты индикатора циклов в сумме дают {polynomial.coefficient_sum()}")
    for monomial, coefficient in polynomial.terms.items():
        if coefficient <= 0:
            raise ConsistencyError(f"Неположительный коэффициент {coefficient} в индикаторе циклов")
        weight = sum(variable.indices[0] * exponent for variable, exponent in monomial)
        if weight != degree:
            raise ConsistencyError(f"Взвешенная степень монома {weight} ≠ {degree}")


@track_function("cycle_indicator")
def cycle_indicator(omega: PermGroup) -> CycleIndex:
    """1/|Ω| · Σ_x Π_{ξ∈O(x)} t_{|ξ|}"""
    census = Counter(element.cycle_type() for element in omega.elements)
    terms: Dict[Tuple, Fraction] = {}
    for cycle_type, count in census.items():
        lengths = Counter(cycle_type)
        monomial = tuple(sorted((t(length), exponent) for length, exponent in lengths.items()))
        terms[monomial] = Fraction(count, omega.order)

    polynomial = Poly(terms)
    _check_cycle_index(polynomial, omega.degree)
    return CycleIndex(str(omega), omega.degree, omega.order, polynomial)


@lru_cache(maxsize=None)
def schur_polynomials(count: int) -> Tuple[Poly, ...]:
    """
    P_1..P_N: коэффициенты при p^n в exp(Σ p^n t_n / n).

    Для n ≤ 6 результат сверяется с индикатором циклов S_n.
    """
    if count < 1:
        raise DomainError(f"Число многочленов должно быть положительным: {count}")

    generator = TruncatedSeries.from_terms(count, {n: Poly.var(t(n)).div_int(n) for n in range(1, count + 1)})
    exponential = series_exp(generator)
    polynomials = tuple(exponential[n] for n in range(1, count + 1))

    for n in range(1, min(count, SCHUR_CROSSCHECK_DEGREE) + 1):
        expected = cycle_indicator(symmetric_group(n)).polynomial
        if polynomials[n - 1] != expected:
            raise ConsistencyError(f"P_{n} не совпадает с индикатором циклов S_{n}")
    logger.debug(f"📐 Многочлены Шура P_1..P_{count} построены")
    return polynomials


def schur_polynomial(n: int) -> Poly:
    """P_n, с P_0 = 1"""
    if n == 0:
        return Poly.one()
    return schur_polynomials(n)[n - 1]
