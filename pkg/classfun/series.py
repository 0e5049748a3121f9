#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Усеченные формальные степенные ряды по p с коэффициентами из R"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple, Any

from classfun.ring import Poly, ComplexNum, RingElem, ring_equal
from utils.errors import DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TruncatedSeries:
    """c_0 + c_1 p + … + c_N p^N; все порядки выше N отбрасываются"""
    order: int
    coefficients: Tuple[RingElem, ...]

    def __post_init__(self):
        if self.order < 0:
            raise DomainError(f"Порядок усечения должен быть неотрицательным: {self.order}")
        coefficients = list(self.coefficients)[:self.order + 1]
        zero = _zero_like(coefficients)
        coefficients += [zero] * (self.order + 1 - len(coefficients))
        object.__setattr__(self, 'coefficients', tuple(coefficients))

    @classmethod
    def from_terms(cls, order: int, terms: Dict[int, RingElem]) -> 'TruncatedSeries':
        """Ряд из словаря {степень p: коэффициент}"""
        zero = _zero_like(list(terms.values()))
        return cls(order, tuple(terms.get(n, zero) for n in range(order + 1)))

    @classmethod
    def one(cls, order: int) -> 'TruncatedSeries':
        return cls(order, (Poly.one(),))

    def __getitem__(self, n: int) -> RingElem:
        return self.coefficients[n]

    def _aligned(self, other: 'TruncatedSeries') -> int:
        if not isinstance(other, TruncatedSeries):
            raise DomainError("Ожидался усеченный ряд")
        return min(self.order, other.order)

    def __add__(self, other: 'TruncatedSeries') -> 'TruncatedSeries':
        order = self._aligned(other)
        return TruncatedSeries(order, tuple(self[n] + other[n] for n in range(order + 1)))

    def __sub__(self, other: 'TruncatedSeries') -> 'TruncatedSeries':
        order = self._aligned(other)
        return TruncatedSeries(order, tuple(self[n] - other[n] for n in range(order + 1)))

    def __mul__(self, other: 'TruncatedSeries') -> 'TruncatedSeries':
        order = self._aligned(other)
        product = []
        for n in range(order + 1):
            total = self[0] * other[n]
            for k in range(1, n + 1):
                total = total + self[k] * other[n - k]
            product.append(total)
        return TruncatedSeries(order, tuple(product))

    def scale(self, factor: Fraction) -> 'TruncatedSeries':
        return TruncatedSeries(self.order, tuple(c * Fraction(factor) for c in self.coefficients))

    def equals(self, other: 'TruncatedSeries', tolerance: float = None) -> bool:
        """Покоэффициентное равенство до общего порядка"""
        order = self._aligned(other)
        return all(ring_equal(self[n], other[n], tolerance) for n in range(order + 1))

    def to_json(self) -> List[Any]:
        return [c.to_json() for c in self.coefficients]


def _zero_like(values: List[RingElem]) -> RingElem:
    if any(isinstance(v, ComplexNum) for v in values):
        return ComplexNum(0)
    return Poly.zero()


def series_exp(series: TruncatedSeries) -> TruncatedSeries:
    """exp(s) до порядка N по рекуррентности n·e_n = Σ_{k=1..n} k·s_k·e_{n-k}"""
    if not series[0].is_zero():
        raise DomainError(f"Свободный член ряда должен быть нулевым, получено {series[0]}")

    numeric = any(isinstance(c, ComplexNum) for c in series.coefficients)
    result: List[RingElem] = [ComplexNum(1) if numeric else Poly.one()]
    for n in range(1, series.order + 1):
        total = series[1] * result[n - 1]
        for k in range(2, n + 1):
            total = total + series[k] * result[n - k] * k
        result.append(total.div_int(n))
    return TruncatedSeries(series.order, tuple(result))
