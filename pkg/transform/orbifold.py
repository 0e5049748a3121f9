#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Орбифолдное преобразование Z ↦ Z≀Ω.

    (Z≀Ω)(H) = 1/|Ω| · Σ_{φ: H→Ω} Π_{ξ∈O(φ)} Z(H_ξ)

Для общего G значение считается при H = G, для ℤ и ℤ⊕ℤ - на любой
подгруппе конечного индекса (подгруппы снова ℤ и ℤ⊕ℤ).
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple, Any, Optional

from classfun.ring import Poly, ComplexNum, RingElem, ring_equal, ring_product
from classfun.functions import (ClassFunction, SequenceClassFunction, LatticeClassFunction,
                                DOMAIN_Z, DOMAIN_ZZ, DOMAIN_GENERAL)
from groups.permgroup import PermGroup, commuting_pairs, orbits
from groups.fpgroups import Presentation, Homomorphism, iter_hom_images, orbit_stabilizer_action
from lattices.hnf import HnfMatrix, orbit_hnf, hnf_compose
from symprod.cycle_index import cycle_indicator
from utils.errors import ConsistencyError, DomainError
from utils.metrics import track_function

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TransformResult:
    """Значение Z≀Ω(G) и число гомоморфизмов; по запросу - сводка орбит каждого φ"""
    value: RingElem
    hom_count: int
    audit: Tuple[Dict[str, Any], ...] = field(default=(), repr=False)

    def to_dict(self) -> Dict[str, Any]:
        data = {'value': self.value.to_json(), 'hom_count': self.hom_count}
        if self.audit:
            data['audit'] = list(self.audit)
        return data


def _zero(numeric: bool) -> RingElem:
    return ComplexNum(0) if numeric else Poly.zero()


@track_function("transform_at_G")
def transform_at_G(presentation: Presentation, function: ClassFunction, omega: PermGroup,
                   audit: bool = False, bound: int = None) -> TransformResult:
    """Определение преобразования в точке H = G для произвольного конечно заданного G"""
    if function.domain != DOMAIN_GENERAL:
        raise DomainError(f"transform_at_G ожидает классовую функцию общего домена, получено {function.domain}")

    total = _zero(function.numeric)
    hom_count = 0
    summaries: List[Dict[str, Any]] = []
    for images in iter_hom_images(presentation, omega, bound):
        phi = Homomorphism(presentation, omega.degree, images, omega)
        factors = []
        blocks = phi.orbits()
        for block in blocks:
            handle = orbit_stabilizer_action(phi, block)
            factors.append(function.value(handle))
        total = total + ring_product(factors, function.numeric)
        hom_count += 1
        if audit:
            summaries.append({
                'images': [p.to_list() for p in images],
                'orbit_sizes': [len(block) for block in blocks],
            })

    value = total.div_int(omega.order)
    logger.debug(f"🔄 Z≀{omega} на {presentation}: {hom_count} гомоморфизмов")
    return TransformResult(value, hom_count, tuple(summaries))


def _direct_Z(function: ClassFunction, omega: PermGroup, n: int) -> RingElem:
    """Сумма по элементам: Σ_x Π_{ξ∈O(x)} z_{n|ξ|}"""
    total = _zero(function.numeric)
    for x in omega.elements:
        total = total + ring_product((function.value(n * length) for length in x.cycle_type()), function.numeric)
    return total.div_int(omega.order)


@track_function("transform_Z")
def transform_Z(function: ClassFunction, omega: PermGroup, n: int = 1) -> RingElem:
    """
    (Z≀Ω)(nℤ) двумя путями: прямая сумма по Ω и подстановка t_k ↦ z_{kn}
    в индикатор циклов. Расхождение - внутренняя ошибка.
    """
    if function.domain != DOMAIN_Z:
        raise DomainError(f"transform_Z ожидает последовательность, получено {function.domain}")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DomainError(f"Индекс подгруппы должен быть положительным: {n}")

    direct = _direct_Z(function, omega, n)
    indicator = cycle_indicator(omega)
    substituted = indicator.polynomial.substitute(
        {v: function.value(n * v.indices[0]) for v in indicator.polynomial.variables()})

    if not ring_equal(direct, substituted):
        logger.error(f"❌ transform_Z({omega}, n={n}): {direct} ≠ {substituted}")
        raise ConsistencyError(f"Прямая сумма и индикатор циклов разошлись для {omega} при n={n}")
    return direct


@track_function("transform_ZZ")
def transform_ZZ(function: ClassFunction, omega: PermGroup, h: HnfMatrix = None) -> RingElem:
    """1/|Ω| · Σ_{xy=yx} Π_{ξ∈O(x,y)} Z(H_ξ H); H_ξ H собирается как hnf_compose(H_ξ, H)"""
    if function.domain != DOMAIN_ZZ:
        raise DomainError(f"transform_ZZ ожидает функцию на ЭНФ, получено {function.domain}")
    h = h or HnfMatrix.identity()

    total = _zero(function.numeric)
    for x, y in commuting_pairs(omega):
        factors = []
        for block in orbits((x, y), omega.degree):
            factors.append(function.value(hnf_compose(orbit_hnf(x, y, block), h)))
        total = total + ring_product(factors, function.numeric)
    return total.div_int(omega.order)


# === ЛЕНИВЫЕ ПРЕОБРАЗОВАННЫЕ ФУНКЦИИ ===

class TransformedSequence(SequenceClassFunction):
    """Z≀Ω для G = ℤ как новая последовательность, значения считаются по запросу"""

    def __init__(self, base: ClassFunction, omega: PermGroup):
        super().__init__(lambda n: transform_Z(base, omega, n), name=f"({base})≀{omega}", numeric=base.numeric)
        self.base = base
        self.omega = omega


class TransformedLattice(LatticeClassFunction):
    """Z≀Ω для G = ℤ⊕ℤ на матрицах ЭНФ, с мемоизацией"""

    def __init__(self, base: ClassFunction, omega: PermGroup):
        super().__init__(lambda h: transform_ZZ(base, omega, h), name=f"({base})≀{omega}", numeric=base.numeric)
        self.base = base
        self.omega = omega


def orbifold_transform(function: ClassFunction, omega: PermGroup) -> ClassFunction:
    """Z≀Ω как классовая функция того же домена"""
    if function.domain == DOMAIN_Z:
        return TransformedSequence(function, omega)
    if function.domain == DOMAIN_ZZ:
        return TransformedLattice(function, omega)
    raise DomainError("Для общего G преобразование определено только в точке H = G (transform_at_G)")


def transform_value(function: ClassFunction, omega: PermGroup, handle: Optional[Any] = None) -> RingElem:
    """Диспетчер по домену: индекс для Z, ЭНФ для ZxZ"""
    if function.domain == DOMAIN_Z:
        return transform_Z(function, omega, handle or 1)
    if function.domain == DOMAIN_ZZ:
        return transform_ZZ(function, omega, handle)
    raise DomainError("Для общего домена используйте transform_at_G")
