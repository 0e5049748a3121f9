#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Статсуммы перестановочных орбифолдов на торе.

Z^Ω(τ) = 1/|Ω| · Σ_{xy=yx} Π_{ξ} Z((μ_ξ τ + κ_ξ)/λ_ξ) для модулярно
инвариантной Z; встроенные инварианты - константа и j-функция Клейна.
"""

import cmath
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Tuple, Any

import numpy as np
from sympy import divisor_sigma

from config import get_config
from classfun.functions import LatticeClassFunction
from groups.permgroup import PermGroup, commuting_pairs, symmetric_group
from lattices.hnf import HnfMatrix
from transform.orbifold import transform_ZZ
from utils.errors import DomainError, InputParseError
from utils.metrics import track_function

logger = logging.getLogger(__name__)


# === j-ФУНКЦИЯ ===

def _truncated_product(left: List[int], right: List[int], size: int) -> List[int]:
    result = [0] * size
    for i, a in enumerate(left[:size]):
        if a:
            for j, b in enumerate(right[:size - i]):
                result[i + j] += a * b
    return result


@lru_cache(maxsize=None)
def j_coefficients(order: int) -> Tuple[int, ...]:
    """
    Точные коэффициенты c_{-1}, c_0, …, c_M разложения
    j(τ) = q⁻¹ + 744 + 196884 q + …  через j = E_4³/Δ.
    """
    if order < 0:
        raise DomainError(f"Порядок разложения должен быть неотрицательным: {order}")
    size = order + 2

    # E_4 = 1 + 240 Σ σ_3(n) q^n
    e4 = [1] + [240 * int(divisor_sigma(n, 3)) for n in range(1, size)]
    e4_cubed = _truncated_product(_truncated_product(e4, e4, size), e4, size)

    # Π (1 - q^n)^24
    eta24 = [1] + [0] * (size - 1)
    for n in range(1, size):
        factor = [0] * size
        factor[0] = 1
        factor[n] = -1
        for _ in range(24):
            eta24 = _truncated_product(eta24, factor, size)

    # 1 / Π(1 - q^n)^24 (старший коэффициент 1)
    inverse = [0] * size
    inverse[0] = 1
    for k in range(1, size):
        inverse[k] = -sum(eta24[i] * inverse[k - i] for i in range(1, k + 1))

    coefficients = tuple(_truncated_product(e4_cubed, inverse, size))
    logger.debug(f"🔢 j(τ): c_-1..c_{order} = {coefficients[:4]}…")
    return coefficients


def klein_j(tau: complex, order: int = None) -> complex:
    """j(τ), разложение по q = e^{2πiτ} до q^M"""
    tau = complex(tau)
    if tau.imag <= 0:
        raise DomainError(f"Требуется Im τ > 0, получено τ = {tau}")
    order = order if order is not None else get_config().j_order
    q = cmath.exp(2j * cmath.pi * tau)
    coefficients = np.array(j_coefficients(order), dtype=float)
    # Σ_{k≥0} c_{k-1} q^{k-1} = q⁻¹ · Σ_k c_{k-1} q^k
    return complex(np.polynomial.polynomial.polyval(q, coefficients)) / q


def constant_invariant(tau: complex) -> complex:
    if complex(tau).imag <= 0:
        raise DomainError(f"Требуется Im τ > 0, получено τ = {tau}")
    return 1.0


def invariant_callback(name: str, order: int = None) -> Callable[[complex], complex]:
    """Встроенный модулярный инвариант по имени"""
    if name == 'constant':
        return constant_invariant
    if name == 'klein-j':
        order = order if order is not None else get_config().j_order
        return lambda tau: klein_j(tau, order)
    raise InputParseError(f"Неизвестный инвариант {name!r}; доступны: {', '.join(INVARIANT_NAMES)}")


INVARIANT_NAMES = ('constant', 'klein-j')


def builtin_invariants(order: int = None) -> Dict[str, Callable[[complex], complex]]:
    return {name: invariant_callback(name, order) for name in INVARIANT_NAMES}


# === СТАТСУММА ОРБИФОЛДА ===

@track_function("torus_partition_function")
def torus_partition_function(omega: PermGroup, tau: complex, invariant: Callable[[complex], complex]) -> complex:
    """Z^Ω(τ) как численное преобразование на ℤ⊕ℤ в точке H = G"""
    function = LatticeClassFunction.from_tau(invariant, tau)
    return transform_ZZ(function, omega, HnfMatrix.identity()).value


def s2_closed_form(invariant: Callable[[complex], complex], tau: complex) -> complex:
    """½(f(τ)² + f(2τ) + f(τ/2) + f((τ+1)/2))"""
    tau = complex(tau)
    return 0.5 * (invariant(tau) ** 2 + invariant(2 * tau) + invariant(tau / 2) + invariant((tau + 1) / 2))


def fundamental_domain_samples(count: int, seed: int = None) -> List[complex]:
    """Точки с |Re τ| ≤ ½ и 1 ≤ Im τ ≤ 2 из генератора с фиксированным seed"""
    seed = seed if seed is not None else get_config().random_seed
    rng = np.random.default_rng(seed)
    real = rng.uniform(-0.5, 0.5, size=count)
    imag = rng.uniform(1.0, 2.0, size=count)
    return [complex(a, b) for a, b in zip(real, imag)]


def s_check_points(samples: List[complex]) -> List[complex]:
    """Точки, где Im τ ≥ 1 и Im(-1/τ) ≥ 1; τ = i включается всегда"""
    points = [1j]
    for tau in samples:
        if tau.imag >= 1 and (-1 / tau).imag >= 1 and tau not in points:
            points.append(tau)
    return points


def _relative_deviation(left: complex, right: complex) -> float:
    return abs(left - right) / max(abs(left), abs(right), 1e-300)


@dataclass(frozen=True)
class ModularCheckReport:
    """Отчет численной проверки: по точке - значения и относительное отклонение"""
    name: str
    omega: str
    tolerance: float
    points: Tuple[Dict[str, Any], ...]
    passed: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'omega': self.omega,
            'tolerance': self.tolerance,
            'passed': self.passed,
            'points': list(self.points),
        }


def _point_record(tau: complex, left: complex, right: complex) -> Dict[str, Any]:
    return {
        'tau': [tau.real, tau.imag],
        'left': [left.real, left.imag],
        'right': [right.real, right.imag],
        'deviation': _relative_deviation(left, right),
    }


def _report(name: str, omega: PermGroup, tolerance: float, records: List[Dict[str, Any]]) -> ModularCheckReport:
    passed = all(record['deviation'] < tolerance for record in records)
    status = "✅" if passed else "❌"
    logger.info(f"{status} {name} для {omega}: {len(records)} точек, допуск {tolerance}")
    return ModularCheckReport(name, str(omega), tolerance, tuple(records), passed)


def t_check(omega: PermGroup, invariant: Callable[[complex], complex], samples: List[complex],
            tolerance: float = 1e-6) -> ModularCheckReport:
    """|Z^Ω(τ+1) - Z^Ω(τ)| / |Z^Ω(τ)| < tolerance"""
    records = [_point_record(tau, torus_partition_function(omega, tau + 1, invariant),
                             torus_partition_function(omega, tau, invariant)) for tau in samples]
    return _report("T: τ ↦ τ+1", omega, tolerance, records)


def s_check(omega: PermGroup, invariant: Callable[[complex], complex], samples: List[complex],
            tolerance: float = 1e-6) -> ModularCheckReport:
    """Z^Ω(-1/τ) = Z^Ω(τ) в точках, где усечение q-ряда не портит точность"""
    records = [_point_record(tau, torus_partition_function(omega, -1 / tau, invariant),
                             torus_partition_function(omega, tau, invariant)) for tau in s_check_points(samples)]
    return _report("S: τ ↦ -1/τ", omega, tolerance, records)


def s2_formula_check(invariant: Callable[[complex], complex], samples: List[complex],
                     tolerance: float = None) -> ModularCheckReport:
    """Преобразование по S_2 против явной формулы ½(f² + f(2τ) + f(τ/2) + f((τ+1)/2))"""
    tolerance = tolerance if tolerance is not None else get_config().tolerance
    omega = symmetric_group(2)
    records = [_point_record(tau, torus_partition_function(omega, tau, invariant), s2_closed_form(invariant, tau))
               for tau in samples]
    return _report("S_2: явная формула", omega, tolerance, records)


def class_count(omega: PermGroup) -> int:
    """Число классов сопряженности = #коммутирующих пар / |Ω|"""
    return len(commuting_pairs(omega)) // omega.order


def class_count_check(omega: PermGroup, tau: complex = 1j) -> ModularCheckReport:
    """При Z ≡ 1 статсумма равна числу классов сопряженности Ω"""
    value = torus_partition_function(omega, tau, constant_invariant)
    expected = complex(class_count(omega))
    tolerance = get_config().tolerance
    return _report("Z ≡ 1: число классов", omega, tolerance, [_point_record(complex(tau), value, expected)])
