#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Подгруппы конечного индекса в ℤ⊕ℤ в эрмитовой нормальной форме.

Соглашение (решетка строк): HnfMatrix(μ, κ, λ) - подрешетка ℤ², натянутая на
(λ, 0) и (κ, μ), где первая координата - показатель при a, вторая - при b.
Подгруппа порождена a^λ и a^κ b^μ, индекс равен μλ.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple, Sequence

from sympy import divisors

from groups.permgroup import Permutation, orbit_of
from utils.errors import DomainError, InputParseError

logger = logging.getLogger(__name__)

Vector = Tuple[int, int]


@dataclass(frozen=True, order=True)
class HnfMatrix:
    """Матрица ЭНФ: 0 ≤ κ < λ, μ, λ ≥ 1"""
    mu: int
    kappa: int
    lam: int

    def __post_init__(self):
        if self.mu < 1 or self.lam < 1 or not 0 <= self.kappa < self.lam:
            raise DomainError(f"Некорректная ЭНФ: μ={self.mu}, κ={self.kappa}, λ={self.lam}")

    @classmethod
    def identity(cls) -> 'HnfMatrix':
        return cls(1, 0, 1)

    def index(self) -> int:
        return self.mu * self.lam

    def basis(self) -> Tuple[Vector, Vector]:
        return (self.lam, 0), (self.kappa, self.mu)

    def contains(self, vector: Vector) -> bool:
        """Принадлежность вектора решетке"""
        i, j = vector
        if j % self.mu:
            return False
        return (i - (j // self.mu) * self.kappa) % self.lam == 0

    def to_dict(self) -> Dict[str, int]:
        return {'mu': self.mu, 'kappa': self.kappa, 'lambda': self.lam}

    def __str__(self):
        return f"HNF(μ={self.mu}, κ={self.kappa}, λ={self.lam})"


def hnf_from_dict(data: Dict) -> HnfMatrix:
    try:
        return HnfMatrix(int(data['mu']), int(data['kappa']), int(data['lambda']))
    except (KeyError, TypeError, ValueError) as e:
        raise InputParseError(f"Ожидалась ЭНФ вида {{\"mu\", \"kappa\", \"lambda\"}}: {e}")


def _extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """(g, s, t) с s·a + t·b = g ≥ 0"""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def hnf_canonicalize(v1: Sequence[int], v2: Sequence[int]) -> HnfMatrix:
    """Единственная ЭНФ решетки span_ℤ{v1, v2}"""
    (a1, b1), (a2, b2) = v1, v2
    det = a1 * b2 - a2 * b1
    if det == 0:
        raise DomainError(f"Векторы {tuple(v1)} и {tuple(v2)} линейно зависимы (ранг < 2)")

    # μ - НОД вторых координат, λ = |det| / μ
    mu, s, t = _extended_gcd(b1, b2)
    lam = abs(det) // mu
    kappa = (s * a1 + t * a2) % lam
    return HnfMatrix(mu, kappa, lam)


def hnf_enumerate(n: int) -> List[HnfMatrix]:
    """Все ЭНФ индекса n, отсортированы по (λ, κ); их σ(n) штук"""
    if n < 1:
        raise DomainError(f"Индекс должен быть положительным: {n}")
    result = [HnfMatrix(n // lam, kappa, lam) for lam in map(int, divisors(n)) for kappa in range(lam)]
    result.sort(key=lambda h: (h.lam, h.kappa))
    return result


def hnf_compose(inner: HnfMatrix, outer: HnfMatrix) -> HnfMatrix:
    """Решетка inner, записанная в базисе outer, в объемлющих координатах"""
    (l_o, _), (k_o, m_o) = outer.basis()

    def to_ambient(vector: Vector) -> Vector:
        i, j = vector
        return i * l_o + j * k_o, j * m_o

    v1, v2 = inner.basis()
    return hnf_canonicalize(to_ambient(v1), to_ambient(v2))


def rebase(h: HnfMatrix, unimodular: Sequence[Sequence[int]]) -> Tuple[Vector, Vector]:
    """Другой базис той же решетки: строки U·B для U ∈ GL_2(ℤ)"""
    (p, q), (r, s) = unimodular
    if abs(p * s - q * r) != 1:
        raise DomainError("Матрица замены базиса не унимодулярна")
    (a1, b1), (a2, b2) = h.basis()
    return (p * a1 + q * a2, p * b1 + q * b2), (r * a1 + s * a2, r * b1 + s * b2)


def orbit_hnf(x: Permutation, y: Permutation, orbit: Sequence[int], basepoint: int = None) -> HnfMatrix:
    """ЭНФ стабилизатора {(i, j) : x^i y^j фиксирует ξ*} для орбиты ξ группы ⟨x, y⟩"""
    x_images, y_images = x.images, y.images
    if any(x_images[y_images[k]] != y_images[x_images[k]] for k in range(len(x_images))):
        raise DomainError("x и y не коммутируют")
    points = tuple(sorted(orbit))
    if basepoint is None:
        basepoint = points[0]
    if basepoint not in points:
        raise DomainError(f"Базовая точка {basepoint} не лежит в орбите")
    if orbit_of(basepoint, (x, y)) != points:
        raise DomainError(f"{list(points)} не является орбитой ⟨x, y⟩")

    lam = len(orbit_of(basepoint, (x,)))
    mu = len(points) // lam

    point = basepoint
    for _ in range(mu):
        point = y_images[point]
    # x^κ y^μ ξ* = ξ*  <=>  x^κ переводит y^μ ξ* обратно в ξ*
    kappa = 0
    while point != basepoint:
        point = x_images[point]
        kappa += 1
        if kappa >= lam:
            raise DomainError("y^μ ξ* не лежит на x-орбите ξ*")
    return HnfMatrix(mu, kappa, lam)


def tau_of(h: HnfMatrix, tau: complex) -> complex:
    """Модулярный параметр накрывающего тора: (μτ + κ)/λ"""
    tau = complex(tau)
    if tau.imag <= 0:
        raise DomainError(f"Требуется Im τ > 0, получено τ = {tau}")
    return (h.mu * tau + h.kappa) / h.lam
