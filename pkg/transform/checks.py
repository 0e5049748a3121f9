#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Проверки транзитивности (Z≀Ω1)≀Ω2 = Z≀(Ω1≀Ω2) и структуры гомоморфизмов
в сплетение: ω-часть, скрещенный гомоморфизм λ и описание орбит.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Tuple, Any

from config import get_config
from classfun.ring import RingElem, ring_equal
from classfun.functions import ClassFunction, DOMAIN_Z, DOMAIN_ZZ
from groups.permgroup import PermGroup, Permutation, commuting_pairs, orbits, wreath_product
from groups.fpgroups import (Presentation, Homomorphism, count_homs, iter_hom_images, is_integer_lattice)
from lattices.hnf import HnfMatrix
from transform.orbifold import orbifold_transform, transform_Z, transform_ZZ
from utils.errors import BoundExceededError, DomainError
from utils.metrics import track_function

logger = logging.getLogger(__name__)


def _check_pair_bound(omega1: PermGroup, omega2: PermGroup, bound: int = None) -> int:
    order = omega1.order ** omega2.degree * omega2.order
    limit = bound if bound is not None else get_config().wreath_pair_bound
    if order > limit:
        raise BoundExceededError(f"сплетение {omega1}≀{omega2}", order, limit)
    return order


# === ТРАНЗИТИВНОСТЬ ===

@dataclass(frozen=True)
class TransitivityReport:
    domain: str
    omega1: str
    omega2: str
    handle: Any
    lhs: RingElem
    rhs: RingElem
    passed: bool

    def to_dict(self) -> Dict[str, Any]:
        handle = self.handle.to_dict() if isinstance(self.handle, HnfMatrix) else self.handle
        return {
            'domain': self.domain,
            'omega1': self.omega1,
            'omega2': self.omega2,
            'handle': handle,
            'passed': self.passed,
            'lhs': self.lhs.to_json(),
            'rhs': self.rhs.to_json(),
        }


@track_function("transitivity_check")
def transitivity_check(function: ClassFunction, omega1: PermGroup, omega2: PermGroup,
                       handle: Any = None, bound: int = None) -> TransitivityReport:
    """Левая часть - два последовательных преобразования, правая - одно по сплетению"""
    _check_pair_bound(omega1, omega2, bound)
    wreath = wreath_product(omega1, omega2)
    inner = orbifold_transform(function, omega1)

    if function.domain == DOMAIN_Z:
        handle = handle or 1
        lhs = transform_Z(inner, omega2, handle)
        rhs = transform_Z(function, wreath, handle)
    elif function.domain == DOMAIN_ZZ:
        handle = handle or HnfMatrix.identity()
        lhs = transform_ZZ(inner, omega2, handle)
        rhs = transform_ZZ(function, wreath, handle)
    else:
        raise DomainError("Транзитивность проверяется в доменах Z и ZxZ")

    passed = ring_equal(lhs, rhs)
    log = logger.debug if passed else logger.error
    log(f"{'✅' if passed else '❌'} ({function}≀{omega1})≀{omega2} vs ≀({omega1}≀{omega2}) [{function.domain}]")
    return TransitivityReport(function.domain, str(omega1), str(omega2), handle, lhs, rhs, passed)


# === ЧИСЛО ГОМОМОРФИЗМОВ В СПЛЕТЕНИЕ ===

def _stabilizer_hom_count(presentation: Presentation, index: int, omega1: PermGroup) -> int:
    """#Hom(Stab_η, Ω1) для подгруппы индекса |η| известного вида"""
    rank = presentation.generator_count
    if rank == 0:
        return 1
    if not presentation.relators:
        # подгруппа индекса m в F_k свободна ранга 1 + m(k-1)
        return omega1.order ** (1 + index * (rank - 1))
    if is_integer_lattice(presentation):
        return len(commuting_pairs(omega1))
    if rank == 1 and len(presentation.relators) == 1 and \
            all(letter == (0, 1) for letter in presentation.relators[0].letters):
        order = len(presentation.relators[0])
        if order % index:
            raise DomainError(f"Индекс {index} не делит порядок {order}")
        exponent = order // index
        return sum(1 for x in omega1.elements if x.power(exponent).is_identity())
    raise DomainError(f"Факторизованный подсчет не поддерживается для {presentation}")


@track_function("wreath_hom_count_check")
def wreath_hom_count_check(presentation: Presentation, omega1: PermGroup, omega2: PermGroup,
                           bound: int = None) -> Tuple[int, int]:
    """
    direct   = #Hom(G, Ω1≀Ω2)
    factored = Σ_{ω: G→Ω2} Π_{η∈O(ω)} |Ω1|^{|η|-1} · #Hom(Stab_η, Ω1)
    """
    _check_pair_bound(omega1, omega2, bound)
    wreath = wreath_product(omega1, omega2)
    if is_integer_lattice(presentation):
        direct = len(commuting_pairs(wreath))
    else:
        direct = count_homs(presentation, wreath)

    stabilizer_counts: Dict[int, int] = {}
    factored = 0
    for images in iter_hom_images(presentation, omega2):
        term = 1
        for block in orbits(images, omega2.degree):
            size = len(block)
            if size not in stabilizer_counts:
                stabilizer_counts[size] = _stabilizer_hom_count(presentation, size, omega1)
            term *= omega1.order ** (size - 1) * stabilizer_counts[size]
        factored += term

    if direct != factored:
        logger.error(f"❌ #Hom({presentation}, {omega1}≀{omega2}): {direct} ≠ {factored}")
    return direct, factored


# === СТРУКТУРА ОРБИТ ===

@dataclass(frozen=True)
class OrbitStructureReport:
    """Вердикт и описание орбит: η ⊂ Y, ξ ⊂ X, размер |ξ|·|η|"""
    passed: bool
    orbits: Tuple[Dict[str, Any], ...] = ()
    failures: Tuple[str, ...] = field(default=())

    def to_dict(self) -> Dict[str, Any]:
        return {'passed': self.passed, 'orbits': list(self.orbits), 'failures': list(self.failures)}


def _fiber(perm: Tuple[int, ...], y: int, degree1: int) -> Tuple[int, ...]:
    """λ(·, y): действие на слое над y"""
    return tuple(perm[x + y * degree1] % degree1 for x in range(degree1))


def _invert(images: Tuple[int, ...]) -> Tuple[int, ...]:
    inverse = [0] * len(images)
    for point, image in enumerate(images):
        inverse[image] = point
    return tuple(inverse)


def _compose(p: Tuple[int, ...], q: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(p[i] for i in q)


def orbit_structure_check(phi: Homomorphism, wreath: PermGroup = None) -> OrbitStructureReport:
    """
    Восстанавливает по φ: G → Ω1≀Ω2 пару (ω, λ), трансверсаль γ_y, отображение
    φ_η(y) = λ(γ_y, η*) и гомоморфизм стабилизатора Φ_η на образующих Шрайера,
    затем сверяет предсказанные орбиты {(φ_η(y)x, y) : x ∈ ξ, y ∈ η} с прямыми.
    """
    if wreath is None:
        wreath = phi.target
    if wreath is None or wreath.factors is None:
        raise DomainError("Гомоморфизм должен быть задан в сплетение")
    omega1, omega2 = wreath.factors
    degree1, degree2 = omega1.degree, omega2.degree
    failures: List[str] = []
    raw = [image.images for image in phi.images]

    # ω(g)(y) и проверка, что образ - элемент сплетения
    omega_images = []
    for perm in raw:
        omega = tuple(perm[y * degree1] // degree1 for y in range(degree2))
        if any(perm[x + y * degree1] // degree1 != omega[y] for y in range(degree2) for x in range(degree1)):
            return OrbitStructureReport(False, failures=("Образ не является элементом сплетения",))
        omega_images.append(omega)

    predicted: List[frozenset] = []
    summaries: List[Dict[str, Any]] = []
    identity1 = tuple(range(degree1))

    for eta in orbits([Permutation(w) for w in omega_images], degree2):
        base = eta[0]
        # дерево Шрайера: transversal[y] = φ(γ_y), γ_{η*} - пустое слово
        transversal: Dict[int, Tuple[int, ...]] = {base: tuple(range(degree1 * degree2))}
        queue = deque([base])
        while queue:
            y = queue.popleft()
            for perm, omega in zip(raw, omega_images):
                target = omega[y]
                if target not in transversal:
                    transversal[target] = _compose(perm, transversal[y])
                    queue.append(target)

        # φ_η(y) = λ(γ_y, η*)
        phi_eta = {y: _fiber(transversal[y], base, degree1) for y in eta}
        if phi_eta[base] != identity1:
            failures.append(f"φ_η(η*) ≠ 1 для η = {list(eta)}")

        # Φ_η на образующих Шрайера s = γ_{gy}⁻¹ g γ_y
        stabilizer_images = []
        for y in eta:
            for perm, omega in zip(raw, omega_images):
                gy = omega[y]
                schreier = _compose(_invert(transversal[gy]), _compose(perm, transversal[y]))
                if schreier[base * degree1] // degree1 != base:
                    failures.append(f"Образующая Шрайера не стабилизирует η* = {base}")
                    continue
                big_phi = _fiber(schreier, base, degree1)
                stabilizer_images.append(big_phi)
                # λ(g, y) = φ_η(gy) · Φ_η(s) · φ_η(y)⁻¹
                rebuilt = _compose(phi_eta[gy], _compose(big_phi, _invert(phi_eta[y])))
                if rebuilt != _fiber(perm, y, degree1):
                    failures.append(f"λ(g, {y}) не восстанавливается из (Φ_η, φ_η)")

        xi_orbits = orbits([Permutation(p) for p in stabilizer_images], degree1)
        for xi in xi_orbits:
            points = frozenset(phi_eta[y][x] + y * degree1 for x in xi for y in eta)
            predicted.append(points)
            summaries.append({'eta': list(eta), 'xi': list(xi), 'size': len(xi) * len(eta)})

    direct = [frozenset(block) for block in phi.orbits()]
    for block in direct:
        projection = {point // degree1 for point in block}
        fibers = {point // degree1: 0 for point in block}
        for point in block:
            fibers[point // degree1] += 1
        if len(set(fibers.values())) != 1 or len(block) != len(projection) * next(iter(fibers.values())):
            failures.append(f"Орбита {sorted(block)} не расслоена равномерно над {sorted(projection)}")
    if set(direct) != set(predicted) or len(direct) != len(predicted):
        failures.append("Предсказанные орбиты {(φ_η(y)x, y)} не совпали с прямым вычислением")

    return OrbitStructureReport(not failures, tuple(summaries), tuple(failures))
