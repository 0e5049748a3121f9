#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Эквивалентность перестановочных действий и разложение на транзитивные"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple, Optional

from groups.permgroup import Permutation
from groups.fpgroups import Homomorphism, TransitiveAction, orbit_stabilizer_action
from utils.errors import DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ActionDecomposition:
    """[φ] = ⊕ n_i τ_i: попарно неэквивалентные транзитивные с кратностями"""
    constituents: Tuple[Tuple[TransitiveAction, int], ...]

    @property
    def degree(self) -> int:
        return sum(multiplicity * action.degree for action, multiplicity in self.constituents)

    @property
    def multiplicities(self) -> Tuple[int, ...]:
        return tuple(multiplicity for _, multiplicity in self.constituents)

    def to_dict(self) -> Dict:
        return {
            'constituents': [
                {'degree': action.degree, 'multiplicity': multiplicity, 'action': action.action.to_dict()}
                for action, multiplicity in self.constituents
            ]
        }


def action_invariant(phi: Homomorphism) -> Tuple:
    """Инвариант класса эквивалентности: орбиты и цикловые типы образов образующих"""
    orbit_sizes = tuple(sorted(len(block) for block in phi.orbits()))
    return (phi.degree, orbit_sizes) + tuple(image.cycle_type() for image in phi.images)


def _extend_intertwiner(phi1: Homomorphism, phi2: Homomorphism, start: int, target: int,
                        alpha: Dict[int, int]) -> Optional[Dict[int, int]]:
    """Пытается продолжить α(start) = target по правилу α(φ2(g)i) = φ1(g)α(i)"""
    local = {start: target}
    used = set(alpha.values()) | {target}
    if target in alpha.values():
        return None
    queue = [start]
    while queue:
        point = queue.pop()
        for image1, image2 in zip(phi1.images, phi2.images):
            nxt2 = image2.images[point]
            nxt1 = image1.images[local[point]]
            if nxt2 in local:
                if local[nxt2] != nxt1:
                    return None
                continue
            if nxt1 in used:
                return None
            local[nxt2] = nxt1
            used.add(nxt1)
            queue.append(nxt2)
    return local


def actions_equivalent(phi1: Homomorphism, phi2: Homomorphism) -> Optional[Permutation]:
    """Ищет α с φ2(g) = α⁻¹ φ1(g) α для всех образующих; None, если действия не эквивалентны"""
    if phi1.presentation.generator_count != phi2.presentation.generator_count:
        raise DomainError("Действия заданы для разных групп")
    if phi1.degree != phi2.degree:
        raise DomainError(f"Степени действий различны: {phi1.degree} и {phi2.degree}")

    if action_invariant(phi1) != action_invariant(phi2):
        return None

    orbits1 = phi1.orbits()
    orbits2 = phi2.orbits()
    free = list(orbits1)
    alpha: Dict[int, int] = {}

    for block2 in orbits2:
        matched = False
        for position, block1 in enumerate(free):
            if len(block1) != len(block2):
                continue
            for target in block1:
                local = _extend_intertwiner(phi1, phi2, block2[0], target, alpha)
                if local is not None:
                    alpha.update(local)
                    matched = True
                    break
            if matched:
                # эквивалентность транзитивных транзитивна, так что жадный выбор корректен
                free.pop(position)
                break
        if not matched:
            return None

    return Permutation(tuple(alpha[point] for point in range(phi1.degree)))


def decompose_transitives(phi: Homomorphism) -> ActionDecomposition:
    """Разложение действия на транзитивные составляющие с кратностями"""
    constituents: List[List] = []
    for block in phi.orbits():
        transitive = orbit_stabilizer_action(phi, block)
        for entry in constituents:
            representative = entry[0]
            if representative.degree == transitive.degree and \
                    actions_equivalent(representative.action, transitive.action) is not None:
                entry[1] += 1
                break
        else:
            constituents.append([transitive, 1])

    decomposition = ActionDecomposition(tuple((action, count) for action, count in constituents))
    if decomposition.degree != phi.degree:
        raise DomainError("Сумма степеней составляющих не равна степени действия")
    return decomposition

