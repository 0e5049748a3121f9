#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Размеры классов эквивалентности перестановочных действий.

Для φ = ⊕ n_i τ_i (попарно неэквивалентные транзитивные τ_i):
    |C[φ]| = Π n_i! · ℓ_i^{n_i},   #[φ] = n! / |C[φ]|,
где ℓ_i - порядок централизатора образа τ_i в симметрической группе орбиты.
"""

import csv
import io
import math
import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple, Any

from config import get_config, CENSUS_HARD_CAP
from classfun.ring import Poly, ComplexNum, RingElem, ring_equal, ring_product, z
from classfun.functions import ClassFunction, TableClassFunction, DOMAIN_GENERAL
from groups.permgroup import centralizer_in_sym, symmetric_group
from groups.fpgroups import Presentation, Homomorphism, TransitiveAction, enumerate_homs, orbit_stabilizer_action
from groups.actions import ActionDecomposition, action_invariant, actions_equivalent, decompose_transitives
from transform.orbifold import transform_at_G
from utils.errors import BoundExceededError, ConsistencyError, DomainError
from utils.metrics import track_function

logger = logging.getLogger(__name__)


def transitive_centralizer_order(action: TransitiveAction, bound: int = None) -> int:
    """ℓ = |C_{S_ξ}(τ(G))| = [N_G(G_ξ) : G_ξ]"""
    return centralizer_in_sym(action.action.images, action.degree, bound).order


def _decomposition_data(phi: Homomorphism, bound: int = None) -> Tuple[ActionDecomposition, List[int]]:
    decomposition = decompose_transitives(phi)
    ells = [transitive_centralizer_order(action, bound) for action, _ in decomposition.constituents]
    return decomposition, ells


def _wreath_centralizer_order(decomposition: ActionDecomposition, ells: List[int]) -> int:
    order = 1
    for (_, multiplicity), ell in zip(decomposition.constituents, ells):
        order *= math.factorial(multiplicity) * ell ** multiplicity
    return order


def centralizer_order_formula(phi: Homomorphism, bound: int = None) -> int:
    """Π n_i! · ℓ_i^{n_i} - порядок централизатора образа φ в S_n"""
    return _wreath_centralizer_order(*_decomposition_data(phi, bound))


def class_size(phi: Homomorphism, bound: int = None) -> int:
    """#[φ] = n!/Π n_i!·ℓ_i^{n_i}; сверяется с индексом централизатора [S_n : C[φ]]"""
    predicted = math.factorial(phi.degree) // centralizer_order_formula(phi, bound)
    brute = math.factorial(phi.degree) // centralizer_in_sym(phi.images, phi.degree, bound).order
    if predicted != brute:
        raise ConsistencyError(f"Размер класса {predicted} ≠ индекс централизатора {brute}")
    return predicted


@dataclass(frozen=True)
class CensusRow:
    """Один класс эквивалентности действий степени n"""
    index: int
    representative: Homomorphism
    decomposition: ActionDecomposition
    ells: Tuple[int, ...]
    predicted_size: int
    observed_size: int
    centralizer_formula: int
    centralizer_brute: int

    @property
    def passed(self) -> bool:
        return (self.predicted_size == self.observed_size
                and self.centralizer_formula == self.centralizer_brute)

    def decomposition_label(self) -> str:
        return " + ".join(f"{multiplicity}×τ{action.degree}"
                          for action, multiplicity in self.decomposition.constituents)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'index': self.index,
            'representative': self.representative.to_dict()['images'],
            'decomposition': [
                {'degree': action.degree, 'multiplicity': multiplicity, 'ell': ell}
                for (action, multiplicity), ell in zip(self.decomposition.constituents, self.ells)
            ],
            'predicted': self.predicted_size,
            'observed': self.observed_size,
            'centralizer_formula': self.centralizer_formula,
            'centralizer_brute': self.centralizer_brute,
        }


@dataclass(frozen=True)
class ClassCensus:
    """Разбиение Hom(G, S_n) на классы эквивалентности"""
    presentation: Presentation
    degree: int
    total_homs: int
    classes: Tuple[CensusRow, ...]

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.classes) and \
            sum(row.observed_size for row in self.classes) == self.total_homs

    def to_dict(self) -> Dict[str, Any]:
        return {
            'presentation': self.presentation.to_dict(),
            'degree': self.degree,
            'total_homs': self.total_homs,
            'passed': self.passed,
            'classes': [row.to_dict() for row in self.classes],
        }

    def to_tsv(self) -> str:
        """Класс, представитель, разложение, ℓ_i, предсказанный и наблюдаемый размеры"""
        buffer = io.StringIO()
        writer = csv.writer(buffer, delimiter='\t', lineterminator='\n')
        writer.writerow(['class', 'representative', 'decomposition', 'ells', 'predicted', 'observed'])
        for row in self.classes:
            writer.writerow([
                row.index,
                ';'.join(','.join(str(i) for i in image.images) for image in row.representative.images),
                row.decomposition_label(),
                ','.join(str(ell) for ell in row.ells),
                row.predicted_size,
                row.observed_size,
            ])
        return buffer.getvalue()


def _check_census_bound(presentation: Presentation, degree: int, bound: int = None):
    if degree < 1:
        raise DomainError(f"Степень переписи должна быть положительной: {degree}")
    limit = min(bound if bound is not None else get_config().census_max_degree, CENSUS_HARD_CAP)
    if degree > limit:
        raise BoundExceededError(f"перепись классов степени {degree}", degree, limit)
    if presentation.generator_count > 3:
        raise DomainError("Перепись поддерживается для групп с не более чем 3 образующими")


@track_function("census")
def census(presentation: Presentation, degree: int, bound: int = None) -> ClassCensus:
    """
    Полное разбиение Hom(G, S_n) на классы сопряженности.

    Наблюдаемый класс - множество сопряженных φ^α по всем α ∈ S_n; представители
    с одинаковым инвариантом дополнительно проверяются actions_equivalent.
    """
    _check_census_bound(presentation, degree, bound)
    group = symmetric_group(degree)
    homs = enumerate_homs(presentation, group)
    position = {tuple(p.images for p in phi.images): i for i, phi in enumerate(homs)}
    inverses = [alpha.inverse() for alpha in group.elements]

    assigned = [False] * len(homs)
    rows: List[CensusRow] = []
    by_invariant: Dict[Tuple, List[Homomorphism]] = {}

    for i, phi in enumerate(homs):
        if assigned[i]:
            continue
        members = set()
        for alpha, alpha_inverse in zip(group.elements, inverses):
            key = tuple((alpha_inverse * image * alpha).images for image in phi.images)
            members.add(key)
        for key in members:
            assigned[position[key]] = True

        invariant = action_invariant(phi)
        for other in by_invariant.get(invariant, []):
            if actions_equivalent(other, phi) is not None:
                raise ConsistencyError("Два класса сопряженности оказались эквивалентными")
        by_invariant.setdefault(invariant, []).append(phi)

        decomposition, ells = _decomposition_data(phi)
        formula = _wreath_centralizer_order(decomposition, ells)
        brute = centralizer_in_sym(phi.images, degree).order
        rows.append(CensusRow(len(rows) + 1, phi, decomposition, tuple(ells),
                              math.factorial(degree) // formula, len(members), formula, brute))

    result = ClassCensus(presentation, degree, len(homs), tuple(rows))
    status = "✅" if result.passed else "❌"
    logger.info(f"{status} Перепись {presentation}, n={degree}: {len(homs)} гомоморфизмов, {len(rows)} классов")
    return result


def symbolic_class_table(data: ClassCensus) -> TableClassFunction:
    """Каждому транзитивному классу степени ≤ n из переписи - свой символ z_k (k - номер класса)"""
    table = TableClassFunction(data.presentation, name=f"classes[{data.presentation}, n≤{data.degree}]")
    for row in data.classes:
        for action, _ in row.decomposition.constituents:
            if table.find(action) is None:
                number = len(table.keys()) + 1
                table.register(action, Poly.var(z(number)), key=f"class{number}")
    return table


@dataclass(frozen=True)
class ExpansionReport:
    """Σ_φ Π_ξ Z(H_ξ) тремя путями: по классам, по гомоморфизмам и как n!·Z_n"""
    degree: int
    by_classes: RingElem
    by_homs: RingElem
    symmetric: RingElem

    @property
    def passed(self) -> bool:
        return ring_equal(self.by_classes, self.by_homs) and ring_equal(self.by_homs, self.symmetric)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'degree': self.degree,
            'passed': self.passed,
            'by_classes': self.by_classes.to_json(),
            'by_homs': self.by_homs.to_json(),
            'symmetric': self.symmetric.to_json(),
        }


def census_expansion_check(presentation: Presentation, degree: int, function: ClassFunction,
                           census_data: ClassCensus = None) -> ExpansionReport:
    """
    Разложение n!·Z_n по классам: каждый класс входит с предсказанным
    весом #[φ] = n!/|C[φ]| и произведением Π Z(G_i)^{n_i}.
    """
    if function.domain != DOMAIN_GENERAL:
        raise DomainError("Проверка разложения по классам требует классовую функцию общего домена")
    data = census_data or census(presentation, degree)
    zero = ComplexNum(0) if function.numeric else Poly.zero()

    by_classes = zero
    for row in data.classes:
        term = ring_product((function.value(action) ** multiplicity
                             for action, multiplicity in row.decomposition.constituents), function.numeric)
        by_classes = by_classes + term * row.predicted_size

    by_homs = zero
    group = symmetric_group(degree)
    for phi in enumerate_homs(presentation, group):
        by_homs = by_homs + ring_product((function.value(orbit_stabilizer_action(phi, block))
                                          for block in phi.orbits()), function.numeric)

    symmetric = transform_at_G(presentation, function, group).value * math.factorial(degree)

    report = ExpansionReport(degree, by_classes, by_homs, symmetric)
    if not report.passed:
        logger.error(f"❌ Разложение по классам {presentation}, n={degree} не совпало с n!·Z_n")
    return report
