#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Наборы проверок для `verify`.

Каждый набор - упорядоченный список независимых пунктов; пункты выполняются
в пуле потоков, отчет собирается в объявленном порядке и не содержит времени
выполнения, поэтому повторный запуск с той же конфигурацией дает тот же JSON.
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Tuple, Any

import numpy as np

from config import get_config
from classfun.ring import Poly, z
from classfun.functions import (SequenceClassFunction, LatticeClassFunction, ConstantClassFunction,
                                TranslatedClassFunction, DOMAIN_Z, DOMAIN_ZZ, DOMAIN_GENERAL)
from counting.census import census, census_expansion_check, centralizer_order_formula, symbolic_class_table
from groups.permgroup import (PermGroup, centralizer_in_sym, commuting_pairs, cyclic_group, symmetric_group,
                              trivial_group, wreath_equivalent, wreath_product)
from groups.fpgroups import (Presentation, Homomorphism, enumerate_homs, free_group, integer_lattice, integers,
                             is_integer_lattice, orbit_stabilizer_action, trivial_presentation)
from lattices.hnf import orbit_hnf
from symprod.cycle_index import SCHUR_CROSSCHECK_DEGREE, cycle_indicator, schur_polynomials
from symprod.exponential import expoid_verify, symmetric_product
from torus.modular import (class_count_check, fundamental_domain_samples, invariant_callback, s2_formula_check,
                           s_check, t_check, torus_partition_function)
from transform.checks import orbit_structure_check, transitivity_check, wreath_hom_count_check
from transform.orbifold import transform_at_G
from utils.errors import ConsistencyError, DomainError, HandleError
from utils.metrics import track_function

logger = logging.getLogger(__name__)

SUITES = ('transitivity', 'expoid', 'symprod', 'counting', 'lemmas', 'modular', 'trivial', 'wellposed')
ORBIT_SAMPLE_SIZE = 200
MODULAR_SAMPLE_COUNT = 10
WELLPOSED_MAX_DEGREE = 4


@dataclass(frozen=True)
class SuiteItem:
    """Один пункт набора: имя, вердикт и детали для отчета"""
    name: str
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {'name': self.name, 'passed': self.passed, 'details': self.details}


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    items: Tuple[SuiteItem, ...]

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'suite': self.suite,
            'passed': self.passed,
            'items': [item.to_dict() for item in self.items],
        }


Task = Tuple[str, Callable[[], SuiteItem]]


def _run_guarded(task: Task) -> SuiteItem:
    """Расхождения и нарушения предусловий - провал пункта; превышение границ пробрасывается"""
    name, job = task
    try:
        return job()
    except (ConsistencyError, DomainError, HandleError) as e:
        logger.error(f"❌ {name}: {e}")
        return SuiteItem(name, False, {'error': str(e)})


def _run_tasks(suite: str, tasks: List[Task], workers: int) -> SuiteReport:
    logger.info(f"🧪 Набор {suite}: {len(tasks)} пунктов, потоков {workers}")
    with ThreadPoolExecutor(max_workers=workers) as executor:
        items = tuple(executor.map(_run_guarded, tasks))
    failed = sum(1 for item in items if not item.passed)
    if failed:
        logger.error(f"❌ Набор {suite}: провалено {failed} из {len(items)}")
    else:
        logger.info(f"✅ Набор {suite}: все {len(items)} пунктов пройдены")
    return SuiteReport(suite, items)


# === ГРУППЫ НАБОРОВ ===

def small_groups() -> List[PermGroup]:
    """trivial, C_2, C_3, S_2, S_3"""
    return [trivial_group(), cyclic_group(2), cyclic_group(3), symmetric_group(2), symmetric_group(3)]


def group_pairs() -> List[Tuple[PermGroup, PermGroup]]:
    """Пары (Ω1, Ω2) из малых групп с |Ω1≀Ω2| в пределах wreath_pair_bound"""
    limit = get_config().wreath_pair_bound
    groups = small_groups()
    return [(a, b) for a, b in itertools.product(groups, repeat=2) if a.order ** b.degree * b.order <= limit]


def lemma_presentations() -> List[Presentation]:
    return [trivial_presentation(), integers(), integer_lattice(), free_group(2)]


# === ТРАНЗИТИВНОСТЬ ===

def _transitivity_item(domain: str, omega1: PermGroup, omega2: PermGroup) -> SuiteItem:
    function = SequenceClassFunction() if domain == DOMAIN_Z else LatticeClassFunction()
    report = transitivity_check(function, omega1, omega2)
    return SuiteItem(f"{domain}: ({omega1}, {omega2})", report.passed, {'value': report.rhs.to_json()})


def _transitivity_spot_value() -> SuiteItem:
    s2 = symmetric_group(2)
    report = transitivity_check(SequenceClassFunction(), s2, s2)
    z1, z2, z4 = Poly.var(z(1)), Poly.var(z(2)), Poly.var(z(4))
    expected = (z1 ** 4 + 2 * z1 ** 2 * z2 + 3 * z2 ** 2 + 2 * z4).div_int(8)
    passed = report.passed and report.lhs == expected
    return SuiteItem("Z: (S2, S2) = (z_1^4 + 2z_1^2z_2 + 3z_2^2 + 2z_4)/8", passed, {'value': report.lhs.to_json()})


def _wreath_shape_item() -> SuiteItem:
    """Ассоциативность сплетения с точностью до эквивалентности и некоммутативность"""
    s2, c3 = symmetric_group(2), cyclic_group(3)
    left = wreath_product(wreath_product(s2, s2), c3)
    right = wreath_product(s2, wreath_product(s2, c3))
    associative = wreath_equivalent(left, right)
    commutative = wreath_equivalent(wreath_product(s2, c3), wreath_product(c3, s2))
    return SuiteItem("wreath: (S2≀S2)≀C3 ~ S2≀(S2≀C3), S2≀C3 ≁ C3≀S2", associative and not commutative,
                     {'associative': associative, 'commutative': commutative})


def transitivity_tasks() -> List[Task]:
    tasks: List[Task] = [("spot", _transitivity_spot_value), ("wreath shape", _wreath_shape_item)]
    for domain in (DOMAIN_Z, DOMAIN_ZZ):
        for omega1, omega2 in group_pairs():
            tasks.append((f"{domain}:{omega1}:{omega2}",
                          lambda d=domain, a=omega1, b=omega2: _transitivity_item(d, a, b)))
    return tasks


# === ЭКСПОНЕНЦИАЛЬНОЕ ТОЖДЕСТВО ===

def _expoid_item(domain: str, order: int, zero: bool = False) -> SuiteItem:
    if zero:
        function = ConstantClassFunction(Poly.zero(), domain)
    else:
        function = SequenceClassFunction() if domain == DOMAIN_Z else LatticeClassFunction()
    report = expoid_verify(function, domain, order)
    label = f"{domain}: N={order}" + (" (Z ≡ 0)" if zero else "")
    return SuiteItem(label, report.passed, {'lhs': report.lhs.to_json()})


def expoid_tasks() -> List[Task]:
    config = get_config()
    return [
        ("expoid Z", lambda: _expoid_item(DOMAIN_Z, config.expoid_order_z)),
        ("expoid ZxZ", lambda: _expoid_item(DOMAIN_ZZ, config.expoid_order_zz)),
        ("expoid zero", lambda: _expoid_item(DOMAIN_Z, config.expoid_order_z, zero=True)),
    ]


# === СИММЕТРИЧЕСКИЕ ПРОИЗВЕДЕНИЯ ===

def _schur_item() -> SuiteItem:
    polynomials = schur_polynomials(SCHUR_CROSSCHECK_DEGREE)
    mismatched = [n for n, polynomial in enumerate(polynomials, start=1)
                  if polynomial != cycle_indicator(symmetric_group(n)).polynomial]
    return SuiteItem(f"P_n = cycle_indicator(S_n), n ≤ {SCHUR_CROSSCHECK_DEGREE}", not mismatched,
                     {'mismatched': mismatched})


def _symprod_item(domain: str, n: int) -> SuiteItem:
    function = SequenceClassFunction() if domain == DOMAIN_Z else LatticeClassFunction()
    value = symmetric_product(function, domain, n)
    return SuiteItem(f"{domain}: Z_{n}", True, {'value': value.to_json()})


def _numeric_symprod_item(n: int) -> SuiteItem:
    tau = fundamental_domain_samples(1)[0]
    function = LatticeClassFunction.from_tau(invariant_callback('klein-j'), tau, 'klein-j')
    value = symmetric_product(function, DOMAIN_ZZ, n)
    return SuiteItem(f"ZxZ numeric klein-j: Z_{n}(τ)", True, {'tau': [tau.real, tau.imag], 'value': value.to_json()})


def symprod_tasks() -> List[Task]:
    tasks: List[Task] = [("schur", _schur_item)]
    for domain in (DOMAIN_Z, DOMAIN_ZZ):
        for n in range(1, 6):
            tasks.append((f"symprod {domain} {n}", lambda d=domain, k=n: _symprod_item(d, k)))
    for n in range(1, 4):
        tasks.append((f"symprod numeric {n}", lambda k=n: _numeric_symprod_item(k)))
    return tasks


# === ПЕРЕПИСЬ КЛАССОВ ===

def _centralizer_mismatches(presentation: Presentation, degree: int) -> int:
    """Формула централизатора против перебора для каждого φ, а не только для представителей"""
    mismatches = 0
    for phi in enumerate_homs(presentation, symmetric_group(degree)):
        if centralizer_order_formula(phi) != centralizer_in_sym(phi.images, degree).order:
            mismatches += 1
    return mismatches


def _census_item(presentation: Presentation, degree: int) -> SuiteItem:
    data = census(presentation, degree)
    details: Dict[str, Any] = {'total_homs': data.total_homs, 'classes': len(data.classes),
                               'sizes': [row.observed_size for row in data.classes]}
    passed = data.passed
    # при n ≥ 5 формула сверяется только на представителях: порядок централизатора
    # не меняется при сопряжении φ
    if degree <= 4:
        report = census_expansion_check(presentation, degree, symbolic_class_table(data), data)
        mismatches = _centralizer_mismatches(presentation, degree)
        details['expansion'] = report.passed
        details['centralizer_mismatches'] = mismatches
        passed = passed and report.passed and mismatches == 0
    return SuiteItem(f"{presentation}: n={degree}", passed, details)


def counting_tasks() -> List[Task]:
    limit = get_config().census_max_degree
    return [(f"census {p} {n}", lambda q=p, k=n: _census_item(q, k))
            for p in lemma_presentations() for n in range(1, limit + 1)]


# === ЛЕММЫ О СПЛЕТЕНИЯХ ===

def sample_wreath_homs(presentation: Presentation, wreath: PermGroup, count: int,
                       rng: np.random.Generator) -> List[Homomorphism]:
    """Гомоморфизмы в сплетение: все, если их не больше count, иначе случайная выборка"""
    rank = presentation.generator_count
    elements = wreath.elements
    if rank == 0:
        return [Homomorphism(presentation, wreath.degree, (), wreath)]
    if is_integer_lattice(presentation):
        population = commuting_pairs(wreath)
    elif not presentation.relators:
        population = None
    else:
        raise DomainError(f"Выборка гомоморфизмов не поддерживается для {presentation}")

    size = len(population) if population is not None else len(elements) ** rank
    chosen = range(size) if size <= count else sorted(int(i) for i in rng.choice(size, size=count, replace=False))
    homs = []
    for index in chosen:
        if population is not None:
            images = population[index]
        else:
            digits = []
            for _ in range(rank):
                index, digit = divmod(index, len(elements))
                digits.append(elements[digit])
            images = tuple(digits)
        homs.append(Homomorphism(presentation, wreath.degree, images, wreath))
    return homs


def _hom_count_item(presentation: Presentation, omega1: PermGroup, omega2: PermGroup) -> SuiteItem:
    direct, factored = wreath_hom_count_check(presentation, omega1, omega2)
    return SuiteItem(f"#Hom({presentation}, {omega1}≀{omega2})", direct == factored,
                     {'direct': direct, 'factored': factored})


def _orbit_structure_item(presentation: Presentation, omega1: PermGroup, omega2: PermGroup, seed: int) -> SuiteItem:
    wreath = wreath_product(omega1, omega2)
    rng = np.random.default_rng(seed)
    homs = sample_wreath_homs(presentation, wreath, ORBIT_SAMPLE_SIZE, rng)
    failures = []
    for phi in homs:
        report = orbit_structure_check(phi, wreath)
        if not report.passed:
            failures.append({'images': phi.to_dict()['images'], 'failures': list(report.failures)})
    return SuiteItem(f"orbits {presentation} → {omega1}≀{omega2}", not failures,
                     {'checked': len(homs), 'failures': failures[:5]})


def lemmas_tasks() -> List[Task]:
    seed = get_config().random_seed
    tasks: List[Task] = []
    for presentation in lemma_presentations():
        for omega1, omega2 in group_pairs():
            tasks.append((f"homcount {presentation} {omega1} {omega2}",
                          lambda p=presentation, a=omega1, b=omega2: _hom_count_item(p, a, b)))
            tasks.append((f"orbits {presentation} {omega1} {omega2}",
                          lambda p=presentation, a=omega1, b=omega2: _orbit_structure_item(p, a, b, seed)))
    return tasks


# === МОДУЛЯРНЫЕ ПРОВЕРКИ ===

def _modular_item(report) -> SuiteItem:
    data = report.to_dict()
    return SuiteItem(f"{data['name']} [{data['omega']}]", report.passed, {'points': data['points']})


def _trivial_omega_item(samples: List[complex]) -> SuiteItem:
    invariant = invariant_callback('klein-j')
    omega = trivial_group()
    deviations = []
    for tau in samples:
        value = torus_partition_function(omega, tau, invariant)
        expected = invariant(tau)
        deviations.append(abs(value - expected) / max(abs(expected), 1e-300))
    tolerance = get_config().tolerance
    return SuiteItem("trivial Ω: Z^Ω = f", all(d < tolerance for d in deviations), {'deviations': deviations})


def modular_tasks() -> List[Task]:
    config = get_config()
    samples = fundamental_domain_samples(MODULAR_SAMPLE_COUNT, config.random_seed)
    j = invariant_callback('klein-j', config.j_order)
    s2 = symmetric_group(2)
    return [
        ("class count S3", lambda: _modular_item(class_count_check(symmetric_group(3)))),
        ("class count S4", lambda: _modular_item(class_count_check(symmetric_group(4)))),
        ("T S2", lambda: _modular_item(t_check(s2, j, samples))),
        ("S S2", lambda: _modular_item(s_check(s2, j, samples))),
        ("S2 formula", lambda: _modular_item(s2_formula_check(j, samples))),
        ("trivial omega", lambda: _trivial_omega_item(samples)),
    ]


# === ГРУППА БЕЗ НЕТРИВИАЛЬНЫХ ПОДГРУПП ===

def trivial_law_groups() -> List[PermGroup]:
    s2 = symmetric_group(2)
    return [trivial_group(), cyclic_group(2), cyclic_group(3), cyclic_group(4), cyclic_group(5),
            s2, symmetric_group(3), symmetric_group(4),
            wreath_product(s2, s2).with_name("S2 wr S2"), wreath_product(cyclic_group(2), cyclic_group(3)).with_name("C2 wr C3")]


def _trivial_law_item(omega: PermGroup) -> SuiteItem:
    c = Poly.var(z(1)) + Fraction(1, 2)
    result = transform_at_G(trivial_presentation(), ConstantClassFunction(c, DOMAIN_GENERAL), omega)
    expected = (c ** omega.degree).div_int(omega.order)
    return SuiteItem(f"trivial G, Ω = {omega}", result.value == expected, {'value': result.value.to_json()})


def trivial_tasks() -> List[Task]:
    return [(f"trivial {omega}", lambda g=omega: _trivial_law_item(g)) for omega in trivial_law_groups()]


# === НЕЗАВИСИМОСТЬ ОТ БАЗОВОЙ ТОЧКИ ===

def _wellposed_homs(presentation: Presentation, seed: int) -> List[Homomorphism]:
    homs: List[Homomorphism] = []
    for degree in range(1, WELLPOSED_MAX_DEGREE + 1):
        homs.extend(enumerate_homs(presentation, symmetric_group(degree)))
    rng = np.random.default_rng(seed)
    for omega1, omega2 in group_pairs():
        homs.extend(sample_wreath_homs(presentation, wreath_product(omega1, omega2), 20, rng))
    return homs


def _wellposed_item(presentation: Presentation, seed: int) -> SuiteItem:
    """
    Значение на орбите не зависит от выбора ξ*: символьная таблица классов
    степени ≤ 4, перевод в ЭНФ для ℤ⊕ℤ и в индекс для ℤ.
    """
    degree = min(WELLPOSED_MAX_DEGREE, get_config().census_max_degree)
    table = symbolic_class_table(census(presentation, degree))
    translated = None
    if is_integer_lattice(presentation):
        translated = TranslatedClassFunction(LatticeClassFunction())
    elif presentation.generator_count == 1 and not presentation.relators:
        translated = TranslatedClassFunction(SequenceClassFunction())

    failures = 0
    orbit_count = 0
    for phi in _wellposed_homs(presentation, seed):
        for block in phi.orbits():
            orbit_count += 1
            actions = [orbit_stabilizer_action(phi, block, point) for point in block]
            if len(block) <= degree:
                failures += len({table.value(action) for action in actions}) != 1
            if translated is not None:
                failures += len({translated.value(action) for action in actions}) != 1
            if is_integer_lattice(presentation):
                x, y = phi.images
                failures += len({orbit_hnf(x, y, block, point) for point in block}) != 1
    return SuiteItem(f"basepoint independence: {presentation}", failures == 0,
                     {'orbits': orbit_count, 'failures': failures})


def wellposed_tasks() -> List[Task]:
    seed = get_config().random_seed
    return [(f"wellposed {p}", lambda q=p: _wellposed_item(q, seed)) for p in lemma_presentations()]


# === ЗАПУСК ===

SUITE_TASKS: Dict[str, Callable[[], List[Task]]] = {
    'transitivity': transitivity_tasks,
    'expoid': expoid_tasks,
    'symprod': symprod_tasks,
    'counting': counting_tasks,
    'lemmas': lemmas_tasks,
    'modular': modular_tasks,
    'trivial': trivial_tasks,
    'wellposed': wellposed_tasks,
}


@track_function("run_suite")
def run_suite(name: str, workers: int = None) -> SuiteReport:
    if name not in SUITE_TASKS:
        raise DomainError(f"Неизвестный набор {name!r}; доступны: {', '.join(SUITES)}, all")
    workers = workers or get_config().max_workers
    return _run_tasks(name, SUITE_TASKS[name](), workers)


def run_suites(names: List[str], workers: int = None) -> List[SuiteReport]:
    """Наборы выполняются по очереди; 'all' разворачивается в полный список"""
    expanded: List[str] = []
    for name in names:
        for suite in (SUITES if name == 'all' else (name,)):
            if suite not in expanded:
                expanded.append(suite)
    return [run_suite(suite, workers) for suite in expanded]
