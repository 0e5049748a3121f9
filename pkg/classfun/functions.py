#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Классовые функции на подгруппах конечного индекса.

Хэндлы подгрупп зависят от домена:
    Z        - индекс n (у ℤ ровно одна подгруппа каждого индекса)
    ZxZ      - матрица ЭНФ (μ, κ, λ)
    general  - транзитивное действие (класс сопряженности стабилизатора точки)
"""

import logging
import threading
from typing import Callable, Dict, List, Optional, Tuple, Any, Union

from classfun.ring import Poly, ComplexNum, RingElem, z, z_hnf, ring_equal, ring_from_json
from groups.permgroup import Permutation
from groups.fpgroups import Homomorphism, TransitiveAction, Presentation, integers, integer_lattice
from groups.actions import actions_equivalent
from lattices.hnf import HnfMatrix, tau_of, orbit_hnf, hnf_enumerate
from utils.errors import DomainError, HandleError, InputParseError

logger = logging.getLogger(__name__)

DOMAIN_Z = 'Z'
DOMAIN_ZZ = 'ZxZ'
DOMAIN_GENERAL = 'general'
DOMAINS = (DOMAIN_Z, DOMAIN_ZZ, DOMAIN_GENERAL)

Handle = Union[int, HnfMatrix, TransitiveAction]


class ClassFunction:
    """Базовый класс: значение на хэндле подгруппы с потокобезопасной мемоизацией"""

    domain: str = DOMAIN_GENERAL
    numeric: bool = False

    def __init__(self, name: str = ''):
        self.name = name
        self._memo: Dict[Any, RingElem] = {}
        self._lock = threading.Lock()

    def _check_handle(self, handle: Handle):
        raise NotImplementedError

    def _memo_key(self, handle: Handle):
        return handle

    def _compute(self, handle: Handle) -> RingElem:
        raise NotImplementedError

    def value(self, handle: Handle) -> RingElem:
        self._check_handle(handle)
        key = self._memo_key(handle)
        with self._lock:
            cached = self._memo.get(key)
        if cached is not None:
            return cached
        # вычисляем вне блокировки: ленивые преобразования рекурсивно вызывают value
        result = self._compute(handle)
        with self._lock:
            return self._memo.setdefault(key, result)

    def memo_size(self) -> int:
        with self._lock:
            return len(self._memo)

    def __str__(self):
        return self.name or f"{type(self).__name__}({self.domain})"


# === ДОМЕН ℤ ===

class SequenceClassFunction(ClassFunction):
    """G = ℤ: последовательность z_1, z_2, …; по умолчанию символьная"""

    domain = DOMAIN_Z

    def __init__(self, rule: Callable[[int], RingElem] = None, name: str = '', numeric: bool = False):
        super().__init__(name or ('z_n' if rule is None else 'sequence'))
        self._rule = rule
        self.numeric = numeric

    def _check_handle(self, handle: Handle):
        if isinstance(handle, bool) or not isinstance(handle, int):
            raise HandleError(f"Для домена Z хэндл - положительный индекс, получено {handle!r}")
        if handle < 1:
            raise HandleError(f"Индекс подгруппы должен быть положительным: {handle}")

    def _compute(self, n: int) -> RingElem:
        if self._rule is None:
            return Poly.var(z(n))
        return self._rule(n)


# === ДОМЕН ℤ⊕ℤ ===

class LatticeClassFunction(ClassFunction):
    """G = ℤ⊕ℤ: значения на матрицах ЭНФ; по умолчанию символьные z_{μ,κ,λ}"""

    domain = DOMAIN_ZZ

    def __init__(self, rule: Callable[[HnfMatrix], RingElem] = None, name: str = '', numeric: bool = False):
        super().__init__(name or ('z_{μ,κ,λ}' if rule is None else 'lattice'))
        self._rule = rule
        self.numeric = numeric

    @classmethod
    def from_tau(cls, callback: Callable[[complex], complex], tau: complex, name: str = '') -> 'LatticeClassFunction':
        """Численная функция: H -> f(τ(H)) с τ(H) = (μτ + κ)/λ"""
        tau = complex(tau)
        if tau.imag <= 0:
            raise DomainError(f"Требуется Im τ > 0, получено τ = {tau}")

        def rule(h: HnfMatrix) -> ComplexNum:
            return ComplexNum(callback(tau_of(h, tau)))

        function = cls(rule, name or f"f(τ={tau})", numeric=True)
        function.tau = tau
        return function

    def _check_handle(self, handle: Handle):
        if not isinstance(handle, HnfMatrix):
            raise HandleError(f"Для домена ZxZ хэндл - матрица ЭНФ, получено {handle!r}")

    def _compute(self, h: HnfMatrix) -> RingElem:
        if self._rule is None:
            return Poly.var(z_hnf(h.mu, h.kappa, h.lam))
        return self._rule(h)


# === ОБЩИЙ ДОМЕН ===

def _action_key(action: TransitiveAction) -> Tuple:
    return (action.degree,) + tuple(image.images for image in action.action.images)


class ConstantClassFunction(ClassFunction):
    """Z ≡ c на всех подгруппах (любой домен)"""

    def __init__(self, value: RingElem, domain: str = DOMAIN_GENERAL, name: str = ''):
        if domain not in DOMAINS:
            raise DomainError(f"Неизвестный домен: {domain}")
        super().__init__(name or f"const({value})")
        self.domain = domain
        self.constant = value
        self.numeric = isinstance(value, ComplexNum)

    def _check_handle(self, handle: Handle):
        expected = {DOMAIN_Z: int, DOMAIN_ZZ: HnfMatrix, DOMAIN_GENERAL: TransitiveAction}[self.domain]
        if not isinstance(handle, expected) or isinstance(handle, bool):
            raise HandleError(f"Хэндл {handle!r} не подходит для домена {self.domain}")

    def _memo_key(self, handle: Handle):
        return None

    def _compute(self, handle: Handle) -> RingElem:
        return self.constant


class TableClassFunction(ClassFunction):
    """
    Общий G: значения заданы на явно зарегистрированных классах транзитивных действий.

    Поиск - линейный проход по представителям с actions_equivalent,
    результат кэшируется по массивам образов.
    """

    domain = DOMAIN_GENERAL

    def __init__(self, presentation: Presentation, name: str = ''):
        super().__init__(name or f"table[{presentation}]")
        self.presentation = presentation
        self._entries: Dict[str, Tuple[TransitiveAction, RingElem]] = {}
        self._order: List[str] = []

    def find(self, action: TransitiveAction) -> Optional[str]:
        for key in self._order:
            representative, _ = self._entries[key]
            if representative.degree == action.degree and \
                    actions_equivalent(representative.action, action.action) is not None:
                return key
        return None

    def register(self, action: TransitiveAction, value: RingElem, key: str = None) -> str:
        """Регистрирует класс эквивалентности действия со значением"""
        if action.presentation.generator_count != self.presentation.generator_count:
            raise DomainError(f"Действие задано не для группы {self.presentation}")
        if isinstance(value, ComplexNum):
            self.numeric = True

        key = key or f"class{len(self._order) + 1}"
        if key in self._entries:
            representative, registered = self._entries[key]
            if representative.degree != action.degree or \
                    actions_equivalent(representative.action, action.action) is None:
                raise DomainError(f"Под ключом {key!r} уже зарегистрировано неэквивалентное действие")
            if not ring_equal(registered, value):
                raise DomainError(f"Ключ {key!r}: значение {value} не совпадает с {registered}")
            return key

        existing = self.find(action)
        if existing is not None:
            _, registered = self._entries[existing]
            if not ring_equal(registered, value):
                raise DomainError(f"Класс уже зарегистрирован под ключом {existing!r} с другим значением")
            return existing

        self._entries[key] = (action, value)
        self._order.append(key)
        logger.debug(f"📌 {self}: класс {key!r} степени {action.degree} = {value}")
        return key

    def keys(self) -> Tuple[str, ...]:
        return tuple(self._order)

    def _check_handle(self, handle: Handle):
        if not isinstance(handle, TransitiveAction):
            raise HandleError(f"Для общего домена хэндл - транзитивное действие, получено {handle!r}")

    def _memo_key(self, handle: TransitiveAction):
        return _action_key(handle)

    def _compute(self, action: TransitiveAction) -> RingElem:
        key = self.find(action)
        if key is None:
            raise HandleError(f"Класс подгрупп индекса {action.degree} не зарегистрирован в {self}")
        return self._entries[key][1]


class TranslatedClassFunction(ClassFunction):
    """
    Классовая функция домена Z или ZxZ, прочитанная на хэндлах общего домена.

    Транзитивное действие ℤ степени k - это подгруппа индекса k; транзитивное
    действие ℤ⊕ℤ переводится в ЭНФ стабилизатора базовой точки.
    """

    domain = DOMAIN_GENERAL

    def __init__(self, base: ClassFunction):
        if base.domain == DOMAIN_Z:
            self.presentation = integers()
        elif base.domain == DOMAIN_ZZ:
            self.presentation = integer_lattice()
        else:
            raise DomainError("Перевод хэндлов определен только для доменов Z и ZxZ")
        super().__init__(f"{base}@general")
        self.base = base
        self.numeric = base.numeric

    def _check_handle(self, handle: Handle):
        if not isinstance(handle, TransitiveAction):
            raise HandleError(f"Ожидалось транзитивное действие, получено {handle!r}")
        if handle.presentation.generator_count != self.presentation.generator_count:
            raise HandleError(f"Действие не является действием группы {self.presentation}")

    def _memo_key(self, handle: TransitiveAction):
        return _action_key(handle) + (handle.basepoint,)

    def _compute(self, action: TransitiveAction) -> RingElem:
        return self.base.value(translate_handle(action, self.base.domain))


def translate_handle(action: TransitiveAction, domain: str) -> Union[int, HnfMatrix]:
    """Хэндл общего домена -> индекс (Z) или ЭНФ (ZxZ)"""
    if domain == DOMAIN_Z:
        return action.degree
    if domain == DOMAIN_ZZ:
        x, y = action.action.images
        return orbit_hnf(x, y, tuple(range(action.degree)), action.basepoint)
    raise DomainError(f"Перевод хэндлов в домен {domain} не определен")


def cf_value(function: ClassFunction, handle: Handle) -> RingElem:
    """Значение классовой функции на хэндле подгруппы"""
    return function.value(handle)


# === ВСТРОЕННЫЕ ТАБЛИЦЫ ===

def cycle_action(degree: int) -> TransitiveAction:
    """Регулярное действие ℤ на ℤ/k: образующая - длинный цикл"""
    generator = Permutation.from_cycles(degree, tuple(range(degree)))
    return TransitiveAction(Homomorphism(integers(), degree, (generator,)))


def coset_action(h: HnfMatrix) -> TransitiveAction:
    """Действие ℤ⊕ℤ на смежных классах ℤ²/L(h); точка (i, j) с 0 ≤ i < λ, 0 ≤ j < μ"""
    def index(i: int, j: int) -> int:
        shift, j = divmod(j, h.mu)
        i = (i - shift * h.kappa) % h.lam
        return i + j * h.lam

    points = [(i, j) for j in range(h.mu) for i in range(h.lam)]
    a = Permutation(tuple(index(i + 1, j) for i, j in points))
    b = Permutation(tuple(index(i, j + 1) for i, j in points))
    return TransitiveAction(Homomorphism(integer_lattice(), h.index(), (a, b)))


def cyclic_table(max_degree: int, rule: Callable[[int], RingElem] = None) -> TableClassFunction:
    """Таблица для G = ℤ: класс степени k получает z_k (или rule(k))"""
    table = TableClassFunction(integers(), name=f"z_k[k≤{max_degree}]")
    for k in range(1, max_degree + 1):
        table.register(cycle_action(k), rule(k) if rule else Poly.var(z(k)), key=f"Z_{k}")
    return table


def lattice_table(max_index: int) -> TableClassFunction:
    """Таблица для G = ℤ⊕ℤ: класс подрешетки H получает z_{μ,κ,λ}"""
    table = TableClassFunction(integer_lattice(), name=f"z_hnf[n≤{max_index}]")
    for n in range(1, max_index + 1):
        for h in hnf_enumerate(n):
            table.register(coset_action(h), Poly.var(z_hnf(h.mu, h.kappa, h.lam)),
                           key=f"H_{h.mu},{h.kappa},{h.lam}")
    return table


# === РАЗБОР ИЗ JSON ===

def class_function_from_dict(data: Dict[str, Any], presentation: Presentation = None,
                             invariants: Dict[str, Callable[[complex], complex]] = None) -> ClassFunction:
    """
    {"domain": "Z"|"ZxZ"|"general", "kind": "symbolic"|"numeric"|"table"|"constant", ...}

    numeric (ZxZ): {"invariant": имя, "tau": [re, im]}
    table (general): {"entries": [{"images": [[...], ...], "basepoint": 0, "value": ..., "key": ...}]}
    constant: {"value": ...}
    """
    if not isinstance(data, dict):
        raise InputParseError("Классовая функция должна быть JSON-объектом")
    domain = data.get('domain', DOMAIN_GENERAL)
    kind = data.get('kind', 'symbolic')
    if domain not in DOMAINS:
        raise InputParseError(f"domain: ожидается одно из {', '.join(DOMAINS)}, получено {domain!r}")

    if kind == 'constant':
        if 'value' not in data:
            raise InputParseError("constant: требуется поле value")
        return ConstantClassFunction(ring_from_json(data['value']), domain)

    if kind == 'symbolic':
        if domain == DOMAIN_Z:
            return SequenceClassFunction()
        if domain == DOMAIN_ZZ:
            return LatticeClassFunction()
        raise InputParseError("Символьная функция общего домена не определена: используйте kind=table")

    if kind == 'numeric':
        if domain != DOMAIN_ZZ:
            raise InputParseError("Численные функции через τ определены для домена ZxZ")
        name = data.get('invariant', 'klein-j')
        if not invariants or name not in invariants:
            raise InputParseError(f"Неизвестный инвариант: {name!r}")
        tau = data.get('tau')
        if not isinstance(tau, list) or len(tau) != 2:
            raise InputParseError("tau: ожидается [re, im]")
        try:
            point = complex(float(tau[0]), float(tau[1]))
        except (TypeError, ValueError):
            raise InputParseError(f"tau: ожидаются два числа, получено {tau!r}")
        return LatticeClassFunction.from_tau(invariants[name], point, name)

    if kind == 'table':
        if domain != DOMAIN_GENERAL:
            raise InputParseError("Табличные функции определены для общего домена")
        if presentation is None:
            raise InputParseError("Для табличной функции нужно задание группы")
        table = TableClassFunction(presentation)
        entries = data.get('entries', [])
        if not isinstance(entries, list):
            raise InputParseError("entries: ожидается список записей")
        for entry in entries:
            if not isinstance(entry, dict) or 'value' not in entry:
                raise InputParseError(f"Запись таблицы должна быть объектом с полем value: {entry!r}")
            try:
                images = tuple(Permutation(tuple(int(i) for i in p)) for p in entry['images'])
                degree = images[0].degree if images else int(entry['degree'])
                action = TransitiveAction(Homomorphism(presentation, degree, images), int(entry.get('basepoint', 0)))
            except (KeyError, TypeError, IndexError, ValueError) as e:
                raise InputParseError(f"Некорректная запись таблицы: {entry!r} ({e})")
            table.register(action, ring_from_json(entry['value']), entry.get('key'))
        return table

    raise InputParseError(f"kind: неизвестный вид классовой функции {kind!r}")
