#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Кольцо коэффициентов R: точные многочлены над ℚ и комплексные числа.

Переменные трех семейств: t_i (индикатор циклов), z_n (значения на ℤ)
и z_{μ,κ,λ} (значения на подрешетках ℤ⊕ℤ в ЭНФ).
"""

import re
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple, Union, Mapping, Iterable, Any

from config import get_config
from utils.errors import DomainError, InputParseError

logger = logging.getLogger(__name__)

# Порядок семейств в мономах: t < z_n < z_{μ,κ,λ}
FAMILY_T = 0
FAMILY_Z = 1
FAMILY_HNF = 2


@dataclass(frozen=True, order=True)
class Variable:
    """Имя переменной: семейство и индексы"""
    family: int
    indices: Tuple[int, ...]

    def __post_init__(self):
        if self.family in (FAMILY_T, FAMILY_Z):
            if len(self.indices) != 1 or self.indices[0] < 1:
                raise DomainError(f"Индекс переменной должен быть положительным: {self.indices}")
        elif self.family == FAMILY_HNF:
            if len(self.indices) != 3:
                raise DomainError(f"z_{{μ,κ,λ}} требует трех индексов: {self.indices}")
            mu, kappa, lam = self.indices
            if mu < 1 or lam < 1 or not 0 <= kappa < lam:
                raise DomainError(f"Некорректные индексы z_{{{mu},{kappa},{lam}}}")
        else:
            raise DomainError(f"Неизвестное семейство переменных: {self.family}")

    @property
    def name(self) -> str:
        if self.family == FAMILY_T:
            return f"t_{self.indices[0]}"
        if self.family == FAMILY_Z:
            return f"z_{self.indices[0]}"
        return "z_{" + ",".join(str(i) for i in self.indices) + "}"

    def __str__(self):
        return self.name

    def __repr__(self):
        return f"Variable({self.name})"


def t(i: int) -> Variable:
    return Variable(FAMILY_T, (i,))


def z(n: int) -> Variable:
    return Variable(FAMILY_Z, (n,))


def z_hnf(mu: int, kappa: int, lam: int) -> Variable:
    return Variable(FAMILY_HNF, (mu, kappa, lam))


_NAME_PATTERNS = (
    (re.compile(r't_(\d+)$'), FAMILY_T),
    (re.compile(r'z_(\d+)$'), FAMILY_Z),
    (re.compile(r'z_\{(\d+),(\d+),(\d+)\}$'), FAMILY_HNF),
)


def parse_variable(name: str) -> Variable:
    """Обратное к Variable.name"""
    for pattern, family in _NAME_PATTERNS:
        match = pattern.match(name)
        if match:
            try:
                return Variable(family, tuple(int(g) for g in match.groups()))
            except DomainError as e:
                raise InputParseError(str(e))
    raise InputParseError(f"Неизвестное имя переменной: {name!r}")


Monomial = Tuple[Tuple[Variable, int], ...]
Scalar = Union[int, Fraction]


def _mul_monomials(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    exponents = dict(m1)
    for variable, exponent in m2:
        exponents[variable] = exponents.get(variable, 0) + exponent
    return tuple(sorted(exponents.items()))


def _monomial_order_key(monomial: Monomial):
    """Градуированный лексикографический порядок: сначала старшая степень"""
    degree = sum(e for _, e in monomial)
    return -degree, tuple((v, -e) for v, e in monomial)


def format_fraction(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(raw: Any) -> Fraction:
    if isinstance(raw, bool):
        raise InputParseError(f"Ожидалось рациональное число, получено {raw!r}")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, str):
        try:
            return Fraction(raw.strip())
        except (ValueError, ZeroDivisionError):
            raise InputParseError(f"Некорректная дробь: {raw!r}")
    raise InputParseError(f"Ожидалось рациональное число, получено {raw!r}")


class Poly:
    """Многочлен с рациональными коэффициентами: {моном: коэффициент}, нули не хранятся"""

    __slots__ = ('terms', '_hash')

    def __init__(self, terms: Mapping[Monomial, Scalar] = None):
        cleaned: Dict[Monomial, Fraction] = {}
        for monomial, coefficient in (terms or {}).items():
            coefficient = Fraction(coefficient)
            if coefficient:
                cleaned[monomial] = coefficient
        self.terms = cleaned
        self._hash = None

    # === КОНСТРУКТОРЫ ===

    @classmethod
    def constant(cls, value: Scalar) -> 'Poly':
        return cls({(): value})

    @classmethod
    def zero(cls) -> 'Poly':
        return cls()

    @classmethod
    def one(cls) -> 'Poly':
        return cls({(): 1})

    @classmethod
    def var(cls, variable: Variable, exponent: int = 1) -> 'Poly':
        if exponent < 0:
            raise DomainError("Отрицательные степени не поддерживаются")
        if exponent == 0:
            return cls.one()
        return cls({((variable, exponent),): 1})

    # === АРИФМЕТИКА ===

    @staticmethod
    def _coerce(other) -> 'Poly':
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Poly.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        result = dict(self.terms)
        for monomial, coefficient in other.terms.items():
            result[monomial] = result.get(monomial, 0) + coefficient
        return Poly(result)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        result: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                monomial = _mul_monomials(m1, m2)
                result[monomial] = result.get(monomial, 0) + c1 * c2
        return Poly(result)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise DomainError(f"Степень должна быть неотрицательным целым: {exponent}")
        result = Poly.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def div_int(self, divisor: Scalar) -> 'Poly':
        """Деление на ненулевое рациональное (R - ℚ-алгебра)"""
        divisor = Fraction(divisor)
        if divisor == 0:
            raise ZeroDivisionError("Деление многочлена на ноль")
        return Poly({m: c / divisor for m, c in self.terms.items()})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.div_int(other)
        return NotImplemented

    # === СРАВНЕНИЕ И СВОЙСТВА ===

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def variables(self) -> Tuple[Variable, ...]:
        return tuple(sorted({v for m in self.terms for v, _ in m}))

    def coefficient_sum(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda item: _monomial_order_key(item[0]))

    def substitute(self, values: Mapping[Variable, 'RingElem']) -> 'RingElem':
        """Подстановка значений вместо переменных; отсутствующие остаются символами"""
        numeric = any(isinstance(v, ComplexNum) for v in values.values())
        total = ComplexNum(0) if numeric else Poly.zero()
        powers: Dict[Tuple[Variable, int], RingElem] = {}
        for monomial, coefficient in self.sorted_terms():
            term = ComplexNum(complex(coefficient)) if numeric else Poly.constant(coefficient)
            for variable, exponent in monomial:
                key = (variable, exponent)
                if key not in powers:
                    base = values.get(variable, Poly.var(variable))
                    powers[key] = ring_power(base, exponent)
                term = term * powers[key]
            total = total + term
        return total

    # === СЕРИАЛИЗАЦИЯ ===

    def to_json(self) -> List[Dict[str, Any]]:
        return [
            {'coeff': format_fraction(c), 'monomial': {v.name: e for v, e in m}}
            for m, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data: Iterable[Dict[str, Any]]) -> 'Poly':
        if not isinstance(data, list):
            raise InputParseError("Многочлен должен быть списком термов")
        terms: Dict[Monomial, Fraction] = {}
        for entry in data:
            if not isinstance(entry, dict) or 'coeff' not in entry:
                raise InputParseError(f"Некорректный терм многочлена: {entry!r}")
            exponents: Dict[Variable, int] = {}
            for name, exponent in (entry.get('monomial') or {}).items():
                if not isinstance(exponent, int) or exponent < 1:
                    raise InputParseError(f"Показатель {name} должен быть целым ≥ 1")
                exponents[parse_variable(name)] = exponent
            monomial = tuple(sorted(exponents.items()))
            terms[monomial] = terms.get(monomial, 0) + parse_fraction(entry['coeff'])
        return cls(terms)

    def to_sympy(self):
        """Выражение sympy (для независимых проверок)"""
        import sympy
        expression = sympy.Integer(0)
        for monomial, coefficient in self.terms.items():
            term = sympy.Rational(coefficient.numerator, coefficient.denominator)
            for variable, exponent in monomial:
                term *= sympy.Symbol(variable.name) ** exponent
            expression += term
        return expression

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for monomial, coefficient in self.sorted_terms():
            factors = [v.name if e == 1 else f"{v.name}^{e}" for v, e in monomial]
            if not factors:
                parts.append(str(coefficient))
            elif coefficient == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{coefficient}*" + "*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({self})"


@dataclass(frozen=True)
class ComplexNum:
    """Численное значение в ℂ (двойная точность)"""
    value: complex

    def __post_init__(self):
        object.__setattr__(self, 'value', complex(self.value))

    @staticmethod
    def _coerce(other) -> 'ComplexNum':
        if isinstance(other, ComplexNum):
            return other
        if isinstance(other, Poly):
            if not other.is_constant():
                raise DomainError("Нельзя смешивать символьный многочлен и численное значение")
            return ComplexNum(complex(other.constant_term()))
        if isinstance(other, (int, float, complex, Fraction)) and not isinstance(other, bool):
            return ComplexNum(complex(other))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ComplexNum(self.value + other.value)

    __radd__ = __add__

    def __neg__(self):
        return ComplexNum(-self.value)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ComplexNum(self.value - other.value)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ComplexNum(other.value - self.value)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ComplexNum(self.value * other.value)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        return ComplexNum(self.value ** exponent)

    def div_int(self, divisor: Scalar) -> 'ComplexNum':
        if divisor == 0:
            raise ZeroDivisionError("Деление на ноль")
        return ComplexNum(self.value / complex(divisor))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.div_int(other.value)

    def is_zero(self) -> bool:
        return self.value == 0

    def is_close(self, other, tolerance: float = None) -> bool:
        """Сравнение с относительным допуском (абсолютным около нуля)"""
        other = self._coerce(other)
        if tolerance is None:
            tolerance = get_config().tolerance
        scale = max(abs(self.value), abs(other.value), 1.0)
        return abs(self.value - other.value) <= tolerance * scale

    def to_json(self) -> Dict[str, float]:
        return {'re': self.value.real, 'im': self.value.imag}

    def __str__(self):
        return f"{self.value.real:.12g}{self.value.imag:+.12g}i"


RingElem = Union[Poly, ComplexNum]


def ring_power(base: RingElem, exponent: int) -> RingElem:
    return base ** exponent


def ring_product(factors: Iterable[RingElem], numeric: bool = False) -> RingElem:
    result = ComplexNum(1) if numeric else Poly.one()
    for factor in factors:
        result = result * factor
    return result


def ring_equal(left: RingElem, right: RingElem, tolerance: float = None) -> bool:
    """Точное равенство многочленов или близость комплексных значений"""
    if isinstance(left, ComplexNum) or isinstance(right, ComplexNum):
        left = left if isinstance(left, ComplexNum) else ComplexNum._coerce(left)
        return left.is_close(right, tolerance)
    return left == right


def is_zero(value: RingElem) -> bool:
    return value.is_zero()


def ring_to_json(value: RingElem) -> Any:
    return value.to_json()


def ring_from_json(data: Any) -> RingElem:
    """Значение из JSON: целое, "p/q", список термов или {"re", "im"}"""
    if isinstance(data, dict):
        if set(data) != {'re', 'im'}:
            raise InputParseError(f"Комплексное значение задается как {{\"re\", \"im\"}}: {data!r}")
        try:
            return ComplexNum(complex(float(data['re']), float(data['im'])))
        except (TypeError, ValueError):
            raise InputParseError(f"Некорректное комплексное значение: {data!r}")
    if isinstance(data, float):
        return ComplexNum(data)
    if isinstance(data, list):
        return Poly.from_json(data)
    return Poly.constant(parse_fraction(data))
