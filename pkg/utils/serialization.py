#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Чтение и запись внешних форматов: JSON-файлы запросов, задания групп
перестановок (JSON или имя), хэндлы подгрупп и TSV-вывод.
"""

import csv
import io
import json
import re
import logging
from pathlib import Path
from typing import Dict, List, Any, Iterable, Sequence, Union

from classfun.ring import RingElem, Poly, format_fraction
from classfun.functions import DOMAIN_Z, DOMAIN_ZZ, DOMAIN_GENERAL
from groups.permgroup import (PermGroup, Permutation, group_closure, symmetric_group, cyclic_group,
                              trivial_group, wreath_product)
from groups.fpgroups import Presentation, builtin_presentation, parse_presentation
from lattices.hnf import HnfMatrix, hnf_from_dict
from utils.errors import InputParseError, DomainError

logger = logging.getLogger(__name__)


# === JSON ===

def parse_json_text(text: str, source: str = '<stdin>') -> Any:
    """JSON с указанием строки и столбца при ошибке разбора"""
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputParseError(f"{source}: некорректный JSON: {e.msg}", e.lineno, e.colno)


def load_json(path: Union[str, Path]) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as e:
        raise InputParseError(f"Не удалось прочитать {path}: {e}")
    logger.debug(f"📂 Загружен {path} ({len(text)} байт)")
    return parse_json_text(text, str(path))


def dump_json(data: Any) -> str:
    """Детерминированный JSON: отсортированные ключи, отступ 2"""
    return json.dumps(data, ensure_ascii=False, indent=2, sort_keys=True)


# === ГРУППЫ ПЕРЕСТАНОВОК ===

_NAMED_GROUP = re.compile(r'(S|C)(\d+)')


def _named_group(name: str, bound: int = None) -> PermGroup:
    name = name.strip().strip('()').strip()
    if name == 'trivial':
        return trivial_group()
    match = _NAMED_GROUP.fullmatch(name)
    if match:
        family, degree = match.group(1), int(match.group(2))
        if family == 'S' and 1 <= degree <= 7:
            return symmetric_group(degree, bound)
        if family == 'C' and 1 <= degree <= 12:
            return cyclic_group(degree, bound)
    raise InputParseError(f"Неизвестная группа перестановок: {name!r} (trivial, S1..S7, C1..C12)")


def parse_group_expression(text: str, bound: int = None) -> PermGroup:
    """'S2', 'C3', 'trivial' или сплетения 'S2 wr C3 wr S2' (левоассоциативно)"""
    parts = [part for part in re.split(r'\s+wr\s+', text.strip()) if part]
    if not parts:
        raise InputParseError("Пустое задание группы")
    group = _named_group(parts[0], bound)
    for part in parts[1:]:
        group = wreath_product(group, _named_group(part, bound), bound)
    return group.with_name(' wr '.join(p.strip() for p in parts)) if len(parts) > 1 else group


def group_from_dict(data: Dict[str, Any], bound: int = None) -> PermGroup:
    """{"degree": d, "generators": [[образы], ...]}"""
    if not isinstance(data, dict):
        raise InputParseError("Группа перестановок задается JSON-объектом или именем")
    try:
        degree = int(data['degree'])
        raw = data.get('generators', [])
        generators = [Permutation(tuple(int(i) for i in images)) for images in raw]
    except (KeyError, TypeError, ValueError) as e:
        raise InputParseError(f"Ожидалось {{\"degree\", \"generators\"}}: {e}")
    except DomainError as e:
        raise InputParseError(str(e))
    if degree < 1:
        raise InputParseError(f"degree должен быть положительным: {degree}")
    return group_closure(generators, degree, bound, name=data.get('name', ''))


def parse_group(spec: Any, bound: int = None) -> PermGroup:
    if isinstance(spec, str):
        return parse_group_expression(spec, bound)
    return group_from_dict(spec, bound)


def parse_group_argument(argument: str, bound: int = None) -> PermGroup:
    """Аргумент CLI: путь к JSON-файлу или имя/выражение группы"""
    path = Path(argument)
    if argument.endswith('.json') or path.is_file():
        return parse_group(load_json(path), bound)
    return parse_group_expression(argument, bound)


def parse_presentation_spec(spec: Any) -> Presentation:
    """Имя встроенной группы или JSON {"generators", "relators"}"""
    if isinstance(spec, str):
        return builtin_presentation(spec)
    return parse_presentation(spec)


# === ХЭНДЛЫ ===

def parse_handle(raw: Any, domain: str) -> Union[int, HnfMatrix, None]:
    """Индекс для Z, {"mu","kappa","lambda"} для ZxZ; для общего домена - только H = G"""
    if raw is None:
        return None
    if domain == DOMAIN_Z:
        if isinstance(raw, bool) or not isinstance(raw, int) or raw < 1:
            raise InputParseError(f"handle для домена Z - положительное целое, получено {raw!r}")
        return raw
    if domain == DOMAIN_ZZ:
        return hnf_from_dict(raw)
    if domain == DOMAIN_GENERAL:
        raise InputParseError("Для общего домена преобразование считается только при H = G (handle не задается)")
    raise InputParseError(f"Неизвестный домен {domain!r}")


# === TSV ===

def rows_to_tsv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, delimiter='\t', lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()


def _monomial_label(monomial) -> str:
    return ' '.join(v.name if e == 1 else f"{v.name}^{e}" for v, e in monomial) or '1'


def ring_to_tsv(value: RingElem) -> str:
    """Многочлен - по терму на строку; число - одна строка re/im"""
    if isinstance(value, Poly):
        rows = []
        for monomial, coefficient in value.sorted_terms():
            rows.append([format_fraction(coefficient), _monomial_label(monomial)])
        return rows_to_tsv(['coeff', 'monomial'], rows)
    return rows_to_tsv(['re', 'im'], [[repr(value.value.real), repr(value.value.imag)]])


def series_to_tsv(coefficients: List[RingElem]) -> str:
    """Усеченный ряд: степень p и терм коэффициента"""
    rows = []
    for power, coefficient in enumerate(coefficients):
        if isinstance(coefficient, Poly):
            for monomial, c in coefficient.sorted_terms():
                rows.append([power, format_fraction(c), _monomial_label(monomial)])
        else:
            rows.append([power, str(coefficient), '1'])
    return rows_to_tsv(['power', 'coeff', 'monomial'], rows)
