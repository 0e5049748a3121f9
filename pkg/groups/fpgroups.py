#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import re
import logging
import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Tuple, Iterator, Optional, Sequence, Any

from config import get_config
from groups.permgroup import Permutation, PermGroup, Orbit, orbits, orbit_of, group_closure
from utils.errors import BoundExceededError, DomainError, InputParseError
from utils.metrics import track_function

logger = logging.getLogger(__name__)

Letter = Tuple[int, int]


@dataclass(frozen=True)
class Word:
    """Слово в образующих: последовательность (индекс образующей, ±1)"""
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        letters = tuple((int(g), int(e)) for g, e in self.letters)
        for generator, exponent in letters:
            if generator < 0 or exponent not in (1, -1):
                raise DomainError(f"Некорректная буква слова: ({generator}, {exponent})")
        object.__setattr__(self, 'letters', letters)

    @classmethod
    def generator(cls, index: int, exponent: int = 1) -> 'Word':
        """Степень образующей, раскрытая в буквы ±1"""
        sign = 1 if exponent >= 0 else -1
        return cls(((index, sign),) * abs(exponent))

    def __mul__(self, other: 'Word') -> 'Word':
        return Word(self.letters + other.letters)

    def inverse(self) -> 'Word':
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __len__(self):
        return len(self.letters)

    def to_string(self, names: Sequence[str]) -> str:
        return ''.join(names[g] if e > 0 else names[g].upper() for g, e in self.letters)


@dataclass(frozen=True)
class Presentation:
    """Конечное задание группы образующими и соотношениями"""
    generator_count: int
    relators: Tuple[Word, ...] = ()
    name: str = ''
    generator_names: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.generator_count < 0:
            raise DomainError("Число образующих не может быть отрицательным")
        names = tuple(self.generator_names) or tuple('abcdefghijklmnopqrstuvwxyz'[:self.generator_count])
        if len(names) != self.generator_count:
            raise DomainError("Число имен образующих не совпадает с числом образующих")
        object.__setattr__(self, 'generator_names', names)
        for relator in self.relators:
            for generator, _ in relator.letters:
                if generator >= self.generator_count:
                    raise DomainError(f"Соотношение ссылается на образующую {generator} вне диапазона")

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'generators': list(self.generator_names),
            'relators': [r.to_string(self.generator_names) for r in self.relators],
        }

    def __str__(self):
        return self.name or f"<{self.generator_count} образующих, {len(self.relators)} соотношений>"


def word_evaluate(word: Word, images: Sequence[Permutation], degree: int = None) -> Permutation:
    """φ(w) = φ(g1)∘φ(g2)∘…, перестановка, соответствующая слову"""
    if degree is None:
        if not images:
            raise DomainError("Степень не определена: нет образов образующих")
        degree = images[0].degree
    return Permutation(_evaluate_images(word, [p.images for p in images], degree))


def _evaluate_images(word: Word, images: List[Tuple[int, ...]], degree: int) -> Tuple[int, ...]:
    inverses: Dict[int, Tuple[int, ...]] = {}
    result = tuple(range(degree))
    # справа налево: (p∘q)(i) = p(q(i))
    for generator, exponent in reversed(word.letters):
        if generator >= len(images):
            raise DomainError(f"Индекс образующей {generator} вне диапазона")
        if images[generator] is None or len(images[generator]) != degree:
            raise DomainError("Степени образов не совпадают")
        if exponent > 0:
            perm = images[generator]
        else:
            perm = inverses.get(generator)
            if perm is None:
                inverse = [0] * degree
                for point, image in enumerate(images[generator]):
                    inverse[image] = point
                perm = inverses[generator] = tuple(inverse)
        result = tuple(perm[i] for i in result)
    return result


@dataclass(frozen=True)
class Homomorphism:
    """Гомоморфизм φ: G -> Ω, заданный образами образующих"""
    presentation: Presentation
    degree: int
    images: Tuple[Permutation, ...]
    target: Optional[PermGroup] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, 'images', images)
        if len(images) != self.presentation.generator_count:
            raise DomainError(f"Ожидалось {self.presentation.generator_count} образов, получено {len(images)}")
        for image in images:
            if image.degree != self.degree:
                raise DomainError(f"Образ {image} имеет степень {image.degree}, ожидалась {self.degree}")
        raw = [p.images for p in images]
        for relator in self.presentation.relators:
            if _evaluate_images(relator, raw, self.degree) != tuple(range(self.degree)):
                raise DomainError(f"Соотношение {relator.to_string(self.presentation.generator_names)} не выполняется")

    def evaluate(self, word: Word) -> Permutation:
        return Permutation(_evaluate_images(word, [p.images for p in self.images], self.degree))

    def orbits(self) -> Tuple[Orbit, ...]:
        return orbits(self.images, self.degree)

    def image_group(self, bound: int = None) -> PermGroup:
        return group_closure(self.images, self.degree, bound)

    def conjugate(self, alpha: Permutation) -> 'Homomorphism':
        """φ^α : g -> α⁻¹ φ(g) α"""
        inverse = alpha.inverse()
        return Homomorphism(self.presentation, self.degree,
                            tuple(inverse * image * alpha for image in self.images), self.target)

    def to_dict(self) -> Dict[str, Any]:
        return {'degree': self.degree, 'images': [p.to_list() for p in self.images]}


@dataclass(frozen=True)
class TransitiveAction:
    """Транзитивное действие - хэндл для стабилизатора точки H_ξ"""
    action: Homomorphism
    basepoint: int = 0
    relabeling: Tuple[int, ...] = ()

    def __post_init__(self):
        if not 0 <= self.basepoint < self.action.degree:
            raise DomainError(f"Базовая точка {self.basepoint} вне [0, {self.action.degree})")
        if len(self.action.orbits()) != 1:
            raise DomainError("Действие не транзитивно")
        if not self.relabeling:
            object.__setattr__(self, 'relabeling', tuple(range(self.action.degree)))

    @property
    def degree(self) -> int:
        return self.action.degree

    @property
    def presentation(self) -> Presentation:
        return self.action.presentation

    def to_dict(self) -> Dict[str, Any]:
        data = self.action.to_dict()
        data['basepoint'] = self.basepoint
        data['relabeling'] = list(self.relabeling)
        return data


def _work_bound(bound: Optional[int]) -> int:
    return bound if bound is not None else get_config().work_bound


def iter_hom_images(presentation: Presentation, group: PermGroup, bound: int = None) -> Iterator[Tuple[Permutation, ...]]:
    """Кортежи образов, удовлетворяющие всем соотношениям, в детерминированном порядке"""
    k = presentation.generator_count
    work = group.order ** k * max(1, len(presentation.relators))
    limit = _work_bound(bound)
    if work > limit:
        raise BoundExceededError(f"перебор гомоморфизмов {presentation}→{group}", work, limit)

    identity = tuple(range(group.degree))
    relators = presentation.relators
    for candidate in itertools.product(group.elements, repeat=k):
        raw = [p.images for p in candidate]
        if all(_evaluate_images(r, raw, group.degree) == identity for r in relators):
            yield candidate


@track_function("enumerate_homs")
def enumerate_homs(presentation: Presentation, group: PermGroup, bound: int = None) -> List[Homomorphism]:
    """Все гомоморфизмы G -> Ω"""
    homs = [Homomorphism(presentation, group.degree, images, group)
            for images in iter_hom_images(presentation, group, bound)]
    logger.debug(f"🔗 Гомоморфизмов {presentation}→{group}: {len(homs)}")
    return homs


def count_homs(presentation: Presentation, group: PermGroup, bound: int = None) -> int:
    """#Hom(G, Ω) без материализации списка"""
    return sum(1 for _ in iter_hom_images(presentation, group, bound))


def orbit_stabilizer_action(phi: Homomorphism, orbit: Sequence[int], basepoint: int = None) -> TransitiveAction:
    """Ограничение φ на орбиту ξ (перенумерация по возрастанию) с базовой точкой ξ*"""
    points = tuple(sorted(orbit))
    if not points:
        raise DomainError("Пустая орбита")
    if basepoint is None:
        basepoint = points[0]
    if basepoint not in points:
        raise DomainError(f"Базовая точка {basepoint} не лежит в орбите {list(points)}")
    if orbit_of(basepoint, phi.images) != points:
        raise DomainError(f"{list(points)} не является орбитой образа φ")

    index = {point: i for i, point in enumerate(points)}
    restricted = tuple(Permutation(tuple(index[image.images[p]] for p in points)) for image in phi.images)
    action = Homomorphism(phi.presentation, len(points), restricted)
    return TransitiveAction(action, index[basepoint], points)


# === ЗАДАНИЯ ГРУПП ===

_TOKEN = re.compile(r'([A-Za-z])(?:\^(\d+))?')


def parse_word(text: str, names: Sequence[str]) -> Word:
    """Разбор слова: строчная буква - образующая, заглавная - обратная, a^3 - степень"""
    letters: List[Letter] = []
    position = 0
    text = text.replace(' ', '')
    while position < len(text):
        match = _TOKEN.match(text, position)
        if not match:
            raise InputParseError(f"Непонятный символ {text[position]!r} в слове {text!r}")
        letter, power = match.group(1), int(match.group(2) or 1)
        if letter.lower() not in names:
            raise InputParseError(f"Неизвестная образующая {letter!r} в слове {text!r}")
        sign = 1 if letter.islower() else -1
        letters.extend([(names.index(letter.lower()), sign)] * power)
        position = match.end()
    return Word(tuple(letters))


def parse_presentation(data: Dict[str, Any]) -> Presentation:
    """Presentation из JSON {"generators": ["a","b"], "relators": ["abAB"]}"""
    if not isinstance(data, dict):
        raise InputParseError("Задание группы должно быть JSON-объектом")
    names = data.get('generators', [])
    if not isinstance(names, list) or any(not isinstance(n, str) or len(n) != 1 or not n.islower() for n in names):
        raise InputParseError("generators: ожидается список строчных однобуквенных имен")
    if len(set(names)) != len(names):
        raise InputParseError("generators: имена повторяются")
    relators = tuple(parse_word(r, names) for r in data.get('relators', []))
    return Presentation(len(names), relators, data.get('name', ''), tuple(names))


def trivial_presentation() -> Presentation:
    return Presentation(0, (), 'trivial')


def integers() -> Presentation:
    return Presentation(1, (), 'Z')


def integer_lattice() -> Presentation:
    a, b = Word.generator(0), Word.generator(1)
    return Presentation(2, (a * b * a.inverse() * b.inverse(),), 'ZxZ')


def is_integer_lattice(presentation: Presentation) -> bool:
    """Совпадает ли задание с ⟨a, b | aba⁻¹b⁻¹⟩ (имя не учитывается)"""
    return presentation.generator_count == 2 and presentation.relators == integer_lattice().relators


def free_group(rank: int) -> Presentation:
    return Presentation(rank, (), f"F{rank}")


def cyclic_presentation(order: int) -> Presentation:
    return Presentation(1, (Word.generator(0, order),), f"C{order}")


def builtin_presentation(name: str) -> Presentation:
    """Встроенные группы: trivial, Z, ZxZ, F2, F3, C2..C12"""
    if name == 'trivial':
        return trivial_presentation()
    if name == 'Z':
        return integers()
    if name == 'ZxZ':
        return integer_lattice()
    match = re.fullmatch(r'F([1-9])', name)
    if match:
        return free_group(int(match.group(1)))
    match = re.fullmatch(r'C(\d+)', name)
    if match and 2 <= int(match.group(1)) <= 12:
        return cyclic_presentation(int(match.group(1)))
    raise InputParseError(f"Неизвестная встроенная группа: {name!r}")
