#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import logging
import itertools
from collections import deque, Counter
from dataclasses import dataclass, field
from typing import Dict, List, Tuple, Iterable, Optional, Sequence

from config import get_config
from utils.errors import BoundExceededError, DomainError, ConsistencyError
from utils.metrics import track_function

logger = logging.getLogger(__name__)

Orbit = Tuple[int, ...]


@dataclass(frozen=True, order=True)
class Permutation:
    """Перестановка точек {0..degree-1} в виде массива образов: i -> images[i]"""
    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if sorted(images) != list(range(len(images))):
            raise DomainError(f"Массив образов не является биекцией: {list(images)}")
        object.__setattr__(self, 'images', images)

    @classmethod
    def identity(cls, degree: int) -> 'Permutation':
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> 'Permutation':
        """Строит перестановку из циклов, например from_cycles(3, (0, 1, 2))"""
        images = list(range(degree))
        for cycle in cycles:
            for position, point in enumerate(cycle):
                images[point] = cycle[(position + 1) % len(cycle)]
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: 'Permutation') -> 'Permutation':
        return compose(self, other)

    def inverse(self) -> 'Permutation':
        inverse = [0] * len(self.images)
        for point, image in enumerate(self.images):
            inverse[image] = point
        return Permutation(tuple(inverse))

    def is_identity(self) -> bool:
        return all(point == image for point, image in enumerate(self.images))

    def power(self, exponent: int) -> 'Permutation':
        result = Permutation.identity(self.degree)
        base = self if exponent >= 0 else self.inverse()
        for _ in range(abs(exponent)):
            result = compose(base, result)
        return result

    def cycle_type(self) -> Tuple[int, ...]:
        """Длины циклов по убыванию"""
        return tuple(sorted((len(block) for block in orbits([self], self.degree)), reverse=True))

    def to_list(self) -> List[int]:
        return list(self.images)

    def __repr__(self):
        return f"Permutation({list(self.images)})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Композиция (p∘q)(i) = p(q(i))"""
    if len(p.images) != len(q.images):
        raise DomainError(f"Степени не совпадают: {len(p.images)} и {len(q.images)}")
    p_images = p.images
    return Permutation(tuple(p_images[i] for i in q.images))


def _compose_images(p: Tuple[int, ...], q: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(p[i] for i in q)


@dataclass(frozen=True)
class PermGroup:
    """Конечная группа перестановок с перечисленным множеством элементов"""
    degree: int
    generators: Tuple[Permutation, ...]
    elements: Tuple[Permutation, ...] = field(repr=False, compare=False)
    name: str = field(default='', compare=False)
    # Для сплетений: (Ω1, Ω2), точка (x, y) кодируется как x + y·deg(Ω1)
    factors: Optional[Tuple['PermGroup', 'PermGroup']] = field(default=None, repr=False, compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, perm: Permutation) -> bool:
        return perm in self._element_set()

    def _element_set(self) -> frozenset:
        cached = self.__dict__.get('_cached_set')
        if cached is None:
            cached = frozenset(self.elements)
            object.__setattr__(self, '_cached_set', cached)
        return cached

    def is_abelian(self) -> bool:
        return all(compose(a, b) == compose(b, a) for a in self.generators for b in self.generators)

    def with_name(self, name: str) -> 'PermGroup':
        return PermGroup(self.degree, self.generators, self.elements, name, self.factors)

    def to_dict(self) -> Dict:
        return {'degree': self.degree, 'generators': [g.to_list() for g in self.generators]}

    def __str__(self):
        return self.name or f"<{len(self.generators)} образующих, степень {self.degree}, порядок {self.order}>"


def _check_bound(what: str, required: int, bound: Optional[int]):
    limit = bound if bound is not None else get_config().enumeration_bound
    if required > limit:
        raise BoundExceededError(what, required, limit)


@track_function("group_closure")
def group_closure(generators: Iterable[Permutation], degree: int, bound: int = None, name: str = '') -> PermGroup:
    """Замыкание образующих обходом в ширину; элементы упорядочены лексикографически"""
    generators = tuple(generators)
    for generator in generators:
        if generator.degree != degree:
            raise DomainError(f"Образующая {generator} имеет степень {generator.degree}, ожидалась {degree}")

    limit = bound if bound is not None else get_config().enumeration_bound
    identity = tuple(range(degree))
    seen = {identity}
    queue = deque([identity])
    generator_images = [g.images for g in generators]

    while queue:
        current = queue.popleft()
        for generator in generator_images:
            product = _compose_images(generator, current)
            if product not in seen:
                seen.add(product)
                if len(seen) > limit:
                    raise BoundExceededError("перечисление элементов группы", len(seen), limit)
                queue.append(product)

    elements = tuple(Permutation(images) for images in sorted(seen))
    logger.debug(f"🔁 Замыкание: {len(generators)} образующих, степень {degree}, порядок {len(elements)}")
    return PermGroup(degree, generators, elements, name)


def orbits(perms: Iterable[Permutation], degree: int) -> Tuple[Orbit, ...]:
    """Орбиты множества перестановок: блоки отсортированы по минимальному элементу"""
    parent = list(range(degree))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for perm in perms:
        if perm.degree != degree:
            raise DomainError(f"Перестановка степени {perm.degree} в наборе степени {degree}")
        for point, image in enumerate(perm.images):
            a, b = find(point), find(image)
            if a != b:
                parent[max(a, b)] = min(a, b)

    blocks: Dict[int, List[int]] = {}
    for point in range(degree):
        blocks.setdefault(find(point), []).append(point)
    return tuple(tuple(block) for _, block in sorted(blocks.items()))


def orbit_of(point: int, perms: Sequence[Permutation]) -> Orbit:
    """Орбита одной точки"""
    seen = {point}
    queue = deque([point])
    while queue:
        current = queue.popleft()
        for perm in perms:
            image = perm.images[current]
            if image not in seen:
                seen.add(image)
                queue.append(image)
    return tuple(sorted(seen))


@track_function("commuting_pairs")
def commuting_pairs(group: PermGroup) -> List[Tuple[Permutation, Permutation]]:
    """Все упорядоченные пары коммутирующих элементов"""
    elements = group.elements
    images = [e.images for e in elements]
    pairs = []
    for i, x in enumerate(images):
        for j, y in enumerate(images):
            if all(x[y[k]] == y[x[k]] for k in range(len(x))):
                pairs.append((elements[i], elements[j]))
    logger.debug(f"🤝 Коммутирующих пар в группе порядка {group.order}: {len(pairs)}")
    return pairs


def element_centralizer_order(group: PermGroup, x: Permutation) -> int:
    """|C_Ω(x)| прямым перебором"""
    return sum(1 for y in group.elements if compose(x, y) == compose(y, x))


def symmetric_group(degree: int, bound: int = None) -> PermGroup:
    """S_n, порожденная транспозицией и длинным циклом"""
    generators = []
    if degree >= 2:
        generators.append(Permutation.from_cycles(degree, (0, 1)))
    if degree >= 3:
        generators.append(Permutation.from_cycles(degree, tuple(range(degree))))
    return group_closure(generators, degree, bound, name=f"S{degree}")


def cyclic_group(degree: int, bound: int = None) -> PermGroup:
    """C_n, порожденная длинным циклом"""
    generators = [Permutation.from_cycles(degree, tuple(range(degree)))] if degree >= 2 else []
    return group_closure(generators, degree, bound, name=f"C{degree}")


def trivial_group(degree: int = 1) -> PermGroup:
    return group_closure([], degree, name='trivial' if degree == 1 else f"trivial{degree}")


@track_function("centralizer_in_sym")
def centralizer_in_sym(perms: Iterable[Permutation], degree: int, bound: int = None) -> PermGroup:
    """Централизатор набора перестановок в S_degree (перебор S_degree)"""
    perms = [p.images for p in perms]
    total = 1
    for k in range(2, degree + 1):
        total *= k
    _check_bound("перебор симметрической группы", total, bound)

    members = []
    for candidate in itertools.permutations(range(degree)):
        if all(all(candidate[p[k]] == p[candidate[k]] for k in range(degree)) for p in perms):
            members.append(Permutation(candidate))

    # members уже в лексикографическом порядке, это и есть элементы
    return PermGroup(degree, tuple(members), tuple(members), name=f"C_S{degree}")


def _split_wreath(images: Tuple[int, ...], degree1: int, degree2: int) -> Tuple[List[Tuple[int, ...]], Tuple[int, ...]]:
    """Раскладывает перестановку X×Y вида λ≀ω на (λ(y) для всех y, ω)"""
    omega = tuple(images[y * degree1] // degree1 for y in range(degree2))
    lam = [tuple(images[x + y * degree1] % degree1 for x in range(degree1)) for y in range(degree2)]
    return lam, omega


def wreath_element(lam: Sequence[Permutation], omega: Permutation, degree1: int) -> Permutation:
    """λ≀ω : (x, y) -> (λ(y)x, ωy)"""
    degree2 = omega.degree
    images = [0] * (degree1 * degree2)
    for y in range(degree2):
        fiber = lam[y].images
        target = omega.images[y] * degree1
        for x in range(degree1):
            images[x + y * degree1] = fiber[x] + target
    return Permutation(tuple(images))


def _check_wreath_multiplication(omega1: PermGroup, omega2: PermGroup):
    """Проверка соглашения о композиции на образующих сплетения"""
    degree1, degree2 = omega1.degree, omega2.degree
    samples_lam = [[g] * degree2 for g in omega1.generators] or [[Permutation.identity(degree1)] * degree2]
    samples_omega = list(omega2.generators) or [Permutation.identity(degree2)]

    for lam1, w1 in itertools.product(samples_lam, samples_omega):
        for lam2, w2 in itertools.product(samples_lam, samples_omega):
            # вносим зависимость от y, чтобы проверка не вырождалась
            lam1_y = [lam1[y] if y % 2 == 0 else Permutation.identity(degree1) for y in range(degree2)]
            left = compose(wreath_element(lam1_y, w1, degree1), wreath_element(lam2, w2, degree1))
            twisted = [compose(lam1_y[w2.images[y]], lam2[y]) for y in range(degree2)]
            right = wreath_element(twisted, compose(w1, w2), degree1)
            if left != right:
                raise ConsistencyError("Нарушено правило умножения сплетения: неверное соглашение о композиции")


@track_function("wreath_product")
def wreath_product(omega1: PermGroup, omega2: PermGroup, bound: int = None) -> PermGroup:
    """Сплетение Ω1≀Ω2 на X×Y, точка (x, y) кодируется как x + y·deg(Ω1)"""
    degree1, degree2 = omega1.degree, omega2.degree
    order = omega1.order ** degree2 * omega2.order
    _check_bound(f"сплетение {omega1}≀{omega2}", order, bound)
    _check_wreath_multiplication(omega1, omega2)

    identity1 = Permutation.identity(degree1)
    identity2 = Permutation.identity(degree2)
    generators = []
    # g в слое одного представителя каждой орбиты Ω2, иначе при нетранзитивной Ω2 порождается не все
    representatives = [block[0] for block in orbits(omega2.generators, degree2)]
    for g in omega1.generators:
        for y0 in representatives:
            generators.append(wreath_element([g if y == y0 else identity1 for y in range(degree2)],
                                             identity2, degree1))
    for w in omega2.generators:
        generators.append(wreath_element([identity1] * degree2, w, degree1))

    elements = []
    for lam in itertools.product(omega1.elements, repeat=degree2):
        for omega in omega2.elements:
            elements.append(wreath_element(lam, omega, degree1))
    elements.sort()

    name = f"({omega1})wr({omega2})" if omega1.name and omega2.name else ''
    logger.debug(f"🧩 Сплетение {omega1}≀{omega2}: степень {degree1 * degree2}, порядок {len(elements)}")
    return PermGroup(degree1 * degree2, tuple(generators), tuple(elements), name, (omega1, omega2))


def orbit_size_multiset(group: PermGroup) -> Tuple[int, ...]:
    return tuple(sorted(len(block) for block in orbits(group.generators, group.degree)))


def cycle_type_census(group: PermGroup) -> Counter:
    """Мультимножество цикловых типов элементов (инвариант эквивалентности действий)"""
    return Counter(element.cycle_type() for element in group.elements)


def wreath_equivalent(left: PermGroup, right: PermGroup) -> bool:
    """Необходимое условие эквивалентности действий: степень, порядок, орбиты, цикловые типы"""
    return (left.degree == right.degree and left.order == right.order
            and orbit_size_multiset(left) == orbit_size_multiset(right)
            and cycle_type_census(left) == cycle_type_census(right))
