#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import os
import copy
import json
import hashlib
from typing import Dict, Any, Optional

from dotenv import load_dotenv

# Загружаем переменные окружения из .env файла
load_dotenv()

OUTPUT_FORMATS = ('json', 'tsv')
CENSUS_HARD_CAP = 6


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name, '')
    if not raw:
        return default
    try:
        return int(raw.replace('_', ''))
    except ValueError:
        raise ValueError(f"{name} должен быть целым числом, получено: {raw!r}")


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name, '')
    if not raw:
        return default
    try:
        return float(raw)
    except ValueError:
        raise ValueError(f"{name} должен быть числом, получено: {raw!r}")


class Config:
    """Конфигурация запуска (границы перебора, порядки усечения, допуски)"""

    def __init__(self):
        # Границы перебора
        self.enumeration_bound = _env_int('ENUMERATION_BOUND', 2_000_000)
        self.work_bound = _env_int('WORK_BOUND', 100_000_000)
        self.wreath_pair_bound = _env_int('WREATH_PAIR_BOUND', 10_000)

        # Симметрические произведения и перепись классов
        self.symmetric_max_degree = _env_int('SYMMETRIC_MAX_DEGREE', 7)
        self.census_max_degree = _env_int('CENSUS_MAX_DEGREE', 5)

        # Порядки усечения степенных рядов
        self.expoid_order_z = _env_int('EXPOID_ORDER_Z', 6)
        self.expoid_order_zz = _env_int('EXPOID_ORDER_ZZ', 4)
        self.j_order = _env_int('J_ORDER', 20)

        # Численный путь
        self.tolerance = _env_float('NUMERIC_TOLERANCE', 1e-9)

        # Вывод и воспроизводимость
        self.output_format = os.getenv('OUTPUT_FORMAT', 'json').lower()
        self.random_seed = _env_int('RANDOM_SEED', 20061)
        self.max_workers = _env_int('MAX_WORKERS', 4)

        # Логирование
        self.log_level = os.getenv('LOG_LEVEL', 'INFO')
        self.log_file = os.getenv('LOG_FILE', 'orbifold.log')

        self.validate()

    def validate(self):
        """Валидация конфигурации"""
        errors = []

        for name in ('enumeration_bound', 'work_bound', 'wreath_pair_bound', 'symmetric_max_degree',
                     'census_max_degree', 'expoid_order_z', 'expoid_order_zz', 'j_order', 'max_workers'):
            if getattr(self, name) <= 0:
                errors.append(f"{name} должен быть положительным")

        if self.census_max_degree > CENSUS_HARD_CAP:
            errors.append(f"census_max_degree не может превышать {CENSUS_HARD_CAP}")

        if not (0 < self.tolerance <= 1e-3):
            errors.append("tolerance должен лежать в интервале (0, 1e-3]")

        if self.output_format not in OUTPUT_FORMATS:
            errors.append(f"output_format должен быть одним из {', '.join(OUTPUT_FORMATS)}")

        if errors:
            raise ValueError("Ошибки конфигурации:\n" + "\n".join(errors))

        return True

    def with_overrides(self, **overrides) -> 'Config':
        """Копия конфигурации с переопределенными полями (флаги CLI)"""
        updated = copy.copy(self)
        for key, value in overrides.items():
            if value is None:
                continue
            if not hasattr(updated, key):
                raise ValueError(f"Неизвестный параметр конфигурации: {key}")
            setattr(updated, key, value)
        updated.validate()
        return updated

    def to_dict(self) -> Dict[str, Any]:
        """Преобразует конфигурацию в словарь (без путей к логам)"""
        return {
            'enumeration_bound': self.enumeration_bound,
            'work_bound': self.work_bound,
            'wreath_pair_bound': self.wreath_pair_bound,
            'symmetric_max_degree': self.symmetric_max_degree,
            'census_max_degree': self.census_max_degree,
            'expoid_order_z': self.expoid_order_z,
            'expoid_order_zz': self.expoid_order_zz,
            'j_order': self.j_order,
            'tolerance': self.tolerance,
            'output_format': self.output_format,
            'random_seed': self.random_seed,
        }

    def config_hash(self) -> str:
        """Хэш конфигурации для воспроизводимости отчетов"""
        payload = json.dumps(self.to_dict(), sort_keys=True)
        return hashlib.md5(payload.encode()).hexdigest()

    def __str__(self):
        """Строковое представление конфигурации"""
        return f"""
📋 Конфигурация orbifold-toolkit:
├── 🔢 Граница перебора элементов: {self.enumeration_bound}
├── ⚙️ Граница работы (вычислений слов): {self.work_bound}
├── 🧮 Макс. степень S_n: {self.symmetric_max_degree}
├── 📊 Макс. степень переписи: {self.census_max_degree}
├── ✂️ Усечение ряда: Z→p^{self.expoid_order_z}, ZxZ→p^{self.expoid_order_zz}, j→q^{self.j_order}
├── 🎯 Допуск: {self.tolerance}
├── 🎲 Seed: {self.random_seed}
├── 🧵 Потоков: {self.max_workers}
└── 📝 Log Level: {self.log_level}
        """.strip()


_active_config: Optional[Config] = None


def get_config() -> Config:
    """Возвращает активную конфигурацию процесса (создается лениво)"""
    global _active_config
    if _active_config is None:
        _active_config = Config()
    return _active_config


def set_config(config: Config):
    """Заменяет активную конфигурацию (CLI после разбора флагов)"""
    global _active_config
    config.validate()
    _active_config = config
