#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Учет времени вычислительных ядер: замыкание групп, перебор гомоморфизмов,
преобразования, перепись. Сводка уходит только в лог.
"""

import time
import logging
import functools
import threading
from typing import Dict, Any, Optional
from dataclasses import dataclass

from utils.errors import BoundExceededError

logger = logging.getLogger(__name__)

@dataclass
class KernelMetrics:
    """Счетчики одного ядра"""
    kernel: str
    total_calls: int = 0
    seconds: float = 0.0
    slowest: float = 0.0
    errors: int = 0
    bound_hits: int = 0

    @property
    def avg_time(self) -> float:
        return self.seconds / self.total_calls if self.total_calls else 0.0

    @property
    def success_rate(self) -> float:
        attempts = self.total_calls + self.errors
        return self.total_calls * 100 / attempts if attempts else 0.0

class MetricsCollector:
    """Потокобезопасный сборщик: наборы verify работают в пуле потоков"""

    def __init__(self):
        self.metrics: Dict[str, KernelMetrics] = {}
        self._lock = threading.Lock()

    def track_function(self, function_name: str, func, *args, **kwargs):
        """Вызывает func и учитывает длительность под именем function_name"""
        started = time.perf_counter()
        try:
            result = func(*args, **kwargs)
        except BoundExceededError as e:
            self._record(function_name, time.perf_counter() - started, failed=True, bound_hit=True)
            logger.debug(f"⛔ {function_name}: граница перебора ({e})")
            raise
        except Exception as e:
            self._record(function_name, time.perf_counter() - started, failed=True)
            logger.debug(f"Ошибка в ядре {function_name}: {e}")
            raise

        self._record(function_name, time.perf_counter() - started)
        return result

    def _record(self, function_name: str, elapsed: float, failed: bool = False, bound_hit: bool = False):
        with self._lock:
            metric = self.metrics.setdefault(function_name, KernelMetrics(function_name))
            if failed:
                metric.errors += 1
                metric.bound_hits += int(bound_hit)
                return
            metric.total_calls += 1
            metric.seconds += elapsed
            metric.slowest = max(metric.slowest, elapsed)

    def get_function_metrics(self, function_name: str) -> Optional[KernelMetrics]:
        return self.metrics.get(function_name)

    def get_performance_summary(self) -> Dict[str, Any]:
        """Сводка по всем ядрам, отсортированная по имени"""
        with self._lock:
            items = sorted(self.metrics.items())

        return {
            'total_functions': len(items),
            'total_calls': sum(m.total_calls for _, m in items),
            'total_errors': sum(m.errors for _, m in items),
            'bound_hits': sum(m.bound_hits for _, m in items),
            'functions': {
                name: {
                    'total_calls': m.total_calls,
                    'seconds': round(m.seconds, 3),
                    'avg_time': round(m.avg_time, 4),
                    'slowest': round(m.slowest, 3),
                    'success_rate': round(m.success_rate, 1),
                    'errors': m.errors,
                    'bound_hits': m.bound_hits,
                }
                for name, m in items
            },
        }

    def log_summary(self):
        """Пишет сводку в лог (в отчеты не попадает)"""
        summary = self.get_performance_summary()
        logger.info(f"📈 Ядра: {summary['total_calls']} вызовов, {summary['total_errors']} ошибок, "
                    f"{summary['bound_hits']} упирались в границу")
        for name, data in summary['functions'].items():
            logger.info(f"   • {name}: {data['total_calls']} × {data['avg_time']}s (max {data['slowest']}s)")

    def reset_metrics(self):
        with self._lock:
            self.metrics.clear()

metrics_collector = MetricsCollector()

def track_function(function_name: str):
    """Декоратор: учитывает вызовы функции в общем сборщике"""
    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            return metrics_collector.track_function(function_name, func, *args, **kwargs)
        return wrapper

    return decorator
