#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Иерархия исключений и коды выхода CLI"""

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_BOUND_EXCEEDED = 3


class OrbifoldError(Exception):
    """Базовое исключение инструментария"""

    exit_code = EXIT_VERIFICATION_FAILED


class BoundExceededError(OrbifoldError):
    """Превышена граница перебора (никогда не усекаем молча)"""

    exit_code = EXIT_BOUND_EXCEEDED

    def __init__(self, what: str, required: int, bound: int):
        self.what = what
        self.required = required
        self.bound = bound
        super().__init__(f"{what}: требуется {required}, граница {bound}")


class ConsistencyError(OrbifoldError):
    """Два независимых пути вычисления дали разные ответы"""

    exit_code = EXIT_VERIFICATION_FAILED


class InputParseError(OrbifoldError, ValueError):
    """Ошибка разбора входных данных"""

    exit_code = EXIT_USAGE

    def __init__(self, message: str, line: int = None, column: int = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (строка {line}, столбец {column})"
        super().__init__(message)


class HandleError(OrbifoldError, KeyError):
    """Значение классовой функции на данном подгрупповом хэндле не определено"""

    exit_code = EXIT_USAGE

    def __str__(self):
        return str(self.args[0]) if self.args else ''


class DomainError(OrbifoldError, ValueError):
    """Нарушено математическое предусловие операции"""

    exit_code = EXIT_USAGE
