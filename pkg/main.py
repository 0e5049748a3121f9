#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
orbifold-toolkit: командная строка.

    python main.py cycle-index S3
    python main.py transform request.json
    python main.py symprod --domain ZxZ --degree 3
    python main.py torus --omega S2 --tau 0.1 1.2 --invariant klein-j
    python main.py census F2 --degree 4
    python main.py verify all
"""

import sys
import logging
import functools
from typing import Any, Dict, Optional

import click

from config import Config, OUTPUT_FORMATS, set_config
from classfun.functions import DOMAIN_GENERAL, DOMAIN_Z, DOMAIN_ZZ, LatticeClassFunction, SequenceClassFunction, \
    class_function_from_dict
from counting.census import census
from symprod.cycle_index import cycle_indicator
from symprod.exponential import expoid_verify, symmetric_product
from torus.modular import INVARIANT_NAMES, builtin_invariants, fundamental_domain_samples, invariant_callback, \
    torus_partition_function
from transform.orbifold import orbifold_transform, transform_at_G, transform_value
from utils.errors import EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION_FAILED, InputParseError, OrbifoldError
from utils.metrics import metrics_collector
from utils.serialization import (dump_json, load_json, parse_group, parse_group_argument, parse_handle,
                                 parse_presentation_spec, ring_to_tsv, rows_to_tsv, series_to_tsv)
from verify.suites import SUITES, run_suites

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def _setup_logging(config: Config):
    """Лог в файл и в stderr; stdout остается за результатами"""
    level = getattr(logging, config.log_level.upper(), logging.INFO)
    root = logging.getLogger()
    if root.handlers:
        root.setLevel(level)
        return
    logging.basicConfig(
        level=level,
        format=LOG_FORMAT,
        handlers=[
            logging.FileHandler(config.log_file, encoding='utf-8'),
            logging.StreamHandler(sys.stderr)
        ]
    )


def _invocation(ctx: click.Context) -> Dict[str, Any]:
    """Команда, ее параметры и глобальные флаги - для воспроизводимости отчета"""
    options = {key: list(value) if isinstance(value, tuple) else value
               for key, value in sorted(ctx.params.items()) if value is not None}
    return {'command': ctx.info_name, 'options': options, 'global': ctx.obj['global']}


def _emit(ctx: click.Context, data: Dict[str, Any], tsv: Optional[str] = None):
    config = ctx.obj['config']
    if config.output_format == 'tsv' and tsv is not None:
        click.echo(tsv, nl=False)
    else:
        click.echo(dump_json(data))


def guarded(func):
    """Ошибки инструментария -> диагностика в stderr и код выхода"""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return func(*args, **kwargs)
        except OrbifoldError as e:
            logger.error(f"❌ {type(e).__name__}: {e}")
            click.echo(f"Ошибка: {e}", err=True)
            ctx.exit(e.exit_code)
    return wrapper


# === ГРУППА КОМАНД ===

@click.group()
@click.option('--bound', type=int, help='Граница перебора элементов групп')
@click.option('--work-bound', type=int, help='Граница перебора гомоморфизмов')
@click.option('--truncate', type=int, help='Порядок усечения q-ряда j-функции (M)')
@click.option('--tol', type=float, help='Допуск численных сравнений')
@click.option('--seed', type=int, help='Seed выборок')
@click.option('--format', 'output_format', type=click.Choice(OUTPUT_FORMATS), help='Формат вывода')
@click.option('--workers', type=int, help='Число потоков verify')
@click.option('--log-level', type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR'], case_sensitive=False))
@click.pass_context
def cli(ctx, bound, work_bound, truncate, tol, seed, output_format, workers, log_level):
    """Орбифолдное преобразование классовых функций: вычисления и проверки"""
    try:
        config = Config().with_overrides(
            enumeration_bound=bound,
            work_bound=work_bound,
            j_order=truncate,
            tolerance=tol,
            random_seed=seed,
            output_format=output_format,
            max_workers=workers,
            log_level=log_level.upper() if log_level else None,
        )
    except ValueError as e:
        click.echo(f"Ошибка конфигурации: {e}", err=True)
        ctx.exit(EXIT_USAGE)
    set_config(config)
    _setup_logging(config)
    logger.debug(str(config))

    ctx.ensure_object(dict)
    ctx.obj['config'] = config
    ctx.obj['global'] = {key: value for key, value in sorted(ctx.params.items()) if value is not None}


# === КОМАНДЫ ===

@cli.command('cycle-index')
@click.argument('group')
@click.pass_context
@guarded
def cycle_index_command(ctx, group):
    """Индикатор циклов группы (имя, выражение 'A wr B' или JSON-файл)"""
    omega = parse_group_argument(group)
    result = cycle_indicator(omega)
    _emit(ctx, result.to_dict(), ring_to_tsv(result.polynomial))


@cli.command('transform')
@click.argument('request', type=click.Path(exists=True, dir_okay=False))
@click.option('--audit', is_flag=True, help='Сводка орбит каждого гомоморфизма (общий домен)')
@click.pass_context
@guarded
def transform_command(ctx, request, audit):
    """Z≀Ω по запросу {"group", "class_function", "omega", "handle"}"""
    data = load_json(request)
    if not isinstance(data, dict) or 'class_function' not in data or 'omega' not in data:
        raise InputParseError("Запрос должен содержать class_function и omega")

    raw_omega = data['omega']
    omegas = [parse_group(spec) for spec in (raw_omega if isinstance(raw_omega, list) else [raw_omega])]
    if not omegas:
        raise InputParseError("omega: пустой список")

    spec = data['class_function']
    domain = spec.get('domain', DOMAIN_GENERAL) if isinstance(spec, dict) else None
    presentation = parse_presentation_spec(data.get('group', domain if domain != DOMAIN_GENERAL else 'trivial'))
    function = class_function_from_dict(spec, presentation, builtin_invariants())

    output: Dict[str, Any] = {'domain': function.domain, 'omega': [str(omega) for omega in omegas]}
    if function.domain == DOMAIN_GENERAL:
        if len(omegas) != 1:
            raise InputParseError("Для общего домена вложенные преобразования не определены")
        result = transform_at_G(presentation, function, omegas[0], audit=audit)
        output.update(result.to_dict())
        _emit(ctx, output, ring_to_tsv(result.value))
        return

    for inner in omegas[:-1]:
        function = orbifold_transform(function, inner)
    handle = parse_handle(data.get('handle'), function.domain)
    value = transform_value(function, omegas[-1], handle)
    output['handle'] = handle.to_dict() if hasattr(handle, 'to_dict') else handle
    output['value'] = value.to_json()
    _emit(ctx, output, ring_to_tsv(value))


@cli.command('symprod')
@click.option('--domain', type=click.Choice([DOMAIN_Z, DOMAIN_ZZ]), default=DOMAIN_Z, show_default=True)
@click.option('--degree', 'n', type=int, default=2, show_default=True, help='n в Z_n = Z≀S_n')
@click.option('--expoid', 'order', type=int, help='Проверить экспоненциальное тождество до p^N')
@click.option('--invariant', type=click.Choice(INVARIANT_NAMES), help='Численная Z через τ (только ZxZ)')
@click.option('--tau', type=(float, float), help='τ = RE + i·IM для численной Z')
@click.pass_context
@guarded
def symprod_command(ctx, domain, n, order, invariant, tau):
    """Симметрическое произведение Z_n (двумя путями) или проверка exp-тождества"""
    if invariant is not None:
        if domain != DOMAIN_ZZ or tau is None:
            raise InputParseError("--invariant требует --domain ZxZ и --tau")
        function = LatticeClassFunction.from_tau(invariant_callback(invariant), complex(*tau), invariant)
    else:
        function = SequenceClassFunction() if domain == DOMAIN_Z else LatticeClassFunction()

    if order is not None:
        report = expoid_verify(function, domain, order)
        _emit(ctx, report.to_dict(), series_to_tsv(list(report.lhs.coefficients)))
        if not report.passed:
            ctx.exit(EXIT_VERIFICATION_FAILED)
        return

    value = symmetric_product(function, domain, n)
    _emit(ctx, {'domain': domain, 'degree': n, 'value': value.to_json()}, ring_to_tsv(value))


@cli.command('torus')
@click.option('--omega', required=True, help='Группа Ω (имя, выражение или JSON-файл)')
@click.option('--tau', required=True, type=(float, float), help='τ = RE + i·IM, IM > 0')
@click.option('--invariant', type=click.Choice(INVARIANT_NAMES), default='klein-j', show_default=True)
@click.option('--samples', type=int, default=0, show_default=True, help='Дополнительные точки фундаментальной области')
@click.pass_context
@guarded
def torus_command(ctx, omega, tau, invariant, samples):
    """Статсумма Z^Ω(τ) перестановочного орбифолда"""
    group = parse_group_argument(omega)
    callback = invariant_callback(invariant, ctx.obj['config'].j_order)
    point = complex(*tau)

    records = []
    for sample in [point] + fundamental_domain_samples(samples, ctx.obj['config'].random_seed):
        value = torus_partition_function(group, sample, callback)
        records.append({'tau': [sample.real, sample.imag], 'value': {'re': value.real, 'im': value.imag}})

    output = {'omega': str(group), 'invariant': invariant, 'value': records[0]['value'],
              'tau': records[0]['tau'], 'samples': records[1:]}
    tsv = rows_to_tsv(['tau_re', 'tau_im', 're', 'im'],
                      [[r['tau'][0], r['tau'][1], r['value']['re'], r['value']['im']] for r in records])
    _emit(ctx, output, tsv)


@cli.command('census')
@click.argument('presentation')
@click.option('--degree', type=int, default=3, show_default=True)
@click.pass_context
@guarded
def census_command(ctx, presentation, degree):
    """Классы эквивалентности Hom(G, S_n): предсказанные и наблюдаемые размеры"""
    spec = load_json(presentation) if presentation.endswith('.json') else presentation
    data = census(parse_presentation_spec(spec), degree)
    _emit(ctx, data.to_dict(), data.to_tsv())
    if not data.passed:
        ctx.exit(EXIT_VERIFICATION_FAILED)


@cli.command('verify')
@click.argument('suites', nargs=-1, required=True, type=click.Choice(SUITES + ('all',)))
@click.pass_context
@guarded
def verify_command(ctx, suites):
    """Приемочные наборы; ненулевой код выхода при любом провале"""
    config = ctx.obj['config']
    reports = run_suites(list(suites), config.max_workers)
    passed = all(report.passed for report in reports)
    output = {
        'invocation': _invocation(ctx),
        'config_hash': config.config_hash(),
        'passed': passed,
        'suites': [report.to_dict() for report in reports],
    }
    tsv = rows_to_tsv(['suite', 'item', 'passed'],
                      [[report.suite, item.name, item.passed] for report in reports for item in report.items])
    _emit(ctx, output, tsv)
    metrics_collector.log_summary()

    if passed:
        logger.info("✅ Все проверки пройдены")
    else:
        logger.error("❌ Есть проваленные проверки")
    ctx.exit(EXIT_OK if passed else EXIT_VERIFICATION_FAILED)


def main():
    """Главная функция"""
    cli(obj={})


if __name__ == "__main__":
    main()
