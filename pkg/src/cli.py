# -*- coding: utf-8 -*-
"""Frontend de línea de comandos: opnorm | tong | chain | verify <suite>.

Códigos de salida: 0 = ok, 1 = la suite encontró violaciones,
2 = uso o entrada inválida.
"""
import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from src.common.codec import dumps17, operator_from_dict, report_to_json, space_to_dict
from src.common.errors import InvalidInputError, OplabError
from src.common.types import SolverConfig
from src.norms import opnorm, sampling_oracle
from src.operators import agreement_mask, tong_sequence
from src.spaces import SpaceSpec
from src.utils import log
from src.verify.params import build_params
from src.verify.report import write_csv, write_json
from src.verify.suites import SUITES

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_USAGE = 2


class _Parser(argparse.ArgumentParser):
    """argparse que lanza en lugar de salir, para que run() devuelva el código."""

    def error(self, message):
        raise InvalidInputError(f'usage: {message}')


def parse_space(s: str) -> SpaceSpec:
    return SpaceSpec.parse(s)


def _add_solver_flags(p: argparse.ArgumentParser):
    g = p.add_argument_group('solver')
    g.add_argument('--restarts', type=int, help='reinicios aleatorios por selección (defecto 32)')
    g.add_argument('--max-iters', type=int, help='máximo de iteraciones del ascenso (defecto 10000)')
    g.add_argument('--tol', type=float, help='umbral de estancamiento (defecto 1e-10)')
    g.add_argument('--grid-cert', action='store_true', default=None, help='cota superior por red si m <= 3')
    g.add_argument('--grid-resolution', type=int, help='celdas por lado de la red (defecto 64)')


def _solver_values(args, seed: Optional[int] = None) -> dict:
    vals = {
        'restarts': args.restarts,
        'max_iters': args.max_iters,
        'tol': args.tol,
        'grid_cert': args.grid_cert,
        'grid_resolution': args.grid_resolution,
        'seed': seed,
    }
    return {k: v for k, v in vals.items() if v is not None}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog='oplab', description='Laboratorio de normas de operadores sobre sumas ℓp de bloques ℓ₁')
    sub = parser.add_subparsers(dest='command', required=True, parser_class=_Parser)

    p = sub.add_parser('opnorm', help='norma de un operador leído de JSON')
    p.add_argument('--input', required=True, help="JSON del operador ('-' = stdin)")
    p.add_argument('--space', help='p=<decimal|inf>;blocks=<n1>,... (dominio y codominio si el JSON no los trae)')
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--samples', type=int, help='además, cota inferior por muestreo con K vectores')
    _add_solver_flags(p)

    p = sub.add_parser('tong', help='traza S(1)..S(m) de la recursión de promedios')
    p.add_argument('--input', required=True, help="JSON del operador ('-' = stdin)")
    p.add_argument('--space', help='espacio si el JSON no lo trae')
    p.add_argument('--print-mask', action='store_true', help='imprime también las máscaras de coincidencia')

    p = sub.add_parser('chain', help='demo ℓ₁^m → D_m → B(E_m), una fila por caso')
    _add_suite_flags(p, chain=True)

    p = sub.add_parser('verify', help='suites de propiedades')
    vsub = p.add_subparsers(dest='suite', required=True, parser_class=_Parser)
    for name in SUITES:
        _add_suite_flags(vsub.add_parser(name, help=f'suite {name}'), chain=(name == 'chain'))
    return parser


def _add_suite_flags(p: argparse.ArgumentParser, chain: bool = False):
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--cases', type=int, help='número de casos (solver: por grupo)')
    p.add_argument('--case', type=int, help='ejecuta solo el caso k (misma semilla derivada)')
    p.add_argument('--ensemble', choices=['uniform', 'heavy'])
    p.add_argument('--scale', type=float)
    p.add_argument('--out', help='ruta del reporte JSON (defecto: stdout)')
    p.add_argument('--csv', help='ruta del CSV por caso')
    p.add_argument('--timing', action='store_true', help='guarda wall_time_s real en el reporte')
    if chain:
        p.add_argument('--m', type=int, help='truncación m (defecto 8)')
        p.add_argument('--p', help='exponente exterior de E_m (defecto 2)')
    else:
        p.add_argument('--p', help='lista de exponentes, p.ej. 1,2,inf')
        p.add_argument('--blocks-max', type=int, help='máximo de bloques m')
        p.add_argument('--dims-max', type=int, help='máxima dimensión de bloque')
        p.add_argument('--n-max', type=int, help='máxima dimensión n (embedding)')
    _add_solver_flags(p)


def _read_operator(path: str, space: Optional[str]):
    text = sys.stdin.read() if path == '-' else Path(path).read_text(encoding='utf-8')
    data = json.loads(text)
    if space is None:
        return operator_from_dict(data)
    spec = parse_space(space)
    if not isinstance(data, dict):
        raise InvalidInputError('operator: expected a JSON object')
    T = operator_from_dict({'domain': space_to_dict(spec), 'codomain': space_to_dict(spec), **data})
    if T.domain != spec:
        raise InvalidInputError(f'space: {spec} does not match operator domain {T.domain}')
    return T


def _cmd_opnorm(args) -> int:
    T = _read_operator(args.input, args.space)
    cfg = build_params(SolverConfig, _solver_values(args, seed=args.seed))
    est = opnorm(T, cfg)
    out = {
        'lower': est.lower,
        'upper': est.upper,
        'method': est.method,
        'witness': [b.tolist() for b in est.witness.blocks],
    }
    if args.samples is not None:
        lo, _ = sampling_oracle(T, args.samples, seed=args.seed)
        out['sampling_lower'] = lo
    print(dumps17(out))
    return EXIT_OK


def _cmd_tong(args) -> int:
    T = _read_operator(args.input, args.space)
    trace = tong_sequence(T)
    out = {'steps': [S.matrix.tolist() for S in trace.steps]}
    if args.print_mask:
        out['masks'] = [agreement_mask(T.domain, n).astype(int).tolist() for n in range(1, T.domain.m + 1)]
    print(dumps17(out, indent=2))
    return EXIT_OK


_SUITE_FLAGS = {
    'cases': 'cases',
    'ensemble': 'ensemble',
    'scale': 'scale',
    'blocks_max': 'm_max',
    'dims_max': 'n_max',
    'n_max': 'n_max',
    'm': 'm',
}


def _suite_values(name: str, args) -> dict:
    fields = SUITES[name][0].model_fields
    vals = {'seed': args.seed, 'solver': _solver_values(args, seed=args.seed)}
    for flag, field in _SUITE_FLAGS.items():
        v = getattr(args, flag, None)
        if v is not None and field in fields:
            vals[field] = v
    if getattr(args, 'p', None) is not None:
        vals['p' if name == 'chain' else ('cross_p' if name == 'solver' else 'p_list')] = args.p
    if name == 'solver' and args.cases is not None:
        vals.pop('cases', None)
        vals.update(spectral_cases=args.cases, exact_cases=args.cases, cross_cases=args.cases)
    return vals


def _run_suite(name: str, args):
    model, suite = SUITES[name]
    params = build_params(model, _suite_values(name, args))
    return suite(params, only_case=args.case, timing=args.timing)


def _emit_report(report, args):
    if args.out:
        path = write_json(report, Path(args.out))
        log(f'[{report.suite}] reporte: {path}')
    else:
        print(report_to_json(report))
    if args.csv:
        path = write_csv(report, Path(args.csv))
        log(f'[{report.suite}] CSV: {path}')


def _cmd_verify(args) -> int:
    report = _run_suite(args.suite, args)
    _emit_report(report, args)
    return EXIT_OK if report.ok else EXIT_VIOLATIONS


def _cmd_chain(args) -> int:
    report = _run_suite('chain', args)
    for note in report.notes:
        log(f'[chain] {note}')
    if args.out or args.csv:
        _emit_report(report, args)
    else:
        for row in report.rows:
            print(dumps17(row))
    return EXIT_OK if report.ok else EXIT_VIOLATIONS


COMMANDS = {'opnorm': _cmd_opnorm, 'tong': _cmd_tong, 'chain': _cmd_chain, 'verify': _cmd_verify}


def run(argv: List[str]) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except SystemExit as e:
        # --help
        return e.code if isinstance(e.code, int) else EXIT_OK
    except (OplabError, ValidationError, json.JSONDecodeError, OSError) as e:
        print(f'error: {e}', file=sys.stderr)
        return EXIT_USAGE
