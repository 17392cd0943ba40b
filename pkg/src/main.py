"""Command-line entry point for the resurgent Anger-Weber toolkit."""

import argparse
import logging
import random
import sys
import os
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

# Add src directory to path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

# Import modules
from models.precision import HPComplex, PrecisionContext
from models.run_config import RunConfig
from services.bound_service import BoundService
from services.coefficient_service import CoefficientService
from services.export_service import ExportService
from services.hyper_service import HyperService
from services.late_coefficient_service import LateCoefficientService
from services.oracle_service import OracleService
from services.series_service import SeriesService
from utils.config import config
from utils.validators import (AngleParser, NuParser, PrecisionValidator, ResurgenceError,
                              UsageError, ValidationError)

PACKAGE_NAME = 'resurgent-anger'
VERSION = '1.0.0'

Report = Tuple[Any, List[Dict[str, Any]]]


def setup_logging(level: Optional[str] = None):
    """Setup logging configuration; stdout is reserved for reports."""
    handlers = [logging.StreamHandler(sys.stderr)]
    if config.LOG_TO_FILE:
        config.ensure_directories_exist()
        handlers.append(logging.FileHandler(os.path.join(config.REPORTS_DIR, config.LOG_FILE)))
    logging.basicConfig(
        level=getattr(logging, level or config.LOG_LEVEL),
        format=config.LOG_FORMAT,
        handlers=handlers,
        force=True
    )


class ArgumentParser(argparse.ArgumentParser):
    """Argument parser that reports malformed input as UsageError."""

    def error(self, message):
        raise UsageError(message)


class AngerWeberSystem:
    """Main system class wiring the services for one working precision."""

    def __init__(self, digits: int):
        self.logger = logging.getLogger(__name__)
        self.ctx = PrecisionContext(PrecisionValidator.require_digits(digits))
        self.coefficients = CoefficientService()
        self.bounds = BoundService(self.ctx, self.coefficients)
        self.series = SeriesService(self.ctx, self.coefficients, self.bounds)
        self.hyper = HyperService(self.ctx, self.coefficients, self.series)
        self.late = LateCoefficientService(self.ctx, self.coefficients)
        self.oracle = OracleService(self.ctx, self.coefficients)

    def _real(self, x, tag: str = 'heuristic', digits: Optional[int] = None) -> Dict[str, Any]:
        return {'value': self.ctx.nstr(x, digits), 'digits': digits or self.ctx.digits, 'tag': tag}

    def _nu(self, text: str) -> HPComplex:
        return NuParser.parse(text).evaluate(self.ctx)

    def _angle(self, text: Optional[str], name: str):
        if text is None:
            raise UsageError(f"--{name} is required for this case")
        return AngleParser.parse(text).evaluate(self.ctx)

    # eval ------------------------------------------------------------------

    def run_eval(self, args) -> Report:
        mp = self.ctx.mp
        nu = self._nu(args.nu)
        if args.case == 'secb':
            beta = self._angle(args.beta, 'beta')
            N = args.N if args.N is not None else self.series.optimal_truncation(nu, 'secb', beta).N
            if args.improved:
                M = args.M if args.M is not None else min(2, 2 * N)
                result = self.hyper.improved_secb(nu, beta, N, M)
            elif abs(nu.arg) < mp.pi / 2:
                result = self.series.eval_secb(nu, beta, N)
            else:
                result = self.series.continue_sector(nu, 'secb', beta, N=args.N, M=args.M)
            x = mp.sec(beta)
        elif args.case == 'x1':
            if args.improved:
                default = self.series.optimal_truncation(nu, 'x1')
                N = args.N if args.N is not None else default.N
                M = args.M if args.M is not None else default.M
                K = args.K if args.K is not None else default.K
                result = self.hyper.improved_x1(nu, N, M, K, args.J, args.L, args.Q)
            elif abs(nu.arg) < 3 * mp.pi / 2:
                N = args.N if args.N is not None else self.series.optimal_truncation(nu, 'x1').total
                result = self.series.eval_x1(nu, N)
            else:
                result = self.series.continue_sector(nu, 'x1', N=args.N, M=args.M)
            x = mp.one
        else:
            alpha = self._angle(args.alpha, 'alpha')
            N = args.N if args.N is not None else 8
            result = self.series.eval_0x1(nu, alpha, N, endpoint_terms=args.endpoint_terms)
            x = mp.sech(alpha)

        data = result.to_dict(self.ctx)
        if args.verify:
            data.update(self._verify(nu, x, result))
        return data, [_row_of(data)]

    def _verify(self, nu: HPComplex, x, result) -> Dict[str, Any]:
        mp = self.ctx.mp
        sector = mp.pi * config.ORACLE_SECTOR.numerator / config.ORACLE_SECTOR.denominator
        if abs(nu.arg) > sector:
            return {'oracle': None, 'oracle_note': f'oracle needs |arg nu| <= {config.ORACLE_SECTOR}*pi'}
        oracle = self.oracle.quad_anger(nu, x)
        deviation = abs(oracle.value - result.value)
        check = {'oracle': oracle.to_dict(self.ctx), 'deviation': self._real(deviation)}
        if result.certified:
            check['within_bound'] = bool(deviation <= result.bound.radius)
        return check

    # coeffs ----------------------------------------------------------------

    def run_coeffs(self, args) -> Report:
        n_max = args.n_max if args.n_max is not None else args.n
        if n_max < args.n:
            raise UsageError("--n-max must not be below --n")
        rows = []
        for n in range(args.n, n_max + 1):
            if args.family == 'an':
                rows.append({'n': n, 'value': str(self.coefficients.an_recurrence(n))})
            elif args.family == 'd2n':
                d = self.coefficients.d2n(n)
                rows.append({'n': n, 'value': str(d), 'numeric': self._real(d.evaluate(self.ctx), 'exact_rational_rounded')})
            elif args.family == 'un':
                rows.append({'n': n, 'value': str(self.coefficients.un_polynomial(n))})
            else:
                alpha = self._angle(args.alpha, 'alpha')
                value = self.coefficients.bn_coeff(n, alpha, self.ctx)
                rows.append({'n': n, 'value': self._real(value, 'exact_rational_rounded'),
                             'scalar': str(self.coefficients.bn_scalar(n))})
        return (rows[0] if len(rows) == 1 else rows), rows

    # bounds ----------------------------------------------------------------

    def run_bounds(self, args) -> Report:
        nu = self._nu(args.nu)
        if args.case == 'secb':
            beta = self._angle(args.beta, 'beta')
            bound = self.bounds.bound_secb(nu, beta, args.N)
        else:
            beta = None
            bound = self.bounds.bound_x1(nu, args.N)
        data = {'N': args.N, 'bound': bound.to_dict(self.ctx)}
        if args.excess:
            data['excess'] = self.bounds.excess_certificate(nu, args.case, args.N, beta).to_dict(self.ctx)
        return data, [_row_of(data)]

    # table1 / late ---------------------------------------------------------

    def run_table1(self, args) -> Report:
        rows = self.late.table1()
        return rows, rows

    def run_late(self, args) -> Report:
        try:
            n_values = [int(part) for part in args.n.split(',') if part.strip()]
        except ValueError:
            raise UsageError(f"--n must be a comma-separated list of integers, got {args.n!r}")
        if args.kind == 'an':
            beta = self._angle(args.beta, 'beta')
            results = self.late.late_sweep(n_values, beta, args.M)
        else:
            alpha = self._angle(args.alpha, 'alpha')
            results = [self.late.late_un_dingle(n, alpha, args.M if args.M is not None else min(4, n - 1))
                       for n in n_values]
        rows = [result.to_dict(self.ctx) for result in results]
        return rows, rows

    # check -----------------------------------------------------------------

    def run_check(self, args) -> Report:
        rules = config.CHECK_RULES
        rows = []
        suites = ('equivalence', 'lauwerier', 'resurgence') if args.suite == 'all' else (args.suite,)

        if 'equivalence' in suites:
            for n in range(rules['equivalence_max_n'] + 1):
                passed = self.coefficients.an_recurrence(n) == self.coefficients.an_meijer(n)
                rows.append({'suite': 'equivalence', 'case': f'n={n}', 'passed': passed, 'residual': '0'})

        if 'lauwerier' in suites:
            rng = random.Random(rules['lauwerier_seed'])
            for _ in range(rules['lauwerier_points']):
                lam = Fraction(rng.randint(-40, 40), rng.randint(1, 20))
                if lam == -1:
                    lam = Fraction(1, 2)
                n = rng.randint(1, 6)
                passed = self.coefficients.an_lauwerier(n, lam) == self.coefficients.an_recurrence(n).evaluate(lam)
                rows.append({'suite': 'lauwerier', 'case': f'n={n}, lambda={lam}', 'passed': passed, 'residual': '0'})

        if 'resurgence' in suites:
            tolerance = rules['residual_tolerance']
            for nu, beta, N in rules['secb_points']:
                residual = self.oracle.resurgence_check_secb(nu, AngleParser.parse(beta).evaluate(self.ctx), N)
                rows.append({'suite': 'resurgence_secb', 'case': f'nu={nu}, beta={beta}, N={N}',
                             'passed': bool(residual < tolerance), 'residual': self.ctx.nstr(residual, 5)})
            for nu, N in rules['x1_points']:
                residual = self.oracle.resurgence_check_x1(nu, N)
                rows.append({'suite': 'resurgence_x1', 'case': f'nu={nu}, N={N}',
                             'passed': bool(residual < tolerance), 'residual': self.ctx.nstr(residual, 5)})

        failed = [row for row in rows if not row['passed']]
        self.logger.info(f"check: {len(rows) - len(failed)}/{len(rows)} passed")
        return {'passed': not failed, 'checks': rows}, rows

    # stokes ----------------------------------------------------------------

    def run_stokes(self, args) -> Report:
        mp = self.ctx.mp
        absnu = mp.mpf(args.nu)
        half_width = args.half_width if args.half_width is not None else config.SCAN_RULES['half_width']
        if args.case == 'secb':
            beta = self._angle(args.beta, 'beta')
            grid = self.hyper.default_grid(args.line * mp.pi / 2, args.points, half_width)
            records = self.hyper.stokes_scan_secb(absnu, beta, grid, line=args.line)
        else:
            grid = self.hyper.default_grid(args.line * 3 * mp.pi / 2, args.points, half_width)
            records = self.hyper.stokes_scan_x1(absnu, grid, line=args.line)
        rows = [record.to_row(self.ctx) for record in records]
        return rows, rows


def _row_of(data: Dict[str, Any]) -> Dict[str, Any]:
    return {key: value for key, value in data.items() if key != 'notes'}


def build_parser() -> ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--digits', type=int, default=None, help='working precision in decimal digits')
    common.add_argument('--format', choices=config.OUTPUT_FORMATS, default=None, dest='output_format')
    common.add_argument('--save', choices=config.EXPORT_FORMATS, default=None,
                        help='also save the report into the reports directory')
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument('--verbose', action='store_true')
    verbosity.add_argument('--quiet', action='store_true')

    parser = ArgumentParser(prog='resurgent-anger',
                            description='High-precision asymptotics of the Anger-Weber function A_{-nu}(nu x).')
    commands = parser.add_subparsers(dest='command', parser_class=ArgumentParser)
    commands.required = True

    p = commands.add_parser('eval', parents=[common], help='evaluate an expansion')
    p.add_argument('--case', choices=['secb', 'x1', 'sub1'], required=True)
    p.add_argument('--nu', required=True, help='"10", "re,im" or "abs@arg"')
    p.add_argument('--beta', help='angle for x = sec(beta), e.g. pi/3')
    p.add_argument('--alpha', help='x = sech(alpha) for the 0<x<1 case')
    for name in ('N', 'M', 'K'):
        p.add_argument(f'--{name}', type=int, default=None)
    for name in ('J', 'L', 'Q'):
        p.add_argument(f'--{name}', type=int, default=3)
    p.add_argument('--auto-truncate', action='store_true', help='optimal truncation (default when N is omitted)')
    p.add_argument('--improved', action='store_true', help='add the terminant corrections')
    p.add_argument('--verify', action='store_true', help='compare with the quadrature oracle')
    p.add_argument('--endpoint-terms', type=int, default=0)

    p = commands.add_parser('coeffs', parents=[common], help='exact coefficients')
    p.add_argument('--family', choices=['an', 'd2n', 'un', 'bn'], required=True)
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--n-max', type=int, default=None)
    p.add_argument('--alpha')

    p = commands.add_parser('bounds', parents=[common], help='certified remainder bounds')
    p.add_argument('--case', choices=['secb', 'x1'], required=True)
    p.add_argument('--nu', required=True)
    p.add_argument('--beta')
    p.add_argument('--N', type=int, required=True)
    p.add_argument('--excess', action='store_true', help='error-by-excess interval (real nu)')

    commands.add_parser('table1', parents=[common], help='late-term table for a_25(-sec beta)')

    p = commands.add_parser('late', parents=[common], help='late-coefficient approximations')
    p.add_argument('--kind', choices=['an', 'dingle'], default='an')
    p.add_argument('--n', required=True, help='comma-separated orders')
    p.add_argument('--beta')
    p.add_argument('--alpha')
    p.add_argument('--M', type=int, default=None)

    p = commands.add_parser('check', parents=[common], help='coefficient and resurgence suites')
    p.add_argument('--suite', choices=['all', 'equivalence', 'lauwerier', 'resurgence'], default='all')

    p = commands.add_parser('stokes', parents=[common], help='Stokes-line scan')
    p.add_argument('--case', choices=['secb', 'x1'], required=True)
    p.add_argument('--nu', required=True, help='|nu|')
    p.add_argument('--beta')
    p.add_argument('--line', type=int, choices=[1, -1], default=1)
    p.add_argument('--points', type=int, default=None)
    p.add_argument('--half-width', type=float, default=None)
    return parser


_GLOBAL_FLAGS = ('command', 'digits', 'output_format', 'save', 'verbose', 'quiet')


def _error_record(error: Exception) -> Dict[str, Any]:
    code = getattr(error, 'code', 'error')
    return {'error': {'type': type(error).__name__, 'code': code, 'message': str(error)}}


def run(argv: Optional[List[str]] = None, stdout=None) -> int:
    """Run one command; the report goes to ``stdout`` and the exit code is returned."""
    stdout = stdout or sys.stdout
    export_service = ExportService()
    try:
        try:
            args = build_parser().parse_args(argv)
        except SystemExit as e:
            return e.code if isinstance(e.code, int) else 0

        setup_logging('DEBUG' if args.verbose else 'WARNING' if args.quiet else None)
        digits = args.digits if args.digits is not None else config.default_digits()
        output_format = args.output_format or ('csv' if args.command in ('stokes', 'table1') else 'json')
        parameters = {k: v for k, v in vars(args).items() if k not in _GLOBAL_FLAGS}
        try:
            run_config = RunConfig(command=args.command, digits=digits, output_format=output_format,
                                   parameters=parameters, save_format=args.save)
        except ValueError as e:
            raise ValidationError(str(e))

        system = AngerWeberSystem(run_config.digits)
        handler = getattr(system, f"run_{run_config.command}")
        results, rows = handler(args)

        report = {
            'command': run_config.command,
            'inputs': run_config.to_dict()['parameters'],
            'results': results,
            'provenance': {
                'package': PACKAGE_NAME,
                'version': VERSION,
                'digits': run_config.digits,
                'quad_target': system.ctx.nstr(system.ctx.quad_target, 3),
            },
        }
        if run_config.output_format == 'csv':
            stdout.write(export_service.render_csv(rows))
        else:
            stdout.write(export_service.render_json(report))
        if run_config.save_format:
            path = export_service.export_report(report, rows, run_config.save_format)
            logging.getLogger(__name__).info(f"Report saved: {path}")

        if run_config.command == 'check' and not results['passed']:
            return 1
        return 0

    except ResurgenceError as e:
        logging.getLogger(__name__).error(f"{type(e).__name__}: {e}")
        stdout.write(export_service.render_json(_error_record(e)))
        return e.exit_code
    except ValueError as e:
        error = ValidationError(str(e))
        logging.getLogger(__name__).error(f"Invalid input: {e}")
        stdout.write(export_service.render_json(_error_record(error)))
        return error.exit_code


def main():
    """Main function."""
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
