"""
CLI Runner - argparse front end, command dispatch and batch mode

    python cli_runner.py <command> script.ck [--ideal I] [--emax 2] ... [--format csv|json] [--out FILE]
    python cli_runner.py run script.ck

Reports go to stdout (or --out). Logs go to stderr.
"""
import argparse
import json
import sys
import time
from typing import Callable, Dict, List, Optional, Sequence, Tuple

# Load environment variables from .env file if available
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass

from config_loader import Config, get_config, reset_config
from constants import OUTPUT_FORMATS, PROGRAM_NAME, SUBCOMMANDS, Certification
from error_handler import ErrorHandler, ResourceLimitExceeded, ScriptSyntaxError
from frobenius_invariants import (
    SuitableParams, colon_lemma_check, degeneracy_chain, ext_annihilation_check, ext_iso_hilbert_check,
    finitistic_tc_check, fsig_estimate, hk_estimate, tc_member, watanabe_yoshida_check,
)
from groebner import Ideal, krull_dimension
from ideal_algebra import QuotientRingSpec, bracket_power, colon, intersect, saturate, saturation, symbolic_power
from koszul_lcb import KoszulSystem, koszul_cohomology, lcb_estimate
from rees_spread import analytic_spread, reduction_number_check, rees_presentation
from report_writer import ReportDocument, make_report, write_reports
from resolutions import PresentedModule, ext_module, free_resolution
from script_parser import Session, parse_polynomial, parse_polynomial_list
from structured_logger import generate_run_id, get_logger

Rows = List[Dict[str, object]]
Outcome = Tuple[Rows, Certification]


class Options:
    """Command options from argparse flags or from `check` statement arguments"""

    def __init__(self, values: Dict[str, object]):
        self.values = {k.replace('-', '_'): str(v) for k, v in values.items() if v is not None}

    def has(self, key: str) -> bool:
        return key in self.values

    def text(self, key: str, default: Optional[str] = None) -> str:
        value = self.values.get(key, default)
        if value is None:
            raise ValueError(f"missing required option --{key.replace('_', '-')}")
        return value

    def integer(self, key: str, default: Optional[int] = None) -> int:
        if key not in self.values and default is not None:
            return default
        return int(self.text(key))

    def bound(self, key: str) -> int:
        """Search bound: flag, then config.yaml, then the built-in default"""
        if key in self.values:
            return int(self.values[key])
        return get_config().search_bound(key)

    def integers(self, key: str) -> List[int]:
        return [int(v) for v in self.text(key).strip('[]').split(',') if v.strip()]

    def merged(self, overrides: Dict[str, object]) -> 'Options':
        return Options({**self.values, **overrides})


# -- lookups -------------------------------------------------------------------

def _ideal(session: Session, options: Options, key: str = 'ideal') -> Tuple[Ideal, QuotientRingSpec]:
    """A declared ideal name, or a literal generator list in the current ring"""
    value = options.text(key)
    if value in session.ideals:
        return session.ideal(value), session.ideal_context(value)
    ring = session.ring
    return Ideal(ring, parse_polynomial_list(value, ring)), session.current


def _ideal_or_element(session: Session, options: Options, ctx: QuotientRingSpec, key: str = 'by'):
    value = options.text(key)
    if value in session.ideals:
        return session.ideal(value)
    if value.strip().startswith(('(', '[')):
        return Ideal(ctx.ambient, parse_polynomial_list(value, ctx.ambient))
    return parse_polynomial(value, ctx.ambient)


def _module(session: Session, options: Options) -> Tuple[PresentedModule, QuotientRingSpec]:
    if options.has('module'):
        return session.module(options.text('module'))
    I, ctx = _ideal(session, options)
    return PresentedModule.cyclic(ctx.lift(I)), ctx


def _koszul(session: Session, options: Options) -> KoszulSystem:
    module, ctx = _module(session, options)
    sequence = parse_polynomial_list(options.text('seq'), ctx.ambient)
    return KoszulSystem(ctx.ambient, sequence, module, quotient=ctx)


def _params(session: Session, options: Options) -> SuitableParams:
    return session.suitable(options.text('params'))


def _generator_rows(I: Ideal) -> Rows:
    return [{'index': k, 'generator': g} for k, g in enumerate(I.groebner().basis)]


def _verdict(ok: bool) -> Certification:
    return Certification.EXACT if ok else Certification.REFUTED


# -- ideal commands -----------------------------------------------------------------

def cmd_gb(session: Session, options: Options) -> Outcome:
    I, ctx = _ideal(session, options)
    return _generator_rows(ctx.lift(I)), Certification.EXACT


def cmd_member(session: Session, options: Options) -> Outcome:
    I, ctx = _ideal(session, options)
    f = parse_polynomial(options.text('poly'), ctx.ambient)
    return [{'poly': f, 'member': ctx.contains(I, f)}], Certification.EXACT


def cmd_colon(session: Session, options: Options) -> Outcome:
    I, ctx = _ideal(session, options)
    return _generator_rows(colon(ctx.lift(I), _ideal_or_element(session, options, ctx))), Certification.EXACT


def cmd_sat(session: Session, options: Options) -> Outcome:
    I, ctx = _ideal(session, options)
    by = _ideal_or_element(session, options, ctx)
    if isinstance(by, Ideal):
        return _generator_rows(saturation(ctx.lift(I), by)), Certification.EXACT
    result, exponent = saturate(ctx.lift(I), by)
    rows = _generator_rows(result)
    for row in rows:
        row['exponent'] = exponent
    return rows, Certification.EXACT


def cmd_intersect(session: Session, options: Options) -> Outcome:
    I, ctx = _ideal(session, options)
    J, _ = _ideal(session, options, 'by')
    return _generator_rows(intersect(ctx.lift(I), ctx.lift(J))), Certification.EXACT


def cmd_bracket(session: Session, options: Options) -> Outcome:
    I, ctx = _ideal(session, options)
    q = options.integer('q', ctx.p)
    return _generator_rows(ctx.lift(bracket_power(I, q))), Certification.EXACT


def cmd_symbolic(session: Session, options: Options) -> Outcome:
    I, ctx = _ideal(session, options)
    sat = _ideal(session, options, 'sat')[0] if options.has('sat') else Ideal.maximal(ctx.ambient)
    result = symbolic_power(I, options.integer('n'), sat, quotient=ctx)
    return _generator_rows(result), Certification.EXACT


def cmd_length(session: Session, options: Options) -> Outcome:
    I, ctx = _ideal(session, options)
    return [{'length': ctx.length(I)}], Certification.EXACT


def cmd_dim(session: Session, options: Options) -> Outcome:
    I, ctx = _ideal(session, options)
    return [{'dimension': krull_dimension(ctx.lift(I))}], Certification.EXACT


# -- module commands ----------------------------------------------------------------

def cmd_ext(session: Session, options: Options) -> Outcome:
    M, _ = _module(session, options)
    i = options.integer('deg')
    ext = ext_module(M, i)
    row = {'degree': i, 'generators': ext.rank, 'relations': ext.presentation.cols, 'length': ext.length()}
    return [row], Certification.EXACT


def cmd_resolve(session: Session, options: Options) -> Outcome:
    M, _ = _module(session, options)
    res = free_resolution(M)
    return [{'index': k, 'rank': r} for k, r in enumerate(res.betti_numbers())], Certification.EXACT


def cmd_koszul(session: Session, options: Options) -> Outcome:
    sys_ = _koszul(session, options)
    i, j = options.integer('deg'), options.integer('j', 1)
    H = koszul_cohomology(sys_, i, j)
    return [{'degree': i, 'exponent': j, 'generators': H.rank, 'length': H.length()}], Certification.EXACT


def cmd_lcb(session: Session, options: Options) -> Outcome:
    report = lcb_estimate(_koszul(session, options), options.integer('deg'),
                          options.bound('jmax'), options.bound('kmax'))
    rows = [{'j': row.j, 'stabilization_index': row.stabilization_index,
             'epsilon': row.epsilon, 'bound': report.bound_label} for row in report.rows]
    return rows, report.certification


# -- Frobenius commands ---------------------------------------------------------------

def cmd_tc(session: Session, options: Options) -> Outcome:
    I, ctx = _ideal(session, options)
    r = parse_polynomial(options.text('poly'), ctx.ambient)
    c = parse_polynomial(options.text('test', '1'), ctx.ambient)
    verdict = tc_member(r, I, c, options.bound('emax'), quotient=ctx)
    rows = [{'e': verdict.e, 'verdict': verdict.label, 'in_closure': verdict.in_closure}]
    return rows, Certification.BOUNDED if verdict.in_closure else Certification.REFUTED


def cmd_ftc(session: Session, options: Options) -> Outcome:
    sp = _params(session, options).validate()
    r = parse_polynomial(options.text('poly'), sp.ring)
    c = parse_polynomial(options.text('test', '1'), sp.ring)
    report = finitistic_tc_check(sp, r, c, options.bound('tmax'), options.bound('emax'))
    rows = [{'t': row.t, 'vanishes': row.vanishes, 'verdict': row.verdict.label} for row in report.rows]
    return rows, report.certification


def cmd_chain(session: Session, options: Options) -> Outcome:
    sp = _params(session, options).validate()
    rows = []
    certification = Certification.EXACT
    for e in range(1, options.bound('emax') + 1):
        chain = degeneracy_chain(sp, e, options.bound('tmax'))
        if chain.stabilization_index is None:
            certification = Certification.UNSTABILIZED
        for t, ideal in enumerate(chain.ideals, start=1):
            rows.append({'e': e, 't': t, 'colength': sp.R.length(ideal),
                         'stabilized': t == chain.stabilization_index})
    return rows, certification


def cmd_ehk(session: Session, options: Options) -> Outcome:
    I, ctx = _ideal(session, options)
    report = hk_estimate(ctx, I, options.bound('emax'))
    rows = [{'e': row.e, 'q': ctx.p ** row.e, 'length': row.length, 'ratio': row.ratio} for row in report.rows]
    return rows, report.certification


def cmd_fsig(session: Session, options: Options) -> Outcome:
    sp = _params(session, options).validate()
    report = fsig_estimate(sp, options.bound('emax'), options.bound('tmax'))
    rows = [{'e': row.e, 'length': row.length, 's_e': row.s_e,
             'stabilization_index': row.stabilization_index} for row in report.rows]
    return rows, report.certification


def cmd_wy_check(session: Session, options: Options) -> Outcome:
    sp = _params(session, options).validate()
    table = watanabe_yoshida_check(sp, options.bound('emax'), options.bound('tmax'), options.integer('t', 1))
    rows = [{'e': row.e, 'chain_length': row.chain_length, 'bracket_length': row.bracket_length,
             'with_socle_length': row.with_socle_length, 'holds': row.holds} for row in table]
    return rows, _verdict(all(row.holds for row in table))


def cmd_colon_lemma(session: Session, options: Options) -> Outcome:
    sp = _params(session, options)
    N = options.integers('exps') if options.has('exps') else [2] * (sp.d - 1)
    a_d = parse_polynomial(options.text('ad'), sp.ring) if options.has('ad') else None
    rows = []
    for e in range(1, options.bound('emax') + 1):
        result = colon_lemma_check(sp, e, N, a_d=a_d, n=options.integer('n', 1))
        rows.append({'e': e, 'part1': result.part1, 'part2': result.part2})
    ok = all(row['part1'] and row['part2'] is not False for row in rows)
    return rows, _verdict(ok)


def cmd_ext_annih(session: Session, options: Options) -> Outcome:
    sp = _params(session, options)
    sp.check_multipliers()
    table = ext_annihilation_check(sp, options.integer('deg', 1), range(2, options.bound('jmax') + 1))
    rows = [{'j': j, 'annihilated': table[j]} for j in sorted(table)]
    return rows, _verdict(all(table.values()))


def cmd_ext_iso(session: Session, options: Options) -> Outcome:
    sp = _params(session, options)
    result = ext_iso_hilbert_check(sp, options.integer('deg', 1), options.bound('kmax'))
    rows = [{'k': k, 'ext_length': a, 'quotient_length': b, 'annihilators_agree': result.annihilators_agree}
            for k, (a, b) in enumerate(zip(result.ext_hilbert, result.quotient_hilbert), start=1)]
    return rows, _verdict(result.agrees)


# -- Rees commands ---------------------------------------------------------------------

def cmd_rees(session: Session, options: Options) -> Outcome:
    I, ctx = _ideal(session, options)
    presentation = rees_presentation(ctx, I)
    return _generator_rows(presentation.relations), Certification.EXACT


def cmd_spread(session: Session, options: Options) -> Outcome:
    I, ctx = _ideal(session, options)
    J = _ideal(session, options, 'by')[0] if options.has('by') else None
    report = analytic_spread(ctx, I, J, options.bound('nmax'))
    row = {'spread': report.spread, 'fiber_relations': report.fiber_relations}
    if report.reduction is not None:
        row['reduction_number'] = report.reduction.label
    return [row], Certification.EXACT


def cmd_redno(session: Session, options: Options) -> Outcome:
    I, ctx = _ideal(session, options)
    J, _ = _ideal(session, options, 'by')
    verdict = reduction_number_check(J, I, options.bound('nmax'), quotient=ctx)
    rows = [{'reduction_number': verdict.label}]
    return rows, Certification.EXACT if verdict.number is not None else Certification.BOUNDED


CommandHandler = Callable[[Session, Options], Outcome]


def command_handlers() -> Dict[str, CommandHandler]:
    return {
        'gb': cmd_gb,
        'member': cmd_member,
        'colon': cmd_colon,
        'sat': cmd_sat,
        'intersect': cmd_intersect,
        'bracket': cmd_bracket,
        'symbolic': cmd_symbolic,
        'length': cmd_length,
        'dim': cmd_dim,
        'ext': cmd_ext,
        'resolve': cmd_resolve,
        'koszul': cmd_koszul,
        'lcb': cmd_lcb,
        'tc': cmd_tc,
        'ftc': cmd_ftc,
        'chain': cmd_chain,
        'ehk': cmd_ehk,
        'fsig': cmd_fsig,
        'wy-check': cmd_wy_check,
        'colon-lemma': cmd_colon_lemma,
        'ext-annih': cmd_ext_annih,
        'ext-iso': cmd_ext_iso,
        'rees': cmd_rees,
        'spread': cmd_spread,
        'redno': cmd_redno,
    }


def run_command(cmd: str, session: Session, options: Options) -> ReportDocument:
    """
    Run one command and build its report

    Raises:
        ResourceLimitExceeded: partial_rows already formatted as report rows
    """
    handlers = command_handlers()
    if cmd not in handlers:
        raise ScriptSyntaxError(f"unknown command '{cmd}'")
    inputs = {k: v for k, v in sorted(options.values.items()) if k not in ('format', 'out', 'config')}
    rows, certification = handlers[cmd](session, options)
    return make_report(cmd, inputs, rows, certification)


def run_session(session: Session, options: Options) -> List[ReportDocument]:
    """Every `check` statement in script order; flags act as defaults"""
    reports = []
    for check in session.checks:
        try:
            reports.append(run_command(check.command, session, options.merged(dict(check.args))))
        except ScriptSyntaxError as exc:
            if not exc.line:
                raise ScriptSyntaxError(str(exc), check.line, check.column) from exc
            raise
        except ResourceLimitExceeded as exc:
            exc.partial_reports = reports
            raise
    return reports


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=PROGRAM_NAME, description="Prime-characteristic commutative algebra toolkit")
    parser.add_argument('command', choices=SUBCOMMANDS)
    parser.add_argument('script', help="Path to a .ck script")
    for name in ('ideal', 'by', 'poly', 'test', 'module', 'seq', 'params', 'sat', 'exps', 'ad'):
        parser.add_argument(f'--{name}')
    for name in ('deg', 'j', 'q', 'n', 't'):
        parser.add_argument(f'--{name}', type=int)
    for name in ('emax', 'tmax', 'jmax', 'kmax', 'nmax'):
        parser.add_argument(f'--{name}', type=int, help=f"Search bound (default: search.{name} in config.yaml)")
    parser.add_argument('--format', choices=OUTPUT_FORMATS)
    parser.add_argument('--out', help="Write the report here instead of stdout")
    parser.add_argument('--config', help="Alternative config.yaml")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.config:
        reset_config(Config(args.config))
    logger = get_logger()
    logger.set_run_id(generate_run_id())
    error_handler = ErrorHandler()
    fmt = args.format or get_config().output_format
    options = Options({k: v for k, v in vars(args).items() if k not in ('command', 'script')})

    started = time.perf_counter()
    reports: List[ReportDocument] = []
    try:
        with open(args.script, 'r', encoding='utf-8') as f:
            session = Session.from_text(f.read())
        if args.command == 'run':
            reports = run_session(session, options)
        else:
            reports = [run_command(args.command, session, options)]
    except ResourceLimitExceeded as exc:
        logger.log_error(exc, {'command': args.command})
        reports = list(getattr(exc, 'partial_reports', reports))
        reports.append(make_report(args.command, {'error': str(exc)}, exc.partial_rows, Certification.PARTIAL))
        _emit(reports, fmt, args.out)
        return error_handler.exit_code(exc)
    except Exception as exc:
        logger.log_error(exc, {'command': args.command})
        print(json.dumps(error_handler.format_error_response(exc, {'command': args.command})), file=sys.stderr)
        return error_handler.exit_code(exc)

    _emit(reports, fmt, args.out)
    logger.log_command(args.command, time.perf_counter() - started, reports=len(reports))
    return 0


def _emit(reports: List[ReportDocument], fmt: str, out: Optional[str]) -> None:
    text = write_reports(reports, fmt, out)
    if not out:
        sys.stdout.write(text)


if __name__ == "__main__":
    sys.exit(main())
