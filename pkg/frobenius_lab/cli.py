#####################################################################
#                                                                   #
# cli.py                                                            #
#                                                                   #
# Copyright 2026, the frobenius-lab contributors                    #
#                                                                   #
# This file is part of frobenius-lab and is licensed under the      #
# Simplified BSD License. See the LICENSE.txt file in the root of   #
# the project for the full license.                                 #
#                                                                   #
#####################################################################
"""The frobenius-lab command: run one job file and write its run record.

Exit codes: 0 success, 2 usage, 3 parse error, 4 precondition error, 5 budget error,
6 capacity or precision error. On error a JSON error record is written in place of the
run record."""

import argparse
import csv
import logging
import sys
import time
from contextlib import contextmanager
from dataclasses import dataclass, field

from frobenius_lab import artifact_version
from frobenius_lab.exceptions import EXIT_CODES, FrobeniusLabError, ParseError
from frobenius_lab.fsplit_lab import (
    fedder_test,
    fpurity_exponent,
    splitting_number,
    splitting_sequence,
)
from frobenius_lab.hk_lab import (
    BoundConstants,
    filtration_length,
    hk_sequence,
    nilpotency_exponent,
    verify_bounds,
    verify_filtered_bound,
)
from frobenius_lab.ideals import Budget
from frobenius_lab.jobs import (
    build_curve,
    build_ideal,
    build_presentation,
    build_subvarieties,
    format_job,
    parse_job,
)
from frobenius_lab.dict_diff import dict_diff
from frobenius_lab.labconfig import LabConfig, save_appconfig
from frobenius_lab.local_ring import rational_points
from frobenius_lab.properties import (
    content_hash,
    deserialise,
    save_run_record_h5,
    serialise,
)
from frobenius_lab.setup_logging import setup_logging
from frobenius_lab.spec_scan import scan_points
from frobenius_lab.tame_curves import (
    construct_parameter,
    disc_kills_cokernel,
    discriminant_valuation,
    generator_bound_check,
    module_generators,
    realized_degree,
)
from frobenius_lab.versions import SCHEMA_VERSION, check_schema_version

logger = logging.getLogger(__name__)

DEFAULT_E_MAX = {'hk': 3, 'fsig': 2, 'scan': 1, 'verify-bounds': 2}


@dataclass(frozen=True)
class Settings:
    """Effective settings of a run: config file values, then command line overrides"""

    max_pairs: int = 10**6
    max_degree: int = 10**6
    deadline_seconds: int = 600
    e_cap: int = 4
    precision_cap: int = 4096
    terminal_level: str = 'INFO'

    @classmethod
    def from_config(cls, config):
        return cls(
            max_pairs=config.getint('budget', 'max_pairs'),
            max_degree=config.getint('budget', 'max_degree'),
            deadline_seconds=config.getoptionalint('budget', 'deadline_seconds'),
            e_cap=config.getint('fsplit', 'e_cap'),
            precision_cap=config.getint('tame', 'precision_cap'),
            terminal_level=config.get('logging', 'terminal_level'),
        )

    def budget(self, job):
        max_pairs = job.budget_pairs if job.budget_pairs is not None else self.max_pairs
        return Budget(max_pairs, self.max_degree, self.deadline_seconds)

    def to_dict(self):
        return {
            'max_pairs': self.max_pairs,
            'max_degree': self.max_degree,
            'deadline_seconds': self.deadline_seconds,
            'e_cap': self.e_cap,
            'precision_cap': self.precision_cap,
        }


@dataclass
class RunRecord:
    job: object
    settings: Settings
    results: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    csv_rows: list = None

    @property
    def payload(self):
        """The deterministic part of the record: everything but the timings"""
        return {
            'schema_version': SCHEMA_VERSION,
            'job': format_job(self.job),
            'settings': self.settings.to_dict(),
            'results': self.results,
        }

    @property
    def content_hash(self):
        return content_hash(self.payload)

    def to_dict(self):
        record = dict(self.payload)
        record['artifact_version'] = artifact_version()
        record['content_hash'] = self.content_hash
        record['timings_ns'] = self.timings
        return record


@contextmanager
def _timed(record, operation):
    start = time.perf_counter_ns()
    try:
        yield
    finally:
        record.timings[operation] = time.perf_counter_ns() - start


def _csv_rows(reports, kind):
    rows = [('point', 'e', 'q', 'lambda', 's')]
    for point, report in reports:
        label = ' '.join(str(a) for a in point)
        for sample in report.samples:
            value = str(sample.value)
            if kind == 'lambda':
                rows.append((label, sample.e, sample.q, value, ''))
            else:
                rows.append((label, sample.e, sample.q, '', value))
    return rows


def _run_hk(job, record, settings, threads):
    P = build_presentation(job)
    with _timed(record, 'hk_sequence'):
        report = hk_sequence(P, job.e_max, settings.budget(job), threads)
    record.results = report.to_dict()
    record.csv_rows = _csv_rows([(P.point, report)], 'lambda')


def _run_fsig(job, record, settings, threads):
    P = build_presentation(job)
    with _timed(record, 'splitting_sequence'):
        report = splitting_sequence(P, job.e_max, settings.budget(job), threads)
    record.results = report.to_dict()
    record.csv_rows = _csv_rows([(P.point, report)], 's')


def _run_fedder(job, record, settings, threads):
    P = build_presentation(job)
    budget = settings.budget(job)
    with _timed(record, 'fedder_test'):
        verdict = fedder_test(P, budget)
    results = verdict.to_dict()
    with _timed(record, 'splitting_number'):
        results['s_1'] = splitting_number(P, 1, budget).value
    if job.c is not None:
        e_cap = job.e_cap if job.e_cap is not None else settings.e_cap
        with _timed(record, 'fpurity_exponent'):
            exponent = fpurity_exponent(P, P.ring.parse(job.c), e_cap, budget)
        results['fpurity_exponent'] = exponent.to_dict()
    record.results = results


def _run_tame(job, record, settings, threads):
    C = build_curve(job)
    results = {'curve': str(C)}
    with _timed(record, 'tame_invariants'):
        results['invariants'] = C.invariants.to_dict()
    with _timed(record, 'construct_parameter'):
        results['parameter'] = construct_parameter(C).to_dict()
    with _timed(record, 'discriminant_valuation'):
        disc = discriminant_valuation(
            C, job.precision, precision_cap=settings.precision_cap
        )
    results['discriminant'] = disc.to_dict()
    with _timed(record, 'realized_degree'):
        results['realized_degree'] = realized_degree(C)
    results['module_generators'] = module_generators(C)
    results['generator_bound'] = generator_bound_check(C).to_dict()
    if len(C.branches) == 1:
        with _timed(record, 'disc_kills_cokernel'):
            results['cokernel_check'] = disc_kills_cokernel(C, 1).to_dict()
    record.results = results


def _run_scan(job, record, settings, threads):
    P = build_presentation(job)
    points = list(job.points) if job.points else rational_points(P.ideal)
    subvarieties = build_subvarieties(job)
    pairs = list(job.pairs) if job.pairs else None
    with _timed(record, 'scan_points'):
        report = scan_points(
            P, points, job.e_max, pairs, subvarieties, settings.budget(job), threads
        )
    record.results = report.to_dict()
    record.csv_rows = report.csv_rows()


def _bound_constants(job, P, N, budget):
    if job.branches:
        C = build_curve(job)
        m, Delta, conditional = len(module_generators(C)), C.invariants.Delta, False
    else:
        m, Delta, conditional = job.m, job.Delta, True
        if m is None or Delta is None:
            msg = 'verify-bounds needs either branch keys or both m and Delta'
            raise ParseError(msg)
    e0, b = 0, 1
    if N is not None:
        e0 = job.e0 if job.e0 is not None else nilpotency_exponent(P, N, budget)
        b = job.b if job.b is not None else filtration_length(P, N, budget)
    return BoundConstants(m, Delta, e0, b, conditional)


def _run_verify_bounds(job, record, settings, threads):
    P = build_presentation(job)
    budget = settings.budget(job)
    I = build_ideal(job, 'socle_ideal')
    u = P.ring.parse(job.socle) if job.socle else None
    if u is None or not I.generators:
        raise ParseError('verify-bounds needs socle_ideal and socle')
    N = build_ideal(job, 'nilpotent') if job.nilpotent else None
    constants = _bound_constants(job, P, N, budget)
    with _timed(record, 'verify_bounds'):
        check = verify_bounds(P, I, u, job.e_max, constants, budget)
    results = check.to_dict()
    if N is not None:
        with _timed(record, 'verify_filtered_bound'):
            entries = [
                verify_filtered_bound(P, N, I, u, e, constants, budget)
                for e in range(constants.e0 + 1, job.e_max + 1)
            ]
        results['filtered'] = [entry.to_dict() for entry in entries]
        results['pass'] = results['pass'] and all(entry.passed for entry in entries)
    record.results = results


COMMANDS = {
    'hk': _run_hk,
    'fsig': _run_fsig,
    'fedder': _run_fedder,
    'tame': _run_tame,
    'scan': _run_scan,
    'verify-bounds': _run_verify_bounds,
}


def run(job, settings=None, threads=1):
    """Run a JobSpec and return its RunRecord"""
    if settings is None:
        settings = Settings()
    if job.e_max is None and job.command in DEFAULT_E_MAX:
        job = job.with_overrides(e_max=DEFAULT_E_MAX[job.command])
    record = RunRecord(job, settings)
    logger.info('running %s job %s', job.command, job.name or '')
    COMMANDS[job.command](job, record, settings, threads)
    return record


def error_record(error):
    info = {'kind': error.kind, 'type': type(error).__name__, 'message': str(error)}
    if getattr(error, 'position', None) is not None:
        info['position'] = error.position
    if getattr(error, 'required_precision', None) is not None:
        info['required_precision'] = error.required_precision
    return {'schema_version': SCHEMA_VERSION, 'error': info}


def _write(path, text):
    if path is None or path == '-':
        sys.stdout.write(text)
    else:
        with open(path, 'w') as f:
            f.write(text)


def settings_snapshot(record):
    """The effective settings with the job and hash they produced, as ini sections"""
    return {
        'settings': record.settings.to_dict(),
        'run': {'job': format_job(record.job), 'content_hash': record.content_hash},
    }


def compare_with(path, record):
    """Log every result that differs from those in the run record at `path`. Returns
    the differences as from dict_diff."""
    with open(path) as f:
        previous = deserialise(f.read())
    check_schema_version(previous)
    if previous.get('content_hash') == record.content_hash:
        logger.info('results identical to %s', path)
        return {}
    results = deserialise(serialise(record.results))
    differences = dict_diff(previous.get('results', {}), results)
    for key, (old, new) in sorted(differences.items()):
        logger.warning('%s differs from %s: %r, now %r', key, path, old, new)
    if not differences:
        logger.warning('results match %s but the job or settings differ', path)
    return differences


def make_parser():
    parser = argparse.ArgumentParser(
        prog='frobenius-lab',
        description='Exact Frobenius invariants of rings presented over prime fields',
    )
    parser.add_argument('--input', required=True, help='Job file to run')
    parser.add_argument('--emax', type=int, help='Largest Frobenius exponent e')
    parser.add_argument('--json', help='Where to write the run record (default stdout)')
    parser.add_argument('--csv', help='Where to write the table of lambda_e and s_e')
    parser.add_argument('--budget-pairs', type=int, help='Critical pair budget')
    parser.add_argument('--precision', type=int, help='Series precision for tame jobs')
    parser.add_argument('--threads', type=int, default=1, help='Worker threads')
    parser.add_argument('--h5', help='Also archive the run record in this HDF5 file')
    parser.add_argument('--config', help='Configuration file (default: labconfig.ini)')
    parser.add_argument(
        '--log-level', help='Log level on standard error (default from config: INFO)'
    )
    parser.add_argument(
        '--settings-out', help='Write the effective settings of the run to this ini file'
    )
    parser.add_argument(
        '--compare', help='Earlier run record (JSON) to compare the results against'
    )
    return parser


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error('--threads must be at least 1')
    settings = Settings.from_config(LabConfig(args.config))
    try:
        setup_logging('frobenius_lab', args.log_level or settings.terminal_level)
    except ValueError as e:
        parser.error(str(e))
    try:
        with open(args.input) as f:
            text = f.read()
    except OSError as e:
        parser.error('cannot read %s: %s' % (args.input, e))
    try:
        job = parse_job(text).with_overrides(
            e_max=args.emax, precision=args.precision, budget_pairs=args.budget_pairs
        )
        record = run(job, settings, args.threads)
    except FrobeniusLabError as e:
        logger.error('%s: %s', type(e).__name__, e)
        _write(args.json, serialise(error_record(e), indent=1) + '\n')
        return EXIT_CODES.get(e.kind, 1)
    _write(args.json, serialise(record.to_dict(), indent=1) + '\n')
    if args.csv and record.csv_rows:
        with open(args.csv, 'w', newline='') as f:
            csv.writer(f).writerows(record.csv_rows)
    if args.h5:
        save_run_record_h5(args.h5, record.to_dict())
    if args.settings_out:
        save_appconfig(args.settings_out, settings_snapshot(record))
    if args.compare:
        compare_with(args.compare, record)
    return 0


if __name__ == '__main__':
    sys.exit(main())
