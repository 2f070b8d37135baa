import logging
from fractions import Fraction

import numpy as np

from algebra.elk import build_B, dump_matrix, elk_report
from algebra.identities import (
    g_recurrence_sweep, key_identity_sweep, sum_F, sum_F_closed_form, verify_sum_recurrence,
)
from algebra.intersection import (
    IntersectionMatrixSpec, eigenspace_dimensions, lambda_formula, mu, predict_spectrum,
    specialized_eigenvalues, random_b, specialized_b, verify_spectrum,
)
from reports.report_document import ReportDocument

logger = logging.getLogger(__name__)


def parse_b(text: str):
    return tuple(Fraction(v.strip()) for v in text.split(',') if v.strip())


class AlgebraHandlers:
    """Handlers for the exact-arithmetic subcommands."""

    @staticmethod
    def elk(args) -> ReportDocument:
        n = args.n
        results = elk_report(n)
        report = ReportDocument('elk', {'n': n}, results)
        report.add_verdict('signature equals degenerate-star gradient index',
                           results['signature'] == results['degenerate_index'],
                           f"signature {results['signature']}, index {results['degenerate_index']}")
        report.add_verdict('signature equals 2(-1)^m C(2m-1, m-1)',
                           results['signature'] == results['closed_form_index'])
        report.add_verdict('signature equals middle-block signature',
                           results['signature'] == results['middle_block_signature'])
        report.add_verdict('form is nondegenerate', results['zeros'] == 0, f"{results['zeros']} zeros")
        report.add_verdict('off-middle blocks are hyperbolic',
                           results['off_middle_signature'] == 0 and results['off_middle_zeros'] == 0)
        report.add_verdict('hessian class is n * w_m', results['hessian_class_coefficient'] == n)
        if getattr(args, 'dump', None):
            dump_matrix(build_B(n), args.dump)
            report.results['dump'] = args.dump
        return report

    @staticmethod
    def check_intersection_spec(report: ReportDocument, spec: IntersectionMatrixSpec, label: str) -> dict:
        prediction = predict_spectrum(spec)
        report.add_verdict(f"{label}: characteristic polynomial factors as predicted", verify_spectrum(spec))
        dims = eigenspace_dimensions(spec)
        report.add_verdict(f"{label}: eigenspace dimensions equal mu",
                           all(predicted == observed for _, predicted, observed in dims),
                           '; '.join(f"{lam}: {predicted}/{observed}" for lam, predicted, observed in dims))
        return {'b': list(spec.b), 'lambdas': list(prediction.lambdas), 'mus': list(prediction.mus)}

    @staticmethod
    def intersect(args) -> ReportDocument:
        m = args.m
        report = ReportDocument('intersect', {'m': m, 'b': args.b, 'samples': args.samples, 'seed': args.seed})
        checked = []
        if args.b:
            checked.append(AlgebraHandlers.check_intersection_spec(
                report, IntersectionMatrixSpec(m, parse_b(args.b)), 'given b'))
        else:
            spec = IntersectionMatrixSpec(m, specialized_b(m))
            checked.append(AlgebraHandlers.check_intersection_spec(report, spec, 'specialized b'))
            rng = np.random.default_rng(args.seed)
            for i in range(args.samples):
                spec = IntersectionMatrixSpec(m, random_b(m, rng))
                checked.append(AlgebraHandlers.check_intersection_spec(report, spec, f"random b #{i + 1}"))
            eigs = specialized_eigenvalues(m)
            formula = tuple(lambda_formula(m, k, specialized_b(m)) for k in range(m + 1))
            report.add_verdict('specialized eigenvalues equal (-1)^m (2m+1)/(2m-2k+1)', eigs == formula)
        report.results = {'checked': checked, 'mu': [mu(m, k) for k in range(m + 1)]}
        return report

    @staticmethod
    def identities(args) -> ReportDocument:
        m_max = args.m_max
        report = ReportDocument('identities', {'m_max': m_max})
        key_failures = key_identity_sweep(m_max)
        g_failures = g_recurrence_sweep(m_max)
        sum_failures = [(m, k) for m in range(m_max + 1) for k in range(m + 1)
                        if sum_F(m, k) != sum_F_closed_form(m, k)]
        spec_failures = [(m, k) for m in range(1, m_max + 1) for k in range(m + 1)
                         if sum_F(m, k) != lambda_formula(m, k, specialized_b(m))]
        recurrence_failures = [(m, k) for m in range(m_max + 1) for k in range(m + 1)
                               if not verify_sum_recurrence(m, k)]
        report.results = {
            'key_identity_failures': key_failures,
            'g_recurrence_failures': g_failures,
            'sum_failures': sum_failures,
            'lambda_failures': spec_failures,
            'sum_recurrence_failures': recurrence_failures,
            'sums': {str(m): [sum_F(m, k) for k in range(m + 1)] for m in range(m_max + 1)},
        }
        report.add_verdict('key identity over the full stencil', not key_failures,
                           f"m in 4..{m_max}" if m_max >= 4 else 'no m >= 4 requested')
        report.add_verdict('g recurrence', not g_failures)
        report.add_verdict('sum of F equals (-1)^m (2m+1)/(2(m-k)+1)', not sum_failures)
        report.add_verdict('sum of F equals specialized lambda_k', not spec_failures)
        report.add_verdict('summed key identity', not recurrence_failures)
        return report
