import logging
import math
from collections import Counter

import numpy as np

from algebra.elk import block_signature_check, closed_form_index, elk_index
from algebra.identities import (
    g_recurrence_sweep, key_identity_sweep, sum_F, sum_F_closed_form,
)
from algebra.intersection import (
    IntersectionMatrixSpec, eigenspace_dimensions, lambda_formula, specialized_eigenvalues,
    random_b, specialized_b, verify_spectrum,
)
from algebra.milnor import (
    derive_top_relations, hessian_class_by_reduction, hessian_class_coefficient,
    verify_three_term_relations, w_values,
)
from core.catalog import (
    CriticalClass, SignPattern, critical_value, enumerate_isolated, enumerate_train_branches,
    realize, star_spec, train_spec,
)
from core.config import Config
from core.morse import (
    degenerate_index, morse_index, poincare_hopf_ledger, spectrum_check, verify_index_identity,
)
from core.polygon import signed_area
from reports.report_document import ReportDocument
from search.torus_search import SearchConfig, match_catalog, multistart_search

logger = logging.getLogger(__name__)

REFERENCE_W = {
    1: ('-2', '1'),
    2: ('8/3', '-2/3', '1'),
    3: ('-16/5', '8/15', '-2/5', '1'),
}


class AcceptanceSuite:
    """Runs the acceptance checks up to a polygon size n_max."""

    @staticmethod
    def run(n_max: int, search_n_max: int = None, samples: int = 20, seed: int = None) -> ReportDocument:
        if n_max < 3:
            raise ValueError(f"n_max must be at least 3, got {n_max}")
        search_n_max = AcceptanceSuite.default_search_n_max(n_max) if search_n_max is None else search_n_max
        seed = Config.SEARCH_SEED if seed is None else seed
        report = ReportDocument('verify-all', {'n_max': n_max, 'search_n_max': search_n_max,
                                               'samples': samples, 'seed': seed})
        results = {}
        for step in (AcceptanceSuite.catalog_counts, AcceptanceSuite.poincare_hopf,
                     AcceptanceSuite.index_identity, AcceptanceSuite.spectra,
                     AcceptanceSuite.elk, AcceptanceSuite.w_vector, AcceptanceSuite.hessian_class,
                     AcceptanceSuite.intersection, AcceptanceSuite.specialized_spectrum,
                     AcceptanceSuite.identities, AcceptanceSuite.critical_values):
            logger.info(f"Acceptance step {step.__name__}")
            results[step.__name__] = step(report, n_max, samples, seed)
        logger.info("Acceptance step search")
        results['search'] = AcceptanceSuite.search(report, search_n_max, seed)
        report.results = results
        failed = [v.name for v in report.verdicts if not v.passed]
        if failed:
            logger.warning(f"{len(failed)} acceptance checks failed: {failed}")
        return report

    @staticmethod
    def default_search_n_max(n_max: int) -> int:
        return min(n_max, 7)

    @staticmethod
    def catalog_counts(report, n_max, samples, seed):
        counts = {}
        for n in range(3, n_max + 1):
            specs = enumerate_isolated(n)
            counts[str(n)] = len(specs)
            if n == 7:
                by_b = Counter(s.b for s in specs if s.critical_class.is_isolated_star)
                indices = {s.b: morse_index(s) for s in specs if s.critical_class.is_isolated_star}
                degenerate = sum(1 for s in specs if s.critical_class is CriticalClass.DEGENERATE_STAR)
                report.add_verdict('n=7 counts 3,14,21,21,14,3 plus one degenerate star',
                                   [by_b[b] for b in (0, 1, 2, 5, 6, 7)] == [3, 14, 21, 21, 14, 3]
                                   and degenerate == 1 and len(specs) == 77)
                report.add_verdict('n=7 Morse indices 6,5,4,2,1,0',
                                   [indices[b] for b in (0, 1, 2, 5, 6, 7)] == [6, 5, 4, 2, 1, 0])
        return counts

    @staticmethod
    def poincare_hopf(report, n_max, samples, seed):
        totals = {}
        for n in sorted(set(range(3, n_max + 1, 2)) | {3, 5, 7, 9}):
            ledger = poincare_hopf_ledger(n)
            totals[str(n)] = [ledger.total, ledger.degenerate_index]
            report.add_verdict(f"Poincare-Hopf sum n={n}", ledger.total == 0,
                               f"contributions {[r.contribution for r in ledger.contributions]}, "
                               f"index {ledger.degenerate_index}")
        return totals

    @staticmethod
    def index_identity(report, n_max, samples, seed):
        failures = [n for n in range(3, 102, 2) if not verify_index_identity(n)]
        report.add_verdict('alternating index sum equals 2(-1)^m C(n-2, m-1) for odd n <= 101', not failures)
        return failures

    @staticmethod
    def spectra(report, n_max, samples, seed):
        bad = []
        for n in range(3, max(n_max, 12) + 1):
            bad.extend(str(row.spec) for row in spectrum_check(n) if not row.passed)
        report.add_verdict('closed-form spectra and indices for n <= 12', not bad,
                           f"{len(bad)} mismatches")
        return bad

    @staticmethod
    def elk(report, n_max, samples, seed):
        signatures = {}
        for n in range(3, min(n_max, 9) + 1, 2):
            signature = elk_index(n)
            signatures[str(n)] = signature
            report.add_verdict(f"ELK signature n={n}",
                               signature == degenerate_index(n) == closed_form_index(n),
                               f"signature {signature}, index {degenerate_index(n)}")
            report.add_verdict(f"ELK middle block n={n}", block_signature_check(n))
        return signatures

    @staticmethod
    def w_vector(report, n_max, samples, seed):
        reference_ok = all(tuple(str(v) for v in w_values(m).values) == REFERENCE_W[m] for m in REFERENCE_W)
        report.add_verdict('w-vector closed form for m = 1, 2, 3', reference_ok)
        report.add_verdict('three-term relations for m = 1..6',
                           all(verify_three_term_relations(m) for m in range(1, 7)))
        derived = {}
        for n in (5, 7):
            if n > n_max:
                continue
            space = derive_top_relations(n)
            ok = space.dimension == 1 and space.normalized() == w_values((n - 1) // 2).values
            derived[str(n)] = [list(v) for v in space.basis]
            report.add_verdict(f"derived top-degree relations n={n}", ok,
                               f"solution space dimension {space.dimension}")
        return derived

    @staticmethod
    def hessian_class(report, n_max, samples, seed):
        values = {str(n): hessian_class_coefficient(n) for n in (3, 5, 7, 9)}
        report.add_verdict('[h_f] = n w_m for n = 3, 5, 7, 9',
                           all(values[str(n)] == n for n in (3, 5, 7, 9)))
        reduced = {str(n): hessian_class_by_reduction(n) for n in (3, 5)}
        report.add_verdict('[h_f] by reduction of the Hessian determinant for n = 3, 5',
                           all(reduced[str(n)] == n for n in (3, 5)),
                           f"reduced {reduced}")
        return {'closed_form': values, 'reduction': reduced}

    @staticmethod
    def intersection(report, n_max, samples, seed):
        rng = np.random.default_rng(seed)
        m_top = min(max((n_max - 1) // 2, 1), Config.MAX_SPECTRUM_M)
        failures = []
        for m in range(1, m_top + 1):
            tuples = [specialized_b(m)] + [random_b(m, rng) for _ in range(samples)]
            for b in tuples:
                spec = IntersectionMatrixSpec(m, b)
                dims_ok = all(p == o for _, p, o in eigenspace_dimensions(spec))
                if not (verify_spectrum(spec) and dims_ok):
                    failures.append([m, list(b)])
        report.add_verdict(f"intersection spectra for m <= {m_top}", not failures,
                           f"{samples} random tuples per m")
        return failures

    @staticmethod
    def specialized_spectrum(report, n_max, samples, seed):
        ok = all(
            tuple(lambda_formula(m, k, specialized_b(m)) for k in range(m + 1)) == specialized_eigenvalues(m)
            for m in range(1, 9)
        )
        report.add_verdict('specialized lambda_k equal (-1)^m (2m+1)/(2m-2k+1) for m <= 8', ok)
        return ok

    @staticmethod
    def identities(report, n_max, samples, seed):
        key = key_identity_sweep(10)
        g = g_recurrence_sweep(10)
        sums = [(m, k) for m in range(21) for k in range(m + 1) if sum_F(m, k) != sum_F_closed_form(m, k)]
        report.add_verdict('key identity for 4 <= m <= 10', not key, f"{len(key)} failures")
        report.add_verdict('g recurrence for m <= 10', not g, f"{len(g)} failures")
        report.add_verdict('closed-form sums of F for m <= 20', not sums, f"{len(sums)} failures")
        return {'key': key, 'g': g, 'sums': sums}

    @staticmethod
    def critical_values(report, n_max, samples, seed):
        worst = 0.0
        for n in range(3, max(n_max, 12) + 1):
            for spec in enumerate_isolated(n):
                worst = max(worst, abs(signed_area(realize(spec)) - critical_value(spec)))
            if n % 2 == 0:
                for pattern in enumerate_train_branches(n)[:4]:
                    worst = max(worst, abs(signed_area(realize(train_spec(pattern, math.pi / 3)))))
        report.add_verdict('signed area equals critical value for n <= 12',
                           worst <= Config.CRITICAL_VALUE_TOL, f"max deviation {worst:.3g}")
        values = [critical_value(star_spec(SignPattern.forward(7), omega)) for omega in (1, 2, 3)]
        report.add_verdict('n=7 absolute maximum at the star omega=2',
                           values[1] > values[0] and values[1] > values[2],
                           f"values {values}")
        return worst

    @staticmethod
    def search(report, search_n_max, seed):
        summary = {}
        for n in range(3, search_n_max + 1):
            search = SearchConfig.for_n(n, seed=seed)
            match = match_catalog(multistart_search(search), n, search.spread_tol)
            summary[str(n)] = {'hits': match.hit_count, 'predicted': match.predicted,
                               'anomalies': len(match.anomalies), 'train_points': match.train_points}
            report.add_verdict(f"search recovers all isolated points n={n}", not match.misses,
                               f"{match.hit_count}/{match.predicted}")
            report.add_verdict(f"search has no anomalies n={n}", not match.anomalies)
            if n % 2 == 0:
                report.add_verdict(f"residual clusters lie on train branches n={n}",
                                   not match.anomalies and match.train_points + match.branch_endpoints > 0)
        return summary
