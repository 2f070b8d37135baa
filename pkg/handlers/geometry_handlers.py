import io
import logging
import math

from core.catalog import (
    CriticalSpec, NotCritical, SignPattern, build_catalog, classify, count_by_b,
    critical_value, realize, star_spec,
)
from core.config import Config
from core.morse import (
    closed_form_spectrum, morse_index, negative_count, numeric_spectrum, spectra_match,
)
from core.polygon import Configuration, gradient, signed_area
from reports.plots import plot_values
from reports.report_document import ReportDocument, catalog_row, write_catalog_csv
from search.torus_search import SearchConfig, match_catalog, multistart_search

logger = logging.getLogger(__name__)


def spec_summary(spec: CriticalSpec) -> dict:
    return {
        'class': str(spec.critical_class),
        'pattern': str(spec.pattern),
        'omega': spec.omega,
        'f': spec.f,
        'b': spec.b,
        'm': spec.m,
        'theta': spec.theta,
    }


class GeometryHandlers:
    """Handlers for the polygon, catalog, spectrum and search subcommands."""

    @staticmethod
    def catalog(args) -> ReportDocument:
        n = args.n
        entries = build_catalog(n)
        report = ReportDocument('catalog', {'n': n, 'format': args.format})
        report.results = {'count': len(entries), 'entries': [catalog_row(e) for e in entries]}

        expected = sum(count_by_b(n, b) for b in range(n + 1) if 2 * b != n) + n % 2
        report.add_verdict('catalog count matches sum of C(n,b)(m-b)', len(entries) == expected,
                           f"{len(entries)} specs, expected {expected}")
        worst_gradient = max(float(abs(gradient(realize(e.spec))).max()) for e in entries)
        report.add_verdict('gradient vanishes at realized specs', worst_gradient < 1e-12,
                           f"max sup-norm {worst_gradient:.3g}")
        worst_value = max(abs(signed_area(realize(e.spec)) - e.critical_value) for e in entries)
        report.add_verdict('critical value equals signed area', worst_value <= Config.CRITICAL_VALUE_TOL,
                           f"max deviation {worst_value:.3g}")
        round_trip = all(classify(realize(e.spec)) == e.spec for e in entries)
        report.add_verdict('classify inverts realize', round_trip)
        return report

    @staticmethod
    def catalog_csv(args) -> str:
        buffer = io.StringIO()
        write_catalog_csv(build_catalog(args.n), buffer)
        return buffer.getvalue()

    @staticmethod
    def classify(args) -> ReportDocument:
        angles = [float(a) for a in args.angles.split(',') if a.strip()]
        cfg = Configuration.from_array(angles)
        result = classify(cfg, args.tol)
        report = ReportDocument('classify', {'angles': angles, 'tol': args.tol})
        if isinstance(result, NotCritical):
            report.results = {'critical': False, 'gradient_norm': result.gradient_norm, 'reason': result.reason}
        else:
            report.results = {'critical': True, **spec_summary(result)}
            if result.critical_class.is_isolated_star:
                report.results['morse_index'] = morse_index(result)
                report.results['critical_value'] = critical_value(result)
        report.results['signed_area'] = signed_area(cfg)
        return report

    @staticmethod
    def spectrum(args) -> ReportDocument:
        n, b = args.n, args.b
        f = n - b
        if f == b:
            raise ValueError(f"b={b} gives f == b: no isolated critical points")
        omega = abs(args.omega) if f > b else -abs(args.omega)
        spec = star_spec(SignPattern.with_backward(n, range(b)), omega)
        closed = closed_form_spectrum(spec)
        numeric = numeric_spectrum(realize(closed.spec))

        report = ReportDocument('spectrum', {'n': n, 'b': b, 'omega': omega})
        report.results = {
            'spec': spec_summary(closed.spec),
            'p': closed.p,
            'closed_form': [[v, mult] for v, mult in closed.eigenvalues],
            'closed_form_source': closed.source,
            'numeric': numeric,
            'morse_index': morse_index(spec),
        }
        report.add_verdict('closed form matches eigensolver', spectra_match(closed.values(), numeric))
        report.add_verdict('negative eigenvalues equal the index rule',
                           negative_count(numeric) == morse_index(spec),
                           f"{negative_count(numeric)} negative, rule gives {morse_index(spec)}")
        return report

    @staticmethod
    def search(args) -> ReportDocument:
        overrides = {}
        for key, attr in (('tol', 'newton_tol'), ('max_iters', 'max_iters'),
                          ('radius', 'cluster_radius'), ('threads', 'threads')):
            value = getattr(args, key, None)
            if value is not None:
                overrides[attr] = value
        search = SearchConfig.for_n(args.n, seed=args.seed, starts=args.starts, **overrides)
        found = multistart_search(search)
        match = match_catalog(found, args.n, search.spread_tol)
        return GeometryHandlers.search_report(search, found, match)

    @staticmethod
    def search_report(search: SearchConfig, found, match) -> ReportDocument:
        report = ReportDocument('search', {
            'n': search.n, 'starts': search.starts, 'seed': search.seed,
            'newton_tol': search.newton_tol, 'max_iters': search.max_iters,
            'cluster_radius': search.cluster_radius,
        })
        report.results = {
            'clusters': len(found),
            'predicted': match.predicted,
            'hits': match.hit_count,
            'misses': [str(s) for s in match.misses],
            'train_points': match.train_points,
            'branch_endpoints': match.branch_endpoints,
            'anomalies': [f"{p.configuration.alphas}: {reason}" for p, reason in match.anomalies],
            'max_hit_distance': max(match.hits.values(), default=0.0),
        }
        report.add_verdict(f"all {match.predicted} isolated critical points found", not match.misses,
                           f"{match.hit_count}/{match.predicted} hit")
        report.add_verdict('no anomalies', not match.anomalies, f"{len(match.anomalies)} anomalies")
        return report

    @staticmethod
    def plot_values(args) -> ReportDocument:
        result = plot_values(args.n, args.out)
        report = ReportDocument('plot-values', {'n': args.n, 'out': args.out})
        report.results = {
            'svg': result.svg_path,
            'csv': result.csv_path,
            'points': [[p.b, p.omega, p.x, p.critical_value] for p in result.points],
        }
        consistent = all(
            math.isclose(p.critical_value,
                         critical_value(star_spec(SignPattern.with_backward(args.n, range(p.b)), p.omega)),
                         abs_tol=Config.CRITICAL_VALUE_TOL)
            for p in result.points
        )
        report.add_verdict('marked points equal catalog critical values', consistent)
        return report
