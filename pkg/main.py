import argparse
import logging
import sys

from core.config import Config
from handlers.acceptance import AcceptanceSuite
from handlers.algebra_handlers import AlgebraHandlers
from handlers.geometry_handlers import GeometryHandlers

# Set up logging
logging.basicConfig(level=getattr(logging, Config.LOG_LEVEL.upper(), logging.INFO),
                    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger('main')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='polygon-workbench',
        description='Critical points of the signed area of polygons inscribed in a circle.')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('catalog', help='enumerate the predicted isolated critical points')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--format', choices=['json', 'csv'], default='json')
    p.add_argument('--out', help='write the output to this file instead of stdout')

    p = sub.add_parser('classify', help='classify a configuration given as comma-separated angles')
    p.add_argument('--angles', required=True, help='alpha_1..alpha_{n-1}, comma-separated')
    p.add_argument('--tol', type=float, default=None)

    p = sub.add_parser('spectrum', help='closed-form versus numeric Hessian spectrum of a star')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--b', type=int, required=True)
    p.add_argument('--omega', type=int, required=True)

    p = sub.add_parser('elk', help='signature of the ELK form at the degenerate star')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--dump', help='write the matrix B as JSON to this file')

    p = sub.add_parser('intersect', help='eigenvalues of Johnson-scheme intersection matrices')
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--b', help='comma-separated b_0..b_m (rationals allowed)')
    p.add_argument('--samples', type=int, default=3)
    p.add_argument('--seed', type=int, default=Config.SEARCH_SEED)

    p = sub.add_parser('identities', help='exact checks of the hypergeometric identities')
    p.add_argument('--m-max', type=int, default=10)

    p = sub.add_parser('search', help='multistart Newton search on the torus')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--starts', type=int, default=None)
    p.add_argument('--seed', type=int, default=Config.SEARCH_SEED)
    p.add_argument('--tol', type=float, default=None)
    p.add_argument('--max-iters', type=int, default=None)
    p.add_argument('--radius', type=float, default=None)
    p.add_argument('--threads', type=int, default=None)

    p = sub.add_parser('plot-values', help='SVG of critical values against the common angle')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--out', required=True)

    p = sub.add_parser('verify-all', help='run the acceptance checks')
    p.add_argument('--n-max', type=int, default=7)
    p.add_argument('--search-n-max', type=int, default=None)
    p.add_argument('--samples', type=int, default=20)
    p.add_argument('--seed', type=int, default=Config.SEARCH_SEED)
    return parser


def dispatch(args):
    handlers = {
        'catalog': GeometryHandlers.catalog,
        'classify': GeometryHandlers.classify,
        'spectrum': GeometryHandlers.spectrum,
        'elk': AlgebraHandlers.elk,
        'intersect': AlgebraHandlers.intersect,
        'identities': AlgebraHandlers.identities,
        'search': GeometryHandlers.search,
        'plot-values': GeometryHandlers.plot_values,
        'verify-all': lambda a: AcceptanceSuite.run(a.n_max, a.search_n_max, a.samples, a.seed),
    }
    return handlers[args.command](args)


def emit(text: str, out: str = None):
    if out:
        with open(out, 'w') as handle:
            handle.write(text)
        logger.info(f"Wrote {out}")
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    """Entry point. Returns 0 when every verdict passed, 1 on a failed verdict, 2 on bad input."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0

    try:
        report = dispatch(args)
        if args.command == 'catalog' and args.format == 'csv':
            emit(GeometryHandlers.catalog_csv(args), args.out)
        else:
            emit(report.to_json() + '\n', getattr(args, 'out', None) if args.command == 'catalog' else None)
    except (ValueError, OSError) as e:
        logger.error(f"{args.command} failed: {e}")
        return 2

    for verdict in report.verdicts:
        if not verdict.passed:
            logger.warning(f"FAILED: {verdict.name} {verdict.details}")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(run())
