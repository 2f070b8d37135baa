import sys
import os

# Add the parent directory to the path so we can import from handlers
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from fractions import Fraction

import pytest

from handlers.acceptance import AcceptanceSuite
from reports.report_document import ReportDocument


def test_search_covers_up_to_seven_by_default():
    assert AcceptanceSuite.default_search_n_max(7) == 7
    assert AcceptanceSuite.default_search_n_max(12) == 7
    assert AcceptanceSuite.default_search_n_max(4) == 4


def test_hessian_class_checked_by_reduction():
    report = ReportDocument('verify-all')
    results = AcceptanceSuite.hessian_class(report, 5, 0, 0)
    assert results['reduction'] == {'3': Fraction(3), '5': Fraction(5)}
    assert results['closed_form']['9'] == 9
    names = [v.name for v in report.verdicts]
    assert any('reduction' in name for name in names)
    assert report.passed


def test_spectra_step_includes_listed_configuration_index():
    report = ReportDocument('verify-all')
    assert AcceptanceSuite.spectra(report, 6, 0, 0) == []
    assert report.passed


@pytest.mark.parametrize('n_max', [2, 0])
def test_run_rejects_small_n(n_max):
    with pytest.raises(ValueError):
        AcceptanceSuite.run(n_max)
