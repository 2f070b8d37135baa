import sys
import os

# Add the parent directory to the path so we can import from reports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import io
import json
from fractions import Fraction

import numpy as np
import pytest

from core.catalog import build_catalog
from reports.plots import marked_points, plot_values
from reports.report_document import (
    CATALOG_COLUMNS, ReportDocument, from_plain, to_plain, write_catalog_csv,
)


def test_plain_conversion():
    assert to_plain({'a': Fraction(1, 3), 'b': (1, 2), 'c': np.float64(0.5)}) == \
        {'a': '1/3', 'b': [1, 2], 'c': 0.5}
    assert from_plain(['1/3', '-2/1', 'text']) == [Fraction(1, 3), Fraction(-2), 'text']


def test_report_round_trip():
    doc = ReportDocument('elk', {'n': 5}, {'w': [Fraction(8, 3), Fraction(-2, 3)], 'pair': (1, 2)})
    doc.add_verdict('signature', True, 'ok')
    restored = ReportDocument.from_json(doc.to_json())
    assert restored == doc
    assert json.loads(doc.to_json())['results']['w'] == ['8/3', '-2/3']


def test_exit_codes():
    doc = ReportDocument('catalog')
    assert doc.passed and doc.exit_code == 0
    doc.add_verdict('count', False, '3 != 4')
    assert not doc.passed and doc.exit_code == 1


def test_write_report(tmp_path):
    path = tmp_path / 'report.json'
    doc = ReportDocument('identities', {'m_max': 3})
    doc.write(str(path))
    assert ReportDocument.from_json(path.read_text()) == doc


def test_catalog_csv():
    buffer = io.StringIO()
    write_catalog_csv(build_catalog(3), buffer)
    lines = buffer.getvalue().splitlines()
    assert lines[0] == ','.join(CATALOG_COLUMNS)
    assert len(lines) == 4
    assert lines[1].startswith('3,RegularStar,+++,1,3,0,')


def test_marked_points():
    points = marked_points(5)
    assert [(p.b, p.omega) for p in points] == [(0, 1), (0, 2), (1, 1)]
    assert [p.is_maximum for p in points] == [True, True, False]


def test_plot_values_writes_svg_and_csv(tmp_path):
    out = tmp_path / 'values.svg'
    result = plot_values(7, str(out))
    assert out.read_text().lstrip().startswith('<?xml')
    rows = (tmp_path / 'values.csv').read_text().splitlines()
    assert rows[0] == 'b,omega,x,critical_value'
    assert len(rows) == len(result.points) + 1 == 7


def test_plot_values_rejects_missing_directory(tmp_path):
    with pytest.raises(ValueError):
        plot_values(5, str(tmp_path / 'missing' / 'values.svg'))


def test_plot_values_rejects_csv_output_name(tmp_path):
    out = tmp_path / 'values.csv'
    with pytest.raises(ValueError):
        plot_values(5, str(out))
    assert not out.exists()
