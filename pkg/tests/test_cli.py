import sys
import os

# Add the parent directory to the path so we can import main
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import json
import math

import pytest

from main import run


def run_json(capsys, argv):
    code = run(argv)
    return code, json.loads(capsys.readouterr().out)


def test_catalog_json(capsys):
    code, data = run_json(capsys, ['catalog', '--n', '5'])
    assert code == 0
    assert data['command'] == 'catalog'
    assert data['results']['count'] == 15
    assert all(v['passed'] for v in data['verdicts'])


def test_catalog_csv_to_file(tmp_path, capsys):
    out = tmp_path / 'catalog.csv'
    assert run(['catalog', '--n', '4', '--format', 'csv', '--out', str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith('n,class,pattern')
    assert len(lines) == 3


def test_classify(capsys):
    theta = 2 * math.pi / 3
    code, data = run_json(capsys, ['classify', '--angles', f"{theta!r},{theta!r}"])
    assert code == 0
    assert data['results']['critical'] is True
    assert data['results']['class'] == 'RegularStar'
    assert data['results']['morse_index'] == 2

    code, data = run_json(capsys, ['classify', '--angles', '0.3,0.5,1.7'])
    assert code == 0
    assert data['results']['critical'] is False


def test_spectrum(capsys):
    code, data = run_json(capsys, ['spectrum', '--n', '7', '--b', '2', '--omega', '1'])
    assert code == 0
    assert data['results']['morse_index'] == 4
    assert run(['spectrum', '--n', '6', '--b', '3', '--omega', '1']) == 2


def test_elk(tmp_path, capsys):
    dump = tmp_path / 'b5.txt'
    code, data = run_json(capsys, ['elk', '--n', '5', '--dump', str(dump)])
    assert code == 0
    assert data['results']['signature'] == 6
    assert data['results']['hessian_class_coefficient'] == '5/1'
    assert len(dump.read_text().splitlines()) == 16


def test_elk_rejects_bad_n():
    assert run(['elk', '--n', '4']) == 2
    assert run(['elk', '--n', '13']) == 2


def test_intersect(capsys):
    code, data = run_json(capsys, ['intersect', '--m', '2', '--samples', '2', '--seed', '1'])
    assert code == 0
    assert data['results']['mu'] == [1, 3, 2]
    code, data = run_json(capsys, ['intersect', '--m', '1', '--b', '2,5'])
    assert code == 0
    assert data['results']['checked'][0]['lambdas'] == ['7/1', '3/1']


def test_identities(capsys):
    code, data = run_json(capsys, ['identities', '--m-max', '6'])
    assert code == 0
    assert data['results']['sums']['1'] == ['-1/1', '-3/1']


def test_search(capsys):
    code, data = run_json(capsys, ['search', '--n', '3', '--seed', '7'])
    assert code == 0
    assert data['results']['hits'] == data['results']['predicted'] == 3



def test_search_with_loose_tolerance(capsys):
    code, data = run_json(capsys, ['search', '--n', '5', '--starts', '20000', '--seed', '42', '--tol', '1e-8'])
    assert code == 0
    assert data['results']['hits'] == data['results']['predicted'] == 15
    assert data['results']['anomalies'] == []

def test_plot_values(tmp_path, capsys):
    out = tmp_path / 'values.svg'
    code, data = run_json(capsys, ['plot-values', '--n', '5', '--out', str(out)])
    assert code == 0
    assert out.exists()
    assert len(data['results']['points']) == 3


def test_usage_errors():
    assert run(['plot-values', '--n', '5', '--out', 'values.csv']) == 2
    assert run([]) == 2
    assert run(['catalog']) == 2
    assert run(['catalog', '--n', '2']) == 2


def test_verify_all_small(capsys):
    code, data = run_json(capsys, ['verify-all', '--n-max', '5', '--search-n-max', '4', '--samples', '2'])
    failed = [v['name'] for v in data['verdicts'] if not v['passed']]
    assert failed == []
    assert code == 0


@pytest.mark.extended
def test_verify_all_default(capsys):
    code, data = run_json(capsys, ['verify-all'])
    assert code == 0
