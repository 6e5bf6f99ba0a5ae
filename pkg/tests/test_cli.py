"""Command-line surface: sub-command dispatch, output routing and exit codes"""
import argparse
import csv
import io
import json
import math

import pytest

from app import run
from controllers.common import validate_args
from utils.errors import UsageError


def _stdout_json(capsys):
    return json.loads(capsys.readouterr().out)


def test_det_to_stdout(capsys):
    assert run(['det', '--a', '1.0', '--n', '64', '--out', '-']) == 0
    data = _stdout_json(capsys)
    assert data['det_plus'] == pytest.approx(1.6487212707, rel=1e-8)
    assert data['kernel'] == 'standard'


def test_det_sweep_csv(capsys):
    assert run(['det', '--a', '0.5', '1.0', '--format', 'csv', '--out', '-']) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0][:3] == ['a', 'kernel', 'det_plus']
    assert len(rows) == 3


def test_spectral_at_half(capsys):
    assert run(['spectral', '--a', '1', '--s', '0.5', '--out', '-']) == 0
    data = _stdout_json(capsys)
    assert data['E']['re'] == pytest.approx(math.sqrt(math.pi) * math.exp(-2.0), rel=1e-10)
    assert data['E']['im'] == pytest.approx(0.0, abs=1e-14)


def test_identity_catalog(capsys):
    assert run(['identities', '--list', '--out', '-']) == 0
    ids = [entry['id'] for entry in _stdout_json(capsys)['catalog']]
    assert 'weber_sonine' in ids


def test_single_identity_passes(capsys):
    assert run(['identities', '--id', 'weber_sonine', '--draws', '2', '--out', '-']) == 0
    data = _stdout_json(capsys)
    assert data['summary']['fail'] == 0
    assert data['summary']['pass'] == 2


def test_bad_flag_is_usage_error():
    assert run(['det', '--no-such-flag']) == 2
    assert run(['det', '--s', '1,2,3']) == 2
    assert run([]) == 2


def test_missing_input_file(tmp_path, capsys):
    assert run(['expand', '--input', str(tmp_path / 'missing.csv'), '--out', '-']) == 2
    payload = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert payload['error']['code'] == 'USAGE_ERROR'


def test_expand_from_samples(tmp_path, capsys):
    samples = tmp_path / 'tent.csv'
    samples.write_text('x,value\n0,0\n1,1\n2,0\n', encoding='utf-8')
    assert run(['expand', '--input', str(samples), '--n', '32', '--out', '-']) == 0
    data = _stdout_json(capsys)
    assert data['support'] == 2.0
    assert len(data['f']) == len(data['g']) == len(data['y'])


def test_default_output_goes_to_output_dir(output_dir):
    assert run(['det', '--a', '1.0']) == 0
    written = json.loads((output_dir / 'det.json').read_text(encoding='utf-8'))
    assert written['a'] == 1.0


def test_verify_is_reproducible(tmp_path):
    first, second = tmp_path / 'first.json', tmp_path / 'second.json'
    args = ['verify', '--suite', 'all', '--tol-profile', 'fast']
    assert run([*args, '--out', str(first)]) == 0
    assert run([*args, '--workers', '1', '--out', str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    summary = json.loads(first.read_text(encoding='utf-8'))['summary']
    assert summary['fail'] == 0 and summary['seconds'] == 0.0


def _usage_code(capsys):
    return json.loads(capsys.readouterr().err.strip().splitlines()[-1])['error']['code']


@pytest.mark.parametrize('argv', [
    ['det', '--a', '1', '--n', '2'],
    ['det', '--a', '-1'],
    ['det', '--a', '1', '--tol', '-1e-3'],
    ['phi', '--a', '0'],
    ['verify', '--suite', 'specfun', '--workers', '0'],
    ['identities', '--draws', '0'],
    ['dirichlet', '--s', '1000'],
])
def test_out_of_range_flag_is_usage_error(argv, capsys):
    assert run([*argv, '--out', '-']) == 2
    assert _usage_code(capsys) == 'USAGE_ERROR'


def test_report_format_is_validated():
    args = argparse.Namespace(n=64, a=[1.0], s=complex(0.5), tol=None, format='xml')
    with pytest.raises(UsageError, match='report format'):
        validate_args(args)
    validate_args(argparse.Namespace(n=64, a=[0.0, 1.0], s=complex(0.5), tol=1e-8, format='csv'))


def test_verify_stdout_is_byte_identical(capsys):
    args = ['verify', '--suite', 'specfun', '--tol-profile', 'fast', '--out', '-']
    assert run(args) == 0
    first = capsys.readouterr().out
    assert run([*args, '--workers', '1']) == 0
    assert capsys.readouterr().out == first
    assert json.loads(first)['summary']['seconds'] == 0.0
