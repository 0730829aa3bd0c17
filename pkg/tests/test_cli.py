"""
Tests for the quadlat command line.
Commands are driven through main() with captured stdout/stderr.
"""
import json

import pytest

from src.quadlat.cli.run import build_parser, main
from src.quadlat.services import verification_service
from src.quadlat.services.verify import CheckResult

I4 = '[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]'
I3 = '[[1,0,0],[0,1,0],[0,0,1]]'

DEMO_FILE = {
    'instances': [{
        'gram': [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        'h': [0, 0, 0, 1],
    }]
}


def _write(tmp_path, data, name='instances.json'):
    path = tmp_path / name
    path.write_text(data if isinstance(data, str) else json.dumps(data), encoding='utf-8')
    return str(path)


def _error(capsys):
    lines = [line for line in capsys.readouterr().err.splitlines() if line.startswith('{')]
    return json.loads(lines[-1])


class TestParser:
    """Test suite for argument parsing."""

    def test_subcommands(self):
        """Test that each subcommand binds a handler."""
        parser = build_parser()
        for argv in (['verify'], ['invariants', '--gram', I3], ['gen']):
            assert callable(parser.parse_args(argv).handler)

    def test_missing_command(self):
        """Test that no subcommand is a usage error."""
        assert main([]) == 2

    def test_conflicting_sources(self, tmp_path):
        """Test that --instances and --gen cannot be combined."""
        assert main(['verify', '--gen', '--instances', _write(tmp_path, DEMO_FILE)]) == 2

    @pytest.mark.parametrize('argv', [
        ['gen', '--count', '-1'],
        ['verify', '--workers', '0'],
        ['gen', '--max-prime', '1'],
    ])
    def test_bad_numeric_flags(self, argv, capsys):
        """Test that out-of-range flags exit with 2."""
        assert main(argv) == 2
        assert 'error' in capsys.readouterr().err


class TestInvariantsCommand:
    """Test suite for the invariants command."""

    def test_sum_of_four_squares(self, capsys):
        """Test the invariants of I_4."""
        assert main(['--quiet', 'invariants', '--gram', I4]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data['n'] == 4
        assert data['delta'] == 1
        assert data['ram'] == [2, 'inf']
        assert data['s_inf'] == 4
        assert data['t_2'] == 4
        assert data['t_3'] == 0

    def test_ternary(self, capsys):
        """Test that delta of I_3 is -1."""
        assert main(['--quiet', 'invariants', '--gram', I3]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data['n'] == 3
        assert data['delta'] == -1

    def test_explicit_primes(self, capsys):
        """Test that --primes selects the reported core dimensions."""
        assert main(['--quiet', 'invariants', '--gram', I3, '--primes', '5,7']) == 0
        data = json.loads(capsys.readouterr().out)
        assert 't_5' in data and 't_7' in data
        assert 't_2' not in data

    def test_table_format(self, capsys):
        """Test the plain-text table output."""
        assert main(['--quiet', 'invariants', '--gram', I3, '--format', 'table']) == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0].startswith('n ')

    def test_singular_gram(self, capsys):
        """Test that a singular Gram matrix exits with 2."""
        assert main(['--quiet', 'invariants', '--gram', '[[1,1],[1,1]]']) == 2
        assert _error(capsys)['code'] == 'DEGENERATE_FORM'

    @pytest.mark.parametrize('gram,code', [
        ('[[1,0],[0', 'INVALID_JSON'),
        ('[[1.5,0],[0,1]]', 'INVALID_RATIONAL'),
        ('[[1,0],[0]]', 'INVALID_SHAPE'),
    ])
    def test_malformed_gram(self, gram, code, capsys):
        """Test that malformed matrices are input errors."""
        assert main(['--quiet', 'invariants', '--gram', gram]) == 2
        assert _error(capsys)['code'] == code

    def test_bad_primes(self, capsys):
        """Test that a non-prime in --primes is rejected."""
        assert main(['--quiet', 'invariants', '--gram', I3, '--primes', '4']) == 2
        assert _error(capsys)['code'] == 'INVALID_ARGUMENTS'


class TestGenCommand:
    """Test suite for the gen command."""

    def test_deterministic(self, tmp_path):
        """Test that one seed writes byte-identical files."""
        a, b = tmp_path / 'a.json', tmp_path / 'b.json'
        assert main(['--quiet', 'gen', '--seed', '5', '--count', '3', '-o', str(a)]) == 0
        assert main(['--quiet', 'gen', '--seed', '5', '--count', '3', '-o', str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()
        data = json.loads(a.read_text(encoding='utf-8'))
        assert len(data['instances']) == 3

    def test_empty_corpus(self, capsys):
        """Test that --count 0 prints an empty instance list."""
        assert main(['--quiet', 'gen', '--count', '0']) == 0
        assert json.loads(capsys.readouterr().out) == {'instances': []}

    def test_rationals_are_strings(self, capsys):
        """Test that entries are written as 'p/q' strings."""
        assert main(['--quiet', 'gen', '--seed', '1', '--count', '2']) == 0
        data = json.loads(capsys.readouterr().out)
        for item in data['instances']:
            assert all(isinstance(x, str) for row in item['gram'] for x in row)
            assert all(isinstance(x, str) for x in item['h'])


class TestVerifyCommand:
    """Test suite for the verify command."""

    def test_demo_file_passes(self, tmp_path, capsys):
        """Test that the demo instance verifies with exit code 0."""
        path = _write(tmp_path, DEMO_FILE)
        assert main(['--quiet', 'verify', '--instances', path, '--samples', '1']) == 0
        report = json.loads(capsys.readouterr().out)
        assert report['meta']['count'] == 1
        assert report['meta']['instances'] == path
        assert 'version' in report['meta']
        assert report['summary']['theorem1'] == {'passed': 1, 'failed': 0}
        assert all(c['pass'] for c in report['results'][0]['checks'])

    def test_report_file(self, tmp_path, capsys):
        """Test that --report writes the report instead of printing it."""
        path = _write(tmp_path, DEMO_FILE)
        out = tmp_path / 'report.json'
        assert main(['--quiet', 'verify', '--instances', path, '--samples', '0',
                     '--report', str(out)]) == 0
        assert capsys.readouterr().out == ''
        assert json.loads(out.read_text(encoding='utf-8'))['results'][0]['id'] == 0

    def test_generated_corpus(self, capsys):
        """Test verify on a generated corpus."""
        assert main(['--quiet', 'verify', '--gen', '--seed', '42', '--count', '1',
                     '--samples', '0']) == 0
        report = json.loads(capsys.readouterr().out)
        assert report['meta'] == {**report['meta'], 'seed': 42, 'count': 1}

    def test_supplied_lattice(self, tmp_path, capsys):
        """Test an instance carrying its own maximal lattice."""
        data = {'instances': [dict(DEMO_FILE['instances'][0], lattice=[
            [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], ['1/2', '1/2', '1/2', '1/2'],
        ])]}
        assert main(['--quiet', 'verify', '--instances', _write(tmp_path, data),
                     '--samples', '0']) == 0

    @pytest.mark.parametrize('content,code', [
        ('{"instances": [', 'INVALID_JSON'),
        ({'cases': []}, 'MISSING_FIELD'),
        ({'instances': [{'gram': [[1, 0, 0, 0]] * 4}]}, 'MISSING_FIELD'),
        ({'instances': [{'gram': [[1.0, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
                         'h': [0, 0, 0, 1]}]}, 'INVALID_RATIONAL'),
        ({'instances': [{'gram': [[1, 0, 0], [0, 1, 0], [0, 0, 1]], 'h': [0, 0, 1]}]},
         'INVALID_SHAPE'),
    ])
    def test_malformed_instance_file(self, tmp_path, content, code, capsys):
        """Test that malformed instance files exit with 2."""
        assert main(['--quiet', 'verify', '--instances', _write(tmp_path, content)]) == 2
        assert _error(capsys)['code'] == code

    def test_missing_file(self, tmp_path, capsys):
        """Test that an unreadable file is an input error."""
        assert main(['--quiet', 'verify', '--instances', str(tmp_path / 'nope.json')]) == 2
        assert _error(capsys)['code'] == 'FILE_ERROR'

    def test_isotropic_instance(self, tmp_path, capsys):
        """Test that phi[h] = 0 is an input error."""
        data = {'instances': [{
            'gram': [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
            'h': [1, 1, 0, 0],
        }]}
        assert main(['--quiet', 'verify', '--instances', _write(tmp_path, data)]) == 2
        assert _error(capsys)['code'] == 'ISOTROPIC_VECTOR'

    def test_failed_check_exits_1(self, tmp_path, capsys, monkeypatch):
        """Test that a failing check gives exit code 1 and a failed report entry."""
        def failing(inst):
            return CheckResult(name='theorem1', passed=False, lhs='a', rhs='b',
                               failures=('lattice',))

        monkeypatch.setattr(verification_service, 'check_theorem1', failing)
        path = _write(tmp_path, DEMO_FILE)
        assert main(['--quiet', 'verify', '--instances', path, '--samples', '0']) == 1
        report = json.loads(capsys.readouterr().out)
        assert report['summary']['theorem1'] == {'passed': 0, 'failed': 1}
