import json
import os
from pathlib import Path
from unittest import TestCase
import unittest.mock as mock

from hyperball import classify, cli
from hyperball.utils import dumps

from . import fixtures
from .utils import run_cli, working_directory


def golden(name):
    return str(fixtures.golden_path(name))


class GenTests(TestCase):
    def test_writes_count_files(self):
        with working_directory():
            code, out = run_cli('gen', '--family', 'normal', '--dim', 4, '--count', 3, '--out', 'corpus')
            self.assertEqual(code, cli.EXIT_OK)
            names = sorted(os.listdir('corpus'))
        self.assertEqual(names, ['normal-0000.gel.json', 'normal-0001.gel.json', 'normal-0002.gel.json'])
        self.assertEqual(len(out.splitlines()), 3)

    def test_deterministic(self):
        with working_directory():
            run_cli('gen', '--family', 'reducing', '--count', 2, '--seed', 9, '--out', 'a')
            run_cli('gen', '--family', 'reducing', '--count', 2, '--seed', 9, '--out', 'b')
            for name in os.listdir('a'):
                self.assertEqual(Path('a', name).read_bytes(), Path('b', name).read_bytes())

    def test_generated_files_round_trip(self):
        with working_directory():
            run_cli('gen', '--family', 'parabolic', '--dim', 8, '--count', 2, '--out', 'corpus')
            for path in Path('corpus').iterdir():
                code, out = run_cli('compose', path)
                self.assertEqual(code, cli.EXIT_OK)
                self.assertEqual(out, path.read_text())

    def test_unknown_family(self):
        with working_directory():
            code, _ = run_cli('gen', '--family', 'loxodromic')
        self.assertEqual(code, cli.EXIT_USAGE)

    def test_bad_argument(self):
        code, _ = run_cli('gen', '--dim', 'eight')
        self.assertEqual(code, cli.EXIT_USAGE)
        code, _ = run_cli('rotate')
        self.assertEqual(code, cli.EXIT_USAGE)


class ClassifyTests(TestCase):
    def test_golden_reports(self):
        code, out = run_cli('classify', golden('normal_element.gel.json'))
        self.assertEqual(code, cli.EXIT_OK)
        self.assertEqual(json.loads(out), fixtures.normal_classification)
        code, out = run_cli('classify', golden('involutory_element.gel.json'))
        self.assertEqual(json.loads(out), fixtures.involutory_classification)

    def test_parabolic(self):
        code, out = run_cli('classify', golden('parabolic_element.gel.json'))
        self.assertEqual(code, cli.EXIT_OK)
        self.assertEqual(json.loads(out)['kind'], 'Parabolic')

    def test_corrupted(self):
        code, out = run_cli('classify', golden('corrupted.json'))
        self.assertEqual(code, cli.EXIT_USAGE)
        self.assertEqual(out, '')

    def test_missing_file(self):
        with working_directory():
            code, _ = run_cli('classify', 'nowhere.gel.json')
        self.assertEqual(code, cli.EXIT_USAGE)

    def test_not_in_group(self):
        code, _ = run_cli('classify', golden('not_in_group.json'))
        self.assertEqual(code, cli.EXIT_MATH)

    def test_undetermined(self):
        undetermined = classify.Classification(classify.Kind.undetermined, (), classify.Method.iteration)
        with mock.patch('hyperball.classify.dynamical_type', return_value=undetermined):
            code, out = run_cli('classify', golden('normal_element.gel.json'))
        self.assertEqual(code, cli.EXIT_UNDETERMINED)
        self.assertEqual(json.loads(out)['kind'], 'Undetermined')


class DistTests(TestCase):
    def test_ln_two(self):
        code, out = run_cli('dist', golden('origin.json'), golden('point_06.json'))
        self.assertEqual(code, cli.EXIT_OK)
        self.assertEqual(out, '0.693147180560\n')

    def test_same_point(self):
        code, out = run_cli('dist', golden('point_06.json'), golden('point_06.json'))
        self.assertEqual(out, '0.000000000000\n')

    def test_outside(self):
        code, _ = run_cli('dist', golden('origin.json'), golden('outside.json'))
        self.assertEqual(code, cli.EXIT_MATH)


class ComposeTests(TestCase):
    def test_with_inverse_is_identity(self):
        path = golden('normal_element.gel.json')
        code, out = run_cli('compose', path, path, '--invert', 2)
        self.assertEqual(code, cli.EXIT_OK)
        document = json.loads(out)
        self.assertTrue(all(abs(re) + abs(im) <= 1e-12 for re, im in document['xi']['data']))

    def test_out_file(self):
        path = golden('involutory_element.gel.json')
        with working_directory():
            code, out = run_cli('compose', path, path, '--out', 'square.gel.json')
            written = json.loads(Path('square.gel.json').read_text())
        self.assertEqual(code, cli.EXIT_OK)
        self.assertEqual(out, '')
        self.assertLessEqual(max(abs(re) + abs(im) for re, im in written['xi']['data']), 1e-12)

    def test_invert_out_of_range(self):
        path = golden('normal_element.gel.json')
        code, _ = run_cli('compose', path, '--invert', 2)
        self.assertEqual(code, cli.EXIT_USAGE)

    def test_dimension_mismatch(self):
        with working_directory():
            run_cli('gen', '--dim', 3, '--count', 1, '--out', 'three')
            code, _ = run_cli('compose', golden('normal_element.gel.json'), 'three/uniform-0000.gel.json')
        self.assertEqual(code, cli.EXIT_MATH)


class VerifyTests(TestCase):
    def test_small_catalog(self):
        with working_directory():
            code, out = run_cli('verify', '--count', 2, '--out', 'report.json')
            report = json.loads(Path('report.json').read_text())
        self.assertEqual(code, cli.EXIT_OK)
        self.assertTrue(report['passed'])
        self.assertIn('<VerifyReport: suites=14 failures=0>', out)

    def test_default_catalog_passes(self):
        code, out = run_cli('verify')
        self.assertEqual(code, cli.EXIT_OK, out)
        self.assertIn('<VerifyReport: suites=14 failures=0>', out)

    def test_failures_exit_code(self):
        code, _ = run_cli('verify', '--count', 1, '--tol', 1e-17)
        self.assertEqual(code, cli.EXIT_FAILURES)

    def test_report_file_is_canonical_json(self):
        with working_directory():
            run_cli('verify', '--count', 1, '--out', 'report.json')
            text = Path('report.json').read_text()
        self.assertEqual(text, dumps(json.loads(text)))
