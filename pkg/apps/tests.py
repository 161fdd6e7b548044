import json
import tempfile
from contextlib import redirect_stderr, redirect_stdout
from io import StringIO
from pathlib import Path
from unittest import mock

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from apps.effsec.serializers import render_json
from apps.management.base import EXIT_BUDGET, EXIT_HOLDS, EXIT_INPUT, EXIT_INTERNAL, EXIT_VIOLATED
from apps.management.cli import ANALYSIS_COMMANDS, main
from apps.management.commands import compare, effsec, idealize, ni, rstar, solve, validate
from apps.modellang.loaders import FIXTURES_DIR, load_document
from apps.noninterference.checks import check_ni_exact

GOLDEN_DIR = Path(__file__).resolve().parent / 'effsec' / 'golden'
MA = str(FIXTURES_DIR / 'Ma.tn')
MB = str(FIXTURES_DIR / 'Mb.tn')


def run(module, *args):
    """Run one analysis command and return its exit code and standard output."""
    command = module.Command()
    out, err = StringIO(), StringIO()
    call_command(command, *args, stdout=out, stderr=err)
    return command.exit_code, out.getvalue()


@override_settings(EFFECTIVE_SECURITY={'VERIFY_WITNESSES': True})
class CommandExitCodeTestCase(SimpleTestCase):
    """
    Test cases for the analysis commands and their exit codes.
    """

    def test_validate(self):
        code, output = run(validate, MB)
        self.assertEqual(code, EXIT_HOLDS)
        self.assertIn('Model is well-formed', output)

    def test_validate_json(self):
        code, output = run(validate, MB, '--json')
        data = json.loads(output)
        self.assertEqual(code, EXIT_HOLDS)
        self.assertEqual(data['states'], 17)
        self.assertFalse(data['total'])
        self.assertEqual(data['violations'], [])

    def test_missing_model_is_input_error(self):
        with self.assertRaises(CommandError) as caught:
            run(validate, '/nonexistent/model.tn')
        self.assertEqual(caught.exception.returncode, EXIT_INPUT)

    def test_ni_violated(self):
        code, output = run(ni, MA)
        self.assertEqual(code, EXIT_VIOLATED)
        self.assertIn('noninterference', output)

    def test_ni_with_bounded_oracle(self):
        code, output = run(ni, MA, '--depth', '4', '--json')
        data = json.loads(output)
        self.assertEqual(code, EXIT_VIOLATED)
        self.assertFalse(data['noninterference'])
        self.assertEqual([check['method'] for check in data['checks']][1], 'bounded(4)')
        self.assertTrue(all(not check['holds'] for check in data['checks']))

    def test_rstar_not_output_consistent(self):
        code, output = run(rstar, MB, '--json')
        data = json.loads(output)
        self.assertEqual(code, EXIT_VIOLATED)
        self.assertFalse(data['outputConsistent'])
        self.assertTrue(data['stepConsistent'])
        self.assertTrue(data['locallyRespectful'])

    def test_idealize_writes_noninterferent_model(self):
        with tempfile.TemporaryDirectory() as directory:
            target = str(Path(directory) / 'Ideal_Mb.tn')
            code, output = run(idealize, MB, '-o', target, '--check-minimality', '--json')
            data = json.loads(output)
            self.assertEqual(code, EXIT_HOLDS)
            self.assertEqual(data['idealizedModel'], 'Ideal_Mb')
            self.assertEqual(data['provenance'], 'ptn')
            self.assertTrue(data['minimal'])
            doc = load_document(target)
        self.assertEqual(doc.network.name, 'Ideal_Mb')
        self.assertTrue(check_ni_exact(doc.network).holds)
        self.assertIn('Gsys', doc.goals)

    def test_idealize_prints_model(self):
        code, output = run(idealize, MA)
        self.assertEqual(code, EXIT_HOLDS)
        self.assertIn('network Ideal_Ma', output)

    def test_solve_attack_on_mb(self):
        code, output = run(solve, MB, '--negate', '--json')
        data = json.loads(output)
        self.assertEqual(code, EXIT_HOLDS)
        self.assertTrue(data['winning'])
        self.assertEqual(data['goal']['kind'], 'reachability')
        rows = {row['history']: row['action'] for row in data['strategy']['choices']}
        self.assertEqual(rows['init>noObs'], 'chkWeb')

    def test_solve_attack_on_ma_fails(self):
        code, output = run(solve, MA, '--negate', '--semantics', 'strict')
        self.assertEqual(code, EXIT_VIOLATED)
        self.assertIn('No winning strategy', output)

    def test_solve_dot_output(self):
        with tempfile.TemporaryDirectory() as directory:
            arena = Path(directory) / 'arena.dot'
            product = Path(directory) / 'product.dot'
            run(solve, MB, '--negate', '--dot', str(arena), '--dot-product', str(product))
            self.assertIn('digraph', arena.read_text())
            self.assertIn('digraph', product.read_text())

    def test_unknown_goal_is_input_error(self):
        with self.assertRaises(CommandError) as caught:
            run(solve, MB, '--goal', 'Nope')
        self.assertEqual(caught.exception.returncode, EXIT_INPUT)

    def test_budget_exceeded(self):
        with self.assertRaises(CommandError) as caught:
            run(solve, MB, '--negate', '--budget', '1')
        self.assertEqual(caught.exception.returncode, EXIT_BUDGET)

    def test_effsec_secure_model(self):
        code, output = run(effsec, MA)
        self.assertEqual(code, EXIT_HOLDS)
        self.assertIn('Effectively information-secure', output)

    def test_effsec_insecure_model(self):
        code, output = run(effsec, MB, '--json')
        data = json.loads(output)
        self.assertEqual(code, EXIT_VIOLATED)
        self.assertEqual(data['strategies']['model']['attacker'], 'L')
        self.assertIsNone(data['strategies']['idealizedModel'])

    def test_compare(self):
        code, output = run(compare, MB, MA, '--json')
        data = json.loads(output)
        self.assertEqual(code, EXIT_VIOLATED)
        self.assertTrue(data['relation']['firstLessSecond'])
        self.assertEqual(data['goal']['name'], 'Gsys')

    def test_compare_same_model(self):
        code, _output = run(compare, MA, MA)
        self.assertEqual(code, EXIT_HOLDS)

    def test_failed_cross_check_is_internal_error(self):
        """Test a witness that does not replay is not reported as a verdict."""
        with mock.patch('apps.management.commands.ni.replay_witness', return_value=False):
            with self.assertLogs('apps.management.base', 'ERROR'), self.assertRaises(CommandError) as caught:
                run(ni, MA, '--depth', '4')
        self.assertEqual(caught.exception.returncode, EXIT_INTERNAL)


class FrontEndTestCase(SimpleTestCase):
    """
    Test cases for the `effsec` front-end dispatcher.
    """

    def assertExitCode(self, argv, expected):
        with redirect_stdout(StringIO()), redirect_stderr(StringIO()):
            with self.assertRaises(SystemExit) as caught:
                main(argv)
        self.assertEqual(caught.exception.code, expected)

    def test_unknown_command_is_usage_error(self):
        self.assertExitCode(['effsec', 'bogus'], EXIT_INPUT)

    def test_django_builtins_are_not_exposed(self):
        for name in ('migrate', 'shell', 'runserver', 'check'):
            with self.subTest(name=name):
                self.assertExitCode(['effsec', name], EXIT_INPUT)

    def test_missing_command_is_usage_error(self):
        self.assertExitCode(['effsec'], EXIT_INPUT)

    def test_help_lists_analysis_commands(self):
        out = StringIO()
        with redirect_stdout(out):
            main(['effsec', '--help'])
        for name in ANALYSIS_COMMANDS:
            self.assertIn(name, out.getvalue())

    def test_verdict_exit_code(self):
        self.assertExitCode(['effsec', 'ni', MA], EXIT_VIOLATED)

    def test_missing_model_exit_code(self):
        self.assertExitCode(['effsec', 'validate', '/nonexistent/model.tn'], EXIT_INPUT)


@override_settings(EFFECTIVE_SECURITY={'VERIFY_WITNESSES': True})
class GoldenReportTestCase(SimpleTestCase):
    """
    Test cases pinning the fixture reports byte for byte, timings aside.
    """

    def report_without_timings(self, path):
        _code, output = run(effsec, path, '--json')
        report = json.loads(output)
        self.assertEqual(list(report)[-1], 'timingsMs')
        self.assertEqual(set(report['timingsMs']), {'idealize', 'es', 'esIdeal'})
        del report['timingsMs']
        return render_json(report)

    def assertMatchesGolden(self, name, path):
        golden = (GOLDEN_DIR / f'{name}.json').read_text()
        self.assertEqual(self.report_without_timings(path), golden.rstrip('\n'))

    def test_ma(self):
        self.assertMatchesGolden('Ma', MA)

    def test_mb(self):
        self.assertMatchesGolden('Mb', MB)

    def test_effsec_report_is_reproducible(self):
        self.assertEqual(self.report_without_timings(MB), self.report_without_timings(MB))

    def test_repeated_invocations_are_identical(self):
        invocations = [
            (solve, MB, '--negate', '--json'),
            (compare, MB, MA, '--json'),
            (rstar, MA, '--json'),
            (idealize, MB),
            (ni, MA, '--depth', '4'),
        ]
        for module, *args in invocations:
            with self.subTest(command=module.__name__, args=args):
                self.assertEqual(run(module, *args), run(module, *args))


class SampleNetworksTestCase(SimpleTestCase):

    def test_samples_parse_back(self):
        with tempfile.TemporaryDirectory() as directory:
            call_command(
                'create_sample_networks', '--count', '3', '--seed', '7', '--output-dir', directory,
                stdout=StringIO(), stderr=StringIO(),
            )
            paths = sorted(Path(directory).glob('*.tn'))
            self.assertEqual(len(paths), 3)
            for path in paths:
                doc = load_document(path)
                self.assertIn('G', doc.goals)

    def test_seed_is_reproducible(self):
        texts = []
        for _attempt in range(2):
            with tempfile.TemporaryDirectory() as directory:
                call_command(
                    'create_sample_networks', '--count', '2', '--seed', '3', '--output-dir', directory,
                    stdout=StringIO(), stderr=StringIO(),
                )
                texts.append([path.read_text() for path in sorted(Path(directory).glob('*.tn'))])
        self.assertEqual(texts[0], texts[1])
