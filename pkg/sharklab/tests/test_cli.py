# -*- coding: utf-8 -*-
import io
import os

import yaml
from twisted.trial import unittest

from sharklab import cli, errors, plmap
from sharklab.settings import PIECE_BUDGET_ENV, config
from sharklab.tests import mocks


class CLITestCase(unittest.TestCase):
    def tearDown(self):
        config.global_options = {}
        config.reset()

    def run_cli(self, *argv):
        out = io.StringIO()
        code = cli.run(list(argv), out)
        return code, out.getvalue()

    def assertOutput(self, argv, expected, code=errors.EXIT_OK):
        got_code, output = self.run_cli(*argv)
        self.assertEqual(got_code, code)
        self.assertEqual(output, expected)

    def write_map(self, text=mocks.tent_map_file):
        path = self.mktemp()
        with open(path, 'w') as fp:
            fp.write(text)
        return path


class TestOrder(CLITestCase):
    def test_cmp(self):
        self.assertOutput(['order-cmp', '5', '3'], u"5 ≺ 3\n")
        self.assertOutput(['order-cmp', '2^inf', '8'], u"2^inf ≻ 8\n")
        self.assertOutput(['order-cmp', '6', '6'], u"6 = 6\n")

    def test_tail(self):
        self.assertOutput(['order-tail', '--bound', '13', '6'],
                          "1 2 4 6 8 10 12\n")
        self.assertOutput(['order-tail', '--bound', '20', '2^inf'],
                          "1 2 4 8 16\n")

    def test_bad_class(self):
        code, _ = self.run_cli('order-cmp', 'five', '3')
        self.assertEqual(code, errors.EXIT_INPUT_ERROR)
        code, _ = self.run_cli('order-tail', '0')
        self.assertEqual(code, errors.EXIT_INPUT_ERROR)


class TestMapCommands(CLITestCase):
    def test_eval(self):
        self.assertOutput(['map-eval', '--map', self.write_map(), '1/3'],
                          "f(1/3) = 2/3\n")
        self.assertOutput(['map-eval', '--map', 'h', '5/14', '1/2'],
                          "f(5/14) = 11/14\nf(1/2) = 1/2\n")

    def test_eval_refuses_floats(self):
        code, _ = self.run_cli('map-eval', '--map', 'tent', '0.5')
        self.assertEqual(code, errors.EXIT_INPUT_ERROR)

    def test_eval_outside_domain(self):
        code, _ = self.run_cli('map-eval', '--map', 'tent', '3/2')
        self.assertEqual(code, errors.EXIT_INPUT_ERROR)

    def test_missing_file(self):
        code, _ = self.run_cli('periods', '--map', self.mktemp())
        self.assertEqual(code, errors.EXIT_INPUT_ERROR)

    def test_malformed_file(self):
        path = self.write_map('{"domain": ["0", "1"], "points": [["0", "x"]]}')
        code, _ = self.run_cli('periods', '--map', path)
        self.assertEqual(code, errors.EXIT_INPUT_ERROR)

    def test_iterate(self):
        code, output = self.run_cli('map-iterate', '--map', 'tent', '2')
        self.assertEqual(code, errors.EXIT_OK)
        f2 = plmap.loads(output)
        self.assertEqual(f2, plmap.iterate(mocks.mock_tent(), 2))
        self.assertEqual(f2.comment, {'recipe': {'iterate': 2}})

    def test_usage_error(self):
        code, _ = self.run_cli('map-iterate', '--map', 'tent', 'two')
        self.assertEqual(code, errors.EXIT_INPUT_ERROR)
        code, _ = self.run_cli()
        self.assertEqual(code, errors.EXIT_INPUT_ERROR)


class TestPeriods(CLITestCase):
    def test_h(self):
        code, output = self.run_cli('periods', '--map', 'h', '--bound', '8')
        self.assertEqual(code, errors.EXIT_OK)
        self.assertTrue(output.startswith("period witness\n"
                                          "     1 1/2\n"
                                          "     2 1/6\n"
                                          "     4 1/10\n"
                                          "     6 1/18\n"))
        self.assertIn("\n     8 ", output)
        self.assertTrue(output.endswith("tail class: 6\n"))

    def test_ambiguous(self):
        _, output = self.run_cli('periods', '--map', 'g', '--bound', '4')
        self.assertIn("tail class: 1\n", output)
        code, output = self.run_cli('periods', '--map',
                                    self.write_witness('4'), '--bound', '4')
        self.assertEqual(code, errors.EXIT_OK)
        self.assertIn("tail class: 4 (or 2^inf, undecided at bound 4)",
                      output)

    def write_witness(self, c):
        path = self.mktemp()
        code, _ = self.run_cli('witness', '--out', path, c)
        self.assertEqual(code, errors.EXIT_OK)
        return path

    def test_budget(self):
        os.environ[PIECE_BUDGET_ENV] = '10'
        self.addCleanup(os.environ.pop, PIECE_BUDGET_ENV)
        code, _ = self.run_cli('periods', '--map', 'tent', '--bound', '8')
        self.assertEqual(code, errors.EXIT_BUDGET_EXCEEDED)

    def test_witness_round_trip(self):
        path = self.write_witness('5')
        code, output = self.run_cli('verify', '--map', path, '--bound', '9')
        self.assertEqual(code, errors.EXIT_OK)
        self.assertIn("tail class: 5\n", output)
        self.assertTrue(output.endswith("verified: yes\n"))

    def test_report(self):
        path = self.mktemp()
        code, _ = self.run_cli('periods', '--out', path, '--map', 'h',
                               '--bound', '8')
        self.assertEqual(code, errors.EXIT_OK)
        with open(path) as fp:
            docs = list(yaml.safe_load_all(fp))
        self.assertEqual(docs[0], {'command': 'periods', 'map': 'h',
                                   'bound': 8})
        self.assertEqual(docs[1]['tail_class'], 6)
        self.assertEqual(docs[1]['periods'][3],
                         {'period': 6, 'witness': '1/18'})
        self.assertFalse(docs[1]['ambiguous_at_bound'])

    def test_config_file(self):
        path = self.mktemp()
        with open(path, 'w') as fp:
            fp.write("defaults:\n    bound: 4\n")
        _, output = self.run_cli('--configfile', path, 'periods', '--map', 'h')
        self.assertNotIn("     6 ", output)
        self.assertIn("tail class: 4 (or 2^inf, undecided at bound 4)",
                      output)

    def test_broken_config_files(self):
        for text in ("defaults: [bound: 3\n", "- defaults\n",
                     "defaults:\n    a: 3/4\n"):
            config.reset()
            path = self.mktemp()
            with open(path, 'w') as fp:
                fp.write(text)
            code, output = self.run_cli('--configfile', path, 'witness', '5')
            self.assertEqual(code, errors.EXIT_INPUT_ERROR, text)
            self.assertEqual(output, "")

    def test_unwritable_logfile(self):
        logfile = os.path.join(self.mktemp(), 'missing', 'sharklab.log')
        code, _ = self.run_cli('--logfile', logfile, 'order-cmp', '5', '3')
        self.assertEqual(code, errors.EXIT_INPUT_ERROR)


class TestPatternCommands(CLITestCase):
    def test_stefan(self):
        self.assertOutput(['stefan', '3 5 4 2 1'], "stefan: yes\n")
        self.assertOutput(['stefan', '--pattern', '2 3 4 5 1'],
                          "stefan: no\n")

    def test_bad_pattern(self):
        code, _ = self.run_cli('stefan', '1 2 3')
        self.assertEqual(code, errors.EXIT_INPUT_ERROR)

    def test_digraph(self):
        code, output = self.run_cli('digraph', '--pattern', '3 5 4 2 1')
        self.assertEqual(code, errors.EXIT_OK)
        self.assertTrue(output.startswith('digraph cover {'))
        self.assertIn('J3 -> J3', output)

    def test_digraph_json(self):
        self.assertOutput(['digraph', '--pattern', '2 3 1', '--format',
                           'json'],
                          '{"edges": [[1, 2], [2, 1], [2, 2]], '
                          '"nodes": [1, 2], "pattern": [2, 3, 1]}\n')

    def test_realize_walk(self):
        code, output = self.run_cli('realize', '--pattern', '3 5 4 2 1',
                                    '1', '3', '2', '4')
        self.assertEqual(code, errors.EXIT_OK)
        self.assertIn("Q_4 = [0, 1/4]\n", output)
        self.assertTrue(output.endswith("certificate: valid\n"))

    def test_realize_cycle(self):
        code, output = self.run_cli('realize', '--map', 'tent', '--cycle',
                                    '0,1/2 1/2,1')
        self.assertEqual(code, errors.EXIT_OK)
        self.assertEqual(output,
                         "Q_0 = [3/8, 1/2]\n"
                         "Q_1 = [3/4, 1]\n"
                         "Q_2 = [0, 1/2]\n"
                         "witness: 2/5\n"
                         "least period: 2\n"
                         "certificate: valid\n")

    def test_realize_not_covering(self):
        code, _ = self.run_cli('realize', '--map', 'tent', '--cycle',
                               '0,1/4 3/4,1')
        self.assertEqual(code, errors.EXIT_INPUT_ERROR)


class TestConstructionCommands(CLITestCase):
    def test_witness_parameters(self):
        code, _ = self.run_cli('witness', '--a', '1/2', '5')
        self.assertEqual(code, errors.EXIT_INPUT_ERROR)
        code, _ = self.run_cli('witness', '2^inf')
        self.assertEqual(code, errors.EXIT_INPUT_ERROR)
        code, _ = self.run_cli('witness', '--strategy', 'guess', '5')
        self.assertEqual(code, errors.EXIT_INPUT_ERROR)

    def test_witness_two_inf(self):
        code, output = self.run_cli('witness', '--depth', '3', '2^inf')
        self.assertEqual(code, errors.EXIT_OK)
        f = plmap.loads(output)
        self.assertEqual(f.comment['recipe']['class'], '2^inf')
        self.assertEqual(f.comment['recipe']['depth'], 3)

    def test_double(self):
        code, output = self.run_cli('double', '--map', 'g', '--op', 'G',
                                    '--a', '1/3')
        self.assertEqual(code, errors.EXIT_OK)
        self.assertEqual(plmap.loads(output).points,
                         [(0, 1), (plmap.parseRational('1/3'), 1),
                          (plmap.parseRational('2/3'),
                           plmap.parseRational('1/3')), (1, 0)])

    def test_double_bad_operator(self):
        code, _ = self.run_cli('double', '--map', 'g', '--op', 'X')
        self.assertEqual(code, errors.EXIT_INPUT_ERROR)

    def test_phi(self):
        code, output = self.run_cli('phi', '--alpha', '01', '--depth', '3')
        self.assertEqual(code, errors.EXIT_OK)
        recipe = plmap.loads(output).comment['recipe']
        self.assertEqual(recipe['phi'], '010')
        self.assertEqual(recipe['threshold'], '2/27')
        self.assertEqual(recipe['tail_bound'], '1/6')

    def test_phi_needs_alpha(self):
        code, _ = self.run_cli('phi', '--depth', '3')
        self.assertEqual(code, errors.EXIT_INPUT_ERROR)


class TestPlot(CLITestCase):
    def test_csv(self):
        self.assertOutput(['plot', '--map', 'tent', '--samples', '3'],
                          "x,y\n0,0\n0.5,1\n1,0\n")

    def test_svg(self):
        code, output = self.run_cli('plot', '--map', 'tent', '--format', 'svg')
        self.assertEqual(code, errors.EXIT_OK)
        self.assertTrue(output.startswith('<?xml'))
        self.assertIn('<g id="graph">', output)
        self.assertIn('<g id="diagonal">', output)

    def test_bad_format(self):
        code, _ = self.run_cli('plot', '--map', 'tent', '--format', 'png')
        self.assertEqual(code, errors.EXIT_INPUT_ERROR)


class TestChecks(CLITestCase):
    def test_abc(self):
        code, output = self.run_cli('abc', '--map', 'tent', '--bound', '10')
        self.assertEqual(code, errors.EXIT_OK)
        self.assertIn("(a) m=3 passed", output)
        self.assertIn("(c) m=7 skipped", output)

    def test_lemma6(self):
        self.assertOutput(['lemma6', '--map', 'tent', '--bound', '8'],
                          "witness: d = 5/12, z = 2/3 (left)\n"
                          "missing even periods: none\n")
        self.assertOutput(['lemma6', '--map', 'g'], "no witness\n")
