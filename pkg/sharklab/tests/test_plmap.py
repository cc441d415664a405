import os
import random
from fractions import Fraction as F

from hypothesis import given, settings
from hypothesis import strategies as st
from twisted.trial import unittest

from sharklab import errors, plmap
from sharklab.plmap import PLMap
from sharklab.settings import PIECE_BUDGET_ENV, config
from sharklab.tests import mocks


class TestRationals(unittest.TestCase):
    def test_parse(self):
        self.assertEqual(plmap.parseRational('3/6'), F(1, 2))
        self.assertEqual(plmap.parseRational(' -2 '), F(-2))
        self.assertEqual(plmap.parseRational(F(1, 3)), F(1, 3))

    def test_refuses_floats(self):
        self.assertRaises(errors.InvalidRational, plmap.parseRational, '1.5')
        self.assertRaises(errors.InvalidRational, plmap.parseRational, 0.5)
        self.assertRaises(errors.InvalidRational, plmap.toRational, 0.5)

    def test_zero_denominator(self):
        self.assertRaises(errors.InvalidRational, plmap.parseRational, '1/0')

    def test_error_names_field(self):
        try:
            plmap.parseRational('x', 'points[2][1]')
        except errors.InvalidRational as e:
            self.assertIn('points[2][1]', str(e))
        else:
            self.fail("no error raised")

    def test_format(self):
        self.assertEqual(plmap.formatRational(F(5, 14)), '5/14')
        self.assertEqual(plmap.formatRational(F(4, 2)), '2')
        self.assertEqual(plmap.formatRational(F(-1, 3)), '-1/3')


class TestPLMap(unittest.TestCase):
    def test_evaluate(self):
        tent = mocks.mock_tent()
        self.assertEqual(tent(F(1, 3)), F(2, 3))
        self.assertEqual(tent(F(1, 2)), 1)
        self.assertEqual(tent('3/4'), F(1, 2))
        self.assertEqual(plmap.evaluate(mocks.mock_h(), F(1, 8)), F(3, 4))

    def test_outside_domain(self):
        self.assertRaises(errors.DomainError, mocks.mock_tent(), 2)
        self.assertRaises(errors.DomainError, mocks.mock_tent(), F(-1, 2))

    def test_validation(self):
        self.assertRaises(errors.DomainError, PLMap, [(0, 0)])
        self.assertRaises(errors.DomainError, PLMap,
                          [(0, 0), (F(1, 2), 1), (F(1, 2), 0), (1, 0)])
        self.assertRaises(errors.DomainError, PLMap, [(0, 0), (1, 2)])

    def test_constructors(self):
        identity = PLMap.identity()
        self.assertEqual(identity(F(2, 7)), F(2, 7))
        self.assertEqual(PLMap.constant(F(1, 3))(F(4, 5)), F(1, 3))

    def test_laps(self):
        self.assertEqual(mocks.mock_tent().laps(), 2)
        self.assertEqual(mocks.mock_h().laps(), 2)
        self.assertEqual(PLMap.constant(0).laps(), 1)
        flat = PLMap([(0, 0), (F(1, 3), 1), (F(2, 3), 1), (1, 0)])
        self.assertEqual(flat.laps(), 2)

    def test_orbit(self):
        self.assertEqual(mocks.mock_tent().orbit(F(2, 7), 3),
                         [F(2, 7), F(4, 7), F(6, 7), F(2, 7)])

    def test_same_graph(self):
        tent = mocks.mock_tent()
        padded = PLMap([(0, 0), (F(1, 4), F(1, 2)), (F(1, 2), 1), (1, 0)])
        self.assertTrue(tent.sameGraph(padded))
        self.assertNotEqual(tent, padded)
        self.assertEqual(plmap.normalize(padded), tent)


class TestCompose(unittest.TestCase):
    def test_tent_squared(self):
        tent = mocks.mock_tent()
        self.assertEqual(plmap.compose(tent, tent).points,
                         [(0, 0), (F(1, 4), 1), (F(1, 2), 0), (F(3, 4), 1),
                          (1, 0)])

    def test_agrees_with_evaluation(self):
        h, tent = mocks.mock_h(), mocks.mock_tent()
        hot = plmap.compose(h, tent)
        for k in range(25):
            x = F(k, 24)
            self.assertEqual(hot(x), h(tent(x)))

    def test_iterate(self):
        tent = mocks.mock_tent()
        self.assertEqual(plmap.iterate(tent, 0), PLMap.identity())
        self.assertEqual(plmap.iterate(tent, 1), tent)
        self.assertEqual(plmap.iterate(tent, 3).pieceCount, 8)
        t5 = plmap.iterate(tent, 5)
        self.assertEqual(t5(F(1, 3)), F(2, 3))
        self.assertEqual([f.pieceCount for f in plmap.iterates(tent, 4)],
                         [2, 4, 8, 16])

    def test_negative_iterate(self):
        self.assertRaises(errors.DomainError, plmap.iterate,
                          mocks.mock_tent(), -1)

    def test_budget(self):
        try:
            plmap.iterate(mocks.mock_tent(), 5, budget=10)
        except errors.ResourceBudgetExceeded as e:
            self.assertEqual(e.budget, 10)
            self.assertEqual(e.reached, 4)
        else:
            self.fail("no budget error")

    def test_budget_from_environment(self):
        os.environ[PIECE_BUDGET_ENV] = '10'
        self.addCleanup(os.environ.pop, PIECE_BUDGET_ENV)
        self.assertEqual(config.pieceBudget, 10)
        self.assertRaises(errors.ResourceBudgetExceeded, plmap.iterate,
                          mocks.mock_tent(), 5)

    def test_bad_budget_in_environment(self):
        os.environ[PIECE_BUDGET_ENV] = 'lots'
        self.addCleanup(os.environ.pop, PIECE_BUDGET_ENV)
        self.assertRaises(errors.InvalidOption, plmap.iterate,
                          mocks.mock_tent(), 2)


class TestImage(unittest.TestCase):
    def test_image(self):
        tent = mocks.mock_tent()
        self.assertEqual(plmap.image(tent, 0, F(1, 4)), (0, F(1, 2)))
        self.assertEqual(plmap.image(tent, F(1, 4), F(3, 4)), (F(1, 2), 1))
        self.assertEqual(plmap.image(tent, F(1, 3), F(1, 3)),
                         (F(2, 3), F(2, 3)))

    def test_level_set(self):
        tent = mocks.mock_tent()
        self.assertEqual(plmap.level_set(tent, F(1, 2)),
                         [(F(1, 4), F(1, 4)), (F(3, 4), F(3, 4))])
        self.assertEqual(plmap.level_set(tent, 1, 0, F(1, 4)), [])
        self.assertEqual(plmap.level_set(PLMap.constant(0), 0), [(0, 1)])


class TestSerialization(unittest.TestCase):
    def test_dumps(self):
        self.assertEqual(plmap.dumps(mocks.mock_tent()), mocks.tent_map_file)

    def test_loads(self):
        self.assertEqual(plmap.loads(mocks.tent_map_file), mocks.mock_tent())

    def test_round_trip_with_comment(self):
        h = mocks.mock_h()
        text = plmap.dumps(h, {'recipe': {'named': 'h'}})
        loaded = plmap.loads(text)
        self.assertEqual(loaded, h)
        self.assertEqual(loaded.comment, {'recipe': {'named': 'h'}})
        self.assertEqual(plmap.dumps(loaded), text)

    def test_file_round_trip(self):
        path = self.mktemp()
        plmap.dump(mocks.mock_h(), path)
        self.assertEqual(plmap.load(path), mocks.mock_h())

    def assertFieldError(self, text, field):
        try:
            plmap.loads(text)
        except errors.MapFileError as e:
            self.assertEqual(e.field, field)
        else:
            self.fail("no error raised for %r" % text)

    def test_malformed(self):
        self.assertFieldError('{"domain": ["0", "1"]}', 'points')
        self.assertFieldError('[1, 2]', '<root>')
        self.assertFieldError('{"domain": ["0", "1"], "points": '
                              '[["0", "0"], ["2/4", "1"], ["1", "0"]]}',
                              'points[1][0]')
        self.assertFieldError('{"domain": ["0", "1"], "points": '
                              '[["0", "0"], ["1", 0.5]]}', 'points[1][1]')
        self.assertFieldError('{"domain": ["0", "1"], "points": '
                              '[["0", "0"], ["1", "3/2"]]}', 'points')
        self.assertFieldError('{"domain": ["0", "1"], "points": '
                              '[["0", "0"], ["1/2", "0"]]}', 'points')


def random_rationals(seed, count, denominator=997):
    rng = random.Random(seed)
    return [F(rng.randint(0, denominator), denominator) for _ in range(count)]


class TestMapProperties(unittest.TestCase):
    @given(mocks.pl_maps(breakpoints=5, height=6),
           st.integers(min_value=1, max_value=6), st.integers())
    @settings(max_examples=30, deadline=None)
    def test_iterate_agrees_with_repeated_evaluation(self, f, k, seed):
        fk = plmap.iterate(f, k)
        for x in random_rationals(seed, 100):
            y = x
            for _ in range(k):
                y = f(y)
            self.assertEqual(fk(x), y)

    @given(mocks.pl_maps(), mocks.pl_maps(),
           st.integers(min_value=1, max_value=4))
    @settings(max_examples=30, deadline=None)
    def test_self_maps_are_closed(self, f, g, k):
        for h in (plmap.compose(g, f), plmap.iterate(f, k)):
            self.assertEqual(h.domain, f.domain)
            self.assertTrue(all(h.lo <= y <= h.hi for y in h.ys))

    @given(mocks.pl_maps(), st.integers(min_value=1, max_value=3),
           st.integers())
    @settings(max_examples=30, deadline=None)
    def test_normalize_keeps_values(self, f, k, seed):
        fk = plmap.iterate(f, k)
        normal = plmap.normalize(fk)
        self.assertTrue(normal.pieceCount <= fk.pieceCount)
        self.assertEqual(plmap.normalize(normal), normal)
        for x in random_rationals(seed, 1000):
            self.assertEqual(normal(x), fk(x))

    @given(mocks.pl_maps(breakpoints=5, height=6),
           st.integers(min_value=1, max_value=5))
    @settings(max_examples=30, deadline=None)
    def test_laps_are_submultiplicative(self, f, n):
        self.assertTrue(plmap.iterate(f, n).laps() <= f.laps() ** n)
