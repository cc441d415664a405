"""
Exact continuous piecewise-linear self-maps of a closed rational interval.

A map is stored as its breakpoints (x_k, y_k) with strictly increasing x_k;
between two breakpoints it is the straight line joining them. All
coordinates are fractions.Fraction values, so evaluation, composition and
iteration are exact.

Collinear interior breakpoints are allowed and are only removed by an
explicit call to normalize().
"""
import json
import re
from bisect import bisect_left, bisect_right
from fractions import Fraction

import yaml

from sharklab import errors
from sharklab.settings import config
from sharklab.utils import log

_rational_re = re.compile(r'^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$')


def parseRational(text, field='value'):
    """
    Parse the "p/q" (or "p") text form of a rational number. Floating point
    notation is refused.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise errors.InvalidRational("%s: expected a \"p/q\" string, got %r"
                                     % (field, text))
    m = _rational_re.match(text)
    if not m:
        raise errors.InvalidRational("%s: %r is not of the form p/q"
                                     % (field, text))
    numerator = int(m.group(1))
    denominator = int(m.group(2)) if m.group(2) is not None else 1
    if denominator == 0:
        raise errors.InvalidRational("%s: zero denominator in %r"
                                     % (field, text))
    return Fraction(numerator, denominator)


def formatRational(q):
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def toRational(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return parseRational(value)
    if isinstance(value, float):
        raise errors.InvalidRational("refusing to convert float %r" % value)
    return Fraction(value)


class PLMap(object):
    """
    A continuous piecewise-linear self-map of [lo, hi].

    points:
        a sequence of (x, y) pairs with strictly increasing x. The first x is
        the left end of the domain, the last x the right end, and every y
        lies in the domain.
    """
    __slots__ = ('xs', 'ys', 'comment')

    def __init__(self, points, comment=None, check=True):
        xs = []
        ys = []
        for x, y in points:
            xs.append(toRational(x))
            ys.append(toRational(y))
        self.xs = tuple(xs)
        self.ys = tuple(ys)
        self.comment = comment
        if check:
            self._validate()

    def _validate(self):
        if len(self.xs) < 2:
            raise errors.DomainError("a map needs at least two breakpoints")
        for x0, x1 in zip(self.xs, self.xs[1:]):
            if not x0 < x1:
                raise errors.DomainError("breakpoints must have strictly "
                                         "increasing x, got %s then %s" %
                                         (formatRational(x0),
                                          formatRational(x1)))
        lo, hi = self.lo, self.hi
        for x, y in zip(self.xs, self.ys):
            if y < lo or y > hi:
                raise errors.DomainError("not a self-map: f(%s) = %s lies "
                                         "outside [%s, %s]" %
                                         (formatRational(x), formatRational(y),
                                          formatRational(lo),
                                          formatRational(hi)))

    @classmethod
    def identity(cls, lo=0, hi=1):
        return cls([(lo, lo), (hi, hi)])

    @classmethod
    def constant(cls, value, lo=0, hi=1):
        return cls([(lo, value), (hi, value)])

    @property
    def lo(self):
        return self.xs[0]

    @property
    def hi(self):
        return self.xs[-1]

    @property
    def domain(self):
        return (self.xs[0], self.xs[-1])

    @property
    def points(self):
        return list(zip(self.xs, self.ys))

    @property
    def pieceCount(self):
        return len(self.xs) - 1

    def pieces(self):
        """
        Yield the linear pieces as (x0, y0, x1, y1) tuples, left to right.
        """
        xs, ys = self.xs, self.ys
        for k in range(len(xs) - 1):
            yield xs[k], ys[k], xs[k + 1], ys[k + 1]

    def __call__(self, x):
        x = toRational(x)
        xs = self.xs
        if x < xs[0] or x > xs[-1]:
            raise errors.DomainError("%s lies outside the domain [%s, %s]" %
                                     (formatRational(x), formatRational(xs[0]),
                                      formatRational(xs[-1])))
        i = bisect_left(xs, x)
        if xs[i] == x:
            return self.ys[i]
        x0, x1 = xs[i - 1], xs[i]
        y0, y1 = self.ys[i - 1], self.ys[i]
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)

    def orbit(self, x, steps):
        """
        The list x, f(x), ..., f^steps(x).
        """
        x = toRational(x)
        orbit = [x]
        for _ in range(steps):
            x = self(x)
            orbit.append(x)
        return orbit

    def laps(self):
        """
        Number of maximal monotone pieces. Flat pieces extend the lap they
        sit in.
        """
        laps = 1
        direction = 0
        for _, y0, _, y1 in self.pieces():
            if y1 == y0:
                continue
            d = 1 if y1 > y0 else -1
            if direction and d != direction:
                laps += 1
            direction = d
        return laps

    def sameGraph(self, other):
        """
        True if both maps have the same domain and agree everywhere.
        """
        if self.domain != other.domain:
            return False
        return normalize(self).points == normalize(other).points

    def __eq__(self, other):
        if not isinstance(other, PLMap):
            return NotImplemented
        return self.xs == other.xs and self.ys == other.ys

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.xs, self.ys))

    def __repr__(self):
        if len(self.xs) > 6:
            return '<PLMap on [%s, %s] with %d pieces>' % (
                formatRational(self.lo), formatRational(self.hi),
                self.pieceCount)
        return '<PLMap %s>' % ' '.join('(%s,%s)' % (formatRational(x),
                                                    formatRational(y))
                                       for x, y in self.points)


def evaluate(f, x):
    return f(x)


def compose(g, f, budget=None):
    """
    The exact piecewise-linear representation of g o f.

    The breakpoints of the result are the breakpoints of f together with
    every preimage under f of a breakpoint of g.
    """
    if min(f.ys) < g.lo or max(f.ys) > g.hi:
        raise errors.DomainError("the range of the inner map is not within "
                                 "the domain of the outer map")
    gxs, gys = g.xs, g.ys
    points = [(f.xs[0], g(f.ys[0]))]
    for x0, y0, x1, y1 in f.pieces():
        if y0 != y1:
            if y0 < y1:
                inner = range(bisect_right(gxs, y0), bisect_left(gxs, y1))
            else:
                inner = reversed(range(bisect_right(gxs, y1),
                                       bisect_left(gxs, y0)))
            scale = (x1 - x0) / (y1 - y0)
            for k in inner:
                points.append((x0 + (gxs[k] - y0) * scale, gys[k]))
        points.append((x1, g(y1)))
        if budget is not None and len(points) - 1 > budget:
            raise errors.ResourceBudgetExceeded(budget)
    return PLMap(points, check=(g.domain != f.domain))


def iterates(f, n, budget=None):
    """
    Yield f, f^2, ..., f^n.
    """
    if budget is None:
        budget = config.pieceBudget
    current = f
    for k in range(1, n + 1):
        if k > 1:
            try:
                current = compose(f, current, budget)
            except errors.ResourceBudgetExceeded:
                raise errors.ResourceBudgetExceeded(budget, reached=k)
            log.debug("iterate %d has %d pieces" % (k, current.pieceCount))
        yield current


def iterate(f, n, budget=None):
    """
    The exact representation of f^n; f^0 is the identity of the domain.
    """
    if n < 0:
        raise errors.DomainError("cannot iterate a negative number of times")
    if n == 0:
        return PLMap.identity(f.lo, f.hi)
    result = f
    for result in iterates(f, n, budget):
        pass
    return result


def normalize(f):
    """
    Remove interior breakpoints that are collinear with their neighbours.
    """
    points = [(f.xs[0], f.ys[0])]
    for k in range(1, len(f.xs) - 1):
        x0, y0 = points[-1]
        x1, y1 = f.xs[k], f.ys[k]
        x2, y2 = f.xs[k + 1], f.ys[k + 1]
        if (y1 - y0) * (x2 - x1) == (y2 - y1) * (x1 - x0):
            continue
        points.append((x1, y1))
    points.append((f.xs[-1], f.ys[-1]))
    return PLMap(points, comment=f.comment, check=False)


def _clip(f, lo, hi):
    """
    The pieces of f restricted to [lo, hi], as (x0, y0, x1, y1) tuples.
    """
    lo, hi = toRational(lo), toRational(hi)
    if lo < f.lo or hi > f.hi or lo > hi:
        raise errors.DomainError("[%s, %s] is not a subinterval of the domain"
                                 % (formatRational(lo), formatRational(hi)))
    if lo == hi:
        y = f(lo)
        return [(lo, y, lo, y)]
    xs = f.xs
    i = bisect_right(xs, lo)
    j = bisect_left(xs, hi)
    nodes = [lo] + list(xs[i:j]) + [hi]
    values = [f(lo)] + list(f.ys[i:j]) + [f(hi)]
    return [(nodes[k], values[k], nodes[k + 1], values[k + 1])
            for k in range(len(nodes) - 1)]


def image(f, lo, hi):
    """
    The exact image f([lo, hi]) as a (min, max) pair.
    """
    values = [y for piece in _clip(f, lo, hi) for y in (piece[1], piece[3])]
    return min(values), max(values)


def level_set(f, value, lo=None, hi=None):
    """
    The solutions of f(x) = value in [lo, hi], as a sorted list of disjoint
    closed intervals (isolated solutions are degenerate intervals).
    """
    value = toRational(value)
    if lo is None:
        lo = f.lo
    if hi is None:
        hi = f.hi
    found = []
    for x0, y0, x1, y1 in _clip(f, lo, hi):
        if y0 == value and y1 == value:
            found.append((x0, x1))
        elif y0 == value:
            found.append((x0, x0))
        elif y1 == value:
            found.append((x1, x1))
        elif (y0 - value) * (y1 - value) < 0:
            x = x0 + (value - y0) * (x1 - x0) / (y1 - y0)
            found.append((x, x))
    merged = []
    for a, b in found:
        if merged and a <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(b, merged[-1][1]))
        else:
            merged.append((a, b))
    return merged


def toDict(f):
    data = {'domain': [formatRational(f.lo), formatRational(f.hi)],
            'points': [[formatRational(x), formatRational(y)]
                       for x, y in f.points]}
    if f.comment is not None:
        data['comment'] = f.comment
    return data


def dumps(f, comment=None):
    """
    Serialize a map to the canonical text format: a JSON object with the
    domain, one breakpoint per line and an optional comment.
    """
    if comment is None:
        comment = f.comment
    lines = ['{',
             '  "domain": %s,' % json.dumps([formatRational(f.lo),
                                             formatRational(f.hi)]),
             '  "points": [']
    rows = [json.dumps([formatRational(x), formatRational(y)])
            for x, y in f.points]
    lines.append(',\n'.join('    %s' % row for row in rows))
    if comment is None:
        lines.append('  ]')
    else:
        lines.append('  ],')
        lines.append('  "comment": %s' % json.dumps(comment, sort_keys=True))
    lines.append('}')
    return '\n'.join(lines) + '\n'


def _canonical(text, field):
    if not isinstance(text, str):
        raise errors.MapFileError(field, "expected a \"p/q\" string, got %r"
                                  % (text,))
    q = parseRational(text, field)
    if formatRational(q) != text.strip():
        raise errors.MapFileError(field, "%r is not in lowest terms" % text)
    return q


def fromDict(data):
    if not isinstance(data, dict):
        raise errors.MapFileError('<root>', "expected an object")
    for field in ('domain', 'points'):
        if field not in data:
            raise errors.MapFileError(field, "missing")
    domain = data['domain']
    if not isinstance(domain, list) or len(domain) != 2:
        raise errors.MapFileError('domain', "expected [lo, hi]")
    try:
        lo = _canonical(domain[0], 'domain[0]')
        hi = _canonical(domain[1], 'domain[1]')
        points = []
        if not isinstance(data['points'], list):
            raise errors.MapFileError('points', "expected a list")
        for k, point in enumerate(data['points']):
            if not isinstance(point, list) or len(point) != 2:
                raise errors.MapFileError('points[%d]' % k, "expected [x, y]")
            points.append((_canonical(point[0], 'points[%d][0]' % k),
                           _canonical(point[1], 'points[%d][1]' % k)))
    except errors.InvalidRational as e:
        raise errors.MapFileError(str(e).split(':')[0], str(e))
    if not points or points[0][0] != lo or points[-1][0] != hi:
        raise errors.MapFileError('points', "first and last x must be the "
                                  "domain end points")
    try:
        return PLMap(points, comment=data.get('comment'))
    except errors.DomainError as e:
        raise errors.MapFileError('points', str(e))


def loads(text):
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise errors.MapFileError('<root>', "unparseable: %s" % e)
    return fromDict(data)


def load(path):
    with open(path) as f:
        return loads(f.read())


def dump(f, path, comment=None):
    with open(path, 'w') as fp:
        fp.write(dumps(f, comment))
