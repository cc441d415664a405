"""
Explicit maps with prescribed period sets.

The named maps, the maps f_n carrying a Stefan orbit of period 2n + 1, the
truncated tent maps T_n, the four doubling operators and the truncations
of the infinite composition Phi_alpha. witness() puts them together into a
map whose period set is the Sharkovsky tail of a given class.
"""
import re
from collections import namedtuple
from fractions import Fraction

from sharklab import errors
from sharklab.order import SharkClass, decompose
from sharklab.patterns import OrbitPattern, connect_the_dots
from sharklab.periodic import period_orbits
from sharklab.plmap import PLMap, formatRational, toRational
from sharklab.settings import config
from sharklab.utils import log

NAMED_MAPS = {
    'tent': [(0, 0), (Fraction(1, 2), 1), (1, 0)],
    'g': [(0, 0), (1, 0)],
    'h': [(0, Fraction(1, 2)), (Fraction(1, 4), 1),
          (Fraction(1, 2), Fraction(1, 2)), (1, 0)],
}

DOUBLING_KINDS = ('G', 'H', 'D', 'E')

STEFAN_DOUBLING = 'stefan-doubling'
TRUNCATED_TENT = 'truncated-tent'
STRATEGIES = (STEFAN_DOUBLING, TRUNCATED_TENT)

PhiTruncation = namedtuple('PhiTruncation', ['map', 'threshold', 'tailBound',
                                             'depth', 'coefficients'])


def make_named(kind):
    try:
        points = NAMED_MAPS[kind]
    except KeyError:
        raise errors.ParameterError("unknown map %r, expected one of %s" %
                                    (kind, ', '.join(sorted(NAMED_MAPS))))
    return PLMap(points, comment={'recipe': {'named': kind}})


def fn_pattern(n):
    """
    The Stefan pattern of period 2n + 1 realized by f_n. For n = 1 this is
    the period-3 pattern 2 3 1.
    """
    if n < 1:
        raise errors.ParameterError("the Stefan pattern needs n >= 1, got %r"
                                    % (n,))
    m = 2 * n + 1
    sigma = [n + 1]
    sigma.extend(2 * n + 3 - i for i in range(2, n + 2))
    sigma.extend(2 * n + 2 - j for j in range(n + 2, m + 1))
    return OrbitPattern(sigma)


def make_fn(n):
    """
    A map with a period 2n + 1 point and no period 2n - 1 point.
    """
    if n < 2:
        raise errors.ParameterError("f_n needs n >= 2, got %r" % (n,))
    f = connect_the_dots(fn_pattern(n))
    f.comment = {'recipe': {'fn': n}}
    return f


def tent_orbits(n, budget=None):
    """
    All period-n orbits of the tent map, each as a sorted tuple.
    """
    return period_orbits(make_named('tent'), n, budget).orbits


def _innermost_orbit(orbits):
    """
    The orbits whose span (min P, max P) holds no other orbit, smallest
    max P first, then smallest min P.
    """
    def nested(inner, outer):
        return inner is not outer and \
            outer[0] < inner[0] and inner[-1] < outer[-1]

    candidates = [P for P in orbits
                  if not any(nested(Q, P) for Q in orbits)]
    return min(candidates, key=lambda P: (P[-1], P[0]))


def make_truncated_tent(n, budget=None):
    """
    T_n: the tent map on [0, max P_n] and the constant min P_n beyond, for a
    period-n orbit P_n of the tent map with no other period-n orbit inside
    its span. T_n has exactly one period-n orbit and no period forcing n.
    """
    if n < 2:
        raise errors.ParameterError("T_n needs n >= 2, got %r" % (n,))
    tent = make_named('tent')
    orbits = tent_orbits(n, budget)
    if not orbits:
        raise errors.PreconditionError("the tent map has no period-%d orbit"
                                       % n)
    P = _innermost_orbit(orbits)
    low, high = P[0], P[-1]
    log.debug("T_%d truncates the tent map at %s" % (n, formatRational(high)))
    if tent(high) != low:
        raise errors.PreconditionError("the tent map does not send %s to %s" %
                                       (formatRational(high),
                                        formatRational(low)))
    points = [(x, y) for x, y in tent.points if x < high]
    points.append((high, low))
    if high < 1:
        points.append((1, low))
    return PLMap(points, comment={'recipe': {'truncated_tent': n,
                                             'orbit': [formatRational(x)
                                                       for x in P]}})


class DoublingSpec(object):
    """
    One of the doubling operators G, H, D, E with parameter a in (0, 1/2).
    """
    def __init__(self, kind, a=None):
        if kind not in DOUBLING_KINDS:
            raise errors.ParameterError("unknown doubling operator %r, "
                                        "expected one of G, H, D, E" % (kind,))
        if a is None:
            a = config.defaultA
        try:
            a = toRational(a)
        except errors.InvalidRational as e:
            raise errors.ParameterError("a: %s" % e)
        if not 0 < a < Fraction(1, 2):
            raise errors.ParameterError("a must lie in (0, 1/2), got %s" %
                                        formatRational(a))
        self.kind = kind
        self.a = a

    def __eq__(self, other):
        return isinstance(other, DoublingSpec) and \
            (self.kind, self.a) == (other.kind, other.a)

    def __hash__(self):
        return hash((self.kind, self.a))

    def __repr__(self):
        return '<DoublingSpec %s a=%s>' % (self.kind, formatRational(self.a))


def double(f, spec):
    """
    Apply a doubling operator to a self-map f of [0, 1].

    On [0, a] the result is built from the scaled copy a*f(x/a): G gives
    1 - a f(x/a), H gives a f(x/a) + 1 - a, D gives 1 - a + a f((a - x)/a)
    and E gives 1 - a f((a - x)/a). On [1 - a, 1] it is 1 - x for G and D,
    x - (1 - a) for H and E. On [a, 1 - a] it is the straight line joining
    the two.

    The result maps [0, a] into [1 - a, 1] and [1 - a, 1] into [0, a], and
    its periods are 1 together with the doubles of the periods of f.
    """
    if f.domain != (0, 1):
        raise errors.DomainError("doubling needs a map of [0, 1]")
    a, kind = spec.a, spec.kind
    if kind == 'G':
        left = [(a * x, 1 - a * y) for x, y in f.points]
    elif kind == 'H':
        left = [(a * x, 1 - a + a * y) for x, y in f.points]
    elif kind == 'D':
        left = [(a * (1 - x), 1 - a + a * y) for x, y in reversed(f.points)]
    else:
        left = [(a * (1 - x), 1 - a * y) for x, y in reversed(f.points)]
    if kind in ('G', 'D'):
        right = [(1 - a, a), (1, 0)]
    else:
        right = [(1 - a, 0), (1, a)]
    return PLMap(left + right, check=False)


_alpha_re = re.compile(r'^([01]*)(?:\(([01]+)\))?$')


def parseAlpha(text):
    """
    Parse an eventually periodic bit sequence: "0101" repeats as a whole,
    "1(01)" is 1 followed by 01 repeated.
    """
    m = _alpha_re.match(text.strip()) if isinstance(text, str) else None
    if not m or not (m.group(1) or m.group(2)):
        raise errors.ParameterError("alpha: %r is not a bit sequence" %
                                    (text,))
    prefix, period = m.group(1), m.group(2)
    if period is None:
        prefix, period = '', prefix
    return tuple(int(b) for b in prefix), tuple(int(b) for b in period)


def _cyclic(values, i):
    return values[(i - 1) % len(values)]


class PhiSpec(object):
    """
    The data of Phi_alpha: bits alpha_i, and parameters a_i (used with G
    where alpha_i = 0) and b_i (used with H where alpha_i = 1). Parameter
    sequences shorter than needed repeat cyclically.
    """
    def __init__(self, alpha, aSeq=None, bSeq=None, depth=None):
        if isinstance(alpha, str):
            self.prefix, self.period = parseAlpha(alpha)
        else:
            self.prefix, self.period = (), tuple(alpha)
            if not self.period or any(b not in (0, 1) for b in self.period):
                raise errors.ParameterError("alpha must be a non empty "
                                            "sequence of bits")
        self.aSeq = self._coefficients(aSeq, 'a')
        self.bSeq = self._coefficients(bSeq, 'b')
        if depth is None:
            depth = config.defaults.depth
        if not isinstance(depth, int) or depth < 1:
            raise errors.ParameterError("depth must be a positive integer, "
                                        "got %r" % (depth,))
        self.depth = depth

    @staticmethod
    def _coefficients(values, name):
        if values is None:
            values = [config.defaultA]
        elif not isinstance(values, (list, tuple)):
            values = [values]
        try:
            values = tuple(toRational(c) for c in values)
        except errors.InvalidRational as e:
            raise errors.ParameterError("%s: %s" % (name, e))
        if not values:
            raise errors.ParameterError("%s: no coefficients" % name)
        for c in values:
            if not 0 < c < Fraction(1, 2):
                raise errors.ParameterError("%s: coefficients must lie in "
                                            "(0, 1/2), got %s" %
                                            (name, formatRational(c)))
        return values

    def bit(self, i):
        if i <= len(self.prefix):
            return self.prefix[i - 1]
        return _cyclic(self.period, i - len(self.prefix))

    def coefficient(self, i):
        if self.bit(i) == 0:
            return _cyclic(self.aSeq, i)
        return _cyclic(self.bSeq, i)

    def operator(self, i):
        return DoublingSpec('G' if self.bit(i) == 0 else 'H',
                            self.coefficient(i))

    @property
    def supremum(self):
        """
        The largest c_i over the whole sequence.
        """
        horizon = len(self.prefix) + len(self.period) * \
            len(self.aSeq) * len(self.bSeq)
        return max(self.coefficient(i) for i in range(1, horizon + 1))

    def alphaText(self, length=None):
        length = length or self.depth
        return ''.join(str(self.bit(i)) for i in range(1, length + 1))


def phi_truncation(spec, seed=None):
    """
    The depth-k truncation Phi_{alpha_1}(Phi_{alpha_2}(...Phi_{alpha_k}(seed)))
    of Phi_alpha, computed innermost first.

    It agrees with every deeper truncation on [t, 1], t = c_1...c_{k-1}(1 - c_k),
    and lies within c_1...c_{k-1} / (1 - sup c_i) of the limit.
    """
    if seed is None:
        seed = make_named('g')
    k = spec.depth
    coefficients = [spec.coefficient(i) for i in range(1, k + 1)]
    result = seed
    for i in range(k, 0, -1):
        result = double(result, spec.operator(i))
    product = Fraction(1)
    for c in coefficients[:-1]:
        product *= c
    threshold = product * (1 - coefficients[-1])
    tailBound = product / (1 - spec.supremum)
    result.comment = {'recipe': {'phi': spec.alphaText(),
                                 'coefficients': [formatRational(c)
                                                  for c in coefficients],
                                 'depth': k}}
    log.debug("phi truncation of depth %d has %d pieces" %
              (k, result.pieceCount))
    return PhiTruncation(result, threshold, tailBound, k, coefficients)


def witness(c, strategy=STEFAN_DOUBLING, depth=None, a=None):
    """
    A map whose period set is the Sharkovsky tail of c.

    For n = 2^i q with q odd and q >= 5 the base is f_{(q-1)/2}, for q = 3
    the connect-the-dots map of 2 3 1, or T_n with the truncated-tent
    strategy; the base is then doubled i times with G. For n = 2^i the
    constant map is doubled i times. For two-inf only a truncation of
    Phi_000... exists at finite depth; its period set is {1, 2, ..., 2^depth}.
    """
    c = SharkClass.coerce(c)
    if strategy not in STRATEGIES:
        raise errors.ParameterError("unknown strategy %r, expected one of %s"
                                    % (strategy, ', '.join(STRATEGIES)))
    spec = DoublingSpec('G', a)
    recipe = {'class': str(c), 'strategy': strategy,
              'a': formatRational(spec.a)}
    if c.isTwoInf:
        if depth is None:
            raise errors.ParameterError("the class 2^inf needs an explicit "
                                        "truncation depth")
        truncation = phi_truncation(PhiSpec('0', [spec.a], [spec.a], depth))
        recipe.update({'operators': ['G'] * depth, 'depth': depth,
                       'seed': 'g',
                       'threshold': formatRational(truncation.threshold),
                       'tail_bound': formatRational(truncation.tailBound)})
        f = truncation.map
        f.comment = {'recipe': recipe}
        return f

    valuation, q = decompose(c.n)
    if q == 1:
        base, doublings = make_named('g'), valuation
        recipe['seed'] = 'g'
    elif strategy == TRUNCATED_TENT:
        base, doublings = make_truncated_tent(c.n), 0
        recipe['seed'] = 'T_%d' % c.n
    elif q == 3:
        base, doublings = connect_the_dots(fn_pattern(1)), valuation
        recipe['seed'] = 'stefan_3'
    else:
        base, doublings = make_fn((q - 1) // 2), valuation
        recipe['seed'] = 'f_%d' % ((q - 1) // 2)
    f = base
    for _ in range(doublings):
        f = double(f, spec)
    recipe['operators'] = ['G'] * doublings
    f.comment = {'recipe': recipe}
    log.debug("witness for %s: %s doubled %d times" %
              (c, recipe['seed'], doublings))
    return f
