"""
Cyclic permutations as order types of periodic orbits.

A pattern of period m is given by the image list of a cyclic permutation of
1..m: position i holds sigma(i), meaning the i-th point from the left of the
orbit is mapped to the sigma(i)-th point. The gaps J_i = [x_i, x_{i+1}]
between consecutive orbit points are the nodes of the covering digraph.
"""
import itertools
from fractions import Fraction

import graphviz
import networkx as nx

from sharklab import errors
from sharklab.periodic import IntervalCycle
from sharklab.plmap import PLMap
from sharklab.settings import config
from sharklab.utils import log


class OrbitPattern(object):
    def __init__(self, sigma):
        sigma = tuple(sigma)
        m = len(sigma)
        if m < 2:
            raise errors.InvalidPattern("a pattern needs at least two points")
        if sorted(sigma) != list(range(1, m + 1)):
            raise errors.InvalidPattern("%r is not a permutation of 1..%d" %
                                        (sigma, m))
        i, length = sigma[0], 1
        while i != 1:
            i = sigma[i - 1]
            length += 1
        if length != m:
            raise errors.InvalidPattern("%r is not a single %d-cycle" %
                                        (sigma, m))
        self.sigma = sigma

    @classmethod
    def parse(cls, text):
        try:
            sigma = [int(token) for token in text.replace(',', ' ').split()]
        except ValueError:
            raise errors.InvalidPattern("%r is not a list of integers" % text)
        return cls(sigma)

    @property
    def m(self):
        return len(self.sigma)

    def __call__(self, i):
        return self.sigma[i - 1]

    def orbit_of(self, i):
        """
        The indices i, sigma(i), sigma^2(i), ..., one full period.
        """
        orbit = [i]
        for _ in range(self.m - 1):
            orbit.append(self(orbit[-1]))
        return orbit

    def mirror(self):
        """
        The pattern seen with the interval turned upside down.
        """
        m = self.m
        return OrbitPattern(m + 1 - self(m + 1 - i) for i in range(1, m + 1))

    def __eq__(self, other):
        if not isinstance(other, OrbitPattern):
            return NotImplemented
        return self.sigma == other.sigma

    def __hash__(self):
        return hash(self.sigma)

    def __str__(self):
        return ' '.join(str(s) for s in self.sigma)

    def __repr__(self):
        return '<OrbitPattern %s>' % self


def cyclic_patterns(m):
    """
    Every cyclic permutation of 1..m, in lexicographic order of the cycle
    written from 1.
    """
    for rest in itertools.permutations(range(2, m + 1)):
        cycle = (1,) + rest
        sigma = [0] * m
        for k in range(m):
            sigma[cycle[k] - 1] = cycle[(k + 1) % m]
        yield OrbitPattern(sigma)


def nodes(m):
    """
    The uniformly spaced orbit points x_1 .. x_m of [0, 1].
    """
    return [Fraction(i, m - 1) for i in range(m)]


def connect_the_dots(p):
    """
    The piecewise-linear map of [0, 1] sending x_i to x_sigma(i), linear in
    between.
    """
    x = nodes(p.m)
    return PLMap([(x[i - 1], x[p(i) - 1]) for i in range(1, p.m + 1)])


def switch_index(p):
    """
    The smallest s with sigma(s) >= s + 1 and sigma(s + 1) <= s: the gap
    J_s holds a fixed point of every map with this orbit.
    """
    for s in range(1, p.m):
        if p(s) >= s + 1 and p(s + 1) <= s:
            return s


def pattern_of_orbit(f, orbit):
    """
    The order type of an exact periodic orbit of f.
    """
    points = sorted(set(orbit))
    position = dict((x, i) for i, x in enumerate(points, 1))
    try:
        sigma = [position[f(x)] for x in points]
    except KeyError:
        raise errors.InvalidPattern("the points are not an orbit of the map")
    return OrbitPattern(sigma)


class CoverDigraph(object):
    """
    The f-covering relation between the gaps of a pattern: J_i -> J_j when
    the image of J_i contains J_j.
    """
    def __init__(self, pattern):
        self.pattern = pattern
        self.graph = nx.DiGraph()
        m = pattern.m
        self.graph.add_nodes_from(range(1, m))
        for i in range(1, m):
            low = min(pattern(i), pattern(i + 1))
            high = max(pattern(i), pattern(i + 1))
            for j in range(low, high):
                self.graph.add_edge(i, j)

    @property
    def nodes(self):
        return sorted(self.graph.nodes())

    @property
    def edges(self):
        return sorted(self.graph.edges())

    def successors(self, i):
        return sorted(self.graph.successors(i))

    def __repr__(self):
        return '<CoverDigraph %d nodes, %d edges>' % (len(self.nodes),
                                                     len(self.edges))


def cover_digraph(p):
    return CoverDigraph(p)


def _is_least_rotation(walk):
    return all(walk <= walk[k:] + walk[:k] for k in range(1, len(walk)))


def loops(g, n, budget=None):
    """
    Every closed walk of length n, one per rotation class, written from its
    lexicographically least rotation.
    """
    if n < 1:
        raise errors.DomainError("walk length must be positive, got %r" % n)
    if budget is None:
        budget = config.walkBudget
    found = []

    def extend(walk, start):
        last = walk[-1]
        if len(walk) == n:
            if g.graph.has_edge(last, start) and _is_least_rotation(walk):
                found.append(tuple(walk))
                if len(found) > budget:
                    raise errors.ResourceBudgetExceeded(budget, what='walk')
            return
        for j in g.successors(last):
            if j >= start:
                walk.append(j)
                extend(walk, start)
                walk.pop()

    for start in g.nodes:
        extend([start], start)
    log.debug("%d closed walks of length %d" % (len(found), n))
    return sorted(found)


def walk_to_cycle(p, walk):
    """
    The cycle of intervals J_{w_0} ... J_{w_{n-1}} of the connect-the-dots
    map of p.
    """
    x = nodes(p.m)
    return IntervalCycle([(x[i - 1], x[i]) for i in walk])


def is_stefan(p):
    """
    True if the orbit spirals out alternately around its middle point:

        f^{m-1}(c) < ... < f^4(c) < f^2(c) < c < f(c) < f^3(c) < ... < f^{m-2}(c)

    or the mirror image of that arrangement. Only odd periods m >= 3 qualify.
    """
    m = p.m
    if m < 3 or m % 2 == 0:
        return False
    center = (m + 1) // 2
    expected = ([2 * k for k in range((m - 1) // 2, 0, -1)] + [0] +
                [2 * k + 1 for k in range((m - 1) // 2)])
    for q in (p, p.mirror()):
        orbit = q.orbit_of(center)
        if [orbit[k] for k in expected] == list(range(1, m + 1)):
            return True
    return False


def digraph_to_dot(g):
    """
    The covering digraph as DOT text, nodes J1 .. J{m-1}.
    """
    dot = graphviz.Digraph(name='cover')
    for i in g.nodes:
        dot.node('J%d' % i)
    for i, j in g.edges:
        dot.edge('J%d' % i, 'J%d' % j)
    return dot.source
