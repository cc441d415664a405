"""
Arithmetic of the Sharkovsky ordering

    1 < 2 < 4 < 8 < ... < 2^inf < ... < 9*2^i < 7*2^i < 5*2^i < 3*2^i < ...
      < 9*2 < 7*2 < 5*2 < 3*2 < ... < 9 < 7 < 5 < 3

Every natural number is written as 2^i * q with q odd. Pure powers of two
come first in increasing order, then the virtual class 2^inf, then the
numbers with an odd part larger than one: a higher power of two comes
earlier, and for the same power a larger odd part comes earlier.
"""
import enum
import functools
from collections import namedtuple

from sharklab import errors

TWO_INF_TOKEN = '2^inf'


class Ordering(enum.IntEnum):
    Less = -1
    Equal = 0
    Greater = 1


DyadicDecomposition = namedtuple('DyadicDecomposition',
                                 ['valuation', 'oddPart'])

TailMatch = namedtuple('TailMatch', ['sharkClass', 'ambiguousAtBound'])


def decompose(n):
    """
    Write n as 2^valuation * oddPart.
    """
    if not isinstance(n, int) or n < 1:
        raise errors.DomainError("can only decompose positive integers, got %r"
                                 % (n,))
    valuation = 0
    while n % 2 == 0:
        n //= 2
        valuation += 1
    return DyadicDecomposition(valuation, n)


@functools.total_ordering
class SharkClass(object):
    """
    A point of the Sharkovsky order: a positive integer or the class 2^inf
    that sits above every power of two and below everything else.
    """
    __slots__ = ('_n',)

    def __init__(self, n=None):
        if n is not None:
            if isinstance(n, bool) or not isinstance(n, int) or n < 1:
                raise errors.DomainError("a finite Sharkovsky class needs a "
                                         "positive integer, got %r" % (n,))
        object.__setattr__(self, '_n', n)

    def __setattr__(self, key, value):
        raise AttributeError("SharkClass is immutable")

    @classmethod
    def finite(cls, n):
        return cls(n)

    @classmethod
    def twoInf(cls):
        return cls(None)

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if text.lower() in (TWO_INF_TOKEN, '2^∞'):
            return cls.twoInf()
        try:
            n = int(text)
        except ValueError:
            raise errors.ParameterError("not a Sharkovsky class: %r" % text)
        return cls(n)

    @classmethod
    def coerce(cls, value):
        if isinstance(value, cls):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        return cls(value)

    @property
    def n(self):
        return self._n

    @property
    def isTwoInf(self):
        return self._n is None

    @property
    def isFinite(self):
        return self._n is not None

    @property
    def sortKey(self):
        if self._n is None:
            return (1,)
        valuation, odd = decompose(self._n)
        if odd == 1:
            return (0, valuation)
        return (2, -valuation, -odd)

    def __eq__(self, other):
        if not isinstance(other, SharkClass):
            return NotImplemented
        return self._n == other._n

    def __lt__(self, other):
        if not isinstance(other, SharkClass):
            return NotImplemented
        return self.sortKey < other.sortKey

    def __hash__(self):
        return hash(('SharkClass', self._n))

    def __str__(self):
        if self._n is None:
            return TWO_INF_TOKEN
        return str(self._n)

    def __repr__(self):
        return '<SharkClass %s>' % self


def shark_cmp(a, b):
    """
    Compare two Sharkovsky classes. Less means a comes strictly before b.
    """
    a, b = SharkClass.coerce(a), SharkClass.coerce(b)
    if a == b:
        return Ordering.Equal
    if a < b:
        return Ordering.Less
    return Ordering.Greater


def shark_tail(c, bound):
    """
    The natural numbers m <= bound with m preceding or equal to c, ascending.
    """
    c = SharkClass.coerce(c)
    if bound < 1:
        raise errors.DomainError("bound must be positive, got %r" % (bound,))
    return [m for m in range(1, bound + 1) if not c < SharkClass(m)]


def powers_of_two(bound):
    powers = []
    p = 1
    while p <= bound:
        powers.append(p)
        p *= 2
    return powers


def recognize_tail(periods, bound):
    """
    Find the class whose tail, cut at bound, is exactly the given set.

    Returns a TailMatch or None when the set is not a Sharkovsky tail. When
    the set consists of every power of two up to the bound it is equally the
    truncated tail of 2^inf: the finite class is reported and the match is
    flagged as ambiguous.
    """
    periods = set(periods)
    if not periods:
        return None
    for m in periods:
        if m < 1 or m > bound:
            raise errors.DomainError("period %r outside [1, %d]" % (m, bound))

    top = max(SharkClass(m) for m in periods)
    if set(shark_tail(top, bound)) != periods:
        return None

    ambiguous = top.n == powers_of_two(bound)[-1]
    return TailMatch(top, ambiguous)
