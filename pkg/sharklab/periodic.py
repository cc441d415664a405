"""
Periodic points of exact piecewise-linear maps.

Fixed points of a PL map are found piece by piece. The periodic points of
period dividing n are the fixed points of f^n, which is computed exactly, so
every least period up to a bound is decided without any tolerance.
"""
from collections import namedtuple
from fractions import Fraction
from math import gcd

from sharklab import errors
from sharklab.order import recognize_tail
from sharklab.plmap import (formatRational, image, iterate, iterates,
                            level_set, toRational)
from sharklab.utils import log

FixedSet = namedtuple('FixedSet', ['isolated', 'segments'])

PeriodOrbits = namedtuple('PeriodOrbits', ['orbits', 'segments'])

Lemma6Witness = namedtuple('Lemma6Witness', ['d', 'z', 'variant'])

Lemma6Report = namedtuple('Lemma6Report',
                          ['witness', 'bound', 'missingEvenPeriods'])

AbcCheck = namedtuple('AbcCheck', ['statement', 'm', 'status', 'detail'])

PASSED = 'passed'
FAILED = 'failed'
SKIPPED = 'skipped'


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def _interval(J):
    lo, hi = toRational(J[0]), toRational(J[1])
    if lo > hi:
        raise errors.DomainError("empty interval [%s, %s]" %
                                 (formatRational(lo), formatRational(hi)))
    return (lo, hi)


def fixed_points(f):
    """
    All solutions of f(x) = x: isolated points and the segments on which f
    coincides with the diagonal.
    """
    isolated = []
    segments = []
    for x0, y0, x1, y1 in f.pieces():
        d0 = y0 - x0
        d1 = y1 - x1
        if d0 == 0 and d1 == 0:
            if segments and segments[-1][1] == x0:
                segments[-1] = (segments[-1][0], x1)
            else:
                segments.append((x0, x1))
        elif d0 == 0:
            isolated.append(x0)
        elif d1 == 0:
            isolated.append(x1)
        elif (d0 < 0) != (d1 < 0):
            isolated.append(x0 + d0 * (x1 - x0) / (d0 - d1))

    points = []
    for x in sorted(set(isolated)):
        if any(a <= x <= b for a, b in segments):
            continue
        points.append(x)
    return FixedSet(tuple(points), tuple(segments))


def _first_return(f, x, limit):
    """
    The smallest k in [1, limit] with f^k(x) = x, or None.
    """
    y = x
    for k in range(1, limit + 1):
        y = f(y)
        if y == x:
            return k
    return None


def least_period(f, x, n):
    """
    The least period of x, given that f^n(x) = x: the
    smallest divisor d of n with f^d(x) = x.
    """
    x = toRational(x)
    if n < 1:
        raise errors.DomainError("n must be positive, got %r" % (n,))
    orbit = f.orbit(x, n)
    if orbit[n] != x:
        raise errors.PreconditionError("f^%d(%s) = %s, not a point of period "
                                       "dividing %d" %
                                       (n, formatRational(x),
                                        formatRational(orbit[n]), n))
    for d in divisors(n):
        if orbit[d] == x:
            return d


class PeriodReport(object):
    """
    The least periods of a map up to a bound, one exact witness per period.
    """
    def __init__(self, bound, entries):
        self.bound = bound
        self.entries = dict(sorted(entries.items()))
        match = recognize_tail(self.entries.keys(), bound) \
            if self.entries else None
        if match is None:
            self.tailClass = None
            self.ambiguousAtBound = False
        else:
            self.tailClass = match.sharkClass
            self.ambiguousAtBound = match.ambiguousAtBound
        self.verified = None

    @property
    def periods(self):
        return list(self.entries.keys())

    @property
    def isTail(self):
        return self.tailClass is not None

    def __contains__(self, n):
        return n in self.entries

    def witness(self, n):
        return self.entries[n]

    def toDict(self):
        report = {'bound': self.bound,
                  'periods': [{'period': n, 'witness': w}
                              for n, w in self.entries.items()],
                  'tail_class': self.tailClass,
                  'ambiguous_at_bound': self.ambiguousAtBound}
        if self.verified is not None:
            report['verified'] = self.verified
        return report

    def __repr__(self):
        return '<PeriodReport bound=%d periods=%r tail=%s>' % (
            self.bound, self.periods, self.tailClass)


def _segment_witness(f, segment, n, fixed_sets):
    """
    A point of least period n inside a fixed segment of f^n. Points fixed
    by f^d for a proper divisor d of n are excluded; the left end point is
    used when it qualifies, otherwise the middle of the first gap.
    """
    a, b = segment
    if _first_return(f, a, n) == n:
        return a
    covered = []
    for d in divisors(n)[:-1]:
        isolated, segments = fixed_sets[d]
        covered.extend((x, x) for x in isolated if a <= x <= b)
        covered.extend((max(u, a), min(v, b)) for u, v in segments
                       if u <= b and v >= a)
    covered.sort()
    cursor = a
    for u, v in covered:
        if u > cursor:
            return (cursor + u) / 2
        cursor = max(cursor, v)
    if cursor < b:
        return (cursor + b) / 2
    return None


def period_set(f, bound, budget=None):
    """
    Enumerate the least periods of f up to bound, with the smallest witness
    of each, by solving f^n(x) = x exactly for n = 1 .. bound.
    """
    if bound < 1:
        raise errors.DomainError("bound must be positive, got %r" % (bound,))
    witnesses = {}
    fixed_sets = {}
    for n, fn in enumerate(iterates(f, bound, budget), 1):
        fixed = fixed_points(fn)
        fixed_sets[n] = fixed
        candidates = [x for x in fixed.isolated
                      if _first_return(f, x, n) == n]
        for segment in fixed.segments:
            w = _segment_witness(f, segment, n, fixed_sets)
            if w is not None:
                candidates.append(w)
        if candidates:
            witnesses[n] = min(candidates)
        log.debug("n = %d: %d isolated fixed points of f^n, %d segments" %
                  (n, len(fixed.isolated), len(fixed.segments)))
    return PeriodReport(bound, witnesses)


def period_orbits(f, n, budget=None):
    """
    The period-n orbits of f made of isolated fixed points of f^n, each as a
    sorted tuple. `segments` lists the fixed segments of f^n, which carry a
    continuum of periodic points.
    """
    fn = iterate(f, n, budget)
    fixed = fixed_points(fn)
    orbits = set()
    for x in fixed.isolated:
        if _first_return(f, x, n) == n:
            orbits.add(tuple(sorted(f.orbit(x, n - 1))))
    return PeriodOrbits(sorted(orbits), fixed.segments)


def verify_sharkovsky(f, bound, budget=None):
    """
    period_set plus the check that the period set is a Sharkovsky tail cut at
    the bound.
    """
    report = period_set(f, bound, budget)
    report.verified = report.isTail
    if not report.verified:
        log.err("period set %r is not a Sharkovsky tail" % report.periods)
    return report


def power_period(m, n):
    """
    Least period under f^n of a point of least period m under f.
    """
    if m < 1 or n < 1:
        raise errors.DomainError("periods must be positive")
    return m // gcd(m, n)


def lift_period(k, n):
    """
    The possible least periods under f of a point of least period k under
    f^n: kn/s with s dividing n and coprime to k.
    """
    if k < 1 or n < 1:
        raise errors.DomainError("periods must be positive")
    return sorted(set(k * n // s for s in divisors(n) if gcd(s, k) == 1))


def check_covering(f, J, L):
    """
    True if f(J) contains L.
    """
    J, L = _interval(J), _interval(L)
    lo, hi = image(f, J[0], J[1])
    return lo <= L[0] and hi >= L[1]


class IntervalCycle(object):
    """
    Closed intervals J_0 ... J_{n-1} such that f(J_i) covers J_{i+1 mod n}.
    """
    def __init__(self, intervals):
        self.intervals = tuple(_interval(J) for J in intervals)
        if not self.intervals:
            raise errors.DomainError("a cycle needs at least one interval")

    def __len__(self):
        return len(self.intervals)

    def __getitem__(self, i):
        return self.intervals[i]

    def firstViolation(self, f):
        """
        The first index i where f(J_i) fails to cover J_{i+1}, or None.
        """
        n = len(self.intervals)
        for i, J in enumerate(self.intervals):
            if not check_covering(f, J, self.intervals[(i + 1) % n]):
                return i
        return None

    def isCycleOf(self, f):
        return self.firstViolation(f) is None

    def toList(self):
        return [[a, b] for a, b in self.intervals]

    def __repr__(self):
        return '<IntervalCycle %s>' % ' '.join(
            '[%s,%s]' % (formatRational(a), formatRational(b))
            for a, b in self.intervals)


def pull_back(f, J, L):
    """
    A closed subinterval K of J with f(K) = L, given f(J) contains L.

    With p, q the first points of J mapped to the ends a, b of L: if p < q,
    K = [c, d] with c the last solution of f = a in [p, q] and d the first
    solution of f = b in [c, q]; symmetrically otherwise.
    """
    J, L = _interval(J), _interval(L)
    a, b = L
    hits_a = level_set(f, a, J[0], J[1])
    hits_b = level_set(f, b, J[0], J[1])
    if not hits_a or not hits_b:
        raise errors.PreconditionError("f([%s, %s]) does not cover [%s, %s]" %
                                       (formatRational(J[0]),
                                        formatRational(J[1]),
                                        formatRational(a), formatRational(b)))
    p = hits_a[0][0]
    if a == b:
        return (p, p)
    q = hits_b[0][0]
    if p < q:
        c = level_set(f, a, p, q)[-1][1]
        d = level_set(f, b, c, q)[0][0]
    else:
        c = level_set(f, b, q, p)[-1][1]
        d = level_set(f, a, c, p)[0][0]
    return (c, d)


def _fixed_points_within(f, J):
    fixed = fixed_points(f)
    lo, hi = J
    found = [x for x in fixed.isolated if lo <= x <= hi]
    found.extend(max(u, lo) for u, v in fixed.segments if u <= hi and v >= lo)
    return sorted(found)


def fixed_point_in(f, J):
    """
    The smallest fixed point of f in J, given f(J) contains J.
    """
    J = _interval(J)
    if not check_covering(f, J, J):
        raise errors.PreconditionError("f(J) does not contain J")
    return _fixed_points_within(f, J)[0]


class LoopCertificate(object):
    """
    Nested intervals Q_0, ..., Q_n = J_0 with Q_i inside J_i and
    f(Q_i) = Q_{i+1}, and a witness y in Q_0 with f^n(y) = y.
    """
    def __init__(self, cycle, nested, witness):
        self.cycle = cycle
        self.nested = tuple(nested)
        self.witness = witness

    def problems(self, f):
        """
        Independently re-check the certificate; returns a list of the
        violated conditions (empty when the certificate is valid).
        """
        found = []
        n = len(self.cycle)
        if len(self.nested) != n + 1:
            return ["expected %d nested intervals, got %d" %
                    (n + 1, len(self.nested))]
        if self.nested[n] != self.cycle[0]:
            found.append("Q_%d differs from J_0" % n)
        for i in range(n):
            (qa, qb), (ja, jb) = self.nested[i], self.cycle[i]
            if not (ja <= qa <= qb <= jb):
                found.append("Q_%d is not inside J_%d" % (i, i))
            if image(f, qa, qb) != self.nested[i + 1]:
                found.append("f(Q_%d) differs from Q_%d" % (i, i + 1))
        orbit = f.orbit(self.witness, n)
        for i in range(n):
            qa, qb = self.nested[i]
            if not qa <= orbit[i] <= qb:
                found.append("f^%d(witness) is not in Q_%d" % (i, i))
        if orbit[n] != self.witness:
            found.append("f^%d(witness) differs from the witness" % n)
        return found

    def validate(self, f):
        return not self.problems(f)

    def check(self, f):
        problems = self.problems(f)
        if problems:
            raise errors.VerificationFailed("; ".join(problems))

    def toDict(self):
        return {'cycle': self.cycle.toList(),
                'nested': [[a, b] for a, b in self.nested],
                'witness': self.witness}


def realize_loop(f, cycle, budget=None):
    """
    Turn a cycle of intervals into a periodic point following it: pull
    J_0 back along the cycle to get Q_0 with f^n(Q_0) = J_0, then solve
    f^n(y) = y in Q_0. The least period of y may be a proper divisor of n.
    """
    if not isinstance(cycle, IntervalCycle):
        cycle = IntervalCycle(cycle)
    i = cycle.firstViolation(f)
    if i is not None:
        raise errors.PreconditionError("covering fails at index %d: f(J_%d) "
                                       "does not contain J_%d" %
                                       (i, i, (i + 1) % len(cycle)))
    n = len(cycle)
    nested = [None] * (n + 1)
    nested[n] = cycle[0]
    for i in range(n - 1, -1, -1):
        nested[i] = pull_back(f, cycle[i], nested[i + 1])
        log.debug("Q_%d = [%s, %s]" % (i, formatRational(nested[i][0]),
                                       formatRational(nested[i][1])))
    fn = iterate(f, n, budget)
    witness = _fixed_points_within(fn, nested[0])[0]
    certificate = LoopCertificate(cycle, nested, witness)
    certificate.check(f)
    return certificate


def is_lemma6_witness(f, d, z):
    """
    Which variant of the hypothesis holds at (d, z): 'left' for
    f^3(d) <= z and f^2(d) < d < z < f(d), 'right' for
    f(d) < z < d < f^2(d) and z <= f^3(d), None otherwise.
    """
    d, z = toRational(d), toRational(z)
    if f(z) != z:
        return None
    _, f1, f2, f3 = f.orbit(d, 3)
    if f3 <= z and f2 < d < z < f1:
        return 'left'
    if f1 < z < d < f2 and z <= f3:
        return 'right'
    return None


def _feasible(constraints, width):
    """
    Solve constraints p + r*t < 0 (strict) or <= 0 over t in [0, width].
    Returns the chosen t or None.
    """
    lo, lo_closed = Fraction(0), True
    hi, hi_closed = width, True
    for p, r, strict in constraints:
        if r == 0:
            if p > 0 or (strict and p == 0):
                return None
            continue
        t = -p / r
        if r > 0:
            if t < hi or (t == hi and strict):
                hi, hi_closed = t, not strict
        else:
            if t > lo or (t == lo and strict):
                lo, lo_closed = t, not strict
    if lo > hi or (lo == hi and not (lo_closed and hi_closed)):
        return None
    if lo_closed:
        return lo
    return (lo + hi) / 2


def _lemma6_constraints(z, variant, u, v, start, end):
    """
    The hypothesis as linear constraints in t = d - u on a piece [u, v]
    where f, f^2 and f^3 are linear; start and end are the orbits of u, v.
    """
    w = v - u
    f1, f2, f3 = [(start[k], (end[k] - start[k]) / w) for k in (1, 2, 3)]
    d = (u, Fraction(1))
    zero = (z, Fraction(0))

    def less(a, b, strict=True):
        return (a[0] - b[0], a[1] - b[1], strict)

    if variant == 'left':
        return [less(f3, zero, strict=False), less(f2, d), less(d, zero),
                less(zero, f1)]
    return [less(f1, zero), less(zero, d), less(d, f2),
            less(zero, f3, strict=False)]


def lemma6_search(f, budget=None):
    """
    Look for a fixed point z and a point d satisfying one of the two
    variants of the hypothesis. Every piece of f^3 is solved exactly; the
    first witness in (z, d) order is returned, or None.
    """
    f3 = iterate(f, 3, budget)
    zs = fixed_points(f).isolated
    for z in zs:
        for u, _, v, _ in f3.pieces():
            start, end = f.orbit(u, 3), f.orbit(v, 3)
            for variant in ('left', 'right'):
                constraints = _lemma6_constraints(z, variant, u, v, start, end)
                t = _feasible(constraints, v - u)
                if t is not None:
                    return Lemma6Witness(u + t, z, variant)
    return None


def lemma6_consequence(f, bound, budget=None):
    """
    Search for a witness and, when there is one, list the even periods up to
    bound that are missing (there should be none).
    """
    witness = lemma6_search(f, budget)
    if witness is None:
        return Lemma6Report(None, bound, [])
    report = period_set(f, bound, budget)
    missing = [e for e in range(2, bound + 1, 2) if e not in report]
    return Lemma6Report(witness, bound, missing)


class AbcReport(object):
    def __init__(self, bound, periods, checks):
        self.bound = bound
        self.periods = periods
        self.checks = checks

    @property
    def passed(self):
        return all(c.status != FAILED for c in self.checks)

    @property
    def exercised(self):
        return [c for c in self.checks if c.status != SKIPPED]

    def toDict(self):
        return {'bound': self.bound,
                'periods': self.periods,
                'passed': self.passed,
                'checks': [dict(c._asdict()) for c in self.checks]}


def check_abc(f, bound, budget=None):
    """
    Check the three implications the theorem reduces to on the period set
    of f up to bound:

        (a) a period 3 or 4 forces period 2;
        (b) an odd period m >= 3 forces period m + 2;
        (c) an odd period m >= 3 forces periods 6 and 2m.

    Implications whose conclusion lies beyond the bound are skipped.
    """
    report = period_set(f, bound, budget)
    periods = report.periods
    checks = []

    def conclude(statement, m, required):
        if any(r > bound for r in required):
            checks.append(AbcCheck(statement, m, SKIPPED,
                                   "needs periods %r beyond bound %d" %
                                   (required, bound)))
            return
        missing = [r for r in required if r not in report]
        if missing:
            checks.append(AbcCheck(statement, m, FAILED,
                                   "missing periods %r" % missing))
        else:
            checks.append(AbcCheck(statement, m, PASSED,
                                   "periods %r present" % required))

    small = [m for m in (3, 4) if m in report]
    for m in small:
        conclude('a', m, [2])
    if not small:
        checks.append(AbcCheck('a', None, SKIPPED, "no period 3 or 4"))
    odd = [m for m in periods if m >= 3 and m % 2 == 1]
    for m in odd:
        conclude('b', m, [m + 2])
        conclude('c', m, [6, 2 * m])
    if not odd:
        checks.append(AbcCheck('b', None, SKIPPED, "no odd period >= 3"))
        checks.append(AbcCheck('c', None, SKIPPED, "no odd period >= 3"))
    return AbcReport(bound, periods, checks)
