#-*- coding: utf-8 -*-

import json
import os
import sys

import yaml
from twisted.python import usage

from sharklab import __version__, errors
from sharklab import constructions, order, patterns, periodic, plmap, plot
from sharklab.reporter import YAMLReporter
from sharklab.settings import config
from sharklab.utils import log


def _positive(value):
    n = int(value)
    if n < 1:
        raise ValueError("%r is not a positive integer" % value)
    return n

_positive.coerceDoc = "Must be a positive integer."


def _pattern(text):
    if text is None:
        raise usage.UsageError("a --pattern is required")
    return patterns.OrbitPattern.parse(text)


def load_map(spec):
    """
    A map from a map file, or one of the named maps (tent, g, h).
    """
    if spec is None:
        raise usage.UsageError("a --map is required")
    if not os.path.exists(spec) and spec in constructions.NAMED_MAPS:
        return constructions.make_named(spec)
    return plmap.load(spec)


class CommandOptions(usage.Options):
    """
    Base class of the subcommands: every command may write its result to
    --out instead of stdout.
    """
    optParameters = [["out", "o", None, "write the result to this file"]]

    def emit(self, text, out):
        if self['out']:
            with open(self['out'], 'w') as fp:
                fp.write(text)
            log.msg("Wrote %s" % self['out'])
        else:
            out.write(text)

    def report(self, details, entry):
        """
        Write a YAML report to --out, if one was asked for.
        """
        if not self['out']:
            return
        reporter = YAMLReporter(details, self['out'])
        reporter.createReport()
        reporter.writeReportEntry(entry)
        reporter.finish()
        log.msg("Report written to %s" % self['out'])


class MapOptions(CommandOptions):
    optParameters = [["map", "m", None,
                      "map file, or one of the named maps tent, g, h"]]

    def postOptions(self):
        self.map = load_map(self['map'])


class BoundedMapOptions(MapOptions):
    optParameters = [["bound", "b", None, "largest period examined",
                      _positive]]

    @property
    def bound(self):
        return self['bound'] or config.defaults.bound


class OrderCmpOptions(CommandOptions):
    synopsis = "A B"

    def parseArgs(self, a, b):
        self.a = order.SharkClass.parse(a)
        self.b = order.SharkClass.parse(b)

    def execute(self, out):
        relation = {order.Ordering.Less: u'≺',
                    order.Ordering.Equal: u'=',
                    order.Ordering.Greater: u'≻'}[order.shark_cmp(self.a,
                                                                  self.b)]
        self.emit(u"%s %s %s\n" % (self.a, relation, self.b), out)
        return errors.EXIT_OK


class OrderTailOptions(CommandOptions):
    synopsis = "CLASS"
    optParameters = [["bound", "b", None, "largest number listed", _positive]]

    def parseArgs(self, c):
        self.c = order.SharkClass.parse(c)

    def execute(self, out):
        bound = self['bound'] or config.defaults.bound
        tail = order.shark_tail(self.c, bound)
        self.emit(' '.join(str(m) for m in tail) + '\n', out)
        return errors.EXIT_OK


class MapEvalOptions(MapOptions):
    synopsis = "--map FILE X [X ...]"

    def parseArgs(self, *xs):
        if not xs:
            raise usage.UsageError("no points to evaluate")
        self.xs = [plmap.parseRational(x, 'x') for x in xs]

    def execute(self, out):
        lines = ["f(%s) = %s" % (plmap.formatRational(x),
                                 plmap.formatRational(self.map(x)))
                 for x in self.xs]
        self.emit('\n'.join(lines) + '\n', out)
        return errors.EXIT_OK


class MapIterateOptions(MapOptions):
    synopsis = "--map FILE N"

    def parseArgs(self, n):
        try:
            self.n = int(n)
        except ValueError:
            raise usage.UsageError("%r is not an integer" % n)
        if self.n < 0:
            raise usage.UsageError("cannot iterate a negative number of times")

    def execute(self, out):
        fn = plmap.iterate(self.map, self.n)
        self.emit(plmap.dumps(fn, {'recipe': {'iterate': self.n}}), out)
        return errors.EXIT_OK


def format_period_table(report):
    lines = ["period witness"]
    for n, w in report.entries.items():
        lines.append("%6d %s" % (n, plmap.formatRational(w)))
    if report.isTail:
        tail = "tail class: %s" % report.tailClass
        if report.ambiguousAtBound:
            tail += " (or 2^inf, undecided at bound %d)" % report.bound
    else:
        tail = "not a Sharkovsky tail"
    lines.append(tail)
    return '\n'.join(lines) + '\n'


class PeriodsOptions(BoundedMapOptions):
    synopsis = "--map FILE [--bound N]"

    def execute(self, out):
        report = periodic.period_set(self.map, self.bound)
        out.write(format_period_table(report))
        self.report({'command': 'periods', 'map': self['map'],
                     'bound': self.bound}, report)
        return errors.EXIT_OK


class VerifyOptions(BoundedMapOptions):
    synopsis = "--map FILE [--bound N]"

    def execute(self, out):
        report = periodic.verify_sharkovsky(self.map, self.bound)
        out.write(format_period_table(report))
        out.write("verified: %s\n" % ('yes' if report.verified else 'no'))
        self.report({'command': 'verify', 'map': self['map'],
                     'bound': self.bound}, report)
        if not report.verified:
            return errors.EXIT_VERIFICATION_FAILED
        return errors.EXIT_OK


class DigraphOptions(CommandOptions):
    synopsis = "--pattern \"i1 i2 ...\" [--format dot|json]"
    optParameters = [["pattern", "p", None, "cyclic permutation"],
                     ["format", "f", "dot", "dot or json"]]

    def postOptions(self):
        self.pattern = _pattern(self['pattern'])
        if self['format'] not in ('dot', 'json'):
            raise errors.ParameterError("format: expected dot or json, got "
                                        "%r" % self['format'])

    def execute(self, out):
        g = patterns.cover_digraph(self.pattern)
        if self['format'] == 'dot':
            text = patterns.digraph_to_dot(g)
        else:
            text = json.dumps({'pattern': list(self.pattern.sigma),
                               'nodes': g.nodes,
                               'edges': [list(e) for e in g.edges]},
                              sort_keys=True) + '\n'
        self.emit(text, out)
        return errors.EXIT_OK


class StefanOptions(CommandOptions):
    synopsis = "\"i1 i2 ...\""
    optParameters = [["pattern", "p", None, "cyclic permutation"]]

    def parseArgs(self, *args):
        text = ' '.join(args) if args else self['pattern']
        self.pattern = _pattern(text)

    def execute(self, out):
        answer = 'yes' if patterns.is_stefan(self.pattern) else 'no'
        self.emit("stefan: %s\n" % answer, out)
        return errors.EXIT_OK


def _parse_cycle(text):
    """
    "a,b c,d ..." as a list of closed intervals.
    """
    cycle = []
    for k, token in enumerate(text.split()):
        ends = token.split(',')
        if len(ends) != 2:
            raise errors.ParameterError("cycle: %r is not of the form a,b" %
                                        token)
        cycle.append((plmap.parseRational(ends[0], 'cycle[%d]' % k),
                      plmap.parseRational(ends[1], 'cycle[%d]' % k)))
    if not cycle:
        raise errors.ParameterError("cycle: no intervals")
    return cycle


class RealizeOptions(CommandOptions):
    synopsis = ("--pattern \"i1 i2 ...\" J1 J2 ... | "
                "--map FILE --cycle \"a,b c,d ...\"")
    optParameters = [["pattern", "p", None, "cyclic permutation"],
                     ["map", "m", None, "map file or named map"],
                     ["cycle", "c", None, "intervals J_0 ... J_{n-1}"]]

    def parseArgs(self, *walk):
        self.walk = walk

    def postOptions(self):
        if self['pattern'] is not None:
            p = _pattern(self['pattern'])
            try:
                walk = [int(j) for j in self.walk]
            except ValueError:
                raise usage.UsageError("a walk is a list of node numbers")
            if not walk or any(j < 1 or j >= p.m for j in walk):
                raise usage.UsageError("walk nodes must lie in 1..%d" %
                                       (p.m - 1))
            self.map = patterns.connect_the_dots(p)
            self.cycle = patterns.walk_to_cycle(p, walk)
        else:
            self.map = load_map(self['map'])
            if self['cycle'] is None:
                raise usage.UsageError("a --cycle is required with --map")
            self.cycle = periodic.IntervalCycle(_parse_cycle(self['cycle']))

    def execute(self, out):
        certificate = periodic.realize_loop(self.map, self.cycle)
        n = len(self.cycle)
        lines = []
        for i, (a, b) in enumerate(certificate.nested):
            lines.append("Q_%d = [%s, %s]" % (i, plmap.formatRational(a),
                                              plmap.formatRational(b)))
        y = certificate.witness
        lines.append("witness: %s" % plmap.formatRational(y))
        lines.append("least period: %d" %
                     periodic.least_period(self.map, y, n))
        problems = certificate.problems(self.map)
        lines.append("certificate: %s" % ('valid' if not problems
                                          else '; '.join(problems)))
        out.write('\n'.join(lines) + '\n')
        self.report({'command': 'realize', 'map': self['map'],
                     'pattern': self['pattern']}, certificate)
        if problems:
            return errors.EXIT_VERIFICATION_FAILED
        return errors.EXIT_OK


class WitnessOptions(CommandOptions):
    synopsis = "CLASS [--strategy S] [--depth K] [--a p/q]"
    optParameters = [["strategy", "s", constructions.STEFAN_DOUBLING,
                      "stefan-doubling or truncated-tent"],
                     ["depth", "d", None, "truncation depth for 2^inf",
                      _positive],
                     ["a", "a", None, "doubling parameter in (0, 1/2)"]]

    def parseArgs(self, c):
        self.c = order.SharkClass.parse(c)

    def postOptions(self):
        if self['strategy'] not in constructions.STRATEGIES:
            raise errors.ParameterError("strategy: unknown %r" %
                                        self['strategy'])
        constructions.DoublingSpec('G', self['a'])

    def execute(self, out):
        f = constructions.witness(self.c, self['strategy'], self['depth'],
                                  self['a'])
        self.emit(plmap.dumps(f), out)
        return errors.EXIT_OK


class DoubleOptions(MapOptions):
    synopsis = "--map FILE --op G|H|D|E [--a p/q]"
    optParameters = [["op", None, "G", "doubling operator G, H, D or E"],
                     ["a", "a", None, "doubling parameter in (0, 1/2)"]]

    def postOptions(self):
        MapOptions.postOptions(self)
        constructions.DoublingSpec(self['op'], self['a'])

    def execute(self, out):
        spec = constructions.DoublingSpec(self['op'], self['a'])
        f = constructions.double(self.map, spec)
        self.emit(plmap.dumps(f, {'recipe': {
            'double': spec.kind, 'a': plmap.formatRational(spec.a),
            'map': self['map']}}), out)
        return errors.EXIT_OK


class PhiOptions(CommandOptions):
    synopsis = "--alpha BITS [--a p/q] [--b p/q] [--depth K]"
    optParameters = [["alpha", None, None, "bits, e.g. 01 or 1(01)"],
                     ["a", "a", None, "parameter of G in (0, 1/2)"],
                     ["b", None, None, "parameter of H in (0, 1/2), "
                      "defaults to --a"],
                     ["depth", "d", None, "truncation depth", _positive]]

    def postOptions(self):
        if self['alpha'] is None:
            raise usage.UsageError("an --alpha is required")
        self.phiSpec()

    def phiSpec(self):
        a = [self['a']] if self['a'] is not None else None
        b = [self['b']] if self['b'] is not None else a
        return constructions.PhiSpec(self['alpha'], a, b, self['depth'])

    def execute(self, out):
        truncation = constructions.phi_truncation(self.phiSpec())
        log.msg("threshold %s, tail bound %s" %
                (plmap.formatRational(truncation.threshold),
                 plmap.formatRational(truncation.tailBound)))
        f = truncation.map
        f.comment['recipe'].update({
            'threshold': plmap.formatRational(truncation.threshold),
            'tail_bound': plmap.formatRational(truncation.tailBound)})
        self.emit(plmap.dumps(f), out)
        return errors.EXIT_OK


class PlotOptions(MapOptions):
    synopsis = "--map FILE [--format csv|svg] [--samples N]"
    optParameters = [["format", "f", "csv", "csv or svg"],
                     ["samples", "n", None, "grid points in the CSV",
                      _positive]]

    def postOptions(self):
        MapOptions.postOptions(self)
        if self['format'] not in plot.FORMATS:
            raise errors.ParameterError("format: expected csv or svg, got %r"
                                        % self['format'])

    def execute(self, out):
        self.emit(plot.plot(self.map, self['format'], self['samples']), out)
        return errors.EXIT_OK


class AbcOptions(BoundedMapOptions):
    synopsis = "--map FILE [--bound N]"

    def execute(self, out):
        report = periodic.check_abc(self.map, self.bound)
        lines = ["periods: %s" % ' '.join(str(m) for m in report.periods)]
        for check in report.checks:
            m = '-' if check.m is None else str(check.m)
            lines.append("(%s) m=%s %s: %s" % (check.statement, m,
                                               check.status, check.detail))
        out.write('\n'.join(lines) + '\n')
        self.report({'command': 'abc', 'map': self['map'],
                     'bound': self.bound}, report)
        if not report.passed:
            return errors.EXIT_VERIFICATION_FAILED
        return errors.EXIT_OK


class Lemma6Options(BoundedMapOptions):
    synopsis = "--map FILE [--bound N]"

    def execute(self, out):
        report = periodic.lemma6_consequence(self.map, self.bound)
        w = report.witness
        if w is None:
            out.write("no witness\n")
            entry = {'witness': None, 'bound': self.bound}
        else:
            out.write("witness: d = %s, z = %s (%s)\n" %
                      (plmap.formatRational(w.d), plmap.formatRational(w.z),
                       w.variant))
            out.write("missing even periods: %s\n" %
                      (' '.join(str(e) for e in report.missingEvenPeriods)
                       or 'none'))
            entry = {'witness': dict(w._asdict()), 'bound': self.bound,
                     'missing_even_periods': report.missingEvenPeriods}
        self.report({'command': 'lemma6', 'map': self['map'],
                     'bound': self.bound}, entry)
        if report.missingEvenPeriods:
            return errors.EXIT_VERIFICATION_FAILED
        return errors.EXIT_OK


class Options(usage.Options):
    synopsis = "sharklab [options] command [command options]"

    longdesc = ("sharklab computes the periods of piecewise-linear interval "
                "maps exactly and builds maps realizing every class of the "
                "Sharkovsky order.")

    optFlags = [["debug", "D", "print debugging messages"]]

    optParameters = [["configfile", "c", None,
                      "path to the sharklab configuration file"],
                     ["logfile", "l", None, "log file name"]]

    subCommands = [
        ["order-cmp", None, OrderCmpOptions, "compare two classes"],
        ["order-tail", None, OrderTailOptions, "numbers preceding a class"],
        ["map-eval", None, MapEvalOptions, "evaluate a map"],
        ["map-iterate", None, MapIterateOptions, "write f^n as a map file"],
        ["periods", None, PeriodsOptions, "least periods up to a bound"],
        ["verify", None, VerifyOptions, "check the Sharkovsky tail property"],
        ["digraph", None, DigraphOptions, "covering digraph of a pattern"],
        ["stefan", None, StefanOptions, "is a pattern a Stefan cycle"],
        ["realize", None, RealizeOptions, "periodic point along a cycle"],
        ["witness", None, WitnessOptions, "a map with a prescribed class"],
        ["double", None, DoubleOptions, "apply a doubling operator"],
        ["phi", None, PhiOptions, "truncation of Phi_alpha"],
        ["plot", None, PlotOptions, "CSV or SVG plot of a map"],
        ["abc", None, AbcOptions, "check the three reduction statements"],
        ["lemma6", None, Lemma6Options, "look for an even-period witness"],
    ]

    def opt_version(self):
        print("sharklab %s" % __version__)
        sys.exit(0)

    def postOptions(self):
        if getattr(self, "subCommand", None) is None:
            raise usage.UsageError("no command given")


def run(argv=None, out=None):
    """
    Parse argv, run the command and return the exit code.
    """
    if argv is None:
        argv = sys.argv[1:]
    if out is None:
        out = sys.stdout
    options = Options()
    try:
        options.parseOptions(argv)
    except usage.UsageError as ue:
        sys.stderr.write("%s\n%s: %s\n" % (options, 'sharklab', ue))
        return errors.EXIT_INPUT_ERROR
    except (errors.SharkLabError, IOError, OSError) as e:
        return errors.exitCodeFor(e)

    config.global_options = dict(options)
    config.set_paths()
    try:
        config.read_config_file()
        if options['debug']:
            config.advanced.debug = True
        log.start(options['logfile'])
        return options.subOptions.execute(out)
    except (errors.SharkLabError, yaml.YAMLError, IOError, OSError) as e:
        if config.advanced.debug:
            log.exception(e)
        return errors.exitCodeFor(e)
    finally:
        log.stop()


def main():
    sys.exit(run())
