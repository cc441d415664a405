"""
Plots of piecewise-linear maps. A PL map is its own polyline, so the SVG
is drawn by matplotlib through the exact breakpoints; the CSV adds a
uniform grid.
"""
import csv
import io
from fractions import Fraction

import matplotlib
from matplotlib.backends.backend_svg import FigureCanvasSVG
from matplotlib.figure import Figure

from sharklab import errors
from sharklab.settings import config

FORMATS = ('csv', 'svg')

SVG_INCHES = 5

# element ids come from the salt and the polyline keeps every breakpoint
SVG_RC = {'svg.hashsalt': 'sharklab',
          'svg.fonttype': 'none',
          'path.simplify': False}


def _decimal(q):
    return '%.12g' % float(q)


def sample_points(f, samples):
    """
    The breakpoints of f together with `samples` evenly spaced points of
    its domain, sorted and without repetitions.
    """
    if samples < 1:
        raise errors.ParameterError("samples must be positive, got %r" %
                                    (samples,))
    xs = set(f.xs)
    if samples == 1:
        xs.add(f.lo)
    else:
        width = f.hi - f.lo
        xs.update(f.lo + width * Fraction(i, samples - 1)
                  for i in range(samples))
    return [(x, f(x)) for x in sorted(xs)]


def to_csv(f, samples):
    stream = io.StringIO()
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(['x', 'y'])
    for x, y in sample_points(f, samples):
        writer.writerow([_decimal(x), _decimal(y)])
    return stream.getvalue()


def to_svg(f):
    """
    The graph of f as an SVG document: the polyline through the exact
    breakpoints (gid "graph"), the dashed diagonal (gid "diagonal") and the
    axes of the domain square. The output is byte-identical between runs.
    """
    lo, hi = float(f.lo), float(f.hi)
    with matplotlib.rc_context(SVG_RC):
        figure = Figure(figsize=(SVG_INCHES, SVG_INCHES))
        FigureCanvasSVG(figure)
        axes = figure.add_subplot(1, 1, 1)
        axes.plot([lo, hi], [lo, hi], color='gray', linestyle='--',
                  linewidth=1, gid='diagonal')
        axes.plot([float(x) for x in f.xs], [float(y) for y in f.ys],
                  color='blue', linewidth=2, gid='graph')
        axes.set_xlim(lo, hi)
        axes.set_ylim(lo, hi)
        axes.set_aspect('equal')
        axes.set_xlabel('x')
        axes.set_ylabel('f(x)')
        stream = io.StringIO()
        figure.savefig(stream, format='svg', metadata={'Date': None})
    return stream.getvalue()


def plot(f, fmt='csv', samples=None):
    if samples is None:
        samples = config.defaults.samples
    if fmt == 'csv':
        return to_csv(f, samples)
    if fmt == 'svg':
        return to_svg(f)
    raise errors.ParameterError("unknown plot format %r, expected csv or svg"
                                % (fmt,))
