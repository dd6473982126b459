"""Exact piecewise-linear primitives over the rationals.

Everything in this package that looks like geometry bottoms out here:
increasing affine reparametrizations of the unit interval and unit square,
piecewise-linear paths, and grid-bilinear sheets, all with
:class:`fractions.Fraction` coordinates.  Each function class has a canonical
form (minimal breakpoint set), so equality *of the underlying functions* is
decidable and reduces to ``==`` on canonical representatives.  That is the
property the law checkers in :mod:`strips_operad.framework` rely on.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rat = Fraction
Point = "tuple[Fraction, ...]"

ZERO = Fraction(0)
ONE = Fraction(1)


def as_rat(x) -> Fraction:
    """Coerce ints / strings like ``\"3/4\"`` to Fraction."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def as_point(p) -> tuple[Fraction, ...]:
    return tuple(as_rat(c) for c in p)


def lerp(p, q, t: Fraction) -> tuple[Fraction, ...]:
    """Point on the segment from p to q at parameter t."""
    return tuple(a + (b - a) * t for a, b in zip(p, q))


def _segment_index(breaks: Sequence[Fraction], t: Fraction) -> int:
    """Index i with breaks[i] <= t <= breaks[i+1] (breaks strictly increasing)."""
    i = bisect.bisect_right(breaks, t) - 1
    return min(max(i, 0), len(breaks) - 2)


# ---------------------------------------------------------------------------
# affine embeddings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AffineMap1:
    """Increasing affine map x |-> a*x + c with a > 0."""

    a: Fraction
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", as_rat(self.a))
        object.__setattr__(self, "c", as_rat(self.c))
        if self.a <= 0:
            raise ValueError(f"affine scale must be positive, got {self.a}")

    def __call__(self, x: Fraction) -> Fraction:
        return self.a * as_rat(x) + self.c

    def compose(self, inner: "AffineMap1") -> "AffineMap1":
        """self after inner:  x |-> self(inner(x))."""
        return AffineMap1(self.a * inner.a, self.a * inner.c + self.c)

    def invert(self, y: Fraction) -> Fraction:
        return (as_rat(y) - self.c) / self.a

    def image(self, lo: Fraction = ZERO, hi: Fraction = ONE) -> tuple[Fraction, Fraction]:
        """Image of [lo, hi]; defaults to the unit interval."""
        return (self(lo), self(hi))


IDENTITY_1 = AffineMap1(ONE, ZERO)


@dataclass(frozen=True)
class AffineMap2:
    """Axis-aligned embedding (x, y) |-> (a*x + c, b*y + d), both scales > 0."""

    x_part: AffineMap1
    y_part: AffineMap1

    def __call__(self, point) -> tuple[Fraction, Fraction]:
        x, y = point
        return (self.x_part(x), self.y_part(y))

    def compose(self, inner: "AffineMap2") -> "AffineMap2":
        return AffineMap2(self.x_part.compose(inner.x_part),
                          self.y_part.compose(inner.y_part))

    def image(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        """((x_lo, x_hi), (y_lo, y_hi)) for the image of the unit square."""
        return (self.x_part.image(), self.y_part.image())


IDENTITY_2 = AffineMap2(IDENTITY_1, IDENTITY_1)


def rect_of(x_lo, x_hi, y_lo, y_hi) -> AffineMap2:
    """The embedding of the unit square onto [x_lo,x_hi] x [y_lo,y_hi]."""
    x_lo, x_hi, y_lo, y_hi = map(as_rat, (x_lo, x_hi, y_lo, y_hi))
    return AffineMap2(AffineMap1(x_hi - x_lo, x_lo), AffineMap1(y_hi - y_lo, y_lo))


# ---------------------------------------------------------------------------
# piecewise-linear paths
# ---------------------------------------------------------------------------

def _check_breaks(breaks: tuple) -> None:
    if len(breaks) < 2:
        raise ValueError("need at least two breakpoints")
    for u, v in zip(breaks, breaks[1:]):
        if not u < v:
            raise ValueError(f"breakpoints must be strictly increasing, got {u} >= {v}")


@dataclass(frozen=True)
class PLPath:
    """Piecewise-linear function [0,1] -> Q^d, linear between breakpoints.

    ``values[k]`` is the value at ``breaks[k]``; breaks are strictly
    increasing with ``breaks[0] == 0`` and ``breaks[-1] == 1``.
    """

    breaks: tuple
    values: tuple

    def __post_init__(self):
        breaks = tuple(as_rat(t) for t in self.breaks)
        values = tuple(as_point(v) for v in self.values)
        object.__setattr__(self, "breaks", breaks)
        object.__setattr__(self, "values", values)
        _check_breaks(breaks)
        if breaks[0] != ZERO or breaks[-1] != ONE:
            raise ValueError("path must be parametrized over [0, 1]")
        if len(values) != len(breaks):
            raise ValueError("one value per breakpoint required")
        d = len(values[0])
        if any(len(v) != d for v in values):
            raise ValueError("all values must have the same dimension")

    @property
    def dim(self) -> int:
        return len(self.values[0])

    def at(self, t: Fraction) -> tuple:
        t = as_rat(t)
        if not ZERO <= t <= ONE:
            raise ValueError(f"argument {t} outside [0, 1]")
        i = _segment_index(self.breaks, t)
        t0, t1 = self.breaks[i], self.breaks[i + 1]
        return lerp(self.values[i], self.values[i + 1], (t - t0) / (t1 - t0))

    def canonical(self) -> "PLPath":
        """Drop every interior breakpoint where the slope does not change."""
        keep = [0]
        for k in range(1, len(self.breaks) - 1):
            if _slope(self, keep[-1], k) != _slope(self, k, k + 1):
                keep.append(k)
        keep.append(len(self.breaks) - 1)
        if len(keep) == len(self.breaks):
            return self
        return PLPath(tuple(self.breaks[k] for k in keep),
                      tuple(self.values[k] for k in keep))

    def refined(self, extra: Iterable) -> "PLPath":
        """Same function presented with additional (redundant) breakpoints."""
        pts = set(self.breaks)
        for t in extra:
            t = as_rat(t)
            if not ZERO <= t <= ONE:
                raise ValueError(f"extra breakpoint {t} outside [0, 1]")
            pts.add(t)
        breaks = tuple(sorted(pts))
        return PLPath(breaks, tuple(self.at(t) for t in breaks))


def _slope(path: PLPath, i: int, j: int) -> tuple:
    dt = path.breaks[j] - path.breaks[i]
    return tuple((b - a) / dt for a, b in zip(path.values[i], path.values[j]))


def constant_path(value, dim=None) -> PLPath:
    v = as_point(value)
    if dim is not None and len(v) != dim:
        raise ValueError("dimension mismatch")
    return PLPath((ZERO, ONE), (v, v))


@dataclass(frozen=True)
class PathFragment:
    """A piecewise-linear function on a closed subinterval of [0, 1].

    Same data layout as :class:`PLPath` but the domain is
    ``[breaks[0], breaks[-1]]``; produced by :func:`pl_precompose`.
    """

    breaks: tuple
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "breaks", tuple(as_rat(t) for t in self.breaks))
        object.__setattr__(self, "values", tuple(as_point(v) for v in self.values))
        _check_breaks(self.breaks)
        if len(self.values) != len(self.breaks):
            raise ValueError("one value per breakpoint required")

    @property
    def lo(self) -> Fraction:
        return self.breaks[0]

    @property
    def hi(self) -> Fraction:
        return self.breaks[-1]

    def at(self, t: Fraction) -> tuple:
        t = as_rat(t)
        if not self.lo <= t <= self.hi:
            raise ValueError(f"argument {t} outside [{self.lo}, {self.hi}]")
        i = _segment_index(self.breaks, t)
        t0, t1 = self.breaks[i], self.breaks[i + 1]
        return lerp(self.values[i], self.values[i + 1], (t - t0) / (t1 - t0))


# ---------------------------------------------------------------------------
# grid-bilinear sheets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GridSheet:
    """Function [0,1]^2 -> Q^d, bilinear on each cell of a rectangular grid.

    ``values[ix][iy]`` is the value at ``(x_breaks[ix], y_breaks[iy])``.
    """

    x_breaks: tuple
    y_breaks: tuple
    values: tuple

    def __post_init__(self):
        xb = tuple(as_rat(t) for t in self.x_breaks)
        yb = tuple(as_rat(t) for t in self.y_breaks)
        vals = tuple(tuple(as_point(v) for v in col) for col in self.values)
        object.__setattr__(self, "x_breaks", xb)
        object.__setattr__(self, "y_breaks", yb)
        object.__setattr__(self, "values", vals)
        for breaks in (xb, yb):
            _check_breaks(breaks)
            if breaks[0] != ZERO or breaks[-1] != ONE:
                raise ValueError("sheet must be parametrized over the unit square")
        if len(vals) != len(xb) or any(len(col) != len(yb) for col in vals):
            raise ValueError("value grid must be len(x_breaks) x len(y_breaks)")
        d = len(vals[0][0])
        if any(len(v) != d for col in vals for v in col):
            raise ValueError("all values must have the same dimension")

    @property
    def dim(self) -> int:
        return len(self.values[0][0])

    def at(self, x: Fraction, y: Fraction) -> tuple:
        x, y = as_rat(x), as_rat(y)
        if not (ZERO <= x <= ONE and ZERO <= y <= ONE):
            raise ValueError(f"argument ({x}, {y}) outside the unit square")
        ix = _segment_index(self.x_breaks, x)
        iy = _segment_index(self.y_breaks, y)
        x0, x1 = self.x_breaks[ix], self.x_breaks[ix + 1]
        y0, y1 = self.y_breaks[iy], self.y_breaks[iy + 1]
        u = (x - x0) / (x1 - x0)
        w = (y - y0) / (y1 - y0)
        lo = lerp(self.values[ix][iy], self.values[ix + 1][iy], u)
        hi = lerp(self.values[ix][iy + 1], self.values[ix + 1][iy + 1], u)
        return lerp(lo, hi, w)

    def canonical(self) -> "GridSheet":
        """Drop redundant grid lines.

        An interior x-line is kept iff some row of grid values has a slope
        change across it, and symmetrically for y-lines.  Whether a line is
        redundant does not depend on redundant lines along the other axis
        (slopes are computed between retained neighbours), so both axes can
        be pruned in one pass.
        """
        keep_x = _essential(self.x_breaks, self.values, by_rows=False)
        keep_y = _essential(self.y_breaks, self.values, by_rows=True)
        if len(keep_x) == len(self.x_breaks) and len(keep_y) == len(self.y_breaks):
            return self
        vals = tuple(tuple(self.values[ix][iy] for iy in keep_y) for ix in keep_x)
        return GridSheet(tuple(self.x_breaks[i] for i in keep_x),
                         tuple(self.y_breaks[i] for i in keep_y),
                         vals)

    def refined(self, extra_x: Iterable = (), extra_y: Iterable = ()) -> "GridSheet":
        """Same function on a finer grid (duplicates are merged)."""
        xs = set(self.x_breaks)
        ys = set(self.y_breaks)
        for t in extra_x:
            t = as_rat(t)
            if not ZERO <= t <= ONE:
                raise ValueError(f"extra x grid line {t} outside [0, 1]")
            xs.add(t)
        for t in extra_y:
            t = as_rat(t)
            if not ZERO <= t <= ONE:
                raise ValueError(f"extra y grid line {t} outside [0, 1]")
            ys.add(t)
        xb, yb = tuple(sorted(xs)), tuple(sorted(ys))
        vals = tuple(tuple(self.at(x, y) for y in yb) for x in xb)
        return GridSheet(xb, yb, vals)

    def row(self, iy: int) -> tuple:
        """Values along the iy-th y grid line, indexed by x."""
        return tuple(col[iy] for col in self.values)

    def bottom_edge(self) -> PLPath:
        return PLPath(self.x_breaks, self.row(0))

    def top_edge(self) -> PLPath:
        return PLPath(self.x_breaks, self.row(len(self.y_breaks) - 1))


def _essential(breaks: tuple, values: tuple, by_rows: bool) -> list:
    """Indices of grid lines to keep along one axis.

    ``by_rows=False`` prunes x-lines (scan every row of values for a slope
    change), ``by_rows=True`` prunes y-lines.
    """
    def value(line: int, other: int):
        return values[other][line] if by_rows else values[line][other]

    n = len(breaks)
    n_other = len(values[0]) if not by_rows else len(values)
    keep = [0]
    for k in range(1, n - 1):
        prev = keep[-1]
        dt0 = breaks[k] - breaks[prev]
        dt1 = breaks[k + 1] - breaks[k]
        needed = False
        for o in range(n_other):
            a, b, c = value(prev, o), value(k, o), value(k + 1, o)
            if any((bb - aa) / dt0 != (cc - bb) / dt1 for aa, bb, cc in zip(a, b, c)):
                needed = True
                break
        if needed:
            keep.append(k)
    keep.append(n - 1)
    return keep


def constant_sheet(value) -> GridSheet:
    v = as_point(value)
    return GridSheet((ZERO, ONE), (ZERO, ONE), ((v, v), (v, v)))


@dataclass(frozen=True)
class SheetFragment:
    """A grid-bilinear function on a sub-rectangle of the unit square."""

    x_breaks: tuple
    y_breaks: tuple
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "x_breaks", tuple(as_rat(t) for t in self.x_breaks))
        object.__setattr__(self, "y_breaks", tuple(as_rat(t) for t in self.y_breaks))
        object.__setattr__(self, "values",
                           tuple(tuple(as_point(v) for v in col) for col in self.values))
        _check_breaks(self.x_breaks)
        _check_breaks(self.y_breaks)

    @property
    def x_lo(self) -> Fraction:
        return self.x_breaks[0]

    @property
    def x_hi(self) -> Fraction:
        return self.x_breaks[-1]

    @property
    def y_lo(self) -> Fraction:
        return self.y_breaks[0]

    @property
    def y_hi(self) -> Fraction:
        return self.y_breaks[-1]

    def at(self, x: Fraction, y: Fraction) -> tuple:
        x, y = as_rat(x), as_rat(y)
        ix = _segment_index(self.x_breaks, x)
        iy = _segment_index(self.y_breaks, y)
        x0, x1 = self.x_breaks[ix], self.x_breaks[ix + 1]
        y0, y1 = self.y_breaks[iy], self.y_breaks[iy + 1]
        u = (x - x0) / (x1 - x0)
        w = (y - y0) / (y1 - y0)
        lo = lerp(self.values[ix][iy], self.values[ix + 1][iy], u)
        hi = lerp(self.values[ix][iy + 1], self.values[ix + 1][iy + 1], u)
        return lerp(lo, hi, w)


# ---------------------------------------------------------------------------
# canonical form / reparametrization entry points
# ---------------------------------------------------------------------------

Canonicalizable = Union[PLPath, GridSheet]


def canonical_form(obj: Canonicalizable) -> Canonicalizable:
    """Minimal-breakpoint representative of the same function.

    Idempotent, and two representations of the same function canonicalize to
    equal objects, so ``canonical_form(f) == canonical_form(g)`` decides
    function equality.
    """
    if not isinstance(obj, (PLPath, GridSheet)):
        raise TypeError(f"cannot canonicalize {type(obj).__name__}")
    return obj.canonical()


def pl_precompose(obj, mapping, window):
    """Reparametrize ``obj`` by an affine embedding of its domain.

    For a :class:`PLPath` ``mapping`` is an :class:`AffineMap1` and ``window``
    its image ``(lo, hi)``; the result is the :class:`PathFragment` on the
    window with value ``obj(mapping.invert(t))`` at ``t``.  For a
    :class:`GridSheet`, ``mapping`` is an :class:`AffineMap2` and ``window``
    is ``((x_lo, x_hi), (y_lo, y_hi))``.  The window argument is redundant
    but is checked: passing a window that is not the exact image of the map,
    or one that leaves the unit domain, is an error.
    """
    if isinstance(obj, PLPath):
        if not isinstance(mapping, AffineMap1):
            raise TypeError("paths are reparametrized by AffineMap1")
        lo, hi = (as_rat(window[0]), as_rat(window[1]))
        if (lo, hi) != mapping.image():
            raise ValueError(f"window ({lo}, {hi}) is not the image {mapping.image()}")
        if lo < ZERO or hi > ONE:
            raise ValueError(f"window ({lo}, {hi}) leaves the unit interval")
        return PathFragment(tuple(mapping(t) for t in obj.breaks), obj.values)
    if isinstance(obj, GridSheet):
        if not isinstance(mapping, AffineMap2):
            raise TypeError("sheets are reparametrized by AffineMap2")
        (x_lo, x_hi), (y_lo, y_hi) = window
        win = ((as_rat(x_lo), as_rat(x_hi)), (as_rat(y_lo), as_rat(y_hi)))
        if win != mapping.image():
            raise ValueError(f"window {win} is not the image {mapping.image()}")
        if win[0][0] < ZERO or win[0][1] > ONE or win[1][0] < ZERO or win[1][1] > ONE:
            raise ValueError(f"window {win} leaves the unit square")
        return SheetFragment(tuple(mapping.x_part(t) for t in obj.x_breaks),
                             tuple(mapping.y_part(t) for t in obj.y_breaks),
                             obj.values)
    raise TypeError(f"cannot reparametrize {type(obj).__name__}")
