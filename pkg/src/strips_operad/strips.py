"""Rectangle configurations in vertical strips over an interval configuration.

An element of shape ``n = (n_1, ..., n_r)`` consists of a base configuration
of r little intervals and, over the full-height strip of the i-th interval,
``n_i`` axis-aligned rectangles stacked bottom to top, all 2|n| rectangle
images disjoint.  Each rectangle is an :class:`AffineMap2` whose x component
equals the strip's interval embedding.

Composition glues one block per strip: a base configuration shared by all
inner elements of that strip, each inner element replacing one rectangle.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exact import ONE, ZERO, AffineMap1, AffineMap2, IDENTITY_2
from .framework import Block, FiberProductError, RelTwoOperadInstance
from .intervals import (DEFAULT_DENOM, IntervalConfig, interval_compose,
                        interval_unit, interval_violation, intervals_operad,
                        random_intervals)
from .shapes import check_shape, output_shape


@dataclass(frozen=True)
class StripConfig:
    """``rects[i]`` lists the rectangles of strip i, bottom to top."""

    shape: tuple
    base: IntervalConfig
    rects: tuple

    def __post_init__(self):
        shape = check_shape(self.shape)
        rects = tuple(tuple(row) for row in self.rects)
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "rects", rects)
        if len(shape) != self.base.arity:
            raise ValueError(
                f"shape of length {len(shape)} over a base of arity {self.base.arity}")
        if len(rects) != len(shape):
            raise ValueError("one rectangle list per strip required")
        for i, (n, row) in enumerate(zip(shape, rects)):
            if len(row) != n:
                raise ValueError(f"strip {i + 1} declares {n} rectangles, got {len(row)}")
            for rect in row:
                if not isinstance(rect, AffineMap2):
                    raise TypeError(f"expected AffineMap2, got {type(rect).__name__}")

    @property
    def arity(self) -> int:
        return len(self.shape)

    @property
    def total(self) -> int:
        return sum(self.shape)


def strip_unit() -> StripConfig:
    return StripConfig((1,), interval_unit(), ((IDENTITY_2,),))


def strip_project(config: StripConfig) -> IntervalConfig:
    return config.base


def strip_compose(outer: StripConfig, blocks: Sequence[Block]) -> StripConfig:
    """Glue one block of inner configurations into each strip of ``outer``.

    ``blocks[i].configs`` supplies one inner element per rectangle of strip i
    (so none for an empty strip), all lying over ``blocks[i].base``; the i-th
    strip then fans out into ``blocks[i].base.arity`` output strips.
    """
    r = outer.arity
    if len(blocks) != r:
        raise ValueError(f"arity {r} composition got {len(blocks)} blocks")
    for i, block in enumerate(blocks):
        if not isinstance(block.base, IntervalConfig):
            raise TypeError(f"block {i + 1}: base must be an IntervalConfig")
        if len(block.configs) != outer.shape[i]:
            raise ValueError(
                f"strip {i + 1} has {outer.shape[i]} rectangles, "
                f"got {len(block.configs)} inner configurations")
        for q in block.configs:
            if q.base != block.base:
                raise FiberProductError(
                    f"strip {i + 1}: inner configuration over {q.base.images()} "
                    f"does not share the block base {block.base.images()}")

    shape = output_shape(outer.shape,
                         tuple(b.base.arity for b in blocks),
                         tuple(tuple(q.shape for q in b.configs) for b in blocks))
    base = interval_compose(outer.base, tuple(b.base for b in blocks))
    rects = []
    for i in range(r):
        s_i = blocks[i].base.arity
        for j in range(s_i):
            row = []
            for a in range(outer.shape[i]):
                outer_rect = outer.rects[i][a]
                for inner_rect in blocks[i].configs[a].rects[j]:
                    row.append(outer_rect.compose(inner_rect))
            rects.append(tuple(row))
    return StripConfig(shape, base, tuple(rects))


def strip_violation(config: StripConfig) -> Optional[str]:
    """First defect of the configuration, or None if valid.

    Checked in order: the base configuration; per rectangle (i, j) the x
    alignment with strip i and the vertical image staying inside [0, 1]; the
    bottom-to-top order within each strip; disjointness of all rectangle
    pairs.  Indices in messages are 1-based.
    """
    base_bad = interval_violation(config.base)
    if base_bad is not None:
        return f"base: {base_bad}"
    for i, row in enumerate(config.rects):
        for j, rect in enumerate(row):
            if rect.x_part != config.base.embeddings[i]:
                return (f"rectangle ({i + 1}, {j + 1}) is not aligned with "
                        f"strip {i + 1}")
            lo, hi = rect.y_part.image()
            if lo < ZERO or hi > ONE:
                return (f"rectangle ({i + 1}, {j + 1}) vertical image "
                        f"[{lo}, {hi}] leaves [0, 1]")
        for j in range(len(row) - 1):
            if not row[j].y_part.image()[1] < row[j + 1].y_part.image()[0]:
                return (f"rectangle ({i + 1}, {j + 1}) does not sit strictly "
                        f"below rectangle ({i + 1}, {j + 2})")
    flat = [(i, j, rect) for i, row in enumerate(config.rects)
            for j, rect in enumerate(row)]
    for a in range(len(flat)):
        i1, j1, r1 = flat[a]
        (x1l, x1h), (y1l, y1h) = r1.image()
        for b in range(a + 1, len(flat)):
            i2, j2, r2 = flat[b]
            (x2l, x2h), (y2l, y2h) = r2.image()
            if x1l <= x2h and x2l <= x1h and y1l <= y2h and y2l <= y1h:
                return (f"rectangles ({i1 + 1}, {j1 + 1}) and "
                        f"({i2 + 1}, {j2 + 1}) intersect")
    return None


def random_strip_over(shape: Sequence, base: IntervalConfig, rng: random.Random,
                      denom: int = DEFAULT_DENOM) -> StripConfig:
    """A random valid configuration of the given shape over the given base."""
    shape = check_shape(shape)
    if len(shape) != base.arity:
        raise ValueError("shape length must match base arity")
    rows = []
    for i, n in enumerate(shape):
        if n == 0:
            rows.append(())
            continue
        cuts = sorted(rng.sample(range(denom + 1), 2 * n))
        row = tuple(
            AffineMap2(base.embeddings[i],
                       AffineMap1(Fraction(cuts[2 * k + 1] - cuts[2 * k], denom),
                                  Fraction(cuts[2 * k], denom)))
            for k in range(n))
        rows.append(row)
    return StripConfig(shape, base, tuple(rows))


def random_strip(shape: Sequence, seed) -> StripConfig:
    """Seeded convenience wrapper: base and rectangles from one seed."""
    rng = random.Random(seed)
    shape = check_shape(shape)
    return random_strip_over(shape, random_intervals(len(shape), rng), rng)


def strips_rel_operad(mutation: Optional[Fraction] = None) -> RelTwoOperadInstance:
    """The strips instance over the intervals operad.

    ``mutation`` shifts the vertical offset of the last rectangle of every
    composition result; used to confirm checker sensitivity.
    """
    compose = strip_compose
    if mutation is not None:
        off = Fraction(mutation)

        def compose(outer, blocks, _real=strip_compose):
            result = _real(outer, blocks)
            rows = list(result.rects)
            for i in range(len(rows) - 1, -1, -1):
                if rows[i]:
                    row = list(rows[i])
                    rect = row[-1]
                    row[-1] = AffineMap2(rect.x_part,
                                         AffineMap1(rect.y_part.a,
                                                    rect.y_part.c + off))
                    rows[i] = tuple(row)
                    break
            return StripConfig(result.shape, result.base, tuple(rows))

    return RelTwoOperadInstance(
        name="strips",
        base=intervals_operad(),
        unit=strip_unit,
        shape=lambda q: q.shape,
        project=strip_project,
        compose=compose,
        random_over=random_strip_over,
    )
