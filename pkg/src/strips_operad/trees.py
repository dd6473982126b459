"""Planar rooted trees without unary vertices.

Trees with r leaves index the faces of the (r-2)-dimensional associahedron:
binary trees are the vertices, the r-leaf star the top face, and contracting
internal edges moves up the face order.  Grafting trees onto leaves is the
operad composition whose laws the framework checkers exercise.
"""
from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .framework import OperadInstance


@dataclass(frozen=True)
class PlanarTree:
    """A leaf when ``children`` is empty; internal vertices have >= 2 children."""

    children: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) == 1:
            raise ValueError("unary vertices are not allowed")
        for c in self.children:
            if not isinstance(c, PlanarTree):
                raise TypeError(f"expected PlanarTree, got {type(c).__name__}")

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def __repr__(self):
        return f"PlanarTree.parse({tree_to_brackets(self)!r})"


LEAF = PlanarTree()


def corolla(r: int) -> PlanarTree:
    """The r-leaf tree with a single internal vertex (r >= 2)."""
    if r < 2:
        raise ValueError("a corolla needs at least two leaves")
    return PlanarTree((LEAF,) * r)


def tree_leaves(t: PlanarTree) -> int:
    if t.is_leaf:
        return 1
    return sum(tree_leaves(c) for c in t.children)


def tree_dim(t: PlanarTree) -> int:
    """Dimension of the face the tree labels: sum over internal vertices of
    (number of children - 2).  Binary trees have dimension 0."""
    if t.is_leaf:
        return 0
    return len(t.children) - 2 + sum(tree_dim(c) for c in t.children)


def tree_to_brackets(t: PlanarTree) -> str:
    if t.is_leaf:
        return "*"
    return "(" + "".join(tree_to_brackets(c) for c in t.children) + ")"


def tree_from_brackets(s: str) -> PlanarTree:
    pos = 0

    def parse() -> PlanarTree:
        nonlocal pos
        if pos >= len(s):
            raise ValueError("unexpected end of tree expression")
        ch = s[pos]
        if ch == "*":
            pos += 1
            return LEAF
        if ch != "(":
            raise ValueError(f"unexpected character {ch!r} at {pos}")
        pos += 1
        kids = []
        while pos < len(s) and s[pos] != ")":
            kids.append(parse())
        if pos >= len(s):
            raise ValueError("unbalanced parentheses")
        pos += 1
        return PlanarTree(tuple(kids))

    t = parse()
    if pos != len(s):
        raise ValueError(f"trailing characters at {pos}")
    return t


PlanarTree.parse = staticmethod(tree_from_brackets)


def graft(outer: PlanarTree, inners: Sequence[PlanarTree]) -> PlanarTree:
    """Replace the leaves of ``outer``, left to right, by the given trees."""
    if len(inners) != tree_leaves(outer):
        raise ValueError(
            f"tree with {tree_leaves(outer)} leaves grafted with {len(inners)} trees")
    it = iter(inners)

    def go(t: PlanarTree) -> PlanarTree:
        if t.is_leaf:
            return next(it)
        return PlanarTree(tuple(go(c) for c in t.children))

    return go(outer)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def _compositions(n: int, parts: int) -> Iterator[tuple]:
    """Ordered tuples of ``parts`` positive integers summing to n."""
    if parts == 1:
        yield (n,)
        return
    for first in range(1, n - parts + 2):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


@functools.lru_cache(maxsize=None)
def enumerate_trees(r: int) -> tuple:
    """All planar trees with r leaves, in a fixed deterministic order."""
    if r < 1:
        raise ValueError("trees have at least one leaf")
    if r == 1:
        return (LEAF,)
    out = []
    for parts in range(2, r + 1):
        for comp in _compositions(r, parts):
            pools = [enumerate_trees(k) for k in comp]
            idx = [0] * parts
            while True:
                out.append(PlanarTree(tuple(pool[i] for pool, i in zip(pools, idx))))
                for pos in range(parts - 1, -1, -1):
                    idx[pos] += 1
                    if idx[pos] < len(pools[pos]):
                        break
                    idx[pos] = 0
                else:
                    break
    return tuple(out)


def f_vector(r: int) -> tuple:
    """Face counts of the (r-2)-dimensional associahedron by dimension."""
    counts = [0] * max(r - 1, 1)
    for t in enumerate_trees(r):
        counts[tree_dim(t)] += 1
    return tuple(counts)


def random_tree(r: int, rng: random.Random) -> PlanarTree:
    if r < 1:
        raise ValueError("trees have at least one leaf")
    if r == 1:
        return LEAF
    parts = rng.randint(2, r)
    cuts = sorted(rng.sample(range(1, r), parts - 1))
    comp = [b - a for a, b in zip((0, *cuts), (*cuts, r))]
    return PlanarTree(tuple(random_tree(k, rng) for k in comp))


# ---------------------------------------------------------------------------
# the contraction order
# ---------------------------------------------------------------------------

def one_step_contractions(t: PlanarTree) -> Iterator[PlanarTree]:
    """Trees obtained by contracting exactly one internal edge of t."""
    if t.is_leaf:
        return
    for k, child in enumerate(t.children):
        if not child.is_leaf:
            merged = t.children[:k] + child.children + t.children[k + 1:]
            yield PlanarTree(merged)
        for sub in one_step_contractions(child):
            yield PlanarTree(t.children[:k] + (sub,) + t.children[k + 1:])


def _cut(t: PlanarTree, sizes: Sequence[int]) -> Optional[list]:
    """Split t into consecutive subtrees with the given leaf counts by cutting
    edges below some top cluster containing the root; None if impossible."""
    if len(sizes) == 1:
        return [t]
    if t.is_leaf:
        return None
    pieces = []
    pos = 0
    for child in t.children:
        need = tree_leaves(child)
        group = []
        while pos < len(sizes) and sum(group) < need:
            group.append(sizes[pos])
            pos += 1
        if sum(group) != need:
            return None
        if len(group) == 1:
            pieces.append(child)
        else:
            sub = _cut(child, group)
            if sub is None:
                return None
            pieces.extend(sub)
    return pieces


def contracts_to(t1: PlanarTree, t2: PlanarTree) -> bool:
    """Whether t1 can be turned into t2 by contracting internal edges.

    This is the face order: t1 <= t2 in the associahedron iff t1 contracts
    to t2.  Every tree contracts to itself.
    """
    if tree_leaves(t1) != tree_leaves(t2):
        raise ValueError("trees must have the same number of leaves")
    if t2.is_leaf:
        return t1.is_leaf
    if t1 == t2:
        return True
    if t1.is_leaf:
        return False
    pieces = _cut(t1, [tree_leaves(c) for c in t2.children])
    if pieces is None:
        return False
    return all(contracts_to(p, c) for p, c in zip(pieces, t2.children))


def trees_operad(mutation: bool = False) -> OperadInstance:
    """The grafting operad instance.

    With ``mutation=True`` every composition result is contracted once when
    it has an internal edge, which breaks the laws; used to confirm checker
    sensitivity.
    """
    compose = graft
    if mutation:
        def compose(outer, inners, _real=graft):
            result = _real(outer, inners)
            return next(one_step_contractions(result), result)

    return OperadInstance(
        name="trees",
        unit=lambda: LEAF,
        arity=tree_leaves,
        compose=compose,
        random_element=random_tree,
    )
