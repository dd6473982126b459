"""Shared test utilities: strategies, independent oracles, chain builders."""
from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from strips_operad import act_on_loops  # noqa: F401  (re-exported for tests)
from strips_operad.sheets import (PointedMap, random_loop,
                                  random_sheet_element)
from strips_operad.strips import StripConfig

# --- hypothesis strategies --------------------------------------------------

rationals = st.fractions(min_value=Fraction(-4), max_value=Fraction(4),
                         max_denominator=64)
positive_scales = st.fractions(min_value=Fraction(1, 32), max_value=Fraction(4),
                               max_denominator=32)
unit_rationals = st.fractions(min_value=Fraction(0), max_value=Fraction(1),
                              max_denominator=64)


# --- independent associahedron oracle ----------------------------------------

def polygon_dissection_counts(r: int) -> dict:
    """Faces of the (r-2)-dimensional associahedron, counted independently.

    Faces correspond to sets of pairwise non-crossing diagonals of a convex
    (r+1)-gon; a set of size s is a face of dimension r - 2 - s.  Counted by
    plain backtracking over the diagonal list, with no tree structures
    involved.  Returns {dimension: count}.
    """
    n = r + 1
    diagonals = [(i, j)
                 for i in range(1, n + 1)
                 for j in range(i + 2, n + 1)
                 if not (i == 1 and j == n)]

    def crosses(d1, d2):
        (a, b), (c, d) = d1, d2
        return (a < c < b < d) or (c < a < d < b)

    counts: dict = {}

    def extend(start: int, chosen: list) -> None:
        dim = r - 2 - len(chosen)
        counts[dim] = counts.get(dim, 0) + 1
        for k in range(start, len(diagonals)):
            d = diagonals[k]
            if all(not crosses(d, c) for c in chosen):
                chosen.append(d)
                extend(k + 1, chosen)
                chosen.pop()

    extend(0, [])
    return counts


def catalan(k: int) -> int:
    import math
    return math.comb(2 * k, k) // (k + 1)


# --- chain inputs for sheet actions ------------------------------------------

def chain_inputs(f: PointedMap, config: StripConfig, rng: random.Random):
    """Valid inputs for acting with ``config``: a chain per strip, a loop for
    each empty strip."""
    inputs = []
    for n in config.shape:
        if n == 0:
            inputs.append(random_loop(rng, f.dim_in, f.dom_base))
            continue
        chain = [random_sheet_element(f, rng)]
        for _ in range(n - 1):
            chain.append(random_sheet_element(f, rng, source=chain[-1].top))
        inputs.append(tuple(chain))
    return tuple(inputs)
