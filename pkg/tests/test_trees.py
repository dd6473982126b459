"""Planar trees, grafting, contraction order, and associahedron face counts."""
import random

import pytest

from strips_operad.framework import run_operad_check, run_operad_exhaustive
from strips_operad.trees import (LEAF, PlanarTree, contracts_to, corolla,
                                 enumerate_trees, f_vector, graft,
                                 one_step_contractions, random_tree,
                                 tree_dim, tree_from_brackets, tree_leaves,
                                 tree_to_brackets, trees_operad)

from helpers import catalan, polygon_dissection_counts


# --- construction -------------------------------------------------------------

def test_unary_vertices_are_forbidden():
    with pytest.raises(ValueError):
        PlanarTree((LEAF,))
    with pytest.raises(ValueError):
        corolla(1)


def test_corolla_dimension():
    for r in range(2, 8):
        assert tree_leaves(corolla(r)) == r
        assert tree_dim(corolla(r)) == r - 2


def test_binary_trees_have_dimension_zero():
    t = graft(corolla(2), (corolla(2), LEAF))
    assert tree_dim(t) == 0
    assert tree_leaves(t) == 3


# --- brackets -----------------------------------------------------------------

def test_brackets_round_trip():
    t = graft(corolla(2), (corolla(2), corolla(3)))
    s = tree_to_brackets(t)
    assert s == "((**)(***))"
    assert tree_from_brackets(s) == t
    assert PlanarTree.parse(s) == t
    assert tree_to_brackets(LEAF) == "*"


def test_brackets_round_trip_random():
    rng = random.Random("brackets")
    for _ in range(100):
        t = random_tree(rng.randint(2, 7), rng)
        assert tree_from_brackets(tree_to_brackets(t)) == t


def test_brackets_rejects_garbage():
    for bad in ("", "(", "(*", "(*)", "**", "(*)(*)"):
        with pytest.raises(ValueError):
            tree_from_brackets(bad)


# --- grafting -----------------------------------------------------------------

def test_graft_counts_leaves():
    out = graft(corolla(3), (corolla(2), LEAF, corolla(4)))
    assert tree_leaves(out) == 2 + 1 + 4
    assert tree_to_brackets(out) == "((**)*(****))"


def test_graft_leaf_is_identity():
    t = random_tree(5, random.Random(3))
    assert graft(LEAF, (t,)) == t
    assert graft(t, (LEAF,) * 5) == t


def test_graft_arity_mismatch():
    with pytest.raises(ValueError):
        graft(corolla(2), (LEAF,))


# --- enumeration vs independent oracle ------------------------------------------

def test_face_totals_match_polygon_dissections():
    for r in range(2, 9):
        oracle = polygon_dissection_counts(r)
        assert len(enumerate_trees(r)) == sum(oracle.values())


def test_f_vector_matches_polygon_dissections():
    for r in range(2, 8):
        oracle = polygon_dissection_counts(r)
        fv = f_vector(r)
        assert len(fv) == r - 1
        for dim, count in enumerate(fv):
            assert count == oracle.get(dim, 0), (r, dim)


def test_vertex_counts_are_catalan():
    for r in range(2, 8):
        assert f_vector(r)[0] == catalan(r - 1)


def test_total_face_counts_frozen():
    assert [len(enumerate_trees(r)) for r in range(2, 9)] == \
        [1, 3, 11, 45, 197, 903, 4279]


def test_enumerate_trees_has_no_duplicates():
    for r in range(2, 7):
        ts = enumerate_trees(r)
        assert len(set(ts)) == len(ts)
        assert all(tree_leaves(t) == r for t in ts)


def test_pentagon_f_vector():
    assert f_vector(4) == (5, 5, 1)


# --- contraction order -----------------------------------------------------------

def test_one_step_contraction_raises_dimension():
    rng = random.Random("contract")
    for _ in range(50):
        t = random_tree(rng.randint(3, 6), rng)
        for c in one_step_contractions(t):
            assert tree_dim(c) == tree_dim(t) + 1
            assert tree_leaves(c) == tree_leaves(t)


def test_contracts_to_is_reflexive():
    for r in range(2, 6):
        for t in enumerate_trees(r):
            assert contracts_to(t, t)


def test_everything_contracts_to_the_corolla():
    for r in range(2, 6):
        for t in enumerate_trees(r):
            assert contracts_to(t, corolla(r))


def test_corolla_contracts_only_to_itself():
    for r in range(2, 6):
        for t in enumerate_trees(r):
            if t != corolla(r):
                assert not contracts_to(corolla(r), t)


def test_contracts_to_is_antisymmetric():
    for r in range(2, 6):
        ts = enumerate_trees(r)
        for t1 in ts:
            for t2 in ts:
                if t1 != t2:
                    assert not (contracts_to(t1, t2) and contracts_to(t2, t1))


def test_contracts_to_agrees_with_contraction_chains():
    """t1 <= t2 exactly when some chain of single contractions joins them."""
    for r in range(2, 6):
        ts = enumerate_trees(r)
        reachable = {t: {t} for t in ts}
        changed = True
        while changed:
            changed = False
            for t in ts:
                for goal in list(reachable[t]):
                    for c in one_step_contractions(goal):
                        if c not in reachable[t]:
                            reachable[t].add(c)
                            changed = True
        for t1 in ts:
            for t2 in ts:
                assert contracts_to(t1, t2) == (t2 in reachable[t1]), (t1, t2)


def test_grafting_is_monotone_for_contraction():
    rng = random.Random("monotone")
    for _ in range(40):
        r = rng.randint(2, 4)
        outer = random_tree(r, rng)
        inners_fine = [random_tree(rng.randint(1, 4), rng) for _ in range(r)]
        inners_coarse = []
        for t in inners_fine:
            c = t
            for step in one_step_contractions(c):
                c = step
                break
            inners_coarse.append(c)
        fine = graft(outer, inners_fine)
        coarse = graft(outer, inners_coarse)
        assert contracts_to(fine, coarse)


# --- operad laws ------------------------------------------------------------------

def test_seeded_law_check():
    report = run_operad_check(trees_operad(), seed=8, cases=200, max_arity=6)
    assert report.ok


def test_exhaustive_small_plans():
    report = run_operad_exhaustive(trees_operad(), max_arity=2,
                                   samples_per_plan=2)
    assert report.ok
    assert report.cases_run == 84


def test_mutated_trees_fail():
    report = run_operad_check(trees_operad(mutation=True), seed=8, cases=60,
                              max_arity=6)
    assert not report.ok


def test_random_tree_determinism():
    a = random_tree(6, random.Random(4))
    b = random_tree(6, random.Random(4))
    assert a == b
    assert tree_leaves(a) == 6
