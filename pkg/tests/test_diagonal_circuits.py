"""Circuits on non-axis-parallel lines exercise the general-line paths of the
weight-class decomposition and the metric classification."""

import random
from fractions import Fraction

from tropsing import (
    circuit_of,
    classify_singularity,
    coefficient_matrix,
    cone_info,
    decompose_weightclass_lineality,
    flag_from_weight,
    gale_dual,
    lineality_basis,
    regular_subdivision,
)


def grid_heights(grid_config, table):
    return tuple(Fraction(table[p]) for p in grid_config.points)


def test_diagonal_decomposition_reconstructs_and_lands(grid_config):
    diag = [(0, 0), (1, 1), (2, 2)]
    z = circuit_of(grid_config, tuple(grid_config.index(p) for p in diag))
    assert z.kind == "C"
    base = grid_heights(
        grid_config,
        {(0, 0): 6, (1, 1): 6, (2, 2): 6, (1, 0): 5, (0, 1): 5,
         (2, 1): 3, (1, 2): 4, (2, 0): 1, (0, 2): 2},
    )
    xv, yv = lineality_basis(grid_config)
    B = gale_dual(coefficient_matrix(grid_config))
    rnd = random.Random(19)
    for _ in range(30):
        a = Fraction(rnd.randint(-9, 9), rnd.randint(1, 4))
        b = Fraction(rnd.randint(-9, 9), rnd.randint(1, 4))
        c = Fraction(rnd.randint(-9, 9), rnd.randint(1, 4))
        u = tuple(h + a * x + b * y + c for h, x, y in zip(base, xv, yv))
        w, cx, cy, c1 = decompose_weightclass_lineality(grid_config, u, z)
        assert tuple(wi + cx * x + cy * y + c1 for wi, x, y in zip(w, xv, yv)) == u
        assert flag_from_weight(B, w).is_flag_of_flats


def test_diagonal_balanced_edge(grid_config):
    u = grid_heights(
        grid_config,
        {(0, 0): 6, (1, 1): 6, (2, 2): 6, (1, 0): 5, (0, 1): 5,
         (2, 1): Fraction(9, 2), (1, 2): Fraction(9, 2), (2, 0): 1, (0, 2): 1},
    )
    info = cone_info(regular_subdivision(grid_config, u))
    assert info.codimension == 1 and not info.white_points
    rep = classify_singularity(grid_config, u)
    assert rep.kind == "TypeB1"
    assert rep.l1 == rep.l2 == 1


def test_diagonal_one_sided_pair(grid_config):
    u = grid_heights(
        grid_config,
        {(0, 0): 6, (1, 1): 6, (2, 2): 6, (1, 0): 5, (2, 1): 5,
         (0, 1): 4, (1, 2): Fraction(7, 2), (0, 2): 0, (2, 0): 0},
    )
    info = cone_info(regular_subdivision(grid_config, u))
    assert info.codimension == 2 and not info.white_points
    rep = classify_singularity(grid_config, u)
    assert rep.kind == "TypeB2Interior"
    assert (rep.l1, rep.l2) == (1, 2)
    assert rep.heights == {"lambda": 5, "mu": 6, "nu": 4}


def test_diagonal_equidistant_is_non_generic(grid_config):
    # apex tied with the gray pair puts both vertices at the same distance;
    # the cone is clean, so this is a proper-face degeneration
    u = grid_heights(
        grid_config,
        {(0, 0): 6, (1, 1): 6, (2, 2): 6, (1, 0): 5, (2, 1): 5,
         (0, 1): 5, (1, 2): Fraction(9, 2), (0, 2): 0, (2, 0): 0},
    )
    info = cone_info(regular_subdivision(grid_config, u))
    assert not info.white_points
    rep = classify_singularity(grid_config, u)
    assert rep.kind == "NonGeneric"
    assert rep.l1 == rep.l2 == 1


def test_diagonal_hidden_points_dominate_metric_verdict(grid_config):
    # distance-2 apex hides the distance-1 points: non-maximal regardless of
    # the (coincidentally equal) vertex distances
    u = grid_heights(
        grid_config,
        {(0, 0): 6, (1, 1): 6, (2, 2): 6, (1, 0): 5, (2, 1): 5,
         (0, 1): 1, (1, 2): 3, (0, 2): 4, (2, 0): 2},
    )
    info = cone_info(regular_subdivision(grid_config, u))
    assert info.white_points
    rep = classify_singularity(grid_config, u)
    assert rep.kind == "NonMaximal"


def test_diagonal_far_apex_leaves_white_points(grid_config):
    # apex on the second parallel line hides the distance-1 points: the
    # metric inequality holds but the subdivision has white points
    u = grid_heights(
        grid_config,
        {(0, 0): 6, (1, 1): 6, (2, 2): 6, (1, 0): 5, (2, 1): 5,
         (0, 2): 2, (0, 1): 1, (1, 2): 3, (2, 0): 0},
    )
    info = cone_info(regular_subdivision(grid_config, u))
    assert info.white_points
    rep = classify_singularity(grid_config, u)
    assert rep.kind == "NonMaximal"
    assert rep.l1 < rep.l2
