import random
from fractions import Fraction

import pytest

from tropsing import (
    InsufficientBoundaryPointsError,
    PointConfiguration,
    classify_non_torus,
    classify_singularity,
    coefficient_matrix_non_torus,
    gale_dual,
    lineality_basis,
)
from tropsing.linalg import rank
from tropsing.singular import (
    FAT_END,
    NON_GENERIC,
    NON_MAXIMAL,
    NOT_SINGULAR,
    TYPE_A3,
    TYPE_A4,
    TYPE_B1,
    TYPE_B2_BOUNDARY,
    TYPE_B2_INTERIOR,
)


GOLDEN_A_NON_TORUS = [
    [1, 1, 1, 1, 0, 0, 0, 0, 0],
    [0, 1, 2, 3, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 1, 1, 1, 0],
]

GOLDEN_B_NON_TORUS = [
    [1, -2, 0, 1, 0, 0, 0, 0, 0],
    [2, -3, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, -1, 0, 0, 1, 0, 0, 0],
    [0, 0, -1, 0, 0, 0, 1, 0, 0],
    [0, 0, -1, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1],
]


@pytest.fixture
def boundary_config():
    # four points on {y=0}, four on {y=1}, one above
    return PointConfiguration.from_polygon([(0, 0), (3, 0), (3, 1), (0, 2)])


def heights_by_point(config, table, default=0):
    return tuple(Fraction(table.get(p, default)) for p in config.points)


class TestClassifyTorus:
    def test_intro_is_type_b1(self, intro_config, intro_heights):
        rep = classify_singularity(intro_config, intro_heights)
        assert rep.kind == TYPE_B1
        assert rep.l1 == rep.l2 == 1
        assert set(rep.edge) == {(-1, 0), (1, 0)}
        assert rep.edge_weight == 2
        assert set(rep.circuit.indices) == {1, 4, 5}
        assert rep.heights["mu"] - rep.heights["lambda"] == rep.l1

    def test_interior_point_triangle_is_a3(self):
        cfg = PointConfiguration([(0, 0), (2, 1), (1, 2), (1, 1)])
        rep = classify_singularity(cfg, (0, 0, 0, 0))
        assert rep.kind == TYPE_A3
        assert rep.vertex == (0, 0)
        assert rep.multiplicity == 3
        assert rep.valence == 3

    def test_unit_square_is_a4(self, square_config):
        rep = classify_singularity(square_config, (0, 0, 0, 0))
        assert rep.kind == TYPE_A4
        assert rep.multiplicity == 2
        assert rep.valence == 4

    def test_b2_interior(self):
        cfg = PointConfiguration.from_polygon([(0, 1), (1, 0), (2, 0), (2, 2), (1, 2)])
        u = heights_by_point(
            cfg,
            {(1, 0): 4, (1, 1): 4, (1, 2): 4, (0, 1): 0, (2, 0): 1, (2, 1): 1, (2, 2): -2},
        )
        rep = classify_singularity(cfg, u)
        assert rep.kind == TYPE_B2_INTERIOR
        assert rep.l1 < rep.l2  # 4-valent vertex strictly closer
        assert rep.heights == {"lambda": 1, "mu": 4, "nu": 0}
        assert rep.l1 == rep.heights["mu"] - rep.heights["lambda"]
        assert rep.l2 == rep.heights["mu"] - rep.heights["nu"]

    def test_b2_equidistant_is_non_generic(self):
        cfg = PointConfiguration.from_polygon([(0, 1), (1, 0), (2, 0), (2, 2), (1, 2)])
        u = heights_by_point(
            cfg,
            {(1, 0): 4, (1, 1): 4, (1, 2): 4, (0, 1): 1, (2, 0): 1, (2, 1): 1, (2, 2): -2},
        )
        rep = classify_singularity(cfg, u)
        assert rep.kind == NON_GENERIC

    def test_b2_reversed_distances_not_singular(self):
        cfg = PointConfiguration.from_polygon([(0, 1), (1, 0), (2, 0), (2, 2), (1, 2)])
        u = heights_by_point(
            cfg,
            {(1, 0): 4, (1, 1): 4, (1, 2): 4, (0, 1): 2, (2, 0): 1, (2, 1): 1, (2, 2): -2},
        )
        rep = classify_singularity(cfg, u)
        assert rep.kind == NOT_SINGULAR

    def test_b2_boundary(self):
        cfg = PointConfiguration.from_polygon([(0, 0), (0, 2), (1, 2), (1, 0)])
        u = heights_by_point(
            cfg, {(0, 0): 4, (0, 1): 4, (0, 2): 4, (1, 0): 1, (1, 1): 1, (1, 2): -1}
        )
        rep = classify_singularity(cfg, u)
        assert rep.kind == TYPE_B2_BOUNDARY
        assert rep.ray_weight == 2
        assert rep.l1 == rep.heights["mu"] - rep.heights["lambda"] == 3

    def test_unequal_b1_distances_not_singular(self, intro_config):
        # breaking the tie of the two apex heights moves the origin off-center
        u = (-1, 0, Fraction(-3, 2), -3, 0, 0)
        rep = classify_singularity(intro_config, u)
        assert rep.kind == NOT_SINGULAR
        assert rep.l1 != rep.l2

    def test_white_point_non_maximal(self):
        cfg = PointConfiguration([(0, 0), (1, 0), (2, 0), (0, 1)])
        rep = classify_singularity(cfg, (0, -1, 0, 0))
        assert rep.kind == NON_MAXIMAL

    def test_hidden_gray_point_is_non_maximal_not_unsingular(self):
        # a member of the tropicalized family whose gray point is hidden: the
        # weight-2 edge shows unequal distances, but the cone merely fails
        # maximality (white points), so the report must not deny singularity
        from tropsing import (
            bergman_member_circuit_oracle,
            coefficient_matrix,
        )

        cfg = PointConfiguration.from_polygon([(-1, 0), (2, 0), (2, 2), (-1, 2)])
        table = {}
        for p in cfg.points:
            if p[0] == 1:
                table[p] = 10          # collinear circuit on x = 1
            elif p in ((0, 1), (2, 1)):
                table[p] = 5           # tied gray pair
            elif p == (-1, 1):
                table[p] = 4           # binds the left cell, hiding (0, 1)
            else:
                table[p] = {(-1, 0): 1, (0, 0): 2, (2, 0): 0,
                            (-1, 2): 1, (0, 2): 2, (2, 2): 0}[p]
        u = tuple(Fraction(table[p]) for p in cfg.points)
        assert bergman_member_circuit_oracle(coefficient_matrix(cfg), u)
        from tropsing import cone_info, regular_subdivision

        info = cone_info(regular_subdivision(cfg, u))
        assert info.white_points  # the hidden column, including the gray point
        rep = classify_singularity(cfg, u)
        assert rep.kind == NON_MAXIMAL
        assert rep.l1 != rep.l2

    def test_smooth_vertex_not_singular(self):
        tri = PointConfiguration([(0, 0), (1, 0), (0, 1)])
        assert classify_singularity(tri, (0, 0, 0)).kind == NOT_SINGULAR

    def test_origin_off_curve(self, square_config):
        assert classify_singularity(square_config, (10, 0, 0, 0)).kind == NOT_SINGULAR

    def test_weight_one_edge_interior(self):
        # origin inside a weight-1 edge: smooth point
        cfg = PointConfiguration.from_polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
        u = (0, 0, 0, 1)
        rep = classify_singularity(cfg, u)
        assert rep.kind in (NOT_SINGULAR, NON_GENERIC)

    def test_invariance_under_all_ones(self, intro_config, intro_heights):
        for c in (Fraction(5), Fraction(-2, 3)):
            u = tuple(h + c for h in intro_heights)
            rep = classify_singularity(intro_config, u)
            assert rep.kind == TYPE_B1 and rep.l1 == rep.l2 == 1

    def test_equivariance_under_lineality(self, intro_config, intro_heights):
        xv, yv = lineality_basis(intro_config)
        # the picture translates by (-1/2, 0): the origin lands off-center on
        # the weight-2 edge and the metric condition breaks
        u = tuple(h + Fraction(1, 2) * x for h, x in zip(intro_heights, xv))
        rep = classify_singularity(intro_config, u)
        assert rep.kind == NOT_SINGULAR
        assert rep.l1 != rep.l2
        # translating by (0, -3/2) moves the horizontal edge off the origin
        u = tuple(h + Fraction(3, 2) * y for h, y in zip(intro_heights, yv))
        rep = classify_singularity(intro_config, u)
        assert rep.kind == NOT_SINGULAR
        assert rep.note == "origin not on the curve"

    def test_b_kinds_edge_passes_origin(self, intro_config, intro_heights):
        rep = classify_singularity(intro_config, intro_heights)
        (x1, y1), (x2, y2) = rep.edge
        # origin strictly between the endpoints on the segment
        assert x1 * x2 < 0 or y1 * y2 < 0


class TestNonTorus:
    def test_golden_matrices(self, boundary_config):
        A = coefficient_matrix_non_torus(boundary_config)
        assert [[int(x) for x in row] for row in A.rows] == GOLDEN_A_NON_TORUS
        assert rank(list(A.rows)) == 3
        B = gale_dual(A, pivots=(0, 1, 4))
        assert [[int(x) for x in row] for row in B.pivots_first()] == GOLDEN_B_NON_TORUS
        assert len(B.matrix) == 6

    def test_block_structure_required(self, square_config):
        with pytest.raises(InsufficientBoundaryPointsError):
            coefficient_matrix_non_torus(square_config)

    def test_fat_end_detected(self, boundary_config):
        u = heights_by_point(
            boundary_config,
            {
                (0, 0): 0, (1, 0): 0, (2, 0): 0, (3, 0): -2,
                (0, 1): -1, (1, 1): -1, (2, 1): -3, (3, 1): -3,
                (0, 2): -5,
            },
        )
        rep = classify_non_torus(boundary_config, u)
        assert rep.kind == FAT_END
        assert rep.ray_weight >= 2
        assert rep.ray_direction == (0, -1)
        assert rep.ray_vertex[0] == 0
        assert rep.valence == 4 and rep.maximal_dimensional

    def test_three_valent_high_multiplicity_fat_end(self, boundary_config):
        # bottom tie visible, but both y=1 maxima hidden under a steep roof
        u = heights_by_point(
            boundary_config,
            {
                (0, 0): 0, (1, 0): 0, (2, 0): 0, (3, 0): -9,
                (0, 1): -6, (1, 1): -6, (2, 1): -9, (3, 1): -9,
                (0, 2): -1,
            },
        )
        rep = classify_non_torus(boundary_config, u)
        assert rep.kind == FAT_END
        assert rep.valence == 3
        assert rep.multiplicity >= 4
        assert not rep.maximal_dimensional

    def test_unique_bottom_max_not_singular(self, boundary_config):
        u = heights_by_point(
            boundary_config,
            {(0, 0): 1, (1, 0): 0, (2, 0): 0, (3, 0): -2,
             (0, 1): -1, (1, 1): -1, (2, 1): -3, (3, 1): -3, (0, 2): -5},
        )
        rep = classify_non_torus(boundary_config, u)
        assert rep.kind == NOT_SINGULAR

    def test_unique_second_row_max_not_singular(self, boundary_config):
        u = heights_by_point(
            boundary_config,
            {(0, 0): 0, (1, 0): 0, (2, 0): 0, (3, 0): -2,
             (0, 1): -1, (1, 1): -2, (2, 1): -3, (3, 1): -3, (0, 2): -5},
        )
        rep = classify_non_torus(boundary_config, u)
        assert rep.kind == NOT_SINGULAR


def sample_heights_from_blocks(config, blocks, rnd):
    """Strictly increasing random heights per block, exact rationals."""
    u = [None] * config.size
    h = Fraction(0)
    for block in blocks:
        h += Fraction(rnd.randint(1, 9), rnd.randint(1, 4))
        for p in block:
            u[config.index(p)] = h
    assert all(x is not None for x in u)
    return tuple(u)


class TestGenericSamples:
    def test_case_a_vertex_at_origin(self, grid_config):
        rnd = random.Random(100)
        pts = grid_config.points
        quad = [(0, 1), (1, 0), (1, 2), (2, 1)]  # unimodular-circuit quadrangle
        rest = [p for p in pts if p not in quad]
        for _ in range(40):
            order = rest[:]
            rnd.shuffle(order)
            blocks = [[p] for p in order] + [quad]
            u = sample_heights_from_blocks(grid_config, blocks, rnd)
            rep = classify_singularity(grid_config, u)
            assert rep.vertex == (0, 0)
            assert rep.kind in (TYPE_A4, NON_MAXIMAL)
            if rep.kind == TYPE_A4:
                assert rep.multiplicity == 2 and rep.valence == 4

    def test_b1_samples_have_equal_distances(self, grid_config):
        rnd = random.Random(101)
        circuit = [(1, 0), (1, 1), (1, 2)]
        pair = [(0, 1), (2, 1)]
        corners = [(0, 0), (2, 0), (0, 2), (2, 2)]
        for _ in range(40):
            order = corners[:]
            rnd.shuffle(order)
            blocks = [[p] for p in order] + [pair, circuit]
            u = sample_heights_from_blocks(grid_config, blocks, rnd)
            rep = classify_singularity(grid_config, u)
            assert rep.kind == TYPE_B1
            assert rep.l1 == rep.l2
