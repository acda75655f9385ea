import random
from fractions import Fraction

import pytest

from tropsing import (
    ConfigurationError,
    MarkedSubdivision,
    NotInUnionError,
    PointConfiguration,
    SubdivisionError,
    WrongCodimensionError,
    circuit_of,
    cone_info,
    decompose_weightclass_lineality,
    is_discriminant_cone,
    lineality_basis,
    regular_subdivision,
)
from tropsing.bergman import coefficient_matrix, flag_from_weight, gale_dual
from tropsing.lattice import polygon_area2
from tropsing.linalg import same_span
from tropsing.subdivisions import codim1_circuit


def cell_lookup(ms):
    return {cell.polygon: cell.marked for cell in ms.cells}


class TestRegularSubdivision:
    def test_intro_three_triangles(self, intro_config, intro_heights):
        ms = regular_subdivision(intro_config, intro_heights)
        cells = cell_lookup(ms)
        pts = intro_config.points
        # frozen expected subdivision, checked against the dual-curve picture
        assert set(cells) == {
            ((0, 0), (1, 2), (0, 1)),
            ((0, 0), (1, 0), (1, 2)),
            ((1, 0), (2, 0), (1, 2)),
        }
        mid = intro_config.index((1, 1))
        assert mid in cells[((0, 0), (1, 0), (1, 2))]
        assert mid in cells[((1, 0), (2, 0), (1, 2))]
        assert mid not in cells[((0, 0), (1, 2), (0, 1))]
        assert ms.white_points() == ()
        assert [pts[i] for i in ms.marked_union()] == list(pts)

    def test_single_cell_for_constant_heights(self):
        tri = PointConfiguration([(0, 0), (1, 0), (0, 1)])
        ms = regular_subdivision(tri, (0, 0, 0))
        assert len(ms.cells) == 1
        assert ms.cells[0].marked == (0, 1, 2)

    def test_invariant_under_all_ones_shift(self, intro_config, intro_heights):
        for c in (Fraction(3), Fraction(-7, 2), Fraction(1, 3)):
            shifted = tuple(x + c for x in intro_heights)
            assert regular_subdivision(intro_config, shifted) == regular_subdivision(
                intro_config, intro_heights
            )

    def test_output_satisfies_subdivision_invariants(self, grid_config):
        rnd = random.Random(2)
        for _ in range(25):
            u = [Fraction(rnd.randint(-12, 12), rnd.randint(1, 4)) for _ in grid_config.points]
            ms = regular_subdivision(grid_config, u)
            # re-validate through the checking constructor
            MarkedSubdivision(grid_config, [(c.polygon, c.marked) for c in ms.cells])

    def test_heights_length_checked(self, square_config):
        with pytest.raises(ConfigurationError):
            regular_subdivision(square_config, (0, 0, 0))


class TestMarkedSubdivisionValidation:
    def test_rejects_non_covering(self, intro_config):
        with pytest.raises(SubdivisionError):
            MarkedSubdivision(intro_config, [(((0, 0), (1, 0), (1, 2)), (0, 1, 5))])

    def test_rejects_marking_disagreement(self, intro_config):
        cells = [
            (((0, 0), (1, 0), (1, 2)), (0, 1, 4, 5)),
            (((1, 0), (2, 0), (1, 2)), (1, 2, 5)),  # misses (1,1) on the shared face
            (((0, 0), (1, 2), (0, 1)), (0, 3, 5)),
        ]
        with pytest.raises(SubdivisionError):
            MarkedSubdivision(intro_config, cells)


class TestConeInfo:
    def test_five_point_example(self, five_point_config):
        # triangle (0,0),(1,0),(0,1) plus triangle (1,0),(0,1),(1,2) marking (1,1)
        ms = MarkedSubdivision(
            five_point_config,
            [
                (((0, 0), (1, 0), (0, 1)), (0, 1, 2)),
                (((1, 0), (1, 2), (0, 1)), (1, 2, 3, 4)),
            ],
        )
        info = cone_info(ms)
        assert info.codimension == 1
        assert same_span(info.lt_basis, [(0, 1, 0, -2, 1)])
        assert info.white_points == ()

    def test_intro_codim_one(self, intro_config, intro_heights):
        info = cone_info(regular_subdivision(intro_config, intro_heights))
        assert info.codimension == 1
        assert info.lt_dim == 1

    def test_unimodular_triangulation_codim_zero(self, grid_config):
        rnd = random.Random(17)
        # scale-separated digits cannot satisfy any exact affine relation
        u = [
            Fraction(-(p[0] ** 2 + p[1] ** 2)) + rnd.randint(1, 9) * Fraction(1, 10 ** (i + 2))
            for i, p in enumerate(grid_config.points)
        ]
        ms = regular_subdivision(grid_config, u)
        info = cone_info(ms)
        assert info.codimension == 0
        assert info.white_points == ()
        assert all(abs(polygon_area2(c.polygon)) == 1 for c in ms.cells)

    def test_codim_zero_iff_vertex_marked_triangulation(self, grid_config, intro_config):
        # top-dimensional exactly when every cell is a triangle marked only
        # at its vertices (hidden points are allowed and stay white)
        rnd = random.Random(4)
        for cfg in (grid_config, intro_config):
            for _ in range(30):
                u = [Fraction(rnd.randint(-15, 15), rnd.randint(1, 3)) for _ in cfg.points]
                ms = regular_subdivision(cfg, u)
                info = cone_info(ms)
                triangulation = all(
                    len(c.polygon) == 3 and len(c.marked) == 3 for c in ms.cells
                )
                assert (info.codimension == 0) == triangulation


class TestLineality:
    def test_five_point_vectors(self, five_point_config):
        xv, yv = lineality_basis(five_point_config)
        assert xv == (0, 1, 0, 1, 1)
        assert yv == (0, 0, 1, 1, 2)

    def test_unit_triangle(self):
        tri = PointConfiguration([(0, 0), (1, 0), (0, 1)])
        assert lineality_basis(tri) == ((0, 1, 0), (0, 0, 1))

    def test_lineality_preserves_subdivision(self, intro_config, intro_heights):
        xv, yv = lineality_basis(intro_config)
        base = regular_subdivision(intro_config, intro_heights)
        for a, b in [(1, 0), (0, 1), (Fraction(-5, 3), Fraction(7, 2))]:
            u2 = tuple(h + a * x + b * y for h, x, y in zip(intro_heights, xv, yv))
            assert regular_subdivision(intro_config, u2) == base


class TestDecomposition:
    def test_already_in_weight_class(self, intro_config, intro_heights):
        z = circuit_of(intro_config, (1, 4, 5))
        u_wc, cx, cy, c1 = decompose_weightclass_lineality(intro_config, intro_heights, z)
        assert (u_wc, cx, cy, c1) == (intro_heights, 0, 0, 0)

    def test_square_plane_heights(self, square_config):
        z = circuit_of(square_config, (0, 1, 2, 3))
        u_wc, cx, cy, c1 = decompose_weightclass_lineality(square_config, (0, 1, 2, 3), z)
        assert u_wc == (0, 0, 0, 0)
        assert (cx, cy, c1) == (1, 2, 0)

    def test_reconstruction_and_membership(self, intro_config, intro_heights):
        z = circuit_of(intro_config, (1, 4, 5))
        B = gale_dual(coefficient_matrix(intro_config))
        xv, yv = lineality_basis(intro_config)
        rnd = random.Random(12)
        for _ in range(40):
            a = Fraction(rnd.randint(-9, 9), rnd.randint(1, 5))
            b = Fraction(rnd.randint(-9, 9), rnd.randint(1, 5))
            c = Fraction(rnd.randint(-9, 9), rnd.randint(1, 5))
            u = tuple(
                h + a * x + b * y + c for h, x, y in zip(intro_heights, xv, yv)
            )
            u_wc, cx, cy, c1 = decompose_weightclass_lineality(intro_config, u, z)
            rebuilt = tuple(
                w + cx * x + cy * y + c1 for w, x, y in zip(u_wc, xv, yv)
            )
            assert rebuilt == u
            assert flag_from_weight(B, u_wc).is_flag_of_flats

    def test_requires_visible_circuit(self, intro_config):
        z = circuit_of(intro_config, (1, 4, 5))
        # heights hiding the x=1 line entirely
        u = (0, -5, 0, 0, -5, -5)
        with pytest.raises(ConfigurationError):
            decompose_weightclass_lineality(intro_config, u, z)

    def test_excluded_boundary_cone(self):
        cfg = PointConfiguration([(0, 0), (0, 1), (0, 2), (1, 1)])
        z = circuit_of(cfg, tuple(cfg.index(p) for p in [(0, 0), (0, 1), (0, 2)]))
        u = [0 if p[0] == 0 else -1 for p in cfg.points]
        with pytest.raises(NotInUnionError):
            decompose_weightclass_lineality(cfg, u, z)


class TestDiscriminantCone:
    def test_requires_codim_one(self, grid_config):
        u = [-(p[0] ** 2 + p[1] ** 2) for p in grid_config.points]
        with pytest.raises(WrongCodimensionError):
            is_discriminant_cone(regular_subdivision(grid_config, u))

    def test_quadrangle_circuit_qualifies(self, intro_config):
        u = [2 if p in ((0, 0), (1, 0), (0, 1), (1, 1)) else 0 for p in intro_config.points]
        ms = regular_subdivision(intro_config, u)
        assert cone_info(ms).codimension == 1
        assert codim1_circuit(ms).kind == "B"
        assert is_discriminant_cone(ms)

    def test_interior_collinear_circuit_qualifies(self, grid_config):
        u = [4 if p[0] == 1 else (1 if p in ((0, 1), (2, 1)) else 0) for p in grid_config.points]
        ms = regular_subdivision(grid_config, u)
        assert cone_info(ms).codimension == 1
        assert codim1_circuit(ms).kind == "C"
        assert is_discriminant_cone(ms)

    def test_boundary_circuit_with_minimal_apex_fails(self):
        cfg = PointConfiguration([(0, 0), (0, 1), (0, 2), (1, 1)])
        u = [0 if p[0] == 0 else -1 for p in cfg.points]
        ms = regular_subdivision(cfg, u)
        assert cone_info(ms).codimension == 1
        assert not is_discriminant_cone(ms)

    def test_matches_bergman_membership_of_decomposition(self, intro_config, grid_config):
        """On codim-1 cones, discriminant membership equals tropical membership."""
        rnd = random.Random(21)
        tested = 0
        for cfg in (intro_config, grid_config):
            A = coefficient_matrix(cfg)
            B = gale_dual(A)
            for _ in range(120):
                u = [Fraction(rnd.randint(-10, 10), rnd.randint(1, 3)) for _ in cfg.points]
                ms = regular_subdivision(cfg, u)
                info = cone_info(ms)
                if info.codimension != 1:
                    continue
                z = codim1_circuit(ms)
                try:
                    u_wc, *_ = decompose_weightclass_lineality(cfg, tuple(u), z)
                    member = flag_from_weight(B, u_wc).is_flag_of_flats
                except NotInUnionError:
                    member = False
                assert is_discriminant_cone(ms) == member
                tested += 1
        assert tested >= 10
