"""Unit tests for the face-poset models and complex_core."""

import pytest
import sys
import os

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '../../src'))

from errors import StructuralError
from models.complexes import Cell, FVector, RegularCellComplex, SimplicialComplex
from services.catalog import pgon
from services.complex_core import (
    euler_characteristic,
    f_vector,
    first_non_simple_cell,
    is_simple,
    validate_boundary_pattern,
)


class TestRegularCellComplex:
    """Construction checks on regular cell complexes."""

    def test_vertex_with_boundary_rejected(self):
        """A vertex must have an empty boundary."""
        with pytest.raises(StructuralError):
            Cell("v", 0, {"w"})

    def test_edge_without_boundary_rejected(self):
        """A positive-dimensional cell needs a boundary."""
        with pytest.raises(StructuralError):
            Cell("e", 1)

    def test_duplicate_id(self):
        """Two cells with the same id are rejected."""
        with pytest.raises(StructuralError, match="duplicate"):
            RegularCellComplex((Cell("v", 0), Cell("v", 0)))

    def test_dangling_boundary(self):
        """A boundary id must name a cell of the complex."""
        with pytest.raises(StructuralError, match="missing"):
            RegularCellComplex((Cell("v", 0), Cell("e", 1, {"v", "w"})))

    def test_boundary_dimension(self):
        """Boundary cells have dimension one less."""
        cells = (Cell("v", 0), Cell("w", 0), Cell("e", 1, {"v", "w"}), Cell("F", 2, {"v", "e"}))
        with pytest.raises(StructuralError):
            RegularCellComplex(cells)

    def test_irregular_loop(self):
        """An edge with a single endpoint fails the closed-cell surrogate."""
        with pytest.raises(StructuralError, match="surrogate"):
            RegularCellComplex((Cell("v", 0), Cell("loop", 1, {"v"})))

    def test_regularity_can_be_skipped(self):
        """check_regularity=False accepts the loop."""
        complex_ = RegularCellComplex((Cell("v", 0), Cell("loop", 1, {"v"})), check_regularity=False)
        assert complex_.top_dim == 1

    def test_cells_sorted_by_dimension(self, square):
        """Cells are stored by (dim, id)."""
        dims = [cell.dim for cell in square.cells]
        assert dims == sorted(dims)

    def test_cell_boundary_complex(self, cube):
        """The boundary of a cube face is a square."""
        face = cube.maximal_cells()[0]
        boundary = cube.cell_boundary_complex(face.id)
        assert f_vector(boundary).counts == (4, 4)


class TestSimplicialComplex:
    """Construction checks on simplicial complexes."""

    def test_vertex_out_of_range(self):
        """Facets may only use vertices below vertex_count."""
        with pytest.raises(StructuralError):
            SimplicialComplex(2, frozenset({frozenset({0, 2})}))

    def test_uncovered_vertex(self):
        """Every vertex lies in a facet."""
        with pytest.raises(StructuralError, match="no facet"):
            SimplicialComplex(3, frozenset({frozenset({0, 1})}))

    def test_facet_containment(self):
        """A facet inside another facet is rejected."""
        with pytest.raises(StructuralError, match="contained"):
            SimplicialComplex(3, frozenset({frozenset({0, 1}), frozenset({0, 1, 2})}))

    def test_from_simplices_keeps_maximal(self):
        """Generating simplices are reduced to the inclusion-maximal ones."""
        complex_ = SimplicialComplex.from_simplices([(0, 1), (0, 1, 2), (2, 3)])
        assert complex_.sorted_facets() == [frozenset({2, 3}), frozenset({0, 1, 2})]

    def test_compacted_labels(self):
        """Arbitrary vertex names are renumbered and kept as labels."""
        complex_ = SimplicialComplex.compacted([("a", "c"), ("c", "d")])
        assert complex_.vertex_count == 3
        assert complex_.labels == ("a", "c", "d")

    def test_link_in_octahedron(self, octahedron_sphere):
        """The link of a vertex of the octahedron is a 4-cycle."""
        link = octahedron_sphere.link({0})
        assert link.vertex_count == 4
        assert len(link.facets) == 4
        assert 1 not in link.labels


class TestFVector:
    """Test cases for f_vector."""

    def test_cube(self, cube):
        """The cube has f = (8, 12, 6)."""
        assert f_vector(cube).counts == (8, 12, 6)

    def test_hypercube(self, hypercube):
        """I^4 has f = (16, 32, 24, 8)."""
        fvec = f_vector(hypercube)
        assert fvec.counts == (16, 32, 24, 8)
        assert fvec.chi_sums == fvec.counts

    def test_cross4(self, cross4):
        """The boundary of the 4-dimensional cross-polytope has f = (8, 24, 32, 16)."""
        assert f_vector(cross4).counts == (8, 24, 32, 16)

    def test_empty_simplicial(self):
        """The empty complex has an empty f-vector."""
        assert f_vector(SimplicialComplex(0, frozenset())).counts == ()

    def test_annotated_faces(self):
        """Faces carrying an Euler characteristic count with it."""
        complex_ = RegularCellComplex((Cell("v", 0), Cell("c", 1, {"v"}, chi=0), Cell("T", 2, {"c"}, chi=-1)))
        fvec = f_vector(complex_)
        assert fvec.counts == (1, 1, 1)
        assert fvec.chi_sums == (1, 0, -1)
        assert euler_characteristic(complex_) == 0

    def test_dual_reverses(self, cube):
        """The dual f-vector is the reversed count vector."""
        assert f_vector(cube).dual().counts == (6, 12, 8)

    @pytest.mark.parametrize("name", ["cube", "hypercube", "annulus"])
    def test_invariant_under_shuffled_ids(self, name, request, rng):
        """Renaming the cells in a random order keeps the f-vector."""
        complex_ = request.getfixturevalue(name)
        ids = [cell.id for cell in complex_]
        for _ in range(5):
            order = rng.permutation(len(ids))
            renamed = complex_.relabeled({cell_id: f"c{int(k)}" for cell_id, k in zip(ids, order)})
            assert f_vector(renamed) == f_vector(complex_)
            assert euler_characteristic(renamed) == euler_characteristic(complex_)

    def test_simplicial_invariant_under_vertex_permutation(self, cross4, rng):
        """Permuting vertex numbers keeps the f-vector of a simplicial complex."""
        order = [int(k) for k in rng.permutation(cross4.vertex_count)]
        permuted = SimplicialComplex.from_simplices(
            ([order[v] for v in facet] for facet in cross4.facets), vertex_count=cross4.vertex_count
        )
        assert f_vector(permuted).counts == f_vector(cross4).counts

    def test_negative_count_rejected(self):
        """Counts are nonnegative."""
        with pytest.raises(StructuralError):
            FVector((1, -1), (1, -1))


class TestEulerCharacteristic:
    """Test cases for euler_characteristic."""

    @pytest.mark.parametrize("p", [3, 4, 7])
    def test_polygon(self, p):
        """A polygon boundary is a circle."""
        assert euler_characteristic(pgon(p)) == 0

    def test_cube(self, cube):
        """The cube boundary is a 2-sphere."""
        assert euler_characteristic(cube) == 2

    def test_hypercube(self, hypercube):
        """The hypercube boundary is a 3-sphere."""
        assert euler_characteristic(hypercube) == 0

    def test_simplicial_matches_cells(self, octahedron_sphere):
        """The simplicial count agrees with the cell complex count."""
        assert euler_characteristic(octahedron_sphere) == euler_characteristic(octahedron_sphere.to_cell_complex()) == 2


class TestValidateBoundaryPattern:
    """Test cases for validate_boundary_pattern."""

    def test_cube_passes(self, cube):
        """Faces of the cube meet in edges, vertices or nothing."""
        report = validate_boundary_pattern(cube)
        assert report.passed
        assert report.checked == 56
        assert report.entries

    def test_hypercube_passes(self, hypercube):
        """The facets of I^4 form a boundary pattern."""
        assert validate_boundary_pattern(hypercube).passed

    def test_annulus_reports_two_pieces(self, annulus):
        """Two faces meeting in two disjoint edges pass, with both pieces recorded."""
        report = validate_boundary_pattern(annulus)
        assert report.passed
        pair = [entry for entry in report.entries if entry.subject == ("A", "B")]
        assert pair and "2 piece(s)" in pair[0].detail

    def test_dangling_edge_fails(self):
        """A maximal cell of the wrong dimension is a failure."""
        cells = [Cell(f"v{i}", 0) for i in range(4)] + [Cell("w", 0)]
        cells += [Cell(f"e{i}", 1, {f"v{i}", f"v{(i + 1) % 4}"}) for i in range(4)]
        cells += [Cell("x", 1, {"v0", "w"}), Cell("F", 2, {"e0", "e1", "e2", "e3"})]
        report = validate_boundary_pattern(RegularCellComplex(tuple(cells)))
        assert not report.passed
        assert ("x",) in [entry.subject for entry in report.failures]

    def test_pinched_intersection_fails(self):
        """Two 3-cells meeting in two triangles joined at one vertex do not meet in a 2-manifold."""
        cells = [Cell(name, 0) for name in ("v", "a", "b", "c", "d")]
        cells += [Cell(a + b, 1, {a, b}) for a, b in ("va", "vb", "ab", "vc", "vd", "cd")]
        cells += [Cell("T1", 2, {"va", "vb", "ab"}), Cell("T2", 2, {"vc", "vd", "cd"})]
        cells += [Cell("A", 3, {"T1", "T2"}), Cell("B", 3, {"T1", "T2"})]
        report = validate_boundary_pattern(RegularCellComplex(tuple(cells), check_regularity=False))
        assert not report.passed
        failure = [entry for entry in report.failures if entry.subject == ("A", "B")]
        assert failure and "not a 2-manifold at 'v'" in failure[0].detail
        assert [entry.subject for entry in report.failures] == [("A", "B")]

    def test_manifold_violations(self):
        """A triangle is a 1-manifold; three edges at one vertex branch there."""
        cycle = RegularCellComplex((
            Cell("p", 0), Cell("q", 0), Cell("r", 0),
            Cell("pq", 1, {"p", "q"}), Cell("qr", 1, {"q", "r"}), Cell("rp", 1, {"r", "p"}),
        ))
        assert cycle.manifold_violations({cell.id for cell in cycle}, 1) == []
        tripod = RegularCellComplex(
            tuple(Cell(name, 0) for name in "oxyz") + tuple(Cell("o" + end, 1, {"o", end}) for end in "xyz")
        )
        violations = tripod.manifold_violations({cell.id for cell in tripod}, 1)
        assert violations == [("o", "lies in 3 cells of dimension 1, expected 1 or 2")]


class TestIsSimple:
    """Test cases for is_simple."""

    def test_cube_simple(self, cube):
        """Every cube vertex lies in three faces."""
        assert is_simple(cube, 2)

    def test_hypercube_simple(self, hypercube):
        """Every vertex of I^4 lies in four facets."""
        assert is_simple(hypercube, 3)

    def test_octahedron_not_simple(self, octahedron_sphere):
        """Octahedron vertices lie in four triangles."""
        complex_ = octahedron_sphere.to_cell_complex()
        assert not is_simple(complex_, 2)
        cell, count = first_non_simple_cell(complex_, 2)
        assert cell.dim == 0
        assert count == 4

    def test_dimension_mismatch(self, cube):
        """n must match the top dimension."""
        with pytest.raises(StructuralError):
            is_simple(cube, 3)
