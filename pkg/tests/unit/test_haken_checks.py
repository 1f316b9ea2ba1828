"""Unit tests for Haken n-cell certification."""

import pytest
import sys
import os

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '../../src'))

from errors import PreconditionViolation, StructuralError, UnsupportedDimensionError
from models.complexes import Cell, RegularCellComplex
from models.reports import HakenCellCertificate
from services import catalog
from services.haken_checks import check_haken_cell, check_usefulness_combinatorics


class TestLowDimensions:
    """Haken 1- and 2-cells."""

    def test_interval(self):
        """Two points bound a Haken 1-cell."""
        boundary = RegularCellComplex((Cell("a", 0), Cell("b", 0)))
        assert check_haken_cell(boundary, 1).verdict

    def test_single_point(self):
        """One point does not."""
        certificate = check_haken_cell(RegularCellComplex((Cell("a", 0),)), 1)
        assert not certificate.verdict

    def test_square(self, square, certificate_cache):
        """A square is a Haken 2-cell."""
        assert check_haken_cell(square, 2, certificate_cache).verdict

    def test_triangle(self, triangle, certificate_cache):
        """A triangle has too few sides."""
        certificate = check_haken_cell(triangle, 2, certificate_cache)
        assert not certificate.verdict
        assert any("fewer than 4 sides" in reason for reason in certificate.reasons)

    @pytest.mark.parametrize("p", [4, 5, 8])
    def test_polygons(self, p, certificate_cache):
        """Any p-gon with p >= 4 passes."""
        assert check_haken_cell(catalog.pgon(p), 2, certificate_cache).verdict


class TestHaken3Cells:
    """Platonic solids as candidate Haken 3-cells."""

    def test_cube(self, cube, certificate_cache):
        """The cube passes with a flag dual."""
        certificate = check_haken_cell(cube, 3, certificate_cache)
        assert certificate.verdict
        assert certificate.dual_flag
        assert certificate.reasons == ()
        faces = [passed for subject, passed in certificate.trail if not isinstance(subject, tuple)]
        assert len(faces) == 6 and all(faces)

    def test_dodecahedron(self, certificate_cache):
        """The dodecahedron passes."""
        certificate = check_haken_cell(catalog.platonic("dodecahedron"), 3, certificate_cache)
        assert certificate.verdict
        assert certificate.dual_flag

    @pytest.mark.parametrize("solid", ["tetrahedron", "octahedron", "icosahedron"])
    def test_triangular_faces(self, solid, certificate_cache):
        """Triangular faces are not Haken 2-cells."""
        certificate = check_haken_cell(catalog.platonic(solid), 3, certificate_cache)
        assert not certificate.verdict
        assert any("is not a Haken 2-cell" in reason for reason in certificate.reasons)

    def test_annulus(self, annulus, certificate_cache):
        """Two squares glued along two edges meet in a disconnected set."""
        certificate = check_haken_cell(annulus, 3, certificate_cache)
        assert not certificate.verdict
        assert any("usefulness" in reason for reason in certificate.reasons)

    def test_pentagonal_prism(self, certificate_cache):
        """The shipped prism complex is a Haken 3-cell."""
        entry = catalog.get_entry("pentagonal_prism")
        assert entry.expected_haken is True
        assert check_haken_cell(entry.complex, entry.n, certificate_cache).verdict


class TestHaken4Cells:
    """Hypercube as a Haken 4-cell."""

    def test_hypercube(self, hypercube, certificate_cache):
        """I^4 passes and its dual is the flag cross-polytope."""
        certificate = check_haken_cell(hypercube, 4, certificate_cache)
        assert certificate.verdict
        assert certificate.dual_flag
        assert certificate.n == 4


class TestInputChecks:
    """Rejected inputs."""

    def test_unsupported_dimension(self, cube):
        """n above 4 is outside the supported range."""
        with pytest.raises(UnsupportedDimensionError):
            check_haken_cell(cube, 5)

    def test_dimension_mismatch(self, square):
        """The boundary must have dimension n - 1."""
        with pytest.raises(StructuralError):
            check_haken_cell(square, 3)

    def test_certificate_requires_flag_dual(self):
        """A passing 3-cell certificate must carry a flag dual."""
        with pytest.raises(PreconditionViolation):
            HakenCellCertificate(3, True, (), dual_flag=False)

    def test_certificate_requires_passing_trail(self):
        """A passing certificate cannot list a failing sub-check."""
        with pytest.raises(PreconditionViolation):
            HakenCellCertificate(2, True, (("e0", False),))


class TestCertificateCache:
    """Test cases for CertificateCache reuse."""

    def test_faces_reuse_certificates(self, cube, certificate_cache):
        """The six isomorphic faces of the cube hit the cache."""
        check_haken_cell(cube, 3, certificate_cache)
        assert len(certificate_cache) >= 2
        assert certificate_cache.hits >= 5

    def test_hit_is_relabeled(self, cube, certificate_cache):
        """A cached certificate is renamed onto the new complex."""
        check_haken_cell(cube, 3, certificate_cache)
        renamed = cube.relabeled({cell.id: f"x{cell.id}" for cell in cube.cells})
        hits = certificate_cache.hits
        certificate = check_haken_cell(renamed, 3, certificate_cache)
        assert certificate_cache.hits == hits + 1
        for subject, _ in certificate.trail:
            ids = subject if isinstance(subject, tuple) else (subject,)
            assert all(cell_id in renamed for cell_id in ids)

    def test_failing_reasons_name_own_cells(self, annulus, certificate_cache):
        """A failing certificate for a renamed complex only mentions the new cell ids."""
        check_haken_cell(annulus, 3, certificate_cache)
        renamed = annulus.relabeled({cell.id: f"z_{cell.id}" for cell in annulus.cells})
        certificate = check_haken_cell(renamed, 3, certificate_cache)
        assert not certificate.verdict
        text = " ".join(certificate.reasons)
        assert "'z_A'" in text
        assert not any(repr(cell.id) in text for cell in annulus.cells)

    def test_clear(self, square, certificate_cache):
        """clear() empties the cache."""
        check_haken_cell(square, 2, certificate_cache)
        certificate_cache.clear()
        assert len(certificate_cache) == 0
        assert certificate_cache.hits == 0


class TestUsefulness:
    """Test cases for check_usefulness_combinatorics."""

    def test_cube(self, cube):
        """Cube faces meet in connected sets and meeting triples share a vertex."""
        report = check_usefulness_combinatorics(cube)
        assert report.passed
        assert report.checked == 15 + 20

    def test_annulus(self, annulus):
        """The annulus pair fails with two components."""
        report = check_usefulness_combinatorics(annulus)
        assert not report.passed
        assert report.failures[0].subject == ("A", "B")
        assert "2 components" in report.failures[0].detail

    def test_not_simply_connected(self, annulus):
        """Without simple connectivity every entry is not applicable."""
        report = check_usefulness_combinatorics(annulus, simply_connected=False)
        assert report.passed
        assert all("not applicable" in entry.detail for entry in report.entries)
