"""Unit tests for the catalog constructors and registry."""

import json
import pytest
import sys
import os

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '../../src'))

from errors import ParseError, PreconditionViolation, UnknownCatalogEntryError, UnsupportedDimensionError
from services import catalog
from services.complex_core import euler_characteristic, f_vector
from services.phi_cd import phi


class TestConstructors:
    """Test cases for the named complex constructors."""

    @pytest.mark.parametrize("n,expected", [
        (1, (2,)),
        (2, (4, 4)),
        (3, (8, 12, 6)),
        (4, (16, 32, 24, 8)),
    ])
    def test_hypercube_boundary(self, n, expected):
        """f_k = 2^(n-k) C(n, k)."""
        assert f_vector(catalog.hypercube_boundary(n)).counts == expected

    def test_hypercube_out_of_range(self):
        """Only dimensions 1..4 are built."""
        with pytest.raises(UnsupportedDimensionError):
            catalog.hypercube_boundary(5)

    def test_pgon(self):
        """A p-gon has p vertices and p edges."""
        assert f_vector(catalog.pgon(6)).counts == (6, 6)
        with pytest.raises(PreconditionViolation):
            catalog.pgon(2)

    @pytest.mark.parametrize("solid,expected", [
        ("tetrahedron", (4, 6, 4)),
        ("cube", (8, 12, 6)),
        ("octahedron", (6, 12, 8)),
        ("dodecahedron", (20, 30, 12)),
        ("icosahedron", (12, 30, 20)),
    ])
    def test_platonic(self, solid, expected):
        """Platonic boundaries have the classical f-vectors."""
        complex_ = catalog.platonic(solid)
        assert f_vector(complex_).counts == expected
        assert euler_characteristic(complex_) == 2

    def test_unknown_solid(self):
        """Unknown names raise UnknownCatalogEntryError."""
        with pytest.raises(UnknownCatalogEntryError):
            catalog.platonic("rhombicuboctahedron")

    def test_cross_polytope(self):
        """The d-dimensional cross-polytope has 2^d facets."""
        assert len(catalog.cross_polytope_boundary(4).facets) == 16

    @pytest.mark.slow
    def test_600_cell(self):
        """The 600-cell has f = (120, 720, 1200, 600)."""
        assert f_vector(catalog.six_hundred_cell()).counts == (120, 720, 1200, 600)

    @pytest.mark.slow
    def test_120_cell(self):
        """The 120-cell has 600 vertices and 120 facets, phi = -15/2."""
        complex_ = catalog.one_twenty_cell()
        counts = f_vector(complex_).counts
        assert counts == (600, 1200, 720, 120)
        assert phi(complex_) == -7.5


class TestSummaries:
    """Test cases for product_summary, cut_data and cell_summary."""

    def test_cell_summary(self, hypercube):
        """A 4-cell summary has chi 1 and one boundary component."""
        summary = catalog.cell_summary(hypercube, "I4")
        assert summary.chi_total == 1
        assert summary.f == (16, 32, 24, 8)
        assert summary.b0_boundary == 1

    def test_cell_summary_needs_dimension_3(self, cube):
        """Only 3-dimensional boundaries give 4-cell summaries."""
        with pytest.raises(PreconditionViolation):
            catalog.cell_summary(cube)

    @pytest.mark.parametrize("kind,chi", [
        ("G_closed_x_S1", lambda g: 0),
        ("G_closed_x_I", lambda g: 0),
        ("G_Tg_boundary_x_S1", lambda g: 0),
        ("G_Tg_boundary_x_I", lambda g: 1 - g),
        ("Tg_x_I2", lambda g: 2 - 2 * g),
    ])
    def test_product_kinds(self, kind, chi):
        """Every product kind builds a valid summary with the product Euler characteristic."""
        for g in (1, 2, 3):
            assert catalog.product_summary(kind, g).chi_total == chi(g)

    def test_product_chi_check(self):
        """A given chi(G) must match the genus."""
        with pytest.raises(PreconditionViolation):
            catalog.product_summary("G_Tg_boundary_x_I", 2, chi_G=0)

    def test_unknown_product(self):
        """Unknown kinds raise UnknownCatalogEntryError."""
        with pytest.raises(UnknownCatalogEntryError):
            catalog.product_summary("G_x_G")

    @pytest.mark.parametrize("kind", catalog.CUT_KINDS)
    def test_cut_kinds(self, kind):
        """Every standard cut is a Haken hypersurface."""
        assert catalog.cut_data(kind).haken

    def test_dodecahedron_cut(self):
        """The dodecahedral 3-cell cut has 20 vertices."""
        g = catalog.cut_data("haken_3cell_dodecahedron")
        assert (g.f0_G, g.f1_G, g.f2_G) == (20, 30, 12)


class TestRegistry:
    """Test cases for the named registry."""

    def test_entry_names_sorted(self):
        """Names are listed in order and include the core entries."""
        names = catalog.entry_names()
        assert names == sorted(names)
        for name in ("I4", "cross4", "simplex4", "G_closed_x_S1", "cut_haken_3cell_cube", "annulus_squares"):
            assert name in names

    def test_i4_carries_summary(self):
        """I4 is registered with its complex and its 4-cell summary."""
        entry = catalog.get_entry("I4")
        assert entry.kind == "both"
        assert entry.n == 4
        assert phi(entry.summary) == 1

    def test_unknown_entry(self):
        """Unknown names raise UnknownCatalogEntryError."""
        with pytest.raises(UnknownCatalogEntryError, match="unknown catalog entry"):
            catalog.get_entry("nonexistent")

    def test_entries_are_cached(self):
        """An entry is built once."""
        assert catalog.get_entry("cube") is catalog.get_entry("cube")

    def test_summary_entries(self):
        """Every summary entry carries a summary."""
        entries = catalog.summary_entries()
        assert entries
        assert all(entry.summary is not None for entry in entries)

    def test_120_cell_disabled_by_default(self):
        """The stretch entries are only registered when enabled."""
        assert "cell120" not in catalog.entry_names()

    def test_json_metadata(self):
        """Shipped JSON complexes carry their metadata."""
        entry = catalog.get_entry("annulus_squares")
        assert entry.n == 3
        assert entry.expected_haken is False
        assert entry.kind == "complex"


class TestCatalogDirectory:
    """Loading extra complexes from HAKENCX_CATALOG_DIR."""

    def test_loads_json(self, catalog_dir):
        """A JSON complex in the directory becomes an entry named after the file."""
        document = {
            "cells": [
                {"id": "a", "dim": 0, "boundary": []},
                {"id": "b", "dim": 0, "boundary": []},
            ],
        }
        (catalog_dir / "two_points.json").write_text(json.dumps(document), encoding="utf-8")
        catalog.reset()
        entry = catalog.get_entry("two_points")
        assert entry.n == 1
        assert entry.note == "loaded from two_points.json"
        assert "annulus_squares" not in catalog.entry_names()

    def test_malformed_json(self, catalog_dir):
        """A broken file only fails when its entry is built."""
        (catalog_dir / "broken.json").write_text("{not json", encoding="utf-8")
        catalog.reset()
        assert "broken" in catalog.entry_names()
        with pytest.raises(ParseError):
            catalog.get_entry("broken")
