"""Shared pytest fixtures for hakencx tests."""

import pytest
import os
import sys
from unittest.mock import Mock

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '../src'))

from config_loader import config
from models.complexes import Cell, RegularCellComplex, SimplicialComplex
from models.summaries import CutData, ManifoldSummary
from services import catalog
from services.haken_checks import CertificateCache


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: 120-cell / 600-cell checks, run only when the stretch entries are enabled")


def pytest_collection_modifyitems(config, items):
    from config_loader import config as hakencx_config

    if hakencx_config.is_120_cell_enabled():
        return
    skip = pytest.mark.skip(reason="set HAKENCX_ENABLE_120_CELL=1 to run the 120-cell checks")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def mock_config():
    """Mock configuration loader with the shipped error templates."""
    config_mock = Mock()
    config_mock.get.side_effect = lambda key, default=None: {
        "flagness.max_size": None,
        "verification.random_seed": 7,
        "output.json_indent": 2,
    }.get(key, default)
    config_mock.get_error_message.side_effect = config.get_error_message
    config_mock.is_120_cell_enabled.return_value = False
    config_mock.get_app_config.return_value = {"langgraph": {"checkpointer": "memory", "thread_id": "test"}}
    config_mock.get_output_config.return_value = {"json_indent": 2, "detail_width": 100}
    config_mock.get_logging_config.return_value = {"level": "WARNING"}
    return config_mock


@pytest.fixture
def rng():
    """Seeded generator for randomized properties."""
    return np.random.default_rng(int(config.get("verification.random_seed", 0)))


@pytest.fixture
def square():
    """Boundary of a square."""
    return catalog.pgon(4)


@pytest.fixture
def triangle():
    """Boundary of a triangle."""
    return catalog.pgon(3)


@pytest.fixture
def cube():
    """Boundary complex of the cube."""
    return catalog.hypercube_boundary(3)


@pytest.fixture
def hypercube():
    """Boundary complex of I^4."""
    return catalog.hypercube_boundary(4)


@pytest.fixture
def octahedron_sphere():
    """Boundary of the octahedron as a simplicial 2-sphere."""
    return catalog.cross_polytope_boundary(3)


@pytest.fixture
def cross4():
    """Boundary of the 4-dimensional cross-polytope, the simplicial dual of I^4."""
    return catalog.cross_polytope_boundary(4)


@pytest.fixture
def simplex4():
    """Boundary of the 4-simplex: a 3-sphere that is not flag."""
    return catalog.simplex_boundary(4)


@pytest.fixture
def annulus():
    """Two squares glued along two opposite edges."""
    cells = [Cell(f"v{i}", 0) for i in range(4)]
    cells += [
        Cell("top", 1, {"v0", "v1"}),
        Cell("right_a", 1, {"v1", "v2"}),
        Cell("right_b", 1, {"v1", "v2"}),
        Cell("bottom", 1, {"v2", "v3"}),
        Cell("left_a", 1, {"v0", "v3"}),
        Cell("left_b", 1, {"v0", "v3"}),
        Cell("A", 2, {"top", "right_a", "bottom", "left_a"}),
        Cell("B", 2, {"top", "right_b", "bottom", "left_b"}),
    ]
    return RegularCellComplex(tuple(cells))


@pytest.fixture
def five_cycle():
    """A pentagon as a simplicial 1-sphere."""
    return SimplicialComplex.from_simplices([(i, (i + 1) % 5) for i in range(5)])


@pytest.fixture
def hypercube_summary():
    """Summary of the 4-cell I^4."""
    return ManifoldSummary(chi_total=1, f=(16, 32, 24, 8), chiF=(16, 32, 24, 8), b0_boundary=1, label="I4")


@pytest.fixture
def cube_cut():
    """A Haken 3-cell cube as cutting hypersurface."""
    return CutData(
        f0_G=8, chiF_G=(8, 12, 6), chi_G=1, chi_boundary_G=2, b0_boundary_G=1, f1_G=12, f2_G=6,
        haken=True, label="cube",
    )


@pytest.fixture
def certificate_cache():
    """An empty certificate cache, separate from the module-wide one."""
    return CertificateCache()


@pytest.fixture
def catalog_dir(tmp_path, monkeypatch):
    """Point the catalog at an empty temporary directory and rebuild the registry."""
    monkeypatch.setenv("HAKENCX_CATALOG_DIR", str(tmp_path))
    catalog.reset()
    yield tmp_path
    monkeypatch.delenv("HAKENCX_CATALOG_DIR")
    catalog.reset()
