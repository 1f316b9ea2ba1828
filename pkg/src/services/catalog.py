"""Constructors and registry for every named complex, summary and cut datum."""

import json
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Any, Callable, Dict, List, Optional, Tuple

import networkx as nx
import numpy as np

from config_loader import config
from errors import PreconditionViolation, UnknownCatalogEntryError, UnsupportedDimensionError
from models.complexes import Cell, RegularCellComplex, SimplicialComplex
from models.summaries import CutData, ManifoldSummary
from services.complex_core import f_vector
from services.duality import dual_cell_complex
from services.serialization import load_document

logger = logging.getLogger(__name__)

GOLDEN = (1 + 5 ** 0.5) / 2

PRODUCT_KINDS = ("G_closed_x_S1", "G_closed_x_I", "G_Tg_boundary_x_S1", "G_Tg_boundary_x_I", "Tg_x_I2")
CUT_KINDS = ("closed_haken_3mfld", "torus_boundary_3mfld", "haken_3cell_cube", "haken_3cell_dodecahedron", "S1_x_I2")


@dataclass(frozen=True)
class CatalogEntry:
    """A named catalog instance.

    kind is "complex", "simplicial", "summary", "cut" or "both" (a complex
    with its summary). `n` is the cell dimension for Haken checks and
    `expected_haken` the verdict the entry is known to have.
    """

    name: str
    kind: str
    data: Dict[str, Any]
    note: str = ""
    n: Optional[int] = None
    expected_haken: Optional[bool] = None
    tags: Tuple[str, ...] = field(default=())

    @property
    def complex(self):
        return self.data.get("complex")

    @property
    def summary(self) -> Optional[ManifoldSummary]:
        return self.data.get("summary")

    @property
    def cut(self) -> Optional[CutData]:
        return self.data.get("cut")


def hypercube_boundary(n: int) -> RegularCellComplex:
    """Boundary complex of I^n; faces are words over {0, 1, *} with at least one fixed coordinate.

    Args:
        n: Cube dimension, 1..4

    Returns:
        RegularCellComplex: f_k = 2^(n-k) C(n, k) for k < n
    """
    if not 1 <= n <= 4:
        raise UnsupportedDimensionError.from_config("unsupported_dimension", n=n, low=1, high=4)
    cells = []
    for word in product("01*", repeat=n):
        if all(ch == "*" for ch in word):
            continue
        name = "".join(word)
        boundary = frozenset(
            name[:i] + bit + name[i + 1:] for i, ch in enumerate(name) if ch == "*" for bit in "01"
        )
        cells.append(Cell(name, name.count("*"), boundary))
    return RegularCellComplex(tuple(cells))


def pgon(p: int) -> RegularCellComplex:
    """Boundary of a p-gon: vertices v0..v{p-1}, edges e0..e{p-1}."""
    if p < 3:
        raise PreconditionViolation.from_config("out_of_range", name="p", constraint="p >= 3", value=p)
    cells = [Cell(f"v{i}", 0) for i in range(p)]
    cells += [Cell(f"e{i}", 1, {f"v{i}", f"v{(i + 1) % p}"}) for i in range(p)]
    return RegularCellComplex(tuple(cells))


def simplex_boundary(d: int) -> SimplicialComplex:
    """Boundary of the d-simplex, a simplicial (d-1)-sphere on d+1 vertices."""
    if d < 1:
        raise PreconditionViolation.from_config("out_of_range", name="d", constraint="d >= 1", value=d)
    return SimplicialComplex.from_simplices(combinations(range(d + 1), d), vertex_count=d + 1)


def cross_polytope_boundary(d: int) -> SimplicialComplex:
    """Boundary of the d-dimensional cross-polytope; vertices 2i and 2i+1 are antipodal."""
    if d < 1:
        raise PreconditionViolation.from_config("out_of_range", name="d", constraint="d >= 1", value=d)
    facets = ([2 * i + bit for i, bit in enumerate(bits)] for bits in product((0, 1), repeat=d))
    return SimplicialComplex.from_simplices(facets, vertex_count=2 * d)


def _clique_complex(points: np.ndarray, size: int) -> SimplicialComplex:
    """Simplicial complex spanned by the `size`-cliques of the nearest-neighbour graph of a point set."""
    distances = np.linalg.norm(points[:, None, :] - points[None, :, :], axis=-1)
    shortest = distances[distances > 1e-9].min()
    close = np.isclose(distances, shortest, atol=1e-6)
    graph = nx.Graph()
    graph.add_nodes_from(range(len(points)))
    graph.add_edges_from((int(i), int(j)) for i, j in zip(*np.nonzero(np.triu(close, k=1))))
    facets = [clique for clique in nx.enumerate_all_cliques(graph) if len(clique) == size]
    return SimplicialComplex.from_simplices(facets, vertex_count=len(points))


def icosahedral_sphere() -> SimplicialComplex:
    """Boundary of the icosahedron as a simplicial 2-sphere, f = (12, 30, 20)."""
    points = []
    for a, b in product((-1.0, 1.0), repeat=2):
        for shift in range(3):
            coords = [0.0, a, b * GOLDEN]
            points.append(coords[shift:] + coords[:shift])
    return _clique_complex(np.array(points), 3)


def _is_even(perm: Tuple[int, ...]) -> bool:
    inversions = sum(1 for i, j in combinations(range(len(perm)), 2) if perm[i] > perm[j])
    return inversions % 2 == 0


def six_hundred_cell() -> SimplicialComplex:
    """Boundary of the 600-cell as a flag simplicial 3-sphere, f = (120, 720, 1200, 600)."""
    points = set()
    for i in range(4):
        for sign in (-1.0, 1.0):
            v = [0.0] * 4
            v[i] = sign
            points.add(tuple(v))
    for signs in product((-0.5, 0.5), repeat=4):
        points.add(signs)
    base = (GOLDEN / 2, 0.5, 1 / (2 * GOLDEN), 0.0)
    for perm in permutations(range(4)):
        if not _is_even(perm):
            continue
        for signs in product((-1.0, 1.0), repeat=3):
            values = [base[0] * signs[0], base[1] * signs[1], base[2] * signs[2], 0.0]
            v = [0.0] * 4
            for slot, source in enumerate(perm):
                v[slot] = values[source]
            points.add(tuple(round(x, 12) + 0.0 for x in v))
    ordered = np.array(sorted(points))
    return _clique_complex(ordered, 4)


def one_twenty_cell() -> RegularCellComplex:
    """Boundary complex of the 120-cell, built as the dual cell complex of the 600-cell."""
    return dual_cell_complex(six_hundred_cell(), 3)


def platonic(name: str) -> RegularCellComplex:
    """Boundary complex of a Platonic solid.

    Args:
        name: tetrahedron, cube, octahedron, dodecahedron or icosahedron

    Returns:
        RegularCellComplex: boundary 2-sphere
    """
    builders: Dict[str, Callable[[], RegularCellComplex]] = {
        "tetrahedron": lambda: simplex_boundary(3).to_cell_complex(),
        "cube": lambda: hypercube_boundary(3),
        "octahedron": lambda: cross_polytope_boundary(3).to_cell_complex(),
        "dodecahedron": lambda: dual_cell_complex(icosahedral_sphere(), 2),
        "icosahedron": lambda: icosahedral_sphere().to_cell_complex(),
    }
    if name not in builders:
        raise UnknownCatalogEntryError.from_config("unknown_entry", name=name)
    return builders[name]()


def cell_summary(boundary: RegularCellComplex, label: str = "") -> ManifoldSummary:
    """Summary of the 4-cell bounded by a 3-dimensional boundary complex."""
    if boundary.top_dim != 3:
        raise PreconditionViolation.from_config(
            "out_of_range", name="boundary dimension", constraint="3", value=boundary.top_dim
        )
    fvec = f_vector(boundary)
    return ManifoldSummary(
        chi_total=1, f=fvec.counts, chiF=fvec.chi_sums, b0_boundary=1, b1_boundary=0, label=label
    )


def product_summary(kind: str, g: int = 1, chi_G: Optional[int] = None, b1_G: Optional[int] = None) -> ManifoldSummary:
    """Summary of a product Haken 4-manifold.

    G is a closed Haken 3-manifold for the G_closed kinds and has boundary the
    genus-g surface T_g otherwise, in which case chi(G) = 1 - g.

    Args:
        kind: One of PRODUCT_KINDS
        g: Genus of T_g, at least 1
        chi_G: Euler characteristic of G, checked against g when given
        b1_G: First Betti number of G; at least g when G has boundary T_g

    Returns:
        ManifoldSummary: fields as read off the product structure
    """
    if kind not in PRODUCT_KINDS:
        raise UnknownCatalogEntryError.from_config("unknown_entry", name=kind)
    if g < 1:
        raise PreconditionViolation.from_config("out_of_range", name="g", constraint="g >= 1", value=g)
    closed_G = kind.startswith("G_closed")
    expected_chi = 0 if closed_G else 1 - g
    if chi_G is not None and chi_G != expected_chi:
        raise PreconditionViolation.from_config("out_of_range", name="chi(G)", constraint=f"= {expected_chi}", value=chi_G)
    chi_surface = 2 - 2 * g
    label = kind if closed_G else f"{kind}, g={g}"

    if kind == "G_closed_x_S1":
        return ManifoldSummary(chi_total=0, label=label)
    if kind == "G_closed_x_I":
        b1 = 0 if b1_G is None else b1_G
        return ManifoldSummary(chi_total=0, f=(0, 0, 0, 2), b0_boundary=2, b1_boundary=2 * b1, label=label)
    if kind == "G_Tg_boundary_x_S1":
        return ManifoldSummary(chi_total=0, f=(0, 0, 0, 1), b0_boundary=1, b1_boundary=2 * g + 1, label=label)
    if kind == "G_Tg_boundary_x_I":
        b1 = g if b1_G is None else b1_G
        if b1 < g:
            raise PreconditionViolation.from_config("out_of_range", name="b1(G)", constraint=f">= {g}", value=b1)
        # two copies of G plus T_g x I; the boundary is the double of G
        return ManifoldSummary(
            chi_total=expected_chi,
            f=(0, 0, 2, 3),
            chiF=(0, 0, 2 * chi_surface, 2 * expected_chi + chi_surface),
            b0_boundary=1,
            b1_boundary=2 * b1 - g,
            label=label,
        )
    return ManifoldSummary(
        chi_total=chi_surface,
        f=(0, 0, 4, 4),
        chiF=(0, 0, 4 * chi_surface, 4 * chi_surface),
        b0_boundary=1,
        b1_boundary=2 * g + 1,
        label=label,
    )


def cut_data(kind: str, g: int = 1) -> CutData:
    """Cut datum of a standard cutting hypersurface.

    Args:
        kind: One of CUT_KINDS
        g: Genus of the boundary torus for torus_boundary_3mfld

    Returns:
        CutData: with the Haken flag set
    """
    if kind == "closed_haken_3mfld":
        return CutData(haken=True, label=kind)
    if kind == "torus_boundary_3mfld":
        if g < 1:
            raise PreconditionViolation.from_config("out_of_range", name="g", constraint="g >= 1", value=g)
        chi_surface = 2 - 2 * g
        return CutData(
            f0_G=0,
            chiF_G=(0, 0, chi_surface),
            chi_G=1 - g,
            chi_boundary_G=chi_surface,
            b0_boundary_G=1,
            f2_G=1,
            haken=True,
            label=f"{kind}, g={g}",
        )
    if kind in ("haken_3cell_cube", "haken_3cell_dodecahedron"):
        f0, f1, f2 = f_vector(platonic(kind.rsplit("_", 1)[1])).counts
        return CutData(
            f0_G=f0,
            chiF_G=(f0, f1, f2),
            chi_G=1,
            chi_boundary_G=2,
            b0_boundary_G=1,
            f1_G=f1,
            f2_G=f2,
            haken=True,
            label=kind,
        )
    if kind == "S1_x_I2":
        # S1 times the four edges and four corners of the square
        return CutData(f0_G=0, chiF_G=(0, 0, 0), b0_boundary_G=1, f1_G=4, f2_G=4, haken=True, label=kind)
    raise UnknownCatalogEntryError.from_config("unknown_entry", name=kind)


def _complex_entry(name, builder, n=None, expected=None, note="", tags=()) -> Tuple[str, Callable[[], CatalogEntry]]:
    def build():
        complex_ = builder()
        data = {"complex": complex_}
        kind = "simplicial" if isinstance(complex_, SimplicialComplex) else "complex"
        if isinstance(complex_, RegularCellComplex) and complex_.top_dim == 3 and n == 4:
            data["summary"] = cell_summary(complex_, name)
            kind = "both"
        return CatalogEntry(name, kind, data, note, n, expected, tuple(tags))

    return name, build


def _builders() -> Dict[str, Callable[[], CatalogEntry]]:
    entries = [
        _complex_entry("triangle", lambda: pgon(3), 2, False, "triangle: not Haken", ("non_haken",)),
        _complex_entry("square", lambda: pgon(4), 2, True, "Haken 2-cell", ("haken_cell",)),
        _complex_entry("pentagon", lambda: pgon(5), 2, True, "Haken 2-cell", ("haken_cell",)),
        _complex_entry("I2", lambda: hypercube_boundary(2), 2, True, "square as I^2", ("haken_cell",)),
        _complex_entry("I3", lambda: hypercube_boundary(3), 3, True, "cube as I^3", ()),
        _complex_entry("I4", lambda: hypercube_boundary(4), 4, True, "hypercube, f = (16, 32, 24, 8)", ("haken_cell",)),
        _complex_entry("simplex3", lambda: simplex_boundary(3), None, None, "boundary of the 3-simplex"),
        _complex_entry("simplex4", lambda: simplex_boundary(4), None, None, "boundary of the 4-simplex, not flag"),
        _complex_entry("cross3", lambda: cross_polytope_boundary(3), None, None, "octahedron as a flag 2-sphere"),
        _complex_entry("cross4", lambda: cross_polytope_boundary(4), None, None, "dual of the hypercube"),
        _complex_entry("icosahedral_sphere", icosahedral_sphere, None, None, "icosahedron as a simplicial 2-sphere"),
    ]
    for solid in ("tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron"):
        haken = solid in ("cube", "dodecahedron")
        note = "Haken 3-cell" if haken else "triangular faces: not Haken"
        tags = ("haken_cell",) if haken else ("non_haken",)
        entries.append(_complex_entry(solid, lambda solid=solid: platonic(solid), 3, haken, note, tags))
    if config.is_120_cell_enabled():
        entries.append(_complex_entry("cell600", six_hundred_cell, None, None, "600-cell, flag 3-sphere", ("slow",)))
        entries.append(_complex_entry("cell120", one_twenty_cell, 4, True, "120-cell, Haken 4-cell", ("haken_cell", "slow")))

    def summary_entry(name, builder, note=""):
        return name, lambda: CatalogEntry(name, "summary", {"summary": builder()}, note)

    def cut_entry(name, builder, note=""):
        return name, lambda: CatalogEntry(name, "cut", {"cut": builder()}, note)

    entries.append(summary_entry("G_closed_x_S1", lambda: product_summary("G_closed_x_S1"), "closed, phi = 0"))
    entries.append(summary_entry("G_closed_x_I", lambda: product_summary("G_closed_x_I"), "two boundary faces"))
    for g in config.get("catalog.summary_genera", [1, 2, 3]):
        for kind in ("G_Tg_boundary_x_S1", "G_Tg_boundary_x_I", "Tg_x_I2"):
            entries.append(summary_entry(f"{kind}_g{g}", lambda kind=kind, g=g: product_summary(kind, g)))
        entries.append(cut_entry(f"cut_torus_boundary_g{g}", lambda g=g: cut_data("torus_boundary_3mfld", g)))
    for kind in ("closed_haken_3mfld", "haken_3cell_cube", "haken_3cell_dodecahedron", "S1_x_I2"):
        entries.append(cut_entry(f"cut_{kind}", lambda kind=kind: cut_data(kind)))
    builders = dict(entries)
    builders.update(_json_builders())
    return builders


def _json_builders() -> Dict[str, Callable[[], CatalogEntry]]:
    directory = config.get_catalog_dir()
    builders: Dict[str, Callable[[], CatalogEntry]] = {}
    if not directory.is_dir():
        logger.warning("catalog directory %s does not exist", directory)
        return builders
    for path in sorted(directory.glob("*.json")):

        def build(path=path):
            text = path.read_text(encoding="utf-8")
            document = load_document(text, source=str(path))
            # optional keys next to the complex: note, n, expected_haken, tags
            meta = json.loads(text)
            kind = "simplicial" if isinstance(document, SimplicialComplex) else "complex"
            n = document.top_dim + 1 if isinstance(document, RegularCellComplex) else None
            return CatalogEntry(
                path.stem,
                kind,
                {"complex": document},
                meta.get("note", f"loaded from {path.name}"),
                meta.get("n", n),
                meta.get("expected_haken"),
                tuple(meta.get("tags", ())),
            )

        builders[path.stem] = build
    return builders


@lru_cache(maxsize=None)
def _registry() -> Dict[str, Callable[[], CatalogEntry]]:
    return _builders()


@lru_cache(maxsize=None)
def get_entry(name: str) -> CatalogEntry:
    """Build (once) and return the named entry."""
    builders = _registry()
    if name not in builders:
        raise UnknownCatalogEntryError.from_config("unknown_entry", name=name)
    entry = builders[name]()
    if entry.complex is not None:
        logger.debug("catalog entry %s: f = %s", name, f_vector(entry.complex).counts)
    return entry


def entry_names() -> List[str]:
    return sorted(_registry())


def summary_entries() -> List[CatalogEntry]:
    """Every entry that carries a manifold summary, by name."""
    return [get_entry(name) for name in entry_names() if get_entry(name).summary is not None]


def reset() -> None:
    """Forget built entries and rescan configuration (after changing the catalog directory)."""
    get_entry.cache_clear()
    _registry.cache_clear()
