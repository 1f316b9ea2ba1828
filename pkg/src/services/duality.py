"""Barycentric subdivision, the two dualization directions, and isomorphism testing."""

import logging
from dataclasses import dataclass
from itertools import permutations
from typing import Dict, FrozenSet, Hashable, List, Optional, Tuple, Union

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher, categorical_node_match

from errors import PreconditionViolation
from models.complexes import Cell, RegularCellComplex, SimplicialComplex, sphere_euler
from services.complex_core import euler_characteristic, first_non_simple_cell

logger = logging.getLogger(__name__)

Complex = Union[RegularCellComplex, SimplicialComplex]


@dataclass(frozen=True)
class BarycentricSubdivision:
    """Order complex of a face poset.

    Vertex i of `simplices` stands for the source element `elements[i]`.
    """

    source: Complex
    simplices: SimplicialComplex
    elements: Tuple[Hashable, ...]


@dataclass(frozen=True)
class DualCone:
    """Chains sigma < tau_1 < ... < tau_k of a simplicial complex starting at sigma."""

    base_simplex: FrozenSet[int]
    cone_simplices: Tuple[Tuple[FrozenSet[int], ...], ...]


def _maximal_chains_of_cells(complex_: RegularCellComplex) -> List[Tuple[Hashable, ...]]:
    chains = []
    stack = [(vertex.id,) for vertex in complex_.cells_of_dim(0)]
    while stack:
        chain = stack.pop()
        above = complex_.cofaces[chain[-1]]
        if not above:
            chains.append(chain)
        for cell_id in above:
            stack.append(chain + (cell_id,))
    return chains


def barycentric_subdivision(complex_: Complex) -> BarycentricSubdivision:
    """Subdivide by starring every cell: simplices are strictly increasing chains of faces.

    Args:
        complex_: A regular cell complex or a simplicial complex

    Returns:
        BarycentricSubdivision: with one vertex per source element
    """
    if isinstance(complex_, SimplicialComplex):
        elements = tuple(sorted(complex_.faces, key=lambda f: (len(f), sorted(f))))
        chains = []
        for facet in complex_.facets:
            for order in permutations(sorted(facet)):
                chains.append([frozenset(order[: i + 1]) for i in range(len(order))])
    else:
        elements = tuple(cell.id for cell in complex_.cells)
        chains = _maximal_chains_of_cells(complex_)

    index = {element: i for i, element in enumerate(elements)}
    simplices = SimplicialComplex.from_simplices(
        ([index[element] for element in chain] for chain in chains),
        vertex_count=len(elements),
        labels=elements,
    )
    return BarycentricSubdivision(complex_, simplices, elements)


def dual_simplicial(complex_: RegularCellComplex, n: int) -> SimplicialComplex:
    """Simplicial complex dual to a simple regular cell structure on an n-manifold.

    Vertices are the maximal cells; each vertex x of the input contributes
    the simplex of the n+1 maximal cells containing x.

    Args:
        complex_: Simple n-dimensional regular cell complex
        n: Dimension of the manifold carrying the complex

    Returns:
        SimplicialComplex: labelled by the maximal cell ids
    """
    offender = first_non_simple_cell(complex_, n)
    if offender is not None:
        cell, count = offender
        raise PreconditionViolation.from_config(
            "not_simple", cell=cell.id, dim=cell.dim, count=count, expected=n - cell.dim + 1
        )
    tops = sorted((cell.id for cell in complex_.maximal_cells()), key=str)
    index = {cell_id: i for i, cell_id in enumerate(tops)}
    facets = [
        [index[top] for top in complex_.maximal_cells_containing(vertex.id)]
        for vertex in complex_.cells_of_dim(0)
    ]
    dual = SimplicialComplex.from_simplices(facets, vertex_count=len(tops), labels=tops)
    if len(dual.facets) != len(facets):
        raise PreconditionViolation("two vertices lie in the same set of maximal cells")
    logger.debug("dual_simplicial: %d maximal cells, %d facets", len(tops), len(dual.facets))
    return dual


def link_surrogate_failure(complex_: SimplicialComplex, n: int):
    """First simplex whose link fails the sphere surrogate, as (simplex, reason), or None."""
    if complex_.dimension != n or not complex_.is_pure():
        return (), f"complex is not pure of dimension {n}"
    for face in sorted(complex_.faces, key=lambda f: (len(f), sorted(f))):
        k = len(face) - 1
        if k == n:
            continue
        link = complex_.link(face)
        link_dim = n - k - 1
        if not link.facets or link.dimension != link_dim or not link.is_pure():
            return face, f"link is not pure of dimension {link_dim}"
        chi = euler_characteristic(link)
        if chi != sphere_euler(link_dim):
            return face, f"link has Euler characteristic {chi}, expected {sphere_euler(link_dim)}"
        if link_dim == 0 and link.vertex_count != 2:
            return face, f"link has {link.vertex_count} points, expected 2"
        if link_dim >= 1 and not nx.is_connected(link.skeleton_graph()):
            return face, "link is disconnected"
    return None


def _cone_id(face: FrozenSet[int]) -> str:
    return "D(" + ",".join(str(v) for v in sorted(face)) + ")"


def dual_cone(complex_: SimplicialComplex, sigma) -> DualCone:
    """All chains of proper inclusions starting at sigma.

    Args:
        complex_: Simplicial complex
        sigma: A face of the complex

    Returns:
        DualCone: chains in increasing order, sigma first
    """
    sigma = frozenset(sigma)
    above = sorted((f for f in complex_.faces if sigma < f), key=lambda f: (len(f), sorted(f)))
    chains = []
    stack = [(sigma,)]
    while stack:
        chain = stack.pop()
        chains.append(chain)
        stack.extend(chain + (face,) for face in above if chain[-1] < face)
    chains.sort(key=lambda c: [sorted(face) for face in c])
    return DualCone(sigma, tuple(chains))


def dual_cell_complex(complex_: SimplicialComplex, n: int) -> RegularCellComplex:
    """Dual cell decomposition of a simplicial n-manifold: one k-cell D(sigma) per (n-k)-simplex.

    Args:
        complex_: Simplicial n-manifold passing the link surrogate
        n: Dimension of the manifold

    Returns:
        RegularCellComplex: incidence reversed from the face poset
    """
    failure = link_surrogate_failure(complex_, n)
    if failure is not None:
        face, reason = failure
        raise PreconditionViolation.from_config("link_surrogate", simplex=sorted(face), reason=reason)

    faces = complex_.faces
    cells = []
    for face in faces:
        dim = n - (len(face) - 1)
        cofaces = {face | {v} for facet in complex_.star_facets(face) for v in facet - face}
        boundary = frozenset(_cone_id(coface) for coface in cofaces)
        cells.append(Cell(_cone_id(face), dim, boundary if dim > 0 else frozenset()))
    dual = RegularCellComplex(tuple(cells))
    logger.debug("dual_cell_complex: %d cells", len(dual))
    return dual


def hasse_diagram(complex_: Complex) -> nx.DiGraph:
    """Covering relation of the face poset, nodes labelled with their dimension."""
    if isinstance(complex_, SimplicialComplex):
        complex_ = complex_.to_cell_complex()
    graph = nx.DiGraph()
    for cell in complex_.cells:
        graph.add_node(cell.id, dim=cell.dim)
    for cell in complex_.cells:
        graph.add_edges_from((face_id, cell.id) for face_id in cell.boundary_ids)
    return graph


def canonical_hash(complex_: Complex) -> str:
    """Isomorphism-invariant hash of the dimension-labelled Hasse diagram."""
    graph = hasse_diagram(complex_)
    for node in graph.nodes:
        graph.nodes[node]["label"] = str(graph.nodes[node]["dim"])
    return nx.weisfeiler_lehman_graph_hash(graph, node_attr="label", iterations=4)


def isomorphism_mapping(first: Complex, second: Complex) -> Optional[Dict[Hashable, Hashable]]:
    """A face-poset isomorphism from `first` onto `second` as an id mapping, or None."""
    g1, g2 = hasse_diagram(first), hasse_diagram(second)
    if g1.number_of_nodes() != g2.number_of_nodes() or g1.number_of_edges() != g2.number_of_edges():
        return None
    if canonical_hash(first) != canonical_hash(second):
        return None
    matcher = DiGraphMatcher(g1, g2, node_match=categorical_node_match("dim", None))
    return next(matcher.isomorphisms_iter(), None)


def are_isomorphic(first: Complex, second: Complex) -> bool:
    """Decide combinatorial equivalence of two complexes via their face posets."""
    return isomorphism_mapping(first, second) is not None
