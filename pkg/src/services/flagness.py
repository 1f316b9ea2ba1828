"""Flag-complex detection, minimal non-faces and short cycles in 1-skeleta."""

import logging
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Tuple

import networkx as nx

from config_loader import config
from errors import StructuralError
from models.complexes import RegularCellComplex, SimplicialComplex
from models.reports import FlagReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class MinimalNonFace:
    """A vertex set that is not a face although all its proper subsets are."""

    vertices: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))
        if len(self.vertices) < 2:
            raise StructuralError(f"minimal non-face needs at least 2 vertices, got {list(self.vertices)}")

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def empty_simplex_dim(self) -> int:
        """Dimension of the missing simplex (1 for a non-edge)."""
        return len(self.vertices) - 1


def _full_size(complex_: SimplicialComplex) -> int:
    # no minimal non-face has more than dimension + 2 vertices; at least 2 for empty complexes
    return max(2, complex_.dimension + 2)


def _default_max_size(complex_: SimplicialComplex) -> int:
    configured = config.get("flagness.max_size")
    return int(configured) if configured is not None else _full_size(complex_)


def minimal_non_faces(complex_: SimplicialComplex, max_size: Optional[int] = None) -> List[MinimalNonFace]:
    """Every inclusion-minimal non-face with at most `max_size` vertices.

    Grows candidate sets level by level from the faces of the previous
    level, so a set is only tried once all its proper subsets are faces.

    Args:
        complex_: Simplicial complex
        max_size: Largest vertex set to try; defaults to dimension + 2

    Returns:
        List[MinimalNonFace]: in canonical (size, lexicographic) order
    """
    if max_size is None:
        max_size = _default_max_size(complex_)
    if max_size < 2:
        raise StructuralError(f"max_size must be at least 2, got {max_size}")

    faces = complex_.faces
    found: List[MinimalNonFace] = []
    level = sorted(tuple([v]) for v in range(complex_.vertex_count))
    for size in range(2, max_size + 1):
        previous = set(level)
        candidates = set()
        for face in level:
            for v in range(face[-1] + 1, complex_.vertex_count):
                candidate = face + (v,)
                if all(sub in previous for sub in combinations(candidate, size - 1)):
                    candidates.add(candidate)
        level = []
        for candidate in sorted(candidates):
            if frozenset(candidate) in faces:
                level.append(candidate)
            else:
                found.append(MinimalNonFace(candidate))
        if not level:
            break

    found.sort(key=lambda m: (len(m), m.vertices))
    logger.debug("minimal_non_faces: %d found up to size %d", len(found), max_size)
    return found


def is_flag(complex_: SimplicialComplex) -> bool:
    """True iff every minimal non-face is a pair of vertices."""
    return all(len(m) == 2 for m in minimal_non_faces(complex_, _full_size(complex_)))


def is_flag_by_cliques(complex_: SimplicialComplex) -> bool:
    """Check the definition directly: every clique of the 1-skeleton spans a face."""
    faces = complex_.faces
    return all(frozenset(clique) in faces for clique in nx.enumerate_all_cliques(complex_.skeleton_graph()))


def has_empty_triangle(complex_: SimplicialComplex) -> bool:
    """True iff three pairwise adjacent vertices span no 2-simplex."""
    return any(len(m) == 3 for m in minimal_non_faces(complex_, 3))


def has_3_cycle_in_1_skeleton(complex_: RegularCellComplex) -> Tuple[bool, Optional[Tuple]]:
    """Look for three distinct vertices pairwise joined by edges.

    Args:
        complex_: Regular cell complex with vertices and edges

    Returns:
        Tuple[bool, Optional[Tuple]]: found flag and a witness vertex triple
    """
    graph = nx.Graph()
    graph.add_nodes_from(cell.id for cell in complex_.cells_of_dim(0))
    for edge in complex_.cells_of_dim(1):
        ends = tuple(edge.boundary_ids)
        if len(ends) == 2:
            graph.add_edge(*ends)
    for u, v in sorted(graph.edges, key=lambda e: sorted(map(str, e))):
        common = sorted(set(graph[u]) & set(graph[v]), key=str)
        if common:
            witness = tuple(sorted((u, v, common[0]), key=str))
            return True, witness
    return False, None


def flag_report(complex_: SimplicialComplex, max_size: Optional[int] = None) -> FlagReport:
    """Flag verdict plus the minimal non-faces grouped by empty-simplex dimension.

    The verdict always comes from the complete search; `max_size` only
    limits which minimal non-faces are listed.
    """
    limit = _default_max_size(complex_) if max_size is None else max_size
    if limit < 2:
        raise StructuralError(f"max_size must be at least 2, got {limit}")
    complete = minimal_non_faces(complex_, _full_size(complex_))
    found = [m for m in complete if len(m) <= limit]
    by_dim = Counter(m.empty_simplex_dim for m in found if len(m) > 2)
    return FlagReport(
        verdict=all(len(m) == 2 for m in complete),
        minimal_non_faces=tuple(m.vertices for m in found),
        empty_simplices_by_dim=dict(sorted(by_dim.items())),
    )
