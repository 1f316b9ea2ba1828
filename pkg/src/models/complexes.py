"""Face-poset models: regular cell complexes, simplicial complexes, f-vectors."""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from errors import StructuralError

CellId = Hashable


def _order_key(cell: "Cell") -> Tuple[int, str]:
    return (cell.dim, str(cell.id))


def sphere_euler(dim: int) -> int:
    """Euler characteristic of the sphere of the given dimension (S^-1 is empty)."""
    if dim < 0:
        return 0
    return 1 + (-1) ** dim


@dataclass(frozen=True)
class Cell:
    """A cell of a regular cell complex, given by its codimension-one faces.

    `chi` annotates a face that is a manifold piece rather than a cell; it is
    None for genuine cells, which count with Euler characteristic 1.
    """

    id: CellId
    dim: int
    boundary_ids: FrozenSet[CellId] = frozenset()
    chi: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "boundary_ids", frozenset(self.boundary_ids))
        if self.dim < 0 or bool(self.boundary_ids) != (self.dim > 0):
            raise StructuralError.from_config("boundary_of_vertex", cell=self.id, dim=self.dim)

    @property
    def euler(self) -> int:
        return 1 if self.chi is None else self.chi


@dataclass(frozen=True)
class RegularCellComplex:
    """A regular cell complex stored as a graded face poset.

    Construction checks that every boundary id exists with dimension one
    less, and (unless disabled) the closed-cell regularity surrogate.
    """

    cells: Tuple[Cell, ...]
    check_regularity: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        cells = tuple(sorted(self.cells, key=_order_key))
        object.__setattr__(self, "cells", cells)

        seen = set()
        for cell in cells:
            if cell.id in seen:
                raise StructuralError.from_config("duplicate_cell", cell=cell.id)
            seen.add(cell.id)

        by_id = self.by_id
        for cell in cells:
            for face_id in cell.boundary_ids:
                face = by_id.get(face_id)
                if face is None:
                    raise StructuralError.from_config("dangling_boundary", cell=cell.id, missing=face_id)
                if face.dim != cell.dim - 1:
                    raise StructuralError.from_config(
                        "boundary_dimension", cell=cell.id, dim=cell.dim, face=face_id, face_dim=face.dim
                    )

        if self.check_regularity:
            violations = self.regularity_violations()
            if violations:
                cell_id, reason = violations[0]
                raise StructuralError.from_config("irregular_cell", cell=cell_id, reason=reason)

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def __contains__(self, cell_id: CellId) -> bool:
        return cell_id in self.by_id

    @cached_property
    def by_id(self) -> Dict[CellId, Cell]:
        return {cell.id: cell for cell in self.cells}

    @property
    def top_dim(self) -> int:
        """Largest cell dimension, -1 for the empty complex."""
        return self.cells[-1].dim if self.cells else -1

    def cells_of_dim(self, dim: int) -> Tuple[Cell, ...]:
        return tuple(cell for cell in self.cells if cell.dim == dim)

    @cached_property
    def cofaces(self) -> Dict[CellId, FrozenSet[CellId]]:
        """Immediate cofaces of every cell."""
        up: Dict[CellId, set] = {cell.id: set() for cell in self.cells}
        for cell in self.cells:
            for face_id in cell.boundary_ids:
                up[face_id].add(cell.id)
        return {cell_id: frozenset(ids) for cell_id, ids in up.items()}

    @cached_property
    def _closures(self) -> Dict[CellId, FrozenSet[CellId]]:
        closures: Dict[CellId, FrozenSet[CellId]] = {}
        for cell in self.cells:  # sorted by dimension
            below = set([cell.id])
            for face_id in cell.boundary_ids:
                below |= closures[face_id]
            closures[cell.id] = frozenset(below)
        return closures

    def closure(self, cell_id: CellId) -> FrozenSet[CellId]:
        """All faces of a cell, the cell itself included."""
        return self._closures[cell_id]

    def maximal_cells(self) -> Tuple[Cell, ...]:
        return tuple(cell for cell in self.cells if not self.cofaces[cell.id])

    @cached_property
    def _maximal_over(self) -> Dict[CellId, FrozenSet[CellId]]:
        over: Dict[CellId, set] = {cell.id: set() for cell in self.cells}
        for top in self.maximal_cells():
            for face_id in self.closure(top.id):
                over[face_id].add(top.id)
        return {cell_id: frozenset(ids) for cell_id, ids in over.items()}

    def maximal_cells_containing(self, cell_id: CellId) -> FrozenSet[CellId]:
        """Maximal cells whose closure contains the given cell."""
        return self._maximal_over[cell_id]

    def facet_intersection(self, facet_ids: Iterable[CellId]) -> FrozenSet[CellId]:
        """Subcomplex of faces common to all the given cells."""
        facet_ids = list(facet_ids)
        if not facet_ids:
            return frozenset()
        common = set(self.closure(facet_ids[0]))
        for facet_id in facet_ids[1:]:
            common &= self.closure(facet_id)
        return frozenset(common)

    def dimension_of(self, ids: Iterable[CellId]) -> int:
        return max((self.by_id[cell_id].dim for cell_id in ids), default=-1)

    def is_pure_set(self, ids: FrozenSet[CellId], dim: int) -> bool:
        """True iff every cell of the closed set lies in a cell of the given dimension."""
        tops = [cell_id for cell_id in ids if not (self.cofaces[cell_id] & ids)]
        return all(self.by_id[cell_id].dim == dim for cell_id in tops)

    def components(self, ids: Iterable[CellId]) -> List[FrozenSet[CellId]]:
        """Connected components of a subcomplex, via its Hasse diagram."""
        ids = frozenset(ids)
        graph = nx.Graph()
        graph.add_nodes_from(ids)
        for cell_id in ids:
            graph.add_edges_from((cell_id, face_id) for face_id in self.by_id[cell_id].boundary_ids)
        parts = [frozenset(part) for part in nx.connected_components(graph)]
        return sorted(parts, key=lambda part: sorted(map(str, part)))

    def euler_of(self, ids: Iterable[CellId]) -> int:
        return sum((-1) ** self.by_id[cell_id].dim * self.by_id[cell_id].euler for cell_id in ids)

    def regularity_violations(self) -> List[Tuple[CellId, str]]:
        """Cells whose boundary fails the connected sphere-Euler surrogate."""
        violations = []
        for cell in self.cells:
            if cell.dim == 0 or cell.chi is not None:
                continue
            boundary = self.closure(cell.id) - {cell.id}
            expected = sphere_euler(cell.dim - 1)
            actual = self.euler_of(boundary)
            if actual != expected:
                violations.append((cell.id, f"boundary has Euler characteristic {actual}, expected {expected}"))
            # S^0 is two points; connectivity applies from S^1 upwards
            elif cell.dim >= 2 and len(self.components(boundary)) != 1:
                violations.append((cell.id, "boundary is disconnected"))
        return violations

    def _cells_above(self, cell_id: CellId, ids: FrozenSet[CellId]) -> FrozenSet[CellId]:
        found = set()
        frontier = [cell_id]
        while frontier:
            for coface in self.cofaces[frontier.pop()] & ids:
                if coface not in found:
                    found.add(coface)
                    frontier.append(coface)
        return frozenset(found)

    def manifold_violations(self, ids: Iterable[CellId], dim: int) -> List[Tuple[CellId, str]]:
        """Cells where a pure closed set fails the manifold surrogate.

        Every (dim-1)-cell must lie in one or two dim-cells of the set, and
        the cells of the set above any lower cell must be connected.
        """
        ids = frozenset(ids)
        violations = []
        for cell_id in sorted(ids, key=str):
            cell = self.by_id[cell_id]
            if cell.dim >= dim:
                continue
            above = self._cells_above(cell_id, ids)
            if cell.dim == dim - 1:
                count = sum(1 for other in above if self.by_id[other].dim == dim)
                if count not in (1, 2):
                    violations.append((cell_id, f"lies in {count} cells of dimension {dim}, expected 1 or 2"))
                continue
            graph = nx.Graph()
            graph.add_nodes_from(above)
            for other in above:
                graph.add_edges_from((other, face_id) for face_id in self.by_id[other].boundary_ids & above)
            if not above or not nx.is_connected(graph):
                violations.append((cell_id, "neighbourhood is pinched"))
        return violations

    def subcomplex(self, ids: Iterable[CellId], check_regularity: bool = False) -> "RegularCellComplex":
        """The subcomplex on a closed set of cell ids."""
        ids = frozenset(ids)
        return RegularCellComplex(
            tuple(self.by_id[cell_id] for cell_id in ids), check_regularity=check_regularity
        )

    def cell_boundary_complex(self, cell_id: CellId) -> "RegularCellComplex":
        """The boundary complex of one cell."""
        return self.subcomplex(self.closure(cell_id) - {cell_id})

    def relabeled(self, mapping: Dict[CellId, CellId]) -> "RegularCellComplex":
        """Copy with cell ids renamed through `mapping`."""
        return RegularCellComplex(
            tuple(
                Cell(mapping[cell.id], cell.dim, frozenset(mapping[f] for f in cell.boundary_ids), cell.chi)
                for cell in self.cells
            ),
            check_regularity=False,
        )


def _face_key(face: FrozenSet[int]) -> Tuple[int, Tuple[int, ...]]:
    return (len(face), tuple(sorted(face)))


@dataclass(frozen=True)
class SimplicialComplex:
    """Simplicial complex on vertices 0..vertex_count-1, given by its facets.

    `labels` optionally names each vertex (for example the cells a dual
    complex was built from).
    """

    vertex_count: int
    facets: FrozenSet[FrozenSet[int]]
    labels: Optional[Tuple[Hashable, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        facets = frozenset(frozenset(facet) for facet in self.facets)
        object.__setattr__(self, "facets", facets)

        covered = set()
        for facet in facets:
            for vertex in facet:
                if not 0 <= vertex < self.vertex_count:
                    raise StructuralError.from_config(
                        "vertex_out_of_range", facet=sorted(facet), vertex=vertex, limit=self.vertex_count - 1
                    )
            if not facet:
                raise StructuralError.from_config("vertex_out_of_range", facet=[], vertex=None, limit=self.vertex_count - 1)
            covered |= facet
        for vertex in range(self.vertex_count):
            if vertex not in covered:
                raise StructuralError.from_config("uncovered_vertex", vertex=vertex)

        incident: Dict[int, set] = {}
        for facet in facets:
            for vertex in facet:
                incident.setdefault(vertex, set()).add(facet)
        for facet in facets:
            holders = set.intersection(*(incident[vertex] for vertex in facet))
            holders.discard(facet)
            if holders:
                outer = min(holders, key=_face_key)
                raise StructuralError.from_config("facet_containment", inner=sorted(facet), outer=sorted(outer))

        if self.labels is not None and len(self.labels) != self.vertex_count:
            raise StructuralError.from_config(
                "dimension_mismatch", expected=self.vertex_count, actual=len(self.labels)
            )

    @classmethod
    def from_simplices(
        cls,
        simplices: Iterable[Iterable[int]],
        vertex_count: Optional[int] = None,
        labels: Optional[Sequence[Hashable]] = None,
    ) -> "SimplicialComplex":
        """Build from any generating simplices, keeping the inclusion-maximal ones."""
        simplices = sorted({frozenset(s) for s in simplices}, key=len, reverse=True)
        maximal: List[FrozenSet[int]] = []
        for simplex in simplices:
            if not any(simplex <= kept for kept in maximal):
                maximal.append(simplex)
        if vertex_count is None:
            vertex_count = max((max(s) for s in maximal), default=-1) + 1
        return cls(vertex_count, frozenset(maximal), tuple(labels) if labels is not None else None)

    @classmethod
    def compacted(
        cls, simplices: Iterable[Iterable[Hashable]], labels: Optional[Dict[Hashable, Hashable]] = None
    ) -> "SimplicialComplex":
        """Build from simplices on arbitrary vertex names, renumbering them 0..m-1.

        The original names (or `labels[name]`) become the vertex labels.
        """
        simplices = [frozenset(s) for s in simplices]
        names = sorted({v for s in simplices for v in s}, key=lambda v: (str(type(v)), v))
        index = {name: i for i, name in enumerate(names)}
        vertex_labels = [labels[name] if labels else name for name in names]
        return cls.from_simplices(
            ([index[v] for v in s] for s in simplices), vertex_count=len(names), labels=vertex_labels
        )

    def label(self, vertex: int) -> Hashable:
        return self.labels[vertex] if self.labels is not None else vertex

    @cached_property
    def dimension(self) -> int:
        return max((len(facet) for facet in self.facets), default=0) - 1

    def is_pure(self) -> bool:
        return len({len(facet) for facet in self.facets}) <= 1

    @cached_property
    def faces(self) -> FrozenSet[FrozenSet[int]]:
        """Every nonempty face."""
        found = set()
        for facet in self.facets:
            members = sorted(facet)
            for size in range(1, len(members) + 1):
                found.update(frozenset(c) for c in combinations(members, size))
        return frozenset(found)

    def faces_of_dim(self, dim: int) -> List[FrozenSet[int]]:
        return sorted((face for face in self.faces if len(face) == dim + 1), key=_face_key)

    def is_face(self, vertices: Iterable[int]) -> bool:
        return frozenset(vertices) in self.faces

    def sorted_facets(self) -> List[FrozenSet[int]]:
        return sorted(self.facets, key=_face_key)

    def skeleton_graph(self) -> nx.Graph:
        """The 1-skeleton as a networkx graph."""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.vertex_count))
        graph.add_edges_from(tuple(face) for face in self.faces if len(face) == 2)
        return graph

    def link(self, simplex: Iterable[int]) -> "SimplicialComplex":
        """Link of a face, renumbered; its labels are the original vertices."""
        simplex = frozenset(simplex)
        pieces = [facet - simplex for facet in self.facets if simplex <= facet]
        return SimplicialComplex.compacted([piece for piece in pieces if piece])

    def star_facets(self, simplex: Iterable[int]) -> List[FrozenSet[int]]:
        simplex = frozenset(simplex)
        return sorted((facet for facet in self.facets if simplex <= facet), key=_face_key)

    def to_cell_complex(self) -> RegularCellComplex:
        """The same complex with every simplex as a cell."""

        def name(face: FrozenSet[int]) -> str:
            return ",".join(str(v) for v in sorted(face))

        cells = []
        for face in self.faces:
            boundary = frozenset(name(face - {v}) for v in face) if len(face) > 1 else frozenset()
            cells.append(Cell(name(face), len(face) - 1, boundary))
        return RegularCellComplex(tuple(cells), check_regularity=False)


@dataclass(frozen=True)
class FVector:
    """Face counts per dimension plus per-dimension sums of face Euler characteristics."""

    counts: Tuple[int, ...]
    chi_sums: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        object.__setattr__(self, "chi_sums", tuple(int(c) for c in self.chi_sums))
        if len(self.counts) != len(self.chi_sums):
            raise StructuralError.from_config(
                "dimension_mismatch", expected=len(self.counts), actual=len(self.chi_sums)
            )
        if any(c < 0 for c in self.counts):
            raise StructuralError.from_config("negative_count", values=list(self.counts))

    @classmethod
    def of_cells(cls, counts: Sequence[int]) -> "FVector":
        """F-vector of a complex all of whose faces are cells."""
        return cls(tuple(counts), tuple(counts))

    def __len__(self) -> int:
        return len(self.counts)

    def __getitem__(self, k: int) -> int:
        return self.counts[k]

    @property
    def alternating_sum(self) -> int:
        return sum((-1) ** k * chi for k, chi in enumerate(self.chi_sums))

    def dual(self) -> "FVector":
        """F-vector of the dual complex (counts reversed, all faces cells)."""
        return FVector.of_cells(tuple(reversed(self.counts)))
