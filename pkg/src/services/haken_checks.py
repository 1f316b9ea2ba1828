"""Recursive combinatorial certification of Haken n-cells, n <= 4.

A passing certificate records the combinatorial consequences of a complete
useful boundary pattern. It is not a topological proof of usefulness.
"""

import logging
import threading
from dataclasses import replace
from math import comb
from typing import Dict, List, Optional, Tuple

import networkx as nx

from errors import PreconditionViolation, StructuralError, UnsupportedDimensionError
from models.complexes import RegularCellComplex
from models.reports import HakenCellCertificate, ReportEntry, ValidationReport
from services.complex_core import facet_sets_meeting, validate_boundary_pattern
from services.duality import canonical_hash, dual_simplicial, isomorphism_mapping
from services.flagness import has_3_cycle_in_1_skeleton, is_flag

logger = logging.getLogger(__name__)

MIN_DIMENSION = 1
MAX_DIMENSION = 4


class CertificateCache:
    """Certificates keyed by dimension and canonical form of the boundary complex.

    A hash hit is confirmed by an isomorphism test against the stored
    representative before the certificate is reused. Only passing
    certificates are stored; failing ones name cells of their own complex
    in their reasons.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._entries: Dict[Tuple[int, str], List[Tuple[RegularCellComplex, HakenCellCertificate]]] = {}
        self.hits = 0

    def lookup(self, boundary: RegularCellComplex, n: int) -> Optional[HakenCellCertificate]:
        key = (n, canonical_hash(boundary))
        with self._lock:
            candidates = list(self._entries.get(key, ()))
        for representative, certificate in candidates:
            mapping = isomorphism_mapping(representative, boundary)
            if mapping is not None:
                with self._lock:
                    self.hits += 1
                return _relabel(certificate, mapping)
        return None

    def store(self, boundary: RegularCellComplex, n: int, certificate: HakenCellCertificate) -> None:
        if not certificate.verdict:
            return
        key = (n, canonical_hash(boundary))
        with self._lock:
            bucket = self._entries.setdefault(key, [])
            if not any(rep == boundary for rep, _ in bucket):
                bucket.append((boundary, certificate))

    def clear(self) -> None:
        with self._lock:
            self._entries.clear()
            self.hits = 0

    def __len__(self) -> int:
        with self._lock:
            return sum(len(bucket) for bucket in self._entries.values())


certificate_cache = CertificateCache()


def _relabel(certificate: HakenCellCertificate, mapping: Dict) -> HakenCellCertificate:
    def rename(subject):
        if isinstance(subject, tuple):
            return tuple(sorted((mapping[cell_id] for cell_id in subject), key=str))
        return mapping[subject]

    trail = tuple((rename(subject), passed) for subject, passed in certificate.trail)
    return replace(certificate, trail=trail)


def _intersection_graph(boundary: RegularCellComplex) -> nx.Graph:
    graph = nx.Graph()
    facets = sorted((cell.id for cell in boundary.maximal_cells()), key=str)
    graph.add_nodes_from(facets)
    for pair in facet_sets_meeting(boundary, 2):
        if len(pair) == 2:
            graph.add_edge(*pair)
    return graph


def check_usefulness_combinatorics(boundary: RegularCellComplex, simply_connected: bool = True) -> ValidationReport:
    """Pairwise intersections connected; pairwise-meeting triples meet.

    Both clauses hold for useful patterns on simply connected manifolds.
    Otherwise they are recorded as not applicable.

    Args:
        boundary: Boundary complex whose maximal cells are the faces of the pattern
        simply_connected: Whether the manifold carrying the pattern is simply connected

    Returns:
        ValidationReport: one entry per meeting pair and per pairwise-meeting triple
    """
    graph = _intersection_graph(boundary)
    facet_count = graph.number_of_nodes()
    entries = []

    for u, v in sorted(graph.edges, key=lambda e: sorted(map(str, e))):
        subject = tuple(sorted((u, v), key=str))
        if not simply_connected:
            entries.append(ReportEntry(subject, True, "not applicable: manifold not simply connected"))
            continue
        pieces = boundary.components(boundary.facet_intersection(subject))
        if len(pieces) == 1:
            entries.append(ReportEntry(subject, True, "connected intersection"))
        else:
            entries.append(ReportEntry(subject, False, f"intersection has {len(pieces)} components"))

    triangles = sorted(
        (tuple(sorted(clique, key=str)) for clique in nx.enumerate_all_cliques(graph) if len(clique) == 3),
        key=lambda t: list(map(str, t)),
    )
    for triple in triangles:
        if not simply_connected:
            entries.append(ReportEntry(triple, True, "not applicable: manifold not simply connected"))
        elif boundary.facet_intersection(triple):
            entries.append(ReportEntry(triple, True, "common intersection nonempty"))
        else:
            entries.append(ReportEntry(triple, False, "pairwise meeting faces with empty triple intersection"))

    checked = comb(facet_count, 2) + comb(facet_count, 3)
    return ValidationReport("usefulness", tuple(entries), checked)


def _is_polygon(boundary: RegularCellComplex) -> Tuple[bool, str]:
    vertices = boundary.cells_of_dim(0)
    edges = boundary.cells_of_dim(1)
    graph = nx.MultiGraph()
    graph.add_nodes_from(cell.id for cell in vertices)
    graph.add_edges_from(tuple(edge.boundary_ids) for edge in edges)
    if any(degree != 2 for _, degree in graph.degree()) or not nx.is_connected(graph):
        return False, "boundary is not a single cycle"
    if len(edges) < 4:
        return False, f"{len(edges)}-gon has fewer than 4 sides"
    return True, f"{len(edges)}-gon"


def _certify(boundary: RegularCellComplex, n: int, cache: CertificateCache) -> HakenCellCertificate:
    trail = []
    reasons = []

    if n == 1:
        count = len(boundary.cells_of_dim(0))
        if count != 2:
            reasons.append(f"boundary has {count} vertices, expected 2")
        return HakenCellCertificate(1, not reasons, (), _dual_flag(boundary, n, reasons), tuple(reasons))

    if n == 2:
        ok, detail = _is_polygon(boundary)
        if not ok:
            reasons.append(detail)

    pattern = validate_boundary_pattern(boundary)
    for failure in pattern.failures:
        reasons.append(f"boundary pattern: {list(failure.subject)} {failure.detail}")

    for facet in boundary.maximal_cells():
        sub = check_haken_cell(boundary.cell_boundary_complex(facet.id), n - 1, cache)
        trail.append((facet.id, sub.verdict))
        if not sub.verdict:
            reasons.append(f"face {facet.id!r} is not a Haken {n - 1}-cell")

    if n >= 3:
        for facet_set in facet_sets_meeting(boundary, n):
            k = len(facet_set)
            if k < 2:
                continue
            subject = tuple(sorted(facet_set, key=str))
            common = boundary.facet_intersection(facet_set)
            tops = [cell_id for cell_id in common if not (boundary.cofaces[cell_id] & common)]
            single = len(tops) == 1 and boundary.by_id[tops[0]].dim == n - k
            trail.append((subject, single))
            if not single:
                reasons.append(f"faces {list(subject)} do not meet in a single {n - k}-cell")

    usefulness = check_usefulness_combinatorics(boundary)
    for failure in usefulness.failures:
        reasons.append(f"usefulness: {list(failure.subject)} {failure.detail}")

    found, witness = has_3_cycle_in_1_skeleton(boundary)
    if found:
        reasons.append(f"3-cycle in the 1-skeleton through {list(witness)}")

    dual_flag = _dual_flag(boundary, n, reasons)
    return HakenCellCertificate(n, not reasons, tuple(trail), dual_flag, tuple(reasons))


def _dual_flag(boundary: RegularCellComplex, n: int, reasons: List[str]) -> bool:
    try:
        return is_flag(dual_simplicial(boundary, n - 1))
    except (PreconditionViolation, StructuralError) as e:
        reasons.append(f"no simplicial dual: {e}")
        return False


def check_haken_cell(
    boundary: RegularCellComplex, n: int, cache: Optional[CertificateCache] = None
) -> HakenCellCertificate:
    """Certify that `boundary` is the boundary complex of a Haken n-cell.

    Args:
        boundary: (n-1)-dimensional boundary complex
        n: Dimension of the cell, 1..4
        cache: Certificate memo; the module-wide cache by default

    Returns:
        HakenCellCertificate: verdict, recursive trail and dual-flag bit
    """
    if not MIN_DIMENSION <= n <= MAX_DIMENSION:
        raise UnsupportedDimensionError.from_config("unsupported_dimension", n=n, low=MIN_DIMENSION, high=MAX_DIMENSION)
    if boundary.top_dim != n - 1:
        raise StructuralError.from_config("dimension_mismatch", expected=n - 1, actual=boundary.top_dim)
    cache = certificate_cache if cache is None else cache

    cached = cache.lookup(boundary, n)
    if cached is not None:
        return cached

    certificate = _certify(boundary, n, cache)
    cache.store(boundary, n, certificate)
    logger.debug("Haken %d-cell check on %d cells: %s", n, len(boundary), certificate.verdict)
    return certificate
