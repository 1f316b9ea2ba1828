"""F-vectors, Euler characteristics, boundary-pattern and simplicity checks."""

import logging
from itertools import combinations
from math import comb
from typing import FrozenSet, Iterator, Set, Union

from errors import StructuralError
from models.complexes import CellId, FVector, RegularCellComplex, SimplicialComplex
from models.reports import ReportEntry, ValidationReport

logger = logging.getLogger(__name__)

Complex = Union[RegularCellComplex, SimplicialComplex]


def f_vector(complex_: Complex) -> FVector:
    """Face counts by dimension, with per-dimension sums of face Euler characteristics.

    Args:
        complex_: A regular cell complex or a simplicial complex

    Returns:
        FVector: counts f_0..f_top; empty for the empty complex
    """
    if isinstance(complex_, SimplicialComplex):
        if not complex_.facets:
            return FVector((), ())
        counts = [0] * (complex_.dimension + 1)
        for face in complex_.faces:
            counts[len(face) - 1] += 1
        return FVector.of_cells(counts)

    if isinstance(complex_, RegularCellComplex):
        size = complex_.top_dim + 1
        counts = [0] * size
        chi_sums = [0] * size
        for cell in complex_.cells:
            counts[cell.dim] += 1
            chi_sums[cell.dim] += cell.euler
        return FVector(tuple(counts), tuple(chi_sums))

    raise StructuralError(f"not a complex: {type(complex_).__name__}")


def euler_characteristic(complex_: Complex) -> int:
    """Euler characteristic, summing (-1)^dim chi(F) over all faces.

    Args:
        complex_: A regular cell complex or a simplicial complex

    Returns:
        int: Euler characteristic
    """
    return f_vector(complex_).alternating_sum


def facet_sets_meeting(complex_: RegularCellComplex, max_size: int) -> Iterator[FrozenSet[CellId]]:
    """Every set of at most `max_size` maximal cells with nonempty common intersection.

    A nonempty closed intersection always contains a vertex, so the sets are
    exactly the subsets of the maximal cells around some vertex.
    """
    seen: Set[FrozenSet[CellId]] = set()
    for vertex in complex_.cells_of_dim(0):
        around = sorted(complex_.maximal_cells_containing(vertex.id), key=str)
        for size in range(1, min(max_size, len(around)) + 1):
            for subset in combinations(around, size):
                key = frozenset(subset)
                if key not in seen:
                    seen.add(key)
                    yield key


def _count_facet_sets(facets: int, max_size: int) -> int:
    return sum(comb(facets, k) for k in range(1, max_size + 1))


def validate_boundary_pattern(complex_: RegularCellComplex) -> ValidationReport:
    """Check that any k facets meet in nothing or in pure (n-k)-dimensional pieces.

    The complex is the boundary complex of a candidate n-manifold, so its
    facets have dimension n-1 and k runs over 1..n+1. Empty intersections
    pass and are only counted.

    Args:
        complex_: Boundary complex to validate

    Returns:
        ValidationReport: one entry per facet set with nonempty intersection
    """
    n = complex_.top_dim + 1
    entries = []
    facets = complex_.maximal_cells()

    for facet in facets:
        if facet.dim != n - 1:
            entries.append(ReportEntry((facet.id,), False, f"maximal cell of dimension {facet.dim}, expected {n - 1}"))

    for facet_set in facet_sets_meeting(complex_, n + 1):
        k = len(facet_set)
        subject = tuple(sorted(facet_set, key=str))
        common = complex_.facet_intersection(facet_set)
        expected = n - k
        actual = complex_.dimension_of(common)
        if expected < 0:
            entries.append(ReportEntry(subject, False, f"{k} facets meet, expected empty intersection"))
            continue
        pieces = complex_.components(common)
        bad = [piece for piece in pieces if not complex_.is_pure_set(piece, expected)]
        if bad:
            entries.append(
                ReportEntry(subject, False, f"intersection has dimension {actual}, expected pure dimension {expected}")
            )
            continue
        pinched = [found for piece in pieces for found in complex_.manifold_violations(piece, expected)]
        if pinched:
            cell_id, reason = pinched[0]
            entries.append(
                ReportEntry(subject, False, f"intersection is not a {expected}-manifold at {cell_id!r}: {reason}")
            )
        else:
            entries.append(ReportEntry(subject, True, f"{len(pieces)} piece(s) of dimension {expected}"))

    report = ValidationReport("boundary_pattern", tuple(entries), _count_facet_sets(len(facets), n + 1))
    logger.debug("boundary pattern: %d entries, %d failures", len(entries), len(report.failures))
    return report


def is_simple(complex_: RegularCellComplex, n: int) -> bool:
    """True iff every k-cell lies in exactly n-k+1 maximal cells.

    Args:
        complex_: Regular cell structure on an n-manifold
        n: Dimension of the manifold carrying the complex

    Returns:
        bool: simplicity verdict
    """
    return first_non_simple_cell(complex_, n) is None


def first_non_simple_cell(complex_: RegularCellComplex, n: int):
    """The first cell violating simplicity as (cell, count), or None."""
    if complex_.top_dim != n:
        raise StructuralError.from_config("dimension_mismatch", expected=n, actual=complex_.top_dim)
    for cell in complex_.cells:
        count = len(complex_.maximal_cells_containing(cell.id))
        if count != n - cell.dim + 1:
            return cell, count
    return None
