"""Cutting a Haken 4-manifold summary along a hypersurface, and the induction chain over a hierarchy."""

import logging
from fractions import Fraction
from typing import List, Optional

import numpy as np

from models.reports import ChainLine, ChainReport
from models.summaries import CutData, Hierarchy, Interval, IntervalSummary, ManifoldSummary
from services.phi_cd import PhiCoefficients, phi, phi_general

logger = logging.getLogger(__name__)


def _is_closed_cut(g: CutData) -> bool:
    return g.f0_G == g.f1_G == g.f2_G == 0 and not any(g.chiF_G) and g.b0_boundary_G == 0


def cut(x: ManifoldSummary, g: CutData) -> IntervalSummary:
    """Summary of Y = X cut open along G.

    Euler characteristics of the face strata are exact; face counts other
    than f0 are bounded on both sides, since G may or may not separate.

    Args:
        x: Summary of X
        g: Connected cutting hypersurface

    Returns:
        IntervalSummary: Y with exact f0, chiF and chi_total
    """
    c0, c1, c2 = g.chiF_G
    chiF = (
        x.chiF[0] + 2 * c0,
        x.chiF[1] + c0 + 2 * c1,
        x.chiF[2] + c1 + 2 * c2,
        x.chiF[3] + c2 + 2 * g.chi_G,
    )
    f0, f1, f2, f3 = x.f
    # G is connected, so the two copies of G add 2 b0(G) = 2 new 3-faces
    new_faces = 2
    if _is_closed_cut(g):
        # a closed G misses the old boundary: both copies are new components
        b0 = Interval.point(x.b0_boundary + 2)
    else:
        b0 = Interval(x.b0_boundary, x.b0_boundary + 1)
    y = IntervalSummary(
        chi_total=x.chi_total + g.chi_G,
        f0=f0 + 2 * g.f0_G,
        f1=Interval(f1 + 2 * g.f1_G, f1 + 2 * g.f1_G + g.f0_G),
        f2=Interval(f2 + 2 * g.f2_G, f2 + 2 * g.f2_G + g.f1_G),
        f3=Interval(f3 + new_faces, f3 + new_faces + g.f2_G),
        chiF=chiF,
        b0_boundary=b0,
        label=f"{x.label} | {g.label}" if x.label or g.label else "",
    )
    logger.debug("cut %s along %s: chi %d -> %d", x.label, g.label, x.chi_total, y.chi_total)
    return y


def phi_after_cut(x: ManifoldSummary, g: CutData) -> Fraction:
    """phi(Y) = phi(X) - f0(G)/8 + (chi(F2 G) + chi(dG))/4."""
    return phi(x) - Fraction(g.f0_G, 8) + Fraction(g.chiF_G[2] + g.chi_boundary_G, 4)


def _line(stage: str, relation: str, op: str, lhs, rhs) -> ChainLine:
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    holds = {"=": lhs == rhs, ">=": lhs >= rhs, "<=": lhs <= rhs}[op]
    return ChainLine(stage, relation, lhs, rhs, holds)


def evaluate_chain(
    x: ManifoldSummary,
    g: CutData,
    coeffs: Optional[PhiCoefficients] = None,
    y: Optional[ManifoldSummary] = None,
    stage: str = "",
) -> List[ChainLine]:
    """Evaluate chi(X) = chi(Y) - chi(G) >= phi(Y) - chi(G) >= phi(X) for one cut.

    Args:
        x: Summary of X
        g: Cutting hypersurface
        coeffs: Coefficients of phi; canonical when omitted
        y: Exact summary of Y inside cut(x, g); the lower ends when omitted
        stage: Name used on the report lines

    Returns:
        List[ChainLine]: one line per relation of the chain
    """
    stage = stage or x.label
    y_bounds = cut(x, g)
    if coeffs is None:
        phi_x, phi_y = phi(x), phi(y_bounds)
    else:
        if y is None:
            y = y_bounds.resolve(haken=x.haken and g.haken)
        phi_x, phi_y = phi_general(x, coeffs), phi_general(y, coeffs)
    chi_y = y_bounds.chi_total
    lines = [
        _line(stage, "chi(X) = chi(Y) - chi(G)", "=", x.chi_total, chi_y - g.chi_G),
        _line(stage, "chi(Y) - chi(G) >= phi(Y) - chi(G)", ">=", chi_y - g.chi_G, phi_y - g.chi_G),
        _line(stage, "phi(Y) - chi(G) >= phi(X)", ">=", phi_y - g.chi_G, phi_x),
    ]
    if g.haken:
        lines.append(_line(stage, "Haken cut: phi(Y) - chi(G) = phi(X)", "=", phi_y - g.chi_G, phi_x))
    return lines


def verify_induction_chain(h: Hierarchy) -> ChainReport:
    """Check every stage of a hierarchy and the terminal 4-cells.

    Inconsistencies become failing report lines, never exceptions.

    Args:
        h: Hierarchy of (summary, cut) stages and terminal cells

    Returns:
        ChainReport: evaluated sides of every relation
    """
    lines: List[ChainLine] = []
    last_cut: Optional[IntervalSummary] = None
    for i, (x, g) in enumerate(h.stages):
        name = f"stage {i}" + (f" ({x.label})" if x.label else "")
        if last_cut is not None:
            admitted = last_cut.admits(x)
            lines.append(_line(name, "previous cut admits summary", "=", int(admitted), 1))
        lines.extend(evaluate_chain(x, g, stage=name))
        last_cut = cut(x, g)

    for j, cell in enumerate(h.terminal):
        name = f"terminal {j}" + (f" ({cell.label})" if cell.label else "")
        lines.append(_line(name, "phi <= 1", "<=", phi(cell), 1))
        lines.append(_line(name, "chi = 1", "=", cell.chi_total, 1))

    if last_cut is not None and h.terminal:
        chi_sum = sum(cell.chi_total for cell in h.terminal)
        f0_sum = sum(cell.f[0] for cell in h.terminal)
        chiF_sum = tuple(sum(cell.chiF[k] for cell in h.terminal) for k in range(4))
        agrees = (last_cut.chi_total, last_cut.f0, last_cut.chiF) == (chi_sum, f0_sum, chiF_sum)
        lines.append(_line("final cut", "exact fields match terminal cells", "=", int(agrees), 1))
        lines.append(_line("final cut", "phi(Y) = sum of phi(cells)", "=", phi(last_cut), sum(phi(c) for c in h.terminal)))

    report = ChainReport(tuple(lines))
    logger.info("induction chain: %d lines, all hold: %s", len(lines), report.all_hold)
    return report


def sample_summary(rng: np.random.Generator, haken: bool = True) -> ManifoldSummary:
    """A random summary satisfying every ManifoldSummary invariant, with nonempty boundary."""
    f0 = int(rng.integers(0, 25))
    chiF1 = 2 * f0 if haken else int(rng.integers(0, 50))
    chiF2 = int(rng.integers(-12, 30))
    chiF3 = f0 - chiF1 + chiF2
    f = (f0, int(rng.integers(0, 50)), int(rng.integers(0, 40)), int(rng.integers(1, 20)))
    return ManifoldSummary(
        chi_total=int(rng.integers(-6, 7)),
        f=f,
        chiF=(f0, chiF1, chiF2, chiF3),
        b0_boundary=int(rng.integers(1, 4)),
        b1_boundary=int(rng.integers(0, 6)),
        label="sample",
        haken=haken,
    )


def sample_cut(rng: np.random.Generator, haken: bool = False) -> CutData:
    """A random connected cut datum satisfying every CutData invariant."""
    if haken:
        m = int(rng.integers(0, 8))
        f0, chiF1 = 2 * m, 3 * m
    else:
        f0, chiF1 = int(rng.integers(0, 16)), int(rng.integers(0, 24))
    chiF2 = int(rng.integers(-8, 16))
    if (f0 - chiF1 + chiF2) % 2:
        chiF2 += 1
    chi_boundary = f0 - chiF1 + chiF2
    return CutData(
        f0_G=f0,
        chiF_G=(f0, chiF1, chiF2),
        chi_G=chi_boundary // 2,
        chi_boundary_G=chi_boundary,
        b0_boundary_G=int(rng.integers(1, 3)),
        f1_G=int(rng.integers(0, 20)),
        f2_G=int(rng.integers(0, 12)),
        haken=haken,
        label="sample",
    )
