"""Exact evaluation of the phi-function, the Charney-Davis quantity and their inequalities.

Everything here is `Fraction` arithmetic: the bounds are tight at the
hypercube, so no float ever enters a verdict.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar, Tuple, Union

import networkx as nx

from errors import IncompleteSummaryError, NotA3SphereError, PreconditionViolation
from models.complexes import FVector, RegularCellComplex, SimplicialComplex
from models.reports import CharneyDavisReport, Verdict
from models.summaries import IntervalSummary, ManifoldSummary
from services.complex_core import euler_characteristic, f_vector
from services.flagness import is_flag

logger = logging.getLogger(__name__)

PhiInput = Union[ManifoldSummary, IntervalSummary, FVector, RegularCellComplex]

COEFFICIENT_NAMES = tuple(f"{family}{k}" for family in "rst" for k in range(4))


def _fractions(values) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    values = tuple(Fraction(v) for v in values)
    if len(values) != 4:
        raise PreconditionViolation(f"expected four coefficients, got {len(values)}")
    return values


@dataclass(frozen=True)
class PhiCoefficients:
    """The twelve coefficients r0..r3, s0..s3, t0..t3 of the general phi form."""

    r: Tuple[Fraction, ...] = (0, 0, 0, 0)
    s: Tuple[Fraction, ...] = (0, 0, 0, 0)
    t: Tuple[Fraction, ...] = (0, 0, 0, 0)

    CANONICAL: ClassVar["PhiCoefficients"]

    def __post_init__(self):
        for family in ("r", "s", "t"):
            object.__setattr__(self, family, _fractions(getattr(self, family)))

    @classmethod
    def from_mapping(cls, values) -> "PhiCoefficients":
        """Build from a name -> value mapping such as {"r0": -1/16, "s3": 1/4}; missing names are 0."""
        unknown = set(values) - set(COEFFICIENT_NAMES)
        if unknown:
            raise PreconditionViolation(f"unknown coefficient names: {sorted(unknown)}")

        def get(name):
            return Fraction(values.get(name, 0))

        return cls(
            r=tuple(get(f"r{k}") for k in range(4)),
            s=tuple(get(f"s{k}") for k in range(4)),
            t=tuple(get(f"t{k}") for k in range(4)),
        )

    def as_mapping(self):
        return dict(zip(COEFFICIENT_NAMES, self.r + self.s + self.t))

    def shifted(self, p) -> "PhiCoefficients":
        """Add (-1)^k p to every s_k; this changes phi by p times chi of the boundary."""
        p = Fraction(p)
        return PhiCoefficients(self.r, tuple(s + (-1) ** k * p for k, s in enumerate(self.s)), self.t)


PhiCoefficients.CANONICAL = PhiCoefficients(r=(Fraction(-1, 16), 0, 0, 0), s=(0, 0, 0, Fraction(1, 4)))


def _f0_and_chi3(data: PhiInput) -> Tuple[int, int]:
    if isinstance(data, RegularCellComplex):
        data = f_vector(data)
    if isinstance(data, (ManifoldSummary, IntervalSummary)):
        f0 = data.f[0] if isinstance(data, ManifoldSummary) else data.f0
        return f0, data.chiF[3]
    if isinstance(data, FVector):
        if len(data) == 0:
            return 0, 0
        if len(data) != 4:
            raise IncompleteSummaryError.from_config(
                "incomplete_summary", label="f-vector", field="3-face Euler characteristics"
            )
        return data[0], data.chi_sums[3]
    raise IncompleteSummaryError.from_config("incomplete_summary", label=type(data).__name__, field="f0 and chi(F3)")


def phi(data: PhiInput) -> Fraction:
    """phi = -f0/16 + (1/4) sum of chi(F3) over the 3-faces.

    Args:
        data: Summary (exact or interval), boundary f-vector or boundary complex

    Returns:
        Fraction: exact value
    """
    f0, chi3 = _f0_and_chi3(data)
    return Fraction(-f0, 16) + Fraction(chi3, 4)


def _exact_f(summary) -> Tuple[int, int, int, int]:
    if isinstance(summary, ManifoldSummary):
        return summary.f
    if isinstance(summary, IntervalSummary):
        inexact = [f"f{k}" for k, interval in enumerate(summary.f_intervals) if not interval.exact]
        if inexact or not summary.b0_boundary.exact:
            raise IncompleteSummaryError.from_config(
                "incomplete_summary", label=summary.label, field=", ".join(inexact or ["b0 of the boundary"])
            )
        return tuple(interval.lo for interval in summary.f_intervals)
    raise IncompleteSummaryError.from_config("incomplete_summary", label=type(summary).__name__, field="summary fields")


def phi_general(summary: Union[ManifoldSummary, IntervalSummary], coeffs: PhiCoefficients) -> Fraction:
    """Evaluate the twelve-term form sum r_k f_k + s_k chi(F^k) + t_k b_k(boundary).

    Args:
        summary: Summary with every field exact
        coeffs: Coefficients to evaluate with

    Returns:
        Fraction: exact value
    """
    f = _exact_f(summary)
    if isinstance(summary, ManifoldSummary):
        betti = summary.betti_boundary
    else:
        b0 = summary.b0_boundary.lo
        betti = (b0, 0, 0, b0)
        if any(coeffs.t[1:3]):
            raise IncompleteSummaryError.from_config("incomplete_summary", label=summary.label, field="b1 of the boundary")
    value = sum(r * fk for r, fk in zip(coeffs.r, f))
    value += sum(s * chi for s, chi in zip(coeffs.s, summary.chiF))
    value += sum(t * b for t, b in zip(coeffs.t, betti))
    return Fraction(value)


def kappa(f_star) -> Fraction:
    """1 - f0/2 + f1/4 - f2/8 + f3/16 for a four-entry f-vector."""
    counts = tuple(f_star)
    if len(counts) != 4:
        raise PreconditionViolation.from_config("out_of_range", name="f-vector length", constraint="4", value=len(counts))
    return sum((Fraction(-1, 2) ** (k + 1) * fk for k, fk in enumerate(counts)), Fraction(1))


def _sphere_failure(sphere: SimplicialComplex):
    if sphere.dimension != 3 or not sphere.is_pure():
        return "not pure of dimension 3"
    if euler_characteristic(sphere) != 0:
        return f"Euler characteristic {euler_characteristic(sphere)}, expected 0"
    triangles = {}
    for facet in sphere.facets:
        for v in facet:
            key = facet - {v}
            triangles[key] = triangles.get(key, 0) + 1
    bad = sorted((sorted(t) for t, count in triangles.items() if count != 2))
    if bad:
        return f"triangle {bad[0]} does not lie in exactly two facets"
    if not nx.is_connected(sphere.skeleton_graph()):
        return "disconnected"
    return None


def _report(counts: Tuple[int, int, int, int], flag) -> CharneyDavisReport:
    f0, f1, f2, f3 = counts
    return CharneyDavisReport(
        kappa=kappa(counts),
        f_star=FVector.of_cells(counts),
        inequality_5f0=f1 >= 5 * f0 - 16,
        # the dual cell complex has f-vector (f3, f2, f1, f0)
        dual_inequality=f3 >= 4 * f0 - 16,
        lower_bound_inequality=f1 >= 4 * f0 - 10,
        flag=flag,
    )


def charney_davis(sphere: SimplicialComplex) -> CharneyDavisReport:
    """Charney-Davis quantity of a simplicial 3-sphere and the inequalities it controls.

    Args:
        sphere: Simplicial complex passing the 3-sphere surrogate

    Returns:
        CharneyDavisReport: kappa and inequality verdicts
    """
    reason = _sphere_failure(sphere)
    if reason is not None:
        raise NotA3SphereError.from_config("not_a_3_sphere", reason=reason)
    counts = f_vector(sphere).counts
    f0, f1, f2, f3 = counts
    if f0 - f1 + f2 - f3 != 0 or 4 * f3 != 2 * f2:
        raise NotA3SphereError.from_config("not_a_3_sphere", reason=f"f-vector {list(counts)} breaks the sphere identities")
    report = _report(counts, is_flag(sphere))
    logger.debug("charney_davis f*=%s kappa=%s", counts, report.kappa)
    return report


def charney_davis_from_counts(f0_star: int, f1_star: int) -> CharneyDavisReport:
    """Report for a 3-sphere known only by f0* and f1*; f2* and f3* follow from the sphere identities."""
    f3_star = f1_star - f0_star
    f2_star = 2 * (f1_star - f0_star)
    if f0_star < 5 or f3_star < 0:
        raise PreconditionViolation.from_config(
            "out_of_range", name="(f0*, f1*)", constraint="f0* >= 5 and f1* >= f0*", value=(f0_star, f1_star)
        )
    return _report((f0_star, f1_star, f2_star, f3_star), None)


def haken_4cell_bound(f0: int, f3: int) -> Tuple[Fraction, bool]:
    """phi of a 4-cell boundary from its vertex and facet counts, and whether it is at most 1."""
    if f0 < 0 or f3 < 0:
        raise PreconditionViolation.from_config("out_of_range", name="f0, f3", constraint=">= 0", value=(f0, f3))
    value = Fraction(-f0, 16) + Fraction(f3, 4)
    return value, value <= 1


def requirement_report(summary: ManifoldSummary, is_cell: bool = False) -> Tuple[Verdict, ...]:
    """Evaluate the phi requirements that concern a single summary.

    Args:
        summary: Exact summary
        is_cell: Whether the summary describes a Haken 4-cell

    Returns:
        Tuple[Verdict, ...]: chi >= phi, phi = 0 on closed manifolds, phi <= 1 on 4-cells
    """
    value = phi(summary)
    verdicts = [
        Verdict("chi_at_least_phi", summary.chi_total >= value, {"chi": summary.chi_total, "phi": value}),
        Verdict(
            "closed_phi_zero",
            value == 0 or not summary.closed,
            {"applicable": summary.closed, "phi": value},
        ),
        Verdict("cell_phi_at_most_one", value <= 1 or not is_cell, {"applicable": is_cell, "phi": value}),
    ]
    return tuple(verdicts)
