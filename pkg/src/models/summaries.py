"""Numerical summaries of Haken 4-manifolds and cutting hypersurfaces."""

from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

from errors import PreconditionViolation, StructuralError, UnsupportedCutError


def _alternating(values) -> int:
    return sum((-1) ** k * v for k, v in enumerate(values))


class Interval(NamedTuple):
    """Closed integer interval [lo, hi]."""

    lo: int
    hi: int

    @classmethod
    def point(cls, value: int) -> "Interval":
        return cls(value, value)

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, value) -> bool:
        return self.lo <= value <= self.hi


@dataclass(frozen=True)
class ManifoldSummary:
    """Boundary data of a Haken 4-manifold.

    f and chiF run over dimensions 0..3 of the boundary complex. b2 and b3 of
    the boundary are not stored: b2 = b1 and b3 = b0 for a closed 3-manifold.
    """

    chi_total: int
    f: Tuple[int, int, int, int] = (0, 0, 0, 0)
    chiF: Tuple[int, int, int, int] = (0, 0, 0, 0)
    b0_boundary: int = 0
    b1_boundary: int = 0
    label: str = ""
    haken: bool = True

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(int(v) for v in self.f))
        object.__setattr__(self, "chiF", tuple(int(v) for v in self.chiF))
        if len(self.f) != 4 or len(self.chiF) != 4:
            raise StructuralError.from_config("summary_invariant", label=self.label, invariant="four face dimensions")
        if any(v < 0 for v in self.f) or self.b0_boundary < 0 or self.b1_boundary < 0:
            raise StructuralError.from_config("negative_count", values=list(self.f))
        if self.chiF[0] != self.f[0]:
            raise PreconditionViolation.from_config("summary_invariant", label=self.label, invariant="chi(F0) = f0")
        if _alternating(self.chiF) != 0:
            raise PreconditionViolation.from_config(
                "summary_invariant", label=self.label, invariant="alternating sum of chi(Fk) = 0"
            )
        if self.haken and 2 * self.f[0] != self.chiF[1]:
            raise PreconditionViolation.from_config("summary_invariant", label=self.label, invariant="2 f0 = chi(F1)")
        if self.closed and (self.b0_boundary or self.b1_boundary or any(self.chiF)):
            raise PreconditionViolation.from_config(
                "summary_invariant", label=self.label, invariant="empty boundary carries no boundary data"
            )

    @property
    def closed(self) -> bool:
        """True when the boundary pattern has no faces at all."""
        return not any(self.f)

    @property
    def betti_boundary(self) -> Tuple[int, int, int, int]:
        return (self.b0_boundary, self.b1_boundary, self.b1_boundary, self.b0_boundary)


@dataclass(frozen=True)
class CutData:
    """Numerical data of a connected cutting hypersurface G in a Haken 4-manifold.

    chiF_G holds chi(F0 G), chi(F1 G), chi(F2 G) for the boundary pattern
    induced on the boundary surface of G.
    """

    f0_G: int = 0
    chiF_G: Tuple[int, int, int] = (0, 0, 0)
    chi_G: int = 0
    chi_boundary_G: int = 0
    b0_boundary_G: int = 0
    f1_G: int = 0
    f2_G: int = 0
    connected: bool = True
    separating_hint: Optional[bool] = None
    haken: bool = False
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "chiF_G", tuple(int(v) for v in self.chiF_G))
        if not self.connected:
            raise UnsupportedCutError.from_config("unsupported_cut")
        if len(self.chiF_G) != 3:
            raise StructuralError.from_config("cut_invariant", invariant="three face dimensions")
        if min(self.f0_G, self.f1_G, self.f2_G, self.b0_boundary_G) < 0:
            raise StructuralError.from_config("negative_count", values=[self.f0_G, self.f1_G, self.f2_G])
        if self.chiF_G[0] != self.f0_G:
            raise PreconditionViolation.from_config("cut_invariant", invariant="chi(F0 G) = f0(G)")
        if 2 * self.chi_G != self.chi_boundary_G:
            raise PreconditionViolation.from_config("cut_invariant", invariant="chi(G) = chi(dG) / 2")
        if _alternating(self.chiF_G) != self.chi_boundary_G:
            raise PreconditionViolation.from_config(
                "cut_invariant", invariant="chi(dG) = chi(F0 G) - chi(F1 G) + chi(F2 G)"
            )
        if self.haken and 3 * self.f0_G != 2 * self.chiF_G[1]:
            raise PreconditionViolation.from_config("cut_invariant", invariant="3 f0(G) = 2 chi(F1 G)")


@dataclass(frozen=True)
class IntervalSummary:
    """Summary of a cut-open manifold; face counts that the cut does not pin down are intervals."""

    chi_total: int
    f0: int
    f1: Interval
    f2: Interval
    f3: Interval
    chiF: Tuple[int, int, int, int]
    b0_boundary: Interval
    label: str = ""

    def __post_init__(self):
        for interval in (self.f1, self.f2, self.f3, self.b0_boundary):
            if interval.lo > interval.hi:
                raise StructuralError.from_config("summary_invariant", label=self.label, invariant="lo <= hi")

    @property
    def f_intervals(self) -> Tuple[Interval, Interval, Interval, Interval]:
        return (Interval.point(self.f0), self.f1, self.f2, self.f3)

    def admits(self, summary: ManifoldSummary) -> bool:
        """True when an exact summary agrees on exact fields and lies inside the intervals."""
        return (
            summary.chi_total == self.chi_total
            and summary.chiF == self.chiF
            and all(value in interval for value, interval in zip(summary.f, self.f_intervals))
            and summary.b0_boundary in self.b0_boundary
        )

    def resolve(
        self,
        f1: Optional[int] = None,
        f2: Optional[int] = None,
        f3: Optional[int] = None,
        b0_boundary: Optional[int] = None,
        b1_boundary: int = 0,
        label: Optional[str] = None,
        haken: bool = True,
    ) -> ManifoldSummary:
        """Pin the interval fields (lower ends by default) into an exact summary."""
        values = [
            self.f1.lo if f1 is None else f1,
            self.f2.lo if f2 is None else f2,
            self.f3.lo if f3 is None else f3,
        ]
        b0 = self.b0_boundary.lo if b0_boundary is None else b0_boundary
        for value, interval in zip(values + [b0], (self.f1, self.f2, self.f3, self.b0_boundary)):
            if value not in interval:
                raise PreconditionViolation.from_config(
                    "out_of_range", name="resolved value", constraint=f"{interval.lo}..{interval.hi}", value=value
                )
        return ManifoldSummary(
            chi_total=self.chi_total,
            f=(self.f0, *values),
            chiF=self.chiF,
            b0_boundary=b0,
            b1_boundary=b1_boundary,
            label=label if label is not None else self.label,
            haken=haken,
        )


@dataclass(frozen=True)
class Hierarchy:
    """Cut stages of a hierarchy, ending in Haken 4-cell summaries.

    An empty `terminal` marks a hierarchy truncated at summary level.
    """

    stages: Tuple[Tuple[ManifoldSummary, CutData], ...] = ()
    terminal: Tuple[ManifoldSummary, ...] = ()

    @property
    def truncated(self) -> bool:
        return not self.terminal
