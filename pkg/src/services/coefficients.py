"""Exact rational constraint system for the twelve phi coefficients and its solver.

Equalities are removed by Gaussian elimination; the remaining inequalities
are projected variable by variable with Fourier-Motzkin elimination.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from config_loader import config
from errors import InfeasibleSystemError, PreconditionViolation
from models.summaries import ManifoldSummary
from services.catalog import cell_summary, hypercube_boundary, platonic
from services.complex_core import f_vector
from services.phi_cd import COEFFICIENT_NAMES

logger = logging.getLogger(__name__)

RELATIONS = ("=", "<=", ">=")


def _format_term(coefficient: Fraction, name: str, first: bool) -> str:
    sign = "-" if coefficient < 0 else "+"
    magnitude = abs(coefficient)
    body = name if magnitude == 1 else f"{magnitude} {name}"
    if first:
        return body if sign == "+" else f"-{body}"
    return f"{sign} {body}"


@dataclass(frozen=True)
class LinearConstraint:
    """sum coeffs[name] * name  (relation)  rhs, tagged with the example that produced it."""

    coeffs: Mapping[str, Fraction]
    relation: str
    rhs: Fraction
    provenance: str = ""

    def __post_init__(self):
        cleaned = {name: Fraction(value) for name, value in self.coeffs.items() if Fraction(value) != 0}
        if not cleaned:
            raise PreconditionViolation(f"constraint {self.provenance!r} has no nonzero coefficient")
        if self.relation not in RELATIONS:
            raise PreconditionViolation(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "coeffs", dict(sorted(cleaned.items(), key=lambda item: _name_key(item[0]))))
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    def evaluate(self, values: Mapping[str, Fraction]) -> Fraction:
        return sum((c * Fraction(values.get(name, 0)) for name, c in self.coeffs.items()), Fraction(0))

    def is_satisfied(self, values: Mapping[str, Fraction]) -> bool:
        lhs = self.evaluate(values)
        if self.relation == "=":
            return lhs == self.rhs
        if self.relation == "<=":
            return lhs <= self.rhs
        return lhs >= self.rhs

    def normalized(self) -> "LinearConstraint":
        """Scaled so the leading coefficient is +1 or -1; the relation is unchanged."""
        scale = abs(next(iter(self.coeffs.values())))
        return LinearConstraint(
            {name: c / scale for name, c in self.coeffs.items()}, self.relation, self.rhs / scale, self.provenance
        )

    def __str__(self) -> str:
        terms = [_format_term(c, name, i == 0) for i, (name, c) in enumerate(self.coeffs.items())]
        return f"{' '.join(terms)} {self.relation} {self.rhs}"


def _name_key(name: str) -> Tuple[int, str]:
    return (COEFFICIENT_NAMES.index(name), name) if name in COEFFICIENT_NAMES else (len(COEFFICIENT_NAMES), name)


@dataclass(frozen=True)
class ConstraintSystem:
    """Constraints over an ordered list of variable names."""

    constraints: Tuple[LinearConstraint, ...]
    variables: Tuple[str, ...] = field(default=COEFFICIENT_NAMES)

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        object.__setattr__(self, "variables", tuple(self.variables))
        for constraint in self.constraints:
            missing = set(constraint.coeffs) - set(self.variables)
            if missing:
                raise PreconditionViolation(
                    f"constraint {constraint.provenance!r} uses unknown variables {sorted(missing)}"
                )

    def __len__(self) -> int:
        return len(self.constraints)

    def drop(self, provenance_prefix: str) -> "ConstraintSystem":
        """Copy without the constraints whose provenance starts with the prefix."""
        kept = tuple(c for c in self.constraints if not c.provenance.startswith(provenance_prefix))
        if len(kept) == len(self.constraints):
            raise PreconditionViolation(f"no constraint has provenance starting with {provenance_prefix!r}")
        return ConstraintSystem(kept, self.variables)

    def satisfied_by(self, values: Mapping[str, Fraction]) -> bool:
        return all(c.is_satisfied(values) for c in self.constraints)

    def violations(self, values: Mapping[str, Fraction]) -> List[LinearConstraint]:
        return [c for c in self.constraints if not c.is_satisfied(values)]


class Solution(NamedTuple):
    """Solved point and whether the feasible set is exactly that point."""

    solution: Dict[str, Fraction]
    unique: bool


def _row(coeffs: Dict[str, Fraction], relation: str, rhs, provenance: str) -> LinearConstraint:
    return LinearConstraint(coeffs, relation, Fraction(rhs), provenance)


def _general_row(summary: ManifoldSummary, relation: str, provenance: str) -> LinearConstraint:
    """phi_general(summary) (relation) chi(summary) as a row in the twelve coefficients."""
    coeffs: Dict[str, Fraction] = {}
    for k in range(4):
        coeffs[f"r{k}"] = Fraction(summary.f[k])
        coeffs[f"s{k}"] = Fraction(summary.chiF[k])
        coeffs[f"t{k}"] = Fraction(summary.betti_boundary[k])
    return _row(coeffs, relation, summary.chi_total, provenance)


def _check_samples(genus_samples: Sequence[int], b1_samples: Sequence[int]) -> None:
    if not genus_samples or not b1_samples:
        raise PreconditionViolation.from_config("insufficient_samples", reason="sample lists must be nonempty")
    if any(g < 1 for g in genus_samples) or any(b < 0 for b in b1_samples):
        raise PreconditionViolation.from_config("insufficient_samples", reason="genus >= 1 and b1 >= 0 required")
    if 1 not in genus_samples or max(genus_samples) < 2:
        raise PreconditionViolation.from_config("insufficient_samples", reason="genus samples need 1 and some g >= 2")
    if len(set(b1_samples)) < 2:
        raise PreconditionViolation.from_config("insufficient_samples", reason="b1 samples need two distinct values")


def generate_constraints(
    genus_samples: Optional[Sequence[int]] = None, b1_samples: Optional[Sequence[int]] = None
) -> ConstraintSystem:
    """Instantiate every constraint template over the sampled genera and first Betti numbers.

    Args:
        genus_samples: Genera g >= 1 of the torus boundaries; configured default
        b1_samples: First Betti numbers of closed Haken 3-manifolds; configured default

    Returns:
        ConstraintSystem: normalizations plus one row per sample and template
    """
    settings = config.get_coefficients_config()
    genus_samples = sorted(set(genus_samples if genus_samples is not None else settings.get("genus_samples", [1, 2])))
    b1_samples = sorted(set(b1_samples if b1_samples is not None else settings.get("b1_samples", [0, 1])))
    _check_samples(genus_samples, b1_samples)

    rows: List[LinearConstraint] = [
        _row({"t2": 1}, "=", 0, "normalization t2 = 0 (b2 = b1 on the boundary)"),
        _row({"t3": 1}, "=", 0, "normalization t3 = 0 (b3 = b0 on the boundary)"),
    ]
    rows.extend(_row({f"s{k}": 1}, "=", 0, f"normalization s{k} = 0 (shift by chi of the boundary)") for k in range(3))

    for b in b1_samples:
        rows.append(_row({"r3": 1, "t0": 1, "t1": b}, "=", 0, f"G3 x S1 closed, b1={b}"))

    for g in genus_samples:
        rows.append(
            _row({"r2": 2, "r3": 2, "s3": 4 * (1 - g)}, "=", 1 - g, f"G3 x S1 with torus boundary, g={g}")
        )
    for g in genus_samples:
        rows.append(
            _row({"r2": 4, "r3": 4, "s3": 4 * (2 - 2 * g), "t0": 1}, "<=", 2 - 2 * g, f"Tg x I2, g={g}")
        )

    rows.append(_row({"r1": 8, "r2": 9}, "<=", 0, "Tg x I2 cut along S1 x I2, upper"))
    rows.append(_row({"r1": 8, "r2": 8}, ">=", 0, "Tg x I2 cut along S1 x I2, lower"))

    for g in genus_samples:
        rows.append(
            _row({"r2": 2, "s3": 2 - 2 * g}, ">=", Fraction(1 - g, 2), f"cut along torus-boundary G3, g={g}")
        )

    for name in ("cube", "dodecahedron"):
        f0, _, f2 = f_vector(platonic(name)).counts
        rows.append(_row({"r0": 2 * f0, "r1": 3 * f0, "s3": f2 + 2}, ">=", 1, f"Haken 3-cell cut, {name}"))

    rows.append(_general_row(cell_summary(hypercube_boundary(4), "I4"), "<=", "hypercube I4"))

    system = ConstraintSystem(tuple(rows))
    logger.debug("generated %d constraints for genera %s and b1 %s", len(system), genus_samples, b1_samples)
    return system


def lemma_system() -> ConstraintSystem:
    """The three inequalities over (r0, r1) that pin r0 = -1/16, r1 = 0."""
    return ConstraintSystem(
        (
            _row({"r0": 1, "r1": 2}, "<=", Fraction(-1, 16), "hypercube"),
            _row({"r0": 2, "r1": 3}, ">=", Fraction(-1, 8), "Haken 3-cell"),
            _row({"r1": 1}, ">=", 0, "cut along S1 x I2"),
        ),
        variables=("r0", "r1"),
    )


class _Infeasible(Exception):
    pass


# An inequality row a.x <= b over the free variables.
Row = Tuple[Tuple[Fraction, ...], Fraction]


def _normalize_row(row: Row) -> Row:
    coeffs, bound = row
    scale = next((abs(c) for c in coeffs if c != 0), None)
    if scale is None:
        return row
    return tuple(c / scale for c in coeffs), bound / scale


def _clean(rows: List[Row]) -> List[Row]:
    """Drop trivial rows (raising on 0 <= negative) and duplicates, keeping the tightest bound."""
    best: Dict[Tuple[Fraction, ...], Fraction] = {}
    for row in rows:
        coeffs, bound = _normalize_row(row)
        if not any(coeffs):
            if bound < 0:
                raise _Infeasible()
            continue
        if coeffs not in best or bound < best[coeffs]:
            best[coeffs] = bound
    return sorted(best.items())


def _eliminate(rows: List[Row], j: int) -> List[Row]:
    upper = [r for r in rows if r[0][j] > 0]
    lower = [r for r in rows if r[0][j] < 0]
    result = [r for r in rows if r[0][j] == 0]
    for a_p, b_p in upper:
        for a_q, b_q in lower:
            w_p, w_q = -a_q[j], a_p[j]
            coeffs = tuple(w_p * x + w_q * y for x, y in zip(a_p, a_q))
            result.append((coeffs, w_p * b_p + w_q * b_q))
    return _clean(result)


def _bounds(rows: List[Row], j: int) -> Tuple[Optional[Fraction], Optional[Fraction]]:
    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None
    for coeffs, bound in rows:
        a = coeffs[j]
        if a > 0:
            hi = bound / a if hi is None else min(hi, bound / a)
        elif a < 0:
            lo = bound / a if lo is None else max(lo, bound / a)
    if lo is not None and hi is not None and lo > hi:
        raise _Infeasible()
    return lo, hi


def _gauss(system: ConstraintSystem):
    """Reduced row echelon form of the equalities: pivot -> (coefficients over variables, rhs)."""
    variables = system.variables
    rows = [
        [c.coeffs.get(name, Fraction(0)) for name in variables] + [c.rhs]
        for c in system.constraints
        if c.relation == "="
    ]
    pivots: Dict[int, List[Fraction]] = {}
    r = 0
    for col in range(len(variables)):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        lead = rows[r][col]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots[col] = rows[r]
        r += 1
    for row in rows[r:]:
        if row[-1] != 0:
            raise _Infeasible()
    return pivots


def _solve(system: ConstraintSystem) -> Solution:
    variables = system.variables
    pivots = _gauss(system)
    free = [j for j in range(len(variables)) if j not in pivots]
    logger.debug("eliminated %d equalities, %d free variables", len(pivots), len(free))

    def substitute(coeffs: Mapping[str, Fraction], rhs: Fraction) -> Row:
        # pivot x_p = rhs_p - sum over free of row_p[f] x_f
        dense = [coeffs.get(name, Fraction(0)) for name in variables]
        bound = rhs
        out = [Fraction(0)] * len(free)
        for j, a in enumerate(dense):
            if a == 0:
                continue
            if j in pivots:
                row = pivots[j]
                bound -= a * row[-1]
                for k, f in enumerate(free):
                    out[k] -= a * row[f]
            else:
                out[free.index(j)] += a
        return tuple(out), bound

    rows: List[Row] = []
    for c in system.constraints:
        if c.relation == "=":
            continue
        coeffs, bound = substitute(c.coeffs, c.rhs)
        if c.relation == ">=":
            coeffs, bound = tuple(-x for x in coeffs), -bound
        rows.append((coeffs, bound))
    rows = _clean(rows)

    unique = True
    chosen: Dict[int, Fraction] = {}
    for position, j in enumerate(free):
        projected = rows
        for other in range(position + 1, len(free)):
            projected = _eliminate(projected, other)
        lo, hi = _bounds(projected, position)
        if lo is None or hi is None or lo != hi:
            unique = False
        value = lo if lo is not None else (hi if hi is not None else Fraction(0))
        chosen[j] = value
        logger.debug("projected %s onto [%s, %s], chose %s", variables[j], lo, hi, value)
        fixed = []
        for coeffs, bound in rows:
            reduced = list(coeffs)
            reduced[position] = Fraction(0)
            fixed.append((tuple(reduced), bound - coeffs[position] * value))
        rows = _clean(fixed)

    solution: Dict[str, Fraction] = {}
    for j, value in chosen.items():
        solution[variables[j]] = value
    for p, row in pivots.items():
        solution[variables[p]] = row[-1] - sum((row[f] * chosen[f] for f in free), Fraction(0))
    ordered = {name: solution[name] for name in variables}
    return Solution(ordered, unique)


def _feasible(system: ConstraintSystem) -> bool:
    try:
        _solve(system)
    except _Infeasible:
        return False
    return True


def irreducible_conflict(system: ConstraintSystem) -> Tuple[LinearConstraint, ...]:
    """Deletion filter: a subset of an infeasible system that becomes feasible when any member is removed."""
    kept = list(system.constraints)
    for constraint in list(kept):
        trial = [c for c in kept if c is not constraint]
        if not _feasible(ConstraintSystem(tuple(trial), system.variables)):
            kept = trial
    return tuple(kept)


def solve_unique(system: ConstraintSystem) -> Solution:
    """Find a point of the feasible set and decide whether it is the only one.

    Args:
        system: Constraint system

    Returns:
        Solution: (solution, unique); the solution satisfies every constraint
    """
    try:
        result = _solve(system)
    except _Infeasible:
        conflicts = irreducible_conflict(system)
        tags = [c.provenance or str(c) for c in conflicts]
        raise InfeasibleSystemError(config.get_error_message("infeasible_system", conflicts=tags), conflicts)
    logger.info("solved %d constraints: unique=%s", len(system), result.unique)
    return result
