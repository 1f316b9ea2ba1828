"""Verification suite nodes for the verify-all workflow."""

import logging
from fractions import Fraction
from functools import wraps
from math import comb
from typing import Callable, Dict, Iterator, List, Tuple

import numpy as np

from config_loader import config
from errors import HakencxError
from models.complexes import RegularCellComplex, SimplicialComplex
from models.reports import Verdict
from models.state import VerificationState
from models.summaries import Hierarchy
from services import catalog
from services.coefficients import generate_constraints, lemma_system, solve_unique
from services.complex_core import euler_characteristic, f_vector, is_simple, validate_boundary_pattern
from services.duality import are_isomorphic, barycentric_subdivision, dual_cell_complex, dual_simplicial
from services.flagness import is_flag, is_flag_by_cliques
from services.haken_checks import check_haken_cell, check_usefulness_combinatorics
from services.phi_cd import (
    PhiCoefficients,
    charney_davis,
    charney_davis_from_counts,
    haken_4cell_bound,
    phi,
    requirement_report,
)
from services.serialization import to_jsonable
from services.surgery import (
    cut,
    evaluate_chain,
    phi_after_cut,
    sample_cut,
    sample_summary,
    verify_induction_chain,
)

logger = logging.getLogger(__name__)


def _verdict(name: str, passed: bool, **details) -> Verdict:
    # details are stored JSON-ready so the checkpointer can serialize them
    return Verdict(name, bool(passed), to_jsonable(details))


def _suite(name: str) -> Callable:
    """Wrap a generator of verdicts into a node; an unexpected error becomes a failing verdict."""

    def decorate(checks: Callable[[VerificationState], Iterator[Verdict]]):
        @wraps(checks)
        def node(state: VerificationState) -> Dict:
            logger.info("suite %s: start", name)
            results: List[Verdict] = []
            try:
                results.extend(checks(state))
            except HakencxError as e:
                logger.error("suite %s aborted: %s", name, e)
                results.append(_verdict(f"{name}/aborted", False, error=str(e), kind=e.kind))
            passed = sum(verdict.passed for verdict in results)
            logger.info("suite %s: %d/%d passed", name, passed, len(results))
            return {"results": results, "messages": [f"{name}: {passed}/{len(results)} passed"]}

        return node

    return decorate


def _entries(state: VerificationState):
    names = (state.get("catalog") or {}).get("names") or catalog.entry_names()
    return [catalog.get_entry(name) for name in names]


def _rng(offset: int = 0) -> np.random.Generator:
    seed = int(config.get("verification.random_seed", 0))
    return np.random.default_rng(seed + offset)


def _simple_cell_complexes(state: VerificationState) -> List[Tuple[str, RegularCellComplex]]:
    found = []
    for entry in _entries(state):
        complex_ = entry.complex
        if isinstance(complex_, RegularCellComplex) and _is_closed_simple(complex_):
            found.append((entry.name, complex_))
    return found


def _is_closed_simple(complex_: RegularCellComplex) -> bool:
    return bool(complex_.cells) and is_simple(complex_, complex_.top_dim)


def _spheres(state: VerificationState) -> List[Tuple[str, SimplicialComplex]]:
    return [(entry.name, entry.complex) for entry in _entries(state) if isinstance(entry.complex, SimplicialComplex)]


def load_catalog(state: VerificationState) -> Dict:
    """Resolve the catalog entries the suites run over.

    Args:
        state: Current workflow state

    Returns:
        Dict: Updated state with the sorted entry names
    """
    names = catalog.entry_names()
    logger.info("catalog: %d entries", len(names))
    return {
        "catalog": {"names": names, "cell120": config.is_120_cell_enabled()},
        "messages": [f"catalog: {len(names)} entries"],
    }


@_suite("complexes")
def check_complexes(state: VerificationState) -> Iterator[Verdict]:
    hypercube = f_vector(catalog.hypercube_boundary(4)).counts
    yield _verdict("complexes/hypercube_f_vector", hypercube == (16, 32, 24, 8), f=hypercube)

    for entry in _entries(state):
        complex_ = entry.complex
        if complex_ is None:
            continue
        counts = f_vector(complex_)
        direct = sum((-1) ** k * c for k, c in enumerate(counts.chi_sums))
        yield _verdict(
            f"complexes/euler/{entry.name}",
            euler_characteristic(complex_) == direct,
            chi=euler_characteristic(complex_),
            f=counts.counts,
        )
        if isinstance(complex_, SimplicialComplex):
            as_cells = complex_.to_cell_complex()
            yield _verdict(
                f"complexes/simplicial_as_cells/{entry.name}",
                f_vector(as_cells).counts == counts.counts,
                f=counts.counts,
            )
        elif "haken_cell" in entry.tags:
            report = validate_boundary_pattern(complex_)
            yield _verdict(
                f"complexes/boundary_pattern/{entry.name}",
                report.passed,
                checked=report.checked,
                failures=[entry_.detail for entry_ in report.failures],
            )


@_suite("duality")
def check_duality(state: VerificationState) -> Iterator[Verdict]:
    for name, complex_ in _simple_cell_complexes(state):
        n = complex_.top_dim
        dual = dual_simplicial(complex_, n)
        reversed_counts = f_vector(complex_).dual().counts
        yield _verdict(
            f"duality/f_vector_reversal/{name}",
            f_vector(dual).counts == reversed_counts,
            dual=f_vector(dual).counts,
            expected=reversed_counts,
        )
        yield _verdict(f"duality/double_dual/{name}", are_isomorphic(dual_cell_complex(dual, n), complex_))

    for name, sphere in _spheres(state):
        n = sphere.dimension
        yield _verdict(f"duality/double_dual/{name}", are_isomorphic(dual_simplicial(dual_cell_complex(sphere, n), n), sphere))

    for entry in _entries(state):
        complex_ = entry.complex
        if complex_ is None or "slow" in entry.tags:
            continue
        subdivided = barycentric_subdivision(complex_).simplices
        yield _verdict(
            f"duality/subdivision_chi/{entry.name}",
            euler_characteristic(subdivided) == euler_characteristic(complex_),
            chi=euler_characteristic(complex_),
        )


def _random_subcomplexes(duals: List[Tuple[str, SimplicialComplex]], count: int, rng: np.random.Generator):
    for i in range(count):
        name, base = duals[int(rng.integers(len(duals)))]
        facets = base.sorted_facets()
        keep = rng.random(len(facets)) < rng.uniform(0.3, 0.9)
        if not keep.any():
            keep[int(rng.integers(len(facets)))] = True
        chosen = [facet for facet, kept in zip(facets, keep) if kept]
        yield f"{name}#{i}", SimplicialComplex.compacted(chosen)


@_suite("flagness")
def check_flagness(state: VerificationState) -> Iterator[Verdict]:
    limit = int(config.get("verification.flag_oracle_max_vertices", 12))
    duals = [(name, dual_simplicial(c, c.top_dim)) for name, c in _simple_cell_complexes(state)]
    duals += _spheres(state)
    for name, complex_ in duals:
        if complex_.vertex_count <= limit:
            yield _verdict(
                f"flagness/oracle/{name}",
                is_flag(complex_) == is_flag_by_cliques(complex_),
                flag=is_flag(complex_),
            )

    small = [(name, complex_) for name, complex_ in duals if complex_.vertex_count <= limit]
    count = int(config.get("verification.flag_random_subcomplexes", 100))
    disagreements = []
    flags = 0
    for name, sub in _random_subcomplexes(small, count, _rng(1)):
        verdict = is_flag(sub)
        flags += verdict
        if verdict != is_flag_by_cliques(sub):
            disagreements.append(name)
    yield _verdict(
        "flagness/oracle/random_subcomplexes",
        not disagreements,
        samples=count,
        flag=flags,
        disagreements=disagreements,
    )

    known = {"cross4": True, "icosahedral_sphere": True, "simplex4": False, "simplex3": False}
    for name, complex_ in _spheres(state):
        if name in known:
            yield _verdict(f"flagness/known/{name}", is_flag(complex_) == known[name], flag=is_flag(complex_))


@_suite("haken")
def check_haken(state: VerificationState) -> Iterator[Verdict]:
    for entry in _entries(state):
        if entry.expected_haken is None or entry.n is None:
            continue
        certificate = check_haken_cell(entry.complex, entry.n)
        yield _verdict(
            f"haken/certificate/{entry.name}",
            certificate.verdict == entry.expected_haken,
            expected=entry.expected_haken,
            verdict=certificate.verdict,
            reasons=certificate.reasons,
        )
        if certificate.verdict and entry.n in (3, 4):
            yield _verdict(f"haken/dual_flag/{entry.name}", certificate.dual_flag)
        if entry.expected_haken and entry.complex.top_dim >= 2:
            usefulness = check_usefulness_combinatorics(entry.complex)
            yield _verdict(
                f"haken/usefulness/{entry.name}",
                usefulness.passed,
                passed=usefulness.passed,
                checked=usefulness.checked,
            )


@_suite("phi")
def check_phi(state: VerificationState) -> Iterator[Verdict]:
    hypercube = catalog.hypercube_boundary(4)
    yield _verdict("phi/hypercube", phi(hypercube) == 1, phi=phi(hypercube))
    value, within = haken_4cell_bound(16, 8)
    yield _verdict("phi/hypercube_bound", within and value == 1, phi=value)

    for entry in catalog.summary_entries():
        is_cell = entry.kind == "both"
        for verdict in requirement_report(entry.summary, is_cell=is_cell):
            yield _verdict(f"phi/requirement/{verdict.name}/{entry.name}", verdict.passed, **verdict.details)

    cross4 = charney_davis(catalog.cross_polytope_boundary(4))
    yield _verdict(
        "phi/charney_davis/cross4",
        cross4.kappa == 0 and cross4.inequality_5f0 and cross4.dual_inequality,
        kappa=cross4.kappa,
        f_star=cross4.f_star.counts,
    )
    for name, sphere in _spheres(state):
        if sphere.dimension == 3 and sphere.is_pure():
            report = charney_davis(sphere)
            yield _verdict(f"phi/charney_davis/{name}", report.equivalence_holds, kappa=report.kappa, flag=report.flag)

    rng = _rng(2)
    pairs = int(config.get("verification.cd_random_pairs", 200))
    max_f0 = int(config.get("verification.cd_max_f0", 60))
    broken = []
    for _ in range(pairs):
        f0 = int(rng.integers(5, max_f0 + 1))
        f1 = int(rng.integers(f0, comb(f0, 2) + 1))
        if not charney_davis_from_counts(f0, f1).equivalence_holds:
            broken.append((f0, f1))
    yield _verdict("phi/charney_davis/random_pairs", not broken, samples=pairs, broken=broken)


@_suite("coefficients")
def check_coefficients(state: VerificationState) -> Iterator[Verdict]:
    system = generate_constraints()
    solution = solve_unique(system)
    canonical = PhiCoefficients.CANONICAL.as_mapping()
    yield _verdict(
        "coefficients/unique_solution",
        solution.unique and dict(solution.solution) == canonical,
        solution=solution.solution,
        unique=solution.unique,
    )
    yield _verdict("coefficients/canonical_satisfies", system.satisfied_by(canonical), constraints=len(system))

    relaxed = solve_unique(system.drop("hypercube"))
    yield _verdict("coefficients/without_hypercube_not_unique", not relaxed.unique, solution=relaxed.solution)

    lemma = solve_unique(lemma_system())
    yield _verdict(
        "coefficients/lemma_system",
        lemma.unique and lemma.solution.get("r0") == Fraction(-1, 16) and lemma.solution.get("r1") == 0,
        solution=lemma.solution,
    )


def _example_chains() -> Iterator[Tuple[str, object, object]]:
    yield "G_closed_x_S1", catalog.product_summary("G_closed_x_S1"), catalog.cut_data("closed_haken_3mfld")
    for g in config.get("verification.chain_genera", [1, 2, 3]):
        yield (
            f"G_Tg_boundary_x_S1_g{g}",
            catalog.product_summary("G_Tg_boundary_x_S1", g),
            catalog.cut_data("torus_boundary_3mfld", g),
        )
        yield f"Tg_x_I2_g{g}", catalog.product_summary("Tg_x_I2", g), catalog.cut_data("S1_x_I2")


@_suite("surgery")
def check_surgery(state: VerificationState) -> Iterator[Verdict]:
    rng = _rng(3)
    pairs = int(config.get("verification.cut_random_pairs", 500))
    law_broken, cancellation_broken, haken_cuts = [], [], 0
    for i in range(pairs):
        x = sample_summary(rng)
        g = sample_cut(rng, haken=bool(rng.integers(2)))
        y = cut(x, g)
        if phi_after_cut(x, g) != phi(y):
            law_broken.append(i)
        if g.haken:
            haken_cuts += 1
            if phi(y) - g.chi_G != phi(x):
                cancellation_broken.append(i)
    yield _verdict("surgery/transformation_law", not law_broken, samples=pairs, broken=law_broken)
    yield _verdict(
        "surgery/haken_cancellation", not cancellation_broken, samples=haken_cuts, broken=cancellation_broken
    )

    for name, x, g in _example_chains():
        for coeffs, suffix in ((None, ""), (PhiCoefficients.CANONICAL, "/general_form")):
            lines = evaluate_chain(x, g, coeffs=coeffs, stage=name)
            yield _verdict(
                f"surgery/chain/{name}{suffix}",
                all(line.holds for line in lines),
                lines=[f"{line.relation}: {line.lhs} vs {line.rhs}" for line in lines],
            )

    cell = catalog.get_entry("I4").summary
    hierarchy = Hierarchy(((cell, catalog.cut_data("haken_3cell_cube")),), (cell, cell))
    report = verify_induction_chain(hierarchy)
    yield _verdict(
        "surgery/hierarchy/I4_halved",
        report.all_hold,
        failing=[f"{line.stage}: {line.relation}" for line in report.lines if not line.holds],
    )
