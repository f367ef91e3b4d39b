"""Graded ring morphisms into exterior algebras: checks and search.

A candidate embedding assigns to each generator of a presented algebra
a homogeneous multivector of the same degree.  Verification is exact:
relations must map to zero and the fundamental class to a nonzero
element, which by Poincare duality of the source certifies
injectivity.

The search is a semidecision procedure.  Necessary-condition checks
(degree-one subalgebra, Euler characteristic, graded dimension bounds)
can prove non-existence; otherwise the search tries structured exact
candidates (signed sums of disjoint blades per generator, with
backtracking) and then seeded random-restart nonlinear least squares.
A floating candidate is certified only when rounding to small
denominators produces an exact witness; "not-found" is never a proof.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import numpy as np
from scipy.optimize import least_squares

from .algebra import (
    AlgebraPresentation,
    GradedPolynomial,
    basis_and_dims,
    check_poincare_duality,
    euler_characteristic,
    evaluate_polynomial,
)
from .exterior import Multivector, blade_masks, graded_dimension

RESIDUAL_TOL = 1e-9
FC_NORM_MIN = 1e-6
LIFT_DENOMINATOR_BOUND = 10**4


@dataclass(frozen=True)
class RingMorphism:
    """Generator assignment defining a graded ring map into Lambda*(Q^n)."""

    source: AlgebraPresentation
    n: int
    assignment: Mapping[str, Multivector]
    mode: str = "exact"  # "exact" | "floating"

    def __post_init__(self):
        if self.mode not in ("exact", "floating"):
            raise ValueError(f"unknown arithmetic mode {self.mode!r}")
        for name, deg in self.source.generators:
            if name not in self.assignment:
                raise ValueError(f"assignment is missing generator {name}")
            mv = self.assignment[name]
            if mv.n != self.n:
                raise ValueError(f"assigned multivector for {name} lives in dimension {mv.n}")
            d = mv.degree()
            if d is not None and d != deg:
                raise ValueError(f"generator {name} has degree {deg}, image degree {d}")
            if self.mode == "exact":
                for _, c in mv.items():
                    if not isinstance(c, Fraction):
                        raise ValueError("exact mode requires rational coefficients")

    def evaluate(self, p: GradedPolynomial) -> Multivector:
        return evaluate_polynomial(p, self.assignment, self.n)


def failing_relations(m: RingMorphism, tol=0) -> list[tuple[int, GradedPolynomial, Multivector]]:
    """Relations whose images are nonzero (exactly, or above tol),
    as (index, relation, image) witnesses."""
    if m.mode == "exact" and tol != 0:
        raise ValueError("tol must be 0 in exact mode")
    out = []
    for i, rel in enumerate(m.source.relations):
        image = m.evaluate(rel)
        bad = (not image.is_zero) if m.mode == "exact" else image.max_abs_coeff() > tol
        if bad:
            out.append((i, rel, image))
    return out


def verify_morphism(m: RingMorphism, tol=0) -> bool:
    """True iff every relation maps to zero (exactly, or below tol)."""
    return not failing_relations(m, tol)


def certify_injective(m: RingMorphism) -> bool:
    """Nonvanishing of the fundamental class image, after the preconditions.

    Requires the source to satisfy Poincare duality and the relations
    to map to zero; violations raise instead of silently passing.
    """
    pd = check_poincare_duality(m.source)
    if not pd.holds:
        raise ValueError(f"source is not a Poincare duality algebra: {pd.detail}")
    if not verify_morphism(m, tol=0 if m.mode == "exact" else RESIDUAL_TOL):
        raise ValueError("relations do not map to zero; morphism is not well defined")
    image = m.evaluate(m.source.fundamental_class)
    if m.mode == "exact":
        return not image.is_zero
    return image.max_abs_coeff() >= FC_NORM_MIN


def pad_morphism(m: RingMorphism, n: int) -> RingMorphism:
    """The same assignment viewed inside a larger exterior algebra."""
    if n < m.n:
        raise ValueError("padding cannot shrink the ambient dimension")
    return RingMorphism(
        m.source,
        n,
        {name: mv.with_dimension(n) for name, mv in m.assignment.items()},
        m.mode,
    )


# ---------------------------------------------------------------------------
# Necessary-condition checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    verdict: str  # "pass" | "fail" | "inconclusive"
    principle: str
    witness: dict = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return self.verdict == "fail"


PRINCIPLES = {
    "degree-one-subalgebra": (
        "the real cohomology ring of a closed elliptic or quasiregularly "
        "elliptic n-manifold embeds in the exterior algebra on n generators, "
        "so the subalgebra generated by degree one must be a free exterior "
        "algebra on at most n classes"
    ),
    "rank-n-minus-1": (
        "the first Betti number of a closed elliptic or quasiregularly "
        "elliptic n-manifold is never exactly n-1: the top product of n-1 "
        "independent one-classes would have to pair with a one-form outside "
        "their span"
    ),
    "euler-characteristic": (
        "a closed elliptic or quasiregularly elliptic manifold with infinite "
        "fundamental group has Euler characteristic zero"
    ),
    "graded-dimension-bound": (
        "an injective graded map into the exterior algebra on n generators "
        "forces every Betti number b_k to be at most C(n, k)"
    ),
    "four-manifold-intersection": (
        "a closed quasiregularly elliptic 4-manifold is, up to finite covers "
        "and homeomorphism, on the connected-sum list with intersection form "
        "embedding into the signature-(3,3) wedge pairing, or covered by "
        "T^4, T^2 x S^2, or S^1 x S^3 when the fundamental group is infinite"
    ),
}


def torus_subalgebra_check(A: AlgebraPresentation) -> CheckResult:
    """Degree-one subalgebra obstructions, relative to A's own dimension n.

    Fails when b_1 > n, when b_1 = n-1 (pairing contradiction), or when
    the subalgebra generated by degree one is not free exterior (some
    product rank drops below C(b_1, j)).
    """
    gb = basis_and_dims(A)
    n = A.n
    k = gb.rank(1)
    reasons: list[dict] = []
    if k > n:
        reasons.append({"reason": "rank-exceeds-dimension"})
    if k == n - 1 and k > 0:
        reasons.append({"reason": "rank-n-minus-1-pairing"})
    if k <= n:
        reps1 = gb.representatives(1)
        gens = A.generators
        from . import linalg  # local import to keep module top light

        for j in range(2, k + 1):
            target = math.comb(k, j)
            rows = []
            for combo in itertools.combinations(reps1, j):
                prod = GradedPolynomial.monomial(gens, 1, combo[0])
                for m in combo[1:]:
                    prod = prod * GradedPolynomial.monomial(gens, 1, m)
                if prod.is_zero:
                    continue
                rows.append(list(gb.coords(prod)))
            got = linalg.rank(rows) if rows else 0
            if got < target:
                reasons.append(
                    {
                        "reason": "not-free-exterior",
                        "degree": j,
                        "rank": got,
                        "expected": target,
                    }
                )
                break
    if reasons:
        primary = reasons[0]
        principle = (
            PRINCIPLES["rank-n-minus-1"]
            if primary["reason"] == "rank-n-minus-1-pairing"
            else PRINCIPLES["degree-one-subalgebra"]
        )
        witness = {"b1": k, "n": n, **primary}
        if len(reasons) > 1:
            witness["also"] = [r["reason"] for r in reasons[1:]]
        return CheckResult("degree-one-subalgebra", "fail", principle, witness)
    return CheckResult(
        "degree-one-subalgebra", "pass", PRINCIPLES["degree-one-subalgebra"], {"b1": k, "n": n}
    )


def euler_obstruction(A: AlgebraPresentation) -> CheckResult:
    gb = basis_and_dims(A)
    chi = euler_characteristic(A)
    b1 = gb.rank(1)
    if b1 >= 1 and chi != 0:
        return CheckResult(
            "euler-characteristic",
            "fail",
            PRINCIPLES["euler-characteristic"],
            {"chi": chi, "b1": b1},
        )
    return CheckResult(
        "euler-characteristic", "pass", PRINCIPLES["euler-characteristic"], {"chi": chi, "b1": b1}
    )


@dataclass(frozen=True)
class FourManifoldResult:
    verdict: str  # "pass" | "fail"
    labels: tuple[str, ...]
    reason: str = ""


def fourmanifold_battery(b_plus: int, b_minus: int, pi1: str) -> FourManifoldResult:
    """Classification of (b+, b-, pi1) data for closed 4-manifolds.

    Simply connected (finite pi1): passes iff b+ <= 3 and b- <= 3 (the
    wedge pairing on the middle of Lambda*(R^4) has signature (3,3), so
    a (b+, b-) subform fits iff both bounds hold).  Infinite pi1 must
    be Z, Z^2 or Z^4 with Betti data matching the corresponding cover
    S^1 x S^3, T^2 x S^2 or T^4.
    """
    if b_plus < 0 or b_minus < 0:
        raise ValueError("Betti inputs must be nonnegative")
    if pi1 == "finite":
        if b_plus <= 3 and b_minus <= 3:
            labels = []
            if b_plus == b_minus == 0:
                labels.append("S^4")
            else:
                if b_plus == b_minus:
                    labels.append(f"#^{b_plus}(S^2 x S^2)")
                labels.append(f"#^{b_plus}CP^2 #^{b_minus}CP^2-bar")
            return FourManifoldResult("pass", tuple(labels))
        return FourManifoldResult(
            "fail",
            (),
            f"intersection form ({b_plus},{b_minus}) does not embed in the (3,3) wedge pairing",
        )
    expected_b2 = {"Z": 0, "Z^2": 2, "Z^4": 6}
    labels = {"Z": "S^1 x S^3", "Z^2": "T^2 x S^2", "Z^4": "T^4"}
    if pi1 not in expected_b2:
        raise ValueError(f"unsupported pi1 descriptor {pi1!r}")
    if b_plus + b_minus != expected_b2[pi1]:
        return FourManifoldResult(
            "fail",
            (),
            f"pi1 = {pi1} forces Euler characteristic zero, i.e. b2 = {expected_b2[pi1]}, "
            f"got {b_plus + b_minus}",
        )
    return FourManifoldResult("pass", (labels[pi1],))


def necessary_conditions(A: AlgebraPresentation) -> list[CheckResult]:
    """Intrinsic checks (relative to A.n) used as search preconditions."""
    return [euler_obstruction(A), torus_subalgebra_check(A)]


def target_feasibility(A: AlgebraPresentation, n: int) -> CheckResult:
    """Graded dimension bounds for embedding into Lambda*(Q^n)."""
    gb = basis_and_dims(A)
    for k in range(A.n + 1):
        bound = graded_dimension(n, k) if k <= n else 0
        if gb.rank(k) > bound:
            return CheckResult(
                "graded-dimension-bound",
                "fail",
                PRINCIPLES["graded-dimension-bound"],
                {"degree": k, "rank": gb.rank(k), "bound": bound, "target_n": n},
            )
    return CheckResult(
        "graded-dimension-bound", "pass", PRINCIPLES["graded-dimension-bound"], {"target_n": n}
    )


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SearchOutcome:
    status: str  # "found-certified" | "found-numerical" | "not-found"
    morphism: RingMorphism | None = None
    residual: float | None = None
    fc_norm: float | None = None
    trial_index: int | None = None
    obstruction: CheckResult | None = None
    best_residual: float | None = None
    nodes_used: int = 0

    @property
    def found(self) -> bool:
        return self.status.startswith("found")


from functools import lru_cache


@lru_cache(maxsize=64)
def _disjoint_blade_candidates(n: int, degree: int, cap: int) -> list[Multivector]:
    """Signed sums of pairwise disjoint degree-``degree`` blades.

    Ordered by term count, then lexicographically by blade mask, with
    all-positive sign patterns first, so that torus- and projective-
    space-style witnesses appear early and deterministically.
    """
    if degree > n:
        return []
    masks = blade_masks(n, degree)
    out: list[Multivector] = []
    max_terms = n // degree

    def collections(start: int, used: int, acc: list[int], size: int):
        if len(acc) == size:
            yield tuple(acc)
            return
        for i in range(start, len(masks)):
            m = masks[i]
            if m & used:
                continue
            acc.append(m)
            yield from collections(i + 1, used | m, acc, size)
            acc.pop()

    for size in range(1, max_terms + 1):
        for combo in collections(0, 0, [], size):
            for signs in itertools.product((1, -1), repeat=size):
                out.append(Multivector(n, {m: Fraction(s) for m, s in zip(combo, signs)}))
                if len(out) >= cap:
                    return out
    return out


def _exact_stage(
    A: AlgebraPresentation, n: int, node_budget: int, per_generator_cap: int = 512
) -> tuple[RingMorphism | None, int]:
    """Backtracking over structured candidates with relation pruning."""
    gens = A.generators
    names = [nm for nm, _ in gens]
    candidates = [
        _disjoint_blade_candidates(n, deg, per_generator_cap) for _, deg in gens
    ]
    if any(not c for c in candidates):
        return None, 0
    # relations become checkable once all their generators are assigned
    rels_by_level: list[list[GradedPolynomial]] = [[] for _ in range(len(gens) + 1)]
    for rel in A.relations:
        support = [
            i for i in range(len(gens)) if any(e[i] for _, e in rel.monomials)
        ]
        rels_by_level[max(support) + 1 if support else 0].append(rel)
    fc = A.fundamental_class
    fc_exps = fc.monomials[0][1] if len(fc.monomials) == 1 else None

    assignment: dict[str, Multivector] = {}
    nodes = 0

    def fc_prefix(upto: int) -> Multivector | None:
        # partial product of the single-monomial fundamental class
        if fc_exps is None:
            return None
        term = Multivector.scalar(n, 1)
        for i in range(upto):
            for _ in range(fc_exps[i]):
                term = term * assignment[names[i]]
                if term.is_zero:
                    return term
        return term

    def backtrack(level: int) -> RingMorphism | None:
        nonlocal nodes
        if level == len(gens):
            m = RingMorphism(A, n, dict(assignment))
            if verify_morphism(m) and not m.evaluate(fc).is_zero:
                return m
            return None
        for cand in candidates[level]:
            if nodes >= node_budget:
                return None
            nodes += 1
            assignment[names[level]] = cand
            ok = True
            for rel in rels_by_level[level + 1]:
                if not evaluate_polynomial(rel, assignment, n).is_zero:
                    ok = False
                    break
            if ok and fc_exps is not None:
                prefix = fc_prefix(level + 1)
                if prefix is not None and prefix.is_zero:
                    ok = False
            if ok:
                found = backtrack(level + 1)
                if found is not None:
                    return found
            del assignment[names[level]]
        return None

    found = backtrack(0)
    return found, nodes


def _float_stage(
    A: AlgebraPresentation,
    n: int,
    restarts: int,
    seed: int,
    tol: float,
    fc_min: float,
) -> tuple[RingMorphism | None, str, float | None, float | None, int | None]:
    """Random-restart least squares on relation residuals.

    Minimizes the stacked relation coefficients plus (|FC|^2 - 1); the
    solution cone is invariant under degree-weighted scaling, so
    normalizing the fundamental-class image is harmless.
    """
    gens = A.generators
    names = [nm for nm, _ in gens]
    degs = [d for _, d in gens]
    sizes = [math.comb(n, d) if d <= n else 0 for d in degs]
    if any(s == 0 for s in sizes):
        return None, "not-found", None, None, None
    offsets = np.cumsum([0] + sizes)
    masks = {d: blade_masks(n, d) for d in set(degs)}

    active_relations = [r for r in A.relations if (r.degree() or 0) <= n]
    fc = A.fundamental_class

    def to_assignment(x: np.ndarray, exact: bool) -> dict[str, Multivector]:
        out = {}
        for i, name in enumerate(names):
            coeffs = x[offsets[i]: offsets[i + 1]]
            if exact:
                terms = {
                    m: Fraction(float(c)).limit_denominator(LIFT_DENOMINATOR_BOUND)
                    for m, c in zip(masks[degs[i]], coeffs)
                }
            else:
                terms = {m: float(c) for m, c in zip(masks[degs[i]], coeffs)}
            out[name] = Multivector(n, terms)
        return out

    def residuals(x: np.ndarray) -> np.ndarray:
        asg = to_assignment(x, exact=False)
        parts = []
        for rel in active_relations:
            img = evaluate_polynomial(rel, asg, n)
            deg = rel.degree()
            parts.append(np.array([float(c) for c in img.coords(deg)], dtype=float))
        fc_img = evaluate_polynomial(fc, asg, n)
        fc_vec = np.array([float(c) for c in fc_img.coords(A.n)], dtype=float)
        parts.append(np.array([fc_vec @ fc_vec - 1.0]))
        return np.concatenate(parts) if parts else np.zeros(1)

    nvars = int(offsets[-1])
    nresid = len(residuals(np.zeros(nvars)))
    method = "lm" if nresid >= nvars and nvars <= 60 else "trf"
    best_res = None
    for trial in range(restarts):
        rng = np.random.default_rng((seed, trial))
        x0 = rng.normal(0.0, 1.0, size=nvars)
        sol = least_squares(residuals, x0, method=method)
        asg = to_assignment(sol.x, exact=False)
        rel_resid = 0.0
        for rel in active_relations:
            rel_resid = max(rel_resid, evaluate_polynomial(rel, asg, n).max_abs_coeff())
        fc_norm = math.sqrt(
            sum(float(c) ** 2 for c in evaluate_polynomial(fc, asg, n).coords(A.n))
        )
        if best_res is None or rel_resid < best_res:
            best_res = rel_resid
        if rel_resid <= tol and fc_norm >= fc_min:
            # lift along a ladder of denominators, exact re-verification only
            for bound in (1, 2, 4, 8, 16, LIFT_DENOMINATOR_BOUND):
                exact_asg = {}
                for i, name in enumerate(names):
                    coeffs = sol.x[offsets[i]: offsets[i + 1]]
                    exact_asg[name] = Multivector(
                        n,
                        {
                            m: Fraction(float(c)).limit_denominator(bound)
                            for m, c in zip(masks[degs[i]], coeffs)
                        },
                    )
                try:
                    m_exact = RingMorphism(A, n, exact_asg, "exact")
                except ValueError:
                    continue
                if verify_morphism(m_exact) and not m_exact.evaluate(fc).is_zero:
                    return m_exact, "found-certified", rel_resid, fc_norm, trial
            m_float = RingMorphism(A, n, asg, "floating")
            return m_float, "found-numerical", rel_resid, fc_norm, trial
    return None, "not-found", best_res, None, None


def search_embedding(
    A: AlgebraPresentation,
    n: int,
    budget: int = 20000,
    seed: int = 0,
    float_restarts: int | None = None,
    tol: float = RESIDUAL_TOL,
    fc_min: float = FC_NORM_MIN,
) -> SearchOutcome:
    """Look for an injective graded ring map into Lambda*(Q^n).

    ``budget`` caps the number of backtracking nodes in the exact
    stage; ``float_restarts`` (default budget // 1000) counts seeded
    least-squares restarts.  Identical arguments give identical output.
    """
    pd = check_poincare_duality(A)
    if not pd.holds:
        return SearchOutcome(
            "not-found",
            obstruction=CheckResult(
                "poincare-duality",
                "fail",
                "the cohomology ring of a closed oriented manifold satisfies "
                "Poincare duality; a presentation without it is not admissible",
                {"failing_degree": pd.failing_degree, "detail": pd.detail},
            ),
        )
    for check in necessary_conditions(A):
        if check.failed:
            return SearchOutcome("not-found", obstruction=check)
    feas = target_feasibility(A, n)
    if feas.failed:
        return SearchOutcome("not-found", obstruction=feas)

    found, nodes = _exact_stage(A, n, budget)
    if found is not None:
        return SearchOutcome(
            "found-certified",
            morphism=found,
            residual=0.0,
            trial_index=0,
            nodes_used=nodes,
        )
    if float_restarts is None:
        float_restarts = max(0, budget // 1000)
    if float_restarts > 0:
        m, status, resid, fc_norm, trial = _float_stage(A, n, float_restarts, seed, tol, fc_min)
        if status != "not-found":
            return SearchOutcome(
                status,
                morphism=m,
                residual=resid,
                fc_norm=fc_norm,
                trial_index=trial,
                nodes_used=nodes,
            )
        return SearchOutcome("not-found", best_residual=resid, nodes_used=nodes)
    return SearchOutcome("not-found", nodes_used=nodes)
