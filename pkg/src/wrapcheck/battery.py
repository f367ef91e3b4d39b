"""Obstruction battery: run every necessary-condition check on a
descriptor and aggregate the verdicts.

A "fail" in any necessary condition is a proof that the closed
manifold is neither elliptic nor quasiregularly elliptic, and the
report carries the failing check with its witness data.  The embedding
search contributes positive evidence only: "not-found" never excludes
anything, mirroring the asymmetry between obstructions and
constructions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from . import embed, quadform
from .algebra import basis_and_dims, check_poincare_duality, cup_square_form, euler_characteristic
from .descriptor import ManifoldDescriptor
from .embed import CheckResult, SearchOutcome
from .nilcoh import NotNilpotent, pi1_verdict

GROWTH_PRINCIPLE = (
    "the fundamental group of a closed elliptic or quasiregularly elliptic "
    "n-manifold has polynomial growth of degree at most n"
)
ABELIAN_PRINCIPLE = (
    "the fundamental group of a closed elliptic or quasiregularly elliptic "
    "manifold is virtually abelian"
)
PD_PRINCIPLE = (
    "the real cohomology ring of a closed oriented manifold satisfies "
    "Poincare duality"
)


@dataclass
class BatteryOptions:
    embed: bool = True
    embed_budget: int = 20000
    embed_float_restarts: int = 0
    seed: int = 0
    embed_tolerance: float = 1e-9


@dataclass
class BatteryReport:
    name: str
    n: int
    betti: tuple[int, ...]
    euler_characteristic: int
    checks: list[CheckResult]
    embedding: SearchOutcome | None
    cup_form: dict | None
    verdict: str  # "no-obstruction-found" | "excluded-with-witness"
    witnesses: tuple[str, ...]

    # -- serialization -------------------------------------------------------
    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "n": self.n,
            "betti": list(self.betti),
            "euler_characteristic": self.euler_characteristic,
            "verdict": self.verdict,
            "witnesses": list(self.witnesses),
            "checks": [
                {
                    "id": c.check_id,
                    "verdict": c.verdict,
                    "principle": c.principle,
                    "witness": _plain(c.witness),
                }
                for c in self.checks
            ],
            "cup_form": _plain(self.cup_form) if self.cup_form else None,
        }
        if self.embedding is None:
            out["embedding"] = None
        else:
            e = self.embedding
            out["embedding"] = {
                "status": e.status,
                "witness": _assignment_dict(e.morphism) if e.morphism else None,
                "residual": _fmt_float(e.residual),
                "trial_index": e.trial_index,
                "obstruction": e.obstruction.check_id if e.obstruction else None,
                "best_residual": _fmt_float(e.best_residual),
            }
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def render_text(self) -> str:
        lines = [f"{self.name} (n = {self.n})"]
        lines.append(f"  betti: {list(self.betti)}   chi = {self.euler_characteristic}")
        for c in self.checks:
            mark = {"pass": "ok  ", "fail": "FAIL", "inconclusive": "?   "}[c.verdict]
            lines.append(f"  [{mark}] {c.check_id}: {_witness_text(c)}")
            if c.verdict == "fail":
                lines.append(f"         principle: {c.principle}")
        if self.cup_form:
            cf = self.cup_form
            lines.append(
                f"  cup form on degree 2: signature {cf['signature']}, "
                f"square class {cf['discriminant']}"
                + (
                    ""
                    if cf.get("equivalent_to_middle_wedge_form") is None
                    else f", rationally equivalent to the wedge pairing form: "
                    f"{cf['equivalent_to_middle_wedge_form']}"
                )
            )
        if self.embedding is not None:
            e = self.embedding
            if e.found and e.morphism is not None:
                kind = "certified" if e.status == "found-certified" else "numerical (uncertified)"
                lines.append(f"  embedding: found ({kind})")
                for nm, mv in sorted(e.morphism.assignment.items()):
                    lines.append(f"      {nm} -> {mv}")
            elif e.obstruction is not None:
                lines.append(f"  embedding: not-found (blocked by {e.obstruction.check_id})")
            else:
                lines.append(
                    "  embedding: not-found (no conclusion"
                    + (f"; best residual {e.best_residual:.3g}" if e.best_residual else "")
                    + ")"
                )
        if self.verdict == "excluded-with-witness":
            lines.append(
                "  verdict: excluded-with-witness "
                "(neither elliptic nor quasiregularly elliptic as a closed manifold)"
            )
            lines.append(f"  witnesses: {', '.join(self.witnesses)}")
        else:
            lines.append(f"  verdict: {self.verdict}")
        return "\n".join(lines) + "\n"


def _fmt_float(x) -> str | None:
    return None if x is None else f"{x:.12g}"


def _plain(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


def _assignment_dict(m: embed.RingMorphism) -> dict:
    out = {}
    for name, mv in sorted(m.assignment.items()):
        out[name] = {
            "".join(f"e{i}" for i in _mask_indices(mask)) or "1": str(c)
            for mask, c in mv.items()
        }
    return out


def _mask_indices(mask: int):
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return out


def _witness_text(c: CheckResult) -> str:
    if not c.witness:
        return c.verdict
    return ", ".join(f"{k}={v}" for k, v in sorted(c.witness.items()))


def _pi1_checks(d: ManifoldDescriptor) -> list[CheckResult]:
    p = d.pi1
    n = d.n
    if p.kind == "finite":
        return [
            CheckResult("fundamental-group-growth", "pass", GROWTH_PRINCIPLE, {"pi1": "finite"}),
            CheckResult("fundamental-group-abelian", "pass", ABELIAN_PRINCIPLE, {"pi1": "finite"}),
        ]
    if p.kind == "free-abelian":
        growth = p.rank
        verdict = "fail" if growth > n else "pass"
        return [
            CheckResult(
                "fundamental-group-growth",
                verdict,
                GROWTH_PRINCIPLE,
                {"pi1": f"Z^{p.rank}", "growth_degree": growth, "n": n},
            ),
            CheckResult(
                "fundamental-group-abelian", "pass", ABELIAN_PRINCIPLE, {"pi1": f"Z^{p.rank}"}
            ),
        ]
    if p.kind == "nilpotent":
        try:
            verdict = pi1_verdict(p.algebra, n)
        except NotNilpotent as exc:
            return [
                CheckResult(
                    "fundamental-group-growth",
                    "fail",
                    GROWTH_PRINCIPLE,
                    {"error": str(exc)},
                )
            ]
        out = [
            CheckResult(
                "fundamental-group-growth",
                "fail" if verdict.growth_degree > n else "pass",
                GROWTH_PRINCIPLE,
                {"growth_degree": verdict.growth_degree, "n": n},
            ),
            CheckResult(
                "fundamental-group-abelian",
                "pass" if verdict.abelian else "fail",
                ABELIAN_PRINCIPLE,
                {
                    "abelian": verdict.abelian,
                    "nilpotency_class": verdict.nilpotency_class,
                },
            ),
        ]
        return out
    return [
        CheckResult(
            "fundamental-group-growth",
            "inconclusive",
            GROWTH_PRINCIPLE,
            {"pi1": "outside the nilpotent data model"},
        ),
        CheckResult(
            "fundamental-group-abelian",
            "inconclusive",
            ABELIAN_PRINCIPLE,
            {"pi1": "outside the nilpotent data model"},
        ),
    ]


def _cup_form_analysis(d: ManifoldDescriptor) -> dict | None:
    gb = basis_and_dims(d.cohomology)
    if gb.rank(2) < 1 or d.n < 4 or gb.rank(4) != 1:
        return None
    gram, _ = cup_square_form(d.cohomology, 2)
    form = quadform.QuadraticForm(tuple(tuple(row) for row in gram))
    if not form.is_nondegenerate:
        return {"rank": form.rank, "degenerate": True}
    sig = quadform.signature(form)
    out = {
        "rank": form.rank,
        "signature": list(sig),
        "discriminant": quadform.discriminant(form),
    }
    if d.n == 4 and d.betti is not None:
        out["matches_declared_betti"] = sig == d.betti
    wedge4 = quadform.wedge_pairing_form(4)
    if form.rank == wedge4.rank:
        out["equivalent_to_middle_wedge_form"] = quadform.rationally_equivalent(form, wedge4)
    else:
        out["equivalent_to_middle_wedge_form"] = None
    return out


def run_battery(d: ManifoldDescriptor, options: BatteryOptions | None = None) -> BatteryReport:
    options = options or BatteryOptions()
    A = d.cohomology
    gb = basis_and_dims(A)
    chi = euler_characteristic(A)

    checks: list[CheckResult] = []
    checks.extend(_pi1_checks(d))

    pd = check_poincare_duality(A)
    checks.append(
        CheckResult(
            "poincare-duality",
            "pass" if pd.holds else "fail",
            PD_PRINCIPLE,
            {} if pd.holds else {"failing_degree": pd.failing_degree, "detail": pd.detail},
        )
    )
    checks.append(embed.euler_obstruction(A))
    checks.append(embed.torus_subalgebra_check(A))

    if d.n == 4 and d.betti is not None:
        pi1_label = None
        if d.pi1.kind == "finite":
            pi1_label = "finite"
        elif d.pi1.kind == "free-abelian":
            candidate = "Z" if d.pi1.rank == 1 else f"Z^{d.pi1.rank}"
            if candidate in ("Z", "Z^2", "Z^4"):
                pi1_label = candidate
        if pi1_label is None:
            checks.append(
                CheckResult(
                    "four-manifold-intersection",
                    "inconclusive",
                    embed.PRINCIPLES["four-manifold-intersection"],
                    {"pi1": "unsupported for the 4-manifold classification"},
                )
            )
        else:
            res = embed.fourmanifold_battery(d.betti[0], d.betti[1], pi1_label)
            checks.append(
                CheckResult(
                    "four-manifold-intersection",
                    res.verdict,
                    embed.PRINCIPLES["four-manifold-intersection"],
                    {
                        "b_plus": d.betti[0],
                        "b_minus": d.betti[1],
                        "labels": list(res.labels),
                        **({"reason": res.reason} if res.reason else {}),
                    },
                )
            )

    embedding = None
    if options.embed:
        embedding = embed.search_embedding(
            A,
            d.n,
            budget=options.embed_budget,
            seed=options.seed,
            float_restarts=options.embed_float_restarts,
            tol=options.embed_tolerance,
        )

    cup_form = _cup_form_analysis(d)

    failing = tuple(c.check_id for c in checks if c.verdict == "fail")
    verdict = "excluded-with-witness" if failing else "no-obstruction-found"
    return BatteryReport(
        name=d.name,
        n=d.n,
        betti=gb.ranks,
        euler_characteristic=chi,
        checks=checks,
        embedding=embedding,
        cup_form=cup_form,
        verdict=verdict,
        witnesses=failing,
    )
