"""Finitely presented graded-commutative algebras over Q.

A presentation consists of generators with positive degrees, relation
polynomials in the free graded-commutative ring on those generators,
and a formal dimension n with a distinguished fundamental class of
degree n.  Cohomology rings of closed oriented manifolds are the
intended inputs, so truncation above degree n is on by default.

Dimension counts and duality checks are pure linear algebra: monomials
of a fixed degree form a finite basis (generator degrees are >= 1),
and the degree-k piece of the relation ideal is the span of all
monomial multiples of the relations, which we row-reduce exactly.
No Groebner machinery is needed at this scale.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from . import linalg
from .exterior import Multivector, wedge

GeneratorTable = tuple[tuple[str, int], ...]


class DegeneratePresentation(ValueError):
    """The fundamental class lies in the relation ideal."""


def _monomial_mul(gen_degrees: Sequence[int], e: Sequence[int], f: Sequence[int]):
    """Merge two exponent vectors; None if an odd generator squares.

    The sign moves each generator of the right factor past the later
    generators of the left factor (odd-odd passes flip the sign).
    """
    exps = []
    flips = 0
    for i, (a, b) in enumerate(zip(e, f)):
        if gen_degrees[i] % 2 == 1 and a + b > 1:
            return None
        exps.append(a + b)
    for j in range(len(f)):
        if f[j] == 0 or gen_degrees[j] % 2 == 0:
            continue
        passed = sum(
            e[i] for i in range(j + 1, len(e)) if gen_degrees[i] % 2 == 1
        )
        flips += f[j] * passed
    sign = -1 if flips % 2 else 1
    return sign, tuple(exps)


@dataclass(frozen=True)
class GradedPolynomial:
    """Element of the free graded-commutative ring on a generator table.

    Monomials are (coefficient, exponent vector) pairs with generators
    in table order; odd-degree generators carry exponent 0 or 1.  All
    monomials of one polynomial share the same graded degree.
    """

    generators: GeneratorTable
    monomials: tuple[tuple[Fraction, tuple[int, ...]], ...]

    def __post_init__(self):
        gens = tuple((str(n), int(d)) for n, d in self.generators)
        object.__setattr__(self, "generators", gens)
        acc: dict[tuple[int, ...], Fraction] = {}
        for coeff, exps in self.monomials:
            exps = tuple(int(x) for x in exps)
            if len(exps) != len(gens):
                raise ValueError("exponent vector length does not match generator table")
            if any(x < 0 for x in exps):
                raise ValueError("negative exponent")
            for (name, deg), x in zip(gens, exps):
                if deg % 2 == 1 and x > 1:
                    raise ValueError(f"odd-degree generator {name} has exponent {x}")
            c = Fraction(coeff)
            if c == 0:
                continue
            acc[exps] = acc.get(exps, Fraction(0)) + c
        cleaned = tuple(
            (c, e) for e, c in sorted(acc.items()) if c != 0
        )
        degs = {self._exp_degree(gens, e) for _, e in cleaned}
        if len(degs) > 1:
            raise ValueError(f"mixed graded degrees in one polynomial: {sorted(degs)}")
        object.__setattr__(self, "monomials", cleaned)

    @staticmethod
    def _exp_degree(gens: GeneratorTable, exps: tuple[int, ...]) -> int:
        return sum(d * x for (_, d), x in zip(gens, exps))

    @classmethod
    def zero(cls, generators: GeneratorTable) -> "GradedPolynomial":
        return cls(tuple(generators), ())

    @classmethod
    def monomial(cls, generators, coeff, exps) -> "GradedPolynomial":
        return cls(tuple(generators), ((Fraction(coeff), tuple(exps)),))

    @classmethod
    def generator(cls, generators, name) -> "GradedPolynomial":
        gens = tuple(generators)
        names = [g for g, _ in gens]
        exps = [0] * len(gens)
        exps[names.index(name)] = 1
        return cls.monomial(gens, 1, exps)

    @property
    def is_zero(self) -> bool:
        return not self.monomials

    def degree(self) -> int | None:
        if not self.monomials:
            return None
        return self._exp_degree(self.generators, self.monomials[0][1])

    def __add__(self, other: "GradedPolynomial") -> "GradedPolynomial":
        if self.generators != other.generators:
            raise ValueError("polynomials over different generator tables")
        return GradedPolynomial(self.generators, self.monomials + other.monomials)

    def __neg__(self) -> "GradedPolynomial":
        return GradedPolynomial(
            self.generators, tuple((-c, e) for c, e in self.monomials)
        )

    def __sub__(self, other: "GradedPolynomial") -> "GradedPolynomial":
        return self + (-other)

    def scale(self, c) -> "GradedPolynomial":
        return GradedPolynomial(
            self.generators, tuple((coeff * Fraction(c), e) for coeff, e in self.monomials)
        )

    def __mul__(self, other: "GradedPolynomial") -> "GradedPolynomial":
        if self.generators != other.generators:
            raise ValueError("polynomials over different generator tables")
        degrees = [d for _, d in self.generators]
        terms = []
        for ca, ea in self.monomials:
            for cb, eb in other.monomials:
                merged = _monomial_mul(degrees, ea, eb)
                if merged is None:
                    continue
                sign, exps = merged
                terms.append((ca * cb * sign, exps))
        return GradedPolynomial(self.generators, tuple(terms))

    def __repr__(self):
        if not self.monomials:
            return "0"
        parts = []
        for c, e in self.monomials:
            factors = [
                name + (f"^{x}" if x > 1 else "")
                for (name, _), x in zip(self.generators, e)
                if x
            ]
            body = " ".join(factors) if factors else "1"
            parts.append(f"{c} {body}" if c != 1 or not factors else body)
        return " + ".join(parts)


def evaluate_polynomial(
    p: GradedPolynomial, assignment: Mapping[str, Multivector], n: int
) -> Multivector:
    """Substitute multivectors for generators, in table order.

    Monomial order plus the Koszul convention built into the wedge make
    the substitution well defined; each assigned multivector must be
    homogeneous of its generator's degree.
    """
    for idx, (name, deg) in enumerate(p.generators):
        if not any(e[idx] for _, e in p.monomials):
            continue
        if name not in assignment:
            raise ValueError(f"assignment is missing generator {name}")
        d = assignment[name].degree()
        if d is not None and d != deg:
            raise ValueError(f"generator {name} has degree {deg} but was assigned degree {d}")
    total = Multivector.zero(n)
    for coeff, exps in p.monomials:
        term = Multivector.scalar(n, coeff)
        for (name, _), x in zip(p.generators, exps):
            for _ in range(x):
                term = wedge(term, assignment[name])
                if term.is_zero:
                    break
            if term.is_zero:
                break
        total = total + term
    return total


@dataclass(frozen=True)
class AlgebraPresentation:
    """Graded-commutative algebra R[gens]/(relations) with formal dimension n.

    ``truncate_above_n`` (default) declares everything above degree n
    zero, as for a closed n-manifold; relations of degree > n are kept
    (they matter when mapping into larger exterior algebras) but are
    redundant for the truncated basis computation.
    """

    generators: GeneratorTable
    relations: tuple[GradedPolynomial, ...]
    n: int
    fundamental_class: GradedPolynomial
    truncate_above_n: bool = True

    def __post_init__(self):
        gens = tuple((str(nm), int(d)) for nm, d in self.generators)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relations", tuple(self.relations))
        if len({nm for nm, _ in gens}) != len(gens):
            raise ValueError("duplicate generator names")
        if any(d < 1 for _, d in gens):
            raise ValueError("generator degrees must be >= 1")
        if self.n < 1:
            raise ValueError("formal dimension must be >= 1")
        for rel in self.relations:
            if rel.generators != gens:
                raise ValueError("relation over a different generator table")
            if rel.is_zero:
                raise ValueError("zero relation")
        if self.fundamental_class.generators != gens:
            raise ValueError("fundamental class over a different generator table")
        if self.fundamental_class.degree() != self.n:
            raise ValueError(
                f"fundamental class has degree {self.fundamental_class.degree()}, expected {self.n}"
            )

    def polynomial(self, coeff, exps) -> GradedPolynomial:
        return GradedPolynomial.monomial(self.generators, coeff, exps)


def _monomials_of_degree(gens: GeneratorTable, k: int) -> list[tuple[int, ...]]:
    """Exponent vectors of graded degree k, odd generators capped at 1."""
    out: list[tuple[int, ...]] = []

    def rec(i: int, remaining: int, acc: list[int]):
        if i == len(gens):
            if remaining == 0:
                out.append(tuple(acc))
            return
        _, d = gens[i]
        top = 1 if d % 2 == 1 else remaining // d
        for x in range(min(top, remaining // d) + 1):
            acc.append(x)
            rec(i + 1, remaining - d * x, acc)
            acc.pop()

    rec(0, k, [])
    return sorted(out)


class GradedBasis:
    """Per-degree monomial bases of the quotient algebra, with reducers."""

    def __init__(self, presentation: AlgebraPresentation, max_degree: int | None = None):
        self.presentation = presentation
        gens = presentation.generators
        n = presentation.n
        self.max_degree = n if max_degree is None else max_degree
        self._monomials: list[list[tuple[int, ...]]] = []
        self._ideal: list[linalg.SparseSubspace] = []
        self._mono_index: list[dict[tuple[int, ...], int]] = []
        for k in range(self.max_degree + 1):
            monos = _monomials_of_degree(gens, k)
            index = {m: i for i, m in enumerate(monos)}
            rows = []
            for rel in presentation.relations:
                b = rel.degree()
                if b is None or b > k:
                    continue
                for m in _monomials_of_degree(gens, k - b):
                    prod = GradedPolynomial.monomial(gens, 1, m) * rel
                    if prod.is_zero:
                        continue
                    rows.append({index[e]: c for c, e in prod.monomials})
            self._monomials.append(monos)
            self._mono_index.append(index)
            self._ideal.append(linalg.SparseSubspace(len(monos), rows))

    # -- ranks and representatives ----------------------------------------
    def rank(self, k: int) -> int:
        if k < 0:
            return 0
        if k > self.max_degree:
            if self.presentation.truncate_above_n and k > self.presentation.n:
                return 0
            raise ValueError(f"degree {k} not computed (max {self.max_degree})")
        if self.presentation.truncate_above_n and k > self.presentation.n:
            return 0
        return self._ideal[k].codim

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(self.rank(k) for k in range(self.presentation.n + 1))

    def representatives(self, k: int) -> list[tuple[int, ...]]:
        """Standard monomials: those away from the ideal's pivot columns."""
        if self.presentation.truncate_above_n and k > self.presentation.n:
            return []
        pivots = set(self._ideal[k].pivots)
        return [m for i, m in enumerate(self._monomials[k]) if i not in pivots]

    def monomials(self, k: int) -> list[tuple[int, ...]]:
        return list(self._monomials[k])

    # -- reduction ---------------------------------------------------------
    def vector_of(self, p: GradedPolynomial) -> tuple[int, linalg.Vector]:
        k = p.degree()
        if k is None:
            raise ValueError("zero polynomial has no degree")
        vec = linalg.zero_vector(len(self._monomials[k]))
        for c, e in p.monomials:
            vec[self._mono_index[k][e]] = c
        return k, vec

    def coords(self, p: GradedPolynomial) -> tuple[Fraction, ...]:
        """Coordinates in the quotient, on the standard-monomial basis."""
        k = p.degree()
        if k is None:
            raise ValueError("zero polynomial has no degree")
        if self.presentation.truncate_above_n and k > self.presentation.n:
            return ()
        _, vec = self.vector_of(p)
        return self._ideal[k].coords_modulo(vec)

    def is_in_ideal(self, p: GradedPolynomial) -> bool:
        if p.is_zero:
            return True
        k = p.degree()
        if self.presentation.truncate_above_n and k > self.presentation.n:
            return True
        _, vec = self.vector_of(p)
        return self._ideal[k].contains(vec)


@lru_cache(maxsize=256)
def basis_and_dims(presentation: AlgebraPresentation) -> GradedBasis:
    """Quotient bases per degree 0..n; errors on a degenerate presentation.

    Emits a warning when the relations alone do not force vanishing in
    degrees n+1 .. n+max_generator_degree (truncation is then doing
    real work, which a closed-manifold presentation should not need).
    """
    gb = GradedBasis(presentation)
    fc = presentation.fundamental_class
    if gb.is_in_ideal(fc):
        raise DegeneratePresentation("fundamental class lies in the relation ideal")
    if presentation.truncate_above_n and presentation.generators:
        max_gen_degree = max(d for _, d in presentation.generators)
        probe = GradedBasis(presentation, presentation.n + max_gen_degree)
        excess = [
            k
            for k in range(presentation.n + 1, presentation.n + max_gen_degree + 1)
            if probe._ideal[k].codim > 0
        ]
        if excess:
            warnings.warn(
                f"relations do not force vanishing above degree {presentation.n} "
                f"(first excess degree {excess[0]}); relying on truncation",
                stacklevel=2,
            )
    return gb


def euler_characteristic(presentation: AlgebraPresentation) -> int:
    gb = basis_and_dims(presentation)
    return sum((-1) ** k * r for k, r in enumerate(gb.ranks))


@dataclass(frozen=True)
class PDReport:
    holds: bool
    failing_degree: int | None = None
    detail: str = ""


def check_poincare_duality(presentation: AlgebraPresentation) -> PDReport:
    """Nondegeneracy of the pairing deg k x deg n-k -> deg n for all k."""
    gb = basis_and_dims(presentation)
    n = presentation.n
    if gb.rank(n) != 1:
        return PDReport(False, n, f"top degree has rank {gb.rank(n)}, expected 1")
    fc_coords = gb.coords(presentation.fundamental_class)
    fc_entry = next(c for c in fc_coords if c != 0)
    gens = presentation.generators
    for k in range(0, n // 2 + 1):
        reps_k = gb.representatives(k)
        reps_nk = gb.representatives(n - k)
        if len(reps_k) != len(reps_nk):
            return PDReport(
                False, k, f"rank {len(reps_k)} in degree {k} vs {len(reps_nk)} in degree {n - k}"
            )
        if not reps_k:
            continue
        pairing = []
        for ma in reps_k:
            row = []
            for mb in reps_nk:
                prod = GradedPolynomial.monomial(gens, 1, ma) * GradedPolynomial.monomial(
                    gens, 1, mb
                )
                if prod.is_zero:
                    row.append(Fraction(0))
                    continue
                coords = gb.coords(prod)
                row.append(next((c for c in coords if c != 0), Fraction(0)) / fc_entry)
            pairing.append(row)
        if linalg.rank(pairing) != len(reps_k):
            return PDReport(False, k, f"degenerate pairing in degree {k}")
    return PDReport(True)


def cup_square_form(presentation: AlgebraPresentation, k: int):
    """Gram matrix of deg k x deg k -> deg 2k when that target has rank 1.

    Returns (matrix of Fractions, representatives).  When 2k equals the
    formal dimension the values are normalized by the fundamental class
    (so signs, hence the signature, are canonical); otherwise they are
    read off the quotient basis and the matrix is canonical only up to
    a global rational scale, which still fixes the even-rank square
    class and the unordered signature pair.
    """
    gb = basis_and_dims(presentation)
    if gb.rank(2 * k) != 1:
        raise ValueError(f"degree {2 * k} has rank {gb.rank(2 * k)}, expected 1")
    gens = presentation.generators
    reps = gb.representatives(k)
    unit = Fraction(1)
    if 2 * k == presentation.n:
        unit = next(c for c in gb.coords(presentation.fundamental_class) if c != 0)
    gram = []
    for ma in reps:
        row = []
        for mb in reps:
            prod = GradedPolynomial.monomial(gens, 1, ma) * GradedPolynomial.monomial(
                gens, 1, mb
            )
            if prod.is_zero:
                row.append(Fraction(0))
            else:
                coords = gb.coords(prod)
                row.append(next((c for c in coords if c != 0), Fraction(0)) / unit)
        gram.append(row)
    return gram, reps


# ---------------------------------------------------------------------------
# Concrete subalgebras of an exterior algebra and quotients by a 1-class.
# ---------------------------------------------------------------------------


class ConcreteSubalgebra:
    """Graded subalgebra of Lambda*(Q^n) given by spanning multivectors."""

    def __init__(self, n: int, layers: Sequence[Sequence[Multivector]]):
        self.n = n
        self._span: list[linalg.Subspace] = []
        self._basis: list[list[Multivector]] = []
        for k in range(n + 1):
            vecs = layers[k] if k < len(layers) else []
            rows = [list(v.coords(k)) for v in vecs]
            red, _ = linalg.rref(rows)
            self._span.append(linalg.Subspace(_coord_len(n, k), red))
            self._basis.append([Multivector.from_coords(n, k, r) for r in red])

    @classmethod
    def from_generators(cls, n: int, gens: Sequence[Multivector]) -> "ConcreteSubalgebra":
        """Close the unit and the given homogeneous elements under wedge."""
        layers: list[list[Multivector]] = [[] for _ in range(n + 1)]
        layers[0].append(Multivector.scalar(n, 1))
        spans = [linalg.Subspace(_coord_len(n, k)) for k in range(n + 1)]

        def absorb(v: Multivector) -> bool:
            k = v.degree()
            if k is None:
                return False
            vec = list(v.coords(k))
            if spans[k].contains(vec):
                return False
            rows = [list(b.coords(k)) for b in layers[k]] + [vec]
            red, _ = linalg.rref(rows)
            layers[k] = [Multivector.from_coords(n, k, r) for r in red]
            spans[k] = linalg.Subspace(_coord_len(n, k), red)
            return True

        absorb(Multivector.scalar(n, 1))
        for g in gens:
            if g.is_zero:
                continue
            if g.degree() is None:
                raise ValueError("generators must be homogeneous")
            absorb(g)
        changed = True
        while changed:
            changed = False
            flat = [v for layer in layers for v in layer]
            for a, b in itertools.product(flat, repeat=2):
                da, db = a.degree(), b.degree()
                if da == 0 or db == 0 or da + db > n:
                    continue
                w = wedge(a, b)
                if not w.is_zero and absorb(w):
                    changed = True
        return cls(n, layers)

    def basis(self, k: int) -> list[Multivector]:
        return list(self._basis[k])

    def dims(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self._basis)

    @property
    def formal_dim(self) -> int:
        top = [k for k in range(self.n + 1) if self._basis[k]]
        return max(top) if top else 0

    def contains(self, v: Multivector) -> bool:
        if v.is_zero:
            return True
        k = v.degree()
        if k is None:
            return all(
                self._span[d].contains(list(v.homogeneous_part(d).coords(d)))
                for d in v.degrees()
            )
        return self._span[k].contains(list(v.coords(k)))

    def coords_in_basis(self, v: Multivector, k: int) -> linalg.Vector | None:
        """Coordinates of a degree-k element in this subalgebra's basis."""
        rows = [list(b.coords(k)) for b in self._basis[k]]
        if not rows:
            return None if not v.is_zero else []
        mat = linalg.transpose(rows)
        return linalg.solve(mat, list(v.coords(k)))

    def check_poincare_duality(self) -> PDReport:
        """dim 1 top plus nondegenerate pairing into the top degree."""
        N = self.formal_dim
        if len(self._basis[N]) != 1:
            return PDReport(False, N, f"top degree {N} has dimension {len(self._basis[N])}")
        top = self._basis[N][0]
        top_coord = next(c for c in top.coords(N) if c != 0)
        for k in range(0, N // 2 + 1):
            bk, bnk = self._basis[k], self._basis[N - k]
            if len(bk) != len(bnk):
                return PDReport(False, k, "mismatched complementary dimensions")
            if not bk:
                continue
            gram = []
            for a in bk:
                row = []
                for b in bnk:
                    w = wedge(a, b)
                    coeff = Fraction(0)
                    if not w.is_zero:
                        c = self.coords_in_basis(w, N)
                        coeff = c[0] if c else Fraction(0)
                    row.append(coeff)
                gram.append(row)
            if linalg.rank(gram) != len(bk):
                return PDReport(False, k, f"degenerate pairing in degree {k}")
        return PDReport(True)


def _coord_len(n: int, k: int) -> int:
    import math

    return math.comb(n, k)


@dataclass(frozen=True)
class QuotientReport:
    dim_quotient: int
    dim_ideal: int
    quotient_dims: tuple[int, ...]
    ideal_dims: tuple[int, ...]
    pd_holds: bool
    failing_degree: int | None = None


def quotient_by_degree1(A: ConcreteSubalgebra, x: Multivector) -> QuotientReport:
    """Quotient of a Poincare duality subalgebra by the ideal (x), x of degree 1.

    Verifies dim A/(x) = dim (x) and that the quotient pairing into the
    image class in degree N-1 is nondegenerate (N = formal dimension of A).
    """
    if x.is_zero:
        raise ValueError("x must be nonzero")
    if x.degree() != 1:
        raise ValueError("x must have degree 1")
    if not A.contains(x):
        raise ValueError("x does not lie in the subalgebra")
    pd = A.check_poincare_duality()
    if not pd.holds:
        raise ValueError(f"subalgebra is not Poincare dual: {pd.detail}")
    N = A.formal_dim
    dims = A.dims()

    ideal_spans: list[linalg.Subspace] = []
    ideal_dims = []
    for k in range(A.n + 1):
        rows = []
        if k >= 1:
            for b in A.basis(k - 1):
                w = wedge(x, b)
                if w.is_zero:
                    continue
                coords = A.coords_in_basis(w, k)
                if coords is None:
                    raise ValueError("ideal leaves the subalgebra; A is not closed under wedge")
                rows.append(coords)
        span = linalg.Subspace(dims[k], rows)
        ideal_spans.append(span)
        ideal_dims.append(span.rank)

    quotient_dims = tuple(dims[k] - ideal_dims[k] for k in range(A.n + 1))
    dim_ideal = sum(ideal_dims)
    dim_quotient = sum(quotient_dims)

    pd_holds = True
    failing = None
    if quotient_dims[N] != 0 or (N >= 1 and quotient_dims[N - 1] != 1):
        pd_holds = False
        failing = N
    if pd_holds and N >= 1:
        # pairing of quotient classes into the 1-dimensional degree N-1 piece
        for k in range(0, (N - 1) // 2 + 1):
            qk, qnk = quotient_dims[k], quotient_dims[N - 1 - k]
            if qk != qnk:
                pd_holds, failing = False, k
                break
            if qk == 0:
                continue
            rows_k = _quotient_reps(A, ideal_spans, k)
            rows_nk = _quotient_reps(A, ideal_spans, N - 1 - k)
            gram = []
            for a in rows_k:
                row = []
                for b in rows_nk:
                    w = wedge(a, b)
                    if w.is_zero:
                        row.append(Fraction(0))
                        continue
                    coords = A.coords_in_basis(w, N - 1)
                    red = ideal_spans[N - 1].coords_modulo(coords)
                    row.append(next((c for c in red if c != 0), Fraction(0)))
                gram.append(row)
            if linalg.rank(gram) != qk:
                pd_holds, failing = False, k
                break

    return QuotientReport(
        dim_quotient=dim_quotient,
        dim_ideal=dim_ideal,
        quotient_dims=quotient_dims,
        ideal_dims=tuple(ideal_dims),
        pd_holds=pd_holds,
        failing_degree=failing,
    )


def _quotient_reps(
    A: ConcreteSubalgebra, ideal_spans: list[linalg.Subspace], k: int
) -> list[Multivector]:
    """Basis vectors of A_k whose classes span A_k/(x)_k."""
    pivots = set(ideal_spans[k].pivots)
    return [b for i, b in enumerate(A.basis(k)) if i not in pivots]
