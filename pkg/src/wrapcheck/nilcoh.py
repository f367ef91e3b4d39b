"""Nilpotent Lie algebras as models of fundamental groups.

A torsion-free finitely generated nilpotent group is a lattice in a
simply connected nilpotent Lie group, and the group's rational
structure is captured by the Lie algebra's structure constants.  The
invariant-form complex of that Lie group is the exterior algebra on
the dual space with differential dual to the bracket; by Nomizu's
theorem its cohomology is the cohomology ring of the associated
nilmanifold, which is what the obstruction battery consumes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .exterior import Multivector, blade_masks, wedge


class NotNilpotent(ValueError):
    """Lower central series fails to reach zero."""


class NilLieAlgebra:
    """Lie algebra on basis X_1..X_m given by rational structure constants.

    Brackets are stored for i < j only; antisymmetry is built into the
    indexing.  The Jacobi identity is checked by :func:`jacobi_check`,
    nilpotency by :func:`lower_central_series`.
    """

    __slots__ = ("dim", "_brackets")

    def __init__(self, dim: int, brackets: Mapping[tuple[int, int], Mapping[int, object]] | None = None):
        if dim < 0:
            raise ValueError("dimension must be >= 0")
        self.dim = dim
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), comps in (brackets or {}).items():
            if not (1 <= i < j <= dim):
                raise ValueError(f"bracket indices must satisfy 1 <= i < j <= dim, got ({i},{j})")
            row = {}
            for k, c in comps.items():
                if not 1 <= k <= dim:
                    raise ValueError(f"component index {k} out of range")
                c = Fraction(c)
                if c != 0:
                    row[k] = c
            if row:
                table[(i, j)] = row
        self._brackets = table

    # -- constructors -------------------------------------------------------
    @classmethod
    def abelian(cls, dim: int) -> "NilLieAlgebra":
        return cls(dim, {})

    @classmethod
    def heisenberg(cls) -> "NilLieAlgebra":
        return cls(3, {(1, 2): {3: 1}})

    @classmethod
    def filiform(cls, dim: int) -> "NilLieAlgebra":
        """[X_1, X_i] = X_{i+1} for 2 <= i < dim."""
        return cls(dim, {(1, i): {i + 1: 1} for i in range(2, dim)})

    @classmethod
    def direct_sum(cls, a: "NilLieAlgebra", b: "NilLieAlgebra") -> "NilLieAlgebra":
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), comps in a._brackets.items():
            table[(i, j)] = dict(comps)
        for (i, j), comps in b._brackets.items():
            table[(i + a.dim, j + a.dim)] = {k + a.dim: c for k, c in comps.items()}
        return cls(a.dim + b.dim, table)

    # -- bracket ------------------------------------------------------------
    def bracket_basis(self, i: int, j: int) -> linalg.Vector:
        """[X_i, X_j] as a coefficient vector."""
        out = linalg.zero_vector(self.dim)
        if i == j:
            return out
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        for k, c in self._brackets.get((i, j), {}).items():
            out[k - 1] = sign * c
        return out

    def bracket(self, u: Sequence, v: Sequence) -> linalg.Vector:
        out = linalg.zero_vector(self.dim)
        for i in range(self.dim):
            ui = Fraction(u[i])
            if ui == 0:
                continue
            for j in range(self.dim):
                vj = Fraction(v[j])
                if vj == 0 or i == j:
                    continue
                w = self.bracket_basis(i + 1, j + 1)
                for k in range(self.dim):
                    if w[k]:
                        out[k] += ui * vj * w[k]
        return out

    def structure_constant(self, i: int, j: int, k: int) -> Fraction:
        return Fraction(self.bracket_basis(i, j)[k - 1])

    @property
    def is_abelian(self) -> bool:
        return not self._brackets

    def change_basis(self, t: Sequence[Sequence]) -> "NilLieAlgebra":
        """Structure constants in the basis Y_j = sum_i T[i][j] X_i."""
        m = self.dim
        tmat = [linalg.as_fraction_row(r) for r in t]
        tinv_cols = []
        for j in range(m):
            e = [Fraction(1 if i == j else 0) for i in range(m)]
            x = linalg.solve(tmat, e)
            if x is None:
                raise ValueError("change of basis matrix is singular")
            tinv_cols.append(x)
        # tinv_cols[j] = T^{-1} e_j ; component k of v in Y-basis is (T^{-1} v)_k
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        cols = [[tmat[i][j] for i in range(m)] for j in range(m)]
        for i in range(m):
            for j in range(i + 1, m):
                w = self.bracket(cols[i], cols[j])
                comps = {}
                for k in range(m):
                    coeff = sum(tinv_cols[a][k] * w[a] for a in range(m))
                    if coeff != 0:
                        comps[k + 1] = coeff
                if comps:
                    table[(i + 1, j + 1)] = comps
        return NilLieAlgebra(m, table)

    def __repr__(self):
        items = ", ".join(
            f"[X{i},X{j}]=" + "+".join(f"{c}*X{k}" for k, c in sorted(comps.items()))
            for (i, j), comps in sorted(self._brackets.items())
        )
        return f"NilLieAlgebra(dim={self.dim}, {items or 'abelian'})"


def jacobi_check(g: NilLieAlgebra) -> bool:
    m = g.dim
    basis = [[Fraction(1 if i == k else 0) for i in range(m)] for k in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            for l in range(j + 1, m):
                total = linalg.zero_vector(m)
                for (a, b, c) in ((i, j, l), (j, l, i), (l, i, j)):
                    inner = g.bracket(basis[a], basis[b])
                    outer = g.bracket(inner, basis[c])
                    total = [x + y for x, y in zip(total, outer)]
                if any(x != 0 for x in total):
                    return False
    return True


def _subspace_brackets(g: NilLieAlgebra, span_rows: list[linalg.Vector]) -> list[linalg.Vector]:
    """Span of [v, X_j] for v in the given span and all basis X_j."""
    m = g.dim
    rows = []
    basis = [[Fraction(1 if i == k else 0) for i in range(m)] for k in range(m)]
    for v in span_rows:
        for b in basis:
            w = g.bracket(v, b)
            if any(x != 0 for x in w):
                rows.append(w)
    red, _ = linalg.rref(rows)
    return red


def lower_central_series(g: NilLieAlgebra) -> list[int]:
    """Dimensions [dim g_1, dim g_2, ...] down to 0; g_1 = g.

    Raises NotNilpotent if the series stabilizes above zero.
    """
    if not jacobi_check(g):
        raise ValueError("structure constants violate the Jacobi identity")
    m = g.dim
    current = [[Fraction(1 if i == k else 0) for i in range(m)] for k in range(m)]
    dims = [m]
    while dims[-1] > 0:
        nxt = _subspace_brackets(g, current)
        d = len(nxt)
        if d == dims[-1]:
            raise NotNilpotent(f"lower central series stabilizes at dimension {d}")
        dims.append(d)
        current = nxt
    return dims


def lower_central_series_subspaces(g: NilLieAlgebra) -> list[list[linalg.Vector]]:
    m = g.dim
    spans = [[[Fraction(1 if i == k else 0) for i in range(m)] for k in range(m)]]
    while spans[-1]:
        nxt = _subspace_brackets(g, spans[-1])
        if len(nxt) == len(spans[-1]):
            raise NotNilpotent("lower central series stabilizes above zero")
        spans.append(nxt)
    return spans


def nilpotency_class(g: NilLieAlgebra) -> int:
    return len(lower_central_series(g)) - 1


@dataclass(frozen=True)
class CEComplex:
    """Invariant-form complex: Lambda^k of the dual with d dual to the bracket.

    differentials[k] maps degree-k blade coordinates to degree-(k+1)
    coordinates; d(dual of X_k) = - sum_{i<j} c^k_{ij} xi_i ^ xi_j,
    extended as a graded derivation.  d o d = 0 is verified exactly.
    """

    dim: int
    differentials: tuple[tuple[tuple[Fraction, ...], ...], ...]

    def d_matrix(self, k: int):
        return self.differentials[k]

    def rank_d(self, k: int) -> int:
        if k < 0 or k >= self.dim:
            return 0
        mat = self.differentials[k]
        return linalg.rank([list(r) for r in mat]) if mat else 0


def _d_of_one_form(g: NilLieAlgebra, k: int) -> Multivector:
    """d(xi_k) = - sum_{i<j} c^k_{ij} xi_i ^ xi_j, in Lambda*(dual)."""
    m = g.dim
    terms = {}
    for (i, j), comps in g._brackets.items():
        c = comps.get(k)
        if c:
            mask = (1 << (i - 1)) | (1 << (j - 1))
            terms[mask] = terms.get(mask, Fraction(0)) - c
    return Multivector(m, terms)


def ce_differential(g: NilLieAlgebra) -> CEComplex:
    if not jacobi_check(g):
        raise ValueError("structure constants violate the Jacobi identity")
    m = g.dim
    d_one = [_d_of_one_form(g, k) for k in range(1, m + 1)]
    diffs = []
    images: list[list[Multivector]] = []
    for k in range(m + 1):
        masks_k = blade_masks(m, k)
        masks_k1 = blade_masks(m, k + 1) if k < m else []
        index = {mask: i for i, mask in enumerate(masks_k1)}
        cols = []
        col_images = []
        for mask in masks_k:
            img = Multivector.zero(m)
            bits = [i + 1 for i in range(m) if mask >> i & 1]
            for t, b in enumerate(bits):
                rest = Multivector.blade(m, [x for x in bits if x != b])
                term = wedge(d_one[b - 1], rest)
                img = img + (term if t % 2 == 0 else -term)
            col_images.append(img)
            col = linalg.zero_vector(len(masks_k1))
            for mk, c in img.items():
                col[index[mk]] = c
            cols.append(col)
        images.append(col_images)
        rows = tuple(
            tuple(cols[j][i] for j in range(len(masks_k))) for i in range(len(masks_k1))
        )
        diffs.append(rows)
    complex_ = CEComplex(m, tuple(diffs))
    # d^2 = 0 exactly; failure signals corrupted (non-Jacobi) input
    for k in range(m - 1):
        comp = linalg.mat_mul(
            [list(r) for r in complex_.differentials[k + 1]],
            [list(r) for r in complex_.differentials[k]],
        )
        if any(any(x != 0 for x in row) for row in comp):
            raise ArithmeticError("d^2 != 0: inconsistent Chevalley-Eilenberg differential")
    return complex_


def lie_cohomology_dims(g: NilLieAlgebra) -> tuple[int, ...]:
    """Betti numbers b_0..b_m of the invariant-form complex."""
    cx = ce_differential(g)
    m = g.dim
    out = []
    for k in range(m + 1):
        dim_k = math.comb(m, k)
        rank_k = cx.rank_d(k)
        rank_prev = cx.rank_d(k - 1)
        out.append(dim_k - rank_k - rank_prev)
    return tuple(out)


def quotient_by_central_ideal(
    g: NilLieAlgebra, ideal_rows: list[linalg.Vector]
) -> tuple[NilLieAlgebra, list[linalg.Vector]]:
    """Quotient Lie algebra by a (verified) ideal, with projection matrix rows.

    The complement basis is chosen by completing the ideal's reduced
    rows with standard basis vectors; the projection sends v to its
    complement coordinates.
    """
    m = g.dim
    span = linalg.Subspace(m, ideal_rows)
    # verify ideal: [v, X_j] stays inside
    basis = [[Fraction(1 if i == k else 0) for i in range(m)] for k in range(m)]
    for v in span.rows:
        for b in basis:
            if not span.contains(g.bracket(v, b)):
                raise ValueError("given subspace is not an ideal")
    pivots = set(span.pivots)
    complement = [i for i in range(m) if i not in pivots]
    q_dim = len(complement)
    # projection: reduce modulo the ideal, read complement coordinates
    proj_rows = []
    for i in complement:
        row = linalg.zero_vector(m)
        row[i] = Fraction(1)
        proj_rows.append(row)

    def project(v: linalg.Vector) -> linalg.Vector:
        red = span.reduce(v)
        return [red[i] for i in complement]

    table: dict[tuple[int, int], dict[int, Fraction]] = {}
    lifted = []
    for i in complement:
        e = linalg.zero_vector(m)
        e[i] = Fraction(1)
        lifted.append(e)
    for a in range(q_dim):
        for b in range(a + 1, q_dim):
            w = project(g.bracket(lifted[a], lifted[b]))
            comps = {k + 1: c for k, c in enumerate(w) if c != 0}
            if comps:
                table[(a + 1, b + 1)] = comps
    # projection matrix: row k = coordinates of the quotient coordinate k
    proj = []
    for idx in range(q_dim):
        row = []
        for j in range(m):
            e = linalg.zero_vector(m)
            e[j] = Fraction(1)
            row.append(project(e)[idx])
        proj.append(row)
    return NilLieAlgebra(q_dim, table), proj


@dataclass(frozen=True)
class NomizuKernel:
    kernel_dim: int
    expected: int
    abelian: bool
    q1_dim: int
    q2_dim: int


def nomizu_kernel(g: NilLieAlgebra) -> NomizuKernel:
    """Dimension of the kernel of H^2(g/[g,g]) -> H^2(g/[[g,g],g]).

    For a nonabelian nilpotent algebra this equals dim q_2 - dim q_1,
    the mechanism that forbids nonabelian fundamental groups; the
    equality is recomputed here from honest rank computations and
    cross-checked internally.
    """
    spans = lower_central_series_subspaces(g)
    if g.is_abelian:
        return NomizuKernel(0, 0, True, g.dim, g.dim)
    gamma2 = spans[1]
    gamma3 = spans[2] if len(spans) > 2 else []
    q1, _ = quotient_by_central_ideal(g, gamma2)
    q2, proj2 = quotient_by_central_ideal(g, gamma3)
    # the factor map phi: q2 -> q1 with phi . pi2 = pi1
    _, proj1 = quotient_by_central_ideal(g, gamma2)
    section = linalg.right_inverse(proj2)
    phi = linalg.mat_mul(proj1, section)
    r = q1.dim
    m2 = q2.dim
    # pullback of 2-forms along phi on blade bases
    masks1 = blade_masks(r, 2)
    masks2 = blade_masks(m2, 2)
    index2 = {mask: i for i, mask in enumerate(masks2)}
    pullback_cols = []
    for mask in masks1:
        a, b = [i for i in range(r) if mask >> i & 1]
        col = linalg.zero_vector(len(masks2))
        for ci in range(m2):
            for di in range(ci + 1, m2):
                val = phi[a][ci] * phi[b][di] - phi[a][di] * phi[b][ci]
                if val != 0:
                    col[index2[(1 << ci) | (1 << di)]] = val
        pullback_cols.append(col)
    cx2 = ce_differential(q2)
    d1 = cx2.differentials[1]  # maps 1-forms of q2 into 2-forms
    d1_cols = [ [row[j] for row in d1] for j in range(m2) ] if d1 else []
    rank_d1 = linalg.rank(d1_cols)
    stacked = pullback_cols + d1_cols
    kernel_dim = len(masks1) - (linalg.rank(stacked) - rank_d1)
    expected = m2 - r
    if kernel_dim != expected:
        raise ArithmeticError(
            f"kernel dimension {kernel_dim} != dim q2 - dim q1 = {expected}"
        )
    return NomizuKernel(kernel_dim, expected, False, r, m2)


def bass_growth_degree(g: NilLieAlgebra) -> int:
    """Polynomial growth degree: sum over k of k * dim(gamma_k / gamma_{k+1})."""
    dims = lower_central_series(g)
    return sum((k + 1) * (dims[k] - dims[k + 1]) for k in range(len(dims) - 1))


@dataclass(frozen=True)
class Pi1Verdict:
    passed: bool
    reasons: tuple[str, ...]
    growth_degree: int
    abelian: bool
    nilpotency_class: int


def pi1_verdict(g: NilLieAlgebra, n: int) -> Pi1Verdict:
    """Fundamental-group obstructions for a closed n-manifold.

    Fails when the growth degree exceeds n or when the algebra is
    nonabelian; passes only for abelian algebras of dimension <= n.
    """
    dims = lower_central_series(g)
    growth = bass_growth_degree(g)
    reasons = []
    if growth > n:
        reasons.append(f"growth degree {growth} exceeds the manifold dimension {n}")
    if not g.is_abelian:
        reasons.append("fundamental group is nilpotent but not virtually abelian")
    return Pi1Verdict(
        passed=not reasons,
        reasons=tuple(reasons),
        growth_degree=growth,
        abelian=g.is_abelian,
        nilpotency_class=len(dims) - 1,
    )
