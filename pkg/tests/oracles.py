"""Independent brute-force oracles used to freeze expected values.

Each oracle takes a different route from the implementation it checks:
wedge signs come from an explicit bubble sort, quotient ranks from a
sorted-word monomial model with sympy rank computations, and local
solvability from a Hensel-style lifting search.
"""

from __future__ import annotations

import numpy as np
import sympy


# ---------------------------------------------------------------------------
# Permutation-sign oracle for wedge products of blades
# ---------------------------------------------------------------------------


def brute_force_wedge(a_indices, b_indices):
    """(sign, sorted indices) of e_a ^ e_b, or (0, ()) when degenerate."""
    seq = list(a_indices) + list(b_indices)
    if len(set(seq)) != len(seq):
        return 0, ()
    sign = 1
    arr = list(seq)
    for i in range(len(arr)):
        for j in range(len(arr) - 1 - i):
            if arr[j] > arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
                sign = -sign
    return sign, tuple(arr)


# ---------------------------------------------------------------------------
# Sorted-word model of graded-commutative quotients
# ---------------------------------------------------------------------------


def word_mult(degrees, w1, w2):
    """Multiply sorted generator words by insertion, counting odd-odd swaps."""
    sign = 1
    arr = []
    for g in list(w1) + list(w2):
        pos = len(arr)
        while pos > 0 and arr[pos - 1] > g:
            if degrees[arr[pos - 1]] % 2 == 1 and degrees[g] % 2 == 1:
                sign = -sign
            pos -= 1
        arr.insert(pos, g)
    for i in range(len(arr) - 1):
        if arr[i] == arr[i + 1] and degrees[arr[i]] % 2 == 1:
            return 0, ()
    return sign, tuple(arr)


def words_of_degree(degrees, k):
    out = []

    def rec(start, remaining, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for g in range(start, len(degrees)):
            if degrees[g] > remaining:
                continue
            if degrees[g] % 2 == 1 and acc and acc[-1] == g:
                continue
            acc.append(g)
            rec(g, remaining - degrees[g], acc)
            acc.pop()

    rec(0, k, [])
    return sorted(set(out))


def poly_to_words(poly):
    """GradedPolynomial -> list of (coefficient, sorted word)."""
    out = []
    for coeff, exps in poly.monomials:
        word = []
        for idx, e in enumerate(exps):
            word.extend([idx] * e)
        out.append((coeff, tuple(word)))
    return out


def oracle_quotient_ranks(presentation):
    """Ranks of the graded quotient, recomputed in the word model with
    sympy doing the linear algebra."""
    degrees = [d for _, d in presentation.generators]
    n = presentation.n
    rel_words = [poly_to_words(r) for r in presentation.relations]
    ranks = []
    for k in range(n + 1):
        basis = words_of_degree(degrees, k)
        index = {w: i for i, w in enumerate(basis)}
        rows = []
        for rel in rel_words:
            rel_deg = sum(degrees[g] for g in rel[0][1]) if rel else 0
            if rel_deg > k:
                continue
            for m in words_of_degree(degrees, k - rel_deg):
                row = [sympy.Integer(0)] * len(basis)
                nonzero = False
                for coeff, w in rel:
                    sign, prod = word_mult(degrees, m, w)
                    if sign == 0:
                        continue
                    row[index[prod]] += sympy.Rational(coeff.numerator, coeff.denominator) * sign
                    nonzero = True
                if nonzero:
                    rows.append(row)
        if rows:
            rank = sympy.Matrix(rows).rank()
        else:
            rank = 0
        ranks.append(len(basis) - rank)
    return tuple(ranks)


# ---------------------------------------------------------------------------
# Local solvability oracle for the Hilbert symbol
# ---------------------------------------------------------------------------


class OracleUndecided(RuntimeError):
    pass


def _squarefree(x) -> int:
    num = x.numerator if hasattr(x, "numerator") else int(x)
    den = getattr(x, "denominator", 1)
    m = num * den
    sign = -1 if m < 0 else 1
    m = abs(m)
    out = 1
    d = 2
    while d * d <= m:
        e = 0
        while m % d == 0:
            m //= d
            e += 1
        if e % 2:
            out *= d
        d += 1
    return sign * out * m


def hilbert_oracle(a, b, place, max_depth: int = 6) -> int:
    """Solvability of z^2 = a x^2 + b y^2 by Hensel-style lifting.

    Searches primitive solutions modulo p^m, m <= max_depth, returning
    +1 as soon as a point satisfies the multivariable Hensel criterion
    m >= 2e + 1 (e the minimal gradient valuation), and -1 when no
    primitive solutions survive a lift.
    """
    a = _squarefree(a)
    b = _squarefree(b)
    if place in ("infinity", "inf", None, 0):
        return -1 if a < 0 and b < 0 else 1
    p = int(place)

    grid = np.indices((p, p, p)).reshape(3, -1).T.astype(np.int64)
    grid = grid[np.any(grid % p != 0, axis=1)]

    def f(pts):
        x, y, z = pts[:, 0], pts[:, 1], pts[:, 2]
        return z * z - a * x * x - b * y * y

    def valuations(vals, m):
        out = np.full(vals.shape, m, dtype=np.int64)
        t = vals % (p**m)
        active = t != 0
        v = np.zeros(vals.shape, dtype=np.int64)
        while np.any(active):
            div = active & (t % p == 0)
            if not np.any(div):
                break
            v[div] += 1
            t[div] //= p
            active = div
        out[vals % (p**m) != 0] = v[vals % (p**m) != 0]
        return out

    def normalize(pts, m):
        """Scale each primitive point so its first unit coordinate is 1.

        Unit scalings act on the solution set, the Hensel criterion is
        scaling-invariant, and children of a scaled point are scalings
        of the children, so orbit representatives suffice.
        """
        if len(pts) == 0:
            return pts
        modulus = p**m
        out = np.empty_like(pts)
        for i, (x, y, z) in enumerate(pts):
            for lam in (x, y, z):
                if lam % p != 0:
                    inv = pow(int(lam), -1, modulus)
                    out[i] = [(x * inv) % modulus, (y * inv) % modulus, (z * inv) % modulus]
                    break
        return np.unique(out, axis=0)

    pts = normalize(grid[f(grid) % p == 0], 1)
    m = 1
    while True:
        if len(pts) == 0:
            return -1
        modulus = p**m
        gx = (-2 * a * pts[:, 0]) % modulus
        gy = (-2 * b * pts[:, 1]) % modulus
        gz = (2 * pts[:, 2]) % modulus
        e = np.minimum(
            np.minimum(valuations(gx, m), valuations(gy, m)), valuations(gz, m)
        )
        if np.any(m >= 2 * e + 1):
            return 1
        if m == max_depth:
            raise OracleUndecided(f"({a},{b}) at {p}: undecided at depth {max_depth}")
        lifts = np.indices((p, p, p)).reshape(3, -1).T.astype(np.int64)
        children = (pts[:, None, :] + modulus * lifts[None, :, :]).reshape(-1, 3)
        children = children[f(children) % (modulus * p) == 0]
        if len(children) > 2_000_000:
            raise OracleUndecided("solution set exploded")
        pts = normalize(children, m + 1)
        m += 1
