"""Explicit wrapping maps and their numerical verification.

The maps: the strip-to-punctured-disk map (r, theta) = (x + e^-y (1-x),
y + ln r); the plane-to-sphere map wrapping alternating strips over the
two hemispheres, which misses both poles; the torus collapse sending
each unit cube's inscribed ball over a sphere with degree one; and the
join construction combining the two for maps into S^n missing the
equatorial S^{n-2}.

Verification is sampling-based: central-difference Jacobians pulled
back through the chart (for a sphere target, the signed volume with
the outward normal appended), midpoint quadrature over balls for the
normalized degree, grid Lipschitz ratios, Jacobian floors on declared
sets, and quasiregularity ratios.  Piecewise seams are not C^1 (the
plane-to-sphere map is antipodally glued across the x-axis), so seam
neighborhoods are masked out of differentiation samples; estimates are
a.e.-sampled values, tagged with their grid resolution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

FD_STEP = 1e-5
SEAM_MASK_FACTOR = 10.0


# ---------------------------------------------------------------------------
# Raw evaluators (vectorized)
# ---------------------------------------------------------------------------


def eval_f0(x, y):
    """The strip map on [-1,1] x [0,inf): polar output (r, theta).

    r = x + e^-y (1 - x), theta = y + ln r for x >= 0; the x < 0 half
    is the mirror (r(|x|,y), -theta(|x|,y)).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(np.abs(x) > 1 + 1e-12) or np.any(y < -1e-12):
        raise ValueError("f0 domain is [-1,1] x [0,inf)")
    ax = np.abs(x)
    r = ax + np.exp(-y) * (1.0 - ax)
    theta = y + np.log(r)
    theta = np.where(x < 0, -theta, theta)
    return r, theta


def _hemisphere_chart(r, theta, upper):
    """p_+/p_- : disk -> hemisphere, (sin(pi r/2) e^{i theta}, +-cos(pi r/2))."""
    s = np.sin(np.pi * r / 2.0)
    z = np.cos(np.pi * r / 2.0)
    z = np.where(upper, z, -z)
    return np.stack([s * np.cos(theta), s * np.sin(theta), z], axis=-1)


def eval_sphere_wrap(x, y):
    """Plane -> S^2 c R^3, periodic with period 4 in x and antipodally
    reflected in y; misses both poles."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    lower = y < 0
    yy = np.abs(y)
    xx = np.mod(x + 1.0, 4.0) - 1.0  # into [-1, 3)
    north = xx <= 1.0
    xb = np.where(north, xx, 2.0 - xx)
    r, theta = eval_f0(xb, yy)
    out = _hemisphere_chart(r, theta, north)
    return np.where(lower[..., None], -out, out)


def eval_torus_collapse(z):
    """R^d -> S^d c R^{d+1}: per unit cube, the inscribed ball maps
    radially over the sphere with degree one, the rest to the basepoint
    (0, ..., 0, -1)."""
    z = np.atleast_2d(np.asarray(z, dtype=float))
    u = z - np.floor(z) - 0.5
    s = np.sqrt(np.sum(u * u, axis=-1))
    angle = 2.0 * np.pi * np.minimum(s, 0.5)
    with np.errstate(invalid="ignore", divide="ignore"):
        factor = np.where(s > 1e-12, np.sin(angle) / np.where(s > 1e-12, s, 1.0), 2.0 * np.pi)
    head = factor[..., None] * u
    tail = np.cos(angle)[..., None]
    out = np.concatenate([head, tail], axis=-1)
    return out


def _flip_first(z):
    zz = np.array(z, dtype=float, copy=True)
    zz[..., 0] = -zz[..., 0]
    return zz


def eval_fn(x, y, z, n):
    """R^n -> S^n c R^{n+1} through the join of a circle and S^{n-2}.

    q(w, u) = (sin(pi|w|/2) w/|w|, cos(pi|w|/2) u) with w the strip-map
    output and u the torus collapse of z; on the strip [1,3] the roles
    reflect through x -> 2 - x with the first z coordinate flipped, and
    the lower half plane reflects y with the same flip.  The image
    avoids the equatorial S^{n-2} (the locus w = 0) because |w| > 0.
    """
    if n < 3:
        raise ValueError("join construction needs n >= 3")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    z = np.asarray(z, dtype=float)
    if z.shape[-1] != n - 2:
        raise ValueError(f"z must have {n - 2} coordinates")
    lower = y < 0
    yy = np.abs(y)
    zz = np.where(lower[..., None], _flip_first(z), z)
    xx = np.mod(x + 1.0, 4.0) - 1.0
    south = xx > 1.0
    xb = np.where(south, 2.0 - xx, xx)
    zz = np.where(south[..., None], _flip_first(zz), zz)
    r, theta = eval_f0(xb, yy)
    u = eval_torus_collapse(zz)
    s = np.sin(np.pi * r / 2.0)
    c = np.cos(np.pi * r / 2.0)
    return np.concatenate(
        [ (s * np.cos(theta))[..., None], (s * np.sin(theta))[..., None], c[..., None] * u ],
        axis=-1,
    )


# ---------------------------------------------------------------------------
# Map objects
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TargetSpace:
    kind: str  # "sphere" | "euclidean"
    ambient: int

    def distance(self, p: np.ndarray, q: np.ndarray) -> np.ndarray:
        if self.kind == "sphere":
            dots = np.clip(np.sum(p * q, axis=-1), -1.0, 1.0)
            return np.arccos(dots)
        return np.linalg.norm(p - q, axis=-1)


@dataclass(frozen=True)
class EvaluableMap:
    """Vectorized map with target metric data and a seam-distance mask."""

    name: str
    domain_dim: int
    target: TargetSpace
    func: Callable[[np.ndarray], np.ndarray]
    seam_distance: Callable[[np.ndarray], np.ndarray] | None = None

    def __call__(self, pts: np.ndarray) -> np.ndarray:
        return self.func(np.asarray(pts, dtype=float))

    def seam_dist(self, pts: np.ndarray) -> np.ndarray:
        pts = np.asarray(pts, dtype=float)
        if self.seam_distance is None:
            return np.full(pts.shape[:-1], np.inf)
        return self.seam_distance(pts)


def _dist_to_odd(x):
    t = (x - 1.0) / 2.0
    return 2.0 * np.abs(t - np.round(t))


def identity_map(dim: int) -> EvaluableMap:
    return EvaluableMap("identity", dim, TargetSpace("euclidean", dim), lambda p: p.copy())


def constant_map(dim: int, point: Sequence[float] | None = None) -> EvaluableMap:
    pt = np.asarray(point if point is not None else [0.0] * dim + [1.0], dtype=float)
    return EvaluableMap(
        "constant",
        dim,
        TargetSpace("sphere", dim + 1) if len(pt) == dim + 1 else TargetSpace("euclidean", len(pt)),
        lambda p, pt=pt: np.broadcast_to(pt, p.shape[:-1] + pt.shape).copy(),
    )


def radial_stretch_map(alpha: float, dim: int = 2) -> EvaluableMap:
    def f(p):
        r = np.linalg.norm(p, axis=-1, keepdims=True)
        return np.where(r > 0, r**alpha * p, 0.0)

    return EvaluableMap(
        f"radial-stretch({alpha})",
        dim,
        TargetSpace("euclidean", dim),
        f,
        seam_distance=lambda p: np.linalg.norm(p, axis=-1),
    )


def f0_map() -> EvaluableMap:
    def f(p):
        r, theta = eval_f0(p[..., 0], p[..., 1])
        return np.stack([r * np.cos(theta), r * np.sin(theta)], axis=-1)

    return EvaluableMap(
        "strip-to-disk",
        2,
        TargetSpace("euclidean", 2),
        f,
        seam_distance=lambda p: np.abs(p[..., 0]),
    )


def sphere_wrap_map() -> EvaluableMap:
    return EvaluableMap(
        "sphere-wrap",
        2,
        TargetSpace("sphere", 3),
        lambda p: eval_sphere_wrap(p[..., 0], p[..., 1]),
        seam_distance=lambda p: np.minimum(np.abs(p[..., 1]), _dist_to_odd(p[..., 0])),
    )


def torus_collapse_map(d: int) -> EvaluableMap:
    def seam(p):
        u = p - np.floor(p) - 0.5
        s = np.sqrt(np.sum(u * u, axis=-1))
        return np.abs(s - 0.5)

    return EvaluableMap(
        f"torus-collapse({d})",
        d,
        TargetSpace("sphere", d + 1),
        lambda p: eval_torus_collapse(p),
        seam_distance=seam,
    )


def join_map(n: int) -> EvaluableMap:
    def f(p):
        return eval_fn(p[..., 0], p[..., 1], p[..., 2:], n)

    def seam(p):
        u = p[..., 2:] - np.floor(p[..., 2:]) - 0.5
        s = np.sqrt(np.sum(u * u, axis=-1))
        return np.minimum(
            np.minimum(np.abs(p[..., 1]), _dist_to_odd(p[..., 0])), np.abs(s - 0.5)
        )

    return EvaluableMap(f"join({n})", n, TargetSpace("sphere", n + 1), f, seam_distance=seam)


# ---------------------------------------------------------------------------
# Differential sampling
# ---------------------------------------------------------------------------


def partials(m: EvaluableMap, pts: np.ndarray, step: float = FD_STEP) -> np.ndarray:
    """Central-difference partials, shape (..., ambient, domain_dim)."""
    pts = np.asarray(pts, dtype=float)
    cols = []
    for j in range(m.domain_dim):
        e = np.zeros(m.domain_dim)
        e[j] = step
        cols.append((m(pts + e) - m(pts - e)) / (2.0 * step))
    return np.stack(cols, axis=-1)


def signed_jacobian(m: EvaluableMap, pts: np.ndarray, step: float = FD_STEP) -> np.ndarray:
    """Pullback density of the target volume form.

    Euclidean targets: det of the square differential.  Sphere targets:
    det of the differential with the outward normal appended as the
    last column, the signed volume spanned on the tangent space.
    """
    d = partials(m, pts, step)
    if m.target.kind == "euclidean":
        if m.target.ambient != m.domain_dim:
            raise ValueError("euclidean target dimension must match the domain")
        return np.linalg.det(d)
    values = m(pts)
    mat = np.concatenate([d, values[..., None]], axis=-1)
    return np.linalg.det(mat)


def operator_norm(m: EvaluableMap, pts: np.ndarray, step: float = FD_STEP) -> np.ndarray:
    d = partials(m, pts, step)
    return np.linalg.svd(d, compute_uv=False)[..., 0]


def _chunked(pts: np.ndarray, fn, chunk: int = 200_000) -> np.ndarray:
    out = []
    for i in range(0, len(pts), chunk):
        out.append(fn(pts[i: i + chunk]))
    return np.concatenate(out) if out else np.zeros(0)


@dataclass(frozen=True)
class DegreeReport:
    """Normalized degree R^-n * integral of the Jacobian over B_R, per R."""

    map_name: str
    domain_dim: int
    radii: tuple[float, ...]
    normalized: tuple[float, ...]
    quadrature_step: float
    fd_step: float = FD_STEP
    lipschitz: float | None = None
    jacobian_floor: float | None = None
    qr_ratio: float | None = None

    def slope(self) -> float:
        """Least-squares slope of normalized degree against R."""
        r = np.asarray(self.radii)
        v = np.asarray(self.normalized)
        a = np.vstack([r, np.ones_like(r)]).T
        coef, *_ = np.linalg.lstsq(a, v, rcond=None)
        return float(coef[0])

    def to_text(self) -> str:
        lines = [
            f"# map\t{self.map_name}",
            f"# domain_dim\t{self.domain_dim}",
            f"# quadrature_step\t{self.quadrature_step:.6g}",
            f"# fd_step\t{self.fd_step:.6g}",
        ]
        if self.lipschitz is not None:
            lines.append(f"# lipschitz\t{self.lipschitz:.12g}")
        if self.jacobian_floor is not None:
            lines.append(f"# jacobian_floor\t{self.jacobian_floor:.12g}")
        if self.qr_ratio is not None:
            lines.append(f"# qr_ratio\t{self.qr_ratio:.12g}")
        lines.append("R\tnormalized_integral")
        for r, v in zip(self.radii, self.normalized):
            lines.append(f"{r:.6g}\t{v:.12g}")
        return "\n".join(lines) + "\n"


def asymptotic_degree(
    m: EvaluableMap, radii: Sequence[float], quadrature_step: float, fd_step: float = FD_STEP
) -> DegreeReport:
    """Midpoint quadrature of the signed Jacobian over concentric balls.

    One grid at the largest radius serves every R via masks.  Samples
    whose difference stencil sits within SEAM_MASK_FACTOR * fd_step of
    a seam are dropped; with quadrature_step >> fd_step the omitted
    mass vanishes under refinement.
    """
    radii = [float(r) for r in radii]
    if not radii or any(radii[i] >= radii[i + 1] for i in range(len(radii) - 1)):
        raise ValueError("radii must be increasing and nonempty")
    rmax = radii[-1]
    h = quadrature_step
    if h > rmax / 4:
        raise ValueError("quadrature step too coarse relative to the largest radius")
    axes = [np.arange(-rmax + h / 2, rmax, h)] * m.domain_dim
    grids = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=-1)
    dist2 = np.sum(pts * pts, axis=-1)
    inside = dist2 <= rmax * rmax
    pts = pts[inside]
    dist2 = dist2[inside]
    seam = _chunked(pts, m.seam_dist)
    keep = seam > SEAM_MASK_FACTOR * fd_step
    jac = np.zeros(len(pts))
    jac[keep] = _chunked(pts[keep], lambda q: signed_jacobian(m, q, fd_step))
    cell = h**m.domain_dim
    normalized = []
    for r in radii:
        total = float(jac[dist2 <= r * r].sum() * cell)
        normalized.append(total / r**m.domain_dim)
    return DegreeReport(
        m.name, m.domain_dim, tuple(radii), tuple(normalized), h, fd_step
    )


def estimate_lipschitz(
    m: EvaluableMap, bounds: Sequence[tuple[float, float]], grid_step: float
) -> float:
    """Max over grid-neighbor pairs of target distance over source distance.

    Pairs whose segment midpoint lies within one grid step of a seam
    are excluded (piecewise gluing lines are not C^1; the antipodal
    y = 0 gluing of the sphere wrap is a genuine metric seam).
    """
    axes = [np.arange(lo, hi + grid_step / 2, grid_step) for lo, hi in bounds]
    grids = np.meshgrid(*axes, indexing="ij")
    pts = np.stack(grids, axis=-1)
    values = m(pts.reshape(-1, m.domain_dim)).reshape(pts.shape[:-1] + (m.target.ambient,))
    best = 0.0
    for axis in range(m.domain_dim):
        sl_a = [slice(None)] * m.domain_dim
        sl_b = [slice(None)] * m.domain_dim
        sl_a[axis] = slice(None, -1)
        sl_b[axis] = slice(1, None)
        p = values[tuple(sl_a)]
        q = values[tuple(sl_b)]
        mid = (pts[tuple(sl_a)] + pts[tuple(sl_b)]) / 2.0
        seam = m.seam_dist(mid.reshape(-1, m.domain_dim)).reshape(mid.shape[:-1])
        dist = m.target.distance(
            p.reshape(-1, m.target.ambient), q.reshape(-1, m.target.ambient)
        ).reshape(seam.shape)
        ok = seam > grid_step
        if np.any(ok):
            best = max(best, float(dist[ok].max() / grid_step))
    return best


def jacobian_floor(
    m: EvaluableMap,
    sampler: Callable[[int, np.random.Generator], np.ndarray],
    samples: int,
    seed: int = 0,
    fd_step: float = FD_STEP,
) -> float:
    """Min sampled Jacobian over a declared set (seam-adjacent points dropped)."""
    rng = np.random.default_rng(seed)
    pts = sampler(samples, rng)
    seam = m.seam_dist(pts)
    pts = pts[seam > SEAM_MASK_FACTOR * fd_step]
    jac = _chunked(pts, lambda q: signed_jacobian(m, q, fd_step))
    return float(jac.min()) if len(jac) else math.inf


def sphere_wrap_strip_sampler(y_window: tuple[float, float] = (1.0, 20.0), periods: int = 3):
    """Uniform samples on the strips [2z + 1/2, 2z + 3/2] x (|y| in window)."""

    def sample(count: int, rng: np.random.Generator) -> np.ndarray:
        z = rng.integers(-periods, periods, size=count)
        x = 2.0 * z + 0.5 + rng.uniform(0.0, 1.0, size=count)
        y = rng.uniform(y_window[0], y_window[1], size=count)
        y *= rng.choice([-1.0, 1.0], size=count)
        return np.stack([x, y], axis=-1)

    return sample


QR_DIVERGENCE_RATIO = 1e6
QR_DEGENERATE_FRACTION = 0.01


@dataclass(frozen=True)
class QRRatioReport:
    ratio_sup: float
    diverged: bool
    degenerate_fraction: float
    samples: int


def quasiregularity_ratio(m: EvaluableMap, pts: np.ndarray, fd_step: float = FD_STEP) -> QRRatioReport:
    """sup |Df|^n / det Df over samples with det > 0.

    Flags divergence when the ratio exceeds QR_DIVERGENCE_RATIO or the
    fraction of samples with det <= 0 looks positive-measure.
    """
    pts = np.asarray(pts, dtype=float)
    jac = signed_jacobian(m, pts, fd_step)
    op = operator_norm(m, pts, fd_step)
    positive = jac > 0
    frac_bad = float(np.mean(~positive))
    if not np.any(positive):
        return QRRatioReport(math.inf, True, frac_bad, len(pts))
    ratio = op[positive] ** m.domain_dim / jac[positive]
    sup = float(ratio.max())
    diverged = sup > QR_DIVERGENCE_RATIO or frac_bad > QR_DEGENERATE_FRACTION
    return QRRatioReport(sup, diverged, frac_bad, len(pts))
