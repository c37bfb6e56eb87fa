r"""Closed-form Fubini-Study geometry of CP^n in the affine chart Z in C^n.

Conventions: the level-N Kahler potential is N log(1 + |Z|^2), the metric is
g_{i\bar j} = \partial_i \bar\partial_j of it, and lengths are measured with
ds^2 = g_{i\bar j} dZ_i d\bar Z_j at level one.  With this normalization the
diameter of CP^n is pi/2, geodesics are closed of length pi and the cut locus
of a point is the set of points at distance pi/2.
"""

from __future__ import annotations

import numpy as np

from .core import INFINITY_TOL, InvalidRayError, ModelConfig, PointAtInfinity, chart_point

#: Central finite-difference step used for metric and bracket checks.
FD_STEP = 1e-4


def kahler_potential(cfg: ModelConfig, Z) -> float:
    Z = chart_point(Z, cfg.n)
    return cfg.N * np.log1p(np.vdot(Z, Z).real)


def fs_metric(cfg: ModelConfig, Z, level: int | None = None) -> np.ndarray:
    """Fubini-Study metric matrix ``g[i, j] = g_{i \\bar j}`` at `Z`.

    `level` overrides ``cfg.N`` (use ``level=1`` for the distance metric).
    """
    Z = chart_point(Z, cfg.n)
    N = cfg.N if level is None else level
    s = 1.0 + np.vdot(Z, Z).real
    return N * (s * np.eye(cfg.n) - np.outer(Z.conj(), Z)) / s**2


def complex_hessian(f, Z, step: float = FD_STEP) -> np.ndarray:
    r"""Matrix of \partial_i \bar\partial_j f for a real function f on C^n, by central differences."""
    Z = np.asarray(Z, dtype=complex)
    n = Z.shape[0]
    # real coordinates (x_1..x_n, y_1..y_n)
    dirs = np.concatenate([np.eye(n), 1j * np.eye(n)])
    m = 2 * n
    H = np.empty((m, m))
    f0 = f(Z)
    for a in range(m):
        for b in range(a, m):
            if a == b:
                val = (f(Z + step * dirs[a]) - 2 * f0 + f(Z - step * dirs[a])) / step**2
            else:
                pp = f(Z + step * (dirs[a] + dirs[b]))
                pm = f(Z + step * (dirs[a] - dirs[b]))
                mp = f(Z - step * (dirs[a] - dirs[b]))
                mm = f(Z - step * (dirs[a] + dirs[b]))
                val = (pp - pm - mp + mm) / (4 * step**2)
            H[a, b] = H[b, a] = val
    Hxx, Hxy, Hyx, Hyy = H[:n, :n], H[:n, n:], H[n:, :n], H[n:, n:]
    # d_i dbar_j = 1/4 (dx_i - i dy_i)(dx_j + i dy_j)
    return 0.25 * ((Hxx + Hyy) + 1j * (Hxy - Hyx))


def _chart_cos_sin(Z: np.ndarray, W: np.ndarray) -> tuple[float, float]:
    """cos and sin of the distance between chart points.

    sin is taken from the Lagrange identity on the lifts (1, Z), (1, W) so it
    stays accurate near distance zero.
    """
    ip = 1.0 + np.vdot(W, Z)
    norms = np.sqrt((1.0 + np.vdot(Z, Z).real) * (1.0 + np.vdot(W, W).real))
    wedge2 = np.sum(np.abs(Z - W) ** 2)
    if Z.shape[0] > 1:
        cross = np.outer(Z, W) - np.outer(W, Z)
        wedge2 += np.sum(np.abs(np.triu(cross, 1)) ** 2)
    return abs(ip) / norms, np.sqrt(wedge2) / norms


def geodesic_distance(cfg: ModelConfig, Z, W) -> float:
    """Fubini-Study distance in [0, pi/2] (level-one normalization)."""
    Z = chart_point(Z, cfg.n)
    W = chart_point(W, cfg.n)
    c, s = _chart_cos_sin(Z, W)
    return float(np.arctan2(s, c))


def metric_norm(cfg: ModelConfig, Z, V) -> float:
    """Level-one length of the holomorphic tangent vector `V` at `Z`."""
    g = fs_metric(cfg, Z, level=1)
    V = np.asarray(V, dtype=complex)
    return float(np.sqrt(max(np.real(V @ g @ V.conj()), 0.0)))


def geodesic_exp(cfg: ModelConfig, base, V, t: float):
    """Point reached at time `t` along the geodesic from `base` with initial velocity `V`.

    Uses the horizontal lift to the unit sphere in C^(n+1); the result is a
    chart point, or a :class:`PointAtInfinity` when the geodesic has left
    the chart (this happens exactly at the cut locus of Z = 0).
    """
    Z = chart_point(base, cfg.n)
    V = chart_point(V, cfg.n)
    speed = metric_norm(cfg, Z, V)
    if speed == 0.0 or t == 0.0:
        return Z.copy()
    lift = np.concatenate(([1.0 + 0j], Z))
    scale = np.linalg.norm(lift)
    p = lift / scale
    u = np.concatenate(([0j], V)) / scale
    u_h = u - p * np.vdot(p, u)
    u_h /= np.linalg.norm(u_h)
    w = np.cos(t * speed) * p + np.sin(t * speed) * u_h
    if abs(w[0]) <= INFINITY_TOL * np.linalg.norm(w):
        return PointAtInfinity(w)
    return w[1:] / w[0]


def cut_angle_tolerance(N: int, tol: float) -> float:
    """Geometric tolerance matching a threshold `tol` on a level-N normalized overlap.

    The normalized overlap of level-N coherent vectors is cos(d)^N, so
    ``|overlap| < tol`` is the same event as ``d > pi/2 - arcsin(tol**(1/N))``.
    """
    return float(np.arcsin(tol ** (1.0 / N)))


def in_cut_locus(cfg: ModelConfig, Z, W, tol: float) -> bool:
    """True iff W is at maximal distance pi/2 from Z, i.e. ``d(Z, W) >= pi/2 - tol``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    return geodesic_distance(cfg, Z, W) >= np.pi / 2 - tol


def cayley_distance(u, v) -> float:
    """Hermitian elliptic distance arccos(|(u, v)| / (|u| |v|)) between two rays.

    Evaluated as atan2(sin, cos) with sin taken from the component of v
    orthogonal to u, which is accurate for nearby rays as well.
    """
    u = np.asarray(u, dtype=complex).ravel()
    v = np.asarray(v, dtype=complex).ravel()
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        raise InvalidRayError("a projective ray needs a nonzero representative")
    u, v = u / nu, v / nv
    c = np.vdot(u, v)
    s = np.linalg.norm(v - c * u)
    return float(np.arctan2(s, abs(c)))


def wirtinger_gradient(f, Z, step: float = FD_STEP) -> tuple[np.ndarray, np.ndarray]:
    """(df/dZ_k, df/dZbar_k) of a function on C^n by central differences."""
    Z = np.asarray(Z, dtype=complex)
    n = Z.shape[0]
    d = np.empty(n, dtype=complex)
    dbar = np.empty(n, dtype=complex)
    for k in range(n):
        e = np.zeros(n, dtype=complex)
        e[k] = step
        fx = (f(Z + e) - f(Z - e)) / (2 * step)
        fy = (f(Z + 1j * e) - f(Z - 1j * e)) / (2 * step)
        d[k] = 0.5 * (fx - 1j * fy)
        dbar[k] = 0.5 * (fx + 1j * fy)
    return d, dbar


def poisson_bracket(cfg: ModelConfig, A, B, Z, step: float = FD_STEP) -> complex:
    """Poisson bracket {a, b} with respect to the level-N Kahler form at `Z`.

    `A` and `B` are either operators, in which case their diagonal covariant
    symbols are used, or plain functions on the chart.

    The sign is fixed so that the su(2) relation holds: for the spin
    operators {s_x, s_y} = s_z, matching Im of the star commutator.  That
    gives {a, b} = -(i/N) sum g1^{jk} (d_k a dbar_j b - d_k b dbar_j a) with
    g1 the level-one metric.
    """
    Z = chart_point(Z, cfg.n)
    a = _as_chart_function(cfg, A)
    b = _as_chart_function(cfg, B)
    da, dbar_a = wirtinger_gradient(a, Z, step)
    db, dbar_b = wirtinger_gradient(b, Z, step)
    ginv = np.linalg.inv(fs_metric(cfg, Z, level=1))
    # ginv[j, k] = g^{\bar j k}
    total = np.einsum("jk,k,j->", ginv, da, dbar_b) - np.einsum("jk,k,j->", ginv, db, dbar_a)
    return complex(-1j / cfg.N * total)


def _as_chart_function(cfg: ModelConfig, A):
    if callable(A):
        return A
    from .quantize import diagonal_symbol  # quantize depends on this module

    return diagonal_symbol(cfg, A)
