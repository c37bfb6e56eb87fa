"""The level-N representation space of SU(n+1): symmetric power of C^(n+1).

Basis vectors are labelled by multi-indices alpha in N^n with |alpha| <= N,
ordered by total degree and then reverse-lexicographically, so that for
n = 1 the order is alpha = 0, 1, ..., N.  With a = (N - |alpha|, alpha) the basis
vector |alpha> is the monomial x^a / sqrt(a!) in homogeneous variables
(x_0, ..., x_n); |0> = x_0^N / sqrt(N!) is the lowest-weight vector e_0.

The inner product is conjugate-linear in the first argument.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import factorial, prod
from typing import NamedTuple

import numpy as np
from scipy.linalg import expm

from .core import (
    DEFAULT_TOL,
    INFINITY_TOL,
    CutLocusError,
    InvalidRayError,
    ModelConfig,
    NotUnitaryError,
    PointAtInfinity,
    PointAtInfinityError,
    chart_point,
)


@lru_cache(maxsize=None)
def multi_indices(n: int, N: int) -> np.ndarray:
    """Multi-indices alpha (shape (dim, n)) in graded reverse-lexicographic order."""
    rows = []
    for d in range(N + 1):
        block = [a for a in itertools.product(range(d, -1, -1), repeat=n) if sum(a) == d]
        rows.extend(block)
    out = np.array(rows, dtype=np.int64).reshape(-1, n)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def full_indices(n: int, N: int) -> np.ndarray:
    """Homogeneous exponents (N - |alpha|, alpha_1, ..., alpha_n) for each basis vector."""
    alpha = multi_indices(n, N)
    out = np.column_stack([N - alpha.sum(axis=1), alpha])
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def _index_of(n: int, N: int) -> dict:
    return {tuple(int(x) for x in a): i for i, a in enumerate(full_indices(n, N))}


@lru_cache(maxsize=None)
def sqrt_multinomials(n: int, N: int) -> np.ndarray:
    """sqrt(N! / (alpha! (N - |alpha|)!)) for each basis vector."""
    vals = [
        np.sqrt(float(factorial(N) // prod(factorial(int(k)) for k in a)))
        for a in full_indices(n, N)
    ]
    out = np.array(vals)
    out.setflags(write=False)
    return out


def dimension(cfg: ModelConfig) -> int:
    return cfg.dim


def lowest_weight_vector(cfg: ModelConfig) -> np.ndarray:
    e0 = np.zeros(cfg.dim, dtype=complex)
    e0[0] = 1.0
    return e0


def _monomials(Z: np.ndarray, alpha: np.ndarray) -> np.ndarray:
    # Z: (..., n) -> (..., dim)
    return np.prod(Z[..., None, :] ** alpha, axis=-1)


def coherent_vector(cfg: ModelConfig, Z) -> np.ndarray:
    """Un-normalized coherent vector e_Z = exp(sum Z_i F+_i) e_0.

    Accepts a single point (shape (n,)) or a batch (shape (m, n)).
    """
    Z = np.asarray(Z, dtype=complex)
    if Z.ndim <= 1:
        Z = chart_point(Z, cfg.n)
    elif not np.all(np.isfinite(Z)):
        raise ValueError("chart points must be finite")
    return sqrt_multinomials(cfg.n, cfg.N) * _monomials(Z, multi_indices(cfg.n, cfg.N))


def coherent_vector_homogeneous(cfg: ModelConfig, w) -> np.ndarray:
    """N-th symmetric power of a homogeneous vector w in C^(n+1).

    For w = (1, Z) this is coherent_vector(Z); it also covers points
    outside the chart (w_0 = 0).
    """
    w = np.asarray(w, dtype=complex)
    if w.shape[-1] != cfg.n + 1:
        raise ValueError(f"homogeneous vector needs {cfg.n + 1} entries")
    return sqrt_multinomials(cfg.n, cfg.N) * _monomials(w, full_indices(cfg.n, cfg.N))


def normalized_coherent_vector(cfg: ModelConfig, Z) -> np.ndarray:
    """Unit coherent vector, computed from the unit lift of (1, Z) so it never overflows."""
    Z = np.asarray(Z, dtype=complex)
    if Z.ndim <= 1:
        Z = chart_point(Z, cfg.n)
    lift = np.concatenate([np.ones(Z.shape[:-1] + (1,), dtype=complex), Z], axis=-1)
    lift /= np.linalg.norm(lift, axis=-1, keepdims=True)
    return coherent_vector_homogeneous(cfg, lift)


def normalize(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    nrm = np.linalg.norm(v)
    if nrm == 0.0:
        raise InvalidRayError("cannot normalize the zero vector")
    return v / nrm


def overlap(cfg: ModelConfig, W, Z) -> complex:
    """(e_W, e_Z) = (1 + <W, Z>)^N, conjugate-linear in W."""
    W = chart_point(W, cfg.n)
    Z = chart_point(Z, cfg.n)
    return complex((1.0 + np.vdot(W, Z)) ** cfg.N)


def normalized_overlap_modulus(cfg: ModelConfig, W, Z) -> float:
    """|(e_W, e_Z)| / (|e_W| |e_Z|) from the closed form; equals cos(d)^N."""
    W = chart_point(W, cfg.n)
    Z = chart_point(Z, cfg.n)
    c = abs(1.0 + np.vdot(W, Z)) / np.sqrt((1.0 + np.vdot(W, W).real) * (1.0 + np.vdot(Z, Z).real))
    return float(min(c, 1.0) ** cfg.N)


def check_off_cut_locus(cfg: ModelConfig, W, Z, tol: float = DEFAULT_TOL) -> None:
    """Raise CutLocusError when the normalized overlap of e_W and e_Z is below `tol`.

    Division by (e_W, e_Z) is only defined for Z outside the cut locus of W;
    every quotient in this package goes through this guard.
    """
    if normalized_overlap_modulus(cfg, W, Z) < tol:
        raise CutLocusError(
            "points are cut-locus related: the coherent-state overlap (e_W, e_Z) vanishes, "
            "so the quotient is undefined (requires (e_W, e_Z) != 0)"
        )


def polar_divisor_member(cfg: ModelConfig, W, Z, tol: float = DEFAULT_TOL) -> bool:
    """True iff e_Z is (numerically) orthogonal to e_W in the representation space.

    Tested on unit coherent vectors, i.e. |(e_W, e_Z)| < tol |e_W| |e_Z|.  The
    inner product is the coefficient sum, independent of the geometry route.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    u = normalized_coherent_vector(cfg, W)
    v = normalized_coherent_vector(cfg, Z)
    return bool(abs(np.vdot(u, v)) < tol)


def local_section(cfg: ModelConfig, u, Z, base=None, tol: float = DEFAULT_TOL) -> complex:
    """Holomorphic function Z -> (u, e_Z) / (e_base, e_Z) on the big cell of `base`.

    With base = 0 the denominator is identically one.  For any other base the
    function is only defined off the cut locus of the base point.
    """
    num = np.vdot(np.asarray(u, dtype=complex), coherent_vector(cfg, Z))
    if base is None:
        return complex(num)
    check_off_cut_locus(cfg, base, Z, tol)
    return complex(num / overlap(cfg, base, Z))


def lie_algebra_matrix(cfg: ModelConfig, k: int, l: int) -> np.ndarray:
    """Representation of the matrix unit E_kl of gl(n+1): the operator x_k d/dx_l."""
    full = full_indices(cfg.n, cfg.N)
    index = _index_of(cfg.n, cfg.N)
    M = np.zeros((cfg.dim, cfg.dim), dtype=complex)
    for col, a in enumerate(full):
        if k == l:
            M[col, col] = a[k]
            continue
        if a[l] == 0:
            continue
        b = list(int(x) for x in a)
        b[l] -= 1
        b[k] += 1
        M[index[tuple(b)], col] = np.sqrt(a[l] * (a[k] + 1))
    return M


class Generators(NamedTuple):
    raising: list
    lowering: list
    cartan: list


def generators(cfg: ModelConfig) -> Generators:
    """Raising F+_i, lowering F-_i and Cartan H_i = [F+_i, F-_i] for i = 1..n.

    F-_i annihilates the lowest-weight vector e_0.
    """
    raising = [lie_algebra_matrix(cfg, i, 0) for i in range(1, cfg.n + 1)]
    lowering = [lie_algebra_matrix(cfg, 0, i) for i in range(1, cfg.n + 1)]
    cartan = [lie_algebra_matrix(cfg, i, i) - lie_algebra_matrix(cfg, 0, 0) for i in range(1, cfg.n + 1)]
    return Generators(raising, lowering, cartan)


def coherent_vector_via_exponential(cfg: ModelConfig, Z) -> np.ndarray:
    """exp(sum Z_i F+_i) e_0 with a dense matrix exponential (reference route)."""
    Z = chart_point(Z, cfg.n)
    X = sum(z * F for z, F in zip(Z, generators(cfg).raising))
    return expm(X) @ lowest_weight_vector(cfg)


def check_group_element(g, tol: float = 1e-12) -> np.ndarray:
    g = np.asarray(g, dtype=complex)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise NotUnitaryError(f"group element must be square, got shape {g.shape}")
    if np.max(np.abs(g.conj().T @ g - np.eye(g.shape[0]))) > tol:
        raise NotUnitaryError("group element is not unitary")
    if abs(np.linalg.det(g) - 1.0) > tol:
        raise NotUnitaryError("group element does not have unit determinant")
    return g


def random_su(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random element of SU(dim)."""
    X = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    Q, R = np.linalg.qr(X)
    Q = Q * (np.diag(R) / np.abs(np.diag(R)))
    return Q / np.linalg.det(Q) ** (1.0 / dim)


def group_action_matrix(cfg: ModelConfig, g) -> np.ndarray:
    """Matrix of the N-th symmetric power of g in the monomial basis.

    Pi(g) sends the polynomial p(x) to p(g^T x); on coherent vectors this is
    Pi(g) e_v = e_{g v} for homogeneous v.
    """
    g = check_group_element(g)
    if g.shape[0] != cfg.n + 1:
        raise ValueError(f"group element must be {cfg.n + 1}x{cfg.n + 1}")
    full = full_indices(cfg.n, cfg.N)
    index = _index_of(cfg.n, cfg.N)
    fact = [prod(factorial(int(k)) for k in a) for a in full]
    unit = np.eye(cfg.n + 1, dtype=np.int64)
    M = np.zeros((cfg.dim, cfg.dim), dtype=complex)
    for col, a in enumerate(full):
        poly = {(0,) * (cfg.n + 1): 1.0 + 0j}
        for i in range(cfg.n + 1):
            for _ in range(int(a[i])):
                nxt: dict = {}
                for mono, c in poly.items():
                    for k in range(cfg.n + 1):
                        if g[k, i] == 0:
                            continue
                        key = tuple(int(x) for x in np.add(mono, unit[k]))
                        nxt[key] = nxt.get(key, 0) + c * g[k, i]
                poly = nxt
        for mono, c in poly.items():
            row = index[mono]
            M[row, col] = c * np.sqrt(fact[row] / fact[col])  # exact ints, true division
    return M


def chart_action(cfg: ModelConfig, g, Z):
    """Fractional-linear action of g on the chart point Z, or PointAtInfinity."""
    g = check_group_element(g)
    Z = chart_point(Z, cfg.n)
    w = g @ np.concatenate(([1.0 + 0j], Z))
    if abs(w[0]) <= INFINITY_TOL * np.linalg.norm(w):
        return PointAtInfinity(w)
    return w[1:] / w[0]


def covariance_defect(cfg: ModelConfig, g, Z) -> float:
    """1 - |(Pi(g) e_Z, e_{gZ})| / (|Pi(g) e_Z| |e_{gZ}|); zero when coherent vectors map to coherent vectors."""
    gZ = chart_action(cfg, g, Z)
    if isinstance(gZ, PointAtInfinity):
        raise PointAtInfinityError("g maps Z out of the chart; choose another base point")
    u = normalize(group_action_matrix(cfg, g) @ normalized_coherent_vector(cfg, Z))
    v = normalized_coherent_vector(cfg, gZ)
    return float(max(0.0, 1.0 - abs(np.vdot(u, v))))


def isotropy_character(cfg: ModelConfig, g, tol: float = 1e-10) -> complex:
    """Character chi(g) of an isotropy element of the base point, Pi(g) e_0 = chi(g)^(-1) e_0."""
    image = group_action_matrix(cfg, g) @ lowest_weight_vector(cfg)
    lam = image[0]
    if np.linalg.norm(image[1:]) > tol:
        raise ValueError("g does not fix the base point Z = 0")
    return complex(1.0 / lam)
