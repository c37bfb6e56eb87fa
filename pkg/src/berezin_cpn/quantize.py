"""Berezin quantization of CP^n at level N.

Functions of Z are identified with vectors u of the representation space via
Upsilon_u(Z) = (u, e_Z); the space F_h of such functions carries the scalar
product c(h) int Upsilon_1 conj(Upsilon_2) (1+|Z|^2)^-N dmu, with
c(h) = (N+n)! / (pi^n N!) and dmu the invariant measure.  With that
normalization the coherent vectors resolve the identity, covariant symbols
compose exactly under the star product, and the kernel G_h is c(h) times the
two-point function.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, pi
from typing import Callable, Sequence

import numpy as np

from .core import (
    DEFAULT_TOL,
    DimensionMismatchError,
    ModelConfig,
    UnsupportedDimensionError,
    chart_point,
    operator,
)
from .geometry import poisson_bracket
from .quadrature import QuadratureRule, build_grid_rule, integrate, monomial_integral
from .repspace import (
    check_off_cut_locus,
    coherent_vector,
    generators,
    multi_indices,
    normalized_coherent_vector,
    normalized_overlap_modulus,
    overlap,
    sqrt_multinomials,
)


def c_tilde(cfg: ModelConfig) -> float:
    """Normalization constant (N+n)! / (pi^n N!) of the F_h scalar product."""
    return factorial(cfg.N + cfg.n) / (pi**cfg.n * factorial(cfg.N))


def _vector(cfg: ModelConfig, u) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.shape != (cfg.dim,):
        raise DimensionMismatchError(f"vector has shape {u.shape}, expected ({cfg.dim},)")
    return u


def fh_inner(cfg: ModelConfig, u, v, rule: QuadratureRule | None = None) -> complex:
    """F_h scalar product of Upsilon_u and Upsilon_v.

    Without a rule the integral is done exactly from the monomial moments;
    with a grid rule (n = 1) it is done by quadrature.
    """
    u = _vector(cfg, u)
    v = _vector(cfg, v)
    if rule is None:
        moments = np.array([monomial_integral(cfg, a, a) for a in multi_indices(cfg.n, cfg.N)])
        return complex(c_tilde(cfg) * np.sum(u.conj() * v * sqrt_multinomials(cfg.n, cfg.N) ** 2 * moments))
    if rule.exact_degree < 2 * cfg.N:
        raise ValueError(f"rule is exact to degree {rule.exact_degree}, need {2 * cfg.N}")

    def integrand(Z):
        E = coherent_vector(cfg, Z)
        return (E @ u.conj()) * (E @ v.conj()).conj()

    return c_tilde(cfg) * integrate(rule, integrand, level=cfg.N, vectorized=True)


def resolution_matrix(cfg: ModelConfig) -> np.ndarray:
    """c(h) int e_Z e_Z^dagger (1+|Z|^2)^-N dmu, assembled from exact monomial moments."""
    alpha = multi_indices(cfg.n, cfg.N)
    s = sqrt_multinomials(cfg.n, cfg.N)
    R = np.empty((cfg.dim, cfg.dim))
    for i, a in enumerate(alpha):
        for j, b in enumerate(alpha):
            R[i, j] = s[i] * s[j] * monomial_integral(cfg, a, b)
    return c_tilde(cfg) * R


def resolution_defect(cfg: ModelConfig) -> float:
    return float(np.linalg.norm(resolution_matrix(cfg) - np.eye(cfg.dim), "fro"))


def covariant_symbol(cfg: ModelConfig, A, Z, V, tol: float = DEFAULT_TOL) -> complex:
    """A(Z, Vbar) = (e_Z, A e_V) / (e_Z, e_V); raises CutLocusError when V is in CL_Z."""
    A = operator(A, cfg)
    check_off_cut_locus(cfg, Z, V, tol)
    ez = normalized_coherent_vector(cfg, Z)
    ev = normalized_coherent_vector(cfg, V)
    return complex(np.vdot(ez, A @ ev) / np.vdot(ez, ev))


def diagonal_symbol(cfg: ModelConfig, A) -> Callable[[np.ndarray], complex]:
    """Z -> A(Z, Zbar), the covariant symbol restricted to the diagonal."""
    A = operator(A, cfg)

    def symbol(Z):
        e = normalized_coherent_vector(cfg, Z)
        return complex(np.vdot(e, A @ e))

    return symbol


def bergman_kernel(cfg: ModelConfig, Z, V) -> complex:
    """L_h(Z, Vbar) = (e_V, e_Z) = (1 + <V, Z>)^N."""
    return overlap(cfg, V, Z)


def orthonormal_basis_functions(cfg: ModelConfig, Z) -> np.ndarray:
    """Values f_alpha(Z) = sqrt(N!/(alpha!(N-|alpha|)!)) Z^alpha of the orthonormal basis of F_h."""
    return coherent_vector(cfg, Z)


def bergman_kernel_basis_sum(cfg: ModelConfig, Z, V) -> complex:
    """L_h(Z, Vbar) as the sum of f_k(Z) conj(f_k(V)) over an orthonormal basis."""
    fz = orthonormal_basis_functions(cfg, Z)
    fv = orthonormal_basis_functions(cfg, V)
    return complex(np.sum(fz * fv.conj()))


def bergman_project(cfg: ModelConfig, f, Z, rule: QuadratureRule) -> complex:
    """(P_B f)(Z) = c(h) int L_h(Z, xibar) f(xi) (1+|xi|^2)^-N dmu(xi) for n = 1.

    `f` must accept a batch of nodes (shape (m, 1)).
    """
    Z = chart_point(Z, cfg.n)

    def integrand(X):
        L = (1.0 + X[:, 0].conj() * Z[0]) ** cfg.N
        return L * np.asarray(f(X))

    return c_tilde(cfg) * integrate(rule, integrand, level=cfg.N, vectorized=True)


def kernel_G(cfg: ModelConfig, Z, V) -> float:
    """G_h(Z|V) = c(h) |(e_Z, e_V)|^2 / (|e_Z|^2 |e_V|^2); zero exactly on the cut locus of Z."""
    return c_tilde(cfg) * normalized_overlap_modulus(cfg, Z, V) ** 2


@dataclass(frozen=True, eq=False)
class StarReport:
    point: np.ndarray
    quadrature_value: complex
    oracle_value: complex
    defect: float


def star_product(cfg: ModelConfig, A1, A2, Z, rule: QuadratureRule | None = None) -> StarReport:
    """(A1 * A2)(Z) = int A1(Z, vbar) A2(v, Zbar) G_h(Z|v) dmu(v), by quadrature on CP^1.

    The poles of the symbols are cancelled by the zeros of G_h before
    evaluation: the fused integrand is c(h) (e_Z, A1 e_v)(e_v, A2 e_Z) on
    unit coherent vectors, which is bounded on the whole sphere.  The
    oracle is the covariant symbol of the operator product A1 A2 at (Z, Z).
    """
    if cfg.n != 1:
        raise UnsupportedDimensionError("the numerical star product is implemented for n = 1")
    A1 = operator(A1, cfg)
    A2 = operator(A2, cfg)
    Z = chart_point(Z, cfg.n)
    rule = build_grid_rule(cfg) if rule is None else rule
    if rule.exact_degree < 2 * cfg.N:
        raise ValueError(f"rule is exact to degree {rule.exact_degree}, need {2 * cfg.N}")
    ez = normalized_coherent_vector(cfg, Z)
    left = ez.conj() @ A1  # v -> (e_Z, A1 e_v)
    right = A2 @ ez  # v -> (e_v, A2 e_Z)

    def integrand(X):
        E = normalized_coherent_vector(cfg, X)
        return (E @ left) * (E.conj() @ right)

    value = c_tilde(cfg) * integrate(rule, integrand, vectorized=True)
    oracle = covariant_symbol(cfg, A1 @ A2, Z, Z)
    return StarReport(point=Z, quadrature_value=value, oracle_value=oracle, defect=abs(value - oracle))


def epsilon_function(cfg: ModelConfig, Z) -> float:
    """epsilon(Z) = |e_Z|^2 h(Z) in the frame with h = (1+|Z|^2)^-N; constant (= 1) for CP^n."""
    Z = chart_point(Z, cfg.n)
    e = coherent_vector(cfg, Z)
    return float(np.vdot(e, e).real * (1.0 + np.vdot(Z, Z).real) ** (-cfg.N))


def spin_operators(N: int, normalized: bool = True) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Spin-N/2 operators (S_x, S_y, S_z) on the n = 1 representation space.

    S_+ is the raising generator F+, S_z = diag(k - N/2).  With `normalized`
    each is divided by N/2 so the symbols range over the unit sphere.
    """
    gens = generators(ModelConfig(1, N))
    Sp, Sm = gens.raising[0], gens.lowering[0]
    Sx = (Sp + Sm) / 2
    Sy = (Sp - Sm) / 2j
    Sz = gens.cartan[0] / 2
    if normalized:
        return Sx / (N / 2), Sy / (N / 2), Sz / (N / 2)
    return Sx, Sy, Sz


def correspondence_scan(levels: Sequence[int], family: Callable[[int], tuple], Z,
                        rule_factory: Callable[[ModelConfig], QuadratureRule] | None = None) -> dict:
    """Measure how the star product approaches the classical product as N grows (n = 1).

    For each level N with (A1, A2) = family(N):
      d1 = |(A1 * A2)(Z) - a1(Z) a2(Z)|
      d2 = |N Im[(A1 * A2 - A2 * A1)(Z)] - N {a1, a2}(Z)|
    with {,} the bracket of the level-N Kahler form, so N{,} is the level-one
    bracket.  Returns the rows and the least-squares slope of log d1 against
    log N.
    """
    rows = []
    for N in levels:
        cfg = ModelConfig(1, N)
        rule = build_grid_rule(cfg) if rule_factory is None else rule_factory(cfg)
        A1, A2 = family(N)
        a1 = diagonal_symbol(cfg, A1)(Z)
        a2 = diagonal_symbol(cfg, A2)(Z)
        s12 = star_product(cfg, A1, A2, Z, rule).quadrature_value
        s21 = star_product(cfg, A2, A1, Z, rule).quadrature_value
        bracket = poisson_bracket(cfg, A1, A2, Z)
        d1 = abs(s12 - a1 * a2)
        d2 = abs(N * (s12 - s21).imag - N * bracket.real)
        rows.append({"N": int(N), "d1": float(d1), "d2": float(d2)})
    slope = fitted_slope([r["N"] for r in rows], [r["d1"] for r in rows])
    return {"rows": rows, "fitted_slope": slope}


def fitted_slope(levels, values) -> float:
    x = np.log(np.asarray(levels, dtype=float))
    y = np.log(np.asarray(values, dtype=float))
    return float(np.polyfit(x, y, 1)[0])
