"""Integration against the invariant measure on CP^n in the affine chart.

The reference measure is dmu = (1 + |Z|^2)^-(n+1) dlambda (dlambda the
Lebesgue measure on C^n); the total volume is pi^n / n!.  A level-L
integrand carries the extra weight (1 + |Z|^2)^-L.

Two tiers: closed-form monomial moments for any n, and a tensor grid for
n = 1 that is exact on level-L monomials of bidegree at most L.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import factorial

import numpy as np

from .core import ModelConfig, UnsupportedDimensionError


class IntegrandError(FloatingPointError):
    """The integrand returned NaN at a quadrature node."""


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes (shape (m, n)), positive weights for dmu, and the joint degree of exactness.

    `exact_degree` = 2L means every Z^alpha Zbar^beta with |alpha|, |beta| <= L
    is integrated exactly against the level-L weight.
    """

    nodes: np.ndarray
    weights: np.ndarray
    exact_degree: int

    def __post_init__(self):
        if self.nodes.shape[0] != self.weights.shape[0]:
            raise ValueError("nodes and weights must have equal length")
        if np.any(self.weights <= 0):
            raise ValueError("quadrature weights must be positive")


def monomial_integral(cfg: ModelConfig, alpha, beta, level: int | None = None) -> float:
    """Integral of Z^alpha Zbar^beta (1 + |Z|^2)^-(L + n + 1) over C^n.

    Equals pi^n alpha! (L - |alpha|)! / (L + n)! when alpha == beta, else zero.
    L defaults to cfg.N.
    """
    L = cfg.N if level is None else level
    alpha = tuple(int(a) for a in np.atleast_1d(alpha))
    beta = tuple(int(b) for b in np.atleast_1d(beta))
    if len(alpha) != cfg.n or len(beta) != cfg.n:
        raise ValueError(f"multi-indices must have {cfg.n} entries")
    if min(alpha + beta) < 0:
        raise ValueError("multi-indices must be non-negative")
    if sum(alpha) > L or sum(beta) > L:
        raise ValueError(f"monomial degree exceeds the supported level {L}")
    if alpha != beta:
        return 0.0
    afact = math.prod(factorial(a) for a in alpha)
    return math.pi**cfg.n * afact * factorial(L - sum(alpha)) / factorial(L + cfg.n)


def volume(n: int) -> float:
    return math.pi**n / factorial(n)


def build_grid_rule(cfg: ModelConfig, radial_points: int | None = None,
                    angular_points: int | None = None) -> QuadratureRule:
    """Tensor rule on CP^1: Gauss-Legendre in u = cos(theta) times the trapezoid in phi.

    Z = tan(theta/2) e^{i phi} turns dmu into du dphi / 4, and a level-L
    monomial into a polynomial of degree L in u times e^{i k phi}, |k| <= L.
    R Gauss points and M angles therefore integrate exactly up to level
    min(2R - 1, M - 1).
    """
    if cfg.n != 1:
        raise UnsupportedDimensionError("the grid rule is only available for n = 1")
    R = 2 * cfg.N + 4 if radial_points is None else int(radial_points)
    M = 4 * cfg.N + 4 if angular_points is None else int(angular_points)
    if R < 1 or M < 1:
        raise ValueError("radial_points and angular_points must be positive")
    u, wu = np.polynomial.legendre.leggauss(R)
    r = np.sqrt((1.0 - u) / (1.0 + u))
    phi = 2.0 * np.pi * np.arange(M) / M
    nodes = (r[:, None] * np.exp(1j * phi)[None, :]).reshape(-1, 1)
    weights = np.repeat(0.25 * wu * (2.0 * np.pi / M), M)
    level = min(2 * R - 1, M - 1)
    return QuadratureRule(nodes=nodes, weights=weights, exact_degree=2 * level)


def integrate(rule: QuadratureRule, f, level: int = 0, vectorized: bool = False) -> complex:
    """Weighted sum of f over the rule against the level-`level` measure.

    The reduction is a correctly rounded sequential sum in node order, so the
    result is reproducible bit for bit.
    """
    nodes = rule.nodes
    if vectorized:
        values = np.asarray(f(nodes), dtype=complex)
    else:
        values = np.array([f(z) for z in nodes], dtype=complex)
    bad = np.flatnonzero(np.isnan(values))
    if bad.size:
        raise IntegrandError(f"integrand is NaN at node {nodes[bad[0]]}")
    w = rule.weights
    if level:
        w = w * (1.0 + np.sum(np.abs(nodes) ** 2, axis=1)) ** (-level)
    terms = w * values
    return complex(math.fsum(terms.real), math.fsum(terms.imag))
