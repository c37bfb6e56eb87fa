"""Two-point function, characteristic function, diastasis and the coherent-state embedding.

Frame convention: the local frame over the chart has pointwise norm
|s|^2(Z, Zbar) = (1 + |Z|^2)^-N, whose analytic continuation is
|s|^2(X, Ybar) = (1 + <Y, X>)^-N.  With it the characteristic function
|s|^2(x,xbar) |s|^2(y,ybar) / | |s|^2(x,ybar) |^2 lies in [0, 1] and coincides
with the two-point function (the quantization is regular).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOL, ModelConfig, UnsupportedDimensionError, chart_point
from .geometry import (
    FD_STEP,
    cayley_distance,
    complex_hessian,
    cut_angle_tolerance,
    fs_metric,
    in_cut_locus,
)
from .repspace import (
    check_off_cut_locus,
    coherent_vector,
    normalized_coherent_vector,
    sqrt_multinomials,
)


def two_point(cfg: ModelConfig, x, y) -> float:
    """Psi(x, y) = |(e_y, e_x)|^2 / (|e_y|^2 |e_x|^2), the transition probability of coherent states."""
    ex = normalized_coherent_vector(cfg, x)
    ey = normalized_coherent_vector(cfg, y)
    return float(min(abs(np.vdot(ey, ex)) ** 2, 1.0))


def frame_norm(cfg: ModelConfig, x, y=None) -> complex:
    """|s|^2(x, ybar) = (1 + <y, x>)^-N; with y omitted, the pointwise norm at x."""
    x = chart_point(x, cfg.n)
    y = x if y is None else chart_point(y, cfg.n)
    return complex((1.0 + np.vdot(y, x)) ** (-cfg.N))


def characteristic(cfg: ModelConfig, x, y, tol: float = DEFAULT_TOL) -> float:
    """Characteristic function built from the frame norm and its analytic continuation.

    Only defined for y outside the cut locus of x, where the continued
    frame norm is finite.
    """
    check_off_cut_locus(cfg, x, y, tol)
    num = frame_norm(cfg, x).real * frame_norm(cfg, y).real
    return float(num / abs(frame_norm(cfg, x, y)) ** 2)


def calabi_potential(cfg: ModelConfig, u, v) -> complex:
    """Analytically continued potential 2N log(1 + <v, u>), normalized so that omega = (i/2) d dbar Phi."""
    u = chart_point(u, cfg.n)
    v = chart_point(v, cfg.n)
    return complex(2 * cfg.N * np.log(1.0 + np.vdot(v, u)))


def diastasis(cfg: ModelConfig, x, y, tol: float = DEFAULT_TOL) -> float:
    """Calabi diastasis D(x, y) = -2 log of the characteristic function."""
    return float(-2.0 * np.log(characteristic(cfg, x, y, tol)))


def diastasis_from_potential(cfg: ModelConfig, x, y, tol: float = DEFAULT_TOL) -> float:
    """D = Phi(x,xbar) + Phi(y,ybar) - Phi(x,ybar) - Phi(y,xbar), Phi the continued potential."""
    check_off_cut_locus(cfg, x, y, tol)
    D = (calabi_potential(cfg, x, x) + calabi_potential(cfg, y, y)
         - calabi_potential(cfg, x, y) - calabi_potential(cfg, y, x))
    return float(D.real)


@dataclass(frozen=True, eq=False)
class DiastasisReport:
    x: np.ndarray
    y: np.ndarray
    psi: float
    psi_tilde: float
    diastasis: float


def diastasis_report(cfg: ModelConfig, x, y, tol: float = DEFAULT_TOL) -> DiastasisReport:
    psi_tilde = characteristic(cfg, x, y, tol)
    return DiastasisReport(
        x=chart_point(x, cfg.n),
        y=chart_point(y, cfg.n),
        psi=two_point(cfg, x, y),
        psi_tilde=psi_tilde,
        diastasis=float(-2.0 * np.log(psi_tilde)),
    )


def embed(cfg: ModelConfig, Z) -> np.ndarray:
    """Representative of the ray of e_Z in P(H); its alpha = 0 component is 1 on the chart."""
    return coherent_vector(cfg, Z)


def isometry_defect(cfg: ModelConfig, Z, step: float = FD_STEP) -> float:
    """Max entry difference between the pullback of the projective metric and the level-N metric.

    The pullback is d dbar log |e_Z|^2, taken by finite differences of the
    coefficient-vector norm.
    """
    Z = chart_point(Z, cfg.n)

    def log_norm2(W):
        e = coherent_vector(cfg, W)
        return np.log(np.vdot(e, e).real)

    pulled = complex_hessian(log_norm2, Z, step)
    return float(np.max(np.abs(pulled - fs_metric(cfg, Z))))


@dataclass(frozen=True)
class CorollaryRecord:
    dc: float
    is_cut: bool
    consistent: bool


def corollary_check(cfg: ModelConfig, x, y, tol: float = DEFAULT_TOL) -> CorollaryRecord:
    """Compare "Cayley distance of the embedded points is pi/2" with "y is in CL_x".

    The Cayley test is pi/2 - d_c < tol.  Since cos d_c = cos(d)^N, the
    geometric test uses the matched tolerance from cut_angle_tolerance.
    """
    dc = cayley_distance(embed(cfg, x), embed(cfg, y))
    at_right_angle = np.pi / 2 - dc < tol
    is_cut = in_cut_locus(cfg, x, y, cut_angle_tolerance(cfg.N, np.sin(tol)))
    return CorollaryRecord(dc=dc, is_cut=bool(is_cut), consistent=bool(at_right_angle == is_cut))


def polar_vanishing_order(cfg: ModelConfig, W, direction: complex = 1.0, tol: float = 1e-9) -> int:
    """Order of the zero of t -> (e_W, e_{Zpol + t direction}) at t = 0, Zpol = -1/conj(W) (n = 1).

    The overlap is expanded as an exact polynomial in t from the coherent
    vector coefficients, with t rescaled by |W| so that the leading
    coefficient has unit size; the order is the number of vanishing
    low-order coefficients.
    """
    if cfg.n != 1:
        raise UnsupportedDimensionError("vanishing order is implemented for n = 1")
    w = complex(chart_point(W, 1)[0])
    if w == 0:
        raise ValueError("the polar point of Z = 0 is at infinity; use a nonzero base point")
    d = complex(direction)
    d /= abs(d)
    z_pol = -1.0 / np.conj(w)
    ew = coherent_vector(cfg, [w])
    P = np.polynomial.polynomial
    lin = np.array([z_pol, d / abs(w)])  # Zpol + tau d / |W|
    poly = np.zeros(cfg.N + 1, dtype=complex)
    power = np.array([1.0 + 0j])
    binom = sqrt_multinomials(1, cfg.N)
    for k in range(cfg.N + 1):
        poly[: power.size] += np.conj(ew[k]) * binom[k] * power
        power = P.polymul(power, lin)
    scale = np.max(np.abs(poly))
    order = 0
    while order < poly.size and abs(poly[order]) <= tol * scale:
        order += 1
    return order
