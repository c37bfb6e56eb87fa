from math import pi

import numpy as np
import pytest

from berezin_cpn import ModelConfig
from berezin_cpn.core import CutLocusError, DimensionMismatchError, UnsupportedDimensionError
from berezin_cpn.geometry import geodesic_distance, in_cut_locus, cut_angle_tolerance
from berezin_cpn.quadrature import build_grid_rule
from berezin_cpn.quantize import (
    bergman_kernel,
    bergman_kernel_basis_sum,
    bergman_project,
    c_tilde,
    correspondence_scan,
    covariant_symbol,
    diagonal_symbol,
    epsilon_function,
    fh_inner,
    fitted_slope,
    kernel_G,
    resolution_defect,
    spin_operators,
    star_product,
)
from berezin_cpn.kahlerfn import two_point

from conftest import random_points

CONFIGS = [(1, 1), (1, 4), (1, 8), (2, 2)]


def random_hermitian(rng, d):
    X = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (X + X.conj().T) / 2


def test_c_tilde():
    assert c_tilde(ModelConfig(1, 1)) == pytest.approx(2 / pi)
    assert c_tilde(ModelConfig(2, 2)) == pytest.approx(12 / pi**2)
    assert c_tilde(ModelConfig(1, 7)) == pytest.approx(8 / pi)


def test_fh_inner_examples():
    cfg = ModelConfig(1, 2)
    e = np.eye(3)
    assert fh_inner(cfg, e[0], e[0]) == pytest.approx(1)
    assert abs(fh_inner(cfg, e[0], e[2])) < 1e-15
    assert abs(fh_inner(cfg, [1, 0, 1], [0, 1, 0])) < 1e-15
    with pytest.raises(DimensionMismatchError):
        fh_inner(cfg, e[0], np.ones(4))


@pytest.mark.parametrize("n, N", CONFIGS)
def test_parseval_full_basis_sweep(n, N):
    cfg = ModelConfig(n, N)
    E = np.eye(cfg.dim)
    rule = build_grid_rule(cfg) if n == 1 else None
    for i in range(cfg.dim):
        for j in range(cfg.dim):
            assert abs(fh_inner(cfg, E[i], E[j]) - E[i, j]) < 1e-10
            if rule is not None:
                assert abs(fh_inner(cfg, E[i], E[j], rule) - E[i, j]) < 1e-10


def test_parseval_random_vectors(rng):
    cfg = ModelConfig(1, 5)
    rule = build_grid_rule(cfg)
    for _ in range(10):
        u, v = (rng.standard_normal(6) + 1j * rng.standard_normal(6) for _ in range(2))
        assert fh_inner(cfg, u, v, rule) == pytest.approx(np.vdot(u, v), abs=1e-10)


def test_fh_inner_rejects_weak_rule():
    with pytest.raises(ValueError):
        fh_inner(ModelConfig(1, 4), np.ones(5), np.ones(5), build_grid_rule(ModelConfig(1, 4), 1, 3))


@pytest.mark.parametrize("n, N", CONFIGS + [(3, 3)])
def test_resolution_of_identity(n, N):
    assert resolution_defect(ModelConfig(n, N)) < 1e-12


def test_symbol_examples(rng):
    cfg = ModelConfig(1, 1)
    Sz = np.diag([-0.5, 0.5])
    for Z in random_points(rng, 5, 1):
        assert covariant_symbol(cfg, np.eye(2), Z, Z) == pytest.approx(1)
        r2 = abs(Z[0]) ** 2
        assert covariant_symbol(cfg, Sz, Z, Z) == pytest.approx((r2 - 1) / (2 * (1 + r2)), abs=1e-15)
    with pytest.raises(CutLocusError):
        covariant_symbol(ModelConfig(1, 3), np.eye(4), [1], [-1])
    assert covariant_symbol(ModelConfig(1, 3), np.eye(4), [1 + 2j], [0.3]) == pytest.approx(1)


def test_spin_symbols():
    Sx, Sy, Sz = spin_operators(6)
    Z = np.array([0.3 - 0.7j])
    s = [diagonal_symbol(ModelConfig(1, 6), S)(Z).real for S in (Sx, Sy, Sz)]
    r2 = abs(Z[0]) ** 2
    # S_+ raises the degree in Z, so the y component carries -Im Z
    unit = np.array([2 * Z[0].real, -2 * Z[0].imag, r2 - 1]) / (1 + r2)
    np.testing.assert_allclose(s, unit, atol=1e-14)


def test_symbol_holomorphy(rng):
    cfg = ModelConfig(1, 3)
    A = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    Z, V, h = np.array([0.2 + 0.1j]), np.array([0.4 - 0.3j]), 1e-6
    # d/dVbar = (d/dx + i d/dy)/2 vanishes; likewise d/dZ of the antiholomorphic slot
    dV = (covariant_symbol(cfg, A, Z, V + h) - covariant_symbol(cfg, A, Z, V - h)
          + 1j * (covariant_symbol(cfg, A, Z, V + 1j * h) - covariant_symbol(cfg, A, Z, V - 1j * h))) / (4 * h)
    dZ = (covariant_symbol(cfg, A, Z + h, V) - covariant_symbol(cfg, A, Z - h, V)
          - 1j * (covariant_symbol(cfg, A, Z + 1j * h, V) - covariant_symbol(cfg, A, Z - 1j * h, V))) / (4 * h)
    assert abs(dV) < 1e-8 and abs(dZ) < 1e-8


def test_hermitian_symbol_is_real(rng):
    for n, N in CONFIGS:
        cfg = ModelConfig(n, N)
        A = random_hermitian(rng, cfg.dim)
        for Z in random_points(rng, 10, n):
            assert abs(covariant_symbol(cfg, A, Z, Z).imag) < 1e-12 * max(1, np.abs(A).max())


@pytest.mark.parametrize("n, N", [(1, 3), (2, 2)])
def test_symbol_domain_matches_cut_locus(n, N, rng):
    cfg = ModelConfig(n, N)
    tol = 1e-9
    for W in random_points(rng, 30, n):
        for Z in (random_points(rng, 1, n)[0], -W / np.vdot(W, W).real):
            cut = in_cut_locus(cfg, W, Z, cut_angle_tolerance(N, tol))
            try:
                covariant_symbol(cfg, np.eye(cfg.dim), W, Z, tol)
                raised = False
            except CutLocusError:
                raised = True
            assert raised == cut


def test_bergman_kernel_examples(rng):
    assert bergman_kernel(ModelConfig(1, 2), [0], [0]) == 1
    assert bergman_kernel(ModelConfig(1, 2), [2], [1]) == pytest.approx(9)
    for n, N in [(1, 5), (2, 3)]:
        cfg = ModelConfig(n, N)
        for Z, V in zip(random_points(rng, 50, n), random_points(rng, 50, n)):
            ref = bergman_kernel(cfg, Z, V)
            assert abs(bergman_kernel_basis_sum(cfg, Z, V) - ref) <= 1e-12 * max(1, abs(ref))
            assert abs(ref - np.conj(bergman_kernel(cfg, V, Z))) <= 1e-12 * max(1, abs(ref))
        Z = random_points(rng, 1, n)[0]
        assert bergman_kernel(cfg, Z, Z) == pytest.approx((1 + np.vdot(Z, Z).real) ** N)


def test_bergman_projector_reproduces_holomorphic(rng):
    cfg = ModelConfig(1, 3)
    rule = build_grid_rule(cfg)
    coeffs = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    f = lambda X: np.polynomial.polynomial.polyval(X[:, 0], coeffs)
    Z = np.array([0.6 - 0.2j])
    assert bergman_project(cfg, f, Z, rule) == pytest.approx(f(Z[None, :])[0], abs=1e-11)
    # antiholomorphic monomials are projected to their constant part
    assert abs(bergman_project(cfg, lambda X: np.conj(X[:, 0]), Z, rule)) < 1e-12


def test_kernel_G_examples(rng):
    cfg = ModelConfig(1, 2)
    assert kernel_G(cfg, [0.3], [0.3]) == pytest.approx(c_tilde(cfg))
    assert kernel_G(ModelConfig(1, 3), [1], [-1]) < 1e-30
    assert kernel_G(cfg, [0], [1]) == pytest.approx(c_tilde(cfg) / 4)
    for n, N in [(1, 4), (2, 2)]:
        cfg = ModelConfig(n, N)
        for Z, V in zip(random_points(rng, 20, n), random_points(rng, 20, n)):
            G = kernel_G(cfg, Z, V)
            assert 0 <= G <= c_tilde(cfg) * (1 + 1e-14)
            assert G == pytest.approx(c_tilde(cfg) * two_point(cfg, Z, V), rel=1e-12)
            assert G == pytest.approx(c_tilde(cfg) * np.cos(geodesic_distance(cfg, Z, V)) ** (2 * N), rel=1e-10)


def test_star_product_examples():
    rep = star_product(ModelConfig(1, 3), np.eye(4), np.eye(4), [0.4j])
    assert rep.quadrature_value == pytest.approx(1) and rep.defect < 1e-12
    Sz = np.diag([-0.5, 0.5])
    rep = star_product(ModelConfig(1, 1), Sz, Sz, [0])
    assert rep.oracle_value == pytest.approx(0.25) and rep.defect < 1e-12
    assert rep.defect == abs(rep.quadrature_value - rep.oracle_value)
    with pytest.raises(UnsupportedDimensionError):
        star_product(ModelConfig(2, 1), np.eye(3), np.eye(3), [0, 0])


@pytest.mark.parametrize("N", [1, 2, 4, 8])
def test_star_product_random(N, rng):
    cfg = ModelConfig(1, N)
    rule = build_grid_rule(cfg)
    for _ in range(20):
        A1, A2 = random_hermitian(rng, cfg.dim), random_hermitian(rng, cfg.dim)
        Z = random_points(rng, 1, 1, scale=2.0)[0]
        assert star_product(cfg, A1, A2, Z, rule).defect < 1e-8


def test_star_product_near_node_singularity():
    # place Z so that its cut point is exactly a grid node
    cfg = ModelConfig(1, 2)
    rule = build_grid_rule(cfg)
    node = rule.nodes[7, 0]
    Z = [-1 / np.conj(node)]
    A = np.diag([1.0, 2.0, -1.0])
    rep = star_product(cfg, A, A.T.copy(), Z, rule)
    assert np.isfinite(rep.quadrature_value) and rep.defect < 1e-8


def test_associativity_anchor(rng):
    cfg = ModelConfig(1, 3)
    A, B, C = (random_hermitian(rng, 4) for _ in range(3))
    Z = [0.2 + 0.5j]
    assert abs(covariant_symbol(cfg, (A @ B) @ C, Z, Z) - covariant_symbol(cfg, A @ (B @ C), Z, Z)) < 1e-12


def test_epsilon_function(rng):
    assert epsilon_function(ModelConfig(1, 3), [0]) == 1
    assert epsilon_function(ModelConfig(1, 5), [2 + 3j]) == pytest.approx(1, abs=1e-12)
    cfg = ModelConfig(2, 4)
    vals = np.array([epsilon_function(cfg, Z) for Z in random_points(rng, 100, 2)])
    assert vals.std() / vals.mean() < 1e-12


def test_fitted_slope():
    assert fitted_slope([2, 4, 8], [3.0, 1.5, 0.75]) == pytest.approx(-1)


def test_correspondence_identity():
    scan = correspondence_scan([2, 4, 8], lambda N: (np.eye(N + 1), np.eye(N + 1)), [0.5])
    for row in scan["rows"]:
        assert row["d1"] < 1e-12 and row["d2"] < 1e-9


def test_correspondence_slope_and_commutator():
    levels = [2, 4, 8, 16, 32]
    family = lambda N: (spin_operators(N)[2], spin_operators(N)[2])
    scan = correspondence_scan(levels, family, [0.5])
    assert abs(scan["fitted_slope"] + 1) <= 0.15

    def quad(N):
        Sx, _, Sz = spin_operators(N)
        return Sz @ Sz, Sx @ Sx

    d2 = [r["d2"] for r in correspondence_scan(levels, quad, [0.3 + 0.4j])["rows"]]
    assert all(b < a for a, b in zip(d2, d2[1:]))
    assert d2[-1] < 0.2 * d2[0]


def test_correspondence_linear_bracket_is_exact():
    # commutators of Lie-algebra elements reproduce the bracket exactly
    def family(N):
        Sx, Sy, _ = spin_operators(N)
        return Sx, Sy

    for row in correspondence_scan([2, 4, 8], family, [0.0])["rows"]:
        assert row["d2"] < 1e-6
