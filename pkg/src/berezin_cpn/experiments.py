"""Reproducible verification experiments, one per identity of the model.

Every experiment draws its random samples from numpy's PCG64 generator
seeded with ``config.seed`` and returns an :class:`ExperimentReport`.
"""

from __future__ import annotations

import csv
import io
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from .core import DEFAULT_TOL, CutLocusError, ModelConfig, PointAtInfinity
from .geometry import cayley_distance, cut_angle_tolerance, geodesic_distance, geodesic_exp, in_cut_locus
from .kahlerfn import (
    characteristic,
    corollary_check,
    diastasis,
    diastasis_from_potential,
    isometry_defect,
    polar_vanishing_order,
    two_point,
)
from .quadrature import build_grid_rule
from .quantize import (
    correspondence_scan,
    covariant_symbol,
    epsilon_function,
    fh_inner,
    resolution_defect,
    spin_operators,
    star_product,
)
from .repspace import coherent_vector, coherent_vector_homogeneous, overlap, polar_divisor_member

CORRESPONDENCE_LEVELS = (2, 4, 8, 16, 32)


@dataclass(frozen=True)
class ExperimentConfig:
    n: int = 1
    N: int = 3
    radial: int | None = None
    angular: int | None = None
    tol: float = DEFAULT_TOL
    pairs: int = 500
    seed: int = 7

    @property
    def model(self) -> ModelConfig:
        return ModelConfig(self.n, self.N)


@dataclass
class ExperimentReport:
    experiment: str
    config: dict
    rows: list = field(default_factory=list)
    passed: bool = True
    wall_time_ms: int = 0

    def to_dict(self) -> dict:
        return {
            "experiment": self.experiment,
            "config": self.config,
            "rows": self.rows,
            "pass": self.passed,
            "wall_time_ms": self.wall_time_ms,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentReport":
        return cls(d["experiment"], d["config"], d["rows"], d["pass"], d["wall_time_ms"])


# -- sampling ---------------------------------------------------------------

def random_points(rng: np.random.Generator, count: int, n: int, scale: float = 1.0) -> np.ndarray:
    """Complex Gaussian chart points, shape (count, n)."""
    return scale * (rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))) / np.sqrt(2)


def antipodal_partner(rng: np.random.Generator, W: np.ndarray) -> np.ndarray:
    """A point of the cut locus of W != 0: -W/|W|^2 plus a random vector orthogonal to W."""
    Z = -W / np.vdot(W, W).real
    if W.shape[0] > 1:
        u = random_points(rng, 1, W.shape[0])[0]
        u -= W * np.vdot(W, u) / np.vdot(W, W).real
        Z = Z + u
    return Z


def cut_pairs(rng: np.random.Generator, count: int, n: int):
    W = random_points(rng, count, n)
    return [(w, antipodal_partner(rng, w)) for w in W]


# -- experiments -----------------------------------------------------------

def _theorem1(cfg: ExperimentConfig, rng) -> tuple[list, bool]:
    model = cfg.model
    geo_tol = cut_angle_tolerance(model.N, cfg.tol)
    rows = []
    samples = {
        "random": list(zip(random_points(rng, cfg.pairs, cfg.n), random_points(rng, cfg.pairs, cfg.n))),
        "antipodal": cut_pairs(rng, max(1, cfg.pairs // 5), cfg.n),
    }
    ok = True
    for kind, pairs in samples.items():
        members = disagreements = 0
        for W, Z in pairs:
            polar = polar_divisor_member(model, W, Z, cfg.tol)
            cut = in_cut_locus(model, W, Z, geo_tol)
            members += polar
            disagreements += polar != cut
        if kind == "antipodal":
            ok &= members == len(pairs)
        ok &= disagreements == 0
        rows.append({"kind": kind, "count": len(pairs), "members": members, "disagreements": disagreements})
    return rows, ok


def _disjoint_union(cfg: ExperimentConfig, rng) -> tuple[list, bool]:
    model = cfg.model
    pts = random_points(rng, 10_000, cfg.n, scale=10.0)
    E = coherent_vector(model, pts)
    min_closed = min(abs(overlap(model, np.zeros(cfg.n), z)) for z in pts[:1000])
    min_coeff = float(np.min(np.abs(E[:, 0])))
    rows = [{"check": "chart_overlap_with_e0", "count": len(pts), "min_abs_overlap": min(min_closed, min_coeff)}]
    ok = min_closed == 1.0 and min_coeff == 1.0
    if cfg.n == 1:
        flagged = []
        for phase in np.exp(2j * np.pi * rng.random(32)):
            p = geodesic_exp(model, [0.0], [phase], np.pi / 2)
            if isinstance(p, PointAtInfinity):
                flagged.append(p.homogeneous)
        spread = max(cayley_distance(flagged[0], h) for h in flagged) if flagged else float("nan")
        overlaps = [abs(coherent_vector_homogeneous(model, h)[0]) for h in flagged]
        rows.append({"check": "geodesic_cut_point", "count": len(flagged), "max_ray_spread": spread,
                     "max_abs_overlap": max(overlaps) if overlaps else float("nan")})
        ok &= len(flagged) == 32 and spread < 1e-12 and max(overlaps) < cfg.tol
    return rows, bool(ok)


def _corollary(cfg: ExperimentConfig, rng) -> tuple[list, bool]:
    model = cfg.model
    rows = []
    ok = True
    random_pairs = list(zip(random_points(rng, 2 * cfg.pairs, cfg.n), random_points(rng, 2 * cfg.pairs, cfg.n)))
    for kind, pairs in (("random", random_pairs), ("cut", cut_pairs(rng, max(1, cfg.pairs // 5), cfg.n))):
        inconsistent = cut = 0
        identity_err = 0.0
        for x, y in pairs:
            rec = corollary_check(model, x, y, cfg.tol)
            inconsistent += not rec.consistent
            cut += rec.is_cut
            d = geodesic_distance(model, x, y)
            identity_err = max(identity_err, abs(np.cos(rec.dc) - np.cos(d) ** model.N))
        ok &= inconsistent == 0 and identity_err < 1e-12
        if kind == "cut":
            ok &= cut == len(pairs)
        rows.append({"kind": kind, "count": len(pairs), "cut": cut, "inconsistent": inconsistent,
                     "max_identity_error": identity_err})
    return rows, bool(ok)


def _resolution(cfg: ExperimentConfig, rng) -> tuple[list, bool]:
    d = resolution_defect(cfg.model)
    return [{"n": cfg.n, "N": cfg.N, "defect": d}], d < 1e-12


def _parseval(cfg: ExperimentConfig, rng) -> tuple[list, bool]:
    model = cfg.model
    basis = np.eye(model.dim, dtype=complex)
    exact = max(abs(fh_inner(model, u, v) - np.vdot(u, v)) for u in basis for v in basis)
    row = {"n": cfg.n, "N": cfg.N, "max_defect_exact": exact}
    ok = exact < 1e-10
    if cfg.n == 1:
        rule = build_grid_rule(model, cfg.radial, cfg.angular)
        grid = max(abs(fh_inner(model, u, v, rule) - np.vdot(u, v)) for u in basis for v in basis)
        row["max_defect_grid"] = grid
        ok &= grid < 1e-10
    return [row], bool(ok)


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    X = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (X + X.conj().T) / 2


def _star_exactness(cfg: ExperimentConfig, rng) -> tuple[list, bool]:
    model = cfg.model
    rule = build_grid_rule(model, cfg.radial, cfg.angular)
    rows = []
    for i in range(20):
        A1 = random_hermitian(rng, model.dim)
        A2 = random_hermitian(rng, model.dim)
        Z = random_points(rng, 1, 1)[0]
        rep = star_product(model, A1, A2, Z, rule)
        rows.append({"pair": i, "defect": rep.defect})
    return rows, all(r["defect"] < 1e-8 for r in rows)


def _linear_family(N):
    _, _, Sz = spin_operators(N)
    return Sz, Sz


def _quadratic_family(N):
    Sx, _, Sz = spin_operators(N)
    return Sz @ Sz, Sx @ Sx


def _correspondence(cfg: ExperimentConfig, rng) -> tuple[list, bool]:
    # the quadratic pair is symmetric under Z -> conj(Z), so its bracket vanishes on the real axis
    product = correspondence_scan(CORRESPONDENCE_LEVELS, _linear_family, np.array([0.5 + 0j]))
    bracket = correspondence_scan(CORRESPONDENCE_LEVELS, _quadratic_family, np.array([0.3 + 0.4j]))
    slope = product["fitted_slope"]
    rows = [
        {"N": p["N"], "d1": p["d1"], "d2": b["d2"], "fitted_slope": slope}
        for p, b in zip(product["rows"], bracket["rows"])
    ]
    tail = [r["d2"] for r in rows if r["N"] >= 8]
    ok = abs(slope + 1.0) <= 0.15 and all(a > b for a, b in zip(tail, tail[1:]))
    return rows, bool(ok)


def _diastasis(cfg: ExperimentConfig, rng) -> tuple[list, bool]:
    model = cfg.model
    psi_err = d_err = 0.0
    for x, y in zip(random_points(rng, 200, cfg.n), random_points(rng, 200, cfg.n)):
        psi_err = max(psi_err, abs(two_point(model, x, y) - characteristic(model, x, y, cfg.tol)))
        d_err = max(d_err, abs(diastasis(model, x, y, cfg.tol) - diastasis_from_potential(model, x, y, cfg.tol)))
    return [{"pairs": 200, "max_psi_error": psi_err, "max_diastasis_error": d_err}], psi_err < 1e-12 and d_err < 1e-12


def _epsilon(cfg: ExperimentConfig, rng) -> tuple[list, bool]:
    vals = np.array([epsilon_function(cfg.model, z) for z in random_points(rng, 100, cfg.n)])
    rel = float(np.std(vals) / np.mean(vals))
    return [{"points": 100, "mean": float(np.mean(vals)), "relative_spread": rel}], rel < 1e-12


def _isometry(cfg: ExperimentConfig, rng) -> tuple[list, bool]:
    defects = [isometry_defect(cfg.model, z) for z in random_points(rng, 50, cfg.n)]
    worst = max(defects)
    return [{"points": 50, "max_defect": worst}], worst < 1e-6


def _divisor_order(cfg: ExperimentConfig, rng) -> tuple[list, bool]:
    rows = []
    for N in range(1, cfg.N + 1):
        model = ModelConfig(1, N)
        failures = 0
        for w in random_points(rng, 20, 1):
            direction = np.exp(2j * np.pi * rng.random())
            failures += polar_vanishing_order(model, w, direction) != N
        rows.append({"N": N, "samples": 20, "failures": failures})
    return rows, all(r["failures"] == 0 for r in rows)


def _domain_contract(cfg: ExperimentConfig, rng) -> tuple[list, bool]:
    """Quotient operations must fail exactly on the (tolerance-matched) cut locus."""
    model = cfg.model
    geo_tol = cut_angle_tolerance(model.N, cfg.tol)
    A = random_hermitian(rng, model.dim)
    ops: dict[str, Callable] = {
        "covariant_symbol": lambda x, y: covariant_symbol(model, A, x, y, cfg.tol),
        "characteristic": lambda x, y: characteristic(model, x, y, cfg.tol),
        "diastasis": lambda x, y: diastasis(model, x, y, cfg.tol),
    }
    cases = []
    for w, z in cut_pairs(rng, 50, cfg.n):
        cases.append((w, z))
    # off the cut locus but close to it: normalized overlap a few decades above tol
    for w, z in cut_pairs(rng, 50, cfg.n):
        target = cfg.tol * 10.0 ** rng.uniform(1, 6)
        eps = target ** (1.0 / model.N)
        # move z towards w along the geodesic until cos(d) = eps
        zp = _point_at_cos(model, w, z, eps)
        cases.append((w, zp))
    rows = []
    ok = True
    for name, op in ops.items():
        false_accept = false_reject = 0
        for w, z in cases:
            cut = in_cut_locus(model, w, z, geo_tol)
            try:
                op(w, z)
                raised = False
            except CutLocusError:
                raised = True
            false_accept += cut and not raised
            false_reject += raised and not cut
        ok &= false_accept == 0 and false_reject == 0
        rows.append({"operation": name, "cases": len(cases), "false_accepts": false_accept,
                     "false_rejects": false_reject})
    return rows, bool(ok)


def _point_at_cos(model: ModelConfig, w: np.ndarray, z: np.ndarray, c: float) -> np.ndarray:
    """Point on the geodesic from w through its antipode z at distance arccos(c) from w."""
    lift_w = np.concatenate(([1.0 + 0j], w))
    lift_w /= np.linalg.norm(lift_w)
    lift_z = np.concatenate(([1.0 + 0j], z))
    lift_z -= lift_w * np.vdot(lift_w, lift_z)
    lift_z /= np.linalg.norm(lift_z)
    p = c * lift_w + np.sqrt(1 - c * c) * lift_z
    return p[1:] / p[0]


EXPERIMENTS: dict[str, Callable] = {
    "theorem1": _theorem1,
    "disjoint-union": _disjoint_union,
    "corollary": _corollary,
    "resolution": _resolution,
    "parseval": _parseval,
    "star-exactness": _star_exactness,
    "correspondence": _correspondence,
    "diastasis": _diastasis,
    "epsilon": _epsilon,
    "isometry": _isometry,
    "divisor-order": _divisor_order,
    "domain-contract": _domain_contract,
}


class UnknownExperimentError(KeyError):
    pass


def run_experiment(name: str, config: ExperimentConfig | None = None,
                   deterministic: bool = True) -> ExperimentReport:
    """Run one named experiment.

    In deterministic mode the report carries ``wall_time_ms = 0`` so that the
    same seed and configuration give a byte-identical report.
    """
    if name not in EXPERIMENTS:
        raise UnknownExperimentError(f"unknown experiment {name!r}; choose from {', '.join(EXPERIMENTS)}")
    config = ExperimentConfig() if config is None else config
    config.model  # validates n and N
    rng = np.random.Generator(np.random.PCG64(config.seed))
    start = time.perf_counter()
    rows, ok = EXPERIMENTS[name](config, rng)
    elapsed = int(round((time.perf_counter() - start) * 1000))
    return ExperimentReport(
        experiment=name,
        config=asdict(config),
        rows=[{k: _plain(v) for k, v in r.items()} for r in rows],
        passed=bool(ok),
        wall_time_ms=0 if deterministic else elapsed,
    )


def _plain(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return float(v)
    return v


def format_report(report: ExperimentReport, fmt: str = "json") -> str:
    """Serialize a report; floats use Python's shortest round-trip repr."""
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        columns = list(dict.fromkeys(k for r in report.rows for k in r))
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for r in report.rows:
            writer.writerow([repr(r[c]) if isinstance(r.get(c), float) else r.get(c, "") for c in columns])
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")


def emit_report(report: ExperimentReport, fmt: str = "json", path=None) -> None:
    text = format_report(report, fmt)
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
