"""Two-point function, diastasis and the coherent-state embedding.

On CP^n the transition probability of coherent states is cos^(2N) of the
geodesic distance, and -2 log of it is Calabi's diastasis.  The embedding
Z -> [e_Z] into projective Hilbert space pulls back N times the
Fubini-Study metric.
"""

import numpy as np

from berezin_cpn import ModelConfig
from berezin_cpn.geometry import geodesic_distance
from berezin_cpn.kahlerfn import (
    corollary_check,
    diastasis,
    diastasis_from_potential,
    isometry_defect,
    two_point,
)

cfg = ModelConfig(n=2, N=3)
x, y = np.array([0.2, -0.5j]), np.array([1.1 + 0.3j, 0.4])
d = geodesic_distance(cfg, x, y)
print(f"d(x, y) = {d:.6f}")
print(f"Psi(x, y) = {two_point(cfg, x, y):.12f},  cos^2N d = {np.cos(d) ** (2 * cfg.N):.12f}")
print(f"diastasis: from Psi {diastasis(cfg, x, y):.12f}, from the potential {diastasis_from_potential(cfg, x, y):.12f}")

print("\nisometry defect of the embedding at a few points:")
for Z in ([0, 0], [0.3, 0.1], [2.0, -1j]):
    print(f"  Z = {Z}: {isometry_defect(cfg, Z):.2e}")

# image points are at right angles exactly when the source points are cut-locus related
cfg1 = ModelConfig(1, 4)
for y in ([1.0], [-0.9], [-1.0]):
    rec = corollary_check(cfg1, [1.0], y)
    print(f"x = 1, y = {y[0]:5.2f}: Cayley distance {rec.dc:.6f}, cut locus {rec.is_cut}")
