"""Coherent states on CP^1 and the points they cannot see.

A coherent vector e_Z overlaps every other coherent vector except those at
the far end of the sphere.  Walk a geodesic out of Z = 0 and watch the
overlap with e_0 drain away exactly as the geodesic reaches its cut point.
"""

import numpy as np

from berezin_cpn import ModelConfig
from berezin_cpn.geometry import geodesic_distance, geodesic_exp, in_cut_locus
from berezin_cpn.repspace import coherent_vector, coherent_vector_homogeneous, normalized_overlap_modulus

cfg = ModelConfig(n=1, N=3)
print(f"level N = {cfg.N}, representation dimension {cfg.dim}")
print("e_Z at Z = 1:", np.round(coherent_vector(cfg, [1.0]), 4))

print("\n  t      |Z(t)|      d(0, Z)   |(e_0, e_Z)| normalized")
for t in np.linspace(0, np.pi / 2, 7):
    p = geodesic_exp(cfg, [0.0], [1.0], t)
    if not isinstance(p, np.ndarray):
        # the geodesic has left the chart; the overlap is read off the homogeneous point
        val = abs(coherent_vector_homogeneous(cfg, p.homogeneous)[0])
        print(f"{t:5.3f}   infinity    {np.pi / 2:7.4f}   {val:.2e}   <- cut point")
        continue
    print(f"{t:5.3f}   {abs(p[0]):9.4f}   {geodesic_distance(cfg, [0.0], p):7.4f}   "
          f"{normalized_overlap_modulus(cfg, [0.0], p):.6f}")

# away from the origin the cut point of W is -W/|W|^2
W = np.array([0.6 + 0.8j])
Z = -W / np.vdot(W, W).real
print(f"\nW = {W[0]}, antipode {Z[0]:.3f}")
print("overlap (e_W, e_Z) =", abs(np.vdot(coherent_vector(cfg, W), coherent_vector(cfg, Z))))
print("in cut locus:", in_cut_locus(cfg, W, Z, 1e-9))
