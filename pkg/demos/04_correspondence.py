"""The classical limit N -> infinity.

The star product of normalized spin observables tends to the pointwise
product at rate 1/N, and N times the imaginary part of the star commutator
approaches the Poisson bracket.
"""

import numpy as np

from berezin_cpn.quantize import correspondence_scan, spin_operators

levels = [2, 4, 8, 16, 32, 64]


def product_family(N):
    Sz = spin_operators(N)[2]
    return Sz, Sz


def bracket_family(N):
    Sx, _, Sz = spin_operators(N)
    return Sz @ Sz, Sx @ Sx


prod = correspondence_scan(levels, product_family, [0.5])
brak = correspondence_scan(levels, bracket_family, [0.3 + 0.4j])
print("   N        d1          d2")
for p, b in zip(prod["rows"], brak["rows"]):
    print(f"{p['N']:4d}   {p['d1']:.4e}   {b['d2']:.4e}")
print(f"log-log slope of d1: {prod['fitted_slope']:.4f}")
slope2 = np.polyfit(np.log(levels[2:]), np.log([r["d2"] for r in brak["rows"][2:]]), 1)[0]
print(f"log-log slope of d2 for N >= 8: {slope2:.4f}")
