#!/usr/bin/env python3
"""Error trends of the fast path: radius growth and bandwidth growth.

The approximation error decays exponentially in the cutoff, grows steeply
with the radius of the sampled region (the radial polynomials pick up a
factor like e^{rho^2/2}), and grows only mildly with the bandwidth.
Desk-scale version of the CSV experiments; see the experiment subcommand
for the full sweeps.
"""

import numpy as np

from sglnufft import error_bound, evaluate_direct, forward, gen_coeffs, \
    gen_points_ball, plan

M, q = 400, 16
print("radius sweep at bandwidth 8:")
for kappa in (2.0, 4.0, 6.0, 8.0):
    coeffs = gen_coeffs(8, seed=11)
    pts = gen_points_ball(M, kappa, seed=12)
    ref = evaluate_direct(coeffs, 8, pts)
    err = np.max(np.abs(forward(plan(8, pts, q=q), coeffs) - ref))
    cert = error_bound(8, kappa, q, float(np.sum(np.abs(coeffs))))
    print(f"  kappa = {kappa:3.0f}: max abs error {err:9.3e}   "
          f"certificate scale {cert:9.3e}")

print("bandwidth sweep at radius 5 (cutoff 12):")
for B in (4, 8, 16, 32):
    coeffs = gen_coeffs(B, seed=13)
    pts = gen_points_ball(M, 5.0, seed=14)
    ref = evaluate_direct(coeffs, B, pts)
    err = np.max(np.abs(forward(plan(B, pts, q=12), coeffs) - ref))
    print(f"  B = {B:3d}: max abs error {err:9.3e}")
