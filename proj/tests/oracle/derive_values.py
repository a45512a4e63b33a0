"""Independent reference values for the unit tests.

Closed forms are re-derived from the model equations in mpmath at 50 digits. The off-axis
overlaps are integrated in Cartesian coordinates with a composite Gauss-Legendre tensor rule
(double precision), refined by doubling until two levels agree to 1e-12. Nothing here shares
code with the C++ library.

Run: python3 tests/oracle/derive_values.py
"""
import math

import mpmath as mp
import numpy as np
from scipy import special

mp.mp.dps = 50
rho, c, pi = mp.mpf(2200), mp.mpf(5960), mp.pi


def radius(M, h0):
    return M / (pi * rho * h0**2) + h0 / 3


def diameter(R, h0):
    return 2 * mp.sqrt(h0 * (2 * R - h0))


def waist_sq(R, h0, n):
    return 2 * h0 / (n * pi) * mp.sqrt(R * h0)


def omega_sq(R, h0, n, order):
    om = pi * c / h0
    return om**2 * (n**2 + 2 / pi * mp.sqrt(h0 / R) * n * (order + 1))


def overlap_cartesian(wn_sq, p, l, w0, d):
    wn_sq, w0, d = float(wn_sq), float(w0), float(d)
    xg, wg = np.polynomial.legendre.leggauss(20)

    def rule(a, b, panels):
        edges = np.linspace(a, b, panels + 1)
        mid, half = (edges[1:] + edges[:-1]) / 2, (edges[1:] - edges[:-1]) / 2
        return (mid[:, None] + half[:, None] * xg).ravel(), (half[:, None] * wg).ravel()

    def level(panels):
        x, wx = rule(d - 9 * w0, d + 9 * w0, panels)
        y, wy = rule(0.0, 9 * w0, panels)  # the integrand is even in y
        X, Y = np.meshgrid(x, y, indexing="ij")
        t = 2 * (X**2 + Y**2) / wn_sq
        ang = np.cos(l * np.arctan2(Y, X)) if l else 1.0
        u = np.exp(-t / 2) * np.sqrt(t) ** l * special.eval_genlaguerre(p, l, t) * ang
        v = 2 / (math.pi * w0**2) * np.exp(-2 * ((X - d) ** 2 + Y**2) / w0**2)
        return 2 * float(wx @ (u * v) @ wy)

    prev, panels = level(8), 8
    while True:
        panels *= 2
        cur = level(panels)
        if abs(cur - prev) <= 1e-12 * abs(cur):
            return mp.mpf(cur)
        if panels >= 512:
            raise RuntimeError("overlap quadrature did not converge")
        prev = cur


h0, M = mp.mpf("0.07"), mp.mpf(20)
R = radius(M, h0)
D = diameter(R, h0)
w1sq = waist_sq(R, h0, 1)
out = {}
out["R_20kg"] = R
out["D_20kg"] = D
out["R_5kg"] = radius(mp.mpf(5), h0)
out["h_r0.2"] = mp.sqrt(R**2 - mp.mpf("0.2") ** 2) - (R - h0)
out["w1"] = mp.sqrt(w1sq)
out["Omega_M"] = pi * c / h0
out["Omega_100"] = mp.sqrt(omega_sq(R, h0, 1, 0))
M1 = pi / 4 * rho * h0 * w1sq
out["M_100"] = M1
out["M_1_2_3"] = pi / 8 * rho * h0 * w1sq * mp.factorial(5) / mp.factorial(2)
w0 = mp.mpf("0.02")
out["ov_centered_1_0"] = 2 * w1sq / (2 * w1sq + w0**2)
out["chi_100_static"] = 1 / (M1 * omega_sq(R, h0, 1, 0))
# L_3^2 from its explicit coefficients: 10 - 10 t + 5/2 t^2 - 1/6 t^3.
rr = mp.sqrt(w1sq) / 2
t = 2 * rr**2 / w1sq
out["u_1_3_2_half_waist"] = mp.exp(-t / 2) * t * (10 - 10 * t + mp.mpf(5) / 2 * t**2 - t**3 / 6)
out["ov_offaxis_1_2_1_d0.03"] = overlap_cartesian(w1sq, 2, 1, w0, mp.mpf("0.03"))
out["ov_offaxis_1_0_0_d0.05"] = overlap_cartesian(w1sq, 0, 0, w0, mp.mpf("0.05"))
# Static sum over n, p <= 2, l = 0, centered beam, term by term.
chi = 0
for n in (1, 2):
    wsq = waist_sq(R, h0, n)
    for p in (0, 1, 2):
        q = (2 * wsq - w0**2) / (2 * wsq + w0**2)
        o = 2 * wsq / (2 * wsq + w0**2) * q**p
        chi += o**2 / (pi / 4 * rho * h0 * wsq * omega_sq(R, h0, n, 2 * p))
out["chi_static_n2_p2"] = chi
Mopt = 12 / pi**2 * pi / 4 * rho * h0 * w0**2
out["M_opt_w0.02"] = Mopt
out["chi_approx_w0.02"] = 1 / (Mopt * (pi * c / h0) ** 2)

for k, v in out.items():
    print(f"{k:28s} {mp.nstr(v, 17)}")
