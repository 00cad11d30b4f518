"""Spectral experiments on projected compressions.

Three experiments, all reported through the same JSON-friendly record:
eigenvalue counting against the sublevel volume of the top symbol, the
logarithmic divergence of a trace along the diagonal, and a direct
inverse check for a shifted diagonal operator.
"""

import math

import numpy as np

from mucut import (CanonicalOperator, LaurentSymbol, Polynomial, compose,
                   make_generator, projected_compression, projected_spectrum,
                   residue_contour, residue_log_fit, weyl_compare)

# ---- eigenvalues of compressions -------------------------------------

D = make_generator("D")
spec = projected_spectrum(D, window=16)
print("first eigenvalues of the compressed D:",
      [round(float(v), 10) for v in spec.values[:6]])
print("reliable entries:", int(np.count_nonzero(spec.reliable)),
      "of", len(spec.values))

# ---- Weyl counting ---------------------------------------------------
# Observed counts track the predicted sublevel measure (lam/c)^(1/m)
# up to one eigenvalue across the whole grid.

for label, op in [("D", D),
                  ("2D", CanonicalOperator({0: Polynomial([0, 2])})),
                  ("Raise Lower", compose(make_generator("Raise"),
                                          make_generator("Lower")))]:
    report = weyl_compare(op, window=1024)
    print(f"{label:12s} max |observed - predicted| = {report.max_residual:.3f}")

# ---- residue along the diagonal --------------------------------------
# Partial sums of 1/n grow like log N; the fitted slope recovers the
# coefficient and the reported residue is 2*pi times it.

diagonal = [1.0 / n for n in range(1, 50001)]
fit = residue_log_fit(diagonal, fit_range=(1000, 50000))
print()
print("fitted slope c =", round(fit.fitted["c"], 5))
print("reported residue =", round(fit.fitted["residue"], 5),
      " (2*pi =", round(2 * math.pi, 5), ")")

# The exact counterpart: a degree -1 symbol integrated over the angle.
sigma = LaurentSymbol.homogeneous(-1, {0: 1})
print("contour residue of s^-1:", residue_contour(sigma))

# ---- inverse check ---------------------------------------------------
# Compress D + 3 and invert numerically. The product stays within 1e-10
# of the identity and the inverse diagonal matches 1/(n+3).

window = 256
shifted = CanonicalOperator({0: Polynomial([3, 1])})
a = projected_compression(shifted, window)
b = np.linalg.inv(a)
err = np.abs(a @ b - np.eye(a.shape[0])).max()
print()
print(f"||AB - I||_inf at window {window}: {err:.2e}")
diag_err = max(abs(b[n, n] - 1.0 / (n + 3)) for n in range(a.shape[0]))
print(f"inverse diagonal vs 1/(n+3): {diag_err:.2e}")
