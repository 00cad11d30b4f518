"""Spectral experiments: projected spectra, Weyl counting, residue fits.

Everything in this module deliberately leaves exact arithmetic for floats;
exactness claims live in the normal-form layer. The Hermitian eigensolver is
a cyclic Jacobi iteration implemented here (matrices stay small enough that
no external solver is warranted); diagonal compressions take an exact fast
path so large-window counting experiments stay cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import FitRangeTooSmall, NotElliptic, WrongDegree
from .exact import GaussianRational
from .operators import (CanonicalOperator, Parity, require_self_adjoint,
                        szego_commutes)
from .symbols import LaurentSymbol, leading_symbol

SCHEMA = "mucut/1"


def hermitian_eigenvalues(matrix, tol: float = 1e-10,
                          max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a complex Hermitian matrix by cyclic Jacobi rotations.

    Sweeps run until the off-diagonal Frobenius norm drops below
    ``tol * max(1, ||A||_F)``. Convergence is quadratic; ``max_sweeps`` is a
    safety net, not a tuning knob.
    """
    a = np.array(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n == 0:
        return np.zeros(0)
    if not np.allclose(a, a.conj().T, atol=1e-12 * max(1.0, np.abs(a).max())):
        raise ValueError("matrix is not Hermitian")
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return np.zeros(n)
    threshold = tol * max(1.0, scale)
    off_mask = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        # norm over the off-diagonal part directly; subtracting the
        # diagonal norm from the total cancels catastrophically
        off = float(np.linalg.norm(a[off_mask]))
        if off <= threshold:
            break
        skip = off / (n * n)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= skip * 1e-4:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                # factor out the phase so the 2x2 block is real symmetric
                # [[app, mag], [mag, aqq]], then zero it with the classical
                # rotation; the full unitary is diag(1, conj(phase)) times
                # [[c, s], [-s, c]] on the (p, q) plane
                phase = apq / mag
                tau = (aqq - app) / (2.0 * mag)
                if tau >= 0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                pc = phase.conjugate()
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * pc * col_q
                a[:, q] = s * col_p + c * pc * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * phase * row_q
                a[q, :] = s * row_p + c * phase * row_q
    else:
        raise ArithmeticError("Jacobi iteration failed to converge")
    return np.sort(np.diagonal(a).real)


@dataclass(frozen=True)
class Spectrum:
    """Sorted eigenvalues of a projected compression.

    ``reliable`` flags the lower half of the computed values; truncation
    corrupts the top of the window, so quantitative claims are only made for
    flagged entries.
    """

    values: np.ndarray
    reliable: np.ndarray
    window: int
    parity: Parity

    def __len__(self):
        return len(self.values)

    def count_below(self, threshold: float) -> int:
        return int(np.searchsorted(self.values, threshold, side="left"))

    def to_csv(self) -> str:
        lines = ["index,eigenvalue"]
        lines += [f"{i},{float(v)!r}" for i, v in enumerate(self.values)]
        return "\n".join(lines) + "\n"


def _retained_modes(window: int, parity: Parity) -> list:
    if Parity(parity) is Parity.FULL:
        return list(range(0, window + 1))
    return list(range(0, 2 * window + 1, 2))


def projected_compression(a: CanonicalOperator, window: int,
                          parity: Parity = Parity.FULL) -> np.ndarray:
    """Dense matrix of the operator compressed to the projector's modes.

    Retained modes are ``0..window`` (full) or ``0, 2, ..., 2*window``
    (even); entry ``[i, j]`` maps the j-th retained mode to the i-th.
    """
    parity = Parity(parity)
    if window < 0:
        raise ValueError("window must be nonnegative")
    modes = _retained_modes(window, parity)
    size = len(modes)
    matrix = np.zeros((size, size), dtype=complex)
    index = {n: i for i, n in enumerate(modes)}
    for k, poly in a.terms.items():
        for j, n in enumerate(modes):
            m = n + k
            i = index.get(m)
            if i is not None:
                matrix[i, j] = complex(poly(n))
    return matrix


def projected_spectrum(a: CanonicalOperator, window: int,
                       parity: Parity = Parity.FULL,
                       tol: float = 1e-10) -> Spectrum:
    """Spectrum of the compression of ``a`` to the projector's modes.

    The operator must be exactly self-adjoint in normal form. Bandwidth-0
    compressions are diagonal and bypass the iteration.
    """
    parity = Parity(parity)
    if window < 0:
        raise ValueError("window must be nonnegative")
    require_self_adjoint(a)
    modes = _retained_modes(window, parity)
    poly0 = a.terms.get(0)
    if a.bandwidth == 0:
        if poly0 is None:
            values = np.zeros(len(modes))
        else:
            values = np.sort(np.array([float(poly0(n).re) for n in modes]))
    else:
        values = hermitian_eigenvalues(projected_compression(a, window, parity),
                                       tol=tol)
    reliable = np.arange(len(values)) < (len(values) + 1) // 2
    return Spectrum(values=values, reliable=reliable, window=window,
                    parity=parity)


def _elliptic_leading_data(a: CanonicalOperator):
    """Leading coefficient and degree for counting, or raise NotElliptic."""
    sigma = leading_symbol(a)
    modes = sigma.modes
    if set(modes) != {0}:
        raise NotElliptic(
            "leading symbol has angular dependence; counting by sublevel "
            "measure needs a shift-free top order")
    c = sigma.homogeneous_coefficient(0)
    m = sigma.degree
    if not c.is_real() or c.re <= 0 or m < 1:
        raise NotElliptic(
            f"leading symbol {c}*s^{m} is not positive and increasing")
    return float(c.re), m


@dataclass(frozen=True)
class ExperimentReport:
    """Observed-versus-predicted record for a numerical experiment.

    ``max_residual`` is always recomputed from the stored arrays on
    deserialization and must match, so a report cannot silently drift from
    the data it claims to summarize.
    """

    params: dict
    observed: tuple
    predicted: tuple
    fitted: dict = field(default_factory=dict)
    max_residual: float = 0.0

    @staticmethod
    def build(params: dict, observed, predicted, fitted=None
              ) -> "ExperimentReport":
        observed = tuple(float(v) for v in observed)
        predicted = tuple(float(v) for v in predicted)
        if len(observed) != len(predicted):
            raise ValueError("observed and predicted lengths differ")
        residual = max((abs(o - p) for o, p in zip(observed, predicted)),
                       default=0.0)
        return ExperimentReport(params=dict(params), observed=observed,
                                predicted=predicted,
                                fitted=dict(fitted or {}),
                                max_residual=residual)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "params": self.params,
            "observed": list(self.observed),
            "predicted": list(self.predicted),
            "fitted": self.fitted,
            "max_residual": self.max_residual,
        }

    @classmethod
    def from_json(cls, data) -> "ExperimentReport":
        if not isinstance(data, dict):
            raise ValueError("not a report object")
        if data.get("schema", SCHEMA) != SCHEMA:
            raise ValueError(f"unknown schema {data.get('schema')!r}")
        report = cls.build(params=data.get("params", {}),
                           observed=data.get("observed", ()),
                           predicted=data.get("predicted", ()),
                           fitted=data.get("fitted", {}))
        stored = data.get("max_residual")
        if stored is not None and stored != report.max_residual:
            raise ValueError(
                f"stored max_residual {stored!r} does not match recomputed "
                f"{report.max_residual!r}")
        return report

    def to_csv(self) -> str:
        lines = ["sample,observed,predicted"]
        samples = self.params.get("grid") or self.params.get("samples")
        if samples is None or len(samples) != len(self.observed):
            samples = list(range(len(self.observed)))
        for x, o, p in zip(samples, self.observed, self.predicted):
            lines.append(f"{x!r},{o!r},{p!r}")
        for key in sorted(self.fitted):
            lines.append(f"fitted:{key},{self.fitted[key]!r},")
        lines.append(f"max_residual,{self.max_residual!r},")
        return "\n".join(lines) + "\n"


def weyl_compare(a: CanonicalOperator, window: int, grid=None,
                 parity: Parity = Parity.FULL,
                 grid_points: int = 64) -> ExperimentReport:
    """Eigenvalue counting against the sublevel measure of the top symbol.

    Observed: how many compressed eigenvalues lie below each grid value.
    Predicted: the Lebesgue measure of ``{s >= 0 : c * s**m < lam}``, which
    for a monomial symbol is ``(lam / c)**(1/m)``. Agreement is claimed only
    up to the reliability threshold, the symbol value at half the window.
    """
    parity = Parity(parity)
    if not szego_commutes(a, parity):
        raise NotElliptic(
            f"operator does not commute with the {parity.value} projector")
    c, m = _elliptic_leading_data(a)
    lam_top = c * (window / 2.0) ** m
    if grid is None:
        grid = np.linspace(lam_top / grid_points, lam_top, grid_points)
    grid = [float(lam) for lam in grid]
    spectrum = projected_spectrum(a, window, parity)
    observed = [spectrum.count_below(lam) for lam in grid]
    predicted = [0.0 if lam <= 0 else (lam / c) ** (1.0 / m) for lam in grid]
    params = {
        "experiment": "weyl",
        "window": window,
        "parity": parity.value,
        "grid": grid,
        "operator": a.to_json(),
    }
    fitted = {"symbol_coefficient": c, "symbol_degree": m}
    return ExperimentReport.build(params, observed, predicted, fitted)


def residue_contour(sigma: LaurentSymbol):
    """Angular contour integral of a degree ``-1`` symbol.

    Only the shift-free mode survives the integral:
    ``integral of c * s**-1 * exp(i*k*t) dt = 2*pi*c`` if ``k == 0`` else 0.
    Returns a float for real coefficients, complex otherwise.
    """
    if sigma.degree != -1 and not sigma.is_zero():
        raise WrongDegree(
            f"contour residue needs homogeneity degree -1, got "
            f"{sigma.degree!r}")
    c = (GaussianRational(0) if sigma.is_zero()
         else sigma.homogeneous_coefficient(0))
    value = complex(c) * 2.0 * math.pi
    if value.imag == 0.0:
        return value.real
    return value


def _log_spaced_integers(lo: int, hi: int, max_points: int) -> list:
    if hi - lo + 1 <= max_points:
        return list(range(lo, hi + 1))
    points = np.unique(np.rint(np.exp(
        np.linspace(math.log(lo), math.log(hi), max_points))).astype(int))
    return [int(p) for p in points if lo <= p <= hi]


def residue_log_fit(diagonal, fit_range=(1000, 100000),
                    max_points: int = 512) -> ExperimentReport:
    """Least-squares fit of partial sums against ``c*log(N) + b``.

    ``diagonal[i]`` is the term at index ``i + 1``; partial sums are taken
    at log-spaced sample points inside ``fit_range``. The fitted slope ``c``
    estimates the logarithmic divergence rate; the residue convention
    reported alongside is ``2*pi*c``.
    """
    diag = np.asarray(diagonal, dtype=float)
    lo, hi = int(fit_range[0]), int(fit_range[1])
    lo = max(lo, 1)
    hi = min(hi, len(diag))
    if hi - lo + 1 < 8:
        raise FitRangeTooSmall(
            f"fit range [{lo}, {hi}] has fewer than 8 sample points")
    sums = np.cumsum(diag)
    samples = _log_spaced_integers(lo, hi, max_points)
    observed = [float(sums[n - 1]) for n in samples]
    logs = np.array([math.log(n) for n in samples])
    design = np.column_stack([logs, np.ones(len(samples))])
    (slope, intercept), *_ = np.linalg.lstsq(design, np.array(observed),
                                             rcond=None)
    predicted = [float(slope * x + intercept) for x in logs]
    params = {
        "experiment": "residue-log-fit",
        "fit_range": [lo, hi],
        "n_terms": int(len(diag)),
        "samples": samples,
    }
    fitted = {
        "c": float(slope),
        "intercept": float(intercept),
        "residue": float(2.0 * math.pi * slope),
    }
    return ExperimentReport.build(params, observed, predicted, fitted)
