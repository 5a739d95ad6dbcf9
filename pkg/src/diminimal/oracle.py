"""Independent floating-point cross-check for the exact locator.

A self-contained cyclic Jacobi eigensolver computes all eigenvalues of the
dense float expansion of a matrix.  compare_counts then buckets those float
eigenvalues against a rational query point and reconciles the buckets with
the exact inertia counts, refusing to issue a verdict when a float
eigenvalue sits too close to the decision boundary to be trusted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .locate import counts_at
from .matrices import WeightedTreeMatrix, to_dense_float


class OracleError(RuntimeError):
    pass


@dataclass(frozen=True)
class FloatSpectrum:
    """All eigenvalues of a symmetric matrix, ascending, plus convergence
    metadata from the Jacobi sweep loop."""

    values: tuple[float, ...]
    sweeps: int
    off_norm: float


def _off_norm(a: np.ndarray) -> float:
    n = a.shape[0]
    s = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            s += 2.0 * a[i, j] * a[i, j]
    return math.sqrt(s)


def dense_eigenvalues(a: np.ndarray, tol: float = 1e-12) -> FloatSpectrum:
    """Cyclic-by-row Jacobi diagonalization.

    Sweeps rotate out every off-diagonal entry in turn until the
    off-diagonal Frobenius norm drops below tol times the full Frobenius
    norm.  More than 100 sweeps means something is badly wrong with the
    input; Jacobi on symmetric matrices converges much faster than that.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise OracleError(f"not square: {a.shape}")
    scale = max(1.0, float(np.max(np.abs(a))))
    if float(np.max(np.abs(a - a.T))) > 1e-12 * scale:
        raise OracleError("matrix is not symmetric")
    if n == 1:
        return FloatSpectrum((float(a[0, 0]),), 0, 0.0)
    norm = math.sqrt(float(np.sum(a * a)))
    if norm == 0.0:
        return FloatSpectrum(tuple([0.0] * n), 0, 0.0)
    off = _off_norm(a)
    sweeps = 0
    while off > tol * norm:
        if sweeps >= 100:
            raise OracleError(f"Jacobi failed to converge: off={off:g} after {sweeps} sweeps")
        threshold = off / (n * n)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= threshold * 1e-8:
                    continue
                # standard symmetric 2x2 annihilation
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = 0.0
                a[q, p] = 0.0
        sweeps += 1
        off = _off_norm(a)
    vals = tuple(sorted(float(a[i, i]) for i in range(n)))
    return FloatSpectrum(vals, sweeps, off)


@dataclass(frozen=True)
class AgreementReport:
    """Outcome of reconciling exact counts with the float oracle at a point.

    When a float eigenvalue lies in the grey annulus around the query point
    (more than one band but at most ten away) the report is inconclusive
    and `agree` is None: the float data cannot distinguish which side the
    true eigenvalue is on, and pretending otherwise would make the
    cross-check flaky instead of trustworthy.
    """

    conclusive: bool
    agree: bool | None
    exact: tuple[int, int, int]
    approx: tuple[int, int, int]
    band: float


def compare_counts(m: WeightedTreeMatrix, point: Fraction,
                   tol: float = 1e-12) -> AgreementReport:
    """Compare exact below/equal/above counts at `point` with counts derived
    from the float oracle.

    Floats within `band` = 10*tol*scale of the point count as equal; floats
    between one and ten bands away are deemed too close to call and the
    report comes back inconclusive.
    """
    a = to_dense_float(m)
    scale = max(1.0, float(np.max(np.abs(a))) * m.n)
    band = 10.0 * tol * scale
    spectrum = dense_eigenvalues(a, tol)
    pf = float(Fraction(point))
    below = equal = above = 0
    grey = False
    for e in spectrum.values:
        gap = abs(e - pf)
        if gap <= band:
            equal += 1
            continue
        if gap <= 10.0 * band:
            grey = True
        if e < pf:
            below += 1
        else:
            above += 1
    exact = counts_at(m, point)
    ex = (exact.below, exact.equal, exact.above)
    ap = (below, equal, above)
    if grey:
        return AgreementReport(False, None, ex, ap, band)
    return AgreementReport(True, ex == ap, ex, ap, band)
