"""Dense symmetric eigensolver and the verification engine built on it.

The solver is a cyclic-by-row Jacobi iteration with threshold pivoting,
JIT-compiled with numba. It is deliberately simple and deterministic: the
same matrix always produces the same spectrum bit for bit, which makes it
a trustworthy ground truth for checking the degree-based bounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from numba import njit

from .graphs import WeightedGraph, complement_normalized, normalize

__all__ = [
    "Spectrum",
    "IndexCheck",
    "VerificationReport",
    "ConvergenceError",
    "laplacian",
    "adjacency",
    "symmetric_spectrum",
    "laplacian_spectrum",
    "verify_bounds",
    "check_complement_identity",
    "rayleigh_consistency",
    "DEFAULT_ORACLE_CAP",
]

DEFAULT_ORACLE_CAP = 300


class ConvergenceError(RuntimeError):
    """Jacobi sweep budget exhausted before the off-diagonal norm dropped."""

    def __init__(self, sweeps: int, off_norm: float):
        self.sweeps = sweeps
        self.off_norm = off_norm
        super().__init__(
            f"no convergence after {sweeps} sweeps; "
            f"off-diagonal Frobenius norm {off_norm:.3e}"
        )


def adjacency(G: WeightedGraph) -> np.ndarray:
    """Dense symmetric adjacency matrix A with A[i, j] = w_ij."""
    A = np.zeros((G.n, G.n))
    A[G.edge_u, G.edge_v] = G.edge_w
    A[G.edge_v, G.edge_u] = G.edge_w
    return A

def laplacian(G: WeightedGraph) -> np.ndarray:
    """Dense Laplacian D - A.

    The diagonal is set to the exact same degree array the bounds consume,
    so a degree/diagonal mismatch is impossible by construction.
    """
    L = np.zeros((G.n, G.n))
    L[G.edge_u, G.edge_v] = -G.edge_w
    L[G.edge_v, G.edge_u] = -G.edge_w
    L[np.diag_indices(G.n)] = G.degrees
    return L


@njit(cache=True)
def _jacobi_kernel(A, V, tol, max_sweeps):  # pragma: no cover - compiled
    n = A.shape[0]
    hist = np.zeros(max_sweeps + 1)
    norm2 = 0.0
    for i in range(n):
        for j in range(n):
            norm2 += A[i, j] * A[i, j]
    if norm2 == 0.0:
        return 0, 0.0, True, hist[:1]
    norm = np.sqrt(norm2)
    sweeps = 0
    for sweep in range(max_sweeps):
        off2 = 0.0
        s_abs = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off2 += A[p, q] * A[p, q]
                s_abs += abs(A[p, q])
        off = np.sqrt(2.0 * off2)
        hist[sweep] = off
        if off <= tol * norm:
            return sweep, off, True, hist[: sweep + 1]
        sweeps = sweep + 1
        # Threshold pivoting: skip negligible pivots on the opening sweeps,
        # rotate everything afterwards.
        tresh = 0.2 * s_abs / (n * n) if sweep < 3 else 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                g = 100.0 * abs(apq)
                if (
                    sweep > 3
                    and abs(A[p, p]) + g == abs(A[p, p])
                    and abs(A[q, q]) + g == abs(A[q, q])
                ):
                    A[p, q] = 0.0
                    A[q, p] = 0.0
                elif abs(apq) > tresh:
                    h = A[q, q] - A[p, p]
                    if abs(h) + g == abs(h):
                        t = apq / h
                    else:
                        theta = 0.5 * h / apq
                        t = 1.0 / (abs(theta) + np.sqrt(1.0 + theta * theta))
                        if theta < 0.0:
                            t = -t
                    c = 1.0 / np.sqrt(1.0 + t * t)
                    s = t * c
                    tau = s / (1.0 + c)
                    A[p, p] -= t * apq
                    A[q, q] += t * apq
                    A[p, q] = 0.0
                    A[q, p] = 0.0
                    for i in range(n):
                        if i != p and i != q:
                            aip = A[i, p]
                            aiq = A[i, q]
                            A[i, p] = aip - s * (aiq + tau * aip)
                            A[p, i] = A[i, p]
                            A[i, q] = aiq + s * (aip - tau * aiq)
                            A[q, i] = A[i, q]
                    for i in range(n):
                        vip = V[i, p]
                        viq = V[i, q]
                        V[i, p] = c * vip - s * viq
                        V[i, q] = s * vip + c * viq
    off2 = 0.0
    for p in range(n - 1):
        for q in range(p + 1, n):
            off2 += A[p, q] * A[p, q]
    off = np.sqrt(2.0 * off2)
    hist[max_sweeps] = off
    return sweeps, off, off <= tol * norm, hist[: max_sweeps + 1]


@dataclass
class Spectrum:
    """Eigenvalues in ascending order, optionally with orthonormal
    eigenvectors (column k pairs with eigenvalue k)."""

    values: np.ndarray
    vectors: Optional[np.ndarray] = None
    sweeps: int = 0
    off_history: np.ndarray = field(default_factory=lambda: np.zeros(0))


def symmetric_spectrum(
    M: np.ndarray,
    tol: float = 1e-12,
    max_sweeps: int = 100,
    vectors: bool = True,
) -> Spectrum:
    """Full spectrum of an exactly symmetric dense matrix via cyclic Jacobi.

    Converged when the off-diagonal Frobenius norm falls below tol times
    the Frobenius norm of M. Raises ConvergenceError if the sweep budget
    runs out first.
    """
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if not np.array_equal(M, M.T):
        raise ValueError("matrix is not exactly symmetric")
    if tol <= 0:
        raise ValueError("tol must be positive")
    A = np.ascontiguousarray(M.copy())
    V = np.eye(M.shape[0])
    sweeps, off, converged, hist = _jacobi_kernel(A, V, tol, max_sweeps)
    if not converged:
        raise ConvergenceError(sweeps, off)
    lam = np.diag(A).copy()
    order = np.argsort(lam, kind="stable")
    spec = Spectrum(lam[order], V[:, order] if vectors else None, sweeps, hist)
    return spec


def laplacian_spectrum(
    G: WeightedGraph, tol: float = 1e-12, vectors: bool = False
) -> Spectrum:
    return symmetric_spectrum(laplacian(G), tol=tol, vectors=vectors)


@dataclass
class IndexCheck:
    """Outcome of checking one eigenvalue against its certified interval."""

    index: int
    eigenvalue: float
    lower: float
    upper: float
    lower_ok: bool
    upper_ok: bool

    @property
    def ok(self) -> bool:
        return self.lower_ok and self.upper_ok


@dataclass
class VerificationReport:
    """Result of checking bounds and/or the complement spectrum identity.

    checks holds the per-index bound comparisons (empty for identity-only
    runs); identity_residuals holds |eig_i(complement) - (n - eig_{n-i+2})|
    for i in [2, n]. worst_residual is the largest violation-relevant
    quantity compared against effective_tol.
    """

    n: int
    tol: float
    effective_tol: float
    passed: bool
    worst_residual: float
    checks: list[IndexCheck] = field(default_factory=list)
    identity_residuals: Optional[np.ndarray] = None
    matrix_identity_residual: Optional[float] = None


def _require_cap(n: int, cap: int) -> None:
    if n > cap:
        raise ValueError(f"graph has n={n} vertices, above the dense-solve cap {cap}")


def verify_bounds(G: WeightedGraph, report, tol: float = 1e-8,
                  cap: int = DEFAULT_ORACLE_CAP) -> VerificationReport:
    """Check every eigenvalue of L(G) against the report's intervals.

    The comparison tolerance scales with the largest eigenvalue:
    tol * max(1, lambda_n).
    """
    _require_cap(G.n, cap)
    lam = laplacian_spectrum(G).values
    tol_eff = tol * max(1.0, float(lam[-1]))
    checks = []
    worst = -np.inf
    for m in range(1, G.n + 1):
        ev = float(lam[m - 1])
        lo = float(report.lower[m - 1])
        hi = float(report.upper[m - 1])
        lo_res = lo - ev
        hi_res = ev - hi
        worst = max(worst, lo_res, hi_res)
        checks.append(
            IndexCheck(m, ev, lo, hi, lo_res <= tol_eff, hi_res <= tol_eff)
        )
    passed = all(c.ok for c in checks)
    return VerificationReport(
        n=G.n,
        tol=tol,
        effective_tol=tol_eff,
        passed=passed,
        worst_residual=float(worst),
        checks=checks,
    )


def check_complement_identity(
    G: WeightedGraph, tol: float = 1e-8, cap: int = DEFAULT_ORACLE_CAP
) -> VerificationReport:
    """Verify the complement spectrum pairing on G (normalized first when
    weighted): eig_i(complement) = n - eig_{n-i+2}(base) for i in [2, n],
    plus the matrix identity L(base) + L(complement) = n*I - J."""
    _require_cap(G.n, cap)
    n = G.n
    base, _a = normalize(G)
    comp = complement_normalized(base)
    lam_base = laplacian_spectrum(base).values
    lam_comp = laplacian_spectrum(comp).values
    if n >= 2:
        residuals = np.abs(lam_comp[1:] - (n - lam_base[1:][::-1]))
    else:
        residuals = np.zeros(0)
    tol_eff = tol * n
    worst = float(residuals.max()) if residuals.size else 0.0

    ident = laplacian(base) + laplacian(comp) - (n * np.eye(n) - np.ones((n, n)))
    mat_res = float(np.abs(ident).max())
    # The matrix identity holds exactly in real arithmetic; allow only
    # accumulated rounding from the degree sums.
    mat_tol = 64 * np.finfo(np.float64).eps * max(1.0, float(n))
    passed = worst <= tol_eff and mat_res <= mat_tol
    return VerificationReport(
        n=n,
        tol=tol,
        effective_tol=tol_eff,
        passed=passed,
        worst_residual=worst,
        identity_residuals=residuals,
        matrix_identity_residual=mat_res,
    )


def rayleigh_consistency(
    M: np.ndarray,
    k: int,
    trials: int = 100,
    seed: int = 0,
    tol: float = 1e-8,
) -> bool:
    """Probe the variational characterization of the k-th eigenvalue.

    Random vectors projected orthogonal to the eigenvectors k+1..n must
    have Rayleigh quotient at most lambda_k (plus tol), and the quotient
    must attain lambda_k at the k-th eigenvector itself.
    """
    spec = symmetric_spectrum(M, vectors=True)
    n = spec.values.size
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range [1, {n}]")
    lam_k = float(spec.values[k - 1])

    def quotient(f: np.ndarray) -> float:
        return float(f @ (M @ f) / (f @ f))

    vk = spec.vectors[:, k - 1]
    if abs(quotient(vk) - lam_k) > tol:
        return False
    upper = spec.vectors[:, k:]
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        x = rng.standard_normal(n)
        f = x - upper @ (upper.T @ x)
        fn = float(np.linalg.norm(f))
        if fn <= 1e-12 * float(np.linalg.norm(x)):
            continue  # degenerate draw; essentially impossible
        if quotient(f) > lam_k + tol:
            return False
    return True
