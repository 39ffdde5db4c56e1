"""Dense complex linear algebra with explicit numerical contracts.

Thin layer over LAPACK (through ``numpy.linalg``) that pins down the
conventions the rest of the package relies on: Hermitian eigenvalues are
returned in descending order, SVD factors satisfy M = U diag(s) V* with
s descending and nonnegative, solves reject nearly singular systems with
the offending sigma_min attached, and failures surface as typed errors
instead of silent garbage.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "CMatrix",
    "NonHermitianError",
    "SingularMatrixError",
    "NumericalFailure",
    "herm_eig",
    "svd",
    "svdvals",
    "solve",
    "pinv",
    "opnorm",
    "frob",
]

# a CMatrix is simply a 2-D complex ndarray; the alias documents intent
CMatrix = np.ndarray


class NonHermitianError(ValueError):
    """Input violated the Hermitian precondition."""


class SingularMatrixError(ValueError):
    """System was singular at the working tolerance."""

    def __init__(self, message: str, sigma_min: float):
        super().__init__(message)
        self.sigma_min = sigma_min


class NumericalFailure(RuntimeError):
    """The underlying iteration failed to converge."""


def _as_cmatrix(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m.view(float))):
        raise ValueError("matrix contains non-finite entries")
    return m


def herm_eig(m, tol: float = 1e-10) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues descending, eigenvector matrix V with columns
    matching the eigenvalue order).  Rejects inputs with
    ||M - M*|| > tol * max(1, ||M||).
    """
    m = _as_cmatrix(m)
    scale = max(1.0, opnorm(m))
    dev = opnorm(m - m.conj().T)
    if dev > tol * scale:
        raise NonHermitianError(f"matrix is not Hermitian: ||M - M*|| = {dev:.3e}")
    h = 0.5 * (m + m.conj().T)
    try:
        w, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NumericalFailure(f"Hermitian eigensolver failed: {exc}") from exc
    return w[::-1].copy(), v[:, ::-1].copy()


def svd(m) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Singular value decomposition M = U diag(s) V* with s descending >= 0."""
    m = _as_cmatrix(m)
    try:
        u, s, vh = np.linalg.svd(m)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NumericalFailure(f"SVD failed to converge: {exc}") from exc
    return u, s, vh.conj().T


def svdvals(m) -> np.ndarray:
    m = _as_cmatrix(m)
    try:
        return np.linalg.svd(m, compute_uv=False)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NumericalFailure(f"SVD failed to converge: {exc}") from exc


def solve(m, b, threshold: float = 1e-12) -> np.ndarray:
    """Solve M x = b, rejecting systems with sigma_min <= threshold * sigma_max."""
    m = _as_cmatrix(m)
    b = np.asarray(b, dtype=complex)
    s = svdvals(m)
    smax = float(s[0]) if s.size else 0.0
    smin = float(s[-1]) if s.size else 0.0
    if smin <= threshold * max(smax, 1e-300):
        raise SingularMatrixError(
            f"matrix is singular at tolerance (sigma_min = {smin:.3e})", smin
        )
    return np.linalg.solve(m, b)


def pinv(m, threshold: float = 1e-12) -> np.ndarray:
    """Moore-Penrose pseudoinverse, cutting singular values <= threshold * sigma_max."""
    m = _as_cmatrix(m)
    return np.linalg.pinv(m, rcond=threshold)


def opnorm(m) -> float:
    """Spectral norm sigma_max(M)."""
    m = np.asarray(m, dtype=complex)
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def frob(m) -> float:
    return float(np.linalg.norm(np.asarray(m, dtype=complex)))
