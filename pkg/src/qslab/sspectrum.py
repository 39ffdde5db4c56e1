"""S-spectrum, S-resolvents and spectral classification for QMatrix operators.

For a right-linear T the pencil

    Q_s(T) = T^2 - 2 Re(s) T + |s|^2 I

depends on s only through the sphere invariants (Re s, |s|), and the
S-spectrum is the set of s where Q_s(T) fails to be invertible.  It is
axially symmetric, so it is stored as one representative per sphere in
the closed upper halfplane of C_{e1}, with multiplicity.

In finite dimension the S-spectrum is exactly the set of right
eigenvalue spheres, obtained by folding the eigenvalues of chi(T):
chi(Q_s(T)) = (chi(T) - s)(chi(T) - conj(s)) for s identified with a
complex number, and the eigenvalues of a chi-structured matrix come in
conjugate pairs.  The independent membership probe ``in_s_spectrum``
measures sigma_min of the pencil instead and never looks at eigenvalues.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import clinalg
from .qmatrix import QMatrix, QVector, from_chi, opnorm
from .quaternion import DEFAULT_UNIT, Quaternion, embed_complex, slice_decompose

__all__ = [
    "SphereSpectrum",
    "SpectrumClassification",
    "ResolventAtSpectrumError",
    "q_pencil",
    "s_spectrum",
    "in_s_spectrum",
    "s_resolvent_left",
    "s_resolvent_right",
    "classify_spectrum",
]

MEMBERSHIP_TOL = 1e-8  # sigma_min(chi(Q_s)) <= tol * (1 + ||T||^2)
SPHERE_MERGE_TOL = 1e-10  # absolute tolerance on (Re, |Im|) when merging spheres
PAIRING_TOL = 1e-10


class ResolventAtSpectrumError(ValueError):
    """Resolvent requested at (or too near) the S-spectrum."""

    def __init__(self, message: str, sigma_min: float):
        super().__init__(message)
        self.sigma_min = sigma_min


@dataclass
class SphereSpectrum:
    """Sphere representatives of the S-spectrum in the closed upper halfplane of C_{e1}."""

    values: np.ndarray  # complex, imag >= 0, pairwise distinct spheres
    multiplicities: np.ndarray  # positive ints, one per representative

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        self.multiplicities = np.asarray(self.multiplicities, dtype=int)
        if self.values.shape != self.multiplicities.shape:
            raise ValueError("values and multiplicities must align")
        if np.any(self.values.imag < -1e-15):
            raise ValueError("representatives must lie in the closed upper halfplane")

    def total_multiplicity(self) -> int:
        return int(self.multiplicities.sum())

    def contains(self, s: Quaternion, tol: float = SPHERE_MERGE_TOL) -> bool:
        pt = slice_decompose(s)
        for v in self.values:
            if abs(v.real - pt.x0) <= tol and abs(v.imag - pt.x1) <= tol:
                return True
        return False

    def spectral_radius(self) -> float:
        return float(np.abs(self.values).max(initial=0.0))


def q_pencil(t: QMatrix, s: Quaternion) -> QMatrix:
    """Q_s(T) = T^2 - 2 Re(s) T + |s|^2 I."""
    eye = QMatrix.identity(t.n)
    return t @ t - t.scale(2.0 * s.re()) + eye.scale(s.norm_sq())


def _pencil_sigma_min(t: QMatrix, s: Quaternion) -> float:
    sv = clinalg.svdvals(q_pencil(t, s).chi())
    return float(sv[-1]) if sv.size else 0.0


def in_s_spectrum(t: QMatrix, s: Quaternion, tol: float = MEMBERSHIP_TOL) -> bool:
    """Membership probe: sigma_min(chi(Q_s(T))) <= tol * (1 + ||T||^2).

    The pencil is quadratic in T, hence the (1 + ||T||^2) scaling.
    """
    bound = tol * (1.0 + opnorm(t) ** 2)
    return _pencil_sigma_min(t, s) <= bound


def _fold_eigenvalues(eigs: np.ndarray, scale: float) -> tuple[np.ndarray, np.ndarray]:
    """Pair conjugate eigenvalues and return upper-halfplane representatives.

    Each eigenvalue is first folded to its sphere coordinates (Re, |Im|);
    conjugate partners then have equal coordinates and sorting makes them
    adjacent, which sidesteps sign pathologies in degenerate spheres.
    """
    folded = eigs.real + 1j * np.abs(eigs.imag)
    order = np.lexsort((folded.imag, folded.real))
    lam = folded[order]
    tol = PAIRING_TOL * max(1.0, scale)
    reps = []
    for k in range(0, lam.size, 2):
        a, b = lam[k], lam[k + 1]
        if abs(a - b) > 10 * tol:
            raise clinalg.NumericalFailure(
                f"chi eigenvalues are not conjugate-paired: {a} vs {b}"
            )
        reps.append(complex(0.5 * (a.real + b.real), 0.5 * (a.imag + b.imag)))
    reps = np.asarray(reps)
    # merge representatives that describe the same sphere
    merged: list[complex] = []
    counts: list[int] = []
    for r in reps:
        for idx, m in enumerate(merged):
            if abs(m.real - r.real) <= SPHERE_MERGE_TOL and abs(m.imag - r.imag) <= SPHERE_MERGE_TOL:
                counts[idx] += 1
                break
        else:
            merged.append(complex(r))
            counts.append(1)
    return np.asarray(merged), np.asarray(counts)


def s_spectrum(t: QMatrix, validate: bool = True, tol: float = MEMBERSHIP_TOL) -> SphereSpectrum:
    """The S-spectrum of T as folded eigenvalues of chi(T).

    With ``validate`` every representative is checked against the pencil
    criterion sigma_min(chi(Q_lambda(T))) <= tol * (1 + ||T||^2).
    """
    eigs = np.linalg.eigvals(t.chi())
    values, mult = _fold_eigenvalues(eigs, scale=float(np.abs(eigs).max(initial=0.0)))
    spec = SphereSpectrum(values, mult)
    if validate:
        bound = tol * (1.0 + opnorm(t) ** 2)
        for v in spec.values:
            s = Quaternion(v.real, v.imag, 0.0, 0.0)
            smin = _pencil_sigma_min(t, s)
            if smin > bound:
                raise clinalg.NumericalFailure(
                    f"folded eigenvalue {v} fails the pencil criterion "
                    f"(sigma_min = {smin:.3e} > {bound:.3e})"
                )
    return spec


def _resolvent_parts(t: QMatrix, s: Quaternion, tol: float) -> tuple[QMatrix, QMatrix]:
    pencil = q_pencil(t, s)
    m = pencil.chi()
    sv = clinalg.svdvals(m)
    smin = float(sv[-1]) if sv.size else 0.0
    bound = tol * (1.0 + opnorm(t) ** 2)
    if smin <= bound:
        raise ResolventAtSpectrumError(
            f"s lies in the S-spectrum at tolerance (sigma_min = {smin:.3e})", smin
        )
    qinv = from_chi(np.linalg.solve(m, np.eye(m.shape[0], dtype=complex)))
    shifted = t - QMatrix.diag_left(s.conj(), t.n)
    return qinv, shifted


def s_resolvent_left(t: QMatrix, s: Quaternion, tol: float = MEMBERSHIP_TOL) -> QMatrix:
    """S_L^{-1}(s, T) = -Q_s(T)^{-1} (T - conj(s) I)."""
    qinv, shifted = _resolvent_parts(t, s, tol)
    return -(qinv @ shifted)


def s_resolvent_right(t: QMatrix, s: Quaternion, tol: float = MEMBERSHIP_TOL) -> QMatrix:
    """S_R^{-1}(s, T) = -(T - conj(s) I) Q_s(T)^{-1}."""
    qinv, shifted = _resolvent_parts(t, s, tol)
    return -(shifted @ qinv)


@dataclass
class SpectrumClassification:
    """Partition of the S-spectrum; residual and continuous parts are empty in finite dimension."""

    point: SphereSpectrum
    eigenvectors: list[QVector]  # one right eigenvector per representative
    residual: list = field(default_factory=list)
    continuous: list = field(default_factory=list)


def classify_spectrum(t: QMatrix, tol: float = MEMBERSHIP_TOL) -> SpectrumClassification:
    """Classify the S-spectrum; every sphere is point spectrum with a right eigenvector.

    The witness x for a representative lambda satisfies T x = x lambda, so
    Q_lambda(T) x = 0 up to rounding.
    """
    eigs, vecs = np.linalg.eig(t.chi())
    spec = s_spectrum(t, validate=False)
    witnesses: list[QVector] = []
    for v in spec.values:
        # pick the chi eigenvector closest to the representative (or its conjugate)
        dist = np.minimum(np.abs(eigs - v), np.abs(eigs - np.conj(v)))
        k = int(np.argmin(dist))
        x = QVector.from_iota(vecs[:, k]).normalized()
        lam = eigs[k]
        if lam.imag < 0:
            # T x = x lam with lam in the lower halfplane; x * j carries the
            # conjugate (upper halfplane) eigenvalue on the same sphere
            x = x.right_mul(Quaternion(0.0, 0.0, 1.0, 0.0))
        residual = (t.apply(x) - x.right_mul(embed_complex(complex(v), DEFAULT_UNIT))).norm()
        if residual > tol * (1.0 + opnorm(t)):
            raise clinalg.NumericalFailure(
                f"eigenvector residual {residual:.3e} too large for representative {v}"
            )
        witnesses.append(x)
    return SpectrumClassification(point=spec, eigenvectors=witnesses)
