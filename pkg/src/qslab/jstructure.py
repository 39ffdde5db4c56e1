"""Complex structures J on H^n and the restriction/lift isomorphisms.

An anti-selfadjoint unitary J together with a unit imaginary i splits
H^n into H_+ = {x : Jx = x i} and H_- = {x : Jx = -x i}.  Any
orthonormal basis of H_+ over C_i is automatically an orthonormal basis
of the whole quaternionic space, and J acts on it as right
multiplication by i.  Operators commuting with J restrict to C_i-linear
operators on H_+ (``res_ji``), and every complex matrix lifts back to a
unique J-commuting quaternionic operator with the same norm
(``lift_ji``); the two maps are mutually inverse *-isomorphisms.

The basis of H_+ is computed once at construction: for the unit e1 it is
the +1 eigenspace of the Hermitian matrix -i * chi(J); for a general
unit i it is that basis right-multiplied by a unit witness q with
q^{-1} e1 q = i.
"""

from __future__ import annotations

import numpy as np

from . import clinalg
from .qmatrix import QMatrix, QVector, opnorm
from .quaternion import (
    DEFAULT_UNIT,
    E1,
    Quaternion,
    UnitImaginary,
    complex_coords,
    embed_complex,
    same_sphere,
)

__all__ = [
    "ComplexStructure",
    "NonCommutingError",
    "DegenerateStructureError",
    "standard_j",
    "commutes_with_j",
    "res_ji",
    "lift_ji",
]

STRUCTURE_TOL = 1e-8  # invariant violations beyond this reject J


class NonCommutingError(ValueError):
    """Operator does not commute with the complex structure."""

    def __init__(self, message: str, commutator_norm: float):
        super().__init__(message)
        self.commutator_norm = commutator_norm


class DegenerateStructureError(ValueError):
    """J fails the anti-selfadjoint unitary invariants."""


def _plus_basis_e1(j: QMatrix) -> QMatrix:
    """Orthonormal basis of {x : Jx = x e1} as columns, from the chi eigenproblem."""
    n = j.n
    h = -1j * j.chi()  # Hermitian with eigenvalues +-1; +1 eigenspace is H_+
    w, v = clinalg.herm_eig(h)
    plus = np.where(w > 0)[0]
    if plus.size != n:
        raise DegenerateStructureError(
            f"+1 eigenspace of -i chi(J) has dimension {plus.size}, expected {n}"
        )
    if np.abs(w[plus] - 1.0).max(initial=0.0) > STRUCTURE_TOL:
        raise DegenerateStructureError("eigenvalues of -i chi(J) deviate from +-1")
    cols = []
    for k in plus:
        zeta = v[:, k]
        # fix the C-phase: largest-magnitude component becomes real positive
        idx = int(np.argmax(np.abs(zeta)))
        phase = zeta[idx] / abs(zeta[idx])
        cols.append(QVector.from_iota(zeta / phase))
    return QMatrix.from_cols(cols)


class ComplexStructure:
    """An anti-selfadjoint unitary J with a designated unit i and cached H_+ basis."""

    __slots__ = ("j", "unit", "basis", "n")

    def __init__(self, j: QMatrix, unit: UnitImaginary = DEFAULT_UNIT, _basis: QMatrix | None = None):
        dev_anti = opnorm(j + j.adjoint())
        dev_unit = opnorm(j.adjoint() @ j - QMatrix.identity(j.n))
        if dev_anti > STRUCTURE_TOL or dev_unit > STRUCTURE_TOL:
            raise DegenerateStructureError(
                f"J is not an anti-selfadjoint unitary (||J+J*|| = {dev_anti:.3e}, "
                f"||J*J - I|| = {dev_unit:.3e})"
            )
        self.j = j
        self.unit = unit
        self.n = j.n
        if _basis is None:
            e = _plus_basis_e1(j)
            ok, witness = same_sphere(E1, unit.as_quaternion())
            if not ok or witness is None:
                raise DegenerateStructureError("designated unit is not imaginary")
            if not witness.is_close(Quaternion(1.0), 1e-15):
                e = e @ QMatrix.diag_left(witness, j.n)
            _basis = e
        self.basis = _basis
        self._validate_basis()

    def _validate_basis(self):
        e = self.basis
        gram_dev = opnorm(e.adjoint() @ e - QMatrix.identity(self.n))
        if gram_dev > STRUCTURE_TOL:
            raise DegenerateStructureError(f"H_+ basis is not orthonormal ({gram_dev:.3e})")
        # J e_k = e_k * i, i.e. J E = E D_i with D_i left multiplication by i
        d = QMatrix.diag_left(self.unit.as_quaternion(), self.n)
        dev = opnorm(self.j @ e - e @ d)
        if dev > STRUCTURE_TOL:
            raise DegenerateStructureError(f"basis does not satisfy J e = e i ({dev:.3e})")

    def plus_basis(self) -> list[QVector]:
        return self.basis.cols()

    def with_unit(self, unit: UnitImaginary) -> "ComplexStructure":
        """The same J viewed with a different designated unit."""
        return ComplexStructure(self.j, unit)

    def project_plus(self, x: QVector) -> QVector:
        """Orthogonal projection of x onto H_+."""
        out = QVector.zeros(self.n)
        for e in self.plus_basis():
            out = out + e.right_mul(e.inner(x))
        return out

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"ComplexStructure(n={self.n}, unit={self.unit.direction})"


def standard_j(n: int) -> ComplexStructure:
    """Componentwise left multiplication by e1; H_+ is C_{e1}^n with the canonical basis."""
    if n < 1:
        raise ValueError("dimension must be at least 1")
    j = QMatrix.diag_left(E1, n)
    basis = QMatrix.identity(n)
    return ComplexStructure(j, DEFAULT_UNIT, _basis=basis)


def commutes_with_j(t: QMatrix, s: ComplexStructure | QMatrix, tol: float = 1e-10) -> bool:
    j = s.j if isinstance(s, ComplexStructure) else s
    return opnorm(t @ j - j @ t) <= tol * max(1.0, opnorm(t))


def _commutator_norm(t: QMatrix, s: ComplexStructure) -> float:
    return opnorm(t @ s.j - s.j @ t)


def res_ji(t: QMatrix, s: ComplexStructure, tol: float = 1e-10) -> np.ndarray:
    """Matrix of T restricted to H_+ in the cached basis, entries in C_i.

    Requires [T, J] = 0; the commutator norm is attached to the rejection
    otherwise.  Norms, products, adjoints and traces of the result match
    those of T.
    """
    comm = _commutator_norm(t, s)
    if comm > tol * max(1.0, opnorm(t)):
        raise NonCommutingError(
            f"operator does not commute with J (||[T,J]|| = {comm:.3e})", comm
        )
    g = s.basis.adjoint() @ t @ s.basis
    out = np.empty((s.n, s.n), dtype=complex)
    max_residual = 0.0
    for m in range(s.n):
        for k in range(s.n):
            entry = Quaternion.from_complex_pair(g.a[m, k], g.b[m, k])
            z, residual = complex_coords(entry, s.unit)
            max_residual = max(max_residual, residual)
            out[m, k] = z
    if max_residual > 1e-8 * max(1.0, opnorm(t)):
        raise clinalg.NumericalFailure(
            f"restriction left the plane C_i (residual {max_residual:.3e})"
        )
    return out


def lift_ji(m: np.ndarray, s: ComplexStructure) -> QMatrix:
    """The unique right-linear J-commuting extension of the complex matrix m."""
    m = np.asarray(m, dtype=complex)
    if m.shape != (s.n, s.n):
        raise ValueError(f"matrix must be {s.n} x {s.n}")
    entries = np.empty((s.n, s.n, 4))
    for a in range(s.n):
        for b in range(s.n):
            q = embed_complex(complex(m[a, b]), s.unit)
            entries[a, b] = q.as_array()
    middle = QMatrix.from_entries(entries)
    return s.basis @ middle @ s.basis.adjoint()
