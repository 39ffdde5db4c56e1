"""Quaternionic matrices as right-linear operators on H^n.

A vector x in H^n splits over the fixed plane C_{e1} (with j = e2) as
x = x1 + x2*j with complex component vectors x1, x2, and an operator
splits as T = A + B*j with complex n x n blocks.  The complex embedding

    iota(x) = (x1, conj(x2)),        chi(T) = [[A, -B], [conj(B), conj(A)]]

turns composition, sums and adjoints of quaternionic operators into the
same operations on 2n x 2n complex matrices: chi(TS) = chi(T) chi(S),
chi(T*) = chi(T)*, and the C_{e1}-part of <x, y> is the complex inner
product of iota(x), iota(y).  All spectral computations (operator norm,
square roots, fractional powers, polar factors, singular values) are
carried out through chi and mapped back.

Matrices in the image of chi are exactly those M with
M = Omega conj(M) Omega^{-1} for Omega = [[0, -I], [I, 0]]; ``from_chi``
checks that symmetry before extracting the blocks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import clinalg
from .quaternion import Quaternion

__all__ = [
    "QVector",
    "QMatrix",
    "QSvd",
    "NotPositiveError",
    "chi",
    "from_chi",
    "adjoint",
    "opnorm",
    "is_selfadjoint",
    "is_antiselfadjoint",
    "is_positive",
    "is_normal",
    "is_unitary",
    "sqrt_pos",
    "abs_op",
    "frac_power",
    "polar",
    "qsvd",
    "singular_values",
    "inverse",
    "gram_schmidt",
    "random_qmatrix",
    "random_qvector",
    "random_positive",
    "random_unitary",
    "random_onb",
    "rank_one",
]

POSITIVITY_TOL = 1e-10  # smallest chi-eigenvalue >= -POSITIVITY_TOL * ||T||
KERNEL_TOL = 1e-12  # sigma <= KERNEL_TOL * sigma_max counts as kernel
CHI_SYMMETRY_TOL = 1e-8


class NotPositiveError(ValueError):
    """Operator failed a positivity precondition."""


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


class QVector:
    """Vector in H^n stored as the complex pair (c1, c2) with x = c1 + c2*j."""

    __slots__ = ("c1", "c2", "n")

    def __init__(self, c1, c2):
        c1 = _freeze(np.asarray(c1, dtype=complex).reshape(-1))
        c2 = _freeze(np.asarray(c2, dtype=complex).reshape(-1))
        if c1.shape != c2.shape:
            raise ValueError("component vectors must have equal length")
        self.c1, self.c2 = c1, c2
        self.n = c1.size

    # -- constructors --------------------------------------------------

    @staticmethod
    def zeros(n: int) -> "QVector":
        return QVector(np.zeros(n, complex), np.zeros(n, complex))

    @staticmethod
    def canonical(k: int, n: int) -> "QVector":
        c1 = np.zeros(n, complex)
        c1[k] = 1.0
        return QVector(c1, np.zeros(n, complex))

    @staticmethod
    def from_quaternions(entries) -> "QVector":
        pairs = [q.complex_pair() for q in entries]
        return QVector([p[0] for p in pairs], [p[1] for p in pairs])

    def to_quaternions(self) -> list[Quaternion]:
        return [
            Quaternion.from_complex_pair(a, b) for a, b in zip(self.c1, self.c2)
        ]

    # -- embedding -----------------------------------------------------

    def iota(self) -> np.ndarray:
        """Complex coordinates (x1, conj(x2)) in C^{2n}."""
        return np.concatenate([self.c1, np.conj(self.c2)])

    @staticmethod
    def from_iota(z: np.ndarray) -> "QVector":
        z = np.asarray(z, dtype=complex).reshape(-1)
        n = z.size // 2
        return QVector(z[:n], np.conj(z[n:]))

    # -- algebra ---------------------------------------------------------

    def __add__(self, other: "QVector") -> "QVector":
        return QVector(self.c1 + other.c1, self.c2 + other.c2)

    def __sub__(self, other: "QVector") -> "QVector":
        return QVector(self.c1 - other.c1, self.c2 - other.c2)

    def __neg__(self) -> "QVector":
        return QVector(-self.c1, -self.c2)

    def right_mul(self, q: Quaternion | float) -> "QVector":
        """x * q, componentwise right scalar multiplication."""
        if isinstance(q, (int, float)):
            return QVector(self.c1 * q, self.c2 * q)
        a, b = q.complex_pair()
        # (c1 + c2 j)(a + b j) = (c1 a - c2 conj(b)) + (c1 b + c2 conj(a)) j
        return QVector(
            self.c1 * a - self.c2 * np.conj(b),
            self.c1 * b + self.c2 * np.conj(a),
        )

    def inner(self, other: "QVector") -> Quaternion:
        """<x, y> = sum_k conj(x_k) y_k, right-linear in y."""
        a = np.vdot(self.c1, other.c1) + np.vdot(other.c2, self.c2)
        b = np.vdot(self.c1, other.c2) - np.vdot(other.c1, self.c2)
        return Quaternion.from_complex_pair(a, b)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.c1) ** 2 + np.abs(self.c2) ** 2)))

    def normalized(self) -> "QVector":
        nrm = self.norm()
        if nrm == 0.0:
            raise ZeroDivisionError("cannot normalize the zero vector")
        return self.right_mul(1.0 / nrm)


class QMatrix:
    """Right-linear operator T = A + B*j on H^n, stored as complex blocks (A, B)."""

    __slots__ = ("a", "b", "n", "_opnorm")

    def __init__(self, a, b=None):
        a = np.asarray(a, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("block A must be square")
        if b is None:
            b = np.zeros_like(a)
        b = np.asarray(b, dtype=complex)
        if b.shape != a.shape:
            raise ValueError("blocks A and B must have equal shape")
        self.a = _freeze(a)
        self.b = _freeze(b)
        self.n = a.shape[0]
        self._opnorm: float | None = None

    # -- constructors --------------------------------------------------

    @staticmethod
    def identity(n: int) -> "QMatrix":
        return QMatrix(np.eye(n, dtype=complex))

    @staticmethod
    def zeros(n: int) -> "QMatrix":
        return QMatrix(np.zeros((n, n), complex))

    @staticmethod
    def diag_left(q: Quaternion | float, n: int = 1) -> "QMatrix":
        """The operator x -> q*x of componentwise left multiplication."""
        if isinstance(q, (int, float)):
            q = Quaternion.from_real(q)
        a, b = q.complex_pair()
        eye = np.eye(n, dtype=complex)
        return QMatrix(a * eye, b * eye)

    @staticmethod
    def from_entries(entries: np.ndarray) -> "QMatrix":
        """Build from an (n, n, 4) array of quaternion components."""
        entries = np.asarray(entries, dtype=float)
        if entries.ndim != 3 or entries.shape[2] != 4 or entries.shape[0] != entries.shape[1]:
            raise ValueError("expected an (n, n, 4) component array")
        a = entries[:, :, 0] + 1j * entries[:, :, 1]
        b = entries[:, :, 2] + 1j * entries[:, :, 3]
        return QMatrix(a, b)

    def to_entries(self) -> np.ndarray:
        out = np.empty((self.n, self.n, 4))
        out[:, :, 0] = self.a.real
        out[:, :, 1] = self.a.imag
        out[:, :, 2] = self.b.real
        out[:, :, 3] = self.b.imag
        return out

    @staticmethod
    def from_cols(cols) -> "QMatrix":
        c1 = np.stack([v.c1 for v in cols], axis=1)
        c2 = np.stack([v.c2 for v in cols], axis=1)
        return QMatrix(c1, c2)

    def col(self, k: int) -> QVector:
        return QVector(self.a[:, k], self.b[:, k])

    def cols(self) -> list[QVector]:
        return [self.col(k) for k in range(self.n)]

    # -- algebra ---------------------------------------------------------

    def __add__(self, other: "QMatrix") -> "QMatrix":
        return QMatrix(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return QMatrix(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "QMatrix":
        return QMatrix(-self.a, -self.b)

    def scale(self, t: float) -> "QMatrix":
        """Real scalar multiple (real scalars are the only central ones)."""
        return QMatrix(self.a * t, self.b * t)

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        # (A1 + B1 j)(A2 + B2 j) = (A1 A2 - B1 conj(B2)) + (A1 B2 + B1 conj(A2)) j
        return QMatrix(
            self.a @ other.a - self.b @ np.conj(other.b),
            self.a @ other.b + self.b @ np.conj(other.a),
        )

    def apply(self, x: QVector) -> QVector:
        return QVector(
            self.a @ x.c1 - self.b @ np.conj(x.c2),
            self.a @ x.c2 + self.b @ np.conj(x.c1),
        )

    def adjoint(self) -> "QMatrix":
        """T* defined by <T*x, y> = <x, Ty>; entrywise quaternion conj-transpose."""
        return QMatrix(self.a.conj().T, -self.b.T)

    def chi(self) -> np.ndarray:
        n = self.n
        out = np.empty((2 * n, 2 * n), dtype=complex)
        out[:n, :n] = self.a
        out[:n, n:] = -self.b
        out[n:, :n] = np.conj(self.b)
        out[n:, n:] = np.conj(self.a)
        return out

    def norm_max_entry(self) -> float:
        return float(max(np.abs(self.a).max(initial=0.0), np.abs(self.b).max(initial=0.0)))

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"QMatrix(n={self.n})"


def chi(t: QMatrix) -> np.ndarray:
    return t.chi()


def from_chi(m: np.ndarray, tol: float = CHI_SYMMETRY_TOL) -> QMatrix:
    """Invert the chi embedding, verifying M = Omega conj(M) Omega^{-1}."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
        raise ValueError("chi image must be a square matrix of even dimension")
    n = m.shape[0] // 2
    m11, m12 = m[:n, :n], m[:n, n:]
    m21, m22 = m[n:, :n], m[n:, n:]
    scale = max(1.0, clinalg.opnorm(m))
    residual = max(
        clinalg.opnorm(m11 - np.conj(m22)),
        clinalg.opnorm(m12 + np.conj(m21)),
    )
    if residual > tol * scale:
        raise ValueError(
            f"matrix is not in the image of chi (symmetry residual {residual:.3e})"
        )
    a = 0.5 * (m11 + np.conj(m22))
    b = 0.5 * (np.conj(m21) - m12)
    return QMatrix(a, b)


def adjoint(t: QMatrix) -> QMatrix:
    return t.adjoint()


def opnorm(t: QMatrix) -> float:
    """Operator norm sup_{|x|=1} |Tx| = sigma_max(chi(T)); cached per matrix."""
    if t._opnorm is None:
        t._opnorm = clinalg.opnorm(t.chi())
    return t._opnorm


def inverse(t: QMatrix, threshold: float = 1e-12) -> QMatrix:
    """T^{-1} through the chi embedding; singular inputs raise SingularMatrixError."""
    m = t.chi()
    x = clinalg.solve(m, np.eye(2 * t.n, dtype=complex), threshold=threshold)
    return from_chi(x)


# -- predicates ----------------------------------------------------------


def is_selfadjoint(t: QMatrix, tol: float = 1e-10) -> bool:
    scale = max(1.0, opnorm(t))
    return opnorm(t - t.adjoint()) <= tol * scale


def is_antiselfadjoint(t: QMatrix, tol: float = 1e-10) -> bool:
    scale = max(1.0, opnorm(t))
    return opnorm(t + t.adjoint()) <= tol * scale


def is_positive(t: QMatrix, tol: float = POSITIVITY_TOL) -> bool:
    if not is_selfadjoint(t, tol=max(tol, 1e-10)):
        return False
    m = t.chi()
    w = np.linalg.eigvalsh(0.5 * (m + m.conj().T))
    return bool(w.min(initial=0.0) >= -tol * max(1.0, opnorm(t)))


def is_normal(t: QMatrix, tol: float = 1e-10) -> bool:
    scale = max(1.0, opnorm(t)) ** 2
    return opnorm(t.adjoint() @ t - t @ t.adjoint()) <= tol * scale


def is_unitary(t: QMatrix, tol: float = 1e-10) -> bool:
    return opnorm(t.adjoint() @ t - QMatrix.identity(t.n)) <= tol


# -- spectral functions of positive operators ------------------------------


def _positive_eig(t: QMatrix, tol: float) -> tuple[np.ndarray, np.ndarray]:
    """Descending eigenvalues (clipped at 0) and eigenvectors of chi(T) for positive T.

    chi eigenvalues come in exactly equal pairs; each adjacent pair is
    averaged so that a spectral function with unbounded derivative near 0
    (square roots, fractional powers below 1) cannot amplify the rounding
    split between the two copies and break the chi symmetry of the result.
    """
    try:
        w, v = clinalg.herm_eig(t.chi())
    except clinalg.NonHermitianError as exc:
        raise NotPositiveError(f"operator is not selfadjoint: {exc}") from exc
    floor = -tol * max(1.0, float(w.max(initial=0.0)))
    if w.min(initial=0.0) < floor:
        raise NotPositiveError(
            f"operator has negative spectrum beyond tolerance (min {w.min():.3e})"
        )
    w = np.clip(w, 0.0, None)
    gap = np.abs(w[::2] - w[1::2]).max(initial=0.0)
    if gap > 1e-8 * max(1.0, float(w.max(initial=0.0))):
        raise clinalg.NumericalFailure(
            f"chi eigenvalues failed to pair up (gap {gap:.3e})"
        )
    paired = 0.5 * (w[::2] + w[1::2])
    w = np.repeat(paired, 2)
    return w, v


def _spectral_map(t: QMatrix, fn, tol: float = POSITIVITY_TOL) -> QMatrix:
    w, v = _positive_eig(t, tol)
    m = (v * fn(w)) @ v.conj().T
    return from_chi(m)


def sqrt_pos(t: QMatrix) -> QMatrix:
    """The unique positive square root of a positive operator."""
    return _spectral_map(t, np.sqrt)


def abs_op(t: QMatrix) -> QMatrix:
    """|T| = sqrt(T* T), computed from the SVD of chi(T).

    Going through chi(T)* chi(T) and a square root would floor the small
    singular values at sqrt(eps) * sigma_max; the direct route keeps them
    accurate to eps * sigma_max.
    """
    _, s, v = clinalg.svd(t.chi())
    return from_chi((v * s) @ v.conj().T)


def frac_power(t: QMatrix, p: float) -> QMatrix:
    """T^p for positive T: eigenvalues are raised to p, the eigenbasis is kept."""
    if p <= 0:
        raise ValueError("exponent must be positive")
    return _spectral_map(t, lambda w: np.power(w, p))


# -- polar decomposition and singular value decomposition ------------------


def polar(t: QMatrix) -> tuple[QMatrix, QMatrix]:
    """T = W P with P = |T| positive and W a partial isometry vanishing on ker(P)."""
    m = t.chi()
    u, s, v = clinalg.svd(m)
    smax = float(s[0]) if s.size else 0.0
    rank = int(np.sum(s > KERNEL_TOL * max(smax, 1e-300)))
    # chi doubles every singular value; an odd rank means the threshold
    # split a pair, which would break the chi symmetry of U_r V_r*
    rank -= rank % 2
    w = u[:, :rank] @ v[:, :rank].conj().T
    p = (v * s) @ v.conj().T
    return from_chi(w), from_chi(p)


@dataclass
class QSvd:
    """Singular value decomposition data: Tx = sum_m left[m] * sigmas[m] * <right[m], x>.

    ``sigmas`` are the eigenvalues of |T| in descending order; ``right``
    is an orthonormal eigenbasis of |T| and ``left`` an orthonormal basis
    with left[m] = T right[m] / sigmas[m] on the cokernel, completed to a
    full orthonormal basis on the kernel.
    """

    sigmas: np.ndarray
    left: list[QVector]
    right: list[QVector]

    def apply(self, x: QVector) -> QVector:
        out = QVector.zeros(x.n)
        for s, u, e in zip(self.sigmas, self.left, self.right):
            coeff = e.inner(x)
            out = out + u.right_mul(Quaternion.from_real(float(s)) * coeff)
        return out

    def truncate(self, k: int) -> QMatrix:
        """The best rank-k approximation sum_{m<k} left[m] sigmas[m] <right[m], .>."""
        n = self.left[0].n if self.left else 0
        out = QMatrix.zeros(n)
        for s, u, e in zip(self.sigmas[:k], self.left[:k], self.right[:k]):
            out = out + rank_one(u, e).scale(float(s))
        return out


def rank_one(u: QVector, e: QVector) -> QMatrix:
    """The operator x -> u <e, x>."""
    cols = []
    for k in range(e.n):
        coeff = Quaternion.from_complex_pair(np.conj(e.c1[k]), -e.c2[k])
        # <e, eps_k> = conj(e_k); conj(a + b j) = conj(a) - b j
        cols.append(u.right_mul(coeff))
    return QMatrix.from_cols(cols)


def _quaternionic_eigvectors(w: np.ndarray, v: np.ndarray, n: int) -> list[QVector]:
    """Select n H-orthonormal eigenvectors from the 2n complex eigenpairs of a
    Hermitian chi-structured matrix (each eigenvalue doubles; a complex
    eigenvector and its partner span one quaternionic line)."""
    accepted: list[QVector] = []
    drop_tol = 1e-6
    for k in range(v.shape[1]):
        if len(accepted) == n:
            break
        x = QVector.from_iota(v[:, k])
        for e in accepted:
            x = x - e.right_mul(e.inner(x))
        nrm = x.norm()
        if nrm > drop_tol:
            accepted.append(x.right_mul(1.0 / nrm))
    if len(accepted) != n:
        raise clinalg.NumericalFailure(
            f"could not extract {n} quaternionic eigenvectors (got {len(accepted)})"
        )
    return accepted


def _complete_onb(partial: list[QVector], n: int) -> list[QVector]:
    # the canonical vectors span H^n over H, so Gram-Schmidt against the
    # partial system always completes it
    out = list(partial)
    for k in range(n):
        if len(out) == n:
            break
        x = QVector.canonical(k, n)
        for e in out:
            x = x - e.right_mul(e.inner(x))
        nrm = x.norm()
        if nrm > 1e-8:
            out.append(x.right_mul(1.0 / nrm))
    if len(out) != n:
        raise clinalg.NumericalFailure("failed to complete orthonormal basis")
    return out


def qsvd(t: QMatrix) -> QSvd:
    """Singular value decomposition of T.

    The singular values and the right basis come from the spectral
    decomposition of |T| = sqrt(T*T); the left basis is T e_m / sigma_m
    on the cokernel and an orthonormal completion on the kernel, so both
    systems are orthonormal and Tx = sum left[m] sigmas[m] <right[m], x>.
    """
    p = abs_op(t)
    w, v = clinalg.herm_eig(p.chi())
    w = np.clip(w, 0.0, None)
    right = _quaternionic_eigvectors(w, v, t.n)
    sigmas = w[::2].copy()  # eigenvalues are doubled; take one per pair
    # guard: the pairing must be clean before halving the list
    if w.size:
        gap = np.abs(w[::2] - w[1::2]).max(initial=0.0)
        if gap > 1e-10 + 1e-12 * float(w.max(initial=0.0)):
            raise clinalg.NumericalFailure(
                f"chi eigenvalues of |T| failed to pair up (gap {gap:.3e})"
            )
    smax = float(sigmas[0]) if sigmas.size else 0.0
    cutoff = KERNEL_TOL * max(smax, 1e-300)
    left: list[QVector] = []
    for m, e in enumerate(right):
        s = float(sigmas[m])
        if s > cutoff:
            # T e = W |T| e = (W e) s; normalize to absorb rounding at small s
            left.append(t.apply(e).right_mul(1.0 / s).normalized())
        else:
            break
    left = _complete_onb(left, t.n)
    return QSvd(sigmas=sigmas, left=left, right=right)


def singular_values(t: QMatrix) -> np.ndarray:
    """Descending singular values of T (the eigenvalues of |T|)."""
    s = clinalg.svdvals(t.chi())
    gap = np.abs(s[::2] - s[1::2]).max(initial=0.0)
    if gap > 1e-10 + 1e-12 * float(s.max(initial=0.0)):
        raise clinalg.NumericalFailure(
            f"chi singular values failed to pair up (gap {gap:.3e})"
        )
    return s[::2].copy()


# -- random generators and orthonormalization ------------------------------


def gram_schmidt(vectors, drop_tol: float | None = None) -> list[QVector]:
    """Quaternionic Gram-Schmidt; vectors below drop_tol after projection are dropped."""
    out: list[QVector] = []
    for v in vectors:
        x = v
        for e in out:
            x = x - e.right_mul(e.inner(x))
        # second pass for numerical orthogonality
        for e in out:
            x = x - e.right_mul(e.inner(x))
        nrm = x.norm()
        if drop_tol is not None and nrm <= drop_tol:
            continue
        if nrm == 0.0:
            raise ValueError("dependent vector in Gram-Schmidt without drop_tol")
        out.append(x.right_mul(1.0 / nrm))
    return out


def random_qvector(rng: np.random.Generator, n: int, unit: bool = False) -> QVector:
    c1 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    c2 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    v = QVector(c1, c2)
    return v.normalized() if unit else v


def random_qmatrix(rng: np.random.Generator, n: int) -> QMatrix:
    """Entries are standard Gaussian quaternions."""
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    b = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return QMatrix(a, b)


def random_positive(rng: np.random.Generator, n: int) -> QMatrix:
    t = random_qmatrix(rng, n)
    return t.adjoint() @ t


def random_unitary(rng: np.random.Generator, n: int) -> QMatrix:
    w, _ = polar(random_qmatrix(rng, n))
    return w


def random_onb(rng: np.random.Generator, n: int) -> list[QVector]:
    """A Haar-ish random orthonormal basis of H^n."""
    return gram_schmidt([random_qvector(rng, n) for _ in range(n)])
