"""Truncated weighted Bergman spaces on the quaternionic unit ball.

The space is spanned by the monomials z^n, n <= N, orthonormalized
against the measure dA_{alpha,i} = (alpha+1)/pi (1-|z|^2)^alpha dm on
the disk slice D_i; the weights come from the radial moment integrals

    m_n = (alpha+1) * Integral_0^1 r^{2n} (1-r^2)^alpha 2r dr
        = (alpha+1) * B(n+1, alpha+1),          e_n(z) = z^n / sqrt(m_n).

Operators act on the truncated coefficient space as complex
(N+1) x (N+1) matrices; through the complex structure J f = ext(i f_i)
they are exactly the J-commuting operators of the quaternionic space,
and lifting a matrix is the trivial embedding (A Bmatrix, B = 0) over
the standard structure of H^{N+1}.

Two Berezin normalizations appear:

* ``truncated`` (the default): <k_z, T k_z> with the normalized kernel
  of the truncated space.  This is a faithful Berezin transform of the
  (N+1)-dimensional reproducing kernel space.
* ``embedded``: the transform of the same finite-rank operator viewed
  on the full (untruncated) Bergman space, i.e. <K_z, T K_z> / K(z,z)
  with the closed-form K(z,z) = (1-|z|^2)^{-(2+alpha)}.  This version
  decays like (1-|z|^2)^{2+alpha} at the boundary and is the one for
  which the trace-integral identity against the Moebius measure
  d mu = dm / (pi (1-|z|^2)^2) holds exactly; with the truncated
  normalization that integral diverges.

Quadrature over the disk is a tensor rule: Gauss-Jacobi in t = r^2 with
the weight (1-t)^alpha absorbed into the radial weights (so every
integrand appearing in the checks is integrated exactly; plain
Gauss-Legendre leaves ~2e-6 relative error for fractional alpha), and a
uniform trapezoid rule in the angle, spectrally exact for trigonometric
polynomials of degree below the angular count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.special import roots_jacobi

from . import clinalg
from .jstructure import standard_j
from .qmatrix import QMatrix
from .quaternion import (
    DEFAULT_UNIT,
    ONE,
    Quaternion,
    UnitImaginary,
    embed_complex,
    slice_decompose,
)
from .schatten import SchattenContext, schatten_norm

__all__ = [
    "BergmanSpace",
    "BergOperator",
    "BerezinSample",
    "bergman_kernel",
    "normalized_kernel_coeffs",
    "berezin",
    "projection_pz",
    "projection_norm_check",
    "trace_integral_check",
    "berezin_lp_check",
    "pseudo_hyperbolic",
    "bergman_metric",
    "lipschitz_check",
    "berezin_injectivity_check",
    "density_checks",
    "spiral_points",
]

GOLDEN_FRACTION = (math.sqrt(5.0) - 1.0) / 2.0


class BergmanSpace:
    """Truncation of the weighted Bergman space: degree N, weight alpha, unit i."""

    def __init__(
        self,
        alpha: float,
        degree: int,
        unit: UnitImaginary = DEFAULT_UNIT,
        quad: tuple[int, int] = (200, 256),
    ):
        if alpha <= -1:
            raise ValueError("weight exponent must satisfy alpha > -1")
        if degree < 0 or degree > 64:
            raise ValueError("truncation degree must lie in [0, 64]")
        self.alpha = float(alpha)
        self.degree = int(degree)
        self.unit = unit
        self.dim = self.degree + 1
        n = np.arange(self.dim)
        # 1 / m_n with m_n = (alpha+1) B(n+1, alpha+1), via log-gammas
        log_m = (
            math.log(self.alpha + 1.0)
            + np.array([math.lgamma(k + 1.0) for k in n])
            + math.lgamma(self.alpha + 1.0)
            - np.array([math.lgamma(k + self.alpha + 2.0) for k in n])
        )
        self.basis_weights = np.exp(-log_m)

        r_count, a_count = quad
        if r_count < 4 or a_count < 8:
            raise ValueError("quadrature resolution too small")
        self.quad = (int(r_count), int(a_count))
        x, w = roots_jacobi(r_count, self.alpha, 0.0)
        t = 0.5 * (x + 1.0)
        wt = w / 2.0 ** (self.alpha + 1.0)  # Int_0^1 g(t) (1-t)^alpha dt = sum wt g(t)
        theta = 2.0 * np.pi * np.arange(a_count) / a_count
        tt, th = np.meshgrid(t, theta, indexing="ij")
        self._t = tt.ravel()
        self.nodes = (np.sqrt(tt) * np.exp(1j * th)).ravel()
        base = np.repeat(wt, a_count) / a_count  # includes the (1-t)^alpha factor
        self.weights_dA = (self.alpha + 1.0) * base
        self.weights_dmu = base * (1.0 - self._t) ** (-self.alpha - 2.0)

    # -- basis -----------------------------------------------------------

    def raw_coeffs(self, z: complex) -> np.ndarray:
        """Coefficients of the kernel section K_z: u_n(z) = sqrt(w_n) conj(z)^n."""
        n = np.arange(self.dim)
        return np.sqrt(self.basis_weights) * np.conj(complex(z)) ** n

    def kernel_truncated(self, z: complex, w: complex) -> complex:
        """K^(N)(z, w) = sum_n w_n z^n conj(w)^n."""
        n = np.arange(self.dim)
        return complex(np.sum(self.basis_weights * complex(z) ** n * np.conj(complex(w)) ** n))

    def kernel_closed(self, z: complex, w: complex) -> complex:
        """The untruncated kernel (1 - z conj(w))^{-(2+alpha)} on the plane."""
        return (1.0 - complex(z) * np.conj(complex(w))) ** (-(2.0 + self.alpha))

    def eval_poly(self, coeffs: np.ndarray, z: complex) -> complex:
        """Value at z of the function with the given orthonormal-basis coefficients."""
        n = np.arange(self.dim)
        basis_vals = np.sqrt(self.basis_weights) * complex(z) ** n
        return complex(np.sum(np.asarray(coeffs, dtype=complex) * basis_vals))

    @cached_property
    def _node_coeffs(self) -> np.ndarray:
        """raw_coeffs evaluated at every quadrature node, shape (nodes, dim)."""
        n = np.arange(self.dim)
        return np.sqrt(self.basis_weights)[None, :] * np.conj(self.nodes)[:, None] ** n[None, :]

    @cached_property
    def _node_boundary_factor(self) -> np.ndarray:
        """(1 - |z|^2)^{2+alpha} at the quadrature nodes."""
        return (1.0 - self._t) ** (2.0 + self.alpha)

    def integrate_dA(self, values: np.ndarray) -> complex:
        return complex(np.sum(self.weights_dA * np.asarray(values)))

    def integrate_dmu(self, values: np.ndarray) -> complex:
        return complex(np.sum(self.weights_dmu * np.asarray(values)))

    def schatten_context(self) -> SchattenContext:
        return SchattenContext(standard_j(self.dim), p=1.0)

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"BergmanSpace(alpha={self.alpha}, degree={self.degree}, quad={self.quad})"


@dataclass
class BergOperator:
    """Operator on the truncated space, a complex matrix over the orthonormal basis."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("operator matrix must be square")
        self.matrix = m

    @staticmethod
    def identity(space: BergmanSpace) -> "BergOperator":
        return BergOperator(np.eye(space.dim, dtype=complex))

    @staticmethod
    def j_operator(space: BergmanSpace) -> "BergOperator":
        """The complex structure J f = ext(i f_i) acts as multiplication by i."""
        return BergOperator(1j * np.eye(space.dim, dtype=complex))

    def lift(self) -> QMatrix:
        """The J-commuting quaternionic operator the matrix represents (B block zero)."""
        return QMatrix(self.matrix)

    def opnorm(self) -> float:
        return clinalg.opnorm(self.matrix)

    def __add__(self, other: "BergOperator") -> "BergOperator":
        return BergOperator(self.matrix + other.matrix)

    def scale(self, c: complex) -> "BergOperator":
        return BergOperator(self.matrix * c)


@dataclass(frozen=True)
class BerezinSample:
    z: complex
    value: complex


def _opmat(op) -> np.ndarray:
    return op.matrix if isinstance(op, BergOperator) else np.asarray(op, dtype=complex)


def _check_in_disk(q: Quaternion | complex, name: str):
    mag = q.norm() if isinstance(q, Quaternion) else abs(q)
    if mag >= 1.0:
        raise ValueError(f"{name} must lie strictly inside the unit ball, |{name}| = {mag}")


def bergman_kernel(space: BergmanSpace, q: Quaternion, w: Quaternion) -> Quaternion:
    """The slice hyperholomorphic alpha-Bergman kernel K_alpha(q, w).

    With q_w = q0 + i_w q1 the representative of the sphere of q in the
    plane of w, the kernel is the representation-formula combination

        K = (1 - i_q i_w)/2 * (1 - q_w conj(w))^{-(2+alpha)}
          + (1 + i_q i_w)/2 * (1 - conj(q_w) conj(w))^{-(2+alpha)},

    with principal-branch powers evaluated in the plane of w.  On a
    common plane it collapses to (1 - z conj(w))^{-(2+alpha)}, and
    K(q, 0) = 1 for every q.
    """
    _check_in_disk(q, "q")
    _check_in_disk(w, "w")
    pq = slice_decompose(q)
    pw = slice_decompose(w)
    zq = complex(pq.x0, pq.x1)  # coordinates of q moved into the plane of w
    zw = complex(pw.x0, pw.x1)
    a1 = 1.0 - zq * np.conj(zw)
    a2 = 1.0 - np.conj(zq) * np.conj(zw)
    if a1.real <= 0.0 or a2.real <= 0.0:
        # cannot happen for |q|, |w| < 1; guards the principal branch
        raise ArithmeticError("kernel argument reached the branch cut")
    expo = -(2.0 + space.alpha)
    g1 = complex(a1) ** expo
    g2 = complex(a2) ** expo
    iq = pq.unit.as_quaternion()
    iw = pw.unit.as_quaternion()
    left = (ONE - iq * iw).scale(0.5)
    right = (ONE + iq * iw).scale(0.5)
    return left * embed_complex(g1, pw.unit) + right * embed_complex(g2, pw.unit)


def normalized_kernel_coeffs(space: BergmanSpace, z: complex) -> np.ndarray:
    """Coefficients of k_z = K_z / sqrt(K^(N)(z, z)) over the orthonormal basis."""
    _check_in_disk(complex(z), "z")
    u = space.raw_coeffs(z)
    nrm = np.linalg.norm(u)
    return u / nrm


def berezin(space: BergmanSpace, op, z: complex, normalization: str = "truncated") -> BerezinSample:
    """The Berezin transform sample T~(z) = <k_z, T k_z>.

    ``truncated`` uses the normalized kernel of the truncated space;
    ``embedded`` evaluates the transform of the operator embedded in the
    full Bergman space (see the module docstring), which decays like
    (1-|z|^2)^{2+alpha} towards the boundary.
    """
    _check_in_disk(complex(z), "z")
    m = _opmat(op)
    u = space.raw_coeffs(z)
    quad_form = complex(np.vdot(u, m @ u))
    if normalization == "truncated":
        value = quad_form / float(np.vdot(u, u).real)
    elif normalization == "embedded":
        value = quad_form * (1.0 - abs(complex(z)) ** 2) ** (2.0 + space.alpha)
    else:
        raise ValueError(f"unknown normalization {normalization!r}")
    return BerezinSample(z=complex(z), value=value)


def projection_pz(space: BergmanSpace, z: complex) -> BergOperator:
    """Rank-one projection P_z f = k_z <k_z, f>; positive with trace one."""
    c = normalized_kernel_coeffs(space, z)
    return BergOperator(np.outer(c, np.conj(c)))


def projection_norm_check(space: BergmanSpace, z: complex, w: complex, tol: float = 1e-9) -> dict:
    """Both norms of P_z - P_w against the closed forms

    ||P_z - P_w|| = (1 - |<k_w, k_z>|^2)^(1/2),  ||P_z - P_w||_1 = twice that,

    computed on the lifted quaternionic operators through the Schatten
    machinery rather than on the complex matrices.
    """
    pz = projection_pz(space, z)
    pw = projection_pz(space, w)
    diff = (pz.matrix - pw.matrix)
    lifted = QMatrix(diff)
    op = schatten_norm(lifted, math.inf)
    tr = schatten_norm(lifted, 1.0)
    overlap = complex(
        np.vdot(normalized_kernel_coeffs(space, w), normalized_kernel_coeffs(space, z))
    )
    expected = math.sqrt(max(0.0, 1.0 - abs(overlap) ** 2))
    return {
        "operator_norm": op,
        "trace_norm": tr,
        "expected_operator_norm": expected,
        "expected_trace_norm": 2.0 * expected,
        "overlap": overlap,
        "passed": abs(op - expected) <= tol and abs(tr - 2.0 * expected) <= tol,
    }


def _positive_trace_and_power(m: np.ndarray, p: float = 1.0) -> tuple[float, np.ndarray]:
    h = 0.5 * (m + m.conj().T)
    dev = clinalg.opnorm(m - h)
    scale = max(1.0, clinalg.opnorm(m))
    if dev > 1e-10 * scale:
        raise ValueError("operator is not selfadjoint")
    wvals, v = np.linalg.eigh(h)
    if wvals.min(initial=0.0) < -1e-10 * scale:
        raise ValueError(f"operator is not positive (min eigenvalue {wvals.min():.3e})")
    wvals = np.clip(wvals, 0.0, None)
    return float(np.sum(wvals)), (v * wvals**p) @ v.conj().T


def trace_integral_check(space: BergmanSpace, op, rtol: float = 1e-6) -> dict:
    """Singular value sum of a positive operator against the Moebius-measure integral:

        sum_n lambda_n = (alpha+1) * Integral_{D_i} T~(z) d mu_i(z),

    with T~ the Berezin transform of the operator embedded in the full
    space.  For operators supported on the truncation the identity is an
    exact polynomial quadrature; the report carries both sides.
    """
    m = _opmat(op)
    lhs, _ = _positive_trace_and_power(m)
    u = space._node_coeffs
    quad_forms = np.real(np.einsum("kn,nm,km->k", np.conj(u), m, u, optimize=True))
    integrand = quad_forms * space._node_boundary_factor
    rhs = (space.alpha + 1.0) * float(np.real(space.integrate_dmu(integrand)))
    denom = max(abs(lhs), 1e-300)
    error = abs(lhs - rhs) / denom
    return {
        "lhs": lhs,
        "rhs": rhs,
        "relative_error": error,
        "passed": error <= rtol,
    }


def berezin_lp_check(space: BergmanSpace, op, p: float, tol: float = 1e-6) -> dict:
    """For positive T and p >= 1: Integral (T~)^p d mu <= Tr(T^p) / (alpha+1).

    The pointwise bound (T~)^p <= (T^p)~ integrates to the trace of T^p
    by the trace-integral identity.
    """
    if p < 1:
        raise ValueError("the integrability bound needs p >= 1")
    m = _opmat(op)
    _, mp = _positive_trace_and_power(m, p)
    tr_p = float(np.real(np.trace(mp)))
    u = space._node_coeffs
    quad_forms = np.real(np.einsum("kn,nm,km->k", np.conj(u), m, u, optimize=True))
    tilde = np.clip(quad_forms * space._node_boundary_factor, 0.0, None)
    integral = float(np.real(space.integrate_dmu(tilde**p)))
    bound = tr_p / (space.alpha + 1.0)
    return {
        "integral": integral,
        "bound": bound,
        "passed": integral <= bound + tol,
    }


def pseudo_hyperbolic(z: complex, w: complex) -> float:
    """rho(z, w) = |z - w| / |1 - z conj(w)|, in [0, 1) on the disk."""
    z, w = complex(z), complex(w)
    _check_in_disk(z, "z")
    _check_in_disk(w, "w")
    return abs(z - w) / abs(1.0 - z * np.conj(w))


def bergman_metric(z: complex, w: complex) -> float:
    """beta(z, w) = log((1 + rho)/(1 - rho)) / 2; always >= rho."""
    rho = pseudo_hyperbolic(z, w)
    return 0.5 * math.log((1.0 + rho) / (1.0 - rho))


def lipschitz_check(space: BergmanSpace, op, z: complex, w: complex, tol: float = 1e-9) -> dict:
    """Both Lipschitz bounds on the Berezin transform with constant 2 sqrt(2+alpha):

        |T~(z) - T~(w)| <= 2 sqrt(2+alpha) ||T|| rho(z, w)
        |T~(z) - T~(w)| <= 2 sqrt(2+alpha) ||T|| beta(z, w).
    """
    m = _opmat(op)
    tz = berezin(space, m, z).value
    tw = berezin(space, m, w).value
    lhs = abs(tz - tw)
    c = 2.0 * math.sqrt(2.0 + space.alpha) * clinalg.opnorm(m)
    rho_bound = c * pseudo_hyperbolic(z, w)
    beta_bound = c * bergman_metric(z, w)
    return {
        "lhs": lhs,
        "rho_bound": rho_bound,
        "beta_bound": beta_bound,
        "slack_rho": rho_bound - lhs,
        "slack_beta": beta_bound - lhs,
        "passed": (rho_bound - lhs >= -tol) and (beta_bound - lhs >= -tol),
    }


def spiral_points(count: int, radius: float = 0.95) -> np.ndarray:
    """Low-discrepancy golden-angle spiral r_k = radius sqrt(k/count)."""
    k = np.arange(1, count + 1)
    r = radius * np.sqrt(k / count)
    theta = 2.0 * np.pi * GOLDEN_FRACTION * k
    return r * np.exp(1j * theta)


def berezin_injectivity_check(
    space: BergmanSpace, op, num_samples: int | None = None, rtol: float = 1e-6
) -> dict:
    """Recover the operator matrix from Berezin samples; zero transform means zero operator.

    The scaled samples T~(z_k) K^(N)(z_k, z_k) are linear in the matrix
    entries with design rows conj(u_m(z_k)) u_n(z_k); a well-spread
    spiral keeps the system overdetermined and well conditioned.  The
    report carries the recovery error and the condition estimate.
    """
    m = _opmat(op)
    d = space.dim
    count = num_samples if num_samples is not None else d * d + 20
    if count < d * d:
        raise ValueError(f"need at least {d * d} samples to determine the operator")
    zs = spiral_points(count)
    n = np.arange(d)
    u = np.sqrt(space.basis_weights)[None, :] * np.conj(zs)[:, None] ** n[None, :]
    # row k of the design: outer(conj(u_k), u_k) flattened to match m.ravel()
    design = np.einsum("km,kn->kmn", np.conj(u), u).reshape(count, d * d)
    samples = np.einsum("km,mn,kn->k", np.conj(u), m, u)
    sv = clinalg.svdvals(design)
    cond = float(sv[0] / sv[-1]) if sv[-1] > 0 else math.inf
    if cond > 1e12:
        raise ValueError(f"sample geometry is ill conditioned (cond = {cond:.3e})")
    solution, *_ = np.linalg.lstsq(design, samples, rcond=None)
    recovered = solution.reshape(d, d)
    scale = max(float(np.linalg.norm(m)), 1e-300)
    error = float(np.linalg.norm(recovered - m)) / scale if np.linalg.norm(m) > 0 else float(
        np.linalg.norm(recovered)
    )
    zero_transform = bool(np.max(np.abs(samples), initial=0.0) <= 1e-12)
    return {
        "relative_error": error,
        "condition": cond,
        "recovered": recovered,
        "zero_transform": zero_transform,
        "recovered_norm": float(clinalg.opnorm(recovered)),
        "passed": error <= rtol,
    }


def density_checks(space: BergmanSpace, points: np.ndarray | None = None) -> dict:
    """Kernel sections at N+1 distinct points span the truncated space.

    The coefficient matrix with columns u(z_k) has full rank exactly when
    the points are distinct (Vandermonde structure); sigma_min is
    reported, and any function orthogonal to all sampled kernels has
    norm at most residual / sigma_min, hence vanishes.
    """
    d = space.dim
    if points is None:
        radii = 0.15 + 0.7 * np.arange(d) / max(d - 1, 1)
        points = radii * np.exp(0.3j)
    points = np.asarray(points, dtype=complex).reshape(-1)
    cols = np.stack([space.raw_coeffs(z) for z in points], axis=1)
    sv = clinalg.svdvals(cols)
    smin = float(sv[-1]) if sv.size else 0.0
    smax = float(sv[0]) if sv.size else 0.0
    rank = int(np.sum(sv > max(smax, 1.0) * 1e-12))
    full = rank == min(cols.shape)
    return {
        "num_points": int(points.size),
        "sigma_min": smin,
        "rank": rank,
        "full_rank": full,
        "orthogonal_norm_bound": 0.0 if full and points.size >= d else math.inf,
        "passed": full if points.size >= d else True,
    }
