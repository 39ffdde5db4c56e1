"""Slice hyperholomorphic polynomials: evaluation, extension, splitting.

Power series sum_n x^n a_n with quaternionic coefficients on the right
are left slice hyperholomorphic; the mirrored form sum_n a_n x^n is
right slice hyperholomorphic.  Polynomials make every structural
statement exactly computable:

* values on one complex plane determine the function everywhere through
  the representation formula,
* restriction to a plane C_i splits into two holomorphic components
  f_i = f1 + f2 j for any j orthogonal to i,
* the slice derivative is the coefficient shift n a_n -> position n-1
  and coincides with d/dx0,
* the function is intrinsic exactly when all coefficients are real, and
  multiplication by an intrinsic factor preserves slice regularity.

``cr_residual_left`` / ``cr_residual_right`` provide the independent
finite-difference check that a callable satisfies the slicewise
Cauchy-Riemann system (step 1e-5, central differences).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .quaternion import (
    ONE,
    Quaternion,
    SlicePoint,
    UnitImaginary,
    embed_complex,
    perp_unit,
    slice_decompose,
)

__all__ = [
    "LeftSlicePoly",
    "RightSlicePoly",
    "SliceSamples",
    "representation_formula",
    "split",
    "split_quaternion",
    "ext_left",
    "is_intrinsic",
    "cr_residual_left",
    "cr_residual_right",
]

FD_STEP = 1e-5  # central-difference step; O(h^2) truncation dominates rounding

MAX_DEGREE = 64


class LeftSlicePoly:
    """Polynomial f(x) = sum_n x^n a_n with quaternionic coefficients a_n."""

    def __init__(self, coeffs):
        coeffs = [c if isinstance(c, Quaternion) else Quaternion.from_real(c) for c in coeffs]
        if not coeffs:
            coeffs = [Quaternion()]
        if len(coeffs) - 1 > MAX_DEGREE:
            raise ValueError(f"degree above {MAX_DEGREE} is not supported")
        self.coeffs = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, q: Quaternion) -> Quaternion:
        return self.eval(q)

    def eval(self, q: Quaternion) -> Quaternion:
        """Horner evaluation of sum x^n a_n (powers multiply from the left)."""
        acc = self.coeffs[-1]
        for a in reversed(self.coeffs[:-1]):
            acc = q * acc + a
        return acc

    def derivative(self) -> "LeftSlicePoly":
        """Slice derivative: n a_n moves to position n - 1."""
        if self.degree == 0:
            return LeftSlicePoly([Quaternion()])
        return LeftSlicePoly(
            [self.coeffs[n].scale(float(n)) for n in range(1, len(self.coeffs))]
        )

    def right_scale(self, a: Quaternion) -> "LeftSlicePoly":
        """The polynomial f(x) a (still left slice hyperholomorphic)."""
        return LeftSlicePoly([c * a for c in self.coeffs])

    def __add__(self, other: "LeftSlicePoly") -> "LeftSlicePoly":
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for k in range(n):
            c = Quaternion()
            if k < len(self.coeffs):
                c = c + self.coeffs[k]
            if k < len(other.coeffs):
                c = c + other.coeffs[k]
            out.append(c)
        return LeftSlicePoly(out)

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"LeftSlicePoly(degree={self.degree})"


class RightSlicePoly:
    """Polynomial f(x) = sum_n a_n x^n, right slice hyperholomorphic."""

    def __init__(self, coeffs):
        coeffs = [c if isinstance(c, Quaternion) else Quaternion.from_real(c) for c in coeffs]
        if not coeffs:
            coeffs = [Quaternion()]
        if len(coeffs) - 1 > MAX_DEGREE:
            raise ValueError(f"degree above {MAX_DEGREE} is not supported")
        self.coeffs = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, q: Quaternion) -> Quaternion:
        acc = self.coeffs[-1]
        for a in reversed(self.coeffs[:-1]):
            acc = acc * q + a
        return acc

    def derivative(self) -> "RightSlicePoly":
        if self.degree == 0:
            return RightSlicePoly([Quaternion()])
        return RightSlicePoly(
            [self.coeffs[n].scale(float(n)) for n in range(1, len(self.coeffs))]
        )


def representation_formula(
    f_at_xi: Quaternion,
    f_at_xbar: Quaternion,
    unit: UnitImaginary,
    target: SlicePoint | Quaternion,
) -> Quaternion:
    """Recover f(x) from the values on one plane:

        f(x) = (1 - i_x i)/2 * f(x_i) + (1 + i_x i)/2 * f(conj(x_i)),

    where x = x0 + i_x x1 and x_i = x0 + i x1 lies in the plane of the
    supplied values.
    """
    pt = target if isinstance(target, SlicePoint) else slice_decompose(target)
    ix = pt.unit.as_quaternion()
    i = unit.as_quaternion()
    half = 0.5
    left = (ONE - ix * i).scale(half)
    right = (ONE + ix * i).scale(half)
    return left * f_at_xi + right * f_at_xbar


def split_quaternion(q: Quaternion, i: UnitImaginary, j: UnitImaginary) -> tuple[complex, complex]:
    """Components (z1, z2) of q = z1 + z2 j over C_i + C_i j; needs i perpendicular to j."""
    if abs(i.dot(j)) > 1e-12:
        raise ValueError("units i and j must be orthogonal")
    iv, jv = i.as_vector(), j.as_vector()
    kv = np.cross(iv, jv)  # k = i j for orthogonal pure units
    imag = q.im()
    z1 = complex(q.re(), float(np.dot(imag, iv)))
    z2 = complex(float(np.dot(imag, jv)), float(np.dot(imag, kv)))
    return z1, z2


def split(f: LeftSlicePoly, i: UnitImaginary, j: UnitImaginary) -> tuple[np.ndarray, np.ndarray]:
    """Splitting of the restriction f_i = f1 + f2 j into complex coefficient lists."""
    pairs = [split_quaternion(a, i, j) for a in f.coeffs]
    f1 = np.array([p[0] for p in pairs], dtype=complex)
    f2 = np.array([p[1] for p in pairs], dtype=complex)
    return f1, f2


def recombine(f1: np.ndarray, f2: np.ndarray, i: UnitImaginary, j: UnitImaginary) -> LeftSlicePoly:
    """Inverse of :func:`split`."""
    if abs(i.dot(j)) > 1e-12:
        raise ValueError("units i and j must be orthogonal")
    coeffs = []
    jq = j.as_quaternion()
    for a, b in zip(np.atleast_1d(f1), np.atleast_1d(f2)):
        coeffs.append(embed_complex(complex(a), i) + embed_complex(complex(b), i) * jq)
    return LeftSlicePoly(coeffs)


def is_intrinsic(f: LeftSlicePoly, tol: float = 1e-12) -> bool:
    """True when alpha and beta are real-valued, i.e. all coefficients are real."""
    return all(float(np.linalg.norm(a.im())) <= tol for a in f.coeffs)


@dataclass
class SliceSamples:
    """Values of a function on a grid in one plane C_i, symmetric about the real axis."""

    unit: UnitImaginary
    nodes: np.ndarray  # complex grid points z = x0 + 1j x1
    values: list[Quaternion]

    def __post_init__(self):
        self.nodes = np.asarray(self.nodes, dtype=complex).reshape(-1)
        if len(self.values) != self.nodes.size:
            raise ValueError("one value per node required")
        # grid symmetry: the conjugate of every node must be a node
        for z in self.nodes:
            if np.abs(self.nodes - np.conj(z)).min() > 1e-12:
                raise ValueError(f"grid is not symmetric about the real axis (missing {np.conj(z)})")

    def value_at(self, z: complex) -> Quaternion:
        k = int(np.argmin(np.abs(self.nodes - z)))
        if abs(self.nodes[k] - z) > 1e-12:
            raise KeyError(f"{z} is not a grid node")
        return self.values[k]


class ExtensionEvaluator:
    """Left slice hyperholomorphic extension of plane samples via the representation formula."""

    def __init__(self, samples: SliceSamples):
        self.samples = samples

    def __call__(self, q: Quaternion) -> Quaternion:
        pt = slice_decompose(q)
        z = complex(pt.x0, pt.x1)
        f_xi = self.samples.value_at(z)
        f_xbar = self.samples.value_at(np.conj(z))
        return representation_formula(f_xi, f_xbar, self.samples.unit, pt)


def ext_left(samples: SliceSamples) -> ExtensionEvaluator:
    """Unique left slice hyperholomorphic extension, evaluable on the spheres of the grid."""
    return ExtensionEvaluator(samples)


# ----------------------------------------------------------------------
# finite-difference Cauchy-Riemann residuals
# ----------------------------------------------------------------------


def _slice_eval(fn, x0: float, x1: float, unit: UnitImaginary) -> Quaternion:
    return fn(embed_complex(complex(x0, x1), unit))


def cr_residual_left(fn, q: Quaternion, h: float = FD_STEP) -> float:
    """| d/dx0 f + i_x d/dx1 f | / 2 at q, along the slice of q (i_x acts from the left)."""
    pt = slice_decompose(q)
    if pt.x1 < 2 * h:
        raise ValueError("point too close to the real axis for the slice stencil")
    u = pt.unit
    d0 = (_slice_eval(fn, pt.x0 + h, pt.x1, u) - _slice_eval(fn, pt.x0 - h, pt.x1, u)).scale(
        0.5 / h
    )
    d1 = (_slice_eval(fn, pt.x0, pt.x1 + h, u) - _slice_eval(fn, pt.x0, pt.x1 - h, u)).scale(
        0.5 / h
    )
    return ((d0 + u.as_quaternion() * d1).scale(0.5)).norm()


def cr_residual_right(fn, q: Quaternion, h: float = FD_STEP) -> float:
    """| d/dx0 f + (d/dx1 f) i_x | / 2 at q (i_x acts from the right)."""
    pt = slice_decompose(q)
    if pt.x1 < 2 * h:
        raise ValueError("point too close to the real axis for the slice stencil")
    u = pt.unit
    d0 = (_slice_eval(fn, pt.x0 + h, pt.x1, u) - _slice_eval(fn, pt.x0 - h, pt.x1, u)).scale(
        0.5 / h
    )
    d1 = (_slice_eval(fn, pt.x0, pt.x1 + h, u) - _slice_eval(fn, pt.x0, pt.x1 - h, u)).scale(
        0.5 / h
    )
    return ((d0 + d1 * u.as_quaternion()).scale(0.5)).norm()


def poly_product(f: LeftSlicePoly, g: LeftSlicePoly) -> LeftSlicePoly:
    """Coefficientwise (pointwise-on-slices) product f * g for intrinsic f.

    For intrinsic f the pointwise product of the functions is again left
    slice hyperholomorphic and equals the polynomial with coefficients
    c_n = sum_k a_k b_{n-k}; the coefficients a_k of f are real, so the
    order of factors in each term is immaterial.
    """
    if not is_intrinsic(f, tol=1e-12):
        raise ValueError("pointwise products need an intrinsic left factor")
    out = [Quaternion() for _ in range(f.degree + g.degree + 1)]
    for k, a in enumerate(f.coeffs):
        for m, b in enumerate(g.coeffs):
            out[k + m] = out[k + m] + a * b
    return LeftSlicePoly(out)
