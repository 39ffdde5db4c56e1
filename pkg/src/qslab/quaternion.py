"""Quaternion arithmetic, slice coordinates and 2-sphere geometry.

A quaternion is written q = w + x*e1 + y*e2 + z*e3 with the standard
multiplication table

    e1*e1 = e2*e2 = e3*e3 = -1,
    e1*e2 = e3,   e2*e3 = e1,   e3*e1 = e2,

and anticommuting distinct units.  Every non-real q lies in exactly one
complex plane C_i = R + i*R for the unit imaginary i = Im(q)/|Im(q)|, so
q = x0 + i*x1 with x0 = Re(q) and x1 = |Im(q)| >= 0.  The 2-sphere of q is
[q] = {x0 + i*x1 : i unit imaginary}; two quaternions lie on the same
sphere exactly when one is a unit conjugate q^{-1} x q of the other.

Scalar values are exposed through the immutable :class:`Quaternion`;
bulk randomized checks use the vectorized helpers (``qmul``, ``qconj``,
``qnorm``) which operate on float arrays of shape (..., 4).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Quaternion",
    "UnitImaginary",
    "SlicePoint",
    "ZERO",
    "ONE",
    "E1",
    "E2",
    "E3",
    "DEFAULT_UNIT",
    "slice_decompose",
    "same_sphere",
    "perp_unit",
    "complex_coords",
    "embed_complex",
    "qmul",
    "qconj",
    "qnorm",
    "qinv",
    "random_quaternions",
]


@dataclass(frozen=True)
class Quaternion:
    """Element of the quaternions H, components over the basis (1, e1, e2, e3)."""

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_real(t: float) -> "Quaternion":
        return Quaternion(float(t), 0.0, 0.0, 0.0)

    @staticmethod
    def from_complex_pair(a: complex, b: complex) -> "Quaternion":
        """Build q = a + b*e2 for a, b in the plane C_{e1} (so q = a1 + a2*e1 + b1*e2 + b2*e3)."""
        a, b = complex(a), complex(b)
        return Quaternion(a.real, a.imag, b.real, b.imag)

    @staticmethod
    def from_array(v) -> "Quaternion":
        w, x, y, z = (float(c) for c in v)
        return Quaternion(w, x, y, z)

    # -- components ---------------------------------------------------

    def re(self) -> float:
        return self.w

    def im(self) -> np.ndarray:
        """Imaginary part as the 3-vector of (e1, e2, e3) components."""
        return np.array([self.x, self.y, self.z])

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    def complex_pair(self) -> tuple[complex, complex]:
        """Split q = a + b*e2 with a, b in C_{e1}."""
        return complex(self.w, self.x), complex(self.y, self.z)

    # -- algebra ------------------------------------------------------

    def __add__(self, other: "Quaternion") -> "Quaternion":
        o = _as_quat(other)
        return Quaternion(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)

    __radd__ = __add__

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        o = _as_quat(other)
        return Quaternion(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)

    def __rsub__(self, other) -> "Quaternion":
        return _as_quat(other).__sub__(self)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other) -> "Quaternion":
        o = _as_quat(other)
        a, b, c, d = self.w, self.x, self.y, self.z
        p, q, r, s = o.w, o.x, o.y, o.z
        return Quaternion(
            a * p - b * q - c * r - d * s,
            a * q + b * p + c * s - d * r,
            a * r - b * s + c * p + d * q,
            a * s + b * r - c * q + d * p,
        )

    def __rmul__(self, other) -> "Quaternion":
        return _as_quat(other).__mul__(self)

    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm_sq(self) -> float:
        return self.w**2 + self.x**2 + self.y**2 + self.z**2

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    def inverse(self) -> "Quaternion":
        n2 = self.norm_sq()
        if n2 == 0.0:
            raise ZeroDivisionError("inverse of the zero quaternion")
        return Quaternion(self.w / n2, -self.x / n2, -self.y / n2, -self.z / n2)

    def scale(self, t: float) -> "Quaternion":
        return Quaternion(self.w * t, self.x * t, self.y * t, self.z * t)

    def is_close(self, other: "Quaternion", tol: float = 1e-12) -> bool:
        return (self - _as_quat(other)).norm() <= tol

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"Quaternion({self.w:+.6g} {self.x:+.6g}e1 {self.y:+.6g}e2 {self.z:+.6g}e3)"


def _as_quat(v) -> Quaternion:
    if isinstance(v, Quaternion):
        return v
    if isinstance(v, (int, float)):
        return Quaternion.from_real(v)
    raise TypeError(f"cannot interpret {v!r} as a quaternion")


ZERO = Quaternion()
ONE = Quaternion(1.0)
E1 = Quaternion(0.0, 1.0, 0.0, 0.0)
E2 = Quaternion(0.0, 0.0, 1.0, 0.0)
E3 = Quaternion(0.0, 0.0, 0.0, 1.0)


@dataclass(frozen=True)
class UnitImaginary:
    """A point of the unit sphere S of imaginary quaternions; squares to -1."""

    direction: tuple[float, float, float]

    def __post_init__(self):
        d = np.asarray(self.direction, dtype=float)
        if d.shape != (3,):
            raise ValueError("unit imaginary needs a 3-vector direction")
        n = float(np.linalg.norm(d))
        if abs(n - 1.0) > 1e-12:
            raise ValueError(f"direction must have unit length, got |d| = {n}")
        object.__setattr__(self, "direction", (float(d[0]), float(d[1]), float(d[2])))

    @staticmethod
    def from_vector(v) -> "UnitImaginary":
        d = np.asarray(v, dtype=float)
        n = float(np.linalg.norm(d))
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return UnitImaginary(tuple(d / n))

    @staticmethod
    def from_quaternion(q: Quaternion) -> "UnitImaginary":
        if abs(q.re()) > 1e-12:
            raise ValueError("unit imaginary must have zero real part")
        return UnitImaginary.from_vector(q.im())

    def as_quaternion(self) -> Quaternion:
        d = self.direction
        return Quaternion(0.0, d[0], d[1], d[2])

    def as_vector(self) -> np.ndarray:
        return np.asarray(self.direction)

    def dot(self, other: "UnitImaginary") -> float:
        return float(np.dot(self.as_vector(), other.as_vector()))


DEFAULT_UNIT = UnitImaginary((1.0, 0.0, 0.0))  # e1; fixed choice for real points

UNIT_E1 = DEFAULT_UNIT
UNIT_E2 = UnitImaginary((0.0, 1.0, 0.0))
UNIT_E3 = UnitImaginary((0.0, 0.0, 1.0))


@dataclass(frozen=True)
class SlicePoint:
    """Coordinates q = x0 + unit * x1 of a quaternion inside its complex plane."""

    x0: float
    x1: float
    unit: UnitImaginary

    def __post_init__(self):
        if self.x1 < 0.0:
            raise ValueError("slice coordinate x1 must be nonnegative")

    def to_quaternion(self) -> Quaternion:
        return Quaternion.from_real(self.x0) + self.unit.as_quaternion().scale(self.x1)

    def conjugate_point(self) -> Quaternion:
        """The plane-conjugate x0 - unit*x1."""
        return Quaternion.from_real(self.x0) - self.unit.as_quaternion().scale(self.x1)

    def as_complex(self) -> complex:
        """Coordinates in C_unit, identified with C."""
        return complex(self.x0, self.x1)


def slice_decompose(q: Quaternion, real_tol: float = 0.0) -> SlicePoint:
    """Write q = x0 + i_q x1 with x1 = |Im q| >= 0.

    Real points carry no canonical plane; they are assigned the fixed
    default unit e1 so downstream constructions are reproducible.
    """
    imag = q.im()
    x1 = float(np.linalg.norm(imag))
    if x1 <= real_tol:
        return SlicePoint(q.re(), 0.0, DEFAULT_UNIT)
    return SlicePoint(q.re(), x1, UnitImaginary(tuple(imag / x1)))


def perp_unit(i: UnitImaginary) -> UnitImaginary:
    """A deterministic unit imaginary orthogonal to i."""
    d = i.as_vector()
    axis = int(np.argmin(np.abs(d)))
    e = np.zeros(3)
    e[axis] = 1.0
    v = e - d * d[axis]
    return UnitImaginary.from_vector(v)


def complex_coords(q: Quaternion, unit: UnitImaginary) -> tuple[complex, float]:
    """Coordinates of q in the plane C_unit plus the out-of-plane residual.

    Returns (x0 + 1j*x1, |component of Im q orthogonal to unit|); the
    residual is 0 exactly when q lies in C_unit.  Unlike slice
    coordinates, x1 here may be negative.
    """
    d = unit.as_vector()
    imag = q.im()
    x1 = float(np.dot(imag, d))
    residual = float(np.linalg.norm(imag - x1 * d))
    return complex(q.re(), x1), residual


def embed_complex(z: complex, unit: UnitImaginary) -> Quaternion:
    """The quaternion Re(z) + unit * Im(z)."""
    return Quaternion.from_real(z.real) + unit.as_quaternion().scale(z.imag)


def same_sphere(
    x: Quaternion, y: Quaternion, tol: float = 1e-10
) -> tuple[bool, Quaternion | None]:
    """Decide y in [x], returning a unit witness q with y = q^{-1} x q on success.

    Membership is tested on the invariants (Re, |Im|) with absolute
    tolerance ``tol``.
    """
    if abs(x.re() - y.re()) > tol:
        return False, None
    nx, ny = float(np.linalg.norm(x.im())), float(np.linalg.norm(y.im()))
    if abs(nx - ny) > tol:
        return False, None
    if nx <= tol:
        # both essentially real
        return True, ONE
    u = x.im() / nx
    v = y.im() / ny
    # rotation p with p u p^{-1} = v; then y = q^{-1} x q for q = conj(p)
    c = float(np.dot(u, v))
    axis = np.cross(u, v)
    s = float(np.linalg.norm(axis))
    if s <= 1e-15:
        if c > 0.0:
            return True, ONE
        # antipodal: rotate by pi about any axis orthogonal to u
        a = perp_unit(UnitImaginary.from_vector(u)).as_vector()
        p = Quaternion(0.0, a[0], a[1], a[2])
    else:
        angle = math.atan2(s, c)
        a = axis / s
        h = 0.5 * angle
        p = Quaternion(math.cos(h), *(math.sin(h) * a))
    return True, p.conj()


# ----------------------------------------------------------------------
# vectorized helpers over float arrays of shape (..., 4)
# ----------------------------------------------------------------------


def qmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Componentwise quaternion product of (..., 4) arrays."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    aw, ax, ay, az = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    bw, bx, by, bz = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack(
        [
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ],
        axis=-1,
    )


def qconj(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    out = a.copy()
    out[..., 1:] *= -1.0
    return out


def qnorm(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    return np.sqrt(np.sum(a * a, axis=-1))


def qinv(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    n2 = np.sum(a * a, axis=-1, keepdims=True)
    if np.any(n2 == 0.0):
        raise ZeroDivisionError("inverse of a zero quaternion in the batch")
    return qconj(a) / n2


def random_quaternions(rng: np.random.Generator, shape, unit: bool = False) -> np.ndarray:
    """Standard Gaussian quaternions of the given batch shape, optionally normalized."""
    if isinstance(shape, int):
        shape = (shape,)
    q = rng.standard_normal(tuple(shape) + (4,))
    if unit:
        q = q / qnorm(q)[..., None]
    return q
