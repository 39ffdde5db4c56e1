import math

import numpy as np
import pytest

from qslab.quaternion import (
    E1,
    E2,
    E3,
    ONE,
    Quaternion,
    UnitImaginary,
    embed_complex,
    random_quaternions,
    slice_decompose,
)
from qslab.slicefn import (
    LeftSlicePoly,
    RightSlicePoly,
    SliceSamples,
    cr_residual_left,
    cr_residual_right,
    ext_left,
    is_intrinsic,
    poly_product,
    recombine,
    representation_formula,
    split,
    split_quaternion,
)

UI = UnitImaginary((1.0, 0.0, 0.0))
UJ = UnitImaginary((0.0, 1.0, 0.0))


def rand_poly(rng, deg):
    return LeftSlicePoly([Quaternion.from_array(v) for v in random_quaternions(rng, deg + 1)])


def test_eval_fixed_cases():
    assert LeftSlicePoly([ONE]).eval(Quaternion(9, 1, 2, 3)).is_close(ONE)
    f = LeftSlicePoly([Quaternion(), E2])  # f(x) = x e2
    assert f.eval(E1).is_close(E3)
    g = RightSlicePoly([Quaternion(), E2])  # g(x) = e2 x
    assert g(E1).is_close(E2 * E1)
    assert not f.eval(E1).is_close(E2 * E1)  # coefficient side matters


def test_eval_right_linearity(rng):
    f, g = rand_poly(rng, 5), rand_poly(rng, 4)
    a = Quaternion(0.3, 0.7, -0.2, 0.5)
    for _ in range(20):
        q = Quaternion.from_array(random_quaternions(rng, ()))
        lhs = (f.right_scale(a) + g).eval(q)
        rhs = f.eval(q) * a + g.eval(q)
        assert (lhs - rhs).norm() <= 1e-11 * max(1.0, rhs.norm())


def test_eval_matches_complex_polynomial(rng):
    coeffs = rng.standard_normal(7)
    f = LeftSlicePoly([Quaternion.from_real(float(c)) for c in coeffs])
    z = complex(0.37, -0.82)
    got = f.eval(embed_complex(z, UI))
    ref = complex(np.polyval(coeffs[::-1], z))
    assert (got - embed_complex(ref, UI)).norm() <= 1e-13


def test_eval_satisfies_cauchy_riemann(rng):
    for n in range(1, 5):
        mono = LeftSlicePoly([Quaternion()] * n + [Quaternion.from_array(random_quaternions(rng, ()))])
        q = Quaternion(0.4, 0.5, -0.3, 0.2)
        assert cr_residual_left(mono.eval, q) <= 1e-6


class TestRepresentationFormula:
    def test_in_plane_returns_first_value(self):
        target = embed_complex(complex(0.3, 0.8), UI)
        got = representation_formula(Quaternion(1, 2, 3, 4), Quaternion(9, 9, 9, 9), UI, target)
        assert got.is_close(Quaternion(1, 2, 3, 4), 1e-14)

    def test_real_target(self):
        v = Quaternion(0.5, -1, 2, 0.25)
        got = representation_formula(v, v, UI, Quaternion.from_real(0.7))
        assert got.is_close(v, 1e-14)

    def test_square_polynomial_off_plane(self, rng):
        f = LeftSlicePoly([Quaternion(), Quaternion(), ONE])  # x^2
        for _ in range(20):
            q = Quaternion.from_array(random_quaternions(rng, ()))
            pt = slice_decompose(q)
            xi = embed_complex(complex(pt.x0, pt.x1), UI)
            got = representation_formula(f.eval(xi), f.eval(xi.conj()), UI, pt)
            assert (got - f.eval(q)).norm() <= 1e-11 * max(1.0, f.eval(q).norm())

    def test_idempotence(self, rng):
        # values already produced by the formula reproduce themselves
        f = rand_poly(rng, 6)
        q = Quaternion.from_array(random_quaternions(rng, ()))
        pt = slice_decompose(q)
        xi = embed_complex(complex(pt.x0, pt.x1), UI)
        v_plane = representation_formula(f.eval(xi), f.eval(xi.conj()), UI, slice_decompose(xi))
        assert (v_plane - f.eval(xi)).norm() <= 1e-12 * max(1.0, f.eval(xi).norm())
        first = representation_formula(f.eval(xi), f.eval(xi.conj()), UI, pt)
        again = representation_formula(f.eval(xi), f.eval(xi.conj()), UI, pt)
        assert (first - again).norm() == 0.0


def test_split_quaternion_components():
    z1, z2 = split_quaternion(Quaternion(1, 2, 3, 4), UI, UJ)
    assert z1 == complex(1, 2) and z2 == complex(3, 4)
    with pytest.raises(ValueError):
        split_quaternion(ONE, UI, UI)


def test_split_and_recombine(rng):
    f = rand_poly(rng, 6)
    f1, f2 = split(f, UI, UJ)
    back = recombine(f1, f2, UI, UJ)
    assert all((a - b).norm() == 0.0 for a, b in zip(back.coeffs, f.coeffs))
    # pointwise on the plane: f = f1 + f2 j
    for _ in range(30):
        z = complex(rng.standard_normal(), rng.standard_normal())
        lhs = f.eval(embed_complex(z, UI))
        v1 = complex(np.polyval(f1[::-1], z))
        v2 = complex(np.polyval(f2[::-1], z))
        rhs = embed_complex(v1, UI) + embed_complex(v2, UI) * UJ.as_quaternion()
        assert (lhs - rhs).norm() <= 1e-12 * max(1.0, lhs.norm())


def test_split_special_cases():
    f1, f2 = split(LeftSlicePoly([E2]), UI, UJ)
    assert f1[0] == 0 and f2[0] == 1.0
    f1, f2 = split(LeftSlicePoly([ONE, Quaternion.from_real(-2.0)]), UI, UJ)
    assert np.abs(f2).max() == 0.0


class TestDerivative:
    def test_fixed(self):
        sq = LeftSlicePoly([Quaternion(), Quaternion(), ONE])
        d = sq.derivative()
        assert d.degree == 1 and d.coeffs[1].is_close(Quaternion.from_real(2.0))
        assert LeftSlicePoly([E1]).derivative().coeffs[0].norm() == 0.0

    def test_matches_x0_finite_difference(self, rng):
        h = 1e-5
        for _ in range(20):
            f = rand_poly(rng, 6)
            df = f.derivative()
            q = Quaternion.from_array(random_quaternions(rng, ())).scale(0.5)
            fd = (f.eval(q + Quaternion.from_real(h)) - f.eval(q - Quaternion.from_real(h))).scale(
                0.5 / h
            )
            assert (fd - df.eval(q)).norm() <= 1e-6 * max(1.0, df.eval(q).norm())

    def test_taylor_series_at_real_center(self, rng):
        f = rand_poly(rng, 5)
        alpha = 0.3
        terms = []
        d = f
        fact = 1.0
        for n in range(f.degree + 1):
            if n:
                d = d.derivative()
                fact *= n
            terms.append(d.eval(Quaternion.from_real(alpha)).scale(1.0 / fact))
        q = Quaternion.from_array(random_quaternions(rng, ())).scale(0.7)
        shift = q - Quaternion.from_real(alpha)
        acc, power = Quaternion(), ONE
        for c in terms:
            acc = acc + power * c
            power = power * shift
        assert (acc - f.eval(q)).norm() <= 1e-10 * max(1.0, f.eval(q).norm())


class TestExtension:
    def grid(self):
        xs = np.linspace(-0.9, 0.9, 7)
        ys = np.linspace(-0.8, 0.8, 9)
        return np.array([complex(a, b) for a in xs for b in ys])

    def test_constant(self):
        nodes = self.grid()
        ev = ext_left(SliceSamples(UI, nodes, [Quaternion(2, 0, 1, 0)] * nodes.size))
        assert ev(Quaternion(0.3, 0, 0, 0.4)).is_close(Quaternion(2, 0, 1, 0), 1e-14)

    def test_bz_extends_to_xb(self):
        nodes = self.grid()
        bc = complex(0.3, 1.4)
        b = embed_complex(bc, UI)
        vals = [embed_complex(bc * complex(z), UI) for z in nodes]
        ev = ext_left(SliceSamples(UI, nodes, vals))
        q = Quaternion(0.3, 0.0, 0.4, 0.0)  # slice coords (0.3, 0.4) are grid nodes
        assert (ev(q) - q * b).norm() <= 1e-13
        assert (ev(q) - b * q).norm() > 1e-2  # not the right multiplication

    def test_polynomial_matches_off_plane(self, rng):
        nodes = self.grid()
        f = rand_poly(rng, 4)
        vals = [f.eval(embed_complex(complex(z), UI)) for z in nodes]
        ev = ext_left(SliceSamples(UI, nodes, vals))
        q = Quaternion(-0.6, 0.0, 0.0, 0.6)
        assert (ev(q) - f.eval(q)).norm() <= 1e-11 * max(1.0, f.eval(q).norm())

    def test_grid_must_be_symmetric(self):
        with pytest.raises(ValueError):
            SliceSamples(UI, np.array([0.1 + 0.2j]), [ONE])

    def test_off_grid_point_rejected(self):
        nodes = self.grid()
        ev = ext_left(SliceSamples(UI, nodes, [ONE] * nodes.size))
        with pytest.raises(KeyError):
            ev(Quaternion(0.123, 0.456, 0, 0))


def test_intrinsic_detection_and_products(rng):
    assert is_intrinsic(LeftSlicePoly([Quaternion.from_real(-3.0), Quaternion(), ONE]))
    assert not is_intrinsic(LeftSlicePoly([Quaternion(), E1]))
    fr = LeftSlicePoly([Quaternion.from_real(float(c)) for c in rng.standard_normal(4)])
    g = rand_poly(rng, 3)
    prod = poly_product(fr, g)
    for _ in range(10):
        q = Quaternion.from_array(random_quaternions(rng, ())).scale(0.6)
        assert (prod.eval(q) - fr.eval(q) * g.eval(q)).norm() <= 1e-10
        if slice_decompose(q).x1 > 1e-3:
            assert cr_residual_left(prod.eval, q) <= 1e-6
    with pytest.raises(ValueError):
        poly_product(g, fr)  # left factor must be intrinsic


def test_right_slice_cr(rng):
    f = RightSlicePoly([Quaternion.from_array(v) for v in random_quaternions(rng, 4)])
    q = Quaternion(0.3, 0.2, 0.5, -0.1)
    assert cr_residual_right(f, q) <= 1e-6
