import numpy as np
import pytest

from qslab import clinalg
from qslab.qmatrix import QMatrix, opnorm, random_qmatrix
from qslab.quaternion import E1, ONE, Quaternion, UnitImaginary
from qslab.sspectrum import (
    ResolventAtSpectrumError,
    classify_spectrum,
    in_s_spectrum,
    q_pencil,
    s_resolvent_left,
    s_resolvent_right,
    s_spectrum,
)


def test_pencil_fixed_cases():
    t = random_qmatrix(np.random.default_rng(0), 3)
    assert opnorm(q_pencil(t, Quaternion()) - t @ t) == 0.0
    s = Quaternion(1.0, 1.0, 1.0, 1.0)  # |s|^2 = 4
    z = QMatrix.zeros(2)
    assert opnorm(q_pencil(z, s) - QMatrix.identity(2).scale(4.0)) == 0.0
    # Q depends on s only through (Re s, |s|)
    t = random_qmatrix(np.random.default_rng(1), 4)
    s2 = Quaternion(1.0, -1.0, 1.0, -1.0)
    assert opnorm(q_pencil(t, s) - q_pencil(t, s2)) == 0.0


def test_diag_e1_has_sphere_spectrum(rng):
    t = QMatrix.diag_left(E1, 1)
    assert opnorm(q_pencil(t, E1)) <= 1e-15  # -I - 0 + I = 0 exactly
    spec = s_spectrum(t)
    assert spec.values.shape == (1,)
    assert abs(spec.values[0] - 1j) <= 1e-14
    for _ in range(16):
        u = UnitImaginary.from_vector(rng.standard_normal(3))
        assert in_s_spectrum(t, u.as_quaternion())
    assert spec.contains(Quaternion(0, 0, 1, 0))
    assert not spec.contains(ONE)


def test_zero_operator():
    spec = s_spectrum(QMatrix.zeros(3))
    assert spec.values.shape == (1,)
    assert abs(spec.values[0]) <= 1e-14
    assert spec.multiplicities[0] == 3
    assert not in_s_spectrum(QMatrix.zeros(3), ONE)


def test_spectrum_membership_and_radius(rng):
    for _ in range(20):
        n = int(rng.integers(1, 9))
        t = random_qmatrix(rng, n)
        spec = s_spectrum(t)  # validates the pencil criterion internally
        assert spec.values.size >= 1
        assert spec.spectral_radius() <= opnorm(t) + 1e-8
        assert spec.total_multiplicity() == n
        bound = 1e-8 * (1.0 + opnorm(t) ** 2)
        for v in spec.values:
            s = Quaternion(v.real, v.imag, 0, 0)
            smin = clinalg.svdvals(q_pencil(t, s).chi())[-1]
            assert smin <= bound
            # axial symmetry via the independent membership probe
            for _ in range(4):
                u = UnitImaginary.from_vector(rng.standard_normal(3))
                probe = Quaternion.from_real(v.real) + u.as_quaternion().scale(v.imag)
                assert in_s_spectrum(t, probe)


def test_chi_eigenvalues_pair_up(rng):
    for _ in range(20):
        t = random_qmatrix(rng, int(rng.integers(1, 9)))
        eigs = np.linalg.eigvals(t.chi())
        folded = np.sort_complex(eigs.real + 1j * np.abs(eigs.imag))
        scale = max(1.0, float(np.abs(eigs).max()))
        assert np.abs(folded[::2] - folded[1::2]).max() <= 1e-10 * scale


class TestResolvents:
    def test_resolvent_of_zero_operator(self):
        s = Quaternion(0.7, 0.4, -0.2, 0.1)
        expected = QMatrix.diag_left(s.inverse(), 3)
        assert opnorm(s_resolvent_left(QMatrix.zeros(3), s) - expected) <= 1e-13
        assert opnorm(s_resolvent_right(QMatrix.zeros(3), s) - expected) <= 1e-13

    def test_left_resolvent_identity(self, rng):
        for _ in range(10):
            n = int(rng.integers(1, 7))
            t = random_qmatrix(rng, n)
            s = Quaternion(0.5, 0.5, 0.5, 0.5).scale(2.0 + opnorm(t))
            sl = s_resolvent_left(t, s)
            ls = QMatrix.diag_left(s, n)
            residual = sl @ ls - t @ sl - QMatrix.identity(n)
            assert opnorm(residual) <= 1e-9 * max(1.0, opnorm(sl) * s.norm())

    def test_real_operator_resolvents_coincide(self, rng):
        t = QMatrix(rng.standard_normal((4, 4)).astype(complex))
        s = Quaternion(0.2, 0.9, 0.1, -0.3).scale(2.0 + opnorm(t))
        assert opnorm(s_resolvent_left(t, s) - s_resolvent_right(t, s)) <= 1e-11 * opnorm(t)

    def test_rejected_at_spectrum(self):
        with pytest.raises(ResolventAtSpectrumError) as err:
            s_resolvent_left(QMatrix.diag_left(E1, 1), E1)
        assert err.value.sigma_min <= 1e-12


def test_classification(rng):
    for _ in range(10):
        n = int(rng.integers(1, 7))
        t = random_qmatrix(rng, n)
        cls = classify_spectrum(t)
        assert cls.residual == [] and cls.continuous == []
        assert len(cls.eigenvectors) == cls.point.values.size
        for v, x in zip(cls.point.values, cls.eigenvectors):
            s = Quaternion(v.real, v.imag, 0, 0)
            assert q_pencil(t, s).apply(x).norm() <= 1e-8 * (1 + opnorm(t) ** 2)
            lam = Quaternion(v.real, v.imag, 0.0, 0.0)
            assert (t.apply(x) - x.right_mul(lam)).norm() <= 1e-9 * (1 + opnorm(t))
