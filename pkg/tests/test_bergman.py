import math

import numpy as np
import pytest
from scipy.integrate import quad

from qslab import bergman as bg
from qslab.jstructure import commutes_with_j, standard_j
from qslab.qmatrix import QMatrix
from qslab.quaternion import ONE, Quaternion, UnitImaginary, embed_complex, slice_decompose
from qslab.schatten import SchattenContext, ji_trace
from qslab.slicefn import cr_residual_left, cr_residual_right, representation_formula

UI = UnitImaginary((1.0, 0.0, 0.0))


def disk_point(rng, radius=0.8):
    r = radius * math.sqrt(rng.uniform())
    th = rng.uniform(0, 2 * math.pi)
    return complex(r * math.cos(th), r * math.sin(th))


def kernel_ops_space(alpha=0.0, degree=12, quad_res=(32, 32)):
    return bg.BergmanSpace(alpha, degree, quad=quad_res)


class TestSpaceConstruction:
    def test_weights_match_independent_quadrature(self):
        # m_n = (alpha+1) Int_0^1 r^{2n} (1-r^2)^alpha 2r dr, by adaptive quadrature
        for alpha in (0.0, 0.5, 1.7):
            space = bg.BergmanSpace(alpha, 6, quad=(16, 16))
            for n in range(space.dim):
                m_n, _ = quad(lambda r: (alpha + 1) * r ** (2 * n) * (1 - r**2) ** alpha * 2 * r, 0, 1)
                assert abs(space.basis_weights[n] * m_n - 1.0) <= 1e-9

    def test_quadrature_orthonormality(self):
        space = bg.BergmanSpace(1.0, 10, quad=(64, 64))
        n = np.arange(space.dim)
        vals = np.sqrt(space.basis_weights)[None, :] * space.nodes[:, None] ** n[None, :]
        gram = np.einsum("km,kn,k->mn", np.conj(vals), vals, space.weights_dA)
        assert np.abs(gram - np.eye(space.dim)).max() <= 1e-10

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            bg.BergmanSpace(-1.0, 4)
        with pytest.raises(ValueError):
            bg.BergmanSpace(0.0, 100)
        with pytest.raises(ValueError):
            bg.BergmanSpace(0.0, 4, quad=(2, 2))


class TestKernel:
    def test_value_at_zero_is_one_exactly(self, rng):
        space = kernel_ops_space(0.7)
        for _ in range(20):
            v = rng.standard_normal(4)
            q = Quaternion.from_array(v / np.linalg.norm(v)).scale(0.9 * rng.uniform())
            assert (bg.bergman_kernel(space, q, Quaternion()) - ONE).norm() == 0.0

    def test_in_plane_equals_complex_kernel(self, rng):
        for alpha in (0.0, 0.5, 2.0):
            space = kernel_ops_space(alpha)
            for _ in range(30):
                z, w = disk_point(rng), disk_point(rng)
                got = bg.bergman_kernel(space, embed_complex(z, UI), embed_complex(w, UI))
                ref = (1 - z * np.conj(w)) ** (-(2 + alpha))
                assert (got - embed_complex(complex(ref), UI)).norm() <= 1e-12

    def test_hermitian_symmetry_on_plane(self, rng):
        space = kernel_ops_space(1.0)
        for _ in range(20):
            z, w = disk_point(rng), disk_point(rng)
            kzw = bg.bergman_kernel(space, embed_complex(z, UI), embed_complex(w, UI))
            kwz = bg.bergman_kernel(space, embed_complex(w, UI), embed_complex(z, UI))
            assert (kzw - kwz.conj()).norm() <= 1e-12

    def test_off_plane_matches_representation_formula(self, rng):
        space = kernel_ops_space(0.5)
        for _ in range(30):
            v = rng.standard_normal(4)
            q = Quaternion.from_array(v / np.linalg.norm(v)).scale(0.75 * rng.uniform() ** 0.5)
            w = Quaternion.from_array(rng.standard_normal(4))
            w = w.scale(0.6 / max(w.norm(), 1e-9) * rng.uniform() ** 0.5)
            pt = slice_decompose(q)
            xi = embed_complex(complex(pt.x0, pt.x1), UI)
            rec = representation_formula(
                bg.bergman_kernel(space, xi, w),
                bg.bergman_kernel(space, xi.conj(), w),
                UI,
                pt,
            )
            direct = bg.bergman_kernel(space, q, w)
            assert (rec - direct).norm() <= 1e-10 * max(1.0, direct.norm())

    def test_slice_regularity_by_finite_differences(self):
        space = kernel_ops_space(0.5)
        w0 = Quaternion(0.2, 0.1, -0.3, 0.05)
        q0 = Quaternion(0.1, -0.2, 0.15, 0.3)
        assert cr_residual_left(lambda q: bg.bergman_kernel(space, q, w0), q0) <= 1e-6
        assert cr_residual_right(lambda v: bg.bergman_kernel(space, q0, v.conj()), w0) <= 1e-6

    def test_boundary_rejected(self):
        space = kernel_ops_space()
        with pytest.raises(ValueError):
            bg.bergman_kernel(space, Quaternion.from_real(1.0), Quaternion())
        with pytest.raises(ValueError):
            bg.normalized_kernel_coeffs(space, 1.0 + 0.0j)


class TestNormalizedKernels:
    def test_unit_norm_and_reproducing(self, rng):
        space = bg.BergmanSpace(0.5, 16, quad=(16, 16))
        for _ in range(20):
            z = disk_point(rng, 0.9)
            c = bg.normalized_kernel_coeffs(space, z)
            assert abs(np.linalg.norm(c) - 1.0) <= 1e-12
            # truncated reproducing property: <K_z, f> = f(z) exactly for deg <= N
            coeffs = rng.standard_normal(space.dim) + 1j * rng.standard_normal(space.dim)
            u = space.raw_coeffs(z)
            assert abs(np.vdot(u, coeffs) - space.eval_poly(coeffs, z)) <= 1e-12 * max(
                1.0, abs(space.eval_poly(coeffs, z))
            )

    def test_k0_is_first_basis_vector(self):
        space = bg.BergmanSpace(0.0, 8, quad=(16, 16))
        c0 = bg.normalized_kernel_coeffs(space, 0.0)
        expected = np.zeros(space.dim)
        expected[0] = 1.0
        assert np.abs(c0 - expected).max() == 0.0

    def test_overlap_matches_closed_form_at_degree_64(self, rng):
        space = bg.BergmanSpace(0.0, 64, quad=(16, 16))
        for _ in range(20):
            z, w = disk_point(rng), disk_point(rng)
            overlap = np.vdot(
                bg.normalized_kernel_coeffs(space, w), bg.normalized_kernel_coeffs(space, z)
            )
            closed = space.kernel_closed(w, z) / math.sqrt(
                abs(space.kernel_closed(z, z)) * abs(space.kernel_closed(w, w))
            )
            assert abs(overlap - closed) <= 1e-8


class TestBerezin:
    def test_identity_and_j(self, rng):
        space = kernel_ops_space(1.0)
        jop = bg.BergOperator.j_operator(space)
        for _ in range(10):
            z = disk_point(rng)
            assert abs(bg.berezin(space, bg.BergOperator.identity(space), z).value - 1.0) <= 1e-13
            assert abs(bg.berezin(space, jop, z).value - 1j) <= 1e-13

    def test_selfadjoint_positive_conjugate_contractive(self, rng):
        space = kernel_ops_space(0.0)
        d = space.dim
        for _ in range(20):
            g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            z = disk_point(rng)
            assert abs(bg.berezin(space, g + g.conj().T, z).value.imag) <= 1e-12
            assert bg.berezin(space, g.conj().T @ g, z).value.real >= -1e-12
            assert abs(
                bg.berezin(space, g.conj().T, z).value - np.conj(bg.berezin(space, g, z).value)
            ) <= 1e-12
            assert abs(bg.berezin(space, g, z).value) <= np.linalg.norm(g, 2) + 1e-10

    def test_projection_transform_closed_form(self, rng):
        for alpha in (0.0, 1.0):
            space = kernel_ops_space(alpha)
            p0 = bg.projection_pz(space, 0.0)
            for _ in range(10):
                z = disk_point(rng)
                expected = (1 - abs(z) ** 2) ** (2 + alpha)
                emb = bg.berezin(space, p0, z, normalization="embedded").value
                assert abs(emb - expected) <= 1e-13
        # truncated normalization converges to the same value as the degree grows
        fat = bg.BergmanSpace(0.0, 64, quad=(16, 16))
        p0 = bg.projection_pz(fat, 0.0)
        z = 0.5 + 0.3j
        assert abs(bg.berezin(fat, p0, z).value - (1 - abs(z) ** 2) ** 2) <= 1e-8

    def test_unknown_normalization(self):
        space = kernel_ops_space()
        with pytest.raises(ValueError):
            bg.berezin(space, bg.BergOperator.identity(space), 0.1, normalization="bogus")


class TestProjections:
    def test_structure(self, rng):
        space = kernel_ops_space(0.5)
        st = standard_j(space.dim)
        for _ in range(10):
            z = disk_point(rng)
            p = bg.projection_pz(space, z)
            assert abs(np.trace(p.matrix) - 1.0) <= 1e-12
            assert np.abs(p.matrix @ p.matrix - p.matrix).max() <= 1e-12
            assert np.linalg.matrix_rank(p.matrix, tol=1e-10) == 1
            assert commutes_with_j(p.lift(), st)

    def test_trace_pairing_with_berezin(self, rng):
        space = kernel_ops_space(0.0, degree=8)
        st = standard_j(space.dim)
        ctx = SchattenContext(st, 1.0)
        for _ in range(10):
            z = disk_point(rng)
            p = bg.projection_pz(space, z)
            g = rng.standard_normal((space.dim, space.dim)) + 1j * rng.standard_normal(
                (space.dim, space.dim)
            )
            t = bg.BergOperator(g)
            lhs = bg.berezin(space, t, z).value
            rhs = ji_trace(t.lift() @ p.lift(), ctx).value
            assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs))

    def test_p0_matrix(self):
        space = kernel_ops_space()
        p0 = bg.projection_pz(space, 0.0)
        expected = np.zeros((space.dim, space.dim), complex)
        expected[0, 0] = 1.0
        assert np.abs(p0.matrix - expected).max() == 0.0


class TestProjectionNorms:
    def test_worked_example(self):
        # z = 0, w = 1/2, alpha = 0: |<k_w, k_0>|^2 = (1 - 1/4)^2 = 0.5625
        space = bg.BergmanSpace(0.0, 32, quad=(16, 16))
        rep = bg.projection_norm_check(space, 0.0, 0.5)
        assert abs(abs(rep["overlap"]) ** 2 - 0.5625) <= 1e-12
        assert abs(rep["operator_norm"] - math.sqrt(0.4375)) <= 1e-12
        assert abs(rep["trace_norm"] - 2 * math.sqrt(0.4375)) <= 1e-12

    def test_zero_distance(self):
        space = kernel_ops_space()
        rep = bg.projection_norm_check(space, 0.3 + 0.2j, 0.3 + 0.2j)
        assert rep["operator_norm"] <= 1e-12 and rep["trace_norm"] <= 1e-12

    def test_random_pairs(self, rng):
        space = bg.BergmanSpace(0.0, 24, quad=(16, 16))
        for _ in range(30):
            rep = bg.projection_norm_check(space, disk_point(rng), disk_point(rng))
            assert rep["passed"], rep


class TestTraceIntegral:
    def test_rank_one_projection_is_exact(self):
        # (alpha+1) Int (1-|z|^2)^{2+alpha} d mu = (alpha+1) Int_0^1 (1-r^2)^alpha 2r dr = 1
        for alpha in (0.0, 0.5, 1.0, 2.0):
            space = bg.BergmanSpace(alpha, 24, quad=(200, 256))
            rep = bg.trace_integral_check(space, bg.projection_pz(space, 0.0).matrix)
            assert abs(rep["rhs"] - 1.0) <= 1e-10
            assert rep["relative_error"] <= 1e-10

    def test_rank_three_combinations(self, rng):
        for alpha in (0.0, 0.5, 1.0, 2.0):
            space = bg.BergmanSpace(alpha, 24, quad=(200, 256))
            m = np.zeros((space.dim, space.dim), complex)
            for _ in range(3):
                m += rng.uniform(0.2, 2.0) * bg.projection_pz(space, disk_point(rng)).matrix
            rep = bg.trace_integral_check(space, m)
            assert rep["relative_error"] <= 1e-6, (alpha, rep)

    def test_scaling_linearity(self, rng):
        space = bg.BergmanSpace(1.0, 16, quad=(200, 256))
        pz = bg.projection_pz(space, disk_point(rng)).matrix
        rep = bg.trace_integral_check(space, 2.5 * pz)
        assert abs(rep["lhs"] - 2.5) <= 1e-12
        assert rep["relative_error"] <= 1e-10

    def test_nonpositive_rejected(self):
        space = bg.BergmanSpace(0.0, 8, quad=(32, 32))
        with pytest.raises(ValueError):
            bg.trace_integral_check(space, -np.eye(space.dim))


class TestLpBound:
    def test_bound_and_p1_reduction(self, rng):
        space = bg.BergmanSpace(1.0, 12, quad=(200, 256))
        m = np.zeros((space.dim, space.dim), complex)
        for _ in range(3):
            m += rng.uniform(0.2, 2.0) * bg.projection_pz(space, disk_point(rng)).matrix
        for p in (1.0, 2.0, 3.0):
            rep = bg.berezin_lp_check(space, m, p)
            assert rep["passed"], rep
        rep1 = bg.berezin_lp_check(space, m, 1.0)
        tr = bg.trace_integral_check(space, m)
        assert abs(rep1["integral"] - tr["rhs"] / (space.alpha + 1)) <= 1e-9
        with pytest.raises(ValueError):
            bg.berezin_lp_check(space, m, 0.5)


class TestMetrics:
    def test_fixed_values(self):
        assert bg.pseudo_hyperbolic(0.4j, 0.4j) == 0.0
        assert bg.bergman_metric(0.4j, 0.4j) == 0.0
        w = 0.37 - 0.11j
        assert abs(bg.pseudo_hyperbolic(0.0, w) - abs(w)) <= 1e-15
        assert abs(bg.pseudo_hyperbolic(0.5, -0.5) - 0.8) <= 1e-15
        assert abs(bg.bergman_metric(0.5, -0.5) - 0.5 * math.log(9.0)) <= 1e-15

    def test_ranges(self, rng):
        for _ in range(100):
            z, w = disk_point(rng, 0.97), disk_point(rng, 0.97)
            rho = bg.pseudo_hyperbolic(z, w)
            assert 0.0 <= rho < 1.0
            assert bg.bergman_metric(z, w) >= rho - 1e-14


def test_lipschitz_bounds(rng):
    for alpha in (0.0, 1.0, 2.0):
        space = bg.BergmanSpace(alpha, 12, quad=(16, 16))
        d = space.dim
        for _ in range(100):
            g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            rep = bg.lipschitz_check(space, g, disk_point(rng, 0.95), disk_point(rng, 0.95))
            assert rep["passed"], rep
    # z = w and T = I give zero on both sides
    space = bg.BergmanSpace(0.0, 8, quad=(16, 16))
    rep = bg.lipschitz_check(space, np.eye(space.dim), 0.3, 0.3)
    assert rep["lhs"] <= 1e-15


class TestInjectivity:
    def test_random_operator_recovery(self, rng):
        space = bg.BergmanSpace(0.0, 8, quad=(16, 16))
        d = space.dim
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        rep = bg.berezin_injectivity_check(space, g, num_samples=d * d + 20)
        assert rep["relative_error"] <= 1e-6
        assert rep["condition"] < 1e8

    def test_projection_recovery(self, rng):
        space = bg.BergmanSpace(0.0, 8, quad=(16, 16))
        rep = bg.berezin_injectivity_check(space, bg.projection_pz(space, 0.3).matrix)
        assert rep["relative_error"] <= 1e-6

    def test_zero_transform_means_zero_operator(self):
        space = bg.BergmanSpace(0.0, 8, quad=(16, 16))
        rep = bg.berezin_injectivity_check(space, np.zeros((space.dim, space.dim)))
        assert rep["zero_transform"] and rep["recovered_norm"] <= 1e-6

    def test_insufficient_samples_rejected(self):
        space = bg.BergmanSpace(0.0, 4, quad=(16, 16))
        with pytest.raises(ValueError):
            bg.berezin_injectivity_check(space, np.eye(space.dim), num_samples=3)


class TestDensity:
    def test_default_points_full_rank(self):
        space = bg.BergmanSpace(0.5, 4, quad=(16, 16))
        rep = bg.density_checks(space)
        assert rep["full_rank"] and rep["sigma_min"] > 0
        assert rep["orthogonal_norm_bound"] == 0.0

    def test_single_point_degree_zero(self):
        space = bg.BergmanSpace(0.0, 0, quad=(16, 16))
        rep = bg.density_checks(space, points=np.array([0.4 + 0.1j]))
        assert rep["rank"] == 1

    def test_duplicate_point_detected(self):
        space = bg.BergmanSpace(0.5, 4, quad=(16, 16))
        pts = np.array([0.2, 0.4, 0.4, 0.6, 0.8], dtype=complex)
        rep = bg.density_checks(space, points=pts)
        assert not rep["full_rank"]


def test_truncation_error_decreases_geometrically():
    alpha = 0.5
    r = 0.7
    sups = []
    for deg in (8, 16, 24, 32):
        space = bg.BergmanSpace(alpha, deg, quad=(16, 16))
        worst = 0.0
        for z in (r, r * np.exp(1j), r * np.exp(2.2j)):
            for w in (0.5, 0.5j, -0.3 - 0.3j):
                worst = max(
                    worst, abs(space.kernel_truncated(z, w) - space.kernel_closed(z, w))
                )
        sups.append(worst)
    assert all(sups[i + 1] < sups[i] * 0.2 for i in range(len(sups) - 1))
    # lifting a berg operator gives a J-commuting quaternionic operator
    space = bg.BergmanSpace(alpha, 6, quad=(16, 16))
    op = bg.BergOperator.identity(space)
    assert isinstance(op.lift(), QMatrix)
