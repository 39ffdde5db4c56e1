"""Verification suites: every closed-form identity the package implements,
executed as seeded checks that emit :class:`CheckRecord` rows.

Each check owns an independent Philox stream derived from (seed, check
id), so results do not depend on execution order; the registry is the
single implementation shared by the command line driver and the
acceptance tests.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Callable

import numpy as np

from . import bergman as bg
from . import clinalg, qmatrix as qm, sspectrum as ssp
from .jstructure import ComplexStructure, commutes_with_j, lift_ji, res_ji, standard_j
from .quaternion import (
    E1,
    E2,
    E3,
    ONE,
    Quaternion,
    UnitImaginary,
    embed_complex,
    qconj,
    qmul,
    qnorm,
    random_quaternions,
    same_sphere,
    slice_decompose,
)
from .report import CheckRecord, SuiteConfig, check_rng, inputs_digest
from .schatten import (
    SchattenContext,
    characterization_suite,
    dual_norm,
    hoelder_check,
    ideal_check,
    ji_trace,
    schatten_norm,
    trace_basis_sweep,
    trace_unit_change,
)
from .slicefn import (
    LeftSlicePoly,
    SliceSamples,
    cr_residual_left,
    cr_residual_right,
    ext_left,
    is_intrinsic,
    poly_product,
    representation_formula,
    split,
    recombine,
)

CheckFn = Callable[[SuiteConfig, np.random.Generator], tuple[dict, float | None, bool]]


@dataclass(frozen=True)
class Check:
    check_id: str
    law: str
    fn: CheckFn


def _unit_imaginary(rng) -> UnitImaginary:
    return UnitImaginary.from_vector(rng.standard_normal(3))


def _rand_disk(rng, radius: float = 0.8) -> complex:
    r = radius * math.sqrt(rng.uniform())
    th = rng.uniform(0.0, 2.0 * math.pi)
    return complex(r * math.cos(th), r * math.sin(th))


def _rand_ball(rng, radius: float = 0.8) -> Quaternion:
    """A random quaternion with |q| strictly below the given radius."""
    v = random_quaternions(rng, (), unit=True)
    return _quat_from_array(v).scale(radius * float(rng.uniform()) ** 0.25)


def _quat_from_array(v) -> Quaternion:
    return Quaternion.from_array(v)


# ======================================================================
# quat suite
# ======================================================================


def chk_quat_algebra(cfg, rng):
    count = 100_000
    a = random_quaternions(rng, count, unit=True)
    b = random_quaternions(rng, count, unit=True)
    c = random_quaternions(rng, count, unit=True)
    assoc = float(qnorm(qmul(qmul(a, b), c) - qmul(a, qmul(b, c))).max())
    norm_mult = float(np.abs(qnorm(qmul(a, b)) - qnorm(a) * qnorm(b)).max())
    conj_anti = float(qnorm(qconj(qmul(a, b)) - qmul(qconj(b), qconj(a))).max())
    small = random_quaternions(rng, count)
    small = small / np.maximum(qnorm(small)[..., None], 1.0)  # confine to |q| <= 1
    cc = qmul(qconj(small), small)
    cc[..., 0] -= qnorm(small) ** 2
    conj_self = float(qnorm(cc).max())
    bound = 1e-13 * cfg.tol_scale
    worst = max(assoc, norm_mult, conj_anti, conj_self)
    return (
        {
            "triples": count,
            "associativity": assoc,
            "norm_multiplicativity": norm_mult,
            "conj_antihomomorphism": conj_anti,
            "conj_self_product": conj_self,
        },
        bound,
        worst <= bound,
    )


def chk_quat_mul_table(cfg, rng):
    checks = [
        (E1 * E2 - E3).norm(),
        (E2 * E3 - E1).norm(),
        (E3 * E1 - E2).norm(),
        (E1 * E1 + ONE).norm(),
        (E2 * E2 + ONE).norm(),
        (E3 * E3 + ONE).norm(),
        (E1 * E2 + E2 * E1).norm(),
        (Quaternion(1, 2, 3, 4) * ONE - Quaternion(1, 2, 3, 4)).norm(),
        (Quaternion.from_real(2.0).inverse() - Quaternion.from_real(0.5)).norm(),
        (E1.conj() + E1).norm(),
        ((E1 * E2).conj() - E2.conj() * E1.conj()).norm(),
    ]
    worst = max(checks)
    return {"worst": worst}, 0.0, worst == 0.0


def chk_quat_slice(cfg, rng):
    worst = 0.0
    for _ in range(200):
        q = _quat_from_array(random_quaternions(rng, ()))
        pt = slice_decompose(q)
        worst = max(worst, (pt.to_quaternion() - q).norm())
        if pt.x1 < 0:
            return {"worst": math.inf}, 1e-13, False
    # fixed cases
    pt = slice_decompose(Quaternion(1, 2, 0, 0))
    case1 = abs(pt.x0 - 1) + abs(pt.x1 - 2) + np.linalg.norm(pt.unit.as_vector() - [1, 0, 0])
    pt = slice_decompose(Quaternion.from_real(-3.0))
    case2 = abs(pt.x0 + 3) + abs(pt.x1) + np.linalg.norm(pt.unit.as_vector() - [1, 0, 0])
    pt = slice_decompose(E2 - E3)
    case3 = abs(pt.x0) + abs(pt.x1 - math.sqrt(2.0)) + np.linalg.norm(
        pt.unit.as_vector() - np.array([0.0, 1.0, -1.0]) / math.sqrt(2.0)
    )
    worst = max(worst, float(case1), float(case2), float(case3))
    bound = 1e-13 * cfg.tol_scale
    return {"worst": worst}, bound, worst <= bound


def chk_quat_sphere(cfg, rng):
    tol = 1e-10
    worst_witness = 0.0
    for _ in range(200):
        x = _quat_from_array(random_quaternions(rng, ()))
        u = _unit_imaginary(rng).as_quaternion()
        pt = slice_decompose(x)
        y = Quaternion.from_real(pt.x0) + u.scale(pt.x1)
        ok, q = same_sphere(x, y, tol)
        if not ok or q is None:
            return {"fail": "witness missing"}, tol, False
        resid = (q.inverse() * x * q - y).norm() + abs(q.norm() - 1.0)
        worst_witness = max(worst_witness, resid)
    ok12, w12 = same_sphere(E1, E2)
    e12 = (w12.inverse() * E1 * w12 - E2).norm() if ok12 else math.inf
    ok_neg, _ = same_sphere(ONE + E1, Quaternion.from_real(2.0) + E1)
    okself, wself = same_sphere(E3, E3)
    # equivalence relation on sampled points of one sphere
    sym_trans = 0.0
    for _ in range(50):
        base = _quat_from_array(random_quaternions(rng, ()))
        pt = slice_decompose(base)
        pts = [
            Quaternion.from_real(pt.x0) + _unit_imaginary(rng).as_quaternion().scale(pt.x1)
            for _ in range(3)
        ]
        okab, _ = same_sphere(pts[0], pts[1])
        okba, _ = same_sphere(pts[1], pts[0])
        okbc, _ = same_sphere(pts[1], pts[2])
        okac, _ = same_sphere(pts[0], pts[2])
        if not (okab and okba and okbc and okac):
            sym_trans = math.inf
    worst = max(worst_witness, e12, sym_trans)
    passed = (
        worst <= 1e-9 * cfg.tol_scale
        and not ok_neg
        and okself
        and wself.is_close(ONE, 1e-15)
    )
    return (
        {"worst_witness_residual": worst_witness, "e1_to_e2": e12, "negative_case_ok": not ok_neg},
        1e-9 * cfg.tol_scale,
        passed,
    )


# ======================================================================
# qmatrix suite
# ======================================================================


def chk_chi_functorial(cfg, rng):
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 17))
        t = qm.random_qmatrix(rng, n)
        s = qm.random_qmatrix(rng, n)
        ct, cs = t.chi(), s.chi()
        scale_p = max(1.0, clinalg.opnorm(ct) * clinalg.opnorm(cs))
        scale_a = max(1.0, clinalg.opnorm(ct))
        worst = max(
            worst,
            clinalg.opnorm((t @ s).chi() - ct @ cs) / scale_p,
            clinalg.opnorm((t + s).chi() - (ct + cs)) / scale_a,
            clinalg.opnorm(t.adjoint().chi() - ct.conj().T) / scale_a,
        )
    eye_dev = clinalg.opnorm(qm.QMatrix.identity(3).chi() - np.eye(6))
    jmat = qm.QMatrix.diag_left(E2, 1)  # A = 0, B = 1 acting on H^1
    j_expected = np.array([[0.0, -1.0], [1.0, 0.0]], dtype=complex)
    j_dev = clinalg.opnorm(jmat.chi() - j_expected)
    worst = max(worst, eye_dev, j_dev)
    bound = 1e-12 * cfg.tol_scale
    return {"worst_relative": worst, "pairs": 200}, bound, worst <= bound


def chk_chi_inner(cfg, rng):
    worst_ip = 0.0
    worst_adj = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 9))
        x = qm.random_qvector(rng, n)
        y = qm.random_qvector(rng, n)
        t = qm.random_qmatrix(rng, n)
        ip = x.inner(y)
        cip = np.vdot(x.iota(), y.iota())
        worst_ip = max(worst_ip, abs(complex(ip.w, ip.x) - cip))
        lhs = t.adjoint().apply(x).inner(y)
        rhs = x.inner(t.apply(y))
        scale = max(1.0, qm.opnorm(t) * x.norm() * y.norm())
        worst_adj = max(worst_adj, (lhs - rhs).norm() / scale)
        # right linearity of the scalar product
        a = _quat_from_array(random_quaternions(rng, ()))
        lin = (x.inner(y.right_mul(a)) - x.inner(y) * a).norm()
        worst_ip = max(worst_ip, lin / max(1.0, x.norm() * y.norm()))
    bound = 1e-12 * cfg.tol_scale
    worst = max(worst_ip, worst_adj)
    return (
        {"inner_product_vs_iota": worst_ip, "adjoint_defining_relation": worst_adj},
        bound,
        worst <= bound,
    )


def chk_qmatrix_positivity(cfg, rng):
    oks = []
    for _ in range(25):
        n = int(rng.integers(1, 9))
        t = qm.random_qmatrix(rng, n)
        oks.append(qm.is_positive(t.adjoint() @ t))
        u = qm.random_unitary(rng, n)
        oks.append(qm.opnorm(qm.abs_op(u) - qm.QMatrix.identity(n)) <= 1e-10)
        oks.append(qm.is_normal(qm.QMatrix.diag_left(_quat_from_array(random_quaternions(rng, ())), n)))
    neg = qm.QMatrix.diag_left(Quaternion.from_real(-3.0), 1)
    absdev = qm.opnorm(qm.abs_op(neg) - qm.QMatrix.diag_left(Quaternion.from_real(3.0), 1))
    sq = qm.opnorm(qm.sqrt_pos(qm.QMatrix.identity(4)) - qm.QMatrix.identity(4))
    rejected_ok = False
    try:
        qm.sqrt_pos(neg)
    except qm.NotPositiveError:
        rejected_ok = True
    worst = max(absdev, sq)
    passed = all(oks) and worst <= 1e-10 * cfg.tol_scale and rejected_ok
    return (
        {"abs_diag_minus3": absdev, "sqrt_identity": sq, "negative_rejected": rejected_ok},
        1e-10 * cfg.tol_scale,
        passed,
    )


def chk_qmatrix_functions(cfg, rng):
    worst_sqrt = worst_round = worst_square = 0.0
    for _ in range(20):
        n = int(rng.integers(1, 9))
        t = qm.random_positive(rng, n)
        nt = max(qm.opnorm(t), 1e-30)
        s = qm.sqrt_pos(t)
        worst_sqrt = max(worst_sqrt, qm.opnorm(s @ s - t) / nt)
        p = float(rng.uniform(0.3, 3.0))
        roundtrip = qm.frac_power(qm.frac_power(t, p), 1.0 / p)
        worst_round = max(worst_round, qm.opnorm(roundtrip - t) / nt)
        sq = qm.frac_power(t, 2.0)
        worst_square = max(worst_square, qm.opnorm(sq - t @ t) / max(nt**2, 1e-30))
    fixed = max(
        qm.opnorm(qm.frac_power(qm.QMatrix.identity(3), 7.3) - qm.QMatrix.identity(3)),
        qm.opnorm(
            qm.frac_power(qm.QMatrix.diag_left(Quaternion.from_real(4.0), 1), 0.5)
            - qm.QMatrix.diag_left(Quaternion.from_real(2.0), 1)
        ),
    )
    p_rejected = False
    try:
        qm.frac_power(qm.QMatrix.identity(2), -1.0)
    except ValueError:
        p_rejected = True
    measured = {
        "sqrt_squared_residual": worst_sqrt,
        "power_roundtrip": worst_round,
        "power_two_vs_product": worst_square,
        "fixed_cases": fixed,
    }
    passed = (
        worst_sqrt <= 1e-10 * cfg.tol_scale
        and worst_round <= 1e-9 * cfg.tol_scale
        and worst_square <= 1e-9 * cfg.tol_scale
        and fixed <= 1e-12
        and p_rejected
    )
    return measured, 1e-9 * cfg.tol_scale, passed


def chk_polar(cfg, rng):
    worst_rec = worst_abs = worst_iso = worst_ker = worst_sym = 0.0
    for k in range(100):
        n = int(rng.integers(1, 9))
        t = qm.random_qmatrix(rng, n)
        if k % 3 == 1 and n > 1:
            # force a kernel: zero out one singular direction via a rank-down product
            d = qm.qsvd(t)
            t = d.truncate(n - 1)
        if k % 5 == 2:
            t = t + t.adjoint()  # selfadjoint case
        w, p = qm.polar(t)
        nt = max(qm.opnorm(t), 1e-30)
        worst_rec = max(worst_rec, qm.opnorm(w @ p - t) / nt)
        worst_abs = max(worst_abs, qm.opnorm(p - qm.abs_op(t)) / nt)
        # isometry on ker(P)^perp = ran(P): u = P v normalized
        v = qm.random_qvector(rng, n)
        u = p.apply(v)
        if u.norm() > 1e-8 * nt:
            u = u.normalized()
            worst_iso = max(worst_iso, abs(w.apply(u).norm() - 1.0))
        # W vanishes on ker(P)
        d = qm.qsvd(p)
        for sig, e in zip(d.sigmas, d.right):
            if sig <= 1e-12 * nt:
                worst_ker = max(worst_ker, w.apply(e).norm())
        if k % 5 == 2:
            worst_sym = max(worst_sym, qm.opnorm(w - w.adjoint()) / max(1.0, qm.opnorm(w)))
    wi, pi = qm.polar(qm.QMatrix.identity(3))
    fixed = qm.opnorm(wi - qm.QMatrix.identity(3)) + qm.opnorm(pi - qm.QMatrix.identity(3))
    wm, pm = qm.polar(qm.QMatrix.diag_left(Quaternion.from_real(-2.0), 1))
    fixed += qm.opnorm(wm - qm.QMatrix.diag_left(Quaternion.from_real(-1.0), 1))
    fixed += qm.opnorm(pm - qm.QMatrix.diag_left(Quaternion.from_real(2.0), 1))
    measured = {
        "reconstruction": worst_rec,
        "p_equals_abs": worst_abs,
        "partial_isometry": worst_iso,
        "kernel_preserved": worst_ker,
        "selfadjoint_w": worst_sym,
        "fixed_cases": fixed,
    }
    bound = 1e-10 * cfg.tol_scale
    worst = max(worst_rec, worst_abs, fixed)
    passed = worst <= bound and worst_iso <= 1e-9 and worst_ker <= 1e-8 and worst_sym <= 1e-8
    return measured, bound, passed


def chk_qsvd(cfg, rng):
    worst_action = worst_on = worst_match = 0.0
    for k in range(100):
        n = int(rng.integers(1, 9))
        t = qm.random_qmatrix(rng, n)
        if k % 4 == 1 and n > 1:
            t = qm.qsvd(t).truncate(n - 1)  # exercise kernels
        d = qm.qsvd(t)
        nt = max(qm.opnorm(t), 1e-30)
        x = qm.random_qvector(rng, n, unit=True)
        worst_action = max(worst_action, (d.apply(x) - t.apply(x)).norm() / nt)
        for sys in (d.left, d.right):
            for i_, u in enumerate(sys):
                for j_, v in enumerate(sys):
                    g = u.inner(v)
                    target = 1.0 if i_ == j_ else 0.0
                    worst_on = max(worst_on, (g - Quaternion.from_real(target)).norm())
        halved = qm.singular_values(t)
        worst_match = max(
            worst_match, float(np.abs(np.sort(halved)[::-1] - d.sigmas).max(initial=0.0)) / nt
        )
    z = qm.qsvd(qm.QMatrix.zeros(3))
    fixed = float(np.abs(z.sigmas).max(initial=0.0))
    q5 = E1.scale(3.0) + E2.scale(4.0)  # |q| = 5
    dq = qm.qsvd(qm.QMatrix.diag_left(q5, 1))
    fixed = max(fixed, abs(float(dq.sigmas[0]) - 5.0))
    measured = {
        "action_residual": worst_action,
        "orthonormality": worst_on,
        "chi_svd_match": worst_match,
        "fixed_cases": fixed,
    }
    bound = 1e-10 * cfg.tol_scale
    passed = max(worst_action, worst_on, worst_match, fixed) <= bound
    return measured, bound, passed


def chk_eckart_young(cfg, rng):
    worst_eq = 0.0
    competitor_margin = math.inf
    for _ in range(30):
        n = int(rng.integers(2, 9))
        t = qm.random_qmatrix(rng, n)
        d = qm.qsvd(t)
        k = int(rng.integers(1, n))
        tk = d.truncate(k)
        lam_next = float(d.sigmas[k])
        worst_eq = max(worst_eq, abs(qm.opnorm(t - tk) - lam_next))
        for _ in range(100):
            f = qm.QMatrix.zeros(n)
            for _ in range(k):
                f = f + qm.rank_one(
                    qm.random_qvector(rng, n), qm.random_qvector(rng, n)
                )
            competitor_margin = min(competitor_margin, qm.opnorm(t - f) - lam_next)
    measured = {"equality_gap": worst_eq, "worst_competitor_margin": competitor_margin}
    passed = worst_eq <= 1e-10 * cfg.tol_scale and competitor_margin >= -1e-8
    return measured, 1e-10 * cfg.tol_scale, passed


def chk_singval_inequalities(cfg, rng):
    worst_sum = worst_prod = -math.inf
    for _ in range(200):
        n = int(rng.integers(2, 7))
        t1 = qm.random_qmatrix(rng, n)
        t2 = qm.random_qmatrix(rng, n)
        s1, s2 = qm.singular_values(t1), qm.singular_values(t2)
        ssum = qm.singular_values(t1 + t2)
        sprod = qm.singular_values(t1 @ t2)
        for i in range(n):
            for j in range(n - i):
                if i + j < n:
                    worst_sum = max(worst_sum, ssum[i + j] - (s1[i] + s2[j]))
                    worst_prod = max(worst_prod, sprod[i + j] - s1[i] * s2[j])
    measured = {"sum_violation": worst_sum, "prod_violation": worst_prod}
    bound = 1e-8 * cfg.tol_scale
    return measured, bound, worst_sum <= bound and worst_prod <= bound


def chk_minmax(cfg, rng):
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(2, 7))
        t = qm.random_positive(rng, n)
        d = qm.qsvd(t)
        k = int(rng.integers(1, n))
        comp = d.right[k:]
        cols = []
        for e in comp:
            cols.append(e.iota())
            cols.append(e.right_mul(E2).iota())
        dmat = np.stack(cols, axis=1)
        restricted = clinalg.opnorm(t.chi() @ dmat)
        worst = max(worst, abs(restricted - float(d.sigmas[k])) / max(1.0, float(d.sigmas[0])))
        # sampled maximization stays below the restricted norm
        best = 0.0
        for _ in range(50):
            c = rng.standard_normal(dmat.shape[1]) + 1j * rng.standard_normal(dmat.shape[1])
            c /= np.linalg.norm(c)
            best = max(best, float(np.linalg.norm(t.chi() @ (dmat @ c))))
        if best > restricted + 1e-9:
            worst = math.inf
    bound = 1e-6 * cfg.tol_scale
    return {"worst_relative": worst}, bound, worst <= bound


# ======================================================================
# sspectrum suite
# ======================================================================


def chk_ssp_pencil(cfg, rng):
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 9))
        t = qm.random_qmatrix(rng, n)
        spec = ssp.s_spectrum(t, validate=False)
        bound_scale = 1.0 + qm.opnorm(t) ** 2
        for v in spec.values:
            s = Quaternion(v.real, v.imag, 0.0, 0.0)
            smin = clinalg.svdvals(ssp.q_pencil(t, s).chi())[-1]
            worst = max(worst, float(smin) / bound_scale)
    bound = 1e-8 * cfg.tol_scale
    return {"worst_scaled_sigma_min": worst, "operators": 100}, bound, worst <= bound


def chk_ssp_axial_radius(cfg, rng):
    worst_radius = -math.inf
    all_axial = True
    nonempty = True
    worst_pairing = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 9))
        t = qm.random_qmatrix(rng, n)
        spec = ssp.s_spectrum(t, validate=False)
        if spec.values.size == 0:
            nonempty = False
        worst_radius = max(worst_radius, spec.spectral_radius() - qm.opnorm(t))
        eigs = np.linalg.eigvals(t.chi())
        # conjugate pairing within 1e-10: fold and compare sorted halves
        folded = np.sort_complex(eigs.real + 1j * np.abs(eigs.imag))
        worst_pairing = max(
            worst_pairing,
            float(np.abs(folded[::2] - folded[1::2]).max(initial=0.0))
            / max(1.0, float(np.abs(eigs).max(initial=0.0))),
        )
        for v in spec.values[: min(4, spec.values.size)]:
            for _ in range(16):
                u = _unit_imaginary(rng)
                s = Quaternion.from_real(v.real) + u.as_quaternion().scale(v.imag)
                if not ssp.in_s_spectrum(t, s):
                    all_axial = False
    measured = {
        "radius_excess": worst_radius,
        "axial_symmetry": all_axial,
        "nonempty": nonempty,
        "pairing_gap": worst_pairing,
    }
    passed = worst_radius <= 1e-8 * cfg.tol_scale and all_axial and nonempty and worst_pairing <= 1e-10
    return measured, 1e-8 * cfg.tol_scale, passed


def chk_ssp_worked_example(cfg, rng):
    t = qm.QMatrix.diag_left(E1, 1)
    spec = ssp.s_spectrum(t)
    reps_ok = spec.values.size == 1 and abs(spec.values[0] - 1j) <= 1e-12
    pencil_zero = qm.opnorm(ssp.q_pencil(t, E1))
    sphere_ok = all(
        ssp.in_s_spectrum(t, _unit_imaginary(rng).as_quaternion()) for _ in range(16)
    )
    zero_matrix_out = not ssp.in_s_spectrum(qm.QMatrix.zeros(2), ONE)
    zero_spec = ssp.s_spectrum(qm.QMatrix.zeros(2))
    zero_ok = zero_spec.values.size == 1 and abs(zero_spec.values[0]) <= 1e-14
    q0 = ssp.q_pencil(t, Quaternion())  # Q_0(T) = T^2
    q0_ok = qm.opnorm(q0 - t @ t) == 0.0
    qs0 = ssp.q_pencil(qm.QMatrix.zeros(2), Quaternion(1.5, 0.5, 0, 0))
    qs0_ok = qm.opnorm(qs0 - qm.QMatrix.identity(2).scale(2.5)) <= 1e-15
    measured = {
        "sphere_representative_ok": reps_ok,
        "pencil_norm_at_e1": pencil_zero,
        "sphere_membership": sphere_ok,
        "zero_matrix_regular_at_1": zero_matrix_out,
        "zero_spectrum_ok": zero_ok,
        "pencil_at_zero_is_square": q0_ok,
        "pencil_of_zero_operator": qs0_ok,
    }
    passed = (
        reps_ok and pencil_zero <= 1e-14 and sphere_ok and zero_matrix_out and zero_ok and q0_ok and qs0_ok
    )
    return measured, 1e-12, passed


def chk_ssp_resolvents(cfg, rng):
    worst_fixed = 0.0
    s = Quaternion(0.7, 0.4, -0.2, 0.1)
    sinv = s.inverse()
    for mk in (ssp.s_resolvent_left, ssp.s_resolvent_right):
        r = mk(qm.QMatrix.zeros(3), s)
        worst_fixed = max(worst_fixed, qm.opnorm(r - qm.QMatrix.diag_left(sinv, 3)))
    worst_identity = 0.0
    for k in range(20):
        n = int(rng.integers(1, 7))
        t = qm.random_qmatrix(rng, n)
        s_unit = s.scale(1.0 / s.norm())
        if k % 2 == 0:
            # real-entry operator: both resolvents must coincide
            t = qm.QMatrix(rng.standard_normal((n, n)).astype(complex))
            s_out = s_unit.scale(2.0 + qm.opnorm(t))  # |s| > ||T||, safely regular
            dev = qm.opnorm(
                ssp.s_resolvent_left(t, s_out) - ssp.s_resolvent_right(t, s_out)
            )
            worst_identity = max(worst_identity, dev / max(1.0, qm.opnorm(t)))
        ss = s_unit.scale(2.0 + qm.opnorm(t))
        sl = ssp.s_resolvent_left(t, ss)
        ls = qm.QMatrix.diag_left(ss, n)
        ident = sl @ ls - t @ sl - qm.QMatrix.identity(n)
        worst_identity = max(worst_identity, qm.opnorm(ident) / max(1.0, qm.opnorm(sl)))
    raised = False
    try:
        ssp.s_resolvent_left(qm.QMatrix.diag_left(E1, 1), E1)
    except ssp.ResolventAtSpectrumError as exc:
        raised = exc.sigma_min <= 1e-12
    measured = {
        "resolvent_of_zero": worst_fixed,
        "left_resolvent_identity": worst_identity,
        "spectrum_rejection": raised,
    }
    bound = 1e-9 * cfg.tol_scale
    passed = worst_fixed <= 1e-12 and worst_identity <= bound and raised
    return measured, bound, passed


def chk_ssp_classification(cfg, rng):
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(1, 9))
        t = qm.random_qmatrix(rng, n)
        cls = ssp.classify_spectrum(t)
        if cls.residual or cls.continuous:
            return {"partition": "nonempty residual/continuous"}, 1e-9, False
        scale = 1.0 + qm.opnorm(t) ** 2
        for v, x in zip(cls.point.values, cls.eigenvectors):
            s = Quaternion(v.real, v.imag, 0.0, 0.0)
            worst = max(worst, ssp.q_pencil(t, s).apply(x).norm() / scale)
            lam = embed_complex(complex(v), slice_decompose(E1).unit)
            worst = max(
                worst, (t.apply(x) - x.right_mul(lam)).norm() / max(1.0, qm.opnorm(t))
            )
    bound = 1e-9 * cfg.tol_scale
    return {"worst_eigen_residual": worst}, bound, worst <= bound


# ======================================================================
# jstructure suite
# ======================================================================


def chk_jst_standard(cfg, rng):
    s = standard_j(3)
    j1 = standard_j(1)
    val = j1.j.apply(qm.QVector.canonical(0, 1))
    je1 = (val.to_quaternions()[0] - E1).norm()
    jsq = qm.opnorm(s.j @ s.j + qm.QMatrix.identity(3))
    basis_dev = 0.0
    for k, e in enumerate(s.plus_basis()):
        basis_dev = max(basis_dev, (e - qm.QVector.canonical(k, 3)).norm())
    measured = {"j_of_one": je1, "j_squared_plus_identity": jsq, "canonical_basis": basis_dev}
    worst = max(je1, jsq, basis_dev)
    return measured, 1e-14, worst <= 1e-14


def chk_jst_conjugated(cfg, rng):
    worst_inv = worst_act = worst_pars = worst_dec = worst_span = 0.0
    for _ in range(20):
        n = int(rng.integers(1, 7))
        u = qm.random_unitary(rng, n)
        j = u.adjoint() @ qm.QMatrix.diag_left(E1, n) @ u
        st = ComplexStructure(j)
        e = st.basis
        worst_inv = max(
            worst_inv,
            qm.opnorm(e.adjoint() @ e - qm.QMatrix.identity(n)),
            qm.opnorm(j @ e - e @ qm.QMatrix.diag_left(E1, n)),
        )
        x = qm.random_qvector(rng, n)
        # J x = sum e_n i <e_n, x>
        acc = qm.QVector.zeros(n)
        for en in st.plus_basis():
            acc = acc + en.right_mul(E1 * en.inner(x))
        worst_act = max(worst_act, (j.apply(x) - acc).norm() / max(1.0, x.norm()))
        # Parseval over the basis
        total = sum(en.inner(x).norm_sq() for en in st.plus_basis())
        worst_pars = max(worst_pars, abs(total - x.norm() ** 2) / max(1.0, x.norm() ** 2))
        # x = x1 + x2 j with x1, x2 in H_+ (j = e2): x2 = -(x - x1) j
        x1 = st.project_plus(x)
        x2 = (x - x1).right_mul(E2.scale(-1.0))
        in_plus = (st.project_plus(x2) - x2).norm()
        rebuilt = x1 + x2.right_mul(E2)
        worst_dec = max(
            worst_dec,
            ((rebuilt - x).norm() + in_plus) / max(1.0, x.norm()),
        )
        # basis spans U*(C^n): each basis vector has zero component off the plus space
        for en in st.plus_basis():
            img = u.apply(en)
            # u e_n must lie in C_{e1}^n: the c2 block vanishes
            worst_span = max(worst_span, float(np.abs(img.c2).max(initial=0.0)))
    measured = {
        "invariants": worst_inv,
        "j_action_formula": worst_act,
        "parseval": worst_pars,
        "plus_minus_decomposition": worst_dec,
        "span_match": worst_span,
    }
    bound = 1e-10 * cfg.tol_scale
    worst = max(worst_inv, worst_act, worst_pars, worst_dec, worst_span)
    return measured, bound, worst <= bound


def chk_jst_res_lift(cfg, rng):
    worst_round = worst_norm = worst_alg = worst_fixed = 0.0
    for _ in range(25):
        n = int(rng.integers(1, 7))
        u = qm.random_unitary(rng, n)
        st = ComplexStructure(u.adjoint() @ qm.QMatrix.diag_left(E1, n) @ u)
        for _ in range(4):
            m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            lifted = lift_ji(m, st)
            back = res_ji(lifted, st)
            worst_round = max(worst_round, float(np.abs(back - m).max()))
            worst_norm = max(
                worst_norm, abs(qm.opnorm(lifted) - clinalg.opnorm(m)) / max(1.0, clinalg.opnorm(m))
            )
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        b = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        la, lb = lift_ji(a, st), lift_ji(b, st)
        worst_alg = max(
            worst_alg,
            qm.opnorm(lift_ji(a @ b, st) - la @ lb) / max(1.0, qm.opnorm(la) * qm.opnorm(lb)),
            qm.opnorm(lift_ji(a.conj().T, st) - la.adjoint()) / max(1.0, qm.opnorm(la)),
            float(np.abs(res_ji(la @ lb, st) - a @ b).max()) / max(1.0, clinalg.opnorm(a @ b)),
        )
        # inverse transfer
        ainv = np.linalg.inv(a + 3.0 * np.eye(n))
        worst_alg = max(
            worst_alg,
            qm.opnorm(lift_ji(ainv, st) @ lift_ji(a + 3.0 * np.eye(n), st) - qm.QMatrix.identity(n)),
        )
        # res(T) of a J-commuting T reproduces T through lift
        tC = res_ji(la, st)
        worst_round = max(worst_round, qm.opnorm(lift_ji(tC, st) - la) / max(1.0, qm.opnorm(la)))
    st3 = standard_j(3)
    worst_fixed = max(
        worst_fixed,
        float(np.abs(res_ji(qm.QMatrix.identity(3), st3) - np.eye(3)).max()),
        float(np.abs(res_ji(st3.j, st3) - 1j * np.eye(3)).max()),
        qm.opnorm(lift_ji(np.eye(3, dtype=complex), st3) - qm.QMatrix.identity(3)),
        qm.opnorm(lift_ji(1j * np.eye(3), st3) - st3.j),
    )
    measured = {
        "roundtrip": worst_round,
        "norm_preservation": worst_norm,
        "algebra_homomorphism": worst_alg,
        "fixed_cases": worst_fixed,
    }
    bound = 1e-10 * cfg.tol_scale
    worst = max(worst_round, worst_norm, worst_alg, worst_fixed)
    return measured, bound, worst <= bound


def chk_jst_predicates(cfg, rng):
    ok = True
    for _ in range(10):
        n = int(rng.integers(1, 6))
        u = qm.random_unitary(rng, n)
        st = ComplexStructure(u.adjoint() @ qm.QMatrix.diag_left(E1, n) @ u)
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        cases = {
            "selfadjoint": g + g.conj().T,
            "antiselfadjoint": g - g.conj().T,
            "positive": g.conj().T @ g,
            "unitary": np.linalg.qr(g)[0],
            "normal": np.diag(rng.standard_normal(n) + 1j * rng.standard_normal(n)),
        }
        preds = {
            "selfadjoint": qm.is_selfadjoint,
            "antiselfadjoint": qm.is_antiselfadjoint,
            "positive": qm.is_positive,
            "unitary": qm.is_unitary,
            "normal": qm.is_normal,
        }
        for name, mc in cases.items():
            lifted = lift_ji(mc, st)
            if not preds[name](lifted, 1e-8):
                ok = False
    # commutation examples
    st1 = standard_j(1)
    ok = ok and commutes_with_j(st1.j, st1)
    ok = ok and not commutes_with_j(qm.QMatrix.diag_left(E2, 1), st1)
    st2 = standard_j(2)
    mc = np.array([[1.0, 2.0j], [0.5, -1.0]], dtype=complex)
    ok = ok and commutes_with_j(lift_ji(mc, st2), st2)
    return {"all_transfers": ok}, None, ok


# ======================================================================
# schatten suite
# ======================================================================


def _random_bj_operator(rng, st: ComplexStructure) -> qm.QMatrix:
    n = st.n
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return lift_ji(m, st)


def chk_sch_norm_iso(cfg, rng):
    worst_iso = worst_inf = worst_mono = 0.0
    for _ in range(20):
        n = int(rng.integers(1, 7))
        u = qm.random_unitary(rng, n)
        st = ComplexStructure(u.adjoint() @ qm.QMatrix.diag_left(E1, n) @ u)
        t = _random_bj_operator(rng, st)
        mt = res_ji(t, st)
        sv = clinalg.svdvals(mt)
        for p in cfg.ps:
            lhs = schatten_norm(t, p)
            rhs = float(np.sum(sv**p) ** (1.0 / p))
            worst_iso = max(worst_iso, abs(lhs - rhs) / max(1.0, rhs))
        worst_inf = max(
            worst_inf, abs(schatten_norm(t, math.inf) - qm.opnorm(t)) / max(1.0, qm.opnorm(t))
        )
        # ||T||_p nonincreasing in p for contractions
        tc = t.scale(0.99 / max(qm.opnorm(t), 1e-30))
        norms = [schatten_norm(tc, p) for p in (1.0, 2.0, 3.0, math.inf)]
        worst_mono = max(
            worst_mono, max(norms[i + 1] - norms[i] for i in range(3))
        )
    fixed = abs(schatten_norm(qm.QMatrix.identity(4), 2.0) - 2.0)
    fixed = max(fixed, abs(schatten_norm(qm.QMatrix.diag_left(E2.scale(3.0), 1), 1.0) - 3.0))
    measured = {
        "iso_deviation": worst_iso,
        "infty_vs_opnorm": worst_inf,
        "monotonicity_violation": worst_mono,
        "fixed_cases": fixed,
    }
    bound = 1e-10 * cfg.tol_scale
    passed = max(worst_iso, worst_inf, fixed) <= bound and worst_mono <= 1e-12
    return measured, bound, passed


def chk_sch_trace(cfg, rng):
    st1 = standard_j(1)
    ctx1 = SchattenContext(st1, 1.0)
    fixed = abs(ji_trace(qm.QMatrix.identity(1), ctx1).value - 1.0)
    stn = standard_j(4)
    ctxn = SchattenContext(stn, 1.0)
    fixed = max(fixed, abs(ji_trace(qm.QMatrix.identity(4), ctxn).value - 4.0))
    fixed = max(fixed, abs(ji_trace(st1.j, ctx1).value - 1j))
    worst_cyc = worst_basis = 0.0
    for _ in range(20):
        n = int(rng.integers(1, 7))
        u = qm.random_unitary(rng, n)
        st = ComplexStructure(u.adjoint() @ qm.QMatrix.diag_left(E1, n) @ u)
        ctx = SchattenContext(st, 1.0)
        t = _random_bj_operator(rng, st)
        s = _random_bj_operator(rng, st)
        scale = max(1.0, qm.opnorm(t) * qm.opnorm(s)) * n
        worst_cyc = max(
            worst_cyc, abs(ji_trace(t @ s, ctx).value - ji_trace(s @ t, ctx).value) / scale
        )
        sum_basis = Quaternion()
        for e in st.plus_basis():
            sum_basis = sum_basis + e.inner(t.apply(e))
        worst_basis = max(
            worst_basis,
            (sum_basis - ji_trace(t, ctx).as_quaternion()).norm() / max(1.0, qm.opnorm(t) * n),
        )
    measured = {"fixed_cases": fixed, "cyclicity": worst_cyc, "basis_sum_match": worst_basis}
    bound = 1e-11 * cfg.tol_scale
    worst = max(fixed, worst_cyc, worst_basis)
    return measured, bound, worst <= bound


def chk_sch_trace_invariance(cfg, rng):
    worst = 0.0
    for _ in range(4):
        n = int(rng.integers(2, 7))
        u = qm.random_unitary(rng, n)
        st = ComplexStructure(u.adjoint() @ qm.QMatrix.diag_left(E1, n) @ u)
        ctx = SchattenContext(st, 1.0)
        tpos = lift_ji(_hermitian_psd(rng, n), st)
        rep = trace_basis_sweep(tpos, ctx, num_bases=20, rng=rng)
        worst = max(worst, rep["max_deviation"] / max(1.0, rep["reference"].norm()))
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        tsa = lift_ji(g + g.conj().T, st)
        rep = trace_basis_sweep(tsa, ctx, num_bases=20, rng=rng)
        worst = max(worst, rep["max_deviation"] / max(1.0, rep["reference"].norm()))
    bound = 1e-10 * cfg.tol_scale
    return {"worst_relative_deviation": worst, "bases": 20}, bound, worst <= bound


def _hermitian_psd(rng, n: int) -> np.ndarray:
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return g.conj().T @ g


def chk_sch_trace_counterexample(cfg, rng):
    t = qm.QMatrix.diag_left(E1, 1)
    basis_one = [qm.QVector.from_quaternions([ONE])]
    basis_e2 = [qm.QVector.from_quaternions([E2])]
    v1 = basis_one[0].inner(t.apply(basis_one[0]))
    v2 = basis_e2[0].inner(t.apply(basis_e2[0]))
    dev = max((v1 - E1).norm(), (v2 + E1).norm())
    return (
        {
            "basis_one_value": [v1.w, v1.x, v1.y, v1.z],
            "basis_e2_value": [v2.w, v2.x, v2.y, v2.z],
            "deviation": dev,
        },
        0.0,
        dev == 0.0,
    )


def chk_sch_unit_change(cfg, rng):
    worst = 0.0
    for _ in range(10):
        n = int(rng.integers(1, 6))
        u = qm.random_unitary(rng, n)
        j = u.adjoint() @ qm.QMatrix.diag_left(E1, n) @ u
        st_i = ComplexStructure(j)
        t = _random_bj_operator(rng, st_i)
        for unit in (UnitImaginary((0.0, 1.0, 0.0)), _unit_imaginary(rng)):
            st_j = st_i.with_unit(unit)
            rep = trace_unit_change(t, SchattenContext(st_i, 1.0), SchattenContext(st_j, 1.0))
            worst = max(worst, rep["deviation"] / max(1.0, abs(rep["trace_i"].value)))
    # real-trace and T = J fixed cases
    st = standard_j(2)
    st2 = st.with_unit(UnitImaginary((0.0, 0.0, 1.0)))
    rep = trace_unit_change(st.j, SchattenContext(st, 1.0), SchattenContext(st2, 1.0))
    worst = max(worst, rep["deviation"], abs(rep["trace_i"].value - 2j))
    bound = 1e-10 * cfg.tol_scale
    return {"worst_relative": worst}, bound, worst <= bound


def chk_sch_hoelder(cfg, rng):
    worst_slack = math.inf
    violations = 0
    pairs = [(1.0, math.inf), (2.0, 2.0), (3.0, 1.5)]
    for _ in range(200):
        n = int(rng.integers(1, 7))
        st = standard_j(n)
        ctx = SchattenContext(st, 1.0)
        t = _random_bj_operator(rng, st)
        s = _random_bj_operator(rng, st)
        for p, q in pairs:
            rep = hoelder_check(t, s, p, q, ctx)
            rel = rep["slack"] / max(1.0, rep["rhs"])
            worst_slack = min(worst_slack, rel)
            if rel < -1e-10 * cfg.tol_scale:
                violations += 1
    # homogeneity: both sides scale linearly in a scalar modulus
    st = standard_j(3)
    ctx = SchattenContext(st, 1.0)
    t = _random_bj_operator(rng, st)
    s = _random_bj_operator(rng, st)
    base = hoelder_check(t, s, 2.0, 2.0, ctx)
    scaled = hoelder_check(t.scale(2.5), s, 2.0, 2.0, ctx)
    homog = abs(scaled["lhs"] - 2.5 * base["lhs"]) + abs(scaled["rhs"] - 2.5 * base["rhs"])
    eqcase = hoelder_check(qm.QMatrix.identity(4), qm.QMatrix.identity(4), 2.0, 2.0, ctx=SchattenContext(standard_j(4), 1.0))
    measured = {
        "worst_relative_slack": worst_slack,
        "violations": violations,
        "homogeneity": homog,
        "identity_equality_gap": eqcase["rhs"] - eqcase["lhs"],
    }
    passed = violations == 0 and homog <= 1e-9 and abs(eqcase["rhs"] - eqcase["lhs"]) <= 1e-12
    return measured, 1e-10 * cfg.tol_scale, passed


def chk_sch_duality(cfg, rng):
    worst_gap = math.inf
    worst_excess = -math.inf
    n = min(cfg.n, 8)
    st = standard_j(n)
    for p in (1.0, 2.0, 3.0):
        ctx = SchattenContext(st, p)
        t = _random_bj_operator(rng, st)
        rep = dual_norm(t, p, ctx, num_probes=1000, rng=rng)
        worst_gap = min(worst_gap, rep["optimizer_value"] - rep["norm"])
        worst_excess = max(worst_excess, rep["sup_estimate"] - rep["norm"])
    # hand-checkable cases
    st2 = standard_j(2)
    rep_i = dual_norm(qm.QMatrix.identity(2), 1.0, SchattenContext(st2, 1.0), num_probes=50, rng=rng)
    fixed = abs(rep_i["optimizer_value"] - 2.0)
    diag = lift_ji(np.diag([3.0, 1.0]).astype(complex), st2)
    rep_d = dual_norm(diag, 2.0, SchattenContext(st2, 2.0), num_probes=50, rng=rng)
    fixed = max(fixed, abs(rep_d["optimizer_value"] - math.sqrt(10.0)))
    measured = {
        "worst_optimizer_gap": worst_gap,
        "worst_probe_excess": worst_excess,
        "fixed_cases": fixed,
    }
    passed = worst_gap >= -1e-8 and worst_excess <= 1e-10 and fixed <= 1e-10
    return measured, 1e-8 * cfg.tol_scale, passed


def chk_sch_ideal(cfg, rng):
    ok = True
    worst = -math.inf
    for _ in range(50):
        n = int(rng.integers(1, 7))
        st = standard_j(n)
        ctx = SchattenContext(st, 1.0)
        t = _random_bj_operator(rng, st)
        s = _random_bj_operator(rng, st)
        p = float(rng.choice(np.asarray(cfg.ps)))
        rep = ideal_check(t, s, p, ctx)
        ok = ok and rep["passed"]
        worst = max(
            worst,
            (rep["norm_ts"] - rep["bound"]) / max(1.0, rep["bound"]),
            (rep["norm_st"] - rep["bound"]) / max(1.0, rep["bound"]),
        )
    st = standard_j(4)
    ctx = SchattenContext(st, 2.0)
    t = _random_bj_operator(rng, st)
    rep = ideal_check(t, qm.QMatrix.identity(4), 2.0, ctx)
    identity_exact = abs(rep["norm_ts"] - schatten_norm(t, 2.0))
    jnorm = abs(schatten_norm(st.j @ t, 2.0) - schatten_norm(t, 2.0))
    measured = {
        "worst_relative_excess": worst,
        "identity_case": identity_exact,
        "j_invariance": jnorm,
    }
    passed = ok and identity_exact <= 1e-10 and jnorm <= 1e-10
    return measured, 1e-8 * cfg.tol_scale, passed


def chk_sch_characterizations(cfg, rng):
    worst_chain = 0.0
    all_ok = True
    for _ in range(10):
        n = int(rng.integers(2, 7))
        st = standard_j(n)
        t = _random_bj_operator(rng, st)
        for p in (0.7, 1.0, 2.0, 3.0):
            ctx = SchattenContext(st, p)
            rep = characterization_suite(t, p, ctx, rng=rng, num_sets=3)
            all_ok = all_ok and rep["passed"]
            worst_chain = max(worst_chain, rep["norm_chain"]["deviation"] / max(1.0, rep["norm_chain"]["values"][0]))
        tpos = lift_ji(_hermitian_psd(rng, n), st)
        for p in (0.5, 1.5, 2.0):
            rep = characterization_suite(tpos, p, SchattenContext(st, p), rng=rng, num_sets=3)
            all_ok = all_ok and rep["passed"]
    bound = 1e-9 * cfg.tol_scale
    return {"worst_chain_relative": worst_chain, "all_passed": all_ok}, bound, all_ok and worst_chain <= bound


def chk_sch_spcrit3(cfg, rng):
    triples = 0
    worst = -math.inf
    while triples < 1000:
        n = int(rng.integers(2, 7))
        st = standard_j(n)
        tpos = lift_ji(_hermitian_psd(rng, n), st)
        for p in (0.3, 0.6, 1.0, 1.7, 2.5):
            tp = qm.frac_power(tpos, p)
            for _ in range(4):
                x = qm.random_qvector(rng, n, unit=True)
                lhs = x.inner(tp.apply(x)).re()
                rhs = x.inner(tpos.apply(x)).re() ** p
                gap = (lhs - rhs) if p >= 1 else (rhs - lhs)
                scale = max(1.0, abs(lhs), abs(rhs))
                worst = max(worst, -gap / scale)
                triples += 1
    bound = 1e-9 * cfg.tol_scale
    return {"triples": triples, "worst_violation": worst}, bound, worst <= bound


# ======================================================================
# slicefn suite
# ======================================================================


def _rand_poly(rng, degree: int) -> LeftSlicePoly:
    return LeftSlicePoly([_quat_from_array(v) for v in random_quaternions(rng, degree + 1)])


def chk_slf_eval(cfg, rng):
    fixed = (LeftSlicePoly([ONE]).eval(Quaternion(0.3, 1.2, -0.5, 2.0)) - ONE).norm()
    f = LeftSlicePoly([Quaternion(), E2])  # f(x) = x e2
    fixed = max(fixed, (f.eval(E1) - E3).norm())
    worst_lin = 0.0
    for _ in range(50):
        fp = _rand_poly(rng, 5)
        gp = _rand_poly(rng, 5)
        a = _quat_from_array(random_quaternions(rng, ()))
        q = _quat_from_array(random_quaternions(rng, ()))
        lhs = (fp.right_scale(a) + gp).eval(q)
        rhs = fp.eval(q) * a + gp.eval(q)
        worst_lin = max(worst_lin, (lhs - rhs).norm() / max(1.0, rhs.norm()))
    # complex-plane agreement for real coefficients
    coeffs = rng.standard_normal(6)
    fpoly = LeftSlicePoly([Quaternion.from_real(c) for c in coeffs])
    z = complex(0.4, -1.1)
    qz = embed_complex(z, UnitImaginary((1.0, 0.0, 0.0)))
    val = fpoly.eval(qz)
    ref = complex(np.polyval(coeffs[::-1], z))
    agree = (val - embed_complex(ref, UnitImaginary((1.0, 0.0, 0.0)))).norm()
    worst = max(fixed, worst_lin, agree)
    bound = 1e-12 * cfg.tol_scale
    return (
        {"fixed_cases": fixed, "right_linearity": worst_lin, "complex_agreement": agree},
        bound,
        worst <= bound,
    )


def chk_slf_repfo(cfg, rng):
    worst = worst_idem = 0.0
    unit_i = UnitImaginary((1.0, 0.0, 0.0))
    for _ in range(100):
        f = _rand_poly(rng, 6)
        q = _quat_from_array(random_quaternions(rng, ()))
        pt = slice_decompose(q)
        xi = embed_complex(complex(pt.x0, pt.x1), unit_i)
        f_xi = f.eval(xi)
        f_xbar = f.eval(xi.conj())
        rec = representation_formula(f_xi, f_xbar, unit_i, pt)
        worst = max(worst, (rec - f.eval(q)).norm() / max(1.0, f.eval(q).norm()))
        # idempotence: feeding values produced by the formula changes nothing
        rec2 = representation_formula(f_xi, f_xbar, unit_i, slice_decompose(xi))
        worst_idem = max(worst_idem, (rec2 - f_xi).norm() / max(1.0, f_xi.norm()))
        real_target = Quaternion.from_real(pt.x0)
        rec3 = representation_formula(
            f.eval(real_target), f.eval(real_target), unit_i, slice_decompose(real_target)
        )
        worst_idem = max(worst_idem, (rec3 - f.eval(real_target)).norm() / max(1.0, 1.0))
    measured = {"off_plane_agreement": worst, "in_plane_and_real": worst_idem}
    bound = 1e-11 * cfg.tol_scale
    return measured, bound, worst <= bound and worst_idem <= 1e-12 * cfg.tol_scale


def chk_slf_split(cfg, rng):
    unit_i = UnitImaginary((1.0, 0.0, 0.0))
    unit_j = UnitImaginary((0.0, 1.0, 0.0))
    worst_exact = worst_point = 0.0
    for _ in range(50):
        f = _rand_poly(rng, 6)
        f1, f2 = split(f, unit_i, unit_j)
        back = recombine(f1, f2, unit_i, unit_j)
        worst_exact = max(
            worst_exact, max((a - b).norm() for a, b in zip(back.coeffs, f.coeffs))
        )
        for _ in range(2):
            z = complex(rng.standard_normal(), rng.standard_normal())
            qz = embed_complex(z, unit_i)
            lhs = f.eval(qz)
            v1 = complex(np.polyval(f1[::-1], z))
            v2 = complex(np.polyval(f2[::-1], z))
            rhs = embed_complex(v1, unit_i) + embed_complex(v2, unit_i) * unit_j.as_quaternion()
            worst_point = max(worst_point, (lhs - rhs).norm() / max(1.0, lhs.norm()))
    consts = split(LeftSlicePoly([E2]), unit_i, unit_j)
    fixed = abs(consts[0][0]) + abs(consts[1][0] - 1.0)
    reals = split(LeftSlicePoly([ONE, Quaternion.from_real(-2.0)]), unit_i, unit_j)
    fixed = max(fixed, float(np.abs(reals[1]).max()))
    rejected = False
    try:
        split(LeftSlicePoly([ONE]), unit_i, UnitImaginary((1.0, 0.0, 0.0)))
    except ValueError:
        rejected = True
    measured = {
        "coefficient_roundtrip": worst_exact,
        "pointwise_reassembly": worst_point,
        "fixed_cases": fixed,
        "nonorthogonal_rejected": rejected,
    }
    bound = 1e-12 * cfg.tol_scale
    passed = worst_exact == 0.0 and worst_point <= bound and fixed == 0.0 and rejected
    return measured, bound, passed


def chk_slf_derivative(cfg, rng):
    sq = LeftSlicePoly([Quaternion(), Quaternion(), ONE])  # x^2
    d = sq.derivative()
    fixed = max(
        (d.coeffs[1] - Quaternion.from_real(2.0)).norm(),
        d.coeffs[0].norm(),
        LeftSlicePoly([E1]).derivative().coeffs[0].norm(),
    )
    worst_fd = 0.0
    h = 1e-5
    for _ in range(30):
        f = _rand_poly(rng, 6)
        df = f.derivative()
        q = _quat_from_array(random_quaternions(rng, ())).scale(0.5)
        plus = f.eval(q + Quaternion.from_real(h))
        minus = f.eval(q - Quaternion.from_real(h))
        fd = (plus - minus).scale(0.5 / h)
        worst_fd = max(worst_fd, (fd - df.eval(q)).norm() / max(1.0, df.eval(q).norm()))
    # Taylor re-expansion at a real center
    worst_taylor = 0.0
    for _ in range(20):
        f = _rand_poly(rng, 5)
        alpha = float(rng.standard_normal())
        terms = []
        dcur = f
        fact = 1.0
        for nn in range(f.degree + 1):
            if nn > 0:
                dcur = dcur.derivative()
                fact *= nn
            terms.append(dcur.eval(Quaternion.from_real(alpha)).scale(1.0 / fact))
        q = _quat_from_array(random_quaternions(rng, ())).scale(0.6)
        shift = q - Quaternion.from_real(alpha)
        acc = Quaternion()
        power = ONE
        for c in terms:
            acc = acc + power * c
            power = power * shift
        worst_taylor = max(worst_taylor, (acc - f.eval(q)).norm() / max(1.0, f.eval(q).norm()))
    measured = {
        "fixed_cases": fixed,
        "fd_agreement": worst_fd,
        "taylor_identity": worst_taylor,
    }
    passed = fixed == 0.0 and worst_fd <= 1e-6 * cfg.tol_scale and worst_taylor <= 1e-9
    return measured, 1e-6 * cfg.tol_scale, passed


def chk_slf_ext(cfg, rng):
    unit_i = UnitImaginary((1.0, 0.0, 0.0))
    xs = np.linspace(-0.9, 0.9, 7)
    ys = np.linspace(-0.8, 0.8, 9)  # symmetric about 0
    nodes = np.array([complex(a, b) for a in xs for b in ys])
    # constant extension
    const_samples = SliceSamples(unit_i, nodes, [Quaternion(2.0, 0, 1.0, 0)] * nodes.size)
    ev = ext_left(const_samples)
    fixed = (ev(Quaternion(0.3, 0.0, 0.4, 0.0)) - Quaternion(2.0, 0, 1.0, 0)).norm()
    # z -> b z extends to x -> x b (not b x)
    b = embed_complex(complex(0.3, 1.4), unit_i)
    vals = [embed_complex(complex(0.3, 1.4) * complex(z), unit_i) for z in nodes]
    ev_b = ext_left(SliceSamples(unit_i, nodes, vals))
    worst_xb = worst_poly = 0.0
    bx_differs = False
    for a in xs:
        for c in ys[ys > 0.2]:
            q = Quaternion(a, 0.0, 0.0, 0.0) + E2.scale(c)  # off the e1-plane, on-grid slice coords
            got = ev_b(q)
            worst_xb = max(worst_xb, (got - q * b).norm())
            if (got - b * q).norm() > 1e-6:
                bx_differs = True
    # polynomial samples match the direct evaluation off-plane
    f = _rand_poly(rng, 4)
    vals_f = [f.eval(embed_complex(complex(z), unit_i)) for z in nodes]
    ev_f = ext_left(SliceSamples(unit_i, nodes, vals_f))
    for a in xs[:4]:
        for c in ys[ys > 0.2][:3]:
            q = Quaternion(a, 0.0, 0.0, 0.0) + E3.scale(c)
            worst_poly = max(worst_poly, (ev_f(q) - f.eval(q)).norm() / max(1.0, f.eval(q).norm()))
    asym_rejected = False
    try:
        SliceSamples(unit_i, np.array([0.1 + 0.2j]), [ONE])
    except ValueError:
        asym_rejected = True
    measured = {
        "constant": fixed,
        "xb_agreement": worst_xb,
        "left_not_right": bx_differs,
        "polynomial_agreement": worst_poly,
        "asymmetric_grid_rejected": asym_rejected,
    }
    bound = 1e-11 * cfg.tol_scale
    passed = (
        fixed <= 1e-14
        and worst_xb <= bound
        and bx_differs
        and worst_poly <= bound
        and asym_rejected
    )
    return measured, bound, passed


def chk_slf_intrinsic(cfg, rng):
    ok = is_intrinsic(LeftSlicePoly([Quaternion.from_real(-3.0), Quaternion(), ONE]))
    ok = ok and not is_intrinsic(LeftSlicePoly([Quaternion(), E1]))
    worst_cr = 0.0
    for _ in range(10):
        fr = LeftSlicePoly([Quaternion.from_real(c) for c in rng.standard_normal(4)])
        g = _rand_poly(rng, 3)
        prod = poly_product(fr, g)
        for _ in range(5):
            q = _quat_from_array(random_quaternions(rng, ())).scale(0.5)
            if slice_decompose(q).x1 < 1e-3:
                continue
            # pointwise product equals the coefficient product for intrinsic left factor
            dev = (prod.eval(q) - fr.eval(q) * g.eval(q)).norm()
            worst_cr = max(worst_cr, dev)
            worst_cr = max(worst_cr, cr_residual_left(prod.eval, q))
    measured = {"detection_ok": ok, "product_closure_cr": worst_cr}
    bound = 1e-6 * cfg.tol_scale
    return measured, bound, ok and worst_cr <= bound


# ======================================================================
# bergman suite
# ======================================================================


def chk_brg_kernel(cfg, rng):
    worst_k0 = worst_plane = worst_repfo = worst_sym = 0.0
    for alpha in cfg.alphas:
        space = bg.BergmanSpace(alpha, 8, quad=(32, 32))
        for _ in range(20):
            q = _rand_ball(rng, 0.9)
            worst_k0 = max(worst_k0, (bg.bergman_kernel(space, q, Quaternion()) - ONE).norm())
        unit_i = UnitImaginary((1.0, 0.0, 0.0))
        for _ in range(30):
            z, w = _rand_disk(rng), _rand_disk(rng)
            kq = bg.bergman_kernel(space, embed_complex(z, unit_i), embed_complex(w, unit_i))
            ref = (1.0 - z * np.conj(w)) ** (-(2.0 + alpha))
            worst_plane = max(worst_plane, (kq - embed_complex(complex(ref), unit_i)).norm())
            kwz = bg.bergman_kernel(space, embed_complex(w, unit_i), embed_complex(z, unit_i))
            worst_sym = max(worst_sym, (kq - kwz.conj()).norm())
        for _ in range(30):
            # off-plane: the kernel equals its representation-formula extension
            q = _rand_ball(rng, 0.75)
            w = _rand_ball(rng, 0.6)
            pt = slice_decompose(q)
            xi = embed_complex(complex(pt.x0, pt.x1), unit_i)
            k_xi = bg.bergman_kernel(space, xi, w)
            k_xbar = bg.bergman_kernel(space, xi.conj(), w)
            rec = representation_formula(k_xi, k_xbar, unit_i, pt)
            direct = bg.bergman_kernel(space, q, w)
            worst_repfo = max(worst_repfo, (rec - direct).norm() / max(1.0, direct.norm()))
    # slice regularity by finite differences
    space0 = bg.BergmanSpace(0.5, 8, quad=(32, 32))
    w0 = Quaternion(0.2, 0.1, -0.3, 0.05)
    q0 = Quaternion(0.1, -0.2, 0.15, 0.3)
    worst_cr = cr_residual_left(lambda q: bg.bergman_kernel(space0, q, w0), q0)
    worst_cr = max(
        worst_cr,
        cr_residual_right(lambda v: bg.bergman_kernel(space0, q0, v.conj()), w0),
    )
    measured = {
        "kernel_at_zero": worst_k0,
        "in_plane_agreement": worst_plane,
        "symmetry": worst_sym,
        "repfo_extension": worst_repfo,
        "cr_residual": worst_cr,
    }
    passed = (
        worst_k0 == 0.0
        and worst_plane <= 1e-12 * cfg.tol_scale
        and worst_sym <= 1e-12
        and worst_repfo <= 1e-10 * cfg.tol_scale
        and worst_cr <= 1e-6
    )
    return measured, 1e-10 * cfg.tol_scale, passed


def chk_brg_basis(cfg, rng):
    worst_gram = worst_weights = 0.0
    for alpha in cfg.alphas:
        space = bg.BergmanSpace(alpha, min(cfg.degree, 16), quad=cfg.quad)
        n = np.arange(space.dim)
        vals = np.sqrt(space.basis_weights)[None, :] * space.nodes[:, None] ** n[None, :]
        gram = np.einsum("km,kn,k->mn", np.conj(vals), vals, space.weights_dA)
        worst_gram = max(worst_gram, float(np.abs(gram - np.eye(space.dim)).max()))
        # weights against the radial moment integrals done by quadrature
        moments = np.einsum("k,kn->n", space.weights_dA, np.abs(space.nodes[:, None] ** n) ** 2)
        worst_weights = max(
            worst_weights, float(np.abs(moments * space.basis_weights - 1.0).max())
        )
    measured = {"gram_deviation": worst_gram, "moment_weights": worst_weights}
    bound = 1e-10 * cfg.tol_scale
    worst = max(worst_gram, worst_weights)
    return measured, bound, worst <= bound


def chk_brg_reproducing(cfg, rng):
    worst = 0.0
    for alpha in cfg.alphas:
        space = bg.BergmanSpace(alpha, cfg.degree, quad=(16, 16))
        for _ in range(40):
            coeffs = rng.standard_normal(space.dim) + 1j * rng.standard_normal(space.dim)
            z = _rand_disk(rng, 0.9)
            u = space.raw_coeffs(z)
            reproduced = complex(np.vdot(u, coeffs))
            direct = space.eval_poly(coeffs, z)
            worst = max(worst, abs(reproduced - direct) / max(1.0, abs(direct)))
    bound = 1e-12 * cfg.tol_scale
    return {"worst_relative": worst}, bound, worst <= bound


def chk_brg_normalized(cfg, rng):
    space = bg.BergmanSpace(0.0, 64, quad=(16, 16))
    worst_unit = worst_ratio = 0.0
    for _ in range(50):
        z, w = _rand_disk(rng), _rand_disk(rng)
        cz = bg.normalized_kernel_coeffs(space, z)
        cw = bg.normalized_kernel_coeffs(space, w)
        worst_unit = max(worst_unit, abs(np.linalg.norm(cz) - 1.0))
        overlap = complex(np.vdot(cw, cz))
        closed = space.kernel_closed(w, z) / math.sqrt(
            abs(space.kernel_closed(z, z)) * abs(space.kernel_closed(w, w))
        )
        worst_ratio = max(worst_ratio, abs(overlap - closed))
    c0 = bg.normalized_kernel_coeffs(space, 0.0)
    e0_dev = float(np.abs(c0 - np.eye(space.dim)[0]).max())
    measured = {
        "unit_norm": worst_unit,
        "overlap_vs_closed_form": worst_ratio,
        "k0_is_e0": e0_dev,
    }
    passed = worst_unit <= 1e-12 and worst_ratio <= 1e-8 * cfg.tol_scale and e0_dev == 0.0
    return measured, 1e-8 * cfg.tol_scale, passed


def chk_brg_berezin_props(cfg, rng):
    worst = 0.0
    flags = True
    for alpha in (0.0, 1.0):
        space = bg.BergmanSpace(alpha, 12, quad=(16, 16))
        d = space.dim
        ident = bg.BergOperator.identity(space)
        for _ in range(20):
            z = _rand_disk(rng)
            worst = max(worst, abs(bg.berezin(space, ident, z).value - 1.0))
            g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            herm = g + g.conj().T
            v = bg.berezin(space, herm, z).value
            worst = max(worst, abs(v.imag))  # selfadjoint -> real
            pos = g.conj().T @ g
            flags = flags and bg.berezin(space, pos, z).value.real >= -1e-12
            vadj = bg.berezin(space, g.conj().T, z).value
            vz = bg.berezin(space, g, z).value
            worst = max(worst, abs(vadj - np.conj(vz)))
            flags = flags and abs(vz) <= clinalg.opnorm(g) + 1e-10
            a = complex(rng.standard_normal(), rng.standard_normal())
            worst = max(worst, abs(bg.berezin(space, a * g, z).value - a * vz))
        jop = bg.BergOperator.j_operator(space)
        z = _rand_disk(rng)
        worst = max(worst, abs(bg.berezin(space, jop, z).value - 1j))
        # P_0 transform: embedded form is exact, truncated agrees at high degree
        p0 = bg.projection_pz(space, 0.0)
        fat = bg.BergmanSpace(alpha, 64, quad=(16, 16))
        p0f = bg.projection_pz(fat, 0.0)
        for _ in range(10):
            z = _rand_disk(rng)
            expect = (1.0 - abs(z) ** 2) ** (2.0 + alpha)
            emb = bg.berezin(space, p0, z, normalization="embedded").value
            worst = max(worst, abs(emb - expect))
            trunc = bg.berezin(fat, p0f, z).value
            worst = max(worst, abs(trunc - expect))
    measured = {"worst_deviation": worst, "sign_and_contractivity": flags}
    bound = 1e-8 * cfg.tol_scale
    return measured, bound, flags and worst <= bound


def chk_brg_projection(cfg, rng):
    worst = 0.0
    flags = True
    space = bg.BergmanSpace(0.5, 16, quad=(16, 16))
    st = standard_j(space.dim)
    ctx = SchattenContext(st, 1.0)
    for _ in range(20):
        z = _rand_disk(rng)
        p = bg.projection_pz(space, z)
        worst = max(worst, abs(np.trace(p.matrix) - 1.0))
        worst = max(worst, float(np.abs(p.matrix @ p.matrix - p.matrix).max()))
        flags = flags and commutes_with_j(p.lift(), st)
        flags = flags and np.linalg.matrix_rank(p.matrix, tol=1e-10) == 1
        g = rng.standard_normal((space.dim, space.dim)) + 1j * rng.standard_normal(
            (space.dim, space.dim)
        )
        t = bg.BergOperator(g)
        lhs = bg.berezin(space, t, z).value
        rhs = ji_trace(t.lift() @ p.lift(), ctx).value
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
    p0 = bg.projection_pz(space, 0.0)
    diag = np.zeros((space.dim, space.dim), dtype=complex)
    diag[0, 0] = 1.0
    worst = max(worst, float(np.abs(p0.matrix - diag).max()))
    measured = {"worst_deviation": worst, "structure_flags": flags}
    bound = 1e-10 * cfg.tol_scale
    return measured, bound, flags and worst <= bound


def chk_brg_projection_norms(cfg, rng):
    worst = 0.0
    space = bg.BergmanSpace(0.0, cfg.degree, quad=(16, 16))
    for _ in range(100):
        z, w = _rand_disk(rng), _rand_disk(rng)
        rep = bg.projection_norm_check(space, z, w)
        worst = max(
            worst,
            abs(rep["operator_norm"] - rep["expected_operator_norm"]),
            abs(rep["trace_norm"] - rep["expected_trace_norm"]),
        )
    # worked example z = 0, w = 0.5, alpha = 0 at degree >= 32
    wide = bg.BergmanSpace(0.0, 32, quad=(16, 16))
    rep = bg.projection_norm_check(wide, 0.0, 0.5)
    ref_op = math.sqrt(1.0 - 0.5625)
    fixed = max(
        abs(rep["operator_norm"] - ref_op),
        abs(rep["trace_norm"] - 2.0 * ref_op),
        abs(abs(rep["overlap"]) ** 2 - 0.5625),
    )
    same = bg.projection_norm_check(space, 0.3 + 0.2j, 0.3 + 0.2j)
    fixed = max(fixed, same["operator_norm"], same["trace_norm"])
    measured = {"worst_formula_gap": worst, "fixed_cases": fixed}
    bound = 1e-9 * cfg.tol_scale
    return measured, bound, worst <= bound and fixed <= 1e-9


def chk_brg_trace_integral(cfg, rng):
    worst = 0.0
    alphas = (0.0, 0.5, 1.0, 2.0)
    for alpha in alphas:
        space = bg.BergmanSpace(alpha, cfg.degree, quad=cfg.quad)
        zs = [_rand_disk(rng) for _ in range(3)]
        m = np.zeros((space.dim, space.dim), dtype=complex)
        for z in zs:
            m += float(rng.uniform(0.2, 2.0)) * bg.projection_pz(space, z).matrix
        rep = bg.trace_integral_check(space, m)
        worst = max(worst, rep["relative_error"])
        # scaling linearity: T = c P_z
        pz = bg.projection_pz(space, zs[0]).matrix
        rep_c = bg.trace_integral_check(space, 2.5 * pz)
        worst = max(worst, rep_c["relative_error"], abs(rep_c["lhs"] - 2.5))
        # P_0 closed-form radial integral equals 1 = Tr(P_0)
        rep0 = bg.trace_integral_check(space, bg.projection_pz(space, 0.0).matrix)
        worst = max(worst, abs(rep0["rhs"] - 1.0), rep0["relative_error"])
    bound = 1e-6 * cfg.tol_scale
    return {"worst_relative_error": worst, "alphas": list(alphas)}, bound, worst <= bound


def chk_brg_lp_bound(cfg, rng):
    worst = -math.inf
    ok = True
    for alpha in cfg.alphas:
        space = bg.BergmanSpace(alpha, min(cfg.degree, 16), quad=cfg.quad)
        zs = [_rand_disk(rng) for _ in range(3)]
        m = np.zeros((space.dim, space.dim), dtype=complex)
        for z in zs:
            m += float(rng.uniform(0.2, 2.0)) * bg.projection_pz(space, z).matrix
        for p in (1.0, 2.0):
            rep = bg.berezin_lp_check(space, m, p)
            ok = ok and rep["passed"]
            worst = max(worst, rep["integral"] - rep["bound"])
        # p = 1 reduces to the trace-integral identity
        rep1 = bg.berezin_lp_check(space, m, 1.0)
        tr = bg.trace_integral_check(space, m)
        ok = ok and abs(rep1["integral"] - tr["rhs"] / (space.alpha + 1.0)) <= 1e-9 * max(
            1.0, abs(rep1["integral"])
        )
    bound = 1e-6 * cfg.tol_scale
    return {"worst_excess": worst}, bound, ok and worst <= bound


def chk_brg_metrics(cfg, rng):
    fixed = max(
        abs(bg.pseudo_hyperbolic(0.3 + 0.1j, 0.3 + 0.1j)),
        abs(bg.bergman_metric(0.3 + 0.1j, 0.3 + 0.1j)),
        abs(bg.pseudo_hyperbolic(0.0, 0.37 - 0.11j) - abs(0.37 - 0.11j)),
        abs(bg.pseudo_hyperbolic(0.5, -0.5) - 0.8),
        abs(bg.bergman_metric(0.5, -0.5) - 0.5 * math.log(9.0)),
    )
    ok = True
    for _ in range(100):
        z, w = _rand_disk(rng, 0.95), _rand_disk(rng, 0.95)
        rho = bg.pseudo_hyperbolic(z, w)
        beta = bg.bergman_metric(z, w)
        ok = ok and 0.0 <= rho < 1.0 and beta >= rho - 1e-15
    return {"fixed_cases": fixed, "range_ok": ok}, 1e-12, fixed <= 1e-12 and ok


def chk_brg_lipschitz(cfg, rng):
    worst = -math.inf
    count = 0
    for alpha in (0.0, 1.0, 2.0):
        space = bg.BergmanSpace(alpha, 16, quad=(16, 16))
        d = space.dim
        for _ in range(1000):
            g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            z, w = _rand_disk(rng, 0.95), _rand_disk(rng, 0.95)
            rep = bg.lipschitz_check(space, g, z, w)
            worst = max(worst, -min(rep["slack_rho"], rep["slack_beta"]))
            count += 1
    bound = 1e-9 * cfg.tol_scale
    return {"worst_violation": worst, "samples": count}, bound, worst <= bound


def chk_brg_injectivity(cfg, rng):
    space = bg.BergmanSpace(0.0, 8, quad=(16, 16))
    d = space.dim
    worst = 0.0
    for _ in range(5):
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        rep = bg.berezin_injectivity_check(space, g, num_samples=d * d + 20)
        worst = max(worst, rep["relative_error"])
    zero = bg.berezin_injectivity_check(space, np.zeros((d, d)), num_samples=d * d + 20)
    zero_ok = zero["zero_transform"] and zero["recovered_norm"] <= 1e-6
    prj = bg.berezin_injectivity_check(space, bg.projection_pz(space, 0.3).matrix)
    worst = max(worst, prj["relative_error"])
    measured = {
        "worst_recovery_error": worst,
        "zero_recovered": zero_ok,
        "condition": prj["condition"],
    }
    bound = 1e-6 * cfg.tol_scale
    return measured, bound, worst <= bound and zero_ok


def chk_brg_density(cfg, rng):
    space = bg.BergmanSpace(0.5, 4, quad=(16, 16))
    rep = bg.density_checks(space)
    ok = rep["full_rank"] and rep["sigma_min"] > 0
    tiny = bg.BergmanSpace(0.0, 0, quad=(16, 16))
    rep0 = bg.density_checks(tiny, points=np.array([0.4 + 0.1j]))
    ok = ok and rep0["rank"] == 1
    dup_pts = np.array([0.2, 0.4, 0.4, 0.6, 0.8], dtype=complex)
    repd = bg.density_checks(space, points=dup_pts)
    ok = ok and not repd["full_rank"]
    measured = {
        "sigma_min": rep["sigma_min"],
        "duplicate_detected": not repd["full_rank"],
    }
    return measured, None, ok


# ======================================================================
# registry and runner
# ======================================================================

SUITES: dict[str, list[Check]] = {
    "quat": [
        Check("quat.algebra", "associativity, |ab| = |a||b|, conj(ab) = conj(b)conj(a), conj(q)q = |q|^2", chk_quat_algebra),
        Check("quat.mul_table", "e1 e2 = e3 and cyclic, units square to -1, anticommutation", chk_quat_mul_table),
        Check("quat.slice", "q = x0 + i_q x1 with x1 = |Im q| >= 0; real points take the default unit", chk_quat_slice),
        Check("quat.sphere", "y in [x] iff y = q^{-1} x q with |q| = 1; same-sphere is an equivalence", chk_quat_sphere),
    ],
    "qmatrix": [
        Check("qmatrix.chi_functorial", "chi(TS) = chi(T)chi(S), chi(T+S) = chi(T)+chi(S), chi(T*) = chi(T)*", chk_chi_functorial),
        Check("qmatrix.chi_inner", "C_{e1}-part of <x,y> = <iota x, iota y>; <T*x, y> = <x, Ty>", chk_chi_inner),
        Check("qmatrix.positivity", "T*T >= 0; |U| = I for unitary U; diagonal operators are normal", chk_qmatrix_positivity),
        Check("qmatrix.functions", "sqrt(T)^2 = T; (T^p)^{1/p} = T; T^2 = T T for positive T", chk_qmatrix_functions),
        Check("qmatrix.polar", "T = W P with P = |T|, W partial isometry, ker(P) killed, symmetry inherited", chk_polar),
        Check("qmatrix.qsvd", "Tx = sum u_m sigma_m <e_m, x> with orthonormal systems; chi doubles singular values", chk_qsvd),
        Check("qmatrix.eckart_young", "||T - T_k|| = sigma_{k+1} = inf over rank-k competitors", chk_eckart_young),
        Check("qmatrix.singval_ineq", "sigma_{n+m+1}(T1+T2) <= sigma_{n+1}(T1) + sigma_{m+1}(T2); product analogue", chk_singval_inequalities),
        Check("qmatrix.minmax", "sigma_{k+1} = max ||Tx|| over the orthocomplement of the top-k directions", chk_minmax),
    ],
    "sspectrum": [
        Check("sspectrum.pencil", "sigma_min(chi(Q_lambda(T))) <= 1e-8 (1 + ||T||^2) at every representative", chk_ssp_pencil),
        Check("sspectrum.axial_radius", "S-spectrum is axially symmetric, nonempty, inside the norm ball", chk_ssp_axial_radius),
        Check("sspectrum.worked_example", "sigma_S(diag(e1)) is the whole unit sphere of imaginaries", chk_ssp_worked_example),
        Check("sspectrum.resolvents", "S_L^{-1}(s,0) = s^{-1} I; S_L^{-1}(s,T) s - T S_L^{-1}(s,T) = I", chk_ssp_resolvents),
        Check("sspectrum.classification", "finite dimension: point spectrum only, right eigenvectors exist", chk_ssp_classification),
    ],
    "jstructure": [
        Check("jstructure.standard", "left multiplication by e1: J^2 = -I, canonical plus-basis", chk_jst_standard),
        Check("jstructure.conjugated", "Jx = sum e_n i <e_n, x>; Parseval; x = x1 + x2 j with x1, x2 in H_+", chk_jst_conjugated),
        Check("jstructure.res_lift", "res/lift are mutually inverse norm-preserving *-isomorphisms", chk_jst_res_lift),
        Check("jstructure.predicates", "selfadjoint/positive/normal/unitary transfer along res and lift", chk_jst_predicates),
    ],
    "schatten": [
        Check("schatten.norm_iso", "||T||_p = ||res(T)||_p; ||T||_inf = ||T||; l^p monotone on contractions", chk_sch_norm_iso),
        Check("schatten.trace", "Tr(I_n) = n; Tr(TS) = Tr(ST); trace = sum <e_n, T e_n> over the plus-basis", chk_sch_trace),
        Check("schatten.trace_invariance", "positive/selfadjoint trace-class: basis-independent trace over H^n", chk_sch_trace_invariance),
        Check("schatten.trace_counterexample", "T = diag(e1): bases {1} and {e2} give e1 and -e1", chk_sch_trace_counterexample),
        Check("schatten.unit_change", "Tr_{Jj}(T) = phi(Tr_{Ji}(T)) under z0 + i z1 -> z0 + j z1", chk_sch_unit_change),
        Check("schatten.hoelder", "|Tr(TS)| <= ||T||_p ||S||_q for conjugate exponents", chk_sch_hoelder),
        Check("schatten.duality", "||T||_p = sup |Tr(ST)| over ||S||_q = 1, achieved by the SVD optimizer", chk_sch_duality),
        Check("schatten.ideal", "S_p(J) is a two-sided ideal: ||TS||_p <= ||T||_p ||S||", chk_sch_ideal),
        Check("schatten.characterizations", "norm chain ||T||_p^p = |||T|^p||_1 = ||T*T||_{p/2}^{p/2} and basis criteria", chk_sch_characterizations),
        Check("schatten.pointwise_power", "<x, T^p x> >= <x,Tx>^p for p >= 1 and reversed for p <= 1", chk_sch_spcrit3),
    ],
    "slicefn": [
        Check("slicefn.eval", "sum x^n a_n evaluates right-linearly; complex agreement for real coefficients", chk_slf_eval),
        Check("slicefn.repfo", "f(x) = (1 - i_x i)/2 f(x_i) + (1 + i_x i)/2 f(conj(x_i))", chk_slf_repfo),
        Check("slicefn.split", "f_i = f1 + f2 j with holomorphic complex components", chk_slf_split),
        Check("slicefn.derivative", "slice derivative = d/dx0 = coefficient shift; Taylor series at real centers", chk_slf_derivative),
        Check("slicefn.ext", "unique left extension from symmetric plane samples; z b extends to x -> x b", chk_slf_ext),
        Check("slicefn.intrinsic", "real coefficients iff intrinsic; intrinsic products preserve slice regularity", chk_slf_intrinsic),
    ],
    "bergman": [
        Check("bergman.kernel", "K(q,0) = 1; in-plane K = (1 - z conj(w))^{-(2+alpha)}; slice-regular extension", chk_brg_kernel),
        Check("bergman.basis", "monomial weights from radial moments; quadrature Gram = identity", chk_brg_basis),
        Check("bergman.reproducing", "<K_z, f> = f(z) exactly for degree <= N", chk_brg_reproducing),
        Check("bergman.normalized", "k_z unit; <k_w, k_z> matches the closed-form ratio", chk_brg_normalized),
        Check("bergman.berezin_props", "T~ real/nonnegative/conjugated/contractive as T is; identity maps to 1", chk_brg_berezin_props),
        Check("bergman.projection", "P_z rank one, trace one, idempotent, [P_z, J] = 0, T~(z) = Tr(T P_z)", chk_brg_projection),
        Check("bergman.projection_norms", "||P_z - P_w|| = sqrt(1 - |<k_w,k_z>|^2); trace norm doubles it", chk_brg_projection_norms),
        Check("bergman.trace_integral", "sum of eigenvalues = (alpha+1) Integral T~ d mu over the disk", chk_brg_trace_integral),
        Check("bergman.lp_bound", "Integral (T~)^p d mu <= Tr(T^p)/(alpha+1) for positive T, p >= 1", chk_brg_lp_bound),
        Check("bergman.metrics", "rho = |z-w|/|1-z conj(w)|; beta = log((1+rho)/(1-rho))/2 >= rho", chk_brg_metrics),
        Check("bergman.lipschitz", "|T~(z) - T~(w)| <= 2 sqrt(2+alpha) ||T|| rho(z,w), and the beta version", chk_brg_lipschitz),
        Check("bergman.injectivity", "Berezin transform is one-to-one: samples determine the operator", chk_brg_injectivity),
        Check("bergman.density", "kernel sections at distinct points span the truncated space", chk_brg_density),
    ],
}


def suite_names() -> list[str]:
    return list(SUITES.keys()) + ["all"]


def collect_checks(suite: str) -> list[Check]:
    if suite == "all":
        return [c for cs in SUITES.values() for c in cs]
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; choose from {suite_names()}")
    return SUITES[suite]


def _execute(check: Check, cfg: SuiteConfig) -> CheckRecord:
    rng = check_rng(cfg.seed, check.check_id)
    t0 = time.perf_counter()
    try:
        measured, bound, passed = check.fn(cfg, rng)
    except Exception as exc:  # a crashed check is a failed check, not a dead run
        measured, bound, passed = {"error": f"{type(exc).__name__}: {exc}"}, None, False
    wall = (time.perf_counter() - t0) * 1000.0
    return CheckRecord(
        check_id=check.check_id,
        law=check.law,
        inputs_digest=inputs_digest(cfg, check.check_id),
        measured=measured,
        bound=bound,
        passed=bool(passed),
        wall_ms=wall,
    )


def run_checks(cfg: SuiteConfig) -> list[CheckRecord]:
    checks = collect_checks(cfg.suite)
    workers = int(os.environ.get("QSLAB_THREADS", "1") or "1")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(lambda c: _execute(c, cfg), checks))
    else:
        records = [_execute(c, cfg) for c in checks]
    return sorted(records, key=lambda r: r.check_id)


def timestamp_now() -> str:
    return datetime.now(timezone.utc).isoformat()
