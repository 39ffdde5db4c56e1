import math

import numpy as np
import pytest

from qslab import clinalg
from qslab.jstructure import ComplexStructure, NonCommutingError, lift_ji, res_ji, standard_j
from qslab.qmatrix import (
    QMatrix,
    QVector,
    frac_power,
    opnorm,
    random_qmatrix,
    random_unitary,
    singular_values,
)
from qslab.quaternion import E1, E2, ONE, Quaternion, UnitImaginary
from qslab.schatten import (
    SchattenContext,
    characterization_suite,
    dual_norm,
    hoelder_check,
    ideal_check,
    in_schatten_class,
    ji_trace,
    schatten_norm,
    trace_basis_sweep,
    trace_unit_change,
)


def random_bj(rng, st):
    g = rng.standard_normal((st.n, st.n)) + 1j * rng.standard_normal((st.n, st.n))
    return lift_ji(g, st), g


def test_schatten_norm_basics(rng):
    assert abs(schatten_norm(QMatrix.identity(4), 2.0) - 2.0) <= 1e-13
    assert abs(schatten_norm(QMatrix.identity(5), 1.0) - 5.0) <= 1e-12
    three_e2 = QMatrix.diag_left(E2.scale(3.0), 1)
    assert abs(schatten_norm(three_e2, 1.0) - 3.0) <= 1e-13
    t = random_qmatrix(rng, 5)
    assert abs(schatten_norm(t, math.inf) - opnorm(t)) <= 1e-12
    with pytest.raises(ValueError):
        schatten_norm(t, 0.0)
    with pytest.raises(ValueError):
        schatten_norm(t, -2.0)


def test_norm_matches_restriction(rng):
    st = standard_j(5)
    t, g = random_bj(rng, st)
    sv = clinalg.svdvals(g)
    for p in (0.5, 1.0, 2.0, 3.5):
        assert abs(schatten_norm(t, p) - np.sum(sv**p) ** (1 / p)) <= 1e-10 * max(
            1.0, np.sum(sv**p) ** (1 / p)
        )
    assert in_schatten_class(t, SchattenContext(st, 2.0))
    assert not in_schatten_class(QMatrix.diag_left(E2, 5), SchattenContext(st, 2.0))


def test_ji_trace_values(rng):
    st1 = standard_j(1)
    ctx1 = SchattenContext(st1, 1.0)
    assert abs(ji_trace(QMatrix.identity(1), ctx1).value - 1.0) == 0.0
    assert abs(ji_trace(st1.j, ctx1).value - 1j) <= 1e-15
    stn = standard_j(6)
    assert abs(ji_trace(QMatrix.identity(6), SchattenContext(stn, 1.0)).value - 6.0) <= 1e-14
    # trace equals the plus-basis diagonal sum
    u = random_unitary(rng, 4)
    st = ComplexStructure(u.adjoint() @ QMatrix.diag_left(E1, 4) @ u)
    ctx = SchattenContext(st, 1.0)
    t, _ = random_bj(rng, st)
    acc = Quaternion()
    for e in st.plus_basis():
        acc = acc + e.inner(t.apply(e))
    assert (acc - ji_trace(t, ctx).as_quaternion()).norm() <= 1e-11 * max(1.0, opnorm(t))


def test_trace_cyclic_and_rejects_noncommuting(rng):
    st = standard_j(4)
    ctx = SchattenContext(st, 1.0)
    t, _ = random_bj(rng, st)
    s, _ = random_bj(rng, st)
    assert abs(ji_trace(t @ s, ctx).value - ji_trace(s @ t, ctx).value) <= 1e-10 * max(
        1.0, opnorm(t) * opnorm(s)
    )
    with pytest.raises(NonCommutingError):
        ji_trace(QMatrix.diag_left(E2, 4), ctx)


def test_trace_counterexample_exact():
    t = QMatrix.diag_left(E1, 1)
    b1 = QVector.from_quaternions([ONE])
    b2 = QVector.from_quaternions([E2])
    assert (b1.inner(t.apply(b1)) - E1).norm() == 0.0
    assert (b2.inner(t.apply(b2)) + E1).norm() == 0.0


def test_trace_basis_invariance(rng):
    st = standard_j(4)
    ctx = SchattenContext(st, 1.0)
    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    tpos = lift_ji(g.conj().T @ g, st)
    rep = trace_basis_sweep(tpos, ctx, num_bases=20, rng=rng)
    assert rep["kind"] == "positive"
    assert rep["max_deviation"] <= 1e-10 * max(1.0, rep["reference"].norm())
    tsa = lift_ji(g + g.conj().T, st)
    rep = trace_basis_sweep(tsa, ctx, num_bases=20, rng=rng)
    assert rep["kind"] == "selfadjoint"
    assert rep["max_deviation"] <= 1e-10 * max(1.0, rep["reference"].norm())
    # a non-selfadjoint operator shows genuine spread
    tj = QMatrix.diag_left(E1, 4)
    rep = trace_basis_sweep(tj, SchattenContext(standard_j(4), 1.0), num_bases=10, rng=rng)
    assert rep["spread"] > 0.5


def test_trace_unit_change(rng):
    u = random_unitary(rng, 3)
    st_i = ComplexStructure(u.adjoint() @ QMatrix.diag_left(E1, 3) @ u)
    t, _ = random_bj(rng, st_i)
    for unit in (UnitImaginary((0, 1, 0)), UnitImaginary((0, 0, 1))):
        st_j = st_i.with_unit(unit)
        rep = trace_unit_change(t, SchattenContext(st_i, 1.0), SchattenContext(st_j, 1.0))
        assert rep["passed"]
    # J itself: trace i n maps to j n
    st = standard_j(2)
    st2 = st.with_unit(UnitImaginary((0, 1, 0)))
    rep = trace_unit_change(st.j, SchattenContext(st, 1.0), SchattenContext(st2, 1.0))
    assert abs(rep["trace_i"].value - 2j) <= 1e-14
    assert (rep["trace_j"].as_quaternion() - E2.scale(2.0)).norm() <= 1e-10


def test_hoelder(rng):
    st = standard_j(5)
    ctx = SchattenContext(st, 1.0)
    t, _ = random_bj(rng, st)
    s, _ = random_bj(rng, st)
    for p, q in ((1.0, math.inf), (2.0, 2.0), (3.0, 1.5)):
        rep = hoelder_check(t, s, p, q, ctx)
        assert rep["passed"] and rep["products_in_s1"]
    eye_ctx = SchattenContext(standard_j(3), 1.0)
    rep = hoelder_check(QMatrix.identity(3), QMatrix.identity(3), 2.0, 2.0, eye_ctx)
    assert abs(rep["lhs"] - 3.0) <= 1e-13 and abs(rep["rhs"] - 3.0) <= 1e-13
    with pytest.raises(ValueError):
        hoelder_check(t, s, 2.0, 3.0, ctx)
    with pytest.raises(ValueError):
        hoelder_check(t, s, 0.5, 2.0, ctx)


def test_dual_norm(rng):
    st = standard_j(4)
    for p in (1.0, 2.0, 3.0):
        ctx = SchattenContext(st, p)
        t, _ = random_bj(rng, st)
        rep = dual_norm(t, p, ctx, num_probes=100, rng=rng)
        assert rep["probes_below"] and rep["optimizer_achieves"]
    st2 = standard_j(2)
    rep = dual_norm(QMatrix.identity(2), 1.0, SchattenContext(st2, 1.0), num_probes=10, rng=rng)
    assert abs(rep["optimizer_value"] - 2.0) <= 1e-12
    diag = lift_ji(np.diag([3.0, 1.0]).astype(complex), st2)
    rep = dual_norm(diag, 2.0, SchattenContext(st2, 2.0), num_probes=10, rng=rng)
    assert abs(rep["optimizer_value"] - math.sqrt(10.0)) <= 1e-12
    assert abs(schatten_norm(rep["optimizer"], 2.0) - 1.0) <= 1e-12
    with pytest.raises(ValueError):
        dual_norm(diag, math.inf, SchattenContext(st2, 1.0))


def test_ideal(rng):
    st = standard_j(4)
    ctx = SchattenContext(st, 2.0)
    t, _ = random_bj(rng, st)
    s, _ = random_bj(rng, st)
    rep = ideal_check(t, s, 2.0, ctx)
    assert rep["passed"]
    rep = ideal_check(t, QMatrix.identity(4), 2.0, ctx)
    assert abs(rep["norm_ts"] - schatten_norm(t, 2.0)) <= 1e-12
    # J is unitary, so J T has the same singular values as T
    assert abs(schatten_norm(st.j @ t, 2.0) - schatten_norm(t, 2.0)) <= 1e-11


def test_characterizations(rng):
    st = standard_j(4)
    t, g = random_bj(rng, st)
    for p in (0.8, 1.0, 2.0, 3.0):
        rep = characterization_suite(t, p, SchattenContext(st, p), rng=rng, num_sets=3)
        assert rep["passed"], rep
        if p == 2.0:
            assert rep["double_sum"]["equality_gap"] <= 1e-9 * max(
                1.0, rep["double_sum"]["double_sum"]
            )
    tpos = lift_ji(g.conj().T @ g, st)
    for p in (0.5, 1.5):
        rep = characterization_suite(tpos, p, SchattenContext(st, p), rng=rng, num_sets=3)
        assert rep["passed"], rep
        assert "pointwise_power" in rep


def test_norm_chain_matches_singular_values(rng):
    st = standard_j(5)
    t, _ = random_bj(rng, st)
    p = 1.7
    sv = singular_values(t)
    direct = float(np.sum(sv**p)) ** (1 / p)
    assert abs(schatten_norm(t, p) - direct) <= 1e-10 * max(1.0, direct)
    tp = frac_power(lift_ji(np.diag([4.0, 1.0, 0.25, 0.0, 9.0]).astype(complex), st), 0.5)
    assert abs(schatten_norm(tp, 1.0) - (2.0 + 1.0 + 0.5 + 0.0 + 3.0)) <= 1e-12
