import numpy as np
import pytest

from qslab.jstructure import (
    ComplexStructure,
    DegenerateStructureError,
    NonCommutingError,
    commutes_with_j,
    lift_ji,
    res_ji,
    standard_j,
)
from qslab.qmatrix import (
    QMatrix,
    QVector,
    is_antiselfadjoint,
    is_normal,
    is_positive,
    is_selfadjoint,
    is_unitary,
    opnorm,
    random_qvector,
    random_unitary,
)
from qslab.quaternion import E1, E2, Quaternion, UnitImaginary


def conjugated_structure(rng, n):
    u = random_unitary(rng, n)
    return ComplexStructure(u.adjoint() @ QMatrix.diag_left(E1, n) @ u), u


def test_standard_structure():
    st = standard_j(2)
    assert (st.j.apply(QVector.canonical(0, 2)).to_quaternions()[0] - E1).norm() == 0.0
    assert opnorm(st.j @ st.j + QMatrix.identity(2)) == 0.0
    for k, e in enumerate(st.plus_basis()):
        assert (e - QVector.canonical(k, 2)).norm() == 0.0
    with pytest.raises(ValueError):
        standard_j(0)


def test_invalid_j_rejected(rng):
    with pytest.raises(DegenerateStructureError):
        ComplexStructure(QMatrix.identity(2))  # selfadjoint, not anti
    almost = QMatrix.diag_left(E1, 2).scale(1.001)  # not unitary
    with pytest.raises(DegenerateStructureError):
        ComplexStructure(almost)


def test_basis_invariants(rng):
    st, u = conjugated_structure(rng, 5)
    e = st.basis
    assert opnorm(e.adjoint() @ e - QMatrix.identity(5)) <= 1e-12
    d = QMatrix.diag_left(E1, 5)
    assert opnorm(st.j @ e - e @ d) <= 1e-11
    # basis lies in U*(C_{e1}^5)
    for en in st.plus_basis():
        img = u.apply(en)
        assert np.abs(img.c2).max() <= 1e-12


def test_j_action_and_parseval(rng):
    st, _ = conjugated_structure(rng, 4)
    x = random_qvector(rng, 4)
    acc = QVector.zeros(4)
    for e in st.plus_basis():
        acc = acc + e.right_mul(E1 * e.inner(x))
    assert (st.j.apply(x) - acc).norm() <= 1e-11 * max(1.0, x.norm())
    total = sum(e.inner(x).norm_sq() for e in st.plus_basis())
    assert abs(total - x.norm() ** 2) <= 1e-12 * max(1.0, x.norm() ** 2)


def test_plus_minus_decomposition(rng):
    st, _ = conjugated_structure(rng, 4)
    x = random_qvector(rng, 4)
    x1 = st.project_plus(x)
    x2 = (x - x1).right_mul(E2.scale(-1.0))
    assert (st.project_plus(x2) - x2).norm() <= 1e-11  # x2 lands in H_+
    assert (x1 + x2.right_mul(E2) - x).norm() <= 1e-11 * max(1.0, x.norm())


def test_res_lift_roundtrip_and_norms(rng):
    st, _ = conjugated_structure(rng, 4)
    for _ in range(10):
        m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        lifted = lift_ji(m, st)
        assert commutes_with_j(lifted, st)
        assert np.abs(res_ji(lifted, st) - m).max() <= 1e-12 * max(1.0, np.abs(m).max())
        assert abs(opnorm(lifted) - np.linalg.norm(m, 2)) <= 1e-10 * max(
            1.0, np.linalg.norm(m, 2)
        )


def test_res_lift_algebra(rng):
    st, _ = conjugated_structure(rng, 3)
    a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    b = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    la, lb = lift_ji(a, st), lift_ji(b, st)
    assert opnorm(lift_ji(a @ b, st) - la @ lb) <= 1e-11 * max(1.0, opnorm(la) * opnorm(lb))
    assert opnorm(lift_ji(a.conj().T, st) - la.adjoint()) <= 1e-11 * max(1.0, opnorm(la))
    shifted = a + 4.0 * np.eye(3)
    li = lift_ji(np.linalg.inv(shifted), st)
    assert opnorm(li @ lift_ji(shifted, st) - QMatrix.identity(3)) <= 1e-10


def test_res_of_structure_and_identity():
    st = standard_j(3)
    assert np.abs(res_ji(QMatrix.identity(3), st) - np.eye(3)).max() <= 1e-14
    assert np.abs(res_ji(st.j, st) - 1j * np.eye(3)).max() <= 1e-14
    assert opnorm(lift_ji(np.eye(3, dtype=complex), st) - QMatrix.identity(3)) <= 1e-14
    assert opnorm(lift_ji(1j * np.eye(3), st) - st.j) <= 1e-14


def test_non_commuting_rejected(rng):
    st = standard_j(2)
    bad = QMatrix.diag_left(E2, 2)  # anticommutes with J
    assert not commutes_with_j(bad, st)
    with pytest.raises(NonCommutingError) as err:
        res_ji(bad, st)
    assert err.value.commutator_norm > 0.1


def test_predicate_transfer(rng):
    st, _ = conjugated_structure(rng, 4)
    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    assert is_selfadjoint(lift_ji(g + g.conj().T, st), 1e-8)
    assert is_antiselfadjoint(lift_ji(g - g.conj().T, st), 1e-8)
    assert is_positive(lift_ji(g.conj().T @ g, st), 1e-8)
    assert is_unitary(lift_ji(np.linalg.qr(g)[0], st), 1e-8)
    diag = np.diag(rng.standard_normal(4) + 1j * rng.standard_normal(4))
    assert is_normal(lift_ji(diag, st), 1e-8)
    # and in the other direction for a known selfadjoint lift
    sa = lift_ji(g + g.conj().T, st)
    m = res_ji(sa, st)
    assert np.abs(m - m.conj().T).max() <= 1e-10


def test_unit_change_keeps_plus_space_consistent(rng):
    st, _ = conjugated_structure(rng, 3)
    st_j = st.with_unit(UnitImaginary((0.0, 1.0, 0.0)))
    dmat = QMatrix.diag_left(Quaternion(0, 0, 1, 0), 3)
    # J e = e j for the new basis
    assert opnorm(st_j.j @ st_j.basis - st_j.basis @ dmat) <= 1e-10
