"""(J, p)-Schatten classes on H^n: p-norms, Ji-trace, duality, characterizations.

The class S_p(J) consists of the operators commuting with a fixed
anti-selfadjoint unitary J whose singular values are p-summable; on H^n
compactness and summability are automatic, so membership reduces to the
commutator condition [T, J] = 0 (the verification helpers check exactly
that and nothing stronger, rather than faking a compactness condition).

The Ji-trace of T in S_1(J) is the classical trace of the restriction
res_ji(T); it equals sum_n <e_n, T e_n> over any orthonormal basis of
H_+, and for positive or selfadjoint operators over any orthonormal
basis of H^n whatsoever.  For general operators that invariance fails,
which is the reason the trace must be defined through the restriction;
``trace_basis_sweep`` makes the failure measurable.

Verification helpers return plain dicts with a ``passed`` flag plus the
measured quantities, so callers can aggregate them into reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import clinalg
from .jstructure import ComplexStructure, NonCommutingError, commutes_with_j, lift_ji, res_ji
from .qmatrix import (
    QMatrix,
    QVector,
    abs_op,
    frac_power,
    is_positive,
    is_selfadjoint,
    opnorm,
    random_onb,
    random_qvector,
    singular_values,
)
from .quaternion import Quaternion, UnitImaginary, embed_complex

__all__ = [
    "SchattenContext",
    "TraceValue",
    "schatten_norm",
    "ji_trace",
    "in_schatten_class",
    "trace_basis_sweep",
    "trace_unit_change",
    "hoelder_check",
    "dual_norm",
    "ideal_check",
    "characterization_suite",
    "plus_subspace_set",
]


@dataclass(frozen=True)
class SchattenContext:
    """A complex structure together with a summability exponent p in (0, inf]."""

    structure: ComplexStructure
    p: float = 2.0

    def __post_init__(self):
        if not (self.p > 0):
            raise ValueError("exponent p must be positive")


@dataclass(frozen=True)
class TraceValue:
    """A Ji-trace: an element z0 + i z1 of the plane C_i."""

    value: complex
    unit: UnitImaginary

    def as_quaternion(self) -> Quaternion:
        return embed_complex(self.value, self.unit)


def schatten_norm(t: QMatrix, p: float) -> float:
    """The l^p norm of the singular values of T; p = inf gives the operator norm."""
    if p == math.inf:
        return opnorm(t)
    if not (p > 0):
        raise ValueError("exponent p must be positive")
    s = singular_values(t)
    if s.size == 0:
        return 0.0
    return float(np.sum(s**p) ** (1.0 / p))


def in_schatten_class(t: QMatrix, ctx: SchattenContext, tol: float = 1e-10) -> bool:
    """Membership in S_p(J); in finite dimension this is exactly [T, J] = 0."""
    return commutes_with_j(t, ctx.structure, tol=tol)


def ji_trace(t: QMatrix, ctx: SchattenContext) -> TraceValue:
    """Tr_{Ji}(T): the classical trace of the restriction of T to H_+."""
    m = res_ji(t, ctx.structure)
    return TraceValue(complex(np.trace(m)), ctx.structure.unit)


def _basis_sum(t: QMatrix, basis: list[QVector]) -> Quaternion:
    total = Quaternion()
    for e in basis:
        total = total + e.inner(t.apply(e))
    return total


def trace_basis_sweep(
    t: QMatrix, ctx: SchattenContext, num_bases: int = 20, rng: np.random.Generator | None = None
) -> dict:
    """Evaluate sum_n <e_n, T e_n> over random orthonormal bases of H^n.

    For positive operators the sums all equal the singular value sum, and
    for selfadjoint trace-class operators they equal the Ji-trace; for a
    general operator the report simply exposes the spread.
    """
    rng = rng if rng is not None else np.random.default_rng(0)
    values = [_basis_sum(t, random_onb(rng, t.n)) for _ in range(num_bases)]
    if is_positive(t):
        reference = Quaternion.from_real(float(np.sum(singular_values(t))))
        kind = "positive"
    elif is_selfadjoint(t):
        reference = ji_trace(t, ctx).as_quaternion()
        kind = "selfadjoint"
    elif commutes_with_j(t, ctx.structure):
        reference = ji_trace(t, ctx).as_quaternion()
        kind = "general"
    else:
        reference = _basis_sum(t, [QVector.canonical(k, t.n) for k in range(t.n)])
        kind = "outside-B_J"
    max_deviation = max((v - reference).norm() for v in values)
    spread = max(
        ((v - w).norm() for v in values for w in values),
        default=0.0,
    )
    return {
        "kind": kind,
        "values": values,
        "reference": reference,
        "max_deviation": max_deviation,
        "spread": spread,
    }


def trace_unit_change(t: QMatrix, ctx_i: SchattenContext, ctx_j: SchattenContext) -> dict:
    """Compare Ji- and Jj-traces through the plane isomorphism z0 + i z1 -> z0 + j z1.

    In slice coordinates the isomorphism is the identity on (z0, z1), so
    the two traces must produce the same complex coordinates.
    """
    if ctx_i.structure.j is not ctx_j.structure.j:
        dev = opnorm(ctx_i.structure.j - ctx_j.structure.j)
        if dev > 1e-12:
            raise ValueError("contexts must share the same complex structure J")
    tr_i = ji_trace(t, ctx_i)
    tr_j = ji_trace(t, ctx_j)
    deviation = abs(tr_i.value - tr_j.value)
    return {
        "trace_i": tr_i,
        "trace_j": tr_j,
        "deviation": deviation,
        "passed": deviation <= 1e-10 * max(1.0, abs(tr_i.value)),
    }


def _conjugate_exponents(p: float, q: float, tol: float = 1e-12) -> None:
    if p < 1:
        raise ValueError("Hoelder requires p >= 1")
    inv = (0.0 if p == math.inf else 1.0 / p) + (0.0 if q == math.inf else 1.0 / q)
    if abs(inv - 1.0) > tol:
        raise ValueError(f"exponents are not conjugate: 1/{p} + 1/{q} = {inv}")


def hoelder_check(
    t: QMatrix, s: QMatrix, p: float, q: float, ctx: SchattenContext, tol: float = 1e-10
) -> dict:
    """|Tr_{Ji}(TS)| <= ||T||_p ||S||_q for conjugate exponents.

    Also confirms that TS and ST stay inside S_1(J), which on H^n is the
    commutator condition.
    """
    _conjugate_exponents(p, q)
    for name, op in (("T", t), ("S", s)):
        if not commutes_with_j(op, ctx.structure):
            raise NonCommutingError(f"{name} is not in B_J", math.nan)
    ts, st = t @ s, s @ t
    lhs = abs(ji_trace(ts, ctx).value)
    rhs = schatten_norm(t, p) * schatten_norm(s, q)
    return {
        "lhs": lhs,
        "rhs": rhs,
        "slack": rhs - lhs,
        "products_in_s1": commutes_with_j(ts, ctx.structure) and commutes_with_j(st, ctx.structure),
        "passed": rhs - lhs >= -tol,
    }


def _complex_schatten_norm(m: np.ndarray, q: float) -> float:
    s = clinalg.svdvals(m)
    if q == math.inf:
        return float(s[0]) if s.size else 0.0
    return float(np.sum(s**q) ** (1.0 / q))


def dual_norm(
    t: QMatrix,
    p: float,
    ctx: SchattenContext,
    num_probes: int = 200,
    rng: np.random.Generator | None = None,
) -> dict:
    """Realize ||T||_p as sup |Tr_{Ji}(S T)| over ||S||_q = 1.

    Random probes must never exceed the norm; the certified optimizer is
    built from the singular value decomposition of the restriction
    res_ji(T) (the construction behind the duality S_p(J)* = S_q(J)) and
    must achieve it.
    """
    if not (1 <= p < math.inf):
        raise ValueError("duality requires 1 <= p < inf")
    q = math.inf if p == 1 else p / (p - 1.0)
    rng = rng if rng is not None else np.random.default_rng(0)
    norm_p = schatten_norm(t, p)
    mt = res_ji(t, ctx.structure)
    n = ctx.structure.n

    sup_estimate = 0.0
    for _ in range(num_probes):
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        gq = _complex_schatten_norm(g, q)
        if gq == 0.0:
            continue
        s_op = lift_ji(g / gq, ctx.structure)
        sup_estimate = max(sup_estimate, abs(ji_trace(s_op @ t, ctx).value))

    u, sv, v = clinalg.svd(mt)
    if float(sv.max(initial=0.0)) == 0.0:
        g_opt = v @ u.conj().T
    elif p == 1:
        g_opt = v @ u.conj().T
    else:
        g_opt = v @ np.diag(sv ** (p - 1.0)) @ u.conj().T
        g_opt = g_opt / _complex_schatten_norm(g_opt, q)
    optimizer = lift_ji(g_opt, ctx.structure)
    optimizer_value = abs(ji_trace(optimizer @ t, ctx).value)

    return {
        "norm": norm_p,
        "sup_estimate": sup_estimate,
        "optimizer_value": optimizer_value,
        "optimizer": optimizer,
        "probes_below": sup_estimate <= norm_p + 1e-10,
        "optimizer_achieves": optimizer_value >= norm_p - 1e-8,
        "passed": (sup_estimate <= norm_p + 1e-10) and (optimizer_value >= norm_p - 1e-8),
    }


def ideal_check(t: QMatrix, s: QMatrix, p: float, ctx: SchattenContext) -> dict:
    """S_p(J) as a two-sided ideal: TS, ST stay in the class with controlled p-norm."""
    for name, op in (("T", t), ("S", s)):
        if not commutes_with_j(op, ctx.structure):
            raise NonCommutingError(f"{name} is not in B_J", math.nan)
    ts, st = t @ s, s @ t
    comm = max(
        opnorm(ts @ ctx.structure.j - ctx.structure.j @ ts),
        opnorm(st @ ctx.structure.j - ctx.structure.j @ st),
    )
    norm_t = schatten_norm(t, p)
    s_infty = opnorm(s)
    bound = norm_t * s_infty
    lhs_ts = schatten_norm(ts, p)
    lhs_st = schatten_norm(st, p)
    scale = max(1.0, bound)
    return {
        "commutator": comm,
        "norm_ts": lhs_ts,
        "norm_st": lhs_st,
        "bound": bound,
        "passed": comm <= 1e-10 * scale
        and lhs_ts <= bound + 1e-8 * scale
        and lhs_st <= bound + 1e-8 * scale,
    }


def plus_subspace_set(ctx: SchattenContext, coeffs: np.ndarray) -> list[QVector]:
    """Vectors of H_+ from complex coefficient columns over the cached basis."""
    coeffs = np.asarray(coeffs, dtype=complex)
    basis = ctx.structure.plus_basis()
    out = []
    for k in range(coeffs.shape[1]):
        x = QVector.zeros(ctx.structure.n)
        for m, e in enumerate(basis):
            x = x + e.right_mul(embed_complex(complex(coeffs[m, k]), ctx.structure.unit))
        out.append(x)
    return out


def _random_complex_onset(rng: np.random.Generator, n: int, k: int) -> np.ndarray:
    g = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
    q, _ = np.linalg.qr(g)
    return q[:, :k]


def characterization_suite(
    t: QMatrix,
    p: float,
    ctx: SchattenContext,
    rng: np.random.Generator | None = None,
    num_sets: int = 5,
    tol: float = 1e-9,
) -> dict:
    """Instantiate the p-class characterizations that apply to (T, p).

    Always checked: the norm chain
    ||T||_p^p = || |T| ||_p^p = || |T|^p ||_1 = ||T*T||_{p/2}^{p/2},
    and the diagonal bounds over the cached and random orthonormal sets
    of H_+.  The double-sum bound runs for p <= 2 (with equality at
    p = 2), the ||T e_n||^p bound for p >= 2, and the pointwise
    inequalities between <x, T^p x> and <x, T x>^p for positive T.
    """
    rng = rng if rng is not None else np.random.default_rng(0)
    if not commutes_with_j(t, ctx.structure):
        raise NonCommutingError("T is not in B_J", math.nan)
    n = ctx.structure.n
    report: dict = {"p": p}

    norm_p = schatten_norm(t, p)
    abst = abs_op(t)
    chain = np.array(
        [
            norm_p**p,
            schatten_norm(abst, p) ** p,
            schatten_norm(frac_power(abst, p), 1.0),
            schatten_norm(t.adjoint() @ t, p / 2.0) ** (p / 2.0),
        ]
    )
    chain_dev = float(np.max(np.abs(chain - chain[0])))
    chain_scale = max(1.0, float(chain[0]))
    report["norm_chain"] = {
        "values": chain.tolist(),
        "deviation": chain_dev,
        "passed": chain_dev <= tol * chain_scale,
    }

    if p >= 1:
        worst = -math.inf
        sets = [ctx.structure.plus_basis()] + [
            plus_subspace_set(ctx, _random_complex_onset(rng, n, n)) for _ in range(num_sets)
        ]
        for es in sets:
            val = sum(abs(e.inner(t.apply(e)).norm()) ** p for e in es)
            worst = max(worst, val)
        report["diagonal_sums"] = {
            "max_over_sets": worst,
            "bound": norm_p**p,
            "passed": worst <= norm_p**p + tol * max(1.0, norm_p**p),
        }

        worst2 = -math.inf
        for _ in range(num_sets):
            es = plus_subspace_set(ctx, _random_complex_onset(rng, n, n))
            ss = plus_subspace_set(ctx, _random_complex_onset(rng, n, n))
            val = sum(s.inner(t.apply(e)).norm() ** p for s, e in zip(ss, es))
            worst2 = max(worst2, val)
        report["cross_sums"] = {
            "max_over_sets": worst2,
            "bound": norm_p**p,
            "passed": worst2 <= norm_p**p + tol * max(1.0, norm_p**p),
        }

    if 0 < p <= 2:
        basis = ctx.structure.plus_basis()
        double = sum(
            ek.inner(t.apply(en)).norm() ** p for ek in basis for en in basis
        )
        entry = {
            "double_sum": double,
            "lower": norm_p**p,
            "passed": norm_p**p <= double + tol * max(1.0, double),
        }
        if p == 2:
            entry["equality_gap"] = abs(double - norm_p**2)
            entry["passed"] = entry["passed"] and entry["equality_gap"] <= tol * max(1.0, double)
        report["double_sum"] = entry

    if p >= 2:
        worst3 = -math.inf
        for _ in range(num_sets):
            es = plus_subspace_set(ctx, _random_complex_onset(rng, n, n))
            val = sum(t.apply(e).norm() ** p for e in es)
            worst3 = max(worst3, val)
        report["image_norm_sums"] = {
            "max_over_sets": worst3,
            "bound": norm_p**p,
            "passed": worst3 <= norm_p**p + tol * max(1.0, norm_p**p),
        }

    if is_positive(t):
        tp = frac_power(t, p)
        oks = []
        margin = -math.inf
        for _ in range(max(20, num_sets * 4)):
            x = random_qvector(rng, n, unit=True)
            lhs = x.inner(tp.apply(x)).re()
            rhs = x.inner(t.apply(x)).re() ** p
            gap = lhs - rhs if p >= 1 else rhs - lhs
            margin = max(margin, -gap)
            oks.append(gap >= -tol * max(1.0, abs(lhs)))
        report["pointwise_power"] = {
            "direction": ">=" if p >= 1 else "<=",
            "worst_violation": margin,
            "passed": all(oks),
        }

    report["passed"] = all(
        sub["passed"] for key, sub in report.items() if isinstance(sub, dict)
    )
    return report
