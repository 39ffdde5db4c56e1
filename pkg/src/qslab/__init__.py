"""qslab: finite-scale numerics for quaternionic operator theory.

Quaternion and slice-coordinate arithmetic, right-linear matrices on
H^n with their complex chi-embedding, S-spectrum and S-resolvents,
complex structures with the res/lift isomorphisms, (J,p)-Schatten norms
and the Ji-trace, slice hyperholomorphic polynomials, and truncated
weighted Bergman spaces with the Berezin transform.  Every closed-form
identity has a seeded verification check; see ``qslab.suites`` and the
``qslab`` command line tool.
"""

from .quaternion import (
    Quaternion,
    UnitImaginary,
    SlicePoint,
    slice_decompose,
    same_sphere,
)
from .qmatrix import (
    QMatrix,
    QVector,
    QSvd,
    abs_op,
    adjoint,
    chi,
    frac_power,
    from_chi,
    inverse,
    is_antiselfadjoint,
    is_normal,
    is_positive,
    is_selfadjoint,
    is_unitary,
    opnorm,
    polar,
    qsvd,
    singular_values,
    sqrt_pos,
)
from .sspectrum import (
    SphereSpectrum,
    classify_spectrum,
    in_s_spectrum,
    q_pencil,
    s_resolvent_left,
    s_resolvent_right,
    s_spectrum,
)
from .jstructure import ComplexStructure, commutes_with_j, lift_ji, res_ji, standard_j
from .schatten import (
    SchattenContext,
    TraceValue,
    dual_norm,
    hoelder_check,
    ideal_check,
    ji_trace,
    schatten_norm,
    trace_basis_sweep,
    trace_unit_change,
)
from .slicefn import LeftSlicePoly, RightSlicePoly, SliceSamples, ext_left, is_intrinsic
from .bergman import (
    BergmanSpace,
    BergOperator,
    BerezinSample,
    berezin,
    bergman_kernel,
    bergman_metric,
    berezin_injectivity_check,
    berezin_lp_check,
    density_checks,
    lipschitz_check,
    normalized_kernel_coeffs,
    projection_norm_check,
    projection_pz,
    pseudo_hyperbolic,
    trace_integral_check,
)

__version__ = "0.1.0"
