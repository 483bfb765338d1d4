"""Exact tropical Nevanlinna theory over the rationals.

All arithmetic is exact (``fractions.Fraction``); only the growth fits in
:func:`growth_fit` use floating point.
"""

from .errors import (
    CapExceededError,
    DegenerateError,
    DomainError,
    ParseError,
    TropError,
    TropicalDivisionError,
    WindowError,
)
from .semiring import BOTTOM, ONE, is_bottom, oplus, oslash, opow, otimes, to_value
from .plfun import (
    CriticalPoint,
    PLFunction,
    critical_points,
    infimum,
    is_entire,
    pl_add,
    pl_equal,
    pl_max,
    pl_max_many,
    pl_min,
    pl_neg,
    pl_restrict,
    pl_scale,
    pl_shift,
    pl_sub,
    pl_sum,
    plus_part,
    split_entire,
    supremum,
)
from .nevanlinna import (
    GrowthReport,
    NevSample,
    cartan_T,
    characteristic_T,
    counting_N,
    counting_N_truncated,
    counting_n,
    growth_fit,
    inf_at_poles,
    jensen_residual,
    log_derivative_ratio,
    nevanlinna_table,
    proximity,
    value_fmt_residual,
)
from .troplinalg import (
    TropMatrix,
    casoratian,
    casoratian_at,
    casoratian_matrix,
    has_live_permutation,
    is_regular,
    mat_oplus,
    mat_otimes,
    optimal_assignment,
    trop_det,
)
from .projective import (
    ProjectivePoint,
    TropCurve,
    curve_from_meromorphic,
    curve_norm,
    norm_function,
    normalize,
    reduced_check,
)
from .hypersurface import (
    PLUS_INF,
    Hypersurface,
    TropPolynomial,
    coef_norm,
    compose,
    curve_in_hypersurface,
    fmt_constant,
    fmt_residual,
    maximizing_terms,
    membership,
    monomial_basis,
    poly_eval,
    poly_power,
    proximity_hyp,
    tp1_polynomial,
    tp1_value_polynomial,
    weil,
)
from .gm import (
    Basis,
    DependenceCertificate,
    Representation,
    Verdict,
    algebraic_lift,
    combine,
    ddg,
    gm_dependent,
    nondegenerate,
    principal_coefficients,
    shortest_length,
    verify_certificate,
    verify_representation,
)
from .smt import (
    DefectReport,
    SMTInstance,
    SMTReport,
    TP1Report,
    build_instance,
    defect,
    defect_relation_check,
    l_diagnostic,
    l_functions,
    lambda_ddg,
    absorption_check,
    smt_check,
    tp1_smt_check,
    value_root_gap,
)
from .textformat import InputDocument, emit, parse, parse_grid
from .generators import ExampleSpec, e_alpha, e_beta, gen_example, random_curve, random_poly, random_rational

__version__ = "0.1.0"
