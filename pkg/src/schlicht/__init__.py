"""Numerical toolkit for generator classes on the unit disk.

Builds and certifies members of the half-plane operator classes, solves
the associated Briot-Bouquet equations for extremal functions with sharp
Fekete-Szego constants, integrates the generated semigroups, and runs
randomized audits of the class inclusions.
"""

__version__ = "0.1.0"

from .series import (
    DEFAULT_ORDER,
    ConstantTermError,
    EvaluationDomainError,
    NormalizedFunction,
    TaylorSeries,
    default_order,
    evaluate,
    evaluate_many,
    tail_estimate,
)
from .functions import halfplane, identity, koebe, load_function, named_function, neglog
from .operators import (
    ClassParams,
    FSParams,
    ParameterError,
    blended_operator,
    convexity_quotient,
    f_over_z,
    fekete_szego,
    mocanu_inverse,
    mocanu_transform,
    schwarz_transform,
    starlike_quotient,
)
from .membership import (
    TOL_PASS,
    BerksonPortaDecomposition,
    DiskGrid,
    MembershipReport,
    berkson_porta,
    class_test,
    delta_audit,
    delta_region_contains,
    marx_strohhacker_audit,
    min_margin,
)
from .briot_bouquet import (
    BriotBouquetProblem,
    ExtremalResult,
    SmallDenominatorError,
    default_lambda_grid,
    equation_residual,
    extremal_alpha,
    extremal_mocanu,
    f_from_q,
    sharpness_sweep,
    solve_briot_bouquet,
)
from .semigroup import (
    DiskEscapeError,
    NotAGeneratorError,
    SemigroupTrajectory,
    StiffnessError,
    bound_audit_alpha,
    evolve,
    semigroup_property_audit,
)
from .explore import (
    HerglotzSampler,
    SchwarzSampler,
    filtration_audit,
    filtration_audit_alpha,
    fs_bound_audit,
    sample_m0beta,
    sample_malpha,
    sample_members_m0beta,
    sample_members_malpha,
    schwarz_lemma_audit,
    trial_seeds,
)
