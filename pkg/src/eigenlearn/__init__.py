"""eigenlearn: what trajectory fitting learns through a numerical integrator.

Fitting sampled solutions of z' = lambda*z under a fixed one-step or
linear multistep integrator does not recover lambda; it recovers a
distorted eigenvalue pinned to the integrator's stability region.  This
package computes that learned eigenvalue in closed form and by
optimization, classifies the resulting damping/rotation distortions,
maps stability regions and spurious characteristic roots, and packages
the noise and coefficient-recovery experiments as runnable recipes.
"""

from .errors import (
    DegenerateError,
    EigenlearnError,
    IterationError,
    MultiplicityError,
    NonConvergenceError,
    NyquistError,
    PoleError,
    SchemeLookupError,
    SingularStepError,
    StepSingularError,
    UnsupportedSchemeError,
    ValidationError,
)
from .fitting import (
    FitOptions,
    FitResult,
    ModeCoefficients,
    TrajectoryData,
    generate,
    minimize,
    mode_coefficients,
    objective,
    objective_lmm,
    objective_one_step,
)
from .learn import (
    LearnedEigen,
    PhaseReport,
    SignPrediction,
    convergence_order,
    learn,
    learn_lmm,
    learn_one_step,
    nyquist_ok,
    phase_error,
    predict_signs,
    richardson,
)
from .polyroot import RootSet, quadratic_roots, roots
from .schemes import (
    MultistepScheme,
    OneStepScheme,
    Polynomial,
    SchemeId,
    amplification,
    custom_lmm,
    lookup,
    rho_kappa,
)
from .stability import (
    RegionMap,
    RootClassification,
    RootCode,
    boundary_locus,
    classification_map,
    lmm_membership,
    one_step_modulus,
    re_sign_map,
    repeated_root_locus,
)

__version__ = "0.1.0"
