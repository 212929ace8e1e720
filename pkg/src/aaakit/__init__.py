"""Rational approximation toolkit built on the greedy barycentric fitter.

Core workflow: build a ``SampleSet``, call ``fit`` (or one of its variants),
then interrogate the returned ``BarycentricModel`` with the spectral,
calculus, lawson, zoloquad and harmonic modules.
"""

from .aaa import FitOptions, FitReport, Termination, fit, fit_vector, solve_weights, assemble_loewner
from .barycentric import (
    BarycentricModel,
    Form,
    SampleSet,
    evaluate,
    evaluate_batch,
    value_at_infinity,
)
from .calculus import (
    PartialFractions,
    derivative,
    integrate_real_line,
    integrate_segment,
    to_partial_fractions,
)
from .errors import (
    AAAKitError,
    InputError,
    NumericalError,
    PoleAtInfinityError,
    PoleAtSupportError,
)
from .harmonic import (
    HalfPlaneSplit,
    HarmonicSolution,
    conformal_disk_map,
    hilbert_transform,
    laplace_dirichlet,
    recompress,
    riemann_hilbert_split,
    wiener_hopf_split,
)
from .lawson import LawsonState, lawson_refine, winding_number
from .spectral import (
    BranchPointEstimate,
    SpectralData,
    branch_point,
    cleanup,
    error_interpolation_points,
    hermite_potential,
    poles,
    residues,
    zeros,
)
from .variants import PeriodicModel, fit_periodic, fit_tends_to_zero
from .zoloquad import (
    QuadratureRule,
    RatioSolution,
    SignProblem,
    quadrature_error_bound,
    quadrature_from_transform,
    sign_to_ratio,
    solve_sign,
)

__version__ = "0.1.0"
