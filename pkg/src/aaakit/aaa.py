"""Greedy AAA fitting: Loewner assembly, SVD weight solves, support selection.

The fitter starts from the zero function, repeatedly promotes the sample
with the largest absolute residual to a support point, and solves the
linearized least-squares problem for the barycentric weights under a unit
2-norm constraint.  It stops when the maximum residual drops below
rel_tol * max|F|, at the degree cap, or when the samples are exhausted.
"""

from __future__ import annotations

import enum
import logging
import warnings
from dataclasses import dataclass, field

import numpy as np

from .barycentric import BarycentricModel, Form, SampleSet
from .errors import DegeneracyWarning, InputError

__all__ = [
    "FitOptions",
    "FitReport",
    "Termination",
    "assemble_loewner",
    "solve_weights",
    "fit",
    "fit_vector",
]

log = logging.getLogger("aaakit.fit")

_EPS = np.finfo(float).eps


class Termination(str, enum.Enum):
    TOLERANCE_MET = "tolerance_met"
    DEGREE_CAP = "degree_cap"
    EXHAUSTED = "exhausted"


@dataclass(frozen=True)
class FitOptions:
    """Knobs for the greedy fitter.

    rel_tol is measured against max|F|.  fixed_degree runs the greedy loop
    to exactly that degree, ignoring the tolerance.  sign_mode blends all
    right singular vectors weighted by 1/sigma^2 instead of taking only the
    minimal one; column_scaling equilibrates Loewner columns before the SVD.
    lawson_steps > 0 appends minimax refinement after the greedy phase.
    """

    rel_tol: float = 1e-13
    max_degree: int = 99
    fixed_degree: int | None = None
    sign_mode: bool = False
    column_scaling: bool = False
    lawson_steps: int = 0
    damping: float = 1.0

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise InputError("rel_tol must be positive")
        if self.max_degree < 0:
            raise InputError("max_degree must be nonnegative")
        if self.fixed_degree is not None and self.fixed_degree < 0:
            raise InputError("fixed_degree must be nonnegative")
        if not 0 < self.damping <= 1:
            raise InputError("damping must lie in (0, 1]")
        if self.lawson_steps < 0:
            raise InputError("lawson_steps must be nonnegative")


@dataclass(frozen=True)
class FitReport:
    """Per-step max errors, why the loop stopped, and the final residuals."""

    history: list[float]
    termination: Termination
    residuals: np.ndarray

    @property
    def max_error(self) -> float:
        return self.history[-1] if self.history else 0.0


def assemble_loewner(samples: SampleSet, support_indices) -> np.ndarray:
    """Loewner matrix a_jk = (f_j - f_k)/(z_j - t_k).

    Rows run over the samples that are not support points, in their original
    order; columns follow the order of ``support_indices``.  Scalar sample
    sets only; the vector fitter stacks one block per component itself.
    """
    if not samples.is_scalar:
        raise InputError("assemble_loewner expects scalar samples")
    J = np.asarray(support_indices, dtype=int)
    if J.ndim != 1 or len(J) == 0:
        raise InputError("support_indices must be a nonempty index list")
    if len(np.unique(J)) != len(J):
        raise InputError("support indices must be distinct")
    if J.min() < 0 or J.max() >= samples.size:
        raise InputError("support index out of range")
    keep = np.ones(samples.size, dtype=bool)
    keep[J] = False
    Z, F = samples.points, samples.scalar_values
    return (F[keep][:, None] - F[J][None, :]) / (Z[keep][:, None] - Z[J][None, :])


def solve_weights(
    A: np.ndarray, sign_mode: bool = False, column_scaling: bool = False
) -> np.ndarray:
    """Unit-norm weight vector minimizing ||A w||_2.

    Default: the right singular vector of the smallest singular value.
    sign_mode: w = V (1/sigma^2), renormalized; exact zeros are regularized
    by eta = (eps * sigma_max)^2, and an all-zero matrix falls back to the
    uniform vector.  column_scaling scales columns to unit norm first and
    unscales the result.
    """
    A = np.atleast_2d(np.asarray(A, dtype=complex))
    rows, cols = A.shape
    if cols < 1:
        raise InputError("Loewner matrix needs at least one column")
    if rows == 0:
        return np.full(cols, 1.0 / np.sqrt(cols), dtype=complex)

    scale = np.ones(cols)
    if column_scaling:
        scale = np.linalg.norm(A, axis=0)
        scale[scale == 0] = 1.0
        A = A / scale[None, :]

    # A full V is needed when the matrix is wide: the minimizer lives in the
    # null space, which the economy factorization does not return.
    _, s, Vh = np.linalg.svd(A, full_matrices=rows < cols)
    smax = s[0] if len(s) else 0.0
    nzero = int(np.sum(s <= max(rows, cols) * _EPS * smax)) + (cols - len(s))
    if nzero > 1:
        warnings.warn(
            f"{nzero} vanishing singular values: weight vector is one of many minimizers",
            DegeneracyWarning,
            stacklevel=2,
        )

    if not sign_mode:
        w = Vh[-1].conj()
    elif smax == 0.0:
        w = np.ones(cols, dtype=complex)
    else:
        s_ext = np.zeros(cols)
        s_ext[: len(s)] = s
        eta = (_EPS * smax) ** 2
        w = Vh.conj().T @ (1.0 / (s_ext**2 + eta))

    if column_scaling:
        w = w / scale
    return w / np.linalg.norm(w)


def _validate_fit_input(samples: SampleSet) -> None:
    if samples.size < 2:
        raise InputError("fitting needs at least two sample points")
    if not np.all(np.isfinite(samples.data.view(float))):
        raise InputError("data values must all be finite")


def _greedy_loop(Z, Fmat, options):
    """Shared greedy iteration for scalar (p=1) and vector (p>1) data.

    Returns (support index list, weights, history, termination, residual
    matrix).  The residual matrix holds f - r at every sample, with zeros in
    support rows.
    """
    m, p = Fmat.shape
    fmax = np.max(np.abs(Fmat))
    tol_abs = options.rel_tol * fmax
    target = options.fixed_degree

    J: list[int] = []
    in_support = np.zeros(m, dtype=bool)
    R = Fmat.copy()  # residual against r = 0
    history: list[float] = []

    while True:
        # argmax over max-across-components; first index wins ties
        resid_mag = np.abs(R).max(axis=1)
        resid_mag[in_support] = -1.0
        j = int(np.argmax(resid_mag))
        J.append(j)
        in_support[j] = True
        n = len(J) - 1

        if not np.any(~in_support):
            # Every sample is a support point; weights are arbitrary.
            w = np.full(len(J), 1.0 / np.sqrt(len(J)), dtype=complex)
            R = np.zeros_like(Fmat)
            history.append(0.0)
            termination = Termination.EXHAUSTED
            break

        t = Z[J]
        rest = ~in_support
        C = 1.0 / (Z[rest][:, None] - t[None, :])
        blocks = [
            (Fmat[rest, i][:, None] - Fmat[J, i][None, :]) * C for i in range(p)
        ]
        A = np.vstack(blocks)
        w = solve_weights(A, options.sign_mode, options.column_scaling)

        den = (C * w[None, :]).sum(axis=1)
        R = np.zeros_like(Fmat)
        for i in range(p):
            num = (C * (Fmat[J, i] * w)[None, :]).sum(axis=1)
            R[rest, i] = Fmat[rest, i] - num / den
        maxerr = float(np.max(np.abs(R)))
        history.append(maxerr)
        log.debug("degree %d: max residual %.3e", n, maxerr)

        if target is not None:
            if n >= target:
                termination = Termination.DEGREE_CAP
                break
        elif maxerr <= tol_abs:
            termination = Termination.TOLERANCE_MET
            break
        elif n >= options.max_degree:
            termination = Termination.DEGREE_CAP
            break

    return J, w, history, termination, R


def fit(samples: SampleSet, options: FitOptions | None = None):
    """Fit a scalar sample set, returning (model, report).

    Deterministic: ties in the greedy argmax break to the lowest sample
    index.  With options.lawson_steps > 0 the greedy model is refined by
    the minimax iteration and the refined (alpha-beta) model is returned.
    """
    options = options or FitOptions()
    if not samples.is_scalar:
        raise InputError("fit expects scalar data; use fit_vector for p > 1")
    _validate_fit_input(samples)

    J, w, history, termination, R = _greedy_loop(
        samples.points, samples.data, options
    )
    model = BarycentricModel(
        support=samples.points[J], values=samples.scalar_values[J], weights=w
    )
    report = FitReport(history=history, termination=termination, residuals=R[:, 0])

    if options.lawson_steps > 0:
        from .lawson import lawson_refine

        model, _state = lawson_refine(
            samples, model, options.lawson_steps, options.damping
        )
    return model, report


def fit_vector(samples: SampleSet, options: FitOptions | None = None):
    """Fit p > 1 components with shared support points and weights.

    The Loewner matrix stacks one block per component and the greedy step
    picks the sample maximizing the error over all components.  Returns
    (list of models, report); the models differ only in their values.
    """
    options = options or FitOptions()
    if samples.is_scalar:
        raise InputError("fit_vector expects p >= 2 components; use fit")
    _validate_fit_input(samples)

    J, w, history, termination, R = _greedy_loop(
        samples.points, samples.data, options
    )
    models = [
        BarycentricModel(
            support=samples.points[J], values=samples.component(i)[J], weights=w
        )
        for i in range(samples.ncomponents)
    ]
    report = FitReport(history=history, termination=termination, residuals=R)
    return models, report
