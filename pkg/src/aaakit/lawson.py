"""Minimax refinement by iteratively reweighted least squares.

The support points of the input model are kept fixed and the numerator and
denominator weights (a, b) are re-solved jointly under a unit-norm
constraint from a weighted linearization of r(z_j) - f_j.  Sample weights
are updated from the error magnitudes, with optional damping, and the
iterate with the smallest maximum error seen is returned (the plain
iteration can oscillate instead of converging).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .barycentric import (
    BarycentricModel,
    Form,
    SampleSet,
    evaluate_batch,
    to_alpha_beta,
)
from .errors import InputError

__all__ = ["LawsonState", "lawson_refine", "winding_number"]

_WEIGHT_FLOOR = 1e-300
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class LawsonState:
    """Final sample weights, final iterate, and max-error history.

    ``history[k]`` is the max error after step k+1; ``best_error`` tracks
    the returned (best-seen) model, which may precede the final iterate.
    """

    weights: np.ndarray
    model: BarycentricModel
    history: list[float]
    best_error: float


def _alpha_beta_with_values(support, alpha, beta) -> BarycentricModel:
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.where(beta != 0, alpha / np.where(beta == 0, 1, beta), np.nan)
    return BarycentricModel(
        support=support, values=vals, weights=beta, form=Form.ALPHA_BETA, alpha=alpha
    )


def _min_gamma(M: np.ndarray, sign_blend: bool) -> np.ndarray:
    """Unit-norm minimizer of ||M gamma||, optionally blending all right
    singular vectors by 1/sigma^2 (needed when the rows decouple into
    blocks, as they do for two-level sign data)."""
    _, s, Vh = np.linalg.svd(M, full_matrices=M.shape[0] < M.shape[1])
    if not sign_blend:
        return Vh[-1].conj()
    smax = s[0] if len(s) else 0.0
    if smax == 0.0:
        g = np.ones(M.shape[1], dtype=complex)
    else:
        s_ext = np.zeros(M.shape[1])
        s_ext[: len(s)] = s
        g = Vh.conj().T @ (1.0 / (s_ext**2 + (_EPS * smax) ** 2))
    return g / np.linalg.norm(g)


def lawson_refine(
    samples: SampleSet,
    model: BarycentricModel,
    steps: int,
    damping: float = 1.0,
    sign_blend: bool = False,
):
    """Refine a fixed-degree model toward the minimax fit.

    Returns (best model in alpha-beta form, LawsonState).  steps = 0 just
    converts the model.  damping = 1 is the classical update w <- w |e|;
    smaller values blend toward the previous weights and converge more
    reliably.  Weights are renormalized to unit sum each step and floored
    to stay positive.  sign_blend applies the singular-vector blend in the
    inner solve, without which two-level (sign-function) data decouples.
    """
    if steps < 0:
        raise InputError("steps must be nonnegative")
    if not 0 < damping <= 1:
        raise InputError("damping must lie in (0, 1]")
    if not samples.is_scalar:
        raise InputError("lawson_refine expects scalar samples")
    if model.form is Form.TENDS_TO_ZERO:
        raise InputError("lawson refinement is not defined for tends-to-zero models")

    current = to_alpha_beta(model)
    Z = samples.points
    F = samples.scalar_values
    m = len(Z)
    t = current.support
    n1 = len(t)

    hit = np.isin(Z, t)
    hit_col = np.array(
        [int(np.nonzero(t == z)[0][0]) if h else -1 for z, h in zip(Z, hit)]
    )
    C = np.zeros((m, n1), dtype=complex)
    C[~hit] = 1.0 / (Z[~hit][:, None] - t[None, :])

    def errors(alpha, beta):
        # like evaluate_batch, but a transient zero weight at a support
        # point yields an infinite error instead of aborting the iteration
        with np.errstate(divide="ignore", invalid="ignore"):
            vals = (C @ alpha) / (C @ beta)
            at_sup = alpha[hit_col[hit]] / beta[hit_col[hit]]
        vals[hit] = at_sup
        e = np.abs(vals - F)
        return np.where(np.isnan(e), np.inf, e)

    best_err = float(np.max(errors(current.alpha, current.weights)))
    best_model = current

    w = np.full(m, 1.0 / m)
    history: list[float] = []

    for _ in range(steps):
        # rows: f_j sum b/(z_j - t) - sum a/(z_j - t); at a support point the
        # divided-difference limit leaves f_j b_k - a_k
        M = np.hstack([-C, F[:, None] * C])
        for j in np.nonzero(hit)[0]:
            k = hit_col[j]
            M[j, k] = -1.0
            M[j, n1 + k] = F[j]
        M *= np.sqrt(w)[:, None]

        gamma = _min_gamma(M, sign_blend)
        alpha, beta = gamma[:n1], gamma[n1:]

        e = errors(alpha, beta)
        emax = float(np.max(e))
        history.append(emax)
        if emax < best_err:
            best_model = _alpha_beta_with_values(t, alpha, beta)
            best_err = emax
        if emax == 0.0:
            current = _alpha_beta_with_values(t, alpha, beta)
            break
        current = _alpha_beta_with_values(t, alpha, beta)

        finite = np.isfinite(e)
        if not np.any(finite):
            break
        cap = float(np.max(e[finite]))
        e = np.where(finite, e, 10.0 * cap if cap > 0 else 1.0)
        if damping == 1.0:
            w = w * e
        else:
            w = ((1.0 - damping) + damping * e / np.max(e)) * w
        w = np.maximum(w, _WEIGHT_FLOOR)
        w = w / np.sum(w)

    state = LawsonState(weights=w, model=current, history=history, best_error=best_err)
    return best_model, state


def winding_number(error_samples) -> tuple[int, float]:
    """Winding of an error curve sampled along a closed contour.

    Unwraps the phase and divides the total change by 2 pi; returns the
    nearest integer together with the raw value.  Zero samples make the
    phase undefined and are rejected.
    """
    E = np.atleast_1d(np.asarray(error_samples, dtype=complex))
    if len(E) < 3:
        raise InputError("winding number needs at least three samples")
    if np.any(E == 0):
        raise InputError("winding number undefined: an error sample is exactly zero")
    theta = np.unwrap(np.angle(E))
    raw = float((theta[-1] - theta[0]) / (2 * np.pi))
    return int(round(raw)), raw
