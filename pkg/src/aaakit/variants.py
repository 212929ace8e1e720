"""Periodic fitting by transplantation and the zero-at-infinity fitter.

Periodic data on [0, 2pi) is transplanted to the unit circle via
z = exp(i theta), fit with the ordinary machinery, and poles are mapped
back by theta = log(pole)/i with real parts folded into [0, 2pi).

The tends-to-zero fitter runs the same greedy loop but with the
denominator pinned to 1 + sum b_k/(z - t_k), so each weight solve is an
unconstrained least-squares problem instead of an SVD.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass

import numpy as np

from .aaa import FitOptions, FitReport, Termination, fit
from .barycentric import BarycentricModel, Form, SampleSet, evaluate_batch
from .errors import DegeneracyWarning, InputError

__all__ = ["PeriodicModel", "fit_periodic", "fit_tends_to_zero"]

log = logging.getLogger("aaakit.variants")


@dataclass(frozen=True)
class PeriodicModel:
    """2pi-periodic evaluator wrapping a unit-circle barycentric model."""

    model: BarycentricModel

    def __call__(self, theta):
        z = np.exp(1j * np.asarray(theta, dtype=float))
        out = evaluate_batch(self.model, np.atleast_1d(z))
        return out if np.ndim(theta) else complex(out[0])

    def to_dict(self) -> dict:
        return {"periodic": True, "model": self.model.to_dict()}

    @classmethod
    def from_dict(cls, d: dict) -> "PeriodicModel":
        return cls(model=BarycentricModel.from_dict(d["model"]))


def fold_to_principal_strip(theta_poles: np.ndarray) -> np.ndarray:
    """Fold real parts into [0, 2pi), keeping imaginary parts."""
    re = np.mod(theta_poles.real, 2 * np.pi)
    return re + 1j * theta_poles.imag


def fit_periodic(theta_samples, values, options: FitOptions | None = None):
    """Fit 2pi-periodic data, returning (PeriodicModel, theta-plane poles).

    theta samples must be distinct mod 2pi; collisions after transplanting
    are rejected.  Poles at z = 0 (images of Im theta = +inf) are dropped
    from the theta-plane list.
    """
    theta = np.atleast_1d(np.asarray(theta_samples, dtype=float))
    z = np.exp(1j * theta)
    if len(np.unique(z)) != len(z):
        raise InputError("theta samples collide mod 2pi after transplantation")
    model, report = fit(SampleSet(z, values), options)

    from .spectral import poles as model_poles

    pol = model_poles(model)
    pol = pol[pol != 0]
    theta_poles = fold_to_principal_strip(np.log(pol) / 1j)
    order = np.lexsort((theta_poles.imag, theta_poles.real))
    return PeriodicModel(model=model), theta_poles[order]


def fit_tends_to_zero(samples: SampleSet, options: FitOptions | None = None):
    """Greedy fit constrained to r(infinity) = 0 structurally.

    The linearized problem at each step is A b = -f over the non-support
    samples (A the Loewner matrix), solved by least squares; rank-deficient
    solves take the minimum-norm solution and are flagged.  Degree counts
    the number of support points here (the denominator has degree n with n
    supports).  Decay of the data at large |z| is assumed, not enforced.
    """
    options = options or FitOptions()
    if not samples.is_scalar:
        raise InputError("fit_tends_to_zero expects scalar data")
    if samples.size < 2:
        raise InputError("fitting needs at least two sample points")
    if not np.all(np.isfinite(samples.data.view(float))):
        raise InputError("data values must all be finite")

    Z = samples.points
    F = samples.scalar_values
    m = len(Z)
    fmax = float(np.max(np.abs(F)))
    tol_abs = options.rel_tol * fmax
    target = options.fixed_degree

    J: list[int] = []
    in_support = np.zeros(m, dtype=bool)
    R = F.copy()
    history: list[float] = []
    model = None
    termination = Termination.EXHAUSTED

    while True:
        resid_mag = np.abs(R)
        resid_mag[in_support] = -1.0
        j = int(np.argmax(resid_mag))
        J.append(j)
        in_support[j] = True
        n = len(J)  # denominator degree

        rest = ~in_support
        t = Z[J]
        C = 1.0 / (Z[rest][:, None] - t[None, :])
        A = (F[rest][:, None] - F[J][None, :]) * C
        w, _res, rank, _sv = np.linalg.lstsq(A, -F[rest], rcond=None)
        if rank < len(J):
            warnings.warn(
                f"rank-deficient least squares at degree {n}; "
                "minimum-norm weights taken",
                DegeneracyWarning,
                stacklevel=2,
            )
        model = BarycentricModel(
            support=t, values=F[J], weights=w, form=Form.TENDS_TO_ZERO
        )
        den = (C * w[None, :]).sum(axis=1) + 1.0
        num = (C * (F[J] * w)[None, :]).sum(axis=1)
        R = np.zeros_like(F)
        R[rest] = F[rest] - num / den
        maxerr = float(np.max(np.abs(R)))
        history.append(maxerr)
        log.debug("tends-to-zero degree %d: max residual %.3e", n, maxerr)

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
        if m - len(J) - 1 == 0:
            # adding another support would leave no residual rows
            termination = Termination.EXHAUSTED
            break

    report = FitReport(history=history, termination=termination, residuals=R)
    return model, report
