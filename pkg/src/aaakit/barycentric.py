"""Barycentric rational models and their numerically stable evaluation.

A model is the quotient of two partial-fraction sums over shared support
points.  Three flavours are supported:

* ``Form.STANDARD``     r(z) = sum f_k b_k/(z-t_k) / sum b_k/(z-t_k)
* ``Form.ALPHA_BETA``   r(z) = sum a_k/(z-t_k)     / sum b_k/(z-t_k)
* ``Form.TENDS_TO_ZERO``r(z) = sum f_k b_k/(z-t_k) / (1 + sum b_k/(z-t_k))

The standard form interpolates f_k at t_k; the alpha-beta form takes the
value a_k/b_k there; the tends-to-zero form is structurally zero at infinity.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, PoleAtInfinityError, PoleAtSupportError

__all__ = [
    "Form",
    "BarycentricModel",
    "SampleSet",
    "evaluate",
    "evaluate_batch",
    "value_at_infinity",
    "to_alpha_beta",
]

_NORM_SLACK = 64 * np.finfo(float).eps


class Form(str, enum.Enum):
    STANDARD = "standard"
    ALPHA_BETA = "alpha_beta"
    TENDS_TO_ZERO = "tends_to_zero"


def _as_complex_vector(x, name: str) -> np.ndarray:
    a = np.atleast_1d(np.asarray(x, dtype=complex))
    if a.ndim != 1:
        raise InputError(f"{name} must be one dimensional, got shape {a.shape}")
    return a


def _check_distinct(points: np.ndarray, what: str) -> None:
    if len(np.unique(points)) != len(points):
        raise InputError(f"{what} must be pairwise distinct")


@dataclass(frozen=True)
class BarycentricModel:
    """Immutable barycentric rational function.

    Parameters
    ----------
    support : array of complex, pairwise distinct support points t_k
    values : array of complex, data values f_k at the support points
    weights : array of complex, denominator weights b_k
    form : which barycentric flavour this is
    alpha : numerator weights, required exactly for ``Form.ALPHA_BETA``

    The standard form is normalized to a unit 2-norm weight vector at
    construction; the alpha-beta form normalizes the concatenation (a, b).
    Vectors already within a few ulps of unit norm are left untouched so
    that JSON round-trips are bit exact.
    """

    support: np.ndarray
    values: np.ndarray
    weights: np.ndarray
    form: Form = Form.STANDARD
    alpha: np.ndarray | None = None

    def __post_init__(self):
        support = _as_complex_vector(self.support, "support")
        values = _as_complex_vector(self.values, "values")
        weights = _as_complex_vector(self.weights, "weights")
        form = Form(self.form)
        if not (len(support) == len(values) == len(weights)):
            raise InputError("support, values and weights must have equal length")
        if len(support) == 0:
            raise InputError("a model needs at least one support point")
        if not np.all(np.isfinite(support.view(float))):
            raise InputError("support points must be finite")
        _check_distinct(support, "support points")

        alpha = self.alpha
        if form is Form.ALPHA_BETA:
            if alpha is None:
                raise InputError("alpha-beta form requires numerator weights")
            alpha = _as_complex_vector(alpha, "alpha")
            if len(alpha) != len(weights):
                raise InputError("alpha and beta must have equal length")
            nrm = np.sqrt(np.sum(np.abs(alpha) ** 2) + np.sum(np.abs(weights) ** 2))
            if nrm == 0:
                raise InputError("alpha-beta weights cannot all be zero")
            if abs(nrm - 1.0) > _NORM_SLACK:
                alpha = alpha / nrm
                weights = weights / nrm
        else:
            if alpha is not None:
                raise InputError(f"{form.value} form takes no alpha weights")
            if form is Form.STANDARD:
                nrm = np.linalg.norm(weights)
                if nrm == 0:
                    raise InputError("weights cannot all be zero")
                if abs(nrm - 1.0) > _NORM_SLACK:
                    weights = weights / nrm

        for arr in (support, values, weights, alpha):
            if arr is not None:
                arr.setflags(write=False)
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "form", form)

    @property
    def degree(self) -> int:
        """Rational degree: n for n+1 supports, except n supports for
        the tends-to-zero form (denominator degree n there)."""
        if self.form is Form.TENDS_TO_ZERO:
            return len(self.support)
        return len(self.support) - 1

    def numerator_weights(self) -> np.ndarray:
        """Coefficients of the numerator partial-fraction sum."""
        if self.form is Form.ALPHA_BETA:
            return self.alpha
        return self.values * self.weights

    def __call__(self, z):
        if np.isscalar(z) or np.asarray(z).ndim == 0:
            return evaluate(self, complex(z))
        return evaluate_batch(self, z)

    # ---------------------------------------------------------------- JSON

    def to_dict(self) -> dict:
        d = {
            "form": self.form.value,
            "support": _pairs(self.support),
            "values": _pairs(self.values),
            "weights": _pairs(self.weights),
        }
        if self.alpha is not None:
            d["alpha"] = _pairs(self.alpha)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "BarycentricModel":
        return cls(
            support=_unpairs(d["support"]),
            values=_unpairs(d["values"]),
            weights=_unpairs(d["weights"]),
            form=Form(d["form"]),
            alpha=_unpairs(d["alpha"]) if "alpha" in d else None,
        )

    def save(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=1)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "BarycentricModel":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def _pairs(a: np.ndarray) -> list:
    return [[float(x.real), float(x.imag)] for x in a]


def _unpairs(pairs) -> np.ndarray:
    return np.array([complex(re, im) for re, im in pairs], dtype=complex)


@dataclass(frozen=True)
class SampleSet:
    """Sample points with scalar or vector data values.

    ``data`` is an m x p complex matrix; p = 1 is the scalar case and may be
    passed as a flat vector.
    """

    points: np.ndarray
    data: np.ndarray

    def __post_init__(self):
        points = _as_complex_vector(self.points, "points")
        data = np.asarray(self.data, dtype=complex)
        if data.ndim == 1:
            data = data[:, None]
        if data.ndim != 2 or data.shape[0] != len(points):
            raise InputError(
                "data must be an m x p matrix with one row per sample point"
            )
        if len(points) < 1:
            raise InputError("at least one sample point is required")
        if not np.all(np.isfinite(points.view(float))):
            raise InputError("sample points must be finite")
        _check_distinct(points, "sample points")
        points.setflags(write=False)
        data.setflags(write=False)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "data", data)

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def ncomponents(self) -> int:
        return self.data.shape[1]

    @property
    def is_scalar(self) -> bool:
        return self.data.shape[1] == 1

    def component(self, i: int) -> np.ndarray:
        return self.data[:, i]

    @property
    def scalar_values(self) -> np.ndarray:
        if not self.is_scalar:
            raise InputError("sample set has vector data; pick a component")
        return self.data[:, 0]


# ------------------------------------------------------------------ kernels


def _fraction_sums(model: BarycentricModel, z: np.ndarray):
    """Numerator and denominator sums at points z (no support hits).

    Row sums are taken with ndarray.sum so that a single point and a batch
    follow bit-identical summation order.
    """
    C = 1.0 / (z[:, None] - model.support[None, :])
    num = (C * model.numerator_weights()[None, :]).sum(axis=1)
    den = (C * model.weights[None, :]).sum(axis=1)
    if model.form is Form.TENDS_TO_ZERO:
        den = den + 1.0
    return num, den


def _value_at_support(model: BarycentricModel, k: int) -> complex:
    if model.weights[k] == 0:
        raise PoleAtSupportError(
            f"support point {model.support[k]} carries a zero weight"
        )
    if model.form is Form.ALPHA_BETA:
        return complex(model.alpha[k] / model.weights[k])
    return complex(model.values[k])


def evaluate_batch(model: BarycentricModel, points) -> np.ndarray:
    """Evaluate the model at each point; exact support hits return the
    interpolated value instead of going through the quotient."""
    z = _as_complex_vector(points, "points") if np.ndim(points) else np.asarray(
        [points], dtype=complex
    )
    if z.size == 0:
        return np.zeros(0, dtype=complex)
    if not np.all(np.isfinite(z.view(float))):
        raise InputError("evaluation points must be finite")
    out = np.empty(len(z), dtype=complex)
    hits = np.isin(z, model.support)
    free = ~hits
    if np.any(free):
        num, den = _fraction_sums(model, z[free])
        out[free] = num / den
    for i in np.nonzero(hits)[0]:
        k = int(np.nonzero(model.support == z[i])[0][0])
        out[i] = _value_at_support(model, k)
    return out


def evaluate(model: BarycentricModel, z: complex) -> complex:
    """Evaluate at a single point (same arithmetic path as evaluate_batch)."""
    return complex(evaluate_batch(model, np.asarray([z], dtype=complex))[0])


def value_at_infinity(model: BarycentricModel) -> complex:
    """Limit of r(z) as z -> infinity.

    Standard form: sum(f_k b_k)/sum(b_k); alpha-beta: sum(a_k)/sum(b_k);
    tends-to-zero: exactly 0.  A zero weight sum means r grows at infinity.
    """
    if model.form is Form.TENDS_TO_ZERO:
        return 0j
    den = np.sum(model.weights)
    if den == 0:
        raise PoleAtInfinityError("weights sum to zero: the model has a pole at infinity")
    return complex(np.sum(model.numerator_weights()) / den)


def to_alpha_beta(model: BarycentricModel) -> BarycentricModel:
    """Rewrite a standard model in alpha-beta form (a_k = f_k b_k)."""
    if model.form is Form.ALPHA_BETA:
        return model
    if model.form is not Form.STANDARD:
        raise InputError("only standard models convert to alpha-beta form")
    return BarycentricModel(
        support=model.support,
        values=model.values,
        weights=model.weights,
        form=Form.ALPHA_BETA,
        alpha=model.values * model.weights,
    )
