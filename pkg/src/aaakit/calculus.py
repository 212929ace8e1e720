"""Derivatives of barycentric models and integration via partial fractions.

First derivatives use the divided-difference form of the barycentric
quotient, with the dedicated limit formula at support points.  Second
derivatives use the same recursion one order up and are only defined away
from support points.  Integrals go through the partial-fraction
representation: residue calculus over the real line, and term-by-term
logarithms with continuous branch tracking on segments.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .barycentric import BarycentricModel, Form, SampleSet, evaluate_batch, value_at_infinity
from .errors import InputError, NumericalError, PoleAtSupportError
from .geometry import point_segment_distance

__all__ = [
    "PartialFractions",
    "derivative",
    "to_partial_fractions",
    "integrate_real_line",
    "integrate_segment",
]

_CLUSTER_RADIUS = 1e-8
_SEGMENT_CLEARANCE = 1e-8


@dataclass(frozen=True)
class PartialFractions:
    """r(z) = constant + sum residues_k / (z - poles_k), simple poles only."""

    constant: complex
    poles: np.ndarray
    residues: np.ndarray

    def __post_init__(self):
        pol = np.atleast_1d(np.asarray(self.poles, dtype=complex))
        res = np.atleast_1d(np.asarray(self.residues, dtype=complex))
        if pol.shape != res.shape:
            raise InputError("poles and residues must align")
        if pol.size and len(np.unique(pol)) != len(pol):
            raise InputError("poles must be distinct")
        allv = np.concatenate([pol, res, [complex(self.constant)]])
        if not np.all(np.isfinite(allv.view(float))):
            raise InputError("partial fractions entries must be finite")
        pol.setflags(write=False)
        res.setflags(write=False)
        object.__setattr__(self, "poles", pol)
        object.__setattr__(self, "residues", res)
        object.__setattr__(self, "constant", complex(self.constant))

    def __call__(self, z):
        pts = np.atleast_1d(np.asarray(z, dtype=complex))
        out = np.full(len(pts), self.constant, dtype=complex)
        if len(self.poles):
            out += (self.residues[None, :] / (pts[:, None] - self.poles[None, :])).sum(
                axis=1
            )
        return out if np.ndim(z) else complex(out[0])

    def to_dict(self) -> dict:
        pair = lambda a: [[float(x.real), float(x.imag)] for x in a]
        return {
            "constant": [self.constant.real, self.constant.imag],
            "poles": pair(self.poles),
            "residues": pair(self.residues),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PartialFractions":
        unpair = lambda ps: np.array([complex(a, b) for a, b in ps], dtype=complex)
        return cls(
            constant=complex(d["constant"][0], d["constant"][1]),
            poles=unpair(d["poles"]),
            residues=unpair(d["residues"]),
        )


def _power_sums(model: BarycentricModel, z: np.ndarray, top: int):
    """S_q = sum w/(z - t)^(q+1) for the numerator and denominator weights."""
    C = 1.0 / (z[:, None] - model.support[None, :])
    nw = model.numerator_weights()[None, :]
    dw = model.weights[None, :]
    Sn, Sd = [], []
    P = C
    for _ in range(top + 1):
        Sn.append((P * nw).sum(axis=1))
        Sd.append((P * dw).sum(axis=1))
        P = P * C
    if model.form is Form.TENDS_TO_ZERO:
        Sd[0] = Sd[0] + 1.0
    return Sn, Sd


def _derivative_at_support(model: BarycentricModel, k: int) -> complex:
    """Limit formula for r'(t_k): (Ntil b - a Dtil)/b^2 with the k-th
    partial-fraction terms split off as a/(z-t_k), b/(z-t_k)."""
    b = model.weights[k]
    if b == 0:
        raise PoleAtSupportError("derivative at a support point with zero weight")
    a = model.numerator_weights()[k]
    others = np.arange(len(model.support)) != k
    d = model.support[k] - model.support[others]
    ntil = np.sum(model.numerator_weights()[others] / d)
    dtil = np.sum(model.weights[others] / d)
    if model.form is Form.TENDS_TO_ZERO:
        dtil = dtil + 1.0
    return complex((ntil * b - a * dtil) / (b * b))


def derivative(model: BarycentricModel, z, order: int = 1):
    """First or second derivative of the model at z (scalar or array).

    The first derivative is defined everywhere except at poles; at support
    points the dedicated limit formula is used.  The second derivative is
    unsupported exactly at support points (the recursion degenerates there).
    """
    if order not in (1, 2):
        raise InputError("order must be 1 or 2")
    pts = np.atleast_1d(np.asarray(z, dtype=complex))
    if not np.all(np.isfinite(pts.view(float))):
        raise InputError("evaluation points must be finite")
    out = np.empty(len(pts), dtype=complex)
    hits = np.isin(pts, model.support)
    if order == 2 and np.any(hits):
        raise InputError("second derivative exactly at a support point is unsupported")
    free = ~hits
    if np.any(free):
        Sn, Sd = _power_sums(model, pts[free], top=order)
        r = Sn[0] / Sd[0]
        r1 = (-Sn[1] + r * Sd[1]) / Sd[0]
        if order == 1:
            out[free] = r1
        else:
            out[free] = 2.0 * (Sn[2] + r1 * Sd[1] - r * Sd[2]) / Sd[0]
    for i in np.nonzero(hits)[0]:
        k = int(np.nonzero(model.support == pts[i])[0][0])
        out[i] = _derivative_at_support(model, k)
    return out if np.ndim(z) else complex(out[0])


def to_partial_fractions(model: BarycentricModel, samples: SampleSet) -> PartialFractions:
    """Partial-fraction form: constant from the value at infinity, residues
    from the least-squares pole fit.  Clustered poles (simple-pole
    assumption violated) are rejected."""
    from . import spectral

    pol = spectral.poles(model)
    if len(pol) >= 2:
        diff = np.abs(pol[:, None] - pol[None, :])
        np.fill_diagonal(diff, np.inf)
        radius = _CLUSTER_RADIUS * max(1.0, float(np.max(np.abs(pol))))
        i, j = np.unravel_index(np.argmin(diff), diff.shape)
        if diff[i, j] < radius:
            raise NumericalError(
                f"clustered poles {pol[i]} and {pol[j]} (separation {diff[i, j]:.3e}); "
                "partial fractions assume simple poles"
            )
    const = value_at_infinity(model)
    res = spectral.residues(model, samples)
    return PartialFractions(constant=const, poles=pol, residues=res)


def integrate_real_line(pf: PartialFractions) -> complex:
    """Integral over the whole real line by residue calculus: 2 pi i times
    the sum of upper half-plane residues.  Requires a decaying function
    (negligible constant) and no poles on the axis."""
    scale = float(np.max(np.abs(pf.residues))) if len(pf.residues) else 0.0
    if abs(pf.constant) > 1e-10 * scale:
        raise NumericalError(
            f"constant term {pf.constant:.3e} is not negligible; the integral "
            "over the real line would be perturbed by 2 pi |c| at least"
        )
    if len(pf.poles) == 0:
        return 0j
    if np.any(pf.poles.imag == 0):
        raise NumericalError("pole on the real axis; the integral does not exist")
    upper = pf.poles.imag > 0
    return complex(2j * np.pi * np.sum(pf.residues[upper]))


def _log_increment(pole: complex, a: complex, b: complex) -> complex:
    """Continuous log(z - pole) change along [a, b], subdividing until each
    piece subtends less than pi/2 at the pole."""
    ratio = (b - pole) / (a - pole)
    if abs(np.angle(ratio)) < np.pi / 2:
        return complex(np.log(ratio))
    mid = (a + b) / 2.0
    return _log_increment(pole, a, mid) + _log_increment(pole, mid, b)


def integrate_segment(pf: PartialFractions, a: complex, b: complex) -> complex:
    """Integral of the partial fractions along the straight segment [a, b],
    with the logarithm branch tracked continuously.  Poles closer than
    1e-8 to the segment are rejected."""
    a, b = complex(a), complex(b)
    for p in pf.poles:
        if point_segment_distance(p, a, b) < _SEGMENT_CLEARANCE:
            raise NumericalError(
                f"pole {p} lies within {_SEGMENT_CLEARANCE} of the integration segment"
            )
    total = pf.constant * (b - a)
    for p, r in zip(pf.poles, pf.residues):
        total += r * _log_increment(p, a, b)
    return complex(total)
