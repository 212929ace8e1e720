"""Half-plane splittings, Hilbert transform, and AAA-least-squares Laplace
solving with its conformal-map application.

The splitting operations fit the data, read off poles and residues, and
regroup the partial fractions by half-plane or by contour side.  The
Dirichlet solver fits the real boundary data to locate exterior poles,
then solves a real least-squares problem for the coefficients of
Re(constant + scaled pole terms + optional monomials); the imaginary part
comes along for free as the harmonic conjugate.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field

import numpy as np

from .aaa import FitOptions, fit
from .barycentric import BarycentricModel, SampleSet, evaluate_batch
from .calculus import PartialFractions
from .errors import DegeneracyWarning, InputError, NumericalError
from .geometry import polygon_contains
from .spectral import poles as model_poles
from .spectral import _residues_at

__all__ = [
    "HalfPlaneSplit",
    "HarmonicSolution",
    "ConformalMapReport",
    "wiener_hopf_split",
    "hilbert_transform",
    "riemann_hilbert_split",
    "laplace_dirichlet",
    "recompress",
    "conformal_disk_map",
]

_REAL_AXIS_TOL = 1e-10
_FROISSART_RESIDUE_TOL = 1e-6
_MAX_MONOMIAL_DEGREE = 5


@dataclass(frozen=True)
class HalfPlaneSplit:
    """h = f_plus + f_minus with the pole sets separated by the real axis.

    f_plus has its poles in the open lower half-plane (analytic above);
    f_minus has its poles in the open upper half-plane (analytic below).
    """

    f_plus: PartialFractions
    f_minus: PartialFractions
    residual: float

    def __post_init__(self):
        if np.any(self.f_plus.poles.imag >= 0) or np.any(self.f_minus.poles.imag <= 0):
            raise InputError("pole sets must be strictly separated by the real axis")

    def __call__(self, z):
        return self.f_plus(z) + self.f_minus(z)


def wiener_hopf_split(
    samples: SampleSet, options: FitOptions | None = None
) -> HalfPlaneSplit:
    """Additive splitting of data on a real grid into upper/lower analytic
    parts.

    Real-axis poles with negligible residues (Froissart doublets) are
    discarded with a warning; a real-axis pole carrying weight is an error.
    The default fit tolerance is 1e-10: splitting near a kink needs a few
    digits of headroom.
    """
    if np.any(samples.points.imag != 0):
        raise InputError("wiener_hopf_split expects samples on the real axis")
    options = options or FitOptions(rel_tol=1e-10)
    model, _report = fit(samples, options)
    pol = model_poles(model)
    res = _residues_at(pol, samples)
    fmax = float(np.max(np.abs(samples.data)))

    on_axis = np.abs(pol.imag) <= _REAL_AXIS_TOL * (1.0 + np.abs(pol.real))
    if np.any(on_axis):
        bad = np.abs(res[on_axis]) > _FROISSART_RESIDUE_TOL * fmax * (
            1.0 + np.abs(pol[on_axis])
        )
        if np.any(bad):
            raise NumericalError(
                f"real-axis pole(s) with non-negligible residue: "
                f"{pol[on_axis][bad]}; the data does not split cleanly"
            )
        warnings.warn(
            f"discarding {int(on_axis.sum())} real-axis Froissart pole(s)",
            DegeneracyWarning,
            stacklevel=2,
        )
        pol, res = pol[~on_axis], res[~on_axis]

    lower = pol.imag < 0
    f_plus = PartialFractions(0j, pol[lower], res[lower])
    f_minus = PartialFractions(0j, pol[~lower], res[~lower])
    split_vals = f_plus(samples.points) + f_minus(samples.points)
    residual = float(np.max(np.abs(samples.scalar_values - split_vals)))
    return HalfPlaneSplit(f_plus=f_plus, f_minus=f_minus, residual=residual)


def hilbert_transform(samples: SampleSet, options: FitOptions | None = None):
    """Harmonic conjugate v on the real line of decaying real data u.

    Returns a vectorized evaluator v(s) = 2 Im f_plus(s), where f_plus is
    the half of the Wiener-Hopf splitting analytic in the upper half-plane.
    """
    if np.any(samples.data.imag != 0):
        raise InputError("hilbert_transform expects real data")
    split = wiener_hopf_split(samples, options)

    def v(s):
        out = 2.0 * np.imag(split.f_plus(np.atleast_1d(np.asarray(s, dtype=complex))))
        return out if np.ndim(s) else float(out[0])

    return v


def riemann_hilbert_split(
    contour_samples: SampleSet,
    inside=None,
    options: FitOptions | None = None,
):
    """Additive jump splitting f_plus - f_minus = g across a closed contour.

    The fit supplies pole locations only; residues are re-solved by least
    squares without a constant term so that both parts decay at infinity.
    f_plus collects the exterior poles (analytic inside), f_minus the
    interior poles with negated residues (analytic outside, zero at
    infinity).  ``inside`` defaults to the even-odd test on the sampled
    contour polygon.
    """
    Z = contour_samples.points
    g = contour_samples.scalar_values
    model, _report = fit(contour_samples, options)
    pol = model_poles(model)
    if len(pol) == 0:
        warnings.warn("fit produced no poles; split is trivial",
                      DegeneracyWarning, stacklevel=2)
        zero = PartialFractions(0j, [], [])
        return zero, zero
    if inside is None:
        inside = lambda p: polygon_contains(p, Z)
    res = _residues_at(pol, contour_samples, constant=False)
    interior = np.asarray(inside(pol), dtype=bool)
    f_plus = PartialFractions(0j, pol[~interior], res[~interior])
    f_minus = PartialFractions(0j, pol[interior], -res[interior])
    return f_plus, f_minus


@dataclass(frozen=True)
class HarmonicSolution:
    """Re f solves the Dirichlet problem; f = u + iv is analytic inside.

    The basis columns are [1, z, ..., z^monomial_degree,
    d_k/(z-p_k), (d_k/(z-p_k))^2 ...] with per-pole scale factors
    d_k = min_j |z_j - p_k|; ``coefficients`` holds the real solution
    vector [Re c; Im c] of the stacked real/imaginary least-squares system.
    """

    poles: np.ndarray
    scales: np.ndarray
    coefficients: np.ndarray
    pole_order: int
    monomial_degree: int
    boundary_residual: float

    def _columns(self, z: np.ndarray) -> np.ndarray:
        cols = [np.ones((len(z), 1), dtype=complex)]
        for d in range(1, self.monomial_degree + 1):
            cols.append((z**d)[:, None])
        for order in range(1, self.pole_order + 1):
            if len(self.poles):
                cols.append(
                    (self.scales[None, :] / (z[:, None] - self.poles[None, :])) ** order
                )
        return np.hstack(cols)

    @property
    def complex_coefficients(self) -> np.ndarray:
        half = len(self.coefficients) // 2
        return self.coefficients[:half] + 1j * self.coefficients[half:]

    def f(self, z):
        pts = np.atleast_1d(np.asarray(z, dtype=complex))
        out = self._columns(pts) @ self.complex_coefficients
        return out if np.ndim(z) else complex(out[0])

    def u(self, z):
        return np.real(self.f(z))

    def v(self, z):
        return np.imag(self.f(z))

    def to_dict(self) -> dict:
        pair = lambda a: [[float(x.real), float(x.imag)] for x in a]
        return {
            "poles": pair(self.poles),
            "scales": [float(s) for s in self.scales],
            "coefficients": [float(c) for c in self.coefficients],
            "pole_order": self.pole_order,
            "monomial_degree": self.monomial_degree,
            "boundary_residual": self.boundary_residual,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "HarmonicSolution":
        return cls(
            poles=np.array([complex(a, b) for a, b in d["poles"]], dtype=complex),
            scales=np.asarray(d["scales"], dtype=float),
            coefficients=np.asarray(d["coefficients"], dtype=float),
            pole_order=int(d["pole_order"]),
            monomial_degree=int(d["monomial_degree"]),
            boundary_residual=float(d["boundary_residual"]),
        )

    def save(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=1)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "HarmonicSolution":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def laplace_dirichlet(
    boundary_points,
    boundary_data,
    pole_order: int = 2,
    monomial_degree: int = 0,
    options: FitOptions | None = None,
) -> HarmonicSolution:
    """Dirichlet solve on the domain traced by ``boundary_points``.

    Fits the (real) boundary data to locate poles, discards the ones inside
    the boundary polygon, and solves the real least-squares system for the
    basis coefficients.  Double poles (pole_order=2) are the default; a few
    plain monomials can be added for polynomial content.  The least-squares
    solve tolerates structurally zero columns (Im 1 = 0) via the SVD
    minimum-norm solution.
    """
    Z = np.atleast_1d(np.asarray(boundary_points, dtype=complex))
    h = np.atleast_1d(np.asarray(boundary_data, dtype=float))
    if len(Z) != len(h):
        raise InputError("boundary points and data must align")
    if pole_order not in (1, 2):
        raise InputError("pole_order must be 1 or 2")
    if not 0 <= monomial_degree <= _MAX_MONOMIAL_DEGREE:
        raise InputError(f"monomial_degree must lie in [0, {_MAX_MONOMIAL_DEGREE}]")

    options = options or FitOptions(max_degree=299)
    model, _report = fit(SampleSet(Z, h.astype(complex)), options)
    pol = model_poles(model)
    if len(pol):
        keep = ~polygon_contains(pol, Z)
        pol = pol[keep]
    if len(pol) == 0 and monomial_degree == 0:
        warnings.warn(
            "no exterior poles and no monomials: constant-only fit",
            DegeneracyWarning,
            stacklevel=2,
        )
    scales = (
        np.min(np.abs(Z[None, :] - pol[:, None]), axis=1) if len(pol) else np.zeros(0)
    )

    sol = HarmonicSolution(
        poles=pol,
        scales=scales,
        coefficients=np.zeros(2 * (1 + monomial_degree + pole_order * len(pol))),
        pole_order=pole_order,
        monomial_degree=monomial_degree,
        boundary_residual=float("nan"),
    )
    cols = sol._columns(Z)
    A = np.hstack([cols.real, -cols.imag])
    coef, *_ = np.linalg.lstsq(A, h, rcond=None)
    residual = float(np.max(np.abs(A @ coef - h)))
    return HarmonicSolution(
        poles=pol,
        scales=scales,
        coefficients=coef,
        pole_order=pole_order,
        monomial_degree=monomial_degree,
        boundary_residual=residual,
    )


def recompress(
    solution: HarmonicSolution, boundary_points, tol: float
) -> BarycentricModel:
    """Re-approximate f = u + iv on the boundary by a lower-degree model."""
    Z = np.atleast_1d(np.asarray(boundary_points, dtype=complex))
    model, _report = fit(SampleSet(Z, solution.f(Z)), FitOptions(rel_tol=tol, max_degree=299))
    return model


@dataclass(frozen=True)
class ConformalMapReport:
    forward_model: BarycentricModel
    inverse_model: BarycentricModel
    boundary_modulus_error: float
    u0: float
    solution: HarmonicSolution


def conformal_disk_map(
    boundary_points,
    compress_tol: float = 1e-10,
    options: FitOptions | None = None,
):
    """Conformal map of the domain inside ``boundary_points`` to the unit
    disk with f(0) = 0 and f'(0) > 0.

    Solves the Dirichlet problem with data -log|z|, pins the conjugate with
    v(0) = 0, and exponentiates: f(z) = z exp(u + iv).  The forward and
    inverse maps are additionally compressed to barycentric models fit in
    both directions; the returned callables use the exact exponential form
    forward (so f(0) = 0 exactly) and the compressed model backward.
    """
    Z = np.atleast_1d(np.asarray(boundary_points, dtype=complex))
    if not bool(polygon_contains(np.zeros(1, dtype=complex), Z)[0]):
        raise InputError("the origin must lie strictly inside the boundary")
    options = options or FitOptions(rel_tol=1e-10, max_degree=299)
    sol = laplace_dirichlet(Z, -np.log(np.abs(Z)), pole_order=2, options=options)
    v0 = float(np.imag(sol.f(0j)))

    def forward(z):
        pts = np.atleast_1d(np.asarray(z, dtype=complex))
        out = pts * np.exp(sol.f(pts) - 1j * v0)
        return out if np.ndim(z) else complex(out[0])

    W = forward(Z)
    fit_opts = FitOptions(rel_tol=compress_tol, max_degree=199)
    forward_model, _ = fit(SampleSet(Z, W), fit_opts)
    inverse_model, _ = fit(SampleSet(W, Z), fit_opts)

    def inverse(w):
        pts = np.atleast_1d(np.asarray(w, dtype=complex))
        out = evaluate_batch(inverse_model, pts)
        return out if np.ndim(w) else complex(out[0])

    report = ConformalMapReport(
        forward_model=forward_model,
        inverse_model=inverse_model,
        boundary_modulus_error=float(np.max(np.abs(np.abs(W) - 1.0))),
        u0=float(np.real(sol.f(0j))),
        solution=sol,
    )
    return forward, inverse, report
