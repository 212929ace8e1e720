"""Poles, zeros, residues and singularity diagnostics of barycentric models.

Poles and zeros come from the (n+2) x (n+2) arrowhead pencil built from the
support points and the relevant partial-fraction coefficients.  The two
infinite eigenvalues are removed by deflation: a complex Householder
similarity rotates the coefficient constraint into the first coordinate and
the bordered variable is then eliminated, leaving an ordinary n x n
eigenproblem.  When the coefficients sum to (nearly) zero that elimination
is ill posed, and the QZ generalized eigensolver with non-finite filtering
is used instead.  A magnitude filter |lambda| > 1e13 * max(1, max|t_k|)
backstops both paths.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import calculus
from .aaa import FitOptions, fit
from .barycentric import (
    BarycentricModel,
    Form,
    SampleSet,
    evaluate_batch,
    value_at_infinity,
)
from .errors import DegeneracyWarning, InputError, NumericalError

__all__ = [
    "SpectralData",
    "BranchPointEstimate",
    "poles",
    "zeros",
    "residues",
    "cleanup",
    "branch_point",
    "hermite_potential",
    "error_interpolation_points",
]

_MAGNITUDE_FILTER = 1e13
# The bordered elimination divides by |sum(coeff)|/norm(coeff); below this
# cutoff (odd/even-type fits, where one root escapes toward infinity) the
# amplification would cost digits and the QZ path takes over.
_DEFLATION_CUTOFF = 0.1


@dataclass(frozen=True)
class SpectralData:
    """Poles with aligned residues, plus zeros, of one model."""

    poles: np.ndarray
    residues: np.ndarray
    zeros: np.ndarray

    def to_dict(self) -> dict:
        pair = lambda a: [[float(x.real), float(x.imag)] for x in a]
        return {
            "poles": pair(self.poles),
            "residues": pair(self.residues),
            "zeros": pair(self.zeros),
        }


@dataclass(frozen=True)
class BranchPointEstimate:
    """Candidate branch point: location, exponent, and secondary-fit info."""

    location: complex
    exponent: complex
    fit_degree: int
    fit_residual: float


def _sort_lex(vals: np.ndarray) -> np.ndarray:
    order = np.lexsort((vals.imag, vals.real))
    return vals[order]


def _arrowhead_eigs(t: np.ndarray, coeff: np.ndarray) -> np.ndarray:
    """Finite zeros of sum_k coeff_k/(z - t_k)."""
    if np.all(coeff == 0):
        return np.zeros(0, dtype=complex)
    nb = np.linalg.norm(coeff)
    cbar = coeff.conj()

    # Householder H (Hermitian, unitary) with H cbar = -s*nb*e1.
    s = cbar[0] / abs(cbar[0]) if cbar[0] != 0 else 1.0
    v = cbar.astype(complex).copy()
    v[0] += s * nb
    v /= np.linalg.norm(v)

    def H(X):  # H @ X without forming H
        return X - 2.0 * np.outer(v, v.conj() @ X)

    h = H(np.ones((len(t), 1), dtype=complex))[:, 0]
    if abs(h[0]) >= _DEFLATION_CUTOFF:
        M = H(H(np.diag(t).astype(complex)).conj().T).conj().T
        G = M[1:, 1:] - np.outer(h[1:], M[0, 1:]) / h[0]
        lam = np.linalg.eigvals(G)
    else:
        # near-degenerate: the n-th root escapes toward infinity
        lam = _pencil_eigs_qz(t, coeff)

    keep = np.abs(lam) <= _MAGNITUDE_FILTER * max(1.0, np.max(np.abs(t)))
    return _sort_lex(lam[keep])


def _pencil_eigs_qz(t: np.ndarray, coeff: np.ndarray) -> np.ndarray:
    n1 = len(t)
    E = np.zeros((n1 + 1, n1 + 1), dtype=complex)
    E[0, 1:] = coeff
    E[1:, 0] = 1.0
    E[1:, 1:] = np.diag(t)
    B = np.eye(n1 + 1, dtype=complex)
    B[0, 0] = 0.0
    try:
        lam = scipy.linalg.eig(E, B, right=False)
    except Exception as exc:  # pragma: no cover - LAPACK failure is exotic
        raise NumericalError(
            f"generalized eigensolver failed on the pole pencil: {exc}; "
            f"support={t!r} coeff={coeff!r}"
        ) from exc
    return lam[np.isfinite(lam)]


def poles(model: BarycentricModel) -> np.ndarray:
    """Poles of the model, sorted by (Re, Im)."""
    if model.form is Form.TENDS_TO_ZERO:
        # zeros of 1 + sum b_k/(z-t_k): a plain eigenproblem, no infinite part
        lam = np.linalg.eigvals(
            np.diag(model.support) - np.outer(np.ones(len(model.support)), model.weights)
        )
        keep = np.abs(lam) <= _MAGNITUDE_FILTER * max(1.0, np.max(np.abs(model.support)))
        return _sort_lex(lam[keep])
    return _arrowhead_eigs(model.support, model.weights)


def zeros(model: BarycentricModel) -> np.ndarray:
    """Zeros of the model (zeros of its numerator sum), sorted by (Re, Im)."""
    return _arrowhead_eigs(model.support, model.numerator_weights())


def residues(model: BarycentricModel, samples: SampleSet) -> np.ndarray:
    """Residues aligned with poles(model).

    Solves the least-squares fit of the sample data by a constant plus
    simple fractions 1/(z_j - pole_k).  Sample rows colliding exactly with
    a pole are dropped (and flagged) rather than producing infinities.
    """
    pol = poles(model)
    return _residues_at(pol, samples)


def _residues_at(
    pol: np.ndarray, samples: SampleSet, constant: bool = True
) -> np.ndarray:
    if len(pol) == 0:
        return np.zeros(0, dtype=complex)
    Z = samples.points
    F = samples.scalar_values
    collide = np.isin(Z, pol)
    if np.any(collide):
        warnings.warn(
            f"{int(collide.sum())} sample point(s) coincide with a pole; "
            "those rows are excluded from the residue fit",
            DegeneracyWarning,
            stacklevel=2,
        )
        Z, F = Z[~collide], F[~collide]
    cols = [1.0 / (Z[:, None] - pol[None, :])]
    if constant:
        cols.insert(0, np.ones((len(Z), 1), dtype=complex))
    A = np.hstack(cols)
    # equilibrate: a pole hiding next to a sample point otherwise dominates
    # the column norms and poisons the lstsq truncation for every residue
    scale = np.linalg.norm(A, axis=0)
    scale[scale == 0] = 1.0
    coef, *_ = np.linalg.lstsq(A / scale[None, :], F, rcond=None)
    coef = coef / scale
    return coef[1:] if constant else coef


def cleanup(model: BarycentricModel, samples: SampleSet, residue_tol: float):
    """Drop spurious poles with negligible residues and refit.

    A pole is dropped when |residue| <= residue_tol * max|F| * dist(pole,
    samples).  If nothing is dropped the model is returned unchanged;
    otherwise the retained poles are refit by least squares and the result
    is rebuilt as an alpha-beta barycentric model.  Returns (model, removed
    poles).
    """
    if residue_tol < 0:
        raise InputError("residue_tol must be nonnegative")
    pol = poles(model)
    if len(pol) == 0:
        return model, np.zeros(0, dtype=complex)
    res = _residues_at(pol, samples)
    fmax = float(np.max(np.abs(samples.data)))
    dist = np.min(np.abs(pol[:, None] - samples.points[None, :]), axis=1)
    drop = np.abs(res) <= residue_tol * fmax * dist
    if not np.any(drop):
        return model, np.zeros(0, dtype=complex)

    kept = pol[~drop]
    F = samples.scalar_values
    if len(kept) == 0:
        const = np.mean(F)
        return (
            BarycentricModel(
                support=samples.points[:1], values=[const], weights=[1.0]
            ),
            pol,
        )

    Z = samples.points
    A = np.hstack(
        [np.ones((len(Z), 1), dtype=complex), 1.0 / (Z[:, None] - kept[None, :])]
    )
    coef, *_ = np.linalg.lstsq(A, F, rcond=None)
    pf = calculus.PartialFractions(
        constant=complex(coef[0]), poles=kept, residues=coef[1:]
    )
    rebuilt = _alpha_beta_from_partial_fractions(pf, model.support[: len(kept) + 1])
    return rebuilt, pol[drop]


def _alpha_beta_from_partial_fractions(
    pf: "calculus.PartialFractions", support: np.ndarray
) -> BarycentricModel:
    """Exact alpha-beta representation of c + sum a_k/(z - p_k).

    Needs len(support) = len(poles) + 1 distinct points, none a pole.
    beta_k = q(t_k)/l'(t_k) with q = prod(z - p_i) and l = prod(z - t_j);
    alpha_k = r(t_k) beta_k.  Numerator and denominator factors are
    interleaved to keep the products from overflowing.
    """
    t = np.asarray(support, dtype=complex)
    if len(t) != len(pf.poles) + 1:
        raise InputError("need exactly one more support point than poles")
    beta = np.empty(len(t), dtype=complex)
    for k in range(len(t)):
        others = np.delete(t, k)
        acc = 1.0 + 0j
        for pi, tj in zip(pf.poles, others):
            acc *= (t[k] - pi) / (t[k] - tj)
        beta[k] = acc
    vals = pf(t)
    return BarycentricModel(
        support=t,
        values=vals,
        weights=beta,
        form=Form.ALPHA_BETA,
        alpha=vals * beta,
    )


def branch_point(
    samples: SampleSet,
    options: FitOptions | None = None,
    residue_floor: float = 1e-8,
) -> list[BranchPointEstimate]:
    """Locate branch points of f(z) = g(z) (z - z0)^alpha from samples.

    Three steps: fit r1 to f; fit r to the logarithmic derivative
    r1'(z)/r1(z) at tolerance 1e-11; report the poles of r as candidate
    locations with their residues as candidate exponents.  Poles whose
    residues are within ``residue_floor`` of zero are dropped.
    """
    F = samples.scalar_values
    if np.any(F == 0):
        raise InputError(
            "data contains exact zeros: the logarithmic derivative is undefined"
        )
    r1, _ = fit(samples, options)
    Z = samples.points
    logder = calculus.derivative(r1, Z) / evaluate_batch(r1, Z)
    secondary, report = fit(SampleSet(Z, logder), FitOptions(rel_tol=1e-11))
    pol = poles(secondary)
    res = _residues_at(pol, SampleSet(Z, logder))
    keep = np.abs(res) > residue_floor
    return [
        BranchPointEstimate(
            location=complex(p),
            exponent=complex(a),
            fit_degree=secondary.degree,
            fit_residual=report.max_error,
        )
        for p, a in zip(pol[keep], res[keep])
    ]


def hermite_potential(interp_points, pole_points, mode: str, z):
    """log10 |phi(z)| for the Hermite-integral potential function.

    mode "classic" uses n+1 interpolation points against n poles with
    denominator exponent 1; mode "doubled" uses 2n+1 interpolation points
    with the poles squared.  Accumulation is done in log space, so large
    configurations cannot overflow.  A point hitting a pole returns +inf;
    hitting an interpolation point returns -inf.
    """
    zeta = np.atleast_1d(np.asarray(interp_points, dtype=complex))
    pol = np.atleast_1d(np.asarray(pole_points, dtype=complex))
    if mode == "classic":
        c = 1.0
        expected = len(pol) + 1
    elif mode == "doubled":
        c = 2.0
        expected = 2 * len(pol) + 1
    else:
        raise InputError("mode must be 'classic' or 'doubled'")
    if len(zeta) != expected:
        raise InputError(
            f"{mode} mode needs {expected} interpolation points for "
            f"{len(pol)} poles, got {len(zeta)}"
        )

    pts = np.atleast_1d(np.asarray(z, dtype=complex))
    out = np.empty(len(pts), dtype=float)
    for i, zz in enumerate(pts):
        dz = np.abs(zz - zeta)
        dp = np.abs(zz - pol) if len(pol) else np.ones(0)
        if len(dp) and np.any(dp == 0):
            out[i] = np.inf
        elif np.any(dz == 0):
            out[i] = -np.inf
        else:
            out[i] = np.sum(np.log10(dz)) - c * np.sum(np.log10(dp))
    return out if np.ndim(z) else float(out[0])


def error_interpolation_points(
    samples: SampleSet,
    model: BarycentricModel,
    loose_tol: float = 1e-3,
) -> np.ndarray:
    """Numerical interpolation points of f and r beyond the supports.

    Fits the residual f - r(Z) by a secondary model at a loose tolerance
    and returns its zeros.  An (essentially) exact model, or a degenerate
    secondary fit, yields an empty list.
    """
    F = samples.scalar_values
    resid = F - evaluate_batch(model, samples.points)
    fmax = float(np.max(np.abs(F)))
    if float(np.max(np.abs(resid))) <= 1e-14 * fmax:
        return np.zeros(0, dtype=complex)
    secondary, _ = fit(SampleSet(samples.points, resid), FitOptions(rel_tol=loose_tol))
    zs = zeros(secondary)
    if len(zs) == 0:
        warnings.warn(
            "secondary fit of the residual is degenerate; no interpolation points",
            DegeneracyWarning,
            stacklevel=2,
        )
    return zs
