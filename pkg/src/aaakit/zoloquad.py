"""Zolotarev sign and ratio problems, and quadrature from Cauchy transforms.

The sign problem (best degree-n approximation of -1 on E and +1 on F) is
attacked by the greedy fitter with the singular-vector blend weights and
then minimax refinement with damping.  The ratio problem is obtained from
the sign solution by the Moebius relation r* = sqrt(sigma) (g + rhat)/(g -
rhat) with sigma = (tau/(1+sqrt(1-tau^2)))^2 and g = (1-sigma)/(1+sigma).

Quadrature synthesis: fit the Cauchy transform of the weight function on a
closed contour, convert to partial fractions, and read nodes and weights
off the interior poles and 2 pi i times their residues.
"""

from __future__ import annotations

import csv
import json
import warnings
from dataclasses import dataclass, field

import numpy as np

from .aaa import FitOptions, fit
from .barycentric import BarycentricModel, Form, SampleSet
from .calculus import to_partial_fractions
from .errors import ConvergenceWarning, InputError
from .lawson import lawson_refine

__all__ = [
    "SignProblem",
    "RatioSolution",
    "QuadratureRule",
    "solve_sign",
    "sign_to_ratio",
    "quadrature_from_transform",
    "quadrature_error_bound",
]


@dataclass(frozen=True)
class SignProblem:
    """Approximate -1 on e_points and +1 on f_points at fixed degree."""

    e_points: np.ndarray
    f_points: np.ndarray
    degree: int

    def __post_init__(self):
        e = np.atleast_1d(np.asarray(self.e_points, dtype=complex))
        f = np.atleast_1d(np.asarray(self.f_points, dtype=complex))
        if len(e) == 0 or len(f) == 0:
            raise InputError("both sets must be nonempty")
        if np.intersect1d(e, f).size:
            raise InputError("E and F must be disjoint")
        if self.degree < 1:
            raise InputError("degree must be at least 1")
        e.setflags(write=False)
        f.setflags(write=False)
        object.__setattr__(self, "e_points", e)
        object.__setattr__(self, "f_points", f)

    def samples(self) -> SampleSet:
        pts = np.concatenate([self.e_points, self.f_points])
        vals = np.concatenate(
            [-np.ones(len(self.e_points)), np.ones(len(self.f_points))]
        ).astype(complex)
        return SampleSet(pts, vals)


@dataclass(frozen=True)
class RatioSolution:
    """Minimal-ratio rational function and the associated constants."""

    r_star: BarycentricModel
    sigma: float
    tau: float
    gamma: float

    def __post_init__(self):
        if not 0 < self.sigma < 1:
            raise InputError("sigma must lie in (0, 1)")
        tau_of_sigma = 2 * np.sqrt(self.sigma) / (1 + self.sigma)
        if abs(tau_of_sigma - self.tau) > 1e-12 * max(self.tau, 1e-300):
            raise InputError("tau and sigma violate tau = 2 sqrt(sigma)/(1+sigma)")
        gamma_of_sigma = (1 - self.sigma) / (1 + self.sigma)
        if abs(gamma_of_sigma - self.gamma) > 1e-12:
            raise InputError("gamma must equal (1-sigma)/(1+sigma)")


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes with premultiplied weights (2 pi i times the residues)."""

    nodes: np.ndarray
    weights: np.ndarray
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        nodes = np.atleast_1d(np.asarray(self.nodes, dtype=complex))
        weights = np.atleast_1d(np.asarray(self.weights, dtype=complex))
        if nodes.shape != weights.shape:
            raise InputError("nodes and weights must align")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def __len__(self) -> int:
        return len(self.nodes)

    def integrate(self, f) -> complex:
        """Apply the rule: sum of weights times f(nodes)."""
        return complex(np.sum(self.weights * f(self.nodes)))

    def to_dict(self) -> dict:
        pair = lambda a: [[float(x.real), float(x.imag)] for x in a]
        return {
            "nodes": pair(self.nodes),
            "weights": pair(self.weights),
            "provenance": self.provenance,
        }

    def save_json(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=1)
            fh.write("\n")

    def save_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["node_re", "node_im", "weight_re", "weight_im"])
            for n, w in zip(self.nodes, self.weights):
                writer.writerow([repr(n.real), repr(n.imag), repr(w.real), repr(w.imag)])


def solve_sign(
    problem: SignProblem,
    lawson_steps: int = 200,
    damping: float = 0.95,
):
    """Solve the sign problem, returning (model, tau estimate).

    Runs the greedy fitter at the fixed degree with the singular-vector
    blend weights, then minimax refinement.  tau is the best maximum error
    seen; a refinement that ends above its best iterate is flagged as
    oscillating.
    """
    samples = problem.samples()
    options = FitOptions(fixed_degree=problem.degree, sign_mode=True)
    model, _report = fit(samples, options)
    # the blend is needed inside the refinement too: two-level data
    # decouples the Lawson matrix exactly as it does the Loewner matrix
    refined, state = lawson_refine(
        samples, model, lawson_steps, damping, sign_blend=True
    )
    if state.history and state.history[-1] > 1.01 * state.best_error:
        warnings.warn(
            "Lawson refinement is oscillating; best-seen iterate returned",
            ConvergenceWarning,
            stacklevel=2,
        )
    return refined, state.best_error


def sign_to_ratio(model: BarycentricModel, tau: float) -> RatioSolution:
    """Convert a sign solution rhat with error tau to the ratio solution.

    sigma = (tau/(1+sqrt(1-tau^2)))^2, gamma = (1-sigma)/(1+sigma), and
    r* = (gamma + rhat)/(gamma - rhat), expressed directly in alpha-beta
    form over the same support points.  This normalization puts the
    extremal values at sqrt(sigma) on E and 1/sqrt(sigma) on F, so
    min_F |r*| = 1/max_E |r*| holds exactly.  Zeros and poles of r* are
    the spectral-module zeros of rhat + gamma and rhat - gamma, which is
    exactly what the returned model yields.
    """
    if not 0 < tau < 1:
        raise InputError("tau must lie in (0, 1)")
    sigma = float((tau / (1 + np.sqrt(1 - tau**2))) ** 2)
    gamma = float((1 - sigma) / (1 + sigma))
    if model.form is Form.ALPHA_BETA:
        alpha, beta = model.alpha, model.weights
    elif model.form is Form.STANDARD:
        alpha, beta = model.values * model.weights, model.weights
    else:
        raise InputError("tends-to-zero models are not sign solutions")
    new_alpha = alpha + gamma * beta
    new_beta = gamma * beta - alpha
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.where(new_beta != 0, new_alpha / np.where(new_beta == 0, 1, new_beta), np.nan)
    r_star = BarycentricModel(
        support=model.support,
        values=vals,
        weights=new_beta,
        form=Form.ALPHA_BETA,
        alpha=new_alpha,
    )
    return RatioSolution(r_star=r_star, sigma=sigma, tau=float(tau), gamma=gamma)


def quadrature_from_transform(
    transform_samples: SampleSet,
    options: FitOptions | None,
    inside,
) -> QuadratureRule:
    """Quadrature rule from samples of a Cauchy transform on a closed contour.

    Fits the samples, converts to partial fractions, keeps the poles for
    which ``inside`` is true as nodes, and takes 2 pi i times their
    residues as weights.  The constant term integrates to zero over the
    closed contour and is discarded.
    """
    model, report = fit(transform_samples, options)
    pf = to_partial_fractions(model, transform_samples)
    mask = np.asarray(inside(pf.poles), dtype=bool) if len(pf.poles) else np.zeros(0, bool)
    nodes = pf.poles[mask]
    weights = 2j * np.pi * pf.residues[mask]
    if len(nodes) == 0:
        warnings.warn("no poles inside the contour: empty quadrature rule",
                      ConvergenceWarning, stacklevel=2)
    Z = transform_samples.points
    length = float(np.sum(np.abs(np.diff(np.concatenate([Z, Z[:1]])))))
    provenance = {
        "source": "cauchy_transform_fit",
        "fit_degree": model.degree,
        "fit_residual": report.max_error,
        "contour_length": length,
        "n_contour_samples": len(Z),
        "n_poles_discarded": int(len(pf.poles) - len(nodes)),
    }
    return QuadratureRule(nodes=nodes, weights=weights, provenance=provenance)


def quadrature_error_bound(eps: float, contour_length: float, f_sup: float) -> float:
    """|I - I_n| <= eps * |Gamma| * sup|f| for transforms fit to accuracy eps."""
    if eps < 0 or contour_length < 0 or f_sup < 0:
        raise InputError("bound inputs must be nonnegative")
    return float(eps * contour_length * f_sup)
