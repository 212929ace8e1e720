"""Built-in demo recipes with fixed data and deterministic seeds.

Each demo returns an ordered dict of result keys; the CLI prints them as
key=value lines for the acceptance suite to parse.  Pseudo-random data uses
numpy's PCG64 generator with the seed stated in each docstring.
"""

from __future__ import annotations

import numpy as np

from .aaa import FitOptions, fit
from .barycentric import SampleSet, evaluate_batch
from .spectral import poles, zeros

__all__ = ["demo_catalog", "run_demo"]


def demo_equispaced() -> dict:
    """Recover an analytic function from 40 equispaced samples on [-1, 1]."""
    x = -1.0 + 2.0 * np.arange(40) / 39.0
    f = lambda t: np.exp(t) * np.cos(10 * t) * np.tanh(4 * t)
    model, report = fit(SampleSet(x.astype(complex), f(x).astype(complex)))
    grid = np.linspace(-1.0, 1.0, 10_000)
    err = np.max(np.abs(evaluate_batch(model, grid.astype(complex)) - f(grid)))
    return {
        "degree": model.degree,
        "max_grid_error": float(err),
        "max_residual": report.max_error,
        "termination": report.termination.value,
    }


def demo_impute() -> dict:
    """Fill three gaps cut out of 1000 equispaced samples of an analytic
    function (275 points removed), fitting the rest at tolerance 1e-10."""
    x = np.linspace(-1.0, 1.0, 1000)
    f = lambda t: np.tanh(4 * np.sin(30 * np.exp(t / 2.0)))
    gaps = [(-0.55, -0.35), (0.05, 0.25), (0.55, 0.70)]
    removed = np.zeros(len(x), dtype=bool)
    for lo, hi in gaps:
        removed |= (x >= lo) & (x <= hi)
    kept = ~removed
    model, report = fit(
        SampleSet(x[kept].astype(complex), f(x[kept]).astype(complex)),
        FitOptions(rel_tol=1e-10),
    )
    err = np.max(np.abs(evaluate_batch(model, x.astype(complex)) - f(x)))
    return {
        "n_removed": int(removed.sum()),
        "degree": model.degree,
        "max_full_grid_error": float(err),
        "max_residual": report.max_error,
    }


def demo_continue() -> dict:
    """Analytic continuation of tanh off [-1, 1]: evaluate the fit well
    outside the data interval and locate the nearest pole (i pi/2)."""
    x = np.cos(np.pi * np.arange(100) / 99.0)
    model, _report = fit(SampleSet(x.astype(complex), np.tanh(x).astype(complex)))
    pol = poles(model)
    nearest = pol[np.argmin(np.abs(pol - 1j * np.pi / 2))]
    out = {
        "degree": model.degree,
        "pole_error": float(np.abs(nearest - 1j * np.pi / 2)),
    }
    for pt in (2.0, 3.0, 5.0):
        err = abs(complex(evaluate_batch(model, [pt + 0j])[0]) - np.tanh(pt))
        out[f"continuation_error_at_{pt:g}"] = float(err)
    return out


def demo_schwarz() -> dict:
    """Schwarz function of the unit circle: fit conj(z) on the circle and
    recover S(z) = 1/z (one pole at 0 with residue 1)."""
    Z = np.exp(2j * np.pi * np.arange(1, 201) / 200)
    model, _report = fit(SampleSet(Z, np.conj(Z)))
    pol = poles(model)
    from .spectral import _residues_at

    res = _residues_at(pol, SampleSet(Z, np.conj(Z)))
    main = int(np.argmax(np.abs(res)))
    return {
        "degree": model.degree,
        "pole_abs": float(np.abs(pol[main])),
        "residue_error": float(np.abs(res[main] - 1.0)),
    }


def demo_eigs() -> dict:
    """Eigenvalues of diag(0..19) enclosed by |z| = 1.05 via poles of the
    scalarized resolvent sampled at 100 circle points.  Seed: PCG64(1)."""
    rng = np.random.default_rng(1)
    N = 20
    diag = np.arange(N, dtype=float)
    u = rng.standard_normal(N) + 1j * rng.standard_normal(N)
    v = rng.standard_normal(N) + 1j * rng.standard_normal(N)
    Z = 1.05 * np.exp(2j * np.pi * np.arange(1, 101) / 100)
    # u* (zI - A)^{-1} v for diagonal A
    F = np.array([np.sum(np.conj(u) * v / (z - diag)) for z in Z])
    model, _report = fit(SampleSet(Z, F))
    pol = poles(model)
    return {
        "degree": model.degree,
        "n_poles": len(pol),
        "eig0_error": float(np.min(np.abs(pol - 0.0))),
        "eig1_error": float(np.min(np.abs(pol - 1.0))),
    }


def demo_zeta() -> dict:
    """Pole and critical zeros of the Riemann zeta function from 100
    samples on the segment Re z = 4, computed by direct series summation."""
    Z = np.linspace(4 - 40j, 4 + 40j, 100)
    k = np.arange(20_000, 0, -1, dtype=float)
    F = (k[None, :] ** (-Z[:, None])).sum(axis=1)
    model, _report = fit(SampleSet(Z, F))
    pol = poles(model)
    zer = zeros(model)
    out = {
        "degree": model.degree,
        "pole_1_error": float(np.min(np.abs(pol - 1.0))),
    }
    critical = zer[(np.abs(zer.real - 0.5) < 0.4) & (zer.imag > 0)]
    critical = critical[np.argsort(critical.imag)]
    for i, z in enumerate(critical[:3], start=1):
        out[f"zero{i}_re"] = float(z.real)
        out[f"zero{i}_im"] = float(z.imag)
    return out


_DEMOS = {
    "equispaced": (demo_equispaced, "equispaced interpolation of an analytic function"),
    "impute": (demo_impute, "fill gaps cut out of smooth equispaced data"),
    "continue": (demo_continue, "analytic continuation of tanh beyond its interval"),
    "schwarz": (demo_schwarz, "Schwarz function of the unit circle via fitting conj(z)"),
    "eigs": (demo_eigs, "matrix eigenvalues from poles of a scalarized resolvent"),
    "zeta": (demo_zeta, "Riemann zeta pole and critical zeros from samples at Re z = 4"),
}


def demo_catalog() -> dict:
    """Mapping of demo name to one-line description."""
    return {name: desc for name, (_fn, desc) in _DEMOS.items()}


def run_demo(name: str) -> dict:
    from .errors import InputError

    if name not in _DEMOS:
        raise InputError(
            f"unknown demo '{name}'; available: {', '.join(sorted(_DEMOS))}"
        )
    return _DEMOS[name][0]()
