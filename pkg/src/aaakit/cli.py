"""Command-line front end: file ingestion, model persistence, result tables.

Complex numbers travel as (re, im) float pairs everywhere.  Sample files
are CSV with header ``re,im,f_re,f_im[,f2_re,f2_im,...]``; point files need
only ``re,im``.  Models, partial fractions, solutions and quadrature rules
persist as JSON.  Exit codes: 0 success, 1 input error, 2 numerical
failure.  Set AAAKIT_LOG=debug for fit progress.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys

import numpy as np

from . import demos, harmonic, spectral, variants, zoloquad
from .aaa import FitOptions, fit, fit_vector
from .barycentric import BarycentricModel, SampleSet, evaluate_batch
from .calculus import PartialFractions, integrate_real_line, integrate_segment, derivative, to_partial_fractions
from .errors import InputError, NumericalError
from .geometry import polygon_membership
from .lawson import lawson_refine
from .variants import PeriodicModel

__all__ = ["main", "dispatch"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{message}\n{self.format_usage()}")


# ----------------------------------------------------------------- file I/O


def _read_rows(path):
    try:
        with open(path, newline="") as fh:
            rows = [r for r in csv.reader(fh) if r and not r[0].lstrip().startswith("#")]
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise InputError(f"{path} is empty")
    start = 1 if not _is_float(rows[0][0]) else 0  # optional header
    data = []
    for r in rows[start:]:
        try:
            data.append([float(x) for x in r if x.strip() != ""])
        except ValueError as exc:
            raise InputError(f"{path}: non-numeric row {r}") from exc
    return np.asarray(data, dtype=float)


def _is_float(tok: str) -> bool:
    try:
        float(tok)
        return True
    except ValueError:
        return False


def read_samples(path) -> SampleSet:
    data = _read_rows(path)
    if data.ndim != 2 or data.shape[1] < 4 or data.shape[1] % 2 != 0:
        raise InputError(
            f"{path}: sample files need columns re,im,f_re,f_im[,f2_re,f2_im,...]"
        )
    pts = data[:, 0] + 1j * data[:, 1]
    comps = [data[:, k] + 1j * data[:, k + 1] for k in range(2, data.shape[1], 2)]
    return SampleSet(pts, np.column_stack(comps))


def read_points(path) -> np.ndarray:
    data = _read_rows(path)
    if data.ndim != 2 or data.shape[1] < 2:
        raise InputError(f"{path}: point files need columns re,im")
    return data[:, 0] + 1j * data[:, 1]


def _open_out(path):
    return sys.stdout if path in (None, "-") else open(path, "w", newline="")


def write_table(path, header, rows) -> None:
    fh = _open_out(path)
    try:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(float(x)) for x in row])
    finally:
        if fh is not sys.stdout:
            fh.close()


def write_complex_table(path, values, header=("re", "im")) -> None:
    write_table(path, header, [[z.real, z.imag] for z in values])


def _save_json(path, obj) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1)
        fh.write("\n")


def _load_json(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON {path}: {exc}") from exc


def _load_model(path):
    d = _load_json(path)
    if d.get("periodic"):
        return PeriodicModel.from_dict(d)
    return BarycentricModel.from_dict(d)


def _plain_model(path) -> BarycentricModel:
    m = _load_model(path)
    return m.model if isinstance(m, PeriodicModel) else m


def parse_complex(text: str) -> complex:
    try:
        re, im = (float(t) for t in text.split(","))
    except ValueError as exc:
        raise InputError(f"expected 're,im', got {text!r}") from exc
    return complex(re, im)


def emit(**kv) -> None:
    for k, v in kv.items():
        if isinstance(v, float):
            print(f"{k}={v!r}")
        else:
            print(f"{k}={v}")


def _fit_options(args) -> FitOptions:
    kw = {}
    if getattr(args, "tol", None) is not None:
        kw["rel_tol"] = args.tol
    if getattr(args, "degree", None) is not None:
        kw["fixed_degree"] = args.degree
    if getattr(args, "max_degree", None) is not None:
        kw["max_degree"] = args.max_degree
    if getattr(args, "sign", False):
        kw["sign_mode"] = True
    if getattr(args, "column_scaling", False):
        kw["column_scaling"] = True
    if getattr(args, "lawson", None):
        kw["lawson_steps"] = args.lawson
    if getattr(args, "damping", None) is not None:
        kw["damping"] = args.damping
    return FitOptions(**kw)


# -------------------------------------------------------------- subcommands


def cmd_fit(args) -> int:
    samples = read_samples(args.infile)
    model, report = fit(samples, _fit_options(args))
    if args.out:
        model.save(args.out)
    fmax = float(np.max(np.abs(samples.data)))
    emit(
        degree=model.degree,
        max_residual=report.max_error,
        rel_residual=report.max_error / fmax if fmax else 0.0,
        termination=report.termination.value,
    )
    return 0


def cmd_fit_vector(args) -> int:
    samples = read_samples(args.infile)
    models, report = fit_vector(samples, _fit_options(args))
    if args.out:
        _save_json(args.out, {"vector": True, "models": [m.to_dict() for m in models]})
    emit(
        components=len(models),
        degree=models[0].degree,
        max_residual=report.max_error,
        termination=report.termination.value,
    )
    return 0


def cmd_fit_periodic(args) -> int:
    data = _read_rows(args.infile)
    if data.shape[1] < 4:
        raise InputError("periodic samples need columns re,im,f_re,f_im (re = theta)")
    theta = data[:, 0]
    values = data[:, 2] + 1j * data[:, 3]
    pmodel, theta_poles = variants.fit_periodic(theta, values, _fit_options(args))
    if args.out:
        _save_json(args.out, pmodel.to_dict())
    if args.poles_out:
        write_complex_table(args.poles_out, theta_poles, ("theta_re", "theta_im"))
    emit(degree=pmodel.model.degree, n_poles=len(theta_poles))
    return 0


def cmd_fit_zero(args) -> int:
    samples = read_samples(args.infile)
    model, report = variants.fit_tends_to_zero(samples, _fit_options(args))
    if args.out:
        model.save(args.out)
    emit(
        degree=model.degree,
        max_residual=report.max_error,
        termination=report.termination.value,
    )
    return 0


def _eval_points(args) -> np.ndarray:
    if args.at is not None:
        return np.asarray([parse_complex(args.at)], dtype=complex)
    if args.infile is None:
        raise InputError("provide --at re,im or --in points.csv")
    return read_points(args.infile)


def cmd_eval(args) -> int:
    model = _load_model(args.model)
    pts = _eval_points(args)
    # periodic models are functions of theta; the real part is the angle
    vals = model(pts.real) if isinstance(model, PeriodicModel) else model(pts)
    if args.at is not None and not args.out:
        emit(value_re=float(vals[0].real), value_im=float(vals[0].imag))
    else:
        write_table(
            args.out,
            ("re", "im", "f_re", "f_im"),
            [[p.real, p.imag, v.real, v.imag] for p, v in zip(pts, vals)],
        )
    return 0


def cmd_poles(args) -> int:
    model = _load_model(args.model)
    if isinstance(model, PeriodicModel):
        pol = spectral.poles(model.model)
        pol = variants.fold_to_principal_strip(np.log(pol[pol != 0]) / 1j)
    else:
        pol = spectral.poles(model)
    write_complex_table(args.out, pol)
    return 0


def cmd_zeros(args) -> int:
    write_complex_table(args.out, spectral.zeros(_plain_model(args.model)))
    return 0


def cmd_residues(args) -> int:
    model = _plain_model(args.model)
    samples = read_samples(args.samples)
    pol = spectral.poles(model)
    res = spectral.residues(model, samples)
    write_table(
        args.out,
        ("pole_re", "pole_im", "res_re", "res_im"),
        [[p.real, p.imag, r.real, r.imag] for p, r in zip(pol, res)],
    )
    return 0


def cmd_cleanup(args) -> int:
    model = _plain_model(args.model)
    samples = read_samples(args.samples)
    cleaned, removed = spectral.cleanup(model, samples, args.residue_tol)
    if args.out:
        cleaned.save(args.out)
    emit(n_removed=len(removed), degree=cleaned.degree)
    return 0


def cmd_deriv(args) -> int:
    model = _plain_model(args.model)
    pts = _eval_points(args)
    vals = derivative(model, pts, order=args.order)
    if args.at is not None and not args.out:
        emit(value_re=float(vals[0].real), value_im=float(vals[0].imag))
    else:
        write_table(
            args.out,
            ("re", "im", "d_re", "d_im"),
            [[p.real, p.imag, v.real, v.imag] for p, v in zip(pts, vals)],
        )
    return 0


def cmd_integrate(args) -> int:
    model = _plain_model(args.model)
    samples = read_samples(args.samples)
    pf = to_partial_fractions(model, samples)
    if args.real_line:
        if args.drop_real_poles:
            keep = pf.poles.imag != 0
            pf = PartialFractions(pf.constant, pf.poles[keep], pf.residues[keep])
        val = integrate_real_line(pf)
    else:
        if args.seg_from is None or args.seg_to is None:
            raise InputError("provide --real-line, or both --from and --to")
        val = integrate_segment(pf, parse_complex(args.seg_from), parse_complex(args.seg_to))
    emit(value_re=float(val.real), value_im=float(val.imag))
    return 0


def cmd_lawson(args) -> int:
    model = _plain_model(args.model)
    samples = read_samples(args.samples)
    refined, state = lawson_refine(samples, model, args.steps, args.damping)
    if args.out:
        refined.save(args.out)
    initial = float(np.max(np.abs(evaluate_batch(model, samples.points) - samples.scalar_values)))
    emit(
        steps=len(state.history),
        initial_error=initial,
        best_error=state.best_error,
        final_error=state.history[-1] if state.history else initial,
    )
    return 0


def cmd_sign(args) -> int:
    problem = zoloquad.SignProblem(
        read_points(args.e_in), read_points(args.f_in), args.degree
    )
    model, tau = zoloquad.solve_sign(problem, args.lawson_steps, args.damping)
    if args.out:
        model.save(args.out)
    emit(degree=model.degree, tau=tau)
    return 0


def cmd_ratio(args) -> int:
    model = _plain_model(args.model)
    solution = zoloquad.sign_to_ratio(model, args.tau)
    if args.out:
        solution.r_star.save(args.out)
    emit(sigma=solution.sigma, gamma=solution.gamma, tau=solution.tau)
    return 0


def cmd_quad(args) -> int:
    samples = read_samples(args.infile)
    rule = zoloquad.quadrature_from_transform(
        samples, _fit_options(args), polygon_membership(samples.points)
    )
    if args.out:
        rule.save_json(args.out)
    if args.csv_out:
        rule.save_csv(args.csv_out)
    wsum = complex(np.sum(rule.weights))
    emit(
        n_nodes=len(rule),
        weight_sum_re=float(wsum.real),
        weight_sum_im=float(wsum.imag),
        fit_residual=rule.provenance["fit_residual"],
    )
    return 0


def cmd_whsplit(args) -> int:
    samples = read_samples(args.infile)
    options = FitOptions(rel_tol=args.tol) if args.tol else None
    split = harmonic.wiener_hopf_split(samples, options)
    if args.out_plus:
        _save_json(args.out_plus, split.f_plus.to_dict())
    if args.out_minus:
        _save_json(args.out_minus, split.f_minus.to_dict())
    emit(
        residual=split.residual,
        n_poles_plus=len(split.f_plus.poles),
        n_poles_minus=len(split.f_minus.poles),
    )
    return 0


def cmd_hilbert(args) -> int:
    samples = read_samples(args.infile)
    options = FitOptions(rel_tol=args.tol) if args.tol else None
    v = harmonic.hilbert_transform(samples, options)
    if args.at is not None:
        pts = np.asarray([parse_complex(args.at).real])
    elif args.eval_in is not None:
        pts = read_points(args.eval_in).real
    else:
        pts = samples.points.real
    vals = v(pts)
    write_table(args.out, ("s", "v"), [[p, val] for p, val in zip(pts, vals)])
    return 0


def cmd_rhsplit(args) -> int:
    samples = read_samples(args.infile)
    options = FitOptions(rel_tol=args.tol) if args.tol else None
    f_plus, f_minus = harmonic.riemann_hilbert_split(samples, options=options)
    if args.out_plus:
        _save_json(args.out_plus, f_plus.to_dict())
    if args.out_minus:
        _save_json(args.out_minus, f_minus.to_dict())
    Z = samples.points
    resid = float(np.max(np.abs(f_plus(Z) - f_minus(Z) - samples.scalar_values)))
    emit(
        residual=resid,
        n_poles_plus=len(f_plus.poles),
        n_poles_minus=len(f_minus.poles),
    )
    return 0


def cmd_laplace(args) -> int:
    samples = read_samples(args.infile)
    if np.any(samples.data.imag != 0):
        raise InputError("laplace expects real boundary data (f_im = 0)")
    options = FitOptions(rel_tol=args.tol, max_degree=299) if args.tol else None
    sol = harmonic.laplace_dirichlet(
        samples.points,
        samples.data.real[:, 0],
        pole_order=args.pole_order,
        monomial_degree=args.monomial_degree,
        options=options,
    )
    if args.sol_out:
        sol.save(args.sol_out)
    if args.eval_in:
        pts = read_points(args.eval_in)
        fvals = sol.f(pts)
        write_table(
            args.field_out,
            ("x", "y", "u", "v"),
            [[p.real, p.imag, fv.real, fv.imag] for p, fv in zip(pts, fvals)],
        )
    emit(
        n_poles=len(sol.poles),
        boundary_residual=sol.boundary_residual,
        u0=float(sol.u(0j)),
    )
    return 0


def cmd_conformal(args) -> int:
    boundary = read_points(args.infile)
    forward, _inverse, report = harmonic.conformal_disk_map(
        boundary, compress_tol=args.tol
    )
    if args.map_out:
        report.forward_model.save(args.map_out)
    if args.inv_out:
        report.inverse_model.save(args.inv_out)
    out = {
        "forward_degree": report.forward_model.degree,
        "inverse_degree": report.inverse_model.degree,
        "boundary_modulus_error": report.boundary_modulus_error,
        "u0": report.u0,
    }
    if args.at:
        w = forward(parse_complex(args.at))
        out["map_re"], out["map_im"] = float(w.real), float(w.imag)
    emit(**out)
    return 0


def cmd_branch(args) -> int:
    samples = read_samples(args.infile)
    estimates = spectral.branch_point(samples)
    if args.out:
        write_table(
            args.out,
            ("z0_re", "z0_im", "alpha_re", "alpha_im"),
            [
                [e.location.real, e.location.imag, e.exponent.real, e.exponent.imag]
                for e in estimates
            ],
        )
    emit(n_branch_points=len(estimates))
    for i, e in enumerate(estimates):
        emit(**{f"z0_{i}": f"{e.location.real!r},{e.location.imag!r}",
                f"alpha_{i}": f"{e.exponent.real!r},{e.exponent.imag!r}"})
    return 0


def cmd_potential(args) -> int:
    interp = read_points(args.interp)
    pol = read_points(args.poles) if args.poles else np.zeros(0, dtype=complex)
    pts = _eval_points(args)
    vals = spectral.hermite_potential(interp, pol, args.mode, pts)
    write_table(
        args.out,
        ("re", "im", "log10_phi"),
        [[p.real, p.imag, v] for p, v in zip(pts, vals)],
    )
    return 0


def cmd_demo(args) -> int:
    if args.name == "list":
        for name, desc in demos.demo_catalog().items():
            emit(**{name: desc})
        return 0
    result = demos.run_demo(args.name)
    emit(**result)
    return 0


# ------------------------------------------------------------------- parser


def _add_fit_flags(p, tol=True, degree=True):
    if tol:
        p.add_argument("--tol", type=float, default=None, help="relative tolerance")
    if degree:
        p.add_argument("--degree", type=int, default=None, help="fixed degree")
        p.add_argument("--max-degree", type=int, default=None, dest="max_degree")
    p.add_argument("--sign", action="store_true", help="singular-vector blend weights")
    p.add_argument("--column-scaling", action="store_true", dest="column_scaling")
    p.add_argument("--lawson", type=int, default=None, help="minimax refinement steps")
    p.add_argument("--damping", type=float, default=None, help="Lawson damping in (0,1]")


def build_parser() -> _Parser:
    parser = _Parser(prog="aaakit", description=__doc__)
    sub = parser.add_subparsers(dest="command", metavar="command")

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        return p

    p = add("fit", cmd_fit, "greedy rational fit of scalar samples")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None, help="model JSON path")
    _add_fit_flags(p)

    p = add("fit-vector", cmd_fit_vector, "shared-support fit of vector samples")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None)
    _add_fit_flags(p)

    p = add("fit-periodic", cmd_fit_periodic, "periodic fit via z = exp(i theta)")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--poles-out", dest="poles_out", default=None)
    _add_fit_flags(p)

    p = add("fit-zero", cmd_fit_zero, "fit constrained to r(infinity) = 0")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None)
    _add_fit_flags(p)

    p = add("eval", cmd_eval, "evaluate a stored model")
    p.add_argument("--model", required=True)
    p.add_argument("--at", default=None, help="single point re,im")
    p.add_argument("--in", dest="infile", default=None, help="points CSV")
    p.add_argument("--out", default=None)

    p = add("poles", cmd_poles, "poles of a stored model")
    p.add_argument("--model", required=True)
    p.add_argument("--out", default=None)

    p = add("zeros", cmd_zeros, "zeros of a stored model")
    p.add_argument("--model", required=True)
    p.add_argument("--out", default=None)

    p = add("residues", cmd_residues, "residues at the model's poles")
    p.add_argument("--model", required=True)
    p.add_argument("--samples", required=True)
    p.add_argument("--out", default=None)

    p = add("cleanup", cmd_cleanup, "drop spurious poles and refit")
    p.add_argument("--model", required=True)
    p.add_argument("--samples", required=True)
    p.add_argument("--residue-tol", dest="residue_tol", type=float, default=1e-13)
    p.add_argument("--out", default=None)

    p = add("deriv", cmd_deriv, "first or second derivative of a model")
    p.add_argument("--model", required=True)
    p.add_argument("--order", type=int, choices=(1, 2), default=1)
    p.add_argument("--at", default=None)
    p.add_argument("--in", dest="infile", default=None)
    p.add_argument("--out", default=None)

    p = add("integrate", cmd_integrate, "integrate via partial fractions")
    p.add_argument("--model", required=True)
    p.add_argument("--samples", required=True)
    p.add_argument("--real-line", dest="real_line", action="store_true")
    p.add_argument(
        "--drop-real-poles",
        dest="drop_real_poles",
        action="store_true",
        help="discard exactly-real poles (Froissart doublets) before the residue sum",
    )
    p.add_argument("--from", dest="seg_from", default=None, help="segment start re,im")
    p.add_argument("--to", dest="seg_to", default=None, help="segment end re,im")

    p = add("lawson", cmd_lawson, "minimax refinement of a fitted model")
    p.add_argument("--model", required=True)
    p.add_argument("--samples", required=True)
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--damping", type=float, default=1.0)
    p.add_argument("--out", default=None)

    p = add("sign", cmd_sign, "Zolotarev sign problem on two point sets")
    p.add_argument("--e-in", dest="e_in", required=True, help="E points CSV (re,im)")
    p.add_argument("--f-in", dest="f_in", required=True, help="F points CSV (re,im)")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--lawson-steps", dest="lawson_steps", type=int, default=200)
    p.add_argument("--damping", type=float, default=0.95)
    p.add_argument("--out", default=None)

    p = add("ratio", cmd_ratio, "Zolotarev ratio solution from a sign solution")
    p.add_argument("--model", required=True)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--out", default=None)

    p = add("quad", cmd_quad, "quadrature rule from Cauchy-transform samples")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None, help="rule JSON")
    p.add_argument("--csv-out", dest="csv_out", default=None, help="rule CSV")
    _add_fit_flags(p)

    p = add("whsplit", cmd_whsplit, "additive Wiener-Hopf splitting on the real line")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--out-plus", dest="out_plus", default=None)
    p.add_argument("--out-minus", dest="out_minus", default=None)

    p = add("hilbert", cmd_hilbert, "Hilbert transform of real decaying data")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--at", default=None)
    p.add_argument("--eval-in", dest="eval_in", default=None)
    p.add_argument("--out", default=None)

    p = add("rhsplit", cmd_rhsplit, "jump splitting across a closed contour")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--out-plus", dest="out_plus", default=None)
    p.add_argument("--out-minus", dest="out_minus", default=None)

    p = add("laplace", cmd_laplace, "Dirichlet solve by AAA least squares")
    p.add_argument("--in", dest="infile", required=True, help="boundary samples CSV")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--pole-order", dest="pole_order", type=int, choices=(1, 2), default=2)
    p.add_argument("--monomial-degree", dest="monomial_degree", type=int, default=0)
    p.add_argument("--sol-out", dest="sol_out", default=None)
    p.add_argument("--eval-in", dest="eval_in", default=None)
    p.add_argument("--field-out", dest="field_out", default=None)

    p = add("conformal", cmd_conformal, "disk map of a Jordan domain containing 0")
    p.add_argument("--in", dest="infile", required=True, help="boundary points CSV")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--map-out", dest="map_out", default=None)
    p.add_argument("--inv-out", dest="inv_out", default=None)
    p.add_argument("--at", default=None, help="report the map at this point")

    p = add("branch", cmd_branch, "branch point locations and exponents")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None)

    p = add("potential", cmd_potential, "log10 of the Hermite potential function")
    p.add_argument("--interp", required=True, help="interpolation points CSV")
    p.add_argument("--poles", default=None, help="pole points CSV")
    p.add_argument("--mode", choices=("classic", "doubled"), default="classic")
    p.add_argument("--at", default=None)
    p.add_argument("--in", dest="infile", default=None)
    p.add_argument("--out", default=None)

    p = add("demo", cmd_demo, "run a built-in recipe ('demo list' to enumerate)")
    p.add_argument("name")

    return parser


def dispatch(argv=None) -> int:
    level = os.environ.get("AAAKIT_LOG", "warning").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "fn", None):
        raise InputError(parser.format_usage())
    return args.fn(args)


def main(argv=None) -> int:
    try:
        return dispatch(argv)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
