"""Command line front end.

Subcommands:

  reduce  parse a one-line equation description and print every consistent
          substitution branch plus the admissible one
  solve   bound spectrum of a built-in potential, CSV or JSON
  eval    one special-function value with its series diagnostics
  verify  cross-check suite for one potential, JSON report

Exit codes: 0 success, 2 malformed input or usage, 3 domain error raised by
the library, 4 a verification check failed.  Output is byte-identical across
repeated runs with the same flags; floats carry 17 significant digits so
they round-trip losslessly.  The environment variable NU_SPECTRAL_TOL, when
set, replaces every default verification tolerance.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction
from pathlib import Path

from .errors import CountMismatch, NuSpectralError, ParseError
from .hyper import hermite_fn, hyp1f1, hyp2f1, hypU
from .oracle import FdGrid, compare_spectra
from .potentials import (
    bound_spectrum,
    make_potential,
    normalization_defect,
    oracle_spectrum,
    wavefunction_residual,
)
from .reduction import parse_ghe_text, reduce_ghe, select_branch
from .scalars import scalar_float

_PARAM_KEYS = {
    "harmonic": ("m", "Omega", "hbar"),
    "morse": ("Lambda", "De", "a", "xe", "m", "hbar"),
    "rosen_morse2": ("v0", "mu"),
}

_REQUIRED_KEYS = {
    "harmonic": (),
    "morse": (),
    "rosen_morse2": ("v0", "mu"),
}

_DEFAULT_TOLS = {"spectrum_rtol": 1e-4, "normalization": 1e-8, "residual": 1e-6}


# -- formatting ----------------------------------------------------------------


def _fmt(x):
    return format(float(x), ".17g")


def _exact_str(v):
    if isinstance(v, float):
        return _fmt(v)
    return str(v)


def _number_str(v):
    if isinstance(v, complex):
        if v.imag == 0.0:
            return _fmt(v.real)
        return f"{_fmt(v.real)}{'+' if v.imag >= 0 else '-'}{_fmt(abs(v.imag))}j"
    return _fmt(v)


def _poly_str(p):
    return "0" if p.is_zero else repr(p)


def _coeff_list(p):
    return [_exact_str(c) for c in p.coeffs]


def _endpoint_str(v):
    fv = float(v)
    if math.isinf(fv):
        return "inf" if fv > 0 else "-inf"
    return _exact_str(v)


def _factor_str(f):
    parts = []
    if not f.prefactor == 1:
        parts.append(_exact_str(f.prefactor))
    for base, expo in f.power_terms:
        head = f"({_poly_str(base)})"
        parts.append(head if expo == 1 else f"{head}^({_exact_str(expo)})")
    if not f.exp_poly.is_zero:
        parts.append(f"exp({_poly_str(f.exp_poly)})")
    for root, coeff in f.inv_exp_terms:
        parts.append(f"exp(({_exact_str(coeff)})/(x - ({_exact_str(root)})))")
    return " * ".join(parts) if parts else "1"


# -- flag parsing helpers --------------------------------------------------------


def _canonical_potential(name):
    key = name.replace("-", "_")
    if key not in _PARAM_KEYS:
        raise ParseError(
            f"unknown potential {name!r}; choose from harmonic, morse, rosen-morse2"
        )
    return key


def _parse_params(potential, text):
    out = {}
    allowed = _PARAM_KEYS[potential]
    for item in text.split(",") if text else ():
        key, sep, raw = item.partition("=")
        key, raw = key.strip(), raw.strip()
        if not sep or not key:
            raise ParseError(f"expected key=value in --params, got {item!r}")
        if key not in allowed:
            raise ParseError(
                f"unknown parameter {key!r} for {potential}; allowed: "
                + ", ".join(allowed)
            )
        if key in out:
            raise ParseError(f"duplicate parameter {key!r}")
        try:
            out[key] = float(raw)
        except ValueError:
            raise ParseError(f"parameter {key} is not a number: {raw!r}") from None
    missing = [key for key in _REQUIRED_KEYS[potential] if key not in out]
    if missing:
        raise ParseError(
            f"{potential} needs --params with " + ", ".join(missing)
        )
    return out


def _parse_grid(text):
    pieces = text.split(":")
    if len(pieces) == 3:
        try:
            lo, hi, n = float(pieces[0]), float(pieces[1]), int(pieces[2])
        except ValueError:
            raise ParseError(f"--grid wants lo:hi:points, got {text!r}") from None
        try:
            return FdGrid(lo, hi, n)
        except ValueError as exc:
            raise ParseError(f"bad grid: {exc}") from None
    raise ParseError(f"--grid wants lo:hi:points, got {text!r}")


def _tolerances():
    raw = os.environ.get("NU_SPECTRAL_TOL")
    if raw is None:
        return dict(_DEFAULT_TOLS)
    try:
        tol = float(raw)
    except ValueError:
        raise ParseError(f"NU_SPECTRAL_TOL is not a number: {raw!r}") from None
    return {key: tol for key in _DEFAULT_TOLS}


# -- subcommands -----------------------------------------------------------------


def _cmd_reduce(args):
    ghe, needs_eps = parse_ghe_text(args.ghe)
    if needs_eps and args.eps is None:
        raise ParseError("this equation carries an eps placeholder; pass --eps")
    try:
        eps = Fraction(args.eps) if args.eps is not None else Fraction(0)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"--eps is not rational: {args.eps!r}") from None
    result = reduce_ghe(ghe, eps, select=False)

    sel_index = None
    reason = None
    if result.selected is not None:
        for i, br in enumerate(result.branches):
            if (
                br.k0 == result.selected.k0
                and br.pi.coeffs == result.selected.pi.coeffs
            ):
                sel_index = i
                break
        psi = result.selected.psi
        zero = -psi.coeff(0) / psi.coeff(1)
        reason = (
            f"psi slope {_exact_str(psi.coeff(1))} is negative and its zero "
            f"{_exact_str(zero)} lies in ({_endpoint_str(ghe.interval.lo)}, "
            f"{_endpoint_str(ghe.interval.hi)}); unique admissible branch"
        )
    else:
        try:
            select_branch(result.branches, ghe.interval)
        except NuSpectralError as exc:
            reason = f"{type(exc).__name__}: {exc}"
    code = 0 if sel_index is not None else 3

    if args.format == "json":
        doc = {
            "schema_version": 1,
            "eps": _exact_str(eps),
            "interval": [
                _endpoint_str(ghe.interval.lo),
                _endpoint_str(ghe.interval.hi),
            ],
            "k0_candidates": [_exact_str(k) for k in result.k0_values],
            "branches": [
                {
                    "k0": _exact_str(br.k0),
                    "pi": _coeff_list(br.pi),
                    "psi": _coeff_list(br.psi),
                    "lam": _exact_str(br.lam),
                    "chi": _factor_str(br.chi),
                }
                for br in result.branches
            ],
            "selected": None if sel_index is None else sel_index + 1,
            "selection": reason,
        }
        return json.dumps(doc, indent=2) + "\n", code

    lines = [
        "interval: ({}, {})".format(
            _endpoint_str(ghe.interval.lo), _endpoint_str(ghe.interval.hi)
        ),
        f"eps: {_exact_str(eps)}",
        "k0 candidates: " + ", ".join(_exact_str(k) for k in result.k0_values),
        f"branches: {len(result.branches)}",
    ]
    for i, br in enumerate(result.branches, start=1):
        lines.append(f"branch {i}:")
        lines.append(f"  k0  = {_exact_str(br.k0)}")
        lines.append(f"  pi  = {_poly_str(br.pi)}")
        lines.append(f"  psi = {_poly_str(br.psi)}")
        lines.append(f"  lam = {_exact_str(br.lam)}")
        lines.append(f"  chi = {_factor_str(br.chi)}")
    if sel_index is not None:
        lines.append(f"selected: branch {sel_index + 1}")
        lines.append(f"  {reason}")
    else:
        lines.append(f"selected: none ({reason})")
    return "\n".join(lines) + "\n", code


def _cmd_solve(args):
    name = _canonical_potential(args.potential)
    params = _parse_params(name, args.params)
    spec = make_potential(name, **params)
    states = bound_spectrum(spec, n_max=args.n_max)

    oracle = None
    if args.with_oracle:
        orc = oracle_spectrum(spec, k_max=len(states))
        vals = orc.eigenvalues[: len(states)]
        if len(vals) < len(states):
            raise CountMismatch(
                f"oracle resolves {len(vals)} levels, analytic family has "
                f"{len(states)}"
            )
        oracle = vals

    records = []
    for st in states:
        epsf = scalar_float(st.eps)
        rec = {
            "n": st.n,
            "eps_n": epsf,
            "E_n": st.energy,
            "norm_defect": normalization_defect(spec, st),
        }
        if oracle is not None:
            o = oracle[st.n]
            rec["oracle_eps_n"] = o
            rec["rel_err"] = abs(epsf - o) / max(1.0, abs(epsf))
        records.append(rec)

    if args.samples_dir is not None:
        if args.sample_count < 2:
            raise ParseError("--sample-count must be at least 2")
        outdir = Path(args.samples_dir)
        outdir.mkdir(parents=True, exist_ok=True)
        lo, hi, _ = spec.fd_box
        step = (hi - lo) / (args.sample_count - 1)
        xs = [lo + i * step for i in range(args.sample_count)]
        for st in states:
            lines = [f"x,psi_{st.n}(x)"]
            lines.extend(f"{_fmt(x)},{_fmt(st.sampler(x))}" for x in xs)
            (outdir / f"psi_{st.n}.csv").write_text("\n".join(lines) + "\n")

    if args.format == "json":
        doc = {
            "schema_version": 1,
            "potential": name,
            "params": params,
            "states": records,
        }
        return json.dumps(doc, indent=2) + "\n", 0

    columns = ["n", "eps_n", "E_n", "norm_defect"]
    if oracle is not None:
        columns += ["oracle_eps_n", "rel_err"]
    rows = [",".join(columns)]
    for rec in records:
        rows.append(
            ",".join(
                str(rec[c]) if c == "n" else _fmt(rec[c]) for c in columns
            )
        )
    return "\n".join(rows) + "\n", 0


def _cmd_eval(args):
    def need(*names):
        missing = [n for n in names if getattr(args, n) is None]
        if missing:
            raise ParseError(
                f"--fn {args.fn} needs " + ", ".join(f"--{n}" for n in missing)
            )

    if args.fn == "2f1":
        need("a", "b", "c", "z")
        res = hyp2f1(args.a, args.b, args.c, args.z)
    elif args.fn == "1f1":
        need("a", "c", "z")
        res = hyp1f1(args.a, args.c, args.z)
    elif args.fn == "u":
        need("a", "c", "z")
        res = hypU(args.a, args.c, args.z)
    else:
        need("nu", "z")
        res = hermite_fn(args.nu, args.z)
    lines = [
        f"value = {_number_str(res.value)}",
        f"terms_used = {res.terms_used}",
        f"truncation_estimate = {_fmt(res.truncation_estimate)}",
    ]
    return "\n".join(lines) + "\n", 0


def _cmd_verify(args):
    name = _canonical_potential(args.potential)
    params = _parse_params(name, args.params)
    spec = make_potential(name, **params)
    tols = _tolerances()

    n_max = args.n_max
    if n_max is None and not math.isfinite(spec.v_minus):
        n_max = 6
    states = bound_spectrum(spec, n_max=n_max)
    analytic = [scalar_float(st.eps) for st in states]

    if args.grid is not None:
        grid = _parse_grid(args.grid)
    else:
        lo, hi, pts = spec.fd_box
        grid = FdGrid(lo, hi, pts)

    checks = []
    try:
        orc = oracle_spectrum(spec, k_max=len(states), grid=grid)
        vals = list(orc.eigenvalues)
        if not math.isfinite(spec.v_minus):
            vals = vals[: len(analytic)]
        report = compare_spectra(analytic, vals, tols["spectrum_rtol"])
        checks.append(
            {
                "name": "spectrum_vs_oracle",
                "pass": bool(report.ok),
                "analytic_count": len(analytic),
                "oracle_count": len(vals),
                "max_rel_err": max(report.rel_errors),
                "rel_tol": tols["spectrum_rtol"],
            }
        )
    except NuSpectralError as exc:
        checks.append(
            {
                "name": "spectrum_vs_oracle",
                "pass": False,
                "error": f"{type(exc).__name__}: {exc}",
            }
        )

    try:
        defects = [normalization_defect(spec, st) for st in states]
        checks.append(
            {
                "name": "normalization",
                "pass": max(defects) <= tols["normalization"],
                "max_defect": max(defects),
                "tol": tols["normalization"],
            }
        )
    except NuSpectralError as exc:
        checks.append(
            {
                "name": "normalization",
                "pass": False,
                "error": f"{type(exc).__name__}: {exc}",
            }
        )

    lo, hi, _ = spec.fd_box
    xs = [lo + (hi - lo) * (0.25 + 0.5 * i / 8.0) for i in range(9)]
    worst = max(
        wavefunction_residual(spec, st.sampler, st.eps, xs) for st in states
    )
    checks.append(
        {
            "name": "ode_residual",
            "pass": worst <= tols["residual"],
            "max_residual": worst,
            "tol": tols["residual"],
        }
    )

    ok = all(c["pass"] for c in checks)
    doc = {
        "schema_version": 1,
        "potential": name,
        "params": params,
        "n_states": len(states),
        "grid": {"lo": grid.lo, "hi": grid.hi, "points": grid.n},
        "tolerances": tols,
        "checks": checks,
        "pass": ok,
    }
    return json.dumps(doc, indent=2) + "\n", 0 if ok else 4


# -- wiring ----------------------------------------------------------------------


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="nu-spectral",
        description=(
            "Reduce generalized hypergeometric equations to hypergeometric "
            "form and solve the built-in spectral problems."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="reduce a one-line equation description")
    p.add_argument(
        "ghe",
        help="e.g. 'phi=1 psi_tilde=0 phi_tilde=eps,0,-1 interval=-inf,inf'",
    )
    p.add_argument("--eps", default=None, help="spectral parameter, rational")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("solve", help="bound spectrum of a built-in potential")
    p.add_argument("--potential", required=True)
    p.add_argument("--params", default="", help="comma list, e.g. m=1,Omega=1")
    p.add_argument("--n-max", type=int, default=None, dest="n_max")
    p.add_argument("--with-oracle", action="store_true", dest="with_oracle")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--samples-dir", default=None, dest="samples_dir")
    p.add_argument("--sample-count", type=int, default=201, dest="sample_count")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("eval", help="evaluate one special function")
    p.add_argument("--fn", required=True, choices=("2f1", "1f1", "u", "hermite"))
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--nu", type=float, default=None)
    p.add_argument("--z", type=float, default=None)
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("verify", help="cross-check suite for one potential")
    p.add_argument("--potential", required=True)
    p.add_argument("--params", default="")
    p.add_argument("--n-max", type=int, default=None, dest="n_max")
    p.add_argument("--grid", default=None, help="lo:hi:points")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        text, code = args.func(args)
    except ParseError as exc:
        print(f"nu-spectral: {exc}", file=sys.stderr)
        return 2
    except NuSpectralError as exc:
        print(f"nu-spectral: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"nu-spectral: {exc}", file=sys.stderr)
        return 3
    if args.output is None:
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
