"""The ``trirep`` command.

Examples
--------
::

    trirep --model CoulombCase1 --set Z=-1 --set ell=0 --set lam=1 --command spectrum --N 4
    trirep --model OscillatorCase1 --set omega=1 --set ell=0 --set lam=1 \\
           --command wavefunction --level 2 --grid 0:6:61 --out psi.csv
    trirep --model HulthenCase2 --set mu=1 --set nu=1.5 --set gamma=-0.5,0,0.5,1,2 \\
           --command density --N 50 --out fig.csv
    trirep --model OscillatorCase1 --set omega=1 --set ell=1 --set lam=1 --command verify

Exit status is 0 on success, 1 when a computation fails or a verification
check does not pass, and 2 for usage errors (unknown model, unknown or
missing parameter, malformed flag).
"""

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field

import numpy as np

from .errors import TrirepError

COMMANDS = ("spectrum", "coeffs", "wavefunction", "density", "verify")
FORMATS = ("csv", "json")
DENSITY_MODELS = ("HulthenCase1", "HulthenCase2")
DENSITY_KEYS = ("mu", "nu", "gamma", "n_points", "smoothing")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    model: str
    command: str
    params: dict = field(default_factory=dict)
    N: int = None
    grid: tuple = None
    out: str = None
    format: str = "csv"
    sign: str = "plus"
    energy: float = None
    level: int = None
    method: str = "auto"


# -- parsing -------------------------------------------------------------------


def _number(text, key):
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"parameter {key!r} needs a number, got {text!r}") from None


def parse_set(items):
    """``key=value`` strings to a dict; comma lists stay strings for the caller."""
    out = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or not key:
            raise UsageError(f"--set expects key=value, got {item!r}")
        out[key] = value.strip()
    return out


def parse_grid(text):
    parts = str(text).split(":")
    if len(parts) != 3:
        raise UsageError(f"--grid expects start:stop:count, got {text!r}")
    a, b = _number(parts[0], "grid start"), _number(parts[1], "grid stop")
    try:
        n = int(parts[2])
    except ValueError:
        raise UsageError(f"grid count must be an integer, got {parts[2]!r}") from None
    if n < 1:
        raise UsageError(f"grid count must be >= 1, got {n}")
    return a, b, n


def build_parser():
    p = argparse.ArgumentParser(prog="trirep", description="Tridiagonal-representation models: spectra, "
                                "expansion coefficients, wavefunctions, weight functions and checks.")
    p.add_argument("--config", help="JSON file with any of the options below; flags override it")
    p.add_argument("--model", help="case id, e.g. CoulombCase1")
    p.add_argument("--command", choices=COMMANDS)
    p.add_argument("--set", action="append", metavar="KEY=VALUE", help="model parameter (repeatable)")
    p.add_argument("--N", type=int, help="levels (spectrum), terms (coeffs, wavefunction) or "
                   "recursion size (density)")
    p.add_argument("--grid", help="start:stop:count for wavefunctions")
    p.add_argument("--out", help="output file; stdout when omitted")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--sign", choices=("plus", "minus"), help="sign branch of the potential")
    p.add_argument("--energy", type=float, help="energy E for coeffs, wavefunction series and verify")
    p.add_argument("--level", type=int, help="bound level for wavefunction")
    p.add_argument("--method", choices=("auto", "closed", "recursion"), help="coefficient method")
    return p


def load_config(argv):
    args = build_parser().parse_args(argv)
    base = {}
    if args.config:
        try:
            with open(args.config) as fh:
                base = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(base, dict):
            raise UsageError("config file must hold a JSON object")
    params = {k: str(v) if not isinstance(v, list) else ",".join(map(str, v))
              for k, v in dict(base.get("params", {})).items()}
    params.update(parse_set(args.set))
    grid = args.grid if args.grid is not None else base.get("grid")
    if isinstance(grid, (list, tuple)):
        grid = ":".join(map(str, grid))

    def pick(name, default=None):
        v = getattr(args, name)
        return v if v is not None else base.get(name, default)

    cfg = RunConfig(model=pick("model"), command=pick("command"), params=params, N=pick("N"),
                    grid=parse_grid(grid) if grid is not None else None, out=pick("out"),
                    format=pick("format", "csv"), sign=pick("sign", "plus"), energy=pick("energy"),
                    level=pick("level"), method=pick("method", "auto"))
    if not cfg.model:
        raise UsageError("--model is required")
    if cfg.command not in COMMANDS:
        raise UsageError(f"--command must be one of {COMMANDS}")
    if cfg.format not in FORMATS:
        raise UsageError(f"--format must be one of {FORMATS}")
    return cfg


def make_case(cfg):
    from .models import CaseId, ModelCase, schema

    try:
        cid = CaseId(cfg.model)
    except ValueError:
        raise UsageError(f"unknown model {cfg.model!r}; choose from {[c.value for c in CaseId]}") from None
    required, optional = schema(cid)
    known = set(required) | set(optional)
    unknown = sorted(set(cfg.params) - known)
    if unknown:
        raise UsageError(f"unknown parameter(s) {unknown} for {cid.value}; expected {sorted(known)}")
    missing = [k for k in required if k not in cfg.params]
    if missing:
        raise UsageError(f"missing parameter(s) {missing} for {cid.value}")
    params = {k: _number(v, k) for k, v in cfg.params.items()}
    # value constraints surface as ParameterError: a computation error, exit 1
    return ModelCase(cid, params, cfg.sign)


# -- output --------------------------------------------------------------------


def _fmt(v):
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def render(columns, rows, fmt):
    if fmt == "csv":
        lines = [",".join(columns)]
        lines += [",".join(_fmt(v) for v in row) for row in rows]
        return "\n".join(lines) + "\n"
    def cell(v):
        if isinstance(v, str):
            return v
        return int(v) if isinstance(v, (int, np.integer)) else float(_fmt(v))

    data = [{c: cell(v) for c, v in zip(columns, row)} for row in rows]
    return json.dumps({"columns": list(columns), "rows": data}, indent=1) + "\n"


def write_atomic(path, text):
    """Write through a temporary file in the target directory, then rename."""
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".trirep-", dir=folder)
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit(cfg, columns, rows, stdout):
    text = render(columns, rows, cfg.format)
    if cfg.out:
        write_atomic(cfg.out, text)
    else:
        stdout.write(text)


# -- commands ------------------------------------------------------------------


def cmd_spectrum(cfg, stdout):
    from .models import bound_spectrum

    case = make_case(cfg)
    n = 4 if cfg.N is None else cfg.N
    if n < 1:
        raise UsageError(f"--N must be >= 1, got {n}")
    spec = bound_spectrum(case, n - 1)
    emit(cfg, ("n", "E_n"), [(k, e) for k, e in enumerate(spec.energies)], stdout)
    return 0


def _need_energy(cfg, what):
    if cfg.energy is None:
        raise UsageError(f"{what} needs --energy")
    return cfg.energy


def cmd_coeffs(cfg, stdout):
    from .models import expansion_coeffs

    case = make_case(cfg)
    E = 0.0 if case.id.value.startswith("PowerLaw") and cfg.energy is None else _need_energy(cfg, "coeffs")
    res = expansion_coeffs(case, E, cfg.N or 20, cfg.method)
    emit(cfg, ("n", "f_n"), list(enumerate(res.coeffs)), stdout)
    return 0


def cmd_wavefunction(cfg, stdout):
    from .models import wavefunction_eval

    case = make_case(cfg)
    if cfg.grid is None:
        raise UsageError("wavefunction needs --grid start:stop:count")
    r = np.linspace(*cfg.grid)
    if cfg.level is not None:
        psi = wavefunction_eval(case, r, level=cfg.level)
    else:
        psi = wavefunction_eval(case, r, E=_need_energy(cfg, "a continuum wavefunction"), N=cfg.N or 40)
    emit(cfg, ("r", "psi"), list(zip(r, psi)), stdout)
    return 0


def _density_rep(model, mu, nu, gamma, N):
    from .models import hulthen1_recursion, hulthen2_polynomial_rep
    from .tridiag import TridiagonalRep

    if model == "HulthenCase2":
        return hulthen2_polynomial_rep(mu, nu, gamma, N)
    D, L, U = hulthen1_recursion(mu, nu, gamma, N)
    return TridiagonalRep(D[:N], np.sqrt(U[: N - 1] * L[1:N]))


def cmd_density(cfg, stdout):
    from .density import estimate_density

    if cfg.model not in DENSITY_MODELS:
        raise UsageError(f"density is available for {DENSITY_MODELS}, got {cfg.model!r}")
    unknown = sorted(set(cfg.params) - set(DENSITY_KEYS))
    if unknown:
        raise UsageError(f"unknown density parameter(s) {unknown}; expected {list(DENSITY_KEYS)}")
    for k in ("mu", "nu", "gamma"):
        if k not in cfg.params:
            raise UsageError(f"density needs --set {k}=...")
    mu, nu = _number(cfg.params["mu"], "mu"), _number(cfg.params["nu"], "nu")
    gammas = [_number(g, "gamma") for g in cfg.params["gamma"].split(",") if g.strip()]
    n_points = int(_number(cfg.params.get("n_points", "401"), "n_points"))
    smoothing = _number(cfg.params["smoothing"], "smoothing") if "smoothing" in cfg.params else None
    N = cfg.N or 50
    rows = []
    for g in gammas:
        rep = _density_rep(cfg.model, mu, nu, g, N)
        deformation = (g, mu, nu) if cfg.model == "HulthenCase1" else None
        curve = estimate_density(rep, n_points, smoothing, deformation=deformation)
        rows += [(z, rho, g) for z, rho in zip(curve.z_grid, curve.rho)]
    emit(cfg, ("z", "rho", "gamma"), rows, stdout)
    return 0


def _default_energy(case):
    from .models import bound_spectrum

    if case.id.value.startswith("PowerLaw"):
        return 0.0
    try:
        E0 = bound_spectrum(case, 0).energies[0]
    except TrirepError:
        return None
    # near, but not on, the ground level; stays inside the admissible sign region
    return 0.9 * E0 if E0 != 0 else None


def cmd_verify(cfg, stdout):
    from .oracle import spectrum_report, tridiagonality_report

    case = make_case(cfg)
    E = cfg.energy if cfg.energy is not None else _default_energy(case)
    if E is None:
        raise UsageError(f"verify for {case.id.value} needs --energy (no closed-form level to start from)")
    N = cfg.N or 9
    rows = []
    rep = tridiagonality_report(case, E, N)
    rows.append(("tridiagonality |m-n|>=2", rep.offband, 1e-7))
    rows.append(("band agreement |m-n|<=1", rep.band_rel, 1e-6))
    if not case.id.value.startswith("PowerLaw"):
        try:
            pairs = spectrum_report(case, 3)
        except TrirepError as exc:
            stdout.write(f"spectrum check skipped: {exc}\n")
            pairs = []
        for k, (formula, shot) in enumerate(pairs):
            rows.append((f"Numerov level {k}", abs(shot - formula) / max(abs(formula), 1e-300), 1e-6))
    width = max(len(r[0]) for r in rows)
    stdout.write(f"{case.id.value} ({case.sign_choice}) at E = {E:.17g}\n")
    stdout.write(f"{'check':<{width}}  {'residual':>10}  {'tol':>7}  result\n")
    ok = True
    for name, value, tol in rows:
        passed = bool(value < tol)
        ok &= passed
        stdout.write(f"{name:<{width}}  {value:10.2e}  {tol:7.0e}  {'PASS' if passed else 'FAIL'}\n")
    if cfg.out:
        emit(cfg, ("check", "residual", "tolerance", "passed"),
             [(n, v, t, int(v < t)) for n, v, t in rows], stdout)
    return 0 if ok else 1


HANDLERS = {"spectrum": cmd_spectrum, "coeffs": cmd_coeffs, "wavefunction": cmd_wavefunction,
            "density": cmd_density, "verify": cmd_verify}


def run(cfg, stdout=None, stderr=None):
    """Dispatch a parsed :class:`RunConfig`; returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        return HANDLERS[cfg.command](cfg, stdout)
    except UsageError as exc:
        stderr.write(f"trirep: usage error: {exc}\n")
        return 2
    except TrirepError as exc:
        stderr.write(f"trirep: {type(exc).__name__}: {exc}\n")
        return 1


def main(argv=None):
    try:
        cfg = load_config(argv)
    except UsageError as exc:
        sys.stderr.write(f"trirep: usage error: {exc}\n")
        return 2
    except SystemExit as exc:  # argparse
        return 2 if exc.code else 0
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
