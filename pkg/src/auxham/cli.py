"""Command-line entry point.

Examples::

    auxham simulate --model vdp --epsilon 0.1 --t-end 50 > traj.csv
    auxham limit-cycle --epsilon 0.1
    auxham compare --sweep epsilon=0.05,0.1,0.2 --jobs 3
    auxham conserve-check --kind bateman --lam 0.1 --t-end 50

Every option can also come from a JSON config file (``--config run.json``)
holding a flat object whose keys are the long option names with dashes
replaced by underscores. Command-line flags override the file.

Exit codes: 0 success, 1 configuration error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import fields
from pathlib import Path

import numpy as np

from . import analysis, hamiltonians, models, perturb
from .integrate import IntegrationError, IntegratorConfig, integrate

PARAM_FIELDS = [f.name for f in fields(models.SystemParams)]
PARAM_FLAGS = {
    "epsilon": "--epsilon", "omega": "--omega", "alpha": "--alpha", "beta": "--beta",
    "lam": "--lam", "Omega_big": "--Omega-big", "F1": "--F1", "gamma": "--gamma",
    "F2": "--F2", "Omega_ext": "--Omega-ext",
}
DEFAULTS = {
    "rel_tol": 1e-10, "abs_tol": 1e-10, "method": "RK45",
    "x0": 0.5, "xdot0": 0.0, "y0": 0.0, "ydot0": 0.0,
    "t_end": 50.0, "samples": 1001, "model": "vdp", "kind": "vdp_simple",
    "settle": None, "periods": 20, "phi10": math.pi / 2, "amplitude": 2.0,
    "horizon": 10, "minimal": False, "jobs": 1, "sweep": None, "out": None,
    "threshold": 1e-8,
}
SIMULATE_MODELS = ("vdp", "symmetric", "forced", "dsho", "linearized")


class ConfigError(ValueError):
    pass


def fmt(v) -> str:
    return format(float(v), ".17g")


# --- configuration ---------------------------------------------------------

def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON file with option values")
    common.add_argument("--out", help="output file (default: stdout)")
    for name, flag in PARAM_FLAGS.items():
        common.add_argument(flag, dest=name, type=float, default=None)
    common.add_argument("--rel-tol", dest="rel_tol", type=float)
    common.add_argument("--abs-tol", dest="abs_tol", type=float)
    common.add_argument("--method", choices=("RK45", "DOP853", "RK4"))
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    ap = argparse.ArgumentParser(prog="auxham", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def initial_state(p):
        for name in ("x0", "xdot0", "y0", "ydot0"):
            p.add_argument(f"--{name.replace('_', '-')}", dest=name, type=float)

    p = sub.add_parser("simulate", parents=[common], help="integrate a model, CSV out")
    p.add_argument("--model", choices=SIMULATE_MODELS)
    p.add_argument("--t-end", dest="t_end", type=float)
    p.add_argument("--samples", type=int)
    p.add_argument("--amplitude", type=float, help="limit-cycle amplitude (linearized model)")
    initial_state(p)

    p = sub.add_parser("limit-cycle", parents=[common], help="measure the VdP limit cycle")
    p.add_argument("--settle", type=float)
    p.add_argument("--periods", type=int)
    p.add_argument("--x0", type=float)
    p.add_argument("--xdot0", type=float)

    p = sub.add_parser("floquet", parents=[common], help="Hill-equation monodromy")
    p.add_argument("--minimal", action="store_true", default=None)
    p.add_argument("--horizon", type=int, help="periods for the direct growth check")

    p = sub.add_parser("perturb", parents=[common], help="perturbative predictions")
    p.add_argument("--phi10", type=float)
    p.add_argument("--t-end", dest="t_end", type=float)
    p.add_argument("--samples", type=int)
    p.add_argument("--modes-out", dest="modes_out", help="write K1/S1 series as JSON")
    p.add_argument("--waveform-out", dest="waveform_out", help="write predicted x(t) as CSV")

    p = sub.add_parser("conserve-check", parents=[common], help="energy drift along the flow")
    p.add_argument("--kind", choices=sorted(hamiltonians.KINDS))
    p.add_argument("--t-end", dest="t_end", type=float)
    p.add_argument("--amplitude", type=float)
    p.add_argument("--threshold", type=float)
    initial_state(p)

    p = sub.add_parser("compare", parents=[common], help="measured vs predicted frequency")
    p.add_argument("--sweep", help="name=v1,v2,...")
    p.add_argument("--settle", type=float)
    p.add_argument("--periods", type=int)
    p.add_argument("--jobs", type=int)

    p = sub.add_parser("galley", parents=[common], help="q1/q2 split along a trajectory")
    p.add_argument("--t-end", dest="t_end", type=float)
    p.add_argument("--samples", type=int)
    initial_state(p)
    return ap


def load_config(path: Path) -> dict:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be an object")
    known = set(DEFAULTS) | set(PARAM_FIELDS) | {"modes_out", "waveform_out"}
    for key, value in data.items():
        if key not in known:
            raise ConfigError(f"{path}: unknown key {key!r}")
        if isinstance(value, (dict, list)):
            raise ConfigError(f"{path}: key {key!r} must be a scalar")
    return data


def resolve(args: argparse.Namespace) -> dict:
    opts = dict(DEFAULTS)
    if args.command == "conserve-check":
        opts["method"] = "DOP853"  # drift test wants the higher-order pair
    if args.config is not None:
        opts.update(load_config(args.config))
    for k, v in vars(args).items():
        if v is not None and k != "config":
            opts[k] = v
    return opts


def make_params(opts: dict) -> models.SystemParams:
    try:
        kw = {k: float(opts[k]) for k in PARAM_FIELDS if opts.get(k) is not None}
        return models.SystemParams(**kw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"parameters: {exc}") from None


def make_integrator(opts: dict) -> IntegratorConfig:
    try:
        return IntegratorConfig(rel_tol=float(opts["rel_tol"]), abs_tol=float(opts["abs_tol"]),
                                method=opts["method"])
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"integrator: {exc}") from None


def parse_sweep(spec: str | None) -> tuple[str, list[float]]:
    if not spec or "=" not in spec:
        raise ConfigError("sweep: expected name=v1,v2,...")
    name, _, values = spec.partition("=")
    name = name.strip()
    if name not in PARAM_FIELDS:
        raise ConfigError(f"sweep: unknown parameter {name!r}")
    try:
        vals = [float(v) for v in values.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"sweep: non-numeric value in {values!r}") from None
    if not vals or not all(math.isfinite(v) for v in vals):
        raise ConfigError("sweep: values must be finite and nonempty")
    return name, vals


# --- output ----------------------------------------------------------------

def write_csv(header, rows, out) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(v) for v in r])
    emit(buf.getvalue(), out)


def write_json(obj, out) -> None:
    emit(json.dumps(obj, indent=2, sort_keys=True) + "\n", out)


def emit(text: str, out) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


# --- commands --------------------------------------------------------------

def cmd_simulate(opts):
    p = make_params(opts)
    cfg = make_integrator(opts)
    z0 = [float(opts[k]) for k in ("x0", "xdot0", "y0", "ydot0")]
    model = opts["model"]
    if model not in SIMULATE_MODELS:
        raise ConfigError(f"model: unknown {model!r}")
    rhs = {
        "vdp": lambda t, z: models.vdp_pair_rhs(z, p),
        "symmetric": lambda t, z: models.symmetric_ab_rhs(z, p),
        "forced": lambda t, z: models.forced_vdp_pair_rhs(z, t, p),
        "dsho": lambda t, z: models.dsho_pair_rhs(z, p),
        "linearized": lambda t, z: models.linearized_pair_rhs(z, p, float(opts["amplitude"])),
    }[model]
    t_end = float(opts["t_end"])
    n = int(opts["samples"])
    if not t_end > 0 or n < 2:
        raise ConfigError("t_end must be positive and samples >= 2")
    ts = np.linspace(0.0, t_end, n)
    try:
        traj = integrate(rhs, z0, (0.0, t_end), cfg)
    except IntegrationError as exc:
        if exc.partial is not None:
            ok = ts[ts <= exc.t_fail]
            write_csv(["t", "x", "xdot", "y", "ydot"],
                      [(t, *s) for t, s in zip(ok, exc.partial(ok))], opts["out"])
        sys.stderr.write(f"partial output: {exc}\n")
        return 2
    write_csv(["t", "x", "xdot", "y", "ydot"], [(t, *s) for t, s in zip(ts, traj(ts))], opts["out"])
    return 0


def cmd_limit_cycle(opts):
    p = make_params(opts)
    rep = analysis.measure_limit_cycle(
        p, make_integrator(opts), settle_time=opts["settle"], n_periods=int(opts["periods"]),
        x0=(float(opts["x0"]), float(opts["xdot0"])))
    write_json(rep.to_dict(), opts["out"])
    return 0


def cmd_floquet(opts):
    p = make_params(opts)
    f = analysis.monodromy(p, minimal=bool(opts["minimal"]))
    out = {
        "period": f.period,
        "monodromy": f.monodromy.tolist(),
        "multipliers": [[m.real, m.imag] for m in f.multipliers],
        "max_multiplier": f.max_multiplier,
        "det": f.det,
        "trace": f.trace,
        "envelope_growth": f.envelope_growth,
        "growth_per_period": f.growth_per_period,
        "resonant": f.resonant,
    }
    if not opts["minimal"]:
        g = analysis.auxiliary_growth_check(p, make_integrator(opts), horizon=int(opts["horizon"]))
        out["measured_growth_per_period"] = g.measured
        out["growth_ratio"] = g.ratio
    write_json(out, opts["out"])
    return 0


def cmd_perturb(opts):
    p = make_params(opts)
    first = perturb.s1_build()
    w = p.omega

    def table(series):
        rows = []
        for m in sorted(series.modes):
            a = series.amplitude(m, w, w, w, -1)
            rows.append({"m1": m[0], "m2": m[1], "re": a.real, "im": a.imag})
        return rows

    out = {
        "frequency": perturb.predict_frequency(p),
        "frequency_closed_form": perturb.predict_frequency_closed(p),
        "e_r2": perturb.e_r2(w, w, -1, p),
        "de_r2_dI1": perturb.e_r2_dI1(w, w, -1, p),
        "third_harmonic": p.epsilon / (4 * w),
        "k1_modes": table(perturb.k1_modes()),
        "s1_modes": table(first.S1),
        "resonant_modes": [list(m) for m in sorted(first.resonant.modes)],
    }
    write_json(out, opts["out"])
    if opts.get("modes_out"):
        emit(json.dumps({"k1": perturb.k1_modes().to_json(), "s1": first.S1.to_json()},
                        indent=2, sort_keys=True) + "\n", opts["modes_out"])
    if opts.get("waveform_out"):
        ts = np.linspace(0.0, float(opts["t_end"]), int(opts["samples"]))
        xs = perturb.predict_waveform(ts, float(opts["phi10"]), p)
        write_csv(["t", "x"], zip(ts, xs), opts["waveform_out"])
    return 0


def cmd_conserve_check(opts):
    p = make_params(opts)
    kind = opts["kind"]
    if kind not in hamiltonians.KINDS:
        raise ConfigError(f"kind: unknown {kind!r}")
    cls = hamiltonians.KINDS[kind]
    if not cls.autonomous:
        raise ConfigError(f"kind {kind!r} is not autonomous; use power-balance")
    if cls is hamiltonians.AveragedQuadratic:
        h = cls(p, float(opts["amplitude"]))
    elif cls is hamiltonians.LienardGeneral:
        h = cls(p, hamiltonians.VDP_SPLIT_F2)
    else:
        h = cls(p)
    z0 = [float(opts[k]) for k in ("x0", "xdot0", "y0", "ydot0")]
    s0 = h.momenta(z0)
    drift = hamiltonians.energy_drift(h, s0, float(opts["t_end"]), make_integrator(opts))
    ok = drift < float(opts["threshold"])
    emit(f"kind: {kind}\nmax relative drift: {drift:.3e}\n{'PASS' if ok else 'FAIL'}\n", opts["out"])
    return 0 if ok else 2


def _compare_point(args):
    p, cfg, settle, periods = args
    rep = analysis.measure_limit_cycle(p, cfg, settle_time=settle, n_periods=periods)
    pred = perturb.predict_frequency(p)
    return rep.frequency, pred


def cmd_compare(opts):
    name, values = parse_sweep(opts["sweep"])
    base = make_params(opts)
    cfg = make_integrator(opts)
    pts = [(base.with_(**{name: v}), cfg, opts["settle"], int(opts["periods"])) for v in values]
    jobs = int(opts["jobs"])
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_compare_point, pts))
    else:
        results = [_compare_point(a) for a in pts]
    rows = [(v, m, pr, abs(m - pr)) for v, (m, pr) in zip(values, results)]
    write_csv([name, "measured_freq", "predicted_freq", "abs_err"], rows, opts["out"])
    return 0


def cmd_galley(opts):
    p = make_params(opts)
    z0 = [float(opts[k]) for k in ("x0", "xdot0", "y0", "ydot0")]
    t_end = float(opts["t_end"])
    traj = integrate(lambda t, z: models.vdp_pair_rhs(z, p), z0, (0.0, t_end), make_integrator(opts))
    ts = np.linspace(0.0, t_end, int(opts["samples"]))
    rows = []
    for t, z in zip(ts, traj(ts)):
        d = hamiltonians.galley_decompose(z, p)
        rows.append((t, d.q1, d.q2, d.forward, d.backward, d.N, d.total))
    write_csv(["t", "q1", "q2", "forward", "backward", "N", "lagrangian"], rows, opts["out"])
    return 0


COMMANDS = {
    "simulate": cmd_simulate,
    "limit-cycle": cmd_limit_cycle,
    "floquet": cmd_floquet,
    "perturb": cmd_perturb,
    "conserve-check": cmd_conserve_check,
    "compare": cmd_compare,
    "galley": cmd_galley,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        opts = resolve(args)
        return COMMANDS[args.command](opts)
    except ConfigError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return 1
    except (IntegrationError, analysis.LimitCycleError, models.OverdampedError) as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return 2
    except (TypeError, ValueError) as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
