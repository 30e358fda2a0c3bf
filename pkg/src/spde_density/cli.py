"""Scenario-driven command line driver.

Commands (all emit CSV, written atomically):

* ``density``        closed-form density values on a law-relative u grid
* ``fk-estimate``    Monte Carlo estimates with standard errors
* ``oracle-sample``  exact spectral sampling with a KS comparison
* ``fp-residual``    finite-difference density-equation residuals
* ``ck-check``       two-step transition-kernel composition error
* ``scenario run``   density + fk-estimate + oracle-sample for a bundled
  scenario (``example1``, ``example3-multiplicative``, ``example4-kpz``)
  or for a config path

Config files are strict key/value text with ``[model]``, ``[run]`` and
``[outputs]`` sections; unknown keys and duplicate keys are rejected so a
scenario file doubles as a reproducibility record.  Numeric output uses
17 significant digits, which round-trips doubles exactly.

Exit codes: 0 success, 1 configuration/validation error, 2 runtime
numerical error (the error class is named on stderr).
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import tempfile
from dataclasses import dataclass
from importlib import resources

import numpy as np

from . import bases
from .densities import (
    AdditiveModeKernel,
    DegenerateAtomLaw,
    GaussianLaw,
    KpzBrownianKernel,
    MultiplicativeGbmKernel,
    SignedLogNormalLaw,
    additive_law,
    kpz_law,
    multiplicative_law,
)
from .errors import InvalidParameter, ParseError, SpdeDensityError, UnknownKey
from .feynman_kac import estimate_additive_pdf, estimate_kpz_pdf, estimate_multiplicative_pdf
from .fokker_planck import ck_check, fp_residual_additive, fp_residual_kpz
from .forcing import SeparableForcing, ZERO_FORCING
from .homogenization import BoundaryCase
from .model import (
    AdditiveModel,
    ExplicitAmplitudes,
    KpzModel,
    MultiplicativeModel,
    NoiseSpec,
    ReciprocalAmplitudes,
    SingleModeAmplitudes,
    validate,
)
from .oracle import sample_additive, sample_kpz, sample_multiplicative
from .spectral import AdditiveMoments
from .timefuncs import COS, SIN, TrigPoly, constant

SEED_ENV_VAR = "SPDE_DENSITY_SEED"

COMMANDS = ("density", "fk-estimate", "oracle-sample", "fp-residual", "ck-check", "scenario")

_MODEL_KEYS = {
    "type", "a", "b", "c", "sigma", "alpha", "eps", "m", "q_m", "q_rule", "q_list",
    "n_modes", "forcing", "boundary", "g", "h", "gamma", "gamma1", "gamma2",
    "mu0", "nu0", "log_mean0", "log_var0", "theta", "xi", "window_lo", "window_hi",
}
_RUN_KEYS = {
    "t", "x", "u_count", "u_halfwidth", "fk_u_count", "fk_u_halfwidth",
    "dt", "T", "n_paths", "scheme", "oracle_samples", "seed", "tail_tol",
    "fp_x", "fp_u_min", "fp_u_max", "fp_du", "fp_t_min", "fp_t_max", "fp_dt",
    "ck_family", "ck_mode", "ck_x", "ck_w", "ck_s", "ck_r", "ck_t",
    "ck_u_count", "ck_u_halfwidth",
}
_OUTPUT_KEYS = {"density_csv", "fk_csv", "oracle_csv", "residual_csv", "ck_csv"}
_SECTIONS = {"model": _MODEL_KEYS, "run": _RUN_KEYS, "outputs": _OUTPUT_KEYS}


# ---------------------------------------------------------------------------
# config parsing
# ---------------------------------------------------------------------------


@dataclass
class Scenario:
    """A parsed configuration: validated model plus run/output settings."""

    name: str
    model: object
    n_modes: int
    run: dict
    outputs: dict


def _parse_sections(text):
    sections = {}
    current = None
    saw_content = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        saw_content = True
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name not in _SECTIONS:
                raise ParseError(lineno, f"unknown section [{name}]")
            if name in sections:
                raise ParseError(lineno, f"duplicate section [{name}]")
            sections[name] = {}
            current = name
            continue
        if current is None:
            raise ParseError(lineno, "key/value pair before any [section] header")
        if "=" not in line:
            raise ParseError(lineno, f"expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _SECTIONS[current]:
            raise UnknownKey(f"[{current}] {key}")
        if key in sections[current]:
            raise ParseError(lineno, f"duplicate key {key!r} in [{current}]")
        if not value:
            raise ParseError(lineno, f"empty value for key {key!r}")
        sections[current][key] = value
    if not saw_content:
        raise ParseError(0, "empty configuration")
    return sections


def _float(section, key, raw):
    try:
        return float(raw)
    except ValueError:
        raise ParseError(0, f"[{section}] {key}: {raw!r} is not a number") from None


def _int(section, key, raw):
    try:
        return int(raw)
    except ValueError:
        raise ParseError(0, f"[{section}] {key}: {raw!r} is not an integer") from None


def _float_list(section, key, raw):
    return [_float(section, key, part.strip()) for part in raw.split(",") if part.strip()]


def _time_function(section, key, raw):
    if raw == "zero":
        return TrigPoly()
    if raw == "sin(t)":
        return SIN
    if raw == "cos(t)":
        return COS
    if raw.startswith("const:"):
        return constant(_float(section, key, raw[len("const:"):]))
    raise ParseError(0, f"[{section}] {key}: unknown form {raw!r} "
                        "(use zero | sin(t) | cos(t) | const:<v>)")


def _forcing(raw, section="model", key="forcing"):
    if raw == "zero":
        return ZERO_FORCING
    if raw == "cos(t)*e1(x)":
        return SeparableForcing([(COS, lambda x: bases.basis_eval(bases.COSINE, 1, x))])
    raise ParseError(0, f"[{section}] {key}: unknown form {raw!r} "
                        "(use zero | cos(t)*e1(x))")


def _amplitude_rule(model_sec):
    raw = model_sec.get("q_rule", "reciprocal")
    if raw == "reciprocal":
        return ReciprocalAmplitudes()
    if raw == "list":
        if "q_list" not in model_sec:
            raise ParseError(0, "[model] q_rule = list requires q_list")
        return ExplicitAmplitudes(tuple(_float_list("model", "q_list", model_sec["q_list"])))
    if raw.startswith("single:"):
        mode = _int("model", "q_rule", raw[len("single:"):])
        amp = _float("model", "q_m", model_sec.get("q_m", "1"))
        return SingleModeAmplitudes(mode, amp)
    raise ParseError(0, f"[model] q_rule: unknown rule {raw!r} "
                        "(use reciprocal | list | single:<m>)")


def _build_model(model_sec):
    mtype = model_sec.get("type")
    if mtype is None:
        raise ParseError(0, "[model] type is required")
    if mtype == "additive":
        n_modes = _int("model", "n_modes", model_sec.get("n_modes", "10"))
        g = _time_function("model", "g", model_sec.get("g", "zero"))
        h = _time_function("model", "h", model_sec.get("h", "zero"))
        braw = model_sec.get("boundary", "main")
        if braw == "main":
            boundary = BoundaryCase("main", g=g, h=h)
        elif braw.startswith("table1:"):
            boundary = BoundaryCase(
                _int("model", "boundary", braw[len("table1:"):]), g=g, h=h,
                gamma=_opt_float(model_sec, "gamma"),
                gamma1=_opt_float(model_sec, "gamma1"),
                gamma2=_opt_float(model_sec, "gamma2"),
            )
        else:
            raise ParseError(0, f"[model] boundary: unknown case {braw!r}")
        mu0 = _float_list("model", "mu0", model_sec.get("mu0", "0"))
        nu0 = _float_list("model", "nu0", model_sec.get("nu0", "0"))
        laws = [(m, v) for m, v in zip_longest_zeros(mu0, nu0)]
        model = AdditiveModel(
            a=_float("model", "a", model_sec.get("a", "1")),
            b=_float("model", "b", model_sec.get("b", "0")),
            sigma=_float("model", "sigma", model_sec.get("sigma", "1")),
            noise=NoiseSpec(_amplitude_rule(model_sec), truncation_order=n_modes),
            initial_mode_laws=laws,
            forcing=_forcing(model_sec.get("forcing", "zero")),
            boundary=boundary,
        )
        return validate(model), n_modes
    if mtype == "multiplicative":
        model = MultiplicativeModel(
            a=_float("model", "a", model_sec.get("a", "1")),
            b=_float("model", "b", model_sec.get("b", "0")),
            c=_float("model", "c", model_sec.get("c", "0")),
            alpha=_float("model", "alpha", model_sec.get("alpha", "1")),
            eps=_float("model", "eps", model_sec.get("eps", "1")),
            m=_int("model", "m", model_sec.get("m", "1")),
            q_m=_float("model", "q_m", model_sec.get("q_m", "1")),
            log_mean0=_float("model", "log_mean0", model_sec.get("log_mean0", "0")),
            log_var0=_float("model", "log_var0", model_sec.get("log_var0", "1")),
        )
        return validate(model), model.m
    if mtype == "kpz":
        model = KpzModel(
            theta=_float("model", "theta", model_sec.get("theta", "1")),
            xi=_float("model", "xi", model_sec.get("xi", "1")),
            eps=_float("model", "eps", model_sec.get("eps", "1")),
            m=_int("model", "m", model_sec.get("m", "1")),
            q_m=_float("model", "q_m", model_sec.get("q_m", "1")),
            log_mean0=_float("model", "log_mean0", model_sec.get("log_mean0", "0")),
            log_var0=_float("model", "log_var0", model_sec.get("log_var0", "1")),
            window=(
                _float("model", "window_lo", model_sec.get("window_lo", "0.0625")),
                _float("model", "window_hi", model_sec.get("window_hi", "0.9375")),
            ),
        )
        return validate(model), model.m
    raise ParseError(0, f"[model] type: unknown model type {mtype!r}")


def _opt_float(section_dict, key):
    return float(section_dict[key]) if key in section_dict else None


def zip_longest_zeros(means, variances):
    n = max(len(means), len(variances))
    for i in range(n):
        yield (means[i] if i < len(means) else 0.0,
               variances[i] if i < len(variances) else 0.0)


_RUN_TYPES = {
    "t": ("list", [1.0]), "x": ("list", [0.5]),
    "u_count": ("int", 101), "u_halfwidth": ("float", 4.0),
    "fk_u_count": ("int", 20), "fk_u_halfwidth": ("float", 2.5),
    "dt": ("float", 0.01), "T": ("float", None), "n_paths": ("int", 10000),
    "scheme": ("str", "exact-gbm"), "oracle_samples": ("int", 10000),
    "seed": ("int", 0), "tail_tol": ("float", None),
    "fp_x": ("float", None), "fp_u_min": ("float", None), "fp_u_max": ("float", None),
    "fp_du": ("float", None), "fp_t_min": ("float", None), "fp_t_max": ("float", None),
    "fp_dt": ("float", None),
    "ck_family": ("str", None), "ck_mode": ("int", 1), "ck_x": ("float", 0.5),
    "ck_w": ("float", 0.5), "ck_s": ("float", 0.2), "ck_r": ("float", 0.5),
    "ck_t": ("float", 1.0), "ck_u_count": ("int", 20), "ck_u_halfwidth": ("float", 2.5),
}


def _build_run(run_sec):
    run = {}
    for key, (kind, default) in _RUN_TYPES.items():
        if key in run_sec:
            raw = run_sec[key]
            if kind == "list":
                run[key] = _float_list("run", key, raw)
            elif kind == "int":
                run[key] = _int("run", key, raw)
            elif kind == "float":
                run[key] = _float("run", key, raw)
            else:
                run[key] = raw
        else:
            run[key] = default
    for key in ("t", "x"):
        if not run[key] or not all(math.isfinite(v) for v in run[key]):
            raise ParseError(0, f"[run] {key}: needs a non-empty list of finite values")
    for key, minimum in (("u_count", 2), ("fk_u_count", 1), ("ck_u_count", 1),
                         ("n_paths", 1), ("oracle_samples", 2)):
        if run[key] < minimum:
            raise ParseError(0, f"[run] {key}: must be >= {minimum}")
    if run["dt"] <= 0.0:
        raise ParseError(0, "[run] dt: must be positive")
    return run


def parse_config(path) -> Scenario:
    """Parse and validate a scenario file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(0, f"cannot read {path}: {exc}") from None
    sections = _parse_sections(text)
    model, n_modes = _build_model(sections.get("model", {}))
    run = _build_run(sections.get("run", {}))
    outputs = dict(sections.get("outputs", {}))
    name = os.path.splitext(os.path.basename(str(path)))[0]
    return Scenario(name=name, model=model, n_modes=n_modes, run=run, outputs=outputs)


# ---------------------------------------------------------------------------
# CSV output
# ---------------------------------------------------------------------------


def _fmt(value):
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.17g}"


def write_csv_atomic(path, header, rows):
    """Write a CSV atomically: temp file in the target directory + rename."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(_fmt(v) for v in row) + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# law helpers
# ---------------------------------------------------------------------------


def _law_for(scenario, t, x, moments=None):
    model = scenario.model
    if isinstance(model, AdditiveModel):
        return additive_law(t, x, moments)
    if isinstance(model, MultiplicativeModel):
        return multiplicative_law(t, x, model)
    return kpz_law(t, x, model)


def _law_grid(law, count, halfwidth):
    """A u grid covering the law's bulk (mean +/- halfwidth sd, log-space
    for the signed log-normal)."""
    if isinstance(law, GaussianLaw):
        sd = math.sqrt(law.variance)
        return np.linspace(law.mean - halfwidth * sd, law.mean + halfwidth * sd, count)
    if isinstance(law, SignedLogNormalLaw):
        sd = math.sqrt(law.log_var)
        logs = np.linspace(law.log_mean - halfwidth * sd, law.log_mean + halfwidth * sd, count)
        return np.sort(law.sign * np.exp(logs))
    raise SpdeDensityError("cannot build a density grid on an atomic law")


def _law_moments(law):
    if isinstance(law, GaussianLaw):
        return law.mean, law.variance
    if isinstance(law, SignedLogNormalLaw):
        mean = law.sign * math.exp(law.log_mean + law.log_var / 2.0)
        var = math.expm1(law.log_var) * math.exp(2.0 * law.log_mean + law.log_var)
        return mean, var
    return law.value, 0.0


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _moments_engine(scenario):
    if not isinstance(scenario.model, AdditiveModel):
        return None
    engine = AdditiveMoments(scenario.model, n_modes=scenario.n_modes)
    tol = scenario.run.get("tail_tol")
    if tol is not None:
        # grow the truncation until the tail certificates meet the requested
        # tolerance at the latest run time (mid-interval reference point)
        field = engine.at(max(scenario.run["t"]), 0.5, tol=tol)
        if field.n_modes != engine.n_modes:
            engine = AdditiveMoments(scenario.model, n_modes=field.n_modes)
    return engine


def _require_output(scenario, key):
    if key not in scenario.outputs:
        raise ParseError(0, f"[outputs] {key} is required for this command")
    return scenario.outputs[key]


def _resolve(out_dir, filename):
    return os.path.join(out_dir, filename) if out_dir else filename


def cmd_density(scenario, out_dir, seed, threads):
    moments = _moments_engine(scenario)
    rows = []
    for t in scenario.run["t"]:
        for x in scenario.run["x"]:
            law = _law_for(scenario, t, x, moments)
            if isinstance(law, DegenerateAtomLaw):
                continue  # atomic points carry no density rows
            grid = _law_grid(law, scenario.run["u_count"], scenario.run["u_halfwidth"])
            for u in grid:
                rows.append((u, t, x, float(law.pdf(u))))
    path = _resolve(out_dir, _require_output(scenario, "density_csv"))
    write_csv_atomic(path, ("u", "t", "x", "p_closed"), rows)
    return [path]


def cmd_fk_estimate(scenario, out_dir, seed, threads):
    moments = _moments_engine(scenario)
    model = scenario.model
    run = scenario.run
    rows = []
    for t in run["t"]:
        for x in run["x"]:
            law = _law_for(scenario, t, x, moments)
            if isinstance(law, DegenerateAtomLaw):
                continue
            grid = _law_grid(law, run["fk_u_count"], run["fk_u_halfwidth"])
            for u in grid:
                if isinstance(model, AdditiveModel):
                    T = run["T"] if run["T"] is not None else 2.0 * t
                    est = estimate_additive_pdf(
                        float(u), t, x, T, run["dt"], run["n_paths"], seed, moments,
                        threads=threads,
                    )
                elif isinstance(model, MultiplicativeModel):
                    est = estimate_multiplicative_pdf(
                        float(u), t, x, run["dt"], run["n_paths"], seed, model,
                        scheme=run["scheme"], threads=threads,
                    )
                else:
                    T = run["T"] if run["T"] is not None else 2.0 * t
                    est = estimate_kpz_pdf(
                        float(u), t, x, T, run["dt"], run["n_paths"], seed, model,
                        threads=threads,
                    )
                rows.append((u, t, x, float(law.pdf(u)), est.value, est.stderr,
                             est.n_paths, est.dt, seed))
    path = _resolve(out_dir, _require_output(scenario, "fk_csv"))
    write_csv_atomic(
        path,
        ("u", "t", "x", "p_closed", "p_fk", "stderr", "n_paths", "dt", "seed"),
        rows,
    )
    return [path]


def cmd_oracle_sample(scenario, out_dir, seed, threads):
    moments = _moments_engine(scenario)
    model = scenario.model
    run = scenario.run
    rows = []
    for t in run["t"]:
        for x in run["x"]:
            if isinstance(model, AdditiveModel):
                stats = sample_additive(t, x, run["oracle_samples"], seed, moments)
            elif isinstance(model, MultiplicativeModel):
                stats = sample_multiplicative(t, x, run["oracle_samples"], seed, model)
            else:
                stats = sample_kpz(t, x, run["oracle_samples"], seed, model)
            law = _law_for(scenario, t, x, moments)
            mean_a, var_a = _law_moments(law)
            ks = stats.ks if stats.ks is not None else math.nan
            rows.append((t, x, stats.n, ks, stats.mean, mean_a, stats.variance, var_a))
    path = _resolve(out_dir, _require_output(scenario, "oracle_csv"))
    write_csv_atomic(
        path,
        ("t", "x", "n", "ks", "mean_emp", "mean_analytic", "var_emp", "var_analytic"),
        rows,
    )
    return [path]


def cmd_fp_residual(scenario, out_dir, seed, threads):
    run = scenario.run
    model = scenario.model
    needed = ("fp_x", "fp_u_min", "fp_u_max", "fp_du", "fp_t_min", "fp_t_max", "fp_dt")
    if any(run[k] is None for k in needed):
        raise ParseError(0, f"[run] fp-residual requires keys: {', '.join(needed)}")
    u_range = (run["fp_u_min"], run["fp_u_max"])
    t_range = (run["fp_t_min"], run["fp_t_max"])
    rows = []
    du, dt = run["fp_du"], run["fp_dt"]
    previous = None
    for _level in range(3):
        if isinstance(model, AdditiveModel):
            report = fp_residual_additive(
                _moments_engine(scenario), run["fp_x"], u_range, t_range, du, dt
            )
        elif isinstance(model, KpzModel):
            report = fp_residual_kpz(model, run["fp_x"], u_range, t_range, du, dt)
        else:
            raise SpdeDensityError(
                "fp-residual applies to the additive and kpz models; the "
                "multiplicative case has the analytic identity check"
            )
        order = 0.0 if previous is None else math.log2(previous / report.max_abs_residual)
        rows.append((report.du, report.dt, report.max_abs_residual, order))
        previous = report.max_abs_residual
        du /= 2.0
        dt /= 2.0
    path = _resolve(out_dir, _require_output(scenario, "residual_csv"))
    write_csv_atomic(path, ("du", "dt", "max_residual", "order"), rows)
    return [path]


def cmd_ck_check(scenario, out_dir, seed, threads):
    run = scenario.run
    model = scenario.model
    family = run["ck_family"]
    if family is None:
        family = {
            AdditiveModel: "additive-mode",
            MultiplicativeModel: "gbm",
            KpzModel: "kpz",
        }[type(model)]
    if family == "additive-mode":
        kernel = AdditiveModeKernel(_moments_engine(scenario), run["ck_mode"], run["ck_x"])
    elif family == "gbm":
        kernel = MultiplicativeGbmKernel(model)
    elif family == "kpz":
        kernel = KpzBrownianKernel(model)
    else:
        raise ParseError(0, f"[run] ck_family: unknown family {family!r}")
    s, r, t, w = run["ck_s"], run["ck_r"], run["ck_t"], run["ck_w"]
    direct = kernel.law(w, s, t)
    grid = _law_grid(direct, run["ck_u_count"], run["ck_u_halfwidth"])
    error = ck_check(kernel, w, s, r, t, grid)
    path = _resolve(out_dir, _require_output(scenario, "ck_csv"))
    write_csv_atomic(path, ("s", "r", "t", "max_error"), [(s, r, t, error)])
    return [path]


_COMMAND_FNS = {
    "density": cmd_density,
    "fk-estimate": cmd_fk_estimate,
    "oracle-sample": cmd_oracle_sample,
    "fp-residual": cmd_fp_residual,
    "ck-check": cmd_ck_check,
}

BUNDLED_SCENARIOS = ("example1", "example3-multiplicative", "example4-kpz")


def bundled_scenario_path(name):
    ref = resources.files("spde_density").joinpath(f"scenarios/{name}.cfg")
    if not ref.is_file():
        raise ParseError(0, f"no bundled scenario named {name!r}")
    return str(ref)


def resolve_seed(cli_seed, scenario):
    """Seed precedence: --seed flag, then environment, then config, then 0."""
    if cli_seed is not None:
        return int(cli_seed)
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        return int(env)
    return int(scenario.run.get("seed") or 0)


def run(command, config_path, out_dir=None, seed=None, threads=1):
    """Programmatic entry point; returns the list of CSV paths written."""
    scenario = parse_config(config_path)
    effective_seed = resolve_seed(seed, scenario)
    if command == "scenario":
        written = []
        for sub in ("density", "fk-estimate", "oracle-sample"):
            written += _COMMAND_FNS[sub](scenario, out_dir, effective_seed, threads)
        return written
    if command not in _COMMAND_FNS:
        raise ParseError(0, f"unknown command {command!r}")
    return _COMMAND_FNS[command](scenario, out_dir, effective_seed, threads)


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="spde-density",
        description="Closed-form stochastic-heat-equation densities with "
                    "Monte Carlo and residual verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--out", default=None, help="directory for output CSVs")
        p.add_argument("--seed", type=int, default=None,
                       help=f"seed override (also {SEED_ENV_VAR} env var)")
        p.add_argument("--threads", type=int, default=1,
                       help="worker threads; never changes results")

    for name in ("density", "fk-estimate", "oracle-sample", "fp-residual", "ck-check"):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True)
        add_common(p)

    p_scen = sub.add_parser("scenario")
    scen_sub = p_scen.add_subparsers(dest="action", required=True)
    p_run = scen_sub.add_parser("run")
    p_run.add_argument("name", help="bundled scenario name or config path")
    add_common(p_run)
    scen_sub.add_parser("list")

    args = parser.parse_args(argv)
    try:
        if args.command == "scenario":
            if args.action == "list":
                for name in BUNDLED_SCENARIOS:
                    print(name)
                return 0
            config = args.name
            if not os.path.exists(config):
                config = bundled_scenario_path(args.name)
            written = run("scenario", config, args.out, args.seed, args.threads)
        else:
            written = run(args.command, args.config, args.out, args.seed, args.threads)
        for path in written:
            print(path)
        return 0
    except (ParseError, UnknownKey, InvalidParameter) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except SpdeDensityError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
