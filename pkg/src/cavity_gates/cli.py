"""Command-line front end: `cavity-gate <evaluate|figure|casestudy|sweep>`.

Config files are INI-style. Keys (units in parentheses; rates take
`rad_s`, `hz` (multiplied by 2*pi), `per_gamma`, `per_kappa`; durations
take `s`, `inv_gamma`; the prefix form `hz: 596` is also accepted):

    [cavity]
    cooperativity = 50000            # with g_over_kappa, or give g + kappa
    g_over_kappa  = 0.1
    gamma         = 596 hz

    [decoherence]                    # all optional
    qubit_t2               = 6.6e-3 s
    qubit_relaxation       = 0 rad_s
    qubit_pure_dephasing   = 0 rad_s
    optical_pure_dephasing = 9e3 rad_s
    shelving_decay         = 0 rad_s

    [scheme.scattering]
    delta_p     = 30 per_gamma
    gate_time   = 1 inv_gamma        # exactly one of gate_time / sigma_p
    delta_eps_a = 0 per_gamma
    delta_eps_b = 0 per_gamma

    [scheme.simple_exchange]
    detuning       = optimal         # or a rate, e.g. 44.7 per_kappa
    splitting_eg   = 0.2e9 hz        # or "ideal"
    detuning_error = 0 rad_s
    mode           = opposite        # or "equal"

    [scheme.raman]
    two_photon           = optimal   # or a rate
    two_photon_error     = 0 rad_s
    laser_detuning       = 2 per_kappa
    laser_detuning_error = 0 rad_s
    rabi_over_detuning   = 0.1       # exactly one of this / rabi_a
    rabi_b               = matched   # or a rate

Exit codes: 0 success, 2 config error, 3 evaluator error, 4 unwritable
output. Results go to stdout; warnings and errors to stderr.
"""
from __future__ import annotations

import datetime
import hashlib
import json
import os
import sys
import warnings

import click

from . import __version__, casestudy, config as config_mod, figures
from .errors import CavityGateError, ConfigError
from .exchange import fidelity_analytic_exchange, fidelity_numeric_exchange
from .lindblad import exchange_open_system, gate_fidelity_lindblad, raman_open_system
from .raman import fidelity_analytic_raman, fidelity_numeric_raman
from .scattering import fidelity_analytic, fidelity_numeric

EXIT_CONFIG = 2
EXIT_EVALUATOR = 3
EXIT_OUTPUT = 4

SCHEMES = ("scattering", "simple_exchange", "raman")


def _fail(code, message):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load(config_path):
    try:
        return config_mod.load_config(config_path)
    except ConfigError as exc:
        _fail(EXIT_CONFIG, str(exc))
    except OSError as exc:
        _fail(EXIT_CONFIG, f"cannot read config: {exc}")


def _build_scheme(run, scheme):
    try:
        return config_mod.SCHEME_BUILDERS[scheme](run)
    except ConfigError as exc:
        _fail(EXIT_CONFIG, str(exc))


def _evaluate(scheme, cfg, method):
    if scheme == "scattering":
        if method == "lindblad":
            raise CavityGateError(
                "the scattering gate has no Lindblad path; its numeric route is the "
                "exact amplitude integral (use --method numeric)")
        return fidelity_numeric(cfg) if method == "numeric" else fidelity_analytic(cfg)
    if scheme == "simple_exchange":
        if method == "lindblad":
            return gate_fidelity_lindblad(exchange_open_system(cfg), cfg.gamma_eff)
        if method == "numeric":
            return fidelity_numeric_exchange(cfg)
        return fidelity_analytic_exchange(cfg)
    if method == "lindblad":
        return gate_fidelity_lindblad(raman_open_system(cfg), cfg.gamma_eff)
    if method == "numeric":
        return fidelity_numeric_raman(cfg)
    return fidelity_analytic_raman(cfg)


@click.group()
@click.version_option(version=__version__, prog_name="cavity-gate")
def main():
    """Fidelity and gate-time analysis for cavity-mediated phase-flip gates."""


@main.command()
@click.argument("scheme", type=click.Choice(SCHEMES))
@click.argument("config_file", type=click.Path())
@click.option("--method", type=click.Choice(["analytic", "numeric", "lindblad"]),
              default="analytic", show_default=True)
def evaluate(scheme, config_file, method):
    """Evaluate one gate configuration; emit a JSON record on stdout."""
    run = _load(config_file)
    cfg = _build_scheme(run, scheme)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            result = _evaluate(scheme, cfg, method)
        except CavityGateError as exc:
            _fail(EXIT_EVALUATOR, str(exc))
    for w in caught:
        click.echo(f"warning: {w.message}", err=True)
    record = {"schema_version": 1, "scheme": scheme, "method": result.method.value,
              "fidelity": result.fidelity, "gate_time": result.gate_time,
              "gate_time_gamma": result.gate_time * run.cavity.gamma,
              "success_probability": result.success_probability,
              "notes": list(result.notes)}
    click.echo(json.dumps(record))


def _write_output(directory, filename, text):
    try:
        os.makedirs(directory, exist_ok=True)
        path = os.path.join(directory, filename)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        return path
    except OSError as exc:
        _fail(EXIT_OUTPUT, f"cannot write {filename}: {exc}")


def _manifest(command, config_hash, outputs):
    return {
        "schema_version": 1,
        "command": command,
        "config_hash": config_hash,
        "tool_version": __version__,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "outputs": [os.path.basename(p) for p in outputs],
    }


@main.command()
@click.argument("name", type=click.Choice(figures.FIGURE_NAMES))
@click.option("--out", "out_dir", type=click.Path(), default=".", show_default=True)
def figure(name, out_dir):
    """Emit the CSV data behind one survey figure plus a run manifest."""
    data = figures.build_figure(name)
    csv_text = figures.format_csv(data)
    csv_path = _write_output(out_dir, f"{name}.csv", csv_text)
    config_hash = hashlib.sha256("\n".join(data.comments).encode()).hexdigest()[:16]
    manifest = _manifest(f"figure {name}", config_hash, [csv_path])
    manifest_path = _write_output(out_dir, f"{name}.manifest.json", json.dumps(manifest, indent=2) + "\n")
    click.echo(json.dumps({"outputs": [csv_path, manifest_path]}))


@main.command("casestudy")
@click.option("--out", "out_dir", type=click.Path(), default=None)
@click.option("--t2-ms", type=float, default=None, help="Qubit T2 in milliseconds.")
@click.option("--cooperativity", type=float, default=None)
@click.option("--g-over-kappa", type=float, default=None)
def casestudy_cmd(out_dir, t2_ms, cooperativity, g_over_kappa):
    """Three-scheme gate comparison for the default narrow-line emitter."""
    overrides = {}
    if t2_ms is not None:
        overrides["qubit_t2"] = t2_ms * 1e-3
    if cooperativity is not None:
        overrides["cooperativity"] = cooperativity
    if g_over_kappa is not None:
        overrides["g_over_kappa"] = g_over_kappa
    try:
        report = casestudy.run_case_study(**overrides)
    except (CavityGateError, ValueError) as exc:
        _fail(EXIT_EVALUATOR, str(exc))
    text = json.dumps(report, indent=2) + "\n"
    if out_dir is not None:
        path = _write_output(out_dir, "casestudy.json", text)
        blob = json.dumps(report, sort_keys=True).encode()
        manifest = _manifest("casestudy", hashlib.sha256(blob).hexdigest()[:16], [path])
        _write_output(out_dir, "casestudy.manifest.json", json.dumps(manifest, indent=2) + "\n")
    click.echo(text, nl=False)


@main.command("sweep")
@click.argument("scheme", type=click.Choice(SCHEMES))
@click.argument("config_file", type=click.Path())
@click.option("--param", required=True,
              help="Scheme-section key to sweep (e.g. detuning).")
@click.option("--minimum", "vmin", type=float, required=True)
@click.option("--maximum", "vmax", type=float, required=True)
@click.option("--points", type=int, default=41, show_default=True)
@click.option("--log/--linear", "log_scale", default=False, show_default=True)
@click.option("--unit", default="rad_s", show_default=True,
              help="Unit suffix applied to the swept values.")
@click.option("--method", type=click.Choice(["analytic", "numeric", "lindblad"]),
              default="numeric", show_default=True)
@click.option("--out", "out_dir", type=click.Path(), default=None,
              help="Write CSV here instead of stdout.")
def sweep_cmd(scheme, config_file, param, vmin, vmax, points, log_scale, unit, method,
              out_dir):
    """Sweep one scheme parameter of a config and tabulate the fidelity."""
    import numpy as np

    run_base = _load(config_file)
    if scheme not in run_base.schemes:
        _fail(EXIT_CONFIG, f"config has no [scheme.{scheme}] section")
    import configparser
    import io

    if log_scale:
        if vmin <= 0:
            _fail(EXIT_CONFIG, "log sweeps need a positive range")
        values = np.exp(np.linspace(np.log(vmin), np.log(vmax), points))
    else:
        values = np.linspace(vmin, vmax, points)
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    with open(config_file, "r", encoding="utf-8") as fh:
        parser.read_file(fh)
    lines = [f"# sweep {scheme}.{param} [{unit}] method={method}",
             f"{param},fidelity,gate_time_gamma"]
    for value in values:
        suffix = "" if unit in ("", "none") else f" {unit}"
        parser.set(f"scheme.{scheme}", param, f"{float(value):.17g}{suffix}")
        buf = io.StringIO()
        parser.write(buf)
        try:
            run = config_mod.load_config_text(buf.getvalue())
            cfg = config_mod.SCHEME_BUILDERS[scheme](run)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                result = _evaluate(scheme, cfg, method)
            lines.append(f"{float(value):.11e},{result.fidelity:.11e},"
                         f"{result.gate_time * run.cavity.gamma:.11e}")
        except (ConfigError, CavityGateError) as exc:
            lines.append(f"{float(value):.11e},nan,nan")
            click.echo(f"warning: {param}={float(value):g}: {exc}", err=True)
    out_text = "\n".join(lines) + "\n"
    if out_dir is not None:
        csv_path = _write_output(out_dir, "sweep.csv", out_text)
        manifest = _manifest(f"sweep {scheme} {param}",
                             hashlib.sha256(out_text.encode()).hexdigest()[:16], [csv_path])
        _write_output(out_dir, "sweep.manifest.json", json.dumps(manifest, indent=2) + "\n")
        click.echo(json.dumps({"outputs": [csv_path]}))
    else:
        click.echo(out_text, nl=False)


if __name__ == "__main__":
    main()
