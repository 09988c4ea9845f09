"""Run-configuration files: INI-style sections with unit-suffixed values.

Sections: [cavity], [decoherence] (optional) and one or more
[scheme.<name>] blocks (scattering, simple_exchange, raman). Rates accept
the suffixes rad_s, hz (multiplied by 2*pi), per_gamma and per_kappa;
durations accept s and inv_gamma. The prefix form "hz: 596" is accepted as
an alternative to "596 hz". Exact keys are documented in the cli module.
"""
from __future__ import annotations

import configparser
import math
from dataclasses import dataclass

from .errors import ConfigError
from .exchange import ExchangeConfig, ExchangeMode, optimal_detuning
from .params import CavitySystem, DecoherenceSpec, Scheme, rate_to_angular, time_to_seconds
from .raman import RamanConfig, optimal_two_photon
from .scattering import PhotonPulse, ScatteringConfig

_SCHEME_PREFIX = "scheme."


def _split_quantity(raw: str, key: str):
    """Parse '596 hz', 'hz: 596' or a bare number into (value, unit|None)."""
    text = raw.strip()
    if ":" in text:
        unit, _, number = text.partition(":")
        unit, number = unit.strip(), number.strip()
    else:
        parts = text.split()
        if len(parts) == 1:
            unit, number = None, parts[0]
        elif len(parts) == 2:
            number, unit = parts
        else:
            raise ConfigError(f"{key}: expected '<value> [unit]', got {raw!r}", key=key)
    try:
        value = float(number)
    except ValueError:
        raise ConfigError(f"{key}: {number!r} is not a number", key=key)
    return value, unit


_REQUIRED = object()


class _Section:
    def __init__(self, name, mapping, gamma=None, kappa=None):
        self.name = name
        self.raw = dict(mapping)
        self.gamma = gamma
        self.kappa = kappa
        self.used = set()

    def key(self, option):
        return f"{self.name}.{option}"

    def has(self, option):
        return option in self.raw

    def rate(self, option, default=_REQUIRED):
        if option not in self.raw:
            if default is _REQUIRED:
                raise ConfigError(f"{self.key(option)} is required", key=self.key(option))
            return default
        self.used.add(option)
        value, unit = _split_quantity(self.raw[option], self.key(option))
        try:
            return rate_to_angular(value, unit or "rad_s", gamma=self.gamma, kappa=self.kappa)
        except ValueError as exc:
            raise ConfigError(f"{self.key(option)}: {exc}", key=self.key(option))

    def duration(self, option, default=None):
        if option not in self.raw:
            return default
        self.used.add(option)
        value, unit = _split_quantity(self.raw[option], self.key(option))
        try:
            return time_to_seconds(value, unit or "s", gamma=self.gamma)
        except ValueError as exc:
            raise ConfigError(f"{self.key(option)}: {exc}", key=self.key(option))

    def number(self, option, default=None):
        if option not in self.raw:
            return default
        self.used.add(option)
        value, unit = _split_quantity(self.raw[option], self.key(option))
        if unit is not None:
            raise ConfigError(f"{self.key(option)} must be dimensionless", key=self.key(option))
        return value

    def word(self, option, default=None):
        if option not in self.raw:
            return default
        self.used.add(option)
        return self.raw[option].strip().lower()


@dataclass
class RunConfig:
    cavity: CavitySystem
    decoherence: DecoherenceSpec
    schemes: dict  # scheme name -> _Section

    def scheme_section(self, name: str) -> _Section:
        if name not in self.schemes:
            raise ConfigError(f"config has no [scheme.{name}] section", key=f"scheme.{name}")
        return self.schemes[name]


def _build_cavity(section: _Section) -> CavitySystem:
    gamma = section.rate("gamma")
    section.gamma = gamma
    if section.has("cooperativity"):
        c = section.number("cooperativity")
        gok = section.number("g_over_kappa")
        if gok is None:
            raise ConfigError("cavity.g_over_kappa is required with cavity.cooperativity",
                              key="cavity.g_over_kappa")
        try:
            return CavitySystem.from_cooperativity(c, gok, gamma)
        except ValueError as exc:
            raise ConfigError(f"cavity: {exc}", key="cavity.cooperativity")
    g = section.rate("g")
    kappa = section.rate("kappa")
    if g is None or kappa is None:
        raise ConfigError("cavity needs either cooperativity+g_over_kappa or g+kappa",
                          key="cavity.g")
    try:
        return CavitySystem(g=g, kappa=kappa, gamma=gamma)
    except ValueError as exc:
        raise ConfigError(f"cavity: {exc}", key="cavity.g")


def _build_decoherence(section: _Section | None) -> DecoherenceSpec:
    if section is None:
        return DecoherenceSpec()
    try:
        return DecoherenceSpec(
            qubit_relaxation=section.rate("qubit_relaxation", 0.0),
            qubit_pure_dephasing=section.rate("qubit_pure_dephasing", 0.0),
            optical_pure_dephasing=section.rate("optical_pure_dephasing", 0.0),
            shelving_decay=section.rate("shelving_decay", 0.0),
            qubit_t2=section.duration("qubit_t2"),
        )
    except ValueError as exc:
        raise ConfigError(f"decoherence: {exc}", key="decoherence")


def load_config_text(text: str) -> RunConfig:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"config parse error: {exc}")
    if "cavity" not in parser:
        raise ConfigError("missing [cavity] section", key="cavity")
    cavity_section = _Section("cavity", parser["cavity"])
    cavity = _build_cavity(cavity_section)
    deco_section = None
    if "decoherence" in parser:
        deco_section = _Section("decoherence", parser["decoherence"],
                                gamma=cavity.gamma, kappa=cavity.kappa)
    decoherence = _build_decoherence(deco_section)
    schemes = {}
    for section_name in parser.sections():
        if section_name.startswith(_SCHEME_PREFIX):
            name = section_name[len(_SCHEME_PREFIX):]
            schemes[name] = _Section(section_name, parser[section_name],
                                     gamma=cavity.gamma, kappa=cavity.kappa)
    return RunConfig(cavity=cavity, decoherence=decoherence, schemes=schemes)


def load_config(path) -> RunConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return load_config_text(fh.read())


def build_scattering(run: RunConfig) -> ScatteringConfig:
    sec = run.scheme_section("scattering")
    gamma_eff = run.decoherence.effective_rate(Scheme.SCATTERING)
    sigma_p = sec.rate("sigma_p", 0.0)
    gate_time = sec.duration("gate_time")
    if (sigma_p > 0.0) == (gate_time is not None):
        raise ConfigError("scheme.scattering needs exactly one of sigma_p or gate_time",
                          key=sec.key("sigma_p"))
    if gate_time is not None:
        pulse = PhotonPulse.from_gate_time(gate_time, delta_p=sec.rate("delta_p", 0.0))
    else:
        pulse = PhotonPulse(sigma_p=sigma_p, delta_p=sec.rate("delta_p", 0.0))
    try:
        return ScatteringConfig(
            cavity=run.cavity, pulse=pulse,
            delta_eps_a=sec.rate("delta_eps_a", 0.0),
            delta_eps_b=sec.rate("delta_eps_b", 0.0),
            gamma_eff=gamma_eff,
        )
    except ValueError as exc:
        raise ConfigError(f"scheme.scattering: {exc}", key="scheme.scattering")


def build_exchange(run: RunConfig) -> ExchangeConfig:
    sec = run.scheme_section("simple_exchange")
    cavity = run.cavity
    if sec.word("detuning") == "optimal":
        detuning = optimal_detuning(cavity.kappa, cavity.cooperativity)
    else:
        detuning = sec.rate("detuning")
    if sec.word("splitting_eg", "ideal") == "ideal":
        splitting = math.inf
    else:
        splitting = sec.rate("splitting_eg")
    mode_word = sec.word("mode", "opposite")
    try:
        mode = {"opposite": ExchangeMode.OPPOSITE_RESONANT,
                "equal": ExchangeMode.EQUAL_RESONANT}[mode_word]
    except KeyError:
        raise ConfigError(f"scheme.simple_exchange.mode must be opposite or equal, "
                          f"got {mode_word!r}", key=sec.key("mode"))
    try:
        return ExchangeConfig(
            cavity=cavity, detuning=detuning, splitting_eg=splitting,
            detuning_error=sec.rate("detuning_error", 0.0),
            gamma_eff=run.decoherence.effective_rate(Scheme.SIMPLE_EXCHANGE),
            mode=mode,
        )
    except ValueError as exc:
        raise ConfigError(f"scheme.simple_exchange: {exc}", key="scheme.simple_exchange")


def build_raman(run: RunConfig) -> RamanConfig:
    sec = run.scheme_section("raman")
    cavity = run.cavity
    if sec.word("two_photon") == "optimal":
        two_photon = optimal_two_photon(cavity.kappa, cavity.cooperativity)
    else:
        two_photon = sec.rate("two_photon")
    laser = sec.rate("laser_detuning")
    gamma_eff = run.decoherence.effective_rate(Scheme.RAMAN)
    two_eps = sec.rate("two_photon_error", 0.0)
    laser_eps = sec.rate("laser_detuning_error", 0.0)
    rabi_over = sec.number("rabi_over_detuning")
    rabi_a = sec.rate("rabi_a", 0.0)
    if (rabi_over is None) == (rabi_a == 0.0):
        raise ConfigError("scheme.raman needs exactly one of rabi_over_detuning or rabi_a",
                          key=sec.key("rabi_a"))
    kwargs = {}
    rabi_b_word = sec.word("rabi_b", "matched")
    if rabi_b_word != "matched":
        kwargs["rabi_b"] = sec.rate("rabi_b")
    try:
        det_a = laser + 0.5 * laser_eps
        det_b = laser - 0.5 * laser_eps
        if rabi_over is not None:
            rabi_a = rabi_over * det_a
        return RamanConfig(
            cavity=cavity,
            laser_detuning_a=det_a, laser_detuning_b=det_b,
            two_photon_a=two_photon + 0.5 * two_eps,
            two_photon_b=two_photon - 0.5 * two_eps,
            rabi_a=rabi_a, gamma_eff=gamma_eff, **kwargs,
        )
    except ValueError as exc:
        raise ConfigError(f"scheme.raman: {exc}", key="scheme.raman")


SCHEME_BUILDERS = {
    "scattering": build_scattering,
    "simple_exchange": build_exchange,
    "raman": build_raman,
}
