"""Simple virtual-photon-exchange controlled phase-flip gate.

One emitter is excited by a fast optical pi pulse; a dispersively coupled
cavity then mediates a resonant excitation swap with the other emitter,
which adiabatically imprints a pi phase on exactly one two-qubit product
state. Two equivalent operating modes exist: the opposite-spin transitions
brought into resonance (phase lands on |ud>), or the equal-spin transitions
(phase lands on |uu>). The non-Hermitian 3x3 subspace Hamiltonians carry
cavity decay kappa on the one-photon state and emitter decay gamma on the
excited states.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import linalg
from .errors import ValidityWarning
from .params import CavitySystem, GateResult, Method


class ExchangeMode(enum.Enum):
    #: |up e2> of A resonant with |e1 down> of B; pi phase on |ud>
    OPPOSITE_RESONANT = "opposite"
    #: equal transitions resonant; pi phase on |uu>
    EQUAL_RESONANT = "equal"


@dataclass(frozen=True)
class ExchangeConfig:
    """Inputs of the simple-exchange gate.

    detuning is the cavity detuning of the excited system (Delta_A > 0).
    splitting_eg is the spectator-transition splitting; math.inf marks the
    ideal isolated-spectator limit. detuning_error is the residual error in
    the partner's tuned resonance condition. Per-transition couplings
    default to the cavity's g.
    """

    cavity: CavitySystem
    detuning: float
    splitting_eg: float = math.inf
    detuning_error: float = 0.0
    gamma_eff: float = 0.0
    g_up_a: float | None = None
    g_down_b: float | None = None
    g_up_b: float | None = None
    mode: ExchangeMode = ExchangeMode.OPPOSITE_RESONANT

    def __post_init__(self):
        if not self.detuning > 0:
            raise ValueError("detuning must be > 0")
        if self.splitting_eg < 0:
            raise ValueError("splitting_eg must be >= 0 (math.inf for ideal)")
        if self.gamma_eff < 0:
            raise ValueError("gamma_eff must be >= 0")
        if not math.isfinite(self.detuning_error):
            raise ValueError("detuning_error must be finite")

    @property
    def coupling_a(self) -> float:
        return self.cavity.g if self.g_up_a is None else self.g_up_a

    @property
    def coupling_b_resonant(self) -> float:
        """Coupling of B's transition that participates in the swap."""
        if self.mode is ExchangeMode.OPPOSITE_RESONANT:
            return self.cavity.g if self.g_down_b is None else self.g_down_b
        return self.cavity.g if self.g_up_b is None else self.g_up_b

    @property
    def coupling_b_spectator(self) -> float:
        if self.mode is ExchangeMode.OPPOSITE_RESONANT:
            return self.cavity.g if self.g_up_b is None else self.g_up_b
        return self.cavity.g if self.g_down_b is None else self.g_down_b


class ExchangeHamiltonians(NamedTuple):
    h_up_down: np.ndarray
    h_up_up: np.ndarray
    h_eff_up_down: np.ndarray
    h_eff_up_up: np.ndarray


def tune_partner_detuning(detuning, g_up_a, g_down_b, splitting_eg) -> float:
    """Partner detuning that puts the swap on resonance, compensating the
    unequal cavity Stark shifts: Delta_B = Delta + (g_a^2 - g_b^2)/Delta - delta_eg."""
    if math.isinf(splitting_eg):
        raise ValueError("splitting_eg is the ideal flag (inf); the resonance condition "
                         "is then fixed by the equal-transition mode (EQUAL_RESONANT)")
    if not detuning > 0:
        raise ValueError("detuning must be > 0")
    return detuning + (g_up_a**2 - g_down_b**2) / detuning - splitting_eg


def exchange_gate_time(detuning, g_a, g_b) -> float:
    """Excitation dwell time for a pi phase: T = pi * Delta / (g_a * g_b)."""
    if g_a <= 0 or g_b <= 0:
        raise ValueError("couplings must be > 0")
    return math.pi * detuning / (g_a * g_b)


def _subspace_matrices(detuning, g_a, g_b, offset, kappa, gamma):
    """3x3 single-excitation block in the basis (excited-A, one-photon,
    excited-B) with the B-state energy offset, plus its lossy variant."""
    h = np.array([
        [0.0, g_a, 0.0],
        [g_a, detuning, g_b],
        [0.0, g_b, offset],
    ], dtype=complex)
    h_eff = h - 0.5j * np.diag([gamma, kappa, gamma])
    return h, h_eff


def _spectator_matrices(detuning, g_a, kappa, gamma):
    """Far-detuned spectator in the ideal splitting limit: the third state
    decouples, leaving the 2x2 (excited-A, one-photon) block."""
    h = np.array([[0.0, g_a], [g_a, detuning]], dtype=complex)
    return h, h - 0.5j * np.diag([gamma, kappa])


def build_hamiltonians(config: ExchangeConfig) -> ExchangeHamiltonians:
    """Subspace Hamiltonians of the two evolving two-qubit sectors.

    Bases: |ud> sector (e2 down 0, up down 1, up e1 0) and |uu> sector
    (e2 up 0, up up 1, up e2 0). With the partner tuned, the resonant
    sector's end state sits at -detuning_error (minus the residual Stark
    offset) and the spectator's at splitting_eg above it. In the ideal
    splitting_eg = inf limit the spectator block is returned as 2x2.
    """
    cav = config.cavity
    g_a = config.coupling_a
    g_res = config.coupling_b_resonant
    g_spec = config.coupling_b_spectator
    stark = (g_a**2 - g_res**2) / config.detuning
    offset_res = -config.detuning_error - stark
    resonant = _subspace_matrices(config.detuning, g_a, g_res, offset_res,
                                  cav.kappa, cav.gamma)
    if math.isinf(config.splitting_eg):
        spectator = _spectator_matrices(config.detuning, g_a, cav.kappa, cav.gamma)
    else:
        sign = 1.0 if config.mode is ExchangeMode.OPPOSITE_RESONANT else -1.0
        offset_spec = offset_res + sign * config.splitting_eg
        spectator = _subspace_matrices(config.detuning, g_a, g_spec, offset_spec,
                                       cav.kappa, cav.gamma)
    if config.mode is ExchangeMode.OPPOSITE_RESONANT:
        (h_ud, heff_ud), (h_uu, heff_uu) = resonant, spectator
    else:
        (h_uu, heff_uu), (h_ud, heff_ud) = resonant, spectator
    return ExchangeHamiltonians(h_ud, h_uu, heff_ud, heff_uu)


def relative_phase_fidelity(config: ExchangeConfig, gate_time=None) -> float:
    """F_pi from non-Hermitian propagation of both sectors.

    F_pi = (1/2) |<uu-start| e^{-iT H_uu} |uu-start> -
                  <ud-start| e^{-iT H_ud} |ud-start>|.
    """
    if gate_time is None:
        gate_time = exchange_gate_time(config.detuning, config.coupling_a,
                                       config.coupling_b_resonant)
    ham = build_hamiltonians(config)
    amp_ud = linalg.return_amplitude(ham.h_eff_up_down, 0, gate_time)
    amp_uu = linalg.return_amplitude(ham.h_eff_up_up, 0, gate_time)
    return 0.5 * abs(amp_uu - amp_ud)


def ridge_f_pi(detuning, kappa, cooperativity):
    """Ideal-error F_pi of a virtual exchange at the given detuning:
    exp(-2 pi Delta/(C kappa) - pi kappa/(2 Delta)) * cosh^2(pi kappa/(4 Delta)).

    The same function governs the Raman scheme with the two-photon detuning
    in place of the cavity detuning.
    """
    d = np.asarray(detuning, dtype=float)
    out = (np.exp(-2.0 * np.pi * d / (cooperativity * kappa) - np.pi * kappa / (2.0 * d))
           * np.cosh(np.pi * kappa / (4.0 * d)) ** 2)
    return float(out) if np.isscalar(detuning) else out


def f_pi_closed_form(config: ExchangeConfig) -> float:
    """Adiabatic closed form of F_pi at equal couplings.

    F_pi = (1/2) e^{-2 pi Delta/(C kappa) - pi kappa/(2 Delta)}
           |e^{i 4 pi g^2/(Delta delta_eg)} +
            cosh(pi kappa/(2 Delta)) e^{-i pi Delta_eps Delta / g^2}|,
    reducing to ridge_f_pi for delta_eg -> inf and Delta_eps -> 0.
    """
    g_a = config.coupling_a
    g_b = config.coupling_b_resonant
    if not math.isclose(g_a, g_b, rel_tol=1e-9):
        warnings.warn("closed form assumes equal resonant couplings; using their "
                      "geometric mean", ValidityWarning, stacklevel=2)
    g2 = g_a * g_b
    cav = config.cavity
    delta = config.detuning
    envelope = math.exp(-2.0 * math.pi * delta / (cav.cooperativity * cav.kappa)
                        - math.pi * cav.kappa / (2.0 * delta))
    if math.isinf(config.splitting_eg):
        spectator_phase = 1.0 + 0.0j
    else:
        spectator_phase = np.exp(4j * math.pi * g2 / (delta * config.splitting_eg))
    swap_term = (math.cosh(math.pi * cav.kappa / (2.0 * delta))
                 * np.exp(-1j * math.pi * config.detuning_error * delta / g2))
    return 0.5 * envelope * abs(spectator_phase + swap_term)


def _as_result(f_gate, gate_time, method):
    notes = ()
    if f_gate < 0.0 or f_gate > 1.0:
        notes = ("clamped",)
        f_gate = min(max(f_gate, 0.0), 1.0)
    return GateResult(fidelity=f_gate, gate_time=gate_time, success_probability=1.0,
                      method=method, notes=notes)


def fidelity_numeric_exchange(config: ExchangeConfig, gate_time=None) -> GateResult:
    """Gate fidelity (F_pi + 1)/2 - Gamma*T from non-Hermitian propagation."""
    if gate_time is None:
        gate_time = exchange_gate_time(config.detuning, config.coupling_a,
                                       config.coupling_b_resonant)
    f_pi = relative_phase_fidelity(config, gate_time)
    f_gate = 0.5 * (f_pi + 1.0) - config.gamma_eff * gate_time
    return _as_result(f_gate, gate_time, Method.NON_HERMITIAN)


def fidelity_analytic_exchange(config: ExchangeConfig, gate_time=None) -> GateResult:
    """Gate fidelity (F_pi + 1)/2 - Gamma*T from the adiabatic closed form."""
    if gate_time is None:
        gate_time = exchange_gate_time(config.detuning, config.coupling_a,
                                       config.coupling_b_resonant)
    f_gate = 0.5 * (f_pi_closed_form(config) + 1.0) - config.gamma_eff * gate_time
    return _as_result(f_gate, gate_time, Method.ANALYTIC)


def optimal_detuning(kappa, cooperativity) -> float:
    """Detuning of maximum fidelity in the adiabatic regime: 2 Delta = kappa sqrt(C)."""
    return 0.5 * kappa * math.sqrt(cooperativity)


def optimal_gate_time_exchange(gamma, cooperativity) -> float:
    """Gate time at the optimal detuning: T_o = 2 pi / (gamma sqrt(C))."""
    return 2.0 * math.pi / (gamma * math.sqrt(cooperativity))


def max_fidelity_exchange(config: ExchangeConfig) -> GateResult:
    """Expanded maximum fidelity at the optimal detuning 2 Delta = kappa sqrt(C):

    F_max = 1 - pi/sqrt(C)
              - (3 pi^2/32) [ (T_o Delta_eps / 2 pi)^2 + (2 pi/(T_o delta_eg))^2 - 12/C ]
              - Gamma T_o,   T_o = 2 pi/(gamma sqrt(C)).

    The config's detuning field is ignored; only the error terms enter.
    """
    cav = config.cavity
    c = cav.cooperativity
    if c < 10:
        warnings.warn("expansion assumes C >> 1", ValidityWarning, stacklevel=2)
    t_o = optimal_gate_time_exchange(cav.gamma, c)
    if math.isinf(config.splitting_eg):
        spectator_term = 0.0
    else:
        spectator_term = (2.0 * math.pi / (t_o * config.splitting_eg)) ** 2
    f_gate = (
        1.0
        - math.pi / math.sqrt(c)
        - (3.0 * math.pi**2 / 32.0) * (
            (t_o * config.detuning_error / (2.0 * math.pi)) ** 2
            + spectator_term
            - 12.0 / c)
        - config.gamma_eff * t_o
    )
    # the expansion overshoots at small C; never report above the unexpanded
    # cooperativity-limited ceiling
    ceiling = 0.5 * (ridge_f_pi(optimal_detuning(cav.kappa, c), cav.kappa, c) + 1.0)
    f_gate = min(f_gate, ceiling)
    return _as_result(f_gate, t_o, Method.ANALYTIC)
