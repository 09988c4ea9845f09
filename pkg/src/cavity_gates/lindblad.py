"""Lindblad master-equation oracle for the exchange schemes.

Propagates the full master equation, including the recycling terms that the
non-Hermitian subspace treatment drops, on the joint space of both evolving
two-qubit sectors plus the recycled ground states. Because every jump in
these gate models lands on a dynamically frozen state, the master equation
admits an exact single-jump closure which is used for stiff operating
points; a fixed-step RK4 integrator covers generic small systems.

Gate fidelities are reported up to a local Z rotation on the control qubit
(the relative-phase gauge in which the ideal gate is defined); the optimal
phase is maximized in closed form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import linalg
from .errors import DegenerateBranch, StepNotConverged
from .exchange import ExchangeConfig, ExchangeMode, build_hamiltonians, exchange_gate_time
from .params import GateResult, Method
from .raman import RamanConfig, build_raman_hamiltonians, raman_gate_time

#: auto-chosen RK4 step counts above this raise instead of running forever
_MAX_AUTO_STEPS = 2_000_000


@dataclass(frozen=True)
class OpenSystem:
    """Hermitian Hamiltonian plus jump channels [(rate, operator), ...]."""

    hamiltonian: np.ndarray
    jumps: tuple

    def __post_init__(self):
        h = np.asarray(self.hamiltonian)
        if np.abs(h - h.conj().T).max() > 1e-12:
            raise ValueError("hamiltonian must be Hermitian to 1e-12")
        for rate, op in self.jumps:
            if rate < 0:
                raise ValueError("jump rates must be >= 0")
            if np.asarray(op).shape != h.shape:
                raise ValueError("jump operators must match the Hamiltonian dimension")

    @property
    def dim(self) -> int:
        return self.hamiltonian.shape[0]


def effective_hamiltonian(system: OpenSystem) -> np.ndarray:
    """No-jump generator H - (i/2) sum_c rate_c L_c^dag L_c."""
    h = np.asarray(system.hamiltonian, dtype=complex).copy()
    for rate, op in system.jumps:
        l = np.asarray(op, dtype=complex)
        h -= 0.5j * rate * (l.conj().T @ l)
    return h


def _rhs(system: OpenSystem, rho: np.ndarray) -> np.ndarray:
    h = system.hamiltonian
    drho = -1j * (h @ rho - rho @ h)
    for rate, op in system.jumps:
        l = np.asarray(op, dtype=complex)
        ld = l.conj().T
        ldl = ld @ l
        drho += rate * (l @ rho @ ld - 0.5 * (ldl @ rho + rho @ ldl))
    return drho


def _rk4(system: OpenSystem, rho0: np.ndarray, t: float, steps: int) -> np.ndarray:
    dt = t / steps
    rho = rho0.astype(complex).copy()
    for _ in range(steps):
        k1 = _rhs(system, rho)
        k2 = _rhs(system, rho + 0.5 * dt * k1)
        k3 = _rhs(system, rho + 0.5 * dt * k2)
        k4 = _rhs(system, rho + dt * k3)
        rho = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return 0.5 * (rho + rho.conj().T)


def default_steps(system: OpenSystem, t: float) -> int:
    return max(10_000, int(math.ceil(20.0 * t * np.linalg.norm(system.hamiltonian, 2))))


def lindblad_propagate(system: OpenSystem, rho0, t: float, steps: int | None = None,
                       check: bool = True) -> np.ndarray:
    """Fixed-step RK4 solution of the master equation.

    The default step count resolves the Hamiltonian timescale
    (max(1e4, 20*T*||H||)); a Richardson step-halving check guards the
    result. For stiff absorbing gate models use propagate_exact instead.
    """
    rho0 = np.asarray(rho0, dtype=complex)
    if np.abs(rho0 - rho0.conj().T).max() > 1e-10:
        raise ValueError("rho0 must be Hermitian")
    if abs(np.trace(rho0) - 1.0) > 1e-10:
        raise ValueError("rho0 must have unit trace")
    if np.linalg.eigvalsh(rho0).min() < -1e-10:
        raise ValueError("rho0 must be positive semidefinite")
    if steps is None:
        steps = default_steps(system, t)
        if steps > _MAX_AUTO_STEPS:
            raise ValueError(
                f"auto-chosen step count {steps} is impractically large; use "
                "propagate_exact (absorbing jump structure) or pass steps explicitly")
    rho_coarse = _rk4(system, rho0, t, steps)
    if not check:
        return rho_coarse
    rho_fine = _rk4(system, rho0, t, 2 * steps)
    if np.abs(rho_fine - rho_coarse).max() > 1e-8:
        raise StepNotConverged(
            f"halving the RK4 step changed the state by {np.abs(rho_fine - rho_coarse).max():.2e}")
    return rho_fine


def _check_absorbing(system: OpenSystem):
    """The exact closure requires every jump destination to be frozen:
    unmoved by H and annihilated by every jump channel."""
    h = np.asarray(system.hamiltonian, dtype=complex)
    scale = max(np.abs(h).max(), 1.0)
    for rate, op in system.jumps:
        if rate == 0:
            continue
        l = np.asarray(op, dtype=complex)
        if np.abs(h @ l).max() > 1e-9 * scale * max(np.abs(l).max(), 1.0):
            raise ValueError("jump destinations are moved by the Hamiltonian; "
                             "the absorbing closure does not apply")
        for rate2, op2 in system.jumps:
            if rate2 == 0:
                continue
            if np.abs(np.asarray(op2, dtype=complex) @ l).max() > 1e-12:
                raise ValueError("jump destinations themselves decay; "
                                 "the absorbing closure does not apply")


def propagate_exact(system: OpenSystem, psi0, t: float):
    """Exact master-equation solution for absorbing jump structure.

    Returns (phi_t, rho_t): the no-jump trajectory e^{-i t H_eff} psi0 and
    the full density matrix

        rho(t) = |phi(t)><phi(t)| +
                 sum_c rate_c int_0^t (L_c phi(s)) (L_c phi(s))^dag ds,

    with the time integral done in closed form over the eigenbasis of H_eff.
    Exact (up to the eigendecomposition) because jumped population is frozen.
    """
    _check_absorbing(system)
    psi0 = np.asarray(psi0, dtype=complex)
    h_eff = effective_hamiltonian(system)
    evals, vecs = np.linalg.eig(h_eff)
    coeff = np.linalg.solve(vecs, psi0)
    phi_t = vecs @ (coeff * np.exp(-1j * evals * t))
    rho = np.outer(phi_t, phi_t.conj())
    z = evals[:, None] - evals.conj()[None, :]
    small = np.abs(z) * t < 1e-9
    z_safe = np.where(small, 1.0, z)
    integral = np.where(small, t * (1.0 - 0.5j * z * t), (1.0 - np.exp(-1j * z_safe * t)) / (1j * z_safe))
    weight = coeff[:, None] * coeff.conj()[None, :] * integral
    for rate, op in system.jumps:
        if rate == 0:
            continue
        lv = np.asarray(op, dtype=complex) @ vecs
        rho += rate * (lv @ weight @ lv.conj().T)
    return phi_t, 0.5 * (rho + rho.conj().T)


class TrajectoryBranches(NamedTuple):
    success_probability: float   # p = ||phi(T)||^2
    fidelity_success: float      # F_0 = |<ideal|phi(T)>| / sqrt(p)
    rho_fail: np.ndarray         # (rho - |phi><phi|)/(1 - p)
    fidelity_fail: float         # sqrt(<ideal| rho_fail |ideal>)


def trajectory_decomposition(system: OpenSystem, psi0, psi_ideal, t: float) -> TrajectoryBranches:
    """Split the master-equation solution into no-jump and failure branches.

    The total fidelity satisfies F = sqrt(p F_0^2 + (1-p) F_fail^2).
    Raises DegenerateBranch when no jump ever occurs (p ~ 1).
    """
    psi_ideal = np.asarray(psi_ideal, dtype=complex)
    phi_t, rho = propagate_exact(system, psi0, t)
    p = float(np.vdot(phi_t, phi_t).real)
    if 1.0 - p < 1e-12:
        raise DegenerateBranch("jump probability ~ 0; failure branch undefined")
    rho_fail = (rho - np.outer(phi_t, phi_t.conj())) / (1.0 - p)
    min_eig = float(np.linalg.eigvalsh(0.5 * (rho_fail + rho_fail.conj().T)).min())
    if min_eig < -1e-8:
        raise ValueError(f"failure branch is not positive semidefinite (min eig {min_eig:.2e})")
    f_success = abs(np.vdot(psi_ideal, phi_t)) / math.sqrt(p)
    f_fail = math.sqrt(max(float(np.vdot(psi_ideal, rho_fail @ psi_ideal).real), 0.0))
    return TrajectoryBranches(p, f_success, rho_fail, f_fail)


class GateOpenSystem(NamedTuple):
    system: OpenSystem
    psi0: np.ndarray
    ideal_frozen: np.ndarray   # unshelved/unexcited sector part of the target
    ideal_active: np.ndarray   # evolving sector part, defined up to a local Z phase
    gate_time: float

    @property
    def ideal(self) -> np.ndarray:
        return self.ideal_frozen + self.ideal_active


def _embed(block: np.ndarray, full_dim: int, offset: int) -> np.ndarray:
    out = np.zeros((full_dim, full_dim), dtype=complex)
    n = block.shape[0]
    out[offset:offset + n, offset:offset + n] = block
    return out


def exchange_open_system(config: ExchangeConfig, gate_time=None) -> GateOpenSystem:
    """Joint open system of the simple-exchange gate.

    Basis: the |ud> sector block, the |uu> sector block, the frozen |du>,
    |dd> ground states, then the recycled A-ground states |uu,0> and |ud,0>.
    The cavity jump and each emitter decay recycle into those A-ground
    states, which the closing pi pulse re-excites, so a failed gate never
    overlaps the target.
    """
    ham = build_hamiltonians(config)
    n_ud = ham.h_up_down.shape[0]
    n_uu = ham.h_up_up.shape[0]
    dim = n_ud + n_uu + 4
    i_du, i_dd, i_guu, i_gud = n_ud + n_uu, n_ud + n_uu + 1, n_ud + n_uu + 2, n_ud + n_uu + 3
    h = _embed(np.real(ham.h_up_down), dim, 0) + _embed(np.real(ham.h_up_up), dim, n_ud)
    cav = config.cavity

    def op(pairs):
        l = np.zeros((dim, dim), dtype=complex)
        for dest, src in pairs:
            l[dest, src] = 1.0
        return l

    # sector state indices: [0]=excited-A, [1]=one-photon, [2]=excited-B (if 3x3)
    a_pairs = [(i_gud, 1), (i_guu, n_ud + 1)]
    sigma_a_pairs = [(i_gud, 0), (i_guu, n_ud + 0)]
    sigma_b_pairs = []
    if n_ud == 3:
        sigma_b_pairs.append((i_gud, 2))
    if n_uu == 3:
        sigma_b_pairs.append((i_guu, n_ud + 2))
    jumps = [(cav.kappa, op(a_pairs)), (cav.gamma, op(sigma_a_pairs))]
    if sigma_b_pairs:
        jumps.append((cav.gamma, op(sigma_b_pairs)))
    system = OpenSystem(h, tuple(jumps))

    psi0 = np.zeros(dim, dtype=complex)
    psi0[[0, n_ud, i_du, i_dd]] = 0.5
    frozen = np.zeros(dim, dtype=complex)
    frozen[[i_du, i_dd]] = 0.5
    active = np.zeros(dim, dtype=complex)
    if config.mode is ExchangeMode.OPPOSITE_RESONANT:
        active[0], active[n_ud] = -0.5, 0.5   # pi phase on |ud>
    else:
        active[0], active[n_ud] = 0.5, -0.5   # pi phase on |uu>
    if gate_time is None:
        gate_time = exchange_gate_time(config.detuning, config.coupling_a,
                                       config.coupling_b_resonant)
    return GateOpenSystem(system, psi0, frozen, active, gate_time)


def raman_open_system(config: RamanConfig, gate_time=None) -> GateOpenSystem:
    """Joint open system of the Raman gate.

    Basis: the five |ud>-sector states, the three shelved-sector states,
    then the frozen |d,s> and |d,d> ground states which double as the jump
    destinations (photon loss and emitter decay both leave the emitters in
    their cavity-coupled ground states).
    """
    ham = build_raman_hamiltonians(config)
    dim = 10
    i_ds, i_dd = 8, 9
    h = _embed(np.real(ham.h_up_down), dim, 0) + _embed(np.real(ham.h_up_up), dim, 5)
    cav = config.cavity

    def op(pairs):
        l = np.zeros((dim, dim), dtype=complex)
        for dest, src in pairs:
            l[dest, src] = 1.0
        return l

    jumps = (
        (cav.kappa, op([(i_dd, 2), (i_ds, 7)])),   # cavity photon loss
        (cav.gamma, op([(i_dd, 1), (i_ds, 6)])),   # emitter A decay
        (cav.gamma, op([(i_dd, 3)])),              # emitter B decay
    )
    system = OpenSystem(h, jumps)
    psi0 = np.zeros(dim, dtype=complex)
    psi0[[0, 5, i_ds, i_dd]] = 0.5
    frozen = np.zeros(dim, dtype=complex)
    frozen[[i_ds, i_dd]] = 0.5
    active = np.zeros(dim, dtype=complex)
    active[0], active[5] = -0.5, 0.5   # pi phase on |ud>
    if gate_time is None:
        gate_time = raman_gate_time(config)
    return GateOpenSystem(system, psi0, frozen, active, gate_time)


def _gauge_maximized(rho: np.ndarray, frozen: np.ndarray, active: np.ndarray) -> float:
    """max over the local-Z phase of <psi(chi)| rho |psi(chi)>,
    psi(chi) = frozen + e^{i chi} active."""
    direct = float(np.vdot(frozen, rho @ frozen).real + np.vdot(active, rho @ active).real)
    cross = complex(np.vdot(frozen, rho @ active))
    return direct + 2.0 * abs(cross)


def gate_fidelity_lindblad(gos: GateOpenSystem, gamma_eff: float = 0.0) -> GateResult:
    """Full master-equation gate fidelity (local-Z gauge maximized),
    with the slow decoherence applied as the usual -Gamma*T correction."""
    _, rho = propagate_exact(gos.system, gos.psi0, gos.gate_time)
    f = math.sqrt(min(max(_gauge_maximized(rho, gos.ideal_frozen, gos.ideal_active), 0.0), 1.0))
    f -= gamma_eff * gos.gate_time
    return GateResult(fidelity=min(max(f, 0.0), 1.0), gate_time=gos.gate_time,
                      success_probability=1.0, method=Method.LINDBLAD)


def gate_fidelity_nonhermitian(gos: GateOpenSystem) -> float:
    """No-jump-only gate fidelity in the same gauge:
    |<frozen|phi(T)>| + |<active|phi(T)>|, which equals (F_pi + 1)/2."""
    phi = linalg.propagate(effective_hamiltonian(gos.system), gos.psi0, gos.gate_time)
    return abs(np.vdot(gos.ideal_frozen, phi)) + abs(np.vdot(gos.ideal_active, phi))
