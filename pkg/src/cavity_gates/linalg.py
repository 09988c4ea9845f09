"""Small dense complex matrix algebra for subspace Hamiltonians.

Matrices here are <= 16x16 numpy arrays. The matrix exponential prefers an
eigendecomposition (cheap and exact for long propagation times) and falls
back to scaling-and-squaring with a truncated Taylor series when the
eigenvector matrix is ill-conditioned.
"""
from __future__ import annotations

import numpy as np

from .errors import ConvergenceFailure, NonFinite

#: condition-number threshold above which the eigenvector basis is distrusted
EIG_COND_LIMIT = 1e8

#: truncation tolerance of the Taylor fallback
SERIES_TOL = 1e-12


def _as_square(matrix) -> np.ndarray:
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.view(float))):
        raise NonFinite("matrix contains NaN or Inf entries")
    return m


def _expm_squaring(m: np.ndarray) -> np.ndarray:
    """Scaling-and-squaring with a Taylor series truncated at SERIES_TOL."""
    norm = np.linalg.norm(m, 1)
    squarings = max(0, int(np.ceil(np.log2(norm))) + 1) if norm > 0.5 else 0
    a = m / (2.0**squarings)
    result = np.eye(m.shape[0], dtype=complex)
    term = np.eye(m.shape[0], dtype=complex)
    for k in range(1, 60):
        term = term @ a / k
        result = result + term
        if np.abs(term).max() < SERIES_TOL:
            break
    else:
        raise ConvergenceFailure("Taylor series for the matrix exponential did not truncate")
    for _ in range(squarings):
        result = result @ result
    return result


def mat_exp(matrix) -> np.ndarray:
    """Matrix exponential e^M.

    Diagonalizes when the eigenvector condition number is below
    EIG_COND_LIMIT, otherwise uses scaling-and-squaring. For anti-Hermitian
    input the result is unitary to ~1e-10.
    """
    m = _as_square(matrix)
    try:
        evals, vecs = np.linalg.eig(m)
        cond = np.linalg.cond(vecs)
        if np.isfinite(cond) and cond < EIG_COND_LIMIT:
            return (vecs * np.exp(evals)) @ np.linalg.inv(vecs)
    except np.linalg.LinAlgError:
        pass
    return _expm_squaring(m)


def propagate(h_eff, psi0, t: float) -> np.ndarray:
    """Propagate a state under a (generally non-Hermitian) generator.

    Returns e^{-i t H_eff} psi0. For H_eff = H - (i/2) * sum of nonnegative
    decay projectors the output norm never exceeds the input norm.
    """
    h = _as_square(h_eff)
    psi = np.asarray(psi0, dtype=complex)
    if psi.shape != (h.shape[0],):
        raise ValueError(f"state dimension {psi.shape} does not match generator {h.shape}")
    if not np.all(np.isfinite(psi.view(float))):
        raise NonFinite("state contains NaN or Inf entries")
    try:
        evals, vecs = np.linalg.eig(h)
        cond = np.linalg.cond(vecs)
        if np.isfinite(cond) and cond < EIG_COND_LIMIT:
            coeff = np.linalg.solve(vecs, psi)
            return vecs @ (np.exp(-1j * t * evals) * coeff)
    except np.linalg.LinAlgError:
        pass
    return _expm_squaring(-1j * t * h) @ psi


def return_amplitude(h_eff, index: int, t: float) -> complex:
    """<index| e^{-i t H_eff} |index> for a basis state of the generator."""
    h = _as_square(h_eff)
    psi0 = np.zeros(h.shape[0], dtype=complex)
    psi0[index] = 1.0
    return complex(propagate(h, psi0, t)[index])
