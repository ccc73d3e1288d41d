"""Concurrence, Uhlmann fidelity and super-fidelity."""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, NumericalBreakdown
from .states import (
    BipartiteSplit,
    PureState,
    QuantumState,
    purify,
    purity,
    spectrum,
)

SIGMA_Y = np.array([[0, -1j], [1j, 0]])
YY = np.kron(SIGMA_Y, SIGMA_Y)


def _same_dim(a, b):
    if a.d != b.d:
        raise DimensionMismatch(f"dimensions differ: {a.d} vs {b.d}")


def concurrence_pure(psi: PureState, split: BipartiteSplit) -> float:
    """sqrt(2 (1 - Tr rho_A^2)) for the reduced state of ``|psi><psi|``.

    Evaluated through the 2x2 minors of the amplitude matrix M, using
    2 (1 - Tr rho_A^2) = sum |M_ab M_cd - M_ad M_cb|^2 over all a, b, c, d,
    which is exactly zero on product states instead of sqrt(roundoff).
    """
    split.check(psi.d)
    m = psi.amplitudes.reshape(split.dimA, split.dimB)
    minors = np.einsum("ab,cd->abcd", m, m) - np.einsum("ad,cb->abcd", m, m)
    return float(np.sqrt(np.sum(np.abs(minors) ** 2)))


def sqrtm_psd(state: QuantumState) -> np.ndarray:
    try:
        lam, vecs = spectrum(state)
    except np.linalg.LinAlgError as exc:
        raise NumericalBreakdown(f"eigendecomposition failed: {exc}") from exc
    return (vecs * np.sqrt(lam)[None, :]) @ vecs.conj().T


def fidelity(rho1: QuantumState, rho2: QuantumState) -> float:
    """Uhlmann fidelity [Tr sqrt(sqrt(rho1) rho2 sqrt(rho1))]^2.

    Evaluated as the squared nuclear norm of sqrt(rho1) sqrt(rho2), which
    equals the nested-root trace without forming the triple product.
    """
    _same_dim(rho1, rho2)
    try:
        sv = np.linalg.svd(sqrtm_psd(rho1) @ sqrtm_psd(rho2), compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalBreakdown(f"SVD failed: {exc}") from exc
    return float(min(1.0, np.sum(sv) ** 2))


def super_fidelity(rho1: QuantumState, rho2: QuantumState) -> float:
    _same_dim(rho1, rho2)
    cross = float(np.real(np.vdot(rho1.matrix, rho2.matrix)))  # Tr(rho1 rho2), both Hermitian
    rest = (1.0 - purity(rho1)) * (1.0 - purity(rho2))
    return cross + float(np.sqrt(max(0.0, rest)))


def average_concurrence(dec, split: BipartiteSplit) -> float:
    split.check(dec.target_dim)
    return float(sum(t * concurrence_pure(psi, split) for t, psi in zip(dec.weights, dec.pure_states())))


def concurrence_two_qubit(rho: QuantumState) -> float:
    """Closed-form two-qubit concurrence max(0, mu1 - mu2 - mu3 - mu4).

    The mu are the square roots of the eigenvalues of rho (Y x Y) rho* (Y x Y),
    obtained here as the singular values of sqrt(rho) (Y x Y) sqrt(rho)* (Y x Y).
    """
    if rho.d != 4 or (rho.split is not None and (rho.split.dimA, rho.split.dimB) != (2, 2)):
        raise DimensionMismatch("closed-form concurrence needs a 2x2 two-qubit state")
    root = sqrtm_psd(rho)
    try:
        mu = np.linalg.svd(root @ YY @ root.conj() @ YY, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalBreakdown(f"SVD failed: {exc}") from exc
    return float(max(0.0, mu[0] - mu[1] - mu[2] - mu[3]))


def aligned_purifications(rho1: QuantumState, rho2: QuantumState):
    """Purifications of rho1, rho2 on a d x d space whose overlap equals F(rho1, rho2).

    Both start canonical; the second gets the ancilla unitary from the polar
    part of the cross matrix m1^dagger m2 of the two Schmidt frames.
    """
    _same_dim(rho1, rho2)
    psi1, split = purify(rho1)
    psi2, _ = purify(rho2)
    d = rho1.d
    m1 = psi1.amplitudes.reshape(d, d)
    m2 = psi2.amplitudes.reshape(d, d)
    w, _, zh = np.linalg.svd(m1.conj().T @ m2)
    return psi1, PureState((m2 @ zh.conj().T @ w.conj().T).reshape(-1)), split
