"""Pure and mixed states on finite-dimensional (bipartite) Hilbert spaces.

Composite basis convention: subsystem A is the slow index, so the amplitude
of ``|a>|b>`` sits at position ``a * dimB + b``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatch,
    NotHermitian,
    NotNormalized,
    NotPositive,
    TraceNotOne,
)

TOL_NORM = 1e-9
TOL_TRACE = 1e-9
TOL_HERM = 1e-9
TOL_PSD = 1e-9
TOL_NUM = 1e-8

MAX_DIM = 64


@dataclass(frozen=True)
class BipartiteSplit:
    dimA: int
    dimB: int

    def __post_init__(self):
        if int(self.dimA) < 1 or int(self.dimB) < 1:
            raise ValueError(f"subsystem dimensions must be >= 1, got {self.dimA}x{self.dimB}")

    @property
    def total(self) -> int:
        return self.dimA * self.dimB

    def check(self, d: int):
        if d != self.total:
            raise DimensionMismatch(
                f"dimension {d} does not factor as {self.dimA}x{self.dimB}"
            )

    def __str__(self):
        return f"{self.dimA}x{self.dimB}"


@dataclass(frozen=True, eq=False)
class PureState:
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def d(self) -> int:
        return self.amplitudes.shape[0]

    @classmethod
    def normalized(cls, vector) -> "PureState":
        vector = np.asarray(vector, dtype=np.complex128).reshape(-1)
        return cls(vector / np.linalg.norm(vector))

    def validate(self, tol=TOL_NORM) -> "PureState":
        dev = abs(np.vdot(self.amplitudes, self.amplitudes).real - 1.0)
        if dev > tol:
            raise NotNormalized(f"squared norm deviates from 1 by {dev:.3e}", dev)
        return self


@dataclass(frozen=True, eq=False)
class QuantumState:
    """Density matrix. Build through :func:`validate_density` for untrusted input."""

    matrix: np.ndarray
    split: BipartiteSplit | None = field(default=None)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch(f"density matrix must be square, got shape {m.shape}")
        if self.split is not None:
            self.split.check(m.shape[0])
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def d(self) -> int:
        return self.matrix.shape[0]

    def with_split(self, split: BipartiteSplit) -> "QuantumState":
        return QuantumState(self.matrix, split)


def validate_density(matrix, split: BipartiteSplit | None = None, *, max_dim=MAX_DIM) -> QuantumState:
    """Check Hermiticity, positivity and unit trace; return the symmetrized state.

    Eigenvalues in ``[-TOL_PSD, 0)`` are tolerated as roundoff. They are not
    rewritten in the stored matrix; spectral routines clamp them at use.
    """
    m = np.asarray(matrix, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"density matrix must be square, got shape {m.shape}")
    if m.shape[0] > max_dim:
        raise DimensionMismatch(f"dimension {m.shape[0]} exceeds cap {max_dim}")
    if not np.all(np.isfinite(m)):
        raise NotHermitian("matrix has non-finite entries", float("inf"))
    herm_dev = float(np.max(np.abs(m - m.conj().T), initial=0.0))
    if herm_dev > TOL_HERM:
        raise NotHermitian(f"max |M - M^dagger| entry is {herm_dev:.3e}", herm_dev)
    m = (m + m.conj().T) / 2
    lam_min = float(np.linalg.eigvalsh(m)[0])
    if lam_min < -TOL_PSD:
        raise NotPositive(f"smallest eigenvalue is {lam_min:.3e}", -lam_min)
    trace_dev = abs(np.trace(m).real - 1.0)
    if trace_dev > TOL_TRACE:
        raise TraceNotOne(f"trace deviates from 1 by {trace_dev:.3e}", trace_dev)
    return QuantumState(m, split)


def density_from_pure(psi: PureState, split: BipartiteSplit | None = None) -> QuantumState:
    v = psi.amplitudes
    return QuantumState(np.outer(v, v.conj()), split)


def tensor(a: QuantumState, b: QuantumState) -> QuantumState:
    return QuantumState(np.kron(a.matrix, b.matrix), BipartiteSplit(a.d, b.d))


def _resolve_split(state, split):
    split = split if split is not None else state.split
    if split is None:
        raise DimensionMismatch("no bipartite split given or attached to the state")
    split.check(state.d)
    return split


def partial_trace(state: QuantumState, split: BipartiteSplit | None = None, keep: str = "A") -> QuantumState:
    """Reduced state on subsystem ``keep`` ("A" or "B")."""
    split = _resolve_split(state, split)
    t = state.matrix.reshape(split.dimA, split.dimB, split.dimA, split.dimB)
    keep = keep.upper()
    if keep == "A":
        red = np.einsum("ijkj->ik", t)
    elif keep == "B":
        red = np.einsum("ijil->jl", t)
    else:
        raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")
    return QuantumState(red)


def reduced_from_pure(psi: PureState, split: BipartiteSplit, keep: str = "A") -> np.ndarray:
    """Marginal of ``|psi><psi|`` straight from the amplitude matrix."""
    split.check(psi.d)
    m = psi.amplitudes.reshape(split.dimA, split.dimB)
    if keep.upper() == "A":
        return m @ m.conj().T
    return m.T @ m.conj()


def spectrum(state: QuantumState):
    """Eigenvalues (descending, clamped at 0) and matching eigenvectors as columns.

    Eigenvalues below the solver's noise floor are set to exactly 0, so a
    rank-deficient state does not grow sqrt(roundoff) ~ 1e-8 components
    under square roots. Ties keep the solver's returned order.
    """
    lam, vecs = np.linalg.eigh(state.matrix)
    order = np.argsort(-lam, kind="stable")
    lam = lam[order]
    floor = 10 * state.d * np.finfo(float).eps * max(lam[0], 0.0)
    lam[lam <= floor] = 0.0
    return lam, vecs[:, order]


def purify(rho: QuantumState) -> tuple[PureState, BipartiteSplit]:
    """Canonical purification sum_k sqrt(lam_k) |e_k>|k> with a d-dimensional ancilla."""
    lam, vecs = spectrum(rho)
    amps = vecs * np.sqrt(lam)[None, :]
    return PureState(amps.reshape(-1)), BipartiteSplit(rho.d, rho.d)


def overlap(psi1: PureState, psi2: PureState) -> float:
    if psi1.d != psi2.d:
        raise DimensionMismatch(f"dimensions differ: {psi1.d} vs {psi2.d}")
    return min(1.0, abs(np.vdot(psi1.amplitudes, psi2.amplitudes)) ** 2)


def purity(state: QuantumState) -> float:
    m = state.matrix
    # Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return float(np.sum(np.abs(m) ** 2))
