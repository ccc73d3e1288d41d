"""Pure-state decompositions of a density matrix and the search for the one
with the smallest average concurrence.

Every size-m decomposition of a rank-r state is obtained from an m x r
isometry V acting on the eigen-ensemble: |phi_j> = sum_k V_jk sqrt(lam_k) |e_k>.
The search keeps the unnormalized rows |phi_j> and mixes pairs of them with
complex Givens rotations, which leaves V an isometry at every step.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import _givens
from .ensembles import Isometry, SeedSpec, random_isometry
from .errors import RankMismatch
from .measures import average_concurrence, concurrence_pure
from .states import BipartiteSplit, PureState, QuantumState, TOL_NORM, spectrum

RANK_TOL = 1e-12
DROP_TOL = 1e-14
SMOOTHING = (0.1, 0.03, 0.01, 0.003, 0.001, 0.0)


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Weights t_j > 0 and normalized pure states (rows of ``states``)."""

    weights: np.ndarray
    states: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).reshape(-1)
        s = np.asarray(self.states, dtype=np.complex128)
        if s.ndim == 1:
            s = s[None, :]
        if s.shape[0] != w.shape[0]:
            raise ValueError(f"{w.shape[0]} weights for {s.shape[0]} states")
        if np.any(w <= 0):
            raise ValueError("weights must be strictly positive")
        if abs(w.sum() - 1.0) > 1e-10:
            raise ValueError(f"weights sum to {w.sum():.12f}, not 1")
        norms = np.einsum("ij,ij->i", s.conj(), s).real
        if np.max(np.abs(norms - 1.0)) > TOL_NORM:
            raise ValueError("decomposition states must be normalized")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "states", s)

    @classmethod
    def from_unnormalized(cls, phi: np.ndarray) -> "Decomposition":
        t = np.einsum("ij,ij->i", phi.conj(), phi).real
        keep = t >= DROP_TOL
        t, phi = t[keep], phi[keep]
        return cls(t / t.sum(), phi / np.sqrt(t)[:, None])

    @property
    def target_dim(self) -> int:
        return self.states.shape[1]

    def __len__(self):
        return self.weights.shape[0]

    def pure_states(self) -> list[PureState]:
        return [PureState(v) for v in self.states]

    def density(self) -> np.ndarray:
        s = self.states
        return np.einsum("j,ja,jb->ab", self.weights, s, s.conj())

    def unnormalized(self) -> np.ndarray:
        return self.states * np.sqrt(self.weights)[:, None]


def _support(rho: QuantumState):
    lam, vecs = spectrum(rho)
    r = int(np.count_nonzero(lam > RANK_TOL))
    return lam[:r], vecs[:, :r]


def rank(rho: QuantumState) -> int:
    return _support(rho)[0].shape[0]


def eigen_ensemble(rho: QuantumState) -> Decomposition:
    lam, vecs = _support(rho)
    return Decomposition(lam / lam.sum(), vecs.T)


def _root_rows(rho):
    lam, vecs = _support(rho)
    return np.sqrt(lam)[:, None] * vecs.T  # row k is sqrt(lam_k) e_k


def from_isometry(rho: QuantumState, V) -> Decomposition:
    v = V.entries if isinstance(V, Isometry) else np.asarray(V)
    root = _root_rows(rho)
    if v.ndim != 2 or v.shape[1] != root.shape[0]:
        raise RankMismatch(
            f"isometry has {v.shape[-1]} columns but the state has rank {root.shape[0]}"
        )
    return Decomposition.from_unnormalized(v @ root)


@dataclass(frozen=True)
class SearchConfig:
    ensemble_size: int | None = None  # None -> rank**2
    restarts: int = 20
    max_sweeps: int = 200
    step_tolerance: float = 1e-9
    seed: SeedSpec = field(default_factory=lambda: SeedSpec(0))

    def __post_init__(self):
        if self.restarts < 1 or self.max_sweeps < 1:
            raise ValueError("restarts and max_sweeps must be >= 1")
        if self.ensemble_size is not None and self.ensemble_size < 1:
            raise ValueError("ensemble_size must be >= 1")

    def size_for(self, r: int) -> int:
        m = r * r if self.ensemble_size is None else self.ensemble_size
        if m < r:
            raise RankMismatch(f"ensemble size {m} is below the state's rank {r}")
        return m


class DescentResult(NamedTuple):
    decomposition: Decomposition
    value: float
    history: np.ndarray  # objective before the first sweep and after each sweep


def descend(rho: QuantumState, split: BipartiteSplit, V, max_sweeps=200, step_tolerance=1e-9,
            schedule=SMOOTHING) -> DescentResult:
    """Run Givens descent from the decomposition defined by isometry ``V``."""
    split.check(rho.d)
    v = V.entries if isinstance(V, Isometry) else np.asarray(V)
    root = _root_rows(rho)
    if v.shape[1] != root.shape[0]:
        raise RankMismatch(f"isometry has {v.shape[1]} columns, state rank is {root.shape[0]}")
    phi = np.ascontiguousarray(v @ root, dtype=np.complex128)
    best_phi = np.empty_like(phi)
    history = np.empty(max_sweeps + 1)
    n = _givens.descend(phi, split.dimA, split.dimB, np.asarray(schedule, dtype=float),
                        max_sweeps, step_tolerance, history, best_phi)
    dec = Decomposition.from_unnormalized(best_phi)
    return DescentResult(dec, average_concurrence(dec, split), history[: n + 1].copy())


def minimize_average_concurrence(rho: QuantumState, split: BipartiteSplit, cfg: SearchConfig | None = None):
    """Best decomposition over ``cfg.restarts`` Haar-random starts.

    Returns ``(decomposition, c_star)``; c_star upper-estimates the concurrence.
    Restart i draws its isometry from ``cfg.seed.child(i)``.
    """
    cfg = cfg or SearchConfig()
    split.check(rho.d)
    r = rank(rho)
    if r == 1:
        dec = eigen_ensemble(rho)
        return dec, concurrence_pure(PureState(dec.states[0]), split)
    m = cfg.size_for(r)
    best = None
    for i in range(cfg.restarts):
        V = random_isometry(m, r, cfg.seed.child(i))
        res = descend(rho, split, V, cfg.max_sweeps, cfg.step_tolerance)
        if best is None or res.value < best.value:
            best = res
    return best.decomposition, best.value
