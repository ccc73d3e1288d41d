"""Seeded random pure states, Ginibre density matrices and Haar isometries.

Every draw comes from a Philox (counter-based) stream keyed by
``(master_seed, stream_index, *substream)`` through ``numpy.random.SeedSequence``,
so any trial of a campaign can be regenerated on its own.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .states import PureState, QuantumState


@dataclass(frozen=True)
class SeedSpec:
    master_seed: int
    stream_index: int = 0
    substream: tuple[int, ...] = ()

    def __post_init__(self):
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must be a 64-bit unsigned integer")
        if self.stream_index < 0 or any(s < 0 for s in self.substream):
            raise ValueError("stream indices must be non-negative")

    def child(self, index: int) -> "SeedSpec":
        return SeedSpec(self.master_seed, self.stream_index, self.substream + (index,))

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(
            entropy=self.master_seed, spawn_key=(self.stream_index, *self.substream)
        )
        return np.random.Generator(np.random.Philox(ss))


@dataclass(frozen=True, eq=False)
class Isometry:
    entries: np.ndarray

    @property
    def shape(self):
        return self.entries.shape

    def defect(self) -> float:
        v = self.entries
        return float(np.max(np.abs(v.conj().T @ v - np.eye(v.shape[1]))))


def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return seed.generator()


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def haar_pure(d: int, seed) -> PureState:
    if d < 1:
        raise ValueError("d must be >= 1")
    return PureState.normalized(complex_gaussian(_rng(seed), d))


def random_density(d: int, rank: int, seed) -> QuantumState:
    """Ginibre-induced density matrix G G^dagger / Tr(G G^dagger), G of shape (d, rank)."""
    if not 1 <= rank <= d:
        raise ValueError(f"rank must lie in [1, {d}], got {rank}")
    g = complex_gaussian(_rng(seed), (d, rank))
    rho = g @ g.conj().T
    rho = (rho + rho.conj().T) / 2
    return QuantumState(rho / np.trace(rho).real)


def haar_unitary(m: int, rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(complex_gaussian(rng, (m, m)))
    diag = np.diagonal(r)
    # make R's diagonal real positive so Q is Haar distributed
    return q * (diag / np.abs(diag))[None, :]


def random_isometry(m: int, r: int, seed) -> Isometry:
    if not 1 <= r <= m:
        raise ValueError(f"need 1 <= r <= m, got m={m}, r={r}")
    return Isometry(haar_unitary(m, _rng(seed))[:, :r])
