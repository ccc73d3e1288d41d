"""JSON state files.

    {"dims": [dA, dB], "matrix": [[[re, im], ...], ...]}   # density matrix, row-major
    {"dims": [dA, dB], "vector": [[re, im], ...]}          # pure state

Floats are written with ``repr`` precision, so a save/load round trip is exact.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import ParseError, StateError, ValidationError
from .states import BipartiteSplit, PureState, QuantumState, density_from_pure, validate_density


def _encode(arr):
    arr = np.asarray(arr, dtype=np.complex128)
    pairs = np.stack([arr.real, arr.imag], axis=-1)
    return pairs.tolist()


def _decode(obj, ndim, path):
    try:
        arr = np.asarray(obj, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{path}: entries must be [re, im] number pairs") from exc
    if arr.ndim != ndim + 1 or arr.shape[-1] != 2:
        raise ParseError(f"{path}: expected {ndim}-d array of [re, im] pairs, got shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def _read(path):
    path = Path(path)
    text = path.read_text()  # OSError propagates to the caller
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or ("matrix" in doc) == ("vector" in doc):
        raise ParseError(f"{path}: need exactly one of 'matrix' or 'vector'")
    split = None
    if "dims" in doc:
        dims = doc["dims"]
        if not (isinstance(dims, list) and len(dims) == 2 and all(isinstance(x, int) and x >= 1 for x in dims)):
            raise ParseError(f"{path}: 'dims' must be two positive integers")
        split = BipartiteSplit(*dims)
    return doc, split


def load_state(path) -> QuantumState:
    doc, split = _read(path)
    try:
        if "vector" in doc:
            psi = PureState(_decode(doc["vector"], 1, path)).validate()
            if split is not None:
                split.check(psi.d)
            return density_from_pure(psi, split)
        return validate_density(_decode(doc["matrix"], 2, path), split)
    except StateError as exc:
        raise ValidationError(path, exc) from exc
    except ValueError as exc:  # DimensionMismatch and friends
        raise ParseError(f"{path}: {exc}") from exc


def load_pure_state(path) -> tuple[PureState, BipartiteSplit | None]:
    """Read a ``vector`` file, or a ``matrix`` file holding a rank-1 density."""
    doc, split = _read(path)
    if "vector" in doc:
        try:
            psi = PureState(_decode(doc["vector"], 1, path)).validate()
        except StateError as exc:
            raise ValidationError(path, exc) from exc
        return psi, split
    rho = load_state(path)
    lam, vecs = np.linalg.eigh(rho.matrix)
    if lam[-1] < 1.0 - 1e-8:
        raise ParseError(f"{path}: state is mixed (largest eigenvalue {lam[-1]:.6f})")
    return PureState(vecs[:, -1]), split


def save_state(state, path, split: BipartiteSplit | None = None):
    if isinstance(state, PureState):
        doc = {"vector": _encode(state.amplitudes)}
    else:
        doc = {"matrix": _encode(state.matrix)}
        split = split or state.split
    if split is not None:
        doc = {"dims": [split.dimA, split.dimB], **doc}
    Path(path).write_text(json.dumps(doc))
