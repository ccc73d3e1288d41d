"""Observable concurrence bounds and checks of the fidelity argument behind them.

lower:  C^2 >= 2 [Tr rho^2 - Tr rho_A^2]
upper:  C^2 <= 2 [1 - Tr rho_A^2]

For a decomposition rho = sum_i t_i |psi_i><psi_i| the three quantities
(sum_i t_i C_i)^2, 2 Tr rho_A^2 and 2 Tr rho^2 expand as double sums over
pairs (i, j). Their pairwise terms are ordered by 1 >= G >= F >= |<psi_i|psi_j>|^2
on the marginals, which gives 2 >= C^2 + 2 Tr rho_A^2 >= 2 Tr rho^2 for
any decomposition, optimal or not.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ReconstructionFailure, StateError
from .measures import fidelity, super_fidelity
from .states import (
    BipartiteSplit,
    PureState,
    QuantumState,
    _resolve_split,
    density_from_pure,
    overlap,
    partial_trace,
    purity,
    validate_density,
)

TOL_INEQ = 1e-8
TOL_IDENTITY = 1e-9


def lower_bound(rho: QuantumState, split: BipartiteSplit | None = None, keep: str = "A") -> float:
    """2 [Tr rho^2 - Tr rho_keep^2]; negative values are returned as they are."""
    split = _resolve_split(rho, split)
    return 2.0 * (purity(rho) - purity(partial_trace(rho, split, keep)))


def upper_bound(rho: QuantumState, split: BipartiteSplit | None = None, keep: str = "A") -> float:
    split = _resolve_split(rho, split)
    return 2.0 * (1.0 - purity(partial_trace(rho, split, keep)))


@dataclass
class BoundsReport:
    lower_sq: float
    upper_sq: float
    c_reference: float | None = None
    slacks: dict = field(default_factory=dict)
    passed: dict = field(default_factory=dict)
    marginal: str = "A"

    @property
    def lower_sq_clamped(self) -> float:
        return max(0.0, self.lower_sq)

    @property
    def ok(self) -> bool:
        return all(self.passed.values())


@dataclass
class ChainReport:
    g_marginal: float
    f_marginal: float
    f_joint: float
    link_slacks: tuple  # (1 - g, g - f_marginal, f_marginal - f_joint)
    tol: float = TOL_INEQ

    @property
    def ok(self) -> bool:
        return min(self.link_slacks) >= -self.tol


def chain_check(psi_i: PureState, psi_j: PureState, split: BipartiteSplit, keep: str = "A",
                tol: float = TOL_INEQ) -> ChainReport:
    """1 >= G(rho_i^A, rho_j^A) >= F(rho_i^A, rho_j^A) >= |<psi_i|psi_j>|^2."""
    split.check(psi_i.d)
    split.check(psi_j.d)
    ra = partial_trace(density_from_pure(psi_i, split), keep=keep)
    rb = partial_trace(density_from_pure(psi_j, split), keep=keep)
    g = super_fidelity(ra, rb)
    f = fidelity(ra, rb)
    fj = overlap(psi_i, psi_j)
    return ChainReport(g, f, fj, (1.0 - g, g - f, f - fj), tol)


def _marginals(states, split, keep):
    m = states.reshape(-1, split.dimA, split.dimB)
    if keep.upper() == "A":
        return np.einsum("iab,icb->iac", m, m.conj())
    return np.einsum("iab,iac->ibc", m, m.conj())


def proof_chain_check(dec, split: BipartiteSplit, keep: str = "A", tol: float = TOL_INEQ) -> BoundsReport:
    """Evaluate both sides of the decomposition double-sum identities and the
    final sandwich 2 >= (avg C)^2 + 2 Tr rho_A^2 >= 2 Tr rho^2."""
    split.check(dec.target_dim)
    try:
        rho = validate_density(dec.density(), split)
    except StateError as exc:
        raise ReconstructionFailure(f"decomposition does not sum to a density matrix: {exc}") from exc
    t = dec.weights
    tt = np.outer(t, t)
    marg = _marginals(dec.states, split, keep)
    p_marg = np.einsum("iab,iab->i", marg, marg.conj()).real
    conc = np.sqrt(np.clip(2.0 * (1.0 - p_marg), 0.0, None))
    lin = np.sqrt(np.clip(1.0 - p_marg, 0.0, None))

    tr_marg = np.einsum("iab,jba->ij", marg, marg).real  # Tr(rho_i^A rho_j^A)
    ov = np.abs(dec.states.conj() @ dec.states.T) ** 2  # Tr(rho_i rho_j)
    g_pair = tr_marg + np.outer(lin, lin)

    a = float(t @ conc) ** 2
    b = 2.0 * purity(partial_trace(rho, split, keep))
    c = 2.0 * purity(rho)
    a_sum = 2.0 * float(np.sum(tt * np.outer(lin, lin)))
    b_sum = 2.0 * float(np.sum(tt * tr_marg))
    c_sum = 2.0 * float(np.sum(tt * ov))
    g_sum = 2.0 * float(np.sum(tt * g_pair))

    slacks = {
        "identity_concurrence": abs(a - a_sum),
        "identity_marginal": abs(b - b_sum),
        "identity_joint": abs(c - c_sum),
        "identity_superfidelity": abs(a + b - g_sum),
        "chain_upper": 2.0 - (a + b),
        "chain_lower": (a + b) - c,
    }
    passed = {k: v <= TOL_IDENTITY for k, v in slacks.items() if k.startswith("identity")}
    passed["chain_upper"] = slacks["chain_upper"] >= -tol
    passed["chain_lower"] = slacks["chain_lower"] >= -tol
    return BoundsReport(
        lower_sq=c - b,
        upper_sq=2.0 - b,
        c_reference=float(np.sqrt(a)),
        slacks=slacks,
        passed=passed,
        marginal=keep.upper(),
    )


def sandwich_check(rho: QuantumState, split: BipartiteSplit | None, c_reference: float, exact: bool = True,
                   keep: str = "A", tol: float = TOL_INEQ) -> BoundsReport:
    """lower <= c_ref^2 always (c_ref is exact or over-estimates); c_ref^2 <= upper
    only when c_ref is exact."""
    split = _resolve_split(rho, split)
    lo = lower_bound(rho, split, keep)
    up = upper_bound(rho, split, keep)
    c2 = c_reference * c_reference
    slacks = {"lower": c2 - lo, "bound_order": up - lo}
    passed = {"lower": slacks["lower"] >= -tol, "bound_order": slacks["bound_order"] >= -1e-12}
    if exact:
        slacks["upper"] = up - c2
        passed["upper"] = slacks["upper"] >= -tol
    return BoundsReport(lo, up, c_reference, slacks, passed, keep.upper())
