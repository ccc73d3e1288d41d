import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from entbounds.ensembles import SeedSpec, haar_pure, random_density
from entbounds.errors import DimensionMismatch, NotHermitian, NotPositive, TraceNotOne
from entbounds.states import (
    BipartiteSplit,
    PureState,
    QuantumState,
    density_from_pure,
    overlap,
    partial_trace,
    purify,
    purity,
    tensor,
    validate_density,
)

from conftest import bell_phi_plus, ket, werner

seeds = st.integers(min_value=0, max_value=2**32)


def test_validate_maximally_mixed_qubit():
    rho = validate_density(np.eye(2) / 2)
    assert rho.d == 2
    np.testing.assert_array_equal(rho.matrix, np.eye(2) / 2)


def test_validate_rejects_bad_trace():
    with pytest.raises(TraceNotOne) as exc:
        validate_density(np.diag([1.0, 0.1]))
    assert exc.value.magnitude == pytest.approx(0.1)


def test_validate_rejects_negative_eigenvalue():
    with pytest.raises(NotPositive) as exc:
        validate_density(np.diag([1.5, -0.5]))
    assert exc.value.magnitude == pytest.approx(0.5)


def test_validate_rejects_non_hermitian():
    m = np.array([[0.5, 0.1], [0.0, 0.5]])
    with pytest.raises(NotHermitian) as exc:
        validate_density(m)
    assert exc.value.magnitude == pytest.approx(0.1)


def test_validate_symmetrizes_within_tolerance():
    m = np.array([[0.5, 0.1 + 1e-11j], [0.1, 0.5]])
    rho = validate_density(m)
    np.testing.assert_array_equal(rho.matrix, rho.matrix.conj().T)


def test_validate_tolerates_roundoff_negative_eigenvalue():
    rho = validate_density(np.diag([1.0 + 5e-10, -5e-10]))
    assert rho.d == 2


def test_validate_rejects_non_square():
    with pytest.raises(DimensionMismatch):
        validate_density(np.ones((2, 3)) / 2)


@pytest.mark.parametrize(
    "psi, expected",
    [
        (ket(1, 0), np.diag([1, 0])),
        (ket(1, 1), np.full((2, 2), 0.5)),
    ],
)
def test_density_from_pure(psi, expected):
    np.testing.assert_allclose(density_from_pure(psi).matrix, expected, atol=1e-15)


def test_density_from_bell_is_rank_one_projector():
    rho = density_from_pure(bell_phi_plus()).matrix
    assert np.linalg.matrix_rank(rho, tol=1e-12) == 1
    np.testing.assert_allclose(rho @ rho, rho, atol=1e-15)


def test_tensor_examples():
    half = QuantumState(np.eye(2) / 2)
    np.testing.assert_allclose(tensor(half, half).matrix, np.eye(4) / 4)
    p0, p1 = QuantumState(np.diag([1.0, 0])), QuantumState(np.diag([0, 1.0]))
    expected = np.zeros((4, 4))
    expected[1, 1] = 1
    np.testing.assert_array_equal(tensor(p0, p1).matrix, expected)


@given(seeds)
def test_tensor_purity_multiplies(seed):
    a = random_density(2, 2, SeedSpec(seed, 0))
    b = random_density(3, 2, SeedSpec(seed, 1))
    ab = tensor(a, b)
    assert purity(ab) == pytest.approx(purity(a) * purity(b), abs=1e-12)
    assert np.trace(ab.matrix).real == pytest.approx(1.0, abs=1e-12)


def test_partial_trace_bell():
    rho = density_from_pure(bell_phi_plus(), BipartiteSplit(2, 2))
    np.testing.assert_allclose(partial_trace(rho, keep="A").matrix, np.eye(2) / 2, atol=1e-15)
    np.testing.assert_allclose(partial_trace(rho, keep="B").matrix, np.eye(2) / 2, atol=1e-15)


def test_partial_trace_of_product_returns_factors():
    a = random_density(2, 2, SeedSpec(3, 0))
    b = random_density(3, 3, SeedSpec(3, 1))
    ab = tensor(a, b)
    np.testing.assert_allclose(partial_trace(ab, keep="A").matrix, a.matrix, atol=1e-14)
    np.testing.assert_allclose(partial_trace(ab, keep="B").matrix, b.matrix, atol=1e-14)


def test_partial_trace_basis_convention():
    # |a=1, b=0> sits at index 1 * dimB + 0
    v = np.zeros(6)
    v[3] = 1.0
    rho = density_from_pure(PureState(v), BipartiteSplit(2, 3))
    np.testing.assert_array_equal(partial_trace(rho, keep="A").matrix, np.diag([0.0, 1.0]))
    np.testing.assert_array_equal(partial_trace(rho, keep="B").matrix, np.diag([1.0, 0, 0]))


def test_partial_trace_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        partial_trace(QuantumState(np.eye(4) / 4), BipartiteSplit(2, 3))


@given(seeds, st.sampled_from([(2, 2), (2, 3), (3, 2), (3, 3), (2, 4)]))
def test_pure_marginal_purities_agree(seed, dims):
    split = BipartiteSplit(*dims)
    rho = density_from_pure(haar_pure(split.total, SeedSpec(seed)), split)
    pa = purity(partial_trace(rho, keep="A"))
    pb = purity(partial_trace(rho, keep="B"))
    assert abs(pa - pb) <= 1e-10


@given(seeds, st.sampled_from([(2, 2), (2, 3), (3, 3)]), st.integers(1, 9))
def test_partial_trace_preserves_trace_and_positivity(seed, dims, rank):
    split = BipartiteSplit(*dims)
    rank = min(rank, split.total)
    rho = random_density(split.total, rank, SeedSpec(seed))
    for keep in "AB":
        red = partial_trace(rho, split, keep)
        validate_density(red.matrix)


def test_partial_trace_is_linear():
    split = BipartiteSplit(2, 3)
    r1 = random_density(6, 3, SeedSpec(5, 0))
    r2 = random_density(6, 6, SeedSpec(5, 1))
    mix = QuantumState(0.3 * r1.matrix + 0.7 * r2.matrix)
    lhs = partial_trace(mix, split).matrix
    rhs = 0.3 * partial_trace(r1, split).matrix + 0.7 * partial_trace(r2, split).matrix
    np.testing.assert_allclose(lhs, rhs, atol=1e-15)


def test_purify_maximally_mixed_qubit():
    psi, split = purify(QuantumState(np.eye(2) / 2))
    assert (split.dimA, split.dimB) == (2, 2)
    assert overlap(psi, bell_phi_plus()) == pytest.approx(1.0, abs=1e-12)
    red = partial_trace(density_from_pure(psi, split), keep="A")
    np.testing.assert_allclose(red.matrix, np.eye(2) / 2, atol=1e-15)


def test_purify_pure_state_is_product_with_ancilla_zero():
    phi = haar_pure(3, SeedSpec(11))
    psi, split = purify(density_from_pure(phi))
    m = psi.amplitudes.reshape(3, 3)
    np.testing.assert_allclose(m[:, 1:], 0, atol=1e-12)
    assert overlap(PureState(m[:, 0]), phi) == pytest.approx(1.0, abs=1e-12)


def test_purify_rank3_round_trip():
    rho = random_density(4, 3, SeedSpec(2024))
    psi, split = purify(rho)
    back = partial_trace(density_from_pure(psi, split), keep="A")
    assert np.max(np.abs(back.matrix - rho.matrix)) <= 1e-10


@given(seeds, st.integers(1, 8), st.integers(1, 8))
def test_purify_round_trip_up_to_d8(seed, d, rank):
    rank = min(rank, d)
    rho = random_density(d, rank, SeedSpec(seed))
    psi, split = purify(rho)
    assert psi.d == d * d
    back = partial_trace(density_from_pure(psi, split), keep="A")
    assert np.max(np.abs(back.matrix - rho.matrix)) <= 1e-10


def test_purify_ancilla_ordered_by_descending_eigenvalue():
    rho = QuantumState(np.diag([0.2, 0.5, 0.3]))
    psi, _ = purify(rho)
    col_weights = np.sum(np.abs(psi.amplitudes.reshape(3, 3)) ** 2, axis=0)
    np.testing.assert_allclose(col_weights, [0.5, 0.3, 0.2], atol=1e-15)


@pytest.mark.parametrize(
    "a, b, expected",
    [((1, 0), (1, 0), 1.0), ((1, 0), (0, 1), 0.0), ((1, 0), (1, 1), 0.5)],
)
def test_overlap_examples(a, b, expected):
    assert overlap(ket(*a), ket(*b)) == pytest.approx(expected, abs=1e-15)


def test_overlap_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        overlap(ket(1, 0), ket(1, 0, 0))


def test_overlap_self_and_symmetry_over_haar_pairs():
    worst_self = worst_sym = 0.0
    for i in range(1000):
        d = 2 + i % 7
        a, b = haar_pure(d, SeedSpec(77, i, (0,))), haar_pure(d, SeedSpec(77, i, (1,)))
        worst_self = max(worst_self, abs(overlap(a, a) - 1.0))
        worst_sym = max(worst_sym, abs(overlap(a, b) - overlap(b, a)))
    assert worst_self <= 1e-12
    assert worst_sym <= 1e-12


def test_overlap_is_one_up_to_global_phase():
    a = haar_pure(4, SeedSpec(8))
    assert overlap(a, PureState(np.exp(0.7j) * a.amplitudes)) == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("d", [1, 2, 3, 8])
def test_purity_maximally_mixed(d):
    assert purity(QuantumState(np.eye(d) / d)) == pytest.approx(1 / d, abs=1e-15)


def test_purity_werner():
    # eigenvalues (1 + 3p)/4 once and (1 - p)/4 three times
    p = 0.8
    lam = np.array([(1 + 3 * p) / 4] + [(1 - p) / 4] * 3)
    expected = float(np.sum(lam**2))
    assert expected == pytest.approx((1 + 3 * p**2) / 4, abs=1e-15)
    assert purity(werner(p)) == pytest.approx(expected, abs=1e-12)
    assert purity(werner(p)) == pytest.approx(0.73, abs=1e-12)


@given(seeds, st.integers(1, 8), st.integers(1, 8))
def test_purity_range(seed, d, rank):
    rank = min(rank, d)
    rho = random_density(d, rank, SeedSpec(seed))
    assert 1 / d - 1e-12 <= purity(rho) <= 1 + 1e-12
    assert purity(density_from_pure(haar_pure(d, SeedSpec(seed)))) == pytest.approx(1.0, abs=1e-12)
