"""The eight acceptance criteria at their stated sample sizes and tolerances.

Each test records one PASS/FAIL line, printed in the terminal summary.
"""

import time

import numpy as np
import pytest

from entbounds.bounds import chain_check, lower_bound, proof_chain_check, sandwich_check, upper_bound
from entbounds.campaign import TIMING_FIELDS, CampaignConfig, run_campaign
from entbounds.decompositions import SearchConfig, from_isometry, minimize_average_concurrence
from entbounds.ensembles import SeedSpec, haar_pure, random_density, random_isometry
from entbounds.measures import concurrence_pure, concurrence_two_qubit, fidelity, super_fidelity
from entbounds.states import BipartiteSplit, density_from_pure, partial_trace, purity

from conftest import QUBITS, record_acceptance, werner

pytestmark = pytest.mark.slow

MASTER = 20240601


def test_criterion_1_pure_state_tightness():
    t0 = time.perf_counter()
    worst = 0.0
    for s, dims in enumerate([(2, 2), (2, 3), (3, 3)]):
        split = BipartiteSplit(*dims)
        for i in range(10_000):
            psi = haar_pure(split.total, SeedSpec(MASTER, i, (1, s)))
            rho = density_from_pure(psi, split)
            c2 = concurrence_pure(psi, split) ** 2
            lo, up = lower_bound(rho), upper_bound(rho)
            worst = max(worst, abs(lo - c2), abs(up - c2), abs(lo - up))
    ok = worst <= 1e-9
    record_acceptance(1, ok, f"max |deviation| {worst:.2e} over 3x10^4 states ({time.perf_counter() - t0:.1f} s)")
    assert ok


def test_criterion_2_two_qubit_sandwich():
    t0 = time.perf_counter()
    worst = np.inf
    fails = 0
    for r in range(1, 5):
        for i in range(10_000):
            rho = random_density(4, r, SeedSpec(MASTER, i, (2, r))).with_split(QUBITS)
            rep = sandwich_check(rho, None, concurrence_two_qubit(rho))
            worst = min(worst, rep.slacks["lower"], rep.slacks["upper"])
            fails += not rep.ok
    ok = fails == 0 and worst >= -1e-8
    record_acceptance(2, ok, f"min slack {worst:+.2e}, {fails} failures over 4x10^4 states ({time.perf_counter() - t0:.1f} s)")
    assert ok


def test_criterion_3_fidelity_ordering():
    t0 = time.perf_counter()
    worst_gf = np.inf
    for d in (2, 3, 4, 8):
        for i in range(10_000):
            r1, r2 = 1 + i % d, 1 + (i // d) % d
            a = random_density(d, r1, SeedSpec(MASTER, i, (3, d, 0)))
            b = random_density(d, r2, SeedSpec(MASTER, i, (3, d, 1)))
            g, f = super_fidelity(a, b), fidelity(a, b)
            worst_gf = min(worst_gf, 1.0 - g, g - f)
    worst_fo = np.inf
    for s, dims in enumerate([(2, 2), (2, 3), (3, 3)]):
        split = BipartiteSplit(*dims)
        for i in range(10_000 // 3 + 1):
            a = haar_pure(split.total, SeedSpec(MASTER, i, (3, 100 + s, 0)))
            b = haar_pure(split.total, SeedSpec(MASTER, i, (3, 100 + s, 1)))
            rep = chain_check(a, b, split)
            worst_fo = min(worst_fo, rep.f_marginal - rep.f_joint)
    ok = worst_gf >= -1e-8 and worst_fo >= -1e-8
    record_acceptance(
        3, ok,
        f"min slack 1>=G>=F {worst_gf:+.2e}, F(marginals)>=overlap {worst_fo:+.2e} ({time.perf_counter() - t0:.1f} s)",
    )
    assert ok


def test_criterion_4_proof_chain():
    t0 = time.perf_counter()
    worst_id = 0.0
    worst_chain = np.inf
    for s, (dims, n_states) in enumerate([((2, 2), 1000), ((2, 3), 1000)]):
        split = BipartiteSplit(*dims)
        for i in range(n_states):
            r = 1 + i % split.total
            rho = random_density(split.total, r, SeedSpec(MASTER, i, (4, s)))
            for k in range(5):
                m = r + (k * r) // 2  # sizes from r up to 3r
                dec = from_isometry(rho, random_isometry(m, r, SeedSpec(MASTER, i, (4, s, k))))
                rep = proof_chain_check(dec, split)
                worst_id = max(worst_id, max(v for n, v in rep.slacks.items() if n.startswith("identity")))
                worst_chain = min(worst_chain, rep.slacks["chain_upper"], rep.slacks["chain_lower"])
    ok = worst_id <= 1e-9 and worst_chain >= -1e-8
    record_acceptance(
        4, ok,
        f"max identity deviation {worst_id:.2e}, min chain slack {worst_chain:+.2e} at 2x2 and 2x3 "
        f"({time.perf_counter() - t0:.1f} s)",
    )
    assert ok


def test_criterion_5_search_vs_oracle():
    t0 = time.perf_counter()
    gaps = []
    for i in range(100):
        rho = random_density(4, 4, SeedSpec(2024, i))
        cfg = SearchConfig(ensemble_size=16, restarts=20, seed=SeedSpec(2024, i, (1,)))
        _, c_star = minimize_average_concurrence(rho, QUBITS, cfg)
        gaps.append(c_star - concurrence_two_qubit(rho))
    gaps = np.array(gaps)
    close = int(np.count_nonzero(gaps <= 5e-3))
    ok = gaps.min() >= -1e-7 and close >= 95
    record_acceptance(
        5, ok,
        f"min gap {gaps.min():+.2e}, max gap {gaps.max():.2e}, {close}/100 within 5e-3 "
        f"({time.perf_counter() - t0:.1f} s)",
    )
    assert ok


def test_criterion_6_werner_profile():
    errs = {"oracle": 0.0, "lower": 0.0, "upper": 0.0}
    sandwich_ok = True
    for p in np.round(np.linspace(0.0, 1.0, 11), 12):
        rho = werner(p)
        c = concurrence_two_qubit(rho)
        errs["oracle"] = max(errs["oracle"], abs(c - max(0.0, (3 * p - 1) / 2)))
        errs["lower"] = max(errs["lower"], abs(lower_bound(rho) - (3 * p * p - 1) / 2))
        errs["upper"] = max(errs["upper"], abs(upper_bound(rho) - 1.0))
        sandwich_ok &= sandwich_check(rho, None, c).ok
    top = werner(1.0)
    at_one = [concurrence_two_qubit(top) ** 2, lower_bound(top), upper_bound(top)]
    ones_ok = all(abs(v - 1.0) <= 1e-9 for v in at_one)
    ok = errs["oracle"] <= 1e-9 and errs["lower"] <= 1e-9 and errs["upper"] <= 1e-12 and sandwich_ok and ones_ok
    record_acceptance(
        6, ok,
        f"closed form err {errs['oracle']:.1e}, lower err {errs['lower']:.1e}, upper err {errs['upper']:.1e}, "
        f"sandwich {'holds' if sandwich_ok else 'violated'}, p=1 values {np.round(at_one, 12).tolist()}",
    )
    assert ok


def test_criterion_7_haar_moment():
    vals = np.empty(100_000)
    for i in range(vals.size):
        rho = density_from_pure(haar_pure(4, SeedSpec(MASTER, i, (7,))), QUBITS)
        vals[i] = purity(partial_trace(rho))
    mean = float(vals.mean())
    ok = 0.795 <= mean <= 0.805
    record_acceptance(7, ok, f"mean Tr(rho_A^2) = {mean:.5f} over 10^5 states (expected 0.8)")
    assert ok


def test_criterion_8_determinism(monkeypatch):
    monkeypatch.delenv("ENTBOUNDS_THREADS", raising=False)
    base = dict(samples=1000, dimA=2, dimB=2, master_seed=MASTER)

    def strip(report):
        return [{k: v for k, v in r.items() if k not in TIMING_FIELDS} for r in report.records]

    one_a = strip(run_campaign(CampaignConfig(threads=1, **base)))
    one_b = strip(run_campaign(CampaignConfig(threads=1, **base)))
    eight = strip(run_campaign(CampaignConfig(threads=8, **base)))
    ok = one_a == one_b == eight and len(one_a) == 1000
    passed = sum(r["pass"] for r in one_a)
    record_acceptance(8, ok, f"1000 records identical across two 1-thread runs and one 8-thread run ({passed} trials pass)")
    assert ok
