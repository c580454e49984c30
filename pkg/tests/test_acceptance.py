"""Acceptance suite.

Each test exercises one acceptance criterion end to end at its stated
tolerance and prints a single CRITERION n: PASS/FAIL line (run with -s or
check captured output). Criteria that specify a runtime bound assert it.

Criterion 9 asserts the expected unconditional-stability thresholds over
the default sweep range. Its eta=1 half does not hold for this scheme:
the BDF3/EXT3, Q=3 curve rises to rho ~ 1.012 for s > ~1.05e4 (confirmed
independently by the large-s interface recurrence, whose asymptote is
1.011975), so the minimal unconditionally stable odd Q over s in
[1e-2, 1e6] is 5, not 3. The threshold of 3 does hold when the sweep
stops at s <= 1e4. The eta=2 threshold of 6 holds exactly. The test is
kept faithful to the expected integers and fails with a diagnostic.
"""

import time

import numpy as np
import pytest

from ospc.coeffs import SchemeSpec
from ospc.discretize import GridSpec, coupling_matrices, second_difference
from ospc.multirate import MultirateSpec, growth_matrix_multirate, multirate_labels
from ospc.simulate import (
    empirical_growth_rate,
    replicated_state,
    run_monodomain,
    run_multirate,
    run_singlerate,
)
from ospc.singlerate import growth_matrix_singlerate
from ospc.spectral import STABILITY_MARGIN, spectral_radius, tridiag_eigenvalues
from ospc.sweep import SweepSpec, growth_iterates, rho_from_iterates, run_sweep

DEFAULT_SMIN, DEFAULT_SMAX, DEFAULT_POINTS = 1e-2, 1e6, 200


def report(n, ok, detail=""):
    print(f"CRITERION {n}: {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, f"criterion {n} failed: {detail}"


def default_s_grid(points=DEFAULT_POINTS):
    return np.logspace(np.log10(DEFAULT_SMIN), np.log10(DEFAULT_SMAX), points)


def max_stable_s(stable_flags, s_values):
    """Largest sweep point with all smaller sampled s stable; None if the
    first point is already unstable."""
    best = None
    for s, ok in zip(s_values, stable_flags):
        if not ok:
            break
        best = s
    return best


def worst_rho_per_q(k, m, eta, N, K, s_values, q_list, gamma=1.0):
    worst = {Q: 0.0 for Q in q_list}
    for s in s_values:
        plain, C = growth_iterates(k, m, eta, N, K, float(s), max(q_list))
        for Q in q_list:
            worst[Q] = max(worst[Q], rho_from_iterates(plain, C, Q, gamma))
    return worst


def stability_curve(k, m, eta, N, K, s_values, q_list, gamma=1.0):
    flags = {Q: [] for Q in q_list}
    for s in s_values:
        plain, C = growth_iterates(k, m, eta, N, K, float(s), max(q_list))
        for Q in q_list:
            rho = rho_from_iterates(plain, C, Q, gamma)
            flags[Q].append(rho < 1.0 - STABILITY_MARGIN)
    return flags


def test_criterion_1_operator_oracle():
    t0 = time.perf_counter()
    for M in range(1, 65):
        dx = 1.0 / (M + 1)
        eigs = np.sort(np.linalg.eigvalsh(second_difference(M, dx)))
        ref = tridiag_eigenvalues(M, dx)
        assert np.max(np.abs(eigs - ref) / ref) < 1e-10
    for N in range(1, 65, 3):
        for K in range(1, N + 1, max(1, N // 7)):
            g = GridSpec(N=N, K=K)
            cs = coupling_matrices(g, dt=0.37, beta0=1.5)
            val = g.nu * 0.37 / g.dx**2
            for J, r, c in ((cs.J12, N - 1, K - 1), (cs.J21, 0, N - K)):
                nz = np.nonzero(J)
                assert len(nz[0]) == 1 and (nz[0][0], nz[1][0]) == (r, c)
                assert abs(J[r, c] - val) < 1e-12 * val
    elapsed = time.perf_counter() - t0
    report(1, elapsed < 5.0, f"(operator oracle + coupling structure, {elapsed:.2f}s < 5s)")


def test_criterion_2_matrix_matrix_free_equivalence():
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    checked = 0
    worst = 0.0
    for k in (1, 2, 3):
        for m in range(1, k + 1):
            for Q in range(4):
                for eta in (1, 2, 3):
                    for N in (4, 6):
                        for K in (1, 3):
                            for gamma in (0.5, 1.0):
                                scheme = SchemeSpec(k=k, m=m, Q=Q, gamma_blend=gamma)
                                grid = GridSpec(N=N, K=K)
                                dt_c = 10.0 * grid.dx**2
                                dim = (3 * (eta + 1) + 2) * N
                                z = rng.standard_normal(dim)
                                spec = MultirateSpec(scheme=scheme, grid=grid, eta=eta, dt_c=dt_c)
                                G = growth_matrix_multirate(spec).G
                                step = run_multirate(spec, z, 1).final_state
                                err = np.abs(G @ z - step).max()
                                worst = max(worst, err)
                                if eta == 1:
                                    G1 = growth_matrix_singlerate(scheme, grid, dt_c).G
                                    step1 = run_singlerate(scheme, grid, dt_c, z, 1).final_state
                                    worst = max(worst, np.abs(G1 @ z - step1).max())
                                checked += 1
                                assert worst < 1e-12, (k, m, Q, eta, N, K, gamma)
    elapsed = time.perf_counter() - t0
    report(2, worst < 1e-12 and elapsed < 60.0,
           f"({checked} configs, max |G z - step| = {worst:.2e} < 1e-12, {elapsed:.1f}s < 60s)")


def test_criterion_3_multirate_reduction():
    t0 = time.perf_counter()
    grid = GridSpec(N=16, K=5)  # documented reduced grid: keeps runtime within bound
    s_values = np.logspace(-2, 5, 20)
    worst = 0.0
    for k in (1, 2, 3):
        for m in range(1, k + 1):
            for s in s_values:
                dt = float(s) * grid.dx**2
                plain_m, C_m = growth_iterates(k, m, 1, grid.N, grid.K, float(s), 3)
                for Q in range(4):
                    scheme = SchemeSpec(k=k, m=m, Q=Q)
                    rho_s = spectral_radius(growth_matrix_singlerate(scheme, grid, dt).G)
                    rho_m = rho_from_iterates(plain_m, C_m, Q, 1.0)
                    worst = max(worst, abs(rho_s - rho_m) / max(1.0, rho_s))
    elapsed = time.perf_counter() - t0
    report(3, worst < 1e-10 and elapsed < 30.0,
           f"(eta=1 vs singlerate, max rel diff = {worst:.2e} < 1e-10, {elapsed:.1f}s < 30s)")


def test_criterion_4_ext1_unconditionally_stable():
    t0 = time.perf_counter()
    spec = SweepSpec(schemes=((1, 1), (2, 1), (3, 1)), q_values=tuple(range(8)),
                     grids=((32, 5),))
    rows = run_sweep(spec, workers=2)
    assert len(rows) == 3 * 8 * DEFAULT_POINTS
    worst = max(r[8] for r in rows)
    elapsed = time.perf_counter() - t0
    report(4, worst < 1.0 - STABILITY_MARGIN and elapsed < 120.0,
           f"(max rho over EXT1 grid = {worst:.12f} < 1, {elapsed:.0f}s < 120s)")


def test_criterion_5_singlerate_odd_even_asymmetry():
    s_values = default_s_grid()
    flags = stability_curve(3, 3, 1, 32, 5, s_values, [1, 2, 3, 4])
    ms = {Q: max_stable_s(flags[Q], s_values) for Q in (1, 2, 3, 4)}
    ok = (ms[1] or -1) > (ms[2] or -1) and (ms[3] or -1) > (ms[4] or -1)
    report(5, ok, f"(max stable s: Q1={ms[1]:.3g} > Q2={ms[2] or 0:.3g}, "
                  f"Q3={ms[3]:.3g} > Q4={ms[4] or 0:.3g})")


def test_criterion_6_overlap_and_resolution_monotonicity():
    s_values = default_s_grid(64)  # documented reduced sampling: larger grids are costly
    results = {}
    for N, K in ((32, 3), (32, 5), (32, 7), (65, 10), (98, 15)):
        flags = stability_curve(3, 3, 1, N, K, s_values, [1, 3, 5])
        results[(N, K)] = {Q: max_stable_s(flags[Q], s_values) for Q in (1, 3, 5)}
    ok = True
    detail = []
    for Q in (1, 3, 5):
        overlap = [results[(32, K)][Q] or -1 for K in (3, 5, 7)]
        resol = [results[g][Q] or -1 for g in ((32, 5), (65, 10), (98, 15))]
        ok &= all(b >= a for a, b in zip(overlap, overlap[1:]))
        ok &= all(b >= a for a, b in zip(resol, resol[1:]))
        detail.append(f"Q{Q}: K-scan {overlap}, N-scan {resol}")
    report(6, ok, "(" + "; ".join(detail) + ")")


def test_criterion_7_improved_scheme():
    s_values = default_s_grid()
    grid = GridSpec(N=32, K=5)
    # (a) Q=2, gamma=0 equals Q=1 everywhere; (b) Q=2, gamma=1 is the plain double sweep
    worst_a = 0.0
    for s in (0.1, 3.0, 471.0, 2.0e4):
        plain, C = growth_iterates(3, 3, 1, 32, 5, s, 2)
        rho_q1 = spectral_radius(plain[1])
        rho_blend0 = rho_from_iterates(plain, C, 2, 0.0)
        worst_a = max(worst_a, abs(rho_q1 - rho_blend0))
        dt = s * grid.dx**2
        g_b = growth_matrix_singlerate(SchemeSpec(k=3, m=3, Q=2, gamma_blend=1.0), grid, dt)
        assert np.array_equal(g_b.G, plain[2])
    ok_a = worst_a < 1e-10
    # (c) gamma=0.5 on even Q (plain odd Q): maximal stable s non-decreasing over Q=1..6
    flags = {Q: [] for Q in range(1, 7)}
    for s in s_values:
        plain, C = growth_iterates(3, 3, 1, 32, 5, float(s), 6)
        for Q in range(1, 7):
            gamma = 0.5 if Q % 2 == 0 else 1.0
            flags[Q].append(rho_from_iterates(plain, C, Q, gamma) < 1.0 - STABILITY_MARGIN)
    ms = [max_stable_s(flags[Q], s_values) or -1 for Q in range(1, 7)]
    ok_c = all(b >= a for a, b in zip(ms, ms[1:]))
    ms_text = ", ".join(f"{v:.3g}" for v in ms)
    report(7, ok_a and ok_c,
           f"(gamma=0 vs Q=1 max diff {worst_a:.2e}; improved max stable s [{ms_text}])")


def test_criterion_8_multirate_odd_even_reversal():
    s_values = default_s_grid()
    ok = True
    detail = []
    for K in (5, 10):
        flags = stability_curve(3, 3, 2, 32, K, s_values, [1, 2, 3, 4])
        ms = {Q: max_stable_s(flags[Q], s_values) for Q in (1, 2, 3, 4)}
        ok &= (ms[2] or -1) > (ms[1] or -1) and (ms[4] or -1) > (ms[3] or -1)
        detail.append(f"K={K}: " + ", ".join(f"Q{q}={ms[q] or 0:.3g}" for q in (1, 2, 3, 4)))
    report(8, ok, "(" + "; ".join(detail) + ")")


def test_criterion_9_unconditional_stability_thresholds():
    s_values = default_s_grid()
    minimal = {}
    for eta in (1, 2):
        found = None
        for Q in range(8):
            all_stable = True
            for s in s_values[::-1]:  # instabilities live at large s: fail fast
                plain, C = growth_iterates(3, 3, eta, 32, 5, float(s), Q)
                if rho_from_iterates(plain, C, Q, 1.0) >= 1.0 - STABILITY_MARGIN:
                    all_stable = False
                    break
            if all_stable:
                found = Q
                break
        minimal[eta] = found
    ok = minimal[1] == 3 and minimal[2] == 6
    report(9, ok, f"(minimal unconditionally stable Q over default sweep: "
                  f"eta=1 -> {minimal[1]} (expected 3), eta=2 -> {minimal[2]} (expected 6))")


def test_criterion_10_empirical_validation():
    t0 = time.perf_counter()
    rng = np.random.default_rng(7)
    stable_configs = [
        (1, 1, 1, 1, 10.0),
        (2, 2, 1, 1, 5.0),
        (3, 3, 1, 1, 20.0),
        (3, 3, 2, 2, 5.0),
        (2, 2, 2, 2, 8.0),
        (3, 3, 6, 3, 10.0),
    ]
    grid = GridSpec(N=32, K=5)
    worst_rel = 0.0
    for k, m, Q, eta, s in stable_configs:
        scheme = SchemeSpec(k=k, m=m, Q=Q)
        dt_c = s * grid.dx**2
        spec = MultirateSpec(scheme=scheme, grid=grid, eta=eta, dt_c=dt_c)
        rho = spectral_radius(growth_matrix_multirate(spec).G)
        assert rho < 1.0, (k, m, Q, eta, s, rho)
        z0 = replicated_state(rng.standard_normal(32), rng.standard_normal(32), eta)
        traj = run_multirate(spec, z0, 256)
        rate = empirical_growth_rate(traj, 64)
        rel = abs(rate - rho) / rho
        worst_rel = max(worst_rel, rel)
        assert rel <= 0.02, (k, m, Q, eta, s, rate, rho)
    unstable_configs = [
        (3, 3, 1, 1, 2.0e3),
        (3, 3, 2, 1, 500.0),
        (3, 3, 1, 2, 500.0),
    ]
    worst_unstable = 0.0
    for k, m, Q, eta, s in unstable_configs:
        scheme = SchemeSpec(k=k, m=m, Q=Q)
        dt_c = s * grid.dx**2
        spec = MultirateSpec(scheme=scheme, grid=grid, eta=eta, dt_c=dt_c)
        rho = spectral_radius(growth_matrix_multirate(spec).G)
        assert rho > 1.0, (k, m, Q, eta, s, rho)
        z0 = replicated_state(rng.standard_normal(32), rng.standard_normal(32), eta)
        traj = run_multirate(spec, z0, 10000)
        assert traj.overflowed, (k, m, Q, eta, s, "no overflow before step cap")
        window = min(64, len(traj.norms) - 1)
        rate = empirical_growth_rate(traj, window)
        rel = abs(rate - rho) / rho
        worst_unstable = max(worst_unstable, rel)
        assert rel <= 0.05, (k, m, Q, eta, s, rate, rho)
    elapsed = time.perf_counter() - t0
    report(10, elapsed < 120.0,
           f"(6 stable within {worst_rel:.1%} of rho; 3 unstable overflowed, "
           f"pre-overflow rate within {worst_unstable:.1%}; {elapsed:.0f}s < 120s)")


def test_criterion_11_monodomain_temporal_order():
    M = 15
    dx = 1.0 / (M + 1)
    lam = tridiag_eigenvalues(M, dx)[0]
    nu = 1.0 / lam  # sin(pi x) e^{-t} then solves the semi-discrete system exactly
    x = np.arange(1, M + 1) * dx
    v = np.sin(np.pi * x)
    T = 1.0
    orders = {}
    for k in (1, 2, 3):
        errors = []
        for n in (16, 32, 64, 128):
            dt = T / n
            hist = [v * np.exp(l * dt) for l in range(k)]
            traj = run_monodomain(M=M, nu=nu, dt=dt, k=k, gamma_fn=lambda t: 0.0,
                                  history0=hist, steps=n)
            errors.append(np.max(np.abs(traj.final_state - v * np.exp(-T))))
        orders[k] = float(np.mean(np.log2(np.array(errors[:-1]) / np.array(errors[1:]))))
    ok = all(abs(orders[k] - k) < 0.3 for k in (1, 2, 3))
    report(11, ok, f"(observed orders {[round(orders[k], 3) for k in (1, 2, 3)]})")
