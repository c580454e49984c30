import numpy as np
import pytest

from ospc.coeffs import SchemeSpec
from ospc.discretize import GridSpec
from ospc.multirate import MultirateSpec, growth_matrix_multirate
from ospc.singlerate import growth_matrix_singlerate
from ospc.spectral import spectral_radius
from ospc.sweep import SweepSpec, format_row, growth_iterates, rho_from_iterates, run_sweep


class TestGrowthIterates:
    @pytest.mark.parametrize("eta", [1, 2])
    @pytest.mark.parametrize("Q,gamma", [(0, 1.0), (1, 1.0), (2, 1.0), (2, 0.5), (3, 0.5), (4, 0.25)])
    def test_bitwise_match_with_growth_matrix(self, eta, Q, gamma):
        # the incremental sweep path must reproduce the one-shot assembly
        # exactly, so CSV rows round-trip through the radius command
        k = m = 3
        N, K, s = 6, 2, 7.5
        grid = GridSpec(N=N, K=K)
        dt = s * grid.dx**2
        plain, C = growth_iterates(k, m, eta, N, K, s, max(Q, 1))
        rho = rho_from_iterates(plain, C, Q, gamma)
        scheme = SchemeSpec(k=k, m=m, Q=Q, gamma_blend=gamma)
        if eta == 1:
            G = growth_matrix_singlerate(scheme, grid, dt).G
        else:
            G = growth_matrix_multirate(
                MultirateSpec(scheme=scheme, grid=grid, eta=eta, dt_c=dt)
            ).G
        assert rho == spectral_radius(G)

    def test_q1_ignores_gamma(self):
        plain, C = growth_iterates(3, 3, 1, 6, 2, 3.0, 1)
        assert rho_from_iterates(plain, C, 1, 0.25) == rho_from_iterates(plain, C, 1, 1.0)


class TestRunSweep:
    def test_row_count_and_order(self):
        spec = SweepSpec(schemes=((1, 1), (2, 2)), q_values=(0, 1), etas=(1, 2),
                         grids=((4, 2),), s_min=1.0, s_max=10.0, points=3)
        rows = run_sweep(spec)
        assert len(rows) == 2 * 2 * 2 * 3
        keys = [r[:8] for r in rows]
        assert keys == sorted(keys)

    def test_worker_count_invariance(self):
        spec = SweepSpec(schemes=((3, 3),), q_values=(0, 2), grids=((6, 2),),
                         s_min=0.5, s_max=50.0, points=4)
        assert run_sweep(spec, workers=1) == run_sweep(spec, workers=2)

    def test_stable_flag_consistency(self):
        spec = SweepSpec(schemes=((1, 1),), q_values=(0,), grids=((8, 3),),
                         s_min=0.1, s_max=1e4, points=6)
        for row in run_sweep(spec):
            assert row[9] == int(row[8] < 1.0 - 1e-10)


class TestCsvFormat:
    def test_shortest_roundtrip_floats(self):
        row = (3, 3, 2, 0.5, 1, 32, 5, 0.1, 0.9712584699999, 1)
        text = format_row(row)
        parts = text.split(",")
        assert float(parts[7]) == row[7]
        assert float(parts[8]) == row[8]
        assert parts[3] == "0.5"
        assert parts[9] == "1"
