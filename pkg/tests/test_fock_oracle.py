import math

import numpy as np
import pytest

from sqthermal.analytics import expectation_exp_number, normalization, pnd_table
from sqthermal.core import DomainError, StateParams, TruncationError, Variant, ZeroNormError
from sqthermal.fock_oracle import (
    DensityMatrix,
    annihilation_matrix,
    apply_photon_op,
    oracle_exp_number,
    oracle_norm,
    oracle_norm_certified,
    oracle_pnd,
    oracle_pnd_certified,
    squeeze_matrix,
    sts_density,
    tfd_purification_check,
    thermal_state,
    thermal_vacuum,
)

P = StateParams
# A^(-1/2) at n_c = 1, r = 0.5 from the 50-digit theta-form evaluation
VACUUM_PROB_1_05 = 0.4557418902231242


class TestLadder:
    def test_dim2(self):
        assert annihilation_matrix(2).tolist() == [[0.0, 1.0], [0.0, 0.0]]

    def test_entry(self):
        assert annihilation_matrix(3)[1, 2] == math.sqrt(2)

    def test_commutator_truncation_corner(self):
        a = annihilation_matrix(6)
        comm = a @ a.T - a.T @ a
        want = np.eye(6)
        want[5, 5] = -5.0
        assert np.abs(comm - want).max() < 1e-14

    def test_dim_guard(self):
        with pytest.raises(DomainError):
            annihilation_matrix(1)


class TestThermal:
    def test_vacuum(self):
        rho = thermal_state(0.0, 8).matrix
        assert rho[0, 0] == 1.0 and np.count_nonzero(rho) == 1

    def test_ground_weight(self):
        assert thermal_state(2.0, 128).matrix[0, 0] == pytest.approx(1 / 3, rel=1e-15)

    def test_weight_n3(self):
        assert thermal_state(1.0, 64).matrix[3, 3] == pytest.approx(1 / 16, rel=1e-15)

    def test_insufficient_dim_reports_minimum(self):
        with pytest.raises(TruncationError, match=r"needs dim >= \d+"):
            thermal_state(3.0, 20)

    def test_trace(self):
        assert abs(thermal_state(3.0, 128).trace() - 1) < 1e-12


class TestSqueeze:
    def test_identity_at_zero(self):
        assert np.array_equal(squeeze_matrix(0.0, 16), np.eye(16))

    @pytest.mark.parametrize("r", [0.3, -0.8, 1.2])
    def test_vacuum_column(self, r):
        s = squeeze_matrix(r, 256)
        sech = 1 / math.cosh(r)
        assert s[0, 0] == pytest.approx(math.sqrt(sech), rel=1e-12)
        assert s[2, 0] == pytest.approx(-math.tanh(r) * math.sqrt(sech) / math.sqrt(2), rel=1e-12)
        # full squeezed vacuum: sech^(1/2) (-tanh r / 2)^k sqrt((2k)!) / k!
        k = np.arange(20)
        logs = [0.5 * math.lgamma(2 * j + 1) - math.lgamma(j + 1) for j in k]
        want = math.sqrt(sech) * (-math.tanh(r) / 2) ** k * np.exp(logs)
        assert np.allclose(s[2 * k, 0], want, rtol=1e-11, atol=1e-15)
        assert np.all(s[1::2, 0] == 0.0)

    def test_parity_blocks(self):
        s = squeeze_matrix(0.7, 40)
        i, j = np.indices(s.shape)
        assert np.all(s[(i + j) % 2 == 1] == 0.0)

    @pytest.mark.parametrize("r,dim", [(0.4, 128), (1.0, 256)])
    def test_unitarity_away_from_truncation(self, r, dim):
        s = squeeze_matrix(r, dim)
        keep = dim - math.ceil(dim / 4)
        block = (s.T @ s)[:keep, :keep]
        assert np.abs(block - np.eye(keep)).max() < 1e-8


class TestSTS:
    def test_unsqueezed_is_thermal(self):
        rho = sts_density(P(1.5, 0.0), 128).matrix
        assert np.allclose(rho, thermal_state(1.5, 128).matrix, atol=1e-16)

    def test_squeezed_vacuum_is_pure(self):
        rho = sts_density(P(0.0, 0.6), 128)
        col = squeeze_matrix(0.6, 128)[:, 0]
        assert np.abs(rho.matrix - np.outer(col, col)).max() < 1e-15

    def test_vacuum_probability(self):
        rho = sts_density(P(1.0, 0.5), 256)
        assert rho.matrix[0, 0] == pytest.approx(VACUUM_PROB_1_05, abs=1e-12)

    @pytest.mark.parametrize("n_c,r", [(0.5, 0.3), (2.0, -0.6), (0.0, 0.9)])
    def test_density_invariants(self, n_c, r):
        rho = sts_density(P(n_c, r), 384)
        assert rho.asymmetry() < 1e-12
        assert abs(rho.trace() - 1) < 1e-10
        assert rho.min_eigenvalue() > -1e-10


class TestPhotonOps:
    def test_m0_unchanged(self):
        rho = sts_density(P(0.5, 0.2), 128)
        assert apply_photon_op(rho, 0, "add").matrix is rho.matrix

    def test_add_to_vacuum(self):
        vac = DensityMatrix(np.diag([1.0, 0, 0, 0, 0, 0, 0, 0]))
        out = apply_photon_op(vac, 1, Variant.ADDED)
        assert out.matrix[1, 1] == 1.0 and out.trace() == 1.0

    def test_subtract_from_vacuum(self):
        vac = DensityMatrix(np.diag([1.0, 0, 0, 0]))
        out = apply_photon_op(vac, 1, Variant.SUBTRACTED)
        assert not out.matrix.any()

    def test_matches_explicit_ladder_products(self):
        rho = sts_density(P(0.3, 0.4), 128)
        a = annihilation_matrix(128)
        added = a.T @ a.T @ rho.matrix @ a @ a
        sub = a @ a @ rho.matrix @ a.T @ a.T
        assert np.allclose(apply_photon_op(rho, 2, "add").matrix, added, atol=1e-15)
        assert np.allclose(apply_photon_op(rho, 2, "sub").matrix, sub, atol=1e-15)

    def test_headroom_violation(self):
        rho = sts_density(P(3.0, 0.8), 128)
        with pytest.raises(TruncationError):
            apply_photon_op(rho, 2, "add")

    def test_symmetry_preserved(self):
        rho = sts_density(P(1.0, 0.5), 512)
        assert apply_photon_op(rho, 3, "add").asymmetry() < 1e-12


class TestOracleQuantities:
    def test_norm_m0(self):
        assert oracle_norm(P(1.0, 0.5)) == pytest.approx(1.0, abs=1e-10)

    def test_norm_thermal_added(self):
        assert oracle_norm(P(2.0, 0.0, 3)) == pytest.approx(162.0, rel=1e-8)

    def test_norm_derived(self):
        assert oracle_norm(P(1.0, 0.5, 2)) == pytest.approx(18.951652361852988, rel=1e-8)

    def test_pnd_vacuum(self):
        d = oracle_pnd(P(0, 0, 0), n_max=5)
        assert d.tolist() == [1.0, 0, 0, 0, 0, 0]

    def test_pnd_squeezed_vacuum_parity(self):
        d = oracle_pnd(P(0, 0.7, 0), n_max=40)
        assert np.abs(d[1::2]).max() < 1e-14

    def test_pnd_zero_norm(self):
        with pytest.raises(ZeroNormError):
            oracle_pnd(P(0, 0, 1, "sub"))

    def test_pnd_vs_closed_form_subtracted(self):
        p = P(1.0, 0.4, 1, "sub")
        assert abs(oracle_pnd(p, n_max=10)[2] - pnd_table(p, 10).raw[2]) < 1e-9

    def test_exp_number(self):
        p = P(1.0, 0.5)
        assert oracle_exp_number(0.0, p) == pytest.approx(1.0, abs=1e-10)
        assert oracle_exp_number(-10.0, p) == pytest.approx(expectation_exp_number(-10.0, p), abs=1e-9)
        assert oracle_exp_number(-60.0, p) == pytest.approx(VACUUM_PROB_1_05, abs=1e-9)
        assert oracle_exp_number(math.log(0.5), p) == pytest.approx(0.59121258931338261, abs=1e-9)

    @pytest.mark.parametrize("p", [P(0.1, 0.2, 3, "add"), P(3.0, -0.5, 2, "sub"), P(1.0, 0.8, 5, "add")])
    def test_doubling_certificate(self, p):
        cert = oracle_norm_certified(p)
        assert cert.change_on_doubling < 1e-10
        assert abs(oracle_norm(p, cert.dim // 2) - cert.value) / cert.value < 1e-10
        pcert = oracle_pnd_certified(p, 40)
        assert pcert.change_on_doubling < 1e-10

    def test_random_sweep_against_closed_form(self):
        rng = np.random.default_rng(11)
        for _ in range(30):
            n_c, r = rng.uniform(0, 2), rng.uniform(-0.8, 0.8)
            p = P(n_c, r, int(rng.integers(0, 7)), rng.choice(["add", "sub"]))
            on = oracle_norm(p)
            assert abs(normalization(p) - on) / on < 1e-8
            assert np.abs(pnd_table(p, 40).raw - oracle_pnd(p, n_max=40)).max() < 1e-9


class TestPurification:
    def test_vacuum(self):
        res = tfd_purification_check(0.0, 32)
        assert res["max_deviation"] == 0.0 and res["mean_photon_deviation"] == 0.0

    def test_n_c_1(self):
        res = tfd_purification_check(1.0, 64)
        assert res["max_deviation"] < 1e-10
        assert res["mean_photon_deviation"] < 1e-10

    def test_series_matches_thermal_operator(self):
        a = thermal_vacuum(0.5, 96, "series")
        b = thermal_vacuum(0.5, 96, "operator")
        assert np.abs(a - b)[:64, :64].max() < 1e-12

    def test_state_is_normalized_and_not_a_product(self):
        psi = thermal_vacuum(2.0, 128)
        assert np.sum(psi**2) == pytest.approx(1.0, abs=1e-12)
        # Schmidt rank > 1: the reduced state is mixed
        assert np.linalg.matrix_rank(psi) > 1

    def test_dim_cap(self):
        with pytest.raises(TruncationError):
            tfd_purification_check(1.0, 513)
