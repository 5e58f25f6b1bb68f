"""Metric jets, norm jets, curl and exterior symbols, transport maps."""

from __future__ import annotations

import random

import pytest

from curlasym.configs import random_config, unit_config
from curlasym.exactpoly import (
    GR_I,
    TruncatedPoly,
    poly_add,
    poly_mul,
    rat,
)
from curlasym.geometry import (
    CurvatureConfig,
    build_metric_jet,
    curl_symbol,
    d_delta_symbols,
    epsilon,
    euclid_norm_power_jet,
    norm_power_jet,
    riemann_from_ricci,
    transport_jet,
    xi_polys,
)
from curlasym.polymat import (
    identity_mat,
    mat_is_zero,
    mat_mul,
    mat_sub,
    mat_transpose,
)

from conftest import gr


def mono(exps, num, den=1):
    """Degree-3 monomial with the given exponent tuple and rational coefficient."""
    return TruncatedPoly(3, {tuple(exps): gr(rat(num, den))})


class TestCurvatureConfig:
    def test_flat(self):
        cfg = CurvatureConfig.flat()
        assert cfg.is_flat()
        assert cfg.scalar0() == 0

    def test_scalar_contractions(self):
        cfg = unit_config("c1")
        assert cfg.scalar0() == 1
        cfg = unit_config("c2")
        assert cfg.scalar0() == 0
        cfg = unit_config("c7")
        assert cfg.dscalar0(0) == 1
        assert cfg.dscalar0(1) == 0

    def test_serialization_roundtrip(self):
        rng = random.Random(11)
        cfg = random_config(rng)
        assert CurvatureConfig.loads(cfg.dumps()) == cfg

    def test_asymmetric_input_rejected(self):
        ric = [[rat(0)] * 3 for _ in range(3)]
        ric[0][1] = rat(1)
        dric = [[[rat(0)] * 3 for _ in range(3)] for _ in range(3)]
        with pytest.raises(ValueError):
            CurvatureConfig(ric, dric)


class TestRiemannFromRicci:
    def test_ricci_contraction_recovered(self):
        rng = random.Random(12)
        cfg = random_config(rng)
        riem, driem = riemann_from_ricci(cfg)
        for a in range(3):
            for b in range(3):
                assert sum(riem[m][a][m][b] for m in range(3)) == cfg.ric0[a][b]
                for s in range(3):
                    assert (
                        sum(driem[s][m][a][m][b] for m in range(3))
                        == cfg.dric0[s][a][b]
                    )

    def test_symmetries(self):
        rng = random.Random(13)
        cfg = random_config(rng)
        riem, _ = riemann_from_ricci(cfg)
        for a in range(3):
            for b in range(3):
                for c in range(3):
                    for d in range(3):
                        assert riem[a][b][c][d] == -riem[b][a][c][d]
                        assert riem[a][b][c][d] == -riem[a][b][d][c]
                        assert riem[a][b][c][d] == riem[c][d][a][b]


class TestMetricJet:
    def test_flat_is_identity(self):
        mj = build_metric_jet(CurvatureConfig.flat(), order=3)
        assert mj.g == identity_mat(3)
        assert mj.g_inv == identity_mat(3)
        assert mj.rho == TruncatedPoly.constant(1, 3)

    def test_c1_golden(self):
        mj = build_metric_jet(unit_config("c1"), order=3)
        one = TruncatedPoly.constant(1, 3)
        g11 = poly_add(
            one,
            poly_add(mono((0, 2, 0, 0, 0, 0), -1, 6), mono((0, 0, 2, 0, 0, 0), -1, 6)),
        )
        assert mj.g[0][0] == g11
        assert mj.g[0][1] == mono((1, 1, 0, 0, 0, 0), 1, 6)
        assert mj.g[1][2] == mono((0, 1, 1, 0, 0, 0), -1, 6)
        assert mj.rho == poly_add(one, mono((2, 0, 0, 0, 0, 0), -1, 6))

    def test_c11_golden(self):
        mj = build_metric_jet(unit_config("c11"), order=3)
        one = TruncatedPoly.constant(1, 3)
        assert mj.g[0][0] == poly_add(one, mono((1, 1, 1, 0, 0, 0), -1, 3))
        assert mj.g[0][1] == mono((2, 0, 1, 0, 0, 0), 1, 6)
        assert mj.g[1][2] == mono((3, 0, 0, 0, 0, 0), -1, 6)
        assert mj.rho == poly_add(one, mono((1, 1, 1, 0, 0, 0), -1, 6))

    def test_inverse_and_density_consistency(self):
        rng = random.Random(14)
        for _ in range(5):
            cfg = random_config(rng)
            mj = build_metric_jet(cfg, order=3)
            prod = mat_mul(mj.g, mj.g_inv)
            assert mat_is_zero(mat_sub(prod, identity_mat(3)))
            assert poly_mul(mj.rho, mj.rho_inv) == TruncatedPoly.constant(1, 3)
            assert mj.g == mat_transpose(mj.g)

    def test_christoffel_symmetry_and_origin(self):
        rng = random.Random(15)
        cfg = random_config(rng)
        mj = build_metric_jet(cfg, order=3)
        for a in range(3):
            for b in range(3):
                for c in range(3):
                    assert mj.gamma[a][b][c] == mj.gamma[a][c][b]
                    assert mj.gamma[a][b][c].constant_term().is_zero()


class TestNormJets:
    def test_riemannian_inverse_pair(self):
        rng = random.Random(16)
        cfg = random_config(rng)
        mj = build_metric_jet(cfg, order=3)
        plus = norm_power_jet(mj, 1, 3).jet
        minus = norm_power_jet(mj, -1, 3).jet
        assert poly_mul(plus, minus) == TruncatedPoly.constant(1, 3)
        sq = norm_power_jet(mj, 2, 3).jet
        assert poly_mul(plus, plus) == sq

    def test_riemannian_square_is_quadratic_form(self):
        rng = random.Random(17)
        cfg = random_config(rng)
        mj = build_metric_jet(cfg, order=3)
        xi = xi_polys(3)
        acc = TruncatedPoly.zero(3)
        for a in range(3):
            for b in range(3):
                acc = poly_add(acc, poly_mul(mj.g_inv[a][b], poly_mul(xi[a], xi[b])))
        assert norm_power_jet(mj, 2, 3).jet == acc

    def test_euclid_pair(self):
        plus = euclid_norm_power_jet(1, 4).jet
        minus = euclid_norm_power_jet(-1, 4).jet
        assert poly_mul(plus, minus) == TruncatedPoly.constant(1, 4)
        xi = xi_polys(4)
        sq = poly_add(
            poly_add(poly_mul(xi[0], xi[0]), poly_mul(xi[1], xi[1])),
            poly_mul(xi[2], xi[2]),
        )
        assert euclid_norm_power_jet(2, 4).jet == sq

    def test_flat_norms_agree(self):
        mj = build_metric_jet(CurvatureConfig.flat(), order=3)
        assert norm_power_jet(mj, -1, 3).jet == euclid_norm_power_jet(-1, 3).jet


class TestOperatorSymbols:
    def test_flat_curl_principal(self):
        mj = build_metric_jet(CurvatureConfig.flat(), order=3)
        jet = curl_symbol(mj, accuracy=2)
        xi = xi_polys(2)
        for a in range(3):
            for b in range(3):
                expect = TruncatedPoly.zero(2)
                for c in range(3):
                    s = epsilon(a, b, c)
                    if s:
                        expect = poly_add(expect, xi[c].scale(s))
                assert jet.principal()[a][b] == expect.scale(-GR_I)
        for k in range(1, 3):
            assert mat_is_zero(jet.components[k])

    def test_curl_principal_hermitian_at_origin(self):
        rng = random.Random(18)
        cfg = random_config(rng)
        mj = build_metric_jet(cfg, order=3)
        prin = curl_symbol(mj, accuracy=2).principal()
        at0 = [
            [p.restrict((0, 1, 2)) for p in row] for row in prin
        ]
        for a in range(3):
            for b in range(3):
                assert at0[a][b] == at0[b][a].conjugate()

    def test_d_delta_shapes_and_flat_values(self):
        mj = build_metric_jet(CurvatureConfig.flat(), order=3)
        d_sym, delta_sym = d_delta_symbols(mj, accuracy=2)
        assert d_sym.shape == (3, 1)
        assert delta_sym.shape == (1, 3)
        xi = xi_polys(2)
        for a in range(3):
            assert d_sym.principal()[a][0] == xi[a].scale(GR_I)
            assert delta_sym.principal()[0][a] == xi[a].scale(-GR_I)
        assert mat_is_zero(delta_sym.components[1])


class TestTransport:
    def test_flat_transport_is_identity(self):
        mj = build_metric_jet(CurvatureConfig.flat(), order=3)
        tj = transport_jet(mj, "origin_to_y")
        assert tj.z_vector == identity_mat(3)
        assert tj.z_covector == identity_mat(3)

    def test_round_trip(self):
        rng = random.Random(19)
        cfg = random_config(rng)
        mj = build_metric_jet(cfg, order=3)
        out = transport_jet(mj, "origin_to_y")
        back = transport_jet(mj, "y_to_origin")
        assert mat_is_zero(
            mat_sub(mat_mul(out.z_vector, back.z_vector), identity_mat(3))
        )

    def test_vector_covector_duality(self):
        rng = random.Random(20)
        cfg = random_config(rng)
        mj = build_metric_jet(cfg, order=3)
        tj = transport_jet(mj, "origin_to_y")
        assert mat_is_zero(
            mat_sub(mat_mul(tj.z_vector, tj.z_covector), identity_mat(3))
        )

    def test_tau_endpoints(self):
        rng = random.Random(21)
        cfg = random_config(rng)
        mj = build_metric_jet(cfg, order=3)
        unit = transport_jet(mj, ("y_to_tau_y", 1))
        assert unit.z_vector == identity_mat(3)
        to_origin = transport_jet(mj, ("y_to_tau_y", 0))
        assert to_origin.z_vector == transport_jet(mj, "y_to_origin").z_vector

    def test_unknown_endpoints_rejected(self):
        mj = build_metric_jet(CurvatureConfig.flat(), order=3)
        with pytest.raises(ValueError):
            transport_jet(mj, "elsewhere")
