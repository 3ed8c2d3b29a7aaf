import math

import numpy as np
import pytest

from towercodes.algebra import Empty
from towercodes.algebra.linalg import matmul
from towercodes.code import CodeParams, corrupt
from towercodes.decoder import (DecodeParams, InterpolationPoly, affine_dim_bound, decoder, degree_param,
                                tau_closed)
from towercodes.pipeline import folded_rs_baseline

H_SMALL = DecodeParams(CodeParams("hermitian", m=5, N=12, k=14, r=4, e=2), 2)
GS_SMALL = DecodeParams(CodeParams("gs", m=4, N=25, k=8, r=5, e=2), 2)


def test_degree_parameter_examples():
    assert degree_param(12, 5, 2, 14, 6) == 13
    assert degree_param(25, 4, 2, 8, 16) == 28
    assert H_SMALL.freedoms() == (49, 48)
    # genus zero reduces to the same floor formula
    assert folded_rs_baseline(10, 4, 2, 64, 15).D == degree_param(15, 4, 2, 10, 0)


def test_thresholds_and_radius():
    assert H_SMALL.t_min == 10
    assert GS_SMALL.t_min == 23
    assert abs(float(tau_closed(H_SMALL)) - 0.0972) < 1e-4


def test_constraint_matrix_shape():
    dec = decoder(H_SMALL)
    M = dec.constraint_matrix(np.zeros((12, 5), dtype=np.int64))
    assert M.shape == (48, 49)


@pytest.mark.parametrize("dp", [H_SMALL, GS_SMALL])
def test_interpolation_satisfies_constraints(dp):
    dec = decoder(dp)
    F = dec.F
    rng = np.random.default_rng(0)
    for rx in (np.zeros((dp.code.N, dp.code.m), dtype=np.int64), F.vrandom(rng, (dp.code.N, dp.code.m))):
        Q = dec.interpolate(rx)
        assert not Q.is_zero()
        sol = np.concatenate([Q.A0] + Q.A)
        assert not matmul(F, dec.constraint_matrix(rx), sol).any()


@pytest.mark.parametrize("dp", [H_SMALL, GS_SMALL])
def test_clean_codeword_gives_functional_identity(dp):
    dec = decoder(dp)
    F = dec.F
    rng = np.random.default_rng(1)
    for _ in range(3):
        msg = F.vrandom(rng, dp.code.k)
        Q = dec.interpolate(dec.code.encode(msg))
        assert not dec.functional_residual(Q, msg).any()


def test_single_interpolation_order_gives_a_point():
    dp = DecodeParams(CodeParams("hermitian", m=5, N=12, k=14, r=4, e=2), 1)
    dec = decoder(dp)
    F = dec.F
    msg = F.vrandom(np.random.default_rng(2), 14)
    W = dec.decode_subspace(dec.code.encode(msg))
    assert W.dim_U == 0
    assert (W.points()[0] == msg).all()


def test_all_higher_coefficients_zero_gives_empty():
    dec = decoder(H_SMALL)
    A0 = np.zeros(dec.basis0.dim, dtype=np.int64)
    A0[0] = 1
    Q = InterpolationPoly(H_SMALL, A0, [np.zeros(dec.basisD.dim, dtype=np.int64)] * 2)
    assert dec.extract_subspace(Q) is Empty


@pytest.mark.parametrize("dp", [H_SMALL, GS_SMALL])
def test_planted_recovery(dp):
    dec = decoder(dp)
    F = dec.F
    rng = np.random.default_rng(3)
    for _ in range(30):
        msg = F.vrandom(rng, dp.code.k)
        rx = corrupt(F, dec.code.encode(msg), dp.code.N - dp.t_min, rng)
        W = dec.decode_subspace(rx)
        assert W.membership(msg)


def test_dimension_bound_over_random_words():
    dec = decoder(H_SMALL)
    F = dec.F
    rng = np.random.default_rng(4)
    bound = affine_dim_bound(H_SMALL)
    assert bound == (2 - 1) * math.ceil(14 / 15)
    for _ in range(200):
        W = dec.decode_subspace(F.vrandom(rng, (12, 5)))
        if W is not Empty:
            assert W.as_affine().dim <= bound
            assert W.dim_U <= H_SMALL.s - 1


def test_free_offsets_are_periodic():
    dp = DecodeParams(CodeParams("hermitian", m=9, N=56, k=126, r=8, e=2), 3)
    dec = decoder(dp)
    F = dec.F
    rng = np.random.default_rng(5)
    for _ in range(3):
        Q = dec.interpolate(F.vrandom(rng, (56, 9)))
        system = dec.coefficient_system(Q)
        if system is None:
            continue
        free = system[2][0] == 0
        assert free[:63].sum() <= 2
        assert (free[:63] == free[63:]).all()


def test_folded_rs_baseline_recovery():
    dec = folded_rs_baseline(10, 4, 2, 64, 15)
    F = dec.F
    rng = np.random.default_rng(6)
    for _ in range(10):
        msg = F.vrandom(rng, 10)
        rx = corrupt(F, dec.code.encode(msg), 15 - dec.dp.t_min, rng)
        W = dec.decode_subspace(rx)
        assert W.membership(msg)
        assert W.delta == 63
