import itertools

import numpy as np
import pytest

from towercodes.algebra import Empty, field_of_order
from towercodes.algebra.linalg import affine_points
from towercodes.periodic import PeriodicSubspace, empty_text, proj_range, random_periodic


def _all_vectors(q, k):
    return np.array(list(itertools.product(range(q), repeat=k)), dtype=np.int64)


def test_proj_range():
    y = np.arange(10)
    assert proj_range(y, 3, 5).tolist() == [2, 3, 4]
    with pytest.raises(IndexError):
        proj_range(y, 0, 2)


@pytest.mark.parametrize("dim_u", [0, 1, 2])
def test_membership_matches_point_sets(dim_u):
    F = field_of_order(4)
    rng = np.random.default_rng(dim_u)
    W = random_periodic(F, 3, 2, dim_u, rng)
    pts = {tuple(p) for p in W.points()}
    flat = {tuple(p) for p in affine_points(W.as_affine())}
    assert pts == flat
    assert len(pts) == 4 ** (dim_u * 2)
    allv = _all_vectors(4, 6)
    member = W.contains_many(allv)
    assert {tuple(v) for v in allv[member]} == pts


def test_partial_last_block():
    F = field_of_order(4)
    W = random_periodic(F, 3, 2, 1, np.random.default_rng(0), k=5)
    assert W.width(2) == 2
    pts = {tuple(p) for p in W.points()}
    allv = _all_vectors(4, 5)
    assert {tuple(v) for v in allv[W.contains_many(allv)]} == pts


def test_text_round_trip():
    F = field_of_order(25)
    W = random_periodic(F, 4, 3, 1, np.random.default_rng(1))
    W2 = PeriodicSubspace.from_text(W.to_text())
    rng = np.random.default_rng(2)
    pts = W.points()[:50]
    assert W2.contains_many(pts).all()
    assert W2.to_text() == W.to_text()
    assert PeriodicSubspace.from_text(empty_text(F)) is Empty


@pytest.mark.parametrize("u", [2, 4])
def test_coarsen_preserves_points(u):
    F = field_of_order(2)
    W = random_periodic(F, 2, 4, 1, np.random.default_rng(u))
    V = W.coarsen(u)
    assert V.delta == 2 * u and V.b == 4 // u
    assert {tuple(p) for p in W.points()} == {tuple(p) for p in V.points()}
    assert V.dim_U <= u * W.dim_U


def test_coarsen_rejects_bad_factor():
    F = field_of_order(2)
    W = random_periodic(F, 2, 3, 1, np.random.default_rng(0))
    with pytest.raises(ValueError):
        W.coarsen(2)


def test_block_extensions_size():
    F = field_of_order(4)
    W = random_periodic(F, 3, 2, 2, np.random.default_rng(5))
    ext = W.block_extensions(W.points()[0][:3], 2)
    assert len({tuple(r) for r in ext}) == 16
