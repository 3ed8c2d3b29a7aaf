import numpy as np
import pytest

from towercodes.algebra.series import Series
from towercodes.curves import (INFINITY, EvalAtInfinity, GSCurve, HermitianCurve, LocalCoordinates,
                               RationalCurve, gs_genus, hermitian_genus)


def test_genus_formulas():
    assert hermitian_genus(4, 2) == 6
    assert hermitian_genus(8, 2) == 28
    assert hermitian_genus(7, 3) == 336
    assert gs_genus(4, 2) == 9
    assert gs_genus(5, 2) == 16
    assert gs_genus(4, 3) == 45


def test_hermitian_counts():
    C = HermitianCurve(4, 2)
    assert len(C.places()) == 64
    assert C.genus() == 6
    assert [len(o) for o in C.orbits] == [15] * 4


def test_hermitian_requires_r_at_least_2e():
    with pytest.raises(ValueError):
        HermitianCurve(4, 3)


@pytest.mark.parametrize("r,places,orbits,size", [(4, 48, 16, 3), (5, 100, 25, 4)])
def test_gs_counts(r, places, orbits, size):
    C = GSCurve(r, 2)
    assert len(C.places()) == places
    assert len(C.orbits) == orbits
    assert {len(o) for o in C.orbits} == {size}


def test_places_satisfy_equations():
    H = HermitianCurve(4, 2)
    F = H.F
    for a, b in H.places():
        assert F.add(F.pow(b, 4), b) == F.pow(a, 5)
    G = GSCurve(5, 2)
    F = G.F
    for a, b in G.places():
        assert F.add(F.pow(b, 5), b) == G.rhs(a)


@pytest.mark.parametrize("curve", [HermitianCurve(4, 2), GSCurve(4, 2), GSCurve(5, 2), RationalCurve(16)])
def test_sigma_permutes_places(curve):
    places = set(curve.places())
    for P in curve.orbit_places():
        Q = curve.sigma_on_place(P)
        assert Q in places and Q != P
        assert curve.sigma_on_place(P, curve.period) == P


def _scale_of_label(curve, label):
    """f -> f o sigma multiplies a basis label by this constant."""
    F = curve.F
    if isinstance(curve, HermitianCurve):
        e = sum(j * (curve.r + 1) ** i for i, j in enumerate(label))
        return F.pow(curve.gamma, (-e) % (F.order - 1))
    a, j = label
    return F.pow(curve.scale, (-(a + j)) % (F.order - 1))


@pytest.mark.parametrize("curve", [HermitianCurve(4, 2), GSCurve(5, 2)])
def test_entry_identity_two_paths(curve):
    # f(sigma^j P) by direct evaluation vs. (f o sigma^j)(P) by transforming coefficients
    F = curve.F
    B = curve.basis(25)
    rng = np.random.default_rng(0)
    f = F.vrandom(rng, B.dim)
    scales = np.array([_scale_of_label(curve, lab) for lab in B.labels])
    for P in curve.orbits[1][:2]:
        g = f.copy()
        for j in range(3):
            direct = B.evaluate(f, curve.sigma_on_place(P, j))
            assert direct == B.evaluate(g, P)
            g = F.vmul(g, scales)


def test_evaluation_at_infinity_raises():
    B = HermitianCurve(4, 2).basis(10)
    with pytest.raises(EvalAtInfinity):
        B.evaluate(np.ones(B.dim, dtype=np.int64), INFINITY)


@pytest.mark.parametrize("curve", [HermitianCurve(4, 2), GSCurve(4, 2), GSCurve(5, 2)])
def test_riemann_roch_dimensions(curve):
    g = curve.genus()
    for l in range(2 * g - 1, 2 * g + 8):
        B = curve.basis(l)
        assert B.dim == l - g + 1
        assert len(set(B.poles)) == B.dim


def test_hermitian_x2_expansion():
    C = HermitianCurve(4, 2)
    x1, x2 = C.x_series(40)
    assert x2.window(0, 21).tolist() == [0] * 5 + [1] + [0] * 14 + [1]


def test_gs_expansions_have_expected_poles():
    C = GSCurve(5, 2)
    x1, x2 = C.x_series(30)
    assert x2.val == -1 and x1.val == -5


def test_gs_higher_level_basis_not_available():
    with pytest.raises(NotImplementedError):
        GSCurve(4, 3).basis(50)


@pytest.mark.parametrize("curve,k", [(HermitianCurve(4, 2), 14), (GSCurve(5, 2), 8), (RationalCurve(16), 6)])
def test_kappa_is_section_of_ev(curve, k):
    lc = LocalCoordinates(curve, k)
    from towercodes.algebra.linalg import matmul
    assert (matmul(curve.F, lc.ev_matrix.T, lc.kappa_matrix) == np.eye(k, dtype=np.int64)).all()


def test_basis_dump_lists_labels():
    text = GSCurve(5, 2).dump_basis(30)
    assert "h1" in text and text.splitlines()[0].endswith(": 0")
