"""The rational function field over GF(q), for the folded Reed-Solomon baseline."""
from functools import lru_cache

import numpy as np

from ..algebra.field import field_of_order, primitive_element
from ..algebra.series import Series
from .base import Curve


class RationalCurve(Curve):
    name = "rational"

    def __init__(self, q, field_seed=0):
        self.q = q
        self.r = None
        self.e = 1
        self.F = field_of_order(q, field_seed)
        self.gamma = primitive_element(self.F)
        self.xi = self.F.inv(self.gamma)
        self.period = q - 1

    def __repr__(self):
        return f"RationalCurve(q={self.q})"

    def genus(self):
        return 0

    @lru_cache(maxsize=None)
    def places(self):
        return [(a,) for a in range(self.F.order)]

    def in_orbit_set(self, P):
        return P[0] != 0

    def sigma_on_place(self, P, j=1):
        return (self.F.mul(P[0], self.F.pow(self.gamma, -j)),)

    def basis_labels(self, l):
        return [((j,), j) for j in range(l + 1)]

    def eval_labels(self, labels, pts):
        F = self.F
        M = np.empty((pts.shape[0], len(labels)), dtype=np.int64)
        for c, (j,) in enumerate(labels):
            M[:, c] = F.vpow(pts[:, 0], j)
        return M

    def label_series(self, labels, rel_prec):
        return [Series.monomial(self.F, j, j + rel_prec) for (j,) in labels]
