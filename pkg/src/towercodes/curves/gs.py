"""The Garcia-Stichtenoth tower x_{i+1}^r + x_{i+1} = x_i^r / (x_i^{r-1} + 1) over GF(r^2).

Expansions are taken at P_inf in T = 1/x_e.
"""
from functools import lru_cache

import numpy as np

from ..algebra.field import element_order, field_of_order, primitive_element
from ..algebra.series import Series, artin_schreier
from .base import Curve
from .hermitian import trace_roots


def gs_genus(r, e):
    if e % 2 == 0:
        return (r ** (e // 2) - 1) ** 2
    return (r ** ((e - 1) // 2) - 1) * (r ** ((e + 1) // 2) - 1)


class GSCurve(Curve):
    name = "gs"
    expands_at_infinity = True

    def __init__(self, r, e, field_seed=0):
        if e < 2:
            raise ValueError("need e >= 2")
        self.r, self.e = r, e
        self.q = r * r
        F = self.F = field_of_order(self.q, field_seed)
        # primitive element of the subfield GF(r)
        self.gamma = F.pow(primitive_element(F), r + 1)
        # sigma scales every coordinate by the same element of GF(r)^*;
        # gamma^{r+1} = gamma^2 only has full order r - 1 when r is even
        c = F.pow(self.gamma, r + 1)
        self.scale = c if element_order(F, c) == r - 1 else self.gamma
        self.xi = self.scale
        self.period = r - 1
        self.pole_x = [r ** (e - i) for i in range(1, e + 1)]

    def __repr__(self):
        return f"GSCurve(r={self.r}, e={self.e})"

    def genus(self):
        return gs_genus(self.r, self.e)

    def rhs(self, a):
        """a^r / (a^{r-1} + 1)."""
        F, r = self.F, self.r
        den = F.add(F.pow(a, r - 1), 1)
        if den == 0:
            raise ZeroDivisionError("denominator vanishes")
        return F.div(F.pow(a, r), den)

    @lru_cache(maxsize=None)
    def places(self):
        F, r = self.F, self.r
        roots = trace_roots(F, r)
        out = [(a,) for a in range(F.order) if F.add(F.pow(a, r), a) != 0]
        for _ in range(self.e - 1):
            out = [P + (b,) for P in out for b in roots.get(self.rhs(P[-1]), [])]
        return out

    def in_orbit_set(self, P):
        return True

    def sigma_on_place(self, P, j=1):
        F = self.F
        s = F.pow(self.scale, -j)
        return tuple(F.mul(a, s) for a in P)

    # ---- Riemann-Roch basis ----
    def basis_labels(self, l):
        """Labels (a, j): x_1^a if j == 0, else x_1^a * h_1 * x_2^j (1 <= j <= r-1).

        Only implemented for e = 2.
        """
        if self.e != 2:
            raise NotImplementedError("Riemann-Roch basis is implemented for e = 2 only")
        r = self.r
        out = []
        for a in range(l // r + 1):
            out.append(((a, 0), r * a))
        for j in range(1, r):
            for a in range(l + 1):
                pole = r * a + r * (r - 1) + j
                if pole > l:
                    break
                out.append(((a, j), pole))
        out.sort(key=lambda t: (t[1], t[0]))
        return out

    def format_label(self, label):
        a, j = label
        if j == 0:
            return f"({a}; 0,0)"
        return f"({a}; 0,{j}) h1"

    def eval_labels(self, labels, pts):
        F, r = self.F, self.r
        x1 = pts[:, 0]
        h1 = F.vadd(F.vpow(x1, r - 1), 1)
        M = np.empty((pts.shape[0], len(labels)), dtype=np.int64)
        for c, (a, j) in enumerate(labels):
            col = F.vpow(x1, a)
            if j:
                col = F.vmul(col, F.vmul(h1, F.vpow(pts[:, 1], j)))
            M[:, c] = col
        return M

    def x_series(self, rel_prec):
        """Expansions of x_1..x_e at P_inf in T = 1/x_e, relative precision >= rel_prec."""
        F, r, e = self.F, self.r, self.e
        xs = [None] * e
        xs[e - 1] = Series.monomial(F, -1, rel_prec - 1)
        for i in range(e - 1, 0, -1):
            x = xs[i]
            w = (x.frobenius(r) + x).inverse()
            y = artin_schreier(F, w, r)
            xs[i - 1] = y.inverse()
        return xs

    def label_series(self, labels, rel_prec):
        F, r = self.F, self.r
        xs = self.x_series(rel_prec)
        x1 = xs[0]
        h1 = x1 ** (r - 1)
        h1 = h1 + Series.monomial(F, 0, h1.prec)
        out = []
        pw = {}
        for a, j in labels:
            if a not in pw:
                pw[a] = x1 ** a if a else Series.monomial(F, 0, rel_prec)
            s = pw[a]
            if j:
                s = s * h1 * (xs[1] ** j)
            out.append(s)
        return out
