"""The Hermitian tower x_{i+1}^r + x_{i+1} = x_i^{r+1} over GF(r^2)."""
import itertools
from functools import lru_cache

import numpy as np

from ..algebra.field import field_of_order, primitive_element
from ..algebra.series import Series, artin_schreier
from .base import Curve


def hermitian_genus(r, e):
    total = sum(r ** (e - i + 1) * (r + 1) ** (i - 1) for i in range(1, e))
    return (total - (r + 1) ** (e - 1) + 1) // 2


def trace_roots(F, r):
    """Map c -> list of b with b^r + b = c."""
    roots = {}
    for b in range(F.order):
        c = F.add(F.pow(b, r), b)
        roots.setdefault(c, []).append(b)
    return roots


class HermitianCurve(Curve):
    name = "hermitian"

    def __init__(self, r, e, field_seed=0, check_r=True):
        if e < 2:
            raise ValueError("need e >= 2")
        if check_r and r < 2 * e:
            raise ValueError(f"need r >= 2e (r={r}, e={e})")
        self.r, self.e = r, e
        self.q = r * r
        self.F = field_of_order(self.q, field_seed)
        self.gamma = primitive_element(self.F)
        self.xi = self.F.inv(self.gamma)
        self.period = self.q - 1
        # pole order of x_i at infinity and valuation at P_0
        self.pole_x = [r ** (e - i) * (r + 1) ** (i - 1) for i in range(1, e + 1)]

    def __repr__(self):
        return f"HermitianCurve(r={self.r}, e={self.e})"

    def genus(self):
        return hermitian_genus(self.r, self.e)

    @lru_cache(maxsize=None)
    def places(self):
        F, r = self.F, self.r
        roots = trace_roots(F, r)
        out = [(a,) for a in range(F.order)]
        for _ in range(self.e - 1):
            out = [P + (b,) for P in out for b in roots.get(F.pow(P[-1], r + 1), [])]
        return out

    def in_orbit_set(self, P):
        return P[0] != 0

    def sigma_on_place(self, P, j=1):
        F = self.F
        return tuple(F.mul(a, F.pow(self.gamma, -j * (self.r + 1) ** i)) for i, a in enumerate(P))

    def basis_labels(self, l):
        r, e = self.r, self.e
        out = []
        ranges = [range(r)] * (e - 1)
        for tail in itertools.product(*ranges):
            rest = sum(j * p for j, p in zip(tail, self.pole_x[1:]))
            if rest > l:
                continue
            for j1 in range((l - rest) // self.pole_x[0] + 1):
                out.append(((j1,) + tail, j1 * self.pole_x[0] + rest))
        out.sort(key=lambda t: (t[1], t[0]))
        return out

    def eval_labels(self, labels, pts):
        F = self.F
        M = np.ones((pts.shape[0], len(labels)), dtype=np.int64)
        for c, lab in enumerate(labels):
            col = np.ones(pts.shape[0], dtype=np.int64)
            for i, j in enumerate(lab):
                if j:
                    col = F.vmul(col, F.vpow(pts[:, i], j))
            M[:, c] = col
        return M

    def x_series(self, prec):
        """Expansions of x_1..x_e at P_0 in t = x_1, known below t^prec."""
        F, r = self.F, self.r
        xs = [Series.monomial(F, 1, prec)]
        for _ in range(self.e - 1):
            w = xs[-1] ** (r + 1)
            xs.append(artin_schreier(F, w.truncate(prec), r))
        return xs

    def label_series(self, labels, rel_prec):
        prec = rel_prec  # expansions at P_0 start at t^0
        xs = self.x_series(prec)
        cache = {}
        out = []
        for lab in labels:
            tail = lab[1:]
            if tail not in cache:
                s = Series.monomial(self.F, 0, prec)
                for x, j in zip(xs[1:], tail):
                    if j:
                        s = s * (x ** j)
                cache[tail] = s.truncate(prec)
            out.append(cache[tail].shift(lab[0]).truncate(prec))
        return out
