"""Shared machinery for curves with an automorphism sigma and a basis of L(l P_inf).

A concrete curve supplies its places, the coordinate law of sigma, basis
labels with pole orders, evaluation of a label at places, and the local
expansion of a label in the local parameter t of the expansion point.
sigma^{-1} acts on t as t -> xi * t.
"""
from functools import cached_property

import numpy as np

from ..algebra.linalg import matmul, rank, rref


class EvalAtInfinity(ValueError):
    pass


class _Infinity:
    def __repr__(self):
        return "Infinity"


INFINITY = _Infinity()


class Curve:
    name = "curve"
    expands_at_infinity = False

    # subclasses set: F, q, r, e, xi, period, and implement the hooks below

    def genus(self):
        raise NotImplementedError

    def places(self):
        raise NotImplementedError

    def sigma_on_place(self, P, j=1):
        raise NotImplementedError

    def basis_labels(self, l):
        """List of (label, pole order) spanning L(l P_inf), pole orders distinct."""
        raise NotImplementedError

    def eval_labels(self, labels, pts):
        """Matrix (len(pts), len(labels)) of values."""
        raise NotImplementedError

    def label_series(self, labels, rel_prec):
        """Series of each label with relative precision >= rel_prec."""
        raise NotImplementedError

    # ---- generic parts ----
    def place_key(self, P):
        return tuple(self.F.to_str(a) for a in P)

    def orbit_places(self):
        """Places moved by sigma (the set the code evaluates on)."""
        return [P for P in self.places() if self.in_orbit_set(P)]

    @cached_property
    def orbits(self):
        seen = set()
        out = []
        for P in sorted(self.orbit_places(), key=self.place_key):
            if P in seen:
                continue
            orb = [self.sigma_on_place(P, j) for j in range(self.period)]
            seen.update(orb)
            out.append(orb)
        return out

    def max_windows(self, m):
        return len(self.orbits) * (self.period // m)

    def orbit_sample(self, m, N):
        """N windows of m consecutive sigma-images, as an (N, m) list of places."""
        if not 1 <= m <= self.period:
            raise ValueError(f"folding parameter m={m} outside [1, {self.period}]")
        if N > self.max_windows(m):
            raise ValueError(f"N={N} exceeds the {self.max_windows(m)} available windows")
        out = []
        for orb in self.orbits:
            for w in range(self.period // m):
                if len(out) == N:
                    return out
                out.append(orb[w * m:(w + 1) * m])
        return out

    def basis(self, l):
        return FunctionBasis(self, l)

    def message_shift(self, k):
        """Exponent shift L: messages are coefficients of t^{-L} .. t^{k-1-L}."""
        return k + 2 * self.genus() - 1 if self.expands_at_infinity else 0

    def lowest_exponent(self, l):
        """Smallest exponent that can occur in the expansion of f in L(l P_inf)."""
        return -l if self.expands_at_infinity else 0

    def dump_basis(self, l):
        return "\n".join(f"{self.format_label(lab)} : {pole}" for lab, pole in self.basis_labels(l))

    def format_label(self, label):
        return ",".join(str(j) for j in label)


class FunctionBasis:
    """Ordered basis of L(l P_inf) with cached evaluation and expansion data."""

    def __init__(self, curve, l):
        self.curve = curve
        self.l = l
        pairs = curve.basis_labels(l)
        self.labels = [lab for lab, _ in pairs]
        self.poles = [p for _, p in pairs]

    def __len__(self):
        return len(self.labels)

    @property
    def dim(self):
        return len(self.labels)

    def eval_matrix(self, places):
        pts = np.asarray(places, dtype=np.int64).reshape(len(places), -1)
        return self.curve.eval_labels(self.labels, pts)

    def expansion_matrix(self, lo, hi):
        """Row per basis function: coefficients of t^lo .. t^{hi-1}."""
        lo_min = min(lo, self.curve.lowest_exponent(self.l))
        series = self.curve.label_series(self.labels, hi - lo_min)
        if not series:
            return np.zeros((0, hi - lo), dtype=np.int64)
        return np.stack([s.window(lo, hi) for s in series])

    def evaluate(self, coeffs, P):
        if P is INFINITY:
            raise EvalAtInfinity("cannot evaluate at the place at infinity")
        row = self.eval_matrix([P])[0]
        return int(self.curve.F.vdot(row, np.asarray(coeffs, dtype=np.int64)))


class LocalCoordinates:
    """ev (first k expansion coefficients after the shift) and its section kappa."""

    def __init__(self, curve, k):
        self.curve = curve
        self.k = k
        g = curve.genus()
        self.l = k + 2 * g - 1
        self.shift = curve.message_shift(k)
        self.basis = curve.basis(self.l)
        F = curve.F
        self.ev_matrix = self.basis.expansion_matrix(-self.shift, k - self.shift)  # (dim, k)
        # kappa: pivot-minimal solution of ev(X) = I
        E = self.ev_matrix.T  # k x dim
        R, rk, pivots = rref(F, np.hstack([E, np.eye(k, dtype=np.int64)]))
        if rk < k or pivots[-1] >= E.shape[1]:
            raise ArithmeticError("local expansion map is not surjective")
        K = np.zeros((E.shape[1], k), dtype=np.int64)
        K[pivots, :] = R[:rk, E.shape[1]:]
        self.kappa_matrix = K  # (dim, k)

    def ev(self, coeffs):
        return matmul(self.curve.F, self.ev_matrix.T, np.asarray(coeffs, dtype=np.int64))

    def kappa(self, v):
        return matmul(self.curve.F, self.kappa_matrix, np.asarray(v, dtype=np.int64))

    def ev_rank(self):
        return rank(self.curve.F, self.ev_matrix)
