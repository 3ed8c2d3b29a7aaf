"""Linear-algebraic list decoding of folded codes.

Interpolate Q = A_0 + A_1 Y_1 + ... + A_s Y_s vanishing on the received
windows, then solve the functional equation A_0 + sum_t A_t f(xi^{t-1} T) = 0
coefficient by coefficient in the local parameter T.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from .algebra.linalg import Empty, matmul, nullspace, span_basis
from .algebra.series import convolve
from .code import CodeParams, InvalidParams, folded_code
from .periodic import PeriodicSubspace, _same_span


class InterpolationFailure(ArithmeticError):
    """The constraint system had only the zero solution (should not happen)."""


def degree_param(N, m, s, k, g):
    if m < s:
        raise ValueError("need s <= m")
    return (N * (m - s + 1) - k + (s - 1) * g + 1) // (s + 1)


def threshold(D, k, g, m, s):
    """Least t with t(m-s+1) > D + k + 2g - 1."""
    return (D + k + 2 * g - 1) // (m - s + 1) + 1


@dataclass(frozen=True)
class DecodeParams:
    code: CodeParams
    s: int

    @property
    def D(self):
        c = self.code
        return degree_param(c.N, c.m, self.s, c.k, c.g)

    @property
    def t_min(self):
        c = self.code
        return threshold(self.D, c.k, c.g, c.m, self.s)

    @property
    def l0(self):
        """Pole bound for A_0."""
        return self.D + self.code.l

    def validate(self):
        c = self.code.validate()
        if not 1 <= self.s <= c.m:
            raise InvalidParams(f"need 1 <= s <= m, got s={self.s}")
        if self.D < 0:
            raise InvalidParams(f"degree parameter D={self.D} is negative")
        if self.t_min > c.N:
            raise InvalidParams(f"agreement threshold {self.t_min} exceeds N={c.N}; nothing decodable")
        return self

    def freedoms(self):
        """(unknowns of Q, constraints) as counted by Riemann-Roch."""
        c = self.code
        g, D, k, s = c.g, self.D, c.k, self.s
        return s * (D - g + 1) + D + k + g, c.N * (c.m - s + 1)

    def radius(self):
        return decoding_radius(self)


def tau_closed(dp):
    """Closed-form error fraction; the genus term uses g itself for hermitian
    and the bound r^e for gs, rational has none."""
    c = dp.code
    s, m, N, k = dp.s, c.m, c.N, c.k
    base = Fraction(s, s + 1) * (1 - Fraction(k, N * (m - s + 1)))
    if c.kind == "gs":
        gterm = c.r ** c.e
    else:
        gterm = c.g
    return base - Fraction(3 * m, m - s + 1) * Fraction(gterm, m * N)


def decoding_radius(dp):
    return tau_closed(dp), dp.t_min


@dataclass
class InterpolationPoly:
    dp: DecodeParams
    A0: np.ndarray          # coordinates in the basis of L(l0 P_inf)
    A: list                 # s coordinate vectors in the basis of L(D P_inf)

    def is_zero(self):
        return not self.A0.any() and not any(a.any() for a in self.A)


class Decoder:
    def __init__(self, dp):
        self.dp = dp.validate()
        self.code = folded_code(dp.code)
        self.curve = self.code.curve
        self.F = self.curve.F
        c = dp.code
        self.N, self.m, self.k, self.s = c.N, c.m, c.k, dp.s
        self.D = dp.D
        self.L = self.curve.message_shift(self.k)
        self.delta = self.curve.period

    @cached_property
    def basis0(self):
        return self.curve.basis(self.dp.l0)

    @cached_property
    def basisD(self):
        return self.curve.basis(self.D)

    def _window_evals(self, basis):
        flat = [P for w in self.code.windows for P in w]
        return basis.eval_matrix(flat).reshape(self.N, self.m, -1)

    @cached_property
    def E0(self):
        return self._window_evals(self.basis0)

    @cached_property
    def ED(self):
        return self._window_evals(self.basisD)

    @cached_property
    def lowD(self):
        return self.curve.lowest_exponent(self.D)

    @cached_property
    def expD(self):
        """Expansions of the L(D) basis on exponents lowD .. lowD + D + k - 1."""
        return self.basisD.expansion_matrix(self.lowD, self.lowD + self.D + self.k)

    @cached_property
    def low0(self):
        return self.curve.lowest_exponent(self.dp.l0)

    @cached_property
    def exp0(self):
        """Expansions of the L(l0) basis up to the largest exponent any u can need."""
        hi = self.lowD + self.D - self.L + self.k
        return self.basis0.expansion_matrix(self.low0, hi)

    @cached_property
    def xi_powers(self):
        """xi_powers[t, j] = xi^{(j - L) t} for t < s, j < k."""
        F = self.F
        ordr = F.order - 1
        out = np.empty((self.s, self.k), dtype=np.int64)
        for t in range(self.s):
            for j in range(self.k):
                out[t, j] = F.pow(self.curve.xi, ((j - self.L) * t) % ordr)
        return out

    # ---- interpolation ----
    def constraint_matrix(self, rx):
        F = self.F
        rx = np.asarray(rx, dtype=np.int64)
        blocks = []
        for j in range(self.m - self.s + 1):
            parts = [self.E0[:, j, :]]
            for t in range(1, self.s + 1):
                parts.append(F.vmul(self.ED[:, j, :], rx[:, j + t - 1][:, None]))
            blocks.append(np.hstack(parts))
        return np.vstack(blocks)

    def interpolate(self, rx):
        M = self.constraint_matrix(rx)
        ns = nullspace(self.F, M)
        if ns.shape[0] == 0:
            raise InterpolationFailure("constraint system has only the zero solution")
        sol = ns[0]
        if matmul(self.F, M, sol).any():
            raise InterpolationFailure("interpolation solution fails re-verification")
        d0, dD = self.basis0.dim, self.basisD.dim
        A = [sol[d0 + t * dD:d0 + (t + 1) * dD] for t in range(self.s)]
        return InterpolationPoly(self.dp, sol[:d0], A)

    # ---- solving the functional equation ----
    def coefficient_system(self, Q):
        """(u, a0, B) with a0[d] the T^{u-L+d} coefficient of A_0 and
        B[n, j] = B_n(xi^{j-L}); None when no message can satisfy Q."""
        F, k = self.F, self.k
        nonzero = [t for t, a in enumerate(Q.A) if a.any()]
        if not nonzero:
            return None
        series = np.stack([matmul(F, self.expD.T, a) for a in Q.A])  # (s, D + k)
        first = min(int(np.flatnonzero(series[t])[0]) for t in nonzero)
        u = self.lowD + first
        a = series[:, first:first + k]  # a[t, n] = coeff of T^{u+n} in A_{t+1}
        e0 = matmul(F, self.exp0.T, Q.A0)
        off = u - self.L - self.low0
        if e0[:off].any():
            return None
        a0 = e0[off:off + k]
        B = np.zeros((k, k), dtype=np.int64)
        for t in range(self.s):
            B = F.vadd(B, F.vmul(a[t][:, None], self.xi_powers[t][None, :]))
        return u, a0, B

    def extract_subspace(self, Q):
        F, k, delta = self.F, self.k, self.delta
        system = self.coefficient_system(Q)
        if system is None:
            return Empty
        u, a0, B = system
        b0 = B[0]
        free = b0 == 0
        nb = -(-k // delta)
        U = None
        C, v = [], []
        for i in range(nb):
            lo = i * delta
            w = min(delta, k - lo)
            S = [idx for idx in range(w) if free[lo + idx]]
            X = np.zeros((w, lo + len(S) + 1), dtype=np.int64)
            zpos = {idx: lo + c for c, idx in enumerate(S)}
            for idx in range(w):
                d = lo + idx
                if free[d]:
                    X[idx, zpos[idx]] = 1
                    continue
                row = np.zeros(X.shape[1], dtype=np.int64)
                if lo:
                    js = np.arange(lo)
                    row[:lo] = B[d - js, js]
                row[-1] = a0[d]
                if idx:
                    js = np.arange(lo, d)
                    row = F.vadd(row, matmul(F, B[d - js, js][None, :], X[:idx])[0])
                X[idx] = F.vmul(F.vneg(row), F.inv(int(b0[d])))
            dirs = X[:, lo:lo + len(S)].T
            if U is None:
                U = np.zeros((dirs.shape[0], delta), dtype=np.int64)
                U[:, :w] = dirs
            elif not _same_span(F, span_basis(F, U[:, :w], w), dirs):
                raise AssertionError("free directions differ between blocks")
            C.append(X[:, :lo])
            v.append(X[:, -1])
        return PeriodicSubspace(F, delta, U, C, v, k)

    def free_offsets(self, Q):
        system = self.coefficient_system(Q)
        if system is None:
            return []
        b0 = system[2][0]
        return [d for d in range(min(self.delta, self.k)) if b0[d] == 0]

    def decode_subspace(self, rx):
        return self.extract_subspace(self.interpolate(rx))

    # ---- checks ----
    def functional_residual(self, Q, msg):
        """Expansion of A_0 + sum_t A_t * f(xi^{t-1} T) for f = kappa(msg), over
        enough terms that vanishing means the function is zero."""
        F = self.F
        code = self.code
        M = self.dp.l0
        lo = self.curve.lowest_exponent(M)
        n = M + 1
        lowl = self.curve.lowest_exponent(code.params.l)
        fexp = code.basis.expansion_matrix(lowl, lowl + n)
        fser = matmul(F, fexp.T, code.kappa(msg))
        Aexp = self.basisD.expansion_matrix(self.lowD, self.lowD + n)
        out = np.zeros(n, dtype=np.int64)
        exps = np.arange(lowl, lowl + n)
        ordr = F.order - 1
        for t, a in enumerate(Q.A):
            ft = fser if t == 0 else F.vmul(fser, np.array([F.pow(self.curve.xi, (int(e) * t) % ordr) for e in exps]))
            prod = convolve(F, matmul(F, Aexp.T, a), ft, n)
            # product window starts at lowD + lowl
            shift = self.lowD + lowl - lo
            out[shift:] = F.vadd(out[shift:], prod[:n - shift])
        e0 = matmul(F, self.basis0.expansion_matrix(lo, lo + n).T, Q.A0)
        return F.vadd(out, e0)


@lru_cache(maxsize=16)
def decoder(dp):
    return Decoder(dp)


def interpolate(rx, dp):
    return decoder(dp).interpolate(rx)


def extract_subspace(Q, dp):
    return decoder(dp).extract_subspace(Q)


def decode_subspace(rx, dp):
    return decoder(dp).decode_subspace(rx)


def affine_dim_bound(dp):
    return (dp.s - 1) * math.ceil(dp.code.k / dp.code.period)
