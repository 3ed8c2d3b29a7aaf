"""Truncated Laurent series over a table-backed field.

A Series holds t^val * (c_0 + c_1 t + ... + c_{n-1} t^{n-1}) + O(t^{val+n}).
"""
import numpy as np


class Series:
    def __init__(self, F, val, coeffs, normalize=True):
        self.F = F
        self.val = int(val)
        self.c = np.asarray(coeffs, dtype=np.int64)
        if normalize:
            self._normalize()

    def _normalize(self):
        nz = np.flatnonzero(self.c)
        if nz.size == 0:
            self.val += len(self.c)
            self.c = self.c[:0]
        elif nz[0]:
            self.val += int(nz[0])
            self.c = self.c[nz[0]:]

    @classmethod
    def monomial(cls, F, e, prec, coeff=1):
        """coeff * t^e known up to (not including) t^prec."""
        n = max(prec - e, 0)
        c = np.zeros(n, dtype=np.int64)
        if n:
            c[0] = coeff
        return cls(F, e, c)

    @classmethod
    def from_window(cls, F, lo, coeffs):
        return cls(F, lo, coeffs)

    @property
    def prec(self):
        """Absolute precision: exponents below this are known."""
        return self.val + len(self.c)

    def is_zero(self):
        return len(self.c) == 0

    def coeff(self, e):
        if e >= self.prec:
            raise ValueError(f"coefficient t^{e} beyond precision {self.prec}")
        if e < self.val:
            return 0
        return int(self.c[e - self.val])

    def window(self, lo, hi):
        """Coefficients of t^lo .. t^{hi-1}."""
        if hi > self.prec:
            raise ValueError(f"window up to t^{hi} beyond precision {self.prec}")
        out = np.zeros(max(hi - lo, 0), dtype=np.int64)
        a = max(lo, self.val)
        if a < hi:
            out[a - lo:hi - lo] = self.c[a - self.val:hi - self.val]
        return out

    def truncate(self, prec):
        if prec >= self.prec:
            return self
        return Series(self.F, self.val, self.c[:max(prec - self.val, 0)])

    def __add__(self, other):
        F = self.F
        prec = min(self.prec, other.prec)
        lo = min(self.val, other.val, prec)
        return Series(F, lo, F.vadd(self.window(lo, prec), other.window(lo, prec)))

    def __neg__(self):
        return Series(self.F, self.val, self.F.vneg(self.c), normalize=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a):
        if a == 0:
            return Series(self.F, self.prec, [])
        return Series(self.F, self.val, self.F.vmul(self.c, a), normalize=False)

    def shift(self, e):
        """Multiply by t^e."""
        return Series(self.F, self.val + e, self.c, normalize=False)

    def __mul__(self, other):
        F = self.F
        if self.is_zero() or other.is_zero():
            prec = min(self.prec + other.val, other.prec + self.val)
            return Series(F, prec, [])
        n = min(len(self.c), len(other.c))
        a, b = self.c[:n], other.c[:n]
        return Series(F, self.val + other.val, convolve(F, a, b, n), normalize=False)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("series is zero to the computed precision")
        return Series(self.F, -self.val, invert(self.F, self.c), normalize=False)

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return Series.monomial(self.F, 0, max(len(self.c), 1))
        result = None
        base = self
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def frobenius(self, r):
        """The r-th power, r a power of the characteristic."""
        F = self.F
        n = len(self.c)
        c = np.zeros(max(n * r - (r - 1), 0), dtype=np.int64)
        c[::r] = F.vpow(self.c, r)
        # known up to exponent r*prec; pad zeros between the last term and there
        out = np.zeros(n * r, dtype=np.int64)
        out[:len(c)] = c
        return Series(F, self.val * r, out, normalize=False)

    def __repr__(self):
        terms = [f"{int(x)}*t^{self.val + i}" for i, x in enumerate(self.c) if x][:8]
        return "Series(" + " + ".join(terms) + f" + O(t^{self.prec}))"


def convolve(F, a, b, n):
    """First n coefficients of the product of two coefficient arrays."""
    out = np.zeros(n, dtype=np.int64)
    nza = np.flatnonzero(a[:n])
    nzb = np.flatnonzero(b[:n])
    if len(nza) > len(nzb):
        a, b, nza = b, a, nzb
    for i in nza:
        if i >= n:
            break
        out[i:] = F.vadd(out[i:], F.vmul(int(a[i]), b[:n - i]))
    return out


def invert(F, a):
    """Coefficients of 1/(a_0 + a_1 t + ...) to the same length."""
    n = len(a)
    c = np.zeros(n, dtype=np.int64)
    inv0 = F.inv(int(a[0]))
    c[0] = inv0
    ninv0 = F.neg(inv0)
    nz = np.flatnonzero(a[1:]) + 1
    if nz.size == 0:
        return c
    # sparse when a has few nonzero terms (common for tower expansions)
    for i in range(1, n):
        idx = nz[nz <= i]
        if idx.size == 0:
            continue
        s = F.vsum(F.vmul(a[idx], c[i - idx]))
        c[i] = F.mul(ninv0, int(s))
    return c


def artin_schreier(F, w, r):
    """The solution y with v(y) > 0 of y + y^r = w, where v(w) > 0."""
    if not w.is_zero() and w.val <= 0:
        raise ValueError("need positive valuation")
    prec = w.prec
    y = np.zeros(prec, dtype=np.int64)
    for E in range(1, prec):
        c = w.coeff(E)
        if E % r == 0 and y[E // r]:
            c = F.sub(c, F.pow(int(y[E // r]), r))
        y[E] = c
    return Series(F, 0, y)
