"""Extension fields GF(q^D) over a table-backed GF(q), with coordinate maps.

GF(q^D) is realised as GF(p^{aD}) (q = p^a) with a sparse random modulus.
GF(q) sits inside it through a root theta of the modulus of GF(q), and the
coordinate map is rho(v) = sum_j emb(v_j) X^j. The powers of X form a
GF(q)-basis because X generates the whole field.
"""
import math
import random

import numpy as np

from . import kernels
from .field import GF, prime_factors, random_irreducible


def _gf2_inverse_rows(cols_bits, n):
    """Invert an n x n GF(2) matrix given by its columns as int bitmasks.

    Returns the rows of the inverse as int bitmasks over the input index.
    """
    # row i of M: bit j set iff column j has bit i
    rows = [0] * n
    for j, c in enumerate(cols_bits):
        while c:
            low = c & -c
            rows[low.bit_length() - 1] |= 1 << j
            c ^= low
    inv = [1 << i for i in range(n)]
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if rows[i] >> c & 1), None)
        if piv is None:
            raise ValueError("singular coordinate matrix")
        rows[r], rows[piv] = rows[piv], rows[r]
        inv[r], inv[piv] = inv[piv], inv[r]
        for i in range(n):
            if i != r and rows[i] >> c & 1:
                rows[i] ^= rows[r]
                inv[i] ^= inv[r]
        r += 1
    return inv


class ExtField:
    """GF(q^D) with rho: GF(q)^D -> GF(q^D) and its inverse."""

    def __init__(self, Fq, D, seed=0):
        self.Fq = Fq
        self.D = D
        self.p = p = Fq.p
        self.a = a = Fq.n
        self.n = n = a * D
        rng = random.Random(f"ext-{p}-{Fq.modulus}-{D}-{seed}")
        self.seed = seed
        self.big = GF(p, random_irreducible(p, n, rng, sparse=True), check=False)
        self.order = self.big.order
        self.W = (n + 63) // 64
        self._embed(rng)
        self._build_rho()
        if p == 2:
            self.tail = np.array(self.big.tail, dtype=np.int64)
            self.chunk = min(64, n - (max(self.big.tail) if self.big.tail else 0))
        else:
            self.mod = np.array(self.big.modulus[:-1], dtype=np.int64)

    def __repr__(self):
        return f"ExtField(q={self.Fq.order}, D={self.D})"

    # ---- construction ----
    def _embed(self, rng):
        Fq, big = self.Fq, self.big
        q = Fq.order
        if self.a == 1:
            self.theta = None
            self.emb = list(range(q))
            return
        g = Fq.modulus
        e = (big.order - 1) // (q - 1)
        factors = prime_factors(q - 1)
        while True:
            u = rng.randrange(1, big.order)
            w = big.pow(u, e)
            if all(big.pow(w, (q - 1) // f) != 1 for f in factors):
                break
        theta = None
        x = 1
        for j in range(1, q):
            x = big.mul(x, w)
            if math.gcd(j, q - 1) != 1:
                continue
            acc = 0
            for c in reversed(g):
                acc = big.add(big.mul(acc, x), c)
            if acc == 0:
                theta = x
                break
        if theta is None:
            raise RuntimeError("no root of the base modulus found")
        self.theta = theta
        powers = [1]
        for _ in range(self.a - 1):
            powers.append(big.mul(powers[-1], theta))
        emb = []
        for c in range(q):
            acc = 0
            for d, t in zip(Fq.digits(c), powers):
                for _ in range(d):
                    acc = big.add(acc, t)
            emb.append(acc)
        self.emb = emb

    def _times_x(self, v):
        big = self.big
        if self.p == 2:
            v <<= 1
            if v >> self.n:
                v ^= big._mod_int
            return v
        return big.mul(v, self.p)

    def _build_rho(self):
        q, D = self.Fq.order, self.D
        table = [list(self.emb)]
        for j in range(1, D):
            table.append([self._times_x(v) for v in table[-1]])
        self.table = table  # table[j][c] = emb(c) X^j
        self.table_k = np.stack([self.to_kernel(row) for row in table])  # (D, q, W or n)
        # columns of the GF(p) coordinate matrix, in (j, digit) order
        units = [self.Fq.from_digits([int(t == i) for t in range(self.a)]) for i in range(self.a)]
        cols = [table[j][u] for j in range(D) for u in units]
        if self.p == 2:
            self._inv_rows = _gf2_inverse_rows(cols, self.n)
        else:
            from .field import field_create
            from .linalg import rref
            Fp = field_create(self.p, 1)
            M = np.array([self.big.digits(c) for c in cols], dtype=np.int64).T
            aug = np.hstack([M, np.eye(self.n, dtype=np.int64)])
            R, rk, _ = rref(Fp, aug)
            if rk < self.n:
                raise ValueError("singular coordinate matrix")
            self._inv_mat = R[:, self.n:]

    # ---- coordinate maps ----
    def rho(self, v):
        v = [int(x) for x in v]
        if len(v) != self.D:
            raise ValueError("coordinate vector has wrong length")
        acc = 0
        for j, c in enumerate(v):
            if c:
                acc = self.big.add(acc, self.table[j][c])
        return acc

    def rho_inv(self, a):
        p, A, D = self.p, self.a, self.D
        if p == 2:
            dig = [bin(r & a).count("1") & 1 for r in self._inv_rows]
        else:
            dig = (self._inv_mat @ np.array(self.big.digits(a), dtype=np.int64) % p).tolist()
        return [self.Fq.from_digits(dig[j * A:(j + 1) * A]) for j in range(D)]

    def rho_batch(self, V):
        """Kernel representation of rho applied to each row of V."""
        V = np.asarray(V, dtype=np.int64)
        B = V.shape[0]
        idx = np.arange(self.D)
        if self.p == 2:
            out = np.zeros((B, self.W), dtype=np.uint64)
            for j in range(self.D):
                out ^= self.table_k[j, V[:, j]]
            return out
        out = np.zeros((B, self.n), dtype=np.int64)
        for j in range(self.D):
            out += self.table_k[j, V[:, j]]
        return out % self.p

    # ---- Lambda: trailing coordinates zero ----
    def lambda_functionals(self, zd):
        """GF(p)-linear forms whose common kernel is the set with v_j = 0 for j >= D - zd."""
        lo = (self.D - zd) * self.a
        if self.p == 2:
            rows = self._inv_rows[lo:]
            return self.to_kernel(rows)
        return self._inv_mat[lo:].copy()

    def in_lambda(self, x, zd):
        v = self.rho_inv(x)
        return all(c == 0 for c in v[self.D - zd:])

    # ---- kernel representation ----
    def to_kernel(self, xs):
        xs = [int(x) for x in xs]
        if self.p == 2:
            out = np.zeros((len(xs), self.W), dtype=np.uint64)
            mask = (1 << 64) - 1
            for i, x in enumerate(xs):
                for w in range(self.W):
                    out[i, w] = (x >> (64 * w)) & mask
            return out
        return np.array([self.big.digits(x) for x in xs], dtype=np.int64).reshape(len(xs), self.n)

    def from_kernel(self, arr):
        if self.p == 2:
            return [sum(int(row[w]) << (64 * w) for w in range(self.W)) for row in arr]
        return [self.big.from_digits(row) for row in arr]

    def poly_eval_batch(self, coeffs_k, pts_k):
        """coeffs_k: kernel array, highest degree first."""
        if self.p == 2:
            return kernels.horner2_batch(coeffs_k, pts_k, self.n, self.tail, self.chunk)
        return kernels.horner_p_batch(coeffs_k, pts_k, self.mod, self.p)

    def gamma_check(self, pc, qc, pts_k, lam, need_q=True):
        if self.p == 2:
            return kernels.gamma_check2(pc, qc, pts_k, lam, self.n, self.tail, self.chunk, need_q)
        return kernels.gamma_check_p(pc, qc, pts_k, lam, self.mod, self.p, need_q)


_TOWER_CACHE = {}


def extension_tower(Fq, delta, b, seed=0):
    """[GF(q^{i delta}) with rho_i for i = 1..b], deterministic in seed."""
    key = (Fq.p, Fq.modulus, delta, b, seed)
    if key not in _TOWER_CACHE:
        _TOWER_CACHE[key] = [ExtField(Fq, i * delta, seed=(seed, i)) for i in range(1, b + 1)]
    return _TOWER_CACHE[key]
