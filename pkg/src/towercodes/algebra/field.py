"""Finite fields GF(p^n) with elements packed into Python ints.

An element with coefficients c_0 + c_1 X + ... + c_{n-1} X^{n-1} over GF(p)
is stored as the integer sum(c_i * p**i). For p = 2 this is the usual
bit-packed polynomial.
"""
import random

import numpy as np

# Fields up to this order get exp/log tables and vectorized numpy ops.
TABLE_LIMIT = 1 << 16
ADD_TABLE_LIMIT = 1024


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n):
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q):
    """Return (p, n) with q = p**n, or raise ValueError."""
    for p in range(2, q + 1):
        if q % p == 0:
            n = 0
            while q % p == 0:
                q //= p
                n += 1
            if q != 1:
                raise ValueError("not a prime power")
            return p, n
    raise ValueError("not a prime power")


# ---- polynomials over GF(p) as digit lists (low first) ----

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv % p
        if c:
            off = len(a) - 1 - dm
            for i, mi in enumerate(m):
                a[off + i] = (a[off + i] - c * mi) % p
        a.pop()
        _ptrim(a)
    return _ptrim(a)


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def _pgcd(a, b, p):
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _psub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _ptrim(out)


def _ppowmod(a, e, m, p):
    result = [1]
    a = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, a, p), m, p)
        a = _pmod(_pmul(a, a, p), m, p)
        e >>= 1
    return result


# ---- polynomials over GF(2) as ints ----

def clmul(a, b):
    """Carry-less product of two GF(2) polynomials packed in ints."""
    if a.bit_length() < b.bit_length():
        a, b = b, a
    if b < 16:
        out = 0
        s = 0
        while b:
            if b & 1:
                out ^= a << s
            b >>= 1
            s += 1
        return out
    tab = [0] * 16
    tab[1] = a
    for i in range(2, 16):
        tab[i] = tab[i >> 1] << 1 if not i & 1 else tab[i - 1] ^ a
    out = 0
    s = 0
    while b:
        out ^= tab[b & 15] << s
        b >>= 4
        s += 4
    return out


def _g2mod(a, m):
    dm = m.bit_length() - 1
    while a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def _g2gcd(a, b):
    while b:
        a, b = b, _g2mod(a, b)
    return a


def _g2square(a):
    return clmul(a, a)


def is_irreducible(p, modulus):
    """Ben-Or test: gcd(X^{p^d} - X, f) = 1 for all d <= n/2.

    Stops at the first d that exposes a factor, so random candidates are
    rejected cheaply.
    """
    n = len(modulus) - 1
    if n < 1 or modulus[-1] % p == 0:
        return False
    if n == 1:
        return True
    if modulus[0] % p == 0:
        return False
    if p == 2:
        f = sum(1 << i for i, c in enumerate(modulus) if c % 2)
        h = 2
        for _ in range(n // 2):
            h = _g2mod(_g2square(h), f)
            if _g2gcd(f, h ^ 2) != 1:
                return False
        return True
    f = [c % p for c in modulus]
    h = [0, 1]
    for _ in range(n // 2):
        h = _ppowmod(h, p, f, p)
        g = _pgcd(f, _psub(h, [0, 1], p), p)
        if len(g) > 1:
            return False
    return True


def _order_divides(p, modulus, e):
    """Does X^e == 1 modulo the given polynomial?"""
    if p == 2:
        f = sum(1 << i for i, c in enumerate(modulus) if c)
        r, a = 1, 2
        while e:
            if e & 1:
                r = _g2mod(clmul(r, a), f)
            a = _g2mod(clmul(a, a), f)
            e >>= 1
        return r == 1
    return _ppowmod([0, 1], e, list(modulus), p) == [1]


def _is_primitive_poly(p, modulus):
    n = len(modulus) - 1
    order = p ** n - 1
    if not _order_divides(p, modulus, order):
        return False
    return all(not _order_divides(p, modulus, order // f) for f in prime_factors(order))


def random_irreducible(p, n, rng, primitive=False, sparse=False):
    """Monic irreducible modulus of degree n over GF(p), low coefficient first."""
    for _ in range(100000):
        if sparse and n > 8:
            # a short random tail keeps reduction cheap; still a random search
            tail = [rng.randrange(p) for _ in range(min(n // 2, 16))]
            cand = tail + [0] * (n - len(tail)) + [1]
        else:
            cand = [rng.randrange(p) for _ in range(n)] + [1]
        if cand[0] == 0 and n > 1:
            continue
        if not is_irreducible(p, cand):
            continue
        if primitive and not _is_primitive_poly(p, cand):
            continue
        return cand
    raise RuntimeError("no irreducible polynomial found")


class GF:
    """GF(p^n) defined by an explicit monic irreducible modulus."""

    def __init__(self, p, modulus, check=True):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        modulus = [int(c) % p for c in modulus]
        if modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        if check and not is_irreducible(p, modulus):
            raise ValueError("modulus is reducible")
        self.p = p
        self.n = len(modulus) - 1
        self.modulus = tuple(modulus)
        self.order = p ** self.n
        self.q = self.order
        self._pw = [p ** i for i in range(self.n + 1)]
        if p == 2:
            self._mod_int = sum(1 << i for i, c in enumerate(modulus) if c)
            self.tail = [i for i, c in enumerate(modulus[:-1]) if c]
            self._low_mask = (1 << self.n) - 1
            # fold the high part down when the tail is short
            self._fold = bool(self.tail) and max(self.tail) <= self.n // 2
        self.tabled = self.order <= TABLE_LIMIT
        if self.tabled:
            self._build_tables()

    def __repr__(self):
        return f"GF({self.p}^{self.n})"

    def __eq__(self, other):
        return isinstance(other, GF) and self.p == other.p and self.modulus == other.modulus

    def __hash__(self):
        return hash((self.p, self.modulus))

    # ---- digits ----
    def digits(self, a):
        p = self.p
        out = []
        for _ in range(self.n):
            out.append(a % p)
            a //= p
        return out

    def from_digits(self, d):
        return sum(int(c) % self.p * w for c, w in zip(d, self._pw))

    def to_str(self, a):
        return "".join(str(c) if c < 10 else chr(87 + c) for c in self.digits(a))

    def from_str(self, s):
        return self.from_digits([int(ch, 36) for ch in s])

    # ---- scalar arithmetic ----
    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        if self.n == 1:
            return (a + b) % self.p
        if self.tabled and self._add_list is not None:
            return self._add_list[a * self.order + b]
        p = self.p
        return self.from_digits([(x + y) % p for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a):
        if self.p == 2:
            return a
        if self.n == 1:
            return (-a) % self.p
        return self.from_digits([(-x) % self.p for x in self.digits(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return 0
        if self.tabled:
            return self._exp_list[self._log_list[a] + self._log_list[b]]
        if self.p == 2:
            return self._reduce2(clmul(a, b))
        d = _pmod(_pmul(self.digits(a), self.digits(b), self.p), self.modulus, self.p)
        return self.from_digits(d)

    def _reduce2(self, a):
        if not self._fold:
            return _g2mod(a, self._mod_int)
        n = self.n
        while a >> n:
            h = a >> n
            a &= self._low_mask
            for e in self.tail:
                a ^= h << e
        return a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.tabled:
            return self._exp_list[(self.order - 1 - self._log_list[a]) % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        if self.tabled:
            return self._exp_list[(self._log_list[a] * e) % (self.order - 1)]
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def log(self, a):
        return self._log_list[a]

    def exp(self, i):
        return self._exp_list[i % (self.order - 1)]

    def random(self, rng):
        return rng.randrange(self.order)

    def elements(self):
        return range(self.order)

    # ---- tables and vectorized ops (small fields only) ----
    def _build_tables(self):
        q, p, n = self.order, self.p, self.n
        # find a generator by brute force over small integers
        gen = self._find_generator()
        exp = [0] * (2 * (q - 1) + 1)
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, gen)
        for i in range(q - 1, len(exp)):
            exp[i] = exp[i - (q - 1)]
        self.generator = gen
        self._exp_list = exp
        self._log_list = log
        self.exp_table = np.array(exp, dtype=np.int64)
        self.log_table = np.array(log, dtype=np.int64)
        self.digit_table = np.array([self.digits(a) for a in range(q)], dtype=np.int64).reshape(q, n)
        self.pw = np.array(self._pw[:n], dtype=np.int64)
        self.neg_table = np.array([self.neg_slow(a) for a in range(q)], dtype=np.int64)
        self._add_list = None
        self.add_table = None
        if p != 2 and n > 1 and q <= ADD_TABLE_LIMIT:
            d = self.digit_table
            t = ((d[:, None, :] + d[None, :, :]) % p) @ self.pw
            self.add_table = t.astype(np.int64)
            self._add_list = self.add_table.ravel().tolist()

    def neg_slow(self, a):
        return self.from_digits([(-x) % self.p for x in self.digits(a)])

    def _slow_mul(self, a, b):
        if self.p == 2:
            return _g2mod(clmul(a, b), self._mod_int)
        return self.from_digits(_pmod(_pmul(self.digits(a), self.digits(b), self.p), self.modulus, self.p))

    def _find_generator(self):
        q = self.order
        if q == 2:
            return 1
        factors = prime_factors(q - 1)
        for g in range(2 if q > 2 else 1, q):
            if all(self._slow_pow(g, (q - 1) // f) != 1 for f in factors):
                return g
        raise RuntimeError("no generator")

    def _slow_pow(self, a, e):
        r = 1
        while e:
            if e & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return r

    def vadd(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.n == 1:
            return (a + b) % self.p
        if self.add_table is not None:
            return self.add_table[a, b]
        return ((self.digit_table[a] + self.digit_table[b]) % self.p) @ self.pw

    def vneg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        return self.neg_table[a]

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self.exp_table[self.log_table[a] + self.log_table[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def vinv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return self.exp_table[(self.order - 1 - self.log_table[a]) % (self.order - 1)]

    def vpow(self, a, e):
        a = np.asarray(a, dtype=np.int64)
        out = self.exp_table[(self.log_table[a] * e) % (self.order - 1)]
        if e == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, out)

    def vsum(self, a, axis=0):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        if self.n == 1:
            return a.sum(axis=axis) % self.p
        # the digit axis is appended last, so resolve negative axes first
        d = self.digit_table[a].sum(axis=axis % a.ndim) % self.p
        return d @ self.pw

    def vdot(self, a, b):
        return self.vsum(self.vmul(a, b), axis=-1)

    def vrandom(self, rng, shape):
        return rng.integers(0, self.order, size=shape, dtype=np.int64)


_FIELD_CACHE = {}


def field_create(p, n, seed=0):
    """A random GF(p^n), deterministic in seed.

    Small fields get a primitive modulus so X generates the unit group;
    any primitive modulus is in particular irreducible.
    """
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if n < 1:
        raise ValueError("degree must be positive")
    key = (p, n, seed)
    if key not in _FIELD_CACHE:
        rng = random.Random(f"field-{p}-{n}-{seed}")
        if n == 1:
            mod = [0, 1]
        else:
            mod = random_irreducible(p, n, rng, primitive=p ** n <= TABLE_LIMIT)
        _FIELD_CACHE[key] = GF(p, mod, check=False)
    return _FIELD_CACHE[key]


def field_of_order(q, seed=0):
    p, n = prime_power(q)
    return field_create(p, n, seed)


def primitive_element(F):
    """Smallest-encoded element of multiplicative order |F| - 1."""
    if F.tabled:
        return F.generator
    q = F.order
    factors = prime_factors(q - 1)
    for g in range(1, q):
        if all(F.pow(g, (q - 1) // f) != 1 for f in factors):
            return g
    raise RuntimeError("no primitive element")


def element_order(F, a):
    if a == 0:
        raise ValueError("zero has no multiplicative order")
    n = F.order - 1
    for f in prime_factors(F.order - 1):
        while n % f == 0 and F.pow(a, n // f) == 1:
            n //= f
    return n
