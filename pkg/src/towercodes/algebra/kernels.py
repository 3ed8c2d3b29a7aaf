"""Compiled hot loops for polynomial evaluation in large extension fields.

Characteristic 2: elements are little-endian uint64 word arrays and the
modulus is X^n + sum(X^e for e in tail) with every e < n.
Odd characteristic: elements are int64 digit arrays, dense monic modulus.
"""
import numba as nb
import numpy as np

U64 = np.uint64


@nb.njit(cache=True)
def _build_window(x, W, T):
    # T[v] = x * v for all bytes v, W + 1 words each
    for w in range(W + 1):
        T[0, w] = 0
        T[1, w] = 0
    for w in range(W):
        T[1, w] = x[w]
    one = np.uint64(1)
    s63 = np.uint64(63)
    for v in range(2, 256):
        if v & 1:
            for w in range(W + 1):
                T[v, w] = T[v - 1, w] ^ T[1, w]
        else:
            h = v >> 1
            carry = np.uint64(0)
            for w in range(W + 1):
                cur = T[h, w]
                T[v, w] = (cur << one) | carry
                carry = cur >> s63


@nb.njit(cache=True, inline='always')
def _mul_window(acc, T, W, prod):
    for w in range(2 * W + 2):
        prod[w] = 0
    for i in range(W):
        a = acc[i]
        if a == 0:
            continue
        for k in range(8):
            v = (a >> np.uint64(8 * k)) & np.uint64(255)
            if v == 0:
                continue
            s = np.uint64(8 * k)
            if k == 0:
                for w in range(W + 1):
                    prod[i + w] ^= T[v, w]
            else:
                r = np.uint64(64 - 8 * k)
                for w in range(W + 1):
                    t = T[v, w]
                    prod[i + w] ^= t << s
                    prod[i + w + 1] ^= t >> r


@nb.njit(cache=True, inline='always')
def _extract(prod, pos, L):
    word = pos >> 6
    off = pos & 63
    v = prod[word] >> np.uint64(off)
    if off and word + 1 < prod.shape[0]:
        v |= prod[word + 1] << np.uint64(64 - off)
    if L < 64:
        v &= (np.uint64(1) << np.uint64(L)) - np.uint64(1)
    return v


@nb.njit(cache=True, inline='always')
def _xor_at(prod, v, pos):
    word = pos >> 6
    off = pos & 63
    prod[word] ^= v << np.uint64(off)
    if off and word + 1 < prod.shape[0]:
        prod[word + 1] ^= v >> np.uint64(64 - off)


@nb.njit(cache=True)
def _reduce(prod, n, tail, chunk):
    E = 2 * n - 1
    size = prod.shape[0]
    while E > n:
        E0 = E - chunk
        if E0 < n:
            E0 = n
        L = E - E0
        word = E0 >> 6
        off = E0 & 63
        H = prod[word] >> np.uint64(off)
        if off and word + 1 < size:
            H |= prod[word + 1] << np.uint64(64 - off)
        if L < 64:
            H &= (np.uint64(1) << np.uint64(L)) - np.uint64(1)
        E = E0
        if H == 0:
            continue
        # clear the chunk
        prod[word] ^= H << np.uint64(off)
        if off and word + 1 < size:
            prod[word + 1] ^= H >> np.uint64(64 - off)
        # add H * tail(X) at position E0 - n
        lo = np.uint64(0)
        hi = np.uint64(0)
        for t in range(tail.shape[0]):
            e = tail[t]
            if e == 0:
                lo ^= H
            else:
                lo ^= H << np.uint64(e)
                hi ^= H >> np.uint64(64 - e)
        pos = E0 - n
        w2 = pos >> 6
        o2 = pos & 63
        if o2 == 0:
            prod[w2] ^= lo
            prod[w2 + 1] ^= hi
        else:
            prod[w2] ^= lo << np.uint64(o2)
            prod[w2 + 1] ^= (lo >> np.uint64(64 - o2)) | (hi << np.uint64(o2))
            if w2 + 2 < size:
                prod[w2 + 2] ^= hi >> np.uint64(64 - o2)


@nb.njit(cache=True)
def mulmod2(a, b, n, tail, chunk):
    W = a.shape[0]
    T = np.empty((256, W + 1), dtype=np.uint64)
    prod = np.zeros(2 * W + 2, dtype=np.uint64)
    _build_window(b, W, T)
    _mul_window(a, T, W, prod)
    _reduce(prod, n, tail, chunk)
    return prod[:W].copy()


@nb.njit(cache=True, inline='always')
def _parity(x):
    x ^= x >> np.uint64(32)
    x ^= x >> np.uint64(16)
    x ^= x >> np.uint64(8)
    x ^= x >> np.uint64(4)
    x ^= x >> np.uint64(2)
    x ^= x >> np.uint64(1)
    return x & np.uint64(1)


@nb.njit(cache=True, inline='always')
def _in_lambda2(acc, masks):
    for j in range(masks.shape[0]):
        par = np.uint64(0)
        for w in range(acc.shape[0]):
            par ^= _parity(acc[w] & masks[j, w])
        if par:
            return False
    return True


@nb.njit(cache=True)
def _horner2(coeffs, T, W, n, tail, chunk, acc, prod):
    for w in range(W):
        acc[w] = coeffs[0, w]
    for k in range(1, coeffs.shape[0]):
        _mul_window(acc, T, W, prod)
        _reduce(prod, n, tail, chunk)
        for w in range(W):
            acc[w] = prod[w] ^ coeffs[k, w]


@nb.njit(cache=True)
def horner2_batch(coeffs, pts, n, tail, chunk):
    """Evaluate one polynomial (highest coefficient first) at many points."""
    B, W = pts.shape
    out = np.empty((B, W), dtype=np.uint64)
    T = np.empty((256, W + 1), dtype=np.uint64)
    prod = np.zeros(2 * W + 2, dtype=np.uint64)
    acc = np.empty(W, dtype=np.uint64)
    for b in range(B):
        _build_window(pts[b], W, T)
        _horner2(coeffs, T, W, n, tail, chunk, acc, prod)
        for w in range(W):
            out[b, w] = acc[w]
    return out


@nb.njit(cache=True)
def gamma_check2(pc, qc, pts, masks, n, tail, chunk, need_q):
    """Per point: P(x) in Lambda, and (if need_q and that held) Q(x) in Lambda.

    Returns an int8 array: 0 fails P, 1 passes P only, 2 passes both.
    """
    B, W = pts.shape
    out = np.zeros(B, dtype=np.int8)
    T = np.empty((256, W + 1), dtype=np.uint64)
    prod = np.zeros(2 * W + 2, dtype=np.uint64)
    acc = np.empty(W, dtype=np.uint64)
    for b in range(B):
        _build_window(pts[b], W, T)
        _horner2(pc, T, W, n, tail, chunk, acc, prod)
        if not _in_lambda2(acc, masks):
            continue
        out[b] = 1
        if need_q:
            _horner2(qc, T, W, n, tail, chunk, acc, prod)
            if _in_lambda2(acc, masks):
                out[b] = 2
    return out


# ---- odd characteristic ----

@nb.njit(cache=True)
def _mulmod_p(a, b, mod, p, prod, out):
    n = a.shape[0]
    for i in range(2 * n - 1):
        prod[i] = 0
    for i in range(n):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(n):
            prod[i + j] += ai * b[j]
    for t in range(2 * n - 2, n - 1, -1):
        c = prod[t] % p
        if c:
            base = t - n
            for j in range(n):
                prod[base + j] -= c * mod[j]
    for i in range(n):
        out[i] = prod[i] % p


@nb.njit(cache=True)
def mulmod_p(a, b, mod, p):
    n = a.shape[0]
    prod = np.zeros(2 * n - 1, dtype=np.int64)
    out = np.empty(n, dtype=np.int64)
    _mulmod_p(a, b, mod, p, prod, out)
    return out


@nb.njit(cache=True)
def _horner_p(coeffs, x, mod, p, acc, tmp, prod):
    n = x.shape[0]
    for i in range(n):
        acc[i] = coeffs[0, i]
    for k in range(1, coeffs.shape[0]):
        _mulmod_p(acc, x, mod, p, prod, tmp)
        for i in range(n):
            acc[i] = (tmp[i] + coeffs[k, i]) % p


@nb.njit(cache=True)
def horner_p_batch(coeffs, pts, mod, p):
    B, n = pts.shape
    out = np.empty((B, n), dtype=np.int64)
    acc = np.empty(n, dtype=np.int64)
    tmp = np.empty(n, dtype=np.int64)
    prod = np.zeros(2 * n - 1, dtype=np.int64)
    for b in range(B):
        _horner_p(coeffs, pts[b], mod, p, acc, tmp, prod)
        out[b] = acc
    return out


@nb.njit(cache=True)
def _in_lambda_p(acc, rows, p):
    for j in range(rows.shape[0]):
        s = 0
        for i in range(acc.shape[0]):
            s += rows[j, i] * acc[i]
        if s % p:
            return False
    return True


@nb.njit(cache=True)
def gamma_check_p(pc, qc, pts, rows, mod, p, need_q):
    B, n = pts.shape
    out = np.zeros(B, dtype=np.int8)
    acc = np.empty(n, dtype=np.int64)
    tmp = np.empty(n, dtype=np.int64)
    prod = np.zeros(2 * n - 1, dtype=np.int64)
    for b in range(B):
        _horner_p(pc, pts[b], mod, p, acc, tmp, prod)
        if not _in_lambda_p(acc, rows, p):
            continue
        out[b] = 1
        if need_q:
            _horner_p(qc, pts[b], mod, p, acc, tmp, prod)
            if _in_lambda_p(acc, rows, p):
                out[b] = 2
    return out
