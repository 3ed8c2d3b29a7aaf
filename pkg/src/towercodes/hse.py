"""Subspace-evasive pre-coding.

A vector y in F_q^k, cut into b blocks of width delta, is in H when for every
prefix y_1..y_i both P_i(rho_i(prefix)) and Q_i(rho_i(prefix)) lie in Lambda_i:
the elements of GF(q^{i delta}) whose last zeta*delta rho-coordinates vanish.
Messages are embedded by appending to each block the least beta in F_q^{3 zeta delta}
that keeps the prefix in H.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import textio
from .algebra.field import field_of_order
from .algebra.linalg import CapExceeded, Empty, ENUM_CAP
from .algebra.tower import extension_tower


class EncodingFailure(ArithmeticError):
    def __init__(self, block):
        super().__init__(f"no admissible beta for block {block}")
        self.block = block


class NotInRange(ValueError):
    pass


class CandidateExplosion(RuntimeError):
    pass


@dataclass(frozen=True)
class HseParams:
    q: int
    delta: int
    b: int
    zeta: Fraction
    lam: int = None
    c: Fraction = Fraction(1)
    field_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "zeta", Fraction(self.zeta))
        object.__setattr__(self, "c", Fraction(self.c))
        zd = self.zeta * self.delta
        if zd.denominator != 1 or zd <= 0:
            raise ValueError(f"zeta*delta = {zd} must be a positive integer")
        if 3 * zd > self.delta:
            raise ValueError("need 3*zeta*delta <= delta")
        if self.msg_len <= 0:
            raise ValueError("message length (1 - 3 zeta) k must be positive")
        if self.lam is None:
            object.__setattr__(self, "lam", self.default_lam())
        if self.lam < 1:
            raise ValueError("polynomial degree must be positive")

    @property
    def k(self):
        return self.b * self.delta

    @property
    def zd(self):
        return int(self.zeta * self.delta)

    @property
    def beta_len(self):
        return 3 * self.zd

    @property
    def chunk(self):
        """Message symbols carried per block."""
        return self.delta - self.beta_len

    @property
    def msg_len(self):
        return self.b * (self.delta - 3 * int(self.zeta * self.delta))

    @property
    def Fq(self):
        return field_of_order(self.q, self.field_seed)

    def default_lam(self):
        return max(6 * self.k, math.ceil(self.c * self.k) + 1)

    def compliance(self, s):
        """The asymptotic preconditions, evaluated at these sizes."""
        zd = self.zd
        lhs = self.q ** zd
        rhs = float(2 * self.c * self.q * self.k) ** (10 / 9)
        return {
            "s < zeta*delta/10": s < Fraction(zd, 10),
            "q^(zeta*delta) >= (2cqk)^(10/9)": lhs >= rhs,
            "q^(zeta*delta)": lhs,
            "(2cqk)^(10/9)": round(rhs, 2),
        }


def _random_element(E, rng, nonzero=False):
    while True:
        if E.p == 2:
            nbytes = (E.n + 7) // 8
            a = int.from_bytes(rng.bytes(nbytes), "little") & ((1 << E.n) - 1)
        else:
            a = E.big.from_digits(rng.integers(0, E.p, E.n).tolist())
        if a or not nonzero:
            return a


class HseKey:
    def __init__(self, params, seed, P, Q):
        self.params = params
        self.seed = seed
        self.tower = extension_tower(params.Fq, params.delta, params.b, seed=params.field_seed)
        self.P = [list(map(int, c)) for c in P]   # ascending degree
        self.Q = [list(map(int, c)) for c in Q]
        for cs in self.P + self.Q:
            if len(cs) != params.lam + 1 or cs[-1] == 0:
                raise ValueError("key polynomials must have degree exactly lambda")

    def __eq__(self, other):
        return isinstance(other, HseKey) and self.params == other.params and self.P == other.P and self.Q == other.Q

    @cached_property
    def _kernel(self):
        out = []
        for E, P, Q in zip(self.tower, self.P, self.Q):
            out.append((E.to_kernel(P[::-1]), E.to_kernel(Q[::-1]), E.lambda_functionals(self.params.zd)))
        return out

    def level(self, i):
        """(field, P kernel, Q kernel, Lambda functionals) for level i (1-based)."""
        pc, qc, lam = self._kernel[i - 1]
        return self.tower[i - 1], pc, qc, lam

    def gamma(self, i, prefixes, need_q=True):
        """0/1/2 per prefix row: fails P, passes P only, passes both."""
        E, pc, qc, lam = self.level(i)
        pts = E.rho_batch(np.asarray(prefixes, dtype=np.int64).reshape(-1, i * self.params.delta))
        return E.gamma_check(pc, qc, pts, lam, need_q)


def sample_key(params, seed):
    rng = np.random.default_rng(seed)
    tower = extension_tower(params.Fq, params.delta, params.b, seed=params.field_seed)
    P, Q = [], []
    for E in tower:
        for fam in (P, Q):
            cs = [_random_element(E, rng) for _ in range(params.lam)]
            cs.append(_random_element(E, rng, nonzero=True))
            fam.append(cs)
    return HseKey(params, seed, P, Q)


def lambda_member(key, i, a):
    E = key.tower[i - 1]
    return E.in_lambda(a, key.params.zd)


def poly_value(key, i, which, a):
    """Scalar evaluation of P_i or Q_i at a (reference path)."""
    E = key.tower[i - 1]
    F = E.big
    acc = 0
    for c in reversed((key.P if which == "P" else key.Q)[i - 1]):
        acc = F.add(F.mul(acc, a), c)
    return acc


def h_member(key, y):
    return bool(h_member_many(key, np.asarray(y, dtype=np.int64)[None, :])[0])


def h_member_many(key, Y):
    Y = np.asarray(Y, dtype=np.int64)
    d = key.params.delta
    if Y.shape[1] != key.params.k:
        raise ValueError("vector length does not match")
    ok = np.ones(Y.shape[0], dtype=bool)
    for i in range(1, key.params.b + 1):
        idx = np.flatnonzero(ok)
        if idx.size == 0:
            break
        ok[idx] = key.gamma(i, Y[idx, :i * d]) == 2
    return ok


def split_message(params, x):
    x = np.asarray(x, dtype=np.int64)
    if x.shape != (params.msg_len,):
        raise ValueError(f"message must have length {params.msg_len}")
    return x.reshape(params.b, params.chunk)


def strip(params, y):
    """The message symbols of y (beta blocks removed)."""
    y = np.asarray(y, dtype=np.int64).reshape(params.b, params.delta)
    return y[:, :params.chunk].reshape(-1)


def _betas(q, length, lo, hi):
    """Betas with lexicographic index lo..hi-1, first coordinate most significant."""
    idx = np.arange(lo, hi, dtype=np.int64)
    out = np.empty((idx.size, length), dtype=np.int64)
    for j in range(length):
        out[:, j] = (idx // q ** (length - 1 - j)) % q
    return out


def _shifted_points(E, base, positions, betas):
    """Kernel form of rho(base + betas placed at positions)."""
    pts = np.repeat(base, betas.shape[0], axis=0)
    for c, pos in enumerate(positions):
        contrib = E.table_k[pos, betas[:, c]]
        if E.p == 2:
            pts ^= contrib
        else:
            pts += contrib
    return pts if E.p == 2 else pts % E.p


def _first_beta(key, i, prefix, limit=None, step=128):
    """Lexicographic index of the least beta completing block i of prefix, or None.

    prefix holds blocks 1..i with block i's beta slots ignored; only indices
    below limit are searched.
    """
    params = key.params
    q, d, bl = params.q, params.delta, params.beta_len
    E, pc, qc, lam = key.level(i)
    prefix = prefix.copy()
    prefix[i * d - bl:i * d] = 0
    base = E.rho_batch(prefix[None, :])
    positions = list(range(i * d - bl, i * d))
    total = q ** bl if limit is None else limit
    lo = 0
    while lo < total:
        hi = min(total, lo + step)
        betas = _betas(q, bl, lo, hi)
        res = E.gamma_check(pc, qc, _shifted_points(E, base, positions, betas), lam, True)
        hit = np.flatnonzero(res == 2)
        if hit.size:
            return lo + int(hit[0])
        lo = hi
    return None


def _beta_index(q, beta):
    idx = 0
    for c in beta:
        idx = idx * q + int(c)
    return idx


def hse_encode(key, x):
    params = key.params
    q, d, bl = params.q, params.delta, params.beta_len
    xs = split_message(params, x)
    y = np.zeros(0, dtype=np.int64)
    for i in range(1, params.b + 1):
        y = np.concatenate([y, xs[i - 1], np.zeros(bl, dtype=np.int64)])
        idx = _first_beta(key, i, y)
        if idx is None:
            raise EncodingFailure(i)
        y[-bl:] = _betas(q, bl, idx, idx + 1)[0]
    return y


def hse_decode(key, y):
    """x with hse_encode(x) = y; each beta must be the least admissible one."""
    params = key.params
    y = np.asarray(y, dtype=np.int64)
    if y.shape != (params.k,):
        raise ValueError(f"vector must have length {params.k}")
    d, bl = params.delta, params.beta_len
    for i in range(1, params.b + 1):
        want = _beta_index(params.q, y[i * d - bl:i * d])
        if _first_beta(key, i, y[:i * d], limit=want + 1) != want:
            raise NotInRange(f"block {i} does not carry the least admissible beta")
    return strip(params, y)


def prune(key, W, cap=10 ** 4, stats=None):
    """All x with hse_encode(x) in W, found level by level."""
    params = key.params
    if W is Empty:
        return []
    if W.delta != params.delta or W.k != params.k:
        raise ValueError("subspace period or length does not match the key")
    d = params.delta
    if params.q ** W.dim_U > ENUM_CAP:
        raise CapExceeded("block extension count too large")
    cur = np.zeros((1, 0), dtype=np.int64)
    counts = []
    for i in range(1, params.b + 1):
        ext = []
        for pre in cur:
            blocks = W.block_extensions(pre, i)
            ext.append(np.hstack([np.broadcast_to(pre, (blocks.shape[0], pre.size)), blocks]))
        if not ext:
            counts.append(0)
            cur = np.zeros((0, i * d), dtype=np.int64)
            continue
        cand = np.vstack(ext)
        cur = cand[key.gamma(i, cand) == 2]
        counts.append(int(cur.shape[0]))
        if cur.shape[0] > cap:
            raise CandidateExplosion(f"{cur.shape[0]} candidates survive level {i} (cap {cap})")
    if stats is not None:
        stats["level_counts"] = counts
    out = []
    for y in cur:
        try:
            out.append((hse_decode(key, y), y))
        except NotInRange:
            pass
    out.sort(key=lambda xy: tuple(xy[0]))
    if stats is not None:
        stats["encodings"] = [y for _, y in out]
    return [x for x, _ in out]


def verify_evasive(key, source, trials, cap=10 ** 4):
    """Largest prefix intersections of H with subspaces drawn from source()."""
    params = key.params
    b = params.b
    level_max = [0] * b
    final_max = 0
    list_max = 0
    for _ in range(trials):
        W = source()
        stats = {}
        xs = prune(key, W, cap=cap, stats=stats)
        for i, cnt in enumerate(stats.get("level_counts", [0] * b)):
            level_max[i] = max(level_max[i], cnt)
        final_max = max(final_max, stats.get("level_counts", [0])[-1])
        list_max = max(list_max, len(xs))
    c = params.c
    return {
        "trials": trials,
        "level_max": level_max,
        "intersection_max": final_max,
        "list_max": list_max,
        "ref_L": float(c * params.k),
        "ref_ell": float(20 * c / params.zeta),
    }


# ---- key file ----
def key_to_text(key):
    p = key.params
    F = p.Fq
    lines = [f"hsekey q={p.q} delta={p.delta} b={p.b} zeta={p.zeta.numerator}/{p.zeta.denominator} "
             f"lam={p.lam} c={p.c.numerator}/{p.c.denominator} seed={key.seed} field_seed={p.field_seed}",
             textio.field_header(F)]
    for i, E in enumerate(key.tower):
        lines.append(f"level {i + 1} modulus={''.join(str(c) for c in E.big.modulus)}")
        lines.append("P " + " ".join(E.big.to_str(a) for a in key.P[i]))
        lines.append("Q " + " ".join(E.big.to_str(a) for a in key.Q[i]))
    return "\n".join(lines) + "\n"


def key_from_text(text):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    hdr = textio.parse_kv(lines[0].split()[1:])
    params = HseParams(q=int(hdr["q"]), delta=int(hdr["delta"]), b=int(hdr["b"]),
                       zeta=Fraction(hdr["zeta"]), lam=int(hdr["lam"]), c=Fraction(hdr["c"]),
                       field_seed=int(hdr["field_seed"]))
    F = textio.parse_field_header(lines[1])
    if F != params.Fq:
        raise ValueError("key was written for a different base field")
    tower = extension_tower(params.Fq, params.delta, params.b, seed=params.field_seed)
    P, Q = [], []
    level = None
    for ln in lines[2:]:
        tag, _, rest = ln.partition(" ")
        if tag == "level":
            i = int(rest.split()[0])
            level = tower[i - 1]
            mod = textio.parse_kv(rest.split()[1:])["modulus"]
            if mod != "".join(str(c) for c in level.big.modulus):
                raise ValueError(f"level {i} field differs from this build")
        elif tag == "P":
            P.append([level.big.from_str(t) for t in rest.split()])
        elif tag == "Q":
            Q.append([level.big.from_str(t) for t in rest.split()])
    return HseKey(params, int(hdr["seed"]), P, Q)
