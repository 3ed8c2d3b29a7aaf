"""Folded evaluation codes on sigma-orbits, and a column-error channel."""
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from . import textio
from .algebra.linalg import matmul
from .curves import LocalCoordinates, make_curve


class InvalidParams(ValueError):
    pass


@dataclass(frozen=True)
class CodeParams:
    kind: str
    m: int
    N: int
    k: int
    r: int = None
    e: int = None
    q: int = None
    field_seed: int = 0

    def __post_init__(self):
        if self.kind in ("hermitian", "gs"):
            if self.r is None or self.e is None:
                raise InvalidParams(f"{self.kind} needs r and e")
            object.__setattr__(self, "q", self.r * self.r)
        elif self.kind == "rational":
            if self.q is None:
                raise InvalidParams("rational needs q")
        else:
            raise InvalidParams(f"unknown tower kind {self.kind!r}")

    @property
    def curve(self):
        return _curve(self.kind, self.r, self.e, self.q, self.field_seed)

    @property
    def F(self):
        return self.curve.F

    @property
    def g(self):
        return self.curve.genus()

    @property
    def l(self):
        return self.k + 2 * self.g - 1

    @property
    def period(self):
        return self.curve.period

    def validate(self):
        m, N, k, l, q = self.m, self.N, self.k, self.l, self.q
        if k < 1:
            raise InvalidParams("k must be positive")
        if self.kind == "hermitian":
            if not 1 <= m <= q - 1:
                raise InvalidParams(f"need 1 <= m <= q-1, got m={m}")
            hi = self.r ** (self.e - 1) * ((q - 1) // m)
            if not (l <= m * N and N <= hi):
                raise InvalidParams(f"need l/m <= N <= {hi} (l={l}, m={m}, N={N})")
        elif self.kind == "gs":
            r = self.r
            if not 1 <= m <= r - 1:
                raise InvalidParams(f"need 1 <= m <= r-1, got m={m}")
            hi = r ** self.e * ((r - 1) // m)
            if not (l < m * N and N <= hi):
                raise InvalidParams(f"need l/m < N <= {hi} (l={l}, m={m}, N={N})")
        else:
            if not m * N < q:
                raise InvalidParams(f"need mN < q (m={m}, N={N}, q={q})")
            if not l < m * N:
                raise InvalidParams(f"need k <= mN (k={k})")
        return self

    def digest(self):
        return textio.digest(sorted(asdict(self).items()))

    def as_dict(self):
        return {k: v for k, v in asdict(self).items() if v is not None}


@lru_cache(maxsize=None)
def _curve(kind, r, e, q, field_seed):
    return make_curve(kind, r=r, e=e, q=q, field_seed=field_seed)


class FoldedCode:
    """Column i of a codeword is (f(P_i), f(sigma P_i), ..., f(sigma^{m-1} P_i))."""

    def __init__(self, params):
        self.params = params.validate()
        self.curve = params.curve
        self.F = params.F
        self.N, self.m, self.k = params.N, params.m, params.k
        self.windows = self.curve.orbit_sample(self.m, self.N)

    @cached_property
    def local(self):
        return LocalCoordinates(self.curve, self.k)

    @cached_property
    def basis(self):
        return self.curve.basis(self.params.l)

    @cached_property
    def eval_matrix(self):
        """(N*m, dim L(l)) values of the basis at every window place, row-major by column."""
        flat = [P for w in self.windows for P in w]
        return self.basis.eval_matrix(flat)

    @cached_property
    def generator(self):
        """(N*m, k): message -> flattened codeword."""
        return matmul(self.F, self.eval_matrix, self.local.kappa_matrix)

    def encode_raw(self, coeffs):
        """Codeword of the function with the given coordinates in the basis of L(l P_inf)."""
        v = matmul(self.F, self.eval_matrix, np.asarray(coeffs, dtype=np.int64))
        return v.reshape(self.N, self.m)

    def encode(self, msg):
        msg = np.asarray(msg, dtype=np.int64)
        if msg.shape != (self.k,):
            raise ValueError(f"message must have length {self.k}")
        return matmul(self.F, self.generator, msg).reshape(self.N, self.m)

    def encode_many(self, msgs):
        msgs = np.asarray(msgs, dtype=np.int64).reshape(-1, self.k)
        return matmul(self.F, msgs, self.generator.T).reshape(-1, self.N, self.m)

    def kappa(self, msg):
        return self.local.kappa(msg)

    def rate_and_distance(self):
        return rate_and_distance(self.params)


def rate_and_distance(params):
    """(rate k/(Nm), lower bound N - l/m on the number of nonzero columns)."""
    return Fraction(params.k, params.N * params.m), params.N - Fraction(params.l, params.m)


@lru_cache(maxsize=32)
def folded_code(params):
    return FoldedCode(params)


def agreement(cw, rx):
    return int(np.all(np.asarray(cw) == np.asarray(rx), axis=-1).sum(axis=-1))


def agreements(cws, rx):
    """Agreement of each codeword in a (B, N, m) stack with rx."""
    return np.all(cws == np.asarray(rx)[None], axis=2).sum(axis=1)


def corrupt(F, cw, t, rng, burst=False):
    """Replace exactly t columns by different values."""
    cw = np.asarray(cw, dtype=np.int64)
    N, m = cw.shape
    if not 0 <= t <= N:
        raise ValueError(f"error count {t} outside [0, {N}]")
    out = cw.copy()
    if t == 0:
        return out
    if burst:
        start = int(rng.integers(0, N - t + 1))
        pos = np.arange(start, start + t)
    else:
        pos = rng.choice(N, size=t, replace=False)
    for i in pos:
        delta = np.zeros(m, dtype=np.int64)
        while not delta.any():
            delta = F.vrandom(rng, m)
        out[i] = F.vadd(out[i], delta)
    return out


# ---- file format ----
def codeword_to_text(params, cw, kind="codeword"):
    F = params.F
    lines = [f"{kind} N={params.N} m={params.m} q={params.q} params={params.digest()}"]
    lines += [textio.vec_to_str(F, col) for col in np.asarray(cw)]
    return "\n".join(lines) + "\n"


def codeword_from_text(params, text):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    hdr = textio.parse_kv(lines[0].split()[1:])
    if hdr.get("params") != params.digest():
        raise ValueError("codeword was written for different parameters")
    cw = np.array([textio.str_to_vec(params.F, ln) for ln in lines[1:]], dtype=np.int64)
    if cw.shape != (params.N, params.m):
        raise ValueError(f"expected {params.N} columns of {params.m} symbols")
    return cw
