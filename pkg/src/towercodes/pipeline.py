"""Pre-coded folded codes end to end: encode, list decode, brute-force oracle,
parameter planning, and error sweeps."""
import csv
import io
import itertools
import json
import logging
import math
import time
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .algebra.linalg import CapExceeded, Empty, ENUM_CAP
from .code import CodeParams, InvalidParams, agreements, corrupt, folded_code
from .curves import gs_genus, hermitian_genus
from .decoder import DecodeParams, decoder, tau_closed
from .hse import EncodingFailure, HseParams, hse_encode, prune

log = logging.getLogger(__name__)

SWEEP_VERSION = 1


class Infeasible(ValueError):
    pass


@dataclass(frozen=True)
class PipelineConfig:
    kind: str
    m: int
    N: int
    s: int
    k: int
    delta: int
    zeta: str
    r: int = None
    e: int = None
    q: int = None
    lam: int = None
    c: str = None
    field_seed: int = 0
    key_seed: int = 0
    prune_cap: int = 10 ** 4

    @property
    def code_params(self):
        return CodeParams(self.kind, m=self.m, N=self.N, k=self.k, r=self.r, e=self.e, q=self.q,
                          field_seed=self.field_seed)

    @property
    def decode_params(self):
        return DecodeParams(self.code_params, self.s)

    @property
    def c_value(self):
        if self.c is not None:
            return Fraction(self.c)
        return Fraction(math.ceil(Fraction(2 * self.N * self.m, self.k)))

    @property
    def hse_params(self):
        cp = self.code_params
        return HseParams(q=cp.q, delta=self.delta, b=self.k // self.delta, zeta=Fraction(self.zeta),
                         lam=self.lam, c=self.c_value, field_seed=self.field_seed)

    @property
    def coarsen_factor(self):
        return self.delta // self.code_params.period

    def validate(self):
        dp = self.decode_params.validate()
        cp = dp.code
        if self.k % self.delta:
            raise InvalidParams(f"k={self.k} is not a multiple of delta={self.delta}")
        if self.delta % cp.period:
            raise InvalidParams(f"delta={self.delta} must be a multiple of the sigma period {cp.period}")
        if cp.kind == "hermitian" and self.delta != cp.q - 1:
            raise InvalidParams(f"hermitian needs delta = q-1 = {cp.q - 1}")
        hp = self.hse_params
        default = hp.default_lam()
        if self.lam is not None and self.lam < default:
            log.warning("polynomial degree %d is below the default %d (speed override)", self.lam, default)
        return self

    def rate(self):
        return Fraction(self.hse_params.msg_len, self.N * self.m)

    def to_json(self):
        return json.dumps({k: v for k, v in asdict(self).items() if v is not None}, indent=2)

    @classmethod
    def from_dict(cls, d):
        names = {f.name for f in fields(cls)}
        unknown = set(d) - names
        if unknown:
            raise ValueError(f"unknown config fields: {sorted(unknown)}")
        d = dict(d)
        for key in ("zeta", "c"):
            if key in d and d[key] is not None:
                d[key] = str(d[key])
        return cls(**d)


@dataclass
class DecodeReport:
    subspace: str
    dim_affine: int
    free_offsets: list
    level_counts: list
    candidates: list
    agreements: list
    accepted: list
    timings: dict = field(default_factory=dict)

    def summary(self):
        return (f"subspace {self.subspace} affine_dim={self.dim_affine} free={self.free_offsets} "
                f"levels={self.level_counts} candidates={len(self.candidates)} accepted={len(self.accepted)}")


class Pipeline:
    def __init__(self, cfg):
        self.cfg = cfg.validate()
        self.dp = cfg.decode_params
        self.code = folded_code(cfg.code_params)
        self.decoder = decoder(self.dp)
        self.hp = cfg.hse_params
        self.F = self.code.F
        self.t_min = self.dp.t_min

    def encode(self, key, x):
        return self.code.encode(hse_encode(key, x))

    def decode(self, key, rx):
        timings = {}
        t0 = time.perf_counter()
        dec = self.decoder
        Q = dec.interpolate(rx)
        W = dec.extract_subspace(Q)
        timings["subspace"] = time.perf_counter() - t0
        if W is Empty:
            return DecodeReport("empty", -1, [], [], [], [], [], timings)
        free = dec.free_offsets(Q)
        dim = W.as_affine().dim
        u = self.cfg.coarsen_factor
        if u > 1:
            W = W.coarsen(u)
        t1 = time.perf_counter()
        stats = {}
        xs = prune(key, W, cap=self.cfg.prune_cap, stats=stats)
        timings["prune"] = time.perf_counter() - t1
        t2 = time.perf_counter()
        agr = []
        if xs:
            cws = self.code.encode_many(np.stack(stats["encodings"]))
            agr = [int(a) for a in agreements(cws, rx)]
        accepted = [x for x, a in zip(xs, agr) if a >= self.t_min]
        timings["filter"] = time.perf_counter() - t2
        timings["total"] = time.perf_counter() - t0
        return DecodeReport(repr(W), dim, free, stats.get("level_counts", []), xs, agr, accepted, timings)

    def oracle_decode(self, key, rx, cap=ENUM_CAP):
        cws, X = codebook(self, key, cap)
        agr = agreements(cws, rx)
        return [X[i] for i in np.flatnonzero(agr >= self.t_min)]


_CODEBOOKS = {}


def codebook(pipe, key, cap=ENUM_CAP):
    """Every (message, codeword) of the composed code, for exhaustive checks."""
    hp = pipe.hp
    total = hp.q ** hp.msg_len
    if total > cap:
        raise CapExceeded(f"{total} messages exceeds cap {cap}")
    ident = (pipe.cfg, key.seed, key.params)
    if ident not in _CODEBOOKS:
        X, Y = [], []
        for x in itertools.product(range(hp.q), repeat=hp.msg_len):
            x = np.array(x, dtype=np.int64)
            try:
                Y.append(hse_encode(key, x))
            except EncodingFailure:
                continue
            X.append(x)
        cws = pipe.code.encode_many(np.array(Y)) if Y else np.zeros((0, pipe.code.N, pipe.code.m), dtype=np.int64)
        _CODEBOOKS[ident] = (cws, X)
    return _CODEBOOKS[ident]


@lru_cache(maxsize=8)
def pipeline(cfg):
    return Pipeline(cfg)


def pipeline_encode(cfg, key, x):
    return pipeline(cfg).encode(key, x)


def pipeline_decode(cfg, key, rx):
    return pipeline(cfg).decode(key, rx)


def oracle_decode(cfg, key, rx, cap=ENUM_CAP):
    return pipeline(cfg).oracle_decode(key, rx, cap)


def folded_rs_baseline(k, m, s, q, N, field_seed=0):
    """Decoder for folded Reed-Solomon over the rational function field."""
    cp = CodeParams("rational", m=m, N=N, k=k, q=q, field_seed=field_seed)
    return decoder(DecodeParams(cp, s))


# ---- reporting and planning ----
def describe(cfg):
    dp = cfg.decode_params
    cp = dp.code
    g = cp.g
    D = dp.D
    unknowns, equations = dp.freedoms()
    hp = cfg.hse_params
    rep = {
        "kind": cp.kind, "q": cp.q, "r": cp.r, "e": cp.e, "genus": g, "m": cp.m, "N": cp.N, "s": dp.s,
        "k": cp.k, "l": cp.l, "D": D, "t_min": dp.t_min, "errors_tolerated": cp.N - dp.t_min,
        "tau_closed": float(tau_closed(dp)), "code_rate": str(Fraction(cp.k, cp.N * cp.m)),
        "rate": str(cfg.rate()), "distance_bound": str(cp.N - Fraction(cp.l, cp.m)),
        "unknowns": unknowns, "equations": equations,
        "delta": cfg.delta, "zeta": str(hp.zeta), "lam": hp.lam, "c": str(hp.c),
        "msg_len": hp.msg_len, "genus_penalty": float(Fraction(g, cp.N * cp.m)),
        "compliance": hp.compliance(dp.s * cfg.coarsen_factor),
    }
    return rep


def place_count(kind, r, e):
    q = r * r
    if kind == "hermitian":
        return (q - 1) * r ** (e - 1)
    return (r - 1) * r ** e


def genus_of(kind, r, e):
    return hermitian_genus(r, e) if kind == "hermitian" else gs_genus(r, e)


def plan_params(rate, kind, r, size, tau=None, e=None, s=None, zd=1, max_s=6):
    """Search (e, m, s, N, k) for a valid config of at least the given rate that
    tolerates the most column errors."""
    rate = Fraction(rate).limit_denominator(10 ** 6)
    if tau is not None:
        top = s or max_s
        ceiling = Fraction(top, top + 1)
        if Fraction(tau).limit_denominator(10 ** 6) >= ceiling:
            raise Infeasible(f"error fraction {tau} is at or above the s/(s+1) ceiling {float(ceiling):.4f}")
    q = r * r
    if e is None:
        e = 2
        while place_count(kind, r, e) < size:
            e += 1
            if e > 8:
                raise Infeasible("no tower level has enough places")
    if kind == "hermitian" and r < 2 * e:
        raise Infeasible(f"hermitian level e={e} needs r >= {2 * e}")
    period = q - 1 if kind == "hermitian" else r - 1
    if kind == "hermitian":
        delta = q - 1
    else:
        delta = period * max(1, math.ceil((3 * zd + 1) / period))
    if 3 * zd >= delta:
        raise Infeasible("block too small for the pre-code")
    zeta = Fraction(zd, delta)
    best = None
    s_values = [s] if s else range(1, max_s + 1)
    for m in range(1, period + 1):
        maxwin = (r ** (e - 1) if kind == "hermitian" else r ** e) * (period // m)
        N = min(maxwin, max(1, math.ceil(size / m)))
        b = max(1, math.ceil(rate * N * m / (delta - 3 * zd)))
        for sv in s_values:
            if sv > m:
                continue
            cfg = PipelineConfig(kind=kind, r=r, e=e, m=m, N=N, s=sv, k=b * delta, delta=delta, zeta=str(zeta))
            try:
                cfg.decode_params.validate()
            except (InvalidParams, ValueError):
                continue
            dp = cfg.decode_params
            frac = Fraction(N - dp.t_min, N)
            key = (frac, -m, -sv)
            if best is None or key > best[0]:
                best = (key, cfg)
    if best is None:
        raise Infeasible(f"no valid configuration at rate {rate} with {kind} r={r} e={e}")
    frac, cfg = best[0][0], best[1]
    if tau is not None and frac < Fraction(tau).limit_denominator(10 ** 6):
        raise Infeasible(f"best achievable error fraction is {float(frac):.4f} < {tau}")
    rep = describe(cfg)
    rep["error_fraction"] = float(frac)
    rep["genus_ratio"] = genus_of(kind, r, e) / place_count(kind, r, e)
    return cfg, rep


# ---- sweeps ----
def sweep(cfg, key, error_counts, trials, seed, burst=False):
    pipe = pipeline(cfg)
    F = pipe.F
    out = io.StringIO()
    out.write(f"# towercodes sweep v{SWEEP_VERSION}\n")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["t", "trials", "recovery", "mean_list", "mean_ms"])
    root = np.random.SeedSequence(seed)
    for t, ss in zip(error_counts, root.spawn(len(error_counts))):
        hits, sizes, ms = 0, [], []
        for child in ss.spawn(trials):
            rng = np.random.default_rng(child)
            x = F.vrandom(rng, pipe.hp.msg_len)
            try:
                cw = pipe.encode(key, x)
            except EncodingFailure:
                continue
            rx = corrupt(F, cw, t, rng, burst=burst)
            t0 = time.perf_counter()
            rep = pipe.decode(key, rx)
            ms.append(1000 * (time.perf_counter() - t0))
            sizes.append(len(rep.accepted))
            hits += any(np.array_equal(x, a) for a in rep.accepted)
        n = len(ms)
        w.writerow([t, n, f"{hits / n:.4f}" if n else "nan", f"{np.mean(sizes):.3f}" if n else "nan",
                    f"{np.mean(ms):.1f}" if n else "nan"])
    return out.getvalue()
