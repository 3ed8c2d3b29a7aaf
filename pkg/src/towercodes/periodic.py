"""Block-periodic affine subspaces of F_q^k.

Coordinates are cut into blocks of width delta (the last block may be
shorter). Given the coordinates before block i, block i ranges over the
coset C_i * prefix + v_i + span(U) with one fixed subspace U of F_q^delta.
Blocks are numbered from 1 in the public methods.
"""
import numpy as np

from .algebra.linalg import (AffineSpace, CapExceeded, Empty, ENUM_CAP, combinations, matmul,
                             nullspace, rank, span_basis)
from . import textio


def proj_range(y, t1, t2):
    """Coordinates t1..t2 inclusive, 1-based."""
    if not 1 <= t1 <= t2 <= len(y):
        raise IndexError(f"projection [{t1},{t2}] out of range for length {len(y)}")
    return y[t1 - 1:t2]


class PeriodicSubspace:
    def __init__(self, F, delta, U, C, v, k=None):
        self.F = F
        self.delta = delta
        self.b = len(v)
        self.k = k if k is not None else self.b * delta
        if not (self.b - 1) * delta < self.k <= self.b * delta:
            raise ValueError("block count does not match length")
        self.U = span_basis(F, np.asarray(U, dtype=np.int64).reshape(-1, delta), delta)
        self.C = [np.asarray(c, dtype=np.int64).reshape(self.width(i + 1), i * delta) for i, c in enumerate(C)]
        self.v = [np.asarray(x, dtype=np.int64).reshape(self.width(i + 1)) for i, x in enumerate(v)]
        self._checks = {}

    def __repr__(self):
        return f"PeriodicSubspace(q={self.F.order}, delta={self.delta}, b={self.b}, k={self.k}, dimU={self.dim_U})"

    @property
    def dim_U(self):
        return self.U.shape[0]

    def width(self, i):
        return min(self.delta, self.k - (i - 1) * self.delta)

    def span_rows(self, i):
        """Basis of span(U) restricted to the width of block i."""
        w = self.width(i)
        if w == self.delta:
            return self.U
        return span_basis(self.F, self.U[:, :w], w) if self.dim_U else self.U[:, :w]

    def _check_matrix(self, w):
        # rows h with h . u = 0 for u in span(U) (restricted to width w)
        if w not in self._checks:
            rows = self.U[:, :w]
            if rows.shape[0] == 0:
                self._checks[w] = np.eye(w, dtype=np.int64)
            else:
                self._checks[w] = nullspace(self.F, rows)
        return self._checks[w]

    def block_offset(self, prefix, i):
        """C_i * prefix + v_i."""
        F = self.F
        prefix = np.asarray(prefix, dtype=np.int64)
        if len(prefix) != (i - 1) * self.delta:
            raise ValueError("prefix length does not match block index")
        if i == 1:
            return self.v[0].copy()
        return F.vadd(matmul(F, self.C[i - 1], prefix), self.v[i - 1])

    def block_extensions(self, prefix, i):
        """All q^dim(U) possible values of block i after the given prefix."""
        base = self.block_offset(prefix, i)
        rows = self.span_rows(i)
        if rows.shape[0] == 0:
            return base[None, :]
        return self.F.vadd(combinations(self.F, rows), base[None, :])

    def membership(self, y):
        return bool(self.contains_many(np.asarray(y, dtype=np.int64)[None, :])[0])

    def contains_many(self, Y):
        """Vectorized membership for the rows of Y."""
        F = self.F
        Y = np.asarray(Y, dtype=np.int64)
        if Y.shape[1] != self.k:
            raise ValueError("vector length does not match")
        ok = np.ones(Y.shape[0], dtype=bool)
        for i in range(1, self.b + 1):
            lo = (i - 1) * self.delta
            w = self.width(i)
            pred = np.broadcast_to(self.v[i - 1], (Y.shape[0], w))
            if i > 1:
                pred = F.vadd(matmul(F, Y[:, :lo], self.C[i - 1].T), pred)
            res = F.vsub(Y[:, lo:lo + w], pred)
            H = self._check_matrix(w)
            if H.shape[0]:
                ok &= ~matmul(F, res, H.T).any(axis=1)
        return ok

    def as_affine(self, cap=None):
        """The same point set as one flat affine space."""
        F = self.F
        offset = np.zeros(0, dtype=np.int64)
        basis = np.zeros((0, 0), dtype=np.int64)
        for i in range(1, self.b + 1):
            w = self.width(i)
            new_off = self.block_offset(offset, i)
            if i > 1 and basis.shape[0]:
                ext = matmul(F, basis, self.C[i - 1].T)
            else:
                ext = np.zeros((basis.shape[0], w), dtype=np.int64)
            old = np.hstack([basis, ext])
            rows = self.span_rows(i)
            fresh = np.hstack([np.zeros((rows.shape[0], basis.shape[1]), dtype=np.int64), rows])
            basis = np.vstack([old, fresh])
            offset = np.concatenate([offset, new_off])
        if cap is not None and F.order ** basis.shape[0] > cap:
            raise CapExceeded("affine dimension too large")
        return AffineSpace(F, offset, basis)

    def coarsen(self, u):
        """Regroup into superblocks of u blocks; same point set."""
        if u < 1 or self.b % u:
            raise ValueError(f"{u} does not divide the block count {self.b}")
        if u == 1:
            return self
        F, d = self.F, self.delta
        big = d * u
        nb = self.b // u
        Us, Cs, vs = [], [], []
        for I in range(nb):
            first = I * u + 1
            pre = (first - 1) * d
            # affine part: superblock as a function of the prefix, free parts zero
            Cp = np.zeros((0, pre), dtype=np.int64)
            vp = np.zeros(0, dtype=np.int64)
            dirs = np.zeros((0, 0), dtype=np.int64)
            for t in range(u):
                i = first + t
                w = self.width(i)
                Ci = self.C[i - 1]
                Cpre, Cin = Ci[:, :pre], Ci[:, pre:]
                rowC = Cpre if t == 0 or Cin.shape[1] == 0 else F.vadd(Cpre, matmul(F, Cin, Cp))
                rowv = self.v[i - 1] if Cin.shape[1] == 0 else F.vadd(self.v[i - 1], matmul(F, Cin, vp))
                if dirs.shape[0] and Cin.shape[1]:
                    ext = matmul(F, dirs, Cin.T)
                else:
                    ext = np.zeros((dirs.shape[0], w), dtype=np.int64)
                rows = self.span_rows(i)
                dirs = np.vstack([np.hstack([dirs, ext]),
                                  np.hstack([np.zeros((rows.shape[0], dirs.shape[1]), dtype=np.int64), rows])])
                Cp = np.vstack([Cp, rowC])
                vp = np.concatenate([vp, rowv])
            Us.append(span_basis(F, dirs, dirs.shape[1]) if dirs.shape[0] else dirs)
            Cs.append(Cp)
            vs.append(vp)
        U0 = Us[0]
        for I, UI in enumerate(Us):
            w = UI.shape[1]
            ref = U0[:, :w] if w < big else U0
            if not _same_span(F, ref, UI):
                raise ValueError("superblock couplings differ between superblocks; no common subspace")
        return PeriodicSubspace(F, big, U0 if U0.shape[0] else np.zeros((0, big), dtype=np.int64), Cs, vs, self.k)

    def points(self, cap=ENUM_CAP):
        """Every member, by iterated block extensions (oracle support)."""
        F = self.F
        if F.order ** (self.dim_U * self.b) > cap:
            raise CapExceeded("too many points")
        cur = np.zeros((1, 0), dtype=np.int64)
        for i in range(1, self.b + 1):
            nxt = []
            for pre in cur:
                ext = self.block_extensions(pre, i)
                nxt.append(np.hstack([np.broadcast_to(pre, (ext.shape[0], len(pre))), ext]))
            cur = np.vstack(nxt)
        return cur

    # ---- text serialization ----
    def to_text(self):
        F = self.F
        lines = [textio.field_header(F),
                 f"periodic q={F.order} delta={self.delta} b={self.b} k={self.k} dimU={self.dim_U}"]
        for row in self.U:
            lines.append("U " + textio.vec_to_str(F, row))
        for i in range(1, self.b + 1):
            lines.append(f"block {i} width {self.width(i)}")
            lines.append("v " + textio.vec_to_str(F, self.v[i - 1]))
            for row in self.C[i - 1]:
                lines.append("C " + textio.vec_to_str(F, row))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        F = textio.parse_field_header(lines[0])
        if lines[1].strip() == "periodic empty":
            return Empty
        hdr = textio.parse_kv(lines[1].split()[1:])
        delta, b, k = int(hdr["delta"]), int(hdr["b"]), int(hdr["k"])
        U, C, v = [], [], []
        for ln in lines[2:]:
            tag, _, rest = ln.partition(" ")
            if tag == "U":
                U.append(textio.str_to_vec(F, rest))
            elif tag == "block":
                C.append([])
            elif tag == "v":
                v.append(textio.str_to_vec(F, rest))
            elif tag == "C":
                C[-1].append(textio.str_to_vec(F, rest))
        U = np.array(U, dtype=np.int64).reshape(-1, delta)
        C = [np.array(c, dtype=np.int64).reshape(len(x), i * delta) for i, (c, x) in enumerate(zip(C, v))]
        return cls(F, delta, U, C, v, k)


def empty_text(F):
    return textio.field_header(F) + "\nperiodic empty\n"


def _same_span(F, A, B):
    if A.shape[0] != B.shape[0]:
        ra = rank(F, A) if A.shape[0] else 0
        rb = rank(F, B) if B.shape[0] else 0
        if ra != rb:
            return False
    if A.shape[0] == 0:
        return B.shape[0] == 0 or rank(F, B) == 0
    ra = rank(F, A)
    return rank(F, np.vstack([A, B])) == ra and rank(F, B) == ra


def random_periodic(F, delta, b, dim_u, rng, k=None, coupling=True):
    """Random instance; couplings shift-invariant so that coarsening is exact."""
    k = k if k is not None else b * delta
    U = F.vrandom(rng, (dim_u, delta)) if dim_u else np.zeros((0, delta), dtype=np.int64)
    # C_i[r, c] depends only on (global row - global col) and the column offset
    kern = F.vrandom(rng, (2 * delta * b, delta)) if coupling else np.zeros((2 * delta * b, delta), dtype=np.int64)
    C, v = [], []
    for i in range(1, b + 1):
        w = min(delta, k - (i - 1) * delta)
        lo = (i - 1) * delta
        Ci = np.zeros((w, lo), dtype=np.int64)
        for r in range(w):
            for c in range(lo):
                Ci[r, c] = kern[lo + r - c, c % delta]
        C.append(Ci)
        v.append(F.vrandom(rng, w))
    return PeriodicSubspace(F, delta, U, C, v, k)
