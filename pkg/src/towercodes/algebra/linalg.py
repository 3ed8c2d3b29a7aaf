"""Dense exact linear algebra over table-backed fields.

Matrices are int64 numpy arrays of packed field elements.
"""
from dataclasses import dataclass, field as dc_field
import itertools

import numpy as np

ENUM_CAP = 1 << 24


class CapExceeded(Exception):
    pass


class _EmptyType:
    """Marker for an inconsistent system / empty solution set."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Empty"

    def __bool__(self):
        return False

    def __reduce__(self):
        return (_EmptyType, ())


Empty = _EmptyType()


def rref(F, M):
    """Reduced row-echelon form. Returns (R, rank, pivot_columns)."""
    R = np.array(M, dtype=np.int64, copy=True)
    if R.ndim != 2:
        raise ValueError("matrix must be 2-d")
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        lead = int(R[r, c])
        if lead != 1:
            R[r, c:] = F.vmul(R[r, c:], F.inv(lead))
        col = R[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            upd = F.vmul(col[hit][:, None], R[r, c:][None, :])
            R[hit, c:] = F.vsub(R[hit, c:], upd)
        pivots.append(c)
        r += 1
    return R, r, pivots


def rank(F, M):
    return rref(F, M)[1]


def nullspace(F, M):
    """Basis of {v : M v = 0}, one vector per free column (unit there)."""
    M = np.asarray(M, dtype=np.int64)
    cols = M.shape[1]
    R, rk, pivots = rref(F, M)
    pivset = set(pivots)
    free = [c for c in range(cols) if c not in pivset]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        if rk:
            basis[t, pivots] = F.vneg(R[:rk, f])
    return basis


def matmul(F, A, B):
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    vec = B.ndim == 1
    if vec:
        B = B[:, None]
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for k in range(A.shape[1]):
        a = A[:, k]
        if not a.any():
            continue
        out = F.vadd(out, F.vmul(a[:, None], B[k][None, :]))
    return out[:, 0] if vec else out


def vecmat(F, v, M):
    """Row vector times matrix."""
    return matmul(F, np.asarray(M).T, v)


@dataclass
class AffineSpace:
    F: object
    offset: np.ndarray
    basis: np.ndarray = dc_field(default=None)

    def __post_init__(self):
        self.offset = np.asarray(self.offset, dtype=np.int64)
        if self.basis is None:
            self.basis = np.zeros((0, len(self.offset)), dtype=np.int64)
        self.basis = np.asarray(self.basis, dtype=np.int64).reshape(-1, len(self.offset))

    @property
    def dim(self):
        return self.basis.shape[0]

    @property
    def length(self):
        return len(self.offset)

    def contains(self, y):
        d = self.F.vsub(np.asarray(y, dtype=np.int64), self.offset)
        if not d.any():
            return True
        if self.dim == 0:
            return False
        return rank(self.F, np.vstack([self.basis, d])) == self.dim

    def size(self):
        return self.F.order ** self.dim


def affine_solutions(F, M, rhs):
    """All x with M x = rhs, as an AffineSpace, or Empty."""
    M = np.asarray(M, dtype=np.int64)
    rhs = np.asarray(rhs, dtype=np.int64)
    rows, cols = M.shape
    aug = np.hstack([M, rhs.reshape(rows, 1)])
    R, rk, pivots = rref(F, aug)
    if pivots and pivots[-1] == cols:
        return Empty
    offset = np.zeros(cols, dtype=np.int64)
    if rk:
        offset[pivots] = R[:rk, cols]
    return AffineSpace(F, offset, nullspace(F, M))


def span_basis(F, vectors, length=None):
    """Row-reduced basis of the span of the given vectors."""
    V = np.asarray(vectors, dtype=np.int64)
    if V.size == 0:
        return np.zeros((0, length if length is not None else 0), dtype=np.int64)
    R, rk, _ = rref(F, V)
    return R[:rk]


def combinations(F, basis, chunk=None):
    """All F-linear combinations of the rows of basis, in a fixed order."""
    basis = np.asarray(basis, dtype=np.int64)
    d, n = basis.shape
    q = F.order
    total = q ** d
    coeffs = np.array(list(itertools.product(range(q), repeat=d)), dtype=np.int64).reshape(total, d)
    out = np.zeros((total, n), dtype=np.int64)
    for t in range(d):
        out = F.vadd(out, F.vmul(coeffs[:, t:t + 1], basis[t][None, :]))
    return out


def enumerate_affine(S, cap=ENUM_CAP):
    """Yield every point of the affine space S exactly once."""
    if S is Empty:
        return
    F = S.F
    total = F.order ** S.dim
    if total > cap:
        raise CapExceeded(f"{total} points exceeds cap {cap}")
    if S.dim == 0:
        yield S.offset.copy()
        return
    # split the basis so each chunk stays small
    head = min(S.dim, max(1, int(np.log(1 << 16) / np.log(F.order))))
    inner = F.vadd(combinations(F, S.basis[:head]), S.offset[None, :])
    rest = S.basis[head:]
    for coeffs in itertools.product(range(F.order), repeat=rest.shape[0]):
        shift = np.zeros(S.length, dtype=np.int64)
        for c, row in zip(coeffs, rest):
            if c:
                shift = F.vadd(shift, F.vmul(c, row))
        block = F.vadd(inner, shift[None, :])
        for row in block:
            yield row


def affine_points(S, cap=ENUM_CAP):
    """All points of S as one 2-d array."""
    if S is Empty:
        return np.zeros((0, 0), dtype=np.int64)
    F = S.F
    total = F.order ** S.dim
    if total > cap:
        raise CapExceeded(f"{total} points exceeds cap {cap}")
    return F.vadd(combinations(F, S.basis), S.offset[None, :])
