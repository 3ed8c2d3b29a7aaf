"""Plain-text encodings shared by the file formats.

Field elements are base-p digit strings, lowest-degree coefficient first.
"""
import hashlib

import numpy as np

from .algebra.field import GF


def field_header(F):
    return f"field p={F.p} modulus={''.join(str(c) for c in F.modulus)}"


def parse_field_header(line):
    parts = parse_kv(line.split()[1:])
    p = int(parts["p"])
    modulus = [int(ch, 36) for ch in parts["modulus"]]
    return field_from(p, modulus)


_FIELDS = {}


def field_from(p, modulus):
    key = (p, tuple(modulus))
    if key not in _FIELDS:
        _FIELDS[key] = GF(p, modulus)
    return _FIELDS[key]


def parse_kv(tokens):
    out = {}
    for tok in tokens:
        k, _, v = tok.partition("=")
        out[k] = v
    return out


def vec_to_str(F, v):
    return " ".join(F.to_str(int(x)) for x in v)


def str_to_vec(F, s):
    return np.array([F.from_str(tok) for tok in s.split()], dtype=np.int64)


def digest(*parts):
    h = hashlib.sha256()
    for p in parts:
        h.update(repr(p).encode())
    return h.hexdigest()[:16]
