from .base import INFINITY, Curve, EvalAtInfinity, FunctionBasis, LocalCoordinates
from .gs import GSCurve, gs_genus
from .hermitian import HermitianCurve, hermitian_genus
from .rational import RationalCurve


def make_curve(kind, r=None, e=None, q=None, field_seed=0):
    if kind == "hermitian":
        return HermitianCurve(r, e, field_seed=field_seed)
    if kind == "gs":
        return GSCurve(r, e, field_seed=field_seed)
    if kind == "rational":
        return RationalCurve(q, field_seed=field_seed)
    raise ValueError(f"unknown tower kind {kind!r}")
