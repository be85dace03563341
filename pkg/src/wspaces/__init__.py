"""Exact arithmetic for the hyperplanes W_alpha of c and their duals in l1."""
from .seqcore import (
    DualVec, PrimalVec, GeometricTail, ReciprocalTail, ZeroTail,
    c_pairing, geometric, l1_norm, pairing, parse_dualvec, parse_primalvec, reciprocal, sup_norm, unit,
)
from .walpha import WAlphaSpace

__all__ = [
    "DualVec", "PrimalVec", "GeometricTail", "ReciprocalTail", "ZeroTail", "WAlphaSpace",
    "c_pairing", "geometric", "l1_norm", "pairing", "parse_dualvec", "parse_primalvec",
    "reciprocal", "sup_norm", "unit",
]
