"""Norm attainment reports for W_alpha and the fixed-point-free shift on S+."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import NotInSPlus, ResultNotRepresentable, WitnessInvalid
from .seqcore import DualVec, PrimalVec, pairing
from .walpha import classify, membership


@dataclass(frozen=True)
class SPlusVec:
    """Nonnegative element of the unit sphere of l1."""

    vec: DualVec

    def __post_init__(self):
        v = self.vec
        if any(x < 0 for x in v.prefix) or v.tail.sign_pattern() not in ("zero", "positive"):
            raise NotInSPlus("entries must be nonnegative")
        if v.l1_norm() != 1:
            raise NotInSPlus(f"norm is {v.l1_norm()}, not 1")


def shift_splus(x) -> SPlusVec:
    """T(x(1), x(2), ...) = (0, x(1), x(2), ...)."""
    v = x.vec if isinstance(x, SPlusVec) else x
    return SPlusVec(SPlusVec(v).vec.shift(1))


def l1_distance(x: SPlusVec, y: SPlusVec) -> Fraction:
    from .linmaps import functional

    try:
        return (x.vec - y.vec).l1_norm()
    except ResultNotRepresentable:
        lo, hi = functional(x.vec, -y.vec).norm_bracket(64)
    if lo != hi:
        raise ResultNotRepresentable("distance not exactly computable for these tails")
    return lo


def has_fixed_point(x: SPlusVec) -> bool:
    # T x = x forces x(1) = 0 and x(n+1) = x(n), hence x = 0, which is not in S+
    return shift_splus(x).vec == x.vec


@dataclass(frozen=True)
class Remark52Report:
    norm_one: bool
    ii: str  # verified | refuted | unverified
    in_A: bool
    detail: str = ""


def remark52_report(alpha: DualVec, witness: Optional[PrimalVec] = None) -> Remark52Report:
    """Whether some unit vector x of W_alpha attains |alpha(x)| = |alpha| = 1."""
    norm = alpha.l1_norm()
    flag = classify(alpha).in_A
    if norm != 1:
        return Remark52Report(False, "refuted", flag, f"|alpha| = {norm}")
    if witness is None:
        return Remark52Report(True, "unverified", flag, "no witness supplied")
    if not membership(alpha, witness):
        raise WitnessInvalid("witness is not in W_alpha")
    if witness.sup_norm() != 1:
        raise WitnessInvalid(f"witness has norm {witness.sup_norm()}")
    value = pairing(alpha, witness)
    if abs(value) != 1:
        raise WitnessInvalid(f"|alpha(x)| = {abs(value)} < 1")
    return Remark52Report(True, "verified", flag, f"alpha(x) = {value}")
