"""Hyperplanes W_alpha = {x in c : lim x = sum alpha(i) x(i)} and their invariants."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .seqcore import DualVec, PrimalVec, Q, Scalar, pairing

YES, NO, UNDECIDED = "yes", "no", "undecided"
STABLE, FAILS = "stable-w*-FPP", "fails-stable-w*-FPP"


@dataclass(frozen=True)
class WAlphaSpace:
    alpha: DualVec

    def __post_init__(self):
        if self.alpha.l1_norm() > 1:
            raise DomainError(f"alpha must lie in the unit ball, norm is {self.alpha.l1_norm()}")

    def contains(self, x: PrimalVec) -> bool:
        return membership(self, x)


def _space(s) -> WAlphaSpace:
    return s if isinstance(s, WAlphaSpace) else WAlphaSpace(s)


def membership(space, x: PrimalVec) -> bool:
    return x.limit == pairing(_space(space).alpha, x)


def rstar(space) -> Fraction:
    # the basis of l1 is w*-convergent to alpha, so the cluster set is {alpha}
    return _space(space).alpha.l1_norm()


@dataclass(frozen=True)
class Bracket:
    """Closed interval [lo, hi]; ``exact`` when the endpoints coincide."""

    lo: Fraction
    hi: Fraction

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> Fraction:
        if not self.exact:
            raise ValueError(f"value only known to lie in [{self.lo}, {self.hi}]")
        return self.lo

    def __str__(self) -> str:
        return str(self.lo) if self.exact else f"[{self.lo}, {self.hi}]"


def projection_constant_bound(alpha: DualVec, depth: int = 0) -> Bracket:
    """1 + (1/(1+|a|) + sum_j |a_j| / (1+|a| - 2|a_j|))^-1.

    The sum diverges exactly when alpha = +-e_j*, and the bound is then 1.
    For infinite support the series is enclosed: each tail term is squeezed
    between |a_j|/D and |a_j|/(D - 2 max_tail), D = 1 + |a|; summing the
    first ``depth`` terms explicitly tightens the enclosure.
    """
    norm = alpha.l1_norm()
    if norm > 1:
        raise DomainError("alpha outside the unit ball")
    D = 1 + norm
    K = max(len(alpha.prefix), depth)
    head = [abs(alpha.entry(j)) for j in range(1, K + 2)]
    if any(D - 2 * a == 0 for a in head):
        return Bracket(Fraction(1), Fraction(1))
    S = Fraction(1) / D + sum((a / (D - 2 * a) for a in head[:K]), Fraction(0))
    if alpha.finite_support:
        v = 1 + 1 / S
        return Bracket(v, v)
    tail = alpha.abs_tail_from(K + 1)
    # tail magnitudes are non-increasing, so the first tail term is the largest
    top = head[K]
    s_lo = S + tail / D
    s_hi = S + tail / (D - 2 * top)
    return Bracket(1 + 1 / s_hi, 1 + 1 / s_lo)


def bm_distance_c(r: Scalar) -> Fraction:
    """Banach-Mazur distance d(c, W_{r e_1*}) = (3 - r)/(1 + r)."""
    r = Q(r)
    if not 0 <= r <= 1:
        raise DomainError(f"r must lie in [0, 1], got {r}")
    return (3 - r) / (1 + r)


def _abs_multiset(values) -> Counter:
    return Counter(abs(v) for v in values)


def isometric_equiv(a: DualVec, b: DualVec) -> str:
    if a.l1_norm() != b.l1_norm():
        return NO
    if a.finite_support and b.finite_support:
        same = _abs_multiset(v for v in a.prefix if v) == _abs_multiset(v for v in b.prefix if v)
        return YES if same else NO
    K = max(len(a.prefix), len(b.prefix))
    if a.restrict_from(K + 1) == b.restrict_from(K + 1):
        return YES if _abs_multiset(a.head(K)) == _abs_multiset(b.head(K)) else NO
    return UNDECIDED


def _sign_condition(alpha: DualVec) -> bool:
    # supp finite, or finitely many negatives with infinitely many positives
    return alpha.finite_support or (alpha.negatives_finite and not alpha.positives_finite)


def contains_c(space) -> bool:
    alpha = _space(space).alpha
    return alpha.l1_norm() == 1 and alpha.negatives_finite and alpha.zeros_infinite


@dataclass(frozen=True)
class FPPVerdict:
    verdict: str
    rstar: Fraction
    eps: Fraction | None = None
    r_needed: Fraction | None = None


def almost_isometric_r(eps: Scalar) -> Fraction:
    """Least r with (3 - r)/(1 + r) <= 1 + eps."""
    eps = Q(eps)
    if eps <= 0:
        raise DomainError("eps must be positive")
    return max(Fraction(0), (2 - eps) / (2 + eps))


def fpp_verdict(space, eps: Scalar | None = None) -> FPPVerdict:
    r = rstar(space)
    if r < 1:
        return FPPVerdict(STABLE, r)
    if eps is None:
        return FPPVerdict(FAILS, r)
    return FPPVerdict(FAILS, r, Q(eps), almost_isometric_r(eps))


@dataclass(frozen=True)
class ClassReport:
    in_C: bool
    in_C0: bool
    in_A: bool
    in_A0: bool
    in_M: bool
    in_G: str
    notes: str = ""

    def as_dict(self) -> dict:
        return {
            "C": self.in_C, "C0": self.in_C0, "A": self.in_A,
            "A0": self.in_A0, "M": self.in_M, "G": self.in_G,
        }


def classify(space) -> ClassReport:
    alpha = _space(space).alpha
    norm = alpha.l1_norm()
    support = alpha.support() if alpha.finite_support else None
    in_M = support is not None and len(support) <= 1
    in_C = in_M and norm == 1
    in_C0 = support == []
    sign_ok = _sign_condition(alpha)
    in_A = norm == 1 and sign_ok
    in_A0 = sign_ok
    # a W_alpha space is a G-space exactly when it is an M-space
    in_G = YES if in_M else NO
    notes = []
    if not alpha.negatives_finite:
        notes.append("infinitely many negative entries")
    if support is not None:
        notes.append(f"support {support}")
    return ClassReport(in_C, in_C0, in_A, in_A0, in_M, in_G, "; ".join(notes))
