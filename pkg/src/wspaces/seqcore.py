"""Exact sequences in l1 (closed-form tails) and in c (eventually constant).

Indices are 1-based throughout, matching the usual sequence-space notation:
``f.entry(1)`` is the first coordinate.

A ``DualVec`` is a rational prefix followed by a tail whose terms, partial
tail sums and absolute tail sums all have exact closed forms.  A
``PrimalVec`` is a rational prefix followed by its (constant) limit.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import DomainError, ParseError, ResultNotRepresentable

#: prefix length up to which incompatible tails may be materialised before
#: ``ResultNotRepresentable`` is raised
AUTO_EXTEND_LIMIT = 4096

Scalar = Union[int, str, Fraction]


def Q(value: Scalar) -> Fraction:
    """Coerce to an exact Fraction.  Floats are rejected on purpose."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact scalar {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def sgn(q: Fraction) -> int:
    return (q > 0) - (q < 0)


# ---------------------------------------------------------------------------
# tail descriptors


@dataclass(frozen=True)
class ZeroTail:
    kind = "zero"

    def term(self, n: int) -> Fraction:
        return Fraction(0)

    def tail_sum(self, n: int) -> Fraction:
        return Fraction(0)

    def abs_tail_sum(self, n: int) -> Fraction:
        return Fraction(0)

    def scaled(self, c: Fraction) -> "Tail":
        return self

    def shifted(self, k: int) -> "Tail":
        return self

    def sign_pattern(self) -> str:
        return "zero"

    @property
    def min_index(self) -> int:
        return -(10**18)


@dataclass(frozen=True)
class GeometricTail:
    """term(n) = first * ratio**(n - anchor)."""

    first: Fraction
    ratio: Fraction
    anchor: int = 1
    kind = "geometric"

    def __post_init__(self):
        object.__setattr__(self, "first", Q(self.first))
        object.__setattr__(self, "ratio", Q(self.ratio))
        if self.first == 0:
            raise DomainError("geometric tail with zero first term; use ZeroTail")
        if self.ratio == 0 or abs(self.ratio) >= 1:
            raise DomainError(f"geometric ratio must satisfy 0 < |q| < 1, got {self.ratio}")

    def term(self, n: int) -> Fraction:
        return self.first * self.ratio ** (n - self.anchor)

    def tail_sum(self, n: int) -> Fraction:
        return self.term(n) / (1 - self.ratio)

    def abs_tail_sum(self, n: int) -> Fraction:
        return abs(self.term(n)) / (1 - abs(self.ratio))

    def scaled(self, c: Fraction) -> "Tail":
        if c == 0:
            return ZeroTail()
        return GeometricTail(self.first * c, self.ratio, self.anchor)

    def shifted(self, k: int) -> "Tail":
        return GeometricTail(self.first, self.ratio, self.anchor + k)

    def sign_pattern(self) -> str:
        if self.ratio < 0:
            return "alternating"
        return "positive" if self.first > 0 else "negative"

    @property
    def min_index(self) -> int:
        return -(10**18)


@dataclass(frozen=True)
class ReciprocalTail:
    """term(n) = coef / ((n - offset)(n - offset + 1)), defined for n > offset."""

    coef: Fraction = Fraction(1)
    offset: int = 0
    kind = "recip"

    def __post_init__(self):
        object.__setattr__(self, "coef", Q(self.coef))
        if self.coef == 0:
            raise DomainError("reciprocal tail with zero coefficient; use ZeroTail")

    def term(self, n: int) -> Fraction:
        m = n - self.offset
        return self.coef / (m * (m + 1))

    def tail_sum(self, n: int) -> Fraction:
        return self.coef / (n - self.offset)

    def abs_tail_sum(self, n: int) -> Fraction:
        return abs(self.coef) / (n - self.offset)

    def scaled(self, c: Fraction) -> "Tail":
        if c == 0:
            return ZeroTail()
        return ReciprocalTail(self.coef * c, self.offset)

    def shifted(self, k: int) -> "Tail":
        return ReciprocalTail(self.coef, self.offset + k)

    def sign_pattern(self) -> str:
        return "positive" if self.coef > 0 else "negative"

    @property
    def min_index(self) -> int:
        return self.offset + 1


Tail = Union[ZeroTail, GeometricTail, ReciprocalTail]


def _combine_tails(a: Tail, b: Tail) -> Tail | None:
    """Closed form of the termwise sum, or None if it leaves the class."""
    if isinstance(a, ZeroTail):
        return b
    if isinstance(b, ZeroTail):
        return a
    if isinstance(a, GeometricTail) and isinstance(b, GeometricTail):
        if a.ratio != b.ratio:
            return None
        anchor = max(a.anchor, b.anchor)
        first = a.term(anchor) + b.term(anchor)
        return ZeroTail() if first == 0 else GeometricTail(first, a.ratio, anchor)
    if isinstance(a, ReciprocalTail) and isinstance(b, ReciprocalTail):
        if a.offset != b.offset:
            return None
        coef = a.coef + b.coef
        return ZeroTail() if coef == 0 else ReciprocalTail(coef, a.offset)
    return None


# ---------------------------------------------------------------------------
# l1 side


@dataclass(frozen=True)
class DualVec:
    """Element of l1: ``prefix`` then ``tail.term(n)`` for n > len(prefix).

    Instances are canonical: trailing prefix entries that agree with the tail
    are absorbed, so ``==`` is equality of sequences.
    """

    prefix: tuple = ()
    tail: Tail = ZeroTail()

    def __post_init__(self):
        prefix = [Q(v) for v in self.prefix]
        tail = self.tail
        if len(prefix) + 1 < tail.min_index:
            raise DomainError(f"tail {tail} undefined at index {len(prefix) + 1}")
        while prefix and len(prefix) >= tail.min_index and prefix[-1] == tail.term(len(prefix)):
            prefix.pop()
        if isinstance(tail, GeometricTail) and tail.anchor != len(prefix) + 1:
            start = len(prefix) + 1
            tail = GeometricTail(tail.term(start), tail.ratio, start)
        object.__setattr__(self, "prefix", tuple(prefix))
        object.__setattr__(self, "tail", tail)

    # -- reading ----------------------------------------------------------
    @property
    def start(self) -> int:
        return len(self.prefix) + 1

    def entry(self, n: int) -> Fraction:
        if n < 1:
            raise IndexError(f"index {n} < 1")
        if n <= len(self.prefix):
            return self.prefix[n - 1]
        return self.tail.term(n)

    def head(self, m: int) -> list:
        return [self.entry(n) for n in range(1, m + 1)]

    def signed_tail_from(self, n: int) -> Fraction:
        """Sum of entry(j) over j >= n."""
        n = max(n, 1)
        if n >= self.start:
            return self.tail.tail_sum(n)
        return sum(self.prefix[n - 1 :], Fraction(0)) + self.tail.tail_sum(self.start)

    def abs_tail_from(self, n: int) -> Fraction:
        n = max(n, 1)
        if n >= self.start:
            return self.tail.abs_tail_sum(n)
        return sum((abs(v) for v in self.prefix[n - 1 :]), Fraction(0)) + self.tail.abs_tail_sum(self.start)

    def l1_norm(self) -> Fraction:
        return self.abs_tail_from(1)

    # -- sign structure ---------------------------------------------------
    @property
    def finite_support(self) -> bool:
        return isinstance(self.tail, ZeroTail)

    def support(self) -> list:
        if not self.finite_support:
            raise ResultNotRepresentable("support is infinite")
        return [n for n, v in enumerate(self.prefix, 1) if v != 0]

    @property
    def negatives_finite(self) -> bool:
        return self.tail.sign_pattern() in ("zero", "positive")

    @property
    def positives_finite(self) -> bool:
        return self.tail.sign_pattern() in ("zero", "negative")

    @property
    def zeros_infinite(self) -> bool:
        return self.finite_support

    # -- algebra ----------------------------------------------------------
    def scale(self, c: Scalar) -> "DualVec":
        c = Q(c)
        return DualVec(tuple(c * v for v in self.prefix), self.tail.scaled(c))

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __neg__(self):
        return self.scale(-1)

    def __add__(self, other: "DualVec") -> "DualVec":
        if not isinstance(other, DualVec):
            return NotImplemented
        tail = _combine_tails(self.tail, other.tail)
        if tail is None:
            # Extending prefixes never reconciles two distinct closed forms of
            # these kinds, so the bound is only a guard against huge prefixes.
            raise ResultNotRepresentable(
                f"cannot add tails {self.tail} and {other.tail} "
                f"(no common closed form within {AUTO_EXTEND_LIMIT} entries)"
            )
        m = max(len(self.prefix), len(other.prefix))
        prefix = tuple(a + b for a, b in zip(self.head(m), other.head(m)))
        return DualVec(prefix, tail)

    def __sub__(self, other: "DualVec") -> "DualVec":
        return self + (-other)

    def shift(self, k: int) -> "DualVec":
        """Prepend k zeros: result.entry(n + k) == self.entry(n)."""
        if k < 0:
            return self.shift_left(-k)
        return DualVec((Fraction(0),) * k + self.prefix, self.tail.shifted(k))

    def shift_left(self, k: int) -> "DualVec":
        """Drop the first k entries: result.entry(n) == self.entry(n + k)."""
        if k < 0:
            return self.shift(-k)
        return DualVec(self.prefix[k:], self.tail.shifted(-k))

    def restrict_from(self, m: int) -> "DualVec":
        """Zero out every entry with index < m."""
        if m <= 1:
            return self
        head = self.head(max(m - 1, len(self.prefix)))
        head[: m - 1] = [Fraction(0)] * (m - 1)
        return DualVec(tuple(head), self.tail)

    def truncate(self, m: int) -> "DualVec":
        """Keep entries with index <= m, zero afterwards."""
        return DualVec(tuple(self.head(m)), ZeroTail())

    def __str__(self) -> str:
        return format_dualvec(self)


def unit(n: int, coef: Scalar = 1) -> DualVec:
    """coef * e_n*."""
    return DualVec((Fraction(0),) * (n - 1) + (Q(coef),))


def geometric(first: Scalar, ratio: Scalar, prefix: Iterable = ()) -> DualVec:
    prefix = tuple(prefix)
    first = Q(first)
    if first == 0:
        return DualVec(prefix)
    return DualVec(prefix, GeometricTail(first, Q(ratio), len(prefix) + 1))


def reciprocal(coef: Scalar = 1, offset: int = 0, prefix: Iterable = ()) -> DualVec:
    coef = Q(coef)
    if coef == 0:
        return DualVec(tuple(prefix))
    return DualVec(tuple(prefix), ReciprocalTail(coef, offset))


ZERO_DUAL = DualVec()


# ---------------------------------------------------------------------------
# c side


@dataclass(frozen=True)
class PrimalVec:
    """Eventually constant element of c: ``prefix`` then ``limit`` forever."""

    prefix: tuple = ()
    limit: Fraction = Fraction(0)

    def __post_init__(self):
        limit = Q(self.limit)
        prefix = [Q(v) for v in self.prefix]
        while prefix and prefix[-1] == limit:
            prefix.pop()
        object.__setattr__(self, "prefix", tuple(prefix))
        object.__setattr__(self, "limit", limit)

    def entry(self, n: int) -> Fraction:
        if n < 1:
            raise IndexError(f"index {n} < 1")
        if n <= len(self.prefix):
            return self.prefix[n - 1]
        return self.limit

    def head(self, m: int) -> list:
        return [self.entry(n) for n in range(1, m + 1)]

    def sup_norm(self) -> Fraction:
        return max([abs(v) for v in self.prefix] + [abs(self.limit)])

    def scale(self, c: Scalar) -> "PrimalVec":
        c = Q(c)
        return PrimalVec(tuple(c * v for v in self.prefix), c * self.limit)

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __neg__(self):
        return self.scale(-1)

    def __add__(self, other: "PrimalVec") -> "PrimalVec":
        if not isinstance(other, PrimalVec):
            return NotImplemented
        m = max(len(self.prefix), len(other.prefix))
        return PrimalVec(
            tuple(a + b for a, b in zip(self.head(m), other.head(m))),
            self.limit + other.limit,
        )

    def __sub__(self, other: "PrimalVec") -> "PrimalVec":
        return self + (-other)

    def prepend(self, entries: Iterable) -> "PrimalVec":
        return PrimalVec(tuple(Q(v) for v in entries) + self.prefix, self.limit)

    def shift(self, k: int, fill: Scalar = 0) -> "PrimalVec":
        return self.prepend([Q(fill)] * k)

    def __str__(self) -> str:
        return format_primalvec(self)


def constant(c: Scalar) -> PrimalVec:
    return PrimalVec((), Q(c))


ONES = PrimalVec((), Fraction(1))
ZERO_PRIMAL = PrimalVec()


# ---------------------------------------------------------------------------
# norms and pairings


def l1_norm(f: DualVec) -> Fraction:
    return f.l1_norm()


def sup_norm(x: PrimalVec) -> Fraction:
    return x.sup_norm()


def pairing(f: DualVec, x: PrimalVec) -> Fraction:
    """sum_i f(i) x(i), the duality between l1 and a hyperplane of c."""
    k = max(len(f.prefix), len(x.prefix))
    total = sum((f.entry(i) * x.entry(i) for i in range(1, k + 1)), Fraction(0))
    if x.limit:
        total += x.limit * f.signed_tail_from(k + 1)
    return total


def c_pairing(f: DualVec, x: PrimalVec) -> Fraction:
    """f(1) lim x + sum_i f(i+1) x(i), the duality between l1 and c."""
    return f.entry(1) * x.limit + pairing(f.shift_left(1), x)


# ---------------------------------------------------------------------------
# text grammar

_RAT = r"-?\d+(?:/\d+)?"
_RAT_RE = re.compile(rf"^{_RAT}$")
_TAIL_RE = re.compile(
    rf"^(?:tail=)?(?:(?P<zero>zero)|geom\((?P<gc>{_RAT}),(?P<gq>{_RAT})\)"
    rf"|(?P<recip>recip)(?:\((?P<rc>{_RAT})(?:,(?P<ro>-?\d+))?\))?)$"
)
_PREFIX_RE = re.compile(rf"^prefix=\[(?P<body>(?:{_RAT}(?:,{_RAT})*)?)\]$")


def parse_rational(text: str) -> Fraction:
    t = text.strip()
    if not _RAT_RE.match(t):
        raise ParseError(f"not a rational: {text!r}")
    try:
        return Fraction(t)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {text!r}") from None


def _parse_prefix(part: str) -> tuple:
    m = _PREFIX_RE.match(part)
    if not m:
        raise ParseError(f"bad prefix: {part!r}")
    body = m.group("body")
    return tuple(parse_rational(v) for v in body.split(",")) if body else ()


def _parse_tail(part: str, prefix: tuple) -> DualVec:
    m = _TAIL_RE.match(part)
    if not m:
        raise ParseError(f"bad tail: {part!r}")
    if m.group("zero"):
        return DualVec(prefix)
    if m.group("gc") is not None:
        first, ratio = parse_rational(m.group("gc")), parse_rational(m.group("gq"))
        if abs(ratio) >= 1:
            raise ParseError(f"geom ratio must satisfy |q| < 1, got {ratio}")
        if ratio == 0:
            return DualVec(prefix + (first,))
        return geometric(first, ratio, prefix)
    coef = parse_rational(m.group("rc")) if m.group("rc") else Fraction(1)
    offset = int(m.group("ro")) if m.group("ro") else 0
    try:
        return reciprocal(coef, offset, prefix)
    except DomainError as exc:
        raise ParseError(str(exc)) from exc


def parse_dualvec(text: str) -> DualVec:
    """Parse ``prefix=[..]`` / ``prefix=[..];<tail>`` / ``tail=<tail>``."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ParseError("empty vector")
    parts = s.split(";")
    if parts[0].startswith("prefix="):
        prefix = _parse_prefix(parts[0])
        if len(parts) == 1:
            return DualVec(prefix)
        if len(parts) == 2:
            return _parse_tail(parts[1], prefix)
        raise ParseError(f"too many ';' in {text!r}")
    if len(parts) == 1 and parts[0].startswith("tail="):
        return _parse_tail(parts[0], ())
    raise ParseError(f"cannot parse dual vector {text!r}")


def parse_primalvec(text: str) -> PrimalVec:
    """Parse ``prefix=[..];limit=r`` (or the shorthands ``all-ones``, ``zero``)."""
    s = re.sub(r"\s+", "", text)
    if s == "all-ones":
        return ONES
    if s == "zero":
        return ZERO_PRIMAL
    parts = s.split(";")
    prefix: tuple = ()
    if parts[0].startswith("prefix="):
        prefix = _parse_prefix(parts[0])
        parts = parts[1:]
    if len(parts) != 1 or not parts[0].startswith("limit="):
        raise ParseError(f"cannot parse primal vector {text!r}")
    return PrimalVec(prefix, parse_rational(parts[0][len("limit=") :]))


def _fmt_prefix(prefix: tuple) -> str:
    return "prefix=[" + ",".join(str(v) for v in prefix) + "]"


def format_tail(f: DualVec) -> str:
    tail = f.tail
    if isinstance(tail, ZeroTail):
        return "zero"
    if isinstance(tail, GeometricTail):
        return f"geom({tail.term(f.start)},{tail.ratio})"
    if tail.offset != 0:
        return f"recip({tail.coef},{tail.offset})"
    if tail.coef != 1:
        return f"recip({tail.coef})"
    return "recip"


def format_dualvec(f: DualVec) -> str:
    if not f.prefix:
        return "tail=" + format_tail(f)
    if isinstance(f.tail, ZeroTail):
        return _fmt_prefix(f.prefix)
    return _fmt_prefix(f.prefix) + ";" + format_tail(f)


def format_primalvec(x: PrimalVec) -> str:
    return f"{_fmt_prefix(x.prefix)};limit={x.limit}"
