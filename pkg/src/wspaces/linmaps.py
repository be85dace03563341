"""Linear maps between eventually constant sequences, described row by row.

A map ``T`` on (a subspace of) c is given by its rows: ``T(x)(m) = <row_m, x>``.
Rows are ``LinearFunctional`` values, i.e. finite formal sums of ``DualVec``
terms, which lets rows such as ``2*alpha - beta`` stay exact even when the two
tails have no common closed form.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .errors import DomainError, ResultNotRepresentable
from .seqcore import AUTO_EXTEND_LIMIT, DualVec, GeometricTail, PrimalVec, Q, ReciprocalTail, ZeroTail, pairing, unit


@dataclass(frozen=True)
class LinearFunctional:
    """sum of DualVec terms, at most one per tail class."""

    terms: tuple = ()

    def __post_init__(self):
        merged: list = []
        for t in self.terms:
            if isinstance(t, LinearFunctional):
                pending = list(t.terms)
            else:
                pending = [t]
            for f in pending:
                if f == DualVec():
                    continue
                for idx, g in enumerate(merged):
                    try:
                        s = g + f
                    except ResultNotRepresentable:
                        continue
                    merged[idx] = s
                    break
                else:
                    merged.append(f)
        merged = [g for g in merged if g != DualVec()]
        object.__setattr__(self, "terms", tuple(merged))

    @classmethod
    def of(cls, f) -> "LinearFunctional":
        return f if isinstance(f, LinearFunctional) else cls((f,))

    def entry(self, n: int) -> Fraction:
        return sum((t.entry(n) for t in self.terms), Fraction(0))

    def head(self, m: int) -> list:
        return [self.entry(n) for n in range(1, m + 1)]

    def __call__(self, x: PrimalVec) -> Fraction:
        return sum((pairing(t, x) for t in self.terms), Fraction(0))

    def __add__(self, other) -> "LinearFunctional":
        return LinearFunctional(self.terms + LinearFunctional.of(other).terms)

    def __sub__(self, other) -> "LinearFunctional":
        return self + LinearFunctional.of(other).scale(-1)

    def scale(self, c) -> "LinearFunctional":
        c = Q(c)
        return LinearFunctional(tuple(t.scale(c) for t in self.terms))

    def shift_left(self, k: int) -> "LinearFunctional":
        return LinearFunctional(tuple(t.shift_left(k) for t in self.terms))

    def restrict_from(self, m: int) -> "LinearFunctional":
        return LinearFunctional(tuple(t.restrict_from(m) for t in self.terms))

    @property
    def prefix_len(self) -> int:
        return max((len(t.prefix) for t in self.terms), default=0)

    def as_dualvec(self) -> DualVec:
        if not self.terms:
            return DualVec()
        if len(self.terms) == 1:
            return self.terms[0]
        raise ResultNotRepresentable("functional has no single closed-form tail")

    def norm_bracket(self, probe: int = 0) -> tuple:
        """(lo, hi) with lo <= l1 norm <= hi; equal when the norm is exact."""
        if len(self.terms) <= 1:
            n = self.as_dualvec().l1_norm()
            return n, n
        L = max(probe, self.prefix_len)
        head = sum((abs(v) for v in self.head(L)), Fraction(0))
        signed = abs(sum((t.signed_tail_from(L + 1) for t in self.terms), Fraction(0)))
        absum = sum((t.abs_tail_from(L + 1) for t in self.terms), Fraction(0))
        patterns = {t.tail.sign_pattern() for t in self.terms} - {"zero"}
        if len(patterns) == 1 and patterns <= {"positive", "negative"}:
            return head + signed, head + signed
        M = _dominance_index(self.terms)
        if M is not None and M > L + 1:
            return LinearFunctional(self.terms).norm_bracket(M - 1)
        if M is not None:
            return head + signed, head + signed
        return head + signed, head + absum

    def l1_norm(self) -> Fraction:
        lo, hi = self.norm_bracket()
        if lo != hi:
            raise ResultNotRepresentable("l1 norm of mixed-sign formal sum is not exact")
        return lo

    def __str__(self) -> str:
        if not self.terms:
            return "prefix=[]"
        return " + ".join(str(t) for t in self.terms)


def _ratio_settles(dom, other) -> Optional[int]:
    """n0 with |other(n)| / |dom(n)| nonincreasing for n >= n0, or None."""
    if isinstance(other, ZeroTail):
        return 1
    if isinstance(dom, GeometricTail) and isinstance(other, GeometricTail):
        return 1 if abs(other.ratio) <= abs(dom.ratio) else None
    if isinstance(dom, ReciprocalTail) and isinstance(other, GeometricTail):
        # the ratio moves by |q| (n - o + 2) / (n - o) per step
        q = abs(other.ratio)
        need = 2 * q / (1 - q)
        return dom.offset + max(1, -(-need.numerator // need.denominator))
    return None


def _dominance_index(terms) -> Optional[int]:
    """Index from which one constant-sign term outweighs all others combined.

    From there on the sum has that term's sign, so its l1 norm is exact.
    """
    start = max(len(t.prefix) for t in terms) + 1
    for d in terms:
        if d.tail.sign_pattern() not in ("positive", "negative"):
            continue
        others = [t for t in terms if t is not d]
        share = Fraction(1, len(others) + 1)
        M = start
        for t in others:
            n0 = _ratio_settles(d.tail, t.tail)
            if n0 is None:
                break
            n = max(n0, M, d.tail.min_index, t.tail.min_index)
            while abs(t.tail.term(n)) >= share * abs(d.tail.term(n)):
                if n > AUTO_EXTEND_LIMIT:
                    return None
                n *= 2
            M = n
        else:
            return M
    return None


def functional(*terms) -> LinearFunctional:
    return LinearFunctional(tuple(terms))


class LinearMap:
    """Interface: ``apply`` on PrimalVecs and ``row(m)`` as a LinearFunctional."""

    def apply(self, x: PrimalVec) -> PrimalVec:  # pragma: no cover - interface
        raise NotImplementedError

    def row(self, m: int) -> LinearFunctional:  # pragma: no cover - interface
        raise NotImplementedError

    def __call__(self, x: PrimalVec) -> PrimalVec:
        return self.apply(x)


@dataclass(frozen=True)
class RowMap(LinearMap):
    """Explicit rows 1..M, then ``y(m) = x(m - offset)`` for m > M."""

    rows: tuple = ()
    offset: int = 0

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(LinearFunctional.of(r) for r in self.rows))
        if len(self.rows) + 1 - self.offset < 1:
            raise DomainError("coordinate rows would read index < 1")

    @property
    def explicit(self) -> int:
        return len(self.rows)

    def row(self, m: int) -> LinearFunctional:
        if m <= len(self.rows):
            return self.rows[m - 1]
        return LinearFunctional.of(unit(m - self.offset))

    def apply(self, x: PrimalVec) -> PrimalVec:
        M = len(self.rows)
        length = max(M, len(x.prefix) + self.offset)
        out = [self.rows[m - 1](x) if m <= M else x.entry(m - self.offset) for m in range(1, length + 1)]
        return PrimalVec(tuple(out), x.limit)

    def compose(self, inner: "RowMap") -> "RowMap":
        """self after inner."""
        M_in, off_in = len(inner.rows), inner.offset
        rows = []
        for m in range(1, max(len(self.rows), M_in + self.offset) + 1):
            if m <= len(self.rows):
                f = self.rows[m - 1]
                acc = f.restrict_from(M_in + 1).shift_left(off_in)
                for i in range(1, M_in + 1):
                    c = f.entry(i)
                    if c:
                        acc = acc + inner.rows[i - 1].scale(c)
                rows.append(acc)
            else:
                rows.append(inner.row(m - self.offset))
        return RowMap(tuple(rows), self.offset + off_in)


@dataclass(frozen=True)
class FunctionMap(LinearMap):
    """A map given by callables; used for block-structured catalog maps."""

    apply_fn: Callable = field(repr=False)
    row_fn: Callable = field(repr=False)
    description: str = ""

    def apply(self, x: PrimalVec) -> PrimalVec:
        return self.apply_fn(x)

    def row(self, m: int) -> LinearFunctional:
        return LinearFunctional.of(self.row_fn(m))


@dataclass(frozen=True)
class ComponentMap:
    """n -> (k_n, sign_n): explicit for n <= len(explicit), else (n + shift, +1)."""

    explicit: tuple = ()
    shift: int = 0
    rule: Optional[Callable] = field(default=None, compare=False, repr=False)

    def __call__(self, n: int) -> tuple:
        if self.rule is not None:
            return self.rule(n)
        if n <= len(self.explicit):
            return self.explicit[n - 1]
        return n + self.shift, 1

    def then(self, outer: "ComponentMap") -> "ComponentMap":
        """Component map of ``outer`` after ``self``."""
        if self.rule is not None or outer.rule is not None:
            return ComponentMap(rule=lambda n: _chain(self, outer, n))
        length = max(len(self.explicit), len(outer.explicit) - self.shift, 0)
        return ComponentMap(tuple(_chain(self, outer, n) for n in range(1, length + 1)), self.shift + outer.shift)


def _chain(inner: ComponentMap, outer: ComponentMap, n: int) -> tuple:
    k, s = inner(n)
    k2, s2 = outer(k)
    return k2, s * s2


@dataclass(frozen=True)
class SignedPermutation:
    """Finitely supported permutation with signs: Phi(x)(sigma(n)) = eps_n x(n).

    ``images[n-1] = sigma(n)`` and ``signs[n-1] = eps_n`` for n <= size; the
    identity with sign +1 beyond.
    """

    images: tuple = ()
    signs: tuple = ()

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise DomainError(f"not a permutation of 1..{len(self.images)}: {self.images}")
        signs = tuple(self.signs) or (1,) * len(self.images)
        if len(signs) != len(self.images) or any(s not in (1, -1) for s in signs):
            raise DomainError("signs must be +-1, one per moved index")
        object.__setattr__(self, "signs", signs)

    @classmethod
    def transposition(cls, a: int, b: int, sign_at_a: int = 1) -> "SignedPermutation":
        size = max(a, b)
        images = list(range(1, size + 1))
        images[a - 1], images[b - 1] = b, a
        signs = [1] * size
        signs[a - 1] = sign_at_a
        return cls(tuple(images), tuple(signs))

    @property
    def size(self) -> int:
        return len(self.images)

    def sigma(self, n: int) -> int:
        return self.images[n - 1] if n <= self.size else n

    def eps(self, n: int) -> int:
        return self.signs[n - 1] if n <= self.size else 1

    def pull_back(self, alpha: DualVec) -> DualVec:
        """alpha'(n) = eps_n alpha(sigma(n)); Phi then maps W_alpha' onto W_alpha."""
        size = max(self.size, len(alpha.prefix))
        prefix = tuple(self.eps(n) * alpha.entry(self.sigma(n)) for n in range(1, size + 1))
        return DualVec(prefix, alpha.tail)

    def as_rowmap(self) -> RowMap:
        inverse = {self.sigma(n): n for n in range(1, self.size + 1)}
        rows = tuple(unit(inverse[m], self.eps(inverse[m])) for m in range(1, self.size + 1))
        return RowMap(rows, 0)

    def as_components(self) -> ComponentMap:
        return ComponentMap(tuple((self.sigma(n), self.eps(n)) for n in range(1, self.size + 1)), 0)


IDENTITY = RowMap((), 0)
