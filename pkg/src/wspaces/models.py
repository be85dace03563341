"""Two-constraint models W_{x1*, x2*} inside C(Omega^2).

Omega^2 has two rows of isolated points (1/i, 1/j) converging to the limit
points (1/i, 0), i = 1, 2.  A member f is stored as two eventually constant
rows; the limit of row i is f(1/i, 0).  A functional on the isolated points is
a pair of row DualVecs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NormTooLarge, NotAMember, NotUnitNorm
from .seqcore import DualVec, ONES, PrimalVec, Q, Scalar, geometric, pairing, unit


@dataclass(frozen=True)
class RowFunctional:
    """x* in l1(Omega_0^2), given row by row."""

    row1: DualVec = DualVec()
    row2: DualVec = DualVec()

    def rows(self) -> tuple:
        return self.row1, self.row2

    def norm(self) -> Fraction:
        return self.row1.l1_norm() + self.row2.l1_norm()

    def __call__(self, f: "Member") -> Fraction:
        return pairing(self.row1, f.row1) + pairing(self.row2, f.row2)

    def support_rows(self) -> set:
        return {i for i, r in enumerate(self.rows(), 1) if r != DualVec()}

    def flatten(self) -> DualVec:
        """Interleave the rows: (r1(1), r2(1), r1(2), r2(2), ...) when the result is closed-form."""
        from .projections import identify_tail

        a, b = self.row1, self.row2
        L = 2 * max(len(a.prefix), len(b.prefix)) + 16
        entries = [(a if n % 2 else b).entry((n + 1) // 2) for n in range(1, L + 1)]
        f = identify_tail(entries)
        if f is None:
            raise ValueError("interleaved rows have no closed form")
        return f


@dataclass(frozen=True)
class Member:
    row1: PrimalVec = PrimalVec()
    row2: PrimalVec = PrimalVec()

    def sup_norm(self) -> Fraction:
        return max(self.row1.sup_norm(), self.row2.sup_norm())

    def rows(self) -> tuple:
        return self.row1, self.row2


ALL_ONES = Member(ONES, ONES)


@dataclass(frozen=True)
class Omega2Model:
    x1: RowFunctional
    x2: RowFunctional
    name: str = ""

    def __post_init__(self):
        for x in (self.x1, self.x2):
            if x.norm() > 1:
                raise NormTooLarge(f"functional norm {x.norm()} exceeds 1")

    def cluster(self, which: int) -> RowFunctional:
        return (self.x1, self.x2)[which - 1]


def build_model(x1: RowFunctional, x2: RowFunctional, name: str = "") -> Omega2Model:
    return Omega2Model(x1, x2, name)


def model_membership(m: Omega2Model, f: Member) -> bool:
    return f.row1.limit == m.x1(f) and f.row2.limit == m.x2(f)


def model_rstar(m: Omega2Model) -> Fraction:
    return max(m.x1.norm(), m.x2.norm())


def condition_S_check(m: Omega2Model, row: int) -> bool:
    """The cluster point of row ``row`` lives on that row only."""
    return m.cluster(row).support_rows() <= {row}


def _require_unit_member(m: Omega2Model, f: Member) -> None:
    if f.sup_norm() != 1:
        raise NotUnitNorm(f"candidate has sup-norm {f.sup_norm()}")
    if not model_membership(m, f):
        raise NotAMember("candidate violates the model constraints")


def condition_P_witness_check(m: Omega2Model, candidate: Member, which: int) -> bool:
    """|<x*, candidate>| == |x*| for the cluster point x* = x_which*."""
    _require_unit_member(m, candidate)
    g = m.cluster(which)
    return abs(g(candidate)) == g.norm()


def condition_P_obstruction(m: Omega2Model, which: int) -> bool:
    """True when no unit vector can attain the norm of x_which*.

    Attainment forces f = theta sgn(x*) on the support; a row on which x*
    changes sign infinitely often would then fail to converge.
    """
    g = m.cluster(which)
    return g.norm() > 0 and any(r.tail.sign_pattern() == "alternating" for r in g.rows())


@dataclass(frozen=True)
class Cor41Report:
    row: int
    cluster_identified: bool
    disjoint: bool
    attains: bool
    failures: tuple = ()

    @property
    def all_hold(self) -> bool:
        return self.cluster_identified and self.disjoint and self.attains


def cor41_witness_check(m: Omega2Model, candidate: Member, row: int) -> Cor41Report:
    """Conditions (1)-(3) along the whole basis row ``row``.

    (1) the row converges w* to x_row* by construction of the model;
    (2) x_row* carries no mass on that row, so supports are disjoint;
    (3) every basis functional on the row and x_row* take the value 1.
    """
    if not model_membership(m, candidate):
        raise NotAMember("candidate violates the model constraints")
    g = m.cluster(row)
    disjoint = row not in g.support_rows()
    r = candidate.rows()[row - 1]
    fails = []
    if any(v != 1 for v in r.prefix) or r.limit != 1:
        fails.append("some basis functional on the row is not 1")
    if g(candidate) != 1:
        fails.append(f"cluster point takes value {g(candidate)}")
    return Cor41Report(row, True, disjoint, not fails, tuple(fails))


HALF = Fraction(1, 2)


def example_4_2() -> Omega2Model:
    return Omega2Model(
        RowFunctional(DualVec(), geometric(HALF, HALF)),
        RowFunctional(geometric(HALF, HALF), DualVec()),
        "example-4.2",
    )


def example_6_7() -> Omega2Model:
    m = example_4_2()
    return Omega2Model(m.x1, m.x2, "example-6.7")


def example_6_8() -> Omega2Model:
    return Omega2Model(
        RowFunctional(geometric(-HALF, -HALF), DualVec()),
        RowFunctional(DualVec(), geometric(Fraction(-1, 3), Fraction(-1, 3))),
        "example-6.8",
    )


def remark_6_4() -> Omega2Model:
    # x1* = (1/2, 1/8, 1/32, ... | 1/4, 1/16, 1/64, ...): row norms 2/3 and 1/3
    q = Fraction(1, 4)
    return Omega2Model(RowFunctional(geometric(HALF, q), geometric(q, q)), RowFunctional(), "remark-6.4")


def example_9_3(r1: Scalar, r2: Scalar) -> Omega2Model:
    r1, r2 = Q(r1), Q(r2)
    return Omega2Model(RowFunctional(unit(1, r1)), RowFunctional(unit(1, -r2)), f"example-9.3({r1},{r2})")


CATALOG = {
    "example-4.2": example_4_2,
    "example-6.7": example_6_7,
    "example-6.8": example_6_8,
    "remark-6.4": remark_6_4,
}


def catalog(name: str) -> Omega2Model:
    name = name.strip()
    if name.startswith("example-9.3"):
        inner = name[len("example-9.3"):].strip("()")
        r1, r2 = (inner.split(",") if inner else ("1/4", "1/2"))
        return example_9_3(r1.strip(), r2.strip())
    try:
        return CATALOG[name]()
    except KeyError:
        raise KeyError(f"unknown model {name!r}; known: {sorted(CATALOG) + ['example-9.3(r1,r2)']}") from None
