"""Seeded random members of W_alpha and random functionals in the descriptor class."""
from __future__ import annotations

import random
from fractions import Fraction

from .seqcore import DualVec, PrimalVec, geometric, reciprocal

RATIOS = (Fraction(1, 2), Fraction(-1, 2), Fraction(1, 3), Fraction(-1, 3), Fraction(2, 3), Fraction(1, 4))


def random_rational(rng: random.Random, bound: int = 6) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_member(alpha: DualVec, rng: random.Random, length: int | None = None) -> PrimalVec:
    """A member of W_alpha: random head x(1..L), then the only admissible limit.

    lim x = sum_{i<=L} alpha(i) x(i) + lim x * A(L+1) forces
    lim x = sum_{i<=L} alpha(i) x(i) / (1 - A(L+1)).
    """
    L = rng.randint(0, 6) if length is None else length
    while alpha.signed_tail_from(L + 1) == 1:
        L += 1
    head = [random_rational(rng) for _ in range(L)]
    acc = sum((alpha.entry(i) * v for i, v in enumerate(head, 1)), Fraction(0))
    return PrimalVec(tuple(head), acc / (1 - alpha.signed_tail_from(L + 1)))


def random_members(alpha: DualVec, count: int, seed: int = 0) -> list:
    rng = random.Random(seed)
    return [random_member(alpha, rng) for _ in range(count)]


def random_dualvec(rng: random.Random, norm: Fraction | None = None, kinds=("zero", "geom", "recip")) -> DualVec:
    """Random element of the descriptor class, rescaled to ``norm`` when given."""
    prefix = tuple(random_rational(rng, 4) for _ in range(rng.randint(0, 4)))
    kind = rng.choice(kinds)
    if kind == "geom":
        f = geometric(random_rational(rng, 4) or 1, rng.choice(RATIOS), prefix)
    elif kind == "recip":
        f = reciprocal(rng.choice((1, -1, Fraction(1, 2), 2)), 0, prefix)
    else:
        f = DualVec(prefix)
    if norm is None:
        return f
    n = f.l1_norm()
    if n == 0:
        f = DualVec((Fraction(1),))
        n = Fraction(1)
    return f.scale(Fraction(norm) / n)
