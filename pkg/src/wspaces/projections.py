"""Norm-one projections on l1 given by blocks, and projections on c / W_alpha.

An ``L1Projection`` is P x* = sum_j u_j**(x*) u_j*, where u_j* = sum over the
block sigma_j of lambda_i e_i* and u_j** has finite support omega_j.  Blocks
are produced by rules so infinite families stay exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .errors import PatternUnrecognized, PreconditionViolated, ResultNotRepresentable, StructureViolation
from .linmaps import FunctionMap, LinearFunctional, LinearMap, RowMap
from .seqcore import (
    DualVec, GeometricTail, PrimalVec, Q, ReciprocalTail, Scalar, c_pairing, pairing, sgn, unit,
)


def _fr_dict(d: dict) -> dict:
    return {int(k): Q(v) for k, v in d.items()}


@dataclass(frozen=True, eq=False)
class L1Projection:
    sigma: Callable  # j -> {i: lambda_i}
    coblock: Callable  # j -> {h: u_j**(e_h*)}
    block_of: Callable  # i -> j or None
    n_blocks: Optional[int] = None
    blocks_beyond: Optional[Callable] = None  # K -> least J with min sigma_j > K for all j >= J
    tail_pairing: Optional[Callable] = None  # (x*, J, L) -> sum_{j>=J} u_j**(x*) L sum(lambda over sigma_j)
    name: str = ""

    def u_star(self, j: int) -> DualVec:
        lam = self.sigma(j)
        top = max(lam)
        return DualVec(tuple(lam.get(i, Fraction(0)) for i in range(1, top + 1)))

    def u_dstar(self, j: int, xstar: DualVec) -> Fraction:
        return sum((v * xstar.entry(h) for h, v in self.coblock(j).items()), Fraction(0))

    def _blocks(self, upto: int | None = None):
        last = self.n_blocks if self.n_blocks is not None else upto
        return range(1, last + 1)

    def apply_head(self, xstar: DualVec, m: int) -> list:
        out = []
        for i in range(1, m + 1):
            j = self.block_of(i)
            out.append(Fraction(0) if j is None else self.u_dstar(j, xstar) * self.sigma(j)[i])
        return out

    def apply(self, xstar: DualVec) -> DualVec:
        if self.n_blocks is None:
            raise ResultNotRepresentable("infinitely many blocks; use apply_head or pair")
        acc = DualVec()
        for j in self._blocks():
            acc = acc + self.u_star(j).scale(self.u_dstar(j, xstar))
        return acc

    def pair(self, xstar: DualVec, y: PrimalVec) -> Fraction:
        """<P x*, y> exactly."""
        if self.n_blocks is not None:
            return pairing(self.apply(xstar), y)
        J = self.blocks_beyond(len(y.prefix))
        head = sum(
            (self.u_dstar(j, xstar) * sum((lam * y.entry(i) for i, lam in self.sigma(j).items()), Fraction(0))
             for j in range(1, J)),
            Fraction(0),
        )
        return head + self.tail_pairing(xstar, J, y.limit)

    def validate(self, window: int = 16) -> "L1Projection":
        blocks = list(self._blocks(window))
        seen: dict = {}
        for j in blocks:
            lam = self.sigma(j)
            if not lam or any(v == 0 for v in lam.values()):
                raise StructureViolation("lambda", f"block {j} empty or with a zero weight")
            for i in lam:
                if i in seen:
                    raise StructureViolation("disjointness", f"index {i} in blocks {seen[i]} and {j}")
                seen[i] = j
            if sum(abs(v) for v in lam.values()) != 1:
                raise StructureViolation("norm-u*", f"|u_{j}*| != 1")
            co = self.coblock(j)
            if max(abs(v) for v in co.values()) != 1:
                raise StructureViolation("norm-u**", f"|u_{j}**|_inf != 1")
            if sum((co.get(i, 0) * v for i, v in lam.items()), Fraction(0)) != 1:
                raise StructureViolation("norm-u**", f"u_{j}**(u_{j}*) != 1")
            for i, v in lam.items():
                if co.get(i, 0) != sgn(v):
                    raise StructureViolation("b", f"u_{j}**(e_{i}*) != sgn(lambda_{i})")
        for j in blocks:
            co = self.coblock(j)
            omega = {h for h, v in co.items() if v}
            for k in blocks:
                lam_k = self.sigma(k)
                if k != j:
                    if sum((co.get(i, 0) * v for i, v in lam_k.items()), Fraction(0)) != 0:
                        raise StructureViolation("a", f"u_{j}**(u_{k}*) != 0")
                    if omega & set(lam_k):
                        raise StructureViolation("c", f"omega_{j} meets sigma_{k}")
                elif not set(lam_k) <= omega:
                    raise StructureViolation("c", f"sigma_{j} not inside omega_{j}")
        # (d) follows once the u_j* are nonzero with disjoint supports, checked above
        return self


def identity_projection() -> L1Projection:
    return L1Projection(
        sigma=lambda j: {j: Fraction(1)},
        coblock=lambda j: {j: Fraction(1)},
        block_of=lambda i: i,
        blocks_beyond=lambda K: K + 1,
        tail_pairing=lambda x, J, L: L * x.signed_tail_from(J),
        name="identity",
    ).validate()


def prepend_projection(gamma: Callable, gamma_tail: Callable, name: str = "prepend") -> L1Projection:
    """sigma_j = {j+1}, u_j** = gamma_j e_1 + e_{j+1}; gamma_tail(J) = sum_{j>=J} gamma_j."""

    def coblock(j):
        g = Q(gamma(j))
        return {1: g, j + 1: Fraction(1)} if g else {j + 1: Fraction(1)}

    return L1Projection(
        sigma=lambda j: {j + 1: Fraction(1)},
        coblock=coblock,
        block_of=lambda i: i - 1 if i >= 2 else None,
        blocks_beyond=lambda K: max(K, 1),
        tail_pairing=lambda x, J, L: L * (x.entry(1) * gamma_tail(J) + x.signed_tail_from(J + 1)),
        name=name,
    ).validate()


def example_5_14_projection() -> L1Projection:
    # gamma_j = 2/(j(j+1)) - 1/2^j telescopes to 2/J - 1/2^(J-1) from J on
    return prepend_projection(
        lambda j: Fraction(2, j * (j + 1)) - Fraction(1, 2**j),
        lambda J: Fraction(2, J) - Fraction(1, 2 ** (J - 1)),
        "example-5.14",
    )


def limit_prepend_projection(beta: DualVec, r: Scalar) -> L1Projection:
    """Projection induced on W_{r e_1*}* by x -> (lim x / r, x(1), x(2), ...)."""
    r = Q(r)
    return prepend_projection(lambda j: beta.entry(j) / r, lambda J: beta.signed_tail_from(J) / r, "limit-prepend")


def block_average_projection() -> L1Projection:
    """Averages x* over the dyadic blocks {2^(j-1), ..., 2^j - 1}."""

    def block(j):
        return range(2 ** (j - 1), 2**j)

    return L1Projection(
        sigma=lambda j: {i: Fraction(1, 2 ** (j - 1)) for i in block(j)},
        coblock=lambda j: {i: Fraction(1) for i in block(j)},
        block_of=lambda i: i.bit_length(),
        blocks_beyond=lambda K: K.bit_length() + 1,
        tail_pairing=lambda x, J, L: L * x.signed_tail_from(2 ** (J - 1)),
        name="dyadic-average",
    ).validate(8)


def build_l1_projection(blocks: list, coblocks: list) -> L1Projection:
    """Finite projection from explicit dicts ``{i: lambda_i}`` and ``{h: u_j**(e_h*)}``."""
    sig = [_fr_dict(b) for b in blocks]
    co = [_fr_dict(c) for c in coblocks]
    if len(sig) != len(co):
        raise StructureViolation("shape", "one coblock per block required")
    owner: dict = {}
    for j, lam in enumerate(sig, 1):
        for i in lam:
            owner.setdefault(i, j)
    return L1Projection(
        sigma=lambda j: sig[j - 1],
        coblock=lambda j: co[j - 1],
        block_of=owner.get,
        n_blocks=len(sig),
        name="explicit",
    ).validate()


@dataclass(frozen=True)
class RecoveredBeta:
    beta: DualVec
    recognized: bool
    entries: tuple


def identify_tail(entries, min_run: int = 4) -> Optional[DualVec]:
    """Smallest-prefix closed form matching ``entries`` from some index on."""
    e = [Q(v) for v in entries]
    n = len(e)
    for s in range(1, n - min_run + 2):
        rest = e[s - 1 :]
        if all(v == 0 for v in rest):
            return DualVec(tuple(e[: s - 1]))
        a, b = rest[0], rest[1]
        if a == 0 or b == 0:
            continue
        q = b / a
        if abs(q) < 1 and all(rest[i + 1] == q * rest[i] for i in range(len(rest) - 1)):
            return DualVec(tuple(e[: s - 1]), GeometricTail(a, q, s))
        rho = a / b
        if rho > 1:
            d = 2 / (rho - 1)
            if d.denominator == 1:
                tail = ReciprocalTail(a * d * (d + 1), s - int(d))
                if all(tail.term(s + i) == v for i, v in enumerate(rest)):
                    return DualVec(tuple(e[: s - 1]), tail)
    return None


def recover_beta(p: L1Projection, alpha: DualVec, index_map: Callable, length: int = 50,
                 strict: bool = False) -> RecoveredBeta:
    """beta(k) = sum_{h in omega_j} u_j**(e_h*) alpha(h), where k_k lies in sigma_j."""
    entries = []
    for k in range(1, length + 1):
        kk = index_map(k)
        kk = kk[0] if isinstance(kk, tuple) else kk
        j = p.block_of(kk)
        if j is None:
            raise StructureViolation("c", f"k_{k} = {kk} lies in no block")
        entries.append(sum((v * alpha.entry(h) for h, v in p.coblock(j).items()), Fraction(0)))
    beta = identify_tail(entries)
    if beta is None:
        if strict:
            raise PatternUnrecognized("recovered entries match no tail descriptor")
        return RecoveredBeta(DualVec(tuple(entries)), False, tuple(entries))
    return RecoveredBeta(beta, True, tuple(entries))


# ---------------------------------------------------------------------------
# projections acting on the primal side


@dataclass(frozen=True, eq=False)
class PrimalProjection:
    map: LinearMap
    pairing_kind: str = "walpha"  # rows act by sum f(i)x(i), or by the c duality
    stable_from: int = 1  # rows m >= stable_from repeat the patterns in tail_norms
    tail_norms: tuple = (Fraction(1),)
    description: str = ""
    ambient: Optional[DualVec] = None
    embedding: object = None
    extras: dict = field(default_factory=dict)

    def apply(self, x: PrimalVec) -> PrimalVec:
        return self.map.apply(x)

    __call__ = apply

    def column(self, m: int) -> LinearFunctional:
        """Adjoint image of the m-th coordinate functional."""
        return self.map.row(m)


def operator_norm_upper(p: PrimalProjection, probe: int = 64) -> tuple:
    """(bound, certified): max adjoint-column l1 norm, certified when every
    column outside the declared repeating patterns has been probed."""
    probed = [p.column(m).norm_bracket()[1] for m in range(1, probe + 1)]
    certified = probe >= p.stable_from - 1
    bound = max(probed + (list(p.tail_norms) if certified else []), default=Fraction(0))
    return bound, certified


def identity_primal_projection(alpha: DualVec | None = None) -> PrimalProjection:
    return PrimalProjection(RowMap((), 0), description="identity", ambient=alpha)


def thm71_projection(alpha: DualVec, eps: Scalar) -> PrimalProjection:
    """(1+eps)-projection of W_alpha onto an isometric copy of W_{rho e_1*}, rho = |alpha|/(1+eps)."""
    from .embeddings import embed_general

    eps = Q(eps)
    if eps <= 0:
        raise PreconditionViolated("eps must be positive; the isometric case needs a separate argument")
    rs = alpha.l1_norm()
    if rs == 0:
        raise PreconditionViolated("alpha = 0")
    rho = rs / (1 + eps)
    T = embed_general(unit(1, rho), alpha)
    comps = T.components
    # Q x = (lim x / rho, s_n x(k_n) for n >= 2) undoes T on its image
    rows = [alpha.scale(1 / rho)]
    rows += [unit(*comps(n)) for n in range(2, len(comps.explicit) + 1)]
    Qmap = RowMap(tuple(rows), -comps.shift)
    P = T.map.compose(Qmap)
    return PrimalProjection(
        P, "walpha", P.explicit + 1, (Fraction(1),),
        f"onto a copy of W_(rho e1*), rho = {rho}", alpha, T,
        {"rho": rho, "eps": eps, "Q": Qmap, **{k: v for k, v in T.params.items() if k in ("K", "s", "N", "r")}},
    )


def thm43_shift_projection() -> PrimalProjection:
    """P x = lim(x) 1 + sum_j (x(2j-1) - lim x) e_{2j-1} on c: odd coordinates kept,
    even coordinates replaced by the limit."""

    def apply(x: PrimalVec) -> PrimalVec:
        return PrimalVec(tuple(x.entry(i) if i % 2 else x.limit for i in range(1, len(x.prefix) + 1)), x.limit)

    # under the c duality x(i) is e_{i+1}* and lim x is e_1*
    m = FunctionMap(apply, lambda i: unit(i + 1) if i % 2 else unit(1), "odd coordinates, limit elsewhere")
    return PrimalProjection(m, "c", 1, (Fraction(1),), "shift-type projection on c, n_j = 2j")


def row_value(p: PrimalProjection, m: int, x: PrimalVec) -> Fraction:
    """P(x)(m) evaluated through the adjoint column, using the right duality."""
    col = p.column(m)
    if p.pairing_kind == "c":
        return sum((c_pairing(t, x) for t in col.terms), Fraction(0))
    return col(x)
