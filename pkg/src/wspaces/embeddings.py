"""Explicit isometric embeddings between W_alpha spaces, with exact verification."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import MaxEntryInTail, PreconditionViolated, SampleNotInSource, WrongKind
from .linmaps import ComponentMap, FunctionMap, LinearMap, RowMap, SignedPermutation, functional
from .seqcore import DualVec, PrimalVec, Q, Scalar, geometric, reciprocal, sgn, unit
from .walpha import WAlphaSpace, membership

M_SPACE, FINITE_SUPPORT, LIMIT_PREPEND, COMPOSITE, CATALOG = (
    "M-space", "finite-support", "limit-prepend", "composite", "catalog",
)


@dataclass(frozen=True, eq=False)
class Embedding:
    source: WAlphaSpace
    target: WAlphaSpace
    kind: str
    map: LinearMap
    components: ComponentMap | None = None
    params: dict = field(default_factory=dict)

    def apply(self, w: PrimalVec) -> PrimalVec:
        return self.map.apply(w)

    __call__ = apply


def canonical_form(alpha: DualVec) -> tuple:
    """(alpha', phi) with alpha'(1) = max |alpha(n)| > 0 and alpha' = phi.pull_back(alpha).

    Only a transposition of two prefix coordinates and one sign flip are used.
    """
    if alpha == DualVec():
        raise PreconditionViolated("alpha = 0 has no canonical form")
    L = len(alpha.prefix) + 1
    head = alpha.head(L)
    m = max(range(L), key=lambda j: (abs(head[j]), -j)) + 1
    # tail magnitudes of every supported kind are non-increasing
    if abs(alpha.entry(L + 1)) > abs(head[m - 1]):
        raise MaxEntryInTail("largest entry lies beyond the materialised prefix")
    phi = SignedPermutation.transposition(1, m, sgn(head[m - 1]))
    return phi.pull_back(alpha), phi


def _conjugate(phi: SignedPermutation, rowmap: RowMap, comps: ComponentMap) -> tuple:
    return phi.as_rowmap().compose(rowmap), comps.then(phi.as_components())


def embed_re1_into_alpha(alpha: DualVec, r: Scalar) -> Embedding:
    """Isometry W_{r e_1*} -> W_alpha for |alpha|_inf <= r < |alpha|_1."""
    r = Q(r)
    norm = alpha.l1_norm()
    if norm == 0:
        raise PreconditionViolated("alpha = 0")
    ca, phi = canonical_form(alpha)
    a1 = ca.entry(1)
    if not a1 <= r < norm:
        raise PreconditionViolated(f"need {a1} <= r < {norm}, got r = {r}")
    K, acc = 1, a1
    while not r < acc:
        K += 1
        acc += abs(ca.entry(K))
    s = (r - (acc - a1)) / a1
    N = K + 1
    while ca.abs_tail_from(N) > (1 - s) * a1:
        N += 1
    first = functional(unit(1, s), ca.restrict_from(N).shift_left(N - 2).scale(-1 / a1))
    rows = [first]
    rows += [unit(1, sgn(ca.entry(i))) for i in range(2, K + 1)]
    rows += [DualVec()] * (N - 1 - K)
    T = RowMap(tuple(rows), N - 2)
    comps = ComponentMap(((K, sgn(ca.entry(K))),), N - 2)
    rowmap, comps = _conjugate(phi, T, comps)
    return Embedding(
        WAlphaSpace(unit(1, r)), WAlphaSpace(alpha), M_SPACE, rowmap, comps,
        {"K": K, "s": s, "N": N, "r": r, "permutation": phi, "canonical_alpha": ca},
    )


def embed_beta_into_re1(beta: DualVec, r: Scalar) -> Embedding:
    """x -> (lim x / r, x(1), x(2), ...), an isometry W_beta -> W_{r e_1*}."""
    r = Q(r)
    if not 0 < r <= 1:
        raise PreconditionViolated(f"r must lie in (0, 1], got {r}")
    if beta.l1_norm() > r:
        raise PreconditionViolated(f"|beta| = {beta.l1_norm()} exceeds r = {r}")
    T = RowMap((beta.scale(1 / r),), 1)
    return Embedding(WAlphaSpace(beta), WAlphaSpace(unit(1, r)), LIMIT_PREPEND, T, ComponentMap((), 1), {"r": r})


def compose(outer: Embedding, inner: Embedding, **params) -> Embedding:
    comps = None
    if inner.components is not None and outer.components is not None:
        comps = inner.components.then(outer.components)
    return Embedding(inner.source, outer.target, COMPOSITE, outer.map.compose(inner.map), comps, params)


def embed_general(beta: DualVec, alpha: DualVec) -> Embedding:
    """Isometry W_beta -> W_alpha whenever |beta| < |alpha|."""
    nb, na = beta.l1_norm(), alpha.l1_norm()
    if not nb < na:
        raise PreconditionViolated(f"need |beta| < |alpha|, got {nb} and {na}")
    if alpha.finite_support and len(alpha.support()) == 1:
        n = alpha.support()[0]
        t = alpha.entry(n)
        inner = embed_beta_into_re1(beta, abs(t))
        phi = SignedPermutation.transposition(1, n, sgn(t))
        rowmap, comps = _conjugate(phi, inner.map, inner.components)
        return Embedding(WAlphaSpace(beta), WAlphaSpace(alpha), COMPOSITE, rowmap, comps,
                         {"r": abs(t), "permutation": phi})
    ca, _ = canonical_form(alpha)
    r = max(ca.entry(1), nb)
    outer = embed_re1_into_alpha(alpha, r)
    inner = embed_beta_into_re1(beta, r)
    return compose(outer, inner, r=r, K=outer.params["K"], s=outer.params["s"], N=outer.params["N"])


def embed_finite_support(alpha: DualVec) -> Embedding:
    """Isometry W_{|alpha| e_1*} -> W_alpha for finitely supported alpha."""
    norm = alpha.l1_norm()
    if not alpha.finite_support:
        raise PreconditionViolated("alpha has infinite support")
    if not 0 < norm < 1:
        raise PreconditionViolated(f"need 0 < |alpha| < 1, got {norm}")
    supp = alpha.support()
    rest = [i for i in range(1, supp[-1] + 1) if i not in supp]
    phi = SignedPermutation(tuple(supp + rest))
    ca = phi.pull_back(alpha)
    n = len(supp)
    T = RowMap(tuple(unit(1, sgn(ca.entry(i))) for i in range(1, n + 1)), n)
    rowmap, comps = _conjugate(phi, T, ComponentMap((), n))
    return Embedding(WAlphaSpace(unit(1, norm)), WAlphaSpace(alpha), FINITE_SUPPORT, rowmap, comps,
                     {"r": norm, "permutation": phi})


def identity_embedding(alpha: DualVec) -> Embedding:
    space = WAlphaSpace(alpha)
    return Embedding(space, space, COMPOSITE, RowMap((), 0), ComponentMap((), 0))


@dataclass
class CheckReport:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, reason: str, witness) -> None:
        self.failures.append((reason, witness))


def verify_isometry(e: Embedding, samples: Iterable[PrimalVec]) -> CheckReport:
    report = CheckReport("isometry")
    for w in samples:
        if not membership(e.source, w):
            raise SampleNotInSource(f"{w} is not a member of the source space")
        y = e.apply(w)
        report.checked += 1
        if not membership(e.target, y):
            report.fail("image not in target", (w, y))
        elif y.sup_norm() != w.sup_norm():
            report.fail(f"norm changed {w.sup_norm()} -> {y.sup_norm()}", (w, y))
    return report


def component_property_check(e: Embedding, samples: Iterable[PrimalVec], span: int = 3) -> CheckReport:
    """(T w)(k_n) = sign_n w(n) for n up to the sample's prefix length plus ``span``."""
    if e.components is None:
        raise WrongKind("embedding carries no component map")
    report = CheckReport("components")
    for w in samples:
        y = e.apply(w)
        for n in range(1, len(w.prefix) + span + 1):
            k, s = e.components(n)
            report.checked += 1
            if y.entry(k) != s * w.entry(n):
                report.fail(f"(Tw)({k}) != {s:+d} w({n})", (w, n))
    return report


def hyperplane_kernel_functional(e: Embedding) -> DualVec:
    """f = r e_1* - sum_i beta(i) e_{i+1}*, whose kernel is the image of W_beta."""
    if e.kind != LIMIT_PREPEND:
        raise WrongKind(f"expected a limit-prepend embedding, got {e.kind}")
    return unit(1, e.params["r"]) - e.source.alpha.shift(1)


@dataclass(frozen=True, eq=False)
class Example511:
    alpha: DualVec
    beta: DualVec
    S: Embedding
    T: Embedding
    P: object

    def gamma(self, n: int) -> Fraction:
        return 2 * (self.alpha.entry(n) - self.beta.entry(n + 1))


def _dyadic_apply(w: PrimalVec) -> PrimalVec:
    p = len(w.prefix)
    return PrimalVec(tuple(w.entry(m.bit_length()) for m in range(1, 2**p)), w.limit)


def catalog_example_5_11() -> Example511:
    """alpha = (1/(n(n+1))), beta = (1/2^n): S into W_beta, T into W_alpha, block averaging P."""
    from .projections import block_average_projection

    alpha, beta = reciprocal(), geometric(Fraction(1, 2), Fraction(1, 2))
    # gamma_n = 2 alpha(n) - 2 beta(n+1) = 2 alpha(n) - beta(n)
    S = Embedding(
        WAlphaSpace(alpha), WAlphaSpace(beta), CATALOG,
        RowMap((functional(alpha.scale(2), beta.scale(-1)),), 1), ComponentMap((), 1),
    )
    T = Embedding(
        WAlphaSpace(beta), WAlphaSpace(alpha), CATALOG,
        FunctionMap(_dyadic_apply, lambda m: unit(m.bit_length()), "dyadic blocks"),
        ComponentMap(rule=lambda n: (2 ** (n - 1), 1)),
    )
    return Example511(alpha, beta, S, T, block_average_projection())
