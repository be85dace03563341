"""Representing matrices a(i, n) of W_alpha, basis vectors e_i^n and the Delta determinants.

Delta(k, m) is the determinant of the m x m almost-triangular window anchored
at row k: entry (i, c) is a(k+i, k+c) for c >= i, -1 on the subdiagonal and
0 below it (0-based i, c).  It satisfies

    Delta(k, m) = a(k, k+m-1) + sum_{j=k+1}^{k+m-1} a(j, k+m-1) Delta(k, j-k)

and gives the expansion coefficient of e_j^n along e_k^k as Delta(k, j-k).
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegenerateTail, PreconditionViolated
from .seqcore import DualVec, PrimalVec, Q, Scalar, pairing


class RepresentingMatrix:
    """Lazily generated a(i, n) = alpha(i) / (1 - A(n+1)), A(n) = sum_{j>=n} alpha(j)."""

    def __init__(self, alpha: DualVec):
        self.alpha = alpha
        self._denoms: dict = {}
        self._delta: dict = {}
        self._lock = threading.Lock()

    def A(self, n: int) -> Fraction:
        return self.alpha.signed_tail_from(n)

    def _denom(self, n: int) -> Fraction:
        d = self._denoms.get(n)
        if d is None:
            d = 1 - self.A(n + 1)
            with self._lock:
                self._denoms[n] = d
        if d == 0:
            raise DegenerateTail(f"A({n + 1}) = 1, so a(i, {n}) is undefined")
        return d

    def a(self, i: int, n: int) -> Fraction:
        if not 1 <= i <= n:
            raise IndexError(f"need 1 <= i <= n, got ({i}, {n})")
        return self.alpha.entry(i) / self._denom(n)

    def column(self, n: int) -> list:
        return [self.a(i, n) for i in range(1, n + 1)]

    def row_sum(self, n: int) -> Fraction:
        return sum((abs(v) for v in self.column(n)), Fraction(0))

    def residual(self, i: int, n: int) -> Fraction:
        """a(i, n) - alpha(i) = alpha(i) A(n+1) / (1 - A(n+1))."""
        return self.alpha.entry(i) * self.A(n + 1) / self._denom(n)

    def basis_vector(self, i: int, n: int) -> PrimalVec:
        """e_i^n: 1 at i, 0 elsewhere up to n, then constantly a(i, n)."""
        limit = self.a(i, n)
        return PrimalVec(tuple(Fraction(int(j == i)) for j in range(1, n + 1)), limit)

    def window(self, k: int, m: int) -> list:
        return [
            [self.a(k + i, k + c) if c >= i else Fraction(-1 if c == i - 1 else 0) for c in range(m)]
            for i in range(m)
        ]

    def delta_direct(self, k: int, m: int) -> Fraction:
        return determinant(self.window(k, m))

    def delta_recursive(self, k: int, m: int) -> Fraction:
        if m < 1:
            raise ValueError("window size must be positive")
        key = (k, m)
        hit = self._delta.get(key)
        if hit is not None:
            return hit
        for w in range(1, m + 1):
            if (k, w) in self._delta:
                continue
            n = k + w - 1
            v = self.a(k, n) + sum(
                (self.a(j, n) * self._delta[(k, j - k)] for j in range(k + 1, n + 1)), Fraction(0)
            )
            with self._lock:
                self._delta[(k, w)] = v
        return self._delta[key]

    def expand_in_basis(self, k: int, n: int) -> list:
        """Coefficients c_1..c_n of e_k^k in {e_i^n}, iterating
        e_i^l = e_i^(l+1) + a(i, l) e_(l+1)^(l+1)."""
        if not 1 <= k <= n:
            raise IndexError(f"need 1 <= k <= n, got ({k}, {n})")
        coeff = [Fraction(0)] * (n + 1)
        coeff[k] = Fraction(1)
        for level in range(k, n):
            coeff[level + 1] = sum((coeff[i] * self.a(i, level) for i in range(1, level + 1)), Fraction(0))
        return coeff[1:]


def determinant(rows: list) -> Fraction:
    """Exact determinant by Gaussian elimination over the rationals."""
    m = [list(map(Fraction, r)) for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if m[r][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


def check_recursion(mat: RepresentingMatrix, i: int, n: int) -> bool:
    """e_i^n == e_i^(n+1) + a(i, n) e_(n+1)^(n+1) as vectors."""
    lhs = mat.basis_vector(i, n)
    rhs = mat.basis_vector(i, n + 1) + mat.basis_vector(n + 1, n + 1).scale(mat.a(i, n))
    return lhs == rhs


def is_member(mat: RepresentingMatrix, x: PrimalVec) -> bool:
    return x.limit == pairing(mat.alpha, x)


@dataclass
class LimitReport:
    k: int
    tol: Fraction
    eps: Fraction
    N: int
    M: int
    n: int
    J: int
    delta: Fraction
    series: Fraction
    residual: Fraction
    tail_bound: Fraction
    passed: bool
    notes: list = field(default_factory=list)


def _first(pred, start: int = 1) -> int:
    n = start
    while not pred(n):
        n += 1
    return n


def limit_condition_check(mat: RepresentingMatrix, k: int, tol: Scalar) -> LimitReport:
    """Compare Delta(k, n) with alpha(k) + sum_{j=k+1}^J alpha(j) Delta(k, j-k).

    With eps = tol/6: N has tail mass beyond N at most eps, M > N makes the
    perturbation of the first N columns at most eps/N each, n >= M+1 brings
    a(k, n+k-1) within eps of alpha(k), and J truncates the series where the
    neglected tail, with |Delta| <= 1, is at most eps.
    """
    tol = Q(tol)
    alpha = mat.alpha
    if alpha.l1_norm() != 1:
        raise PreconditionViolated(f"need |alpha| = 1, got {alpha.l1_norm()}")
    if tol <= 0:
        raise PreconditionViolated("tol must be positive")
    eps = tol / 6
    N = _first(lambda n: alpha.abs_tail_from(n + 1) <= eps)
    top = max((abs(alpha.entry(j)) for j in range(1, N + 1)), default=Fraction(0))

    def close(M):
        t = alpha.abs_tail_from(M + 2)
        return t < 1 and top * t / (1 - t) <= eps / N

    M = _first(close, N + 1)
    n = _first(lambda n: abs(alpha.entry(k) - mat.a(k, n + k - 1)) < eps, M + 1)
    J = _first(lambda j: alpha.abs_tail_from(j + 1) <= eps, k)
    delta = mat.delta_recursive(k, n)
    series = alpha.entry(k) + sum(
        (alpha.entry(j) * mat.delta_recursive(k, j - k) for j in range(k + 1, J + 1)), Fraction(0)
    )
    residual = abs(delta - series)
    return LimitReport(
        k, tol, eps, N, M, n, J, delta, series, residual, alpha.abs_tail_from(J + 1),
        residual <= tol, ["|Delta| <= 1 bounds the neglected series tail"],
    )
