"""Polynomials on C^{1+n} in the basis d_{P,Q} = z^P zbar^Q and their Wick product.

The metric is h = diag(-1, 1, ..., 1).  ``hbar`` arguments are either an
exact number or ``"symbolic"``; in the symbolic mode the powers (2 hbar)^k are
stored as z^{-k} with z = 1/(2 hbar).
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial, lgamma, exp, log, sqrt

from . import combinatorics as cb
from .scalars import (
    I,
    ONE,
    ZERO,
    QScalar,
    RationalFnZ,
    coeff_conj,
    is_symbolic,
    qs,
)
from .sparse import SparsePoly, accumulate


class AmbientPoly(SparsePoly):
    """Sparse sum of a_{P,Q} d_{P,Q}; indices have length n + 1."""

    _offset = 1
    __slots__ = ()

    def is_invariant(self) -> bool:
        return is_u1_invariant(self)


def metric(mu: int) -> int:
    return -1 if mu == 0 else 1


def g_element(n: int) -> AmbientPoly:
    """g = -d_{E0,E0} + sum_i d_{Ei,Ei}."""
    terms = {}
    for mu in range(n + 1):
        e = cb.unit(n + 1, mu)
        terms[(e, e)] = metric(mu)
    return AmbientPoly(n, terms)


def is_u1_invariant(a: AmbientPoly) -> bool:
    return all(sum(P) == sum(Q) for P, Q in a.terms)


# ---------------------------------------------------------------------------
# products


def _hbar_key(hbar):
    return "symbolic" if is_symbolic(hbar) else qs(hbar)


def two_hbar_power(hbar, k: int):
    """(2 hbar)^k, as 1/z^k in symbolic mode."""
    if is_symbolic(hbar):
        return RationalFnZ.from_factors(1, {0: -k})
    return (2 * qs(hbar)) ** k


@lru_cache(maxsize=200_000)
def _wick_mono(P, Q, R, S, hbar) -> tuple:
    out: dict = {}
    for T in cb.below(cb.cmin(P, S)):
        c = cb.multi_factorial(T) * cb.multi_binom(P, T) * cb.multi_binom(S, T)
        if T[0] % 2:
            c = -c
        t = sum(T)
        coef = QScalar(c) if t == 0 else two_hbar_power(hbar, t) * c
        key = (tuple(p + r - x for p, r, x in zip(P, R, T)), tuple(q + s - x for q, s, x in zip(Q, S, T)))
        accumulate(out, key, coef)
    return tuple(out.items())


def wick_star(a: AmbientPoly, b: AmbientPoly, hbar) -> AmbientPoly:
    """Wick product a *~ b, exact in both modes."""
    a._check(b)
    hk = _hbar_key(hbar)
    out: dict = {}
    for (P, Q), ca in a.terms.items():
        for (R, S), cbv in b.terms.items():
            cab = ca * cbv
            for key, c in _wick_mono(P, Q, R, S, hk):
                accumulate(out, key, cab * c)
    return AmbientPoly._wrap(a.n, out)


def mul_ambient(a: AmbientPoly, b: AmbientPoly) -> AmbientPoly:
    """Pointwise product: exponents add."""
    a._check(b)
    out: dict = {}
    for (P, Q), ca in a.terms.items():
        for (R, S), cbv in b.terms.items():
            accumulate(out, (cb.add(P, R), cb.add(Q, S)), ca * cbv)
    return AmbientPoly._wrap(a.n, out)


def d_z(a: AmbientPoly, mu: int) -> AmbientPoly:
    """Partial derivative in z^mu."""
    out: dict = {}
    for (P, Q), c in a.terms.items():
        if P[mu]:
            P2 = P[:mu] + (P[mu] - 1,) + P[mu + 1:]
            accumulate(out, (P2, Q), c * P[mu])
    return AmbientPoly._wrap(a.n, out)


def d_zbar(a: AmbientPoly, mu: int) -> AmbientPoly:
    """Partial derivative in zbar^mu."""
    out: dict = {}
    for (P, Q), c in a.terms.items():
        if Q[mu]:
            Q2 = Q[:mu] + (Q[mu] - 1,) + Q[mu + 1:]
            accumulate(out, (P, Q2), c * Q[mu])
    return AmbientPoly._wrap(a.n, out)


def poisson_ambient(a: AmbientPoly, b: AmbientPoly) -> AmbientPoly:
    """{a,b} = 2i h^{mu mu} (d_mu a dbar_mu b - d_mu b dbar_mu a)."""
    a._check(b)
    out = AmbientPoly.zero(a.n)
    for mu in range(a.n + 1):
        term = mul_ambient(d_z(a, mu), d_zbar(b, mu)) - mul_ambient(d_z(b, mu), d_zbar(a, mu))
        out = out + term.scale(metric(mu))
    return out.scale(2 * I)


def involution_ambient(a: AmbientPoly) -> AmbientPoly:
    """d_{P,Q} -> d_{Q,P} with conjugated coefficients."""
    return AmbientPoly._wrap(a.n, {(Q, P): coeff_conj(c) for (P, Q), c in a.terms.items()})


def norm_ambient(a: AmbientPoly, rho: float) -> float:
    """sum |a_{P,Q}| rho^{|P+Q|} sqrt(|P+Q|!)."""
    if rho <= 0:
        raise ValueError("rho must be positive")
    total = 0.0
    for (P, Q), c in a.numeric().terms.items():
        k = sum(P) + sum(Q)
        if k <= 150:
            w = rho ** k * sqrt(factorial(k))
        else:
            w = exp(k * log(rho) + 0.5 * lgamma(k + 1))
        total += abs(c) * w
    return total


# ---------------------------------------------------------------------------
# Lie algebra, group, moment map


def _matrix(M) -> tuple:
    return tuple(tuple(qs(x) for x in row) for row in M)


def _matmul(A, B):
    return tuple(
        tuple(sum((A[i][k] * B[k][j] for k in range(len(B))), ZERO) for j in range(len(B[0])))
        for i in range(len(A))
    )


def _dagger(A):
    return tuple(tuple(A[j][i].conj() for j in range(len(A))) for i in range(len(A[0])))


def _hmat(size: int):
    return tuple(tuple(QScalar(metric(i)) if i == j else ZERO for j in range(size)) for i in range(size))


def _det(A) -> QScalar:
    """Exact determinant by fraction-free-ish elimination."""
    M = [list(r) for r in A]
    n = len(M)
    det = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            return ZERO
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        det = det * M[col][col]
        inv = M[col][col].inverse()
        for r in range(col + 1, n):
            f = M[r][col] * inv
            if f:
                for c in range(col, n):
                    M[r][c] = M[r][c] - f * M[col][c]
    return det


class LieElement:
    """u in u(1,n): u^dagger h = -h u."""

    __slots__ = ("u",)

    def __init__(self, u):
        self.u = _matrix(u)
        size = len(self.u)
        if any(len(r) != size for r in self.u):
            raise ValueError("u must be square")

    @property
    def n(self) -> int:
        return len(self.u) - 1

    def in_u1n(self) -> bool:
        h = _hmat(len(self.u))
        lhs = _matmul(_dagger(self.u), h)
        rhs = _matmul(h, self.u)
        return all(lhs[i][j] == -rhs[i][j] for i in range(len(h)) for j in range(len(h)))

    def in_su1n(self) -> bool:
        return self.in_u1n() and sum((self.u[i][i] for i in range(len(self.u))), ZERO) == 0

    def bracket(self, other: "LieElement") -> "LieElement":
        uv = _matmul(self.u, other.u)
        vu = _matmul(other.u, self.u)
        return LieElement([[uv[i][j] - vu[i][j] for j in range(len(uv))] for i in range(len(uv))])

    def __repr__(self) -> str:
        return f"LieElement({[[str(x) for x in r] for r in self.u]})"


class GroupElement:
    """U in U(1,n): U^dagger h U = h."""

    __slots__ = ("U",)

    def __init__(self, U):
        self.U = _matrix(U)

    @property
    def n(self) -> int:
        return len(self.U) - 1

    def in_u1n(self) -> bool:
        h = _hmat(len(self.U))
        return _matmul(_matmul(_dagger(self.U), h), self.U) == h

    def in_su1n(self) -> bool:
        return self.in_u1n() and _det(self.U) == 1

    @classmethod
    def boost(cls, n: int, alpha, beta) -> "GroupElement":
        """[[alpha, beta], [beta, alpha]] on coordinates 0, 1, identity elsewhere."""
        rows = [[ONE if i == j else ZERO for j in range(n + 1)] for i in range(n + 1)]
        a, b = qs(alpha), qs(beta)
        rows[0][0], rows[0][1], rows[1][0], rows[1][1] = a, b, b, a
        return cls(rows)

    def __repr__(self) -> str:
        return f"GroupElement({[[str(x) for x in r] for r in self.U]})"


def moment_map(u: LieElement) -> AmbientPoly:
    """J(u) = (1/2i) h_{mu nu} u^mu_rho d_{E_rho, E_nu}."""
    if not u.in_u1n():
        raise ValueError("u is not in u(1,n)")
    n = u.n
    half_over_i = QScalar(0, Fraction(-1, 2))
    terms: dict = {}
    for mu in range(n + 1):
        for rho in range(n + 1):
            c = u.u[mu][rho]
            if c:
                accumulate(terms, (cb.unit(n + 1, rho), cb.unit(n + 1, mu)), c * metric(mu) * half_over_i)
    return AmbientPoly._wrap(n, terms)


def _power(base: AmbientPoly, k: int, cache: dict, key) -> AmbientPoly:
    if (key, k) in cache:
        return cache[(key, k)]
    if k == 0:
        out = AmbientPoly.constant(base.n, 1)
    else:
        out = mul_ambient(_power(base, k - 1, cache, key), base)
    cache[(key, k)] = out
    return out


def act_ambient(U: GroupElement, a: AmbientPoly) -> AmbientPoly:
    """Pullback a o (r -> U r): z^mu -> U^mu_nu z^nu, zbar^mu -> conj(U^mu_nu) zbar^nu."""
    n = a.n
    if U.n != n:
        raise ValueError(f"dimension mismatch: U acts on n={U.n}, poly has n={n}")
    zero = cb.zero(n + 1)
    hol = [AmbientPoly._wrap(n, {(cb.unit(n + 1, nu), zero): U.U[mu][nu]
                                 for nu in range(n + 1) if U.U[mu][nu]}) for mu in range(n + 1)]
    anti = [AmbientPoly._wrap(n, {(zero, cb.unit(n + 1, nu)): U.U[mu][nu].conj()
                                  for nu in range(n + 1) if U.U[mu][nu]}) for mu in range(n + 1)]
    cache: dict = {}
    out = AmbientPoly.zero(n)
    for (P, Q), c in a.terms.items():
        term = AmbientPoly.constant(n, c)
        for mu in range(n + 1):
            if P[mu]:
                term = mul_ambient(term, _power(hol[mu], P[mu], cache, ("h", mu)))
            if Q[mu]:
                term = mul_ambient(term, _power(anti[mu], Q[mu], cache, ("a", mu)))
        out = out + term
    return out
