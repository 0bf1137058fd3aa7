"""The reduced algebra on the disc, stored in the fundamental basis f_{r,P,Q}.

On the disc chart, f_{r,P,Q}(w) = w^P wbar^Q / (1 - w.wbar)^{max(|P|,|Q|)}.
The non-fundamental f_{P,Q} (indices of length n + 1, |P| = |Q|) only appear
transiently and are expanded right away by :func:`from_fpq`.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterator, Sequence

from . import combinatorics as cb
from .ambient import (
    AmbientPoly,
    GroupElement,
    LieElement,
    act_ambient,
    is_u1_invariant,
    moment_map,
)
from .scalars import (
    I,
    ONE,
    SYMBOLIC,
    PoleError,
    QScalar,
    RationalFnZ,
    coeff_conj,
    is_symbolic,
    pochhammer_ratio,
    qs,
    scaled_pochhammer,
    taylor_at_hbar0,
)
from .sparse import SparsePoly, accumulate


class DiscPoly(SparsePoly):
    """Sparse sum of a_{P,Q} f_{r,P,Q}; indices have length n."""

    _offset = 0
    __slots__ = ()

    def filtration_degree(self) -> int:
        return filtration_degree(self)


def filtration_degree(a: DiscPoly) -> int:
    return max((max(sum(P), sum(Q)) for P, Q in a.terms), default=0)


# ---------------------------------------------------------------------------
# basis bookkeeping


def fundamental_key(P: Sequence[int], Q: Sequence[int]) -> tuple[tuple, tuple]:
    """(P, Q) of length n -> (P~, Q~) of length n+1 with f_{r,P,Q} = f_{P~,Q~}."""
    p, q = sum(P), sum(Q)
    return (max(q - p, 0),) + tuple(P), (max(p - q, 0),) + tuple(Q)


@lru_cache(maxsize=100_000)
def _fpq_terms(P: tuple, Q: tuple) -> tuple:
    m = min(P[0], Q[0])
    Pp, Qp = P[1:], Q[1:]
    out = []
    for k in range(m + 1):
        for T in cb.with_degree(len(Pp), k):
            c = comb(m, k) * cb.multinomial(T)
            out.append(((cb.add(Pp, T), cb.add(Qp, T)), c))
    return tuple(out)


def from_fpq(P: Sequence[int], Q: Sequence[int]) -> DiscPoly:
    """Expand f_{P,Q} (|P| = |Q|, length n+1) in the fundamental basis."""
    P, Q = cb.as_index(P), cb.as_index(Q)
    if sum(P) != sum(Q):
        raise ValueError(f"f_{{P,Q}} needs |P| = |Q|, got {P}, {Q}")
    return DiscPoly._wrap(len(P) - 1, {k: QScalar(c) for k, c in _fpq_terms(P, Q)})


def fundamental_keys(n: int, max_degree: int) -> list[tuple[tuple, tuple]]:
    """All (P, Q) with max(|P|, |Q|) <= max_degree, graded-lex sorted."""
    idx = list(cb.up_to_degree(n, max_degree))
    keys = [(P, Q) for P in idx for Q in idx]
    keys.sort(key=lambda k: cb.graded_lex_key(*k))
    return keys


def basis(n: int, P, Q) -> DiscPoly:
    return DiscPoly.monomial(n, P, Q)


# ---------------------------------------------------------------------------
# pointwise product


@lru_cache(maxsize=200_000)
def _mul_mono(P, Q, R, S) -> tuple:
    dp, dr = sum(P) - sum(Q), sum(R) - sum(S)
    if (dp >= 0 and dr >= 0) or (dp <= 0 and dr <= 0):
        return (((cb.add(P, R), cb.add(Q, S)), 1),)
    if dp < 0:  # the other mixed case is the same after swapping factors
        P, Q, R, S, dp, dr = R, S, P, Q, dr, dp
    k = min(-dr, dp)
    PR, QS = cb.add(P, R), cb.add(Q, S)
    out = []
    for t in range(k + 1):
        for T in cb.with_degree(len(P), t):
            out.append(((cb.add(PR, T), cb.add(QS, T)), comb(k, t) * cb.multinomial(T)))
    return tuple(out)


def mul_disc(a: DiscPoly, b: DiscPoly) -> DiscPoly:
    """Pointwise product in the fundamental basis."""
    a._check(b)
    out: dict = {}
    for (P, Q), ca in a.terms.items():
        for (R, S), cbv in b.terms.items():
            cab = ca * cbv
            for key, c in _mul_mono(P, Q, R, S):
                accumulate(out, key, cab * c)
    return DiscPoly._wrap(a.n, out)


# ---------------------------------------------------------------------------
# deformed product


def _hbar_key(hbar):
    return SYMBOLIC if is_symbolic(hbar) else qs(hbar)


@lru_cache(maxsize=400_000)
def _star_mono(P, Q, R, S, hbar) -> tuple:
    Pt, Qt = fundamental_key(P, Q)
    Rt, St = fundamental_key(R, S)
    p, s = sum(Pt), sum(St)
    out: dict = {}
    for T in cb.below(cb.cmin(Pt, St)):
        w = cb.multi_factorial(T) * cb.multi_binom(Pt, T) * cb.multi_binom(St, T)
        if T[0] % 2:
            w = -w
        t = sum(T)
        ratio = pochhammer_ratio(hbar, p + s - t, (p, s), 0)
        c = ratio * w
        if not c:
            continue
        A = tuple(x + y - u for x, y, u in zip(Pt, Rt, T))
        B = tuple(x + y - u for x, y, u in zip(Qt, St, T))
        for key, m in _fpq_terms(A, B):
            accumulate(out, key, c * m)
    return tuple(out.items())


def star(a: DiscPoly, b: DiscPoly, hbar) -> DiscPoly:
    """The deformed product a *_hbar b.

    ``hbar`` is an exact number or ``"symbolic"``.  hbar = 0 is accepted and
    gives the pointwise product (continuous extension, not part of the
    admissible set in the formula).
    """
    a._check(b)
    hk = _hbar_key(hbar)
    if not is_symbolic(hk) and not hk:
        return mul_disc(a, b)
    out: dict = {}
    for (P, Q), ca in a.terms.items():
        for (R, S), cbv in b.terms.items():
            cab = ca * cbv
            for key, c in _star_mono(P, Q, R, S, hk):
                accumulate(out, key, cab * c)
    return DiscPoly._wrap(a.n, out)


def star_power(a: DiscPoly, m: int, hbar) -> DiscPoly:
    out = DiscPoly.constant(a.n, 1)
    for _ in range(m):
        out = star(out, a, hbar)
    return out


def commutator(a: DiscPoly, b: DiscPoly, hbar) -> DiscPoly:
    return star(a, b, hbar) - star(b, a, hbar)


# ---------------------------------------------------------------------------
# reduction maps


def reduce(a: AmbientPoly, hbar) -> DiscPoly:
    """Psi_hbar: d_{P,Q} -> prod_{k<|P|}(1 + 2 hbar k) f_{P,Q}, expanded."""
    if not is_u1_invariant(a):
        raise ValueError("reduce needs a U(1)-invariant polynomial (|P| = |Q| in every term)")
    hk = _hbar_key(hbar)
    out: dict = {}
    for (P, Q), c in a.terms.items():
        f = scaled_pochhammer(hk, sum(P))
        cf = c * f
        for key, m in _fpq_terms(P, Q):
            accumulate(out, key, cf * m)
    return DiscPoly._wrap(a.n, out)


def unreduce(a: DiscPoly, hbar) -> AmbientPoly:
    """Phi_hbar, the right inverse of reduce: f_{r,P,Q} -> d_{P~,Q~} / prod(1 + 2 hbar k)."""
    hk = _hbar_key(hbar)
    out: dict = {}
    for (P, Q), c in a.terms.items():
        m = max(sum(P), sum(Q))
        factor = pochhammer_ratio(hk, 0, (m,), -m)
        accumulate(out, fundamental_key(P, Q), c * factor)
    return AmbientPoly._wrap(a.n, out)


# ---------------------------------------------------------------------------
# involution, bracket, evaluation, norms


def involution(a: DiscPoly) -> DiscPoly:
    return DiscPoly._wrap(a.n, {(Q, P): coeff_conj(c) for (P, Q), c in a.terms.items()})


@lru_cache(maxsize=100_000)
def _poisson_mono(P, Q, R, S) -> tuple:
    n = len(P)
    a, b = DiscPoly.monomial(n, P, Q), DiscPoly.monomial(n, R, S)
    comm = (star(a, b, SYMBOLIC) - star(b, a, SYMBOLIC)).scale(I)
    out = {}
    for key, c in comm.terms.items():
        coeffs = taylor_at_hbar0(c, 1)
        if coeffs[0]:
            raise AssertionError("commutator does not vanish at hbar = 0")
        if coeffs[1]:
            out[key] = coeffs[1]
    return tuple(out.items())


def poisson_disc(a: DiscPoly, b: DiscPoly) -> DiscPoly:
    """Bracket read off as the first-order hbar coefficient of i[a, b]."""
    a._check(b)
    if not (a.is_numeric() and b.is_numeric()):
        raise ValueError("poisson_disc needs hbar-independent coefficients")
    a, b = a.numeric(), b.numeric()
    out: dict = {}
    for (P, Q), ca in a.terms.items():
        for (R, S), cbv in b.terms.items():
            cab = ca * cbv
            for key, c in _poisson_mono(P, Q, R, S):
                accumulate(out, key, cab * c)
    return DiscPoly._wrap(a.n, out)


def _exact(x) -> bool:
    return isinstance(x, (QScalar, int, Fraction))


def eval_disc(a: DiscPoly, w: Sequence, exact: bool | None = None):
    """Value at a disc point w (any w with w.wbar != 1).

    Exact rational arithmetic is used when every coordinate and coefficient is
    exact, unless ``exact=False`` forces floating point.
    """
    if len(w) != a.n:
        raise ValueError(f"point has {len(w)} coordinates, expected {a.n}")
    a = a.numeric()
    w = [qs(x) if isinstance(x, str) else x for x in w]
    if exact is None:
        exact = all(_exact(x) for x in w) and a.is_exact()
    if exact:
        w = [qs(x) for x in w]
        wb = [x.conj() for x in w]
        s = ONE - sum((x * y for x, y in zip(w, wb)), QScalar(0))
    else:
        w = [complex(x) for x in w]
        wb = [x.conjugate() for x in w]
        s = 1 - sum(x * y for x, y in zip(w, wb))
    if not s:
        raise ZeroDivisionError("point lies on the singular locus w.wbar = 1")
    inv_s = 1 / s
    total = QScalar(0) if exact else 0j
    for (P, Q), c in a.terms.items():
        v = c if exact else complex(c)
        for x, e in zip(w, P):
            if e:
                v = v * x ** e
        for x, e in zip(wb, Q):
            if e:
                v = v * x ** e
        m = max(sum(P), sum(Q))
        if m:
            v = v * inv_s ** m
        total = total + v
    return total


def norm_disc(a: DiscPoly, rho: float) -> float:
    """sum |a_{P,Q}| rho^{|P+Q|}."""
    if rho <= 0:
        raise ValueError("rho must be positive")
    return sum(abs(c) * rho ** (sum(P) + sum(Q)) for (P, Q), c in a.numeric().terms.items())


# ---------------------------------------------------------------------------
# symmetries and the moment map


def act_mobius(U: GroupElement, a: DiscPoly) -> DiscPoly:
    """Pullback along the Moebius action: reduce(act(U, unreduce(a)))  at hbar = 0."""
    if not U.in_su1n():
        raise ValueError("U is not in SU(1,n)")
    return reduce(act_ambient(U, unreduce(a, 0)), 0)


def mobius_point(U: GroupElement, w: Sequence):
    """The point U . w, i.e. [U (1, w)] read back in the disc chart."""
    r = [ONE] + [qs(x) if _exact(x) else x for x in w]
    Ur = [sum((U.U[i][j] * r[j] for j in range(len(r))), QScalar(0)) for i in range(len(r))]
    return [x / Ur[0] for x in Ur[1:]]


def moment_disc(u: LieElement) -> DiscPoly:
    """Classical moment map on the disc: the hbar = 0 reduction of J(u).

    Elements of u(1,n) are accepted; the central direction maps to a constant.
    """
    return reduce(moment_map(u), 0)


def sigma_pullback(a: DiscPoly) -> DiscPoly:
    """Pullback by the holomorphic involution Sigma (n = 1 only)."""
    if a.n != 1:
        raise NotImplementedError("sigma_pullback is only defined for n = 1")
    out: dict = {}
    for (P, Q), c in a.terms.items():
        Pt, Qt = fundamental_key(P, Q)
        sign = -1 if (Pt[1] + Qt[0]) % 2 else 1
        for key, m in _fpq_terms((Pt[1], Pt[0]), (Qt[1], Qt[0])):
            accumulate(out, key, c * (sign * m))
    return DiscPoly._wrap(a.n, out)


def dimension_count(n: int, m: int) -> int:
    """Closed form C(n+m, m)^2 for the filtration piece of degree <= m."""
    return comb(n + m, m) ** 2


def iter_invariant_monomials(n: int, m: int) -> Iterator[tuple[tuple, tuple]]:
    """Ambient invariant monomials d_{P,Q} with |P| = |Q| <= m."""
    for k in range(m + 1):
        idx = list(cb.with_degree(n + 1, k))
        for P in idx:
            for Q in idx:
                yield P, Q


__all__ = [
    "DiscPoly", "filtration_degree", "fundamental_key", "from_fpq", "fundamental_keys", "basis",
    "mul_disc", "star", "star_power", "commutator", "reduce", "unreduce", "involution",
    "poisson_disc", "eval_disc", "norm_disc", "act_mobius", "mobius_point", "moment_disc",
    "sigma_pullback", "dimension_count", "iter_invariant_monomials", "PoleError",
]
