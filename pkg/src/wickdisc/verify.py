"""Executable verification suites.

Every suite returns a :class:`Report`.  Reports serialize to one JSON line
each; the optional runtime field is left out unless asked for, so two runs
with the same seed and configuration produce identical lines.
"""
from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Iterable, Sequence

import mpmath
import numpy as np

from . import combinatorics as cb
from .ambient import AmbientPoly, GroupElement, LieElement, g_element, mul_ambient, wick_star
from .analytic import expand, extract_coeff, tail_estimate
from .charts import ChartPoint, chart_radius, eval_discpoly_at, eval_fhat, poly_evaluator
from .disc import (
    DiscPoly,
    act_mobius,
    eval_disc,
    fundamental_keys,
    involution,
    iter_invariant_monomials,
    moment_disc,
    mul_disc,
    norm_disc,
    poisson_disc,
    reduce,
    sigma_pullback,
    star,
    unreduce,
)
from .expr import parse_expr
from .scalars import (
    I,
    SYMBOLIC,
    QScalar,
    RationalFnZ,
    is_symbolic,
    pochhammer,
    poles_in_hbar,
    qs,
)


def _jsonable(x):
    if isinstance(x, (QScalar, Fraction, RationalFnZ)):
        return str(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


@dataclass
class Report:
    suite: str
    passed: bool
    measured: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)
    config: dict = field(default_factory=dict)
    runtime_s: float | None = None

    def to_dict(self, timing: bool = False) -> dict:
        d = {"suite": self.suite, "passed": bool(self.passed), "measured": _jsonable(self.measured),
             "bounds": _jsonable(self.bounds), "config": _jsonable(self.config)}
        if timing and self.runtime_s is not None:
            d["runtime_s"] = self.runtime_s
        return d

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True)


def _timed(fn: Callable[..., Report]) -> Callable[..., Report]:
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        rep = fn(*args, **kwargs)
        rep.runtime_s = time.perf_counter() - t0
        return rep

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _basis(n: int, key) -> DiscPoly:
    return DiscPoly.monomial(n, key[0], key[1])


# ---------------------------------------------------------------------------
# compact samples


@dataclass
class CompactSample:
    """A finite (hence compact) set of chart points."""

    points: list

    def __post_init__(self):
        if not self.points:
            raise ValueError("a compact sample needs at least one point")
        n = self.points[0].n
        if any(p.n != n for p in self.points):
            raise ValueError("all points must have the same n")

    @property
    def n(self) -> int:
        return self.points[0].n

    @property
    def rho(self) -> float:
        """2 + max |fhat_{E_mu, E_nu}| over the sample."""
        size = self.n + 1
        m = 0.0
        for pt in self.points:
            for mu in range(size):
                for nu in range(size):
                    v = eval_fhat(cb.unit(size, mu), cb.unit(size, nu), pt)
                    m = max(m, abs(complex(v)))
        return 2.0 + m

    @classmethod
    def random(cls, n: int, count: int, seed: int = 0, radius: float = 0.6,
               diagonal: bool = False) -> "CompactSample":
        """Std-chart points with coordinates of modulus < radius."""
        rng = np.random.default_rng(seed)
        pts = []
        for _ in range(count):
            x = radius / math.sqrt(n) * rng.uniform(0, 1, n) * np.exp(2j * np.pi * rng.uniform(0, 1, n))
            if diagonal:
                y = np.conj(x)
            else:
                y = radius / math.sqrt(n) * rng.uniform(0, 1, n) * np.exp(2j * np.pi * rng.uniform(0, 1, n))
            pts.append(ChartPoint("std", tuple(complex(v) for v in x), tuple(complex(v) for v in y)))
        return cls(pts)


def sup_over(a: DiscPoly, K: CompactSample) -> float:
    return max(abs(complex(eval_discpoly_at(a, pt))) for pt in K.points)


# ---------------------------------------------------------------------------
# positivity


def _exact_psd(G: list[list[QScalar]]) -> bool:
    """Exact semidefiniteness test for a Hermitian matrix by pivoted LDL^*."""
    M = [row[:] for row in G]
    idx = list(range(len(M)))
    while idx:
        piv = max(idx, key=lambda i: M[i][i].re)
        d = M[piv][piv].re
        if d < 0:
            return False
        if d == 0:
            # remaining diagonal is <= 0; semidefinite only if the block is zero
            return all(not M[i][j] for i in idx for j in idx)
        idx.remove(piv)
        for i in idx:
            f = M[i][piv] / d
            if not f:
                continue
            for j in idx:
                M[i][j] = M[i][j] - f * M[piv][j]
    return True


@_timed
def check_positivity_gram(w: Sequence, hbar, max_degree: int, dps: int = 50,
                          exterior_probe: bool = False) -> Report:
    """Gram matrix of delta_w(f_i^* * f_j) over the degree <= max_degree basis.

    With ``exterior_probe=True`` points outside the disc are allowed; the
    eigenvalues are reported but nothing is asserted about them.
    """
    w = [qs(v) if isinstance(v, (str, int, Fraction)) else v for v in w]
    n = len(w)
    r2 = sum(abs(complex(v)) ** 2 for v in w)
    interior = r2 < 1
    if not interior and not exterior_probe:
        raise ValueError("the Gram check needs a point inside the disc (|w|^2 < 1)")
    h = qs(hbar)
    if h.im or h.re < 0:
        raise ValueError("hbar must be real and >= 0")
    keys = fundamental_keys(n, max_degree)
    basis = [_basis(n, k) for k in keys]
    exact = all(isinstance(v, QScalar) for v in w)
    G = [[eval_disc(star(involution(a), b, h), w, exact=exact) for b in basis] for a in basis]
    if exact:
        with mpmath.workdps(dps):
            A = mpmath.matrix([[mpmath.mpc(mpmath.mpf(v.re.numerator) / v.re.denominator,
                                           mpmath.mpf(v.im.numerator) / v.im.denominator) for v in row]
                               for row in G])
            ev = mpmath.eighe(A, eigvals_only=True)
            eigs = sorted(float(mpmath.re(e)) for e in ev)
        psd = _exact_psd(G)
    else:
        Gc = np.array([[complex(v) for v in row] for row in G])
        eigs = sorted(np.linalg.eigvalsh(0.5 * (Gc + Gc.conj().T)).tolist())
        psd = None
    min_eig = eigs[0]
    return Report("gram", min_eig >= -1e-10 or not interior,
                  {"min_eigenvalue": min_eig, "asserted": interior, "max_eigenvalue": eigs[-1], "size": len(keys),
                   "exact_psd": psd, "diagonal": [G[i][i] for i in range(len(keys))] if len(keys) <= 16 else None},
                  {"min_eigenvalue": -1e-10},
                  {"w": [str(v) for v in w], "hbar": str(h), "max_degree": max_degree})


# ---------------------------------------------------------------------------
# classical limit


def _slope(hs: Sequence[float], devs: Sequence[float]):
    pts = [(math.log(h), math.log(d)) for h, d in zip(hs, devs) if d > 0]
    if len(pts) < 2:
        return None
    x, y = zip(*pts)
    return float(np.polyfit(x, y, 1)[0])


def default_hbar_grid(k_max: int = 12) -> list[Fraction]:
    return [Fraction(1, 2 ** (k + 1)) for k in range(1, k_max + 1)]


@_timed
def classical_limit_scan(a: DiscPoly, b: DiscPoly, K: CompactSample,
                         hbars: Sequence | None = None, zero_tol: float = 1e-300) -> Report:
    """sup_K |a *_h b - ab| and sup_K |i/h [a,b] - {a,b}| along a grid of h."""
    hbars = default_hbar_grid() if hbars is None else [Fraction(h) for h in hbars]
    if not hbars:
        raise ValueError("empty hbar grid")
    if any(not 0 < h <= Fraction(1, 2) for h in hbars):
        raise ValueError("hbar grid must lie in (0, 1/2]")
    n = a.n
    a, b = a.numeric(), b.numeric()
    ab = mul_disc(a, b)
    br = poisson_disc(a, b)
    rho = K.rho
    na, nb = norm_disc(a, 4 * rho), norm_disc(b, 4 * rho)
    c_prod = 2 * 2 ** (1 + n) * na * nb
    c_comm = 16 * 2 ** (1 + n) * na * nb
    dev_p, dev_c, ok_p, ok_c = [], [], True, True
    for h in hbars:
        s_ab, s_ba = star(a, b, h), star(b, a, h)
        dp = sup_over(s_ab - ab, K)
        dc = sup_over((s_ab - s_ba).scale(I / QScalar(h)) - br, K)
        dev_p.append(dp)
        dev_c.append(dc)
        ok_p &= dp <= c_prod * float(h)
        ok_c &= dc <= c_comm * float(h)
    hf = [float(h) for h in hbars]
    slope_p, slope_c = _slope(hf, dev_p), _slope(hf, dev_c)
    zero_p = all(d <= zero_tol for d in dev_p)
    zero_c = all(d <= zero_tol for d in dev_c)
    slope_ok_p = zero_p or (slope_p is not None and abs(slope_p - 1) <= 0.1)
    slope_ok_c = zero_c or (slope_c is not None and abs(slope_c - 1) <= 0.1)
    passed = ok_p and ok_c and slope_ok_p and slope_ok_c
    return Report("limit", passed,
                  {"hbar": hf, "product_deviation": dev_p, "commutator_deviation": dev_c,
                   "product_slope": slope_p, "commutator_slope": slope_c,
                   "product_identically_zero": zero_p, "commutator_identically_zero": zero_c,
                   "rho": rho},
                  {"product_constant": c_prod, "commutator_constant": c_comm, "slope": [0.9, 1.1],
                   "bound_ok": {"product": ok_p, "commutator": ok_c}},
                  {"points": len(K.points)})


# ---------------------------------------------------------------------------
# poles


@_timed
def pole_report(a: DiscPoly, b: DiscPoly) -> Report:
    """Poles in hbar of every coefficient of a * b (symbolic)."""
    prod = star(a, b, SYMBOLIC)
    finite: dict = {}
    details = []
    anomalies = []
    infinity = False
    max_order = 0
    for (P, Q), c in prod.sorted_items():
        for p in poles_in_hbar(c):
            rec = dict(p.as_dict(), P=list(P), Q=list(Q))
            if p.kind == "finite":
                finite[str(p.hbar)] = max(finite.get(str(p.hbar), 0), p.order)
                max_order = max(max_order, p.order)
                details.append(rec)
            elif p.kind == "infinity":
                infinity = True
            else:
                anomalies.append(rec)
    passed = not anomalies and max_order <= 1
    return Report("poles", passed,
                  {"finite_poles": finite, "max_order": max_order, "details": details,
                   "anomalies": anomalies, "z_zero_root": infinity},
                  {"max_order": 1})


def example_residue(j: int, k: int, t: int, m: int) -> Fraction:
    """Closed-form z-residue of (z)_{j+k-t} / ((z)_j (z)_k) at z = -m."""
    return Fraction((-1) ** m * factorial(j + k - t - m - 1),
                    factorial(m) * factorial(j - m - 1) * factorial(k - m - 1))


# ---------------------------------------------------------------------------
# inequality instances


def _prod_1px(x: Fraction, start: int, count: int) -> Fraction:
    out = Fraction(1)
    for i in range(start, start + count):
        out *= 1 + x * i
    return out


@_timed
def check_inequalities(p_max: int = 12, xs: Sequence = (0, Fraction(1, 7), Fraction(1, 3), Fraction(1, 2), 1),
                       t_max: int = 12, k0_max: int = 6, m_max: int = 30,
                       hbar_intervals: Sequence = ((Fraction(1, 100), Fraction(1, 10)),
                                                   (Fraction(1, 10), Fraction(1, 2)),
                                                   (Fraction(1, 2), Fraction(3))),
                       samples: int = 5) -> Report:
    """Exact rational instances of three product inequalities."""
    xs = [Fraction(x) for x in xs]
    bad: list = []
    count = {"ratio": 0, "falling": 0, "pochhammer": 0}
    # 1 <= prod_{i<p+s}(1+xi) / (prod_{i<p}(1+xi) prod_{i<s}(1+xi)) <= 1 + x 2^{p+s}
    for x in xs:
        for p in range(p_max + 1):
            for s in range(p_max + 1):
                r = _prod_1px(x, 0, p + s) / (_prod_1px(x, 0, p) * _prod_1px(x, 0, s))
                count["ratio"] += 1
                if not (1 <= r <= 1 + x * 2 ** (p + s)):
                    bad.append(("ratio", str(x), p, s, str(r)))
    # x^t t! / prod_{k=k0}^{k0+t-1}(1+xk) <= x^m 2^t m!
    for x in xs:
        for t in range(t_max + 1):
            for k0 in range(k0_max + 1):
                lhs = x ** t * factorial(t) / _prod_1px(x, k0, t)
                for m in range(t + 1):
                    count["falling"] += 1
                    if lhs > x ** m * 2 ** t * factorial(m):
                        bad.append(("falling", str(x), t, k0, m))
    # alpha^m m! <= (z)_m <= omega^m m! on sampled hbar intervals
    consts = []
    for lo, hi in hbar_intervals:
        lo, hi = Fraction(lo), Fraction(hi)
        hs = [lo + (hi - lo) * Fraction(i, samples - 1) for i in range(samples)]
        zs = [1 / (2 * h) for h in hs]
        ratios = [(z + k) / (k + 1) for z in zs for k in range(m_max)]
        alpha, omega = min(ratios), max(ratios)
        consts.append((str(lo), str(hi), str(alpha), str(omega)))
        for z in zs:
            for m in range(m_max + 1):
                val = pochhammer(z, m).re
                count["pochhammer"] += 1
                if not (alpha ** m * factorial(m) <= val <= omega ** m * factorial(m)):
                    bad.append(("pochhammer", str(z), m))
    return Report("inequalities", not bad,
                  {"checked": count, "counterexamples": bad[:20], "pochhammer_constants": consts},
                  config={"p_max": p_max, "t_max": t_max, "k0_max": k0_max, "m_max": m_max})


# ---------------------------------------------------------------------------
# divergence of the star exponential


@_timed
def check_divergence(m_max: int = 12, M: int = 40, tol: float = 1e-3) -> Report:
    """Star powers of f_{r,0,1} at hbar = 1/2 and the growth of their partial sums."""
    a = DiscPoly.monomial(1, (0,), (1,))
    power = DiscPoly.constant(1, 1)
    exact_ok = True
    for m in range(m_max + 1):
        if m:
            power = star(power, a, Fraction(1, 2))
        expected = DiscPoly.monomial(1, (0,), (m,), factorial(m))
        exact_ok &= power == expected
    w = [1 / math.sqrt(2)]
    vals = [eval_disc(DiscPoly.monomial(1, (0,), (m,)), w).real for m in range(M + 2)]
    partial = np.cumsum(vals)
    ratios = (partial[1:] / partial[:-1]).tolist()
    final = ratios[M - 1]  # S_{M} / S_{M-1}
    ok_ratio = abs(final - math.sqrt(2)) <= tol and all(r >= math.sqrt(2) - tol for r in ratios[M // 2:])
    return Report("divergence", bool(exact_ok and ok_ratio),
                  {"star_powers_exact": exact_ok, "ratio_at_M": final, "value_2^(m/2)_max_err":
                   max(abs(v - 2 ** (m / 2)) / 2 ** (m / 2) for m, v in enumerate(vals))},
                  {"ratio_target": math.sqrt(2), "tol": tol}, {"m_max": m_max, "M": M})


# ---------------------------------------------------------------------------
# dimensions


@_timed
def check_dimensions(n: int, m_max: int) -> Report:
    counts, ok = [], True
    for m in range(m_max + 1):
        keys = len(fundamental_keys(n, m))
        amb = sum(1 for _ in iter_invariant_monomials(n, m))
        exp_keys = comb(n + m, m) ** 2
        exp_amb = sum(comb(n + k, k) ** 2 for k in range(m + 1))
        counts.append({"m": m, "fundamental": keys, "expected": exp_keys,
                       "ambient_invariant": amb, "ambient_expected": exp_amb})
        ok &= keys == exp_keys and amb == exp_amb
    return Report("dimensions", ok, {"counts": counts}, config={"n": n, "m_max": m_max})


# ---------------------------------------------------------------------------
# algebraic cross-checks


@_timed
def differential_oracle(a: DiscPoly, b: DiscPoly, hbar) -> Report:
    """star(a,b) against reduce(wick_star(unreduce a, unreduce b))."""
    lhs = star(a, b, hbar)
    rhs = reduce(wick_star(unreduce(a, hbar), unreduce(b, hbar), hbar), hbar)
    return Report("oracle", lhs == rhs, {"terms": len(lhs)}, config={"hbar": str(hbar)})


def _pairs(n: int, max_degree: int):
    keys = fundamental_keys(n, max_degree)
    for k1 in keys:
        for k2 in keys:
            yield k1, k2


def _summary(name: str, failures: list, checked: int, config: dict) -> Report:
    return Report(name, not failures, {"checked": checked, "failures": failures[:10]}, config=config)


@_timed
def suite_star_power(m_max: int = 12) -> Report:
    a = DiscPoly.monomial(1, (0,), (1,))
    power = DiscPoly.constant(1, 1)
    failures = []
    for m in range(1, m_max + 1):
        power = star(power, a, Fraction(1, 2))
        if power != DiscPoly.monomial(1, (0,), (m,), factorial(m)):
            failures.append(m)
    return _summary("star_power", failures, m_max, {"m_max": m_max, "hbar": "1/2"})


@_timed
def suite_oracle(n: int, max_degree: int, hbar=SYMBOLIC) -> Report:
    failures, checked = [], 0
    for k1, k2 in _pairs(n, max_degree):
        a, b = _basis(n, k1), _basis(n, k2)
        lhs = star(a, b, hbar)
        rhs = reduce(wick_star(unreduce(a, hbar), unreduce(b, hbar), hbar), hbar)
        checked += 1
        if lhs != rhs:
            failures.append([k1, k2])
    return _summary("oracle", failures, checked, {"n": n, "max_degree": max_degree, "hbar": str(hbar)})


@_timed
def suite_associativity(n: int, max_degree: int, hbar=SYMBOLIC) -> Report:
    keys = fundamental_keys(n, max_degree)
    basis = {k: _basis(n, k) for k in keys}
    prods = {(k1, k2): star(basis[k1], basis[k2], hbar) for k1 in keys for k2 in keys}
    failures, checked = [], 0
    for k1 in keys:
        for k2 in keys:
            ab = prods[(k1, k2)]
            for k3 in keys:
                left = star(ab, basis[k3], hbar)
                right = star(basis[k1], prods[(k2, k3)], hbar)
                checked += 1
                if left != right:
                    failures.append([k1, k2, k3])
    return _summary("associativity", failures, checked, {"n": n, "max_degree": max_degree, "hbar": str(hbar)})


@_timed
def suite_kernel(n: int, max_degree: int) -> Report:
    """Psi_hbar(d_{P,Q} *~ (g + 1)) = 0 for |P| = |Q| <= max_degree."""
    gp1 = g_element(n) + 1
    failures, checked = [], 0
    for P, Q in iter_invariant_monomials(n, max_degree):
        d = AmbientPoly.monomial(n, P, Q)
        prod = wick_star(d, gp1, SYMBOLIC)
        shift = AmbientPoly.constant(n, RationalFnZ.from_factors(sum(P), {0: -1}))  # 2 hbar |P|
        expected = mul_ambient(gp1 + shift, d)
        checked += 1
        if prod != expected or not reduce(prod, SYMBOLIC).is_zero():
            failures.append([P, Q])
    return _summary("kernel", failures, checked, {"n": n, "max_degree": max_degree})


@_timed
def suite_symmetries(max_degree_sigma: int = 3, max_degree_mobius: int = 2,
                     hbar_involution=Fraction(1, 3), max_degree_involution: int = 3) -> Report:
    fails: dict = {"sigma": [], "mobius": [], "involution": []}
    checked = {"sigma": 0, "mobius": 0, "involution": 0}
    for k1, k2 in _pairs(1, max_degree_sigma):
        a, b = _basis(1, k1), _basis(1, k2)
        checked["sigma"] += 1
        if sigma_pullback(star(a, b, SYMBOLIC)) != star(sigma_pullback(a), sigma_pullback(b), SYMBOLIC):
            fails["sigma"].append([k1, k2])
    U = GroupElement.boost(1, Fraction(5, 4), Fraction(3, 4))
    for k1, k2 in _pairs(1, max_degree_mobius):
        a, b = _basis(1, k1), _basis(1, k2)
        checked["mobius"] += 1
        if act_mobius(U, star(a, b, SYMBOLIC)) != star(act_mobius(U, a), act_mobius(U, b), SYMBOLIC):
            fails["mobius"].append([k1, k2])
    for k1, k2 in _pairs(1, max_degree_involution):
        a, b = _basis(1, k1).scale(QScalar(1, 2)), _basis(1, k2).scale(QScalar(3, -1))
        checked["involution"] += 1
        lhs = involution(star(a, b, hbar_involution))
        rhs = star(involution(b), involution(a), hbar_involution)
        if lhs != rhs:
            fails["involution"].append([k1, k2])
    passed = not any(fails.values())
    return Report("symmetries", passed, {"checked": checked, "failures": {k: v[:5] for k, v in fails.items()}},
                  config={"boost": ["5/4", "3/4"], "involution_hbar": str(hbar_involution)})


def su11_basis() -> list[LieElement]:
    return [LieElement([[I, 0], [0, -I]]), LieElement([[0, 1], [1, 0]]), LieElement([[0, I], [-I, 0]])]


@_timed
def suite_moment(max_degree: int = 2) -> Report:
    """i[a, J(u)] is hbar times an hbar-free element equal to {a, J(u)}."""
    failures, checked = [], 0
    z2 = RationalFnZ.z() * 2
    for u in su11_basis():
        J = moment_disc(u)
        for key in fundamental_keys(1, max_degree):
            a = _basis(1, key)
            comm = (star(a, J, SYMBOLIC) - star(J, a, SYMBOLIC)).scale(I)
            quotient = {}
            linear = True
            for k, c in comm.terms.items():
                q = c * z2  # c / hbar
                if not q.is_constant():
                    linear = False
                    break
                quotient[k] = q.constant_value()
            checked += 1
            if not linear or DiscPoly(1, quotient) != poisson_disc(a, J):
                failures.append([str(u), key])
    return _summary("moment", failures, checked, {"max_degree": max_degree})


@_timed
def suite_biorthogonality(max_degree: int = 4, nodes: int = 64, std_radius: float = 0.4,
                          tol: float = 1e-10) -> Report:
    keys = fundamental_keys(1, max_degree)
    worst_delta, worst_std = 0.0, 0.0
    for k1 in keys:
        f = poly_evaluator(_basis(1, k1))
        for k2 in keys:
            c = extract_coeff(f, k2[0], k2[1], 1.0, nodes)
            worst_delta = max(worst_delta, abs(c - (1.0 if k1 == k2 else 0.0)))
            cs = extract_coeff(f, k2[0], k2[1], std_radius, nodes, chart="std")
            cp = extract_coeff(f, k2[0], k2[1], std_radius, nodes)
            worst_std = max(worst_std, abs(cs - cp))
    return Report("biorthogonality", worst_delta <= tol and worst_std <= tol,
                  {"max_delta_error": worst_delta, "max_std_vs_chart": worst_std},
                  {"tol": tol}, {"max_degree": max_degree, "nodes": nodes})


def interior_diagonal_points(count: int, seed: int = 0, max_modulus: float = 0.5) -> list[ChartPoint]:
    rng = np.random.default_rng(seed)
    pts = []
    for _ in range(count):
        w = max_modulus * math.sqrt(rng.uniform(0, 1)) * np.exp(2j * np.pi * rng.uniform(0, 1))
        pts.append(ChartPoint.diagonal([complex(w)]))
    return pts


@_timed
def suite_expansion(max_degree: int = 8, nodes: int = 64, points: int = 20, seed: int = 0,
                    tol: float = 1e-9) -> Report:
    f = parse_expr("exp(x1*y1)", chart="p")
    pts = interior_diagonal_points(points, seed)
    rho = max(chart_radius(p) for p in pts)
    series = expand(f, max_degree, 1.0, nodes, rho=rho)
    coef_err = max(abs(complex(series.body.coeff((m,), (m,))) - 1 / factorial(m)) for m in range(max_degree + 1))
    recon = []
    for pt in pts:
        direct = complex(f(pt.chart, [np.array(pt.x[0])], [np.array(pt.y[0])]))
        approx = complex(eval_discpoly_at(series.body, pt))
        recon.append(abs(direct - approx))
    ok = coef_err <= tol and max(recon) <= series.tail_bound
    return Report("expansion", ok,
                  {"max_coeff_error": coef_err, "max_reconstruction_error": max(recon),
                   "tail_bound": series.tail_bound, "rho": rho},
                  {"coeff_tol": tol, "tail_bound_heuristic": True},
                  {"max_degree": max_degree, "nodes": nodes, "points": points, "seed": seed})


def random_disc_poly(rng: np.random.Generator, n: int, max_degree: int, terms: int = 3) -> DiscPoly:
    keys = fundamental_keys(n, max_degree)
    nonconst = [k for k in keys if any(k[0]) or any(k[1])]
    picks = rng.choice(len(nonconst), size=min(terms, len(nonconst)), replace=False)
    out = {}
    for i in picks:
        num = int(rng.integers(-4, 5)) or 1
        den = int(rng.integers(1, 4))
        im = int(rng.integers(-2, 3))
        out[nonconst[int(i)]] = QScalar(Fraction(num, den), Fraction(im, den))
    return DiscPoly(n, out)


@_timed
def suite_limit(pairs: int = 10, points: int = 16, seed: int = 0, max_degree: int = 2, k_max: int = 12) -> Report:
    rng = np.random.default_rng(seed)
    K = CompactSample.random(1, points, seed)
    results = []
    for _ in range(pairs):
        a = random_disc_poly(rng, 1, max_degree)
        b = random_disc_poly(rng, 1, max_degree)
        rep = classical_limit_scan(a, b, K, default_hbar_grid(k_max))
        results.append({"passed": rep.passed, "product_slope": rep.measured["product_slope"],
                        "commutator_slope": rep.measured["commutator_slope"],
                        "bound_ok": rep.bounds["bound_ok"]})
    return Report("limit", all(r["passed"] for r in results), {"pairs": results},
                  config={"pairs": pairs, "points": points, "seed": seed, "k_max": k_max})


@_timed
def suite_poles(max_degree: int = 3) -> Report:
    ex = pole_report(DiscPoly.monomial(1, (2,), (2,)), DiscPoly.monomial(1, (2,), (2,)))
    fp = ex.measured["finite_poles"]
    t0 = [d for d in ex.measured["details"] if d["P"] == [4] and d["Q"] == [4]]
    example_ok = (fp == {"-1/2": 1} and len(t0) == 1 and t0[0]["residue_z"] == str(example_residue(2, 2, 0, 1)))
    bad, checked = [], 0
    for k1, k2 in _pairs(1, max_degree):
        rep = pole_report(_basis(1, k1), _basis(1, k2))
        checked += 1
        if not rep.passed:
            bad.append([k1, k2])
    return Report("poles", example_ok and not bad,
                  {"example_finite_poles": fp, "example_t0_residue": t0[0]["residue_z"] if t0 else None,
                   "pairs_checked": checked, "failures": bad[:10]},
                  {"residue_formula": str(example_residue(2, 2, 0, 1))}, {"max_degree": max_degree})


@_timed
def suite_gram(points: Sequence = ("0", "3/10", "3/5*i", "9/10"),
               hbars: Sequence = ("0", "1/10", "1/2", "1"), max_degree: int = 3) -> Report:
    rows = []
    for w in points:
        for h in hbars:
            rep = check_positivity_gram([qs(w)], h, max_degree)
            rows.append({"w": str(w), "hbar": str(h), "min_eigenvalue": rep.measured["min_eigenvalue"],
                         "exact_psd": rep.measured["exact_psd"], "passed": rep.passed})
    return Report("gram", all(r["passed"] for r in rows), {"cases": rows}, {"min_eigenvalue": -1e-10},
                  {"max_degree": max_degree})


@_timed
def suite_dimensions(n_max: int = 3, m_max: int = 8) -> Report:
    reps = [check_dimensions(n, m_max) for n in range(1, n_max + 1)]
    return Report("dimensions", all(r.passed for r in reps),
                  {"per_n": {str(n): r.measured["counts"][-1] for n, r in zip(range(1, n_max + 1), reps)}},
                  config={"n_max": n_max, "m_max": m_max})


SUITES: dict[str, Callable[..., Report]] = {
    "star-power": suite_star_power,
    "oracle": suite_oracle,
    "associativity": suite_associativity,
    "kernel": suite_kernel,
    "biorthogonality": suite_biorthogonality,
    "expansion": suite_expansion,
    "limit": suite_limit,
    "poles": suite_poles,
    "gram": suite_gram,
    "symmetries": suite_symmetries,
    "moment": suite_moment,
    "dimensions": suite_dimensions,
    "inequalities": check_inequalities,
    "divergence": check_divergence,
}
