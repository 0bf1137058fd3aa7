"""Coefficient extraction by trapezoidal Cauchy integrals and truncated expansions.

An *evaluator* is any callable ``f(chart, x, y)`` where ``x`` and ``y`` are
sequences of n numpy arrays holding chart coordinates; it returns an array of
values.  HoloExpr objects and :func:`charts.poly_evaluator` both qualify.

In the P chart (used when |P| >= |Q|) the coefficient of f_{r,P,Q} is the
Taylor coefficient of x^P y^Q; the Q chart covers |P| < |Q|.  On an
equispaced torus grid all Taylor coefficients come out of one FFT.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, sqrt
from typing import Callable, Sequence

import numpy as np

from .disc import DiscPoly, fundamental_keys, norm_disc, star
from .sparse import accumulate

Evaluator = Callable


def _torus(n: int, r: float, N: int):
    """Coordinates on the 2n-torus of radius r, as (x, y) lists of arrays."""
    nodes = r * np.exp(2j * np.pi * np.arange(N) / N)
    grids = np.meshgrid(*([nodes] * (2 * n)), indexing="ij")
    return list(grids[:n]), list(grids[n:])


def sample(f: Evaluator, chart: str, n: int, r: float, N: int) -> np.ndarray:
    """Values of f on the torus grid, shape (N,)*2n."""
    x, y = _torus(n, r, N)
    vals = np.asarray(f(chart, x, y), dtype=complex)
    return np.broadcast_to(vals, (N,) * (2 * n)).copy()


def taylor_grid(values: np.ndarray, r: float) -> np.ndarray:
    """All Taylor coefficients (aliased mod N) from torus samples of radius r."""
    coeffs = np.fft.fftn(values) / values.size
    # the entry at multi-index K carries r^{|K|}; undo it (aliases ignored)
    idx = np.indices(values.shape).sum(axis=0)
    return coeffs / r ** idx


def _check(n: int, P, Q, nodes: int):
    if nodes < 4:
        raise ValueError("need at least 4 quadrature nodes")
    if len(P) != n or len(Q) != n:
        raise ValueError(f"index length must be n = {n}")
    if max(max(P, default=0), max(Q, default=0)) >= nodes // 2:
        raise ValueError("degree too high for the number of nodes (aliasing)")


def extract_coeff(f: Evaluator, P: Sequence[int], Q: Sequence[int], radius: float | None = None,
                  nodes: int = 64, chart: str = "auto", n: int | None = None) -> complex:
    """Approximate the Schauder coefficient of f_{r,P,Q} in f.

    chart="auto" picks P when |P| >= |Q| and Q otherwise; chart="std" uses the
    standard-chart integrand with weight (1 - x.y)^{max(|P|,|Q|) - 1}, which
    needs radius < 1/sqrt(n).
    """
    P, Q = tuple(P), tuple(Q)
    n = len(P) if n is None else n
    _check(n, P, Q, nodes)
    p, q = sum(P), sum(Q)
    if chart == "auto":
        chart = "p" if p >= q else "q"
    if chart == "p" and p < q or chart == "q" and p > q:
        raise ValueError(f"the {chart.upper()} chart formula needs |P| {'>=' if chart == 'p' else '<='} |Q|")
    if chart == "std":
        if radius is None:
            radius = 1 / (2 * sqrt(n))
        if not 0 < radius < 1 / sqrt(n):
            raise ValueError("std chart needs radius in (0, 1/sqrt(n))")
    elif radius is None:
        radius = 1.0
    if radius <= 0:
        raise ValueError("radius must be positive")
    x, y = _torus(n, radius, nodes)
    vals = np.asarray(f(chart, x, y), dtype=complex)
    if chart == "std":
        xy = sum(a * b for a, b in zip(x, y))
        vals = vals * (1 - xy) ** (max(p, q) - 1)
    # coefficient of x^P y^Q: average against the conjugate characters
    phase = 0
    for k, e in enumerate(P + Q):
        grid = x[k] if k < n else y[k - n]
        phase = phase + e * np.angle(grid)
    total = np.mean(vals * np.exp(-1j * phase))
    return complex(total / radius ** (p + q))


@dataclass
class TruncatedSeries:
    """body + (tail with sum |c| rho^{|P+Q|} <= tail_bound)."""

    body: DiscPoly
    max_degree: int
    tail_bound: float
    rho: float
    radius: float | None = None
    nodes: int | None = None
    heuristic: bool = True

    def __post_init__(self):
        if self.tail_bound < 0:
            raise ValueError("tail_bound must be >= 0")

    def metadata(self) -> dict:
        return {"max_degree": self.max_degree, "tail_bound": self.tail_bound, "rho": self.rho,
                "radius": self.radius, "nodes": self.nodes, "tail_bound_heuristic": self.heuristic}


def tail_weight(n: int, max_degree: int) -> float:
    """sum of 2^{-|P+Q|} over the keys with max(|P|,|Q|) > max_degree."""
    full = 2.0 ** n  # sum_j C(n-1+j, j) 2^{-j}
    part = sum(comb(n - 1 + j, j) * 2.0 ** (-j) for j in range(max_degree + 1))
    return max(full * full - part * part, 0.0)


def sup_on_polydiscs(f: Evaluator, n: int, rho: float, nodes: int = 32) -> float:
    """Sampled sup of |f| over the radius-2 rho polydiscs of the P and Q charts.

    By the maximum principle the sup sits on the distinguished boundary, so
    only the torus is sampled.  Still a sample, hence heuristic.
    """
    out = 0.0
    for chart in ("p", "q"):
        vals = sample(f, chart, n, 2 * rho, nodes)
        out = max(out, float(np.max(np.abs(vals))))
    return out


def tail_estimate(f: Evaluator, rho: float, max_degree: int, nodes: int = 32, n: int = 1) -> float:
    """Bound on the Schauder tail beyond max_degree, measured with weight rho^{|P+Q|}.

    Cauchy estimates on radius 2 rho give |c_{P,Q}| <= sup|f| (2 rho)^{-|P+Q|},
    so the tail is at most sup|f| times :func:`tail_weight`.
    """
    if rho <= 0:
        raise ValueError("rho must be positive")
    return sup_on_polydiscs(f, n, rho, nodes) * tail_weight(n, max_degree)


def expand(f: Evaluator, max_degree: int, radius: float = 1.0, nodes: int = 64, n: int = 1,
           rho: float | None = None, tail_nodes: int = 32, drop_below: float = 1e-13) -> TruncatedSeries:
    """Truncated Schauder expansion of f up to max(|P|,|Q|) <= max_degree."""
    if nodes < 4:
        raise ValueError("need at least 4 quadrature nodes")
    if 2 * max_degree >= nodes:
        raise ValueError("max_degree too high for the number of nodes")
    grids = {c: taylor_grid(sample(f, c, n, radius, nodes), radius) for c in ("p", "q")}
    terms: dict = {}
    for P, Q in fundamental_keys(n, max_degree):
        grid = grids["p" if sum(P) >= sum(Q) else "q"]
        c = complex(grid[tuple(P) + tuple(Q)])
        if abs(c) > drop_below:
            accumulate(terms, (P, Q), c)
    body = DiscPoly._wrap(n, terms)
    if rho is None:
        rho = radius / 2
    tb = tail_estimate(f, rho, max_degree, tail_nodes, n)
    return TruncatedSeries(body, max_degree, tb, rho, radius, nodes)


def star_series(a: TruncatedSeries, b: TruncatedSeries, hbar) -> TruncatedSeries:
    """Product of two truncated series.

    The body is exact.  The tail bound ||A|| tb_b + tb_a ||B|| + tb_a tb_b
    treats the product as submultiplicative, which is only a heuristic.
    """
    if a.rho != b.rho:
        raise ValueError("both series must use the same rho")
    body = star(a.body, b.body, hbar)
    if a.tail_bound == 0 and b.tail_bound == 0:
        tb = 0.0
    else:
        tb = (norm_disc(a.body, a.rho) * b.tail_bound + a.tail_bound * norm_disc(b.body, b.rho)
              + a.tail_bound * b.tail_bound)
    return TruncatedSeries(body, a.max_degree + b.max_degree, tb, a.rho, heuristic=True)


def series_from_poly(a: DiscPoly, rho: float = 1.0) -> TruncatedSeries:
    """A polynomial viewed as a series with an empty tail."""
    return TruncatedSeries(a, a.filtration_degree(), 0.0, rho, heuristic=False)
