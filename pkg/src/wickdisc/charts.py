"""Charts of the doubled disc and off-diagonal evaluation.

A point is stored through chart coordinates (x, y).  Every chart point has a
representative pair (p, q) in C^{1+n} x C^{1+n} with -p0 q0 + sum p_i q_i = -1;
the basis functions are then simply fhat_{P,Q}(p, q) = p^P q^Q.

* std: p = (1, x), q = (1, y) / (1 - x.y)
* P:   p = (1 + x.y, x), q = (1, y)
* Q:   p = (1, x), q = (1 + x.y, y)

All helpers are written against generic scalars, so the same code runs on
exact ``QScalar`` coordinates, Python complex numbers, or numpy arrays.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .disc import DiscPoly, fundamental_key
from .scalars import ONE, QScalar, qs

CHARTS = ("std", "p", "q")


def _dot(x, y):
    acc = 0
    for a, b in zip(x, y):
        acc = acc + a * b
    return acc


def _is_zero(v) -> bool:
    if isinstance(v, np.ndarray):
        return bool(np.any(v == 0))
    return not v


def _conj(v):
    if isinstance(v, np.ndarray):
        return np.conj(v)
    return v.conjugate()


@dataclass(frozen=True)
class ChartPoint:
    chart: str
    x: tuple
    y: tuple

    def __post_init__(self):
        if self.chart not in CHARTS:
            raise ValueError(f"unknown chart {self.chart!r}; expected one of {CHARTS}")
        if len(self.x) != len(self.y):
            raise ValueError("x and y must have the same length")
        object.__setattr__(self, "x", tuple(self.x))
        object.__setattr__(self, "y", tuple(self.y))

    @property
    def n(self) -> int:
        return len(self.x)

    @classmethod
    def diagonal(cls, w: Sequence) -> "ChartPoint":
        """The std-chart image of a disc point w: (x, y) = (w, conj w)."""
        w = tuple(qs(v) if isinstance(v, str) else v for v in w)
        return cls("std", w, tuple(_conj(v) for v in w))

    def is_diagonal(self) -> bool:
        return self.chart == "std" and all(b == _conj(a) for a, b in zip(self.x, self.y))

    def exact(self) -> bool:
        return all(isinstance(v, QScalar) for v in self.x + self.y)

    def to_json(self) -> dict:
        c = lambda v: [float(complex(v).real), float(complex(v).imag)]  # noqa: E731
        return {"chart": self.chart, "x": [c(v) for v in self.x], "y": [c(v) for v in self.y]}

    @classmethod
    def from_json(cls, doc: dict) -> "ChartPoint":
        try:
            chart = str(doc["chart"]).lower()
            conv = lambda v: complex(v[0], v[1]) if isinstance(v, (list, tuple)) else qs(v)  # noqa: E731
            return cls(chart, tuple(conv(v) for v in doc["x"]), tuple(conv(v) for v in doc["y"]))
        except (KeyError, TypeError, IndexError) as exc:
            raise ValueError(f"malformed chart point: {exc}") from None


def representative(chart: str, x: Sequence, y: Sequence) -> tuple[list, list]:
    """(p, q) with -p0 q0 + p.q = -1 for the chart point (x, y)."""
    xy = _dot(x, y)
    if chart == "std":
        s = 1 - xy
        if _is_zero(s):
            raise ZeroDivisionError("std chart needs x.y != 1")
        inv = 1 / s
        return [ONE if not isinstance(s, np.ndarray) else np.ones_like(s)] + list(x), [inv] + [v * inv for v in y]
    if chart == "p":
        one = np.ones_like(xy) if isinstance(xy, np.ndarray) else 1
        return [1 + xy] + list(x), [one] + list(y)
    if chart == "q":
        one = np.ones_like(xy) if isinstance(xy, np.ndarray) else 1
        return [one] + list(x), [1 + xy] + list(y)
    raise ValueError(f"unknown chart {chart!r}")


def coords_from_representative(chart: str, p: Sequence, q: Sequence) -> tuple[list, list]:
    """Chart coordinates of the class [p, q]."""
    if chart == "std":
        if _is_zero(p[0]) or _is_zero(q[0]):
            raise ZeroDivisionError("point is outside the std chart (p0 = 0 or q0 = 0)")
        return [v / p[0] for v in p[1:]], [v / q[0] for v in q[1:]]
    if chart == "p":
        if _is_zero(q[0]):
            raise ZeroDivisionError("point is outside the P chart (q0 = 0)")
        return [v * q[0] for v in p[1:]], [v / q[0] for v in q[1:]]
    if chart == "q":
        if _is_zero(p[0]):
            raise ZeroDivisionError("point is outside the Q chart (p0 = 0)")
        return [v / p[0] for v in p[1:]], [v * p[0] for v in q[1:]]
    raise ValueError(f"unknown chart {chart!r}")


def chart_transition(src: str, dst: str, x: Sequence, y: Sequence) -> tuple[list, list]:
    """Move coordinates from chart ``src`` to chart ``dst``.

    std -> P is (x, y) -> (x / (1 - x.y), y); P -> Q is
    (x, y) -> (x / (1 + x.y), (1 + x.y) y).  All transitions go through the
    representative, so compositions agree by construction.
    """
    if src == dst:
        return list(x), list(y)
    p, q = representative(src, x, y)
    return coords_from_representative(dst, p, q)


def transition_point(pt: ChartPoint, dst: str) -> ChartPoint:
    x, y = chart_transition(pt.chart, dst, pt.x, pt.y)
    return ChartPoint(dst, tuple(x), tuple(y))


def _mono(p, P):
    v = 1
    for base, e in zip(p, P):
        if e:
            v = v * base ** e
    return v


def eval_fhat(P: Sequence[int], Q: Sequence[int], pt: ChartPoint):
    """fhat_{P,Q} at a chart point (|P| = |Q|, index length n + 1)."""
    if sum(P) != sum(Q):
        raise ValueError("eval_fhat needs |P| = |Q|")
    if len(P) != pt.n + 1:
        raise ValueError("index length must be n + 1")
    p, q = representative(pt.chart, pt.x, pt.y)
    return _mono(p, P) * _mono(q, Q)


def eval_discpoly_at(a: DiscPoly, pt: ChartPoint):
    """delta_pt(a): the holomorphic extension of a evaluated at a chart point."""
    if a.n != pt.n:
        raise ValueError(f"dimension mismatch: poly n={a.n}, point n={pt.n}")
    return _eval_terms(a.numeric(), pt.chart, pt.x, pt.y)


def _eval_terms(a: DiscPoly, chart: str, x, y):
    p, q = representative(chart, x, y)
    exact = a.is_exact() and all(isinstance(v, QScalar) for v in list(x) + list(y))
    total = 0
    pw_p: dict = {}
    pw_q: dict = {}

    def power(cache, base, i, e):
        key = (i, e)
        if key not in cache:
            cache[key] = base[i] ** e
        return cache[key]

    for (P, Q), c in a.terms.items():
        Pt, Qt = fundamental_key(P, Q)
        v = c if exact else complex(c)
        for i, e in enumerate(Pt):
            if e:
                v = v * power(pw_p, p, i, e)
        for i, e in enumerate(Qt):
            if e:
                v = v * power(pw_q, q, i, e)
        total = total + v
    return total


def poly_evaluator(a: DiscPoly):
    """Vectorized evaluator (chart, x, y) -> values for use with the analytic module."""
    a = a.numeric()

    def f(chart, x, y):
        return _eval_terms(a, chart, x, y)

    return f


def matrix_embed(pt: ChartPoint) -> list[list]:
    """M^{mu nu} = fhat_{E_mu, E_nu}(pt) = p^mu q^nu."""
    p, q = representative(pt.chart, pt.x, pt.y)
    return [[pm * qn for qn in q] for pm in p]


def point_from_matrix(A, tol: float = 1e-9) -> ChartPoint:
    """Recover the chart point whose matrix embedding is A.

    Rational (QScalar) input is checked exactly; anything else uses the
    relative tolerance ``tol``.
    """
    size = len(A)
    exact = all(isinstance(v, QScalar) for row in A for v in row)
    if not exact:
        A = [[complex(v) for v in row] for row in A]
    scale = max(1.0, max(abs(complex(v)) for row in A for v in row))

    def small(v) -> bool:
        return (not v) if exact else abs(v) <= tol * scale * scale

    trace = sum((A[i][i] * (-1 if i == 0 else 1) for i in range(size)), 0)
    if not small(trace + 1):
        raise ValueError(f"constraint h_(mu nu) A^(mu nu) = -1 violated (got {trace})")
    for m in range(size):
        for nu in range(size):
            for r in range(size):
                for s in range(size):
                    if not small(A[m][nu] * A[r][s] - A[m][s] * A[r][nu]):
                        raise ValueError(f"rank-one constraint violated at ({m},{nu},{r},{s})")
    rho = max(range(size), key=lambda i: abs(complex(A[i][i])))
    if small(A[rho][rho]) if not exact else not A[rho][rho]:
        raise ValueError("all diagonal entries vanish")
    p = [A[m][rho] for m in range(size)]
    q = [A[rho][nu] / A[rho][rho] for nu in range(size)]
    for chart in CHARTS:
        try:
            x, y = coords_from_representative(chart, p, q)
        except ZeroDivisionError:
            continue
        return ChartPoint(chart, tuple(x), tuple(y))
    raise ValueError("point lies outside all three charts")


def chart_radius(pt: ChartPoint) -> float:
    """Largest coordinate modulus of pt in the P and Q charts.

    Every fundamental monomial satisfies |f_{r,P,Q}(pt)| <= radius^{|P+Q|}.
    """
    out = 0.0
    for chart in ("p", "q"):
        x, y = chart_transition(pt.chart, chart, pt.x, pt.y)
        out = max([out] + [abs(complex(v)) for v in list(x) + list(y)])
    return out
