from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from wickdisc.charts import (
    ChartPoint,
    chart_radius,
    chart_transition,
    eval_discpoly_at,
    eval_fhat,
    matrix_embed,
    point_from_matrix,
    representative,
    transition_point,
)
from wickdisc.disc import DiscPoly, eval_disc
from wickdisc.scalars import QScalar

HALF = QScalar(Fraction(1, 2))
coord = st.builds(QScalar, st.fractions(-2, 2, max_denominator=7), st.fractions(-2, 2, max_denominator=7))


def f(P, Q, c=1):
    return DiscPoly.monomial(1, (P,), (Q,), c)


def constraint(p, q):
    return -p[0] * q[0] + sum(a * b for a, b in zip(p[1:], q[1:]))


@settings(max_examples=50)
@given(coord, coord, st.sampled_from(["std", "p", "q"]))
def test_representative_constraint(x, y, chart):
    if chart == "std" and x * y == 1:
        return
    p, q = representative(chart, [x], [y])
    assert constraint(p, q) == -1


def test_fhat_examples():
    assert eval_fhat((1, 0), (1, 0), ChartPoint("std", (QScalar(0),), (QScalar(0),))) == 1
    assert eval_fhat((1, 1), (1, 1), ChartPoint("std", (HALF,), (HALF,))) == Fraction(4, 9)
    pt = ChartPoint("p", (QScalar(2),), (QScalar(3),))
    assert eval_discpoly_at(f(1, 1), pt) == 6
    assert eval_discpoly_at(f(3, 1), pt) == 2 ** 3 * 3
    assert eval_discpoly_at(DiscPoly.constant(1, 1), pt) == 1
    with pytest.raises(ValueError):
        eval_fhat((1, 0), (0, 0), pt)


def test_transition_examples():
    x, y = chart_transition("std", "p", [HALF], [HALF])
    assert (x[0], y[0]) == (Fraction(2, 3), Fraction(1, 2))
    x, y = chart_transition("std", "p", [QScalar(Fraction(3, 7))], [QScalar(0)])
    assert x[0] == Fraction(3, 7) and y[0] == 0


@settings(max_examples=50)
@given(coord, coord, st.sampled_from(["std", "p", "q"]), st.sampled_from(["std", "p", "q"]))
def test_transitions_are_coherent(x, y, a, b):
    """Round trips return the point and every chart sees the same function values."""
    try:
        pa = ChartPoint("std", (x,), (y,))
        pa = transition_point(pa, a)
        pb = transition_point(pa, b)
    except ZeroDivisionError:
        return
    back = transition_point(pb, a)
    assert back == pa
    poly = f(2, 1, QScalar(1, 2)) + f(0, 3) + f(1, 1)
    assert eval_discpoly_at(poly, pa) == eval_discpoly_at(poly, pb)


def test_transition_formulas_symbolic():
    """P -> Q coordinates agree with the monomial formulas fhat = x^P y^Q on each side."""
    xs, ys = sp.symbols("x y")
    x, y = chart_transition("p", "q", [xs], [ys])
    assert sp.simplify(x[0] - xs / (1 + xs * ys)) == 0
    assert sp.simplify(y[0] - ys * (1 + xs * ys)) == 0


@settings(max_examples=30)
@given(st.fractions(-Fraction(2, 3), Fraction(2, 3), max_denominator=9),
       st.fractions(-Fraction(2, 3), Fraction(2, 3), max_denominator=9))
def test_diagonal_matches_eval_disc(re, im):
    w = QScalar(re, im)
    if w.abs2() >= 1:
        return
    pt = ChartPoint.diagonal([w])
    assert pt.is_diagonal()
    a = f(2, 1, QScalar(1, 1)) + f(0, 2) + f(3, 3, Fraction(1, 3))
    assert eval_discpoly_at(a, pt) == eval_disc(a, [w])


def test_matrix_embed_examples():
    M = matrix_embed(ChartPoint.diagonal([QScalar(0)]))
    assert M == [[1, 0], [0, 0]]
    assert point_from_matrix([[QScalar(1), QScalar(0)], [QScalar(0), QScalar(0)]]) == ChartPoint.diagonal([QScalar(0)])
    with pytest.raises(ValueError):
        point_from_matrix([[QScalar(2), QScalar(0)], [QScalar(0), QScalar(0)]])


@settings(max_examples=40)
@given(coord, coord, st.sampled_from(["std", "p", "q"]))
def test_embed_identities_and_roundtrip(x, y, chart):
    if chart == "std" and x * y == 1:
        return
    pt = ChartPoint(chart, (x,), (y,))
    M = matrix_embed(pt)
    assert -M[0][0] + M[1][1] == -1
    assert M[0][1] * M[1][0] == M[0][0] * M[1][1]
    back = point_from_matrix(M)
    assert eval_discpoly_at(f(2, 1) + f(1, 3), back) == eval_discpoly_at(f(2, 1) + f(1, 3), pt)


def test_point_from_matrix_float():
    pt = ChartPoint("q", (0.3 + 0.1j,), (-0.7j,))
    M = [[complex(v) for v in row] for row in matrix_embed(pt)]
    back = point_from_matrix(M)
    vals = [complex(eval_discpoly_at(f(2, 1), p)) for p in (pt, back)]
    assert vals[0] == pytest.approx(vals[1])


def test_chart_radius_bounds_monomials():
    pt = ChartPoint.diagonal([0.4 + 0.2j])
    r = chart_radius(pt)
    for P in range(4):
        for Q in range(4):
            assert abs(complex(eval_discpoly_at(f(P, Q), pt))) <= r ** (P + Q) + 1e-12


def test_vectorized_evaluation():
    xs = np.array([0.1, 0.2j, -0.3])
    ys = np.array([0.5, 0.1, 0.2 + 0.1j])
    vals = [complex(eval_discpoly_at(f(2, 1), ChartPoint("p", (x,), (y,)))) for x, y in zip(xs, ys)]
    from wickdisc.charts import poly_evaluator
    out = poly_evaluator(f(2, 1))("p", [xs], [ys])
    assert np.allclose(out, vals)
