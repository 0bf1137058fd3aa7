import math

import numpy as np
import pytest

from wickdisc.analytic import (
    TruncatedSeries,
    expand,
    extract_coeff,
    series_from_poly,
    star_series,
    tail_estimate,
    tail_weight,
)
from wickdisc.charts import ChartPoint, eval_discpoly_at, poly_evaluator
from wickdisc.disc import DiscPoly, fundamental_keys, star
from wickdisc.expr import parse_expr

EXP = parse_expr("exp(x1*y1)", chart="p")


def f(P, Q, c=1, n=1):
    if isinstance(P, int):
        P, Q = (P,), (Q,)
    return DiscPoly.monomial(n, P, Q, c)


def test_biorthogonality_of_f11():
    ev = poly_evaluator(f(1, 1))
    for P, Q in fundamental_keys(1, 4):
        want = 1.0 if (P, Q) == ((1,), (1,)) else 0.0
        assert abs(extract_coeff(ev, P, Q, 1.0, 64) - want) < 1e-12


def test_constant_function():
    one = lambda chart, x, y: np.ones_like(x[0])  # noqa: E731
    assert abs(extract_coeff(one, (0,), (0,)) - 1) < 1e-14
    assert abs(extract_coeff(one, (1,), (2,))) < 1e-14


def test_exp_coefficients():
    for m in range(9):
        assert abs(extract_coeff(EXP, (m,), (m,), 1.0, 64) - 1 / math.factorial(m)) < 1e-10


@pytest.mark.parametrize("key", [((2,), (1,)), ((0,), (3,)), ((1,), (1,)), ((2,), (2,))])
def test_std_chart_formula_agrees(key):
    ev = poly_evaluator(f(2, 1, 0.5) + f(0, 3, 2j) + f(1, 1) + f(2, 2, -1))
    P, Q = key
    assert abs(extract_coeff(ev, P, Q, 0.4, 64, chart="std") - extract_coeff(ev, P, Q, 1.0, 64)) < 1e-10


def test_std_chart_formula_n2():
    a = f((1, 0), (0, 1), 1, 2) + f((2, 0), (1, 1), 3, 2) + f((0, 1), (0, 0), 1j, 2)
    ev = poly_evaluator(a)
    for (P, Q), c in a.terms.items():
        assert abs(extract_coeff(ev, P, Q, 0.3, 16, chart="std") - complex(c)) < 1e-10
        assert abs(extract_coeff(ev, P, Q, 1.0, 16) - complex(c)) < 1e-10


def test_extract_errors():
    with pytest.raises(ValueError):
        extract_coeff(EXP, (1,), (2,), chart="p")
    with pytest.raises(ValueError):
        extract_coeff(EXP, (1,), (1,), radius=1.2, chart="std")
    with pytest.raises(ValueError):
        extract_coeff(EXP, (40,), (40,), nodes=64)


def test_expand_recovers_polynomial():
    a = f(2, 1, 0.5 - 1j) + f(0, 3, 2) + f(1, 1) + DiscPoly.constant(1, 3)
    s = expand(poly_evaluator(a), 4)
    assert s.body.filtration_degree() <= 4
    for key in set(a.terms) | set(s.body.terms):
        assert abs(complex(s.body.coeff(*key)) - complex(a.coeff(*key))) < 1e-10


def test_expand_exp_and_reconstruction():
    rng = np.random.default_rng(1)
    pts = [ChartPoint.diagonal([0.5 * math.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())]) for _ in range(20)]
    from wickdisc.charts import chart_radius
    rho = max(chart_radius(p) for p in pts)
    s = expand(EXP, 6, rho=rho)
    for m in range(7):
        assert abs(complex(s.body.coeff((m,), (m,))) - 1 / math.factorial(m)) < 1e-10
    assert s.tail_bound >= 0
    for pt in pts:
        direct = complex(EXP(pt.chart, [np.array(pt.x[0])], [np.array(pt.y[0])]))
        assert abs(direct - complex(eval_discpoly_at(s.body, pt))) <= s.tail_bound


def test_tail_estimate_properties():
    bounded = lambda chart, x, y: np.ones_like(x[0])  # noqa: E731
    zero = lambda chart, x, y: np.zeros_like(x[0])  # noqa: E731
    for d in range(6):
        geometric = sum(k * 2.0 ** -k for k in range(d + 1, 200))
        assert tail_estimate(bounded, 0.5, d) <= 2 ** 4 * geometric
    assert tail_estimate(zero, 0.5, 3) == 0
    bounds = [tail_estimate(EXP, 0.3, d) for d in range(8)]
    assert all(b1 > b2 for b1, b2 in zip(bounds, bounds[1:]))


def test_tail_weight_matches_enumeration():
    for n in (1, 2):
        for d in range(4):
            keys_in = set(fundamental_keys(n, d))
            total = sum(2.0 ** -(sum(P) + sum(Q)) for P, Q in fundamental_keys(n, 30) if (P, Q) not in keys_in)
            assert tail_weight(n, d) == pytest.approx(total, rel=1e-6)


def test_star_series():
    a = expand(EXP, 4)
    b = series_from_poly(f(1, 1), rho=a.rho)
    s = star_series(a, b, 0.5)
    assert s.body == star(a.body, b.body, 0.5)
    a5 = expand(EXP, 5)
    diff = star_series(a5, b, 0.5).body - s.body - star(a5.body - a.body, b.body, 0.5)
    assert all(abs(complex(c)) < 1e-12 for c in diff.terms.values())
    one = series_from_poly(DiscPoly.constant(1, 1), rho=a.rho)
    assert star_series(a, one, 0.5).body == a.body
    p, q = series_from_poly(f(2, 1)), series_from_poly(f(0, 1))
    exact = star_series(p, q, 0.5)
    assert exact.body == star(f(2, 1), f(0, 1), 0.5) and exact.tail_bound == 0


def test_truncated_series_validation():
    with pytest.raises(ValueError):
        TruncatedSeries(DiscPoly.zero(1), 2, -1.0, 0.5)
