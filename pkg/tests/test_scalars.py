from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import assume, given, settings, strategies as st

from wickdisc.scalars import (
    I,
    SYMBOLIC,
    PoleError,
    QScalar,
    RationalFnZ,
    eval_at_hbar,
    hbar_form,
    pochhammer,
    pochhammer_bounds,
    pochhammer_ratio,
    poles_in_hbar,
    rf_arith,
    scaled_pochhammer,
    taylor_at_hbar0,
)

Z = sp.Symbol("z")
fracs = st.fractions(min_value=-5, max_value=5, max_denominator=7)
qscalars = st.builds(QScalar, fracs, fracs)
small = st.lists(st.integers(-4, 4), min_size=1, max_size=4)


def rf_from(num, den):
    return RationalFnZ.from_coeffs([QScalar(x) for x in num], [QScalar(x) for x in den])


def sym_from(num, den):
    return sum(c * Z ** i for i, c in enumerate(num)) / sum(c * Z ** i for i, c in enumerate(den))


# -- QScalar -------------------------------------------------------------------


@given(qscalars, qscalars)
def test_qscalar_field_ops_match_complex(a, b):
    ca, cb = complex(a), complex(b)
    assert abs(complex(a + b) - (ca + cb)) < 1e-12
    assert abs(complex(a * b) - ca * cb) < 1e-9
    assert (a * b).conj() == a.conj() * b.conj()
    if b:
        assert (a / b) * b == a


def test_qscalar_parse_and_str():
    assert QScalar.parse("1/2+3/4i") == QScalar(Fraction(1, 2), Fraction(3, 4))
    assert QScalar.parse("-i") == QScalar(0, -1)
    assert QScalar.parse("0.6i") == QScalar(0, Fraction(3, 5))
    assert str(QScalar(1, -2)) == "1-2*i"
    assert I * I == -1


# -- pochhammer ----------------------------------------------------------------


def test_pochhammer_examples():
    assert pochhammer(QScalar(7), 0) == 1
    assert pochhammer(QScalar(1), 3) == 6
    assert pochhammer(SYMBOLIC, 2) == RationalFnZ.from_factors(1, {0: 1, 1: 1})


@given(st.fractions(min_value=-3, max_value=6, max_denominator=5), st.integers(0, 9))
def test_pochhammer_matches_sympy(z0, m):
    assert pochhammer(QScalar(z0), m) == QScalar(Fraction(str(sp.rf(sp.Rational(z0.numerator, z0.denominator), m))))


@given(st.fractions(min_value=Fraction(1, 20), max_value=4, max_denominator=20), st.integers(0, 6),
       st.integers(0, 6), st.integers(0, 6))
def test_pochhammer_ratio_fixed_vs_symbolic(h, top, b1, b2):
    """fixed-hbar path equals the symbolic rational function evaluated at hbar."""
    power = top - b1 - b2
    fixed = pochhammer_ratio(QScalar(h), top, (b1, b2), power)
    sym = pochhammer_ratio(SYMBOLIC, top, (b1, b2), power)
    assert fixed == eval_at_hbar(sym, QScalar(h))
    z = 1 / (2 * h)
    expected = (2 * h) ** power * sp.rf(sp.Rational(z.numerator, z.denominator), top) / (
        sp.rf(sp.Rational(z.numerator, z.denominator), b1) * sp.rf(sp.Rational(z.numerator, z.denominator), b2))
    assert complex(fixed) == pytest.approx(complex(expected))


def test_scaled_pochhammer_at_zero():
    assert scaled_pochhammer(QScalar(0), 5) == 1
    assert scaled_pochhammer(QScalar(Fraction(1, 2)), 3) == 1 * 2 * 3


# -- RationalFnZ vs sympy ------------------------------------------------------


@settings(max_examples=60)
@given(small, small, small, small, st.sampled_from(["add", "sub", "mul", "div"]))
def test_rf_arith_matches_sympy(n1, d1, n2, d2, op):
    assume(any(d1) and any(d2))
    f, g = rf_from(n1, d1), rf_from(n2, d2)
    sf, sg = sym_from(n1, d1), sym_from(n2, d2)
    if op == "div":
        assume(not g.is_zero())
    out = rf_arith(f, g, op)
    expected = {"add": sf + sg, "sub": sf - sg, "mul": sf * sg, "div": sf / sg}[op]
    num = sum(sp.Rational(c.re.numerator, c.re.denominator) * Z ** i for i, c in enumerate(out.numerator()))
    den = sum(sp.Rational(c.re.numerator, c.re.denominator) * Z ** i for i, c in enumerate(out.denominator()))
    assert sp.cancel(num / den - expected) == 0
    # canonical: gcd(numerator, denominator) = 1
    if out.numerator():
        assert sp.degree(sp.gcd(sp.Poly(num, Z), sp.Poly(den, Z)).as_expr(), Z) == 0


def test_rf_arith_examples():
    z = RationalFnZ.z()
    one = RationalFnZ.constant(1)
    assert rf_arith((z + 1) / z, z / (z + 1), "mul") == one
    assert rf_arith(one / z, one / z, "add") == RationalFnZ.constant(2) / z
    assert pochhammer(SYMBOLIC, 2) / (pochhammer(SYMBOLIC, 1) * pochhammer(SYMBOLIC, 1)) == (z + 1) / z
    with pytest.raises(ZeroDivisionError):
        rf_arith(one, RationalFnZ.constant(0), "div")


def test_rf_equality_is_canonical():
    z = RationalFnZ.z()
    a = (z * z + 3 * z + 2) / (z + 1)  # = z + 2
    assert a == z + 2 and a.is_polynomial()
    assert str((z + 1) / z) == "(1 + z)/(z)"


# -- hbar conversions ----------------------------------------------------------


def test_eval_at_hbar_examples():
    z = RationalFnZ.z()
    assert eval_at_hbar((z + 1) / z, Fraction(1, 2)) == 2
    assert eval_at_hbar(1 / z, Fraction(1, 4)) == Fraction(1, 2)
    assert eval_at_hbar(RationalFnZ.constant(QScalar(3, 1)), Fraction(5)) == QScalar(3, 1)
    with pytest.raises(ValueError, match="taylor"):
        eval_at_hbar(1 / z, 0)
    with pytest.raises(PoleError, match="pole"):
        eval_at_hbar(1 / (z + 1), Fraction(-1, 2))


def test_taylor_examples():
    z = RationalFnZ.z()
    assert taylor_at_hbar0((z + 1) / z, 1) == [1, 2]
    assert taylor_at_hbar0(1 / z, 1) == [0, 2]
    assert taylor_at_hbar0(RationalFnZ.constant(1), 1) == [1, 0]
    with pytest.raises(PoleError):
        taylor_at_hbar0(z, 2)


def test_taylor_first_order_is_second_order_accurate():
    z = RationalFnZ.z()
    f = (z + 2) * (z + 3) / (z * (z + 1))
    c0, c1 = taylor_at_hbar0(f, 1)
    errs = []
    for k in range(4, 12):
        h = Fraction(1, 2 ** k)
        errs.append(abs(complex(eval_at_hbar(f, h) - c0 - c1 * h)) / float(h) ** 2)
    assert max(errs) < 2 * min(errs) + 10


def test_hbar_form_roundtrip():
    z = RationalFnZ.z()
    n, d = hbar_form((z + 1) / z)
    assert [complex(c) for c in n] == [1, 2] and [complex(c) for c in d] == [1]


# -- poles ---------------------------------------------------------------------


def test_poles_examples():
    z = RationalFnZ.z()
    poles = poles_in_hbar((z + 1) / z)
    assert [p.kind for p in poles] == ["infinity"]
    f = (z + 2) * (z + 3) / (z * (z + 1))
    finite = [p for p in poles_in_hbar(f) if p.kind == "finite"]
    assert len(finite) == 1
    p = finite[0]
    assert p.hbar == Fraction(-1, 2) and p.order == 1 and p.residue_z == -2
    # the hbar residue is checked against sympy directly
    hs = sp.Symbol("h")
    expr = (1 / (2 * hs) + 2) * (1 / (2 * hs) + 3) / ((1 / (2 * hs)) * (1 / (2 * hs) + 1))
    assert p.residue_hbar == QScalar(Fraction(str(sp.residue(sp.cancel(expr), hs, sp.Rational(-1, 2)))))
    assert poles_in_hbar(RationalFnZ.constant(1)) == []


def test_anomalous_pole_is_flagged():
    z = RationalFnZ.z()
    kinds = {p.kind for p in poles_in_hbar(1 / (2 * z + 1))}
    assert kinds == {"anomaly"}
    kinds = {p.kind for p in poles_in_hbar(1 / (z * z + 1))}
    assert "anomaly" in kinds


@given(st.lists(st.integers(0, 4), min_size=1, max_size=3), st.lists(st.integers(0, 4), min_size=1, max_size=3))
def test_product_poles_within_union(a, b):
    f = RationalFnZ.from_factors(1, {k: -1 for k in a})
    g = RationalFnZ.from_factors(1, {k: -1 for k in b}) * (RationalFnZ.z() + a[0])
    locs = lambda r: {str(p.z) for p in poles_in_hbar(r)}  # noqa: E731
    assert locs(f * g) <= locs(f) | locs(g)


def test_pochhammer_bounds_hold():
    lo, hi = Fraction(1, 3), Fraction(7, 2)
    alpha, omega = pochhammer_bounds(lo, hi)
    from math import factorial
    for z0 in (lo, Fraction(1), Fraction(2), hi):
        for m in range(31):
            v = pochhammer(QScalar(z0), m).re
            assert alpha ** m * factorial(m) <= v <= omega ** m * factorial(m)
