import json
import math
from fractions import Fraction

import numpy as np
import pytest

from wickdisc import verify as v
from wickdisc.charts import ChartPoint
from wickdisc.disc import DiscPoly
from wickdisc.scalars import QScalar


def f(P, Q, c=1, n=1):
    if isinstance(P, int):
        P, Q = (P,), (Q,)
    return DiscPoly.monomial(n, P, Q, c)


def test_gram_example_degree_one():
    rep = v.check_positivity_gram(["0"], "1/2", 1)
    assert rep.passed and rep.measured["exact_psd"]
    # basis order: 1, f_{r,0,1}, f_{r,1,0}, f_{r,1,1}
    diag = rep.measured["diagonal"]
    assert diag[0] == 1 and diag[1] == 1 and diag[2] == 0


def test_gram_at_hbar_zero_has_rank_one():
    rep = v.check_positivity_gram([QScalar(Fraction(3, 10), Fraction(1, 5))], 0, 2)
    eig = rep.measured
    assert rep.passed and eig["min_eigenvalue"] > -1e-30
    assert eig["max_eigenvalue"] > 1
    # all but one eigenvalue vanish: trace equals the largest eigenvalue
    trace = sum(float(complex(d).real) for d in rep.measured["diagonal"] or [])
    assert trace == pytest.approx(eig["max_eigenvalue"], rel=1e-12)


def test_gram_rejects_exterior_points():
    with pytest.raises(ValueError):
        v.check_positivity_gram(["1"], "1/2", 1)
    probe = v.check_positivity_gram(["3/2"], "1/2", 2, exterior_probe=True)
    assert probe.passed and probe.measured["asserted"] is False


def test_gram_float_point():
    rep = v.check_positivity_gram([0.3 + 0.2j], Fraction(1, 10), 2)
    assert rep.passed and rep.measured["exact_psd"] is None


def test_exact_psd_detects_indefinite():
    Q = QScalar
    assert v._exact_psd([[Q(1), Q(0)], [Q(0), Q(0)]])
    assert not v._exact_psd([[Q(1), Q(2)], [Q(2), Q(1)]])
    assert not v._exact_psd([[Q(0), Q(1)], [Q(1), Q(0)]])


def test_single_element_positivity():
    from wickdisc.disc import eval_disc, involution, star
    a = f(0, 1)
    for w in ("0", "1/2", "-3/5i", "7/10+1/10i"):
        for h in (Fraction(0), Fraction(1, 10), Fraction(1, 2), Fraction(3)):
            val = eval_disc(star(involution(a), a, h), [w])
            assert val.im == 0 and val.re >= 0


def test_limit_scan_examples():
    K = v.CompactSample.random(1, 8, seed=3)
    rep = v.classical_limit_scan(f(1, 1), f(1, 1), K)
    assert rep.passed
    assert rep.measured["product_slope"] == pytest.approx(1.0, abs=1e-6)
    rep = v.classical_limit_scan(DiscPoly.constant(1, 3), f(2, 1), K)
    assert rep.passed and rep.measured["product_identically_zero"]
    rep = v.classical_limit_scan(f(1, 0), f(0, 1), K)
    assert rep.passed and rep.measured["commutator_identically_zero"]
    with pytest.raises(ValueError):
        v.classical_limit_scan(f(1, 0), f(0, 1), K, hbars=[])
    with pytest.raises(ValueError):
        v.classical_limit_scan(f(1, 0), f(0, 1), K, hbars=[Fraction(1)])


def test_compact_sample_rho():
    K = v.CompactSample([ChartPoint.diagonal([QScalar(0)])])
    assert K.rho == 3.0  # 2 + |fhat_{E0,E0}| = 2 + 1
    with pytest.raises(ValueError):
        v.CompactSample([])


def test_pole_report_examples():
    rep = v.pole_report(f(2, 2), f(2, 2))
    assert rep.passed and rep.measured["finite_poles"] == {"-1/2": 1}
    t0 = [d for d in rep.measured["details"] if d["P"] == [4]]
    assert t0[0]["residue_z"] == "-2" == str(v.example_residue(2, 2, 0, 1))
    rep = v.pole_report(f(1, 1), f(1, 1))
    assert rep.passed and rep.measured["finite_poles"] == {}
    rep = v.pole_report(DiscPoly.constant(1, 2), DiscPoly.constant(1, 5))
    assert rep.passed and rep.measured["details"] == []


@pytest.mark.parametrize("j,k", [(2, 3), (3, 3), (4, 2)])
def test_pole_residues_follow_closed_form(j, k):
    """Residues of the t = 0 coefficient of f_{r,j,j} * f_{r,k,k}."""
    rep = v.pole_report(f(j, j), f(k, k))
    top = [d for d in rep.measured["details"] if d["P"] == [j + k]]
    for d in top:
        m = -int(Fraction(d["z"]))
        assert Fraction(d["residue_z"]) == v.example_residue(j, k, 0, m)
    assert len(top) == min(j, k) - 1


def test_inequalities_small_instances():
    assert v._prod_1px(Fraction(0), 0, 5) == 1
    r = v._prod_1px(Fraction(1), 0, 2) / (v._prod_1px(Fraction(1), 0, 1) ** 2)
    assert r == 2 and r <= 1 + 1 * 4
    rep = v.check_inequalities(p_max=4, t_max=4, k0_max=2, m_max=10)
    assert rep.passed and rep.measured["counterexamples"] == []


def test_divergence():
    rep = v.check_divergence(m_max=6, M=40)
    assert rep.passed
    assert rep.measured["ratio_at_M"] == pytest.approx(math.sqrt(2), abs=1e-3)


@pytest.mark.parametrize("n,m,count", [(1, 1, 4), (1, 0, 1), (2, 2, 36)])
def test_dimension_examples(n, m, count):
    rep = v.check_dimensions(n, m)
    assert rep.passed and rep.measured["counts"][-1]["fundamental"] == count


def test_differential_oracle_examples():
    rng = np.random.default_rng(5)
    for _ in range(3):
        a, b = v.random_disc_poly(rng, 2, 2), v.random_disc_poly(rng, 2, 2)
        assert v.differential_oracle(a, b, Fraction(1, 3)).passed
    one = DiscPoly.constant(1, 1)
    assert v.differential_oracle(one, one, "symbolic").passed


def test_reports_are_deterministic():
    a = v.suite_limit(pairs=2, points=4, seed=11).to_json()
    b = v.suite_limit(pairs=2, points=4, seed=11).to_json()
    assert a == b
    doc = json.loads(a)
    assert "runtime_s" not in doc and doc["suite"] == "limit"
    assert "runtime_s" in json.loads(v.suite_star_power(3).to_json(timing=True))


def test_moment_suite_small():
    assert v.suite_moment(max_degree=1).passed


def test_su11_basis_membership():
    assert all(u.in_su1n() for u in v.su11_basis())
