"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest -v tests/test_acceptance.py`` (lines are printed even under
capture) or directly with ``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import time
from fractions import Fraction

import pytest

from wickdisc import verify as v
from wickdisc.scalars import SYMBOLIC


def _timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    rep = fn(*args, **kwargs)
    return rep, time.perf_counter() - t0


def crit_star_power():
    rep, dt = _timed(v.suite_star_power, 12)
    return rep.passed and dt < 1.0, f"m<=12 exact, {dt:.3f}s (limit 1s)"


def crit_oracle():
    r1, t1 = _timed(v.suite_oracle, 1, 3, SYMBOLIC)
    r2, t2 = _timed(v.suite_oracle, 2, 2, SYMBOLIC)
    ok = r1.passed and r2.passed and t1 + t2 < 60
    return ok, (f"n=1 deg<=3: {r1.measured['checked']} pairs, n=2 deg<=2: {r2.measured['checked']} pairs, "
                f"{t1 + t2:.1f}s (limit 60s)")


def crit_associativity():
    r1, t1 = _timed(v.suite_associativity, 1, 2, SYMBOLIC)
    r2, t2 = _timed(v.suite_associativity, 1, 3, Fraction(1, 3))
    ok = r1.passed and r2.passed and t1 + t2 < 300
    return ok, (f"symbolic deg<=2: {r1.measured['checked']} triples, hbar=1/3 deg<=3: "
                f"{r2.measured['checked']} triples, {t1 + t2:.1f}s (limit 300s)")


def crit_kernel():
    reps = [v.suite_kernel(n, 4) for n in (1, 2)]
    return all(r.passed for r in reps), f"{sum(r.measured['checked'] for r in reps)} monomials, n<=2, |P|=|Q|<=4"


def crit_biorthogonality():
    rep = v.suite_biorthogonality(4, 64)
    m = rep.measured
    return rep.passed, f"max delta error {m['max_delta_error']:.2e}, std vs chart {m['max_std_vs_chart']:.2e} (tol 1e-10)"


def crit_expansion():
    rep = v.suite_expansion(8, 64, 20, seed=0, tol=1e-9)
    m = rep.measured
    return rep.passed, (f"max |c_m - 1/m!| {m['max_coeff_error']:.2e} (tol 1e-9), reconstruction "
                        f"{m['max_reconstruction_error']:.2e} <= tail bound {m['tail_bound']:.2e}")


def crit_limit():
    rep = v.suite_limit(pairs=10, points=16, seed=0, max_degree=2, k_max=12)
    pairs = rep.measured["pairs"]
    slopes = [p["product_slope"] for p in pairs if p["product_slope"] is not None]
    cslopes = [p["commutator_slope"] for p in pairs if p["commutator_slope"] is not None]
    rng = lambda s: f"[{min(s):.3f}, {max(s):.3f}]" if s else "n/a"  # noqa: E731
    return rep.passed, f"10 pairs, product slopes {rng(slopes)}, commutator slopes {rng(cslopes)}, bounds hold"


def crit_poles():
    rep = v.suite_poles(3)
    m = rep.measured
    return rep.passed, (f"example poles {m['example_finite_poles']}, t=0 residue {m['example_t0_residue']}, "
                        f"{m['pairs_checked']} pairs without order>=2 or anomalous poles")


def crit_gram():
    rep = v.suite_gram(("0", "3/10", "3/5*i", "9/10"), ("0", "1/10", "1/2", "1"), 3)
    worst = min(c["min_eigenvalue"] for c in rep.measured["cases"])
    return rep.passed, f"16 Gram matrices (16x16), smallest eigenvalue {worst:.2e} (bound -1e-10)"


def crit_symmetries():
    rep = v.suite_symmetries(3, 2, Fraction(1, 3), 3)
    c = rep.measured["checked"]
    return rep.passed, f"sigma {c['sigma']} pairs, moebius {c['mobius']} pairs, involution {c['involution']} pairs"


def crit_moment():
    rep = v.suite_moment(2)
    return rep.passed, f"{rep.measured['checked']} (u, a) combinations"


def crit_dimensions():
    rep = v.suite_dimensions(3, 8)
    return rep.passed, "n<=3, m<=8 enumerations match C(n+m,m)^2"


def crit_inequalities():
    rep = v.check_inequalities()
    return rep.passed, f"instances checked {rep.measured['checked']}, counterexamples {len(rep.measured['counterexamples'])}"


def crit_divergence():
    rep = v.check_divergence(12, 40, 1e-3)
    return rep.passed, f"S_40/S_39 = {rep.measured['ratio_at_M']:.6f} vs sqrt2 (tol 1e-3)"


CRITERIA = [
    (1, "star-power identity", crit_star_power),
    (2, "differential oracle", crit_oracle),
    (3, "associativity", crit_associativity),
    (4, "kernel identity", crit_kernel),
    (5, "biorthogonality", crit_biorthogonality),
    (6, "series expansion", crit_expansion),
    (7, "classical limit", crit_limit),
    (8, "pole structure", crit_poles),
    (9, "positivity", crit_gram),
    (10, "symmetries", crit_symmetries),
    (11, "moment map", crit_moment),
    (12, "dimensions", crit_dimensions),
    (13, "inequality suites", crit_inequalities),
    (14, "divergence probe", crit_divergence),
]


def line(num: int, name: str, ok: bool, detail: str) -> str:
    return f"{'PASS' if ok else 'FAIL'} [{num:02d}] {name}: {detail}"


@pytest.mark.parametrize("num,name,fn", CRITERIA, ids=[c[1].replace(" ", "-") for c in CRITERIA])
def test_criterion(num, name, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + line(num, name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    import sys

    failed = 0
    for num, name, fn in CRITERIA:
        ok, detail = fn()
        failed += not ok
        print(line(num, name, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
