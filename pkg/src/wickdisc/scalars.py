"""Exact coefficient arithmetic.

Two scalar kinds live here:

* ``QScalar`` -- a Gaussian rational ``re + i*im`` with ``Fraction`` parts.
* ``RationalFnZ`` -- a rational function of ``z = 1/(2*hbar)`` with
  Gaussian-rational numerator.  The denominator is kept as a product of
  linear factors ``(z + k)`` plus an (almost always trivial) monic leftover,
  so cancellation after a product or a sum is a handful of Horner
  evaluations instead of a Euclidean gcd.

Polynomials are tuples of coefficients, lowest degree first.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

Q = Fraction

SYMBOLIC = "symbolic"


class PoleError(ZeroDivisionError):
    """Raised when a rational function is evaluated at a root of its denominator."""


# ---------------------------------------------------------------------------
# Gaussian rationals


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class QScalar:
    """Gaussian rational.  Mixing with float/complex drops to ``complex``."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, QScalar):
            re, im = re.re, re.im + _q(im)
        self.re = _q(re)
        self.im = _q(im)

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "QScalar":
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @classmethod
    def parse(cls, text: str) -> "QScalar":
        """Accepts "p/q" or "p/q+r/s*i" style strings (also a bare "i")."""
        t = text.replace(" ", "").replace("I", "i").replace("j", "i")
        if not t.endswith("i"):
            return cls(Fraction(t))
        body = t[:-1].rstrip("*")
        # split at the last sign that is not the leading one or part of an exponent
        cut = max(body.rfind("+", 1), body.rfind("-", 1))
        if cut > 0:
            re_part, im_part = body[:cut], body[cut:]
        else:
            re_part, im_part = "0", body
        if im_part in ("", "+"):
            im_part = "1"
        elif im_part == "-":
            im_part = "-1"
        return cls(Fraction(re_part), Fraction(im_part))

    # -- arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(x):
        if isinstance(x, QScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return QScalar._raw(Fraction(x), _ZERO_Q)
        return None

    def __add__(self, other):
        o = QScalar._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) + other
            return NotImplemented
        return QScalar._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = QScalar._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) - other
            return NotImplemented
        return QScalar._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = QScalar._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return other - complex(self)
            return NotImplemented
        return QScalar._raw(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = QScalar._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) * other
            return NotImplemented
        if not self.im and not o.im:
            return QScalar._raw(self.re * o.re, _ZERO_Q)
        return QScalar._raw(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self) -> "QScalar":
        if not self.im:
            if not self.re:
                raise ZeroDivisionError("division by zero scalar")
            return QScalar._raw(1 / self.re, _ZERO_Q)
        d = self.re * self.re + self.im * self.im
        return QScalar._raw(self.re / d, -self.im / d)

    def __truediv__(self, other):
        o = QScalar._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) / other
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = QScalar._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return other / complex(self)
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __neg__(self):
        return QScalar._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def conj(self) -> "QScalar":
        return QScalar._raw(self.re, -self.im)

    conjugate = conj

    def __abs__(self) -> float:
        return math.hypot(float(self.re), float(self.im))

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        o = QScalar._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self) -> int:
        return hash(self.re) if not self.im else hash((self.re, self.im))

    def is_real(self) -> bool:
        return not self.im

    def __repr__(self) -> str:
        return f"QScalar({self})"

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"


_ZERO_Q = Fraction(0)
ZERO = QScalar(0)
ONE = QScalar(1)
I = QScalar(0, 1)


def qs(x) -> QScalar:
    """Coerce ints, Fractions, strings and QScalars to QScalar."""
    if isinstance(x, QScalar):
        return x
    if isinstance(x, str):
        return QScalar.parse(x)
    if isinstance(x, complex):
        return QScalar(Fraction(x.real), Fraction(x.imag))
    return QScalar(x)


# ---------------------------------------------------------------------------
# dense polynomial helpers (coefficients are QScalar, lowest degree first)


def _trim(c: list) -> tuple:
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def padd(a: Sequence, b: Sequence) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = out[i] + x
    return _trim(out)


def pneg(a: Sequence) -> tuple:
    return tuple(-x for x in a)


def psub(a: Sequence, b: Sequence) -> tuple:
    return padd(a, pneg(b))


def pscale(a: Sequence, c) -> tuple:
    if not c:
        return ()
    return tuple(x * c for x in a)


def pmul(a: Sequence, b: Sequence) -> tuple:
    if not a or not b:
        return ()
    if len(a) == 1:
        return pscale(b, a[0])
    if len(b) == 1:
        return pscale(a, b[0])
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _trim(out)


def peval(a: Sequence, x):
    acc = ZERO
    for c in reversed(a):
        acc = acc * x + c
    return acc


def pdiv_root(a: Sequence, r) -> tuple:
    """Quotient of a(z) by (z - r); the remainder must vanish."""
    n = len(a) - 1
    if n < 1:
        raise ValueError("cannot divide a constant by a linear factor")
    out = [ZERO] * n
    carry = ZERO
    for i in range(n, 0, -1):
        carry = a[i] + carry * r
        out[i - 1] = carry
    if a[0] + carry * r:
        raise ValueError("linear factor does not divide the polynomial")
    return tuple(out)


def pdivmod(a: Sequence, b: Sequence) -> tuple[tuple, tuple]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    lead_inv = b[-1].inverse()
    db = len(b) - 1
    qt = [ZERO] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * lead_inv
        if not c:
            continue
        qt[i - db] = c
        for j in range(db + 1):
            a[i - db + j] = a[i - db + j] - c * b[j]
    return _trim(qt), _trim(a[:db])


def pmonic(a: Sequence) -> tuple:
    if not a:
        return ()
    inv = a[-1].inverse()
    return tuple(x * inv for x in a)


def pgcd(a: Sequence, b: Sequence) -> tuple:
    """Monic gcd via the Euclidean algorithm (only used off the fast path)."""
    a, b = tuple(a), tuple(b)
    while b:
        a, b = b, pdivmod(a, b)[1]
    return pmonic(a)


def pderiv(a: Sequence) -> tuple:
    return _trim([a[i] * i for i in range(1, len(a))])


def pshift(a: Sequence, r) -> tuple:
    """Coefficients of t -> a(r + t)."""
    c = list(a)
    n = len(c)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            c[j] = c[j] + r * c[j + 1]
    return tuple(c)


def series_div(num: Sequence, den: Sequence, order: int) -> list:
    """Power-series coefficients 0..order of num/den (den[0] != 0)."""
    if not den or not den[0]:
        raise ZeroDivisionError("series division needs a nonzero constant term")
    inv0 = den[0].inverse()
    out = []
    for k in range(order + 1):
        acc = num[k] if k < len(num) else ZERO
        for j in range(1, min(k, len(den) - 1) + 1):
            acc = acc - den[j] * out[k - j]
        out.append(acc * inv0)
    return out


def ppow_linear(k, e: int) -> tuple:
    """(z + k)^e."""
    return _ppow_linear(QScalar(k), e)


@lru_cache(maxsize=4096)
def _ppow_linear(k: QScalar, e: int) -> tuple:
    if e == 0:
        return (ONE,)
    if e == 1:
        return (k, ONE)
    half = _ppow_linear(k, e // 2)
    out = pmul(half, half)
    if e & 1:
        out = pmul(out, (k, ONE))
    return out


def _split_integer_roots(a: Sequence) -> tuple[dict, tuple]:
    """Pull factors (z + k) with integer k out of a; returns (factors, monic rest).

    Integer roots are searched inside Fujiwara's bound (capped), which covers
    every denominator the product formulas can produce.
    """
    a = pmonic(a)
    factors: dict = {}
    # z^j first: cheap
    j = 0
    while len(a) > 1 and not a[0]:
        a = a[1:]
        j += 1
    if j:
        factors[Fraction(0)] = j
    if len(a) <= 1:
        return factors, a
    n = len(a) - 1
    bound = 0.0
    for i in range(n):
        c = abs(a[i])
        if c:
            e = n - i
            bound = max(bound, (c / (2.0 if i == 0 else 1.0)) ** (1.0 / e))
    bound = min(int(2 * bound) + 1, 10_000)
    for m in range(1, bound + 1):
        for r in (-m, m):
            while len(a) > 1 and not peval(a, r):
                a = pdiv_root(a, QScalar(r))
                factors[Fraction(-r)] = factors.get(Fraction(-r), 0) + 1
        if len(a) <= 1:
            break
    return factors, a


# ---------------------------------------------------------------------------
# rational functions of z


class RationalFnZ:
    """num(z) / (prod_k (z + k)^e_k * rest(z)), kept fully reduced.

    ``den`` maps the shift ``k`` (a Fraction) to a positive exponent and ``rest``
    is a monic polynomial free of those factors; it is ``(1,)`` in every
    coefficient produced by the product formulas.
    """

    __slots__ = ("num", "den", "rest")

    def __init__(self, num=(), den=None, rest=None):
        self.num = tuple(num)
        self.den = dict(den or {})
        self.rest = tuple(rest) if rest else (ONE,)

    # -- construction ---------------------------------------------------------
    @classmethod
    def _make(cls, num, den, rest) -> "RationalFnZ":
        obj = object.__new__(cls)
        if not num:
            obj.num, obj.den, obj.rest = (), {}, (ONE,)
            return obj
        newden = {}
        for k, e in den.items():
            r = -k
            while e and not peval(num, r):
                num = pdiv_root(num, r)
                e -= 1
            if e:
                newden[k] = e
        if len(rest) > 1:
            g = pgcd(num, rest)
            if len(g) > 1:
                num = pdivmod(num, g)[0]
                rest = pdivmod(rest, g)[0]
        obj.num, obj.den, obj.rest = tuple(num), newden, tuple(rest)
        return obj

    @classmethod
    def constant(cls, c) -> "RationalFnZ":
        c = qs(c)
        return cls._make((c,) if c else (), {}, (ONE,))

    @classmethod
    def z(cls) -> "RationalFnZ":
        return cls._make((ZERO, ONE), {}, (ONE,))

    @classmethod
    def from_factors(cls, scale, exponents: dict) -> "RationalFnZ":
        """scale * prod_k (z + k)^exponents[k]; negative exponents go downstairs."""
        num: tuple = (qs(scale),)
        den = {}
        for k, e in exponents.items():
            if e > 0:
                num = pmul(num, ppow_linear(k, e))
            elif e < 0:
                den[Fraction(k)] = -e
        return cls._make(_trim(list(num)), den, (ONE,))

    @classmethod
    def from_coeffs(cls, num: Iterable, den: Iterable = (1,)) -> "RationalFnZ":
        """Build from coefficient lists (lowest degree first)."""
        n = _trim([qs(c) for c in num])
        d = _trim([qs(c) for c in den])
        if not d:
            raise ZeroDivisionError("zero denominator")
        lead = d[-1]
        factors, rest = _split_integer_roots(d)
        return cls._make(pscale(n, lead.inverse()), factors, rest)

    # -- queries ----------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_polynomial(self) -> bool:
        return not self.den and len(self.rest) == 1

    def is_constant(self) -> bool:
        return self.is_polynomial() and len(self.num) <= 1

    def constant_value(self) -> QScalar:
        if not self.is_constant():
            raise ValueError("rational function is not constant")
        return self.num[0] if self.num else ZERO

    def numerator(self) -> tuple:
        return self.num

    def denominator(self) -> tuple:
        d = self.rest
        for k in sorted(self.den):
            d = pmul(d, ppow_linear(k, self.den[k]))
        return d

    def is_real(self) -> bool:
        return all(c.is_real() for c in self.num) and all(c.is_real() for c in self.rest)

    # -- arithmetic -------------------------------------------------------------
    @staticmethod
    def _lift(x):
        if isinstance(x, RationalFnZ):
            return x
        if isinstance(x, (QScalar, int, Fraction)):
            return RationalFnZ.constant(x)
        return None

    def __add__(self, other):
        o = RationalFnZ._lift(other)
        if o is None:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        a_num, b_num = self.num, o.num
        den = dict(self.den)
        for k, e in o.den.items():
            if den.get(k, 0) < e:
                den[k] = e
        for k, e in den.items():
            ea = self.den.get(k, 0)
            if ea < e:
                a_num = pmul(a_num, ppow_linear(k, e - ea))
            eb = o.den.get(k, 0)
            if eb < e:
                b_num = pmul(b_num, ppow_linear(k, e - eb))
        rest = self.rest
        if len(self.rest) > 1 or len(o.rest) > 1:
            g = pgcd(self.rest, o.rest)
            ra = pdivmod(self.rest, g)[0]
            rb = pdivmod(o.rest, g)[0]
            a_num = pmul(a_num, rb)
            b_num = pmul(b_num, ra)
            rest = pmul(self.rest, rb)
        return RationalFnZ._make(padd(a_num, b_num), den, rest)

    __radd__ = __add__

    def __neg__(self):
        obj = object.__new__(RationalFnZ)
        obj.num, obj.den, obj.rest = pneg(self.num), self.den, self.rest
        return obj

    def __sub__(self, other):
        o = RationalFnZ._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = RationalFnZ._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (QScalar, int, Fraction)):
            if not other:
                return RationalFnZ._make((), {}, (ONE,))
            obj = object.__new__(RationalFnZ)
            obj.num, obj.den, obj.rest = pscale(self.num, other), self.den, self.rest
            return obj
        if not isinstance(other, RationalFnZ):
            return NotImplemented
        if not self.num or not other.num:
            return RationalFnZ._make((), {}, (ONE,))
        num = pmul(self.num, other.num)
        den = dict(self.den)
        for k, e in other.den.items():
            den[k] = den.get(k, 0) + e
        rest = self.rest
        if len(other.rest) > 1:
            rest = pmul(rest, other.rest)
        return RationalFnZ._make(num, den, rest)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFnZ":
        if not self.num:
            raise ZeroDivisionError("division by the zero rational function")
        lead = self.num[-1]
        factors, rest = _split_integer_roots(self.num)
        return RationalFnZ._make(pscale(self.denominator(), lead.inverse()), factors, rest)

    def __truediv__(self, other):
        if isinstance(other, (QScalar, int, Fraction)):
            return self * qs(other).inverse()
        if not isinstance(other, RationalFnZ):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        o = RationalFnZ._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = RationalFnZ.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def conj(self) -> "RationalFnZ":
        """Coefficientwise conjugate (z is treated as real)."""
        obj = object.__new__(RationalFnZ)
        obj.num = tuple(c.conj() for c in self.num)
        obj.den = self.den
        obj.rest = tuple(c.conj() for c in self.rest)
        return obj

    conjugate = conj

    def __eq__(self, other) -> bool:
        o = RationalFnZ._lift(other)
        if o is None:
            return NotImplemented
        return (self - o).is_zero()

    __hash__ = None  # type: ignore[assignment]

    # -- evaluation ---------------------------------------------------------------
    def evaluate(self, z0) -> QScalar:
        z0 = qs(z0)
        d = peval(self.rest, z0)
        for k, e in self.den.items():
            d = d * (z0 + k) ** e
        if not d:
            raise PoleError(f"z = {z0} is a pole")
        return peval(self.num, z0) / d

    def real_part(self) -> "RationalFnZ":
        n, d = self._real_den()
        return RationalFnZ.from_coeffs([QScalar(c.re) for c in n], d)

    def imag_part(self) -> "RationalFnZ":
        n, d = self._real_den()
        return RationalFnZ.from_coeffs([QScalar(c.im) for c in n], d)

    def _real_den(self):
        n, d = self.num, self.denominator()
        if not all(c.is_real() for c in d):
            dc = tuple(c.conj() for c in d)
            n, d = pmul(n, dc), pmul(d, dc)
        return n, d

    def __repr__(self) -> str:
        return f"RationalFnZ({self})"

    def __str__(self) -> str:
        top = format_poly(self.num, "z")
        if self.is_polynomial():
            return top
        parts = []
        for k in sorted(self.den):
            base = "z" if k == 0 else f"(z + {k})" if k > 0 else f"(z - {-k})"
            parts.append(base if self.den[k] == 1 else f"{base}^{self.den[k]}")
        if len(self.rest) > 1:
            parts.append(f"({format_poly(self.rest, 'z')})")
        return f"({top})/({'*'.join(parts)})"


def format_poly(c: Sequence, var: str) -> str:
    if not c:
        return "0"
    terms = []
    for i, x in enumerate(c):
        if not x:
            continue
        coef = str(x)
        if x.im and x.re:
            coef = f"({coef})"
        if i == 0:
            terms.append(coef)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            terms.append(mono if x == 1 else f"-{mono}" if x == -1 else f"{coef}*{mono}")
    return " + ".join(terms).replace("+ -", "- ")


ZERO_FN = RationalFnZ._make((), {}, (ONE,))


# ---------------------------------------------------------------------------
# hbar-mode helpers


def is_symbolic(hbar) -> bool:
    return isinstance(hbar, str) and hbar.lower() == SYMBOLIC


def parse_hbar(value):
    """'symbolic' stays a marker; everything else becomes an exact QScalar."""
    if value is None:
        raise ValueError("an hbar value is required")
    if is_symbolic(value):
        return SYMBOLIC
    return qs(value)


def pochhammer(z0, m: int):
    """Rising factorial (z0)_m; pass SYMBOLIC for the polynomial in z."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if is_symbolic(z0):
        return RationalFnZ.from_factors(1, {k: 1 for k in range(m)})
    z0 = qs(z0)
    out = ONE
    for k in range(m):
        out = out * (z0 + k)
    return out


@lru_cache(maxsize=None)
def _poch_hbar_form(hbar: QScalar, m: int) -> QScalar:
    # (2 hbar)^m (z)_m = prod_{k<m} (1 + 2 hbar k)
    out = ONE
    two_h = 2 * hbar
    for k in range(1, m):
        out = out * (1 + two_h * k)
    return out


def scaled_pochhammer(hbar, m: int):
    """(2 hbar)^m (z)_m as a number (fixed hbar, 0 allowed) or a function of z."""
    if is_symbolic(hbar):
        return pochhammer_ratio(hbar, m, (), m)
    return _poch_hbar_form(qs(hbar), m)


def pochhammer_ratio(hbar, top: int, bottoms: Sequence[int], two_hbar_power: int):
    """(2 hbar)^p (z)_top / prod (z)_b, with p = two_hbar_power.

    In symbolic mode the result is exact in z; at fixed hbar the factor is
    computed in the form prod (1 + 2 hbar k) which is finite at hbar = 0.
    """
    if is_symbolic(hbar):
        exps: dict = {}
        for k in range(top):
            exps[k] = exps.get(k, 0) + 1
        for b in bottoms:
            for k in range(b):
                exps[k] = exps.get(k, 0) - 1
        exps[0] = exps.get(0, 0) - two_hbar_power
        return RationalFnZ.from_factors(1, exps)
    h = qs(hbar)
    # (z)_m = (2h)^-m prod_{k<m}(1 + 2hk), so only the power of 2h is left over
    excess = two_hbar_power - top + sum(bottoms)
    num = _poch_hbar_form(h, top)
    den = ONE
    for b in bottoms:
        den = den * _poch_hbar_form(h, b)
    if not den:
        raise PoleError(f"hbar = {h} is a pole of the product coefficients")
    if excess < 0 and not h:
        raise PoleError("hbar = 0 is a pole of this coefficient")
    return num / den * (2 * h) ** excess


def eval_at_hbar(f, hbar) -> QScalar:
    """Exact value of f at z = 1/(2 hbar)."""
    h = qs(hbar)
    if not isinstance(f, RationalFnZ):
        return qs(f)
    if not h:
        raise ValueError("hbar = 0 is z = infinity; use taylor_at_hbar0 instead")
    try:
        return f.evaluate(1 / (2 * h))
    except PoleError:
        raise PoleError(f"hbar = {h} (z = {1 / (2 * h)}) is a pole of {f}") from None


def hbar_form(f: RationalFnZ) -> tuple[tuple, tuple]:
    """Rewrite f(z) as N(hbar)/D(hbar) after z = 1/(2 hbar)."""
    n, d = f.numerator(), f.denominator()
    deg = max(len(n), len(d)) - 1

    def flip(p):
        out = [ZERO] * (deg + 1)
        for i, c in enumerate(p):
            out[deg - i] = c * 2 ** (deg - i)
        return _trim(out)

    return flip(n), flip(d)


def taylor_at_hbar0(f, order: int) -> list:
    """Exact Taylor coefficients c_0..c_order of f in hbar at hbar = 0."""
    if not isinstance(f, RationalFnZ):
        return [qs(f)] + [ZERO] * order
    if not f.num:
        return [ZERO] * (order + 1)
    if len(f.num) > len(f.denominator()):
        raise PoleError(f"{f} has a pole at hbar = 0")
    n, d = hbar_form(f)
    return series_div(n, d, order)


def _residue(num: Sequence, den: Sequence, root, order: int) -> QScalar:
    d = tuple(den)
    for _ in range(order):
        d = pdiv_root(d, root)
    ns = pshift(num, root)
    ds = pshift(d, root)
    return series_div(ns, ds, order - 1)[order - 1]


@dataclass(frozen=True)
class Pole:
    """One denominator root of a coefficient, translated to hbar."""

    kind: str  # "finite", "infinity" or "anomaly"
    z: QScalar | None
    hbar: QScalar | None
    order: int
    residue_z: QScalar | None
    residue_hbar: QScalar | None = None

    def as_dict(self) -> dict:
        f = lambda x: None if x is None else str(x)  # noqa: E731
        return {"kind": self.kind, "z": f(self.z), "hbar": f(self.hbar), "order": self.order,
                "residue_z": f(self.residue_z), "residue_hbar": f(self.residue_hbar)}


def poles_in_hbar(f) -> list[Pole]:
    """Poles of f as a function of hbar, with residues in z (and in hbar)."""
    if not isinstance(f, RationalFnZ) or not f.num:
        return []
    out = []
    full_den = f.denominator()
    for k in sorted(f.den):
        e = f.den[k]
        root = QScalar(-k)
        res_z = _residue(f.num, full_den, root, e)
        if k == 0:
            out.append(Pole("infinity", root, None, e, res_z))
        elif k.denominator == 1 and k > 0:
            h0 = QScalar(Fraction(-1, 2 * int(k)))
            hn, hd = hbar_form(f)
            out.append(Pole("finite", root, h0, e, res_z, _residue(hn, hd, h0, e)))
        else:
            out.append(Pole("anomaly", root, QScalar(1 / (2 * -k)), e, res_z))
    if len(f.rest) > 1:
        out.append(Pole("anomaly", None, None, len(f.rest) - 1, None))
    return out


def rf_arith(f, g, op: str):
    f, g = RationalFnZ._lift(f), RationalFnZ._lift(g)
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "div":
        return f / g
    raise ValueError(f"unknown op {op!r}")


def pochhammer_bounds(z_lo: Fraction, z_hi: Fraction) -> tuple[Fraction, Fraction]:
    """Constants with alpha^m m! <= (z)_m <= omega^m m! for all m, z in [z_lo, z_hi].

    Each factor (z + k)/(k + 1) lies between min(z, 1) and max(z, 1).
    """
    if z_lo <= 0 or z_hi < z_lo:
        raise ValueError("need 0 < z_lo <= z_hi")
    return min(Fraction(z_lo), Fraction(1)), max(Fraction(z_hi), Fraction(1))


def coeff_conj(c):
    if isinstance(c, (int, Fraction)):
        return c
    return c.conjugate()


def coeff_is_numeric(c) -> bool:
    return not isinstance(c, RationalFnZ) or c.is_constant()


def coeff_numeric(c):
    """QScalar/complex value of a coefficient that does not depend on hbar."""
    if isinstance(c, RationalFnZ):
        return c.constant_value()
    return c


def coeff_at_hbar(c, hbar):
    """Specialize one coefficient at a fixed hbar (0 allowed via Taylor)."""
    if not isinstance(c, RationalFnZ):
        return c
    h = qs(hbar)
    if not h:
        return taylor_at_hbar0(c, 0)[0]
    return eval_at_hbar(c, h)
