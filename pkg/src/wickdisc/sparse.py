"""Shared sparse (P, Q) -> coefficient container for ambient and disc polynomials."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator

from .combinatorics import as_index, graded_lex_key
from .scalars import QScalar, RationalFnZ, coeff_at_hbar, coeff_conj, coeff_is_numeric, coeff_numeric

Scalar = (int, Fraction, QScalar, RationalFnZ, complex, float)


def _norm(c):
    if isinstance(c, (int, Fraction)):
        return QScalar(c)
    if isinstance(c, float):
        return complex(c)
    return c


def accumulate(terms: dict, key, c) -> None:
    """terms[key] += c, dropping the entry if it cancels."""
    old = terms.get(key)
    new = c if old is None else old + c
    if new:
        terms[key] = new
    elif old is not None:
        del terms[key]


class SparsePoly:
    """Finite sum of basis elements indexed by (P, Q); never stores zeros.

    Subclasses fix the index length through ``_offset`` (n + offset).
    """

    _offset = 0
    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | Iterable | None = None):
        self.n = int(n)
        self.terms: dict = {}
        items = terms.items() if isinstance(terms, dict) else (terms or ())
        L = self.n + self._offset
        for (P, Q), c in items:
            P, Q = as_index(P), as_index(Q)
            if len(P) != L or len(Q) != L:
                raise ValueError(f"index length must be {L}, got {P}, {Q}")
            c = _norm(c)
            if c:
                accumulate(self.terms, (P, Q), c)

    @classmethod
    def _wrap(cls, n: int, terms: dict):
        obj = object.__new__(cls)
        obj.n = n
        obj.terms = terms
        return obj

    @classmethod
    def monomial(cls, n: int, P, Q, c=1):
        return cls(n, {(tuple(P), tuple(Q)): c})

    @classmethod
    def constant(cls, n: int, c=1):
        z = (0,) * (n + cls._offset)
        return cls(n, {(z, z): c})

    @classmethod
    def zero(cls, n: int):
        return cls._wrap(n, {})

    # -- container protocol ---------------------------------------------------
    def items(self):
        return self.terms.items()

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: graded_lex_key(*kv[0]))

    def __iter__(self) -> Iterator:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def coeff(self, P, Q):
        return self.terms.get((tuple(P), tuple(Q)), QScalar(0))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: n={self.n} vs n={other.n}")

    # -- linear structure -----------------------------------------------------
    def __add__(self, other):
        if isinstance(other, Scalar):
            return self + type(self).constant(self.n, other)
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            accumulate(out, k, c)
        return self._wrap(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, Scalar):
            return self + (-_norm(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = _norm(c)
        out = {}
        for k, v in self.terms.items():
            w = v * c
            if w:
                out[k] = w
        return self._wrap(self.n, out)

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Scalar):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Scalar):
            return self.scale(1 / _norm(other))
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            other = type(self).constant(self.n, other)
        if type(other) is not type(self) or other.n != self.n:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]

    # -- coefficient maps -----------------------------------------------------
    def map_coeffs(self, fn):
        out = {}
        for k, c in self.terms.items():
            v = fn(c)
            if v:
                out[k] = _norm(v)
        return self._wrap(self.n, out)

    def at_hbar(self, hbar):
        """Specialize symbolic coefficients to a fixed hbar (0 allowed)."""
        return self.map_coeffs(lambda c: coeff_at_hbar(c, hbar))

    def is_numeric(self) -> bool:
        return all(coeff_is_numeric(c) for c in self.terms.values())

    def numeric(self):
        """Copy with constant rational functions replaced by plain scalars."""
        if not self.is_numeric():
            raise ValueError("coefficients depend on hbar; norms and evaluation need numbers")
        return self.map_coeffs(coeff_numeric)

    def conj_coeffs(self):
        return self.map_coeffs(coeff_conj)

    def is_exact(self) -> bool:
        return all(isinstance(c, (QScalar, RationalFnZ)) for c in self.terms.values())

    def __repr__(self) -> str:
        if not self.terms:
            return f"{type(self).__name__}(n={self.n}, 0)"
        parts = [f"({c})*[{list(P)},{list(Q)}]" for (P, Q), c in self.sorted_items()]
        return f"{type(self).__name__}(n={self.n}, " + " + ".join(parts) + ")"
