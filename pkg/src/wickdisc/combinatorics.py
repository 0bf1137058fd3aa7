"""Multi-index helpers and the combinatorial weights used by the product formulas.

Multi-indices are plain tuples of non-negative ints.  Everything here is
pure and cached where it pays off.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import comb, factorial, prod
from typing import Iterator, Sequence

MultiIndex = tuple


def as_index(P: Sequence[int]) -> MultiIndex:
    """Validate and freeze a multi-index."""
    t = tuple(int(p) for p in P)
    if any(p < 0 for p in t):
        raise ValueError(f"multi-index entries must be >= 0, got {t}")
    return t


def total_degree(P: Sequence[int]) -> int:
    return sum(P)


def _check_len(P, T):
    if len(P) != len(T):
        raise ValueError(f"length mismatch: {len(P)} vs {len(T)}")


def multi_binom(P: Sequence[int], T: Sequence[int]) -> int:
    """prod_i C(P_i, T_i); zero as soon as some T_i > P_i."""
    _check_len(P, T)
    out = 1
    for p, t in zip(P, T):
        if t > p or t < 0:
            return 0
        out *= comb(p, t)
    return out


def multi_factorial(T: Sequence[int]) -> int:
    """T! = prod_i T_i!."""
    return prod(factorial(t) for t in T)


def degree_factorial(T: Sequence[int]) -> int:
    """|T|!, the companion of multi_factorial."""
    return factorial(sum(T))


@lru_cache(maxsize=None)
def multinomial(T: MultiIndex) -> int:
    """|T|! / T!."""
    return factorial(sum(T)) // multi_factorial(T)


def add(P, Q) -> MultiIndex:
    _check_len(P, Q)
    return tuple(p + q for p, q in zip(P, Q))


def sub(P, Q) -> MultiIndex:
    _check_len(P, Q)
    out = tuple(p - q for p, q in zip(P, Q))
    if any(x < 0 for x in out):
        raise ValueError(f"{P} - {Q} has negative entries")
    return out


def leq(P, Q) -> bool:
    """Componentwise order."""
    _check_len(P, Q)
    return all(p <= q for p, q in zip(P, Q))


def cmin(P, Q) -> MultiIndex:
    _check_len(P, Q)
    return tuple(min(p, q) for p, q in zip(P, Q))


def unit(length: int, mu: int) -> MultiIndex:
    """E_mu of the given length."""
    return tuple(1 if i == mu else 0 for i in range(length))


def zero(length: int) -> MultiIndex:
    return (0,) * length


@lru_cache(maxsize=None)
def _box(bound: MultiIndex) -> tuple:
    return tuple(product(*(range(b + 1) for b in bound)))


def below(bound: Sequence[int]) -> Iterator[MultiIndex]:
    """All T with T <= bound, in lexicographic order."""
    return iter(_box(tuple(bound)))


@lru_cache(maxsize=None)
def _with_degree(length: int, k: int) -> tuple:
    if length == 0:
        return ((),) if k == 0 else ()
    if length == 1:
        return ((k,),)
    out = []
    for first in range(k, -1, -1):
        for rest in _with_degree(length - 1, k - first):
            out.append((first,) + rest)
    return tuple(out)


def with_degree(length: int, k: int) -> Iterator[MultiIndex]:
    """All multi-indices of the given length with |P| = k (lex-descending)."""
    return iter(_with_degree(length, k))


def up_to_degree(length: int, k: int) -> Iterator[MultiIndex]:
    for d in range(k + 1):
        yield from _with_degree(length, d)


def count_with_degree(length: int, k: int) -> int:
    """Closed form for the size of {P : |P| = k}, namely C(length-1+k, k)."""
    return comb(length - 1 + k, k)


def graded_lex_key(P: Sequence[int], Q: Sequence[int]):
    """Sort key for (P, Q) pairs: total degree first, then lexicographic."""
    return (sum(P) + sum(Q), tuple(P), tuple(Q))
