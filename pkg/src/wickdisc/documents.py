"""JSON persistence for polynomials (the PolyDocument format).

Layout::

    {"n": 1, "space": "disc", "coeff_kind": "gaussian_rational",
     "terms": [{"P": [0], "Q": [1], "coeff": {"re": "1/2", "im": "0"}}]}

``coeff_kind`` is one of

* ``gaussian_rational``: re/im as "num/den" strings,
* ``rational_fn_z``: re and im each ``{"num_coeffs": [...], "den_coeffs": [...]}``
  with integer coefficients in z (lowest degree first), jointly primitive and
  with a positive leading denominator coefficient,
* ``complex_float``: re/im as JSON numbers (numerical expansions only).

Terms are written in graded-lex order, so writing is canonical.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Any

from .ambient import AmbientPoly
from .disc import DiscPoly
from .scalars import QScalar, RationalFnZ, format_poly, hbar_form

KINDS = ("gaussian_rational", "rational_fn_z", "complex_float")
SPACES = {"disc": DiscPoly, "ambient": AmbientPoly}


class DocumentError(ValueError):
    """Schema violation; ``path`` locates the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


# -- encoding -----------------------------------------------------------------


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _int_pair(num: tuple, den: tuple) -> tuple[list[int], list[int]]:
    """Integer, jointly primitive coefficient lists; leading den coefficient > 0."""
    vals = [c.re for c in num] + [c.re for c in den]
    lcm = 1
    for v in vals:
        lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
    ni = [int(c.re * lcm) for c in num]
    di = [int(c.re * lcm) for c in den]
    g = 0
    for v in ni + di:
        g = math.gcd(g, v)
    g = g or 1
    if di[-1] < 0:
        g = -g
    return [v // g for v in ni], [v // g for v in di]


def _rf_part(f: RationalFnZ) -> dict:
    num, den = f.numerator(), f.denominator()
    if not num:
        return {"num_coeffs": [], "den_coeffs": [1]}
    ni, di = _int_pair(num, den)
    return {"num_coeffs": ni, "den_coeffs": di}


def _fmt_hbar_poly(c) -> str:
    return format_poly(c, "hbar")


def hbar_view(c) -> str:
    """Cosmetic rendering in hbar; a polynomial when the denominator drops out."""
    if not isinstance(c, RationalFnZ):
        return str(c)
    if not c.num:
        return "0"
    n, d = hbar_form(c)
    if len(d) == 1:
        return _fmt_hbar_poly(tuple(x / d[0] for x in n))
    return f"({_fmt_hbar_poly(n)})/({_fmt_hbar_poly(d)})"


def _coeff_kind(a) -> str:
    vals = list(a.terms.values())
    if any(isinstance(c, RationalFnZ) for c in vals):
        return "rational_fn_z"
    if any(not isinstance(c, QScalar) for c in vals):
        return "complex_float"
    return "gaussian_rational"


def _encode_coeff(c, kind: str) -> dict:
    if kind == "gaussian_rational":
        return {"re": _frac_str(c.re), "im": _frac_str(c.im)}
    if kind == "complex_float":
        c = complex(c)
        return {"re": c.real, "im": c.imag}
    f = RationalFnZ._lift(c)
    return {"re": _rf_part(f.real_part()), "im": _rf_part(f.imag_part())}


def to_document(a, hbar_render: bool = False, metadata: dict | None = None) -> dict:
    space = "ambient" if isinstance(a, AmbientPoly) else "disc"
    kind = _coeff_kind(a)
    terms = []
    for (P, Q), c in a.sorted_items():
        t: dict[str, Any] = {"P": list(P), "Q": list(Q), "coeff": _encode_coeff(c, kind)}
        if hbar_render and kind == "rational_fn_z":
            t["hbar_view"] = hbar_view(c)
        terms.append(t)
    doc: dict[str, Any] = {"n": a.n, "space": space, "coeff_kind": kind, "terms": terms}
    if metadata:
        doc["metadata"] = metadata
    return doc


def dumps(a, hbar_render: bool = False, metadata: dict | None = None) -> str:
    return json.dumps(to_document(a, hbar_render, metadata), indent=2) + "\n"


def write_poly(a, path: str, hbar_render: bool = False, metadata: dict | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(a, hbar_render, metadata))


# -- decoding -----------------------------------------------------------------


def _rational(v, path: str) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise DocumentError(path, f"expected an integer or a 'num/den' string, got {v!r}")
    try:
        return Fraction(v)
    except (ValueError, ZeroDivisionError):
        raise DocumentError(path, f"not a rational number: {v!r}") from None


def _int_list(v, path: str, allow_empty: bool = True) -> list[int]:
    if not isinstance(v, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in v):
        raise DocumentError(path, "expected a list of integers")
    if not allow_empty and not v:
        raise DocumentError(path, "must not be empty")
    return v


def _decode_rf(v, path: str) -> RationalFnZ:
    if not isinstance(v, dict):
        raise DocumentError(path, "expected {num_coeffs, den_coeffs}")
    for k in ("num_coeffs", "den_coeffs"):
        if k not in v:
            raise DocumentError(f"{path}.{k}", "missing field")
    num = _int_list(v["num_coeffs"], f"{path}.num_coeffs")
    den = _int_list(v["den_coeffs"], f"{path}.den_coeffs", allow_empty=False)
    if not any(den):
        raise DocumentError(f"{path}.den_coeffs", "denominator is the zero polynomial")
    return RationalFnZ.from_coeffs([QScalar(x) for x in num], [QScalar(x) for x in den])


def _decode_coeff(v, kind: str, path: str):
    if not isinstance(v, dict):
        raise DocumentError(path, "expected an object with re and im")
    for k in ("re", "im"):
        if k not in v:
            raise DocumentError(f"{path}.{k}", "missing field")
    if kind == "gaussian_rational":
        return QScalar(_rational(v["re"], f"{path}.re"), _rational(v["im"], f"{path}.im"))
    if kind == "complex_float":
        for k in ("re", "im"):
            if isinstance(v[k], bool) or not isinstance(v[k], (int, float)):
                raise DocumentError(f"{path}.{k}", "expected a number")
        return complex(v["re"], v["im"])
    re, im = _decode_rf(v["re"], f"{path}.re"), _decode_rf(v["im"], f"{path}.im")
    return re + im * QScalar(0, 1)


def from_document(doc) -> DiscPoly | AmbientPoly:
    if not isinstance(doc, dict):
        raise DocumentError("$", "document must be a JSON object")
    for k in ("n", "space", "coeff_kind", "terms"):
        if k not in doc:
            raise DocumentError(f"$.{k}", "missing field")
    n = doc["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DocumentError("$.n", "must be a positive integer")
    space = doc["space"]
    if space not in SPACES:
        raise DocumentError("$.space", f"must be one of {sorted(SPACES)}")
    kind = doc["coeff_kind"]
    if kind not in KINDS:
        raise DocumentError("$.coeff_kind", f"must be one of {list(KINDS)}")
    if not isinstance(doc["terms"], list):
        raise DocumentError("$.terms", "must be a list")
    length = n + (1 if space == "ambient" else 0)
    terms: dict = {}
    for i, t in enumerate(doc["terms"]):
        path = f"$.terms[{i}]"
        if not isinstance(t, dict):
            raise DocumentError(path, "term must be an object")
        for k in ("P", "Q", "coeff"):
            if k not in t:
                raise DocumentError(f"{path}.{k}", "missing field")
        idx = []
        for k in ("P", "Q"):
            v = _int_list(t[k], f"{path}.{k}")
            if len(v) != length:
                raise DocumentError(f"{path}.{k}", f"index length must be {length}")
            if any(x < 0 for x in v):
                raise DocumentError(f"{path}.{k}", "indices must be nonnegative")
            idx.append(tuple(v))
        key = (idx[0], idx[1])
        if key in terms:
            raise DocumentError(path, f"duplicate key P={list(key[0])}, Q={list(key[1])}")
        c = _decode_coeff(t["coeff"], kind, f"{path}.coeff")
        if not c:
            raise DocumentError(f"{path}.coeff", "zero coefficients are not stored")
        terms[key] = c
    return SPACES[space]._wrap(n, terms)


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError("$", f"invalid JSON: {exc}") from None
    return from_document(doc)


def read_poly(path: str):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
