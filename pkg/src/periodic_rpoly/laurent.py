"""Exact integer Laurent polynomials in one variable ``q``."""

from __future__ import annotations

import json
from typing import Iterable, Mapping, Union

Coercible = Union["IntLaurentPoly", int]


class IntLaurentPoly:
    """An element of Z[q, q^-1], stored as ``{exponent: coefficient}``.

    Zero coefficients are never stored, so two polynomials are equal exactly
    when their term maps are equal.  Instances are immutable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            if not isinstance(e, int) or not isinstance(c, int):
                raise TypeError(f"exponents and coefficients must be int, got {e!r}, {c!r}")
            acc[e] = acc.get(e, 0) + c
        self._terms = {e: c for e, c in sorted(acc.items()) if c}
        self._hash = None

    @classmethod
    def _coerce(cls, other: Coercible) -> "IntLaurentPoly":
        if isinstance(other, IntLaurentPoly):
            return other
        if isinstance(other, int):
            return cls({0: other})
        return NotImplemented

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def coefficient(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def degree(self) -> int | None:
        """Largest exponent, or ``None`` for the zero polynomial."""
        return max(self._terms) if self._terms else None

    @property
    def low_degree(self) -> int | None:
        return min(self._terms) if self._terms else None

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = IntLaurentPoly({0: other})
        if not isinstance(other, IntLaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __neg__(self) -> "IntLaurentPoly":
        return IntLaurentPoly({e: -c for e, c in self._terms.items()})

    def __add__(self, other: Coercible) -> "IntLaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return IntLaurentPoly(acc)

    __radd__ = __add__

    def __sub__(self, other: Coercible) -> "IntLaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Coercible) -> "IntLaurentPoly":
        return self._coerce(other) - self

    def __mul__(self, other: Coercible) -> "IntLaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return IntLaurentPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntLaurentPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "IntLaurentPoly":
        """Multiply by ``q**k`` (``k`` may be negative)."""
        return IntLaurentPoly({e + k: c for e, c in self._terms.items()})

    def bar(self) -> "IntLaurentPoly":
        """The involution q -> q^-1."""
        return IntLaurentPoly({-e: c for e, c in self._terms.items()})

    def evaluate(self, x):
        return sum(c * x**e for e, c in self._terms.items())

    def to_json(self) -> list[list[int]]:
        return [[e, c] for e, c in self._terms.items()]

    @classmethod
    def from_json(cls, data) -> "IntLaurentPoly":
        if isinstance(data, str):
            data = json.loads(data)
        pairs = []
        last = None
        for item in data:
            e, c = item
            if last is not None and e <= last:
                raise ValueError("exponents must be strictly ascending")
            last = e
            pairs.append((int(e), int(c)))
        return cls(pairs)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for e, c in sorted(self._terms.items(), reverse=True):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                var = "q" if e == 1 else f"q^{e}"
                body = var if a == 1 else f"{a}*{var}"
            out.append((sign, body))
        first_sign, first_body = out[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"IntLaurentPoly({self._terms!r})"


def monomial(coeff: int, exp: int) -> IntLaurentPoly:
    return IntLaurentPoly({exp: coeff})


ZERO = IntLaurentPoly()
ONE = IntLaurentPoly({0: 1})
Q = IntLaurentPoly({1: 1})


def add(p: IntLaurentPoly, r: IntLaurentPoly) -> IntLaurentPoly:
    return p + r


def sub(p: IntLaurentPoly, r: IntLaurentPoly) -> IntLaurentPoly:
    return p - r


def mul(p: IntLaurentPoly, r: IntLaurentPoly) -> IntLaurentPoly:
    return p * r


def neg(p: IntLaurentPoly) -> IntLaurentPoly:
    return -p


def pow(p: IntLaurentPoly, k: int) -> IntLaurentPoly:  # noqa: A001
    return p**k


def bar(p: IntLaurentPoly) -> IntLaurentPoly:
    return p.bar()


_QM1_CACHE: list[IntLaurentPoly] = [ONE]


def q_minus_one_pow(k: int) -> IntLaurentPoly:
    """``(q - 1)**k``, cached since path sums ask for small powers repeatedly."""
    if k < 0:
        raise ValueError("k must be non-negative")
    while len(_QM1_CACHE) <= k:
        _QM1_CACHE.append(_QM1_CACHE[-1] * (Q - 1))
    return _QM1_CACHE[k]


def term(deg: int, length: int) -> IntLaurentPoly:
    """``q**deg * (q - 1)**length``, the summand shared by every path formula."""
    return q_minus_one_pow(length).shift(deg)
