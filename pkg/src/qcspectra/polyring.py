"""Exact integer polynomials, arithmetic modulo X^n - 1, and evaluation at roots of unity.

A polynomial a_0 + a_1 X + ... + a_k X^k is stored as the tuple
``(a_0, a_1, ..., a_k)`` of Python ints with a nonzero last entry; the zero
polynomial is the empty tuple and has degree ``-inf``.
"""

from __future__ import annotations

import math
from collections.abc import Iterable
from fractions import Fraction

from ._syntax import TokenStream, parse_terms, tokenize
from .errors import InvalidArgumentError, NonDivisibleError, ParseError

#: Degree of the zero polynomial. Compares below every integer and absorbs addition.
ZERO_DEGREE = -math.inf


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class IntPoly:
    """Immutable polynomial with exact integer coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()) -> None:
        values = []
        for c in coeffs:
            if isinstance(c, bool) or int(c) != c:
                raise InvalidArgumentError(f"coefficient {c!r} is not an integer")
            values.append(int(c))
        self._coeffs = _trim(values)

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> IntPoly:
        if exponent < 0:
            raise InvalidArgumentError("negative exponent")
        return cls([0] * exponent + [coeff])

    @classmethod
    def from_exponents(cls, exponents: Iterable[int]) -> IntPoly:
        """Sum of ``X^e`` over ``exponents`` (repeats add up)."""
        exponents = list(exponents)
        coeffs = [0] * (max(exponents) + 1 if exponents else 0)
        for e in exponents:
            coeffs[e] += 1
        return cls(coeffs)

    @classmethod
    def ones(cls, n: int) -> IntPoly:
        """1 + X + ... + X^(n-1)."""
        return cls([1] * n)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._coeffs

    @property
    def degree(self) -> int | float:
        return len(self._coeffs) - 1 if self._coeffs else ZERO_DEGREE

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_binary(self) -> bool:
        return all(c in (0, 1) for c in self._coeffs)

    def weight(self) -> int:
        """Number of nonzero coefficients."""
        return sum(1 for c in self._coeffs if c)

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self._coeffs) if c]

    def __getitem__(self, i: int) -> int:
        if i < 0:
            raise IndexError("negative exponent")
        return self._coeffs[i] if i < len(self._coeffs) else 0

    def padded(self, n: int) -> list[int]:
        """Coefficient list of length ``n`` (requires degree < n)."""
        if self.degree >= n:
            raise InvalidArgumentError(f"degree {self.degree} does not fit in length {n}")
        return list(self._coeffs) + [0] * (n - len(self._coeffs))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            other = IntPoly([other])
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __add__(self, other: IntPoly | int) -> IntPoly:
        other = _coerce(other)
        size = max(len(self._coeffs), len(other._coeffs))
        return IntPoly(self[i] + other[i] for i in range(size))

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly(-c for c in self._coeffs)

    def __sub__(self, other: IntPoly | int) -> IntPoly:
        return self + (-_coerce(other))

    def __rsub__(self, other: int) -> IntPoly:
        return _coerce(other) - self

    def __mul__(self, other: IntPoly | int) -> IntPoly:
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return IntPoly()
        out = [0] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a:
                for j, b in enumerate(other._coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __call__(self, x):
        """Horner evaluation at any value supporting + and *."""
        acc = 0
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self) -> str:
        return f"IntPoly({list(self._coeffs)})"

    def __str__(self) -> str:
        return format_poly(self)


def _coerce(value: IntPoly | int) -> IntPoly:
    if isinstance(value, IntPoly):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return IntPoly([value])
    raise TypeError(f"cannot combine IntPoly with {type(value).__name__}")


def reduce_mod(p: IntPoly, n: int) -> IntPoly:
    """Reduce ``p`` modulo X^n - 1 by folding exponents mod n."""
    if n < 1:
        raise InvalidArgumentError("modulus exponent n must be positive")
    out = [0] * n
    for e, c in enumerate(p.coeffs):
        out[e % n] += c
    return IntPoly(out)


def cyclic_mul(a: IntPoly, b: IntPoly, n: int) -> IntPoly:
    """Product of ``a`` and ``b`` modulo X^n - 1."""
    if n < 1:
        raise InvalidArgumentError("modulus exponent n must be positive")
    out = [0] * n
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                out[(i + j) % n] += x * y
    return IntPoly(out)


def reciprocal(w: IntPoly, k: int) -> IntPoly:
    """X^k w(1/X): coefficient i of the result is coefficient k - i of ``w``."""
    if k < 0 or k < w.degree:
        raise InvalidArgumentError(f"k={k} is smaller than deg w = {w.degree}")
    return IntPoly(w[k - i] for i in range(k + 1))


def cyclic_autocorrelation(w: IntPoly, n: int) -> tuple[int, ...]:
    """Periodic autocorrelation ``a_t = sum_j w_j w_{(j+t) mod n}`` for t in [n]."""
    if n < 1:
        raise InvalidArgumentError("n must be positive")
    if w.degree >= n:
        raise InvalidArgumentError(f"deg w = {w.degree} must be below n = {n}")
    v = w.padded(n)
    nz = [j for j in range(n) if v[j]]
    return tuple(sum(v[j] * v[(j + t) % n] for j in nz) for t in range(n))


def exact_divide(num: IntPoly, den: IntPoly) -> IntPoly:
    """Return q with ``num == den * q``; raise NonDivisibleError otherwise.

    The long division runs over the rationals so that the reported remainder
    is the true one even when ``den`` is not monic.
    """
    if den.is_zero():
        raise InvalidArgumentError("division by the zero polynomial")
    rem = [Fraction(c) for c in num.coeffs]
    d = den.coeffs
    lead = Fraction(d[-1])
    quot = [Fraction(0)] * max(len(rem) - len(d) + 1, 0)
    for shift in range(len(rem) - len(d), -1, -1):
        factor = rem[shift + len(d) - 1] / lead
        quot[shift] = factor
        if factor:
            for i, c in enumerate(d):
                rem[shift + i] -= factor * c
    if any(rem):
        remainder = _fraction_poly(rem)
        raise NonDivisibleError(remainder)
    if any(q.denominator != 1 for q in quot):
        raise NonDivisibleError(
            IntPoly(), "quotient has non-integer coefficients; not divisible over the integers"
        )
    return IntPoly(int(q) for q in quot)


def _fraction_poly(values: list[Fraction]) -> IntPoly | list[Fraction]:
    if all(v.denominator == 1 for v in values):
        return IntPoly(int(v) for v in values)
    while values and values[-1] == 0:
        values.pop()
    return values


def root_of_unity(s: int, m: int) -> complex:
    """exp(2 pi i m / s) with m reduced mod s before the angle is formed."""
    m %= s
    if m == 0:
        return 1.0 + 0.0j
    if 2 * m == s:
        return -1.0 + 0.0j
    if 4 * m == s:
        return 1j
    if 4 * m == 3 * s:
        return -1j
    angle = 2.0 * math.pi * m / s
    return complex(math.cos(angle), math.sin(angle))


def eval_at_root(p: IntPoly, s: int, j: int) -> complex:
    """Evaluate ``p`` at exp(2 pi i j / s), each power taken from its reduced angle."""
    if s < 1:
        raise InvalidArgumentError("s must be positive")
    re = im = 0.0
    for e, c in enumerate(p.coeffs):
        if c:
            z = root_of_unity(s, j * e)
            re += c * z.real
            im += c * z.imag
    return complex(re, im)


def parse_poly(text: str) -> IntPoly:
    """Parse the text syntax, e.g. ``"1 + x^2 + 3*x^7"``; ``"0"`` is the zero polynomial."""
    stream = TokenStream(tokenize(text))
    terms = parse_terms(stream)
    tok = stream.peek()
    if tok.kind != "eof":
        raise ParseError(f"unexpected {tok.text!r} after polynomial", tok.line, tok.col)
    return poly_from_terms((t.coeff, t.exponent) for t in terms)


def poly_from_terms(terms: Iterable[tuple[int, int]]) -> IntPoly:
    acc: dict[int, int] = {}
    for coeff, exponent in terms:
        acc[exponent] = acc.get(exponent, 0) + coeff
    if not acc:
        return IntPoly()
    out = [0] * (max(acc) + 1)
    for e, c in acc.items():
        out[e] = c
    return IntPoly(out)


def format_poly(p: IntPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e, c in enumerate(p.coeffs):
        if not c:
            continue
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            mono = "x" if e == 1 else f"x^{e}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)
