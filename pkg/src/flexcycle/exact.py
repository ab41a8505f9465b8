"""Exact arithmetic kernels.

Rationals are :class:`fractions.Fraction`.  On top of them this module adds
Gaussian rationals (:class:`Scalar`), formal sums of square roots
(:class:`Radical`) and the squarefree factorization needed to take exact square
roots of positive rationals.

Zero-testing of a :class:`Radical` is exact because square roots of distinct
squarefree integers are linearly independent over the rationals.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import FactorizationBudgetExceeded, InputFormatError

Rational = Fraction

TRIAL_DIVISION_BOUND = 10**6
POLLARD_ITERATION_BUDGET = 10**7

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"expected int or Fraction, got {type(value).__name__}")
    return Fraction(value)


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    if not isinstance(text, str):
        raise InputFormatError(f"expected a rational string, got {text!r}")
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise InputFormatError(f"not a rational number: {text!r}")
    try:
        return Fraction(s)
    except ZeroDivisionError:
        raise InputFormatError(f"zero denominator in {text!r}") from None


class Scalar:
    """Gaussian rational ``re + im*i``. Immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", as_rational(re))
        object.__setattr__(self, "im", as_rational(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def coerce(cls, value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        return cls(value)

    def __repr__(self):
        return f"Scalar({format_scalar(self)})"

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_zero(self) -> bool:
        return not self

    def is_real(self) -> bool:
        return self.im == 0

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __add__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Scalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Scalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Scalar(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "Scalar":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("Scalar division by zero")
        return Scalar(self.re / n, -self.im / n)

    def __truediv__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __complex__(self):
        return complex(float(self.re), float(self.im))


I = Scalar(0, 1)
ZERO = Scalar(0)
ONE = Scalar(1)


def format_scalar(z: Scalar) -> str:
    if z.im == 0:
        return format_rational(z.re)
    im = format_rational(z.im) + "*i"
    if z.re == 0:
        return im
    sep = "" if z.im < 0 else "+"
    return format_rational(z.re) + sep + im


def parse_scalar(text: str) -> Scalar:
    if not isinstance(text, str):
        raise InputFormatError(f"expected a scalar string, got {text!r}")
    s = text.replace(" ", "")
    if not s:
        raise InputFormatError("empty scalar string")
    if not s.endswith("i"):
        return Scalar(parse_rational(s))
    split = max(s.rfind("+"), s.rfind("-"))
    if split > 0:
        re_part, im_part = s[:split], s[split:]
    else:
        re_part, im_part = "", s
    coeff = im_part[:-1]
    if coeff.endswith("*"):
        coeff = coeff[:-1]
    if coeff in ("", "+"):
        im = Fraction(1)
    elif coeff == "-":
        im = Fraction(-1)
    else:
        im = parse_rational(coeff)
    re_val = parse_rational(re_part) if re_part else Fraction(0)
    return Scalar(re_val, im)


# ---------------------------------------------------------------------------
# integer factorization (squarefree part only)


@lru_cache(maxsize=1)
def _small_primes() -> tuple:
    n = TRIAL_DIVISION_BOUND
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class _Budget:
    def __init__(self, limit):
        self.left = limit

    def spend(self, n=1):
        self.left -= n
        if self.left < 0:
            raise FactorizationBudgetExceeded(
                f"Pollard-rho exceeded {POLLARD_ITERATION_BUDGET} iterations"
            )


def _pollard_brent(n: int, budget: _Budget) -> int:
    # Returns a nontrivial factor of the odd composite n.
    for c in range(1, 64):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        f = lambda v: (v * v + c) % n  # noqa: E731
        while g == 1:
            x = y
            for _ in range(r):
                y = f(y)
            k = 0
            while k < r and g == 1:
                ys = y
                steps = min(m, r - k)
                budget.spend(steps)
                for _ in range(steps):
                    y = f(y)
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                budget.spend()
                ys = f(ys)
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise FactorizationBudgetExceeded(f"no factor found for {n}")


def _large_factor_exponents(m: int, budget: _Budget, out: dict) -> None:
    if m == 1:
        return
    if is_probable_prime(m):
        out[m] = out.get(m, 0) + 1
        return
    root = math.isqrt(m)
    if root * root == m:
        sub: dict = {}
        _large_factor_exponents(root, budget, sub)
        for p, e in sub.items():
            out[p] = out.get(p, 0) + 2 * e
        return
    d = _pollard_brent(m, budget)
    _large_factor_exponents(d, budget, out)
    _large_factor_exponents(m // d, budget, out)


def squarefree_part_int(n: int) -> tuple[int, int]:
    """Split a positive integer as ``n == c*c*s`` with ``s`` squarefree."""
    if n <= 0:
        raise ValueError("squarefree_part_int needs a positive integer")
    c, s = 1, 1
    m = n
    for p in _small_primes():
        if p * p > m:
            break
        if m % p:
            continue
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        c *= p ** (e // 2)
        if e % 2:
            s *= p
    if m == 1:
        return c, s
    if m < TRIAL_DIVISION_BOUND**2 or is_probable_prime(m):
        # every prime <= sqrt(m) was tried, so m is prime
        return c, s * m
    exps: dict = {}
    _large_factor_exponents(m, _Budget(POLLARD_ITERATION_BUDGET), exps)
    for p, e in exps.items():
        c *= p ** (e // 2)
        if e % 2:
            s *= p
    return c, s


def squarefree_decompose(q) -> tuple[Fraction, int]:
    """Return ``(coeff, core)`` with ``coeff**2 * core == q`` and ``core`` squarefree.

    >>> squarefree_decompose(Fraction(1, 2))
    (Fraction(1, 2), 2)
    """
    q = as_rational(q)
    if q <= 0:
        raise ValueError(f"squarefree_decompose needs q > 0, got {q}")
    # sqrt(a/b) = sqrt(a*b)/b
    c, s = squarefree_part_int(q.numerator * q.denominator)
    return Fraction(c, q.denominator), s


# ---------------------------------------------------------------------------


class Radical:
    """Formal sum ``sum(c * sqrt(s))`` over squarefree cores ``s``.

    Stored with no zero coefficients, so the empty sum is zero and equality is
    structural.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Fraction] = {}
        for core, coeff in items:
            coeff = as_rational(coeff)
            if not isinstance(core, int) or core < 1:
                raise ValueError(f"radical core must be a positive int, got {core!r}")
            if coeff:
                acc[core] = acc.get(core, Fraction(0)) + coeff
        for core in acc:
            c, s = squarefree_part_int(core)
            if c != 1:
                raise ValueError(f"radical core {core} is not squarefree")
        object.__setattr__(
            self, "_terms", tuple(sorted((k, v) for k, v in acc.items() if v))
        )

    def __setattr__(self, name, value):
        raise AttributeError("Radical is immutable")

    @classmethod
    def _from_clean(cls, items) -> "Radical":
        obj = object.__new__(cls)
        object.__setattr__(obj, "_terms", tuple(sorted((k, v) for k, v in items if v)))
        return obj

    @classmethod
    def rational(cls, q) -> "Radical":
        return cls._from_clean([(1, as_rational(q))])

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_rational(self) -> bool:
        return all(core == 1 for core, _ in self._terms)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is irrational")
        return self._terms[0][1] if self._terms else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, Radical):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash(self._terms)

    def __repr__(self):
        body = ", ".join(f"{k}: {format_rational(v)}" for k, v in self._terms)
        return f"Radical({{{body}}})"

    def __neg__(self):
        return Radical._from_clean((k, -v) for k, v in self._terms)

    def __add__(self, other):
        if not isinstance(other, Radical):
            return NotImplemented
        acc = dict(self._terms)
        for k, v in other._terms:
            acc[k] = acc.get(k, Fraction(0)) + v
        return Radical._from_clean(acc.items())

    def __sub__(self, other):
        if not isinstance(other, Radical):
            return NotImplemented
        return self + (-other)

    def scale(self, q) -> "Radical":
        q = as_rational(q)
        return Radical._from_clean((k, v * q) for k, v in self._terms)

    def __float__(self):
        return float(sum(float(v) * math.sqrt(k) for k, v in self._terms))

    def square(self) -> Fraction:
        """Exact square; only defined for single-term radicals."""
        if not self._terms:
            return Fraction(0)
        if len(self._terms) != 1:
            raise ValueError("square() needs a single-term radical")
        core, coeff = self._terms[0]
        return coeff * coeff * core


def radical_from_square(q) -> Radical:
    coeff, core = squarefree_decompose(q)
    return Radical._from_clean([(core, coeff)])


def radical_signed_sum(lengths: Sequence[Radical], signs: Sequence[int]) -> Radical:
    if len(lengths) != len(signs):
        raise ValueError("lengths and signs differ in size")
    acc: dict[int, Fraction] = {}
    for length, sign in zip(lengths, signs):
        if sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {sign!r}")
        for k, v in length.items():
            acc[k] = acc.get(k, Fraction(0)) + sign * v
    return Radical._from_clean(acc.items())


def radical_to_json(r: Radical) -> list:
    return [[format_rational(c), core] for core, c in r.items()]


def radical_from_json(data) -> Radical:
    if not isinstance(data, list):
        raise InputFormatError(f"radical must be a list of [coeff, core] pairs, got {data!r}")
    pairs = []
    for entry in data:
        if not (isinstance(entry, list) and len(entry) == 2 and isinstance(entry[1], int)):
            raise InputFormatError(f"bad radical term {entry!r}")
        pairs.append((entry[1], parse_rational(entry[0])))
    try:
        return Radical(pairs)
    except ValueError as exc:
        raise InputFormatError(str(exc)) from None
