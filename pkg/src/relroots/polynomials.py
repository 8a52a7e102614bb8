"""Exact univariate polynomial arithmetic over rationals.

All reliability algebra stays in this exact layer; floating point only
appears downstream in root analysis.  Coefficients are ascending-degree
:class:`fractions.Fraction` values with a nonzero leading coefficient
(the zero polynomial is the empty tuple).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import InputError, NumericalError

Rat = Union[int, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise InputError(f"cannot interpret {x!r} as an exact rational")


class RatPoly:
    """Univariate polynomial with exact rational coefficients (ascending degree)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rat] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "RatPoly":
        return cls(())

    @classmethod
    def one(cls) -> "RatPoly":
        return cls((1,))

    @classmethod
    def monomial(cls, degree: int, coeff: Rat = 1) -> "RatPoly":
        return cls([0] * degree + [coeff])

    # -- structure ----------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial reported as -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, RatPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.is_zero():
            return "RatPoly(0)"
        terms = [f"{c}*q^{i}" for i, c in enumerate(self.coeffs) if c != 0]
        return "RatPoly(" + " + ".join(terms) + ")"

    # -- ring arithmetic ----------------------------------------------

    def __add__(self, other: "RatPoly") -> "RatPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RatPoly(out)

    def __neg__(self) -> "RatPoly":
        return RatPoly([-c for c in self.coeffs])

    def __sub__(self, other: "RatPoly") -> "RatPoly":
        return self + (-other)

    def __mul__(self, other) -> "RatPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RatPoly.zero()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return RatPoly(out)

    __rmul__ = __mul__

    def scale(self, c: Rat) -> "RatPoly":
        c = _frac(c)
        if c == 0:
            return RatPoly.zero()
        return RatPoly([c * x for x in self.coeffs])

    def __pow__(self, k: int) -> "RatPoly":
        if k < 0:
            raise InputError("negative polynomial powers are not defined")
        result = RatPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x: Rat) -> Fraction:
        """Evaluate by Horner's rule."""
        x = _frac(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "RatPoly":
        return RatPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def substitute_power(self, k: int) -> "RatPoly":
        """p(q) -> p(q^k); replacing each edge of a graph by a k-bundle acts this way on Rel."""
        if k < 1:
            raise InputError(f"power substitution needs k >= 1, got {k}")
        if k == 1 or self.is_zero():
            return self
        out = [Fraction(0)] * (self.degree * k + 1)
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return RatPoly(out)

    # -- division by (1 - q) ------------------------------------------

    def divide_one_minus_q(self) -> tuple["RatPoly", Fraction]:
        """Synthetic division p = (1-q)*quotient + remainder, remainder constant."""
        if self.is_zero():
            return RatPoly.zero(), Fraction(0)
        # p(q) = (q-1)*s(q) + r  with s by Horner at 1; then (1-q)*(-s) + r.
        quot = [Fraction(0)] * max(len(self.coeffs) - 1, 0)
        acc = Fraction(0)
        for i in range(len(self.coeffs) - 1, 0, -1):
            acc = acc + self.coeffs[i]
            quot[i - 1] = -acc
        rem = acc + self.coeffs[0]
        return RatPoly(quot), rem

    def deflate_unit_roots(self) -> tuple["RatPoly", int]:
        """Factor out (1-q)^k exactly; returns (remaining polynomial, k)."""
        p = self
        k = 0
        while not p.is_zero() and p(1) == 0:
            p, rem = p.divide_one_minus_q()
            if rem != 0:
                raise NumericalError("unit-root deflation left a remainder")
            k += 1
        return p, k

    # -- serialization -------------------------------------------------

    def to_json(self, var: str = "q") -> str:
        coeffs = [f"{c.numerator}/{c.denominator}" for c in self.coeffs]
        return json.dumps({"var": var, "coeffs": coeffs})

    @classmethod
    def from_json(cls, text: str) -> "RatPoly":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed polynomial JSON: {exc}") from exc
        if not isinstance(doc, dict) or "coeffs" not in doc:
            raise InputError('polynomial JSON must be an object with a "coeffs" list')
        try:
            return cls([Fraction(c) for c in doc["coeffs"]])
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise InputError(f"bad coefficient in polynomial JSON: {exc}") from exc


def poly_add(p: RatPoly, r: RatPoly) -> RatPoly:
    return p + r


def poly_mul(p: RatPoly, r: RatPoly) -> RatPoly:
    return p * r


def poly_eval(p: RatPoly, x: Rat) -> Fraction:
    return p(x)


def substitute_power(p: RatPoly, k: int) -> RatPoly:
    return p.substitute_power(k)


# ---------------------------------------------------------------------------
# F-vectors and H-vectors of the cographic matroid
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FVector:
    """F_i = number of i-edge subsets whose removal leaves the graph connected."""

    values: tuple[int, ...]
    n: int
    m: int

    def __post_init__(self):
        expect = self.m - self.n + 2
        if len(self.values) != expect:
            raise InputError(
                f"F-vector needs m-n+2 = {expect} entries, got {len(self.values)}")
        if any(v < 0 for v in self.values):
            raise InputError("F-vector entries must be nonnegative")
        if self.values and self.values[0] != 1:
            raise InputError("F_0 must be 1 for a connected graph")

    def check_binomial_bound(self) -> bool:
        return all(v <= math.comb(self.m, i) for i, v in enumerate(self.values))

    def to_polynomial(self) -> RatPoly:
        """The generating polynomial F(G; x)."""
        return RatPoly(self.values)


@dataclass(frozen=True)
class HVector:
    """Coefficients of Rel after the (1-q)^(n-1) factor is removed."""

    values: tuple[int, ...]
    n: int
    m: int

    def __post_init__(self):
        expect = self.m - self.n + 2
        if len(self.values) != expect:
            raise InputError(
                f"H-vector needs m-n+2 = {expect} entries, got {len(self.values)}")
        if self.values and self.values[0] != 1:
            raise InputError("H_0 must be 1")

    def is_strictly_positive(self) -> bool:
        return all(v >= 1 for v in self.values)

    def is_log_concave(self) -> bool:
        v = self.values
        return all(v[i] * v[i] >= v[i - 1] * v[i + 1] for i in range(1, len(v) - 1))

    def to_polynomial(self) -> RatPoly:
        return RatPoly(self.values)

    def total(self) -> int:
        """H(1); equals the number of spanning trees."""
        return sum(self.values)


def f_to_h(f: FVector) -> HVector:
    """Convert an F-vector to the unique H-vector with the same reliability polynomial.

    Expands sum_i F_i q^i (1-q)^(m-i) and strips (1-q)^(n-1) by repeated
    synthetic division, demanding a zero remainder each pass; a nonzero
    remainder signals a corrupt F-vector.
    """
    rel = rel_from_f(f)
    p = rel
    for _ in range(f.n - 1):
        p, rem = p.divide_one_minus_q()
        if rem != 0:
            raise NumericalError("F-vector is not divisible by (1-q)^(n-1); corrupt input")
    if any(c != int(c) for c in p.coeffs):
        raise NumericalError("H-vector came out non-integral; corrupt F-vector")
    values = tuple(int(c) for c in p.coeffs)
    if any(v <= 0 for v in values):
        raise NumericalError("H-vector entries must be strictly positive; corrupt F-vector")
    return HVector(values=values, n=f.n, m=f.m)


def h_to_rel(h: HVector) -> RatPoly:
    """Expand (1-q)^(n-1) * sum_k H_k q^k; the result has degree exactly m."""
    one_minus_q = RatPoly([1, -1])
    return (one_minus_q ** (h.n - 1)) * h.to_polynomial()


def rel_from_f(f: FVector) -> RatPoly:
    """Expand sum_i F_i q^i (1-q)^(m-i)."""
    one_minus_q = RatPoly([1, -1])
    total = RatPoly.zero()
    for i, fi in enumerate(f.values):
        if fi:
            total = total + RatPoly.monomial(i, fi) * (one_minus_q ** (f.m - i))
    return total


def f_from_rel(rel: RatPoly, n: int) -> FVector:
    """Recover the F-vector from an expanded reliability polynomial.

    Uses F(t) = (1+t)^m Rel(t/(1+t)) = sum_j c_j t^j (1+t)^(m-j); entries
    beyond degree m-n+1 must vanish, which doubles as a sanity check.
    """
    if rel.is_zero():
        raise InputError("cannot take the F-vector of the zero polynomial")
    m = rel.degree
    one_plus_t = RatPoly([1, 1])
    f_poly = RatPoly.zero()
    for j, c in enumerate(rel.coeffs):
        if c:
            f_poly = f_poly + RatPoly.monomial(j, c) * (one_plus_t ** (m - j))
    top = m - n + 1
    if f_poly.degree > top:
        raise NumericalError("reliability polynomial is inconsistent with the claimed vertex count")
    values = [int(c) for c in f_poly.coeffs]
    if any(c != int(c) for c in f_poly.coeffs):
        raise NumericalError("non-integral F-vector recovered")
    values += [0] * (top + 1 - len(values))
    return FVector(values=tuple(values), n=n, m=m)


# ---------------------------------------------------------------------------
# Gaussian rationals, for complex-coefficient polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QComplex:
    """Exact complex number with rational real and imaginary parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    @classmethod
    def of(cls, value) -> "QComplex":
        if isinstance(value, QComplex):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(_frac(value))
        if isinstance(value, tuple) and len(value) == 2:
            return cls(_frac(value[0]), _frac(value[1]))
        raise InputError(f"cannot interpret {value!r} as an exact complex rational")

    def __add__(self, other: "QComplex") -> "QComplex":
        other = QComplex.of(other)
        return QComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "QComplex") -> "QComplex":
        other = QComplex.of(other)
        return QComplex(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "QComplex":
        return QComplex(-self.re, -self.im)

    def __mul__(self, other) -> "QComplex":
        other = QComplex.of(other)
        return QComplex(self.re * other.re - self.im * other.im,
                        self.re * other.im + self.im * other.re)

    __radd__ = __add__
    __rmul__ = __mul__

    def __truediv__(self, other) -> "QComplex":
        other = QComplex.of(other)
        d = other.abs2()
        if d == 0:
            raise ZeroDivisionError("division by exact complex zero")
        num = self * other.conjugate()
        return QComplex(num.re / d, num.im / d)

    def conjugate(self) -> "QComplex":
        return QComplex(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def cpoly_normalize(coeffs: Sequence) -> list[QComplex]:
    """Coerce to QComplex and strip trailing (leading-degree) zeros."""
    cs = [QComplex.of(c) for c in coeffs]
    while cs and cs[-1].is_zero():
        cs.pop()
    return cs


def parse_complex_rational(text: str) -> QComplex:
    """Parse strings like '3/2', '-1/2+3i', '2i', '1-i' into exact complex rationals."""
    s = text.strip().replace(" ", "")
    if not s:
        raise InputError("empty complex literal")
    # Split into at most two signed terms.
    terms: list[str] = []
    start = 0
    for i, ch in enumerate(s):
        if ch in "+-" and i > 0 and s[i - 1] not in "+-/eE":
            terms.append(s[start:i])
            start = i
    terms.append(s[start:])
    re_part = Fraction(0)
    im_part = Fraction(0)
    for term in terms:
        if term in ("i", "+i"):
            im_part += 1
        elif term == "-i":
            im_part -= 1
        elif term.endswith("i"):
            im_part += Fraction(term[:-1])
        else:
            re_part += Fraction(term)
    return QComplex(re_part, im_part)
