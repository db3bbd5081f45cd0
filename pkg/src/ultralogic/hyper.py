"""Truncated Laurent-series arithmetic in a positive infinitesimal.

A value is a finite sum ``sum a_q * e^q`` with exact rational coefficients,
where ``e`` is a positive infinitesimal and ``O = 1/e`` the canonical
unlimited unit.  Exponents live in the window ``[-K, K]``; any operation
whose exact result needs a term outside the window raises
``TruncationOverflow`` instead of silently dropping it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Union

import mpmath

DEFAULT_ORDER = 8
DEFAULT_PRECISION = 50

Rational = Union[int, Fraction]


class HyperError(Exception):
    pass


class DivisionByZero(HyperError):
    pass


class TruncationOverflow(HyperError):
    pass


class Unlimited(HyperError):
    pass


class NegativeInput(HyperError):
    pass


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    if man == 0:
        return Fraction(0)
    frac = Fraction(man) * (Fraction(2) ** exp)
    return -frac if sign else frac


def _fraction_to_mpf(q: Fraction):
    return mpmath.mpf(q.numerator) / mpmath.mpf(q.denominator)


def pi_fraction(digits: int = DEFAULT_PRECISION) -> Fraction:
    """Rational approximation of pi good to `digits` decimal digits."""
    with mpmath.workdps(digits + 15):
        return _mpf_to_fraction(mpmath.pi)


class HyperReal:
    """Immutable truncated Laurent series with Fraction coefficients."""

    __slots__ = ("terms", "order")

    def __init__(self, terms=None, order: int = DEFAULT_ORDER):
        clean = {}
        for q, c in (terms or {}).items():
            c = Fraction(c)
            if c == 0:
                continue
            if abs(q) > order:
                raise TruncationOverflow(f"exponent {q} outside [-{order}, {order}]")
            clean[int(q)] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("HyperReal is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def from_rational(cls, q: Rational, order: int = DEFAULT_ORDER) -> "HyperReal":
        return cls({0: Fraction(q)}, order)

    @classmethod
    def eps(cls, order: int = DEFAULT_ORDER) -> "HyperReal":
        return cls({1: Fraction(1)}, order)

    @classmethod
    def omega(cls, order: int = DEFAULT_ORDER) -> "HyperReal":
        return cls({-1: Fraction(1)}, order)

    # -- helpers -------------------------------------------------------

    def _coerce(self, other) -> "HyperReal":
        if isinstance(other, HyperReal):
            return other
        if isinstance(other, (int, Fraction)):
            return HyperReal.from_rational(other, self.order)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, q: int) -> Fraction:
        return self.terms.get(q, Fraction(0))

    def min_exponent(self):
        return min(self.terms) if self.terms else None

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        order = max(self.order, other.order)
        terms = dict(self.terms)
        for q, c in other.terms.items():
            terms[q] = terms.get(q, Fraction(0)) + c
        return HyperReal(terms, order)

    __radd__ = __add__

    def __neg__(self):
        return HyperReal({q: -c for q, c in self.terms.items()}, self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        order = max(self.order, other.order)
        raw = {}
        for q1, c1 in self.terms.items():
            for q2, c2 in other.terms.items():
                q = q1 + q2
                raw[q] = raw.get(q, Fraction(0)) + c1 * c2
        return HyperReal(raw, order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by zero series")
        if self.is_zero():
            return HyperReal({}, max(self.order, other.order))
        order = max(self.order, other.order)
        my = other.min_exponent()
        lead = other.terms[my]
        quotient = {}
        remainder = dict(self.terms)
        # Long division from the dominant exponent down; the exact quotient
        # must fit the window or the division is rejected.
        while remainder:
            e = min(remainder)
            qe = e - my
            if qe > order:
                raise TruncationOverflow("quotient extends past truncation window")
            if qe < -order:
                raise TruncationOverflow(f"exponent {qe} outside [-{order}, {order}]")
            c = remainder[e] / lead
            quotient[qe] = c
            for q2, c2 in other.terms.items():
                k = qe + q2
                v = remainder.get(k, Fraction(0)) - c * c2
                if v == 0:
                    remainder.pop(k, None)
                else:
                    remainder[k] = v
        return HyperReal(quotient, order)

    def __rtruediv__(self, other):
        return HyperReal.from_rational(other, self.order) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return HyperReal.from_rational(1, self.order) / (self ** (-n))
        result = HyperReal.from_rational(1, self.order)
        for _ in range(n):
            result = result * self
        return result

    # -- order ----------------------------------------------------------

    def compare(self, other) -> int:
        """-1, 0 or 1; sign of self - other under e > 0 with O dominant."""
        diff = self - self._coerce(other)
        if diff.is_zero():
            return 0
        lead = diff.terms[diff.min_exponent()]
        return 1 if lead > 0 else -1

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    # -- nonstandard structure ------------------------------------------

    def classify(self) -> str:
        """'infinitesimal', 'limited-noninfinitesimal' or 'unlimited'."""
        if self.is_zero():
            return "infinitesimal"
        if self.min_exponent() < 0:
            return "unlimited"
        if self.min_exponent() > 0:
            return "infinitesimal"
        return "limited-noninfinitesimal"

    def is_limited(self) -> bool:
        return self.classify() != "unlimited"

    def st(self) -> Fraction:
        """Standard part of a limited value."""
        if not self.is_limited():
            raise Unlimited("standard part undefined for unlimited values")
        return self.coefficient(0)

    def standard_part_only(self) -> bool:
        return set(self.terms) <= {0}

    def __repr__(self):
        return f"HyperReal({format_series(self)!r})"


def as_hyper(x, order: int = DEFAULT_ORDER) -> HyperReal:
    if isinstance(x, HyperReal):
        return x
    return HyperReal.from_rational(x, order)


# -- text form ----------------------------------------------------------

_TERM_RE = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?P<coef>\d+(?:/\d+)?(?:\.\d+)?)?\s*"
    r"(?P<eps>e(?:\^(?P<exp>-?\d+))?)?\s*"
)


def parse_series(text: str, order: int = DEFAULT_ORDER) -> HyperReal:
    """Parse the text form, e.g. ``3 + 5e - 2e^3 + 7e^-1``."""
    pos = 0
    terms = {}
    seen = False
    text = text.strip()
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos or (m.group("coef") is None and m.group("eps") is None):
            raise ValueError(f"cannot parse series at: {text[pos:]!r}")
        pos = m.end()
        coef_text = m.group("coef")
        if coef_text is None:
            coef = Fraction(1)
        elif "." in coef_text:
            coef = Fraction(coef_text)
        else:
            coef = Fraction(coef_text)
        if m.group("sign") == "-":
            coef = -coef
        exp = 0
        if m.group("eps"):
            exp = int(m.group("exp")) if m.group("exp") is not None else 1
        terms[exp] = terms.get(exp, Fraction(0)) + coef
        seen = True
    if not seen:
        raise ValueError("empty series")
    return HyperReal(terms, order)


def format_series(x: HyperReal) -> str:
    if x.is_zero():
        return "0"
    parts = []
    for q in sorted(x.terms):
        c = x.terms[q]
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if q == 0:
            body = str(mag)
        else:
            unit = "e" if q == 1 else f"e^{q}"
            body = unit if mag == 1 else f"{mag}{unit}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# -- hypernaturals and the approximation shadow ---------------------------


@dataclass(frozen=True)
class NatLike:
    """A hyperreal standing in for a hypernatural count.

    Only the contract st(value * e) is guaranteed; no integer-part
    certificate is carried.
    """

    value: HyperReal

    def __post_init__(self):
        if self.value.compare(0) < 0:
            raise NegativeInput("nat-like values must be nonnegative")


def hypernat_for(r: Rational, order: int = DEFAULT_ORDER) -> NatLike:
    """The unlimited count lambda_r = r*O with st(lambda_r * e) = r."""
    r = Fraction(r)
    if r < 0:
        raise NegativeInput(f"negative ratio {r}")
    if r == 0:
        return NatLike(HyperReal({}, order))
    return NatLike(HyperReal({-1: r}, order))


def hypersum_const(count, summand: HyperReal) -> HyperReal:
    """Sum of `count` copies of a constant summand, i.e. count * summand."""
    if isinstance(count, NatLike):
        count = count.value
    return as_hyper(count, summand.order) * summand


@dataclass(frozen=True)
class ApproxResult:
    n: int
    c: int
    f: int
    gap: Fraction

    @property
    def ok(self) -> bool:
        return self.gap >= 0


def approximate_shadow(r: Rational, m: int) -> ApproxResult:
    """Finite shadow of cell approximation: f = m*n + c with 0 <= r - f/m < 1/m."""
    if m < 1:
        raise ValueError("cell count m must be >= 1")
    r = Fraction(r)
    n = r.numerator // r.denominator  # floor
    c = int((r - n) * m)  # floor of the cell index
    if c == m:  # guard against r - n == 1 (impossible, but stay safe)
        c = m - 1
    f = m * n + c
    gap = r - Fraction(f, m)
    assert 0 <= gap < Fraction(1, m)
    return ApproxResult(n=n, c=c, f=f, gap=gap)


# -- transcendental lifting -----------------------------------------------

_SIN_QUARTER = {0: Fraction(0), 1: Fraction(1), 2: Fraction(0), 3: Fraction(-1)}
_COS_QUARTER = {0: Fraction(1), 1: Fraction(0), 2: Fraction(-1), 3: Fraction(0)}


def _taylor(x: HyperReal, derivs, order: int) -> HyperReal:
    """Sum derivs[k]/k! * (x - st x)^k for k = 0..order."""
    a = x.st()
    h = x - a
    acc = HyperReal({}, x.order)
    power = HyperReal.from_rational(1, x.order)
    for k in range(order + 1):
        coef = derivs(k)
        if coef != 0:
            acc = acc + power * Fraction(coef, factorial(k))
        if k < order:
            power = power * h
            if power.is_zero():
                break
    return acc


def lift(fn: str, x: HyperReal, digits: int = DEFAULT_PRECISION) -> HyperReal:
    """Transfer sin/cos/exp to a limited argument via Taylor expansion.

    Coefficients at an irrational base point are rational approximations
    good to `digits` digits; a zero base point stays exact.
    """
    if not x.is_limited():
        raise Unlimited(f"cannot lift {fn} at an unlimited point")
    a = x.st()
    if fn == "exp":
        if a == 0:
            base = Fraction(1)
        else:
            with mpmath.workdps(digits + 15):
                base = _mpf_to_fraction(mpmath.exp(_fraction_to_mpf(a)))
        return _taylor(x, lambda k: base, x.order)
    if fn not in ("sin", "cos"):
        raise ValueError(f"unsupported function {fn!r}")
    if a == 0:
        s0, c0 = Fraction(0), Fraction(1)
    else:
        with mpmath.workdps(digits + 15):
            s0 = _mpf_to_fraction(mpmath.sin(_fraction_to_mpf(a)))
            c0 = _mpf_to_fraction(mpmath.cos(_fraction_to_mpf(a)))
    cycle = [s0, c0, -s0, -c0] if fn == "sin" else [c0, -s0, -c0, s0]
    return _taylor(x, lambda k: cycle[k % 4], x.order)


def _halfpi_base(t: Fraction, fn: str, digits: int):
    """sin or cos of t*pi/2; exact Fraction when t is an integer, else
    (approx, False) pair semantics via the second return flag."""
    if t.denominator == 1:
        table = _SIN_QUARTER if fn == "sin" else _COS_QUARTER
        return table[t.numerator % 4], True
    with mpmath.workdps(digits + 15):
        val = mpmath.sinpi(_fraction_to_mpf(t / 2)) if fn == "sin" else mpmath.cospi(
            _fraction_to_mpf(t / 2)
        )
        return _mpf_to_fraction(val), False


def sin_halfpi(x: HyperReal, digits: int = DEFAULT_PRECISION) -> HyperReal:
    """sin(x * pi/2), exact at integer standard arguments."""
    return _halfpi(x, "sin", digits)


def cos_halfpi(x: HyperReal, digits: int = DEFAULT_PRECISION) -> HyperReal:
    """cos(x * pi/2), exact at integer standard arguments."""
    return _halfpi(x, "cos", digits)


def _halfpi(x: HyperReal, fn: str, digits: int) -> HyperReal:
    if not x.is_limited():
        raise Unlimited(f"cannot lift {fn}(pi/2 *) at an unlimited point")
    t = x.st()
    s0, _ = _halfpi_base(t, "sin", digits)
    c0, _ = _halfpi_base(t, "cos", digits)
    if x.standard_part_only():
        return HyperReal.from_rational(s0 if fn == "sin" else c0, x.order)
    # chain rule brings a pi/2 factor per derivative order
    half_pi = pi_fraction(digits) / 2
    cycle = [s0, c0, -s0, -c0] if fn == "sin" else [c0, -s0, -c0, s0]
    return _taylor(x, lambda k: cycle[k % 4] * half_pi**k, x.order)
