"""Exact coefficient arithmetic: rationals, Laurent polynomials in t, and
their fraction field, plus a floating complex backend for unit-circle checks.

Rationals are stdlib ``fractions.Fraction``.  A Laurent polynomial is a
finite map ``exponent -> Fraction`` with no stored zeros.  A rational
function is a reduced pair of Laurent polynomials in the canonical form

    numerator        any Laurent polynomial (may carry powers of t)
    denominator      ordinary monic polynomial with nonzero constant term

which makes equality structural.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Tuple, Union

from .errors import DivisionByZero, PoleAtEvaluationPoint

Rat = Fraction
Scalar = Union[Fraction, complex, "RatFunc"]

#: magnitude below which the floating backend treats a value as zero
FLOAT_ZERO_TOL = 1e-12


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected exact rational, got {type(x).__name__}")


# ---------------------------------------------------------------------------
# ordinary polynomial helpers (coefficient lists, index = exponent)
# ---------------------------------------------------------------------------

def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return _poly_trim(out)


def _poly_divmod(a, b):
    """Exact-ish division over Q[t]; returns (quotient, remainder)."""
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    while len(a) >= len(b) and _poly_trim(a):
        shift = len(a) - len(b)
        c = a[-1] * inv_lead
        q[shift] = c
        for i, cb in enumerate(b):
            a[shift + i] -= c * cb
        _poly_trim(a)
    return _poly_trim(q), a


def _poly_gcd(a, b):
    """Monic gcd over Q[t]."""
    a, b = list(a), list(b)
    while b:
        a, b = b, _poly_divmod(a, b)[1]
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


class LaurentPoly:
    """Laurent polynomial in one variable t over the rationals."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Dict[int, Fraction] | None = None):
        clean: Dict[int, Fraction] = {}
        if coeffs:
            for e, c in coeffs.items():
                c = _as_fraction(c)
                if c != 0:
                    clean[int(e)] = c
        self.coeffs = clean

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({0: _as_fraction(c)})

    @classmethod
    def monomial(cls, e: int, c=1) -> "LaurentPoly":
        return cls({e: _as_fraction(c)})

    @classmethod
    def t(cls) -> "LaurentPoly":
        return cls({1: Fraction(1)})

    @classmethod
    def from_ordinary(cls, coeffs: Iterable[Fraction], shift: int = 0) -> "LaurentPoly":
        return cls({i + shift: c for i, c in enumerate(coeffs)})

    # -- structure -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == {0: Fraction(1)}

    def min_exp(self) -> int:
        return min(self.coeffs) if self.coeffs else 0

    def max_exp(self) -> int:
        return max(self.coeffs) if self.coeffs else 0

    def monomial_form(self) -> Tuple[Fraction, int] | None:
        """(coefficient, exponent) if this is a single term, else None."""
        if len(self.coeffs) != 1:
            return None
        (e, c), = self.coeffs.items()
        return c, e

    def ordinary(self) -> Tuple[list, int]:
        """Return (coefficient list, shift) with poly = t**shift * list-poly
        and nonzero constant term (zero poly gives ([], 0))."""
        if not self.coeffs:
            return [], 0
        lo, hi = self.min_exp(), self.max_exp()
        out = [Fraction(0)] * (hi - lo + 1)
        for e, c in self.coeffs.items():
            out[e - lo] = c
        return out, lo

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs.values())

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: Dict[int, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LaurentPoly(out)

    def scale(self, c) -> "LaurentPoly":
        c = _as_fraction(c)
        return LaurentPoly({e: k * c for e, k in self.coeffs.items()})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t**k."""
        return LaurentPoly({e + k: c for e, c in self.coeffs.items()})

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial")
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- substitutions ---------------------------------------------------------

    def bar(self) -> "LaurentPoly":
        """Substitute t -> t**-1."""
        return LaurentPoly({-e: c for e, c in self.coeffs.items()})

    def doubled(self) -> "LaurentPoly":
        """Substitute t -> t**2."""
        return LaurentPoly({2 * e: c for e, c in self.coeffs.items()})

    def evaluate(self, a):
        """Value at t = a for exact Fraction or floating complex a."""
        if isinstance(a, (Fraction, int)):
            a = _as_fraction(a)
            if a == 0 and self.min_exp() < 0:
                raise PoleAtEvaluationPoint("negative power of t at t = 0")
            acc = Fraction(0)
            for e, c in self.coeffs.items():
                acc += c * a ** e
            return acc
        a = complex(a)
        if abs(a) <= FLOAT_ZERO_TOL and self.min_exp() < 0:
            raise PoleAtEvaluationPoint("negative power of t at t ~ 0")
        acc = 0j
        for e, c in self.coeffs.items():
            acc += complex(c) * a ** e
        return acc

    # -- integer content -------------------------------------------------------

    def primitive_integer(self) -> "LaurentPoly":
        """Scale by a positive rational so coefficients are integers with
        gcd 1; zero stays zero."""
        if not self.coeffs:
            return self
        from math import gcd
        den = 1
        for c in self.coeffs.values():
            den = den * c.denominator // gcd(den, c.denominator)
        g = 0
        for c in self.coeffs.values():
            g = gcd(g, abs(c.numerator * (den // c.denominator)))
        return self.scale(Fraction(den, g))

    # -- comparison / hashing / printing ---------------------------------------

    def key(self):
        return tuple(sorted(self.coeffs.items()))

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.key())

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if e == 0:
                body = str(mag)
            else:
                tpart = "t" if e == 1 else f"t^{e}"
                body = tpart if mag == 1 else f"{mag}{tpart}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = (first_sign if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += sign + body
        return text

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def parse_laurent(text: str) -> LaurentPoly:
    """Parse strings like ``1-t+2t^-1`` or ``3/2t^2`` into a LaurentPoly."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial string")
    # split into signed terms; a sign right after '^' belongs to the exponent
    terms = []
    cur = ""
    for i, ch in enumerate(s):
        if ch in "+-" and i > 0 and s[i - 1] != "^":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    out = LaurentPoly.zero()
    for term in terms:
        if not term or term in "+-":
            raise ValueError(f"bad term in {text!r}")
        sign = 1
        if term[0] == "+":
            term = term[1:]
        elif term[0] == "-":
            sign = -1
            term = term[1:]
        if "t" in term:
            coeff_s, _, exp_s = term.partition("t")
            coeff = Fraction(coeff_s) if coeff_s else Fraction(1)
            if exp_s:
                if not exp_s.startswith("^"):
                    raise ValueError(f"bad exponent in {text!r}")
                exp = int(exp_s[1:])
            else:
                exp = 1
        else:
            coeff = Fraction(term)
            exp = 0
        out = out + LaurentPoly.monomial(exp, sign * coeff)
    return out


class RatFunc:
    """Element of the fraction field of Laurent polynomials, kept reduced."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if den is None:
            den = LaurentPoly.const(1)
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if num.is_zero():
            self.num = LaurentPoly.zero()
            self.den = LaurentPoly.const(1)
            return
        # push all powers of t from the denominator into the numerator
        dshift = den.min_exp()
        den = den.shift(-dshift)
        num = num.shift(-dshift)
        # cancel the polynomial gcd (numerator taken at its ordinary part)
        ncoeffs, nshift = num.ordinary()
        dcoeffs, _ = den.ordinary()
        g = _poly_gcd(ncoeffs, dcoeffs)
        if len(g) > 1:
            ncoeffs = _poly_divmod(ncoeffs, g)[0]
            dcoeffs = _poly_divmod(dcoeffs, g)[0]
        # monic denominator
        lead = dcoeffs[-1]
        if lead != 1:
            ncoeffs = [c / lead for c in ncoeffs]
            dcoeffs = [c / lead for c in dcoeffs]
        self.num = LaurentPoly.from_ordinary(ncoeffs, nshift)
        self.den = LaurentPoly.from_ordinary(dcoeffs)

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls) -> "RatFunc":
        return cls(LaurentPoly.zero())

    @classmethod
    def one(cls) -> "RatFunc":
        return cls(LaurentPoly.const(1))

    @classmethod
    def const(cls, c) -> "RatFunc":
        return cls(LaurentPoly.const(c))

    @classmethod
    def t(cls) -> "RatFunc":
        return cls(LaurentPoly.t())

    @classmethod
    def monomial(cls, e: int, c=1) -> "RatFunc":
        return cls(LaurentPoly.monomial(e, c))

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> "RatFunc":
        return cls(p)

    # -- structure -------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def monomial_form(self) -> Tuple[Fraction, int] | None:
        """(coefficient, exponent) when the reduced form is c * t**e."""
        if not self.den.is_one():
            return None
        return self.num.monomial_form()

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return RatFunc.one() / (self ** (-n))
        out = RatFunc.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    @staticmethod
    def _coerce(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, LaurentPoly):
            return RatFunc(x)
        if isinstance(x, (int, Fraction)):
            return RatFunc.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into RatFunc")

    # -- substitutions ----------------------------------------------------------

    def bar(self) -> "RatFunc":
        """The involution t -> t**-1, re-canonicalized."""
        return RatFunc(self.num.bar(), self.den.bar())

    def doubled(self) -> "RatFunc":
        """Substitute t -> t**2 (doubles every power of t)."""
        return RatFunc(self.num.doubled(), self.den.doubled())

    def evaluate(self, a):
        """Value at t = a; exact for Fraction a, floating for complex a."""
        if isinstance(a, (Fraction, int)):
            d = self.den.evaluate(Fraction(a))
            if d == 0:
                raise PoleAtEvaluationPoint(f"pole at t = {a}")
            return self.num.evaluate(Fraction(a)) / d
        a = complex(a)
        d = self.den.evaluate(a)
        if abs(d) <= FLOAT_ZERO_TOL:
            raise PoleAtEvaluationPoint(f"pole within tolerance at t = {a}")
        return self.num.evaluate(a) / d

    # -- comparison / printing ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = self._coerce(other)
        return (isinstance(other, RatFunc)
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.num.key(), self.den.key()))

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


def parse_ratfunc(text: str) -> RatFunc:
    """Parse ``poly`` or ``(poly)/(poly)`` into a RatFunc."""
    s = text.replace(" ", "")
    if s.startswith("(") and ")/(" in s and s.endswith(")"):
        ns, _, ds = s.partition(")/(")
        return RatFunc(parse_laurent(ns[1:]), parse_laurent(ds[:-1]))
    return RatFunc(parse_laurent(s))


# ---------------------------------------------------------------------------
# operations with the spec's functional signatures
# ---------------------------------------------------------------------------

def ratfunc_arith(lhs: RatFunc, rhs: RatFunc, op: str) -> RatFunc:
    """Field arithmetic on reduced rational functions; op in {add, mul, div}."""
    if op == "add":
        return lhs + rhs
    if op == "mul":
        return lhs * rhs
    if op == "div":
        return lhs / rhs
    raise ValueError(f"unknown op {op!r}")


def bar_involution(f: RatFunc) -> RatFunc:
    return f.bar()


def double_powers(f: RatFunc) -> RatFunc:
    return f.doubled()


def evaluate_at(f: RatFunc, a):
    return f.evaluate(a)
