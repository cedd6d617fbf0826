"""Exact values in Q union {infinity} and the supported valued ground fields.

Two ground fields are available: the rationals with a p-adic valuation, and
rational functions in t (over Q or over a prime field) with the t-adic
valuation.  Elements are kept in canonical form at all times, so structural
equality decides mathematical equality.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .poly import Poly, monic_gcd, parse_poly


class Value:
    """A rational number or infinity; the codomain of every valuation.

    Infinity absorbs addition and compares strictly above every finite
    value.  Instances are immutable and hashable.
    """

    __slots__ = ("_q",)

    def __init__(self, q):
        object.__setattr__(self, "_q", q)

    def __setattr__(self, name, value):
        raise AttributeError("Value is immutable")

    @classmethod
    def finite(cls, q) -> "Value":
        """A finite value from an int, a string like ``3/2`` or a rational."""
        return cls(mpq(q))

    @classmethod
    def infinity(cls) -> "Value":
        return _INFINITY

    @classmethod
    def parse(cls, text: str) -> "Value":
        text = text.strip()
        if text == "inf":
            return _INFINITY
        try:
            return cls(mpq(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed value {text!r}") from exc

    @property
    def is_infinite(self) -> bool:
        return self._q is None

    @property
    def rational(self) -> mpq:
        if self._q is None:
            raise ValueError("infinity is not a rational number")
        return self._q

    def __add__(self, other: "Value") -> "Value":
        if self._q is None or other._q is None:
            return _INFINITY
        return Value(self._q + other._q)

    def __sub__(self, other: "Value") -> "Value":
        if other._q is None:
            raise ValueError("cannot subtract infinity")
        if self._q is None:
            return _INFINITY
        return Value(self._q - other._q)

    def scaled(self, factor) -> "Value":
        """Multiply by a rational factor; infinity requires factor > 0."""
        factor = mpq(factor)
        if self._q is None:
            if factor <= 0:
                raise ValueError("infinity can only be scaled by a positive factor")
            return _INFINITY
        return Value(self._q * factor)

    def __eq__(self, other) -> bool:
        return isinstance(other, Value) and self._q == other._q

    def __hash__(self) -> int:
        return hash(self._q)

    def __lt__(self, other: "Value") -> bool:
        if self._q is None:
            return False
        if other._q is None:
            return True
        return self._q < other._q

    def __le__(self, other: "Value") -> bool:
        return self < other or self == other

    def __gt__(self, other: "Value") -> bool:
        return other < self

    def __ge__(self, other: "Value") -> bool:
        return other <= self

    def __str__(self) -> str:
        return "inf" if self._q is None else str(self._q)

    def __repr__(self) -> str:
        return f"Value({self})"


_INFINITY = Value(None)

INFINITY = _INFINITY


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Rationals:
    """The field Q with elements represented as reduced gmpy2 rationals."""

    zero = mpq(0)
    one = mpq(1)

    @property
    def named_constants(self) -> dict:
        return {}

    @staticmethod
    def is_zero(a) -> bool:
        return a == 0

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def div(a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in Q")
        return a / b

    @staticmethod
    def from_int(n: int):
        return mpq(n)

    @staticmethod
    def from_rational(q):
        return mpq(q)

    @staticmethod
    def format_element(a) -> str:
        return str(a)


@dataclass(frozen=True)
class PrimeField:
    """GF(p) with elements stored as least nonnegative residues."""

    p: int

    zero = 0
    one = 1

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def named_constants(self) -> dict:
        return {}

    @staticmethod
    def is_zero(a) -> bool:
        return a == 0

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def div(self, a, b):
        if b % self.p == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return (a * pow(b, -1, self.p)) % self.p

    def from_int(self, n: int):
        return n % self.p

    def from_rational(self, q):
        q = mpq(q)
        den = int(q.denominator) % self.p
        if den == 0:
            raise ValueError(f"denominator of {q} is not invertible in GF({self.p})")
        return (int(q.numerator) * pow(den, -1, self.p)) % self.p

    def format_element(self, a) -> str:
        return str(a)


def _padic_order(n, p: int) -> int:
    # n is a nonzero integer
    n = int(n)
    order = 0
    while n % p == 0:
        n //= p
        order += 1
    return order


@dataclass(frozen=True)
class PAdicRationals(Rationals):
    """Q viewed as a valued field under the p-adic valuation."""

    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def valuation(self, a) -> Value:
        if a == 0:
            return INFINITY
        return Value.finite(
            _padic_order(a.numerator, self.p) - _padic_order(a.denominator, self.p)
        )

    @property
    def uniformizer(self):
        return mpq(self.p)

    def describe(self) -> str:
        return f"Q with the {self.p}-adic valuation"


@dataclass(frozen=True)
class RatFunc:
    """A reduced fraction of polynomials in t; the denominator is monic."""

    num: Poly
    den: Poly

    def __str__(self) -> str:
        if self.den.degree == 0:
            return self.num.text("t")
        return f"({self.num.text('t')})/({self.den.text('t')})"


@dataclass(frozen=True)
class TAdicRationalFunctions:
    """Rational functions in t over Q or GF(p), with the t-adic valuation."""

    scalars: Rationals | PrimeField

    def __post_init__(self):
        one = Poly.one(self.scalars)
        object.__setattr__(self, "_one_poly", one)
        object.__setattr__(self, "_zero", RatFunc(Poly.zero(self.scalars), one))
        object.__setattr__(self, "_one", RatFunc(one, one))
        object.__setattr__(self, "_t", RatFunc(Poly.x(self.scalars), one))

    def _make(self, num: Poly, den: Poly) -> RatFunc:
        sc = self.scalars
        if den.is_zero:
            raise ZeroDivisionError("zero denominator in rational function")
        if num.is_zero:
            return self._zero
        if den.degree == 0:
            lead = den.coeffs[0]
            if lead == sc.one:
                return RatFunc(num, self._one_poly)
            return RatFunc(num.scaled(sc.div(sc.one, lead)), self._one_poly)
        if all(sc.is_zero(c) for c in den.coeffs[:-1]):
            # monomial denominator: cancel the shared power of t directly
            order = next(i for i, c in enumerate(num.coeffs) if not sc.is_zero(c))
            m = min(den.degree, order)
            if m:
                num = Poly(sc, num.coeffs[m:])
                den = Poly(sc, den.coeffs[m:])
        else:
            g = monic_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
        lead = den.leading
        if lead != sc.one:
            inv = sc.div(sc.one, lead)
            num, den = num.scaled(inv), den.scaled(inv)
        if den.degree == 0:
            den = self._one_poly
        return RatFunc(num, den)

    @property
    def zero(self) -> RatFunc:
        return self._zero

    @property
    def one(self) -> RatFunc:
        return self._one

    @property
    def t(self) -> RatFunc:
        return self._t

    @property
    def named_constants(self) -> dict:
        return {"t": self._t}

    @staticmethod
    def is_zero(a: RatFunc) -> bool:
        return not a.num.coeffs

    def add(self, a: RatFunc, b: RatFunc) -> RatFunc:
        one = self._one_poly
        if a.den is one and b.den is one:
            n = a.num + b.num
            return self._zero if n.is_zero else RatFunc(n, one)
        if a.den is b.den or a.den == b.den:
            return self._make(a.num + b.num, a.den)
        return self._make(a.num * b.den + b.num * a.den, a.den * b.den)

    def sub(self, a: RatFunc, b: RatFunc) -> RatFunc:
        one = self._one_poly
        if a.den is one and b.den is one:
            n = a.num - b.num
            return self._zero if n.is_zero else RatFunc(n, one)
        if a.den is b.den or a.den == b.den:
            return self._make(a.num - b.num, a.den)
        return self._make(a.num * b.den - b.num * a.den, a.den * b.den)

    def neg(self, a: RatFunc) -> RatFunc:
        return RatFunc(-a.num, a.den)

    def mul(self, a: RatFunc, b: RatFunc) -> RatFunc:
        one = self._one_poly
        if a.den is one and b.den is one:
            n = a.num * b.num
            return self._zero if n.is_zero else RatFunc(n, one)
        if a.den.degree == 0 and b.den.degree == 0:
            return self._make(a.num * b.num, one)
        return self._make(a.num * b.num, a.den * b.den)

    def div(self, a: RatFunc, b: RatFunc) -> RatFunc:
        if b.num.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return self._make(a.num * b.den, a.den * b.num)

    def from_int(self, n: int) -> RatFunc:
        return RatFunc(Poly.constant(self.scalars, self.scalars.from_int(n)), self._one_poly)

    def from_rational(self, q) -> RatFunc:
        return RatFunc(
            Poly.constant(self.scalars, self.scalars.from_rational(q)), self._one_poly
        )

    def format_element(self, a: RatFunc) -> str:
        if a.den.degree == 0 and a.num.degree <= 0:
            return self.scalars.format_element(a.num.coefficient(0))
        if a.den.degree == 0:
            # single monomials like -t or 2*t^3 embed safely without parens
            nonzero = sum(1 for c in a.num.coeffs if c != self.scalars.zero)
            text = a.num.text("t")
            return text if nonzero == 1 else f"({text})"
        return f"({a.num.text('t')})/({a.den.text('t')})"

    @staticmethod
    def _order(p: Poly) -> int:
        # index of the first nonzero coefficient of a nonzero polynomial
        for i, c in enumerate(p.coeffs):
            if c != p.field.zero:
                return i
        raise ValueError("zero polynomial has no t-order")

    def valuation(self, a: RatFunc) -> Value:
        if a.num.is_zero:
            return INFINITY
        return Value.finite(self._order(a.num) - self._order(a.den))

    @property
    def uniformizer(self) -> RatFunc:
        return self.t

    def describe(self) -> str:
        if isinstance(self.scalars, PrimeField):
            return f"GF({self.scalars.p})(t) with the t-adic valuation"
        return "Q(t) with the t-adic valuation"


GroundFieldConfig = PAdicRationals | TAdicRationalFunctions


def parse_element(cfg, text: str):
    """Parse a ground element from its text encoding (no x allowed)."""
    p = parse_poly(cfg, text, allow_x=False)
    return p.coefficient(0)


def format_element(cfg, a) -> str:
    return cfg.format_element(a)


def ground_to_json(cfg) -> dict:
    if isinstance(cfg, PAdicRationals):
        return {"kind": "p-adic", "p": cfg.p}
    if isinstance(cfg, TAdicRationalFunctions):
        if isinstance(cfg.scalars, PrimeField):
            return {"kind": "t-adic", "coefficients": f"GF({cfg.scalars.p})"}
        return {"kind": "t-adic", "coefficients": "Q"}
    raise TypeError(f"not a ground field config: {cfg!r}")


def ground_from_json(doc: dict):
    kind = doc.get("kind")
    if kind == "p-adic":
        return PAdicRationals(p=int(doc["p"]))
    if kind == "t-adic":
        coeff = doc.get("coefficients", "Q")
        if coeff == "Q":
            return TAdicRationalFunctions(Rationals())
        if isinstance(coeff, str) and coeff.startswith("GF(") and coeff.endswith(")"):
            return TAdicRationalFunctions(PrimeField(int(coeff[3:-1])))
        raise ValueError(f"unknown coefficient field {coeff!r}")
    raise ValueError(f"unknown ground field kind {kind!r}")
