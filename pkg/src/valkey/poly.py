"""Dense univariate polynomials over an exact coefficient field.

A polynomial is a tuple of coefficients in ascending degree order with no
trailing zeros; the empty tuple is the zero polynomial.  Coefficient
arithmetic is delegated to a field object so the same machinery serves both
the ground fields (p-adic rationals, rational functions in t) and the scalar
fields living inside rational-function coefficients.

A field object must provide: ``zero``, ``one``, ``add``, ``sub``, ``neg``,
``mul``, ``div``, ``from_int``, ``from_rational``, ``format_element`` and a
``named_constants`` mapping (e.g. ``{"t": ...}`` for rational-function
fields).  Elements must be hashable and structurally comparable.
"""

from __future__ import annotations

import itertools
import math
import re
from typing import Iterable


class PolyParseError(ValueError):
    """Raised on malformed polynomial text; carries the 0-based column."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (column {position + 1})")
        self.position = position


class Poly:
    """Immutable dense polynomial over a coefficient field."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs: Iterable = ()):
        coeffs = list(coeffs)
        is_zero = field.is_zero
        while coeffs and is_zero(coeffs[-1]):
            coeffs.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field) -> "Poly":
        return cls(field)

    @classmethod
    def one(cls, field) -> "Poly":
        return cls(field, (field.one,))

    @classmethod
    def constant(cls, field, c) -> "Poly":
        return cls(field, (c,))

    @classmethod
    def x(cls, field) -> "Poly":
        """The identity polynomial x."""
        return cls(field, (field.zero, field.one))

    # -- structure ---------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 encodes the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def coefficient(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "Poly"):
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.field is not self.field and other.field != self.field:
            raise TypeError("polynomials over different coefficient fields")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        fld = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = fld.add(out[i], c)
        return Poly(fld, out)

    def __neg__(self) -> "Poly":
        fld = self.field
        return Poly(fld, [fld.neg(c) for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        fld = self.field
        a, b = self.coeffs, other.coeffs
        out = [fld.zero] * max(len(a), len(b))
        for i, c in enumerate(a):
            out[i] = c
        for i, c in enumerate(b):
            out[i] = fld.sub(out[i], c)
        return Poly(fld, out)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        fld = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(fld)
        is_zero = fld.is_zero
        out = [fld.zero] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if is_zero(ca):
                continue
            for j, cb in enumerate(b):
                if is_zero(cb):
                    continue
                out[i + j] = fld.add(out[i + j], fld.mul(ca, cb))
        return Poly(fld, out)

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scaled(self, c) -> "Poly":
        """Multiply every coefficient by the field element c."""
        fld = self.field
        return Poly(fld, [fld.mul(c, a) for a in self.coeffs])

    def shifted(self, k: int) -> "Poly":
        """Multiply by x^k."""
        if self.is_zero:
            return self
        return Poly(self.field, (self.field.zero,) * k + self.coeffs)

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        return euclid_divide(self, other)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return euclid_divide(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return euclid_divide(self, other)[1]

    # -- text --------------------------------------------------------------

    def text(self, var: str = "x") -> str:
        """Render as ``c0 + c1*var + c2*var^2 + ...`` omitting zero terms."""
        if self.is_zero:
            return "0"
        fld = self.field
        pieces = []
        for i, c in enumerate(self.coeffs):
            if c == fld.zero:
                continue
            cs = fld.format_element(c)
            if i == 0:
                pieces.append(cs)
                continue
            power = var if i == 1 else f"{var}^{i}"
            if cs == "1":
                pieces.append(power)
            elif cs == "-1":
                pieces.append(f"-{power}")
            else:
                pieces.append(f"{cs}*{power}")
        out = pieces[0]
        for piece in pieces[1:]:
            if piece.startswith("-"):
                out += " - " + piece[1:]
            else:
                out += " + " + piece
        return out

    def __str__(self) -> str:
        return self.text()

    def __repr__(self) -> str:
        return f"Poly({self.text()!r})"


class QExpansion:
    """The unique writing f = sum parts[i] * base^i with deg parts[i] < deg base."""

    __slots__ = ("base", "parts")

    def __init__(self, base: Poly, parts: Iterable[Poly]):
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "parts", tuple(parts))

    def __setattr__(self, name, value):
        raise AttributeError("QExpansion is immutable")

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def reconstruct(self) -> Poly:
        """Recombine sum parts[i] * base^i."""
        total = Poly.zero(self.base.field)
        power = Poly.one(self.base.field)
        for part in self.parts:
            total = total + part * power
            power = power * self.base
        return total

    def __repr__(self) -> str:
        inner = ", ".join(p.text() for p in self.parts)
        return f"QExpansion(base={self.base.text()!r}, parts=[{inner}])"


def euclid_divide(f: Poly, q: Poly) -> tuple[Poly, Poly]:
    """Quotient and remainder of f by q, with deg(remainder) < deg(q)."""
    f._check(q)
    if q.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    fld = f.field
    dq = q.degree
    if f.degree < dq:
        return Poly.zero(fld), f
    rem = list(f.coeffs)
    lead = q.leading
    monic = lead == fld.one
    is_zero = fld.is_zero
    quot = [fld.zero] * (len(rem) - dq)
    for i in range(len(rem) - dq - 1, -1, -1):
        top = rem[i + dq]
        if is_zero(top):
            continue
        c = top if monic else fld.div(top, lead)
        quot[i] = c
        for j, qc in enumerate(q.coeffs[:-1]):
            if not is_zero(qc):
                rem[i + j] = fld.sub(rem[i + j], fld.mul(c, qc))
        rem[i + dq] = fld.zero
    return Poly(fld, quot), Poly(fld, rem[:dq])


def q_expansion(f: Poly, q: Poly) -> QExpansion:
    """Expand f in powers of q by iterated Euclidean division."""
    f._check(q)
    if q.degree < 1:
        raise ValueError("expansion base must have degree >= 1")
    fld = f.field
    if q.degree == 1 and q.is_monic:
        # Taylor shift: in-place Ruffini-Horner rounds against the root
        if f.is_zero:
            return QExpansion(q, (f,))
        root = fld.neg(q.coeffs[0])
        if fld.is_zero(root):
            consts = list(f.coeffs)
        else:
            cs = list(f.coeffs)
            n = len(cs)
            for k in range(n - 1):
                for i in range(n - 2, k - 1, -1):
                    cs[i] = fld.add(cs[i], fld.mul(root, cs[i + 1]))
            consts = cs
        while len(consts) > 1 and fld.is_zero(consts[-1]):
            consts.pop()
        return QExpansion(q, tuple(Poly(fld, (c,)) for c in consts))
    parts = []
    current = f
    while True:
        current, part = euclid_divide(current, q)
        parts.append(part)
        if current.is_zero:
            break
    return QExpansion(q, parts)


def hasse_derivative(f: Poly, k: int) -> Poly:
    """Divided k-th derivative: x^n maps to binomial(n, k) * x^(n-k).

    The binomial coefficients are computed exactly in Z and then mapped into
    the coefficient field, so the result is correct in every characteristic.
    """
    if k < 0:
        raise ValueError("derivative order must be >= 0")
    if k == 0:
        return f
    fld = f.field
    out = []
    for n in range(k, len(f.coeffs)):
        c = fld.mul(fld.from_int(math.comb(n, k)), f.coeffs[n])
        out.append(c)
    return Poly(fld, out)


def monic_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (zero if both inputs are zero)."""
    a._check(b)
    fld = a.field
    while not b.is_zero:
        a, b = b, a % b
    if a.is_zero:
        return a
    return a.scaled(fld.div(fld.one, a.leading))


# -- parsing ---------------------------------------------------------------

_TOKEN_RE = re.compile(r"(?P<ws>\s+)|(?P<int>\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()])")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise PolyParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    return tokens


class _PolyParser:
    """Recursive-descent parser for sums of products of numbers, x and t.

    Grammar (implicit multiplication is not allowed)::

        expr   := term (('+'|'-') term)*
        term   := factor (('*'|'/') factor)*
        factor := ('-'|'+')* atom ('^' int)?
        atom   := int | name | '(' expr ')'

    Division is only defined when the divisor has degree 0 in x.
    """

    def __init__(self, field, text: str, allow_x: bool):
        self.field = field
        self.text = text
        self.allow_x = allow_x
        self.tokens = _tokenize(text)
        self.i = 0

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, "", len(self.text))

    def _next(self):
        tok = self._peek()
        self.i += 1
        return tok

    def parse(self) -> Poly:
        if not self.tokens:
            raise PolyParseError("empty polynomial", 0)
        result = self._expr()
        kind, text, pos = self._peek()
        if kind is not None:
            raise PolyParseError(f"unexpected {text!r}", pos)
        return result

    def _expr(self) -> Poly:
        result = self._term()
        while True:
            kind, text, _ = self._peek()
            if kind == "op" and text in "+-":
                self._next()
                rhs = self._term()
                result = result + rhs if text == "+" else result - rhs
            else:
                return result

    def _term(self) -> Poly:
        result = self._factor()
        while True:
            kind, text, pos = self._peek()
            if kind == "op" and text in "*/":
                self._next()
                rhs = self._factor()
                if text == "*":
                    result = result * rhs
                else:
                    if rhs.is_zero:
                        raise PolyParseError("division by zero", pos)
                    if rhs.degree > 0:
                        raise PolyParseError("cannot divide by a polynomial in x", pos)
                    inv = self.field.div(self.field.one, rhs.coeffs[0])
                    result = result.scaled(inv)
            elif kind in ("int", "name") or (kind == "op" and text == "("):
                raise PolyParseError("implicit multiplication is not allowed", pos)
            else:
                return result

    def _factor(self) -> Poly:
        negate = False
        while True:
            kind, text, _ = self._peek()
            if kind == "op" and text in "+-":
                self._next()
                if text == "-":
                    negate = not negate
            else:
                break
        result = self._atom()
        kind, text, pos = self._peek()
        if kind == "op" and text == "^":
            self._next()
            kind, text, pos = self._next()
            if kind != "int":
                raise PolyParseError("exponent must be a nonnegative integer", pos)
            result = result ** int(text)
        return -result if negate else result

    def _atom(self) -> Poly:
        kind, text, pos = self._next()
        if kind == "int":
            return Poly.constant(self.field, self.field.from_int(int(text)))
        if kind == "name":
            if text == "x":
                if not self.allow_x:
                    raise PolyParseError("x is not allowed here", pos)
                return Poly.x(self.field)
            constants = self.field.named_constants
            if text in constants:
                return Poly.constant(self.field, constants[text])
            raise PolyParseError(f"unknown symbol {text!r}", pos)
        if kind == "op" and text == "(":
            inner = self._expr()
            kind, text, pos = self._next()
            if not (kind == "op" and text == ")"):
                raise PolyParseError("expected ')'", pos)
            return inner
        raise PolyParseError(f"expected a number, symbol or '('", pos)


def parse_poly(field, text: str, allow_x: bool = True) -> Poly:
    """Parse polynomial text like ``x^2 - 2*x + 3/2`` over the given field."""
    return _PolyParser(field, text, allow_x).parse()


def enumerate_polys(field, alphabet, max_degree: int):
    """All polynomials of degree <= max_degree with coefficients in alphabet.

    Every polynomial corresponds to exactly one full-length coefficient tuple
    (trailing zeros normalize away), so there are no duplicates.
    """
    for coeffs in itertools.product(alphabet, repeat=max_degree + 1):
        yield Poly(field, coeffs)
