"""Exact scalars and parameter contexts.

Coefficients are Laurent polynomials in ``q`` over the rationals.  In a
specialized context every coefficient is a constant, and is stored as a plain
:class:`fractions.Fraction` for speed; :class:`Laurent` interoperates with
``Fraction`` and ``int`` transparently.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

from .errors import ParseError, ZeroParameter

Rational = Union[int, Fraction]


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, Laurent):
        return value.constant_value()
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


class Laurent:
    """A Laurent polynomial ``sum c_k q^k`` with rational coefficients.

    Zero coefficients are never stored; two polynomials are equal iff their
    coefficient maps agree.  Instances are immutable.
    """

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, Rational] | None = None):
        clean: Dict[int, Fraction] = {}
        if coeffs:
            for k, c in coeffs.items():
                c = as_fraction(c)
                if c:
                    clean[int(k)] = c
        self._coeffs = clean
        self._hash = None

    # construction helpers
    @classmethod
    def const(cls, c: Rational) -> "Laurent":
        return cls({0: c})

    @classmethod
    def monomial(cls, k: int, c: Rational = 1) -> "Laurent":
        return cls({k: c})

    @classmethod
    def coerce(cls, value) -> "Laurent":
        if isinstance(value, Laurent):
            return value
        return cls.const(as_fraction(value))

    @property
    def coeffs(self) -> Dict[int, Fraction]:
        return dict(self._coeffs)

    def items(self) -> Iterable[Tuple[int, Fraction]]:
        return sorted(self._coeffs.items())

    def is_constant(self) -> bool:
        return all(k == 0 for k in self._coeffs)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._coeffs.get(0, Fraction(0))

    def degree_range(self) -> Tuple[int, int] | None:
        if not self._coeffs:
            return None
        return min(self._coeffs), max(self._coeffs)

    def evaluate(self, a: Rational) -> Fraction:
        a = as_fraction(a)
        total = Fraction(0)
        for k, c in self._coeffs.items():
            if k < 0:
                if a == 0:
                    raise ZeroParameter("cannot evaluate a negative power of q at q=0")
                total += c / a ** (-k)
            else:
                total += c * a**k
        return total

    # arithmetic
    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __add__(self, other):
        other = Laurent.coerce(other)
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            out[k] = out.get(k, 0) + c
        return Laurent(out)

    __radd__ = __add__

    def __neg__(self):
        return Laurent({k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-Laurent.coerce(other))

    def __rsub__(self, other):
        return Laurent.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Laurent({k: c * other for k, c in self._coeffs.items()})
        other = Laurent.coerce(other)
        out: Dict[int, Fraction] = {}
        for k1, c1 in self._coeffs.items():
            for k2, c2 in other._coeffs.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
        return Laurent(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if len(self._coeffs) != 1:
                raise ValueError("only monomials can be inverted")
            ((k, c),) = self._coeffs.items()
            return Laurent({k * e: c**e})
        result = Laurent.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self._coeffs.get(0, 0) == other
        if not isinstance(other, Laurent):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self._coeffs.get(0, Fraction(0)))
            else:
                self._hash = hash(frozenset(self._coeffs.items()))
        return self._hash

    def __repr__(self):
        return f"Laurent({format_laurent(self)!r})"

    def __str__(self):
        return format_laurent(self)


Q = Laurent.monomial(1)
ONE = Laurent.const(1)
ZERO = Laurent()

Scalar = Union[Fraction, Laurent]


def format_rational(c: Rational) -> str:
    c = as_fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_laurent(p) -> str:
    """Canonical sparse string, ascending exponents, e.g. ``3/2*q^-1 + 1``."""
    if not isinstance(p, Laurent):
        return format_rational(p)
    items = p.items()
    if not items:
        return "0"
    parts = []
    for idx, (k, c) in enumerate(items):
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if k == 0:
            body = format_rational(mag)
        else:
            mono = "q" if k == 1 else f"q^{k}"
            body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
        if idx == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


_TERM = re.compile(
    r"""^(?P<coef>\d+(?:/\d+)?)?\s*\*?\s*(?P<q>q(?:\s*\^\s*(?P<exp>-?\d+))?)?$""",
    re.VERBOSE,
)


def parse_laurent(text: str) -> Laurent:
    """Parse strings such as ``"3/2*q^-1 + 1"``, ``"q - q^3"`` or ``"-5/7"``."""
    s = text.replace("−", "-").strip()
    if not s:
        raise ParseError("empty scalar")
    # split on +/- signs that do not belong to an exponent
    tokens = []
    buf = ""
    sign = 1
    for ch in s:
        if ch in "+-" and not buf.rstrip().endswith("^"):
            if buf.strip():
                tokens.append((sign, buf.strip()))
            elif tokens:
                raise ParseError(f"dangling sign in {text!r}")
            buf = ""
            sign = -1 if ch == "-" else 1
        else:
            buf += ch
    if buf.strip():
        tokens.append((sign, buf.strip()))
    else:
        raise ParseError(f"trailing sign in {text!r}")
    out = Laurent()
    for sgn, tok in tokens:
        m = _TERM.match(tok.replace(" ", ""))
        if not m or (m.group("coef") is None and m.group("q") is None):
            raise ParseError(f"cannot parse scalar term {tok!r} in {text!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        exp = 0
        if m.group("q"):
            exp = int(m.group("exp")) if m.group("exp") is not None else 1
        out = out + Laurent.monomial(exp, sgn * coef)
    return out


# parameter contexts


@dataclass(frozen=True)
class Generic:
    """Coefficients in Q[q, q^-1]; relations of the renormalized (bar) category."""

    def __str__(self):
        return "generic"


@dataclass(frozen=True)
class BarAt:
    """The renormalized category with q specialized to ``a``; ``BarAt(0)`` is TL at q=0."""

    a: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", as_fraction(self.a))

    def __str__(self):
        return f"bar@{format_rational(self.a)}"


@dataclass(frozen=True)
class TildeAt:
    """The classical category (circle = [2]_q, zig-zag = id) at an invertible ``a``."""

    a: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", as_fraction(self.a))
        if self.a == 0:
            raise ZeroParameter("the tilde category needs an invertible parameter")

    def __str__(self):
        return f"tilde@{format_rational(self.a)}"


ParamContext = Union[Generic, BarAt, TildeAt]

GENERIC = Generic()
Q0 = BarAt(Fraction(0))


def zero_of(ctx: ParamContext) -> Scalar:
    return ZERO if isinstance(ctx, Generic) else Fraction(0)


def one_of(ctx: ParamContext) -> Scalar:
    return ONE if isinstance(ctx, Generic) else Fraction(1)


def coerce_scalar(ctx: ParamContext, value) -> Scalar:
    """Bring ``value`` into the scalar type used by ``ctx``."""
    if isinstance(ctx, Generic):
        return Laurent.coerce(value)
    if isinstance(value, Laurent):
        if not value.is_constant():
            raise ValueError(f"{ctx} needs constant coefficients, got {value}")
        return value.constant_value()
    return as_fraction(value)


def composition_factor(ctx: ParamContext, zigzags: int, loops: int) -> Scalar:
    """Scalar produced by ``zigzags`` straightened zig-zags and ``loops`` closed circles."""
    if isinstance(ctx, Generic):
        return Q**zigzags * (Q * Q + 1) ** loops
    if isinstance(ctx, BarAt):
        a = ctx.a
        if a == 0:
            return Fraction(0) if zigzags else Fraction(1)
        return a**zigzags * (a * a + 1) ** loops
    a = ctx.a
    return (a + 1 / a) ** loops


def context_to_json(ctx: ParamContext):
    if isinstance(ctx, Generic):
        return "generic"
    key = "bar" if isinstance(ctx, BarAt) else "tilde"
    return {key: format_rational(ctx.a)}


def context_from_json(obj) -> ParamContext:
    if obj == "generic":
        return GENERIC
    if isinstance(obj, dict) and len(obj) == 1:
        ((key, val),) = obj.items()
        if key == "bar":
            return BarAt(Fraction(str(val)))
        if key == "tilde":
            return TildeAt(Fraction(str(val)))
    raise ParseError(f"unknown context {obj!r}")


def parse_context(text: str) -> ParamContext:
    """CLI-style parameter: ``generic``, ``0`` (the q=0 category) or a rational for ``BarAt``."""
    text = text.strip()
    if text == "generic":
        return GENERIC
    if text.startswith("tilde:"):
        return TildeAt(Fraction(text[6:]))
    if text.startswith("bar:"):
        text = text[4:]
    try:
        return BarAt(Fraction(text))
    except ValueError as exc:
        raise ParseError(f"bad parameter {text!r}") from exc
