"""Linear combinations of diagrams in a parameter context."""

from __future__ import annotations

from typing import Dict, Iterable, Mapping, Tuple

from . import diagrams as dg
from .diagrams import Diagram
from .errors import ContextMismatch, DomainMismatch, ParseError, ZeroParameter
from .scalars import (
    Q0,
    BarAt,
    Generic,
    Laurent,
    ParamContext,
    TildeAt,
    as_fraction,
    coerce_scalar,
    composition_factor,
    context_from_json,
    context_to_json,
    format_laurent,
    parse_laurent,
)

NEG_INF = float("-inf")


class Morphism:
    """A finite formal sum of diagrams ``m -> n`` with nonzero exact coefficients.

    Treated as immutable: every operation returns a new instance.
    """

    __slots__ = ("domain", "codomain", "context", "_terms")

    def __init__(self, domain: int, codomain: int, terms: Mapping[Diagram, object] | None = None,
                 context: ParamContext = Q0):
        self.domain = domain
        self.codomain = codomain
        self.context = context
        clean: Dict[Diagram, object] = {}
        for d, c in (terms or {}).items():
            if d.domain != domain or d.codomain != codomain:
                raise DomainMismatch(f"term {d} does not have shape {domain}->{codomain}")
            c = coerce_scalar(context, c)
            if c:
                clean[d] = c
        self._terms = clean

    # constructors
    @classmethod
    def zero(cls, m: int, n: int, context: ParamContext = Q0) -> "Morphism":
        return cls(m, n, {}, context)

    @classmethod
    def of(cls, d: Diagram, context: ParamContext = Q0, coeff=1) -> "Morphism":
        return cls(d.domain, d.codomain, {d: coeff}, context)

    @classmethod
    def identity(cls, n: int, context: ParamContext = Q0) -> "Morphism":
        return cls.of(dg.identity(n), context)

    @classmethod
    def _raw(cls, m, n, terms, context):
        # terms already clean and coerced
        out = cls.__new__(cls)
        out.domain, out.codomain, out.context, out._terms = m, n, context, terms
        return out

    # access
    @property
    def terms(self) -> Dict[Diagram, object]:
        return dict(self._terms)

    def items(self) -> Iterable[Tuple[Diagram, object]]:
        return self._terms.items()

    def coeff(self, d: Diagram):
        return self._terms.get(d, coerce_scalar(self.context, 0))

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def th(self):
        """Largest through-strand count among terms; ``-inf`` for the zero morphism."""
        return max((d.th for d in self._terms), default=NEG_INF)

    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda kv: dg._sort_key(kv[0]))

    # algebra
    def _check_same(self, other: "Morphism"):
        if self.context != other.context:
            raise ContextMismatch(f"contexts {self.context} and {other.context} differ")
        if (self.domain, self.codomain) != (other.domain, other.codomain):
            raise DomainMismatch(
                f"shapes {self.domain}->{self.codomain} and {other.domain}->{other.codomain} differ"
            )

    def __add__(self, other: "Morphism") -> "Morphism":
        self._check_same(other)
        out = dict(self._terms)
        for d, c in other._terms.items():
            v = out.get(d, 0) + c
            if v:
                out[d] = v
            else:
                out.pop(d, None)
        return Morphism._raw(self.domain, self.codomain, out, self.context)

    def __neg__(self) -> "Morphism":
        return Morphism._raw(self.domain, self.codomain, {d: -c for d, c in self._terms.items()},
                             self.context)

    def __sub__(self, other: "Morphism") -> "Morphism":
        return self + (-other)

    def scale(self, s) -> "Morphism":
        s = coerce_scalar(self.context, s)
        if not s:
            return Morphism.zero(self.domain, self.codomain, self.context)
        return Morphism._raw(self.domain, self.codomain,
                             {d: c * s for d, c in self._terms.items()}, self.context)

    def __rmul__(self, s) -> "Morphism":
        return self.scale(s)

    def __matmul__(self, other: "Morphism") -> "Morphism":
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        return (
            self.context == other.context
            and self.domain == other.domain
            and self.codomain == other.codomain
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.domain, self.codomain, self.context, frozenset(self._terms.items())))

    def __repr__(self):
        return f"Morphism({self.domain}->{self.codomain}, {self.context}, {len(self._terms)} terms)"

    def __str__(self):
        if not self._terms:
            return f"0[{self.domain}->{self.codomain}]"
        parts = [f"({format_laurent(c)})*{d}" for d, c in self.sorted_items()]
        return " + ".join(parts)

    # JSON
    def to_json(self) -> dict:
        return {
            "context": context_to_json(self.context),
            "domain": self.domain,
            "codomain": self.codomain,
            "terms": [
                {"coeff": format_laurent(c), "diagram": d.to_json()} for d, c in self.sorted_items()
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "Morphism":
        try:
            ctx = context_from_json(obj["context"])
            m, n = int(obj["domain"]), int(obj["codomain"])
            raw = obj["terms"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed morphism JSON: {exc}") from exc
        terms: Dict[Diagram, object] = {}
        for t in raw:
            d = Diagram.from_json(t["diagram"])
            c = parse_laurent(str(t["coeff"]))
            terms[d] = terms.get(d, 0) + coerce_scalar(ctx, c)
        return cls(m, n, terms, ctx)


def as_morphism(x, context: ParamContext = Q0) -> Morphism:
    if isinstance(x, Morphism):
        return x
    if isinstance(x, Diagram):
        return Morphism.of(x, context)
    raise TypeError(f"expected a Diagram or Morphism, got {type(x).__name__}")


def compose(g, f, ctx: ParamContext | None = None) -> Morphism:
    """``g o f`` (``f`` first).  Diagrams are promoted to morphisms in ``ctx``."""
    if ctx is None:
        ctx = g.context if isinstance(g, Morphism) else f.context if isinstance(f, Morphism) else Q0
    g = as_morphism(g, ctx)
    f = as_morphism(f, ctx)
    if g.context != ctx or f.context != ctx:
        raise ContextMismatch(f"cannot compose in {ctx}: got {g.context} and {f.context}")
    if f.codomain != g.domain:
        raise DomainMismatch(f"codomain {f.codomain} of f differs from domain {g.domain} of g")
    out: Dict[Diagram, object] = {}
    factors: Dict[Tuple[int, int], object] = {}
    zero_q = isinstance(ctx, BarAt) and ctx.a == 0
    for dg_, cg in g._terms.items():
        for df, cf in f._terms.items():
            d, z, loops = dg.compose_raw(dg_, df)
            if zero_q:
                if z:
                    continue
                s = cg * cf
            else:
                key = (z, loops)
                fac = factors.get(key)
                if fac is None:
                    fac = factors[key] = composition_factor(ctx, z, loops)
                s = cg * cf * fac
            v = out.get(d, 0) + s
            if v:
                out[d] = v
            else:
                out.pop(d, None)
    return Morphism._raw(f.domain, g.codomain, out, ctx)


def compose_all(*ms) -> Morphism:
    """``compose_all(a, b, c) = a o b o c``."""
    acc = ms[-1]
    for m in reversed(ms[:-1]):
        acc = compose(m, acc)
    return as_morphism(acc)


def tensor(f, g, ctx: ParamContext | None = None) -> Morphism:
    if ctx is None:
        ctx = f.context if isinstance(f, Morphism) else g.context if isinstance(g, Morphism) else Q0
    f = as_morphism(f, ctx)
    g = as_morphism(g, ctx)
    if f.context != g.context:
        raise ContextMismatch(f"contexts {f.context} and {g.context} differ")
    out: Dict[Diagram, object] = {}
    for df, cf in f._terms.items():
        for dg_, cg in g._terms.items():
            d = dg.tensor(df, dg_)
            out[d] = out.get(d, 0) + cf * cg
    return Morphism(f.domain + g.domain, f.codomain + g.codomain, out, f.context)


def tensor_all(*ms) -> Morphism:
    acc = ms[0]
    for m in ms[1:]:
        acc = tensor(acc, m)
    return as_morphism(acc)


def bar(f) -> Morphism:
    if isinstance(f, Diagram):
        return Morphism.of(dg.flip(f))
    return Morphism._raw(f.codomain, f.domain, {dg.flip(d): c for d, c in f._terms.items()},
                         f.context)


def renormalize(f: Morphism, a, direction: str) -> Morphism:
    """``N_a`` (tilde -> bar, divides by ``a`` per cap) or ``D_a`` (bar -> tilde)."""
    a = as_fraction(a)
    if a == 0:
        raise ZeroParameter("renormalization needs a nonzero parameter")
    if direction == "N":
        if f.context != TildeAt(a):
            raise ContextMismatch(f"N_{a} expects context tilde@{a}, got {f.context}")
        target: ParamContext = BarAt(a)
        expo = -1
    elif direction == "D":
        if f.context != BarAt(a):
            raise ContextMismatch(f"D_{a} expects context bar@{a}, got {f.context}")
        target = TildeAt(a)
        expo = 1
    else:
        raise ValueError(f"direction must be 'N' or 'D', not {direction!r}")
    terms = {d: c * a ** (expo * len(d.caps())) for d, c in f._terms.items()}
    return Morphism(f.domain, f.codomain, terms, target)


def specialize(f: Morphism, a) -> Morphism:
    """Evaluate a generic morphism at ``q = a``; the result lives in ``BarAt(a)``."""
    if not isinstance(f.context, Generic):
        raise ContextMismatch(f"specialize expects a generic morphism, got {f.context}")
    a = as_fraction(a)
    terms = {d: Laurent.coerce(c).evaluate(a) for d, c in f._terms.items()}
    return Morphism(f.domain, f.codomain, terms, BarAt(a))


def in_context(f: Morphism, ctx: ParamContext) -> Morphism:
    """Reinterpret constant coefficients in another context (no relation is applied)."""
    return Morphism(f.domain, f.codomain, f.terms, ctx)

