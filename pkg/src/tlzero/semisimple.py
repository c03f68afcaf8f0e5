"""Max-summand basis, End-algebra blocks, simple modules, the monoid T_n and Moebius inversion."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple, Union

from . import diagrams as dg
from .diagrams import Diagram
from .errors import DomainMismatch, ShapeMismatch, ZeroElement
from .jones_wenzl import jw
from .morphisms import NEG_INF, Morphism, bar, compose
from .scalars import Q0


# max-summand basis


@dataclass(frozen=True)
class HatBasisElement:
    u: Diagram
    v: Diagram

    @classmethod
    def of(cls, x: Diagram) -> "HatBasisElement":
        u, v = dg.factorize_cup_cap(x)
        return cls(u, v)

    @property
    def k(self) -> int:
        return self.v.codomain

    @property
    def diagram(self) -> Diagram:
        return dg.compose_raw(self.u, self.v)[0]

    @property
    def value(self) -> Morphism:
        return hat(self.diagram)


@lru_cache(maxsize=None)
def hat(x: Diagram) -> Morphism:
    """u o j_k o v for the cup/cap factorization x = u o v."""
    u, v = dg.factorize_cup_cap(x)
    return compose(Morphism.of(u), compose(jw(x.th), Morphism.of(v)))


def expand_hat(f: Morphism) -> Dict[Diagram, object]:
    """Coefficients of ``f`` in the hat basis, keyed by the diagram x of hat(x).

    Greedy elimination from the top through-count down; exact because the
    change of basis is unitriangular.
    """
    rest = f
    out: Dict[Diagram, object] = {}
    while not rest.is_zero():
        k = rest.th
        top = [(d, c) for d, c in rest.items() if d.th == k]
        for d, c in top:
            out[d] = c
            rest = rest - hat(d).scale(c)
    return out


def sum_hats(coeffs: Dict[Diagram, object], m: int, n: int) -> Morphism:
    acc = Morphism.zero(m, n)
    for d, c in coeffs.items():
        acc = acc + hat(d).scale(c)
    return acc


# matrix units for End(m)


@dataclass(frozen=True)
class MatrixUnitLabel:
    k: int
    a: int
    b: int

    def __str__(self):
        return f"E[{self.k};{self.a},{self.b}]"


def block_cups(k: int, m: int) -> List[Diagram]:
    """The deterministic enumeration u_1, ..., u_{r_k} of cup diagrams k -> m."""
    return dg.cup_diagrams(k, m)


def end_block_decomposition(m: int) -> List[Tuple[int, int]]:
    return [(k, len(block_cups(k, m))) for k in range(m, -1, -2)]


def label_of(x: Diagram) -> MatrixUnitLabel:
    if x.domain != x.codomain:
        raise ShapeMismatch("matrix-unit labels exist only for endomorphism diagrams")
    u, v = dg.factorize_cup_cap(x)
    cups = block_cups(x.th, x.domain)
    return MatrixUnitLabel(x.th, cups.index(u) + 1, cups.index(dg.flip(v)) + 1)


def diagram_of(label: MatrixUnitLabel, m: int) -> Diagram:
    cups = block_cups(label.k, m)
    return dg.compose_raw(cups[label.a - 1], dg.flip(cups[label.b - 1]))[0]


def matrix_unit_product(left: MatrixUnitLabel, right: MatrixUnitLabel) -> Optional[MatrixUnitLabel]:
    """E_{cd} E_{ab} = delta_{da} E_{cb}; ``None`` stands for zero."""
    if left.k != right.k or left.b != right.a:
        return None
    return MatrixUnitLabel(left.k, left.a, right.b)


def hat_product(x2, x1) -> Morphism:
    """hat(x2) o hat(x1) by the multiplication rule (not by expanding projectors)."""
    e2 = x2 if isinstance(x2, HatBasisElement) else HatBasisElement.of(x2)
    e1 = x1 if isinstance(x1, HatBasisElement) else HatBasisElement.of(x1)
    if e1.u.codomain != e2.v.domain:
        raise DomainMismatch(f"cannot compose hat elements {e2.diagram} after {e1.diagram}")
    if e2.v == dg.flip(e1.u):
        return hat(dg.compose_raw(e2.u, e1.v)[0])
    return Morphism.zero(e1.v.domain, e2.u.codomain)


# simple modules


def simple_module_act(side: str, x: Diagram, vec: Diagram) -> Optional[Diagram]:
    """Action of an End(m) diagram on a cup (left) or cap (right) basis vector; ``None`` is 0."""
    if x.domain != x.codomain:
        raise ShapeMismatch("acting diagram must be an endomorphism")
    if side == "left":
        if not vec.is_cup_diagram() or vec.codomain != x.domain:
            raise ShapeMismatch(f"{vec} is not a cup diagram into {x.domain}")
        d, z, _ = dg.compose_raw(x, vec)
        ok = not z and d.is_cup_diagram()
    elif side == "right":
        if not vec.is_cap_diagram() or vec.domain != x.codomain:
            raise ShapeMismatch(f"{vec} is not a cap diagram out of {x.domain}")
        d, z, _ = dg.compose_raw(vec, x)
        ok = not z and d.is_cap_diagram()
    else:
        raise ValueError("side must be 'left' or 'right'")
    return d if ok else None


# the monoid T_n


class _Star:
    __slots__ = ()

    def __repr__(self):
        return "*"

    def __reduce__(self):
        return (_star, ())


STAR = _Star()


def _star():
    return STAR


MonoidElement = Union[Diagram, _Star]


def monoid_product(x: MonoidElement, y: MonoidElement) -> MonoidElement:
    """x . y = x o y at q = 0 (y first); the zero element absorbs."""
    if x is STAR or y is STAR:
        return STAR
    if x.domain != y.codomain:
        raise DomainMismatch("monoid elements live in different T_n")
    d, z, _ = dg.compose_raw(x, y)
    return STAR if z else d


def monoid_elements(n: int) -> List[MonoidElement]:
    return [STAR] + dg.hom(n, n)


def monoid_inverse(x: MonoidElement) -> MonoidElement:
    return STAR if x is STAR else dg.flip(x)


def th_of(x: MonoidElement):
    return NEG_INF if x is STAR else x.th


def idempotents(k: int) -> List[Diagram]:
    """Nonzero idempotents of T_k: the diagrams w-bar o w for w in D_k."""
    return [dg.compose_raw(dg.flip(w), w)[0] for w in dg.cap_diagrams(k)]


@lru_cache(maxsize=None)
def _downset(x: Diagram) -> Tuple[Diagram, ...]:
    u, v = dg.factorize_cup_cap(x)
    out = []
    for e in idempotents(x.th):
        out.append(dg.compose_raw(u, dg.compose_raw(e, v)[0])[0])
    return tuple(sorted(set(out), key=dg._sort_key))


def natural_order_downset(x: MonoidElement) -> List[Diagram]:
    """All y with y = x e for a nonzero idempotent e, i.e. y below x in the natural order."""
    if x is STAR:
        raise ZeroElement("the zero element has no downset here")
    return list(_downset(x))


def natural_order_leq(y: MonoidElement, x: MonoidElement) -> bool:
    if y is STAR:
        return True
    if x is STAR:
        return False
    return y in _downset(x)


@lru_cache(maxsize=None)
def mobius_bracket(x: MonoidElement) -> Morphism:
    """[x] = x - sum of [y] over y strictly below x."""
    if x is STAR:
        raise ZeroElement("the bracket of the zero element is not defined")
    acc = Morphism.of(x, Q0)
    for y in _downset(x):
        if y != x:
            acc = acc - mobius_bracket(y)
    return acc


def j_order_leq(x: MonoidElement, y: MonoidElement) -> bool:
    return th_of(x) <= th_of(y)


# tensor-ideal probe


def tensor_ideal_probe(f: Morphism) -> Tuple[int, object, Morphism]:
    """Sandwich ``f`` between bars of the factors of its lowest hat component.

    Returns ``(k, c, g)`` where ``g = u1-bar o f o v1-bar`` should equal ``c * j_k``.
    """
    coeffs = expand_hat(f)
    if not coeffs:
        raise ZeroElement("the probe needs a nonzero morphism")
    x1 = min(coeffs, key=lambda d: (d.th, dg._sort_key(d)))
    u1, v1 = dg.factorize_cup_cap(x1)
    g = compose(bar(u1), compose(f, bar(v1)))
    return x1.th, coeffs[x1], g
