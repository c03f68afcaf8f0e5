"""The functor F from TL at q = 0 to sl2 crystals, as exact matrices.

Diagrams are evaluated through their cup/cap factorization: a cap diagram
contracts pairs of tensor factors with the form ``M`` and keeps its through
strands; a cup diagram inserts the tensor ``T`` at every cup.  F is the case
``dim = 2``, ``M = T = e0 (x) e1``; the fiber module reuses the same engine.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, List, Sequence, Tuple

from . import crystal as cr
from . import diagrams as dg
from .diagrams import Diagram
from .errors import ContextError
from .jones_wenzl import jw
from .linalg import QMatrix
from .morphisms import Morphism, bar, compose
from .scalars import BarAt

Pairs = Tuple[Tuple[int, int, Fraction], ...]


def _nonzero(mat: QMatrix) -> Pairs:
    return tuple(mat.entries())


def _index(digits: Sequence[int], dim: int) -> int:
    v = 0
    for d in digits:
        v = v * dim + d
    return v


def eval_cap_diagram(v: Diagram, dim: int, form: Pairs) -> QMatrix:
    """Matrix dim^k x dim^m of a cap diagram m -> k."""
    m, k = v.domain, v.codomain
    caps = [(a - 1, b - 1) for a, b in v.caps()]
    thr = [s - 1 for s, _ in v.through()]
    entries = []
    for through_digits in product(range(dim), repeat=k):
        col = [0] * m
        for pos, d in zip(thr, through_digits):
            col[pos] = d
        out = _index(through_digits, dim)
        for choice in product(form, repeat=len(caps)):
            coeff = Fraction(1)
            for (a, b), (i, j, val) in zip(caps, choice):
                col[a], col[b] = i, j
                coeff *= val
            entries.append((out, _index(col, dim), coeff))
    return QMatrix.from_entries(dim**k, dim**m, entries)


def eval_cup_diagram(u: Diagram, dim: int, tensor: Pairs) -> QMatrix:
    """Matrix dim^n x dim^k of a cup diagram k -> n."""
    k, n = u.domain, u.codomain
    cups = [(a - 1, b - 1) for a, b in u.cups()]
    thr = [t - 1 for _, t in u.through()]
    entries = []
    for through_digits in product(range(dim), repeat=k):
        row = [0] * n
        for pos, d in zip(thr, through_digits):
            row[pos] = d
        inp = _index(through_digits, dim)
        for choice in product(tensor, repeat=len(cups)):
            coeff = Fraction(1)
            for (a, b), (i, j, val) in zip(cups, choice):
                row[a], row[b] = i, j
                coeff *= val
            entries.append((_index(row, dim), inp, coeff))
    return QMatrix.from_entries(dim**n, dim**k, entries)


def eval_diagram(x: Diagram, dim: int, form: Pairs, tensor: Pairs) -> QMatrix:
    u, v = dg.factorize_cup_cap(x)
    return eval_cup_diagram(u, dim, tensor) @ eval_cap_diagram(v, dim, form)


def eval_morphism(f: Morphism, dim: int, form: Pairs, tensor: Pairs, cache=None) -> QMatrix:
    acc = QMatrix.zeros(dim**f.codomain, dim**f.domain)
    for d, c in f.sorted_items():
        mat = cache(d) if cache is not None else eval_diagram(d, dim, form, tensor)
        acc = acc + mat.scale(c)
    return acc


# F itself

F_FORM = ((0, 1, Fraction(1)),)
F_TENSOR = ((0, 1, Fraction(1)),)


def generator_matrices() -> Tuple[QMatrix, QMatrix]:
    """(alpha, beta): alpha sends the empty word to 01, beta sends 01 to the empty word."""
    alpha = QMatrix.from_entries(4, 1, [(cr.bits_index((0, 1)), 0, 1)])
    beta = QMatrix.from_entries(1, 4, [(0, cr.bits_index((0, 1)), 1)])
    return alpha, beta


@lru_cache(maxsize=None)
def F_diagram(x: Diagram) -> QMatrix:
    return eval_diagram(x, 2, F_FORM, F_TENSOR)


def apply_F(f) -> QMatrix:
    """F on a diagram or on a morphism of the q = 0 category."""
    if isinstance(f, Diagram):
        return F_diagram(f)
    if f.context != BarAt(0):
        raise ContextError(f"F is defined on the q=0 category only, got context {f.context}")
    return eval_morphism(f, 2, F_FORM, F_TENSOR, cache=F_diagram)


def F_labels(n: int) -> List[str]:
    return [cr.bits_str(b) if n else "" for b in cr.all_bits(n)]


def F_json(f) -> dict:
    mat = apply_F(f)
    m = f.domain
    n = f.codomain
    return mat.to_json(F_labels(n), F_labels(m))


# branching bijection


def phi_branching(x: Diagram) -> cr.Bits:
    """Highest-weight element of the component attached to a cap diagram."""
    if not x.is_cap_diagram():
        raise ValueError(f"{x} is not a cap diagram")
    h = [0] * x.domain
    for _, s in x.caps():
        h[s - 1] = 1
    return tuple(h)


def restriction_th(x: Diagram, j: int) -> int:
    """th of the restriction of a cap diagram to its first j strands."""
    partner = {}
    for a, b in x.caps():
        partner[a], partner[b] = b, a
    return sum(1 for i in range(1, j + 1) if partner.get(i, j + 1) > j)


def sign_sequence(x: Diagram) -> str:
    """The +/- path of x in the branching graph: a step is - iff it closes a hook."""
    if not x.is_cap_diagram():
        raise ValueError(f"{x} is not a cap diagram")
    out = []
    for j in range(1, x.domain + 1):
        drop = restriction_th(x, j) == restriction_th(x, j - 1) - 1
        out.append("-" if drop else "+")
    return "".join(out)


def component_for(x: Diagram) -> cr.Component:
    return cr.component_of(phi_branching(x))


def verify_projection(x: Diagram, detail: bool = False):
    """Check that F(j_k o x) projects onto Phi(x) and F(x-bar o j_k) embeds B_k onto it."""
    k, n = x.th, x.domain
    target = component_for(x)
    top = cr.components(k, bound=max(k, cr.DEFAULT_BOUND))[0]
    proj = apply_F(compose(jw(k), Morphism.of(x))).T
    emb = apply_F(compose(bar(x), jw(k))).T
    problems = []
    for comp in cr.components(n, bound=max(n, cr.DEFAULT_BOUND)):
        for i, c in enumerate(comp.chain):
            col = proj.row(cr.bits_index(c))
            if comp == target:
                want = {cr.bits_index(top.chain[i]): Fraction(1)}
                if col != want:
                    problems.append(f"projection sends {cr.bits_str(c)} to {col}")
            elif col:
                problems.append(f"projection does not kill {cr.bits_str(c)}")
    for comp in cr.components(k, bound=max(k, cr.DEFAULT_BOUND)):
        for i, c in enumerate(comp.chain):
            col = emb.row(cr.bits_index(c))
            if comp == top:
                want = {cr.bits_index(target.chain[i]): Fraction(1)}
                if col != want:
                    problems.append(f"embedding sends {cr.bits_str(c)} to {col}")
            elif col:
                problems.append(f"embedding does not kill {cr.bits_str(c)}")
    ok = not problems
    return (ok, problems) if detail else ok


def permutation_matrix(perm: Dict[cr.Bits, cr.Bits], n: int) -> QMatrix:
    return QMatrix.from_entries(2**n, 2**n, [(cr.bits_index(v), cr.bits_index(k), 1)
                                              for k, v in perm.items()])
