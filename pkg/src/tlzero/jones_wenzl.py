"""Jones-Wenzl projectors at q = 0: closed form as a signed sum over apt subsets."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import FrozenSet, List

from . import diagrams as dg
from .errors import NotApt
from .morphisms import Morphism, compose, tensor
from .scalars import Q0


@dataclass(frozen=True)
class AptSubset:
    n: int
    members: FrozenSet[int]

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        if not is_apt(self.members, self.n):
            raise NotApt(f"{sorted(self.members)} is not apt for n={self.n}")

    def sorted(self) -> List[int]:
        return sorted(self.members)

    def __str__(self):
        return "{" + ",".join(map(str, self.sorted())) + "}"


def is_apt(members, n: int) -> bool:
    s = set(members)
    if any(i < 1 or i >= n for i in s):
        return False
    return all(i + 1 not in s for i in s)


def apt_subsets(n: int) -> List[AptSubset]:
    """All apt subsets of {1..n}, by size then lexicographically."""
    out = []
    for size in range(n // 2 + 1):
        for combo in combinations(range(1, n), size):
            if all(b - a > 1 for a, b in zip(combo, combo[1:])):
                out.append(AptSubset(n, frozenset(combo)))
    return out


def c_diagram(I, n: int | None = None) -> Morphism:
    """The diagram with a cap and a cup at (i, i+1) for every i in I, coefficient 1."""
    if isinstance(I, AptSubset):
        n, members = I.n, I.members
    else:
        members = frozenset(I)
        if n is None or not is_apt(members, n):
            raise NotApt(f"{sorted(members)} is not apt for n={n}")
    pairs = [(i, i + 1) for i in sorted(members)]
    used = {p for pr in pairs for p in pr}
    free = [i for i in range(1, n + 1) if i not in used]
    d = dg.from_parts(n, n, pairs, pairs, [(i, i) for i in free])
    return Morphism.of(d, Q0)


@lru_cache(maxsize=None)
def jw(n: int) -> Morphism:
    """The n-th projector: sum over apt I of (-1)^|I| c_{I,n}."""
    terms = {}
    for I in apt_subsets(n):
        (d,) = c_diagram(I).terms
        terms[d] = (-1) ** len(I.members)
    return Morphism(n, n, terms, Q0)


@lru_cache(maxsize=None)
def jw_recursive(n: int) -> Morphism:
    """Projector built by the recursion j_{n+1} = j' - j' o c_{{n}} o j' with j' = j_n (x) id."""
    if n <= 1:
        return Morphism.identity(n, Q0)
    prev = tensor(jw_recursive(n - 1), Morphism.identity(1, Q0))
    cc = c_diagram([n - 1], n)
    return prev - compose(prev, compose(cc, prev))


def nested_caps(l: int) -> dg.Diagram:
    """l nested caps 2l -> 0, joined innermost first."""
    d = dg.identity(0)
    for k in range(1, l + 1):
        # the new innermost cap sits in the middle of 2k strands
        d = dg.compose_raw(d, dg.placed(k - 1, "cap", k - 1))[0]
    return d


def nested_cups(l: int) -> dg.Diagram:
    """l nested cups 0 -> 2l."""
    return dg.flip(nested_caps(l))
