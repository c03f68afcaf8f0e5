"""Hooking calculus, kappa, the commutor sigma, interval reversals and the cactus action."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence, Tuple

from . import crystal as cr
from . import diagrams as dg
from .diagrams import Diagram
from .errors import BadInterval, HookTooLarge
from .functor import apply_F, permutation_matrix
from .jones_wenzl import jw
from .morphisms import Morphism, bar, compose, tensor


def _require_cap(x: Diagram) -> None:
    if not x.is_cap_diagram():
        raise ValueError(f"{x} is not a cap diagram")


def _cap_diagram(n: int, caps) -> Diagram:
    used = {p for c in caps for p in c}
    free = [i for i in range(1, n + 1) if i not in used]
    return dg.from_parts(n, len(free), caps, [], [(s, i + 1) for i, s in enumerate(free)])


@dataclass(frozen=True)
class HookSplit:
    x: Diagram
    m: int
    left: Diagram
    right: Diagram
    l: int


def split_at(x: Diagram, m: int) -> HookSplit:
    """Restrict a cap diagram to strands 1..m and m+1..N; half-caps become through strands."""
    _require_cap(x)
    total = x.domain
    if not 0 <= m <= total:
        raise ValueError(f"split position {m} outside 0..{total}")
    caps = x.caps()
    left = _cap_diagram(m, [(a, b) for a, b in caps if b <= m])
    right = _cap_diagram(total - m, [(a - m, b - m) for a, b in caps if a > m])
    l = (left.th + right.th - x.th) // 2
    return HookSplit(x, m, left, right, l)


def hook(y: Diagram, y2: Diagram, l: int) -> Diagram:
    """y (.)_l y2: juxtapose, then join rightmost through strands of y to leftmost of y2, l times."""
    _require_cap(y)
    _require_cap(y2)
    if l < 0 or l > min(y.th, y2.th):
        raise HookTooLarge(f"cannot hook {l} times with through counts {y.th} and {y2.th}")
    m = y.domain
    caps = list(y.caps()) + [(a + m, b + m) for a, b in y2.caps()]
    ty = [s for s, _ in y.through()]
    ty2 = [s + m for s, _ in y2.through()]
    for i in range(l):
        caps.append((ty[-1 - i], ty2[i]))
    return _cap_diagram(m + y2.domain, caps)


def kappa(m: int, n: int, x: Diagram) -> Diagram:
    """kappa_{m,n}(x) = x_{>m} (.)_l x_{<=m} with l the hooking number at m."""
    if x.domain != m + n:
        raise ValueError(f"kappa_{{{m},{n}}} needs a diagram on {m + n} strands")
    sp = split_at(x, m)
    return hook(sp.right, sp.left, sp.l)


def theta(x: Diagram) -> Diagram:
    """Left-right mirror of a cap diagram."""
    _require_cap(x)
    return dg.mirror(x)


def _tau_sum(n: int, partner) -> Morphism:
    acc = Morphism.zero(n, n)
    for x in dg.cap_diagrams(n):
        acc = acc + compose(bar(partner(x)), compose(jw(x.th), Morphism.of(x)))
    return acc


@lru_cache(maxsize=None)
def sigma(m: int, n: int) -> Morphism:
    """The commutor m (x) n -> n (x) m: sum over D_{m+n} of kappa(x)-bar o j o x."""
    return _tau_sum(m + n, lambda x: kappa(m, n, x))


def _check_interval(p: int, q: int, n: int) -> None:
    if not (1 <= p < q <= n):
        raise BadInterval(f"need 1 <= p < q <= n, got p={p}, q={q}, n={n}")


@lru_cache(maxsize=None)
def _reversal_core(k: int) -> Morphism:
    return _tau_sum(k, theta)


def interval_reversal(p: int, q: int, n: int) -> Morphism:
    """s_{p,q} in End(n) by the closed formula."""
    _check_interval(p, q, n)
    core = _reversal_core(q - p + 1)
    return tensor(tensor(Morphism.identity(p - 1), core), Morphism.identity(n - q))


def sigma_ppq(p: int, q: int, n: int) -> Morphism:
    """sigma_{p,p,q}: strand p commuted past strands p+1..q."""
    return tensor(tensor(Morphism.identity(p - 1), sigma(1, q - p)), Morphism.identity(n - q))


def interval_reversal_recursive(p: int, q: int, n: int) -> Morphism:
    """s_{p,p+1} = sigma_{p,p,p+1} and s_{p,q} = sigma_{p,p,q} o s_{p+1,q}."""
    _check_interval(p, q, n)
    if q == p + 1:
        return sigma_ppq(p, q, n)
    return compose(sigma_ppq(p, q, n), interval_reversal_recursive(p + 1, q, n))


def reversal_permutation(p: int, q: int, n: int) -> Tuple[int, ...]:
    """The image of 1..n under the permutation attached to s_{p,q}."""
    _check_interval(p, q, n)
    return tuple(p + q - i if p <= i <= q else i for i in range(1, n + 1))


def cactus_apply(word: Sequence[Tuple[int, int]], n: int) -> Tuple[Morphism, Tuple[int, ...]]:
    """Composite of interval reversals, word[0] applied first, with its permutation."""
    acc = Morphism.identity(n)
    perm = tuple(range(1, n + 1))
    for p, q in word:
        acc = compose(interval_reversal(p, q, n), acc)
        step = reversal_permutation(p, q, n)
        perm = tuple(step[perm[i] - 1] for i in range(n))
    return acc, perm


def verify_coboundary_equivalence(m: int, n: int) -> bool:
    """F(sigma_{m,n}) equals the permutation matrix of the HK commutor on B^(m+n)."""
    lhs = apply_F(sigma(m, n))
    rhs = permutation_matrix(cr.hk_permutation(m, n), m + n)
    return lhs == rhs


def kappa_chain(n: int, x: Diagram) -> Diagram:
    """Compose the suffix maps y -> y_{<=i-1} (.) kappa_{1,n-i}(y_{>i-1}) for i = n-1 down to 1.

    On cap diagrams this agrees with theta.
    """
    _require_cap(x)
    for i in range(n - 1, 0, -1):
        sp = split_at(x, i - 1)
        r = sp.right
        x = hook(sp.left, kappa(1, r.domain - 1, r), sp.l)
    return x


def expand_diagram_basis(f: Morphism) -> List[Tuple[Diagram, object]]:
    return f.sorted_items()
