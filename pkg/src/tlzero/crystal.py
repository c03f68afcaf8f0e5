"""sl2 crystals: B = {b0, b1}, its tensor powers as bit tuples, components, xi and the HK commutor.

Tensor powers are left-associated, B^(n) = B^(n-1) (x) B, and the tensor rule
sends e to the left factor iff phi(a) >= eps(b), f to the left factor iff
phi(a) > eps(b).  The zero of a crystal is ``None``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import BoundExceeded

Bits = Tuple[int, ...]

DEFAULT_BOUND = 14


def to_bits(x) -> Bits:
    if isinstance(x, str):
        if any(ch not in "01" for ch in x):
            raise ValueError(f"bitstring {x!r} must use 0 and 1")
        return tuple(int(ch) for ch in x)
    return tuple(int(b) for b in x)


def bits_str(x: Optional[Sequence[int]]) -> str:
    if x is None:
        return "0"
    return "".join(str(b) for b in x) or "()"


def _combine(ea: int, pa: int, eb: int, pb: int) -> Tuple[int, int]:
    return ea + max(0, eb - pa), pb + max(0, pa - eb)


def _prefix_profile(x: Bits) -> List[Tuple[int, int]]:
    """(eps, phi) of every nonempty prefix of x."""
    out = []
    e = p = 0
    for i, b in enumerate(x):
        eb, pb = b, 1 - b
        if i == 0:
            e, p = eb, pb
        else:
            e, p = _combine(e, p, eb, pb)
        out.append((e, p))
    return out


def epsilon(x) -> int:
    x = to_bits(x)
    return _prefix_profile(x)[-1][0] if x else 0


def phi(x) -> int:
    x = to_bits(x)
    return _prefix_profile(x)[-1][1] if x else 0


def weight(x) -> int:
    x = to_bits(x)
    return sum(1 if b == 0 else -1 for b in x)


def kashiwara(op: str, x) -> Optional[Bits]:
    """Apply e or f to a basis element of B^(n); ``None`` means 0."""
    x = to_bits(x)
    if not x:
        return None
    prof = _prefix_profile(x)
    pos = len(x) - 1
    while pos > 0:
        phi_a = prof[pos - 1][1]
        eps_b = x[pos]
        if (op == "f" and phi_a > eps_b) or (op == "e" and phi_a >= eps_b):
            pos -= 1
        else:
            break
    b = x[pos]
    if op == "f":
        if b == 1:
            return None
        return x[:pos] + (1,) + x[pos + 1 :]
    if op == "e":
        if b == 0:
            return None
        return x[:pos] + (0,) + x[pos + 1 :]
    raise ValueError(f"operator must be 'e' or 'f', not {op!r}")


def e_op(x) -> Optional[Bits]:
    return kashiwara("e", x)


def f_op(x) -> Optional[Bits]:
    return kashiwara("f", x)


# components


@dataclass(frozen=True)
class Component:
    n: int
    chain: Tuple[Bits, ...]

    @property
    def highest_weight(self) -> int:
        return len(self.chain) - 1

    @property
    def top(self) -> Bits:
        return self.chain[0]

    def __contains__(self, x) -> bool:
        return to_bits(x) in self.chain

    def __str__(self):
        return f"B_{self.highest_weight}[" + ",".join(bits_str(c) for c in self.chain) + "]"


def all_bits(n: int) -> List[Bits]:
    """All of B^(n) in lexicographic order (also the row order of crystal matrices)."""
    return [tuple((i >> (n - 1 - j)) & 1 for j in range(n)) for i in range(2**n)]


def bits_index(x: Bits) -> int:
    v = 0
    for b in x:
        v = 2 * v + b
    return v


def check_bound(n: int, bound: int | None, what: str = "n") -> None:
    limit = DEFAULT_BOUND if bound is None else bound
    if n > limit:
        raise BoundExceeded(f"{what} = {n} exceeds the configured bound {limit}")


@lru_cache(maxsize=None)
def _components(n: int) -> Tuple[Component, ...]:
    comps = []
    for x in all_bits(n):
        if kashiwara("e", x) is None:
            chain = [x]
            y = kashiwara("f", x)
            while y is not None:
                chain.append(y)
                y = kashiwara("f", y)
            comps.append(Component(n, tuple(chain)))
    comps.sort(key=lambda c: (-c.highest_weight, c.top))
    return tuple(comps)


def components(n: int, bound: int | None = None) -> List[Component]:
    """Connected components of B^(n), highest weight descending then top element."""
    check_bound(n, bound)
    return list(_components(n))


@lru_cache(maxsize=None)
def _locator(n: int) -> Dict[Bits, Tuple[int, int]]:
    out = {}
    for ci, comp in enumerate(_components(n)):
        for k, x in enumerate(comp.chain):
            out[x] = (ci, k)
    return out


def locate(x) -> Tuple[Component, int]:
    """The component containing x and the position of x in its chain."""
    x = to_bits(x)
    ci, k = _locator(len(x))[x]
    return _components(len(x))[ci], k


def component_of(x) -> Component:
    return locate(x)[0]


def multiplicities(n: int, bound: int | None = None) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for c in components(n, bound):
        out[c.highest_weight] = out.get(c.highest_weight, 0) + 1
    return out


def xi(x, n: int | None = None) -> Bits:
    """Reverse x within its component: c_k -> c_{lambda-k}."""
    x = to_bits(x)
    if n is not None and n != len(x):
        raise ValueError(f"element {bits_str(x)} does not lie in B^({n})")
    comp, k = locate(x)
    return comp.chain[comp.highest_weight - k]


def hk_commutor(m: int, n: int, x) -> Bits:
    """(a, b) -> xi(xi(b) (x) xi(a)) for x = a (x) b with |a| = m, |b| = n."""
    x = to_bits(x)
    if len(x) != m + n:
        raise ValueError(f"element {bits_str(x)} does not have length {m}+{n}")
    a, b = x[:m], x[m:]
    xa = xi(a) if a else a
    xb = xi(b) if b else b
    swapped = xb + xa
    return xi(swapped) if swapped else swapped


def hk_permutation(m: int, n: int) -> Dict[Bits, Bits]:
    return {x: hk_commutor(m, n, x) for x in all_bits(m + n)}


# tensor products of path crystals


def _path_tensor_op(op: str, lam: int, mu: int, i: int, j: int):
    # b_i in B_lam, b_j in B_mu; eps(b_k) = k, phi(b_k) = lam - k
    phi_a, eps_b = lam - i, j
    left = phi_a > eps_b if op == "f" else phi_a >= eps_b
    if op == "f":
        if left:
            return (i + 1, j) if i < lam else None
        return (i, j + 1) if j < mu else None
    if left:
        return (i - 1, j) if i > 0 else None
    return (i, j - 1) if j > 0 else None


def tensor_decompose(lam: int, mu: int) -> List[int]:
    """Highest weights of the components of B_lam (x) B_mu, descending."""
    out = []
    for i in range(lam + 1):
        for j in range(mu + 1):
            if _path_tensor_op("e", lam, mu, i, j) is None:
                out.append(lam + mu - 2 * (i + j))
    return sorted(out, reverse=True)


def path_tensor_components(lam: int, mu: int) -> List[List[Tuple[int, int]]]:
    comps = []
    for i in range(lam + 1):
        for j in range(mu + 1):
            if _path_tensor_op("e", lam, mu, i, j) is None:
                chain = [(i, j)]
                y = _path_tensor_op("f", lam, mu, i, j)
                while y is not None:
                    chain.append(y)
                    y = _path_tensor_op("f", lam, mu, *y)
                comps.append(chain)
    comps.sort(key=lambda c: (-len(c), c[0]))
    return comps


def crystal_edges(n: int, bound: int | None = None) -> List[str]:
    """Crystal graph of B^(n) as lines ``h -f-> h'``."""
    check_bound(n, bound)
    lines = []
    for x in all_bits(n):
        y = kashiwara("f", x)
        if y is not None:
            lines.append(f"{bits_str(x)} -f-> {bits_str(y)}")
    return lines


def hk_interval_reversal(p: int, q: int, x) -> Bits:
    """Crystal-side s_{p,q} on B^(n): xi of the reversed, letter-wise xi of the factors p..q."""
    x = to_bits(x)
    if not 1 <= p < q <= len(x):
        raise ValueError(f"need 1 <= p < q <= {len(x)}, got p={p}, q={q}")
    sub = tuple(1 - b for b in reversed(x[p - 1 : q]))
    return x[: p - 1] + xi(sub) + x[q:]


def hk_cactus_permutation(word, n: int) -> Dict[Bits, Bits]:
    """Composite of crystal interval reversals, word[0] applied first."""
    out = {}
    for x in all_bits(n):
        y = x
        for p, q in word:
            y = hk_interval_reversal(p, q, y)
        out[x] = y
    return out
