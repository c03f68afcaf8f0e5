"""Temperley-Lieb diagrams: validation, stacking, tensor, flip, factorization, enumeration.

A diagram with ``m`` sources (bottom) and ``n`` targets (top) is stored as a
perfect matching on point indices ``0..m+n-1``: sources come first, then
targets.  Labels in the public API are ``s1..sm`` and ``t1..tn`` (1-based).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple

from .errors import NotPerfectMatching, NotPlanar, ParityViolation, ParseError


@dataclass(frozen=True)
class Diagram:
    domain: int
    codomain: int
    match: Tuple[int, ...]

    # labels and derived data
    def label(self, i: int) -> str:
        return f"s{i + 1}" if i < self.domain else f"t{i - self.domain + 1}"

    def pairs(self) -> List[Tuple[str, str]]:
        """Pairs as label tuples, each pair listed once in walk order."""
        out = []
        for i, j in self._index_pairs():
            out.append((self.label(i), self.label(j)))
        return out

    def _index_pairs(self) -> List[Tuple[int, int]]:
        return [(i, j) for i, j in enumerate(self.match) if i < j]

    @property
    def th(self) -> int:
        m = self.domain
        return sum(1 for i in range(m) if self.match[i] >= m)

    def caps(self) -> List[Tuple[int, int]]:
        """K(x): source pairs joined by a cap, 1-based ``(r, s)`` with ``r < s``."""
        m = self.domain
        return [(i + 1, j + 1) for i in range(m) for j in (self.match[i],) if i < j < m]

    def cups(self) -> List[Tuple[int, int]]:
        """K-bar(x): target pairs joined by a cup, 1-based."""
        m = self.domain
        return [
            (i - m + 1, j - m + 1)
            for i in range(m, m + self.codomain)
            for j in (self.match[i],)
            if m <= i < j
        ]

    def through(self) -> List[Tuple[int, int]]:
        """Through strands as 1-based ``(source, target)`` pairs, left to right."""
        m = self.domain
        return [(i + 1, self.match[i] - m + 1) for i in range(m) if self.match[i] >= m]

    def is_cap_diagram(self) -> bool:
        return not self.cups() and self.codomain == self.th

    def is_cup_diagram(self) -> bool:
        return not self.caps() and self.domain == self.th

    def is_identity(self) -> bool:
        return self.domain == self.codomain == self.th

    def __str__(self):
        body = ",".join(f"({a},{b})" for a, b in self.pairs())
        return f"D({self.domain}->{self.codomain}:{{{body}}})"

    # JSON
    def to_json(self) -> dict:
        return {
            "domain": self.domain,
            "codomain": self.codomain,
            "pairs": [list(p) for p in self.pairs()],
        }

    @classmethod
    def from_json(cls, obj) -> "Diagram":
        try:
            m = int(obj["domain"])
            n = int(obj["codomain"])
            pairs = [tuple(p) for p in obj["pairs"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed diagram JSON: {obj!r}") from exc
        return make_diagram(m, n, pairs)


def _parse_label(label, m: int, n: int) -> int:
    if isinstance(label, str) and len(label) >= 2 and label[0] in "st":
        try:
            k = int(label[1:])
        except ValueError:
            raise ParseError(f"bad point label {label!r}") from None
        if label[0] == "s" and 1 <= k <= m:
            return k - 1
        if label[0] == "t" and 1 <= k <= n:
            return m + k - 1
        raise NotPerfectMatching(f"label {label!r} out of range for {m}->{n}")
    raise ParseError(f"bad point label {label!r}")


def walk_position(i: int, m: int, n: int) -> int:
    """Position of point ``i`` in the boundary walk s1 < ... < sm < tn < ... < t1."""
    return i if i < m else m + (n - 1 - (i - m))


def _check_planar(m: int, n: int, match: Sequence[int]) -> None:
    arcs = []
    for i, j in enumerate(match):
        if i < j:
            a, b = sorted((walk_position(i, m, n), walk_position(j, m, n)))
            arcs.append((a, b))
    for x in range(len(arcs)):
        a, b = arcs[x]
        for y in range(x + 1, len(arcs)):
            c, d = arcs[y]
            if a < c < b < d or c < a < d < b:
                raise NotPlanar(f"arcs {arcs[x]} and {arcs[y]} interleave")


def make_diagram(m: int, n: int, pairing: Iterable[Tuple]) -> Diagram:
    """Validate a pairing given as label pairs (``"s1"``, ``"t2"``) or 0-based index pairs."""
    if m < 0 or n < 0:
        raise NotPerfectMatching("negative boundary size")
    if (m + n) % 2:
        raise ParityViolation(f"m+n = {m + n} is odd")
    match = [-1] * (m + n)
    for pair in pairing:
        if len(pair) != 2:
            raise NotPerfectMatching(f"pair {pair!r} does not have two ends")
        a, b = (p if isinstance(p, int) else _parse_label(p, m, n) for p in pair)
        if not (0 <= a < m + n and 0 <= b < m + n):
            raise NotPerfectMatching(f"pair {pair!r} out of range")
        if a == b or match[a] != -1 or match[b] != -1:
            raise NotPerfectMatching(f"point used twice in pair {pair!r}")
        match[a], match[b] = b, a
    if -1 in match:
        raise NotPerfectMatching("some point is unmatched")
    _check_planar(m, n, match)
    return Diagram(m, n, tuple(match))


# generators


def identity(n: int) -> Diagram:
    return Diagram(n, n, tuple([n + i for i in range(n)] + list(range(n))))


def cup() -> Diagram:
    return Diagram(0, 2, (1, 0))


def cap() -> Diagram:
    return Diagram(2, 0, (1, 0))


def placed(a: int, kind: str, b: int) -> Diagram:
    """``id_a (x) kind (x) id_b`` for ``kind`` in ``{"cup", "cap"}``."""
    if kind == "cup":
        core = cup()
    elif kind == "cap":
        core = cap()
    else:
        raise ValueError(f"unknown generator kind {kind!r}")
    return tensor(tensor(identity(a), core), identity(b))


def generator(kind: str, *args: int) -> Diagram:
    if kind == "id":
        return identity(*args)
    if kind in ("cup", "cap") and not args:
        return cup() if kind == "cup" else cap()
    if kind in ("cup", "cap"):
        a, b = args
        return placed(a, kind, b)
    raise ValueError(f"unknown generator {kind!r}")


# operations


@lru_cache(maxsize=1 << 18)
def compose_raw(g: Diagram, f: Diagram) -> Tuple[Diagram, int, int]:
    """Stack ``f`` below ``g``; return (diagram, Z, L).

    ``Z`` counts the zig-zags straightened and ``L`` the closed loops removed.
    """
    m, n, p = f.domain, f.codomain, g.codomain
    if g.domain != n:
        raise ValueError(f"cannot compose {g.domain}-> after ->{n}")
    fm, gm = f.match, g.match
    res = [-1] * (m + p)
    seen = [False] * n
    z2 = 0  # twice Z

    def run(side: str, i: int):
        # follow the strand leaving point i on the given side
        c = 0
        while True:
            if side == "f":
                j = fm[i]
                if j < m:
                    return ("s", j), c
                k = j - m
                seen[k] = True
                c += 1
                side, i = "g", k
            else:
                j = gm[i]
                if j >= n:
                    return ("t", j - n), c
                seen[j] = True
                c += 1
                side, i = "f", m + j

    for i in range(m):
        if res[i] != -1:
            continue
        (kind, e), c = run("f", i)
        if kind == "s":
            res[i], res[e] = e, i
            z2 += c - 2 if c > 0 else 0
        else:
            res[i], res[m + e] = m + e, i
            z2 += c - 1
    for i in range(p):
        if res[m + i] != -1:
            continue
        (kind, e), c = run("g", n + i)
        # only target-target paths remain here
        res[m + i], res[m + e] = m + e, m + i
        z2 += c - 2 if c > 0 else 0
    loops = 0
    for k in range(n):
        if seen[k]:
            continue
        loops += 1
        seen[k] = True
        c, cur, side = 1, k, "g"
        while True:
            nxt = gm[cur] if side == "g" else fm[m + cur] - m
            side = "f" if side == "g" else "g"
            if nxt == k:
                break
            seen[nxt] = True
            c += 1
            cur = nxt
        z2 += c - 2
    return Diagram(m, p, tuple(res)), z2 // 2, loops


def tensor(x: Diagram, y: Diagram) -> Diagram:
    """Horizontal juxtaposition with ``x`` on the left."""
    m1, n1, m2, n2 = x.domain, x.codomain, y.domain, y.codomain
    m, n = m1 + m2, n1 + n2

    def rx(i):
        return i if i < m1 else m + (i - m1)

    def ry(i):
        return m1 + i if i < m2 else m + n1 + (i - m2)

    res = [0] * (m + n)
    for i, j in enumerate(x.match):
        res[rx(i)] = rx(j)
    for i, j in enumerate(y.match):
        res[ry(i)] = ry(j)
    return Diagram(m, n, tuple(res))


def flip(x: Diagram) -> Diagram:
    """Vertical reflection (the bar involution on a single diagram)."""
    m, n = x.domain, x.codomain

    def r(i):
        return n + i if i < m else i - m

    res = [0] * (m + n)
    for i, j in enumerate(x.match):
        res[r(i)] = r(j)
    return Diagram(n, m, tuple(res))


def mirror(x: Diagram) -> Diagram:
    """Left-right reflection: source i -> m+1-i, target j -> n+1-j."""
    m, n = x.domain, x.codomain

    def r(i):
        return m - 1 - i if i < m else m + (n - 1 - (i - m))

    res = [0] * (m + n)
    for i, j in enumerate(x.match):
        res[r(i)] = r(j)
    return Diagram(m, n, tuple(res))


def from_parts(m: int, n: int, caps, cups, through) -> Diagram:
    """Build from 1-based cap pairs, cup pairs and (source, target) through pairs."""
    res = [-1] * (m + n)
    for a, b in caps:
        res[a - 1], res[b - 1] = b - 1, a - 1
    for a, b in cups:
        res[m + a - 1], res[m + b - 1] = m + b - 1, m + a - 1
    for s, t in through:
        res[s - 1], res[m + t - 1] = m + t - 1, s - 1
    return Diagram(m, n, tuple(res))


def factorize_cup_cap(x: Diagram) -> Tuple[Diagram, Diagram]:
    """Return ``(u, v)`` with ``u`` a cup diagram, ``v`` a cap diagram and ``x = u o v``."""
    k = x.th
    thr = x.through()
    v = from_parts(x.domain, k, x.caps(), [], [(s, i + 1) for i, (s, _) in enumerate(thr)])
    u = from_parts(k, x.codomain, [], x.cups(), [(i + 1, t) for i, (_, t) in enumerate(thr)])
    return u, v


def generator_word(x: Diagram) -> List[Diagram]:
    """Basic cups/caps whose composite is ``x``; the first entry is applied first.

    Caps are peeled innermost-first from the bottom, cups innermost-first from the
    top.  An identity diagram yields the empty word.
    """
    u, v = factorize_cup_cap(x)
    word: List[Diagram] = []
    # caps of v, innermost first
    strands = list(range(1, x.domain + 1))
    partner = {}
    for a, b in v.caps():
        partner[a], partner[b] = b, a
    while True:
        for pos in range(len(strands) - 1):
            a, b = strands[pos], strands[pos + 1]
            if partner.get(a) == b:
                word.append(placed(pos, "cap", len(strands) - pos - 2))
                del strands[pos : pos + 2]
                break
        else:
            break
    # cups of u, peeled from the top then reversed
    strands = list(range(1, x.codomain + 1))
    partner = {}
    for a, b in u.cups():
        partner[a], partner[b] = b, a
    top: List[Diagram] = []
    while True:
        for pos in range(len(strands) - 1):
            a, b = strands[pos], strands[pos + 1]
            if partner.get(a) == b:
                top.append(placed(pos, "cup", len(strands) - pos - 2))
                del strands[pos : pos + 2]
                break
        else:
            break
    word.extend(reversed(top))
    return word


# enumeration


def _noncrossing(points: Tuple[int, ...]):
    if not points:
        yield []
        return
    first = points[0]
    for k in range(1, len(points), 2):
        inside = points[1:k]
        outside = points[k + 1 :]
        for a in _noncrossing(inside):
            for b in _noncrossing(outside):
                yield [(first, points[k])] + a + b


def _sort_key(x: Diagram):
    return (-x.th, sorted(x._index_pairs()))


@lru_cache(maxsize=None)
def _hom(m: int, n: int) -> Tuple[Diagram, ...]:
    total = m + n
    # walk order position -> point index
    inv = [0] * total
    for i in range(total):
        inv[walk_position(i, m, n)] = i
    out = []
    for matching in _noncrossing(tuple(range(total))):
        res = [0] * total
        for a, b in matching:
            pa, pb = inv[a], inv[b]
            res[pa], res[pb] = pb, pa
        out.append(Diagram(m, n, tuple(res)))
    out.sort(key=_sort_key)
    return tuple(out)


def hom(m: int, n: int) -> List[Diagram]:
    """All diagrams m -> n in the deterministic order."""
    if (m + n) % 2:
        raise ParityViolation(f"m+n = {m + n} is odd")
    return list(_hom(m, n))


@lru_cache(maxsize=None)
def _cap_diagrams(n: int) -> Tuple[Diagram, ...]:
    found = []

    def rec(pos: int, stack: List[int], caps: List[Tuple[int, int]], thr: List[int]):
        if pos > n:
            if not stack:
                found.append((list(caps), list(thr)))
            return
        remaining = n - pos + 1
        if len(stack) > remaining:
            return
        if not stack:
            thr.append(pos)
            rec(pos + 1, stack, caps, thr)
            thr.pop()
        stack.append(pos)
        rec(pos + 1, stack, caps, thr)
        stack.pop()
        if stack:
            a = stack.pop()
            caps.append((a, pos))
            rec(pos + 1, stack, caps, thr)
            caps.pop()
            stack.append(a)

    rec(1, [], [], [])
    out = []
    for caps, thr in found:
        k = len(thr)
        out.append(from_parts(n, k, caps, [], [(s, i + 1) for i, s in enumerate(thr)]))
    out.sort(key=lambda d: (-d.th, sorted(d.caps())))
    return tuple(out)


def cap_diagrams(n: int) -> List[Diagram]:
    """The set D_n of cap diagrams on n strands, th descending then caps lexicographic."""
    return list(_cap_diagrams(n))


def cup_diagrams(k: int, n: int) -> List[Diagram]:
    """Cup diagrams k -> n, ordered as the flips of the cap diagrams n -> k."""
    return [flip(x) for x in _cap_diagrams(n) if x.th == k]


def enumerate_diagrams(mode: str, m: int, n: int | None = None) -> List[Diagram]:
    if mode == "hom":
        return hom(m, n)
    if mode in ("cap", "cap_diagrams"):
        return cap_diagrams(m)
    raise ValueError(f"unknown enumeration mode {mode!r}")
