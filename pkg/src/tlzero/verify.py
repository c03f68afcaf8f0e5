"""Invariant suites behind ``tl verify``.  Each suite returns a list of named checks."""

from __future__ import annotations

import os
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb
from typing import Dict, List

from . import commutor as cm
from . import crystal as cr
from . import diagrams as dg
from . import fiber as fb
from . import functor as fn
from . import semisimple as ss
from .jones_wenzl import apt_subsets, jw, jw_recursive
from .linalg import QMatrix, rank_of_rows
from .morphisms import Morphism, compose, renormalize, tensor
from .scalars import GENERIC, Q, BarAt, TildeAt


def catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class SuiteResult:
    suite: str
    bound: int
    checks: List[Check] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(ok), detail))

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "bound": self.bound,
            "ok": self.ok,
            "seconds": round(self.seconds, 3),
            "checks": [{"name": c.name, "ok": c.ok, **({"detail": c.detail} if c.detail else {})}
                       for c in self.checks],
        }


# individual checks, shared with the test-suite


def catalan_dimensions(max_total: int) -> Dict[tuple, tuple]:
    """(m, n) -> (|hom(m, n)|, Catalan) for all m + n <= max_total even."""
    out = {}
    for total in range(0, max_total + 1, 2):
        for m in range(total + 1):
            out[(m, total - m)] = (len(dg.hom(m, total - m)), catalan(total // 2))
    return out


def jw_idempotent(n: int) -> bool:
    return compose(jw(n), jw(n)) == jw(n)


def jw_annihilated(n: int) -> bool:
    for i in range(1, n):
        cap = Morphism.of(dg.placed(i - 1, "cap", n - i - 1))
        cup = Morphism.of(dg.placed(i - 1, "cup", n - i - 1))
        if not compose(cap, jw(n)).is_zero() or not compose(jw(n), cup).is_zero():
            return False
    return True


def jw_unitriangular(n: int) -> bool:
    rest = jw(n) - Morphism.identity(n)
    return all(d.th < n for d, _ in rest.items())


def hat_structure_constants(m: int) -> bool:
    """hat(E_cd) o hat(E_ab) = delta_da hat(E_cb), by direct expansion."""
    labels = [ss.label_of(x) for x in dg.hom(m, m)]
    for left in labels:
        for right in labels:
            lhs = compose(ss.hat(ss.diagram_of(left, m)), ss.hat(ss.diagram_of(right, m)))
            prod = ss.matrix_unit_product(left, right)
            rhs = Morphism.zero(m, m) if prod is None else ss.hat(ss.diagram_of(prod, m))
            if lhs != rhs:
                return False
    return True


def idempotent_resolution(n: int) -> bool:
    parts = [ss.hat(dg.compose_raw(dg.flip(x), x)[0]) for x in dg.cap_diagrams(n)]
    total = Morphism.zero(n, n)
    for p in parts:
        total = total + p
    if total != Morphism.identity(n):
        return False
    for i, a in enumerate(parts):
        for j, b in enumerate(parts):
            want = a if i == j else Morphism.zero(n, n)
            if compose(a, b) != want:
                return False
    return True


def unique_inverses(n: int) -> bool:
    elems = ss.monoid_elements(n)
    mul = ss.monoid_product
    for x in elems:
        inv = [y for y in elems if mul(mul(x, y), x) == x and mul(mul(y, x), y) == y]
        if inv != [ss.monoid_inverse(x)]:
            return False
    return True


def mobius_equals_hat(n: int) -> bool:
    return all(ss.mobius_bracket(x) == ss.hat(x) for x in dg.hom(n, n))


def symmetry(total: int) -> bool:
    return all(compose(cm.sigma(n, total - n), cm.sigma(total - n, n)) == Morphism.identity(total)
               for n in range(total + 1))


def cactus_axiom(r: int, s: int, t: int) -> bool:
    ident = Morphism.identity
    lhs = compose(cm.sigma(s + r, t), tensor(cm.sigma(r, s), ident(t)))
    rhs = compose(cm.sigma(r, t + s), tensor(ident(r), cm.sigma(s, t)))
    return lhs == rhs


def intervals(n: int):
    return [(p, q) for p in range(1, n + 1) for q in range(p + 1, n + 1)]


def cactus_relations(n: int) -> Dict[str, bool]:
    s = {pq: cm.interval_reversal(*pq, n) for pq in intervals(n)}
    ident = Morphism.identity(n)
    ok = {"involution": True, "disjoint": True, "nested": True}
    for pq, spq in s.items():
        ok["involution"] &= compose(spq, spq) == ident
        p, q = pq
        for (k, l), skl in s.items():
            if q < k or l < p:
                ok["disjoint"] &= compose(spq, skl) == compose(skl, spq)
            if p <= k and l <= q:
                other = s[(p + q - l, p + q - k)]
                ok["nested"] &= compose(spq, skl) == compose(other, spq)
    return ok


def crystal_multiplicities_match(n: int) -> bool:
    mult = cr.multiplicities(n, bound=max(n, cr.DEFAULT_BOUND))
    return all(mult.get(k, 0) == r for k, r in ss.end_block_decomposition(n))


def faithful_rank(m: int, n: int) -> int:
    vectors = []
    for d in dg.hom(m, n):
        mat = fn.apply_F(d)
        vectors.append({i * mat.cols + j: v for i, j, v in mat.entries()})
    return rank_of_rows(vectors)


def random_diagram(rng: random.Random, m: int, n: int) -> dg.Diagram:
    return rng.choice(dg.hom(m, n))


def random_morphism(rng: random.Random, m: int, n: int, terms: int = 3) -> Morphism:
    acc = Morphism.zero(m, n)
    for _ in range(rng.randint(1, terms)):
        acc = acc + Morphism.of(random_diagram(rng, m, n)).scale(Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3)))
    return acc


def random_sizes(rng: random.Random, count: int, limit: int, parity_from: int | None = None) -> List[int]:
    out = []
    for i in range(count):
        if i == 0 and parity_from is None:
            out.append(rng.randint(0, limit))
            continue
        base = out[-1] if out else parity_from
        choices = [k for k in range(limit + 1) if (k - base) % 2 == 0]
        out.append(rng.choice(choices))
    return out


def fiber_functoriality(T: fb.FiberTriple, pairs: int, limit: int, seed: int = 0) -> bool:
    rng = random.Random(seed)
    U = lambda f: fb.evaluate_fiber(T, f)  # noqa: E731
    for _ in range(pairs):
        a, b, c = random_sizes(rng, 3, limit)
        f = random_morphism(rng, a, b)
        g = random_morphism(rng, b, c)
        if U(compose(g, f)) != U(g) @ U(f):
            return False
        # tensor: keep the total strand count within the limit
        a1, b1 = random_sizes(rng, 2, limit // 2)
        a2, b2 = random_sizes(rng, 2, limit - limit // 2)
        f1, f2 = random_morphism(rng, a1, b1), random_morphism(rng, a2, b2)
        if U(tensor(f1, f2)) != U(f1).kron(U(f2)):
            return False
    return True


def j2_triple() -> fb.FiberTriple:
    return fb.validate_triple(fb.jordan_block(2), fb.jordan_block(2))


def inflated_triple() -> fb.FiberTriple:
    zero = QMatrix.zeros(2, 2)
    return fb.inflate(zero, zero, j2_triple())


def random_radical_triple(rng: random.Random, m: int) -> fb.FiberTriple:
    A = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(m)] for _ in range(m)]
    A[m - 1][m - 1] += 1 - sum(A[i][i] for i in range(m))
    t = QMatrix.from_entries(2 * m, 2 * m, [(2 * i, 2 * j + 1, A[i][j])
                                            for i in range(m) for j in range(m)])
    return fb.validate_triple(fb.j2_power(m), t)


def random_invertible(rng: random.Random, m: int) -> QMatrix:
    while True:
        g = QMatrix.from_dense([[Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(m)]
                                for _ in range(m)])
        if g.rank() == m:
            return g


def orbit_samples(samples: int, max_m: int, seed: int = 0) -> bool:
    rng = random.Random(seed)
    for i in range(samples):
        m = 1 + i % max_m
        T = random_radical_triple(rng, m)
        phi = fb.radical_action(random_invertible(rng, m))
        T2 = fb.validate_triple(T.b, phi @ T.t @ phi.T)
        inv = fb.orbit_invariant(T)
        if not fb.triple_morphism_check(phi, T, T2):
            return False
        if fb.orbit_invariant(T2) != inv or inv[0] != -1:
            return False
        if fb.radical_matrix(T).trace() != 1:
            return False
    return True


# suites


def suite_basis(N: int, r: SuiteResult) -> None:
    dims = catalan_dimensions(N)
    r.add(f"|hom(m,n)| = Catalan for m+n <= {N}", all(a == b for a, b in dims.values()))
    caps_ok = all(len(dg.cap_diagrams(n)) == comb(n, n // 2) for n in range(min(N, 10) + 1))
    r.add("|D_n| = binomial(n, n/2)", caps_ok)
    ctx0 = BarAt(0)
    zig = compose(tensor(Morphism.identity(1, ctx0), Morphism.of(dg.cap(), ctx0)),
                  tensor(Morphism.of(dg.cup(), ctx0), Morphism.identity(1, ctx0)))
    gzig = compose(tensor(Morphism.identity(1, GENERIC), Morphism.of(dg.cap(), GENERIC)),
                   tensor(Morphism.of(dg.cup(), GENERIC), Morphism.identity(1, GENERIC)))
    r.add("zig-zag is 0 at q=0 and q*id generically",
          zig.is_zero() and gzig == Morphism.identity(1, GENERIC).scale(Q))
    rn = True
    for total in range(0, min(N, 8) + 1, 2):
        for m in range(total + 1):
            for a in (1, 2, -3):
                for d in dg.hom(m, total - m):
                    f = Morphism.of(d, TildeAt(Fraction(a)))
                    g = Morphism.of(d, BarAt(Fraction(a)))
                    rn &= renormalize(renormalize(f, a, "N"), a, "D") == f
                    rn &= renormalize(renormalize(g, a, "D"), a, "N") == g
    r.add("D_a o N_a = id and N_a o D_a = id for a in {1, 2, -3}", rn)


def suite_jw(N: int, r: SuiteResult) -> None:
    r.add("apt subset counts are Fibonacci",
          all(len(apt_subsets(n)) == _fib(n + 1) for n in range(N + 1)))
    r.add(f"jw(n) idempotent, n <= {N}", all(jw_idempotent(n) for n in range(N + 1)))
    r.add(f"jw(n) annihilated by basic caps and cups, n <= {N}",
          all(jw_annihilated(n) for n in range(N + 1)))
    r.add("jw(n) = id + lower through-count terms", all(jw_unitriangular(n) for n in range(N + 1)))
    r.add("jw = jw_recursive", all(jw(n) == jw_recursive(n) for n in range(N + 1)))


def _fib(k: int) -> int:
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def suite_semisimple(N: int, r: SuiteResult) -> None:
    r.add("End(4) blocks are [(4,1),(2,3),(0,2)]",
          ss.end_block_decomposition(4) == [(4, 1), (2, 3), (0, 2)])
    r.add(f"sum r_k^2 = C_m for m <= {N}",
          all(sum(rk * rk for _, rk in ss.end_block_decomposition(m)) == catalan(m)
              for m in range(N + 1)))
    r.add(f"hat structure constants match matrix units, m <= {min(N, 5)}",
          all(hat_structure_constants(m) for m in range(min(N, 5) + 1)))
    r.add(f"hat(xbar o x) resolve the identity orthogonally, n <= {min(N, 7)}",
          all(idempotent_resolution(n) for n in range(min(N, 7) + 1)))
    r.add(f"T_n is inverse with inverse bar, n <= {min(N, 4)}",
          all(unique_inverses(n) for n in range(min(N, 4) + 1)))


def suite_mobius(N: int, r: SuiteResult) -> None:
    for n in range(N + 1):
        r.add(f"[x] = hat(x) on T_{n}", mobius_equals_hat(n))


def suite_commutor(N: int, r: SuiteResult) -> None:
    r.add("unit axiom sigma(0,n) = id",
          all(cm.sigma(0, n) == Morphism.identity(n) == cm.sigma(n, 0) for n in range(N + 1)))
    r.add(f"symmetry for m+n <= {N}", all(symmetry(t) for t in range(N + 1)))
    cb = min(N, 6)
    r.add(f"cactus axiom for r+s+t <= {cb}",
          all(cactus_axiom(a, b, c) for a, b, c in product(range(cb + 1), repeat=3)
              if a + b + c <= cb))
    rel_ok = {"involution": True, "disjoint": True, "nested": True}
    for n in range(2, min(N, 5) + 1):
        for k, v in cactus_relations(n).items():
            rel_ok[k] &= v
    for k, v in rel_ok.items():
        r.add(f"cactus relation ({k}) for n <= {min(N, 5)}", v)
    r.add("closed-form interval reversal = recursive",
          all(cm.interval_reversal(p, q, n) == cm.interval_reversal_recursive(p, q, n)
              for n in range(2, min(N, 5) + 1) for p, q in intervals(n)))
    r.add(f"kappa chain = theta on D_n, n <= {N}",
          all(cm.kappa_chain(n, x) == cm.theta(x) for n in range(1, N + 1) for x in dg.cap_diagrams(n)))


def suite_coboundary(N: int, r: SuiteResult) -> None:
    r.add(f"F(sigma(m,n)) = HK commutor for m+n <= {N}",
          all(cm.verify_coboundary_equivalence(m, t - m) for t in range(N + 1) for m in range(t + 1)))
    r.add(f"component multiplicities match r_k, n <= {N}",
          all(crystal_multiplicities_match(n) for n in range(N + 1)))
    r.add(f"F(s_pq) = crystal interval reversal, n <= {N}",
          all(fn.apply_F(cm.interval_reversal(p, q, n))
              == fn.permutation_matrix(cr.hk_cactus_permutation([(p, q)], n), n)
              for n in range(2, N + 1) for p, q in intervals(n)))
    r.add("tensor_decompose(2,3) = [5,3,1]", cr.tensor_decompose(2, 3) == [5, 3, 1])
    r.add(f"projection/embedding for D_n, n <= {N}",
          all(fn.verify_projection(x) for n in range(N + 1) for x in dg.cap_diagrams(n)))
    fb_ok = all(faithful_rank(m, t - m) == catalan(t // 2)
                for t in range(0, min(N, 8) + 1, 2) for m in range(t + 1))
    r.add(f"rank of F on hom(m,n) = Catalan, m+n <= {min(N, 8)}", fb_ok)


def suite_fiber(N: int, r: SuiteResult) -> None:
    T = j2_triple()
    r.add("J2 triple validates with b(t) = 1", T.b.contract(T.t) == 1)
    inf = inflated_triple()
    limit = min(N, 6)
    r.add(f"U functorial on 200 random pairs (J2), sizes <= {limit}",
          fiber_functoriality(T, 200, limit, seed=1))
    r.add(f"U functorial on 200 random pairs (inflated), sizes <= {min(limit, 4)}",
          fiber_functoriality(inf, 200, min(limit, 4), seed=2))
    pi = fb.projection(2, 2)
    r.add("inflation projection is a non-invertible triple morphism",
          fb.triple_morphism_check(pi, inf, T) and len(pi.nullspace()) == 2)
    r.add("orbit invariant constant on 50 GL samples, m <= 3", orbit_samples(50, 3, seed=3))


SUITES: Dict[str, tuple] = {
    "basis": (suite_basis, 12),
    "jw": (suite_jw, 8),
    "semisimple": (suite_semisimple, 8),
    "mobius": (suite_mobius, 6),
    "commutor": (suite_commutor, 7),
    "coboundary": (suite_coboundary, 6),
    "fiber": (suite_fiber, 6),
}


def default_bound(name: str) -> int:
    env = os.environ.get("TL_MAX_N")
    return int(env) if env else SUITES[name][1]


def run_suite(name: str, bound: int | None = None) -> SuiteResult:
    fn_, _ = SUITES[name]
    N = default_bound(name) if bound is None else bound
    res = SuiteResult(name, N)
    start = time.perf_counter()
    fn_(N, res)
    res.seconds = time.perf_counter() - start
    return res


def run(name: str, bound: int | None = None) -> List[SuiteResult]:
    names = list(SUITES) if name == "all" else [name]
    if any(n not in SUITES for n in names):
        raise KeyError(name)
    return [run_suite(n, bound) for n in names]
