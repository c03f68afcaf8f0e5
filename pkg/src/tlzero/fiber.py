"""Fiber-functor data (V, b, t) for the q = 0 category.

The form is ``b(v, w) = v^T M w`` and the cup tensor is ``t = sum T_ij e_i (x) e_j``.
The two zig-zag relations read ``T M = 0`` and ``M T = 0``; the circle reads
``b(t) = sum T_ij M_ij = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .errors import (
    ContextError,
    NotHomogeneousEvenType,
    NotInRadicalProduct,
    OuterTraceNotZero,
    ShapeMismatch,
    SupportViolation,
    TraceNotOne,
)
from .functor import eval_diagram, eval_morphism
from .linalg import QMatrix
from .morphisms import Morphism
from .scalars import BarAt, format_rational


def as_qmatrix(m) -> QMatrix:
    if isinstance(m, QMatrix):
        return m
    return QMatrix.from_dense([[Fraction(str(v)) if isinstance(v, str) else v for v in row]
                               for row in m])


@dataclass(frozen=True)
class BilinearForm:
    matrix: QMatrix

    def __post_init__(self):
        object.__setattr__(self, "matrix", as_qmatrix(self.matrix))
        if self.matrix.rows != self.matrix.cols:
            raise ShapeMismatch("a bilinear form needs a square matrix")

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def __call__(self, v: Sequence, w: Sequence) -> Fraction:
        M = self.matrix
        return sum((Fraction(v[i]) * x * Fraction(w[j]) for i, j, x in M.entries()), Fraction(0))

    def contract(self, t: QMatrix) -> Fraction:
        """b(t) = sum_ij t_ij b(e_i, e_j)."""
        t = as_qmatrix(t)
        return sum((v * t[i, j] for i, j, v in self.matrix.entries()), Fraction(0))


def jordan_block(n: int) -> QMatrix:
    return QMatrix.from_entries(n, n, [(i, i + 1, 1) for i in range(n - 1)])


def block_sum(*mats: QMatrix) -> QMatrix:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    entries = []
    r0 = c0 = 0
    for m in mats:
        entries.extend((r0 + i, c0 + j, v) for i, j, v in m.entries())
        r0 += m.rows
        c0 += m.cols
    return QMatrix.from_entries(rows, cols, entries)


def j2_power(m: int) -> QMatrix:
    return block_sum(*[jordan_block(2)] * m) if m else QMatrix.zeros(0, 0)


def radicals(b) -> Tuple[List[List[Fraction]], List[List[Fraction]]]:
    """(L, R): bases of {v : b(v,-) = 0} and {w : b(-,w) = 0}."""
    b = b if isinstance(b, BilinearForm) else BilinearForm(b)
    return b.matrix.T.nullspace(), b.matrix.nullspace()


@dataclass(frozen=True)
class FiberTriple:
    b: BilinearForm
    t: QMatrix

    @property
    def dim(self) -> int:
        return self.b.dim

    @property
    def form_pairs(self):
        return tuple(self.b.matrix.entries())

    @property
    def tensor_pairs(self):
        return tuple(self.t.entries())

    def to_json(self) -> dict:
        def dense(m: QMatrix):
            return [[format_rational(v) for v in row] for row in m.to_dense()]

        return {"b": dense(self.b.matrix), "t": dense(self.t)}


def triple_report(b, t) -> Dict[str, object]:
    """All relation checks for a candidate triple, without raising."""
    b = b if isinstance(b, BilinearForm) else BilinearForm(b)
    t = as_qmatrix(t)
    if (t.rows, t.cols) != (b.dim, b.dim):
        raise ShapeMismatch(f"t must be {b.dim}x{b.dim}, got {t.rows}x{t.cols}")
    M = b.matrix
    left = t @ M  # (id (x) b)(t (x) id)
    right = (M @ t).T  # (b (x) id)(id (x) t)
    bt = b.contract(t)
    return {
        "zigzag_left": left,
        "zigzag_right": right,
        "b_of_t": bt,
        "in_radical_product": left.is_zero() and right.is_zero(),
        "trace_one": bt == 1,
    }


def report_json(rep: Dict[str, object]) -> dict:
    out = {}
    for k, v in rep.items():
        if isinstance(v, QMatrix):
            out[k] = [[format_rational(x) for x in row] for row in v.to_dense()]
        elif isinstance(v, Fraction):
            out[k] = format_rational(v)
        else:
            out[k] = v
    return out


def validate_triple(b, t) -> FiberTriple:
    rep = triple_report(b, t)
    if not rep["in_radical_product"]:
        which = "(id x b)(t x id)" if not rep["zigzag_left"].is_zero() else "(b x id)(id x t)"
        raise NotInRadicalProduct(f"zig-zag contraction {which} is nonzero", rep)
    if not rep["trace_one"]:
        raise TraceNotOne(f"b(t) = {format_rational(rep['b_of_t'])}, expected 1", rep)
    b = b if isinstance(b, BilinearForm) else BilinearForm(b)
    return FiberTriple(b, as_qmatrix(t))


def evaluate_fiber(T: FiberTriple, f) -> QMatrix:
    """U(f) with U(cap) = b and U(cup) = t."""
    validate_triple(T.b, T.t)
    if isinstance(f, Morphism):
        if f.context != BarAt(0):
            raise ContextError(f"fiber functors are evaluated on the q=0 category, got {f.context}")
        return eval_morphism(f, T.dim, T.form_pairs, T.tensor_pairs)
    return eval_diagram(f, T.dim, T.form_pairs, T.tensor_pairs)


def inflate(outer_b, outer_t, inner: FiberTriple) -> FiberTriple:
    """(V', b', t') |> (V, b, t) = (V' + V, b' perp b, t' + t)."""
    ob = outer_b if isinstance(outer_b, BilinearForm) else BilinearForm(outer_b)
    rep = triple_report(ob, outer_t)
    if not rep["in_radical_product"]:
        raise SupportViolation("outer tensor is not supported in R(b') (x) L(b')")
    if rep["b_of_t"] != 0:
        raise OuterTraceNotZero(f"b'(t') = {format_rational(rep['b_of_t'])}, expected 0")
    M = block_sum(ob.matrix, inner.b.matrix)
    t = block_sum(as_qmatrix(outer_t), inner.t)
    return validate_triple(M, t)


def projection(outer_dim: int, inner_dim: int) -> QMatrix:
    """V' + V -> V."""
    return QMatrix.from_entries(inner_dim, outer_dim + inner_dim,
                                [(i, outer_dim + i, 1) for i in range(inner_dim)])


def injection(outer_dim: int, inner_dim: int) -> QMatrix:
    """V -> V' + V."""
    return projection(outer_dim, inner_dim).T


def triple_morphism_check(f, T: FiberTriple, T2: FiberTriple) -> bool:
    """f: V -> V' is an isometry b -> b' with (f (x) f)(t) = t'."""
    f = as_qmatrix(f)
    if (f.rows, f.cols) != (T2.dim, T.dim):
        raise ShapeMismatch(f"map must be {T2.dim}x{T.dim}")
    isometry = f.T @ T2.b.matrix @ f == T.b.matrix
    transport = f @ T.t @ f.T == T2.t
    return isometry and transport


def _is_canonical_j2(M: QMatrix) -> bool:
    return M.rows % 2 == 0 and M == j2_power(M.rows // 2)


def radical_matrix(T: FiberTriple) -> QMatrix:
    """A with t = sum A_ij e^R_i (x) e^L_j in the paired radical bases of J2^m."""
    if not _is_canonical_j2(T.b.matrix):
        raise NotHomogeneousEvenType("orbit invariants need b equal to the canonical J2^m matrix")
    m = T.dim // 2
    validate_triple(T.b, T.t)
    return QMatrix.from_entries(m, m, [(i // 2, j // 2, v) for i, j, v in T.t.entries()])


def orbit_invariant(T: FiberTriple) -> List[Fraction]:
    """Characteristic-polynomial coefficients (c_1, ..., c_m) of A; c_1 = -1."""
    return radical_matrix(T).charpoly()


def radical_action(g) -> QMatrix:
    """Isometry of J2^m acting by g on R and by (g^-1)^T on L."""
    g = as_qmatrix(g)
    m = g.rows
    ginv_t = inverse(g).T
    entries = [(2 * i, 2 * j, v) for i, j, v in g.entries()]
    entries += [(2 * i + 1, 2 * j + 1, v) for i, j, v in ginv_t.entries()]
    return QMatrix.from_entries(2 * m, 2 * m, entries)


def inverse(g: QMatrix) -> QMatrix:
    n = g.rows
    dense = g.to_dense()
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(dense)]
    red, piv = QMatrix.from_dense(aug).rref()
    if piv[:n] != list(range(n)) or red.rows < n:
        raise ValueError("matrix is singular")
    return QMatrix.from_dense([row[n:] for row in red.to_dense()])
