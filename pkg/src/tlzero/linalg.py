"""Small exact sparse linear algebra over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from .scalars import as_fraction, format_rational

Row = Dict[int, Fraction]


class QMatrix:
    """A rows x cols rational matrix stored as a dict of sparse rows.  Immutable by convention."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data: Dict[int, Row] | None = None):
        self.rows = rows
        self.cols = cols
        clean: Dict[int, Row] = {}
        for i, row in (data or {}).items():
            r = {j: as_fraction(v) for j, v in row.items() if v}
            if r:
                clean[i] = r
        self._data = clean

    @classmethod
    def _raw(cls, rows, cols, data):
        out = cls.__new__(cls)
        out.rows, out.cols, out._data = rows, cols, data
        return out

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls._raw(rows, cols, {})

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls._raw(n, n, {i: {i: Fraction(1)} for i in range(n)})

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "QMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        data = {}
        for i, row in enumerate(rows):
            if len(row) != c:
                raise ValueError("ragged matrix")
            data[i] = {j: as_fraction(v) if not isinstance(v, str) else Fraction(v)
                       for j, v in enumerate(row)}
        return cls(r, c, data)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[Tuple[int, int, object]]) -> "QMatrix":
        data: Dict[int, Row] = {}
        for i, j, v in entries:
            row = data.setdefault(i, {})
            row[j] = row.get(j, 0) + as_fraction(v)
        return cls(rows, cols, data)

    def to_dense(self) -> List[List[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for i, row in self._data.items():
            for j, v in row.items():
                out[i][j] = v
        return out

    def entries(self) -> List[Tuple[int, int, Fraction]]:
        return sorted((i, j, v) for i, row in self._data.items() for j, v in row.items())

    def row(self, i: int) -> Row:
        return dict(self._data.get(i, {}))

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self._data.get(i, {}).get(j, Fraction(0))

    def nnz(self) -> int:
        return sum(len(r) for r in self._data.values())

    def is_zero(self) -> bool:
        return not self._data

    # arithmetic
    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out: Dict[int, Row] = {}
        od = other._data
        for i, row in self._data.items():
            acc: Row = {}
            for k, a in row.items():
                orow = od.get(k)
                if not orow:
                    continue
                for j, b in orow.items():
                    acc[j] = acc.get(j, 0) + a * b
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                out[i] = acc
        return QMatrix._raw(self.rows, other.cols, out)

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in addition")
        out = {i: dict(r) for i, r in self._data.items()}
        for i, row in other._data.items():
            acc = out.setdefault(i, {})
            for j, v in row.items():
                s = acc.get(j, 0) + v
                if s:
                    acc[j] = s
                else:
                    acc.pop(j, None)
            if not acc:
                del out[i]
        return QMatrix._raw(self.rows, self.cols, out)

    def __neg__(self) -> "QMatrix":
        return self.scale(-1)

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return self + (-other)

    def scale(self, s) -> "QMatrix":
        s = as_fraction(s)
        if not s:
            return QMatrix.zeros(self.rows, self.cols)
        return QMatrix._raw(self.rows, self.cols,
                            {i: {j: v * s for j, v in r.items()} for i, r in self._data.items()})

    def transpose(self) -> "QMatrix":
        out: Dict[int, Row] = {}
        for i, row in self._data.items():
            for j, v in row.items():
                out.setdefault(j, {})[i] = v
        return QMatrix._raw(self.cols, self.rows, out)

    @property
    def T(self) -> "QMatrix":
        return self.transpose()

    def kron(self, other: "QMatrix") -> "QMatrix":
        out: Dict[int, Row] = {}
        for i1, r1 in self._data.items():
            for i2, r2 in other._data.items():
                row = {}
                for j1, a in r1.items():
                    for j2, b in r2.items():
                        row[j1 * other.cols + j2] = a * b
                out[i1 * other.rows + i2] = row
        return QMatrix._raw(self.rows * other.rows, self.cols * other.cols, out)

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.entries())))

    def __repr__(self):
        return f"QMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"

    def to_json(self, row_labels=None, col_labels=None) -> dict:
        def lab(labels, i):
            return labels[i] if labels is not None else i

        return {
            "rows": self.rows if row_labels is None else list(row_labels),
            "cols": self.cols if col_labels is None else list(col_labels),
            "entries": [[lab(row_labels, i), lab(col_labels, j), format_rational(v)]
                        for i, j, v in self.entries()],
        }

    # derived quantities
    def rank(self) -> int:
        return rank_of_rows(list(self._data.values()))

    def trace(self) -> Fraction:
        return sum((self[i, i] for i in range(min(self.rows, self.cols))), Fraction(0))

    def rref(self) -> Tuple["QMatrix", List[int]]:
        rows, pivots = _rref_rows(self.to_dense())
        return QMatrix.from_dense(rows) if rows else QMatrix.zeros(0, self.cols), pivots

    def nullspace(self) -> List[List[Fraction]]:
        """Basis of {v : M v = 0}, one vector per free column, in reduced echelon form."""
        rows, pivots = _rref_rows(self.to_dense())
        free = [j for j in range(self.cols) if j not in pivots]
        basis = []
        for fj in free:
            v = [Fraction(0)] * self.cols
            v[fj] = Fraction(1)
            for r, pj in zip(rows, pivots):
                v[pj] = -r[fj]
            basis.append(v)
        # present the basis itself in reduced echelon form
        if basis:
            red, _ = _rref_rows(basis)
            basis = red
        return basis

    def charpoly(self) -> List[Fraction]:
        """Coefficients (c_1, ..., c_n) of det(xI - M) = x^n + c_1 x^(n-1) + ... + c_n."""
        if self.rows != self.cols:
            raise ValueError("characteristic polynomial needs a square matrix")
        n = self.rows
        coeffs: List[Fraction] = []
        ident = QMatrix.identity(n)
        mk = ident
        for k in range(1, n + 1):
            am = self @ mk
            c = -am.trace() / k
            coeffs.append(c)
            mk = am + ident.scale(c)
        return coeffs


def _rref_rows(rows: List[List[Fraction]]) -> Tuple[List[List[Fraction]], List[int]]:
    m = [list(map(as_fraction, r)) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        m[r] = [v / pv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank_of_rows(vectors: Iterable[Dict[int, Fraction]]) -> int:
    """Rank of a family of sparse vectors by incremental elimination."""
    basis: Dict[int, Row] = {}  # pivot -> reduced row with leading 1 at pivot
    for vec in vectors:
        v = {k: as_fraction(x) for k, x in vec.items() if x}
        while v:
            piv = min(v)
            if piv not in basis:
                lead = v[piv]
                basis[piv] = {k: x / lead for k, x in v.items()}
                break
            b = basis[piv]
            f = v[piv]
            for k, x in b.items():
                s = v.get(k, 0) - f * x
                if s:
                    v[k] = s
                else:
                    v.pop(k, None)
    return len(basis)


def solve_linear(rows: List[List[Fraction]], rhs: List[Fraction]) -> List[List[Fraction]] | None:
    """Affine solution set of rows . x = rhs: returns [particular, kernel vectors...] or None."""
    aug = [list(r) + [as_fraction(b)] for r, b in zip(rows, rhs)]
    red, piv = _rref_rows(aug)
    ncols = len(rows[0]) if rows else 0
    if ncols in piv:
        return None
    part = [Fraction(0)] * ncols
    for r, p in zip(red, piv):
        part[p] = r[-1]
    kernel = QMatrix.from_dense(rows).nullspace() if rows else []
    return [part] + kernel
