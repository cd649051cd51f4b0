"""Exact linear algebra over the Gaussian rationals Q(i).

Every higher layer (Lefschetz operators, Lie-algebra closures, relative
Lie algebra cohomology) reduces to the routines here, so everything is
exact rational arithmetic: no floats, no tolerances.  Subspaces are kept
in reduced row echelon form, which makes every derived basis canonical
and independent of enumeration order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "Scalar",
    "ZERO",
    "ONE",
    "I",
    "i_power",
    "DenseMatrix",
    "Subspace",
    "SpanBuilder",
    "rref",
    "solve",
    "kernel_image",
    "quotient_cohomology",
    "symmetric_signature",
    "hermitian_definiteness",
    "determinant",
    "vec_add",
    "vec_sub",
    "vec_scale",
    "vec_neg",
    "vec_conj",
    "vec_is_zero",
    "zero_vector",
    "unit_vector",
]

_F0 = Fraction(0)
_F1 = Fraction(1)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(x)


class Scalar:
    """An exact element re + im*i of Q(i).

    Instances are immutable by convention: nothing in this package ever
    writes to ``re``/``im`` after construction.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    @classmethod
    def of(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        return cls(x)

    def __add__(self, other):
        o = other if isinstance(other, Scalar) else Scalar(other)
        return Scalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = other if isinstance(other, Scalar) else Scalar(other)
        return Scalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return Scalar(other) - self

    def __mul__(self, other):
        o = other if isinstance(other, Scalar) else Scalar(other)
        return Scalar(self.re * o.re - self.im * o.im,
                      self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = other if isinstance(other, Scalar) else Scalar(other)
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return Scalar((self.re * o.re + self.im * o.im) / n,
                      (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other):
        return Scalar(other) / self

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def norm_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        if self.im == 0:
            return f"Scalar({self.re})"
        return f"Scalar({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)

_I_POWERS = (Scalar(1), Scalar(0, 1), Scalar(-1), Scalar(0, -1))


def i_power(k: int) -> Scalar:
    """i**k for any integer k."""
    return _I_POWERS[k % 4]


def zero_vector(n: int) -> tuple:
    return (ZERO,) * n


def unit_vector(n: int, j: int) -> tuple:
    return tuple(ONE if k == j else ZERO for k in range(n))


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_neg(a):
    return tuple(-x for x in a)


def vec_scale(c: Scalar, a):
    if c.is_zero():
        return zero_vector(len(a))
    return tuple(c * x for x in a)


def vec_conj(a):
    return tuple(x.conjugate() for x in a)


def vec_is_zero(a) -> bool:
    return all(x.is_zero() for x in a)


class DenseMatrix:
    """Immutable dense matrix over Q(i), entries row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ValueError(
                f"entry count {len(entries)} does not match {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows_data) -> "DenseMatrix":
        rows_data = [list(r) for r in rows_data]
        r = len(rows_data)
        c = len(rows_data[0]) if r else 0
        flat = []
        for row in rows_data:
            if len(row) != c:
                raise ValueError("ragged rows")
            flat.extend(Scalar.of(x) for x in row)
        return cls(r, c, flat)

    @classmethod
    def from_columns(cls, cols_data, rows: int | None = None) -> "DenseMatrix":
        cols_data = [list(col) for col in cols_data]
        if cols_data:
            rows = len(cols_data[0])
        elif rows is None:
            rows = 0
        flat = []
        for i in range(rows):
            for col in cols_data:
                flat.append(Scalar.of(col[i]))
        return cls(rows, len(cols_data), flat)

    @classmethod
    def identity(cls, n: int) -> "DenseMatrix":
        return cls(n, n, [ONE if i == j else ZERO
                          for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "DenseMatrix":
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def diagonal(cls, diag) -> "DenseMatrix":
        diag = [Scalar.of(d) for d in diag]
        n = len(diag)
        return cls(n, n, [diag[i] if i == j else ZERO
                          for i in range(n) for j in range(n)])

    def at(self, i: int, j: int) -> Scalar:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_lists(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def apply(self, vec) -> tuple:
        if len(vec) != self.cols:
            raise ValueError("vector length does not match column count")
        out = [ZERO] * self.rows
        e = self.entries
        c = self.cols
        for j, x in enumerate(vec):
            if x.is_zero():
                continue
            for i in range(self.rows):
                a = e[i * c + j]
                if not a.is_zero():
                    out[i] = out[i] + a * x
        return tuple(out)

    def mul(self, other: "DenseMatrix") -> "DenseMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        n, m, p = self.rows, self.cols, other.cols
        out = [ZERO] * (n * p)
        a, b = self.entries, other.entries
        for i in range(n):
            base = i * m
            for k in range(m):
                aik = a[base + k]
                if aik.is_zero():
                    continue
                brow = k * p
                orow = i * p
                for j in range(p):
                    bkj = b[brow + j]
                    if not bkj.is_zero():
                        out[orow + j] = out[orow + j] + aik * bkj
        return DenseMatrix(n, p, out)

    __matmul__ = mul

    def add(self, other: "DenseMatrix") -> "DenseMatrix":
        self._same_shape(other)
        return DenseMatrix(self.rows, self.cols,
                           [x + y for x, y in zip(self.entries, other.entries)])

    __add__ = add

    def sub(self, other: "DenseMatrix") -> "DenseMatrix":
        self._same_shape(other)
        return DenseMatrix(self.rows, self.cols,
                           [x - y for x, y in zip(self.entries, other.entries)])

    __sub__ = sub

    def __neg__(self):
        return DenseMatrix(self.rows, self.cols, [-x for x in self.entries])

    def scale(self, c) -> "DenseMatrix":
        c = Scalar.of(c)
        return DenseMatrix(self.rows, self.cols, [c * x for x in self.entries])

    def transpose(self) -> "DenseMatrix":
        return DenseMatrix(self.cols, self.rows,
                           [self.at(i, j)
                            for j in range(self.cols) for i in range(self.rows)])

    def conj(self) -> "DenseMatrix":
        return DenseMatrix(self.rows, self.cols,
                           [x.conjugate() for x in self.entries])

    def conj_transpose(self) -> "DenseMatrix":
        return self.transpose().conj()

    def commutator(self, other: "DenseMatrix") -> "DenseMatrix":
        return self.mul(other).sub(other.mul(self))

    def power(self, k: int) -> "DenseMatrix":
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        out = DenseMatrix.identity(self.rows)
        for _ in range(k):
            out = out.mul(self)
        return out

    def is_zero_matrix(self) -> bool:
        return all(x.is_zero() for x in self.entries)

    def submatrix(self, row_idx, col_idx) -> "DenseMatrix":
        row_idx = list(row_idx)
        col_idx = list(col_idx)
        return DenseMatrix(len(row_idx), len(col_idx),
                           [self.at(i, j) for i in row_idx for j in col_idx])

    def _same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    def __eq__(self, other):
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == \
            (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"DenseMatrix({self.rows}x{self.cols})"


def rref(row_vectors):
    """Reduced row echelon form of a list of vectors.

    Returns (rows, pivot_columns); zero rows are dropped.  The result
    depends only on the span, not on the input order.
    """
    rows = [list(r) for r in row_vectors]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for k in range(r, len(rows)):
            if not rows[k][c].is_zero():
                pivot_row = k
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = ONE / rows[r][c]
        if inv != ONE:
            rows[r] = [inv * x for x in rows[r]]
        for k in range(len(rows)):
            if k == r:
                continue
            f = rows[k][c]
            if f.is_zero():
                continue
            rk, rr = rows[k], rows[r]
            for j in range(c, ncols):
                if not rr[j].is_zero():
                    rk[j] = rk[j] - f * rr[j]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [tuple(row) for row in rows[:r]], pivots


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q(i)^ambient, basis in canonical reduced echelon form."""

    ambient: int
    basis: tuple

    @classmethod
    def from_vectors(cls, ambient: int, vectors) -> "Subspace":
        rows, _ = rref(vectors)
        return cls(ambient, tuple(rows))

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, ())

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls(ambient, tuple(unit_vector(ambient, j) for j in range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, vector) -> bool:
        v = list(vector)
        for row in self.basis:
            p = _leading_index(row)
            f = v[p]
            if not f.is_zero():
                for j in range(p, self.ambient):
                    if not row[j].is_zero():
                        v[j] = v[j] - f * row[j]
        return all(x.is_zero() for x in v)

    def sum_with(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")
        return Subspace.from_vectors(self.ambient, list(self.basis) + list(other.basis))

    def intersects_trivially(self, other: "Subspace") -> bool:
        return self.sum_with(other).dim == self.dim + other.dim


def _leading_index(row) -> int:
    for j, x in enumerate(row):
        if not x.is_zero():
            return j
    raise ValueError("zero row has no leading index")


class SpanBuilder:
    """Incrementally maintained reduced-echelon span of vectors."""

    def __init__(self, ambient: int):
        self.ambient = ambient
        self._rows = []   # list of (pivot_col, row-list), sorted by pivot

    @property
    def dim(self) -> int:
        return len(self._rows)

    def _reduce(self, vector):
        v = list(vector)
        for p, row in self._rows:
            f = v[p]
            if not f.is_zero():
                for j in range(p, self.ambient):
                    if not row[j].is_zero():
                        v[j] = v[j] - f * row[j]
        return v

    def contains(self, vector) -> bool:
        return all(x.is_zero() for x in self._reduce(vector))

    def add(self, vector) -> bool:
        """Insert a vector; returns True when the span grew."""
        v = self._reduce(vector)
        pivot = None
        for j, x in enumerate(v):
            if not x.is_zero():
                pivot = j
                break
        if pivot is None:
            return False
        inv = ONE / v[pivot]
        if inv != ONE:
            v = [inv * x for x in v]
        for p, row in self._rows:
            f = row[pivot]
            if not f.is_zero():
                for j in range(pivot, self.ambient):
                    if not v[j].is_zero():
                        row[j] = row[j] - f * v[j]
        self._rows.append((pivot, v))
        self._rows.sort(key=lambda t: t[0])
        return True

    def coordinates(self, vector):
        """Coefficients of ``vector`` in the canonical basis, or None."""
        v = list(vector)
        coeffs = [ZERO] * len(self._rows)
        for k, (p, row) in enumerate(self._rows):
            f = v[p]
            if not f.is_zero():
                coeffs[k] = f
                for j in range(p, self.ambient):
                    if not row[j].is_zero():
                        v[j] = v[j] - f * row[j]
        if not all(x.is_zero() for x in v):
            return None
        return tuple(coeffs)

    @property
    def basis(self) -> tuple:
        return tuple(tuple(row) for _, row in self._rows)

    def subspace(self) -> Subspace:
        return Subspace(self.ambient, self.basis)


def solve(a: DenseMatrix, b):
    """Canonical solution of a x = b, or None when inconsistent.

    The solution is read off the reduced echelon form of the augmented
    matrix with all free variables set to zero.
    """
    b = tuple(Scalar.of(x) for x in b)
    if len(b) != a.rows:
        raise ValueError(f"rhs length {len(b)} does not match {a.rows} rows")
    aug = [list(a.row(i)) + [b[i]] for i in range(a.rows)]
    rows, pivots = rref(aug)
    x = [ZERO] * a.cols
    for row, p in zip(rows, pivots):
        if p == a.cols:
            return None
        x[p] = row[a.cols]
    return tuple(x)


def kernel_image(a: DenseMatrix):
    """Kernel and image of a matrix, both as canonical Subspaces."""
    rows, pivots = rref(a.row_lists())
    pivot_set = set(pivots)
    free = [j for j in range(a.cols) if j not in pivot_set]
    kernel_vectors = []
    for f in free:
        v = [ZERO] * a.cols
        v[f] = ONE
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        kernel_vectors.append(tuple(v))
    kernel = Subspace.from_vectors(a.cols, kernel_vectors)
    image = Subspace.from_vectors(a.rows,
                                  [a.column(j) for j in range(a.cols)])
    return kernel, image


def quotient_cohomology(d_in: DenseMatrix, d_out: DenseMatrix) -> Subspace:
    """Canonical complement of im(d_in) inside ker(d_out).

    Requires d_out . d_in = 0.  The representatives are the kernel basis
    reduced modulo the image and re-echelonized, so they only depend on
    the two subspaces.
    """
    if d_in.rows != d_out.cols:
        raise ValueError("middle dimensions of the complex do not match")
    if d_in.cols and d_out.rows and not d_out.mul(d_in).is_zero_matrix():
        raise ValueError("composition d_out . d_in is nonzero")
    kernel, _ = kernel_image(d_out)
    image_rows, image_pivots = rref([d_in.column(j) for j in range(d_in.cols)])
    reduced = []
    for v in kernel.basis:
        w = list(v)
        for row, p in zip(image_rows, image_pivots):
            f = w[p]
            if not f.is_zero():
                for j in range(p, len(w)):
                    if not row[j].is_zero():
                        w[j] = w[j] - f * row[j]
        if not all(x.is_zero() for x in w):
            reduced.append(tuple(w))
    return Subspace.from_vectors(d_in.rows, reduced)


def symmetric_signature(g: DenseMatrix):
    """(p_plus, p_minus, p_zero) of a real symmetric matrix.

    Computed by exact congruence diagonalization; the counts are
    Sylvester invariants.
    """
    n = g.rows
    if g.cols != n:
        raise ValueError("signature of a non-square matrix")
    for x in g.entries:
        if not x.is_real():
            raise ValueError("signature requires real entries")
    for i in range(n):
        for j in range(i + 1, n):
            if g.at(i, j) != g.at(j, i):
                raise ValueError("signature requires a symmetric matrix")
    m = [[g.at(i, j).re for j in range(n)] for i in range(n)]
    plus = minus = zero = 0
    for k in range(n):
        if m[k][k] == 0:
            swap = None
            for j in range(k + 1, n):
                if m[j][j] != 0:
                    swap = j
                    break
            if swap is not None:
                m[k], m[swap] = m[swap], m[k]
                for row in m:
                    row[k], row[swap] = row[swap], row[k]
            else:
                mate = None
                for j in range(k + 1, n):
                    if m[k][j] != 0:
                        mate = j
                        break
                if mate is None:
                    zero += 1
                    continue
                for j in range(n):
                    m[k][j] += m[mate][j]
                for row in m:
                    row[k] += row[mate]
        pivot = m[k][k]
        if pivot > 0:
            plus += 1
        else:
            minus += 1
        for r in range(k + 1, n):
            f = m[r][k] / pivot
            if f == 0:
                continue
            for j in range(n):
                m[r][j] -= f * m[k][j]
            for row in m:
                row[r] -= f * row[k]
    return plus, minus, zero


def hermitian_definiteness(g: DenseMatrix) -> bool:
    """True iff a Hermitian matrix is positive definite.

    Exact leading-principal-minor test: elimination without pivoting,
    stopping at the first non-positive pivot.
    """
    n = g.rows
    if g.cols != n:
        raise ValueError("definiteness of a non-square matrix")
    for i in range(n):
        for j in range(n):
            if g.at(i, j) != g.at(j, i).conjugate():
                raise ValueError("matrix is not Hermitian")
    m = [[g.at(i, j) for j in range(n)] for i in range(n)]
    for k in range(n):
        pivot = m[k][k]
        if not pivot.is_real() or pivot.re <= 0:
            return False
        for r in range(k + 1, n):
            f = m[r][k] / pivot
            if f.is_zero():
                continue
            for j in range(k, n):
                m[r][j] = m[r][j] - f * m[k][j]
    return True


def determinant(a: DenseMatrix) -> Scalar:
    n = a.rows
    if a.cols != n:
        raise ValueError("determinant of a non-square matrix")
    m = [list(a.row(i)) for i in range(n)]
    det = ONE
    for k in range(n):
        pivot_row = None
        for r in range(k, n):
            if not m[r][k].is_zero():
                pivot_row = r
                break
        if pivot_row is None:
            return ZERO
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
            det = -det
        det = det * m[k][k]
        inv = ONE / m[k][k]
        for r in range(k + 1, n):
            f = m[r][k] * inv
            if f.is_zero():
                continue
            for j in range(k, n):
                m[r][j] = m[r][j] - f * m[k][j]
    return det
