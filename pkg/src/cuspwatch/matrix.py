"""Dense exact matrices over Fraction or QuadScalar entries.

Immutable, row-major, no floating point. Elimination routines use exact
division, so they work over any field-like scalar that supports
+, -, *, / and an is-zero test (Fraction and QuadScalar both qualify).

Matrix indices are 0-based here; the 1-based tuples used elsewhere in the
package are a property of wedge multi-indices, not of Mat.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import PreconditionError
from .scalars import QuadScalar, frac_str


def _is_zero(x) -> bool:
    if isinstance(x, QuadScalar):
        return x.is_zero()
    return x == 0


def _zero_like(x):
    if isinstance(x, QuadScalar):
        return QuadScalar.rational(0, x.d)
    return Fraction(0)


def _one_like(x):
    if isinstance(x, QuadScalar):
        return QuadScalar.rational(1, x.d)
    return Fraction(1)


class Mat:
    """An immutable exact matrix."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable]):
        rs = tuple(tuple(r) for r in rows)
        if not rs or not rs[0]:
            raise PreconditionError("empty matrix")
        w = len(rs[0])
        if any(len(r) != w for r in rs):
            raise PreconditionError("ragged rows")
        object.__setattr__(self, "rows", rs)
        object.__setattr__(self, "nrows", len(rs))
        object.__setattr__(self, "ncols", w)

    def __setattr__(self, *a):
        raise AttributeError("Mat is immutable")

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def from_rows(rows) -> "Mat":
        return Mat(rows)

    @staticmethod
    def identity(n: int, like=Fraction(1)) -> "Mat":
        one = _one_like(like)
        zero = _zero_like(like)
        return Mat([[one if i == j else zero for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(nrows: int, ncols: int, like=Fraction(0)) -> "Mat":
        z = _zero_like(like)
        return Mat([[z] * ncols for _ in range(nrows)])

    @staticmethod
    def diagonal(entries: Sequence) -> "Mat":
        entries = list(entries)
        z = _zero_like(entries[0])
        n = len(entries)
        return Mat([[entries[i] if i == j else z for j in range(n)] for i in range(n)])

    @staticmethod
    def rationalize(rows) -> "Mat":
        """Build a Fraction matrix, coercing ints/strings."""
        from .scalars import frac
        return Mat([[frac(x) for x in r] for r in rows])

    # -- basics ---------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i) -> tuple:
        return self.rows[i]

    def col(self, j) -> tuple:
        return tuple(r[j] for r in self.rows)

    def __eq__(self, other):
        return isinstance(other, Mat) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Mat[{body}]"

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def transpose(self) -> "Mat":
        return Mat(list(zip(*self.rows)))

    def map(self, f: Callable) -> "Mat":
        return Mat([[f(x) for x in r] for r in self.rows])

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Mat":
        return Mat([[self.rows[i][j] for j in col_idx] for i in row_idx])

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        return Mat([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        return Mat([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self) -> "Mat":
        return Mat([[-a for a in r] for r in self.rows])

    def _same_shape(self, other):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise PreconditionError("shape mismatch")

    def scale(self, c) -> "Mat":
        return Mat([[c * a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, Mat):
            if self.ncols != other.nrows:
                raise PreconditionError("shape mismatch in product")
            cols = other.transpose().rows
            return Mat([[_dot(r, c) for c in cols] for r in self.rows])
        return NotImplemented

    def apply(self, vec: Sequence) -> tuple:
        """Matrix times column vector."""
        if len(vec) != self.ncols:
            raise PreconditionError("vector length mismatch")
        return tuple(_dot(r, vec) for r in self.rows)

    # -- elimination-based operations ------------------------------------------

    def det(self):
        if not self.is_square():
            raise PreconditionError("determinant of non-square matrix")
        n = self.nrows
        a = [list(r) for r in self.rows]
        det = _one_like(a[0][0])
        sign = 1
        for k in range(n):
            piv = None
            for i in range(k, n):
                if not _is_zero(a[i][k]):
                    piv = i
                    break
            if piv is None:
                return _zero_like(a[0][0])
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                sign = -sign
            det = det * a[k][k]
            inv = _one_like(a[k][k]) / a[k][k]
            for i in range(k + 1, n):
                if _is_zero(a[i][k]):
                    continue
                m = a[i][k] * inv
                for j in range(k, n):
                    a[i][j] = a[i][j] - m * a[k][j]
        return det * sign if sign == 1 else -det

    def rank(self) -> int:
        a = [list(r) for r in self.rows]
        m, n = self.nrows, self.ncols
        r = 0
        for c in range(n):
            piv = None
            for i in range(r, m):
                if not _is_zero(a[i][c]):
                    piv = i
                    break
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            inv = _one_like(a[r][c]) / a[r][c]
            for i in range(r + 1, m):
                if _is_zero(a[i][c]):
                    continue
                f = a[i][c] * inv
                for j in range(c, n):
                    a[i][j] = a[i][j] - f * a[r][j]
            r += 1
            if r == m:
                break
        return r

    def rref(self) -> tuple["Mat", tuple[int, ...]]:
        """Reduced row echelon form and the pivot column indices."""
        a = [list(r) for r in self.rows]
        m, n = self.nrows, self.ncols
        pivots = []
        r = 0
        for c in range(n):
            piv = None
            for i in range(r, m):
                if not _is_zero(a[i][c]):
                    piv = i
                    break
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            inv = _one_like(a[r][c]) / a[r][c]
            a[r] = [x * inv for x in a[r]]
            for i in range(m):
                if i != r and not _is_zero(a[i][c]):
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
            pivots.append(c)
            r += 1
            if r == m:
                break
        return Mat(a), tuple(pivots)

    def kernel_basis(self) -> list[tuple]:
        """Basis of the right kernel {x : A x = 0} over the entry field."""
        R, pivots = self.rref()
        n = self.ncols
        free = [j for j in range(n) if j not in pivots]
        one = _one_like(self.rows[0][0])
        zero = _zero_like(self.rows[0][0])
        basis = []
        for f in free:
            v = [zero] * n
            v[f] = one
            for r_i, c in enumerate(pivots):
                v[c] = -R.rows[r_i][f]
            basis.append(tuple(v))
        return basis

    def inverse(self) -> "Mat":
        if not self.is_square():
            raise PreconditionError("inverse of non-square matrix")
        n = self.nrows
        one = _one_like(self.rows[0][0])
        zero = _zero_like(self.rows[0][0])
        a = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(self.rows)]
        for c in range(n):
            piv = None
            for i in range(c, n):
                if not _is_zero(a[i][c]):
                    piv = i
                    break
            if piv is None:
                raise PreconditionError("singular matrix")
            a[c], a[piv] = a[piv], a[c]
            inv = one / a[c][c]
            a[c] = [x * inv for x in a[c]]
            for i in range(n):
                if i != c and not _is_zero(a[i][c]):
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return Mat([r[n:] for r in a])

    def solve(self, rhs: Sequence):
        """Solve A x = rhs exactly; raises if inconsistent or underdetermined.

        rhs entries may live in any module over the entry field (for example
        LogLin values over Fraction matrices); only rhs entries are combined
        with matrix coefficients, never divided into them.
        """
        m, n = self.nrows, self.ncols
        if len(rhs) != m:
            raise PreconditionError("rhs length mismatch")
        a = [list(r) for r in self.rows]
        b = list(rhs)
        pivots = []
        r = 0
        for c in range(n):
            piv = None
            for i in range(r, m):
                if not _is_zero(a[i][c]):
                    piv = i
                    break
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            b[r], b[piv] = b[piv], b[r]
            inv = _one_like(a[r][c]) / a[r][c]
            a[r] = [x * inv for x in a[r]]
            b[r] = b[r] * inv if not isinstance(b[r], (int, Fraction)) else inv * b[r]
            for i in range(m):
                if i != r and not _is_zero(a[i][c]):
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                    b[i] = b[i] - f * b[r]
            pivots.append(c)
            r += 1
        for i in range(r, m):
            if not _all_zero_value(b[i]):
                raise PreconditionError("inconsistent linear system")
        if len(pivots) < n:
            raise PreconditionError("underdetermined linear system")
        x = [None] * n
        for i, c in enumerate(pivots):
            x[c] = b[i]
        return tuple(x)

    # -- serialization ----------------------------------------------------------

    def to_json(self):
        out = []
        for r in self.rows:
            row = []
            for x in r:
                row.append(x.to_json() if isinstance(x, QuadScalar) else frac_str(x))
            out.append(row)
        return out

    @staticmethod
    def from_json(obj) -> "Mat":
        from .scalars import parse_frac
        rows = []
        for r in obj:
            row = []
            for x in r:
                if isinstance(x, dict):
                    row.append(QuadScalar.from_json(x))
                elif isinstance(x, str):
                    row.append(parse_frac(x))
                else:
                    row.append(Fraction(x))
            rows.append(row)
        return Mat(rows)


def _dot(r, c):
    it = zip(r, c)
    a, b = next(it)
    acc = a * b
    for a, b in it:
        acc = acc + a * b
    return acc


def _all_zero_value(x) -> bool:
    if isinstance(x, QuadScalar):
        return x.is_zero()
    if isinstance(x, (int, Fraction)):
        return x == 0
    # duck-typed scalars (LogLin) expose sign()
    return x.sign() == 0
