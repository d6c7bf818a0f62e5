"""Exterior powers over the rationals.

A WedgeVector is a sparse element of the k-th exterior power of Q^m,
stored as {increasing 1-based index tuple: nonzero Fraction}. The basis
is e_I = e_{i1} ^ ... ^ e_{ik} for I = (i1 < ... < ik); multi-indices are
1-based throughout because that is the convention used by every tuple
surface of this package (leading tuples, Grassmannian strata, and so on).

Primitive normalization scales a nonzero rational wedge vector so that all
coefficients are coprime integers and the lexicographically first nonzero
coefficient is positive.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd

from .errors import DependentInput, NoUniqueLeadingTuple, PreconditionError
from .matrix import Mat
from .scalars import frac_str, parse_frac


def k_subsets(m: int, k: int) -> list[tuple[int, ...]]:
    """All increasing k-tuples from {1..m} in lexicographic order."""
    return [tuple(c) for c in combinations(range(1, m + 1), k)]


def _det_small(rows) -> Fraction:
    """Determinant of a small list-of-lists Fraction matrix."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        a, b, c = rows[0]
        d, e, f = rows[1]
        g, h, i = rows[2]
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    # fraction-free-ish Gaussian elimination for n >= 4
    a = [list(r) for r in rows]
    det = Fraction(1)
    for k_ in range(n):
        piv = None
        for r in range(k_, n):
            if a[r][k_] != 0:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != k_:
            a[k_], a[piv] = a[piv], a[k_]
            det = -det
        det *= a[k_][k_]
        inv = 1 / a[k_][k_]
        for r in range(k_ + 1, n):
            if a[r][k_]:
                f = a[r][k_] * inv
                for c in range(k_, n):
                    a[r][c] -= f * a[k_][c]
    return det


class WedgeVector:
    """Sparse exact element of Lambda^k Q^m."""

    __slots__ = ("m", "k", "coeffs")

    def __init__(self, m: int, k: int, coeffs: dict[tuple[int, ...], Fraction]):
        if not (0 <= k <= m):
            raise PreconditionError(f"degree {k} out of range for ambient dimension {m}")
        clean = {}
        for idx, c in coeffs.items():
            c = Fraction(c)
            if c == 0:
                continue
            idx = tuple(idx)
            if len(idx) != k or any(not (1 <= i <= m) for i in idx) or list(idx) != sorted(set(idx)):
                raise PreconditionError(f"bad multi-index {idx} for Lambda^{k} Q^{m}")
            clean[idx] = c
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    def __setattr__(self, *a):
        raise AttributeError("WedgeVector is immutable")

    @staticmethod
    def basis_element(m: int, idx: tuple[int, ...]) -> "WedgeVector":
        return WedgeVector(m, len(idx), {tuple(idx): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self) -> list[tuple[int, ...]]:
        return list(self.coeffs.keys())

    def coeff(self, idx) -> Fraction:
        return self.coeffs.get(tuple(idx), Fraction(0))

    def norm_inf(self) -> Fraction:
        """Sup norm over coefficients.

        Each weight space of the ambient torus action is spanned by distinct
        basis multi-indices, so the max over weight components of the
        per-component sup norm equals the plain max over coefficients.
        """
        if not self.coeffs:
            return Fraction(0)
        return max(abs(c) for c in self.coeffs.values())

    def scale(self, c) -> "WedgeVector":
        c = Fraction(c)
        return WedgeVector(self.m, self.k, {i: c * v for i, v in self.coeffs.items()})

    def __add__(self, other: "WedgeVector") -> "WedgeVector":
        if self.m != other.m or self.k != other.k:
            raise PreconditionError("wedge vector shape mismatch")
        out = dict(self.coeffs)
        for i, v in other.coeffs.items():
            out[i] = out.get(i, Fraction(0)) + v
        return WedgeVector(self.m, self.k, out)

    def __sub__(self, other: "WedgeVector") -> "WedgeVector":
        return self + other.scale(-1)

    def __neg__(self) -> "WedgeVector":
        return self.scale(-1)

    def __eq__(self, other):
        return (isinstance(other, WedgeVector) and self.m == other.m
                and self.k == other.k and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.m, self.k, tuple(self.coeffs.items())))

    def __repr__(self):
        if not self.coeffs:
            return f"WedgeVector(0 in L^{self.k}Q^{self.m})"
        terms = " + ".join(f"{frac_str(c)}*e{list(i)}" for i, c in self.coeffs.items())
        return f"WedgeVector({terms})"

    def primitive(self) -> "WedgeVector":
        """Primitive integer representative with normalized sign.

        Scales so coefficients are coprime integers and the coefficient on
        the lexicographically first support tuple is positive.
        """
        if not self.coeffs:
            raise PreconditionError("zero wedge vector has no primitive form")
        from math import lcm
        den = 1
        for c in self.coeffs.values():
            den = lcm(den, c.denominator)
        nums = [c.numerator * (den // c.denominator) for c in self.coeffs.values()]
        g = 0
        for x in nums:
            g = gcd(g, abs(x))
        first = next(iter(self.coeffs.values()))
        s = Fraction(den, g)
        if first < 0:
            s = -s
        return self.scale(s)

    def is_primitive(self) -> bool:
        if not self.coeffs:
            return False
        return self == self.primitive()

    def wedge(self, other: "WedgeVector") -> "WedgeVector":
        """Exterior product, with the usual shuffle sign."""
        if self.m != other.m:
            raise PreconditionError("ambient dimension mismatch")
        m = self.m
        kk = self.k + other.k
        if kk > m:
            return WedgeVector(m, min(kk, m), {}) if kk <= m else WedgeVector(m, m, {})
        out: dict[tuple[int, ...], Fraction] = {}
        for i1, c1 in self.coeffs.items():
            s1 = set(i1)
            for i2, c2 in other.coeffs.items():
                if s1 & set(i2):
                    continue
                merged = tuple(sorted(i1 + i2))
                sign = _merge_sign(i1, i2)
                out[merged] = out.get(merged, Fraction(0)) + sign * c1 * c2
        return WedgeVector(m, kk, out)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "k": self.k,
            "coeffs": [[list(i), frac_str(c)] for i, c in self.coeffs.items()],
        }

    @staticmethod
    def from_json(obj: dict) -> "WedgeVector":
        coeffs = {tuple(i): parse_frac(c) for i, c in obj["coeffs"]}
        return WedgeVector(int(obj["m"]), int(obj["k"]), coeffs)


def _merge_sign(i1: tuple[int, ...], i2: tuple[int, ...]) -> int:
    """Sign of the permutation sorting the concatenation i1 + i2."""
    inv = 0
    for a in i1:
        for b in i2:
            if a > b:
                inv += 1
    return -1 if inv % 2 else 1


def wedge_of_vectors(vectors, m: int) -> WedgeVector:
    """Raw wedge v_1 ^ ... ^ v_k of explicit coordinate vectors.

    Coefficients are the k x k minors of the k x m coefficient matrix, one
    per increasing column tuple. No normalization is applied.
    """
    vs = [list(map(Fraction, v)) for v in vectors]
    k = len(vs)
    if any(len(v) != m for v in vs):
        raise PreconditionError("vector length mismatch")
    coeffs = {}
    for cols in combinations(range(m), k):
        minor = _det_small([[v[c] for c in cols] for v in vs])
        if minor != 0:
            coeffs[tuple(c + 1 for c in cols)] = minor
    return WedgeVector(m, k, coeffs)


def plucker(vectors, m: int | None = None) -> WedgeVector:
    """Primitive Plucker vector of the span of the given vectors.

    Raises DependentInput when the vectors are linearly dependent (all
    minors vanish), since they then span no k-dimensional subspace.
    """
    vs = list(vectors)
    if not vs:
        raise PreconditionError("no vectors given")
    if m is None:
        m = len(vs[0])
    w = wedge_of_vectors(vs, m)
    if w.is_zero():
        raise DependentInput("vectors are linearly dependent")
    return w.primitive()


def wedge_power(mat: Mat, k: int) -> Mat:
    """Matrix of Lambda^k(mat) in the lexicographic k-subset basis.

    Entry (I, J) is the k x k minor with rows I and columns J. Functorial:
    wedge_power(A * B, k) == wedge_power(A, k) * wedge_power(B, k).
    """
    n = mat.nrows
    if not mat.is_square():
        raise PreconditionError("wedge_power expects a square matrix")
    if not (1 <= k <= n):
        raise PreconditionError(f"degree {k} out of range")
    subs = list(combinations(range(n), k))
    rows = []
    for I in subs:
        row = []
        for J in subs:
            row.append(_det_small([[mat.rows[i][j] for j in J] for i in I]))
        rows.append(row)
    return Mat(rows)


def apply_wedge_matrix(mat: Mat, w: WedgeVector) -> WedgeVector:
    """Image of w under Lambda^k(mat), computed column-sparsely.

    Each support tuple J contributes w_J times the wedge of columns J of
    mat, so cost scales with |support| rather than with the full exterior
    power matrix.
    """
    if mat.ncols != w.m:
        raise PreconditionError("ambient dimension mismatch")
    out: dict[tuple[int, ...], Fraction] = {}
    k = w.k
    for J, cJ in w.coeffs.items():
        cols = [[mat.rows[r][j - 1] for r in range(mat.nrows)] for j in J]
        for I in combinations(range(mat.nrows), k):
            minor = _det_small([[cols[t][i] for t in range(k)] for i in I])
            if minor:
                key = tuple(i + 1 for i in I)
                out[key] = out.get(key, Fraction(0)) + cJ * minor
    return WedgeVector(mat.nrows, k, out)


def componentwise_le(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    """The partial order on increasing index tuples: a <= b in every slot."""
    if len(a) != len(b):
        raise PreconditionError("tuple length mismatch")
    return all(x <= y for x, y in zip(a, b))


def leading_tuple(w: WedgeVector, order=componentwise_le) -> tuple[int, ...]:
    """The maximum support tuple of w in the componentwise order.

    For a decomposable w this is the pivot pattern of its subspace (the
    column positions of the trailing nonzero entries in a suitably reduced
    basis). A zero vector or a support with no unique maximum is rejected;
    the latter certifies that w is not decomposable.
    """
    if w.is_zero():
        raise PreconditionError("zero wedge vector has no leading tuple")
    support = w.support()
    best = support[0]
    for t in support[1:]:
        if order(best, t):
            best = t
    for t in support:
        if not order(t, best):
            raise NoUniqueLeadingTuple(
                f"support has no componentwise maximum: {t} and {best} are incomparable")
    return best
