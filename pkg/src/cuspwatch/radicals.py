"""Unipotent radicals of rational parabolic stabilizers, as wedge data.

A proper nonzero rational subspace V of Q^n determines the nilpotent space
Hom(Q^n / V, V) inside the trace-zero matrices. Its integral points have an
explicit Z-basis: outer products of a saturated basis of V with a saturated
basis of the annihilator of V. The wedge of that basis, written in a fixed
coordinate basis of the trace-zero matrices, is the witness vector whose
norm under conjugation detects cusp excursions.

Basis of the trace-zero matrices: all elementary E_ab (a != b) in
lexicographic order of (a, b), then H_i = E_ii - E_(i+1)(i+1). Coordinates
of a diagonal part are partial sums of the diagonal entries.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from .chars import Character, SubgroupSpec
from .errors import DependentInput, PreconditionError
from .lattice import int_kernel, primitive_int_vector, saturation_pair, lll_reduce
from .loglin import LogLin
from .matrix import Mat
from .scalars import frac_str
from .wedge import WedgeVector, apply_wedge_matrix, plucker, wedge_of_vectors


def sl_dim(n: int) -> int:
    return n * n - 1


def sl_index(n: int) -> list:
    """Ordered labels of the trace-zero basis."""
    out = [("E", a, b) for a in range(1, n + 1) for b in range(1, n + 1) if a != b]
    out += [("H", i) for i in range(1, n)]
    return out


def sl_weights(n: int) -> list:
    """Diagonal weight of each basis label: E_ab gets e_a - e_b, H_i gets 0."""
    out = []
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            if a == b:
                continue
            c = [0] * n
            c[a - 1] = 1
            c[b - 1] = -1
            out.append(Character(tuple(c)))
    zero = Character(tuple([0] * n))
    out += [zero] * (n - 1)
    return out


def sl_coords(M: Mat) -> tuple:
    """Coordinates of a trace-zero matrix in the fixed basis."""
    n = M.nrows
    if not M.is_square():
        raise PreconditionError("need a square matrix")
    diag = [Fraction(M[i, i]) for i in range(n)]
    if sum(diag) != 0:
        raise PreconditionError("matrix is not trace zero")
    coords = []
    for a in range(n):
        for b in range(n):
            if a != b:
                coords.append(Fraction(M[a, b]))
    acc = Fraction(0)
    for i in range(n - 1):
        acc += diag[i]
        coords.append(acc)
    return tuple(coords)


def coords_to_matrix(n: int, coords) -> Mat:
    coords = [Fraction(x) for x in coords]
    if len(coords) != sl_dim(n):
        raise PreconditionError("coordinate length mismatch")
    rows = [[Fraction(0)] * n for _ in range(n)]
    pos = 0
    for a in range(n):
        for b in range(n):
            if a != b:
                rows[a][b] = coords[pos]
                pos += 1
    partial = coords[pos:]
    prev = Fraction(0)
    for i in range(n - 1):
        rows[i][i] = partial[i] - prev
        prev = partial[i]
    rows[n - 1][n - 1] = -partial[-1]
    return Mat(rows)


_WEIGHT_CACHE: dict = {}


def _cached_weights(n: int) -> list:
    if n not in _WEIGHT_CACHE:
        _WEIGHT_CACHE[n] = sl_weights(n)
    return _WEIGHT_CACHE[n]


def wedge_index_weight(idx, n: int) -> Character:
    """Summed diagonal weight of a multi-index over the trace-zero basis."""
    weights = _cached_weights(n)
    c = [0] * n
    for pos in idx:
        c = [x + y for x, y in zip(c, weights[pos - 1].coeffs)]
    return Character(tuple(c))


def std_index_weight(idx, n: int) -> Character:
    """Summed diagonal weight of a multi-index over the coordinate basis."""
    c = [0] * n
    for pos in idx:
        c[pos - 1] += 1
    return Character(tuple(c))


def _bucket_norms(pairs) -> list:
    buckets: dict = {}
    for ch, a in pairs:
        cur = buckets.get(ch)
        if cur is None or a > cur:
            buckets[ch] = a
    return sorted(buckets.items(), key=lambda t: t[0].sort_key())


def weight_components(w: WedgeVector, n: int) -> list:
    """Per-weight sup norms of a wedge over the trace-zero basis."""
    return _bucket_norms(
        (wedge_index_weight(idx, n), abs(c)) for idx, c in w.coeffs.items()
    )


def std_weight_components(w: WedgeVector, n: int) -> list:
    """Per-weight sup norms of a wedge over the coordinate basis."""
    return _bucket_norms(
        (std_index_weight(idx, n), abs(c)) for idx, c in w.coeffs.items()
    )


@dataclass(frozen=True)
class RadicalWitness:
    """Exact wedge data of the nilpotent space attached to a subspace."""

    n: int
    j: int
    rows: tuple        # saturated Z-basis of V as Hermite-form rows
    ann_rows: tuple    # saturated Z-basis of the annihilator
    p_std: WedgeVector
    p_ad: WedgeVector
    u_basis: tuple     # integral basis of the nilpotent space, outer products

    @property
    def dim(self) -> int:
        return self.j * (self.n - self.j)

    def height(self) -> Fraction:
        """Height of the subspace: sup norm of its primitive Plucker vector."""
        return self.p_std.norm_inf()

    @property
    def weights_std(self) -> list:
        """Characters carrying a nonzero component of p_std."""
        return [ch for ch, _ in std_weight_components(self.p_std, self.n)]

    @property
    def weights_ad(self) -> list:
        """Characters carrying a nonzero component of p_ad."""
        return [ch for ch, _ in weight_components(self.p_ad, self.n)]

    def sort_key(self):
        return (self.j, tuple(sorted(self.p_std.coeffs.items())))

    def to_json(self):
        return {
            "n": self.n,
            "j": self.j,
            "rows": [list(r) for r in self.rows],
            "p_std": self.p_std.to_json(),
            "p_ad": self.p_ad.to_json(),
        }

    def __repr__(self):
        return "RadicalWitness(n=%d, j=%d, rows=%r)" % (self.n, self.j, self.rows)


def radical_from_subspace(rows, n: int | None = None) -> RadicalWitness:
    rows = [list(r) for r in rows]
    if not rows:
        raise PreconditionError("no spanning rows")
    if n is None:
        n = len(rows[0])
    j = Mat.rationalize(rows).rank()
    if j != len(rows):
        raise DependentInput("spanning rows are dependent")
    if not 1 <= j <= n - 1:
        raise PreconditionError("need a proper nonzero subspace")
    B, F = saturation_pair(rows)
    u_basis = []
    for brow in B:
        for frow in F:
            u_basis.append(Mat([[Fraction(bv * fv) for fv in frow] for bv in brow]))
    p_std = plucker([list(map(Fraction, r)) for r in B], n)
    vecs = [sl_coords(u) for u in u_basis]
    p_ad = plucker(vecs, sl_dim(n))
    return RadicalWitness(
        n=n,
        j=j,
        rows=tuple(tuple(r) for r in B),
        ann_rows=tuple(tuple(r) for r in F),
        p_std=p_std,
        p_ad=p_ad,
        u_basis=tuple(u_basis),
    )


def standard_radical(n: int, j: int) -> RadicalWitness:
    if not 1 <= j <= n - 1:
        raise PreconditionError("need 1 <= j <= n-1")
    rows = [[1 if t == i else 0 for t in range(n)] for i in range(j)]
    return radical_from_subspace(rows, n)


def conj_ad_wedge(g: Mat, witness: RadicalWitness) -> WedgeVector:
    """Wedge of the conjugated integral basis; the norm carrier."""
    gi = g.inverse()
    vecs = [sl_coords(g * u * gi) for u in witness.u_basis]
    return wedge_of_vectors(vecs, sl_dim(witness.n))


@dataclass(frozen=True)
class ActiveRadical:
    witness: RadicalWitness
    norm: Fraction


def _validate_sl(g: Mat) -> None:
    if not g.is_square() or g.det() != 1:
        raise PreconditionError("need a matrix with determinant exactly 1")


def _prefilter_bound(g: Mat, p_std: WedgeVector) -> Fraction:
    """Cheap lower bound for the conjugated wedge norm.

    The coefficient of the full wedge at the off-diagonal product index
    R x ([n] \\ R) has absolute value |W_R|^(n-j) * |W_comp|^j where W is the
    image of the subspace wedge, by the Kronecker determinant identity and
    complement duality at determinant one.
    """
    n, j = p_std.m, p_std.k
    W = apply_wedge_matrix(g, p_std)
    best = Fraction(0)
    full = tuple(range(1, n + 1))
    for R, cR in W.coeffs.items():
        comp = tuple(sorted(set(full) - set(R)))
        cC = W.coeff(comp)
        if cC != 0:
            val = abs(cR) ** (n - j) * abs(cC) ** j
            if val > best:
                best = val
    return best


def _primitive_vectors(n: int, height: int):
    """Primitive integer vectors, first nonzero positive, sup norm <= height."""
    def rec(prefix, started):
        if len(prefix) == n:
            if any(prefix):
                yield tuple(prefix)
            return
        lo = 0 if not started else -height
        for v in range(lo, height + 1):
            yield from rec(prefix + [v], started or v != 0)

    for vec in rec([], False):
        g = 0
        for x in vec:
            g = gcd(g, abs(x))
        if g == 1:
            yield vec


def _plane_pluckers_4(height: int):
    """Primitive decomposable wedge coordinates in dimension 4, height-bounded.

    Coordinates ordered (w12, w13, w14, w23, w24, w34); decomposable means
    w12*w34 - w13*w24 + w14*w23 = 0. Enumeration splits on the first
    nonzero coordinate and solves the quadric for a dependent coordinate.
    """
    H = height
    seen = set()

    def emit(w):
        g = 0
        for x in w:
            g = gcd(g, abs(x))
        if g != 1:
            return
        if w not in seen:
            seen.add(w)
            yield w

    rng = range(-H, H + 1)
    for w12 in range(1, H + 1):
        for w13 in rng:
            for w14 in rng:
                for w23 in rng:
                    for w24 in rng:
                        num = w13 * w24 - w14 * w23
                        if num % w12:
                            continue
                        w34 = num // w12
                        if abs(w34) <= H:
                            yield from emit((w12, w13, w14, w23, w24, w34))
    for w13 in range(1, H + 1):
        for w14 in rng:
            for w23 in rng:
                for w34 in rng:
                    num = w14 * w23  # w12 = 0 forces w13*w24 = w14*w23
                    if num % w13:
                        continue
                    w24 = num // w13
                    if abs(w24) <= H:
                        yield from emit((0, w13, w14, w23, w24, w34))
    for w14 in range(1, H + 1):
        # w12 = w13 = 0 forces w14*w23 = 0, so w23 = 0
        for w24 in rng:
            for w34 in rng:
                yield from emit((0, 0, w14, 0, w24, w34))
    for w23 in range(1, H + 1):
        for w24 in rng:
            for w34 in rng:
                yield from emit((0, 0, 0, w23, w24, w34))
    for w24 in range(1, H + 1):
        for w34 in rng:
            yield from emit((0, 0, 0, 0, w24, w34))
    for w34 in range(1, H + 1):
        yield from emit((0, 0, 0, 0, 0, w34))


def _plane_from_plucker_4(w) -> list:
    """Recover the 2-plane {v : v wedge w = 0} from decomposable coordinates."""
    w12, w13, w14, w23, w24, w34 = w
    # rows of the map v -> v ^ w in the basis e_ijk of Lambda^3
    K = Mat.rationalize([
        [w23, -w13, w12, 0],    # coefficient of e_123
        [w24, -w14, 0, w12],    # e_124
        [w34, 0, -w14, w13],    # e_134
        [0, w34, -w24, w23],    # e_234
    ])
    ker = K.kernel_basis()
    if len(ker) != 2:
        raise DependentInput("coordinates are not decomposable")
    return [list(v) for v in ker]


def _candidate_subspaces(n: int, j: int, height: int):
    if j == 1:
        for v in _primitive_vectors(n, height):
            yield [list(v)]
    elif j == n - 1:
        for f in _primitive_vectors(n, height):
            rows = int_kernel([list(f)], n)
            yield [list(r) for r in rows]
    elif (n, j) == (4, 2):
        for w in _plane_pluckers_4(height):
            yield _plane_from_plucker_4(w)
    else:
        raise PreconditionError(
            "subspace enumeration implemented for j=1, j=n-1, and (n,j)=(4,2)"
        )


def _reduction_candidates(g: Mat, j: int):
    """Candidate subspaces from a reduced basis of the column lattice.

    The pullback rows of the unimodular transform give integer directions
    whose images under g are short; actives hide among small combinations.
    """
    n = g.nrows
    rows = [[Fraction(g[i, k]) for i in range(n)] for k in range(n)]  # columns of g
    _, T = lll_reduce(rows)
    pulls = [list(t) for t in T]
    pool = [tuple(p) for p in pulls]
    for a in range(len(pulls)):
        for b in range(a + 1, len(pulls)):
            pool.append(tuple(x + y for x, y in zip(pulls[a], pulls[b])))
            pool.append(tuple(x - y for x, y in zip(pulls[a], pulls[b])))
    out = []
    for combo in combinations(range(len(pool)), j):
        rows_c = [list(pool[i]) for i in combo]
        if Mat.rationalize(rows_c).rank() == j:
            out.append(rows_c)
    return out


def enumerate_witnesses(n: int, height: int, js=None) -> list:
    """Every subspace witness with primitive Plucker height <= height.

    Deduplicates subspaces presented by different bases; sorted by type and
    Plucker data so the output order is reproducible. Height 0 is empty.
    """
    if js is None:
        js = list(range(1, n))
    found = {}
    for j in js:
        for rows in _candidate_subspaces(n, j, height):
            p_std = plucker([list(map(Fraction, r)) for r in rows], n)
            if p_std.norm_inf() > height:
                continue
            key = (j, tuple(sorted(p_std.coeffs.items())))
            if key not in found:
                found[key] = radical_from_subspace(rows, n)
    return [found[k] for k in sorted(found.keys())]


def active_radicals(g: Mat, eps, height: int, js=None, method: str = "brute") -> list:
    """All proper subspaces of bounded height whose conjugated wedge is small.

    Height of a subspace is the sup norm of its primitive Plucker vector.
    `method="brute"` enumerates every candidate; `method="reduction"` only
    proposes candidates from a reduced basis and verifies them exactly, so
    it is fast but is only as complete as its proposal set.
    """
    _validate_sl(g)
    eps = Fraction(eps)
    if eps <= 0:
        raise PreconditionError("need eps > 0")
    n = g.nrows
    if js is None:
        js = list(range(1, n))
    found = {}
    for j in js:
        if method == "brute":
            cands = _candidate_subspaces(n, j, height)
        elif method == "reduction":
            cands = _reduction_candidates(g, j)
        else:
            raise PreconditionError("unknown method %r" % (method,))
        for rows in cands:
            p_std = plucker([list(map(Fraction, r)) for r in rows], n)
            if p_std.norm_inf() > height:
                continue
            key = (j, tuple(sorted(p_std.coeffs.items())))
            if key in found:
                continue
            if _prefilter_bound(g, p_std) >= eps:
                continue
            witness = radical_from_subspace(rows, n)
            norm = conj_ad_wedge(g, witness).norm_inf()
            if norm < eps:
                found[key] = ActiveRadical(witness=witness, norm=norm)
    return [found[k] for k in sorted(found.keys())]


def default_digits() -> int:
    try:
        return max(1, int(os.environ.get("CUSPWATCH_PRECISION", "50")))
    except ValueError:
        return 50


@dataclass(frozen=True)
class ProfileTable:
    """Exact sampled depth profile: per grid point the least witness value."""

    points: tuple
    values: tuple          # LogLin entries
    argmin: tuple          # sort keys of the minimizing witnesses
    digits: int

    def rendered(self) -> list:
        out = []
        for p, v in zip(self.points, self.values):
            out.append(([frac_str(x) for x in p], v.to_decimal(self.digits)))
        return out

    def to_csv(self) -> str:
        lines = []
        dim = len(self.points[0]) if self.points else 0
        header = ",".join("s%d" % (i + 1) for i in range(dim)) + ",value"
        lines.append(header)
        for coords, dec in self.rendered():
            lines.append(",".join(coords) + "," + dec)
        return "\n".join(lines) + "\n"

    def to_json(self):
        return {
            "digits": self.digits,
            "rows": [
                {"point": p, "value": d}
                for p, d in self.rendered()
            ],
        }


def cusp_profile(g: Mat, subgroup: SubgroupSpec, grid_points, witnesses,
                 digits: int | None = None) -> ProfileTable:
    """Exact log-depth profile over rational grid points.

    At a point s the value is the minimum over witnesses of the maximum over
    present weights of  lambda(direction(s)) + log(component norm), an exact
    LogLin quantity; ties and comparisons are certified.
    """
    _validate_sl(g)
    witnesses = list(witnesses)
    if not witnesses:
        raise PreconditionError("need at least one witness")
    pts = [tuple(Fraction(x) for x in p) for p in grid_points]
    if not pts:
        raise PreconditionError("need at least one grid point")
    if digits is None:
        digits = default_digits()

    prepared = []
    for wit in witnesses:
        if isinstance(wit, ActiveRadical):
            wit = wit.witness
        W = conj_ad_wedge(g, wit)
        comps = weight_components(W, wit.n)
        rows = [(subgroup.restrict(ch), nu) for ch, nu in comps]
        prepared.append((wit.sort_key(), rows))

    values, mins = [], []
    for s in pts:
        best = None
        best_key = None
        for key, rows in prepared:
            val = None
            for coeffs, nu in rows:
                lin = sum((c * x for c, x in zip(coeffs, s)), Fraction(0))
                term = LogLin(lin, ((nu, 1),)) if nu != 1 else LogLin(lin)
                if val is None or term > val:
                    val = term
            if best is None or val < best:
                best = val
                best_key = key
        values.append(best)
        mins.append(best_key)
    return ProfileTable(points=tuple(pts), values=tuple(values),
                        argmin=tuple(mins), digits=digits)
