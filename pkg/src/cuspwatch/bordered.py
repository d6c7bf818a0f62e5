"""Bordered regions: finite functional systems cut off by a norm gauge.

A bordered region in R^l is the set {x : phi_i(x) > C_i + f(|x|_inf)} for
finitely many nonzero rational functionals phi_i, constants C_i, and a
nonnegative nondecreasing Lipschitz gauge f with f(0) = 0. Everything here
is decided exactly: rational linear programs with certificates on both
sides, no floating point. Strictness is handled by slack variables, so the
stored data always uses non-strict constants.

The norm is the sup norm throughout; its unit sphere splits into the 2l
faces {x_c = +-1, |x_d| <= 1}, which keeps every sphere optimization a
finite family of linear programs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import GaugeTooSteep, PreconditionError
from .lattice import positive_primitive
from .loglin import LogLin
from .lp import lp_feasible, solve_lp
from .matrix import Mat
from .scalars import frac, frac_str


def _sgn(v) -> int:
    if isinstance(v, LogLin):
        return v.sign()
    return (v > 0) - (v < 0)


def _coerce_scalar(v):
    return v if isinstance(v, LogLin) else Fraction(frac(v))


@dataclass(frozen=True)
class Functional:
    """Exact linear functional on Q^l, stored by its coefficient vector."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "coeffs", tuple(Fraction(frac(c)) for c in self.coeffs)
        )
        if not self.coeffs:
            raise PreconditionError("functional needs at least one coefficient")

    @staticmethod
    def of(coeffs) -> "Functional":
        if isinstance(coeffs, Functional):
            return coeffs
        return Functional(tuple(coeffs))

    @property
    def l(self) -> int:
        return len(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __call__(self, x):
        if len(x) != len(self.coeffs):
            raise PreconditionError("point dimension mismatch")
        total = self.coeffs[0] * x[0]
        for c, v in zip(self.coeffs[1:], x[1:]):
            total = total + c * v
        return total

    def __neg__(self) -> "Functional":
        return Functional(tuple(-c for c in self.coeffs))

    def to_json(self):
        return [frac_str(c) for c in self.coeffs]


class Gauge:
    """Nonnegative nondecreasing Lipschitz cutoff of the norm, f(0) = 0."""

    __slots__ = ("kind", "slope", "table")

    def __init__(self, kind, slope=Fraction(0), table=()):
        self.kind = kind
        self.slope = Fraction(slope)
        self.table = tuple((Fraction(t), Fraction(y)) for t, y in table)

    @classmethod
    def zero(cls) -> "Gauge":
        return cls("zero")

    @classmethod
    def linear(cls, slope) -> "Gauge":
        slope = Fraction(frac(slope))
        if slope < 0:
            raise PreconditionError("gauge slope must be nonnegative")
        return cls("linear", slope=slope)

    @classmethod
    def tabulated(cls, points) -> "Gauge":
        pts = [(Fraction(frac(t)), Fraction(frac(y))) for t, y in points]
        if not pts or pts[0] != (0, 0):
            raise PreconditionError("table must start at (0, 0)")
        for (t0, y0), (t1, y1) in zip(pts, pts[1:]):
            if t1 <= t0 or y1 < y0:
                raise PreconditionError("table must be increasing in t, nondecreasing in y")
        return cls("table", table=tuple(pts))

    @property
    def is_zero(self) -> bool:
        return self.kind == "zero"

    def lipschitz(self) -> Fraction:
        if self.kind == "zero":
            return Fraction(0)
        if self.kind == "linear":
            return self.slope
        best = Fraction(0)
        for (t0, y0), (t1, y1) in zip(self.table, self.table[1:]):
            best = max(best, (y1 - y0) / (t1 - t0))
        return best

    def __call__(self, t):
        if _sgn(t) < 0:
            raise PreconditionError("gauge argument must be a nonnegative norm value")
        if self.kind == "zero":
            return Fraction(0)
        if self.kind == "linear":
            return self.slope * t
        pts = self.table
        for (t0, y0), (t1, y1) in zip(pts, pts[1:]):
            if _sgn(t - t1) <= 0:
                return y0 + (y1 - y0) / (t1 - t0) * (t - t0)
        # beyond the last breakpoint: continue with the final segment slope
        if len(pts) == 1:
            return Fraction(0)
        (t0, y0), (t1, y1) = pts[-2], pts[-1]
        return y1 + (y1 - y0) / (t1 - t0) * (t - t1)

    def __eq__(self, other):
        if not isinstance(other, Gauge):
            return NotImplemented
        return (self.kind, self.slope, self.table) == (other.kind, other.slope, other.table)

    def __hash__(self):
        return hash((self.kind, self.slope, self.table))

    def __repr__(self):
        if self.kind == "zero":
            return "Gauge.zero()"
        if self.kind == "linear":
            return "Gauge.linear(%s)" % (self.slope,)
        return "Gauge.tabulated(%r)" % (self.table,)

    def to_json(self):
        if self.kind == "zero":
            return {"kind": "zero"}
        if self.kind == "linear":
            return {"kind": "linear", "slope": frac_str(self.slope)}
        return {"kind": "table", "points": [[frac_str(t), frac_str(y)] for t, y in self.table]}


def _sup_norm(x):
    best = None
    for v in x:
        a = abs(v)
        if best is None or a > best:
            best = a
    return best


@dataclass(frozen=True)
class BorderedSet:
    """The region {x : phi_i(x) > C_i + gauge(|x|_inf)} in R^l."""

    l: int
    phi: tuple        # pairs (Functional, constant); constants may be LogLin
    gauge: Gauge

    def __post_init__(self):
        pairs = []
        for f, c in self.phi:
            f = Functional.of(f)
            if f.l != self.l:
                raise PreconditionError("functional dimension mismatch")
            if f.is_zero:
                raise PreconditionError("zero functional is not allowed in a bordered set")
            pairs.append((f, _coerce_scalar(c)))
        if not pairs:
            raise PreconditionError("need at least one functional")
        object.__setattr__(self, "phi", tuple(pairs))

    @property
    def functionals(self) -> list:
        return [f for f, _ in self.phi]

    @property
    def constants(self) -> list:
        return [c for _, c in self.phi]

    def margins(self, x) -> list:
        """phi_i(x) - C_i - gauge(|x|) for each i, exact scalars."""
        cut = self.gauge(_sup_norm(x)) if len(x) else Fraction(0)
        return [f(x) - c - cut for f, c in self.phi]

    def rho(self, x):
        """Depth function: least margin at x."""
        best = None
        for m in self.margins(x):
            if best is None or m < best:
                best = m
        return best

    def contains(self, x, closed: bool = False) -> bool:
        if len(x) != self.l:
            raise PreconditionError("point dimension mismatch")
        s = _sgn(self.rho(x))
        return s >= 0 if closed else s > 0

    def zero_gauge(self) -> "BorderedSet":
        return BorderedSet(self.l, self.phi, Gauge.zero())

    def to_json(self):
        return {
            "l": self.l,
            "phi": [
                {
                    "coeffs": f.to_json(),
                    "c": c.to_json() if isinstance(c, LogLin) else frac_str(c),
                }
                for f, c in self.phi
            ],
            "gauge": self.gauge.to_json(),
        }


def conjunction(sets) -> BorderedSet:
    """Intersection of bordered sets sharing dimension and gauge."""
    sets = list(sets)
    if not sets:
        raise PreconditionError("need at least one set")
    l, gauge = sets[0].l, sets[0].gauge
    for s in sets[1:]:
        if s.l != l:
            raise PreconditionError("dimension mismatch in conjunction")
        if s.gauge != gauge:
            raise PreconditionError("conjunction requires a common gauge")
    pairs = []
    for s in sets:
        pairs.extend(s.phi)
    return BorderedSet(l, tuple(pairs), gauge)


def _functional_list(phi_list) -> list:
    fs = [Functional.of(f) for f in phi_list]
    if not fs:
        raise PreconditionError("need at least one functional")
    l = fs[0].l
    for f in fs:
        if f.l != l:
            raise PreconditionError("functionals of mixed dimension")
        if f.is_zero:
            raise PreconditionError("zero functional not allowed here")
    return fs


def _positive_primitive(vec) -> tuple:
    return tuple(Fraction(v) for v in positive_primitive(vec))


def positively_nontrivial(phi_list):
    """Gordan alternative for a finite functional system, with certificate.

    Returns (True, v) with phi(v) > 0 for every phi, or (False, lam) with
    lam >= 0 nonzero and sum(lam_i * phi_i) = 0. Exactly one side exists;
    both certificates are verified exactly before returning.
    """
    fs = _functional_list(phi_list)
    l, m = fs[0].l, len(fs)
    res = solve_lp(
        [Fraction(0)] * l,
        A_ub=[[-c for c in f.coeffs] for f in fs],
        b_ub=[Fraction(-1)] * m,
    )
    if res.status == "optimal":
        v = _positive_primitive(res.x)
        assert all(_sgn(f(v)) > 0 for f in fs)
        return True, v
    # infeasible: the dual cone certificate exists
    eq_rows = [[fs[i].coeffs[d] for i in range(m)] for d in range(l)]
    eq_rows.append([Fraction(1)] * m)
    dual = solve_lp(
        [Fraction(0)] * m,
        A_ub=[[-Fraction(i == k) for i in range(m)] for k in range(m)],
        b_ub=[Fraction(0)] * m,
        A_eq=eq_rows,
        b_eq=[Fraction(0)] * l + [Fraction(1)],
    )
    assert dual.status == "optimal"
    lam = _positive_primitive(dual.x)
    assert all(v >= 0 for v in lam) and any(v > 0 for v in lam)
    for d in range(l):
        assert sum(lam[i] * fs[i].coeffs[d] for i in range(m)) == 0
    return False, lam


def _face_lp(vectors, fix_coord: int, sign: int, l: int):
    """max over {x = -sum gamma_i v_i, gamma >= 0} on one sphere face of
    min_i <v_i, x>, as an LP value; None when the face misses the cone."""
    k = len(vectors)
    nv = 1 + k + l  # t, gamma, x
    obj = [Fraction(0)] * nv
    obj[0] = Fraction(1)

    A_eq, b_eq = [], []
    for d in range(l):
        row = [Fraction(0)] * nv
        for i, v in enumerate(vectors):
            row[1 + i] = v[d]
        row[1 + k + d] = Fraction(1)
        A_eq.append(row)
        b_eq.append(Fraction(0))
    fix = [Fraction(0)] * nv
    fix[1 + k + fix_coord] = Fraction(1)
    A_eq.append(fix)
    b_eq.append(Fraction(sign))

    A_ub, b_ub = [], []
    for v in vectors:
        row = [Fraction(0)] * nv
        row[0] = Fraction(1)
        for d in range(l):
            row[1 + k + d] = -v[d]
        A_ub.append(row)
        b_ub.append(Fraction(0))
    for i in range(k):
        row = [Fraction(0)] * nv
        row[1 + i] = Fraction(-1)
        A_ub.append(row)
        b_ub.append(Fraction(0))
    for d in range(l):
        for s in (1, -1):
            row = [Fraction(0)] * nv
            row[1 + k + d] = Fraction(s)
            A_ub.append(row)
            b_ub.append(Fraction(1))

    res = solve_lp(obj, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq)
    if res.status != "optimal":
        return None
    return res.value


_EPS_CACHE: dict = {}


def epsilon_bound(phi_list) -> Fraction:
    """Certified separation constant of a functional system.

    For every linearly independent subset and every unit-norm nonpositive
    combination x of its vectors, some member satisfies phi(x) <= -eps.
    The returned value is half the exact minimum over subsets, so it stays
    strictly inside the valid range. Pure in the functional set, so results
    are memoized; repeated boundedness checks hit the cache.
    """
    fs = _functional_list(phi_list)
    key = frozenset(f.coeffs for f in fs)
    cached = _EPS_CACHE.get(key)
    if cached is not None:
        return cached
    l = fs[0].l
    vecs = []
    for f in fs:
        if f.coeffs not in vecs:
            vecs.append(f.coeffs)
    best = None
    for size in range(1, min(l, len(vecs)) + 1):
        for combo in combinations(range(len(vecs)), size):
            rows = [vecs[i] for i in combo]
            if Mat.rationalize([list(r) for r in rows]).rank() < size:
                continue
            M = None
            for d in range(l):
                for sign in (1, -1):
                    val = _face_lp(rows, d, sign, l)
                    if val is not None and (M is None or val > M):
                        M = val
            assert M is not None, "cone always meets the unit sphere"
            eps_sub = -M
            assert eps_sub > 0, "independent subsets separate from the cone"
            if best is None or eps_sub < best:
                best = eps_sub
    assert best is not None
    _EPS_CACHE[key] = best / 2
    return best / 2


def is_bounded(U: BorderedSet) -> bool:
    """A bordered region is bounded iff its system has a dead combination.

    The gauge must be strictly less steep than the separation constant of
    the system; a steeper gauge is rejected rather than answered wrongly.
    """
    eps = epsilon_bound(U.functionals)
    if U.gauge.lipschitz() >= eps:
        raise GaugeTooSteep(
            "gauge slope %s is not below the separation constant %s"
            % (U.gauge.lipschitz(), eps)
        )
    ok, _ = positively_nontrivial(U.functionals)
    return not ok


@dataclass(frozen=True)
class ConvexSpec:
    """V-representation of a convex region: points plus recession rays.

    The region described is conv(points) + cone(rays), read as an open set
    (its relative interior) where openness matters. No points means empty.
    """

    points: tuple = ()
    rays: tuple = ()
    l: int = 0

    def __post_init__(self):
        pts = tuple(tuple(Fraction(frac(c)) for c in p) for p in self.points)
        rys = tuple(tuple(Fraction(frac(c)) for c in r) for r in self.rays)
        l = self.l
        for v in pts + rys:
            if l == 0:
                l = len(v)
            if len(v) != l:
                raise PreconditionError("mixed generator dimensions")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "rays", rys)
        object.__setattr__(self, "l", l)

    @property
    def is_empty(self) -> bool:
        return not self.points

    def to_json(self):
        return {
            "points": [[frac_str(c) for c in p] for p in self.points],
            "rays": [[frac_str(c) for c in r] for r in self.rays],
        }


def _in_cone(rays, target) -> bool:
    """Exact membership of target in the conical hull of the rays."""
    if all(c == 0 for c in target):
        return True
    if not rays:
        return False
    m = len(rays)
    l = len(target)
    A_eq = [[rays[i][d] for i in range(m)] for d in range(l)]
    ok, _ = lp_feasible(
        A_ub=[[-Fraction(i == k) for i in range(m)] for k in range(m)],
        b_ub=[Fraction(0)] * m,
        A_eq=A_eq,
        b_eq=list(target),
    )
    return ok


def _reversible_rays(S: ConvexSpec) -> list:
    return [r for r in S.rays if _in_cone(S.rays, tuple(-c for c in r))]


def invdim(S):
    """Dimension of the translation stabilizer; -inf for the empty region."""
    if isinstance(S, BorderedSet):
        if not S.gauge.is_zero:
            raise PreconditionError("invariance dimension needs the zero-gauge polyhedron")
        ok, _ = lp_feasible(
            A_ub=[[-c for c in f.coeffs] for f in S.functionals],
            b_ub=[-c for c in S.constants],
        )
        if not ok:
            return -math.inf
        return S.l - Mat.rationalize([list(f.coeffs) for f in S.functionals]).rank()
    if isinstance(S, ConvexSpec):
        if S.is_empty:
            return -math.inf
        rev = _reversible_rays(S)
        if not rev:
            return 0
        return Mat.rationalize([list(r) for r in rev]).rank()
    raise PreconditionError("invdim expects a ConvexSpec or a zero-gauge BorderedSet")


def is_k_trivial(S: ConvexSpec, k: int) -> bool:
    """False exactly when k is the invariance dimension and the region is
    bounded transverse to its stabilizer (recession cone = lineality)."""
    if not isinstance(S, ConvexSpec):
        raise PreconditionError("k-triviality is decided on convex V-representations")
    if S.l and not 1 <= k <= S.l:
        raise PreconditionError("k out of range")
    if S.is_empty:
        return True
    if invdim(S) != k:
        return True
    quotient_bounded = all(
        _in_cone(S.rays, tuple(-c for c in r)) for r in S.rays
    )
    return not quotient_bounded


def _projection_onto_polyhedron(p, rows, rhs):
    """Exact Euclidean projection of p onto {x : rows_i . x >= rhs_i}.

    Active-set enumeration: the projection satisfies x = p + B_S^T mu with
    mu >= 0 supported on an independent active subset S, B_S x = rhs_S. The
    minimizer is unique, so the first subset passing both checks is it.
    """
    m = len(rows)
    satisfied = all(
        _sgn(sum(r[d] * p[d] for d in range(len(p))) - b) >= 0
        for r, b in zip(rows, rhs)
    )
    if satisfied:
        return tuple(p)
    l = len(p)
    for size in range(1, m + 1):
        for combo in combinations(range(m), size):
            B = [rows[i] for i in combo]
            if Mat.rationalize([list(r) for r in B]).rank() < size:
                continue
            gram = Mat.rationalize(
                [[sum(a * b for a, b in zip(B[i], B[j])) for j in range(size)]
                 for i in range(size)]
            )
            target = [rhs[combo[i]] - sum(B[i][d] * p[d] for d in range(l))
                      for i in range(size)]
            mu = gram.solve(target)
            if any(_sgn(v) < 0 for v in mu):
                continue
            x = [p[d] + sum(mu[i] * B[i][d] for i in range(size)) for d in range(l)]
            if all(
                _sgn(sum(r[d] * x[d] for d in range(l)) - b) >= 0
                for r, b in zip(rows, rhs)
            ):
                return tuple(x)
    raise AssertionError("projection onto a nonempty polyhedron always exists")


def _lex_inf_min(rows, rhs, l: int):
    """Point of {x : rows . x >= rhs} with least sup norm, ties broken by
    smallest coordinates in order; deterministic and unique."""
    m = len(rows)
    nv = 1 + l  # r, x
    A_ub, b_ub = [], []
    for r, b in zip(rows, rhs):
        row = [Fraction(0)] * nv
        for d in range(l):
            row[1 + d] = -r[d]
        A_ub.append(row)
        b_ub.append(-b)
    for d in range(l):
        for s in (1, -1):
            row = [Fraction(0)] * nv
            row[0] = Fraction(-1)
            row[1 + d] = Fraction(s)
            A_ub.append(row)
            b_ub.append(Fraction(0))
    obj = [Fraction(0)] * nv
    obj[0] = Fraction(-1)
    res = solve_lp(obj, A_ub=A_ub, b_ub=b_ub)
    assert res.status == "optimal"
    rstar = -res.value

    A_ub2, b_ub2 = [], []
    for r, b in zip(rows, rhs):
        A_ub2.append([-r[d] for d in range(l)])
        b_ub2.append(-b)
    for d in range(l):
        for s in (1, -1):
            row = [Fraction(0)] * l
            row[d] = Fraction(s)
            A_ub2.append(row)
            b_ub2.append(rstar)
    A_eq, b_eq = [], []
    x = []
    for d in range(l):
        obj = [Fraction(0)] * l
        obj[d] = Fraction(-1)
        res = solve_lp(obj, A_ub=A_ub2, b_ub=b_ub2, A_eq=A_eq, b_eq=b_eq)
        assert res.status == "optimal"
        xd = -res.value
        row = [Fraction(0)] * l
        row[d] = Fraction(1)
        A_eq.append(row)
        b_eq.append(xd)
        x.append(xd)
    return tuple(x)


def _depth_polytope(U: BorderedSet):
    """Max of the zero-gauge depth and the constraints of its argmax set."""
    l = U.l
    rows = [list(f.coeffs) for f in U.functionals]
    consts = list(U.constants)
    obj = [Fraction(1)] + [Fraction(0)] * l
    A_ub, b_ub = [], []
    for r, c in zip(rows, consts):
        A_ub.append([Fraction(1)] + [-v for v in r])
        b_ub.append(-c)
    res = solve_lp(obj, A_ub=A_ub, b_ub=b_ub)
    assert res.status == "optimal", "a bounded system has a finite peak depth"
    M = res.value
    return M, rows, [c + M for c in consts]


def contract_step(U: BorderedSet, x, t):
    """Two-phase contraction path with nondecreasing depth.

    Phase one (t in [0, 1/2]) moves x straight to its Euclidean projection
    onto the peak-depth polytope; phase two (t in [1/2, 1]) slides inside
    that polytope to its sup-norm-least point. Both phases keep rho from
    decreasing as long as the gauge slope stays below the separation
    constant of the system, which is checked.
    """
    t = Fraction(frac(t))
    if not 0 <= t <= 1:
        raise PreconditionError("time parameter must lie in [0, 1]")
    if len(x) != U.l:
        raise PreconditionError("point dimension mismatch")
    x = tuple(_coerce_scalar(v) for v in x)
    if not is_bounded(U):
        raise PreconditionError("contraction is defined for bounded regions")
    M, rows, rhs = _depth_polytope(U)
    a = _projection_onto_polyhedron(x, rows, rhs)
    if t <= Fraction(1, 2):
        s = 2 * t
        return tuple(xv + s * (av - xv) for xv, av in zip(x, a))
    u = _lex_inf_min(rows, rhs, U.l)
    s = 2 * t - 1
    return tuple(av + s * (uv - av) for av, uv in zip(a, u))


def intersect_nonempty(sets, relaxation: str = "zero-gauge"):
    """Whether the zero-gauge relaxations of the sets meet, with witness.

    Decided by maximizing a common slack delta <= 1 under phi(x) >= C + delta
    pooled over all sets; the strict conjunction is nonempty iff the best
    slack is positive.
    """
    if relaxation != "zero-gauge":
        raise PreconditionError("only the zero-gauge relaxation is implemented")
    sets = list(sets)
    if not sets:
        raise PreconditionError("need at least one set")
    l = sets[0].l
    if any(s.l != l for s in sets):
        raise PreconditionError("dimension mismatch")
    nv = 1 + l  # delta, x
    A_ub, b_ub = [], []
    for s in sets:
        for f, c in s.phi:
            row = [Fraction(1)] + [-v for v in f.coeffs]
            A_ub.append(row)
            b_ub.append(-c)
    cap = [Fraction(1)] + [Fraction(0)] * l
    A_ub.append(cap)
    b_ub.append(Fraction(1))
    obj = [Fraction(1)] + [Fraction(0)] * l
    res = solve_lp(obj, A_ub=A_ub, b_ub=b_ub)
    assert res.status == "optimal"
    if _sgn(res.value) > 0:
        return True, tuple(res.x[1:])
    return False, None
