"""Certificates that every escape direction shrinks some rational vector.

A witness vector, conjugated through a fixed unimodular matrix, decays
along a diagonal direction exactly when every character carrying one of
its components is strictly negative there. A family of witnesses
certifies divergence when those open shrink cones jointly cover the unit
sphere of the subgroup. Coverage is decided exactly on the sign-pattern
fan of the arrangement cut out by all the restricted characters: every
realizable sign pattern, lower-dimensional faces included, must admit a
witness whose characters are all strictly negative on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .bordered import Functional
from .chars import Character, SubgroupSpec
from .errors import PreconditionError
from .lattice import positive_primitive
from .loglin import LogLin
from .lp import lp_feasible
from .matrix import Mat
from .radicals import (
    RadicalWitness,
    conj_ad_wedge,
    coords_to_matrix,
    enumerate_witnesses,
    sl_coords,
    sl_dim,
    weight_components,
)
from .wedge import WedgeVector, apply_wedge_matrix


def ad_matrix(g: Mat) -> Mat:
    """Matrix of conjugation by g on the trace-zero basis, columns exact."""
    n = g.nrows
    gi = g.inverse()
    cols = []
    dim = sl_dim(n)
    for k in range(dim):
        coords = [Fraction(0)] * dim
        coords[k] = Fraction(1)
        M = coords_to_matrix(n, coords)
        cols.append(sl_coords(g * M * gi))
    rows = [[cols[k][r] for k in range(dim)] for r in range(dim)]
    return Mat.from_rows(rows)


@dataclass(frozen=True)
class WitnessVector:
    """A rational wedge vector with its components at a fixed conjugator."""

    n: int
    degree: int
    v: WedgeVector
    components: tuple   # (Character, exact component norm) pairs
    label: str = ""

    def __post_init__(self):
        if self.v.is_zero():
            raise PreconditionError("witness vector must be nonzero")
        if not self.components:
            raise PreconditionError("witness vector has no components")

    @classmethod
    def from_radical(cls, g: Mat, witness: RadicalWitness) -> "WitnessVector":
        comps = weight_components(conj_ad_wedge(g, witness), witness.n)
        return cls(
            n=witness.n,
            degree=witness.dim,
            v=witness.p_ad,
            components=tuple(comps),
            label="subspace j=%d rows=%r" % (witness.j, witness.rows),
        )

    @classmethod
    def from_wedge(cls, g: Mat, v: WedgeVector, label: str = "") -> "WitnessVector":
        n = None
        for cand in range(2, 10):
            if sl_dim(cand) == v.m:
                n = cand
                break
        if n is None:
            raise PreconditionError("wedge length is not a trace-zero basis size")
        W = apply_wedge_matrix(ad_matrix(g), v)
        comps = weight_components(W, n)
        if not comps:
            raise PreconditionError("conjugated witness vanished")
        return cls(n=n, degree=v.k, v=v, components=tuple(comps), label=label)

    def to_json(self):
        from .scalars import frac_str

        return {
            "n": self.n,
            "degree": self.degree,
            "label": self.label,
            "components": [
                {"char": list(ch.canonical()), "norm": frac_str(nu)}
                for ch, nu in self.components
            ],
        }


def _coerce_witness(g: Mat, w) -> WitnessVector:
    if isinstance(w, WitnessVector):
        return w
    if isinstance(w, RadicalWitness):
        return WitnessVector.from_radical(g, w)
    if isinstance(w, WedgeVector):
        return WitnessVector.from_wedge(g, w)
    raise PreconditionError("expected a witness vector or subspace witness")


def ray_shrink_set(g: Mat, v, A: SubgroupSpec) -> list:
    """The open cone of directions shrinking the conjugated witness.

    Returned as the list of restricted functionals whose joint strict
    positivity defines the cone: one entry per present character, negated.
    A character restricting to zero contributes the zero functional, which
    makes the cone empty, as it must be.
    """
    w = _coerce_witness(g, v)
    return [Functional(A.restrict(-ch)) for ch, _ in w.components]


def cone_nonempty(functionals) -> bool:
    """Exact: is there a direction with every functional >= 1 (so > 0)?"""
    fs = list(functionals)
    if not fs:
        return False
    rows = [[-c for c in f.coeffs] for f in fs]
    ok, _ = lp_feasible(A_ub=rows, b_ub=[Fraction(-1)] * len(rows))
    return ok


@dataclass(frozen=True)
class FanCell:
    pattern: tuple        # sign of each shared hyperplane on the cell
    direction: tuple      # primitive integer interior representative
    witness_index: int    # witness strictly negative throughout the cell


@dataclass(frozen=True)
class DivergenceCertificate:
    subgroup: SubgroupSpec
    witnesses: tuple
    hyperplanes: tuple    # primitive functional forms shared by the fan
    fan: tuple

    def to_json(self):
        from .scalars import frac_str

        return {
            "witnesses": [w.to_json() for w in self.witnesses],
            "hyperplanes": [[frac_str(c) for c in h] for h in self.hyperplanes],
            "fan": [
                {
                    "pattern": list(cell.pattern),
                    "direction": [frac_str(c) for c in cell.direction],
                    "witness": cell.witness_index,
                }
                for cell in self.fan
            ],
        }


def _witness_faces(g: Mat, A: SubgroupSpec, witnesses):
    """Shared primitive hyperplanes and each witness's sign requirements.

    A witness shrinks on a face exactly when each of its characters is
    strictly negative there; a character lambda = c * h (h primitive,
    c != 0) is negative on a face iff the face sign of h is -sign(c).
    A witness with a character restricting to zero shrinks nowhere.
    """
    ws = [_coerce_witness(g, w) for w in witnesses]
    hyps: list = []
    demands = []
    for w in ws:
        need = {}
        dead = False
        for ch, _ in w.components:
            r = tuple(A.restrict(ch))
            if all(c == 0 for c in r):
                dead = True
                break
            h = positive_primitive(r)
            if h not in hyps and tuple(-x for x in h) not in hyps:
                hyps.append(h)
            if h in hyps:
                k = hyps.index(h)
                c = 1
            else:
                k = hyps.index(tuple(-x for x in h))
                c = -1
            want = -c
            if need.get(k, want) != want:
                dead = True   # needs h both positive and negative: impossible
                break
            need[k] = want
        demands.append(None if dead else need)
    return ws, hyps, demands


def _face_direction(hyps, pattern, l):
    """A point with the given sign pattern, or None; signs enforced as >= 1."""
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for h, s in zip(hyps, pattern):
        row = [Fraction(x) for x in h]
        if s == 0:
            A_eq.append(row)
            b_eq.append(Fraction(0))
        else:
            A_ub.append([-s * x for x in row])
            b_ub.append(Fraction(-1))
    if not A_ub:
        return None
    ok, x = lp_feasible(A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq)
    if not ok:
        return None
    return tuple(positive_primitive(x))


def _analyze(g: Mat, A: SubgroupSpec, witnesses):
    ws, hyps, demands = _witness_faces(g, A, witnesses)
    l = A.dim
    if not hyps:
        unit = tuple(1 if i == 0 else 0 for i in range(l))
        return False, unit, None
    if Mat.rationalize([list(h) for h in hyps]).rank() < l:
        kernel = Mat.rationalize([list(h) for h in hyps]).kernel_basis()[0]
        return False, tuple(positive_primitive(kernel)), None
    cells = []
    for pattern in product((1, 0, -1), repeat=len(hyps)):
        if all(s == 0 for s in pattern):
            continue   # full-rank arrangement: only the origin, not a direction
        d = _face_direction(hyps, pattern, l)
        if d is None:
            continue
        owner = None
        for idx, need in enumerate(demands):
            if need is None:
                continue
            if all(pattern[k] == want for k, want in need.items()):
                owner = idx
                break
        if owner is None:
            return False, d, None
        cells.append(FanCell(pattern=pattern, direction=d, witness_index=owner))
    cert = DivergenceCertificate(
        subgroup=A, witnesses=tuple(ws), hyperplanes=tuple(hyps), fan=tuple(cells)
    )
    return True, None, cert


def check_certificate(g: Mat, A: SubgroupSpec, witnesses):
    """True when the shrink cones of the witnesses cover every direction.

    Exact fan decision over all realizable sign patterns of the restricted
    characters; on failure the second value is an uncovered direction.
    """
    ok, uncovered, _ = _analyze(g, A, witnesses)
    return ok, uncovered


def build_certificate(g: Mat, A: SubgroupSpec, witnesses):
    """The checked fan as a reusable object, or None when coverage fails."""
    ok, _, cert = _analyze(g, A, witnesses)
    return cert if ok else None


def ray_profile(w, A: SubgroupSpec, direction, times) -> list:
    """Exact log-size of the conjugated witness along exp(t * direction).

    Each value is the max over components of  t * char(direction) + log norm,
    an exact ordered scalar.
    """
    if not isinstance(w, WitnessVector):
        raise PreconditionError("ray_profile expects a prepared witness vector")
    d = tuple(Fraction(x) for x in direction)
    out = []
    for t in times:
        t = Fraction(t)
        best = None
        for ch, nu in w.components:
            lam = sum(c * x for c, x in zip(A.restrict(ch), d))
            val = LogLin(lam * t, ((nu, 1),))
            if best is None or val > best:
                best = val
        out.append(best)
    return out


def search_witnesses(g: Mat, A: SubgroupSpec, height: int) -> list:
    """Subspace witnesses of bounded height with a nonempty shrink cone."""
    if height < 0:
        raise PreconditionError("height must be nonnegative")
    out = []
    for rw in enumerate_witnesses(g.nrows, height):
        w = WitnessVector.from_radical(g, rw)
        if cone_nonempty(ray_shrink_set(g, w, A)):
            out.append(w)
    return out
