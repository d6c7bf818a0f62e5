"""Covers of a diagonal parameter space by witness activity regions.

Each subspace witness, conjugated through a fixed unimodular matrix, has a
finite set of diagonal characters carrying its wedge vector. Negating the
characters that actually appear and shifting by the exact log of the
component norm produces a bordered region in the subgroup coordinates: the
locus where the conjugated vector is small. This module builds those
regions, enumerates the ones meeting a box (local finiteness), tests that
restriction to the subgroup keeps small character sets independent, and
verifies candidate subcovers on grids.

Membership and activity are computed along two independent routes (margin
arithmetic of the bordered region vs. certified log-linear signs of the
component norms) so they can cross-check each other in tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .bordered import BorderedSet, Functional, Gauge, epsilon_bound
from .chars import Character, GridSpec, SubgroupSpec, ambient_independent
from .errors import PreconditionError
from .loglin import LogLin
from .lp import lp_feasible
from .matrix import Mat
from .radicals import (
    RadicalWitness,
    conj_ad_wedge,
    enumerate_witnesses,
    weight_components,
)
from .scalars import frac, frac_str


def _sup_norm(x) -> Fraction:
    return max(abs(Fraction(v)) for v in x)


@dataclass(frozen=True)
class CoverElement:
    """Activity region of one witness in subgroup coordinates.

    psi holds the negatives of the characters present in the conjugated
    wedge vector; norms holds the exact rational component norm at each.
    The cut value for psi is log(norm) + C0, stored exactly as that pair.
    Functionals whose restriction to the subgroup vanishes cannot sit in a
    bordered region, so they are kept aside and checked as norm-ball
    conditions.
    """

    witness: RadicalWitness
    subgroup: SubgroupSpec
    C0: Fraction
    gauge: Gauge
    psi: tuple           # Characters: negated present weights
    norms: tuple         # exact component norms, aligned with psi
    restr: tuple         # restricted coefficient tuples, aligned with psi
    restricted: object   # BorderedSet over the nonzero restrictions, or None
    zero_psi: tuple      # (Character, norm) pairs with vanishing restriction

    def d_values(self) -> list:
        """Exact cut levels log(norm) + C0, aligned with psi."""
        return [LogLin(self.C0, ((nu, 1),)) for nu in self.norms]

    def contains(self, s, closed: bool = False) -> bool:
        """Gauged membership, via bordered-set margins plus ball conditions."""
        s = tuple(Fraction(frac(v)) for v in s)
        if len(s) != self.subgroup.dim:
            raise PreconditionError("coordinate length mismatch")
        cut = self.gauge(_sup_norm(s))
        for _, nu in self.zero_psi:
            val = LogLin(self.C0 + cut, ((nu, 1),))
            sign = val.sign()
            if sign > 0 or (sign == 0 and not closed):
                return False
        if self.restricted is None:
            return True
        return self.restricted.contains(s, closed=closed)

    def is_active(self, s, strict: bool = True) -> bool:
        """Smallness of the conjugated vector at s, via component signs.

        Active means every weight component of the conjugated wedge at the
        point exp(D(s))*g stays at or under exp(-C0 - gauge(|s|)): the sign
        of  psi-restriction(s) shortfall plus log norm  decides each one.
        """
        s = tuple(Fraction(frac(v)) for v in s)
        cut = self.gauge(_sup_norm(s))
        for coeffs, nu in zip(self.restr, self.norms):
            lin = self.C0 + cut - sum(c * v for c, v in zip(coeffs, s))
            sign = LogLin(lin, ((nu, 1),)).sign()
            if sign > 0 or (sign == 0 and strict):
                return False
        return True

    def zero_gauge(self) -> "CoverElement":
        restricted = None if self.restricted is None else self.restricted.zero_gauge()
        return CoverElement(
            witness=self.witness,
            subgroup=self.subgroup,
            C0=self.C0,
            gauge=Gauge.zero(),
            psi=self.psi,
            norms=self.norms,
            restr=self.restr,
            restricted=restricted,
            zero_psi=self.zero_psi,
        )

    def to_json(self):
        return {
            "witness": self.witness.to_json(),
            "psi": [list(p.canonical()) for p in self.psi],
            "d": [
                {"norm": frac_str(nu), "C0": frac_str(self.C0)}
                for nu in self.norms
            ],
            "gauge": self.gauge.to_json(),
        }


def _element_data(g: Mat, A: SubgroupSpec, witness: RadicalWitness):
    """Present characters of the conjugated wedge, negated, with norms."""
    comps = weight_components(conj_ad_wedge(g, witness), witness.n)
    if not comps:
        raise PreconditionError("witness wedge vanished; corrupt input")
    psi, norms, restr = [], [], []
    for ch, nu in comps:
        p = -ch
        psi.append(p)
        norms.append(nu)
        restr.append(A.restrict(p))
    return tuple(psi), tuple(norms), tuple(restr)


def _assemble(witness, A, C0, gauge, psi, norms, restr) -> CoverElement:
    pairs, zero_psi = [], []
    for p, nu, coeffs in zip(psi, norms, restr):
        d = LogLin(C0, ((nu, 1),))
        if all(c == 0 for c in coeffs):
            zero_psi.append((p, nu))
        else:
            pairs.append((Functional(coeffs), d))
    restricted = BorderedSet(A.dim, tuple(pairs), gauge) if pairs else None
    return CoverElement(
        witness=witness,
        subgroup=A,
        C0=Fraction(C0),
        gauge=gauge,
        psi=psi,
        norms=norms,
        restr=restr,
        restricted=restricted,
        zero_psi=tuple(zero_psi),
    )


def build_cover(g: Mat, A: SubgroupSpec, candidates, C0=0, gauge=None) -> list:
    """One cover element per candidate witness, at the conjugator g.

    When no gauge is given, a linear one is fitted with slope at half the
    separation constant of the pooled nonzero restricted functionals, which
    keeps it strictly inside the admissible range; if every functional
    restricts to zero the gauge falls back to zero.
    """
    candidates = list(candidates)
    if not candidates:
        raise PreconditionError("need at least one candidate witness")
    C0 = Fraction(frac(C0))
    data = [_element_data(g, A, w) for w in candidates]
    if gauge is None:
        pooled = []
        for _, _, restr in data:
            for coeffs in restr:
                if any(c != 0 for c in coeffs) and coeffs not in pooled:
                    pooled.append(coeffs)
        if pooled:
            gauge = Gauge.linear(epsilon_bound(pooled) / 2)
        else:
            gauge = Gauge.zero()
    out = []
    for witness, (psi, norms, restr) in zip(candidates, data):
        out.append(_assemble(witness, A, C0, gauge, psi, norms, restr))
    return out


def enumerate_local(g: Mat, A: SubgroupSpec, R, C0, H: int) -> list:
    """Witnesses of height <= H whose zero-gauge region meets the R-box.

    Decided by exact closed feasibility of the restricted inequalities
    inside the box; constant characters survive exactly when their cut
    level is nonpositive. The output is finite for every (R, H).
    """
    R = Fraction(frac(R))
    if R < 0:
        raise PreconditionError("box radius must be nonnegative")
    C0 = Fraction(frac(C0))
    l = A.dim
    out = []
    for witness in enumerate_witnesses(g.nrows, H):
        psi, norms, restr = _element_data(g, A, witness)
        ok = True
        rows, rhs = [], []
        for coeffs, nu in zip(restr, norms):
            d = LogLin(C0, ((nu, 1),))
            if all(c == 0 for c in coeffs):
                if d.sign() > 0:
                    ok = False
                    break
            else:
                rows.append([-c for c in coeffs])
                rhs.append(-d)
        if not ok:
            continue
        for k in range(l):
            for sgn in (1, -1):
                row = [Fraction(0)] * l
                row[k] = Fraction(sgn)
                rows.append(row)
                rhs.append(R)
        feasible, _ = lp_feasible(A_ub=rows, b_ub=rhs)
        if feasible:
            out.append(witness)
    return out


def good_restrictions(A: SubgroupSpec, Psi, l: int):
    """Whether restriction to A preserves independence of small subsets.

    Scans subsets of the character list of size at most l that are
    independent in the ambient quotient and checks that their restrictions
    stay independent; returns (False, subset) on the first failure.
    """
    chars = [c if isinstance(c, Character) else Character(tuple(c)) for c in Psi]
    for size in range(1, max(0, l) + 1):
        for combo in combinations(range(len(chars)), size):
            subset = [chars[i] for i in combo]
            if not ambient_independent(subset):
                continue
            rows = [list(A.restrict(c)) for c in subset]
            if Mat.rationalize(rows).rank() < size:
                return False, tuple(subset)
    return True, None


def independent_selection(elements, mode: str = "restricted"):
    """A choice of one character per element that stays independent.

    Searches the product of the character sets; returns the first
    selection whose characters are independent (ambient quotient or after
    restriction, by mode), or None when no selection works.
    """
    if not elements:
        return ()
    sets = [e.psi for e in elements]
    A = elements[0].subgroup
    for pick in product(*sets):
        if mode == "ambient":
            if ambient_independent(pick):
                return pick
        elif mode == "restricted":
            rows = [list(A.restrict(c)) for c in pick]
            if Mat.rationalize(rows).rank() == len(pick):
                return pick
        else:
            raise PreconditionError("mode must be 'ambient' or 'restricted'")
    return None


@dataclass(frozen=True)
class CoverReport:
    covered: bool
    gaps: tuple
    checked: int

    def to_json(self):
        return {
            "covered": self.covered,
            "checked": self.checked,
            "gaps": [[frac_str(v) for v in p] for p in self.gaps],
        }


def verify_subcover(elements, R, delta, core: BorderedSet) -> CoverReport:
    """Grid check that the elements cover the box outside the core.

    Every grid point of the sup-norm R-box not in the closed core must lie
    in some element's closed gauged region. A desk-scale sanity check of a
    cover claim, not a proof.
    """
    delta = Fraction(frac(delta))
    if delta <= 0:
        raise PreconditionError("grid step must be positive")
    l = core.l
    for e in elements:
        if e.subgroup.dim != l:
            raise PreconditionError("element dimension mismatch with core")
    grid = GridSpec.box(l, Fraction(frac(R)), delta)
    gaps = []
    checked = 0
    for point in grid.points():
        if core.contains(point, closed=True):
            continue
        checked += 1
        if not any(e.contains(point, closed=True) for e in elements):
            gaps.append(point)
    return CoverReport(covered=not gaps, gaps=tuple(gaps), checked=checked)
