from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cuspwatch.bordered import BorderedSet, Gauge
from cuspwatch.chars import Character, SubgroupSpec
from cuspwatch.cover import (
    build_cover,
    enumerate_local,
    good_restrictions,
    independent_selection,
    verify_subcover,
)
from cuspwatch.errors import PreconditionError
from cuspwatch.loglin import LogLin
from cuspwatch.matrix import Mat
from cuspwatch.radicals import radical_from_subspace

F = Fraction

A2 = SubgroupSpec.full_torus(2)
I2 = Mat.identity(2)
UP = radical_from_subspace([[1, 0]], 2)
LO = radical_from_subspace([[0, 1]], 2)
MIX = radical_from_subspace([[1, 1]], 2)


def test_build_cover_sl2_shapes():
    g = Mat.rationalize([[2, 0], [0, "1/2"]])
    up, lo, mix = build_cover(g, A2, [UP, LO, MIX])
    # default gauge slope: half the separation constant of {(-2,), (2,)}
    assert up.gauge == Gauge.linear(F(1, 2))
    assert [p.canonical() for p in up.psi] == [(-1, 1)]
    assert up.norms == (F(4),) and up.restr == ((F(-2),),)
    assert (up.d_values()[0] - LogLin.log(4)).is_zero()
    assert lo.norms == (F(1, 4),) and lo.restr == ((F(2),),)
    # a slanted line meets three weight lines; the constant one becomes
    # a ball condition instead of a bordered constraint
    assert mix.norms == (F(1, 4), F(1), F(4))
    assert [(p.canonical(), nu) for p, nu in mix.zero_psi] == [((0, 0), F(1))]
    assert mix.restricted is not None and len(mix.restricted.phi) == 2


def test_contains_matches_is_active():
    g = Mat.rationalize([[2, 0], [0, "1/2"]])
    for e in build_cover(g, A2, [UP, LO, MIX]):
        for k in range(-8, 9):
            s = (F(k, 2),)
            assert e.contains(s) == e.is_active(s)
            assert e.contains(s, closed=True) == e.is_active(s, strict=False)


def test_upper_line_region_boundary():
    g = Mat.rationalize([[2, 0], [0, "1/2"]])
    e = build_cover(g, A2, [UP])[0]
    assert e.contains((F(-2),)) and e.contains((F(-1),))
    assert not e.contains((F(0),)) and not e.contains((F(1),))


def test_zero_gauge_element():
    e = build_cover(I2, A2, [MIX], C0=0)[0].zero_gauge()
    assert e.gauge == Gauge.zero()
    # at the origin every margin is exactly zero: closed-only membership
    assert not e.contains((F(0),))
    assert e.contains((F(0),), closed=True)
    assert not e.contains((F(1),), closed=True)


def test_build_cover_rejects_empty():
    with pytest.raises(PreconditionError):
        build_cover(I2, A2, [])


def test_enumerate_local_frozen():
    loc = enumerate_local(I2, A2, 1, 0, 3)
    assert [w.rows for w in loc] == [
        ((1, 0),), ((-1, 1),), ((1, 1),), ((0, 1),),
    ]
    # at the origin the same four closed regions are the ones present
    assert [w.rows for w in enumerate_local(I2, A2, 0, 0, 3)] == [
        ((1, 0),), ((-1, 1),), ((1, 1),), ((0, 1),),
    ]
    # relaxing the cut admits every line of height <= 3
    assert len(enumerate_local(I2, A2, 1, -2, 3)) == 16
    with pytest.raises(PreconditionError):
        enumerate_local(I2, A2, -1, 0, 3)


def test_enumerate_local_counts_stabilize():
    # once the box bound passes the witness heights, growing H adds nothing
    base = [w.rows for w in enumerate_local(I2, A2, 1, 0, 3)]
    for H in (4, 5):
        assert [w.rows for w in enumerate_local(I2, A2, 1, 0, H)] == base


def test_good_restrictions():
    plane = SubgroupSpec(4, ((1, 0, 0, -1), (0, 1, -1, 0)))
    bad = [Character((1, -1, 0, 0)), Character((0, 0, 1, -1))]
    ok, violating = good_restrictions(plane, bad, 2)
    assert not ok and set(violating) == set(bad)
    roots = [
        Character(tuple(1 if k == i else (-1 if k == j else 0) for k in range(3)))
        for i in range(3) for j in range(3) if i != j
    ]
    assert good_restrictions(SubgroupSpec.full_torus(3), roots, 2) == (True, None)
    assert good_restrictions(plane, bad, 0) == (True, None)


def test_verify_subcover():
    cov = build_cover(I2, A2, [UP, LO], C0=-1, gauge=Gauge.zero())
    far_core = BorderedSet(1, (((1,), 10),), Gauge.zero())
    rep = verify_subcover(cov, 2, F(1, 2), far_core)
    assert rep.covered and rep.checked == 9 and rep.gaps == ()
    # dropping the lower line leaves the forward half of the box exposed
    rep1 = verify_subcover(cov[:1], 2, F(1, 2), far_core)
    assert not rep1.covered
    assert rep1.gaps == ((F(1),), (F(3, 2),), (F(2),))
    # a core absorbing the exposed part restores the cover
    core = BorderedSet(1, (((1,), F(1, 2)),), Gauge.zero())
    rep2 = verify_subcover(cov[:1], 2, F(1, 2), core)
    assert rep2.covered and rep2.checked == 5
    with pytest.raises(PreconditionError):
        verify_subcover(cov, 2, 0, far_core)


def test_independent_selection():
    A3 = SubgroupSpec.full_torus(3)
    I3 = Mat.identity(3)
    line = radical_from_subspace([[1, 0, 0]], 3)
    plane = radical_from_subspace([[1, 0, 0], [0, 1, 0]], 3)
    cov = build_cover(I3, A3, [line, plane], C0=0, gauge=Gauge.zero())
    sel = independent_selection(cov)
    assert [p.canonical() for p in sel] == [(-2, 1, 1), (-1, -1, 2)]
    assert independent_selection(cov, mode="ambient") == sel
    # a rank-one subgroup cannot carry two independent restrictions
    two = build_cover(I2, A2, [UP, LO], C0=0, gauge=Gauge.zero())
    assert independent_selection(two) is None
    assert independent_selection([]) == ()
    with pytest.raises(PreconditionError):
        independent_selection(cov, mode="sideways")


@settings(max_examples=20, deadline=None)
@given(st.integers(-4, 4), st.integers(1, 4))
def test_region_scales_with_norm(k, denom):
    # conjugating by a deeper diagonal inflates the upper-line norm and
    # shifts its activity region backward; membership stays consistent
    t = F(k, denom)
    g = Mat.rationalize([[2, 0], [0, "1/2"]])
    e = build_cover(g, A2, [UP], gauge=Gauge.zero())[0]
    # region is exactly {-2s >= log 4}
    expected = -2 * t - LogLin.log(4)
    assert e.contains((t,)) == (expected.sign() > 0)
