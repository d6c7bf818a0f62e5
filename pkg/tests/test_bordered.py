import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cuspwatch.bordered import (
    BorderedSet,
    ConvexSpec,
    Functional,
    Gauge,
    conjunction,
    contract_step,
    epsilon_bound,
    intersect_nonempty,
    invdim,
    is_bounded,
    is_k_trivial,
    positively_nontrivial,
)
from cuspwatch.errors import GaugeTooSteep, PreconditionError
from cuspwatch.loglin import LogLin

F = Fraction


# ---------------------------------------------------------------- gauges

def test_gauge_values():
    assert Gauge.zero()(F(7)) == 0
    assert Gauge.linear(F(1, 2))(F(3)) == F(3, 2)
    g = Gauge.tabulated([(0, 0), (1, 0), (3, 1)])
    assert g(F(1, 2)) == 0
    assert g(2) == F(1, 2)
    assert g(5) == 2        # last segment slope continues
    with pytest.raises(PreconditionError):
        Gauge.linear(F(-1, 3))
    with pytest.raises(PreconditionError):
        Gauge.tabulated([(1, 0), (2, 1)])   # must start at the origin
    with pytest.raises(PreconditionError):
        Gauge.tabulated([(0, 0), (2, 1), (1, 2)])
    with pytest.raises(PreconditionError):
        Gauge.zero()(F(-1))


def test_bordered_set_validation():
    with pytest.raises(PreconditionError):
        BorderedSet(2, (((0, 0), 0),), Gauge.zero())
    with pytest.raises(PreconditionError):
        BorderedSet(2, (((1, 0, 0), 0),), Gauge.zero())
    with pytest.raises(PreconditionError):
        BorderedSet(2, (), Gauge.zero())


def test_membership_and_margins():
    U = BorderedSet(2, (((1, 0), 0), ((0, 1), 0)), Gauge.linear(F(1, 4)))
    assert U.contains((F(2), F(3)))          # margins 2-3/4, 3-3/4
    assert not U.contains((F(1, 4), F(3)))   # first margin hits -1/2
    assert not U.contains((F(0), F(1)))
    assert U.zero_gauge().contains((F(0), F(1)), closed=True)
    assert U.margins((F(2), F(3))) == [F(5, 4), F(9, 4)]
    assert U.rho((F(2), F(3))) == F(5, 4)


def test_loglin_constants_are_first_class():
    U = BorderedSet(1, (((1,), LogLin.log(2)),), Gauge.zero())
    assert U.contains((F(1),))
    assert not U.contains((F(1, 2),))
    m = U.margins((F(1),))[0]
    assert isinstance(m, LogLin) and m.sign() == 1


def test_conjunction_pools_constraints():
    a = BorderedSet(2, (((1, 0), 0),), Gauge.linear(F(1, 8)))
    b = BorderedSet(2, (((0, 1), 1),), Gauge.linear(F(1, 8)))
    c = conjunction([a, b])
    assert len(c.phi) == 2 and c.gauge == a.gauge
    assert c.contains((F(3), F(3)))
    with pytest.raises(PreconditionError):
        conjunction([a, b.zero_gauge()])
    with pytest.raises(PreconditionError):
        conjunction([a, BorderedSet(1, (((1,), 0),), Gauge.linear(F(1, 8)))])


# --------------------------------------------- positive alternative

def test_positive_alternative_branches():
    ok, v = positively_nontrivial([(1, 0), (0, 1)])
    assert ok and v == (F(1), F(1))
    ok, v = positively_nontrivial([(2, 1), (1, 2)])
    assert ok and v == (F(1), F(1))
    ok, lam = positively_nontrivial([(1, -1), (-1, 1)])
    assert not ok and lam == (F(1), F(1))
    ok, lam = positively_nontrivial([(1, 1), (-1, 0), (0, -1)])
    assert not ok and lam == (F(1), F(1), F(1))


@settings(max_examples=60, deadline=None)
@given(st.lists(
    st.tuples(st.integers(-2, 2), st.integers(-2, 2)).filter(lambda t: any(t)),
    min_size=1, max_size=4,
))
def test_positive_alternative_certificates(system):
    fs = [Functional.of(f) for f in system]
    ok, cert = positively_nontrivial(system)
    if ok:
        assert all(f(cert) > 0 for f in fs)
    else:
        assert all(c >= 0 for c in cert) and any(c > 0 for c in cert)
        for d in range(2):
            assert sum(c * f.coeffs[d] for c, f in zip(cert, fs)) == 0


# ------------------------------------------------- separation constant

def test_epsilon_bound_frozen():
    assert epsilon_bound([(1, 0), (0, 1)]) == F(1, 2)
    assert epsilon_bound([(1, 0)]) == F(1, 2)
    assert epsilon_bound([(1, 1), (1, -1)]) == F(1, 2)
    assert epsilon_bound([(1, 2)]) == F(5, 4)
    assert epsilon_bound([(1, 0), (0, 1), (-1, -1)]) == F(1, 4)
    assert epsilon_bound([(2, 0), (0, 1)]) == F(1, 2)


def test_epsilon_bound_scaling_down():
    # shrinking a functional shrinks how far the dead cone sits from zero
    assert epsilon_bound([(F(1, 3), 0), (0, 1)]) == F(1, 6)


def test_is_bounded():
    tri = BorderedSet(2, (((1, 0), 0), ((0, 1), 0), ((-1, -1), -2)),
                      Gauge.linear(F(1, 8)))
    assert is_bounded(tri)
    quad = BorderedSet(2, (((1, 0), 0), ((0, 1), 0)), Gauge.zero())
    assert not is_bounded(quad)
    with pytest.raises(GaugeTooSteep):
        is_bounded(BorderedSet(2, tri.phi, Gauge.linear(F(1, 4))))


# ------------------------------------------------ invariance dimension

def test_invdim_bordered():
    strip = BorderedSet(2, (((1, 0), 0), ((-1, 0), -1)), Gauge.zero())
    assert invdim(strip) == 1
    empty = BorderedSet(1, (((1,), 1), ((-1,), 1)), Gauge.zero())
    assert invdim(empty) == -math.inf
    with pytest.raises(PreconditionError):
        invdim(BorderedSet(1, (((1,), 0),), Gauge.linear(F(1, 4))))


STRIP = ConvexSpec(points=((0, 0),), rays=((0, 1), (0, -1)))
HALF = ConvexSpec(points=((0, 0),), rays=((0, 1), (0, -1), (1, 0)))
BOX = ConvexSpec(points=((0, 0), (1, 0), (0, 1), (1, 1)))
CYL = ConvexSpec(points=((0, 0, 0), (1, 0, 0), (0, 1, 0)),
                 rays=((0, 0, 1), (0, 0, -1)))


def test_invdim_convex():
    assert invdim(STRIP) == 1
    assert invdim(HALF) == 1    # the forward ray is not reversible
    assert invdim(BOX) == 0
    assert invdim(CYL) == 1
    assert invdim(ConvexSpec()) == -math.inf


def test_k_triviality_fixtures():
    assert is_k_trivial(STRIP, 1) is False
    assert is_k_trivial(STRIP, 2) is True
    assert is_k_trivial(HALF, 1) is True
    assert is_k_trivial(BOX, 1) is True
    assert is_k_trivial(CYL, 1) is False
    assert is_k_trivial(CYL, 2) is True
    assert is_k_trivial(ConvexSpec(), 1) is True
    with pytest.raises(PreconditionError):
        is_k_trivial(STRIP, 3)
    with pytest.raises(PreconditionError):
        is_k_trivial(BorderedSet(1, (((1,), 0),), Gauge.zero()), 1)


# ------------------------------------------------------- contraction

def test_contract_step_trajectory():
    U = BorderedSet(2, (((1, 0), 0), ((0, 1), 0), ((-1, -1), -2)),
                    Gauge.linear(F(1, 8)))
    x = (F(-1), F(3))
    assert contract_step(U, x, 0) == x
    assert contract_step(U, x, F(1, 2)) == (F(2, 3), F(2, 3))
    assert contract_step(U, x, 1) == (F(2, 3), F(2, 3))
    depths = [U.rho(contract_step(U, x, F(k, 16))) for k in range(17)]
    for a, b in zip(depths, depths[1:]):
        assert b >= a
    assert U.contains(contract_step(U, x, 1))


def test_contract_step_rejects():
    U = BorderedSet(2, (((1, 0), 0), ((0, 1), 0)), Gauge.zero())
    with pytest.raises(PreconditionError):
        contract_step(U, (F(0), F(0)), F(1, 2))   # unbounded region
    tri = BorderedSet(2, (((1, 0), 0), ((0, 1), 0), ((-1, -1), -2)),
                      Gauge.zero())
    with pytest.raises(PreconditionError):
        contract_step(tri, (F(0), F(0)), F(3, 2))


# ------------------------------------------------------- intersection

def test_intersect_nonempty():
    a = BorderedSet(1, (((1,), 0),), Gauge.zero())
    b = BorderedSet(1, (((-1,), -1),), Gauge.zero())
    ok, pt = intersect_nonempty([a, b])
    assert ok and a.contains(pt) and b.contains(pt)
    c = BorderedSet(1, (((1,), 1),), Gauge.zero())
    d = BorderedSet(1, (((-1,), 0),), Gauge.zero())
    assert intersect_nonempty([c, d]) == (False, None)
    # touching along a face only: the open conjunction is empty
    e = BorderedSet(1, (((1,), 0),), Gauge.zero())
    f = BorderedSet(1, (((-1,), 0),), Gauge.zero())
    assert intersect_nonempty([e, f]) == (False, None)
