from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cuspwatch.errors import DependentInput, NoUniqueLeadingTuple
from cuspwatch.matrix import Mat
from cuspwatch.wedge import (
    WedgeVector,
    apply_wedge_matrix,
    k_subsets,
    leading_tuple,
    plucker,
    wedge_of_vectors,
    wedge_power,
)

F = Fraction


def test_k_subsets_order():
    assert k_subsets(4, 2) == [
        (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)
    ]


def test_plucker_of_coordinate_plane():
    w = plucker([[1, 0, 0, 0], [0, 1, 0, 0]], 4)
    assert w.coeffs == {(1, 2): F(1)}
    assert w.norm_inf() == 1


def test_plucker_scaling_invariance():
    a = plucker([[2, 0, 4], [0, 3, 3]], 3)
    b = plucker([[1, 0, 2], [0, 1, 1]], 3)
    assert a == b or a == b.scale(F(-1))


def test_plucker_rejects_dependent():
    with pytest.raises(DependentInput):
        plucker([[1, 2], [2, 4]], 2)


def test_wedge_of_vectors_raw_minors():
    # non-primitive on purpose: keeps the actual 2x2 minors
    w = wedge_of_vectors([[2, 0, 0], [0, 3, 0]], 3)
    assert w.coeffs == {(1, 2): F(6)}


def test_plucker_relation_holds_for_planes_in_4_space():
    w = plucker([[1, 2, 3, 4], [0, 1, 7, -2]], 4)
    c = w.coeff
    rel = (
        c((1, 2)) * c((3, 4))
        - c((1, 3)) * c((2, 4))
        + c((1, 4)) * c((2, 3))
    )
    assert rel == 0


def test_wedge_power_functorial_on_2x2():
    m = Mat.rationalize([[1, 2], [3, 4]])
    w2 = wedge_power(m, 2)
    assert w2[0, 0] == m.det()


def test_apply_wedge_matrix_matches_wedge_of_images():
    m = Mat.rationalize([[1, 2, 0], [0, 1, 5], [1, 0, 1]])
    rows = [[1, 0, 2], [0, 3, 1]]
    direct = wedge_of_vectors([m.apply(r) for r in rows], 3)
    via = apply_wedge_matrix(m, wedge_of_vectors(rows, 3))
    assert direct == via


def test_leading_tuple():
    w = WedgeVector(4, 2, {(1, 2): F(3), (1, 3): F(2), (2, 3): F(2)})
    assert leading_tuple(w) == (2, 3)
    tie = WedgeVector(4, 2, {(1, 4): F(1), (2, 3): F(1)})
    with pytest.raises(NoUniqueLeadingTuple):
        leading_tuple(tie)


def test_primitive():
    w = WedgeVector(3, 2, {(1, 2): F(4, 3), (1, 3): F(-2, 3)})
    p = w.primitive()
    assert p.coeffs == {(1, 2): F(2), (1, 3): F(-1)}


def test_json_round_trip():
    w = WedgeVector(4, 2, {(1, 2): F(3, 7), (3, 4): F(-1)})
    assert WedgeVector.from_json(w.to_json()) == w


small = st.integers(min_value=-4, max_value=4)


@settings(max_examples=40)
@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=2, max_size=2))
def test_wedge_determinant_compatibility(rows):
    # minor identity: coefficients of the wedge are exactly the 2x2 minors
    w = wedge_of_vectors(rows, 4)
    for (i, j), coeff in w.coeffs.items():
        minor = (
            F(rows[0][i - 1]) * F(rows[1][j - 1])
            - F(rows[0][j - 1]) * F(rows[1][i - 1])
        )
        assert coeff == minor


@settings(max_examples=30)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_full_wedge_is_det(rows):
    m = Mat.rationalize(rows)
    w = wedge_power(m, 3)
    assert w[0, 0] == m.det()
