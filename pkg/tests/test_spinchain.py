from __future__ import annotations

import random

from conftest import assert_all_pass
from tl2b._ratback import RAT
from tl2b.scalars import OMEGA1, OMEGA2, ONE, THETA
from tl2b.spinchain import (SpinRep, ebar, ebar_identities, equivalence_audit,
                            spin_generator, spin_relation_audit,
                            spin_vector_to_json, twist_symmetry_audit)


def _unit(dim, j):
    out = [0] * dim
    out[j] = 1
    return out


def test_bulk_local_action(point):
    # two-site blocks: the projector form, with aligned pairs annihilated
    rep = SpinRep(2, point)
    q = point.q_power(ONE)
    up_down = 0b10
    down_up = 0b01
    image = rep.apply_e(1, _unit(4, up_down))
    assert image[up_down] == 1 / q and image[down_up] == -1
    image = rep.apply_e(1, _unit(4, down_up))
    assert image[down_up] == q and image[up_down] == -1
    assert not any(rep.apply_e(1, _unit(4, 0b11)))
    assert not any(rep.apply_e(1, _unit(4, 0b00)))


def test_boundary_local_action(point, params):
    rep = SpinRep(1, point)
    e0 = spin_generator(0, 1, point)
    assert e0.rows[1][1] + e0.rows[0][0] == params.s1  # trace
    e1 = spin_generator(1, 1, point)
    assert e1.rows[1][1] + e1.rows[0][0] == params.s2
    # the twist enters only the right boundary off-diagonal entries
    up, down = 1, 0
    d2 = point.q_power(ONE + OMEGA2) - point.q_power(-(ONE + OMEGA2))
    assert e1.rows[down][up] == point.q_power(-THETA) / d2


def test_relations(points):
    from tl2b.scalars import derive_params

    for point in points:
        params = derive_params(point)
        for n in (2, 3, 4, 5):
            assert_all_pass(spin_relation_audit(n, point, params))


def test_twist_symmetry(point):
    for n in (2, 3, 4):
        assert_all_pass(twist_symmetry_audit(n, point))


def test_dense_equals_local(point):
    rng = random.Random(5)
    for n in (2, 3, 4, 5, 6):
        rep = SpinRep(n, point)
        for i in (0, 1, n - 1, n):
            dense = rep.e_matrix(i)
            vec = [RAT(rng.randrange(-9, 10), rng.randrange(1, 7))
                   for _ in range(rep.dim)]
            assert dense.apply(vec) == rep.apply_e(i, vec)


def test_ebar_shape(point):
    vec1 = ebar(1, point)
    # single site: q^-w1 on up, 1 on down
    assert vec1[1] == point.q_power(-OMEGA1) and vec1[0] == 1
    vec2 = ebar(2, point)
    assert vec2[0b11] == point.q_power(-OMEGA1) * point.q_power(ONE + OMEGA1)
    assert vec2[0b00] == 1


def test_ebar_identities(points):
    from tl2b.scalars import derive_params

    for point in points:
        params = derive_params(point)
        for n in (2, 3, 4, 5):
            assert_all_pass(ebar_identities(n, point, params))


def test_equivalence(params, point):
    for n in (2, 3, 4):
        assert_all_pass(equivalence_audit(n, point, params))


def test_spin_vector_json(point):
    data = spin_vector_to_json(ebar(2, point), 2)
    assert set(data) == {"00", "01", "10", "11"}
    assert data["00"] == "1"
    sparse = spin_vector_to_json([0, point.one, 0, 0], 2)
    assert list(sparse) == ["01"]
