from __future__ import annotations

import pytest

from conftest import assert_all_pass
from tl2b.diagrams import HalfDiagram
from tl2b.linalg import exact_det
from tl2b.wordrep import (ModuleSpec, ballot, bilinear, enumerate_basis,
                          generator_matrix, gram_det_bruteforce, gram_matrix,
                          idempotent_words, irrep_dim, relation_audit,
                          word_matrix)


def test_ballot_values():
    assert ballot(2, 0) == 2
    assert ballot(4, 2) == 4
    assert ballot(3, 2) == 0  # parity
    assert ballot(2, 4) == 0
    assert ballot(4, -2) == ballot(4, 2)


def test_no_boundary_count_matches_enumeration():
    # sequences over () with n through lines and no wall connections
    count = 0
    for h in _all_halves(4):
        if h.n_left == 0 and h.n_right == 0 and h.n_through == 0:
            count += 1
    assert count == ballot(4, 0) - ballot(4, 2) == 2


def _all_halves(n):
    from itertools import product

    from tl2b.diagrams import InvalidDiagramError

    for chars in product(")(|", repeat=n):
        try:
            yield HalfDiagram("".join(chars))
        except InvalidDiagramError:
            continue


def test_irrep_dims():
    assert irrep_dim(3, 0) == 4
    assert irrep_dim(2, 1) == 1
    assert irrep_dim(5, 1) + irrep_dim(5, 3) == irrep_dim(6, 2)
    for m in (3, 5, 7, 9):
        assert irrep_dim(m, 0) == 1 << (m - 1)


def test_dimension_tables(params):
    for n in range(2, 11):
        start = 1 if n % 2 == 0 else 0
        for nn in range(start, n + 1, 2):
            for e1 in (1, -1):
                for e2 in (1, -1):
                    if not 1 <= nn + (e1 + e2) // 2 <= n:
                        continue
                    if nn == 0 and (e1, e2) != (1, 1):
                        continue
                    spec = ModuleSpec.through_lines(n, nn, e1, e2, params)
                    assert len(enumerate_basis(spec)) == irrep_dim(n, nn)
        big = ModuleSpec.big(n, params)
        assert len(enumerate_basis(big)) == 1 << n


def test_explicit_small_bases(params):
    big2 = ModuleSpec.big(2, params)
    assert [str(h) for h in enumerate_basis(big2)] == ["))", ")(*", "()", "(("]
    lines = ModuleSpec.through_lines(3, 0, 1, 1, params)
    assert [h.pattern for h in enumerate_basis(lines)] == \
        ["))|", "()|", "|()", "|(("]
    assert len(enumerate_basis(ModuleSpec.big(3, params))) == 8


def test_inner_product_examples(params):
    spec = ModuleSpec.through_lines(4, 1, 1, 1, params)
    h = HalfDiagram
    assert bilinear(h("|()|"), h("()||"), spec) == 1
    assert bilinear(h("()||"), h("()||"), spec) == params.delta
    assert bilinear(h("||()"), h("()||"), spec) == 0


def test_explicit_gram_matrix_n2(params):
    spec = ModuleSpec.big(2, params)
    basis = enumerate_basis(spec)
    index = {h.pattern: k for k, h in enumerate(basis)}
    order = [index["()"], index["))"], index["(("], index[")("]]
    g = gram_matrix(spec)
    b, d, s1, s2 = spec.b, params.delta, params.s1, params.s2
    expected = [[d, 1, 1, b],
                [1, s1, b, s1 * b],
                [1, b, s2, s2 * b],
                [b, s1 * b, s2 * b, s1 * s2 * b]]
    for i, ei in enumerate(order):
        for j, ej in enumerate(order):
            assert g.rows[ei][ej] == expected[i][j]
    det = exact_det(g)
    assert det == b * (b - s1) * (b - s2) * (b - s1 - s2 + d * s1 * s2)


def test_gram_symmetric_and_intertwining(params):
    for spec in (ModuleSpec.big(3, params),
                 ModuleSpec.through_lines(4, 1, 1, -1, params),
                 ModuleSpec.through_lines(3, 0, 1, 1, params)):
        g = gram_matrix(spec)
        assert g == g.transpose()
        for i in range(spec.n_sites + 1):
            e = generator_matrix(spec, i)
            assert g @ e == e.transpose() @ g


def test_lines_module_gram_nondegenerate(params):
    spec = ModuleSpec.through_lines(3, 0, 1, 1, params)
    assert gram_det_bruteforce(spec)


def test_relation_audit_passes(params):
    for n in (2, 3, 4, 5):
        assert_all_pass(relation_audit(ModuleSpec.big(n, params)))
    assert_all_pass(relation_audit(ModuleSpec.through_lines(4, 1, -1, 1, params)))


def test_relation_audit_negative_control(params):
    # an e_N built by the composition rules squares to the true s2, not to
    # a corrupted one
    spec = ModuleSpec.big(3, params)
    e_n = generator_matrix(spec, 3)
    assert (e_n @ e_n - e_n.scale(params.s2)).is_zero()
    assert not (e_n @ e_n - e_n.scale(params.s2 + 1)).is_zero()


def test_centre_scalar_negative_control(params):
    # tying the wrong horizontal-line weight to the twist breaks the
    # central scalar, which is the only place the tie is observable
    from tl2b.hecke import centre_audit

    spec = ModuleSpec.big(3, params, b=params.b_for(3) + 1)
    records = centre_audit(spec)
    bad = {r["identity_id"] for r in records if r["status"] == "fail"}
    assert "centre.scalar" in bad


def test_idempotent_annihilation_on_lines_modules(params):
    for n, nn, e1, e2 in [(3, 2, 1, 1), (4, 1, 1, -1), (5, 2, -1, -1)]:
        spec = ModuleSpec.through_lines(n, nn, e1, e2, params)
        w1, w2 = idempotent_words(n)
        assert word_matrix(spec, w1).is_zero()
        assert word_matrix(spec, w2).is_zero()


def test_generator_matrix_example(params):
    spec = ModuleSpec.big(2, params)
    basis = enumerate_basis(spec)
    col = {h.pattern: k for k, h in enumerate(basis)}[")("]
    e0 = generator_matrix(spec, 0)
    assert e0.rows[col][col] == params.s1


def test_invalid_module_specs(params):
    with pytest.raises(ValueError):
        ModuleSpec.through_lines(3, 1, 1, 1, params)  # wrong parity
    with pytest.raises(ValueError):
        ModuleSpec.through_lines(2, 1, -1, -1, params)  # no through lines
    with pytest.raises(ValueError):
        ModuleSpec.through_lines(3, 2, 1, 2, params)
