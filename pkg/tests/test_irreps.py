from __future__ import annotations

import pytest

from conftest import assert_all_pass
from tl2b._ratback import RAT
from tl2b.linalg import exact_det
from tl2b.scalars import derive_params
from tl2b.pathbasis import ModuleRep, build_b1, exceptional_points
from tl2b.irreps import (ExceptionalSpec, central_character, conjecture_cases,
                         conjecture_check, detect_invariant,
                         expected_character, family_relation_audit,
                         make_exceptional_point, murphy_spectrum_match,
                         random_word_traces_agree, traces_agree_all_words)
from tl2b.wordrep import (ModuleSpec, enumerate_basis, generator_matrix,
                          gram_matrix, irrep_dim)


def test_spec_validation():
    ExceptionalSpec(4, 1, 3, -1, 1)
    with pytest.raises(ValueError):
        ExceptionalSpec(4, 1, 2, 1, 1)  # even offset on an even chain
    with pytest.raises(ValueError):
        ExceptionalSpec(3, 1, 0, -1, 1)  # zero offset carries +w1 only


def test_exceptional_point_construction():
    espec = ExceptionalSpec(3, -1, 2, 1, -1)
    point = make_exceptional_point(5, espec)
    assert point.theta_mode == "exceptional"
    assert point.t == espec.tau(point.s, point.a, point.v)
    assert len(point.kernel) == 1
    g = point.kernel[0]
    kv = espec.kernel_vector()
    assert g in (kv, tuple(-x for x in kv))


def test_determinant_vanishes_at_every_exceptional_twist(params):
    for n in (2, 3, 4):
        for (sign, m, e1, e2) in exceptional_points(n):
            espec = ExceptionalSpec(n, sign, m, e1, e2)
            point = make_exceptional_point(1, espec)
            pr = derive_params(point)
            assert exact_det(gram_matrix(ModuleSpec.big(n, pr))) == 0


def test_generic_controls_do_not_vanish(points):
    for point in points:
        pr = derive_params(point)
        for n in (2, 3, 4):
            assert exact_det(gram_matrix(ModuleSpec.big(n, pr)))


def test_block_structure_and_characters():
    for n in (2, 3, 4):
        for (sign, m, e1, e2) in exceptional_points(n)[:6]:
            espec = ExceptionalSpec(n, sign, m, e1, e2)
            point = make_exceptional_point(2, espec)
            pr = derive_params(point)
            basis = build_b1(ModuleRep(ModuleSpec.big(n, pr)))
            pair = detect_invariant(basis, espec)
            d_sub, d_quo = pair.dims
            assert d_sub == irrep_dim(n, m)
            assert d_sub + d_quo == 1 << n
            assert_all_pass(family_relation_audit(pair.sub, pr))
            assert_all_pass(family_relation_audit(pair.quo, pr))
            lam_sub, err = central_character(pair.sub, point)
            assert err is None
            lam_quo, err = central_character(pair.quo, point)
            assert err is None
            assert lam_sub == lam_quo == expected_character(
                point, n, espec.theta_exponent())


def test_boundary_block_degeneration():
    # at the twist the right-boundary two-by-two block loses its upper
    # corner and its surviving diagonal entry is exactly s2
    from tl2b.scalars import HalfExponent, OMEGA1
    from tl2b.pathbasis import k_coeff

    espec = ExceptionalSpec(4, 1, 1, 1, 1)
    point = make_exceptional_point(1, espec)
    pr = derive_params(point)
    u = OMEGA1 + HalfExponent.integer(-1)
    assert not k_coeff(-u, point)
    assert k_coeff(u, point) == pr.s2


def test_detect_invariant_rejects_generic_point(params):
    basis = build_b1(ModuleRep(ModuleSpec.big(3, params)))
    espec = ExceptionalSpec(3, 1, 0, 1, 1)
    with pytest.raises(ArithmeticError):
        detect_invariant(basis, espec)


def test_central_character_reports_nonscalar(params):
    # a direct sum of modules with different central scalars is detected
    from tl2b.linalg import Matrix

    spec_a = ModuleSpec.through_lines(3, 2, 1, 1, params)
    spec_b = ModuleSpec.through_lines(3, 0, 1, 1, params)
    fam = {}
    for i in range(4):
        ma = generator_matrix(spec_a, i)
        mb = generator_matrix(spec_b, i)
        da, db = ma.nrows, mb.nrows
        rows = [row + [0] * db for row in ma.rows]
        rows += [[0] * da + row for row in mb.rows]
        fam[i] = Matrix(rows)
    lam, err = central_character(fam, params.point)
    assert lam is None and err is not None


def test_explicit_n2_example():
    # the twist with opposite wall signs: the invariant vector in
    # half-diagram coordinates is )( - s1 ((, and the one-dimensional
    # block acts by (0, 0, s2)
    espec = ExceptionalSpec(2, 1, 1, 1, -1)
    point = make_exceptional_point(1, espec)
    pr = derive_params(point)
    assert pr.b_for(2) == pr.s1
    spec = ModuleSpec.big(2, pr)
    basis = build_b1(ModuleRep(spec))
    pair = detect_invariant(basis, espec)
    assert pair.dims == (1, 3)
    assert pair.sub[0].rows == [[0]]
    assert pair.sub[1].rows == [[0]]
    assert pair.sub[2].rows == [[pr.s2]]
    [top_path] = pair.sub_paths
    vec = basis.vectors[top_path]
    labels = [h.pattern for h in enumerate_basis(spec)]
    coeff = {lab: x for lab, x in zip(labels, vec)}
    scale = coeff[")("]
    assert scale
    assert coeff["(("] == -pr.s1 * scale
    assert not coeff["))"] and not coeff["()"]
    # and the through-line module with one line realises the same action
    lines = ModuleSpec.through_lines(2, 1, 1, -1, pr)
    mats = [generator_matrix(lines, i) for i in range(3)]
    assert mats[0].is_zero() and mats[1].is_zero()
    assert mats[2].rows == [[pr.s2]]


def test_trace_engine_detects_difference(params):
    fam_a = {i: generator_matrix(ModuleSpec.big(2, params), i)
             for i in range(3)}
    fam_b = dict(fam_a)
    fam_b[2] = fam_b[2].scale(RAT(2))
    agree, _ = traces_agree_all_words(fam_a, fam_b)
    assert not agree
    assert not random_word_traces_agree(fam_a, fam_b, 32, 6, seed=3)
    agree, words = traces_agree_all_words(fam_a, fam_a)
    assert agree and words >= 4


def test_conjecture_cases_lists():
    assert (1, -1, -1) not in conjecture_cases(2)
    assert (0, 1, 1) in conjecture_cases(3)
    assert all(n % 2 == 1 for (n, _e1, _e2) in conjecture_cases(4))


def test_conjecture_small():
    for n_sites in (2, 3):
        for (n, e1, e2) in conjecture_cases(n_sites):
            report = conjecture_check(n_sites, n, e1, e2, seed=1)
            assert report["verdict"] == "equivalent"
            assert report["dims"]["lines_module"] == irrep_dim(n_sites, n)


def test_murphy_spectrum_match_negative(params, point):
    spec = ModuleSpec.big(2, params)
    fam = {i: generator_matrix(spec, i) for i in range(3)}
    from tl2b.pathbasis import path_order

    wrong_paths = [path_order(2)[0]]  # too few paths for the dimension
    assert not murphy_spectrum_match(fam, point, wrong_paths)
