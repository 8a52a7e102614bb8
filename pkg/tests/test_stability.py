import random
from fractions import Fraction

import pytest

from relroots import (InputError, QComplex, RatPoly, SchurCohnHypothesisError,
                      find_roots)
from relroots.stability import (BASE_ROOT_BOX, RATIO_BOX_K7, RATIO_BOX_K9,
                                BoxPoly, ParamBox, certificate_pencil,
                                kth_root_ratio_box, schur_cohn,
                                schur_cohn_box)
from relroots.intervals import QComplexInterval, QInterval


def test_exact_linear_cases():
    rep = schur_cohn(RatPoly([-2, 1]))  # root at 2
    assert rep.signs == ("-",) and rep.beta == 1
    rep = schur_cohn(RatPoly([Fraction(-1, 2), 1]))  # root at 1/2
    assert rep.signs == ("+",) and rep.beta == 0


def test_exact_counts_match_solver_products():
    # (q-2)(q-3): both outside
    rep = schur_cohn(RatPoly([6, -5, 1]))
    assert rep.beta == 2
    # (q-2)(q-1/3): one of each
    rep = schur_cohn(RatPoly([Fraction(2, 3), Fraction(-7, 3), 1]))
    assert rep.beta == 1
    # (q-1/2)(q-1/3): both inside
    rep = schur_cohn(RatPoly([Fraction(1, 6), Fraction(-5, 6), 1]))
    assert rep.beta == 0


def test_exact_hypothesis_failure():
    # root exactly on the unit circle
    with pytest.raises(SchurCohnHypothesisError):
        schur_cohn(RatPoly([-1, 1]))
    with pytest.raises(InputError):
        schur_cohn(RatPoly.zero())


def test_pencil_reduction_and_m1_closed_form():
    pen = certificate_pencil(3)
    # spRel/(1-q) = 2q, Rel/(1-q) = 1-q
    assert pen.split_reduced == RatPoly([0, 2])
    assert pen.rel_reduced == RatPoly([1, -1])
    # M_1((a,b)) = 4a+4: both sides are degree-1 polynomials in a and
    # constant in b, so agreement at two points proves the identity.
    for a, b in ((Fraction(0), Fraction(0)), (Fraction(1), Fraction(5)),
                 (Fraction(-3, 2), Fraction(7))):
        coeffs = pen.exact_poly(a, b)
        lead, const = coeffs[1], coeffs[0]
        m1 = lead.abs2() - const.abs2()
        assert m1 == 4 * a + 4


def test_pencil_divisibility_all_orders():
    from relroots import rel_complete_minus_edge, sprel_complete_minus_edge
    for n in range(3, 7):
        pen = certificate_pencil(n)
        one_minus_q = RatPoly([1, -1])
        assert pen.split_reduced * one_minus_q ** (n - 2) == sprel_complete_minus_edge(n)
        assert pen.rel_reduced * one_minus_q ** (n - 2) == rel_complete_minus_edge(n)
        assert pen.degree == (n - 1) * (n - 2) // 2


def test_box_certificates_published_boxes():
    rep = schur_cohn_box(certificate_pencil(3).box_poly(RATIO_BOX_K9))
    assert rep.signs == ("-",) and rep.beta == 1

    rep = schur_cohn_box(certificate_pencil(4).box_poly(RATIO_BOX_K7))
    assert rep.signs == ("+", "+", "-") and rep.beta == 1
    assert rep.subdivision_depth <= 12


def test_box_certificate_wide_box_indeterminate():
    # M_1 = 4a+4 straddles zero over a in [-2, 2] no matter how far we split
    bp = certificate_pencil(3).box_poly(ParamBox.of(-2, 2, 0, 1))
    rep = schur_cohn_box(bp, max_depth=3)
    assert not rep.determinate and rep.beta is None


def test_box_subdivision_consistent_with_parent():
    pen = certificate_pencil(4)
    parent = RATIO_BOX_K7
    rep_parent = schur_cohn_box(pen.box_poly(parent))
    assert rep_parent.determinate
    for child in parent.split():
        rep_child = schur_cohn_box(pen.box_poly(child))
        assert rep_child.signs == rep_parent.signs


def test_box_poly_direct_interval_path():
    # a bare BoxPoly (no pencil attached) goes through interval elimination
    coeffs = (QComplexInterval.point(-2, 0), QComplexInterval.point(1, 0))
    rep = schur_cohn_box(BoxPoly(coeffs=coeffs))
    assert rep.signs == ("-",) and rep.beta == 1

    widened = (QComplexInterval(QInterval.of(-3, -2), QInterval.point(0)),
               QComplexInterval.point(1, 0))
    rep = schur_cohn_box(BoxPoly(coeffs=widened))
    assert rep.signs == ("-",) and rep.beta == 1

    # a coefficient interval allowing a root exactly on the circle must
    # come back undecided
    on_circle = (QComplexInterval(QInterval.of(-3, -1), QInterval.point(0)),
                 QComplexInterval.point(1, 0))
    rep = schur_cohn_box(BoxPoly(coeffs=on_circle))
    assert not rep.determinate


def test_interval_and_pencil_paths_agree():
    # The direct elimination path overestimates (it cannot see that all
    # coefficient intervals share one parameter), so compare only where it
    # is determinate; on a bare BoxPoly there is no box to subdivide.
    pen = certificate_pencil(4)
    bp = pen.box_poly(RATIO_BOX_K7)
    bare = BoxPoly(coeffs=bp.coeffs)  # strip the pencil shortcut
    rep_direct = schur_cohn_box(bare)
    rep_pencil = schur_cohn_box(bp)
    assert rep_pencil.determinate
    decided = [(s, p) for s, p in zip(rep_direct.signs, rep_pencil.signs) if s != "?"]
    assert decided and all(s == p for s, p in decided)


def test_ratio_boxes_contained_in_published():
    args = (BASE_ROOT_BOX.a_lo, BASE_ROOT_BOX.a_hi, BASE_ROOT_BOX.b_lo, BASE_ROOT_BOX.b_hi)
    assert RATIO_BOX_K9.contains(kth_root_ratio_box(*args, 9))
    assert RATIO_BOX_K7.contains(kth_root_ratio_box(*args, 7))


def test_ratio_box_point_and_errors():
    box = kth_root_ratio_box(Fraction(1, 2), Fraction(1, 2), 0, 0, 1)
    assert box.a_lo <= 1 <= box.a_hi
    assert abs(box.a_hi - box.a_lo) < Fraction(1, 10 ** 20)
    assert box.b_lo <= 0 <= box.b_hi
    with pytest.raises(InputError):
        kth_root_ratio_box(Fraction(1, 2), Fraction(3, 2), Fraction(-1), Fraction(1), 1)
    with pytest.raises(InputError):
        kth_root_ratio_box(Fraction(-1), Fraction(1), Fraction(-1), Fraction(1), 3)


def test_ratio_box_encloses_sampled_images():
    import mpmath as mp
    args = (BASE_ROOT_BOX.a_lo, BASE_ROOT_BOX.a_hi, BASE_ROOT_BOX.b_lo, BASE_ROOT_BOX.b_hi)
    for k in (6, 7, 9):
        box = kth_root_ratio_box(*args, k)
        rng = random.Random(k)
        with mp.workprec(120):
            for _ in range(200):
                re = BASE_ROOT_BOX.a_lo + Fraction(rng.random()).limit_denominator(10 ** 6) \
                    * (BASE_ROOT_BOX.a_hi - BASE_ROOT_BOX.a_lo)
                im = BASE_ROOT_BOX.b_lo + Fraction(rng.random()).limit_denominator(10 ** 6) \
                    * (BASE_ROOT_BOX.b_hi - BASE_ROOT_BOX.b_lo)
                w = mp.mpc(mp.mpmathify(re), mp.mpmathify(im))
                z = mp.root(w, k)
                img = z / (1 - z)
                assert float(box.a_lo) <= img.real <= float(box.a_hi)
                assert float(box.b_lo) <= img.imag <= float(box.b_hi)


def test_beta_agrees_with_solver_randomized():
    rng = random.Random(2025)
    done = 0
    while done < 60:
        deg = rng.randint(1, 8)
        coeffs = [QComplex(Fraction(rng.randint(-9, 9), rng.randint(1, 4)),
                           Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
                  for _ in range(deg + 1)]
        if coeffs[-1].is_zero() or coeffs[0].is_zero():
            continue
        rs = find_roots(coeffs, 128)
        if any(abs(abs(z) - 1) < 1e-6 for z in rs.roots):
            continue
        try:
            rep = schur_cohn(coeffs)
        except SchurCohnHypothesisError:
            continue
        assert rep.beta == sum(1 for z in rs.roots if abs(z) > 1)
        done += 1


def test_parambox_split_and_json():
    box = ParamBox.of(0, 4, 0, 1)
    left, right = box.split()
    assert left.a_hi == right.a_lo == 2
    doc = RATIO_BOX_K9.to_dict()
    assert doc["a_lo"] == "-101749/100000"
    with pytest.raises(InputError):
        ParamBox.of(1, 0, 0, 1)
