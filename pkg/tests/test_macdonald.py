import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genmac.charring import schur_expansion
from genmac.liedata import current_algebra_data, t3_data
from genmac.macdonald import (NotStabilized, Report, bgg_transition, clear_memo, dual_macdonald,
                              macdonald_norm, macdonald_polynomial, norm_product,
                              projective_character, stable_polynomial, verify_bgg,
                              verify_norm_product)
from genmac.pairing import pair
from genmac.rootsys import (dominance_leq, dominant_weights_by_height, parse_root_system,
                            total_order_key)
from genmac.series import INF, SeriesQT

A1 = parse_root_system("A1")
A2 = parse_root_system("A2")


def poly(*coeffs):
    return SeriesQT({(k, 0): c for k, c in enumerate(coeffs) if c})


# frozen values from the Gram-Schmidt oracle (stabilized between Nq and Nq + 5)
FROZEN_A1 = {
    (2,): {(2,): poly(1), (0,): poly(1, 1)},
    (3,): {(3,): poly(1), (1,): poly(1, 1, 1)},
    (4,): {(4,): poly(1), (2,): poly(1, 1, 1, 1), (0,): poly(1, 1, 2, 1, 1)},
}


@pytest.mark.parametrize("lam", sorted(FROZEN_A1))
def test_frozen_q_hermite(lam):
    assert stable_polynomial(A1, lam, 8) == FROZEN_A1[lam]


def test_stable_polynomial_detects_truncation():
    with pytest.raises(NotStabilized):
        stable_polynomial(A1, (4,), 2)


def test_norms_equal_finite_product():
    data = current_algebra_data(A1, "poly_x", (10, 0))
    for m in range(6):
        assert macdonald_norm(data, (m,)).at_t0() == norm_product(A1, (m,), 10)
    data2 = current_algebra_data(A2, "poly_x", (6, 0))
    assert macdonald_norm(data2, (1, 1)).at_t0() == poly(1, -2, 1).truncate(6)


def test_dual_basis():
    data = current_algebra_data(A1, "poly_x_xi", (4, 2))
    for a in range(3):
        for b in range(3):
            P = macdonald_polynomial(data, (a,)).P
            Q = dual_macdonald(data, (b,))
            assert pair(data, P, Q) == SeriesQT.const(1 if a == b else 0, data.trunc)


@pytest.mark.parametrize("label,kind,trunc", [("A1", "poly_x_xi", (5, 3)), ("A2", "poly_x", (4, 0)),
                                              ("A2", "poly_x_xi", (3, 2))])
def test_orthogonality(label, kind, trunc):
    rs = parse_root_system(label)
    data = current_algebra_data(rs, kind, trunc)
    ws = dominant_weights_by_height(rs, 2)
    Ps = {w: macdonald_polynomial(data, w).P for w in ws}
    for a in ws:
        for b in ws:
            if a != b:
                assert pair(data, Ps[a], Ps[b]).is_zero()


def test_unitriangular_with_dominance_support():
    data = current_algebra_data(A2, "poly_x", (4, 0))
    for lam in dominant_weights_by_height(A2, 3):
        res = macdonald_polynomial(data, lam)
        assert res.coefficients[lam] == SeriesQT.const(1, data.trunc)
        assert all(dominance_leq(A2, mu, lam) for mu in res.coefficients)
        assert res.incomparable_residue == {}


def test_t_equals_q_gives_schur():
    nq = 4
    data = current_algebra_data(A1, "poly_x_xi", (nq, nq))
    for m in range(4):
        res = macdonald_polynomial(data, (m,))
        exp = schur_expansion(res.P)
        for w, s in exp.items():
            expect = SeriesQT.const(1 if w == (m,) else 0, (nq, INF))
            assert s.subs_t_equals_q() == expect
        assert res.norm.subs_t_equals_q() == SeriesQT.const(1, (nq, INF))


def test_nonsymmetric_data_one_sided():
    data = t3_data((5, 0))
    ws = [(0, 0), (1, 0), (0, 1), (1, 1)]
    order = sorted(ws, key=lambda w: total_order_key(A2, w))
    Ps = {w: macdonald_polynomial(data, w).P for w in ws}
    for i, a in enumerate(order):
        for b in order[:i]:
            assert pair(data, Ps[a], Ps[b]).is_zero(), (a, b)


def test_projective_character_leading_term():
    data = current_algebra_data(A1, "poly_x", (3, 0))
    proj = projective_character(data, (1,))
    assert proj.is_w_invariant()
    assert proj.coefficient((1,)).constant == 1


def test_bgg_positive_control():
    data = current_algebra_data(A1, "poly_x", (8, 0))
    report = verify_bgg(data, (4,))
    assert isinstance(report, Report) and report.passed
    tr = bgg_transition(data, (4,))
    assert tr.matrix[((0,), (2,))] == poly(0, 1).truncate(8)
    assert tr.matrix[((0,), (4,))] == poly(0, 0, 1, 0, 1).truncate(8)
    assert tr.matrix[((2,), (4,))] == poly(0, 1, 1, 1).truncate(8)


@pytest.mark.parametrize("coeffs", [{"kind": "trunc_x", "n": 2}, {"kind": "poly_xy"}])
def test_bgg_negative_controls(coeffs):
    data = current_algebra_data(A1, coeffs, (6, 0))
    report = verify_bgg(data, (2,))
    assert not report.passed
    assert any(r.status == "FAIL" for r in report.rows)


def test_bgg_requires_anti_involution():
    with pytest.raises(ValueError):
        bgg_transition(t3_data((3, 0)), (1, 0))


def test_norm_product_report_records_both_directions():
    report = verify_norm_product(A1, (3,), nq=8)
    assert [r.status for r in report.rows] == ["PASS", "FAIL", "FAIL", "FAIL"]
    assert all(r.values["reciprocal_identity"] == "PASS" for r in report.rows)


def test_rejects_bad_weights():
    data = current_algebra_data(A1, "poly_x", (3, 0))
    with pytest.raises(ValueError):
        macdonald_polynomial(data, (-1,))
    with pytest.raises(ValueError):
        macdonald_polynomial(data, (1, 0))


def test_memo_can_be_cleared():
    data = current_algebra_data(A1, "poly_x", (3, 0))
    a = macdonald_polynomial(data, (2,)).coefficients
    clear_memo()
    assert macdonald_polynomial(data, (2,)).coefficients == a


@settings(max_examples=15)
@given(st.integers(0, 5), st.integers(4, 9))
def test_schur_coefficients_nonnegative_integers(m, nq):
    data = current_algebra_data(A1, "poly_x", (nq, 0))
    exp = schur_expansion(macdonald_polynomial(data, (m,)).P.at_t0())
    for s in exp.values():
        for c in s.coeffs.values():
            assert c >= 0 and getattr(c, "denominator", 1) == 1
