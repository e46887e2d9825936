import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genmac.homology import (ComplexTooLarge, DifferentialError, FiniteModule, ModuleVector,
                             StructureError, ce_complex, cohomology, current_lie, dual_module,
                             ext_euler, hom_module, induced_module, irreducible_module, lie_from_json,
                             lie_to_json, module_from_json, phi_cocycle_check, polynomial_algebra,
                             sl2_trunc_x2, t3_lie, t3_verify, trivial_module,
                             truncated_polynomial_algebra, verify_euler_vs_pairing, x_xi_algebra,
                             zero_module)
from genmac.homology.algebras import BasisElement, FiniteGradedLie
from genmac.rootsys import parse_root_system
from genmac.series import SeriesQT

A1 = parse_root_system("A1")
A2 = parse_root_system("A2")


@pytest.fixture(scope="module")
def sl2x():
    return sl2_trunc_x2().validate()


@pytest.mark.parametrize("build", [
    lambda: sl2_trunc_x2(),
    lambda: t3_lie(),
    lambda: current_lie(A1, x_xi_algebra(2)),
    lambda: current_lie(A1, polynomial_algebra(2, 2)),
    lambda: current_lie(A2, truncated_polynomial_algebra(2)),
])
def test_builders_satisfy_jacobi_and_tau(build):
    lie = build()
    assert lie.validate() is lie


def test_broken_bracket_is_rejected(sl2x):
    brackets = dict(sl2x.brackets)
    key = next(k for k in brackets if k[0] != k[1])
    brackets[key] = {k: 2 * c for k, c in brackets[key].items()}
    bad = FiniteGradedLie(A1, sl2x.basis, brackets, sl2x.chevalley, sl2x.tau, "bad")
    with pytest.raises(StructureError):
        bad.validate()


def test_odd_degree_zero_rejected():
    lie = FiniteGradedLie(A1, [BasisElement("z", (0,), 0, 0, 1)], {}, [], None, "odd")
    with pytest.raises(StructureError):
        lie.validate()


def test_trivial_coefficients_sl2x(sl2x):
    cx = ce_complex(sl2x, trivial_module(sl2x))
    assert cx.degree_dims() == {0: 1, 1: 0, 2: 0, 3: 1}
    table = cohomology(cx)
    assert table.nonzero() == {(0, 0, 0, (0,)): 1, (3, 3, 0, (0,)): 1}
    assert table.euler() == SeriesQT({(0, 0): 1, (3, 0): -1})


def test_zero_module_gives_zero_complex(sl2x):
    cx = ce_complex(sl2x, zero_module(sl2x))
    assert cx.blocks == {}
    assert ext_euler(sl2x, zero_module(sl2x), zero_module(sl2x)).is_zero()


@pytest.mark.parametrize("a", [0, 2, 4])
@pytest.mark.parametrize("b", [0, 2, 4])
def test_euler_equals_pairing_sl2x(sl2x, a, b):
    M = irreducible_module(sl2x, (a,)).validate()
    N = irreducible_module(sl2x, (b,)).validate()
    assert verify_euler_vs_pairing(sl2x, M, N).passed


@pytest.mark.parametrize("a,b", [(0, 0), (2, 0), (2, 2), (1, 3)])
def test_euler_symmetry(sl2x, a, b):
    M, N = irreducible_module(sl2x, (a,)), irreducible_module(sl2x, (b,))
    assert ext_euler(sl2x, M, N) == ext_euler(sl2x, N, M)


def test_super_algebra_euler_matches_super_pairing():
    lie = current_lie(A1, x_xi_algebra(2)).validate()
    for a, b in [(0, 0), (2, 0), (2, 2)]:
        M, N = irreducible_module(lie, (a,)), irreducible_module(lie, (b,))
        assert verify_euler_vs_pairing(lie, M, N, (3, 3)).passed


def test_super_complex_needs_truncation():
    lie = current_lie(A1, x_xi_algebra(2))
    with pytest.raises(ValueError):
        ce_complex(lie, trivial_module(lie))


@pytest.mark.parametrize("lam", [0, 2])
def test_induced_modules_dual_to_simples(sl2x, lam):
    ind = induced_module(sl2x, irreducible_module(sl2x, (lam,)), 3).validate()
    for mu in (0, 2, 4):
        K = hom_module(ind, dual_module(sl2x, irreducible_module(sl2x, (mu,))))
        table = cohomology(ce_complex(sl2x, K, (3, 0)))
        assert all(d == 0 for (i, *_), d in table.dims.items() if i > 0)
        assert table.euler() == SeriesQT.const(1 if lam == mu else 0, (3, 0))


def test_t3_displayed_complex():
    report, table = t3_verify()
    assert report.passed
    assert [table.total(i) for i in range(7)] == [1, 0, 0, 0, 0, 0, 1]
    assert table.cochain_dims[(6, 9, 0, (0, 0))] == 1


@pytest.mark.parametrize("label", ["A1", "A2"])
def test_phi_cocycle(label):
    report = phi_cocycle_check(parse_root_system(label))
    assert report.passed, [(r.label, r.status) for r in report.rows]


def test_phi_needs_two_generators():
    with pytest.raises(ValueError):
        phi_cocycle_check(A1, 1)


def test_positive_degree_cohomology_nonzero_for_truncations():
    for lie, trunc in [(sl2_trunc_x2(), None), (current_lie(A1, polynomial_algebra(2, 2)), (2, 0))]:
        table = cohomology(ce_complex(lie, trivial_module(lie), trunc))
        assert any(d for (i, *_), d in table.dims.items() if i > 0)


def test_cochain_euler_equals_cohomology_euler():
    for lie, K, trunc in [(sl2_trunc_x2(), None, None), (t3_lie(), None, None),
                          (current_lie(A1, x_xi_algebra(2)), None, (3, 2))]:
        K = trivial_module(lie) if K is None else K
        table = cohomology(ce_complex(lie, K, trunc))
        assert table.euler() == table.cochain_euler()


@settings(max_examples=8)
@given(st.randoms(use_true_random=False))
def test_basis_order_does_not_matter(rnd):
    lie = t3_lie()
    perm = list(range(lie.dim))
    rnd.shuffle(perm)
    shuffled = lie.relabel(perm).validate()
    a = cohomology(ce_complex(lie, trivial_module(lie))).dims
    b = cohomology(ce_complex(shuffled, trivial_module(shuffled))).dims
    assert a == b


def test_inconsistent_action_is_detected(sl2x):
    # h (x) x and e (x) x commute in the algebra but not on this space
    pos = sl2x.positive()
    hx = next(i for i in pos if sl2x.basis[i].weight == (0,))
    ex = next(i for i in pos if sl2x.basis[i].weight == (2,))
    basis = [ModuleVector("a", (0,), 0), ModuleVector("b", (0,), 1), ModuleVector("c", (2,), 2)]
    bogus = FiniteModule(sl2x, basis, {hx: {(1, 0): 1}, ex: {(2, 1): 1}}, "bogus")
    with pytest.raises(StructureError):
        bogus.validate()
    with pytest.raises(DifferentialError):
        ce_complex(sl2x, bogus)


def test_size_cap(sl2x):
    with pytest.raises(ComplexTooLarge):
        ce_complex(sl2x, irreducible_module(sl2x, (4,)), max_cochains=2)


def test_json_roundtrip(sl2x):
    again = lie_from_json(lie_to_json(sl2x))
    assert again.brackets == sl2x.brackets and again.tau == sl2x.tau
    built = lie_from_json({"builtin": "current", "root_system": "A1",
                           "coefficients": {"kind": "trunc_x", "n": 2}})
    assert built.dim == 6
    M = module_from_json(built, {"builtin": "irreducible", "highest_weight": [2]})
    assert M.dim == 3
    ind = module_from_json(built, {"builtin": "induced", "from": {"builtin": "trivial"}, "max_degree": 2})
    assert ind.dim == 1 + 3 + 6


def test_random_module_pairs_match_pairing(sl2x):
    rnd = random.Random(7)
    for _ in range(3):
        a, b = rnd.choice([0, 1, 2, 3]), rnd.choice([0, 1, 2, 3])
        M = irreducible_module(sl2x, (a,), q=rnd.choice([0, 1]))
        N = irreducible_module(sl2x, (b,), q=rnd.choice([0, 1]))
        assert verify_euler_vs_pairing(sl2x, M, N).passed
