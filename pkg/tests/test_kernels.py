from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from genmac import kernels
from genmac._pykernels import bareiss_rank as py_rank
from genmac._pykernels import chain_product as py_chain

BACKENDS = kernels.available_backends()
needs_cython = pytest.mark.skipif("cython" not in BACKENDS, reason="compiled kernels not built")

keys = st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(0, 4), st.integers(0, 2))
factor = st.dictionaries(keys, st.integers(-5, 5).filter(bool), min_size=1, max_size=6)


def dense_product(factors, qmax, tmax):
    out = {(0, 0, 0, 0): 1}
    for f in factors:
        nxt = {}
        for k1, c1 in out.items():
            for k2, c2 in f.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                if k[2] <= qmax and k[3] <= tmax:
                    nxt[k] = nxt.get(k, 0) + c1 * c2
        out = {k: c for k, c in nxt.items() if c}
    return out


@given(st.lists(factor, min_size=1, max_size=4), st.integers(0, 6), st.integers(0, 3))
def test_python_product_matches_dense(factors, qmax, tmax):
    assert py_chain(factors, qmax, tmax) == dense_product(factors, qmax, tmax)


@needs_cython
@given(st.lists(factor, min_size=1, max_size=4), st.integers(0, 6), st.integers(0, 3))
def test_backends_agree_on_products(factors, qmax, tmax):
    a = kernels.chain_product(factors, qmax, tmax, backend="python")
    b = kernels.chain_product(factors, qmax, tmax, backend="cython")
    assert a == b


@needs_cython
def test_rational_coefficients_cross_backend():
    f = [{(1, 0, 0): Fraction(1, 2), (0, 1, 1): Fraction(-2, 3)},
         {(0, 0, 0): 1, (-1, 0, 1): Fraction(5, 7)}]
    assert kernels.chain_product(f, 3, 3, backend="cython") == kernels.chain_product(f, 3, 3, backend="python")


@needs_cython
def test_overflow_falls_back_to_python():
    big = [{(0, 0, 0): 2 ** 40, (1, 1, 0): 3}, {(0, 0, 0): 2 ** 40}]
    assert kernels.chain_product(big, 2, 2, backend="cython") == py_chain(big, 2, 2)


def test_infinite_bounds():
    f = [{(1, 0, 0, 0): 1, (0, 1, 1, 1): 1}] * 3
    assert kernels.chain_product(f) == dense_product(f, 99, 99)


matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=1, max_size=5))


def sympy_free_rank(rows):
    a = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(a[0])
    for c in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(len(a)):
            if i != rank and a[i][c]:
                f = a[i][c] / a[rank][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


@given(matrices)
def test_rank_backends(rows):
    ncols = len(rows[0])
    expected = sympy_free_rank(rows)
    assert py_rank([list(r) for r in rows], ncols) == expected
    for backend in BACKENDS:
        assert kernels.integer_rank(rows, ncols, backend) == expected
        half = [[Fraction(x, 2) for x in r] for r in rows]
        assert kernels.rational_rank(half, ncols, backend) == expected


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")
    assert "python" in BACKENDS


def test_environment_forces_python_backend():
    import os
    import subprocess
    import sys

    env = dict(os.environ, GENMAC_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import genmac.kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
