"""Exact linear algebra helpers over the rationals."""

from fractions import Fraction

from . import kernels


def nullspace(rows, ncols):
    """Basis of ``{v : A v = 0}`` for a dense rational matrix given by rows.

    Returns a list of vectors (lists of Fractions) in reduced form: each
    basis vector has a 1 in its own free column and 0 in the other free
    columns.
    """
    a = [[Fraction(x) for x in row] for row in rows if any(row)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fcol]
        basis.append(v)
    return basis


def rank(rows, ncols, backend=None):
    """Exact rank via fraction-free elimination (compiled when available)."""
    rows = [row for row in rows if any(row)]
    if not rows:
        return 0
    return kernels.rational_rank(rows, ncols, backend)


def sparse_rows_to_dense(vectors, keys=None):
    """Turn a list of ``{key: coeff}`` dicts into dense rows over a common key order."""
    if keys is None:
        keys = sorted({k for v in vectors for k in v})
    index = {k: i for i, k in enumerate(keys)}
    rows = []
    for v in vectors:
        row = [0] * len(keys)
        for k, c in v.items():
            row[index[k]] = c
        rows.append(row)
    return rows, keys
