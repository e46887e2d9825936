"""Pure-Python reference versions of the hot kernels.

These are the fallback used when the compiled extension is unavailable, and
the oracle the compiled versions are tested against.
"""


def chain_product(factors, qmax, tmax):
    """Multiply sparse polynomials left to right, dropping high q/t powers.

    Every factor maps keys ``(w_1, ..., w_r, q, t)`` to nonzero exact
    coefficients.  Terms whose q-exponent exceeds ``qmax`` or t-exponent
    exceeds ``tmax`` are discarded after each step.
    """
    if not factors:
        return {}
    acc = {}
    for key, c in factors[0].items():
        if key[-2] <= qmax and key[-1] <= tmax and c:
            acc[key] = c
    for factor in factors[1:]:
        terms = [(k, k[-2], k[-1], c) for k, c in factor.items() if c]
        out = {}
        for ka, ca in acc.items():
            qa, ta = ka[-2], ka[-1]
            for kb, qb, tb, cb in terms:
                q = qa + qb
                if q > qmax:
                    continue
                t = ta + tb
                if t > tmax:
                    continue
                key = tuple(x + y for x, y in zip(ka, kb))
                out[key] = out.get(key, 0) + ca * cb
        acc = {k: c for k, c in out.items() if c}
    return acc


def bareiss_rank(rows, ncols):
    """Rank of an integer matrix by fraction-free elimination."""
    a = [list(r) for r in rows]
    m = len(a)
    rank = 0
    prev = 1
    for col in range(ncols):
        if rank == m:
            break
        piv = next((i for i in range(rank, m) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        prow = a[rank]
        for i in range(rank + 1, m):
            row = a[i]
            f = row[col]
            if f:
                for j in range(col + 1, ncols):
                    row[j] = (p * row[j] - f * prow[j]) // prev
            else:
                for j in range(col + 1, ncols):
                    row[j] = (p * row[j]) // prev
            row[col] = 0
        prev = p
        rank += 1
    return rank
