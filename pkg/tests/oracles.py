"""Independent reference computations used by the tests.

Nothing here imports the code under test beyond plain data containers.
"""

from fractions import Fraction
from itertools import permutations

# Roots in fundamental-weight coordinates, written out by hand.
HAND_ROOTS = {
    "A1": [(2,), (-2,)],
    "A2": [(2, -1), (-1, 2), (1, 1), (-2, 1), (1, -2), (-1, -1)],
    "B2": [(2, -2), (-1, 2), (1, 0), (0, 2), (-2, 2), (1, -2), (-1, 0), (0, -2)],
}

WEYL_ORDERS = {
    ("A", 1): 2, ("A", 2): 6, ("A", 3): 24, ("A", 4): 120, ("B", 2): 8, ("B", 3): 48,
    ("B", 4): 384, ("C", 3): 48, ("C", 4): 384, ("D", 4): 192, ("D", 5): 1920,
    ("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600, ("F", 4): 1152, ("G", 2): 12,
}


def lmul(a, b):
    out = {}
    for k1, c1 in a.items():
        for k2, c2 in b.items():
            k = tuple(x + y for x, y in zip(k1, k2))
            out[k] = out.get(k, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


def weyl_dimension(rs, lam):
    """Weyl dimension formula with the inner product built from the Cartan matrix."""
    rho = (1,) * rs.rank
    num = Fraction(1)
    for alpha in rs.positive_roots:
        lr = tuple(a + b for a, b in zip(lam, rho))
        num *= Fraction(rs.inner(lr, alpha), rs.inner(rho, alpha))
    return num


def sl_n_weyl_character(n, lam):
    """Character of the sl_n irrep as a dict on fundamental-weight coordinates.

    Uses the bialternant formula over S_n in epsilon coordinates and divides
    by the Vandermonde by exact polynomial long division.
    """
    parts = [sum(lam[i:]) for i in range(n - 1)] + [0]
    delta = [n - 1 - i for i in range(n)]

    def alt(exps):
        out = {}
        for perm in permutations(range(n)):
            sign = _perm_sign(perm)
            key = tuple(exps[perm[i]] for i in range(n))
            out[key] = out.get(key, 0) + sign
        return {k: c for k, c in out.items() if c}

    num = alt([p + d for p, d in zip(parts, delta)])
    den = alt(delta)
    quo = _divide(num, den)
    out = {}
    for k, c in quo.items():
        w = tuple(k[i] - k[i + 1] for i in range(n - 1))
        out[w] = out.get(w, 0) + c
    return out


def _perm_sign(p):
    s = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


def _divide(num, den):
    num = dict(num)
    quo = {}
    lead_d = max(den)
    cd = den[lead_d]
    while num:
        lead = max(num)
        c = Fraction(num[lead], cd)
        shift = tuple(a - b for a, b in zip(lead, lead_d))
        if min(shift) < 0:
            raise ArithmeticError("not divisible")
        quo[shift] = quo.get(shift, 0) + c
        for k, v in den.items():
            kk = tuple(a + b for a, b in zip(k, shift))
            num[kk] = num.get(kk, 0) - c * v
            if num[kk] == 0:
                del num[kk]
    return quo


def dominance_bruteforce(rs, mu, lam):
    """``mu <= lam`` iff ``lam - mu`` is a nonnegative integer sum of simple roots (by search)."""
    diff = tuple(a - b for a, b in zip(lam, mu))
    if diff == (0,) * rs.rank:
        return True
    # search over small nonnegative combinations
    simple = rs.simple_roots
    bound = 40
    seen = {(0,) * rs.rank}
    frontier = [((0,) * rs.rank, (0,) * rs.rank)]
    while frontier:
        w, coeffs = frontier.pop()
        for i, a in enumerate(simple):
            w2 = tuple(x + y for x, y in zip(w, a))
            c2 = coeffs[:i] + (coeffs[i] + 1,) + coeffs[i + 1:]
            if sum(c2) > bound or c2 in seen:
                continue
            if w2 == diff:
                return True
            seen.add(c2)
            frontier.append((w2, c2))
    return False


def dense_constant_term_pairing(hand_roots, weyl_order, f, g, q0, nq):
    """``[f * bar(g) * prod_a (1 - e^a) prod_{r=1..nq} (1 - q0^r e^a)(1 - q0^r)^rank]_1 / |W|``.

    f, g are dicts weight -> rational with q already specialised.  The Cartan
    factor ``(1 - q^r)^rank`` enters through the zero weights of the adjoint
    representation; ``rank`` is read off the weight length.
    """
    rank = len(next(iter(hand_roots)))
    prod = {(0,) * rank: Fraction(1)}
    for a in hand_roots:
        prod = lmul(prod, {(0,) * rank: 1, a: -1})
        for r in range(1, nq + 1):
            prod = lmul(prod, {(0,) * rank: 1, a: -Fraction(q0) ** r})
    scal = Fraction(1)
    for r in range(1, nq + 1):
        scal *= (1 - Fraction(q0) ** r) ** rank
    gbar = {tuple(-x for x in k): c for k, c in g.items()}
    total = lmul(lmul(f, gbar), prod)
    return total.get((0,) * rank, 0) * scal / weyl_order
