"""Root systems, Weyl orbits and orderings on dominant weights.

Weights are plain integer tuples of coordinates in the fundamental-weight
basis.  The Cartan matrix follows ``a_ij = <alpha_i^vee, alpha_j>`` so that
``alpha_j = sum_i a_ij omega_i`` (column ``j``), and simple reflections act
by ``s_i(mu) = mu - mu_i alpha_i``.
"""

import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod

MAX_RANK = 8

Weight = tuple


def _cartan(lie_type, n):
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if lie_type in "ABCD":
        last = n - 1 if lie_type != "D" else n - 2
        for i in range(last):
            link(i, i + 1)
        if lie_type == "B":
            a[n - 1][n - 2] = -2
        elif lie_type == "C":
            a[n - 2][n - 1] = -2
        elif lie_type == "D":
            link(n - 3, n - 1)
    elif lie_type == "E":
        # Bourbaki labels: 1-3-4-5-6-7-8 with 2 attached to 4
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif lie_type == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif lie_type == "G":
        link(0, 1, -3, -1)
    return a


def _valid(lie_type, n):
    return {
        "A": n >= 1,
        "B": n >= 2,
        "C": n >= 3,
        "D": n >= 4,
        "E": 6 <= n <= 8,
        "F": n == 4,
        "G": n == 2,
    }.get(lie_type, False)


def _invert(a):
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        p = next(r for r in range(c, n) if m[r][c] != 0)
        m[c], m[p] = m[p], m[c]
        pv = m[c][c]
        m[c] = [x / pv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return tuple(tuple(row[n:]) for row in m)


def _symmetrizer(a):
    """d with d_i a_ij = d_j a_ji, normalized so short roots have d = 1."""
    n = len(a)
    d = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and a[i][j] != 0 and d[j] is None:
                d[j] = d[i] * a[i][j] / a[j][i]
                stack.append(j)
    low = min(d)
    return tuple(x / low for x in d)


def _positive_roots_root_coords(a):
    n = len(a)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for beta in frontier:
            for i in range(n):
                pair = sum(beta[j] * a[i][j] for j in range(n))
                if pair == 0 or beta == simple[i]:
                    continue
                gamma = tuple(b - pair * int(i == j) for j, b in enumerate(beta))
                if gamma not in seen:
                    seen.add(gamma)
                    new.append(gamma)
        frontier = new
    return sorted(seen, key=lambda b: (sum(b), b))


def _weyl_order(heights):
    """|W| as the product of degrees; the height partition is dual to the exponents."""
    counts = Counter(heights)
    exponents = []
    j = 1
    while True:
        m = sum(1 for h, c in counts.items() if c >= j)
        if m == 0:
            break
        exponents.append(m)
        j += 1
    return prod(e + 1 for e in exponents)


@dataclass(frozen=True)
class RootSystem:
    """A finite crystallographic root system of rank at most 8."""

    lie_type: str
    rank: int
    cartan_matrix: tuple
    simple_roots: tuple
    positive_roots: tuple
    weyl_order: int
    symmetrizer: tuple = field(repr=False)
    inverse_cartan: tuple = field(repr=False)
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def name(self):
        return f"{self.lie_type}{self.rank}"

    @property
    def roots(self):
        return self.positive_roots + tuple(neg(r) for r in self.positive_roots)

    @property
    def zero(self):
        return (0,) * self.rank

    def root_coords(self, lam):
        """Coordinates of ``lam`` in the simple-root basis (rational)."""
        inv = self.inverse_cartan
        n = self.rank
        return tuple(sum(inv[i][j] * lam[j] for j in range(n)) for i in range(n))

    def height(self, lam):
        return sum(self.root_coords(lam))

    def in_root_lattice(self, lam):
        return all(c.denominator == 1 for c in self.root_coords(lam))

    def coset(self, lam):
        """Class of ``lam`` in P/Q, as fractional parts of its root coordinates."""
        return tuple(c - (c.numerator // c.denominator) for c in self.root_coords(lam))

    def inner(self, lam, mu):
        """Invariant form, normalized so that short roots have squared length 2."""
        c = self.root_coords(lam)
        return sum(c[j] * self.symmetrizer[j] * mu[j] for j in range(self.rank))

    def reflect(self, mu, i):
        alpha = self.simple_roots[i]
        k = mu[i]
        return tuple(m - k * a for m, a in zip(mu, alpha))

    def dominant_conjugate(self, mu):
        """Return (dominant element of W mu, number of reflections used)."""
        mu = tuple(mu)
        steps = 0
        while True:
            for i, m in enumerate(mu):
                if m < 0:
                    mu = self.reflect(mu, i)
                    steps += 1
                    break
            else:
                return mu, steps

    def orbit(self, lam):
        key = ("orbit", tuple(lam))
        hit = self._cache.get(key)
        if hit is None:
            hit = frozenset(_bfs_orbit(self, tuple(lam)))
            self._cache[key] = hit
        return hit


def neg(w):
    return tuple(-x for x in w)


def add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def is_dominant(w):
    return all(x >= 0 for x in w)


def _bfs_orbit(rs, lam):
    seen = {lam}
    frontier = [lam]
    while frontier:
        new = []
        for mu in frontier:
            for i in range(rs.rank):
                if mu[i] == 0:
                    continue
                nu = rs.reflect(mu, i)
                if nu not in seen:
                    seen.add(nu)
                    new.append(nu)
        frontier = new
    return seen


_SYSTEMS = {}


def build_root_system(lie_type, rank):
    """Build the root system of type ``lie_type`` and the given rank.

    Raises ``ValueError`` for pairs that are not a simple type in the
    standard (non-redundant) range, or whose rank exceeds ``MAX_RANK``.
    """
    lie_type = str(lie_type).upper()
    if not isinstance(rank, int) or not _valid(lie_type, rank):
        raise ValueError(f"invalid root system {lie_type}{rank}: types are A_n (n>=1), "
                         "B_n (n>=2), C_n (n>=3), D_n (n>=4), E6-E8, F4, G2")
    if rank > MAX_RANK:
        raise ValueError(f"rank {rank} exceeds the configured maximum {MAX_RANK}")
    key = (lie_type, rank)
    if key in _SYSTEMS:
        return _SYSTEMS[key]
    a = _cartan(lie_type, rank)
    cartan = tuple(tuple(row) for row in a)
    simple = tuple(tuple(a[i][j] for i in range(rank)) for j in range(rank))
    pos_rc = _positive_roots_root_coords(a)
    positive = tuple(tuple(sum(a[i][j] * b[j] for j in range(rank)) for i in range(rank))
                     for b in pos_rc)
    rs = RootSystem(
        lie_type=lie_type,
        rank=rank,
        cartan_matrix=cartan,
        simple_roots=simple,
        positive_roots=positive,
        weyl_order=_weyl_order([sum(b) for b in pos_rc]),
        symmetrizer=_symmetrizer(a),
        inverse_cartan=_invert(a),
    )
    _SYSTEMS[key] = rs
    return rs


def parse_root_system(label):
    """Parse strings such as ``"A2"`` or ``"G2"``."""
    m = re.fullmatch(r"\s*([A-Ga-g])\s*_?\s*(\d+)\s*", str(label))
    if not m:
        raise ValueError(f"cannot parse root system {label!r}")
    return build_root_system(m.group(1).upper(), int(m.group(2)))


def known_weyl_order(lie_type, rank):
    """Orders of the finite Weyl groups, from the classification."""
    n = rank
    return {
        "A": lambda: factorial(n + 1),
        "B": lambda: 2 ** n * factorial(n),
        "C": lambda: 2 ** n * factorial(n),
        "D": lambda: 2 ** (n - 1) * factorial(n),
        "E": lambda: {6: 51840, 7: 2903040, 8: 696729600}[n],
        "F": lambda: 1152,
        "G": lambda: 12,
    }[lie_type]()


def weyl_orbit(rs, lam):
    return set(rs.orbit(tuple(lam)))


def dominance_leq(rs, mu, lam):
    """True iff ``lam - mu`` is a nonnegative integer combination of simple roots."""
    return all(c >= 0 and c.denominator == 1 for c in rs.root_coords(sub(lam, mu)))


def total_order_key(rs, lam):
    return (rs.height(lam), tuple(lam))


def dominant_weights_by_height(rs, max_height):
    """All dominant weights of height at most ``max_height``."""
    # height(lam) = sum_j lam_j * s_j with s_j the column sums of the inverse Cartan matrix
    s = [sum(rs.inverse_cartan[i][j] for i in range(rs.rank)) for j in range(rs.rank)]
    out = []

    def rec(j, partial, budget):
        if j == rs.rank:
            out.append(tuple(partial))
            return
        k = 0
        while k * s[j] <= budget:
            partial.append(k)
            rec(j + 1, partial, budget - k * s[j])
            partial.pop()
            k += 1

    rec(0, [], Fraction(max_height))
    return out


def dominant_weights_below(rs, lam):
    """Dominant ``mu <= lam`` in dominance order, ascending by total order key."""
    lam = tuple(lam)
    key = ("below", lam)
    hit = rs._cache.get(key)
    if hit is None:
        cands = dominant_weights_by_height(rs, rs.height(lam))
        hit = tuple(sorted((mu for mu in cands if dominance_leq(rs, mu, lam)),
                           key=lambda mu: total_order_key(rs, mu)))
        rs._cache[key] = hit
    return list(hit)


def dominant_weights_upto(rs, lam, same_coset=False):
    """Dominant weights whose total order key does not exceed that of ``lam``."""
    lam = tuple(lam)
    top = total_order_key(rs, lam)
    cands = dominant_weights_by_height(rs, rs.height(lam))
    if same_coset:
        c = rs.coset(lam)
        cands = [mu for mu in cands if rs.coset(mu) == c]
    return sorted((mu for mu in cands if total_order_key(rs, mu) <= top),
                  key=lambda mu: total_order_key(rs, mu))


def negate_longest(rs, lam):
    """Highest weight of the dual representation, i.e. ``-w_0(lam)``."""
    return rs.dominant_conjugate(neg(lam))[0]
