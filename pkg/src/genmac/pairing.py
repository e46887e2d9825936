"""The constant-term pairing on Weyl-invariant characters.

``pair(data, f, g)`` is ``[f * bar(g) * K]_1 / |W|`` where ``K`` is the
pairing kernel of ``data``.  The factor ``1/|W|`` is the Weyl integration
normalization: with it the classical pairing makes Schur characters
orthonormal.
"""

import threading
from fractions import Fraction

from .charring import CharElement
from .liedata import POLY_X_XI, current_algebra_data, pairing_kernel
from .rootsys import sub
from .series import INF, SeriesQT


class TruncationMismatch(ValueError):
    pass


class PathDisagreement(ArithmeticError):
    """Two independent computations of the same quantity differ."""


def _check_trunc(data, *elements):
    for f in elements:
        if f.trunc[0] < data.trunc[0] or f.trunc[1] < data.trunc[1]:
            raise TruncationMismatch(
                f"operand known to {f.trunc} but the pairing works to {data.trunc}")
        if f.rs is not data.rs:
            raise ValueError("operand and data use different root systems")


def pair(data, f, g, backend=None):
    """Constant term of ``f * bar(g) * K`` divided by ``|W|``.

    Evaluated directly as ``sum f_nu g_nu' K_{nu' - nu}`` without using
    Weyl invariance, so it also serves as a check of the orbit formula
    behind :func:`gram_entry`.
    """
    _check_trunc(data, f, g)
    k = pairing_kernel(data, backend)
    trunc = data.trunc
    total = SeriesQT({}, trunc)
    acc = {}
    for nu, fs in f.terms.items():
        for nu2, gs in g.terms.items():
            kc = k.terms.get(sub(nu2, nu))
            if kc is None:
                continue
            prod = fs * gs
            for (a1, b1), c1 in prod.coeffs.items():
                for (a2, b2), c2 in kc.coeffs.items():
                    a, b = a1 + a2, b1 + b2
                    if a <= trunc[0] and b <= trunc[1]:
                        acc[(a, b)] = acc.get((a, b), 0) + c1 * c2
    order = data.rs.weyl_order
    total = SeriesQT({key: Fraction(c, order) for key, c in acc.items()}, trunc)
    return total


class _GramCache:
    def __init__(self):
        self.lock = threading.Lock()
        self.entries = {}


_GRAM = {}
_GRAM_LOCK = threading.Lock()


def _gram_cache(data):
    with _GRAM_LOCK:
        cache = _GRAM.get(data)
        if cache is None:
            cache = _GRAM[data] = _GramCache()
    return cache


def gram_entry(data, lam, mu, backend=None):
    """``<m_lam, m_mu>`` via the orbit formula.

    For a Weyl-invariant kernel,
    ``<m_lam, m_mu> = |W lam| / |W| * sum_{nu in W mu} K_{nu - lam}``.
    """
    lam, mu = tuple(lam), tuple(mu)
    cache = _gram_cache(data)
    key = (lam, mu)
    with cache.lock:
        hit = cache.entries.get(key)
    if hit is not None:
        return hit
    rs = data.rs
    k = pairing_kernel(data, backend)
    acc = {}
    for nu in rs.orbit(mu):
        kc = k.terms.get(sub(nu, lam))
        if kc is not None:
            for key2, c in kc.coeffs.items():
                acc[key2] = acc.get(key2, 0) + c
    scale = Fraction(len(rs.orbit(lam)), rs.weyl_order)
    val = SeriesQT({key2: c * scale for key2, c in acc.items()}, data.trunc)
    with cache.lock:
        cache.entries[key] = val
    return val


def pair_orbit_sums(data, f, g, backend=None):
    """Pairing of ``sum f_mu m_mu`` and ``sum g_nu m_nu`` given as dominant dicts."""
    total = SeriesQT({}, data.trunc)
    for lam, a in f.items():
        for mu, b in g.items():
            e = gram_entry(data, lam, mu, backend)
            if e:
                total = total + a * b * e
    return total


def gram_matrix(data, weights, backend=None):
    return [[gram_entry(data, lam, mu, backend) for mu in weights] for lam in weights]


def _closed_form_prefactor(rank, trunc):
    """``(prod_{r>0} (1 - q^r) / prod_{r>=0} (1 - t q^r))^rank`` as a series."""
    nq, nt = trunc
    num = SeriesQT.const(1, trunc)
    den = SeriesQT.const(1, trunc)
    r = 1
    while r <= nq:
        num = num * SeriesQT({(0, 0): 1, (r, 0): -1}, trunc)
        r += 1
    r = 0
    while r <= nq and nt >= 1:
        den = den * SeriesQT({(0, 0): 1, (r, 1): -1}, trunc)
        r += 1
    base = num * den.invert()
    out = SeriesQT.const(1, trunc)
    for _ in range(rank):
        out = out * base
    return out


def _closed_form_kernel(rs, trunc):
    """``prod_{alpha in Phi} prod_{r>=0} (1 - q^r e^alpha) / (1 - t q^r e^alpha)``."""
    nq, nt = trunc
    one = rs.zero
    result = CharElement.one(rs, trunc)
    for alpha in rs.roots:
        r = 0
        while r <= nq:
            result = result * CharElement(rs, {one: 1, alpha: SeriesQT({(r, 0): -1}, trunc)}, trunc)
            r += 1
        r = 0
        while r <= nq and nt >= 1:
            terms = {}
            k = 0
            while k * r <= nq and k <= nt:
                w = tuple(k * x for x in alpha)
                terms[w] = SeriesQT({(k * r, k): 1}, trunc)
                k += 1
            result = result * CharElement(rs, terms, trunc)
            r += 1
    return result


def macdonald_qt_pair(rs, f, g, trunc=(6, 3), check=True, backend=None):
    """The (q, t) Macdonald pairing, computed by two independent routes.

    Route one pairs through the kernel of ``g (x) C[x, xi]``; its Cartan
    factors already supply the prefactor.  Route two multiplies the
    explicit prefactor by the constant term of the closed product over
    roots.  A disagreement raises :class:`PathDisagreement`.
    """
    data = current_algebra_data(rs, POLY_X_XI, trunc)
    f = f.truncate(*trunc) if f.trunc[0] == INF or f.trunc[1] == INF else f
    g = g.truncate(*trunc) if g.trunc[0] == INF or g.trunc[1] == INF else g
    first = pair(data, f, g, backend)
    if not check:
        return first
    second = macdonald_qt_pair_closed_form(rs, f, g, trunc)
    if first != second:
        raise PathDisagreement(f"kernel route {first} differs from product route {second}")
    return first


def macdonald_qt_pair_closed_form(rs, f, g, trunc=(6, 3)):
    kern = _closed_form_kernel(rs, trunc)
    prod = f.truncate(*trunc) * g.bar().truncate(*trunc) * kern
    ct = prod.constant_term()
    return _closed_form_prefactor(rs.rank, trunc) * ct * Fraction(1, rs.weyl_order)
