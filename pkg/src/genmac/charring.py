"""Characters with truncated (q, t) coefficients.

A ``CharElement`` is a finitely supported map from weights to ``SeriesQT``
values, i.e. an element of Z[P] tensored with truncated series.  Products
are delegated to :mod:`genmac.kernels`.
"""

import json
from fractions import Fraction

from . import kernels
from .rootsys import add, is_dominant, neg, total_order_key
from .series import INF, SeriesQT, normalize

EXACT = (INF, INF)


class ExpansionError(ArithmeticError):
    """Raised when an element is not in the span of a triangular basis."""

    def __init__(self, weight, residue):
        super().__init__(f"residual support at weight {weight} after triangular expansion")
        self.weight = weight
        self.residue = residue


def _mintrunc(a, b):
    return (min(a[0], b[0]), min(a[1], b[1]))


class CharElement:
    """Sum of ``coeff(mu) * e^mu`` over finitely many weights ``mu``."""

    __slots__ = ("rs", "terms", "trunc")

    def __init__(self, rs, terms=None, trunc=EXACT):
        self.rs = rs
        self.trunc = tuple(trunc)
        self.terms = {}
        for w, s in (terms or {}).items():
            if not isinstance(s, SeriesQT):
                s = SeriesQT.const(s)
            s = s.truncate(*self.trunc)
            if s:
                self.terms[tuple(w)] = s

    @classmethod
    def from_flat(cls, rs, flat, trunc=EXACT):
        grouped = {}
        for key, c in flat.items():
            grouped.setdefault(key[:-2], {})[key[-2:]] = c
        return cls(rs, {w: SeriesQT(cs, trunc) for w, cs in grouped.items()}, trunc)

    @classmethod
    def one(cls, rs, trunc=EXACT):
        return cls(rs, {rs.zero: 1}, trunc)

    def flat(self):
        return {w + k: c for w, s in self.terms.items() for k, c in s.coeffs.items()}

    def coefficient(self, w):
        return self.terms.get(tuple(w), SeriesQT({}, self.trunc))

    @property
    def support(self):
        return set(self.terms)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def truncate(self, nq=INF, nt=INF):
        return CharElement(self.rs, self.terms, _mintrunc(self.trunc, (nq, nt)))

    def __add__(self, other):
        if other == 0 and not isinstance(other, CharElement):
            return self
        out = dict(self.terms)
        for w, s in other.terms.items():
            out[w] = out[w] + s if w in out else s
        return CharElement(self.rs, out, _mintrunc(self.trunc, other.trunc))

    __radd__ = __add__

    def __neg__(self):
        return CharElement(self.rs, {w: -s for w, s in self.terms.items()}, self.trunc)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, SeriesQT)):
            trunc = self.trunc
            if isinstance(other, SeriesQT):
                trunc = _mintrunc(trunc, other.trunc)
            return CharElement(self.rs, {w: s * other for w, s in self.terms.items()}, trunc)
        if not isinstance(other, CharElement):
            return NotImplemented
        return product([self, other])

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, CharElement):
            return NotImplemented
        trunc = _mintrunc(self.trunc, other.trunc)
        zero = SeriesQT({}, trunc)
        for w in self.support | other.support:
            if not (self.terms.get(w, zero) - other.terms.get(w, zero)).truncate(*trunc).is_zero():
                return False
        return True

    __hash__ = None

    def bar(self):
        return bar_involution(self)

    def constant_term(self):
        return constant_term(self)

    def at_t0(self):
        return CharElement(self.rs, {w: s.at_t0() for w, s in self.terms.items()},
                           (self.trunc[0], INF))

    def is_w_invariant(self):
        rs = self.rs
        for w, s in self.terms.items():
            for i in range(rs.rank):
                if self.coefficient(rs.reflect(w, i)) != s:
                    return False
        return True

    def dominant_part(self):
        """Coefficients on dominant weights; for W-invariant elements this is the m-expansion."""
        return {w: s for w, s in self.terms.items() if is_dominant(w)}

    def __repr__(self):
        return f"CharElement({self.rs.name}, {len(self.terms)} weights, trunc={self.trunc})"


def product(elements, trunc=None, backend=None):
    """Product of several characters through the sparse kernel."""
    elements = list(elements)
    rs = elements[0].rs
    t = EXACT
    for e in elements:
        t = _mintrunc(t, e.trunc)
    if trunc is not None:
        t = _mintrunc(t, trunc)
    if any(e.is_zero() for e in elements):
        return CharElement(rs, {}, t)
    flat = kernels.chain_product([e.flat() for e in elements], t[0], t[1], backend=backend)
    return CharElement.from_flat(rs, flat, t)


def from_orbit_sums(rs, coeffs, trunc=EXACT):
    """``sum_mu c_mu m_mu`` from a map of dominant weights to coefficients."""
    terms = {}
    for mu, c in coeffs.items():
        for w in rs.orbit(mu):
            terms[w] = c
    return CharElement(rs, terms, trunc)


def monomial_sym(rs, lam, trunc=EXACT):
    """Orbit sum ``m_lam``."""
    lam = tuple(lam)
    if len(lam) != rs.rank or not is_dominant(lam):
        raise ValueError(f"monomial_sym needs a dominant weight of rank {rs.rank}, got {lam}")
    return from_orbit_sums(rs, {lam: 1}, trunc)


def dominant_multiplicities(rs, lam):
    """Weight multiplicities of L(lam) on dominant weights, by Freudenthal's formula."""
    from .rootsys import dominant_weights_below

    lam = tuple(lam)
    key = ("freudenthal", lam)
    hit = rs._cache.get(key)
    if hit is not None:
        return dict(hit)
    rho = (1,) * rs.rank
    dom = dominant_weights_below(rs, lam)
    allowed = set(dom)
    lr = add(lam, rho)
    top = rs.inner(lr, lr)
    mult = {lam: 1}

    def m(nu):
        d = rs.dominant_conjugate(nu)[0]
        return mult.get(d, 0) if d in allowed else None

    for mu in reversed(dom[:-1]):
        total = Fraction(0)
        for alpha in rs.positive_roots:
            k = 1
            while True:
                nu = tuple(a + k * b for a, b in zip(mu, alpha))
                mk = m(nu)
                if mk is None:
                    break
                total += mk * rs.inner(nu, alpha)
                k += 1
        mr = add(mu, rho)
        val = 2 * total / (top - rs.inner(mr, mr))
        if val.denominator != 1:
            raise ArithmeticError(f"non-integral multiplicity at {mu}")
        mult[mu] = int(val)
    mult = {mu: c for mu, c in mult.items() if c}
    rs._cache[key] = dict(mult)
    return mult


def schur_char(rs, lam, trunc=EXACT):
    """Character of the irreducible module with highest weight ``lam``."""
    lam = tuple(lam)
    if len(lam) != rs.rank or not is_dominant(lam):
        raise ValueError(f"schur_char needs a dominant weight of rank {rs.rank}, got {lam}")
    return from_orbit_sums(rs, dominant_multiplicities(rs, lam), trunc)


def bar_involution(f):
    """``e^mu -> e^{-mu}``; q and t are left alone."""
    return CharElement(f.rs, {neg(w): s for w, s in f.terms.items()}, f.trunc)


def constant_term(f):
    return f.coefficient(f.rs.zero)


def expand_in_triangular_basis(f, basis):
    """Coefficients ``c`` with ``f = sum_i c_i basis_i`` by back-substitution.

    ``basis`` must be ordered descending by total order key and each element
    must have an invertible coefficient on its leading dominant weight.
    Works on dominant parts, so all inputs are assumed W-invariant.
    """
    rs = f.rs
    residual = dict(f.dominant_part())
    trunc = f.trunc
    coeffs = []
    for b in basis:
        bd = b.dominant_part()
        if not bd:
            raise ValueError("zero element in triangular basis")
        lead = max(bd, key=lambda w: total_order_key(rs, w))
        trunc = _mintrunc(trunc, b.trunc)
        r = residual.get(lead)
        if r is None or r.truncate(*trunc).is_zero():
            coeffs.append(SeriesQT({}, trunc))
            continue
        c = (r * bd[lead].invert()).truncate(*trunc)
        coeffs.append(c)
        for w, s in bd.items():
            v = residual.get(w, SeriesQT({}, trunc)) - c * s
            if v.truncate(*trunc).is_zero():
                residual.pop(w, None)
            else:
                residual[w] = v
    leftover = {w: s for w, s in residual.items() if not s.truncate(*trunc).is_zero()}
    if leftover:
        w = max(leftover, key=lambda x: total_order_key(rs, x))
        raise ExpansionError(w, leftover[w])
    return coeffs


def schur_expansion(f, lam_bound=None):
    """Expansion of a W-invariant element in Schur characters.

    Returns a dict dominant weight -> SeriesQT.  Dominant weights are
    processed from the top of the support downward.
    """
    rs = f.rs
    residual = {w: s for w, s in f.dominant_part().items()}
    out = {}
    while residual:
        lam = max(residual, key=lambda w: total_order_key(rs, w))
        c = residual.pop(lam)
        if c.is_zero():
            continue
        out[lam] = c
        for mu, k in dominant_multiplicities(rs, lam).items():
            if mu == lam:
                continue
            v = residual.get(mu, SeriesQT({}, f.trunc)) - c * k
            if v.is_zero():
                residual.pop(mu, None)
            else:
                residual[mu] = v
    return out


def format_rational(c):
    c = normalize(c)
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def parse_rational(text):
    return normalize(Fraction(text))


def _bound(x):
    return None if x == INF else int(x)


def _unbound(x):
    return INF if x is None else int(x)


def series_to_json(s):
    return {
        "trunc": [_bound(s.trunc[0]), _bound(s.trunc[1])],
        "terms": [[a, b, format_rational(c)] for (a, b), c in sorted(s.coeffs.items())],
    }


def series_from_json(obj):
    trunc = (_unbound(obj["trunc"][0]), _unbound(obj["trunc"][1]))
    return SeriesQT({(a, b): parse_rational(c) for a, b, c in obj["terms"]}, trunc)


def char_to_json(f):
    terms = []
    for w in sorted(f.terms):
        for (a, b), c in sorted(f.terms[w].coeffs.items()):
            terms.append([list(w), a, b, format_rational(c)])
    return {
        "root_system": f.rs.name,
        "trunc": [_bound(f.trunc[0]), _bound(f.trunc[1])],
        "terms": terms,
    }


def char_from_json(obj, rs=None):
    from .rootsys import parse_root_system

    rs = rs or parse_root_system(obj["root_system"])
    trunc = (_unbound(obj["trunc"][0]), _unbound(obj["trunc"][1]))
    flat = {tuple(w) + (a, b): parse_rational(c) for w, a, b, c in obj["terms"]}
    return CharElement.from_flat(rs, flat, trunc)


def canonical_json(obj):
    """Deterministic JSON text: sorted keys, no insignificant whitespace variation."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)
