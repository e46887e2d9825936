"""Generalized Macdonald polynomials by triangular orthogonalization.

``P_lam = m_lam + lower terms`` is orthogonal to every ``P_mu`` with a
smaller total order key.  Orthogonalization runs over all dominant weights
below ``lam`` in the total order (within the same class modulo the root
lattice when the kernel is supported there); coefficients produced against
weights that are incomparable with ``lam`` in the dominance order are kept
separately as ``incomparable_residue``.
"""

import threading
from dataclasses import dataclass, field

from .charring import (CharElement, expand_in_triangular_basis, from_orbit_sums, product,
                       schur_char, schur_expansion)
from .liedata import POLY_X, current_algebra_data, pbw_factors
from .pairing import PathDisagreement, gram_entry, pair, pair_orbit_sums
from .rootsys import dominance_leq, dominant_weights_upto, is_dominant, total_order_key
from .series import INF, SeriesQT


class NormalizationError(ArithmeticError):
    pass


class NotStabilized(ArithmeticError):
    pass


@dataclass
class MacdonaldResult:
    lam: tuple
    P: CharElement
    norm: SeriesQT
    Q: CharElement
    coefficients: dict
    incomparable_residue: dict = field(default_factory=dict)

    @property
    def z(self):
        """``1 / norm``."""
        return self.norm.invert()


class _Chain:
    """Per-data memo of orthogonalized polynomials in the orbit-sum basis."""

    def __init__(self, data):
        self.data = data
        self.lock = threading.RLock()
        self.expansions = {}
        self.norms = {}
        self.residues = {}
        self.results = {}


_CHAINS = {}
_CHAINS_LOCK = threading.Lock()


def _chain(data):
    with _CHAINS_LOCK:
        ch = _CHAINS.get(data)
        if ch is None:
            ch = _CHAINS[data] = _Chain(data)
    return ch


def clear_memo():
    with _CHAINS_LOCK:
        _CHAINS.clear()


def seed_memo(data, lam, expansion, norm, residue=None):
    """Insert a previously computed polynomial (used by the on-disk cache)."""
    ch = _chain(data)
    with ch.lock:
        ch.expansions[tuple(lam)] = expansion
        ch.norms[tuple(lam)] = norm
        ch.residues[tuple(lam)] = residue or {}


def orthogonalization_order(data, lam):
    """Dominant weights processed before and including ``lam``, ascending."""
    rs = data.rs
    same = data.root_lattice_supported
    return dominant_weights_upto(rs, lam, same_coset=same)


def _compute(ch, lam, backend):
    data = ch.data
    rs = data.rs
    order = orthogonalization_order(data, lam)
    earlier = [mu for mu in order if mu != lam]
    for mu in earlier:
        if mu not in ch.expansions:
            _compute(ch, mu, backend)
    trunc = data.trunc
    m_lam = {lam: SeriesQT.const(1, trunc)}
    gs = {}
    for mu in earlier:
        num = pair_orbit_sums(data, m_lam, ch.expansions[mu], backend)
        if not data.has_anti_involution:
            # one-sided orthogonality: earlier P_nu need not be orthogonal to later ones
            for nu, c in gs.items():
                if c:
                    num = num - c * pair_orbit_sums(data, ch.expansions[nu],
                                                    ch.expansions[mu], backend)
        gs[mu] = num * ch.norms[mu].invert() if num else SeriesQT({}, trunc)
    expansion = dict(m_lam)
    residue = {}
    for mu, c in gs.items():
        if not c:
            continue
        if not dominance_leq(rs, mu, lam):
            residue[mu] = c
        for nu, b in ch.expansions[mu].items():
            v = expansion.get(nu, SeriesQT({}, trunc)) - c * b
            if v:
                expansion[nu] = v
            else:
                expansion.pop(nu, None)
    norm = pair_orbit_sums(data, expansion, expansion, backend)
    if norm.constant == 0:
        raise NormalizationError(f"norm of P_{lam} has vanishing constant term")
    ch.expansions[lam] = expansion
    ch.norms[lam] = norm
    ch.residues[lam] = residue


def macdonald_polynomial(data, lam, backend=None):
    """Unitriangular orthogonal polynomial ``P_lam`` with its norm and dual."""
    lam = tuple(lam)
    if len(lam) != data.rs.rank or not is_dominant(lam):
        raise ValueError(f"expected a dominant weight of rank {data.rs.rank}, got {lam}")
    ch = _chain(data)
    with ch.lock:
        hit = ch.results.get(lam)
        if hit is not None:
            return hit
        if lam not in ch.expansions:
            _compute(ch, lam, backend)
        expansion = ch.expansions[lam]
        norm = ch.norms[lam]
        P = from_orbit_sums(data.rs, expansion, data.trunc)
        res = MacdonaldResult(lam=lam, P=P, norm=norm, Q=P * norm.invert(),
                              coefficients=dict(expansion),
                              incomparable_residue=dict(ch.residues[lam]))
        ch.results[lam] = res
        return res


def macdonald_norm(data, lam, backend=None):
    return macdonald_polynomial(data, lam, backend).norm


def dual_macdonald(data, lam, backend=None):
    return macdonald_polynomial(data, lam, backend).Q


def projective_character(data, lam, backend=None):
    """PBW character of the module induced from L(lam): even generators in the denominator."""
    s = schur_char(data.rs, lam, data.trunc)
    factors = pbw_factors(data)
    if not factors:
        return s
    pbw = CharElement.from_flat(data.rs, _chain_flat(factors, data.trunc, backend), data.trunc)
    return product([s, pbw], backend=backend)


def _chain_flat(factors, trunc, backend):
    from . import kernels

    return kernels.chain_product(factors, trunc[0], trunc[1], backend=backend)


def _series_equal(a, b):
    return (a - b).is_zero()


@dataclass
class BGGTransition:
    weights: list
    matrix: dict
    support: dict


def bgg_transition(data, lam_max, backend=None):
    """Transition matrix ``m[lam, mu]`` from projective characters to the Q basis.

    Path (a) pairs the projective character with ``P_mu``; path (b) expands
    it in the ``Q`` basis by back-substitution.  Both must agree.
    """
    if not data.has_anti_involution:
        raise ValueError("the transition matrix needs a symmetric pairing (anti-involution)")
    rs = data.rs
    lam_max = tuple(lam_max)
    weights = dominant_weights_upto(rs, lam_max)
    matrix = {}
    support = {}
    for lam in weights:
        proj = projective_character(data, lam, backend)
        dom = proj.dominant_part()
        top = max(dom, key=lambda w: total_order_key(rs, w))
        basis_weights = [mu for mu in reversed(orthogonalization_order(data, top))
                         if not data.root_lattice_supported or rs.coset(mu) == rs.coset(lam)]
        basis = [macdonald_polynomial(data, mu, backend).Q for mu in basis_weights]
        coeffs = dict(zip(basis_weights, expand_in_triangular_basis(proj, basis)))
        support[lam] = {mu: c for mu, c in coeffs.items() if c}
        for mu in weights:
            a = pair(data, proj, macdonald_polynomial(data, mu, backend).P, backend)
            b = coeffs.get(mu, SeriesQT({}, data.trunc))
            if not _series_equal(a, b):
                raise PathDisagreement(f"m[{lam}, {mu}]: pairing gives {a}, expansion gives {b}")
            matrix[(lam, mu)] = a
    return BGGTransition(weights, matrix, support)


@dataclass
class ReportRow:
    label: str
    status: str
    detail: str = ""
    values: dict = field(default_factory=dict)


@dataclass
class Report:
    title: str
    rows: list

    @property
    def passed(self):
        return all(r.status == "PASS" for r in self.rows)

    @property
    def status(self):
        return "PASS" if self.passed else "FAIL"


def _first_bad_coefficient(s):
    for (a, b), c in sorted(s.coeffs.items()):
        if c < 0 or getattr(c, "denominator", 1) != 1:
            return (a, b, c)
    return None


def verify_bgg(data, lam_max, backend=None):
    """Check integrality, positivity and reciprocity of the transition matrix."""
    tr = bgg_transition(data, lam_max, backend)
    rows = []
    for lam in tr.weights:
        for mu in tr.weights:
            m = tr.matrix[(lam, mu)]
            schur = schur_expansion(macdonald_polynomial(data, mu, backend).P)
            s = schur.get(lam, SeriesQT({}, data.trunc))
            bad = _first_bad_coefficient(m)
            label = f"m[{_w(lam)}, {_w(mu)}]"
            if bad is not None:
                a, b, c = bad
                rows.append(ReportRow(label, "FAIL",
                                      f"coefficient of q^{a} t^{b} is {c}", {"m": m, "schur": s}))
            elif not _series_equal(m, s):
                diff = m - s
                (a, b), c = diff.items()[0]
                rows.append(ReportRow(label, "FAIL",
                                      f"differs from Schur coefficient at q^{a} t^{b} by {c}",
                                      {"m": m, "schur": s}))
            else:
                rows.append(ReportRow(label, "PASS", "", {"m": m, "schur": s}))
    return Report(f"BGG reciprocity for {data.name} up to {_w(tuple(lam_max))}", rows)


def norm_product(rs, lam, nq):
    """``prod_i prod_{j=1}^{lam_i} (1 - q^j)`` truncated at ``q^nq``."""
    trunc = (nq, INF)
    out = SeriesQT.const(1, trunc)
    for li in lam:
        for j in range(1, li + 1):
            out = out * SeriesQT({(0, 0): 1, (j, 0): -1}, trunc)
    return out


def verify_norm_product(rs, lam_max, nq=12, backend=None):
    """Compare ``<P_lam, P_lam>`` for ``g (x) C[x]`` with the inverse product formula.

    Each row records the quoted identity ``norm == 1 / prod (1 - q^j)``
    (the row status) and, in ``values``, whether the reciprocal relation
    ``norm == prod (1 - q^j)`` holds instead.
    """
    data = current_algebra_data(rs, POLY_X, (nq, 0))
    rows = []
    for lam in dominant_weights_upto(rs, tuple(lam_max)):
        norm = macdonald_norm(data, lam, backend)
        prodj = norm_product(rs, lam, nq)
        quoted = prodj.invert()
        ok = _series_equal(norm.at_t0(), quoted)
        reciprocal = _series_equal(norm.at_t0(), prodj)
        detail = "" if ok else f"norm = {norm.at_t0()}"
        rows.append(ReportRow(f"lambda={_w(lam)}", "PASS" if ok else "FAIL", detail,
                              {"norm": norm, "inverse_product": quoted,
                               "reciprocal_identity": "PASS" if reciprocal else "FAIL"}))
    return Report(f"norm product formula for {rs.name}[x] up to {_w(tuple(lam_max))}", rows)


def stable_polynomial(rs, lam, nq, extra=5, kind=POLY_X, backend=None):
    """``P_lam`` for ``g (x) C[x]`` accepted only if it is unchanged at ``nq + extra``.

    Returns the orbit-sum expansion with exact (untruncated) coefficients.
    """
    lo = macdonald_polynomial(current_algebra_data(rs, kind, (nq, 0)), lam, backend)
    hi = macdonald_polynomial(current_algebra_data(rs, kind, (nq + extra, 0)), lam, backend)
    weights = set(lo.coefficients) | set(hi.coefficients)
    out = {}
    for mu in weights:
        a = lo.coefficients.get(mu, SeriesQT({}, lo.norm.trunc))
        b = hi.coefficients.get(mu, SeriesQT({}, hi.norm.trunc))
        if not _series_equal(a, b.truncate(nq)):
            raise NotStabilized(f"coefficient of m_{mu} changed between Nq={nq} and Nq={nq + extra}")
        if any(a_ > nq for (a_, _) in b.coeffs):
            raise NotStabilized(f"coefficient of m_{mu} has terms beyond q^{nq}")
        out[mu] = SeriesQT(b.coeffs)
    return out


def _w(w):
    return "(" + ",".join(str(x) for x in w) + ")"


def weight_label(w):
    return _w(w)
