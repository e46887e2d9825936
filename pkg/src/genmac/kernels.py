"""Dispatch for the hot kernels.

The compiled extension ``genmac._ckernels`` is used when it imports; set
``GENMAC_PURE_PYTHON=1`` to force the pure-Python fallback.  Both back ends
compute identical results: the compiled path packs keys into 64-bit
integers and bails out to Python whenever the packing box or machine
integer range would be exceeded.
"""

import math
import os
from fractions import Fraction
from functools import reduce

from . import _pykernels

_ckernels = None
if not os.environ.get("GENMAC_PURE_PYTHON"):
    try:
        from . import _ckernels
    except ImportError:
        _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"

_PACK_LIMIT = 1 << 62


def available_backends():
    return ("python", "cython") if _ckernels is not None else ("python",)


def _resolve(backend):
    if backend is None:
        return BACKEND
    if backend not in available_backends():
        raise ValueError(f"kernel backend {backend!r} is not available")
    return backend


def _integerize(factor):
    """Scale a factor to integer coefficients; returns (dict, scale)."""
    den = 1
    for c in factor.values():
        if isinstance(c, Fraction) and c.denominator != 1:
            den = den * c.denominator // math.gcd(den, c.denominator)
    if den == 1:
        return {k: int(c) for k, c in factor.items()}, 1
    return {k: int(c * den) for k, c in factor.items()}, den


def _box(factors, qcap, tcap, rank):
    """Per-coordinate weight bounds valid for every partial product."""
    lo = [0] * rank
    hi = [0] * rank
    qrate_hi = [Fraction(0)] * rank
    qrate_lo = [Fraction(0)] * rank
    trate_hi = [Fraction(0)] * rank
    trate_lo = [Fraction(0)] * rank
    for factor in factors:
        flo = [0] * rank
        fhi = [0] * rank
        for key in factor:
            q, t = key[-2], key[-1]
            for i in range(rank):
                w = key[i]
                if q > 0:
                    r = Fraction(w, q)
                    qrate_hi[i] = max(qrate_hi[i], r)
                    qrate_lo[i] = min(qrate_lo[i], r)
                elif t > 0:
                    r = Fraction(w, t)
                    trate_hi[i] = max(trate_hi[i], r)
                    trate_lo[i] = min(trate_lo[i], r)
                else:
                    flo[i] = min(flo[i], w)
                    fhi[i] = max(fhi[i], w)
        for i in range(rank):
            lo[i] += flo[i]
            hi[i] += fhi[i]
    for i in range(rank):
        lo[i] += math.floor(qrate_lo[i] * qcap + trate_lo[i] * tcap)
        hi[i] += math.ceil(qrate_hi[i] * qcap + trate_hi[i] * tcap)
    return lo, hi


def _packed_product(factors, qmax, tmax):
    rank = len(next(iter(factors[0]))) - 2
    for factor in factors:
        for key in factor:
            if key[-2] < 0 or key[-1] < 0:
                return None
    qcap = sum(max(k[-2] for k in f) for f in factors)
    tcap = sum(max(k[-1] for k in f) for f in factors)
    if qmax != math.inf:
        qcap = min(qcap, int(qmax))
    if tmax != math.inf:
        tcap = min(tcap, int(tmax))
    lo, hi = _box(factors, qcap, tcap, rank)
    strides = []
    stride = (qcap + 1) * (tcap + 1)
    for i in range(rank):
        strides.append(stride)
        stride *= hi[i] - lo[i] + 1
    if stride >= _PACK_LIMIT:
        return None
    qwidth = qcap + 1
    twidth = tcap + 1

    def pack(key):
        v = key[-2] + qwidth * key[-1]
        for i in range(rank):
            v += key[i] * strides[i]
        return v

    start = sum(-lo[i] * strides[i] for i in range(rank))
    scale = 1
    packed = []
    for factor in factors:
        factor, s = _integerize(factor)
        scale *= s
        keys, qs, ts, cs = [], [], [], []
        for k, c in factor.items():
            if c and k[-2] <= qcap and k[-1] <= tcap:
                keys.append(pack(k))
                qs.append(k[-2])
                ts.append(k[-1])
                cs.append(c)
        packed.append((keys, qs, ts, cs))
    try:
        raw = _ckernels.packed_chain_product(start, packed, qwidth, twidth)
    except OverflowError:
        return None

    out = {}
    for key, c in raw.items():
        v = key
        q = v % qwidth
        v //= qwidth
        t = v % twidth
        v //= twidth
        coords = []
        for i in range(rank):
            width = hi[i] - lo[i] + 1
            coords.append(v % width + lo[i])
            v //= width
        coeff = Fraction(c, scale) if scale != 1 else c
        if isinstance(coeff, Fraction) and coeff.denominator == 1:
            coeff = coeff.numerator
        out[tuple(coords) + (q, t)] = coeff
    return out


def chain_product(factors, qmax=math.inf, tmax=math.inf, backend=None):
    """Product of sparse polynomials keyed by ``(w_1, ..., w_r, q, t)``.

    Terms with q-exponent above ``qmax`` or t-exponent above ``tmax`` are
    dropped.  Returns a dict with nonzero coefficients only.
    """
    factors = [f for f in factors]
    if not factors:
        raise ValueError("empty product needs an explicit unit")
    if any(not f for f in factors):
        return {}
    if _resolve(backend) == "cython" and len(factors) > 1:
        out = _packed_product(factors, qmax, tmax)
        if out is not None:
            return out
    return _pykernels.chain_product(factors, qmax, tmax)


def integer_rank(rows, ncols, backend=None):
    """Rank of an integer matrix given as a list of rows."""
    if not rows or ncols == 0:
        return 0
    if _resolve(backend) == "cython":
        try:
            return _ckernels.bareiss_rank(rows, ncols)
        except OverflowError:
            pass
    return _pykernels.bareiss_rank(rows, ncols)


def rational_rank(rows, ncols, backend=None):
    """Rank of a matrix with Fraction or int entries (rows are scaled)."""
    scaled = []
    for row in rows:
        den = reduce(lambda a, c: a * c.denominator // math.gcd(a, c.denominator)
                     if isinstance(c, Fraction) else a, row, 1)
        scaled.append([int(c * den) for c in row])
    return integer_rank(scaled, ncols, backend)
