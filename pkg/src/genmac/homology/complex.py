"""Relative Chevalley-Eilenberg complex ``C(Lambda, Lambda_0; K)`` in exact arithmetic.

A cochain basis element is a pair ``(ghosts, v)``: a sorted tuple of
indices into the positive part (exterior for even elements, symmetric for
odd ones) and a module basis index.  Its internal degree is
``sum(deg ghosts) - deg(v)``; this is the exponent of q (and t) that the
Euler characteristic records, since it counts ``dim_{q^-1}``.  Cochains of
weight zero that are killed by every ``e_k`` and ``f_k`` are the relative
cochains.  The differential is the usual one,

    d v     = sum_b c^b (x_b . v)
    d c^a   = -1/2 sum_{b,c} (-1)^{p_b (1 + p_c)} f^a_{bc} c^b c^c,

extended as an odd derivation.
"""

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .. import linalg
from ..rootsys import add
from ..series import INF, SeriesQT
from .algebras import _axpy, _clean

DEFAULT_MAX_COCHAINS = 20000


class ComplexTooLarge(RuntimeError):
    pass


class DifferentialError(ArithmeticError):
    """``d^2 != 0``: brackets and module action are inconsistent."""


@dataclass
class CEBlock:
    key: tuple
    basis: list
    invariants: list = field(default_factory=list)


@dataclass
class CEComplex:
    lie: object
    module: object
    trunc: tuple
    blocks: dict
    images: dict

    def block(self, i, q, t, parity=0):
        return self.blocks.get((i, q, t, parity))

    def cochain_dims(self):
        """``{(i, q, t, parity): dim of relative cochains}``."""
        return {k: len(b.invariants) for k, b in self.blocks.items()}

    def ambient_dims(self):
        return {k: len(b.basis) for k, b in self.blocks.items()}

    def degree_dims(self):
        out = defaultdict(int)
        for (i, _, _, _), b in self.blocks.items():
            out[i] += len(b.invariants)
        return dict(out)

    def differential(self, vec):
        return _Ops(self.lie, self.module).d(vec)


class _Ops:
    """Sign bookkeeping shared by the differential and the degree zero action."""

    def __init__(self, lie, module):
        self.lie = lie
        self.module = module
        self.positive = lie.positive()
        self.pos_set = set(self.positive)
        self.exterior = {a: lie.basis[a].parity == 0 for a in self.positive}
        self._dghost = {}
        self._coad = {}

    def canon(self, seq):
        ext = [a for a in seq if self.exterior[a]]
        if len(set(ext)) != len(ext):
            return 0, None
        inv = 0
        for i in range(len(ext)):
            for j in range(i + 1, len(ext)):
                if ext[i] > ext[j]:
                    inv += 1
        return (-1 if inv % 2 else 1), tuple(sorted(seq))

    def dghost(self, a):
        hit = self._dghost.get(a)
        if hit is not None:
            return hit
        lie = self.lie
        out = []
        for b in self.positive:
            pb = lie.basis[b].parity
            for c in self.positive:
                f = lie.bracket(b, c).get(a)
                if f:
                    pc = lie.basis[c].parity
                    s = -1 if pb * (1 + pc) % 2 else 1
                    out.append(((b, c), Fraction(-s * f, 2)))
        self._dghost[a] = out
        return out

    def coadjoint(self, y, b):
        """``y . c^b = -sum_c f^b_{y c} c^c`` as a list of ``(c, coeff)``."""
        key = (y, b)
        hit = self._coad.get(key)
        if hit is None:
            hit = []
            for c in self.positive:
                f = self.lie.bracket(y, c).get(b)
                if f:
                    hit.append((c, -f))
            self._coad[key] = hit
        return hit

    def d(self, vec):
        out = {}
        module = self.module
        for (ghosts, v), coeff in vec.items():
            nprefix = 0
            for j, a in enumerate(ghosts):
                sgn = -1 if nprefix % 2 else 1
                for pair, f in self.dghost(a):
                    s, key = self.canon(ghosts[:j] + pair + ghosts[j + 1:])
                    if s:
                        k = (key, v)
                        out[k] = out.get(k, 0) + sgn * s * f * coeff
                if self.exterior[a]:
                    nprefix += 1
            for b in self.positive:
                image = module.act_basis(b, v)
                if not image:
                    continue
                s, key = self.canon((b,) + ghosts)
                if not s:
                    continue
                for w, c in image.items():
                    k = (key, w)
                    out[k] = out.get(k, 0) + s * c * coeff
        return _clean(out)

    def act_zero(self, y, vec):
        """Action of a degree zero element (even) on cochains."""
        out = {}
        module = self.module
        for (ghosts, v), coeff in vec.items():
            for j, b in enumerate(ghosts):
                for c, f in self.coadjoint(y, b):
                    s, key = self.canon(ghosts[:j] + (c,) + ghosts[j + 1:])
                    if s:
                        k = (key, v)
                        out[k] = out.get(k, 0) + s * f * coeff
            for w, c in module.act_basis(y, v).items():
                k = (ghosts, w)
                out[k] = out.get(k, 0) + c * coeff
        return _clean(out)


def _enumerate(lie, module, trunc, max_cochains):
    """Weight-zero cochain basis grouped by ``(i, q, t, parity)``."""
    nq, nt = trunc
    positive = lie.positive()
    info = [(a, lie.basis[a]) for a in positive]
    blocks = defaultdict(list)
    total = 0
    for vi, vb in enumerate(module.basis):
        qcap = nq + vb.q
        tcap = nt + vb.t
        target = vb.weight

        def rec(start, chosen, qs, ts, w):
            nonlocal total
            if w == target:
                par = sum(lie.basis[a].parity for a in chosen) % 2
                blocks[(len(chosen), qs - vb.q, ts - vb.t, par)].append((tuple(chosen), vi))
                total += 1
                if total > max_cochains:
                    raise ComplexTooLarge(f"more than {max_cochains} cochains; lower the truncation")
            for k in range(start, len(info)):
                a, b = info[k]
                if qs + b.q > qcap or ts + b.t > tcap:
                    continue
                chosen.append(a)
                rec(k + (1 if b.parity == 0 else 0), chosen, qs + b.q, ts + b.t, add(w, b.weight))
                chosen.pop()

        rec(0, [], 0, 0, lie.rs.zero)
    return blocks


def _invariants(ops, lie, basis):
    if not basis:
        return []
    gens = [x for e, f, _ in lie.chevalley for x in (e, f)]
    images = []
    for b in basis:
        row = {}
        for gi, y in enumerate(gens):
            for key, c in ops.act_zero(y, {b: 1}).items():
                row[(gi, key)] = c
        images.append(row)
    keys = sorted({k for r in images for k in r}, key=repr)
    if not keys:
        return [{b: 1} for b in basis]
    index = {k: i for i, k in enumerate(keys)}
    # matrix with one column per basis element
    rows = [[0] * len(basis) for _ in keys]
    for j, r in enumerate(images):
        for k, c in r.items():
            rows[index[k]][j] = c
    null = linalg.nullspace(rows, len(basis))
    return [{basis[j]: c for j, c in enumerate(v) if c} for v in null]


def ce_complex(lie, module, trunc=None, max_cochains=DEFAULT_MAX_COCHAINS, check=True):
    """Relative cochains with all internal degrees up to ``trunc = (Nq, Nt)``.

    With a purely even positive part the complex is finite and ``trunc``
    may be omitted (everything is computed).  Each ``(i, q, t)`` block is
    complete, so results are exact at every listed degree.
    """
    odd = any(lie.basis[a].parity for a in lie.positive())
    if trunc is None:
        if odd:
            raise ValueError("odd generators make the complex infinite; give trunc=(Nq, Nt)")
        trunc = (INF, INF)
    nq, nt = trunc
    if odd and (nq == INF or nt == INF):
        raise ValueError("odd generators need finite Nq and Nt")
    for a in lie.positive():
        b = lie.basis[a]
        if b.parity and b.q == 0 and b.t == 0:
            raise ValueError(f"odd element {b.label} in degree (0, 0)")
    ops = _Ops(lie, module)
    raw = _enumerate(lie, module, (nq, nt), max_cochains)
    blocks = {}
    for key in sorted(raw):
        basis = sorted(raw[key])
        blocks[key] = CEBlock(key, basis, _invariants(ops, lie, basis))
    images = {}
    for key, blk in blocks.items():
        images[key] = [ops.d(v) for v in blk.invariants]
        if check:
            for b in blk.basis:
                dd = ops.d(ops.d({b: 1}))
                if dd:
                    raise DifferentialError(f"d^2 != 0 on cochain {b}")
    return CEComplex(lie, module, (nq, nt), blocks, images)


@dataclass
class CohomologyTable:
    """Cohomology and relative cochain dimensions per ``(i, q, t, weight)``.

    ``parity_dims`` splits ``dims`` by the parity of the cochain (number of
    odd ghosts); the Euler characteristic counts odd classes with the
    opposite sign.
    """

    dims: dict
    cochain_dims: dict
    parity_dims: dict
    parity_cochain_dims: dict
    trunc: tuple

    def nonzero(self):
        return {k: v for k, v in sorted(self.dims.items()) if v}

    def _euler(self, table):
        acc = {}
        for (i, q, t, _w, p), d in table.items():
            if d:
                acc[(q, t)] = acc.get((q, t), 0) + (-1) ** (i + p) * d
        return SeriesQT(acc, self.trunc)

    def euler(self):
        return self._euler(self.parity_dims)

    def cochain_euler(self):
        return self._euler(self.parity_cochain_dims)

    def total(self, i):
        return sum(d for (j, *_), d in self.dims.items() if j == i)


def cohomology(cx):
    zero = cx.lie.rs.zero
    ranks = {}
    for key, imgs in cx.images.items():
        rows, keys = linalg.sparse_rows_to_dense(imgs)
        ranks[key] = linalg.rank(rows, len(keys)) if keys else 0
    dims, cdims, pdims, pcdims = {}, {}, {}, {}
    for (i, q, t, p), blk in cx.blocks.items():
        c = len(blk.invariants)
        h = c - ranks.get((i, q, t, p), 0) - ranks.get((i - 1, q, t, p), 0)
        if h < 0:
            raise ArithmeticError("negative cohomology dimension")
        k = (i, q, t, zero)
        dims[k] = dims.get(k, 0) + h
        cdims[k] = cdims.get(k, 0) + c
        pdims[k + (p,)] = h
        pcdims[k + (p,)] = c
    return CohomologyTable(dims, cdims, pdims, pcdims, cx.trunc)
