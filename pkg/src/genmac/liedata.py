"""Weight-multiplicity data of graded Lie (super)algebras and their pairing kernels.

An algebra enters the pairing only through its character: for every
bidegree ``(a, b)`` (powers of q and t) and weight ``mu`` we record how many
even and odd basis vectors of the positive part live there.  The degree
zero part is always the simple Lie algebra of ``rs`` and is not stored.
"""

import math
import threading
from collections import defaultdict
from dataclasses import dataclass

from . import kernels
from .charring import CharElement
from .rootsys import parse_root_system
from .series import INF

POLY_X = "poly_x"
POLY_X_XI = "poly_x_xi"
TRUNC_X = "trunc_x"
POLY_XY = "poly_xy"
EXPLICIT = "explicit"
CLASSICAL = "classical"


@dataclass(frozen=True)
class CoefficientSpec:
    """Graded commutative coefficient algebra ``A`` for ``g (x) A``.

    ``kind`` is one of ``poly_x``, ``poly_x_xi``, ``trunc_x`` (with ``n``),
    ``poly_xy``, ``classical`` (A = C) or ``explicit`` (with ``dims``, a
    tuple of ``(q, t, even, odd)`` for the positive part of A).
    """

    kind: str
    n: int = 0
    dims: tuple = ()

    @property
    def label(self):
        if self.kind == TRUNC_X:
            return f"trunc_x({self.n})"
        if self.kind == EXPLICIT:
            return "explicit(" + ";".join(",".join(map(str, d)) for d in self.dims) + ")"
        return self.kind

    def graded_dims(self, nq, nt):
        """Map ``(a, b) -> (even, odd)`` for A_+ restricted to ``a <= nq, b <= nt``."""
        out = {}
        qtop = int(nq) if nq != INF else None
        if self.kind in (POLY_X, POLY_XY, POLY_X_XI) and qtop is None:
            raise ValueError(f"{self.kind} is infinite; a finite Nq is required")
        if self.kind == POLY_X:
            for r in range(1, qtop + 1):
                out[(r, 0)] = (1, 0)
        elif self.kind == POLY_XY:
            for r in range(1, qtop + 1):
                out[(r, 0)] = (r + 1, 0)
        elif self.kind == POLY_X_XI:
            for r in range(1, qtop + 1):
                out[(r, 0)] = (1, 0)
            if nt >= 1:
                for r in range(0, qtop + 1):
                    out[(r, 1)] = (0, 1)
        elif self.kind == TRUNC_X:
            if self.n < 1:
                raise ValueError("trunc_x needs n >= 1")
            top = self.n - 1 if qtop is None else min(self.n - 1, qtop)
            for r in range(1, top + 1):
                out[(r, 0)] = (1, 0)
        elif self.kind == EXPLICIT:
            for a, b, even, odd in self.dims:
                if even < 0 or odd < 0:
                    raise ValueError("negative graded dimension")
                if a < 0 or b < 0 or (a, b) == (0, 0):
                    raise ValueError("graded pieces of A_+ need (q, t) != (0, 0), both >= 0")
                if a <= nq and b <= nt and (even or odd):
                    e0, o0 = out.get((a, b), (0, 0))
                    out[(a, b)] = (e0 + even, o0 + odd)
        elif self.kind != CLASSICAL:
            raise ValueError(f"unknown coefficient algebra {self.kind!r}")
        return out

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = {"kind": obj}
        kind = str(obj.get("kind", "")).lower()
        if kind == TRUNC_X:
            return cls(kind, n=int(obj["n"]))
        if kind == EXPLICIT:
            dims = tuple(tuple(int(x) for x in d) for d in obj["dims"])
            for d in dims:
                if len(d) != 4:
                    raise ValueError("explicit dims entries are [q, t, even, odd]")
            return cls(kind, dims=dims)
        if kind not in (POLY_X, POLY_X_XI, POLY_XY, CLASSICAL):
            raise ValueError(f"unknown coefficient algebra {kind!r}")
        return cls(kind)

    def to_json(self):
        out = {"kind": self.kind}
        if self.kind == TRUNC_X:
            out["n"] = self.n
        if self.kind == EXPLICIT:
            out["dims"] = [list(d) for d in self.dims]
        return out


@dataclass(frozen=True)
class GradedLieData:
    """Weight multiplicities of the positive part of a graded Lie superalgebra.

    ``table`` is a sorted tuple of ``((a, b, weight), (even, odd))``.
    """

    rs: object
    table: tuple
    has_anti_involution: bool
    name: str
    trunc: tuple

    def entries(self):
        return dict(self.table)

    @property
    def root_lattice_supported(self):
        return all(self.rs.in_root_lattice(w) for (_, _, w), _ in self.table)

    def slices(self):
        out = defaultdict(dict)
        for (a, b, w), m in self.table:
            out[(a, b)][w] = m
        return dict(out)

    def __repr__(self):
        return f"GradedLieData({self.name}, trunc={self.trunc})"


def make_lie_data(rs, table, name, trunc, has_anti_involution=False):
    """Validate and freeze a multiplicity table ``{(a, b, weight): (even, odd)}``."""
    nq, nt = trunc
    if not (nq == INF or nq >= 0) or not (nt == INF or nt >= 0):
        raise ValueError("truncation bounds must be nonnegative")
    clean = {}
    for (a, b, w), (even, odd) in table.items():
        w = tuple(w)
        if even < 0 or odd < 0:
            raise ValueError("negative multiplicity")
        if a < 0 or b < 0:
            raise ValueError("negative degree in multiplicity table")
        if (a, b) == (0, 0):
            if odd:
                raise ValueError("odd generator in degree (0, 0): its geometric series does not truncate")
            raise ValueError("degree (0, 0) belongs to the semisimple part and is not tabulated")
        if len(w) != rs.rank:
            raise ValueError(f"weight {w} has wrong rank")
        if a > nq or b > nt or not (even or odd):
            continue
        clean[(a, b, w)] = (even, odd)
    data = GradedLieData(rs, tuple(sorted(clean.items())), bool(has_anti_involution),
                         name, (nq, nt))
    for (a, b), sl in data.slices().items():
        for w, m in sl.items():
            for i in range(rs.rank):
                if sl.get(rs.reflect(w, i)) != m:
                    raise ValueError(f"slice ({a}, {b}) is not W-stable at weight {w}")
    if has_anti_involution:
        for (a, b), sl in data.slices().items():
            for w, m in sl.items():
                if sl.get(tuple(-x for x in w)) != m:
                    raise ValueError(f"slice ({a}, {b}) is not symmetric under w -> -w")
    return data


def adjoint_weights(rs):
    """Weights of the adjoint representation with multiplicities."""
    out = {r: 1 for r in rs.roots}
    out[rs.zero] = rs.rank
    return out


def current_algebra_data(rs, spec, trunc):
    """Data of ``g (x) A`` with g of type ``rs`` and A given by ``spec``."""
    if isinstance(spec, (str, dict)):
        spec = CoefficientSpec.from_json(spec)
    nq, nt = trunc
    table = {}
    adj = adjoint_weights(rs)
    for (a, b), (even, odd) in spec.graded_dims(nq, nt).items():
        for w, m in adj.items():
            table[(a, b, w)] = (m * even, m * odd)
    return make_lie_data(rs, table, f"{rs.name}:{spec.label}", trunc, has_anti_involution=True)


def classical_data(rs, trunc=(0, 0)):
    """Empty table: only the semisimple part, so the pairing is Weyl integration."""
    return make_lie_data(rs, {}, f"{rs.name}:classical", trunc, has_anti_involution=True)


def t3_data(trunc=(INF, INF)):
    """sl3 with the vector representation in q-degree 1 and its exterior square in degree 2."""
    rs = parse_root_system("A2")
    table = {}
    for w in rs.orbit((1, 0)):
        table[(1, 0, w)] = (1, 0)
    for w in rs.orbit((0, 1)):
        table[(2, 0, w)] = (1, 0)
    return make_lie_data(rs, table, "A2:t3", trunc, has_anti_involution=False)


def data_from_json(obj):
    """Parse ``{"root_system": "A1", "coefficients": {...}, "Nq": 8, "Nt": 2}``."""
    if not isinstance(obj, dict):
        raise ValueError("algebra spec must be a JSON object")
    coeffs = obj.get("coefficients", {"kind": CLASSICAL})
    kind = coeffs.get("kind") if isinstance(coeffs, dict) else coeffs
    nq = obj.get("Nq")
    nt = obj.get("Nt", 0)
    if nq is None:
        raise ValueError("algebra spec needs Nq")
    nq, nt = int(nq), int(nt)
    if nq < 1 or nt < 0:
        raise ValueError("need Nq >= 1 and Nt >= 0")
    if kind == "t3":
        return t3_data((nq, nt))
    rs = parse_root_system(obj.get("root_system", ""))
    return current_algebra_data(rs, CoefficientSpec.from_json(coeffs), (nq, nt))


def data_to_json(data):
    kind = data.name.split(":", 1)[1]
    return {"name": data.name, "root_system": data.rs.name,
            "Nq": None if data.trunc[0] == INF else int(data.trunc[0]),
            "Nt": None if data.trunc[1] == INF else int(data.trunc[1]),
            "kind": kind}


def _binomial_factor(a, b, w, power, trunc, sign):
    """Flat polynomial of ``(1 - q^a t^b e^w)^(sign * power)`` up to the truncation."""
    nq, nt = trunc
    if sign < 0 and not ((a > 0 and nq != INF) or (b > 0 and nt != INF)):
        raise ValueError(f"geometric series in q^{a} t^{b} does not truncate")
    out = {}
    k = 0
    while k * a <= nq and k * b <= nt:
        if sign > 0:
            if k > power:
                break
            c = math.comb(power, k) * (-1) ** k
        else:
            c = math.comb(power + k - 1, k)
        out[tuple(k * x for x in w) + (k * a, k * b)] = c
        k += 1
    return out


def kernel_factors(data):
    """Flat factors whose product is the pairing kernel."""
    rs = data.rs
    zero = rs.zero + (0, 0)
    factors = []
    for alpha in rs.roots:
        factors.append({zero: 1, tuple(alpha) + (0, 0): -1})
    for (a, b, w), (even, odd) in data.table:
        if even:
            factors.append(_binomial_factor(a, b, w, even, data.trunc, +1))
        if odd:
            factors.append(_binomial_factor(a, b, w, odd, data.trunc, -1))
    return factors


_KERNELS = {}
_KERNEL_LOCK = threading.Lock()


def pairing_kernel(data, backend=None):
    """Product over roots of (1 - e^alpha) times the table factors, truncated."""
    key = (data, backend)
    with _KERNEL_LOCK:
        hit = _KERNELS.get(key)
    if hit is not None:
        return hit
    flat = kernels.chain_product(kernel_factors(data), data.trunc[0], data.trunc[1],
                                 backend=backend)
    k = CharElement.from_flat(data.rs, flat, data.trunc)
    with _KERNEL_LOCK:
        _KERNELS[key] = k
    return k


def pbw_factors(data, sign=-1):
    """Flat factors of prod (1 - x)^(-even) (1 - x)^(+odd) over the table."""
    factors = []
    for (a, b, w), (even, odd) in data.table:
        if even:
            factors.append(_binomial_factor(a, b, w, even, data.trunc, sign))
        if odd:
            factors.append(_binomial_factor(a, b, w, odd, data.trunc, -sign))
    return factors
