"""Finite-dimensional graded modules over a :class:`FiniteGradedLie`.

Module vectors are even.  Odd elements of the algebra must therefore act
by zero, which covers every module used here (simple modules of the
degree zero part, their duals and Hom spaces).
"""

from dataclasses import dataclass
from itertools import combinations_with_replacement

from ..charring import CharElement
from ..rootsys import add, sub
from ..series import SeriesQT
from .algebras import StructureError, _axpy, _clean


@dataclass(frozen=True)
class ModuleVector:
    label: str
    weight: tuple
    q: int = 0
    t: int = 0


class FiniteModule:
    """Basis plus one sparse matrix per algebra basis element.

    ``action[x][(row, col)] = c`` means ``x . v_col = sum_row c v_row``.
    """

    def __init__(self, lie, basis, action, name=""):
        self.lie = lie
        self.basis = [ModuleVector(b.label, tuple(b.weight), int(b.q), int(b.t)) for b in basis]
        self.action = {}
        for x, mat in action.items():
            mat = _clean(mat)
            if mat:
                self.action[x] = mat
        self.name = name
        self._cols = None

    @property
    def dim(self):
        return len(self.basis)

    def _columns(self):
        if self._cols is None:
            cols = {}
            for x, mat in self.action.items():
                per = cols.setdefault(x, {})
                for (r, c), v in mat.items():
                    per.setdefault(c, {})[r] = v
            self._cols = cols
        return self._cols

    def act_basis(self, x, col):
        """``x . v_col`` as a sparse vector."""
        return self._columns().get(x, {}).get(col, {})

    def act(self, x, vec):
        out = {}
        for col, c in vec.items():
            _axpy(out, self.act_basis(x, col), c)
        return _clean(out)

    def act_vec(self, xvec, vec):
        out = {}
        for x, a in xvec.items():
            _axpy(out, self.act(x, vec), a)
        return _clean(out)

    def character(self):
        terms = {}
        for b in self.basis:
            terms.setdefault(b.weight, {})
            key = (b.q, b.t)
            terms[b.weight][key] = terms[b.weight].get(key, 0) + 1
        return CharElement(self.lie.rs, {w: SeriesQT(c) for w, c in terms.items()})

    def validate(self):
        lie = self.lie
        for x, mat in self.action.items():
            bx = lie.basis[x]
            if bx.parity:
                raise StructureError(f"odd element {bx.label} acts nontrivially on even vectors")
            for (r, c) in mat:
                br, bc = self.basis[r], self.basis[c]
                if (br.weight != add(bc.weight, bx.weight) or br.q != bc.q + bx.q
                        or br.t != bc.t + bx.t):
                    raise StructureError(f"{bx.label} does not respect the grading on {bc.label}")
        for (i, j), vec in lie.brackets.items():
            if lie.basis[i].parity or lie.basis[j].parity:
                continue
            for col in range(self.dim):
                v = {col: 1}
                lhs = self.act_vec(vec, v)
                rhs = self.act(i, self.act(j, v))
                _axpy(rhs, self.act(j, self.act(i, v)), -1)
                if _clean(_axpy(lhs, rhs, -1)):
                    raise StructureError(f"action fails the bracket relation on ({i}, {j})")
        for i in range(lie.dim):
            for j in range(lie.dim):
                if (i, j) in lie.brackets or not (i in self.action and j in self.action):
                    continue
                for col in range(self.dim):
                    v = {col: 1}
                    rhs = self.act(i, self.act(j, v))
                    _axpy(rhs, self.act(j, self.act(i, v)), -1)
                    if _clean(rhs):
                        raise StructureError(f"commuting elements ({i}, {j}) act noncommutatively")
        return self

    def __repr__(self):
        return f"FiniteModule({self.name}, dim={self.dim})"


def zero_module(lie):
    return FiniteModule(lie, [], {}, "0")


def trivial_module(lie, q=0, t=0):
    return FiniteModule(lie, [ModuleVector("1", lie.rs.zero, q, t)], {}, "L(0)")


def irreducible_module(lie, lam, q=0, t=0):
    """Simple module ``L(lam)`` of the degree zero part, with the positive part acting by zero.

    Built for ``sl_2`` in the basis ``f^k v``.
    """
    lam = tuple(lam)
    if lie.rs.lie_type != "A" or lie.rs.rank != 1:
        raise NotImplementedError("irreducible modules are built for sl_2 only")
    m = lam[0]
    if m < 0:
        raise ValueError("highest weight must be dominant")
    (e, f, h), = lie.chevalley
    basis = [ModuleVector(f"f^{k}v", (m - 2 * k,), q, t) for k in range(m + 1)]
    action = {e: {}, f: {}, h: {}}
    for k in range(m + 1):
        action[h][(k, k)] = m - 2 * k
        if k < m:
            action[f][(k + 1, k)] = 1
        if k > 0:
            action[e][(k - 1, k)] = k * (m - k + 1)
    return FiniteModule(lie, basis, action, f"L({m})")


def induced_module(lie, base, max_degree):
    """``U(Lambda) (x)_{U(Lambda_0)} base`` modulo q-degrees above ``max_degree``.

    Needs an abelian, purely even positive part with positive q-degrees,
    so that ``U(Lambda_+)`` is a polynomial ring.
    """
    pos = lie.positive()
    for a in pos:
        b = lie.basis[a]
        if b.parity or b.q <= 0:
            raise NotImplementedError("induction is built for even positive parts in q-degree > 0")
        for c in pos:
            if lie.bracket(a, c):
                raise NotImplementedError("induction is built for abelian positive parts")
    for x in pos:
        if x in base.action:
            raise ValueError("the positive part must act by zero on the inducing module")
    monos = []
    for d in range(max_degree + 1):
        for combo in combinations_with_replacement(pos, d):
            if sum(lie.basis[a].q for a in combo) <= max_degree:
                monos.append(combo)
    monos = sorted(set(monos), key=lambda m: (len(m), m))
    index = {}
    basis = []
    for m in monos:
        for j, v in enumerate(base.basis):
            w = v.weight
            qd, td = v.q, v.t
            for a in m:
                w = add(w, lie.basis[a].weight)
                qd += lie.basis[a].q
                td += lie.basis[a].t
            index[(m, j)] = len(basis)
            label = "*".join(lie.basis[a].label for a in m)
            basis.append(ModuleVector(f"{label}|{v.label}" if m else v.label, w, qd, td))
    action = {}
    zero_part = lie.degree_zero()
    for (m, j), col in index.items():
        for y in zero_part:
            mat = action.setdefault(y, {})
            for k in range(len(m)):
                for c, coeff in lie.bracket(y, m[k]).items():
                    row = index.get((tuple(sorted(m[:k] + (c,) + m[k + 1:])), j))
                    if row is not None:
                        mat[(row, col)] = mat.get((row, col), 0) + coeff
            for r, coeff in base.act_basis(y, j).items():
                row = index[(m, r)]
                mat[(row, col)] = mat.get((row, col), 0) + coeff
        for a in pos:
            row = index.get((tuple(sorted(m + (a,))), j))
            if row is not None:
                action.setdefault(a, {})[(row, col)] = 1
    return FiniteModule(lie, basis, action, f"Ind({base.name})<={max_degree}")


def dual_module(lie, module):
    """Graded dual with degrees negated and the action twisted by tau.

    ``(x . f)(m) = f(tau(x) . m)``, so the dual basis vector of a weight
    ``mu`` vector again has weight ``mu``.
    """
    if lie.tau is None:
        raise ValueError("the dual module needs an anti-involution")
    basis = [ModuleVector(b.label + "^", b.weight, -b.q, -b.t) for b in module.basis]
    action = {}
    for x in range(lie.dim):
        tx = lie.tau.get(x, {})
        mat = {}
        for y, c in tx.items():
            for (r, col), v in module.action.get(y, {}).items():
                mat[(col, r)] = mat.get((col, r), 0) + c * v
        if _clean(mat):
            action[x] = mat
    return FiniteModule(lie, basis, action, f"{module.name}^")


def hom_module(source, target):
    """``Hom(source, target) = source^* (x) target`` with the conjugation action.

    Basis vector ``(i, j)`` is ``v_i^* (x) w_j`` with weight and degrees
    ``target_j - source_i``.
    """
    lie = source.lie
    ns, nt = source.dim, target.dim
    basis = []
    for i, a in enumerate(source.basis):
        for j, b in enumerate(target.basis):
            basis.append(ModuleVector(f"{a.label}*>{b.label}", sub(b.weight, a.weight),
                                      b.q - a.q, b.t - a.t))
    action = {}
    for x in set(source.action) | set(target.action):
        mat = {}
        for (r, c), v in source.action.get(x, {}).items():
            # x . v_r^* = -sum_c rho(x)_{r c} v_c^*
            for j in range(nt):
                key = (c * nt + j, r * nt + j)
                mat[key] = mat.get(key, 0) - v
        for (r, c), v in target.action.get(x, {}).items():
            for i in range(ns):
                key = (i * nt + r, i * nt + c)
                mat[key] = mat.get(key, 0) + v
        action[x] = mat
    return FiniteModule(lie, basis, action, f"Hom({source.name},{target.name})")


def module_from_json(lie, obj):
    """Module from ``{"builtin": "trivial" | "irreducible" | "induced" | "zero", ...}`` or a sparse table."""
    from fractions import Fraction

    if not isinstance(obj, dict):
        raise ValueError("module description must be a JSON object")
    builtin = obj.get("builtin")
    if builtin == "zero":
        return zero_module(lie)
    if builtin == "trivial":
        return trivial_module(lie, obj.get("q", 0), obj.get("t", 0))
    if builtin == "irreducible":
        return irreducible_module(lie, tuple(obj["highest_weight"]), obj.get("q", 0), obj.get("t", 0))
    if builtin == "induced":
        return induced_module(lie, module_from_json(lie, obj["from"]), int(obj["max_degree"]))
    if builtin is not None:
        raise ValueError(f"unknown builtin module {builtin!r}")
    basis = [ModuleVector(b["label"], tuple(b["weight"]), b.get("q", 0), b.get("t", 0))
             for b in obj["basis"]]
    action = {}
    for x, r, c, v in obj.get("action", []):
        action.setdefault(x, {})[(r, c)] = Fraction(str(v))
    return FiniteModule(lie, basis, action, obj.get("name", "custom")).validate()
