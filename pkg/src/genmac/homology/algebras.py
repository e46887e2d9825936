"""Finite-dimensional graded Lie superalgebras given by structure constants.

The degree zero part is ``sl_n`` in its matrix basis; the positive part
is whatever a builder attaches to it.  Every builder returns a
:class:`FiniteGradedLie` that passes :meth:`FiniteGradedLie.validate`.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from ..liedata import make_lie_data
from ..rootsys import add, neg, parse_root_system
from ..series import INF


class StructureError(ValueError):
    """Brackets, gradings or the anti-involution are inconsistent."""


@dataclass(frozen=True)
class BasisElement:
    label: str
    weight: tuple
    q: int
    t: int
    parity: int = 0


def _clean(vec):
    return {k: c for k, c in vec.items() if c}


def _axpy(out, vec, c):
    for k, v in vec.items():
        out[k] = out.get(k, 0) + c * v
    return out


class FiniteGradedLie:
    """Basis, sparse structure constants, Chevalley triples and an optional anti-involution.

    ``brackets[(i, j)]`` is the sparse vector ``[x_i, x_j]``.  ``chevalley``
    lists ``(e_k, f_k, h_k)`` index triples of the degree zero part and
    ``tau`` (if given) maps an index to the sparse vector ``tau(x_i)``.
    """

    def __init__(self, rs, basis, brackets, chevalley, tau=None, name=""):
        self.rs = rs
        self.basis = [BasisElement(b.label, tuple(b.weight), int(b.q), int(b.t), int(b.parity))
                      for b in basis]
        self.brackets = {}
        for key, vec in brackets.items():
            vec = _clean(vec)
            if vec:
                self.brackets[tuple(key)] = vec
        self.chevalley = [tuple(c) for c in chevalley]
        self.tau = None if tau is None else {i: _clean(v) for i, v in tau.items()}
        self.name = name

    @property
    def dim(self):
        return len(self.basis)

    def degree_zero(self):
        return [i for i, b in enumerate(self.basis) if b.q == 0 and b.t == 0]

    def positive(self):
        return [i for i, b in enumerate(self.basis) if b.q or b.t]

    @property
    def has_anti_involution(self):
        return self.tau is not None

    def bracket(self, i, j):
        return self.brackets.get((i, j), {})

    def bracket_vec(self, x, y):
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                _axpy(out, self.bracket(i, j), a * b)
        return _clean(out)

    def apply_tau(self, x):
        out = {}
        for i, a in x.items():
            _axpy(out, self.tau[i], a)
        return _clean(out)

    def weight_table(self):
        """``{(q, t, weight): (even, odd)}`` for the positive part."""
        table = {}
        for i in self.positive():
            b = self.basis[i]
            e, o = table.get((b.q, b.t, b.weight), (0, 0))
            table[(b.q, b.t, b.weight)] = (e + 1 - b.parity, o + b.parity)
        return table

    def lie_data(self, trunc=(INF, INF)):
        return make_lie_data(self.rs, self.weight_table(), self.name, trunc,
                             has_anti_involution=self.has_anti_involution)

    def validate(self):
        rs = self.rs
        sign = self._sign
        for i, b in enumerate(self.basis):
            if len(b.weight) != rs.rank:
                raise StructureError(f"basis element {b.label} has a weight of the wrong rank")
            if b.q < 0 or b.t < 0:
                raise StructureError(f"basis element {b.label} has negative degree")
            if b.q == 0 and b.t == 0 and b.parity:
                raise StructureError(f"odd element {b.label} in degree (0, 0)")
        for (i, j), vec in self.brackets.items():
            bi, bj = self.basis[i], self.basis[j]
            for k in vec:
                bk = self.basis[k]
                if (bk.weight != add(bi.weight, bj.weight) or bk.q != bi.q + bj.q
                        or bk.t != bi.t + bj.t or bk.parity != (bi.parity + bj.parity) % 2):
                    raise StructureError(f"[{bi.label}, {bj.label}] leaves its graded piece")
        n = self.dim
        for i in range(n):
            for j in range(n):
                lhs = self.bracket(j, i)
                rhs = {k: -sign(i, j) * c for k, c in self.bracket(i, j).items()}
                if _clean(_axpy(dict(lhs), rhs, -1)):
                    raise StructureError(f"bracket of {i}, {j} is not graded antisymmetric")
        for i in range(n):
            for j in range(n):
                yz = self.bracket(i, j)
                for k in range(n):
                    lhs = self.bracket_vec({k: 1}, yz)
                    rhs = self.bracket_vec(self.bracket(k, i), {j: 1})
                    _axpy(rhs, self.bracket_vec({i: 1}, self.bracket(k, j)), sign(k, i))
                    if _clean(_axpy(lhs, rhs, -1)):
                        raise StructureError(f"Jacobi identity fails on ({k}, {i}, {j})")
        zero = set(self.degree_zero())
        if len(self.chevalley) != rs.rank:
            raise StructureError("need one Chevalley triple per simple root")
        for k, (e, f, h) in enumerate(self.chevalley):
            if not {e, f, h} <= zero:
                raise StructureError("Chevalley generators must lie in degree zero")
            if self.basis[e].weight != rs.simple_roots[k] or self.basis[f].weight != neg(rs.simple_roots[k]):
                raise StructureError(f"Chevalley pair {k} has the wrong weights")
            if self.bracket(e, f) != {h: 1}:
                raise StructureError(f"[e_{k}, f_{k}] is not h_{k}")
        if self.tau is not None:
            self._validate_tau()
        return self

    def _sign(self, i, j):
        return -1 if self.basis[i].parity and self.basis[j].parity else 1

    def _validate_tau(self):
        n = self.dim
        for i in range(n):
            b = self.basis[i]
            for j in self.tau.get(i, {}):
                c = self.basis[j]
                if (c.q, c.t, c.parity, c.weight) != (b.q, b.t, b.parity, neg(b.weight)):
                    raise StructureError(f"tau does not respect the grading on {b.label}")
            if self.apply_tau(self.tau.get(i, {})) != {i: 1}:
                raise StructureError("tau is not an involution")
        for k, (e, f, h) in enumerate(self.chevalley):
            if self.tau.get(e) != {f: 1} or self.tau.get(h) != {h: 1}:
                raise StructureError("tau must swap e_i and f_i and fix h_i")
        for i in range(n):
            for j in range(n):
                lhs = self.apply_tau(self.bracket(i, j))
                rhs = self.bracket_vec(self.tau[j], self.tau[i])
                if _clean(_axpy(lhs, rhs, -self._sign(i, j))):
                    raise StructureError(f"tau is not an anti-homomorphism on ({i}, {j})")

    def relabel(self, perm):
        """Same algebra with basis element ``i`` moved to position ``perm[i]``."""
        n = self.dim
        basis = [None] * n
        for i, b in enumerate(self.basis):
            basis[perm[i]] = b
        brackets = {(perm[i], perm[j]): {perm[k]: c for k, c in v.items()}
                    for (i, j), v in self.brackets.items()}
        chev = [tuple(perm[x] for x in c) for c in self.chevalley]
        tau = None
        if self.tau is not None:
            tau = {perm[i]: {perm[k]: c for k, c in v.items()} for i, v in self.tau.items()}
        return FiniteGradedLie(self.rs, basis, brackets, chev, tau, self.name)

    def __repr__(self):
        return f"FiniteGradedLie({self.name}, dim={self.dim})"


# sl_n in the matrix basis -------------------------------------------------

def _type_a_rank(rs):
    if rs.lie_type != "A":
        raise NotImplementedError("structure constants are built for type A (sl_n) only")
    return rs.rank + 1


def _eps(n, i):
    return tuple((1 if i == k else 0) - (1 if i == k + 1 else 0) for k in range(n - 1))


def sl_basis(n):
    """Matrices ``E_ij`` (i != j) then ``H_k = E_kk - E_k+1,k+1`` with labels and weights."""
    out = []
    for i in range(n):
        for j in range(n):
            if i != j:
                w = tuple(a - b for a, b in zip(_eps(n, i), _eps(n, j)))
                out.append((f"E{i + 1}{j + 1}", {(i, j): 1}, w))
    for k in range(n - 1):
        out.append((f"H{k + 1}", {(k, k): 1, (k + 1, k + 1): -1}, (0,) * (n - 1)))
    return out


def _matmul(a, b):
    out = {}
    for (i, j), x in a.items():
        for (j2, k), y in b.items():
            if j == j2:
                out[(i, k)] = out.get((i, k), 0) + x * y
    return _clean(out)


def _commutator(a, b):
    return _clean(_axpy(_matmul(a, b), _matmul(b, a), -1))


def _decompose(n, mat):
    """Coordinates of a traceless matrix in :func:`sl_basis` order."""
    out = {}
    idx = 0
    for i in range(n):
        for j in range(n):
            if i != j:
                c = mat.get((i, j), 0)
                if c:
                    out[idx] = c
                idx += 1
    running = 0
    for k in range(n - 1):
        running += mat.get((k, k), 0)
        if running:
            out[idx + k] = running
    if running + mat.get((n - 1, n - 1), 0):
        raise StructureError("matrix is not traceless")
    return out


def _chevalley_indices(n):
    pos = {}
    idx = 0
    for i in range(n):
        for j in range(n):
            if i != j:
                pos[(i, j)] = idx
                idx += 1
    first_h = idx
    return [(pos[(k, k + 1)], pos[(k + 1, k)], first_h + k) for k in range(n - 1)]


def _transpose_index(n):
    pos = {}
    idx = 0
    for i in range(n):
        for j in range(n):
            if i != j:
                pos[(i, j)] = idx
                idx += 1
    out = {}
    for (i, j), a in pos.items():
        out[a] = pos[(j, i)]
    for k in range(n - 1):
        out[idx + k] = idx + k
    return out


def trace_form(rs):
    """``tr(u v)`` on the matrix basis of ``sl_n``, as a sparse dict."""
    n = _type_a_rank(rs)
    mats = [m for _, m, _ in sl_basis(n)]
    out = {}
    for a, x in enumerate(mats):
        for b, y in enumerate(mats):
            tr = sum(c for (i, j), c in _matmul(x, y).items() if i == j)
            if tr:
                out[(a, b)] = tr
    return out


# coefficient algebras -----------------------------------------------------

@dataclass
class GradedAlgebra:
    """Finite-dimensional graded supercommutative algebra with unit ``basis[0]``.

    ``basis`` holds ``(label, q, t, parity)``; ``mult[(i, j)]`` is a sparse
    product vector.
    """

    basis: list
    mult: dict
    name: str


def truncated_polynomial_algebra(n):
    """``C[x]/(x^n)``."""
    if n < 1:
        raise ValueError("need n >= 1")
    basis = [(f"x^{k}" if k > 1 else ("x" if k == 1 else "1"), k, 0, 0) for k in range(n)]
    mult = {(i, j): {i + j: 1} for i in range(n) for j in range(n) if i + j < n}
    return GradedAlgebra(basis, mult, f"trunc_x({n})")


def polynomial_algebra(num_vars, max_degree):
    """``C[x_1..x_k]`` modulo monomials of degree above ``max_degree``; all variables at q^1."""
    if num_vars < 1 or max_degree < 0:
        raise ValueError("need at least one variable and max_degree >= 0")
    names = "xyzw" if num_vars <= 4 else None
    monos = []
    for d in range(max_degree + 1):
        for combo in combinations_with_replacement(range(num_vars), d):
            monos.append(tuple(combo.count(v) for v in range(num_vars)))
    index = {m: i for i, m in enumerate(monos)}

    def label(m):
        if not any(m):
            return "1"
        parts = []
        for v, e in enumerate(m):
            if e:
                s = names[v] if names else f"x{v + 1}"
                parts.append(s if e == 1 else f"{s}^{e}")
        return "".join(parts)

    basis = [(label(m), sum(m), 0, 0) for m in monos]
    mult = {}
    for a, ma in enumerate(monos):
        for b, mb in enumerate(monos):
            m = tuple(x + y for x, y in zip(ma, mb))
            if m in index:
                mult[(a, b)] = {index[m]: 1}
    return GradedAlgebra(basis, mult, f"poly{num_vars}(deg<={max_degree})")


def x_xi_algebra(n):
    """``C[x, xi]/(x^n)`` with ``xi`` odd of degree t^1."""
    if n < 1:
        raise ValueError("need n >= 1")
    basis = []
    for k in range(n):
        basis.append(("1" if k == 0 else ("x" if k == 1 else f"x^{k}"), k, 0, 0))
    for k in range(n):
        basis.append((("" if k == 0 else ("x" if k == 1 else f"x^{k}")) + "xi", k, 1, 1))
    mult = {}
    for i in range(n):
        for j in range(n):
            if i + j < n:
                mult[(i, j)] = {i + j: 1}
                mult[(i, n + j)] = {n + i + j: 1}
                mult[(n + i, j)] = {n + i + j: 1}
    return GradedAlgebra(basis, mult, f"x_xi({n})")


def current_lie(rs, algebra, name=None):
    """``sl_n (x) A`` with bracket ``[u (x) a, v (x) b] = [u, v] (x) ab`` and transpose as tau."""
    n = _type_a_rank(rs)
    if algebra.basis[0][1:] != (0, 0, 0):
        raise ValueError("basis[0] of the coefficient algebra must be the unit")
    g = sl_basis(n)
    dg = len(g)
    basis = []
    for ai, (al, aq, at, ap) in enumerate(algebra.basis):
        for gl, _, w in g:
            label = gl if ai == 0 else f"{gl}*{al}"
            basis.append(BasisElement(label, w, aq, at, ap))
    gbr = {}
    for a, (_, x, _) in enumerate(g):
        for b, (_, y, _) in enumerate(g):
            gbr[(a, b)] = _decompose(n, _commutator(x, y))
    brackets = {}
    for (ai, bi), prod in algebra.mult.items():
        for a in range(dg):
            for b in range(dg):
                vec = gbr[(a, b)]
                if not vec:
                    continue
                out = {}
                for k, c in prod.items():
                    for e, d in vec.items():
                        out[k * dg + e] = out.get(k * dg + e, 0) + c * d
                brackets[(ai * dg + a, bi * dg + b)] = out
    tr = _transpose_index(n)
    tau = {ai * dg + a: {ai * dg + tr[a]: 1}
           for ai in range(len(algebra.basis)) for a in range(dg)}
    name = name or f"{rs.name}:{algebra.name}"
    return FiniteGradedLie(rs, basis, brackets, _chevalley_indices(n), tau, name)


def t3_lie():
    """``sl_3 + V + Lambda^2 V`` with V in q-degree 1 and ``[v, w] = v ^ w`` in degree 2."""
    rs = parse_root_system("A2")
    n = 3
    g = sl_basis(n)
    dg = len(g)
    basis = [BasisElement(label, w, 0, 0) for label, _, w in g]
    vec_index = {}
    for i in range(n):
        vec_index[i] = len(basis)
        basis.append(BasisElement(f"x{i + 1}", _eps(n, i), 1, 0))
    wedge_index = {}
    for i in range(n):
        for j in range(i + 1, n):
            wedge_index[(i, j)] = len(basis)
            w = add(_eps(n, i), _eps(n, j))
            basis.append(BasisElement(f"x{i + 1}{j + 1}", w, 2, 0))

    def wedge(i, j):
        if i == j:
            return {}
        if i < j:
            return {wedge_index[(i, j)]: 1}
        return {wedge_index[(j, i)]: -1}

    brackets = {}
    for a, (_, x, _) in enumerate(g):
        for b, (_, y, _) in enumerate(g):
            brackets[(a, b)] = _decompose(n, _commutator(x, y))
        for i in range(n):
            # A e_i = sum_r A_ri e_r
            out = {}
            for (r, c), v in x.items():
                if c == i:
                    out[vec_index[r]] = out.get(vec_index[r], 0) + v
            brackets[(a, vec_index[i])] = out
            brackets[(vec_index[i], a)] = {k: -v for k, v in out.items()}
        for (i, j), idx in wedge_index.items():
            out = {}
            for (r, c), v in x.items():
                if c == i:
                    _axpy(out, wedge(r, j), v)
                if c == j:
                    _axpy(out, wedge(i, r), v)
            brackets[(a, idx)] = out
            brackets[(idx, a)] = {k: -v for k, v in out.items()}
    for i in range(n):
        for j in range(n):
            brackets[(vec_index[i], vec_index[j])] = wedge(i, j)
    return FiniteGradedLie(rs, basis, brackets, _chevalley_indices(n), None, "A2:t3")


def sl2_trunc_x2():
    """``sl_2 (x) C[x]/(x^2)``, the smallest example with nontrivial cohomology."""
    return current_lie(parse_root_system("A1"), truncated_polynomial_algebra(2))


# JSON ---------------------------------------------------------------------

def _rat(x):
    return Fraction(str(x)) if isinstance(x, str) else Fraction(x)


def coefficient_algebra_from_json(obj):
    kind = str(obj.get("kind", "")).lower()
    if kind == "trunc_x":
        return truncated_polynomial_algebra(int(obj["n"]))
    if kind in ("poly_x", "poly_xy"):
        nv = 1 if kind == "poly_x" else 2
        return polynomial_algebra(int(obj.get("num_vars", nv)), int(obj.get("max_degree", 2)))
    if kind == "poly_x_xi":
        return x_xi_algebra(int(obj.get("n", 2)))
    raise ValueError(f"unknown finite coefficient algebra {kind!r}")


def lie_from_json(obj):
    """Algebra from a builtin description or an explicit sparse table.

    Builtins: ``{"builtin": "t3"}`` and
    ``{"builtin": "current", "root_system": "A1", "coefficients": {...}}``.
    Explicit: ``basis`` entries ``{label, weight, q, t, parity}``,
    ``brackets`` as ``[i, j, k, c]`` triplets, ``chevalley`` as
    ``[e, f, h]`` and optional ``tau`` as ``[i, j, c]``.
    """
    if not isinstance(obj, dict):
        raise ValueError("algebra description must be a JSON object")
    builtin = obj.get("builtin")
    if builtin == "t3":
        lie = t3_lie()
    elif builtin == "current":
        rs = parse_root_system(obj.get("root_system", ""))
        lie = current_lie(rs, coefficient_algebra_from_json(obj.get("coefficients", {})))
    elif builtin is None:
        rs = parse_root_system(obj.get("root_system", ""))
        basis = [BasisElement(b["label"], tuple(b["weight"]), b.get("q", 0), b.get("t", 0),
                              b.get("parity", 0)) for b in obj["basis"]]
        brackets = {}
        for i, j, k, c in obj.get("brackets", []):
            brackets.setdefault((i, j), {})[k] = _rat(c)
        tau = None
        if obj.get("tau") is not None:
            tau = {}
            for i, j, c in obj["tau"]:
                tau.setdefault(i, {})[j] = _rat(c)
        lie = FiniteGradedLie(rs, basis, brackets, obj.get("chevalley", []), tau,
                              obj.get("name", "custom"))
    else:
        raise ValueError(f"unknown builtin algebra {builtin!r}")
    return lie.validate()


def lie_to_json(lie):
    from ..charring import format_rational

    out = {
        "root_system": lie.rs.name,
        "name": lie.name,
        "basis": [{"label": b.label, "weight": list(b.weight), "q": b.q, "t": b.t,
                   "parity": b.parity} for b in lie.basis],
        "brackets": [[i, j, k, format_rational(c)]
                     for (i, j), v in sorted(lie.brackets.items()) for k, c in sorted(v.items())],
        "chevalley": [list(c) for c in lie.chevalley],
        "tau": None,
    }
    if lie.tau is not None:
        out["tau"] = [[i, j, format_rational(c)]
                      for i, v in sorted(lie.tau.items()) for j, c in sorted(v.items())]
    return out
