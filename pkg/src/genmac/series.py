"""Truncated bivariate Laurent series in q and t with exact coefficients."""

import math
from fractions import Fraction

INF = math.inf


def normalize(c):
    """Store integral rationals as ``int`` so that output is canonical."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _min_trunc(a, b):
    return (min(a[0], b[0]), min(a[1], b[1]))


class SeriesQT:
    """Element of Q((q))[[t]] known modulo ``(q^(Nq+1), t^(Nt+1))``.

    ``trunc = (Nq, Nt)``; either bound may be ``INF`` for exact (finite)
    data.  Coefficients above the bounds are unknown and never stored.
    ``floor`` is the lowest q-exponent present (0 for the zero series).
    """

    __slots__ = ("coeffs", "trunc")

    def __init__(self, coeffs=None, trunc=(INF, INF)):
        nq, nt = trunc
        self.trunc = (nq, nt)
        self.coeffs = {}
        if coeffs:
            for (a, b), c in coeffs.items():
                if c and a <= nq and b <= nt:
                    self.coeffs[(a, b)] = normalize(c)

    @classmethod
    def const(cls, c, trunc=(INF, INF)):
        return cls({(0, 0): c}, trunc)

    @classmethod
    def monomial(cls, a, b=0, c=1, trunc=(INF, INF)):
        return cls({(a, b): c}, trunc)

    @property
    def floor(self):
        return min((a for a, _ in self.coeffs), default=0)

    @property
    def constant(self):
        return self.coeffs.get((0, 0), 0)

    def coefficient(self, a, b=0):
        if a > self.trunc[0] or b > self.trunc[1]:
            raise ValueError(f"coefficient of q^{a} t^{b} lies beyond the truncation")
        return self.coeffs.get((a, b), 0)

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def truncate(self, nq=INF, nt=INF):
        return SeriesQT(self.coeffs, _min_trunc(self.trunc, (nq, nt)))

    def _lift(self, other):
        if isinstance(other, SeriesQT):
            return other
        if isinstance(other, (int, Fraction)):
            return SeriesQT.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return SeriesQT(out, _min_trunc(self.trunc, other.trunc))

    __radd__ = __add__

    def __neg__(self):
        return SeriesQT({k: -c for k, c in self.coeffs.items()}, self.trunc)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SeriesQT({k: c * other for k, c in self.coeffs.items()}, self.trunc)
        if not isinstance(other, SeriesQT):
            return NotImplemented
        nq, nt = _min_trunc(self.trunc, other.trunc)
        out = {}
        for (a1, b1), c1 in self.coeffs.items():
            for (a2, b2), c2 in other.coeffs.items():
                a, b = a1 + a2, b1 + b2
                if a <= nq and b <= nt:
                    out[(a, b)] = out.get((a, b), 0) + c1 * c2
        return SeriesQT(out, (nq, nt))

    __rmul__ = __mul__

    def invert(self):
        """Multiplicative inverse; needs a nonzero constant and no negative exponents."""
        c0 = self.constant
        if c0 == 0:
            raise ZeroDivisionError("series with vanishing q^0 t^0 coefficient is not invertible")
        if any(a < 0 or b < 0 for a, b in self.coeffs):
            raise ValueError("inversion requires nonnegative exponents")
        nq, nt = self.trunc
        rest = [(k, c) for k, c in self.coeffs.items() if k != (0, 0)]
        if not rest:
            return SeriesQT.const(Fraction(1) / c0, self.trunc)
        unbounded_q = nq == INF and any(a > 0 for (a, _), _ in rest)
        unbounded_t = nt == INF and any(b > 0 for (_, b), _ in rest)
        if unbounded_q or unbounded_t:
            raise ValueError("cannot invert a non-constant series without a truncation bound")
        qtop = int(nq) if nq != INF else 0
        ttop = int(nt) if nt != INF else 0
        inv0 = Fraction(1) / c0
        inv = {}
        for a in range(qtop + 1):
            for b in range(ttop + 1):
                s = Fraction(int(a == 0 and b == 0))
                for (i, j), c in rest:
                    if i <= a and j <= b:
                        s -= c * inv.get((a - i, b - j), 0)
                if s:
                    inv[(a, b)] = s * inv0
        return SeriesQT(inv, self.trunc)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return self * other.invert()

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        nq, nt = _min_trunc(self.trunc, other.trunc)
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.coeffs.get(k, 0) == other.coeffs.get(k, 0)
                   for k in keys if k[0] <= nq and k[1] <= nt)

    __hash__ = None

    def at_t0(self):
        """Specialization t = 0."""
        return SeriesQT({(a, 0): c for (a, b), c in self.coeffs.items() if b == 0},
                        (self.trunc[0], INF))

    def subs_t_equals_q(self):
        """Substitute t = q; exact up to q^min(Nq, Nt)."""
        out = {}
        for (a, b), c in self.coeffs.items():
            out[(a + b, 0)] = out.get((a + b, 0), 0) + c
        return SeriesQT(out, (min(self.trunc), INF))

    def evaluate(self, q0, t0):
        return sum((Fraction(c) * Fraction(q0) ** a * Fraction(t0) ** b
                    for (a, b), c in self.coeffs.items()), Fraction(0))

    def items(self):
        return sorted(self.coeffs.items())

    def __repr__(self):
        return f"SeriesQT({format_series(self)})"

    def __str__(self):
        return format_series(self)


def format_series(s, q="q", t="t"):
    """Human-readable polynomial form, lowest degrees first."""
    if not s.coeffs:
        body = "0"
    else:
        parts = []
        for (a, b), c in sorted(s.coeffs.items()):
            mono = []
            if a:
                mono.append(q if a == 1 else f"{q}^{a}")
            if b:
                mono.append(t if b == 1 else f"{t}^{b}")
            m = "*".join(mono)
            if not m:
                text = str(c)
            elif c == 1:
                text = m
            elif c == -1:
                text = "-" + m
            else:
                text = f"({c})*{m}" if isinstance(c, Fraction) else f"{c}*{m}"
            parts.append(text)
        body = " + ".join(parts).replace("+ -", "- ")
    nq, nt = s.trunc
    tail = []
    if nq != INF:
        tail.append(f"{q}^{int(nq) + 1}")
    if nt != INF:
        tail.append(f"{t}^{int(nt) + 1}")
    if tail:
        body += " + O(" + ", ".join(tail) + ")"
    return body


def geometric(a, b, c=1, power=1, trunc=(INF, INF)):
    """Expansion of ``(1 - c q^a t^b)^(-power)`` up to the truncation."""
    if a == 0 and b == 0:
        raise ValueError("geometric series in a degree-zero monomial does not truncate")
    nq, nt = trunc
    out = {}
    k = 0
    while k * a <= nq and k * b <= nt:
        out[(k * a, k * b)] = math.comb(power + k - 1, k) * c ** k
        k += 1
    return SeriesQT(out, trunc)

