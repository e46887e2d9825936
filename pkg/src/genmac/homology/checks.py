"""Euler characteristics of relative cohomology and the named consistency checks."""

from ..macdonald import Report, ReportRow
from ..pairing import pair
from ..rootsys import parse_root_system
from ..series import format_series
from .algebras import current_lie, polynomial_algebra, t3_lie, trace_form
from .complex import _Ops, ce_complex, cohomology
from .modules import dual_module, hom_module, trivial_module


def ext_euler(lie, M, N, trunc=None):
    """``sum_i (-1)^i dim_{q^-1} H^i(Lambda, Lambda_0; Hom(M, N^dual))`` as a series."""
    K = hom_module(M, dual_module(lie, N))
    return cohomology(ce_complex(lie, K, trunc)).euler()


def verify_euler_vs_pairing(lie, M, N, trunc=None):
    """Compare :func:`ext_euler` with the constant-term pairing of the characters."""
    euler = ext_euler(lie, M, N, trunc)
    data = lie.lie_data(euler.trunc)
    value = pair(data, M.character(), N.character())
    ok = (euler - value).is_zero()
    detail = "" if ok else f"euler {format_series(euler)} vs pairing {format_series(value)}"
    row = ReportRow(f"<{M.name}, {N.name}>", "PASS" if ok else "FAIL", detail,
                    {"euler": euler, "pairing": value})
    return Report(f"Euler characteristic vs pairing on {lie.name}", [row])


def t3_verify():
    """Relative cohomology of T(3) with trivial coefficients against the displayed complex."""
    lie = t3_lie().validate()
    cx = ce_complex(lie, trivial_module(lie))
    table = cohomology(cx)
    by_degree = cx.degree_dims()
    cochains = [by_degree.get(i, 0) for i in range(7)]
    h = [table.total(i) for i in range(7)]
    rows = []
    want = (1, 2, 1)
    got = tuple(cochains[2:5])
    rows.append(ReportRow("cochain dims in degrees 2..4", "PASS" if got == want else "FAIL",
                          "" if got == want else f"got {got}", {"cochains": cochains}))
    got_h = tuple(h[2:5])
    rows.append(ReportRow("H^i = 0 for i = 2..4", "PASS" if not any(got_h) else "FAIL",
                          "" if not any(got_h) else f"got {got_h}", {"cohomology": h}))
    data = lie.lie_data()
    one = trivial_module(lie)
    value = pair(data, one.character(), one.character())
    euler = table.euler()
    ok = (euler - value).is_zero()
    rows.append(ReportRow("Euler characteristic = <1, 1>", "PASS" if ok else "FAIL",
                          "" if ok else f"{format_series(euler)} vs {format_series(value)}",
                          {"euler": euler, "pairing": value}))
    return Report("T(3) relative cohomology with trivial coefficients", rows), table


def _phi(lie, rs, num_vars):
    """``sum_{a, b} tr(u_a u_b) c^(a x) c^(b y)`` as a cochain with trivial coefficients."""
    form = trace_form(rs)
    dg = len({i for i in lie.degree_zero()})
    ops = _Ops(lie, trivial_module(lie))
    vec = {}
    x_index, y_index = 1, 2
    for (a, b), c in form.items():
        s, key = ops.canon((x_index * dg + a, y_index * dg + b))
        if s:
            vec[(key, 0)] = vec.get((key, 0), 0) + s * c
    return {k: v for k, v in vec.items() if v}, ops


def phi_cocycle_check(rs, num_even_generators=2):
    """The 2-cochain pairing the x- and y-components through the trace form.

    Checks that it is invariant, closed and nonzero, and that there are no
    relative 1-cochains, so its class in ``H^2`` cannot vanish.
    """
    if isinstance(rs, str):
        rs = parse_root_system(rs)
    if num_even_generators < 2:
        raise ValueError("the cocycle needs two independent even generators")
    lie = current_lie(rs, polynomial_algebra(num_even_generators, 2))
    phi, ops = _phi(lie, rs, num_even_generators)
    rows = []
    inv = all(not ops.act_zero(y, phi) for e, f, _ in lie.chevalley for y in (e, f))
    rows.append(ReportRow("phi is g-invariant", "PASS" if inv else "FAIL"))
    closed = not ops.d(phi)
    rows.append(ReportRow("d phi = 0", "PASS" if closed else "FAIL"))
    rows.append(ReportRow("phi != 0", "PASS" if phi else "FAIL", "", {"terms": len(phi)}))
    cx = ce_complex(lie, trivial_module(lie), (2, 0))
    table = cohomology(cx)
    c1 = sum(d for (i, *_), d in table.cochain_dims.items() if i == 1)
    rows.append(ReportRow("relative C^1 = 0", "PASS" if c1 == 0 else "FAIL",
                          "" if c1 == 0 else f"dim C^1 = {c1}", {"dim_C1": c1}))
    h2 = table.dims.get((2, 2, 0, rs.zero), 0)
    rows.append(ReportRow("H^2 != 0 at q^2", "PASS" if h2 > 0 else "FAIL", "",
                          {"dim_H2_q2": h2}))
    return Report(f"phi cocycle for {rs.name} (x) C[{num_even_generators} vars]/deg>2", rows)


