"""Command-line front end.

Exit status is 0 whenever the computation finished (a verification FAIL is
report content, not an error), 1 for internal errors such as ``d^2 != 0``
or two code paths disagreeing, and 2 for unusable configuration.
"""

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .charring import (canonical_json, char_to_json, monomial_sym, schur_char, series_from_json,
                       series_to_json)
from .liedata import data_from_json
from .macdonald import (macdonald_polynomial, orthogonalization_order, seed_memo, verify_bgg,
                        verify_norm_product, weight_label)
from .pairing import pair
from .rootsys import dominant_weights_upto, is_dominant, parse_root_system
from .series import SeriesQT, format_series

CACHE_VERSION = 1
CACHE_ENV = "GENMAC_CACHE_DIR"


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    algebra: dict = None
    rs: str = None
    lam: tuple = None
    mu: tuple = None
    lam_max: tuple = None
    nq: int = None
    nt: int = None
    fmt: str = "pretty"
    cache: str = None
    basis: str = "P"
    module: dict = None
    module2: dict = None
    generators: int = 2
    extra: dict = field(default_factory=dict)


# configuration --------------------------------------------------------------

def _load_json(text):
    if text is None:
        return None
    text = text.strip()
    try:
        if text.startswith("{"):
            return json.loads(text)
        return json.loads(Path(text).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read JSON from {text!r}: {exc}") from exc


def parse_weight(text):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"weights are comma-separated integers, got {text!r}") from exc


def _data(cfg):
    if cfg.algebra is None:
        raise ConfigError("this command needs --algebra")
    obj = dict(cfg.algebra)
    if cfg.nq is not None:
        obj["Nq"] = cfg.nq
    if cfg.nt is not None:
        obj["Nt"] = cfg.nt
    try:
        return data_from_json(obj)
    except (ValueError, KeyError) as exc:
        raise ConfigError(str(exc)) from exc


def _check_weight(rs, w, flag):
    if w is None:
        raise ConfigError(f"this command needs {flag}")
    if len(w) != rs.rank or not is_dominant(w):
        raise ConfigError(f"{flag} must be a dominant weight of rank {rs.rank}")
    return w


# cache ---------------------------------------------------------------------

def _cache_dir(cfg):
    if cfg.cache == "":
        return None
    path = cfg.cache or os.environ.get(CACHE_ENV)
    return Path(path) if path else None


def _cache_file(directory, data, lam):
    key = canonical_json({"name": data.name, "trunc": [str(x) for x in data.trunc],
                          "lambda": list(lam)})
    digest = hashlib.sha256(key.encode()).hexdigest()[:24]
    return directory / f"macpoly-{digest}.json", key


def _cache_load(directory, data, weights):
    if directory is None:
        return
    for lam in weights:
        path, key = _cache_file(directory, data, lam)
        try:
            obj = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError):
            continue
        if obj.get("version") != CACHE_VERSION or obj.get("key") != key:
            continue
        expansion = {tuple(w): series_from_json(s) for w, s in obj["expansion"]}
        residue = {tuple(w): series_from_json(s) for w, s in obj["residue"]}
        seed_memo(data, lam, expansion, series_from_json(obj["norm"]), residue)


def _cache_store(directory, data, weights):
    if directory is None:
        return
    directory.mkdir(parents=True, exist_ok=True)
    for lam in weights:
        path, key = _cache_file(directory, data, lam)
        res = macdonald_polynomial(data, lam)
        obj = {
            "version": CACHE_VERSION,
            "key": key,
            "expansion": [[list(w), series_to_json(s)] for w, s in sorted(res.coefficients.items())],
            "residue": [[list(w), series_to_json(s)]
                        for w, s in sorted(res.incomparable_residue.items())],
            "norm": series_to_json(res.norm),
        }
        tmp = path.with_suffix(".tmp")
        tmp.write_text(canonical_json(obj))
        tmp.replace(path)


def _with_cache(cfg, data, lam_top):
    directory = _cache_dir(cfg)
    weights = orthogonalization_order(data, lam_top)
    _cache_load(directory, data, weights)
    for lam in weights:
        macdonald_polynomial(data, lam)
    _cache_store(directory, data, weights)
    return weights


# output --------------------------------------------------------------------

@dataclass
class Table:
    title: str
    columns: list
    rows: list
    status: str = None
    payload: dict = field(default_factory=dict)


def render(table, fmt):
    if fmt == "json":
        obj = {"title": table.title, "columns": table.columns, "rows": table.rows}
        if table.status is not None:
            obj["status"] = table.status
        obj.update(table.payload)
        return canonical_json(obj) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(table.columns)
        w.writerows(table.rows)
        return buf.getvalue()
    lines = [table.title]
    widths = [max(len(str(c)), *(len(str(r[i])) for r in table.rows)) if table.rows else len(str(c))
              for i, c in enumerate(table.columns)]
    lines.append("  ".join(str(c).ljust(wd) for c, wd in zip(table.columns, widths)).rstrip())
    for r in table.rows:
        lines.append("  ".join(str(x).ljust(wd) for x, wd in zip(r, widths)).rstrip())
    if table.status is not None:
        lines.append(f"overall: {table.status}")
    return "\n".join(lines) + "\n"


def _report_table(report, columns=("check", "status", "detail")):
    rows = [[r.label, r.status, r.detail] for r in report.rows]
    return Table(report.title, list(columns), rows, report.status)


def _combination(coeffs, prefix):
    parts = []
    for w, s in sorted(coeffs.items(), key=lambda kv: kv[0], reverse=True):
        text = format_series(SeriesQT(s.coeffs))
        parts.append(f"{prefix}_{weight_label(w)}" if text == "1" else f"({text}) {prefix}_{weight_label(w)}")
    return " + ".join(parts) if parts else "0"


# commands ------------------------------------------------------------------

def cmd_pair(cfg):
    data = _data(cfg)
    rs = data.rs
    lam = _check_weight(rs, cfg.lam, "--lambda")
    mu = _check_weight(rs, cfg.mu if cfg.mu is not None else cfg.lam, "--mu")

    def element(w):
        if cfg.basis == "m":
            return monomial_sym(rs, w)
        if cfg.basis == "s":
            return schur_char(rs, w)
        _with_cache(cfg, data, w)
        return macdonald_polynomial(data, w).P

    value = pair(data, element(lam), element(mu))
    title = f"<{cfg.basis}_{weight_label(lam)}, {cfg.basis}_{weight_label(mu)}> on {data.name}"
    rows = [[a, b, str(c)] for (a, b), c in sorted(value.coeffs.items())]
    return Table(title, ["q", "t", "coefficient"], rows,
                 payload={"series": series_to_json(value), "text": format_series(value)})


def cmd_macpoly(cfg):
    data = _data(cfg)
    lam = _check_weight(data.rs, cfg.lam, "--lambda")
    _with_cache(cfg, data, lam)
    res = macdonald_polynomial(data, lam)
    rows = [[weight_label(w), format_series(s)] for w, s in
            sorted(res.coefficients.items(), reverse=True)]
    tail = format_series(SeriesQT({}, data.trunc)).replace("0 + ", "")
    title = f"P_{weight_label(lam)} = {_combination(res.coefficients, 'm')}  [{tail}]"
    return Table(title, ["weight", "coefficient"], rows, payload={
        "lambda": list(lam), "algebra": data.name,
        "expansion": [[list(w), series_to_json(s)] for w, s in sorted(res.coefficients.items())],
        "norm": series_to_json(res.norm),
        "incomparable_residue": [[list(w), series_to_json(s)]
                                 for w, s in sorted(res.incomparable_residue.items())],
        "character": char_to_json(res.P),
    })


def cmd_norms(cfg):
    data = _data(cfg)
    top = _check_weight(data.rs, cfg.lam_max, "--lambda-max")
    rows = []
    for lam in dominant_weights_upto(data.rs, top):
        _with_cache(cfg, data, lam)
        res = macdonald_polynomial(data, lam)
        rows.append([weight_label(lam), format_series(res.norm), format_series(res.z)])
    return Table(f"norms <P, P> on {data.name}", ["lambda", "norm", "z = 1/norm"], rows)


def cmd_bgg(cfg):
    data = _data(cfg)
    top = _check_weight(data.rs, cfg.lam_max, "--lambda-max")
    report = verify_bgg(data, top)
    rows = [[r.label, r.status, format_series(r.values["m"]), r.detail] for r in report.rows]
    return Table(report.title, ["entry", "status", "m", "detail"], rows, report.status)


def cmd_norm_product(cfg):
    if cfg.rs is None:
        raise ConfigError("norm-product-verify needs --rs")
    rs = _rs(cfg.rs)
    top = _check_weight(rs, cfg.lam_max, "--lambda-max")
    report = verify_norm_product(rs, top, nq=cfg.nq or 12)
    rows = [[r.label, r.status, r.values["reciprocal_identity"], format_series(r.values["norm"])]
            for r in report.rows]
    return Table(report.title, ["lambda", "status", "norm == prod", "norm"], rows, report.status)


def _rs(label):
    try:
        return parse_root_system(label)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _lie_and_trunc(cfg):
    from .homology import lie_from_json, sl2_trunc_x2

    lie = sl2_trunc_x2() if cfg.algebra is None else lie_from_json(cfg.algebra)
    trunc = None
    if cfg.nq is not None or cfg.nt is not None:
        trunc = (cfg.nq if cfg.nq is not None else 0, cfg.nt if cfg.nt is not None else 0)
    return lie, trunc


def _module(lie, obj):
    from .homology import module_from_json, trivial_module

    return trivial_module(lie) if obj is None else module_from_json(lie, obj)


def cmd_cohomology(cfg):
    from .homology import ce_complex, cohomology

    try:
        lie, trunc = _lie_and_trunc(cfg)
        K = _module(lie, cfg.module)
    except (ValueError, KeyError, NotImplementedError) as exc:
        raise ConfigError(str(exc)) from exc
    table = cohomology(ce_complex(lie, K, trunc))
    rows = [[i, q, t, weight_label(w), table.cochain_dims.get((i, q, t, w), 0), d]
            for (i, q, t, w), d in sorted(table.dims.items())
            if d or table.cochain_dims.get((i, q, t, w), 0)]
    return Table(f"H^i({lie.name}, degree zero; {K.name})", ["i", "q", "t", "weight", "cochains", "dim H"],
                 rows, payload={"euler": format_series(table.euler())})


def cmd_euler(cfg):
    from .homology import irreducible_module, verify_euler_vs_pairing

    try:
        lie, trunc = _lie_and_trunc(cfg)
        if cfg.algebra is None and cfg.module is None:
            pairs = [(irreducible_module(lie, (a,)), irreducible_module(lie, (b,)))
                     for a in (0, 2, 4) for b in (0, 2, 4)]
        else:
            M = _module(lie, cfg.module)
            pairs = [(M, _module(lie, cfg.module2) if cfg.module2 is not None else M)]
    except (ValueError, KeyError, NotImplementedError) as exc:
        raise ConfigError(str(exc)) from exc
    rows = []
    status = "PASS"
    for M, N in pairs:
        r = verify_euler_vs_pairing(lie, M, N, trunc).rows[0]
        rows.append([r.label, r.status, format_series(r.values["euler"]),
                     format_series(r.values["pairing"])])
        if r.status != "PASS":
            status = "FAIL"
    return Table(f"Euler characteristic vs pairing on {lie.name}",
                 ["pair", "status", "euler", "pairing"], rows, status)


def cmd_t3(cfg):
    from .homology import t3_verify

    report, table = t3_verify()
    out = _report_table(report)
    out.payload = {"cohomology": {str(i): table.total(i) for i in range(7)}}
    return out


def cmd_phi(cfg):
    from .homology import phi_cocycle_check

    rs = _rs(cfg.rs or "A1")
    try:
        report = phi_cocycle_check(rs, cfg.generators)
    except (ValueError, NotImplementedError) as exc:
        raise ConfigError(str(exc)) from exc
    return _report_table(report)


COMMANDS = {
    "pair": cmd_pair,
    "macpoly": cmd_macpoly,
    "norms": cmd_norms,
    "bgg-verify": cmd_bgg,
    "norm-product-verify": cmd_norm_product,
    "cohomology": cmd_cohomology,
    "euler-verify": cmd_euler,
    "t3-verify": cmd_t3,
    "phi-verify": cmd_phi,
}


def run(cfg):
    """Execute one command; returns ``(exit status, output text)``."""
    from .homology import DifferentialError
    from .macdonald import NormalizationError
    from .pairing import PathDisagreement

    try:
        table = COMMANDS[cfg.command](cfg)
    except ConfigError as exc:
        return 2, f"error: {exc}\n"
    except (DifferentialError, PathDisagreement, NormalizationError) as exc:
        return 1, f"internal error: {exc}\n"
    except Exception as exc:  # noqa: BLE001 - reported as an internal error
        return 1, f"internal error: {type(exc).__name__}: {exc}\n"
    return 0, render(table, cfg.fmt)


def build_parser():
    p = argparse.ArgumentParser(prog="genmac", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"genmac {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--algebra", help="JSON file or inline JSON object")
        sp.add_argument("--rs", help="root system label such as A2")
        sp.add_argument("--lambda", dest="lam", help="weight, e.g. 2,0")
        sp.add_argument("--mu", help="second weight for pair")
        sp.add_argument("--lambda-max", dest="lam_max")
        sp.add_argument("--Nq", dest="nq", type=int)
        sp.add_argument("--Nt", dest="nt", type=int)
        sp.add_argument("--format", dest="fmt", choices=("json", "csv", "pretty"), default="pretty")
        sp.add_argument("--cache", help=f"cache directory (default: ${CACHE_ENV})")
        sp.add_argument("--no-cache", action="store_true")

    for name in COMMANDS:
        sp = sub.add_parser(name)
        common(sp)
        if name == "pair":
            sp.add_argument("--basis", choices=("m", "s", "P"), default="P")
        if name in ("cohomology", "euler-verify"):
            sp.add_argument("--module", help="module JSON (default: trivial)")
            sp.add_argument("--module2", help="second module JSON for euler-verify")
        if name == "phi-verify":
            sp.add_argument("--generators", type=int, default=2)
    return p


def config_from_args(args):
    algebra = _load_json(args.algebra)
    if args.rs and algebra is None and args.command in ("pair", "macpoly", "norms", "bgg-verify"):
        algebra = {"root_system": args.rs, "coefficients": {"kind": "classical"}}
    rs = args.rs
    if algebra is not None and rs is None and isinstance(algebra, dict):
        rs = algebra.get("root_system")
    cfg = RunConfig(
        command=args.command,
        algebra=algebra,
        rs=rs,
        lam=parse_weight(args.lam) if args.lam else None,
        mu=parse_weight(args.mu) if args.mu else None,
        lam_max=parse_weight(args.lam_max) if args.lam_max else None,
        nq=args.nq,
        nt=args.nt,
        fmt=args.fmt,
        cache="" if args.no_cache else args.cache,
        basis=getattr(args, "basis", "P"),
        module=_load_json(getattr(args, "module", None)),
        module2=_load_json(getattr(args, "module2", None)),
        generators=getattr(args, "generators", 2),
    )
    if cfg.nq is not None and cfg.nq < 1:
        raise ConfigError("--Nq must be at least 1")
    if cfg.nt is not None and cfg.nt < 0:
        raise ConfigError("--Nt must be nonnegative")
    return cfg


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
    except ConfigError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    status, text = run(cfg)
    (sys.stdout if status == 0 else sys.stderr).write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
