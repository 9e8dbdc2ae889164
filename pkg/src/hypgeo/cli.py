"""Command-line front end: exports geodesics, time tables, loci,
wavefronts, radii, logarithms and limit comparisons as CSV or JSON.

Output is deterministic: stable row order (lexicographic in grid
indices), floats at 17 significant digits, a single CSV header row,
JSON with a schema field and sorted keys, and no timestamps.  Identical
invocations produce byte-identical files.  Exit codes: 0 success,
1 usage error, 2 domain error, 3 convergence failure.

The environment variable HYPGEO_THREADS caps the worker fan-out of
grid-producing commands; results are merged in index order, so the
thread count never changes the output bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .algebra import SplitQuaternion, psl2_canonicalize
from .errors import DomainError, HypgeoError, NoConvergence
from .geodesic_engine import sample_geodesic, vertical_flow
from .metric_space import (
    ETA_INJ_SPLIT,
    CausalType,
    Covector,
    Metric,
    covector_from_components,
    covector_from_pbar3,
    light_covector,
    make_metric,
    metric_from_eta,
)
from .optimality import (
    GroupTag,
    cut_locus_sample,
    describe_cut,
    first_conjugate_time,
    injectivity_radius,
    maxwell_time,
    riemannian_log,
    wavefront_row,
)
from .root_solver import conjugate_roots
from .sr_limit import limit_comparison

COMMANDS = (
    "geodesic",
    "vertical-flow",
    "maxwell",
    "conjugate",
    "cut-time",
    "cut-locus",
    "wavefront",
    "injrad",
    "log",
    "sr-compare",
)


class UsageError(Exception):
    """Bad flags; reported on stderr with exit status 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit status 2
        raise UsageError(message)


@dataclass
class RunConfig:
    """Validated invocation: one command plus everything it may need."""

    command: str
    i1: float = 1.0
    i3: float | None = None
    eta: float | None = None
    group: GroupTag = GroupTag.PSL2
    grid_n: int = 64
    t: float | None = None
    t_max: float | None = None
    samples: int = 200
    p: tuple[float, float, float] | None = None
    pbar3: float | None = None
    phase: float = 0.0
    ctype: str | None = None
    target: tuple[float, float, float, float] | None = None
    eta_list: tuple[float, ...] = ()
    k_max: int = 6
    rho_max: float = 3.0
    out: str | None = None
    format: str = "csv"
    tol: float = 1e-10


# ---- parsing -------------------------------------------------------------

def _floats(raw: str, count: int, flag: str) -> tuple[float, ...]:
    parts = raw.split(",")
    if len(parts) != count:
        raise UsageError(f"{flag} needs {count} comma-separated numbers")
    try:
        return tuple(float(x) for x in parts)
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _float_list(raw: str, flag: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in raw.split(","))
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _add_metric_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--I1", dest="i1", type=float, default=1.0)
    sp.add_argument("--I3", dest="i3", type=float, default=None)
    sp.add_argument("--eta", dest="eta", type=float, default=None)


def _add_covector_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--p", dest="p_raw", type=str, default=None,
                    help="covector components p1,p2,p3 (validated on C)")
    sp.add_argument("--pbar3", dest="pbar3", type=float, default=None)
    sp.add_argument("--phase", dest="phase", type=float, default=0.0)
    sp.add_argument("--type", dest="ctype", choices=("tl", "ll", "sl"), default=None)


def _add_output_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--out", dest="out", type=str, default=None)
    sp.add_argument("--format", dest="format", choices=("csv", "json"), default=None)


def _add_group_flag(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--group", dest="group", choices=("psl2", "sl2"), default="psl2")


# flags whose comma-joined values may start with a minus sign, which
# argparse would otherwise read as an unknown option
_LIST_FLAGS = ("--p", "--target", "--eta-list")


def _merge_list_flags(argv: list[str]) -> list[str]:
    merged, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _LIST_FLAGS and i + 1 < len(argv):
            merged.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            merged.append(tok)
            i += 1
    return merged


def parse_args(argv=None) -> RunConfig:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    argv = _merge_list_flags(argv)
    parser = _Parser(prog="hypgeo", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True)

    for name in ("geodesic", "vertical-flow"):
        sp = subs.add_parser(name)
        _add_metric_flags(sp)
        _add_covector_flags(sp)
        _add_output_flags(sp)
        sp.add_argument("--t-max", dest="t_max", type=float, required=True)
        sp.add_argument("--samples", dest="samples", type=int, default=200)

    for name in ("maxwell", "conjugate", "cut-time"):
        sp = subs.add_parser(name)
        _add_metric_flags(sp)
        _add_covector_flags(sp)
        _add_output_flags(sp)
        if name == "conjugate":
            sp.add_argument("--k-max", dest="k_max", type=int, default=6)
        if name == "cut-time":
            _add_group_flag(sp)

    sp = subs.add_parser("cut-locus")
    _add_metric_flags(sp)
    _add_output_flags(sp)
    _add_group_flag(sp)
    sp.add_argument("--grid", dest="grid_n", type=int, default=64)
    sp.add_argument("--rho-max", dest="rho_max", type=float, default=3.0)

    sp = subs.add_parser("wavefront")
    _add_metric_flags(sp)
    _add_output_flags(sp)
    _add_group_flag(sp)
    sp.add_argument("--t", dest="t", type=float, required=True)
    sp.add_argument("--grid", dest="grid_n", type=int, default=64)

    sp = subs.add_parser("injrad")
    _add_metric_flags(sp)
    _add_output_flags(sp)

    sp = subs.add_parser("log")
    _add_metric_flags(sp)
    _add_output_flags(sp)
    sp.add_argument("--target", dest="target_raw", type=str, required=True,
                    help="target element q0,q1,q2,q3 (unit pseudo-norm)")
    sp.add_argument("--tol", dest="tol", type=float, default=1e-10)

    sp = subs.add_parser("sr-compare")
    _add_output_flags(sp)
    sp.add_argument("--pbar3", dest="pbar3", type=float, required=True)
    sp.add_argument("--type", dest="ctype", choices=("tl", "sl"), required=True)
    sp.add_argument("--eta-list", dest="eta_list_raw", type=str, required=True)

    ns = parser.parse_args(argv)

    cfg = RunConfig(command=ns.command)
    for name in ("i1", "i3", "eta", "pbar3", "phase", "ctype", "t", "t_max",
                 "samples", "grid_n", "k_max", "rho_max", "out", "tol"):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    if hasattr(ns, "group"):
        cfg.group = GroupTag(ns.group)
    if getattr(ns, "p_raw", None) is not None:
        cfg.p = _floats(ns.p_raw, 3, "--p")
    if getattr(ns, "target_raw", None) is not None:
        cfg.target = _floats(ns.target_raw, 4, "--target")
    if getattr(ns, "eta_list_raw", None) is not None:
        cfg.eta_list = _float_list(ns.eta_list_raw, "--eta-list")
    if hasattr(ns, "format"):
        if ns.format is not None:
            cfg.format = ns.format
        else:
            cfg.format = "json" if (cfg.out or "").endswith(".json") else "csv"
    return cfg


# ---- shared builders ------------------------------------------------------

def _build_metric(cfg: RunConfig) -> Metric:
    if (cfg.i3 is None) == (cfg.eta is None):
        raise UsageError("specify exactly one of --I3 or --eta")
    if cfg.i3 is not None:
        return make_metric(cfg.i1, cfg.i3)
    return metric_from_eta(cfg.eta, cfg.i1)


def _build_covector(cfg: RunConfig, m: Metric) -> Covector:
    if cfg.p is not None:
        if cfg.pbar3 is not None or cfg.ctype is not None:
            raise UsageError("--p conflicts with --pbar3/--type")
        return covector_from_components(m, *cfg.p)
    if cfg.ctype is None:
        raise UsageError("covector needs --p, or --pbar3 with --type tl|sl, or --type ll")
    if cfg.ctype == "ll":
        sign = -1 if (cfg.pbar3 is not None and cfg.pbar3 < 0) else 1
        return light_covector(m, cfg.phase, sign)
    if cfg.pbar3 is None:
        raise UsageError("--pbar3 is required with --type tl|sl")
    ct = CausalType.TIME_LIKE if cfg.ctype == "tl" else CausalType.SPACE_LIKE
    return covector_from_pbar3(m, cfg.pbar3, cfg.phase, ct)


def _thread_count() -> int:
    raw = os.environ.get("HYPGEO_THREADS", "")
    try:
        v = int(raw)
    except ValueError:
        return 1
    return max(1, min(v, 64))


# ---- serialization --------------------------------------------------------

def _fmt_float(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return "%.17g" % x


def _csv_cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return _fmt_float(v)
    return str(v)


def _json_cell(v):
    if isinstance(v, float) and not math.isfinite(v):
        return {"value": None, "finite": False}
    return v


def _render_csv(columns, rows) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(columns)
    for row in rows:
        w.writerow([_csv_cell(v) for v in row])
    return buf.getvalue().encode("utf-8")


def _render_json(payload: dict) -> bytes:
    text = json.dumps(payload, indent=2, sort_keys=True, allow_nan=False)
    return (text + "\n").encode("utf-8")


def _render_table(cfg: RunConfig, columns, rows) -> bytes:
    if cfg.format == "csv":
        return _render_csv(columns, rows)
    payload = {
        "schema": 1,
        "command": cfg.command,
        "columns": list(columns),
        "rows": [[_json_cell(v) for v in row] for row in rows],
    }
    return _render_json(payload)


# ---- command bodies -------------------------------------------------------

def _cmd_geodesic(cfg: RunConfig) -> bytes:
    m = _build_metric(cfg)
    p = _build_covector(cfg, m)
    if cfg.samples < 2:
        raise UsageError("--samples must be >= 2")
    samples = sample_geodesic(m, p, cfg.t_max, cfg.samples)
    rows = [(s.t, *s.point.components()) for s in samples]
    return _render_table(cfg, ("t", "q0", "q1", "q2", "q3"), rows)


def _cmd_vertical_flow(cfg: RunConfig) -> bytes:
    m = _build_metric(cfg)
    p = _build_covector(cfg, m)
    if cfg.samples < 2:
        raise UsageError("--samples must be >= 2")
    rows = []
    for i in range(cfg.samples):
        t = cfg.t_max * i / (cfg.samples - 1)
        f = vertical_flow(m, p, t)
        rows.append((t, f.p1, f.p2, f.p3))
    return _render_table(cfg, ("t", "p1", "p2", "p3"), rows)


def _cmd_maxwell(cfg: RunConfig) -> bytes:
    m = _build_metric(cfg)
    p = _build_covector(cfg, m)
    return _render_table(cfg, ("t_maxwell",), [(maxwell_time(m, p),)])


def _cmd_conjugate(cfg: RunConfig) -> bytes:
    m = _build_metric(cfg)
    p = _build_covector(cfg, m)
    columns = ("index", "tau", "t")
    if p.ctype is CausalType.TIME_LIKE:
        if cfg.k_max < 1:
            raise UsageError("--k-max must be >= 1")
        taus = conjugate_roots(m, p.pbar3, cfg.k_max)
        scale = 2.0 * m.i1 / p.norm
        rows = [(i + 1, tau, tau * scale) for i, tau in enumerate(taus)]
    else:
        rows = [(0, math.inf, math.inf)]
    return _render_table(cfg, columns, rows)


def _cmd_cut_time(cfg: RunConfig) -> bytes:
    m = _build_metric(cfg)
    p = _build_covector(cfg, m)
    d = describe_cut(m, p, cfg.group)
    rows = [(d.group.value, d.t_cut, d.t_max, d.t_conj, d.active_stratum or "none")]
    return _render_table(cfg, ("group", "t_cut", "t_max", "t_conj", "stratum"), rows)


def _cmd_cut_locus(cfg: RunConfig) -> bytes:
    m = _build_metric(cfg)
    if cfg.grid_n < 2:
        raise UsageError("--grid must be >= 2")
    strata = cut_locus_sample(m, cfg.group, cfg.grid_n, cfg.rho_max)
    point_cols = ("q0", "q1", "q2", "q3", "p1", "p2", "p3", "t")

    def stratum_rows(s):
        rows = []
        for idx, (pt, (pw, tw)) in enumerate(zip(s.points, s.parameters)):
            rows.append((idx, *pt.components(), pw.p1, pw.p2, pw.p3, tw))
        return rows

    if cfg.format == "csv":
        columns = ("stratum", "index", *point_cols, "validation_error")
        rows = []
        for s in strata:
            for row in stratum_rows(s):
                rows.append((s.stratum, *row, s.validation_error))
        return _render_csv(columns, rows)
    payload = {
        "schema": 1,
        "command": cfg.command,
        "group": cfg.group.value,
        "strata": [
            {
                "stratum": s.stratum,
                "columns": ["index", *point_cols],
                "rows": [[_json_cell(v) for v in row] for row in stratum_rows(s)],
                "validation_error": s.validation_error,
            }
            for s in strata
        ],
    }
    return _render_json(payload)


def _cmd_wavefront(cfg: RunConfig) -> bytes:
    m = _build_metric(cfg)
    if cfg.grid_n < 8:
        raise UsageError("--grid must be >= 8")
    if cfg.t is None or cfg.t <= 0.0:
        raise UsageError("--t must be positive")
    n = cfg.grid_n
    workers = _thread_count()

    def row(i: int):
        return wavefront_row(m, cfg.t, n, i, cfg.group)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_row = list(pool.map(row, range(n)))
    else:
        per_row = [row(i) for i in range(n)]

    rows = []
    for i, chunk in enumerate(per_row):
        for j, w in enumerate(chunk):
            rows.append(
                (i, j, w.covector.p1, w.covector.p2, w.covector.p3,
                 *w.point.components(), w.optimal)
            )
    columns = ("i", "j", "p1", "p2", "p3", "q0", "q1", "q2", "q3", "optimal")
    return _render_table(cfg, columns, rows)


def _cmd_injrad(cfg: RunConfig) -> bytes:
    m = _build_metric(cfg)
    eta = m.eta
    case = 1 if eta <= -2.0 else (2 if eta <= ETA_INJ_SPLIT else 3)
    return _render_table(cfg, ("radius", "case"), [(injectivity_radius(m), case)])


def _cmd_log(cfg: RunConfig) -> bytes:
    m = _build_metric(cfg)
    q = SplitQuaternion(*cfg.target)
    pn = q.pseudo_norm()
    if not (abs(pn - 1.0) <= 1e-8):
        raise DomainError(f"--target must have unit pseudo-norm, got {pn!r}")
    scale = math.sqrt(pn)
    q = SplitQuaternion(*(c / scale for c in q.components()))
    p, t = riemannian_log(m, psl2_canonicalize(q), cfg.tol)
    return _render_table(cfg, ("p1", "p2", "p3", "t"), [(p.p1, p.p2, p.p3, t)])


def _cmd_sr_compare(cfg: RunConfig) -> bytes:
    if not cfg.eta_list:
        raise UsageError("--eta-list must be non-empty")
    ct = CausalType.TIME_LIKE if cfg.ctype == "tl" else CausalType.SPACE_LIKE
    rows = limit_comparison(cfg.pbar3, ct, list(cfg.eta_list))
    return _render_table(cfg, ("eta", "riemannian_cut", "sr_cut", "abs_diff"), rows)


_DISPATCH = {
    "geodesic": _cmd_geodesic,
    "vertical-flow": _cmd_vertical_flow,
    "maxwell": _cmd_maxwell,
    "conjugate": _cmd_conjugate,
    "cut-time": _cmd_cut_time,
    "cut-locus": _cmd_cut_locus,
    "wavefront": _cmd_wavefront,
    "injrad": _cmd_injrad,
    "log": _cmd_log,
    "sr-compare": _cmd_sr_compare,
}


def run(cfg: RunConfig) -> int:
    """Execute one validated configuration; returns the exit status."""
    try:
        data = _DISPATCH[cfg.command](cfg)
    except UsageError as exc:
        print(f"hypgeo: usage error: {exc}", file=sys.stderr)
        return 1
    except NoConvergence as exc:
        print(f"hypgeo: convergence failure: {exc}", file=sys.stderr)
        return 3
    except (HypgeoError, ValueError, OverflowError) as exc:
        print(f"hypgeo: domain error: {exc}", file=sys.stderr)
        return 2
    if cfg.out:
        with open(cfg.out, "wb") as f:
            f.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    return 0


def main(argv=None) -> int:
    try:
        cfg = parse_args(argv)
    except UsageError as exc:
        print(f"hypgeo: usage error: {exc}", file=sys.stderr)
        return 1
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
