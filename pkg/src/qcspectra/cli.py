"""Command-line front end.

Exit status is 0 on success, 1 on domain errors (bad input, degenerate or
irregular codes) and 2 when an internal cross-check fails.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import corpus, linalg
from .bounds import bound_report, check_equality_condition, cone_membership, pseudo_weight
from .errors import (
    DomainError,
    InconsistencyError,
    InvalidArgumentError,
    IrregularCodeError,
    NonConvergenceError,
    ParseError,
)
from .linalg import Spectrum
from .nested import (
    ComplexSpectrum,
    NestedCirculant,
    load_nested,
    nested_detect,
    nested_expand,
    nested_from_json,
    nested_gram,
    nested_spectrum,
    nested_to_json,
    parse_dense_matrix,
)
from .polyring import format_poly, parse_poly
from .qc import (
    Layout,
    PolyMatrix,
    expand_scalar,
    gram_spectrum_dense,
    gram_spectrum_reduced,
    parse_poly_matrix,
    poly_matrix_from_json,
    profile,
)

ENV_PREFIX = "QCSPECTRA_"
DEFAULT_CAP = 512
VERIFY_RTOL = 1e-8


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple[str, ...]
    method: str = "auto"
    fmt: str = "text"
    tol: float = linalg.DEFAULT_TOL
    cluster_tol: float | None = None
    cap: int = DEFAULT_CAP

    @classmethod
    def from_args(cls, args: argparse.Namespace, env: Mapping[str, str]) -> RunConfig:
        def pick(name: str, convert):
            value = getattr(args, name.replace("-", "_"))
            if value is not None:
                return value
            raw = env.get(ENV_PREFIX + name.upper().replace("-", "_"))
            if raw is None:
                return None
            try:
                return convert(raw)
            except ValueError:
                raise InvalidArgumentError(f"bad value {raw!r} for {ENV_PREFIX}{name.upper()}") from None

        method = pick("method", str) or "auto"
        fmt = pick("format", str) or "text"
        if method not in ("auto", "reduced", "dense"):
            raise InvalidArgumentError(f"unknown method {method!r}")
        if fmt not in ("text", "json"):
            raise InvalidArgumentError(f"unknown format {fmt!r}")
        tol = pick("tol", float)
        cap = pick("cap", int)
        return cls(
            command=args.command,
            inputs=tuple(getattr(args, "inputs", ()) or ()),
            method=method,
            fmt=fmt,
            tol=linalg.DEFAULT_TOL if tol is None else tol,
            cluster_tol=pick("cluster-tol", float),
            cap=DEFAULT_CAP if cap is None else cap,
        )


# -- input handling --------------------------------------------------------------


def resolve_path(name: str) -> Path:
    """A filesystem path, falling back to the bundled corpus by file name."""
    p = Path(name)
    if p.exists():
        return p
    try:
        return corpus.path(p.name)
    except FileNotFoundError:
        raise InvalidArgumentError(f"no such file: {name}") from None


def load_input(name: str) -> PolyMatrix | NestedCirculant:
    path = resolve_path(name)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".json":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
        if isinstance(obj, dict) and "dims" in obj:
            return nested_from_json(obj)
        return poly_matrix_from_json(obj)
    return parse_poly_matrix(text)


def load_code(name: str) -> PolyMatrix:
    data = load_input(name)
    if not isinstance(data, PolyMatrix):
        raise InvalidArgumentError(f"{name} is not a QC code file")
    return data


def load_vector(name: str) -> np.ndarray:
    m = parse_dense_matrix(resolve_path(name).read_text(encoding="utf-8"))
    return m.reshape(-1)


def code_spectrum(p: PolyMatrix, cfg: RunConfig) -> tuple[Spectrum, str]:
    method = "reduced" if cfg.method == "auto" else cfg.method
    fn = gram_spectrum_dense if method == "dense" else gram_spectrum_reduced
    return fn(p, cfg.tol, cfg.cluster_tol), method


# -- formatting -------------------------------------------------------------------


def fmt4(v: float) -> str:
    s = f"{v:.4f}"
    return "0.0000" if s == "-0.0000" else s


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def spectrum_json(spec: Spectrum) -> dict:
    return {
        "clusters": [{"value": v, "multiplicity": m} for v, m in spec.descending_clusters],
        "cluster_tol": spec.cluster_tol,
        "values": list(spec.values),
    }


def spectrum_text(spec: Spectrum) -> list[str]:
    lines = ["  eigenvalue  multiplicity"]
    for v, m in spec.descending_clusters:
        lines.append(f"  {fmt4(v):>10}  {m:>12}")
    return lines


# -- commands -----------------------------------------------------------------------


def cmd_spectrum(cfg: RunConfig) -> tuple[dict, list[str]]:
    (name,) = cfg.inputs
    data = load_input(name)
    start = time.perf_counter()
    if isinstance(data, NestedCirculant):
        if cfg.method == "dense":
            result = linalg.sym_eig(nested_expand(data), cfg.tol, cfg.cluster_tol)
            method = "dense"
        else:
            result = nested_spectrum(data)
            method = "reduced"
            if isinstance(result, Spectrum) and cfg.cluster_tol is not None:
                result = result.with_cluster_tol(cfg.cluster_tol)
        elapsed = time.perf_counter() - start
        report = {"command": "spectrum", "input": name, "kind": "nested", "method": method,
                  "n": data.n, "dims": list(data.dims), "time_s": elapsed}
        header = f"{name}: {data.m}-nested circulant, dims {list(data.dims)}, n = {data.n}, method {method}"
        if isinstance(result, ComplexSpectrum):
            report["complex"] = True
            report["values"] = [[z.real, z.imag] for z in result.values]
            lines = [header, "complex spectrum:"] + [f"  {fmt4(z.real)} {'+' if z.imag >= 0 else '-'} {fmt4(abs(z.imag))}i" for z in result.values]
        else:
            report["complex"] = False
            report.update(spectrum_json(result))
            lines = [header] + spectrum_text(result)
    else:
        spec, method = code_spectrum(data, cfg)
        elapsed = time.perf_counter() - start
        report = {"command": "spectrum", "input": name, "kind": "qc", "method": method,
                  "n": data.n, "r": data.r, "J": data.J, "L": data.L, "time_s": elapsed}
        report.update(spectrum_json(spec))
        lines = [f"{name}: J = {data.J}, L = {data.L}, r = {data.r}, n = {data.n}, method {method}"]
        lines += spectrum_text(spec)
    lines.append(f"time: {elapsed:.3f} s")
    return report, lines


def cmd_bound(cfg: RunConfig) -> tuple[dict, list[str]]:
    (name,) = cfg.inputs
    p = load_code(name)
    prof = profile(expand_scalar(p))
    if not prof.regular:
        raise IrregularCodeError(
            f"{name} is not (c,d)-regular: column weights {prof.column_histogram()}, "
            f"row weights {prof.row_histogram()}",
            prof.column_histogram(),
            prof.row_histogram(),
        )
    spec, method = code_spectrum(p, cfg)
    rep = bound_report(spec, prof.n, prof.c, prof.d)
    report = {"command": "bound", "input": name, "method": method}
    report.update(rep.to_json())
    equality = None
    if p.J == 1 and p.L == 1 and p.binary and not p[0, 0].is_zero():
        equality = check_equality_condition(p[0, 0], p.r)
    report["equality"] = None if equality is None else equality.to_json()
    lines = [
        f"{name}: n = {rep.n}, c = {rep.c}, d = {rep.d}, method {method}",
        f"  lambda1 = {fmt4(rep.summary.lambda1)} (multiplicity {rep.summary.lambda1_mult})",
        f"  lambda2 = {fmt4(rep.summary.lambda2)}",
        f"  pseudo-weight bound: {fmt4(rep.pw_bound)}" + ("" if rep.informative else " (not informative)"),
        f"  distance bound: {fmt4(rep.dmin_bound)}",
        f"  two-eigenvalue necessary condition: {'met' if rep.necessary_condition else 'not met'}",
    ]
    if equality is not None:
        lines.append(_equality_line(equality))
    return report, lines


def _equality_line(eq) -> str:
    if eq.holds:
        return f"  equality condition holds: lambda2 = {eq.lambda2}, r(X) = {format_poly(eq.rpoly)}"
    return f"  equality condition fails ({eq.reason}); autocorrelation {list(eq.autocorrelation)}"


def cmd_check_equality(cfg: RunConfig, poly: str | None, n: int | None) -> tuple[dict, list[str]]:
    if poly is not None:
        if n is None or cfg.inputs:
            raise InvalidArgumentError("--poly needs --n and no input file")
        w, label = parse_poly(poly), poly
    else:
        if len(cfg.inputs) != 1:
            raise InvalidArgumentError("give a single-circulant code file or --poly/--n")
        p = load_code(cfg.inputs[0])
        if p.J != 1 or p.L != 1:
            raise InvalidArgumentError("equality test needs a single circulant (J = L = 1)")
        w, n, label = p[0, 0], p.r, cfg.inputs[0]
    eq = check_equality_condition(w, n)
    report = {"command": "check-equality", "input": label, "n": n, "w": format_poly(w), "d": eq.d}
    report.update(eq.to_json())
    lines = [f"w(X) = {format_poly(w)}, n = {n}, d = {eq.d}, lambda1 = {eq.lambda1}", _equality_line(eq)]
    return report, lines


def cmd_nested(cfg: RunConfig, detect: str | None, dims: str | None, with_gram: bool) -> tuple[dict, list[str]]:
    if detect is not None:
        if not dims:
            raise InvalidArgumentError("--detect needs --dims")
        shape = [int(v) for v in dims.split(",")]
        m = parse_dense_matrix(resolve_path(detect).read_text(encoding="utf-8"))
        nc = nested_detect(m, shape)
        report = {"command": "nested", "input": detect, "detected": nested_to_json(nc)}
        return report, [f"{detect}: nested circulant with dims {shape}", dump_json(nested_to_json(nc)).rstrip()]

    (name,) = cfg.inputs
    nc = load_nested(resolve_path(name))
    report = {"command": "nested", "input": name, "dims": list(nc.dims), "n": nc.n,
              "symmetric": nc.is_symmetric()}
    lines = [f"{name}: dims {list(nc.dims)}, n = {nc.n}"]
    result = nested_spectrum(nc)
    if isinstance(result, ComplexSpectrum):
        report["complex"] = True
        report["values"] = [[z.real, z.imag] for z in result.values]
        lines.append("complex spectrum:")
        lines += [f"  {fmt4(z.real)} {'+' if z.imag >= 0 else '-'} {fmt4(abs(z.imag))}i" for z in result.values]
    else:
        report["complex"] = False
        report.update(spectrum_json(result))
        dense = linalg.sym_eig(nested_expand(nc), cfg.tol)
        dev = max(abs(a - b) for a, b in zip(result.values, dense.values))
        limit = VERIFY_RTOL * max(1.0, max(abs(v) for v in dense.values))
        report["oracle_deviation"] = dev
        report["oracle_pass"] = dev <= limit
        lines += spectrum_text(result)
        lines.append(f"  dense oracle deviation {dev:.3e} ({'pass' if dev <= limit else 'FAIL'})")
        if dev > limit:
            raise InconsistencyError(f"polynomial evaluation disagrees with dense oracle by {dev:.3e}")
    if with_gram:
        g = nested_gram(nc)
        report["gram"] = nested_to_json(g)
        gspec = nested_spectrum(g, symmetric=True)
        report["gram_spectrum"] = spectrum_json(gspec)
        lines.append("Gram matrix B^T B is nested circulant with the same dims; its spectrum:")
        lines += spectrum_text(gspec)
    return report, lines


def cmd_verify(cfg: RunConfig, expected: str | None) -> tuple[dict, list[str]]:
    (name,) = cfg.inputs
    p = load_code(name)
    if p.n > cfg.cap:
        raise InvalidArgumentError(f"n = rL = {p.n} exceeds the verification cap {cfg.cap} (see --cap)")
    t0 = time.perf_counter()
    reduced = gram_spectrum_reduced(p, cfg.tol)
    t1 = time.perf_counter()
    if expected is not None:
        obj = json.loads(resolve_path(expected).read_text(encoding="utf-8"))
        other = sorted(float(v) for v in obj["values"])
        against = expected
    else:
        other = list(gram_spectrum_dense(p, cfg.tol).values)
        against = "dense"
    t2 = time.perf_counter()
    lam1 = max(reduced.values)
    limit = VERIFY_RTOL * max(1.0, lam1)
    if len(other) != len(reduced.values):
        dev = float("inf")
    else:
        dev = max(abs(a - b) for a, b in zip(reduced.values, other))
    ok = dev <= limit
    report = {"command": "verify", "input": name, "against": against, "n": p.n,
              "max_deviation": dev if np.isfinite(dev) else None, "threshold": limit, "pass": ok,
              "time_reduced_s": t1 - t0, "time_reference_s": t2 - t1}
    lines = [f"{name}: reduced vs {against}, n = {p.n}",
             f"  max deviation {dev:.3e}, threshold {limit:.3e}: {'pass' if ok else 'FAIL'}",
             f"  time: reduced {t1 - t0:.3f} s, reference {t2 - t1:.3f} s"]
    return report, lines


def cmd_pseudoweight(cfg: RunConfig, layout: str) -> tuple[dict, list[str]]:
    hname, vname = cfg.inputs
    path = resolve_path(hname)
    if path.suffix in (".qc", ".json"):
        h = expand_scalar(load_code(hname), Layout(layout)).matrix
    else:
        h = parse_dense_matrix(path.read_text(encoding="utf-8"))
    omega = load_vector(vname)
    member, violation = cone_membership(h, omega)
    wp = pseudo_weight(omega)
    report = {"command": "pseudoweight", "input": hname, "vector": vname, "member": member,
              "violation": None if violation is None else
              {"row": violation.row, "col": violation.col, "slack": violation.slack},
              "pseudo_weight": wp}
    lines = [f"{vname} against {hname}: {'in' if member else 'NOT in'} the fundamental cone"]
    if violation is not None:
        lines.append(f"  first violation: {violation}")
    lines.append(f"  AWGNC pseudo-weight: {fmt4(wp)}")
    return report, lines


# -- entry point -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--method", choices=("auto", "reduced", "dense"), default=None,
                        help="spectrum method (default: auto = reduced)")
    common.add_argument("--format", choices=("text", "json"), default=None)
    common.add_argument("--tol", type=float, default=None, help="Jacobi stopping tolerance")
    common.add_argument("--cluster-tol", type=float, default=None, help="eigenvalue clustering tolerance")
    common.add_argument("--cap", type=int, default=None, help="largest n accepted by verify")

    parser = argparse.ArgumentParser(
        prog="qcspectra",
        description="Spectra of H^T H for QC and nested-circulant matrices, and eigenvalue bounds.",
        epilog=f"Options may also be set through environment variables {ENV_PREFIX}METHOD, "
               f"{ENV_PREFIX}FORMAT, {ENV_PREFIX}TOL, {ENV_PREFIX}CLUSTER_TOL, {ENV_PREFIX}CAP.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common], help="clustered spectrum of H^T H or of a nested circulant")
    p.add_argument("inputs", nargs=1, metavar="FILE")

    p = sub.add_parser("bound", parents=[common], help="pseudo-weight and distance bounds")
    p.add_argument("inputs", nargs=1, metavar="FILE")

    p = sub.add_parser("check-equality", parents=[common], help="exact equality test for a circulant code")
    p.add_argument("inputs", nargs="*", metavar="FILE")
    p.add_argument("--poly", help="row polynomial, e.g. '1 + x + x^3'")
    p.add_argument("--n", type=int, help="circulant size for --poly")

    p = sub.add_parser("nested", parents=[common], help="nested-circulant spectrum, Gram closure, detection")
    p.add_argument("inputs", nargs="*", metavar="FILE")
    p.add_argument("--gram", action="store_true", help="also report B^T B as a nested circulant")
    p.add_argument("--detect", metavar="MATRIX", help="dense matrix file to decompose")
    p.add_argument("--dims", help="comma-separated nesting sizes for --detect")

    p = sub.add_parser("verify", parents=[common], help="reduced method against the dense oracle")
    p.add_argument("inputs", nargs=1, metavar="FILE")
    p.add_argument("--expected", metavar="SPECTRUM_JSON", help="compare against stored eigenvalues instead")

    p = sub.add_parser("pseudoweight", parents=[common], help="cone membership and AWGNC pseudo-weight")
    p.add_argument("inputs", nargs=2, metavar=("H_FILE", "VECTOR_FILE"))
    p.add_argument("--layout", choices=[lay.value for lay in Layout], default=Layout.BLOCK_OF_CIRCULANTS.value)
    return parser


def run(argv: Sequence[str] | None = None, env: Mapping[str, str] | None = None) -> tuple[int, str, str]:
    """Execute a command; return (exit status, stdout text, stderr text)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    env = os.environ if env is None else env
    try:
        cfg = RunConfig.from_args(args, env)
        if cfg.command == "spectrum":
            report, lines = cmd_spectrum(cfg)
        elif cfg.command == "bound":
            report, lines = cmd_bound(cfg)
        elif cfg.command == "check-equality":
            report, lines = cmd_check_equality(cfg, args.poly, args.n)
        elif cfg.command == "nested":
            report, lines = cmd_nested(cfg, args.detect, args.dims, args.gram)
        elif cfg.command == "verify":
            report, lines = cmd_verify(cfg, args.expected)
            if not report["pass"]:
                out = dump_json(report) if cfg.fmt == "json" else "\n".join(lines) + "\n"
                return 2, out, "error: reduced spectrum disagrees with the reference\n"
        else:
            report, lines = cmd_pseudoweight(cfg, args.layout)
    except DomainError as exc:
        return 1, "", f"error: {exc}\n"
    except (InconsistencyError, NonConvergenceError) as exc:
        return 2, "", f"internal inconsistency: {exc}\n"
    except OSError as exc:
        return 1, "", f"error: {exc}\n"
    out = dump_json(report) if cfg.fmt == "json" else "\n".join(lines) + "\n"
    return 0, out, ""


def main(argv: Sequence[str] | None = None) -> int:
    status, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return status


if __name__ == "__main__":
    sys.exit(main())
