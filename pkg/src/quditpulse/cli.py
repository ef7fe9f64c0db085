"""Command-line interface.

Exit codes: 0 success, 2 infeasible synthesis, 3 validation/parse
failure, 4 I/O error, 5 resource cap exceeded.  Failures print a
machine-readable JSON object {"error": {"type", "message"}} to stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import io as qio
from .basis import build_basis
from .cmatrix import (CMatrix, c_matrix, is_cancellable, split_iso_aniso,
                      to_interaction)
from .errors import DocumentError, QuditPulseError, RepresentationError, ResourceLimitError
from .floquet import (EnsembleSpec, benchmark_decoupling, dim_cap,
                      random_couplings)
from .presets import preset, preset_names
from .pulses import elementary_pulses, enumerate_composites
from .synthesis import (SynthesisResult, decouple, engineer, engineer_hpq,
                        symmetrize)

EXIT_OK = 0
EXIT_INFEASIBLE = 2
EXIT_VALIDATION = 3
EXIT_IO = 4
EXIT_RESOURCE = 5


def _load_cmatrix(name_or_path: str) -> CMatrix:
    """Interpret a string as a preset name, else as a Hamiltonian document path."""
    try:
        return preset(name_or_path)
    except RepresentationError:
        pass
    if not Path(name_or_path).exists():
        raise DocumentError(
            f"{name_or_path!r} is neither a preset ({', '.join(preset_names())}) "
            f"nor an existing file")
    h = qio.read_interaction(name_or_path)
    return c_matrix(h, build_basis(h.d))


def _composites(d: int, max_depth: int):
    return enumerate_composites(elementary_pulses(build_basis(d)), max_depth)


def _finish_synthesis(result: SynthesisResult, args) -> int:
    if args.report:
        qio.write_report(result, args.report)
    if result.optimal and args.out:
        qio.write_sequence(result.sequence, args.out, recipes=result.recipes)
    if result.optimal:
        print(f"{result.status}: beta* = {result.beta_star:.9g}, residual = "
              f"{result.residual:.3e}, frames = {result.frames_used}")
    else:
        print(f"{result.status}: {result.message}")
    print(json.dumps(qio.report_to_doc(result), indent=1, sort_keys=True))
    return EXIT_OK if result.optimal else EXIT_INFEASIBLE


def _cmd_basis(args) -> int:
    basis = build_basis(args.d)
    gram = np.einsum("uij,vji->uv", basis.lambdas, basis.lambdas).real
    ortho_err = float(np.abs(gram - 2 * np.eye(basis.m)).max())
    doc = {"d": basis.d, "m": basis.m, "orthonormality_error": ortho_err}
    if args.out:
        doc["lambdas"] = [qio.matrix_to_json(lam) for lam in basis.lambdas]
        qio.dump_json(doc, args.out)
        del doc["lambdas"]
    print(json.dumps(doc, indent=1, sort_keys=True))
    return EXIT_OK


def _cmd_repr(args) -> int:
    c = _load_cmatrix(args.input)
    split = split_iso_aniso(c)
    doc = {
        "d": c.d,
        "trace": c.trace(),
        "cancellable": is_cancellable(c, args.tol),
        "aniso_max": float(np.abs(split.aniso.entries).max()),
    }
    if args.out:
        qio.dump_json({"d": c.d, "c_matrix": [list(map(float, row)) for row in c.entries]},
                      args.out)
    print(json.dumps(doc, indent=1, sort_keys=True))
    return EXIT_OK


def _cmd_decouple(args) -> int:
    c = _load_cmatrix(args.input)
    comps = _composites(c.d, args.max_depth)
    return _finish_synthesis(decouple(c, comps, tol=args.tol), args)


def _cmd_engineer(args) -> int:
    c0 = _load_cmatrix(args.source)
    cf = _load_cmatrix(args.target)
    comps = _composites(c0.d, args.max_depth)
    return _finish_synthesis(engineer(c0, cf, comps, tol=args.tol), args)


def _cmd_engineer_hpq(args) -> int:
    comps = _composites(3, args.max_depth)
    return _finish_synthesis(engineer_hpq(args.p, args.q, comps, tol=args.tol), args)


def _cmd_symmetrize(args) -> int:
    seq = qio.read_sequence(args.sequence)
    result = symmetrize(seq)
    qio.write_sequence(result, args.out)
    print(json.dumps({"frames": len(result), "period_T": result.period_T,
                      "applied_pulses": result.applied_pulse_count()},
                     indent=1, sort_keys=True))
    return EXIT_OK


def _cmd_simulate(args) -> int:
    if args.n < 2:
        raise ValueError("need at least two particles (--n >= 2)")
    if args.cycles < 0:
        raise ValueError("--cycles must be nonnegative")
    c = _load_cmatrix(args.input)
    h = to_interaction(c, build_basis(c.d))
    couplings = random_couplings(args.n, args.coupling, args.seed)
    spec = EnsembleSpec(N=args.n, d=c.d, couplings=couplings, interaction=h,
                        cap=dim_cap())
    seq = qio.read_sequence(args.sequence)
    jts = [float(x) for x in args.jt.split(",")]
    if any(t <= 0 for t in jts):
        raise ValueError("--jt values must be positive")
    bench = benchmark_decoupling(spec, seq, jts, args.cycles,
                                 symmetrized=args.symmetrized)
    out = Path(args.out)
    written = []
    for T, trace in zip(bench.periods, bench.traces):
        path = out if len(jts) == 1 else out.with_name(f"{out.stem}.jt{T:g}{out.suffix}")
        qio.write_trace_csv(trace.times, trace.values, path)
        written.append(str(path))
    if args.baseline:
        base_path = out.with_name(f"{out.stem}.baseline{out.suffix}")
        qio.write_trace_csv(bench.baseline.times, bench.baseline.values, base_path)
        written.append(str(base_path))
    print(json.dumps({"written": written, "cycles": args.cycles,
                      "symmetrized": args.symmetrized}, indent=1))
    return EXIT_OK


def _cmd_verify(args) -> int:
    all_issues = {}
    for path in args.paths:
        issues = qio.validate_documents(path, tol=args.tol)
        all_issues[str(path)] = issues
    print(json.dumps(all_issues, indent=1, sort_keys=True))
    return EXIT_VALIDATION if any(all_issues.values()) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quditpulse",
        description="Synthesize and simulate global-pulse sequences for qudit ensembles")
    sub = parser.add_subparsers(dest="command", required=True)

    def synth_opts(p):
        p.add_argument("--max-depth", type=int, default=4,
                       help="composite pulse depth (default 4)")
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--out", help="write the sequence document here")
        p.add_argument("--report", help="write the synthesis report here")

    p = sub.add_parser("basis", help="construct and check an operator basis")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_basis)

    p = sub.add_parser("repr", help="C-matrix representation of an interaction")
    p.add_argument("--input", required=True, help="preset name or Hamiltonian JSON path")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_repr)

    p = sub.add_parser("decouple", help="synthesize a decoupling sequence")
    p.add_argument("--input", "--preset", dest="input", required=True)
    synth_opts(p)
    p.set_defaults(func=_cmd_decouple)

    p = sub.add_parser("engineer", help="map a source interaction onto a target")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    synth_opts(p)
    p.set_defaults(func=_cmd_engineer)

    p = sub.add_parser("engineer-hpq", help="engineer H(p,q) from Ising couplings")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--q", type=float, required=True)
    synth_opts(p)
    p.set_defaults(func=_cmd_engineer_hpq)

    p = sub.add_parser("symmetrize", help="time-symmetrize a sequence (period 2T)")
    p.add_argument("--sequence", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_symmetrize)

    p = sub.add_parser("simulate", help="exact stroboscopic fidelity traces")
    p.add_argument("--n", type=int, required=True, help="number of qudits")
    p.add_argument("--input", "--preset", dest="input", required=True)
    p.add_argument("--sequence", required=True)
    p.add_argument("--jt", required=True, help="period(s) J*T, comma separated")
    p.add_argument("--cycles", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--coupling", type=float, default=1.0, help="J scale (default 1)")
    p.add_argument("--symmetrized", action="store_true")
    p.add_argument("--baseline", action="store_true", help="also write the no-pulse trace")
    p.add_argument("--out", required=True, help="CSV output path")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("verify", help="validate Hamiltonian/sequence documents")
    p.add_argument("paths", nargs="+")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        _print_error(exc)
        return EXIT_RESOURCE
    except (DocumentError, RepresentationError, QuditPulseError, ValueError) as exc:
        _print_error(exc)
        return EXIT_VALIDATION
    except OSError as exc:
        _print_error(exc)
        return EXIT_IO


def _print_error(exc: Exception) -> None:
    print(json.dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}))


if __name__ == "__main__":
    sys.exit(main())
