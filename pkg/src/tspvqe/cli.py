"""Command-line interface.

Subcommands: encode, solve, audit, spectrum, landscape, vqe.  Every command
reads an instance file (JSON or edge-list), is deterministic given its flags
and seed, and emits JSON or CSV.  Reports carry a timestamp unless
``--no-timestamp`` is passed, so reruns can be compared byte for byte.

Exit codes: 0 success, 1 internal error, 2 input validation, 3 size cap.
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import sys
import traceback

from . import dqes, ising, oracle
from .encoder import (
    audit_penalties,
    encode_cycle_hamiltonian,
    encode_efficient,
    encode_fixed_start,
    encode_tsp_hamiltonian,
    suggest_penalties,
)
from .errors import SizeCapError, TspVqeError, ValidationError
from .graph import load_instance
from .rationals import rational_to_json
from .vqe import AnsatzConfig, OptimizerConfig

_LAYOUT_FLAGS = {"full": "full", "fixed": "fixed_start_full", "efficient": "efficient"}


def _default_threads() -> int:
    value = os.environ.get("TSPVQE_THREADS", "1")
    try:
        return max(1, int(value))
    except ValueError:
        return 1


def _read_instance(args):
    path = args.instance
    fmt = args.format
    if fmt == "auto":
        fmt = "edge_list" if path.endswith((".txt", ".edges", ".edgelist")) else "json"
    with open(path, "rb") as handle:
        instance = load_instance(handle, format=fmt)
    return _apply_penalties(instance, args)


def _apply_penalties(instance, args):
    mode = getattr(args, "penalties", "file")
    if mode == "file":
        return instance
    if mode in ("lucas", "safe"):
        a, b = suggest_penalties(instance, mode)
        return instance.with_penalties(a, b)
    if mode == "explicit":
        if args.penalty_a is None or args.penalty_b is None:
            raise ValidationError("--penalties explicit needs --penalty-a and --penalty-b")
        return instance.with_penalties(args.penalty_a, args.penalty_b)
    raise ValidationError(f"unknown penalty mode {mode!r}")


def _emit(args, text: str):
    if args.output and args.output != "-":
        with open(args.output, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _emit_report(args, command: str, payload: dict):
    doc = {"command": command}
    if not args.no_timestamp:
        doc["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    doc.update(payload)
    _emit(args, json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _encode_polynomial(instance, layout):
    if layout == "full":
        if instance.variant == "tsp":
            return encode_tsp_hamiltonian(instance)
        return encode_cycle_hamiltonian(instance)
    if layout == "fixed_start_full":
        return encode_fixed_start(instance)
    return encode_efficient(instance)


def cmd_encode(args) -> int:
    instance = _read_instance(args)
    poly = _encode_polynomial(instance, _LAYOUT_FLAGS[args.layout])
    if args.form == "binary":
        payload = poly.to_json_dict()
        payload["n_variables"] = poly.n_vars
    else:
        payload = ising.to_ising(poly).to_json_dict()
        payload["layout"] = poly.layout
    payload["penalty_a"] = rational_to_json(instance.penalty_a)
    payload["penalty_b"] = rational_to_json(instance.penalty_b)
    _emit_report(args, "encode", payload)
    return 0


def cmd_solve(args) -> int:
    instance = _read_instance(args)
    cost, tours = oracle.solve_exact_tsp(instance)
    payload = {
        "optimal_cost": rational_to_json(cost) if cost is not None else None,
        "tours": [t.to_dict() for t in tours],
        "tour_count": len(tours),
    }
    _emit_report(args, "solve", payload)
    return 0


def cmd_audit(args) -> int:
    instance = _read_instance(args)
    report = audit_penalties(instance, cap=args.cap)
    _emit_report(args, "audit", report.to_dict())
    return 0


def cmd_spectrum(args) -> int:
    instance = _read_instance(args)
    poly = _encode_polynomial(instance, _LAYOUT_FLAGS[args.layout])
    levels = ising.spectrum(ising.to_ising(poly), cap=args.cap)
    lines = ["bitstring,energy"]
    lines += [f"{bits},{rational_to_json(energy)}" for bits, energy in levels]
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_landscape(args) -> int:
    instance = _read_instance(args)
    poly = encode_efficient(instance)
    records = dqes.compute_landscape(ising.to_ising(poly))
    _emit(args, "\n".join(dqes.landscape_csv_rows(records)) + "\n")
    return 0


def cmd_vqe(args) -> int:
    instance = _read_instance(args)
    mode = {"zeros": "zeros", "best-mubs": "best_mubs", "random": "random"}[args.init]
    n = (instance.node_count - 1) ** 2
    ansatz = AnsatzConfig(n=n, layers=args.layers, entangler=args.entangler)
    optimizer = OptimizerConfig(
        method=args.optimizer,
        rho_start=args.rho_start,
        rho_end=args.rho_end,
        max_evals=args.max_evals,
    )
    report = dqes.run_experiment(
        instance,
        mode,
        k=args.k,
        seed=args.seed,
        ansatz=ansatz,
        optimizer=optimizer,
        convergence_tol=args.tol,
        threads=args.threads,
    )
    _emit_report(args, "vqe", report.to_dict())
    return 0


def _add_common(parser):
    parser.add_argument("instance", help="instance file (JSON or edge list)")
    parser.add_argument(
        "--format",
        choices=("auto", "json", "edge_list"),
        default="auto",
        help="instance file format (default: by extension)",
    )
    parser.add_argument("-o", "--output", default="-", help="output path (default stdout)")
    parser.add_argument(
        "--no-timestamp",
        action="store_true",
        help="omit the timestamp so reruns are byte-identical",
    )


def _add_penalty_flags(parser):
    parser.add_argument(
        "--penalties",
        choices=("file", "lucas", "safe", "explicit"),
        default="file",
        help="penalty coefficients: from the file, closed-form, or explicit",
    )
    parser.add_argument("--penalty-a", default=None, help="A for --penalties explicit")
    parser.add_argument("--penalty-b", default=None, help="B for --penalties explicit")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tspvqe",
        description="TSP/Hamiltonian-cycle penalty encodings, exhaustive audits, "
        "MUB energy landscapes, and VQE experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    formatter = argparse.ArgumentDefaultsHelpFormatter

    p = sub.add_parser("encode", formatter_class=formatter,
                       help="emit a binary or Ising polynomial")
    _add_common(p)
    _add_penalty_flags(p)
    p.add_argument("--layout", choices=tuple(_LAYOUT_FLAGS), default="efficient")
    p.add_argument("--form", choices=("binary", "ising"), default="binary")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("solve", formatter_class=formatter,
                       help="exact tour optimum by enumeration")
    _add_common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("audit", formatter_class=formatter,
                       help="exhaustively check the penalty choice")
    _add_common(p)
    _add_penalty_flags(p)
    p.add_argument("--cap", type=int, default=24, help="max full-layout variables")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("spectrum", formatter_class=formatter,
                       help="all 2^n Ising energies as CSV")
    _add_common(p)
    _add_penalty_flags(p)
    p.add_argument("--layout", choices=tuple(_LAYOUT_FLAGS), default="efficient")
    p.add_argument("--cap", type=int, default=24, help="max spin count")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("landscape", formatter_class=formatter,
                       help="partial-DQES MUB energy landscape as CSV")
    _add_common(p)
    _add_penalty_flags(p)
    p.set_defaults(func=cmd_landscape)

    p = sub.add_parser("vqe", formatter_class=formatter,
                       help="run a VQE experiment batch")
    _add_common(p)
    _add_penalty_flags(p)
    p.add_argument("--init", choices=("zeros", "best-mubs", "random"), default="zeros")
    p.add_argument("--k", type=int, default=10, help="batch size for best-mubs/random")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--layers", type=int, default=2)
    p.add_argument("--entangler", choices=("linear_rzz", "ring_rzz"), default="linear_rzz")
    p.add_argument(
        "--optimizer",
        choices=("rotation_descent", "nelder_mead"),
        default="rotation_descent",
    )
    p.add_argument("--rho-start", type=float, default=0.5)
    p.add_argument("--rho-end", type=float, default=1e-4)
    p.add_argument("--max-evals", type=int, default=2000)
    p.add_argument("--tol", type=float, default=1e-6, help="relative convergence tolerance")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.set_defaults(func=cmd_vqe)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SizeCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValidationError, TspVqeError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception:
        traceback.print_exc()
        return 1


if __name__ == "__main__":
    sys.exit(main())
