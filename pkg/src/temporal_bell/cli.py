"""Command-line front end.

    temporal-bell --mode bell --alpha 0.7853981633974483
    temporal-bell --mode bell --sweep 0:1.5707963:50 --format csv
    temporal-bell --mode histories --basis x --alpha 0.3
    temporal-bell --mode erasure --outcomes=all --alpha 0.5

Outcome pairs starting with ``-`` must use the ``--outcomes=-+`` form (or
the ``pm``/``mp``/``mm`` aliases) so they are not mistaken for flags.

Exit codes: 0 ok, 2 usage, 3 numerical invariant breach, 4 I/O failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import __version__
from .erasure import (
    ALL_OUTCOMES,
    OutcomePair,
    bell_value_direct,
    bell_value_erased,
    delayed_choice_erase,
)
from .histories import ReadoutBasis, enumerate_x_histories, enumerate_z_histories
from .protocol import (
    ProtocolConfig,
    even_time_pairs,
    run_protocol,
    trajectory_oracle,
    two_time_correlation,
)
from .statevector import ImpossibleOutcomeError, InvariantError

EXIT_OK, EXIT_USAGE, EXIT_INVARIANT, EXIT_IO = 0, 2, 3, 4
CLI_NORM_TOL = 1e-9
MAX_MEMORIES = 19  # 20-qubit register

MODES = ("protocol", "histories", "erasure", "bell")

COLUMNS = {
    "bell": ["alpha", "k12", "k23", "k34", "k14_direct", "k14_erased_pp",
             "bell_direct", "bell_erased", "violated"],
    "protocol": ["alpha", "t1", "t2", "mu1", "mu2", "k_zz", "oracle"],
    "histories": ["alpha", "basis", "index", "readouts", "amp_re", "amp_im", "probability"],
    "erasure": ["alpha", "outcomes", "probability", "k14"],
}


@dataclass(frozen=True)
class RunRequest:
    mode: str = "bell"
    alphas: tuple[float, ...] = (math.pi / 4,)
    sweep: tuple[float, float, int] | None = None
    memories: int = 4
    basis: ReadoutBasis = ReadoutBasis.Z
    outcomes: tuple[OutcomePair, ...] = ALL_OUTCOMES
    fmt: str = "json"
    out: str | None = None
    degrees: bool = False


def _sweep_spec(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("sweep must be start:stop:steps")
    try:
        start, stop, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed sweep {text!r}") from None
    if steps < 1 or not start <= stop or not (math.isfinite(start) and math.isfinite(stop)):
        raise argparse.ArgumentTypeError("sweep needs finite start <= stop and steps >= 1")
    return start, stop, steps


def _outcomes(text: str) -> tuple[OutcomePair, ...]:
    if text.strip().lower() == "all":
        return ALL_OUTCOMES
    try:
        return (OutcomePair.parse(text),)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _finite_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError("alpha must be finite")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="temporal-bell",
        description="Temporal Bell inequality on a quantum Turing spin network.",
    )
    p.add_argument("--mode", choices=MODES, default="bell")
    angle = p.add_mutually_exclusive_group()
    angle.add_argument("--alpha", type=_finite_float, help="rotation angle per step (radians)")
    angle.add_argument("--sweep", type=_sweep_spec, help="start:stop:steps, endpoints included")
    p.add_argument("--memories", type=int, default=4)
    p.add_argument("--basis", type=ReadoutBasis.parse, default=ReadoutBasis.Z,
                   help="histories mode: z or x")
    p.add_argument("--outcomes", type=_outcomes, default=ALL_OUTCOMES,
                   help="erasure mode: ++, +-, -+, --, or all")
    p.add_argument("--format", dest="fmt", choices=("csv", "json"), default="json")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--degrees", action="store_true", help="read angles in degrees")
    return p


def parse_request(argv: Sequence[str]) -> RunRequest:
    parser = build_parser()
    args = parser.parse_args(list(argv))
    if not 1 <= args.memories <= MAX_MEMORIES:
        parser.error(f"--memories must be between 1 and {MAX_MEMORIES}")
    if args.mode in ("bell", "erasure") and args.memories < 4:
        parser.error(f"--mode {args.mode} needs --memories >= 4")
    if args.mode == "histories" and args.memories > 12:
        parser.error("--mode histories supports at most 12 memories")
    scale = math.pi / 180 if args.degrees else 1.0
    if args.sweep is not None:
        start, stop, steps = args.sweep
        alphas = tuple(float(a) * scale for a in np.linspace(start, stop, steps))
    else:
        alphas = (math.pi / 4,) if args.alpha is None else (args.alpha * scale,)
    return RunRequest(
        mode=args.mode,
        alphas=alphas,
        sweep=args.sweep,
        memories=args.memories,
        basis=args.basis,
        outcomes=args.outcomes,
        fmt=args.fmt,
        out=args.out,
        degrees=args.degrees,
    )


def _readout_label(readouts) -> str:
    return "".join("+" if r > 0 else "-" for r in readouts)


def bell_row(alpha: float, memories: int = 4) -> dict:
    direct = bell_value_direct(alpha, memories)
    erased = bell_value_erased(alpha, (1, 1), memories)
    return {
        "alpha": alpha,
        "k12": direct.k12,
        "k23": direct.k23,
        "k34": direct.k34,
        "k14_direct": direct.k14,
        "k14_erased_pp": erased.k14,
        "bell_direct": direct.bell_value,
        "bell_erased": erased.bell_value,
        "violated": direct.violated or erased.violated,
    }


def _check_run(run) -> None:
    for snap in run.snapshots:
        snap.state.check_norm(CLI_NORM_TOL)


def rows_for(request: RunRequest, alpha: float) -> list[dict]:
    config = ProtocolConfig(alpha, request.memories)
    if request.mode == "bell":
        _check_run(run_protocol(config))
        return [bell_row(alpha, request.memories)]
    if request.mode == "protocol":
        run = run_protocol(config)
        _check_run(run)
        oracle = trajectory_oracle(config) if request.memories <= 12 else {}
        rows = []
        for t1, t2 in even_time_pairs(request.memories):
            c = two_time_correlation(run, t1, t2)
            rows.append({"alpha": alpha, "t1": t1, "t2": t2, "mu1": t1 // 2, "mu2": t2 // 2,
                         "k_zz": c.value, "oracle": oracle.get((t1, t2))})
        return rows
    if request.mode == "histories":
        enumerate_ = enumerate_z_histories if request.basis is ReadoutBasis.Z else enumerate_x_histories
        table = enumerate_(config)
        return [{"alpha": alpha, "basis": table.basis.value, "index": i,
                 "readouts": _readout_label(h.readouts), "amp_re": h.amplitude.real,
                 "amp_im": h.amplitude.imag, "probability": h.probability}
                for i, h in enumerate(table)]
    if request.mode == "erasure":
        run = run_protocol(config)
        _check_run(run)
        rows = []
        for o in request.outcomes:
            try:
                res = delayed_choice_erase(run, o)
            except ImpossibleOutcomeError as exc:
                rows.append({"alpha": alpha, "outcomes": o.label(),
                             "probability": exc.probability, "k14": None})
                continue
            res.post_state.check_norm(CLI_NORM_TOL)
            rows.append({"alpha": alpha, "outcomes": o.label(),
                         "probability": res.probability, "k14": res.k14})
        return rows
    raise ValueError(f"unknown mode {request.mode!r}")


def collect_rows(request: RunRequest) -> list[dict]:
    rows = []
    for alpha in request.alphas:
        rows.extend(rows_for(request, alpha))
    for row in rows:
        for key, value in row.items():
            if isinstance(value, float) and not math.isfinite(value):
                raise InvariantError(f"non-finite {key} at alpha={row['alpha']}")
    return rows


def _fmt_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value + 0.0:.12g}"
    if value is None:
        return ""
    return str(value)


def render_csv(request: RunRequest, rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    cols = COLUMNS[request.mode]
    writer.writerow(cols)
    for row in rows:
        writer.writerow([_fmt_cell(row[c]) for c in cols])
    return buf.getvalue()


def render_json(request: RunRequest, rows: list[dict]) -> str:
    config = {
        "mode": request.mode,
        "memories": request.memories,
        "alphas": list(request.alphas),
        "sweep": list(request.sweep) if request.sweep else None,
        "degrees": request.degrees,
    }
    if request.mode == "histories":
        config["basis"] = request.basis.value
    if request.mode == "erasure":
        config["outcomes"] = [o.label() for o in request.outcomes]
    doc = {
        "metadata": {"version": __version__, "columns": COLUMNS[request.mode], "config": config},
        "rows": rows,
    }
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def execute(request: RunRequest, stdout=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    try:
        rows = collect_rows(request)
    except InvariantError as exc:
        print(f"temporal-bell: invariant breach: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    text = render_csv(request, rows) if request.fmt == "csv" else render_json(request, rows)
    try:
        if request.out:
            with open(request.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            stdout.write(text)
    except OSError as exc:
        print(f"temporal-bell: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv: Sequence[str] | None = None, stdout=None) -> int:
    try:
        request = parse_request(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return execute(request, stdout)


if __name__ == "__main__":
    sys.exit(main())
