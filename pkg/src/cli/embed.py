#!/usr/bin/env python3
"""CLI for dataset generation, single embeddings, sweeps, checks and reports.

Exit codes: 0 success or feasible, 1 internal error, 2 usage or parse error,
3 finished cleanly without a feasible embedding.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Sequence

import numpy as np

from src.config import CFG, domain_params_from_config, resolve_path
from src.embedding.feasibility import DimensionMismatchError, DomainParams, Embedding, check_embedding
from src.embedding.initializers import InitMethod
from src.graphs.generator import GenerationError
from src.pipeline.dataset import DatasetError, build_dataset, get_graph, load_dataset, write_dataset
from src.pipeline.experiments import sweep_dataset
from src.pipeline.logging_utils import get_logger, setup_logging
from src.pipeline.manifest import RunManifest
from src.pipeline.render import render_register
from src.pipeline.reports import load_summaries, write_reports
from src.pipeline.utils import ensure_directory, read_json, write_json
from src.training.sweep import SweepGrid
from src.training.trainer import TrialConfig, run_learning_phase


EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3

logger = get_logger("cli")

TRAINING_CFG: Dict[str, Any] = CFG.get("training", {})
GENERATOR_CFG: Dict[str, Any] = CFG.get("generator", {})


def _print_summary(title: str, result: Dict[str, Any]) -> None:
    print(f"\n{title}")
    print("-" * len(title))
    if "total" in result:
        print(f"Verarbeitet: {result.get('processed', 0)}/{result.get('total', 0)}")
    if "feasible" in result:
        print(f"Zulässig: {result.get('feasible')}")
    if result.get("gap") is not None:
        print(f"Beste Lücke: {result['gap']:.4f} μm")

    errors = result.get("errors")
    if errors:
        print("Fehler:")
        for entry in errors:
            if isinstance(entry, dict):
                origin = entry.get("graph") or entry.get("trial") or "unbekannt"
                print(f"  - {origin}: {entry.get('error')}")
            else:
                print(f"  - {entry}")

    outputs = result.get("outputs")
    if outputs:
        print("Ausgaben:")
        for path in outputs:
            print(f"  - {path}")


def _domain_params(args: argparse.Namespace) -> DomainParams:
    base = domain_params_from_config()
    return DomainParams(
        d_min=base.d_min if args.dmin is None else args.dmin,
        d_adj=base.d_adj if args.dadj is None else args.dadj,
        L=base.L if args.L is None else args.L,
        epsilon=base.epsilon if args.eps is None else args.eps,
        iota=base.iota if args.iota is None else args.iota,
    )


def _read_coords(path: Path) -> np.ndarray:
    """Accept a bare coordinate list, ``{"coords": ...}`` or a trial result."""

    payload = read_json(path)
    if isinstance(payload, dict):
        if "coords" in payload:
            payload = payload["coords"]
        elif isinstance(payload.get("best"), dict) and "coords" in payload["best"]:
            payload = payload["best"]["coords"]
        else:
            raise DatasetError(f"{path} enthält keine Koordinaten")
    try:
        return np.asarray(payload, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise DatasetError(f"Koordinaten in {path} sind fehlerhaft: {exc}") from exc


def cmd_gen_dataset(args: argparse.Namespace) -> int:
    out = Path(args.out) if args.out else resolve_path("datasets") / "dataset.json"
    ensure_directory(out.parent)
    dataset = build_dataset(
        args.n,
        args.count,
        args.seed,
        workers=args.workers,
        show_progress=not args.no_progress,
    )
    write_dataset(dataset, out)

    manifest = RunManifest(
        command="gen-dataset",
        config={"n_values": args.n, "per_n": args.count, "generator": dict(GENERATOR_CFG)},
        outputs=[str(out)],
        master_seed=args.seed,
    )
    manifest.write(out)
    _print_summary("Datensatz", {"total": len(dataset), "processed": len(dataset), "outputs": [str(out)]})
    return EXIT_OK


def cmd_embed(args: argparse.Namespace) -> int:
    params = _domain_params(args)
    cfg = TrialConfig(
        lr=args.lr,
        p_drop=args.pdrop,
        init=InitMethod(args.init),
        epochs=args.epochs,
        dim=args.dim,
        seed=args.seed,
        keep_snapshot=args.snapshot,
    )
    dataset = load_dataset(Path(args.dataset))
    entry = get_graph(dataset, args.graph)

    out = Path(args.out) if args.out else resolve_path("results") / f"{entry.graph_id}_N{args.dim}.json"
    ensure_directory(out.parent)

    result = run_learning_phase(entry.graph, params, cfg, coords=entry.coords if entry.coords.size else None)
    payload = {"graph_id": entry.graph_id, "n": entry.graph.n, "N": args.dim, "params": params.to_dict()}
    payload.update(result.to_dict())
    write_json(out, payload)

    manifest = RunManifest(
        command="embed",
        config={"trial": cfg.to_dict(), "domain": params.to_dict()},
        dataset=str(args.dataset),
        outputs=[str(out)],
        master_seed=args.seed,
    )
    if args.svg:
        if result.best_embedding is not None:
            svg_path = Path(args.svg)
            ensure_directory(svg_path.parent)
            render_register(entry.graph, result.best_embedding.coords, params, svg_path)
            manifest.add_output(svg_path)
        else:
            logger.warning("Keine zulässige Einbettung, SVG wird nicht erzeugt")
    manifest.write(out)

    _print_summary(
        f"Einbettung {entry.graph_id}",
        {"feasible": result.feasible, "gap": result.best_gap, "outputs": manifest.outputs},
    )
    return EXIT_OK if result.feasible else EXIT_INFEASIBLE


def cmd_sweep(args: argparse.Namespace) -> int:
    params = _domain_params(args)
    grid = SweepGrid.from_config(epochs=args.epochs)
    dataset = load_dataset(Path(args.dataset))
    out_dir = Path(args.out_dir) if args.out_dir else resolve_path("results") / f"sweep_N{args.dim}"

    summary = sweep_dataset(
        dataset,
        params,
        grid,
        args.dim,
        out_dir,
        master_seed=args.seed,
        workers=args.workers,
        graph_ids=args.graphs,
        show_progress=not args.no_progress,
    )

    manifest = RunManifest(
        command="sweep",
        config={
            "dim": args.dim,
            "grid": {
                "learning_rates": list(grid.learning_rates),
                "dropout_probabilities": list(grid.dropout_probabilities),
                "inits": [init.value for init in grid.inits],
                "epochs": grid.epochs,
            },
            "domain": params.to_dict(),
            "graphs": args.graphs,
        },
        dataset=str(args.dataset),
        outputs=list(summary["outputs"]),
        master_seed=args.seed,
    )
    manifest.write(out_dir / "sweep")
    _print_summary("Durchlauf", {key: value for key, value in summary.items() if key != "outputs"})

    if summary["errors"]:
        return EXIT_ERROR
    if summary["total"] and not summary["feasible"]:
        return EXIT_INFEASIBLE
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    params = _domain_params(args)
    coords = _read_coords(Path(args.coords))
    entry = get_graph(load_dataset(Path(args.dataset)), args.graph)
    report = check_embedding(entry.graph, Embedding(coords), params)
    print(json.dumps(report.to_dict(), indent=2, ensure_ascii=False))
    if not report.feasible:
        logger.warning("Einbettung für %s ist unzulässig (%s Verletzungen)", entry.graph_id, report.violation_count)
        return EXIT_INFEASIBLE
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    sweep_dir = Path(args.sweep_dir)
    summaries = load_summaries(sweep_dir)
    if not summaries:
        raise DatasetError(f"Keine Zusammenfassungen in {sweep_dir} gefunden")
    written = write_reports(summaries, sweep_dir)
    outputs = [str(path) for path in written.values()]
    manifest_path = RunManifest.path_for(sweep_dir / "sweep")
    if manifest_path.is_file():
        manifest = RunManifest.load(manifest_path)
    else:
        logger.info("Kein Durchlauf-Manifest in %s, lege eines an", sweep_dir)
        manifest = RunManifest(command="report")
    manifest.record_update("report", written.values(), summaries=len(summaries))
    manifest.write(sweep_dir / "sweep")
    _print_summary("Berichte", {"total": len(summaries), "processed": len(summaries), "outputs": outputs})
    return EXIT_OK


def _add_domain_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("Register-Parameter (μm)")
    group.add_argument("--dmin", type=float, default=None, help="Minimum distance between atoms")
    group.add_argument("--dadj", type=float, default=None, help="Maximum distance of adjacent atoms")
    group.add_argument("--L", type=float, default=None, help="Register radius")
    group.add_argument("--eps", type=float, default=None, help="Clearance of non-adjacent pairs beyond --dadj")
    group.add_argument("--iota", type=float, default=None, help="Objective penalty offset")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Unit disk embeddings for neutral-atom registers")
    subparsers = parser.add_subparsers(dest="command", help="Commands")

    gen_parser = subparsers.add_parser("gen-dataset", help="Generate gate-accepted random graphs")
    gen_parser.add_argument(
        "--n", type=int, nargs="+", default=list(GENERATOR_CFG.get("n_values", [10])), help="Vertex counts"
    )
    gen_parser.add_argument("--count", type=int, default=int(GENERATOR_CFG.get("per_n", 20)), help="Graphs per n")
    gen_parser.add_argument("--seed", type=int, default=0, help="Dataset seed")
    gen_parser.add_argument("--out", default=None, help="Dataset JSON path")
    gen_parser.add_argument("--workers", type=int, default=0, help="Generator threads")
    gen_parser.add_argument("--no-progress", action="store_true", help="Disable progress bars")
    gen_parser.set_defaults(handler=cmd_gen_dataset)

    embed_parser = subparsers.add_parser("embed", help="Run one learning phase on one graph")
    embed_parser.add_argument("--dataset", required=True, help="Dataset JSON path")
    embed_parser.add_argument("--graph", required=True, help="Graph id, e.g. n010_00")
    embed_parser.add_argument("--dim", type=int, choices=(2, 3), default=2, help="Register dimension")
    embed_parser.add_argument(
        "--init", choices=[method.value for method in InitMethod], default=InitMethod.FR.value, help="Initializer"
    )
    embed_parser.add_argument("--lr", type=float, default=0.01, help="AdamW learning rate")
    embed_parser.add_argument("--pdrop", type=float, default=0.3, help="Dropout probability")
    embed_parser.add_argument(
        "--epochs", type=int, default=int(TRAINING_CFG.get("epochs", 3000)), help="Epoch budget"
    )
    embed_parser.add_argument("--seed", type=int, default=0, help="Trial seed")
    embed_parser.add_argument("--out", default=None, help="Result JSON path")
    embed_parser.add_argument("--svg", default=None, help="Write the register view of the best embedding")
    embed_parser.add_argument("--snapshot", action="store_true", help="Store the weights of the best epoch")
    _add_domain_flags(embed_parser)
    embed_parser.set_defaults(handler=cmd_embed)

    sweep_parser = subparsers.add_parser("sweep", help="Run the full trial grid on every graph")
    sweep_parser.add_argument("--dataset", required=True, help="Dataset JSON path")
    sweep_parser.add_argument("--dim", type=int, choices=(2, 3), default=2, help="Register dimension")
    sweep_parser.add_argument("--workers", type=int, default=None, help="Parallel trials (default: config)")
    sweep_parser.add_argument(
        "--seed", type=int, default=int(TRAINING_CFG.get("master_seed", 0)), help="Master seed"
    )
    sweep_parser.add_argument("--epochs", type=int, default=None, help="Epoch budget per trial")
    sweep_parser.add_argument("--out-dir", default=None, help="Directory for summaries and reports")
    sweep_parser.add_argument("--graphs", nargs="+", default=None, help="Restrict to these graph ids")
    sweep_parser.add_argument("--no-progress", action="store_true", help="Disable progress bars")
    _add_domain_flags(sweep_parser)
    sweep_parser.set_defaults(handler=cmd_sweep)

    check_parser = subparsers.add_parser("check", help="Verify coordinates against a graph")
    check_parser.add_argument("--coords", required=True, help="Coordinate JSON (list, {coords} or result file)")
    check_parser.add_argument("--dataset", required=True, help="Dataset JSON path")
    check_parser.add_argument("--graph", required=True, help="Graph id")
    _add_domain_flags(check_parser)
    check_parser.set_defaults(handler=cmd_check)

    report_parser = subparsers.add_parser("report", help="Rebuild the CSV reports of a sweep directory")
    report_parser.add_argument("--sweep-dir", required=True, help="Directory with *.summary.json files")
    report_parser.set_defaults(handler=cmd_report)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main CLI entry point; returns the process exit code."""

    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return EXIT_USAGE

    setup_logging()
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except GenerationError as exc:
        print(f"Fehler: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (DatasetError, DimensionMismatchError, ValueError, OSError) as exc:
        print(f"Fehler: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception:  # noqa: BLE001
        logger.exception("Unerwarteter Fehler in '%s'", args.command)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
