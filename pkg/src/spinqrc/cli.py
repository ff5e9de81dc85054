"""Command-line front end.

Subcommands:

* ``run``    one experiment cell (topology, gamma, readout, task ensemble)
* ``sweep``  cartesian grid of cells
* ``esn``    echo-state-network baseline comparison
* ``report`` re-emit metrics.csv from stored manifest files

Exit codes: 0 on success, 2 for configuration problems, 3 when a
numerical invariant is violated during a run.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import (ConfigError, DivergenceError, SpinChainError,
                     StateInvariantError, ValidationError)
from .experiment import (DEFAULT_SEED_COUNT, DEFAULT_STM_DELAYS,
                         ExperimentManifest, SweepGrid, metrics_csv_text,
                         parse_task, run_esn_comparison, run_experiment,
                         emit_report)

RESERVOIR_CONFIG_KEYS = ("n_qubits", "topology", "gamma", "theta0", "n_pre",
                         "n_fb", "n_test", "input_qubit")
ESN_CONFIG_KEYS = ("n_nodes", "w_scale", "w_in_scale", "n_pre", "n_fb", "n_test")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    return data


def _reservoir_config_dict(file_cfg: dict, args: argparse.Namespace) -> dict:
    config = {k: file_cfg[k] for k in RESERVOIR_CONFIG_KEYS if k in file_cfg}
    if getattr(args, "topology", None):
        config["topology"] = args.topology
    if getattr(args, "gamma", None) is not None:
        config["gamma"] = args.gamma
    return config


def _common_manifest_fields(file_cfg: dict, args: argparse.Namespace) -> dict:
    fields = {}
    fields["n_seeds"] = (args.seeds if args.seeds is not None
                         else int(file_cfg.get("seeds", DEFAULT_SEED_COUNT)))
    fields["base_seed"] = (args.seed if args.seed is not None
                           else int(file_cfg.get("seed", 0)))
    fields["input_seed"] = int(file_cfg.get("input_seed", 42))
    fields["ridge"] = float(file_cfg.get("ridge", 0.0))
    fields["stm_delays"] = tuple(file_cfg.get("stm_delays", DEFAULT_STM_DELAYS))
    return fields


def _cmd_run(args: argparse.Namespace) -> int:
    file_cfg = _load_config(args.config)
    task = args.task or file_cfg.get("task", "narma2")
    parse_task(task)
    manifest = ExperimentManifest(
        kind="reservoir",
        config=_reservoir_config_dict(file_cfg, args),
        tasks=(task,),
        readout=(args.readout if args.readout is not None
                 else int(file_cfg.get("readout", 1))),
        **_common_manifest_fields(file_cfg, args),
    )
    run_experiment(manifest)
    written = emit_report([manifest], Path(args.out), trajectories=True)
    for path in written:
        print(path)
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    file_cfg = _load_config(args.config)
    sweep_cfg = file_cfg.get("sweep", {})
    if not isinstance(sweep_cfg, dict):
        raise ConfigError("'sweep' must be a JSON object")
    grid_kwargs = {}
    for key in ("topologies", "gammas", "readouts", "tasks", "stm_delays",
                "variants"):
        if key in sweep_cfg:
            grid_kwargs[key] = tuple(sweep_cfg[key])
    if args.topology:
        grid_kwargs["topologies"] = (args.topology,)
    if args.gamma is not None:
        grid_kwargs["gammas"] = (args.gamma,)
    if args.readout is not None:
        grid_kwargs["readouts"] = (args.readout,)
    if args.task:
        grid_kwargs["tasks"] = (args.task,)
    common = _common_manifest_fields(file_cfg, args)
    if "n_seeds" in sweep_cfg:
        common["n_seeds"] = int(sweep_cfg["n_seeds"])
    grid = SweepGrid(n_seeds=common["n_seeds"], **grid_kwargs)
    manifests = grid.manifests(_reservoir_config_dict(file_cfg, args),
                               base_seed=common["base_seed"],
                               input_seed=common["input_seed"])
    for manifest in manifests:
        manifest.ridge = common["ridge"]
        run_experiment(manifest)
    written = emit_report(manifests, Path(args.out),
                          trajectories=bool(file_cfg.get("trajectory", False)))
    for path in written:
        print(path)
    return EXIT_OK


def _cmd_esn(args: argparse.Namespace) -> int:
    file_cfg = _load_config(args.config)
    esn_cfg = file_cfg.get("esn", {})
    if not isinstance(esn_cfg, dict):
        raise ConfigError("'esn' must be a JSON object")
    config = {k: esn_cfg[k] for k in ESN_CONFIG_KEYS if k in esn_cfg}
    for k in ("n_pre", "n_fb", "n_test"):
        if k in file_cfg and k not in config:
            config[k] = file_cfg[k]
    if args.task:
        tasks: tuple[str, ...] = (args.task,)
    else:
        tasks = tuple(file_cfg.get(
            "tasks", ("stm", "narma2", "narma5", "narma10", "narma15")))
    manifest = ExperimentManifest(
        kind="esn",
        config=config,
        tasks=tasks,
        variants=tuple(esn_cfg.get("variants", (1, 3, 5))),
        **_common_manifest_fields(file_cfg, args),
    )
    run_esn_comparison(manifest)
    written = emit_report([manifest], Path(args.out))
    for path in written:
        print(path)
    return EXIT_OK


def _cmd_report(args: argparse.Namespace) -> int:
    out_dir = Path(args.out)
    if args.config:
        paths = [Path(args.config)]
    else:
        paths = sorted(out_dir.glob("manifest_*.json"))
    if not paths:
        raise ConfigError(f"no manifest files found under {out_dir}")
    manifests = []
    for path in paths:
        try:
            manifests.append(ExperimentManifest.from_json(path.read_text()))
        except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ConfigError(f"cannot load manifest {path}: {exc}")
    metrics_path = out_dir / "metrics.csv"
    out_dir.mkdir(parents=True, exist_ok=True)
    metrics_path.write_text(metrics_csv_text(manifests))
    print(metrics_path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinqrc",
        description="Reservoir computing on a dissipative spin-qubit array")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, handler in (("run", _cmd_run), ("sweep", _cmd_sweep),
                          ("esn", _cmd_esn), ("report", _cmd_report)):
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--seed", type=int, help="base seed for the ensemble")
        p.add_argument("--out", default="out", help="output directory")
        p.add_argument("--seeds", type=int, help="ensemble size")
        p.add_argument("--task", choices=["stm", "narma2", "narma5", "narma10",
                                          "narma15", "narma20"])
        p.add_argument("--topology", choices=["linear", "ring"])
        p.add_argument("--gamma", type=float)
        p.add_argument("--readout", type=int, choices=[1, 2])
        p.set_defaults(handler=handler)
    return parser


def exit_code_for(exc: SpinChainError) -> int:
    """Map package errors onto the documented exit codes."""
    if isinstance(exc, (StateInvariantError, DivergenceError)):
        return EXIT_NUMERICAL
    if isinstance(exc, (ConfigError, ValidationError)):
        return EXIT_CONFIG
    return EXIT_CONFIG


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except SpinChainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exit_code_for(exc)


if __name__ == "__main__":
    sys.exit(main())
