"""Command-line front end.

Subcommands:

    trajectory   run the engine, the closed forms and the classical
                 integrator on one configuration; write CSVs, a manifest
                 and a comparison summary
    converge     sweep the level count and tabulate the contrast factor
                 and the gap to the classical motion
    verify       run the self-verification suite, write a JSON report
    oracle       quadrature vs closed-form convergence of the exact
                 momentum matrix elements

Configuration comes from flags, optionally merged over a flat key=value
file (flags win).  The environment variable SEMICLASSICAL_OUTPUT_DIR sets
the default output directory.  Exit codes: 0 success, 2 configuration
error, 3 verification failure, 4 numerical-accuracy failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__, classical, evolution, laguerre, packets, verify
from .errors import AccuracyError, DomainError
from .kinematics import (
    DEFAULT_ANOMALY,
    FieldConfig,
    SpinKinematics,
    anomalous_frequency,
    cyclotron_frequency,
)
from .trajectory import compare_trajectories

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_VERIFY = 3
EXIT_ACCURACY = 4


@dataclass
class RunConfig:
    h: float = 0.1
    anomaly: float = DEFAULT_ANOMALY
    b_z: float = 0.5
    n: int = 100
    levels: int = 3
    epsilon: int = 1
    mode: str = evolution.UNIFORM_GAP
    t_max: float | None = None
    samples: int = 256
    seed: int = 0
    output_dir: str = "."

    def validate(self) -> None:
        FieldConfig(h=self.h, anomaly=self.anomaly, b_z=self.b_z)  # checks h, anomaly
        if self.n < 1:
            raise DomainError(f"n: must be >= 1, got {self.n}")
        if self.levels < 1:
            raise DomainError(f"levels: must be >= 1, got {self.levels}")
        if self.epsilon not in (-1, 1):
            raise DomainError(f"epsilon: must be +1 or -1, got {self.epsilon}")
        if self.mode not in (evolution.UNIFORM_GAP, evolution.EXACT):
            raise DomainError(f"mode: must be 'uniform-gap' or 'exact', got {self.mode!r}")
        if self.samples < 2:
            raise DomainError(f"samples: must be >= 2, got {self.samples}")
        if self.t_max is not None and self.t_max <= 0:
            raise DomainError(f"t_max: must be > 0, got {self.t_max}")

    @property
    def field(self) -> FieldConfig:
        return FieldConfig(h=self.h, anomaly=self.anomaly, b_z=self.b_z)


_INT_KEYS = {"n", "levels", "epsilon", "samples", "seed"}
_FLOAT_KEYS = {"h", "anomaly", "b_z", "t_max"}


def _parse_config_file(path: str) -> dict:
    values: dict = {}
    with open(path) as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if key in _INT_KEYS:
                values[key] = int(value)
            elif key in _FLOAT_KEYS:
                values[key] = float(value)
            elif key in ("mode", "output_dir"):
                values[key] = value
            else:
                raise DomainError(f"{path}:{lineno}: unknown key {key!r}")
    return values


def _merge_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    file_values = _parse_config_file(args.config) if args.config else {}
    for key, value in file_values.items():
        setattr(cfg, key, value)
    for key in ("h", "anomaly", "b_z", "n", "levels", "epsilon", "mode", "t_max", "samples", "seed"):
        value = getattr(args, key, None)
        if value is not None:
            setattr(cfg, key, value)
    if getattr(args, "output_dir", None) is not None:
        cfg.output_dir = args.output_dir
    elif "output_dir" not in file_values:
        cfg.output_dir = os.environ.get("SEMICLASSICAL_OUTPUT_DIR", cfg.output_dir)
    cfg.validate()
    return cfg


def _json_dump(payload: dict, path: str) -> None:
    with open(path, "w", newline="\n") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True)
        handle.write("\n")


def _manifest(cfg: RunConfig) -> dict:
    field = cfg.field
    kin = SpinKinematics.from_field(field, cfg.n, cfg.epsilon)
    omega_exact, omega_asym = cyclotron_frequency(field, cfg.n, cfg.epsilon)
    omega_a_exact, omega_a_closed = anomalous_frequency(field, cfg.n)
    packet = packets.build_spinor_packet(cfg.n, cfg.levels, field, cfg.epsilon)
    sums = packets.structure_sums(packet)
    return {
        "tool": "landau-packets",
        "version": __version__,
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        "config": asdict(cfg),
        "derived": {
            "b_perp": kin.b_perp,
            "b": kin.b,
            "energy": kin.energy,
            "kappa": kin.kappa,
            "zeta_perp": kin.zeta_perp,
            "zeta_z": kin.zeta_z,
            "omega_exact": omega_exact,
            "omega_asymptotic": omega_asym,
            "omega_a_exact": omega_a_exact,
            "omega_a_closed": omega_a_closed,
            "levels_window": [packet.levels[0], packet.levels[-1]],
            "contrast_factor": packets.contrast_factor(cfg.levels),
            "sums": {
                "adjacent_same_spin": sums.adjacent_same_spin.real,
                "adjacent_spin_flip": sums.adjacent_spin_flip.real,
                "diagonal_spin_flip": sums.diagonal_spin_flip.real,
                "population_imbalance": sums.population_imbalance.real,
            },
        },
        "packet": packet.as_json_dict(),
    }


def cmd_trajectory(args: argparse.Namespace) -> int:
    cfg = _merge_config(args)
    os.makedirs(cfg.output_dir, exist_ok=True)
    field = cfg.field

    packet = packets.build_spinor_packet(cfg.n, cfg.levels, field, cfg.epsilon)
    omega = cyclotron_frequency(field, cfg.n, cfg.epsilon)[0]
    omega_a = anomalous_frequency(field, cfg.n)[0]
    times = evolution.sample_times(omega, samples=cfg.samples, t_max=cfg.t_max)

    engine = evolution.evolve_packet(packet, field, times, mode=cfg.mode)
    kin = SpinKinematics.from_field(field, cfg.n, cfg.epsilon)
    closed = evolution.closed_form_trajectory(kin, cfg.levels, omega, omega_a, times)

    kin_free = SpinKinematics.from_field(field, cfg.n, cfg.epsilon, anomaly_free=True)
    g_factor = 2.0 * (1.0 + cfg.anomaly)
    init = classical.classical_state_from_kinematics(kin_free, g_factor)
    rk4 = classical.bmt_integrate(init, cfg.h, record_times=times)

    engine.to_csv(os.path.join(cfg.output_dir, "trajectory.csv"))
    closed.to_csv(os.path.join(cfg.output_dir, "closed_form.csv"))
    rk4.to_csv(os.path.join(cfg.output_dir, "classical.csv"))
    _json_dump(_manifest(cfg), os.path.join(cfg.output_dir, "manifest.json"))

    factor = float(np.max(np.abs(engine.p[:, 0]))) / kin.b_perp
    comparison = {
        "momentum_amplitude_factor": factor,
        "engine_vs_closed_form": compare_trajectories(engine, closed).linf,
        "engine_vs_classical": compare_trajectories(engine, rk4).linf,
        "closed_form_vs_classical": compare_trajectories(closed, rk4).linf,
    }
    _json_dump(comparison, os.path.join(cfg.output_dir, "comparison.json"))
    print(f"levels={cfg.levels} momentum amplitude factor {factor:.12f}")
    print(f"wrote trajectory.csv, closed_form.csv, classical.csv, manifest.json, comparison.json")
    return EXIT_OK


def cmd_converge(args: argparse.Namespace) -> int:
    cfg = _merge_config(args)
    os.makedirs(cfg.output_dir, exist_ok=True)
    field = cfg.field
    n_list = args.n_list

    omega = cyclotron_frequency(field, cfg.n, cfg.epsilon)[0]
    kin = SpinKinematics.from_field(field, cfg.n, cfg.epsilon)
    rows = []
    for levels in n_list:
        packet = packets.build_spinor_packet(cfg.n, levels, field, cfg.epsilon)
        times = evolution.sample_times(omega, samples=cfg.samples, t_max=cfg.t_max)
        traj = evolution.evolve_packet(packet, field, times, mode=cfg.mode)
        factor = float(np.max(np.abs(traj.p[:, 0]))) / kin.b_perp
        reference = classical.classical_momentum(times, kin.b_perp, kin.b_z, omega)
        gap = float(np.max(np.abs(traj.p[:, :2] - reference[:, :2])))
        rows.append((levels, factor, abs(factor - packets.contrast_factor(levels)), gap))

    path = os.path.join(cfg.output_dir, "converge.csv")
    with open(path, "w", newline="\n") as handle:
        handle.write("levels,factor,factor_defect,classical_gap\n")
        for row in rows:
            handle.write(f"{row[0]},{row[1]:.17g},{row[2]:.17g},{row[3]:.17g}\n")
    for levels, factor, defect, gap in rows:
        print(f"levels={levels:6d} factor={factor:.12f} defect={defect:.3e} gap={gap:.6e}")
    print(f"wrote {path}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = _merge_config(args)
    os.makedirs(cfg.output_dir, exist_ok=True)
    report = verify.run_all_checks(
        cfg.field, cfg.n, cfg.epsilon, perturb=args.perturb, seed=cfg.seed
    )
    payload = report.as_dict()
    payload["config"] = asdict(cfg)
    _json_dump(payload, os.path.join(cfg.output_dir, "verify.json"))
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        extra = "" if check.residual is None else f" residual={check.residual:.3e}"
        print(f"{status} {check.name}{extra}")
    if not report.passed:
        print("verification FAILED")
        return EXIT_VERIFY
    print("verification passed")
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    cfg = _merge_config(args)
    os.makedirs(cfg.output_dir, exist_ok=True)
    n_list = args.n_list
    if any(n > 200 for n in n_list):
        raise DomainError(f"n_list: quadrature oracle is limited to n <= 200, got {max(n_list)}")
    s = args.radial_s
    rows = laguerre.semiclassical_convergence(s, cfg.h, n_list, b_z=cfg.b_z)
    exponent_x = laguerre.fit_decay_exponent(n_list, [r[1] for r in rows])
    exponent_y = laguerre.fit_decay_exponent(n_list, [r[2] for r in rows])

    path = os.path.join(cfg.output_dir, "oracle.csv")
    with open(path, "w", newline="\n") as handle:
        handle.write("n,rel_err_x,rel_err_y,err_z\n")
        for n, ex, ey, ez in rows:
            handle.write(f"{n},{ex:.17g},{ey:.17g},{ez:.17g}\n")
    for n, ex, ey, ez in rows:
        print(f"n={n:4d} rel_err_x={ex:.6e} rel_err_y={ey:.6e} err_z={ez:.3e}")
    print(f"decay exponent x: {exponent_x:.4f}  y: {exponent_y:.4f}")
    print(f"wrote {path}")
    return EXIT_OK


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat key=value configuration file")
    parser.add_argument("--h", type=float, help="dimensionless field strength")
    parser.add_argument("--anomaly", type=float, help="anomalous-moment ratio")
    parser.add_argument("--b-z", dest="b_z", type=float, help="longitudinal momentum")
    parser.add_argument("--n", type=int, help="reference level")
    parser.add_argument("--levels", type=int, help="number of levels in the packet")
    parser.add_argument("--epsilon", type=int, choices=(-1, 1), help="helicity sign")
    parser.add_argument("--mode", choices=(evolution.UNIFORM_GAP, evolution.EXACT), help="energy model")
    parser.add_argument("--t-max", dest="t_max", type=float, help="time span (default two cyclotron periods)")
    parser.add_argument("--samples", type=int, help="number of time samples")
    parser.add_argument("--seed", type=int, help="seed for perturbation experiments")
    parser.add_argument("--output-dir", dest="output_dir", help="output directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="landau-packets",
        description="Cyclotron motion and spin precession from Landau-level wave packets.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_traj = sub.add_parser("trajectory", help="run one configuration and write CSVs")
    _add_common(p_traj)
    p_traj.set_defaults(func=cmd_trajectory)

    p_conv = sub.add_parser("converge", help="sweep the level count")
    _add_common(p_conv)
    p_conv.add_argument("--n-list", dest="n_list", type=_int_list, default=[3, 10, 100],
                        help="comma-separated level counts")
    p_conv.set_defaults(func=cmd_converge)

    p_verify = sub.add_parser("verify", help="run the self-verification suite")
    _add_common(p_verify)
    p_verify.add_argument("--perturb", action="store_true",
                          help="corrupt one amplitude to demonstrate failure detection")
    p_verify.set_defaults(func=cmd_verify)

    p_oracle = sub.add_parser("oracle", help="quadrature convergence of exact matrix elements")
    _add_common(p_oracle)
    p_oracle.add_argument("--n-list", dest="n_list", type=_int_list, default=[10, 20, 40, 80],
                          help="comma-separated levels to scan")
    p_oracle.add_argument("--radial-s", dest="radial_s", type=int, default=0,
                          help="radial quantum number of the scanned states")
    p_oracle.set_defaults(func=cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except AccuracyError as exc:
        print(f"numerical accuracy error: {exc}", file=sys.stderr)
        return EXIT_ACCURACY


if __name__ == "__main__":
    sys.exit(main())
