"""Command-line front end.

Subcommands mirror the library: validate, encode, decode, cycles,
attractor, spectrum, verify, and a batch report that writes a CSV plus
figures for every bundled system.  Exit codes: 0 ok, 2 configuration
error, 3 domain error, 4 undecided.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

from . import attractor as attractor_mod
from . import linalg, solenoid, spectrum
from .cycles import Cycle, cycle_decode, cycle_encode, cycle_from_word
from .errors import (ConfigError, DegenerateDigitSpan, DomainError,
                     MatradixError, UndecidedError)
from .radix import RadixSystem
from .systems import PRESETS, SystemConfig, get_config


def _parse_point(text: str, dim: int) -> tuple[int, ...]:
    try:
        pt = tuple(int(p) for p in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"bad point {text!r}: {exc}") from exc
    if len(pt) != dim:
        raise ConfigError(f"point {text!r} has {len(pt)} components, "
                          f"system has dimension {dim}")
    return pt


def _parse_cycle(system: RadixSystem, text: str) -> Cycle:
    """A cycle given by its period block in word grammar ('1;0' or
    '3,0;0,2;...'); a full word with '|' uses the part after the bar."""
    if "|" in text:
        text = text.split("|", 1)[1]
    word = _parse_word(system, "|" + text)
    return cycle_from_word(system, word.period)


def _parse_word(system: RadixSystem, text: str):
    try:
        return system.parse_word(text)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _parse_resolution(text: str) -> float:
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad resolution {text!r}: {exc}") from exc


def _emit(args, obj: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(obj, indent=2))
    else:
        for line in lines:
            print(line)


def _fmt_points(points) -> str:
    return "{" + ", ".join(
        "(" + ", ".join(str(c) for c in p) + ")" if len(p) > 1
        else str(p[0]) for p in points) + "}"


def cmd_validate(args) -> int:
    cfg = get_config(args.system)
    base = cfg.radix_base()
    expansive = linalg.is_expansive(base)
    info = {"dim": cfg.dim, "det": linalg.det(cfg.matrix),
            "expansive": expansive, "digit_count": len(cfg.digits)}
    lines = [f"dim: {cfg.dim}",
             f"det A: {info['det']}",
             f"expansive: {'yes' if expansive else 'no'}",
             f"digits: {len(cfg.digits)}"]
    if not expansive:
        raise ConfigError("base matrix is not expansive")
    for label, key, mat in (("A^T", "complete_transpose",
                             linalg.transpose(cfg.matrix)),
                            ("A", "complete_untransposed", cfg.matrix)):
        try:
            RadixSystem(mat, cfg.digits)
            info[key] = True
            lines.append(f"complete for {label}: yes")
        except ConfigError as exc:
            info[key] = False
            lines.append(f"complete for {label}: no ({exc})")
    chosen_ok = info["complete_transpose" if cfg.transpose_convention
                     else "complete_untransposed"]
    if cfg.dual_digits is not None:
        unitary, defect = spectrum.check_hadamard(cfg.matrix, cfg.digits,
                                                  cfg.dual_digits)
        info["hadamard_unitary"] = unitary
        info["hadamard_defect"] = defect
        lines.append(f"hadamard: {'unitary' if unitary else 'not unitary'} "
                     f"(defect {defect:.3e})")
    _emit(args, info, lines)
    if not chosen_ok:
        raise ConfigError("digit set is incomplete for the configured base")
    return 0


def cmd_encode(args) -> int:
    cfg = get_config(args.system)
    system = cfg.radix_system()
    point = _parse_point(args.point, cfg.dim)
    if args.cycle:
        cyc = _parse_cycle(system, args.cycle)
        word = cycle_encode(system, cyc, point, args.slot)
    else:
        word = system.encode_integer(point)
    text = system.format_word(word)
    _emit(args, {"point": list(point), "slot": args.slot if args.cycle else None,
                 "word": text}, [text])
    return 0


def cmd_decode(args) -> int:
    cfg = get_config(args.system)
    system = cfg.radix_system()
    word = _parse_word(system, args.word)
    if args.cycle:
        cyc = _parse_cycle(system, args.cycle)
        k, j = cycle_decode(system, cyc, word)
        ktext = ",".join(str(c) for c in k)
        _emit(args, {"k": list(k), "slot": j}, [f"k={ktext} j={j}"])
    else:
        k = system.eval_finite(word)
        ktext = ",".join(str(c) for c in k)
        _emit(args, {"k": list(k)}, [f"k={ktext}"])
    return 0


def cmd_cycles(args) -> int:
    cfg = get_config(args.system)
    system = cfg.radix_system()
    rows = []
    lines = []
    for i, (points, word) in enumerate(system.integer_cycles(), 1):
        text = system.format_word(word)
        rows.append({"points": [list(p) for p in points], "word": text})
        lines.append(f"cycle {i}: period {len(points)}  "
                     f"points {_fmt_points(points)}  word {text}")
    _emit(args, {"cycles": rows}, lines)
    return 0


def cmd_attractor(args) -> int:
    cfg = get_config(args.system)
    system = cfg.radix_system()
    h = _parse_resolution(args.resolution)
    raster = attractor_mod.render_raster(system, h, depth=args.depth,
                                         seed=args.seed)
    out = args.out or "attractor.pgm"
    attractor_mod.write_pgm(raster, out)
    sidecar = out + ".json"
    attractor_mod.write_sidecar(raster, sidecar)
    measure = attractor_mod.measure_estimate(raster)
    _emit(args, {"out": out, "sidecar": sidecar, "depth": raster.depth,
                 "cells": int(raster.occupancy.sum()), "measure": measure},
          [f"depth {raster.depth}, {int(raster.occupancy.sum())} cells, "
           f"measure ~ {measure:.4f}",
           f"wrote {out} and {sidecar}"])
    return 0


def cmd_spectrum(args) -> int:
    cfg = get_config(args.system)
    if cfg.dual_digits is None:
        raise ConfigError("spectrum needs dual_digits in the system config")
    system = cfg.radix_system()
    info: dict = {}
    lines = []
    try:
        crit = spectrum.unimodulus_criterion_lattice(cfg.digits)
        info["criterion_lattice"] = crit.to_json()
        lines.append(f"modulus-one set: {crit.describe()}")
    except DegenerateDigitSpan as exc:
        info["criterion_lattice"] = None
        lines.append(f"modulus-one set: cylinder ({exc})")
    cycles = spectrum.extreme_cycles(cfg.matrix, cfg.digits, cfg.dual_digits)
    info["extreme_cycles"] = [
        {"points": [[str(c) for c in p] for p in cyc.points],
         "labels": list(cyc.labels)} for cyc in cycles]
    lines.append(f"extreme cycles: {len(cycles)}")
    for cyc in cycles:
        lines.append(f"  period {cyc.period}: {_fmt_points(cyc.points)}")
    lam = spectrum.spectrum_lattice(cfg.matrix, cfg.dual_digits, cycles)
    gamma = lam.dual()
    info["spectrum_lattice"] = lam.to_json()
    info["tiling_lattice"] = gamma.to_json()
    lines.append(f"spectrum lattice: {lam.describe()}")
    lines.append(f"tiling lattice: {gamma.describe()}")
    h = _parse_resolution(args.resolution)
    raster = attractor_mod.render_raster(system, h, depth=args.depth,
                                         seed=args.seed)
    report = attractor_mod.tiling_check(raster, gamma)
    info["tiling_check"] = report.to_json()
    lines.append(f"tiling check: mean {report.mean_multiplicity:.4f}, "
                 f"off-one fraction {report.off_one_fraction:.4f}, "
                 f"certified {'yes' if report.certified else 'no'}")
    _emit(args, info, lines)
    return 0


def cmd_verify(args) -> int:
    cfg = get_config(args.system)
    system = cfg.radix_system()
    if not args.cycle:
        raise ConfigError("verify needs --cycle")
    cyc = _parse_cycle(system, args.cycle)
    exact = solenoid.verify_commuting_diagram(
        system, cyc, samples=args.samples, depth=args.depth,
        seed=args.seed, exact=True)
    approx = solenoid.verify_commuting_diagram(
        system, cyc, samples=args.samples, depth=args.depth,
        seed=args.seed, exact=False)
    info = {"exact": exact.to_json(), "float": approx.to_json()}
    lines = [f"exact mode: max deviation {exact.max_deviation}"]
    lines += [f"  {name}: {dev}" for name, dev
              in exact.relation_deviation.items()]
    lines.append(f"float mode: max deviation {approx.max_deviation:.3e}")
    ok = exact.max_deviation == 0.0 and approx.max_deviation < solenoid.TOL_SOLENOID
    lines.append(f"within tolerance: {'yes' if ok else 'no'}")
    _emit(args, info, lines)
    return 0


def cmd_report(args) -> int:
    outdir = args.out or "report"
    os.makedirs(outdir, exist_ok=True)
    h = _parse_resolution(args.resolution)
    from .figures import attractor_figure, multiplicity_figure
    names = [args.system] if args.system else list(PRESETS)
    rows = []
    for name in names:
        cfg = get_config(name)
        label = name if name in PRESETS else os.path.splitext(
            os.path.basename(name))[0]
        system = cfg.radix_system()
        raster = attractor_mod.render_raster(system, h, depth=args.depth,
                                             seed=args.seed)
        base = os.path.join(outdir, label)
        attractor_mod.write_pgm(raster, base + ".pgm")
        attractor_mod.write_sidecar(raster, base + ".pgm.json")
        attractor_figure(raster, base + ".png", title=label)
        row = {
            "system": label,
            "dim": cfg.dim,
            "det": linalg.det(cfg.matrix),
            "depth": raster.depth,
            "cell_size": raster.h,
            "measure": round(attractor_mod.measure_estimate(raster), 6),
            "integer_cycles": len(system.integer_cycles()),
            "hadamard_defect": "",
            "spectrum_lattice": "",
            "tiling_lattice": "",
            "tiling_mean": "",
            "tiling_off_one": "",
            "certified": "",
        }
        if cfg.dual_digits is not None:
            _, defect = spectrum.check_hadamard(cfg.matrix, cfg.digits,
                                                cfg.dual_digits)
            row["hadamard_defect"] = f"{defect:.3e}"
            cycles = spectrum.extreme_cycles(cfg.matrix, cfg.digits,
                                             cfg.dual_digits)
            lam = spectrum.spectrum_lattice(cfg.matrix, cfg.dual_digits,
                                            cycles)
            gamma = lam.dual()
            report = attractor_mod.tiling_check(raster, gamma)
            multiplicity_figure(report, base + "-tiling.png", title=label)
            row.update({
                "spectrum_lattice": lam.describe(),
                "tiling_lattice": gamma.describe(),
                "tiling_mean": round(report.mean_multiplicity, 6),
                "tiling_off_one": round(report.off_one_fraction, 6),
                "certified": "yes" if report.certified else "no",
            })
        rows.append(row)
        print(f"{label}: measure ~ {row['measure']}"
              + (f", tiling {row['tiling_lattice']} certified "
                 f"{row['certified']}" if row["tiling_lattice"] else ""))
    csv_path = os.path.join(outdir, "report.csv")
    with open(csv_path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
    print(f"wrote {csv_path} and figures in {outdir}/")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matradix",
        description="Matrix radix systems: encodings, attractors, "
                    "tiling lattices.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, system_required=True):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--system", required=system_required,
                       help="preset name or JSON config path")
        p.add_argument("--json", action="store_true",
                       help="machine-readable output")
        p.add_argument("--seed", type=int, default=0)
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check a system configuration")

    p = add("encode", cmd_encode, "digit word of an integer point")
    p.add_argument("--point", "-p", required=True)
    p.add_argument("--cycle", "-c", help="cycle period in word grammar")
    p.add_argument("--slot", "-j", type=int, default=0)

    p = add("decode", cmd_decode, "integer point of a digit word")
    p.add_argument("--word", "-w", required=True)
    p.add_argument("--cycle", "-c")

    add("cycles", cmd_cycles, "integer cycles of the division map")

    p = add("attractor", cmd_attractor, "render the fraction attractor")
    p.add_argument("--resolution", default="1/256")
    p.add_argument("--depth", type=int)
    p.add_argument("--out", "-o")

    p = add("spectrum", cmd_spectrum,
            "extreme cycles, spectrum and tiling lattices")
    p.add_argument("--resolution", default="1/256")
    p.add_argument("--depth", type=int)

    p = add("verify", cmd_verify, "check the embedding/shift conjugacies")
    p.add_argument("--cycle", "-c", required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--depth", type=int, default=12)

    p = add("report", cmd_report,
            "batch CSV + figures for the bundled systems",
            system_required=False)
    p.add_argument("--resolution", default="1/128")
    p.add_argument("--depth", type=int)
    p.add_argument("--out", "-o")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UndecidedError as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return 4
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except MatradixError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
