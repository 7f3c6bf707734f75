"""Batch verification suites with JSON/CSV reports and meaningful exit codes.

Subcommands: ``verify-identity``, ``splittings``, ``curvature``,
``analyticity``, ``all``.  Exit status 0 means every check in the invoked
suite passed, 1 means a verification failed, 2 means the invocation or
configuration was invalid.  Reports are deterministic given a
configuration: rows are emitted in a fixed sweep order.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import splittings as splittings_mod
from .analyticity import (
    audit_certificate,
    covariant_level_sups,
    estimate_certificate,
    verify_bound_chain,
)
from .field import Connection, CurvatureConsistencyError
from .grid import CompactRectangle
from .splittings import (
    CorrespondenceError,
    SplittingKind,
    classify,
    count_splittings,
    direction_sequences,
    enumerate_splittings,
    type1_bijection,
    type2_correspondence,
    verify_expansion_identity,
)
from .symbolic import (
    Direction,
    GaussianRational,
    WirtingerPolynomial,
    laplacian,
    ONE,
    S,
    SBAR,
)

__all__ = ["RunConfig", "ConfigError", "main", "entrypoint"]


class ConfigError(ValueError):
    """The run configuration is unusable (exit status 2)."""


_DEFAULT_RECTANGLE = CompactRectangle(Fraction(-1), Fraction(1), Fraction(-1), Fraction(1), 33)
_DEFAULT_FUNCTIONS = (ONE, S, S * SBAR)


@dataclass
class RunConfig:
    """Everything a subcommand needs: model data, sweep caps, output options."""

    connection: Connection = field(
        default_factory=lambda: Connection.from_potential(S * SBAR)
    )
    indices: tuple[int, ...] = (0, 1, 4)
    functions: tuple[WirtingerPolynomial, ...] = _DEFAULT_FUNCTIONS
    rectangle: CompactRectangle = _DEFAULT_RECTANGLE
    m_identity: int = 6
    m_splittings: int = 8
    m_bijection: int = 6
    m_decay: int = 10
    m_greedy: int = 12
    curvature_j_max: int = 9
    eval_points: tuple[complex, ...] = (0j, 1 + 0j)
    safety: Fraction = Fraction(2)
    out_dir: Path = Path("reports")
    formats: tuple[str, ...] = ("json", "csv")
    corrupt_expansion: bool = False

    def validate(self) -> list[str]:
        problems = []
        if not self.indices:
            problems.append("index list must not be empty")
        elif any(j < 0 for j in self.indices):
            problems.append("basis indices must be nonnegative")
        if not self.functions:
            problems.append("function list must not be empty")
        for name in (
            "m_identity",
            "m_splittings",
            "m_bijection",
            "m_decay",
            "m_greedy",
            "curvature_j_max",
        ):
            if getattr(self, name) < 0:
                problems.append(f"{name} must be nonnegative")
        if self.m_greedy < self.m_decay:
            problems.append("m_greedy must be at least m_decay")
        if not self.formats or any(fmt not in ("json", "csv") for fmt in self.formats):
            problems.append("formats must be a nonempty subset of {json, csv}")
        if self.safety < 1:
            problems.append("safety factor must be at least 1")
        if not self.eval_points:
            problems.append("eval_points must not be empty")
        return problems

    @classmethod
    def from_json(cls, data: dict) -> "RunConfig":
        kwargs: dict = {}
        if "connection" in data:
            kwargs["connection"] = Connection.from_json(data["connection"])
        if "indices" in data:
            kwargs["indices"] = tuple(int(j) for j in data["indices"])
        if "functions" in data:
            kwargs["functions"] = tuple(
                WirtingerPolynomial.from_json_terms(records) for records in data["functions"]
            )
        if "rectangle" in data:
            kwargs["rectangle"] = CompactRectangle.from_json(data["rectangle"])
        for name in (
            "m_identity",
            "m_splittings",
            "m_bijection",
            "m_decay",
            "m_greedy",
            "curvature_j_max",
        ):
            if name in data:
                kwargs[name] = int(data[name])
        if "eval_points" in data:
            kwargs["eval_points"] = tuple(complex(re, im) for re, im in data["eval_points"])
        if "safety" in data:
            kwargs["safety"] = Fraction(str(data["safety"]))
        if "out_dir" in data:
            kwargs["out_dir"] = Path(data["out_dir"])
        if "formats" in data:
            kwargs["formats"] = tuple(data["formats"])
        return cls(**kwargs)


# --- report helpers -------------------------------------------------------


def _format_dirs(dirs: Sequence[Direction]) -> str:
    return " ".join(str(d) for d in dirs) if dirs else "-"


def _format_point(point: complex) -> str:
    return f"{point.real:g}{point.imag:+g}i"


def _write_json(path: Path, payload) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=False) + "\n")


def _write_csv(path: Path, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        writer.writerows(rows)


# --- subcommands ----------------------------------------------------------


def cmd_verify_identity(cfg: RunConfig) -> int:
    """Sweep the expansion identity and report every cell."""
    cells = []
    all_pass = True
    for m in range(cfg.m_identity + 1):
        for dirs in direction_sequences(m):
            for j in cfg.indices:
                for f_index, f in enumerate(cfg.functions):
                    ok = verify_expansion_identity(m, dirs, cfg.connection, j, f)
                    all_pass = all_pass and ok
                    cells.append(
                        {
                            "m": m,
                            "dirs": _format_dirs(dirs),
                            "j": j,
                            "f": str(f),
                            "f_index": f_index,
                            "ok": ok,
                        }
                    )
    report = {
        "check": "expansion-identity",
        "connection": cfg.connection.to_json(),
        "m_max": cfg.m_identity,
        "cells": cells,
        "all_pass": all_pass,
    }
    if "json" in cfg.formats:
        _write_json(cfg.out_dir / "verify_identity.json", report)
    if "csv" in cfg.formats:
        _write_csv(
            cfg.out_dir / "verify_identity.csv",
            ("m", "dirs", "j", "f", "ok"),
            [(c["m"], c["dirs"], c["j"], c["f"], c["ok"]) for c in cells],
        )
    print(f"verify-identity: {len(cells)} cells, all_pass={all_pass}")
    return 0 if all_pass else 1


def cmd_splittings(cfg: RunConfig) -> int:
    """Count table with type breakdown plus both correspondence verifications."""
    rows = []
    all_pass = count_splittings(0, 1) == 1
    for m in range(cfg.m_splittings + 1):
        for k in range(1, m + 2):
            total = count_splittings(m, k)
            if m >= 1:
                splittings = enumerate_splittings(m, k)
                type1 = sum(1 for s in splittings if classify(s) is SplittingKind.TYPE1)
                type2 = total - type1
                recursion_ok = total == count_splittings(m - 1, k - 1) + k * count_splittings(
                    m - 1, k
                )
                all_pass = all_pass and recursion_ok
                rows.append((m, k, total, type1, type2, recursion_ok))
            else:
                rows.append((m, k, total, "", "", ""))
    correspondence_rows = []
    for m in range(cfg.m_bijection + 1):
        for k in range(2, m + 3):
            try:
                pairs = type1_bijection(m, k)
                correspondence_rows.append(("type1", m, k, len(pairs), True))
            except CorrespondenceError as exc:
                correspondence_rows.append(("type1", m, k, 0, False))
                print(f"type-1 correspondence failed at (m={m}, k={k}): {exc}", file=sys.stderr)
                all_pass = False
        for k in range(1, m + 2):
            try:
                cover = type2_correspondence(m, k)
                correspondence_rows.append(("type2", m, k, len(cover), True))
            except CorrespondenceError as exc:
                correspondence_rows.append(("type2", m, k, 0, False))
                print(f"type-2 correspondence failed at (m={m}, k={k}): {exc}", file=sys.stderr)
                all_pass = False
    if "csv" in cfg.formats:
        _write_csv(
            cfg.out_dir / "splittings.csv",
            ("m", "k", "total", "type1", "type2", "recursion_ok"),
            rows,
        )
        _write_csv(
            cfg.out_dir / "correspondences.csv",
            ("kind", "m", "k", "pairings", "ok"),
            correspondence_rows,
        )
    if "json" in cfg.formats:
        _write_json(
            cfg.out_dir / "splittings.json",
            {
                "check": "splittings",
                "counts": [
                    dict(zip(("m", "k", "total", "type1", "type2", "recursion_ok"), row))
                    for row in rows
                ],
                "correspondences": [
                    dict(zip(("kind", "m", "k", "pairings", "ok"), row))
                    for row in correspondence_rows
                ],
                "all_pass": all_pass,
            },
        )
    print(f"splittings: table to m={cfg.m_splittings}, correspondences to m={cfg.m_bijection}, all_pass={all_pass}")
    return 0 if all_pass else 1


def cmd_curvature(cfg: RunConfig) -> int:
    """Eigenvalue spectrum of the curvature with growth flags at sample points."""
    conn = cfg.connection
    if conn.potential is None:
        raise ConfigError("curvature report needs a connection given by a potential g")
    lap = laplacian(conn.potential)
    all_pass = True
    rows = []
    values_by_point: dict[complex, list[float]] = {pt: [] for pt in cfg.eval_points}
    for j in range(cfg.curvature_j_max + 1):
        try:
            eigen = conn.curvature_eigenvalue(j)
        except CurvatureConsistencyError as exc:
            print(f"curvature consistency failure at j={j}: {exc}", file=sys.stderr)
            return 1
        closed_form = lap * GaussianRational(Fraction(-(j + 1), 2))
        match = eigen == closed_form
        all_pass = all_pass and match
        magnitudes = []
        for pt in cfg.eval_points:
            magnitude = abs(eigen.evaluate(pt))
            values_by_point[pt].append(magnitude)
            magnitudes.append(magnitude)
        rows.append((j, str(eigen), match, *magnitudes))
    growth = {}
    for pt in cfg.eval_points:
        values = values_by_point[pt]
        if abs(lap.evaluate(pt)) > 1e-12:
            increasing = all(a < b for a, b in zip(values, values[1:]))
            growth[_format_point(pt)] = increasing
            all_pass = all_pass and increasing
        else:
            growth[_format_point(pt)] = False
            all_pass = all_pass and all(v <= 1e-9 for v in values)
    point_headers = tuple(f"abs_at_{_format_point(pt)}" for pt in cfg.eval_points)
    if "csv" in cfg.formats:
        _write_csv(
            cfg.out_dir / "curvature.csv",
            ("j", "eigenvalue", "matches_closed_form", *point_headers),
            rows,
        )
    if "json" in cfg.formats:
        _write_json(
            cfg.out_dir / "curvature.json",
            {
                "check": "curvature",
                "potential": str(conn.potential),
                "laplacian": str(lap),
                "rows": [
                    dict(zip(("j", "eigenvalue", "matches_closed_form", *point_headers), row))
                    for row in rows
                ],
                "growth": growth,
                "all_pass": all_pass,
            },
        )
    print(f"curvature: spectrum to j={cfg.curvature_j_max}, growth={growth}, all_pass={all_pass}")
    return 0 if all_pass else 1


def cmd_analyticity(cfg: RunConfig) -> int:
    """Audited certificates plus decay profiles and bound-chain checks."""
    conn = cfg.connection
    summary = []
    all_pass = True
    for j in cfg.indices:
        for f_index, f in enumerate(cfg.functions):
            certificate = estimate_certificate(f, conn, j, cfg.rectangle, cfg.safety)
            audited = audit_certificate(certificate)
            all_pass = all_pass and audited
            _write_json(
                cfg.out_dir / f"certificate_j{j}_f{f_index}.json", certificate.to_json()
            )
            levels = covariant_level_sups(
                conn, j, f, cfg.rectangle, cfg.m_greedy, full_cap=cfg.m_decay
            )
            decay_rows = []
            cell_pass = audited
            for level in levels:
                scaled = float(
                    certificate.delta**level.m / math.factorial(level.m)
                ) * level.sup
                bound = float((level.m + 1) * certificate.M * Fraction(1, 2) ** level.m)
                row_ok = scaled <= bound * (1 + 1e-9)
                chain_ok = verify_bound_chain(conn, j, f, certificate, level.m, level.dirs)
                cell_pass = cell_pass and row_ok and chain_ok
                decay_rows.append((level.m, level.sup, scaled, bound, row_ok and chain_ok))
            _write_csv(
                cfg.out_dir / f"decay_j{j}_f{f_index}.csv",
                ("m", "sup_norm", "delta_scaled", "decay_bound", "pass"),
                decay_rows,
            )
            all_pass = all_pass and cell_pass
            summary.append(
                {
                    "j": j,
                    "f": str(f),
                    "f_index": f_index,
                    "epsilon": str(certificate.epsilon),
                    "M": str(certificate.M),
                    "delta": str(certificate.delta),
                    "audited": audited,
                    "all_rows_pass": cell_pass,
                }
            )
            print(
                f"analyticity j={j} f={f}: epsilon={certificate.epsilon} "
                f"M~{float(certificate.M):.6g} audited={audited} pass={cell_pass}"
            )
    if "json" in cfg.formats:
        _write_json(
            cfg.out_dir / "analyticity.json",
            {"check": "analyticity", "cells": summary, "all_pass": all_pass},
        )
    return 0 if all_pass else 1


def cmd_all(cfg: RunConfig) -> int:
    status = 0
    for command in (cmd_verify_identity, cmd_splittings, cmd_curvature, cmd_analyticity):
        status = max(status, command(cfg))
    return status


_COMMANDS = {
    "verify-identity": cmd_verify_identity,
    "splittings": cmd_splittings,
    "curvature": cmd_curvature,
    "analyticity": cmd_analyticity,
    "all": cmd_all,
}

# --m-max retargets the cap that drives the invoked suite
_M_MAX_TARGETS = {
    "verify-identity": ("m_identity",),
    "splittings": ("m_splittings",),
    "curvature": ("curvature_j_max",),
    "analyticity": ("m_decay",),
    "all": ("m_identity", "m_splittings", "curvature_j_max", "m_decay"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON run configuration")
    common.add_argument("--out", type=Path, help="output directory for reports")
    common.add_argument("--m-max", type=int, dest="m_max", help="override the suite's sweep cap")
    common.add_argument("--grid", type=int, help="override grid points per axis")
    common.add_argument("--json", action="store_true", help="emit JSON reports only")
    common.add_argument("--csv", action="store_true", help="emit CSV reports only")
    common.add_argument("--corrupt-expansion", action="store_true", help=argparse.SUPPRESS)
    parser = argparse.ArgumentParser(
        prog="hilbertfield",
        description="Verification suites for the diagonal Hilbert field model",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        subparsers.add_parser(name, parents=[common])
    return parser


def _configure(args: argparse.Namespace) -> RunConfig:
    if args.config is not None:
        try:
            data = json.loads(Path(args.config).read_text())
            cfg = RunConfig.from_json(data)
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise ConfigError(f"could not load config {args.config}: {exc}") from exc
    else:
        cfg = RunConfig()
    if args.out is not None:
        cfg = replace(cfg, out_dir=args.out)
    if args.grid is not None:
        if args.grid < 2:
            raise ConfigError("--grid must be at least 2")
        cfg = replace(cfg, rectangle=cfg.rectangle.with_grid_n(args.grid))
    if args.m_max is not None:
        if args.m_max < 0:
            raise ConfigError("--m-max must be nonnegative")
        updates = {name: args.m_max for name in _M_MAX_TARGETS[args.command]}
        if "m_decay" in updates:
            updates["m_greedy"] = args.m_max + 2
        cfg = replace(cfg, **updates)
    if args.json and not args.csv:
        cfg = replace(cfg, formats=("json",))
    elif args.csv and not args.json:
        cfg = replace(cfg, formats=("csv",))
    if args.corrupt_expansion:
        cfg = replace(cfg, corrupt_expansion=True)
    problems = cfg.validate()
    if problems:
        raise ConfigError("; ".join(problems))
    return cfg


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _configure(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    command = _COMMANDS[args.command]
    previous_sign = splittings_mod._EXPANSION_SIGN
    try:
        if cfg.corrupt_expansion:
            splittings_mod._EXPANSION_SIGN = -1
        return command(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    finally:
        splittings_mod._EXPANSION_SIGN = previous_sign


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
