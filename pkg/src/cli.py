"""
Command-line front end.

    python -m src.cli group --builtin s3
    python -m src.cli spectrum --builtin z2 --torus 2x2 --kitaev
    python -m src.cli diagram --builtin s3 --couplings couplings.json --format dot

Structured output goes to stdout, diagnostics to stderr. Exit codes:
0 success, 1 failed check, 2 usage or configuration, 3 capacity.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional

from pydantic import BaseModel, TypeAdapter, ValidationError, field_validator, model_validator

from .core.config import settings
from .core.exceptions import ConfigError, QuantumDoubleError
from .core.logging_config import configure_logging
from .models.couplings import CouplingConfig
from .models.group import FiniteGroup
from .models.hamiltonian import HamiltonianKind, HamiltonianSpec, KitaevForm, SpectrumMode
from .services import anyon_service, character_service, group_service, lattice_service, sector_service
from .services.hamiltonian_service import HamiltonianService, spectrum
from .services.operator_service import OperatorService
from .services.verification_service import CHECKS, run_checks

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class CliConfig(BaseModel):
    """Validated options shared by every subcommand."""

    builtin: Optional[str] = None
    file: Optional[Path] = None
    couplings: Optional[Path] = None
    rows: int = 2
    cols: int = 2
    format: str = "json"
    tolerance: float = settings.TOLERANCE

    @field_validator("tolerance")
    @classmethod
    def tolerance_in_range(cls, v: float) -> float:
        if not 0 < v <= 1e-3:
            raise ValueError("tolerance must lie in (0, 1e-3]")
        return v

    @field_validator("format")
    @classmethod
    def known_format(cls, v: str) -> str:
        if v not in ("json", "text", "dot"):
            raise ValueError("format must be json, text or dot")
        return v

    @model_validator(mode="after")
    def one_group_source(self) -> "CliConfig":
        if (self.builtin is None) == (self.file is None):
            raise ValueError("give exactly one of --builtin or --file")
        return self

    def load_group(self) -> FiniteGroup:
        if self.builtin is not None:
            return group_service.resolve_builtin(self.builtin)
        return group_service.load_group_file(self.file)

    def load_couplings(self) -> Optional[CouplingConfig]:
        return CouplingConfig.from_file(self.couplings) if self.couplings else None


def _emit(data) -> None:
    sys.stdout.write(json.dumps(data, indent=2, ensure_ascii=False) + "\n")


def _load_masses(path: Path) -> Dict[str, float]:
    try:
        return TypeAdapter(Dict[str, float]).validate_json(Path(path).read_text())
    except (OSError, ValidationError) as exc:
        raise ConfigError(f"Cannot read anyon masses from {path}: {exc}") from exc


def _config(args: argparse.Namespace) -> CliConfig:
    rows, cols = 2, 2
    if getattr(args, "torus", None):
        lattice = lattice_service.parse_torus(args.torus)
        rows, cols = lattice.rows, lattice.cols
    try:
        return CliConfig(
            builtin=args.builtin,
            file=args.file,
            couplings=getattr(args, "couplings", None),
            rows=rows,
            cols=cols,
            format=args.format,
            tolerance=args.tolerance if args.tolerance is not None else settings.TOLERANCE,
        )
    except ValidationError as exc:
        raise ConfigError(str(exc)) from exc


# Subcommands


def cmd_group(args: argparse.Namespace) -> int:
    config = _config(args)
    group = config.load_group()
    report = group_service.group_report(group)
    table = character_service.character_table(group)
    report["character_table"] = character_service.table_to_dict(table)
    if config.format != "text":
        _emit(report)
        return EXIT_OK
    print(f"{group.name}: order {group.order}, {len(group.classes)} classes")
    for c in report["classes"]:
        print(f"  {c['label']:>8}  size {c['size']:<3} normalizer order {c['normalizer_order']}  {{{', '.join(c['members'])}}}")
    print("character table:")
    for i, label in enumerate(table.labels):
        values = "  ".join(f"{complex(v):.3g}" for v in table.chi[i])
        print(f"  {label:>10}  {values}")
    return EXIT_OK


def cmd_anyons(args: argparse.Namespace) -> int:
    config = _config(args)
    rows = anyon_service.anyon_table(config.load_group())
    if config.format != "text":
        _emit(rows)
        return EXIT_OK
    for row in rows:
        print(f"{row['label']:>4}  ({row['class']}, {row['irrep']})  d={row['quantum_dimension']}  {row['type']}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    config = _config(args)
    report = run_checks(config.load_group(), checks=args.check, tolerance=config.tolerance)
    if config.format != "text":
        _emit(report.to_dict())
    else:
        for check in report.checks:
            status = "skip" if check.skipped else ("ok" if check.passed else "FAIL")
            print(f"{check.name:<24} {status:<5} {check.deviation:.3e}")
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_spectrum(args: argparse.Namespace) -> int:
    config = _config(args)
    group = config.load_group()
    couplings = config.load_couplings()
    masses = _load_masses(args.masses) if args.masses else None
    if args.kitaev:
        kind = HamiltonianKind.KITAEV
    elif masses is not None:
        kind = HamiltonianKind.MASSIVE6
    elif couplings is not None:
        kind = HamiltonianKind.REFINED
    else:
        raise ConfigError("spectrum needs --kitaev, --couplings or --masses")

    operators = OperatorService(group, lattice_service.build_torus(config.rows, config.cols))
    service = HamiltonianService(operators)
    spec = HamiltonianSpec(
        kind=kind,
        lattice=operators.lattice,
        group=group,
        couplings=couplings,
        masses=masses,
        kitaev_form=KitaevForm(args.form),
        site=args.site,
    )
    hamiltonian = service.build(spec)
    if args.dump:
        Path(args.dump).write_text(hamiltonian.to_coo_text())
        logger.info("Wrote %s", args.dump)

    mode = SpectrumMode(args.mode)
    tagged = args.site is not None and (
        mode == SpectrumMode.LOWK or hamiltonian.dim <= settings.FULL_DIAG_MAX_DIM and mode != SpectrumMode.BLOCK
    )
    projectors = service.sector_projectors(args.site) if tagged else None
    report = spectrum(hamiltonian, mode=mode, k=args.k, sector_projectors=projectors)
    if config.format != "text":
        _emit(report.to_dict())
        return EXIT_OK
    print(f"dimension {report.dimension} ({report.mode.value})")
    for level in report.levels:
        tags = f"  [{', '.join(level.sectors)}]" if level.sectors else ""
        print(f"  {level.energy:>12.6g}  x{level.multiplicity}{tags}")
    return EXIT_OK


def cmd_diagram(args: argparse.Namespace) -> int:
    config = _config(args)
    diagram = sector_service.diagram_export(config.load_group(), config.load_couplings())
    if config.format == "json":
        _emit(diagram.to_dict())
    elif config.format == "dot":
        sys.stdout.write(sector_service.render_dot(diagram))
    else:
        sys.stdout.write(sector_service.render_text(diagram))
    return EXIT_OK


def cmd_lattice(args: argparse.Namespace) -> int:
    config = _config(args)
    group = config.load_group()
    lattice = lattice_service.build_torus(config.rows, config.cols)
    data = lattice.to_dict()
    data["site_hilbert_share"] = lattice_service.site_hilbert_share(lattice, group.order)
    _emit(data)
    return EXIT_OK


# Parser


def _group_options(parser: argparse.ArgumentParser, formats: List[str]) -> None:
    parser.add_argument("--builtin", help="built-in group: trivial, s3, q8, z<n>, d<n>, s<n>")
    parser.add_argument("--file", type=Path, help="group JSON file (cayley or generators)")
    parser.add_argument("--tolerance", type=float, default=None, help="override QD_TOLERANCE")
    parser.add_argument("--format", choices=formats, default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qd", description="Quantum double models D(G)")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", help="classes, normalizers and character table")
    _group_options(p, ["json", "text"])
    p.set_defaults(handler=cmd_group)

    p = sub.add_parser("anyons", help="anyon table")
    _group_options(p, ["json", "text"])
    p.set_defaults(handler=cmd_anyons)

    p = sub.add_parser("verify", help="run the verification checks")
    _group_options(p, ["json", "text"])
    p.add_argument("--check", action="append", choices=sorted(CHECKS), help="run only this check (repeatable)")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("spectrum", help="spectrum of a Hamiltonian")
    _group_options(p, ["json", "text"])
    region = p.add_mutually_exclusive_group()
    region.add_argument("--torus", default="2x2", help="RxC torus, default 2x2")
    region.add_argument("--site", type=int, nargs="?", const=0, default=None, help="restrict to one site")
    p.add_argument("--kitaev", action="store_true", help="Kitaev Hamiltonian")
    p.add_argument("--form", choices=[f.value for f in KitaevForm], default=KitaevForm.STABILIZER.value)
    p.add_argument("--couplings", type=Path, help="refined Hamiltonian couplings JSON")
    p.add_argument("--masses", type=Path, help="anyon masses JSON for the 6-local Hamiltonian")
    p.add_argument("--mode", choices=[m.value for m in SpectrumMode], default=SpectrumMode.AUTO.value)
    p.add_argument("--k", type=int, default=None, help="number of eigenvalues in lowk mode")
    p.add_argument("--dump", type=Path, help="write the Hamiltonian in coordinate-list text form")
    p.set_defaults(handler=cmd_spectrum)

    p = sub.add_parser("diagram", help="anyon splitting diagram")
    _group_options(p, ["json", "text", "dot"])
    p.add_argument("--couplings", type=Path)
    p.set_defaults(handler=cmd_diagram)

    p = sub.add_parser("lattice", help="torus edges and site numbering")
    _group_options(p, ["json"])
    p.add_argument("--torus", default="2x2")
    p.set_defaults(handler=cmd_lattice)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    level = "DEBUG" if args.verbose > 1 else "INFO" if args.verbose else settings.LOG_LEVEL
    configure_logging(level)
    try:
        return args.handler(args)
    except QuantumDoubleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
