#!/usr/bin/env python3
"""
ample - homology of finite ample groupoids from the command line

    ample homology GROUPOID.json [--coefficients MODULE.json] [--max-degree N]
    ample induced-map INPUT.json [--correspondence NAME | --from-homomorphism NAME | --from-action NAME]
    ample induced-map --omega-s SEMIGROUP.json
    ample verify [--suite NAME ...] [--seed N] [--size-bound N] [--replay FILE]
    ample corpus

Exit codes: 0 ok, 1 validation failure, 2 parse failure, 3 internal invariant breach.
"""

from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union
import argparse
import asyncio
import json
import logging
import sys

from rich.console import Console
from rich.markup import escape
from rich.table import Table

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from algebra.correspondence import (  # noqa: E402
    EtaleCorrespondence,
    ExplicitCorrespondence,
    from_action,
    from_homomorphism,
    homology_maps,
)
from algebra.exceptions import (  # noqa: E402
    AdjunctionError,
    AmpleError,
    LiftError,
    MalformedComplexError,
    NotACycleMapError,
    ValidationError,
)
from algebra.homology import homology  # noqa: E402
from algebra.intalg import SubquotientMap  # noqa: E402
from algebra.invsemi import omega_S  # noqa: E402
from core.corpus import RecipeError, load_corpus  # noqa: E402
from core.logging_config import configure_logging  # noqa: E402
from core.settings import SUITE_NAMES, Settings, load_settings  # noqa: E402
from core.verifier import Verifier  # noqa: E402
from core.workspace import KINDS, SchemaError, Workspace, read_json  # noqa: E402

logger = logging.getLogger("ample.cli")

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_PARSE = 2
EXIT_INTERNAL = 3

INTERNAL_ERRORS = (LiftError, MalformedComplexError, NotACycleMapError, AdjunctionError)


def emit(console: Console, text: str) -> None:
    console.print(text, markup=False, highlight=False)


def emit_json(console: Console, payload: Any) -> None:
    emit(console, json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False))


# ==================== HOMOLOGY ====================


def cmd_homology(args: argparse.Namespace, settings: Settings, console: Console) -> int:
    workspace = Workspace()
    G = workspace.load_file(Path(args.input), 'groupoids')
    M = workspace.load_file(Path(args.coefficients), 'modules') if args.coefficients else None
    if M is not None and M.groupoid != G:
        raise SchemaError(f"module is over groupoid {M.groupoid.name!r}, not the input groupoid", source=args.coefficients)

    groups = homology(G, M, max_degree=settings.max_degree)
    if settings.output_format == "json":
        emit_json(console, {
            'groupoid': G.name,
            'coefficients': M.name if M is not None else "Z",
            'max_degree': settings.max_degree,
            'homology': [
                {'degree': n, 'group': str(group), **group.to_dict()} for n, group in enumerate(groups)
            ],
        })
    else:
        emit(console, "; ".join(f"H{n}: {group}" for n, group in enumerate(groups)))
    return EXIT_OK


# ==================== INDUCED MAPS ====================


def _load_induced_input(path: Path, groupoid_files: Sequence[str]) -> Workspace:
    """A bundle file, or a single correspondence document after its groupoid files"""
    workspace = Workspace()
    for groupoid_file in groupoid_files:
        workspace.load_file(Path(groupoid_file), 'groupoids')
    document = read_json(path)
    if isinstance(document, dict) and set(document) <= set(KINDS):
        workspace.load_bundle(document, str(path))
    else:
        workspace.load_file(path, 'correspondences')
    return workspace


def _only(registry: Dict[str, Any], kind: str, name: Optional[str]) -> Any:
    if name is not None:
        if name not in registry:
            raise SchemaError(f"no {kind} named {name!r}")
        return registry[name]
    if len(registry) != 1:
        raise SchemaError(f"input holds {len(registry)} {kind}s; select one by name")
    return next(iter(registry.values()))


def resolve_induced_map(args: argparse.Namespace) -> Union[ExplicitCorrespondence, EtaleCorrespondence]:
    if args.omega_s:
        workspace = Workspace()
        return omega_S(workspace.load_file(Path(args.omega_s), 'semigroups'))
    if not args.input:
        raise SchemaError("induced-map needs an input file or --omega-s")
    workspace = _load_induced_input(Path(args.input), args.groupoid or [])
    if args.from_homomorphism:
        return from_homomorphism(_only(workspace.homomorphisms, "homomorphism", args.from_homomorphism))
    if args.from_action:
        return from_action(_only(workspace.gsets, "G-set", args.from_action))
    return _only(workspace.correspondences, "correspondence", args.correspondence)


def induced_maps(target, max_degree: int) -> List[SubquotientMap]:
    if isinstance(target, ExplicitCorrespondence):
        return homology_maps(target.correspondence, max_degree, lift=target.lift)
    return homology_maps(target, max_degree)


def cmd_induced_map(args: argparse.Namespace, settings: Settings, console: Console) -> int:
    target = resolve_induced_map(args)
    maps = induced_maps(target, settings.max_degree)
    degrees = range(args.min_degree, settings.max_degree + 1)
    if settings.output_format == "json":
        emit_json(console, [dict(maps[n].to_dict(), degree=n) for n in degrees])
        return EXIT_OK
    for n in degrees:
        f = maps[n]
        emit(console, f"H{n}: {f.source.presentation} -> {f.target.presentation}")
        for row in f.matrix.to_dense():
            emit(console, "  [" + " ".join(str(v) for v in row) + "]")
    return EXIT_OK


# ==================== VERIFY ====================


def cmd_verify(args: argparse.Namespace, settings: Settings, console: Console) -> int:
    verifier = Verifier(settings)
    if args.replay:
        result = verifier.replay(Path(args.replay))
        if settings.output_format == "json":
            emit_json(console, result)
        else:
            status = "passed" if result['passed'] else "FAILED"
            emit(console, f"{result['check']}: {status}")
        return EXIT_OK if result['passed'] else EXIT_VALIDATION

    reports = asyncio.run(verifier.run(args.suite or ['all']))
    if settings.output_format == "json":
        emit_json(console, [report.to_dict() for report in reports])
    else:
        table = Table(title=f"Verification (seed {settings.seed})")
        table.add_column("Suite")
        table.add_column("Checked", justify="right")
        table.add_column("Status")
        table.add_column("Counterexamples")
        for report in reports:
            status = "[green]pass[/]" if report.passed else f"[red]{len(report.failures)} failed[/]"
            table.add_row(report.suite, str(report.checked), status, "\n".join(report.counterexamples))
        console.print(table)
    return EXIT_OK if all(report.passed for report in reports) else EXIT_VALIDATION


# ==================== CORPUS ====================


def cmd_corpus(args: argparse.Namespace, settings: Settings, console: Console) -> int:
    corpus = load_corpus(settings.resolve(settings.corpus_path))
    if settings.output_format == "json":
        emit_json(console, [
            {'name': e.name, 'kind': e.kind, 'family': e.recipe.get('family'), 'expected': list(e.expected)}
            for e in corpus.entries
        ])
        return EXIT_OK
    table = Table(title="Corpus")
    table.add_column("Name")
    table.add_column("Kind")
    table.add_column("Family")
    table.add_column("Expected homology")
    for entry in corpus.entries:
        table.add_row(entry.name, entry.kind, str(entry.recipe.get('family')), ", ".join(entry.expected))
    console.print(table)
    return EXIT_OK


# ==================== ENTRY POINT ====================


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ample", description="Homology of finite ample groupoids")
    parser.add_argument('--log-level', help='Override the configured log level')
    parser.add_argument('--log-format', choices=['text', 'json'], help='Text lines or JSON records on stderr')
    sub = parser.add_subparsers(dest='command', required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--max-degree', type=int, help='Highest homological degree (default 4)')
    common.add_argument('--format', choices=['table', 'json'], dest='output_format', help='Output format')

    p = sub.add_parser('homology', parents=[common], help='H_0..H_N of a groupoid')
    p.add_argument('input', help='Groupoid JSON file')
    p.add_argument('--coefficients', help='Module JSON file over the same groupoid')
    p.set_defaults(handler=cmd_homology)

    p = sub.add_parser('induced-map', parents=[common], help='Maps on homology induced by a correspondence')
    p.add_argument('input', nargs='?', help='Bundle JSON, or a correspondence JSON with --groupoid files')
    p.add_argument('--groupoid', action='append', help='Groupoid JSON referenced by the correspondence')
    p.add_argument('--min-degree', type=int, default=0, help='Lowest degree reported')
    source = p.add_mutually_exclusive_group()
    source.add_argument('--correspondence', help='Correspondence name inside the input')
    source.add_argument('--from-homomorphism', help='Homomorphism name inside the input')
    source.add_argument('--from-action', help='Left G-set name inside the input')
    source.add_argument(
        '--omega-s',
        help='Inverse semigroup JSON file; an absorbing element is taken as the zero unless the document sets "zero": null',
    )
    p.set_defaults(handler=cmd_induced_map)

    p = sub.add_parser('verify', parents=[common], help='Run the verification suites')
    p.add_argument('--suite', action='append', choices=SUITE_NAMES + ['all'], help='Suite to run (repeatable)')
    p.add_argument('--seed', type=int, help='Randomization seed (default 0)')
    p.add_argument('--size-bound', type=int, help='Maximum arrow count of random groupoids (default 24)')
    p.add_argument('--replay', help='Counterexample JSON to re-run')
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser('corpus', parents=[common], help='List the named corpus instances')
    p.set_defaults(handler=cmd_corpus)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    console = Console(highlight=False, soft_wrap=True)
    err_console = Console(stderr=True)

    try:
        settings = load_settings(
            max_degree=args.max_degree,
            output_format=args.output_format,
            seed=getattr(args, 'seed', None),
            size_bound=getattr(args, 'size_bound', None),
            log_level=args.log_level,
            log_format=args.log_format,
        )
    except (ValueError, FileNotFoundError) as e:
        err_console.print(f"[bold red]Configuration error:[/] {escape(str(e))}")
        return EXIT_PARSE
    configure_logging(settings.log_level, settings.log_format)

    try:
        return args.handler(args, settings, console)
    except (SchemaError, RecipeError) as e:
        err_console.print(f"[bold red]Parse error:[/] {escape(str(e))}")
        return EXIT_PARSE
    except INTERNAL_ERRORS as e:
        logger.error(f"Invariant breach: {e}")
        err_console.print(f"[bold red]Internal invariant breach:[/] {escape(str(e))}")
        return EXIT_INTERNAL
    except (ValidationError, AmpleError, ValueError) as e:
        err_console.print(f"[bold red]Validation failed:[/] {escape(str(e))}")
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
