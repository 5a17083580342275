"""
Command Handlers
One handler per subcommand; handlers validate a RunConfig, compute, and
print the rendered result
"""
import logging
import sys
from typing import Dict, List, Optional

from src.algebra.bracket_diagrams import (
    Variant,
    b0_reduce,
    enumerate_basis,
    enumerate_diagrams,
)
from src.algebra.free_superalgebra import Element, format_element, format_monomial, parse_element
from src.algebra.hopf_structure import antipode, is_primitive, primitive_projection
from src.algebra.operad_hochschild import require_kind
from src.cli.verification import SUITES, run_suite
from src.config import APP_CONFIG, RunConfig
from src.homology.homology_engine import (
    boundary_matrix,
    chord_bialgebra,
    complex_differential,
    default_top,
    homology,
    homology_records,
    operad_homology,
)
from src.utils.complex_builder import ComplexBuilder
from src.utils.export_utils import HomologyExporter
from src.utils.utils import diagram_records, element_record, matrix_frame, read_basis_file

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG_ERROR = 2

HOMOLOGY_COLUMNS = ["variant", "parity", "i", "j", "dimension", "rank", "torsion", "truncated"]


def run_config(args, **overrides) -> RunConfig:
    """Validate the parsed arguments; unset options fall back to the environment defaults"""
    values = {k: v for k, v in vars(args).items() if k in RunConfig.model_fields and v is not None}
    values.update(overrides)
    return RunConfig(**values)


def emit(text: str, cfg: RunConfig, config=APP_CONFIG) -> None:
    """Print the rendered result, or write it when an output path is configured"""
    if cfg.output is None:
        sys.stdout.write(text)
        return
    HomologyExporter(config.OUTPUT_DIR).export(text, cfg.output)


def _render(records: List[Dict], cfg: RunConfig, columns: Optional[List[str]] = None) -> str:
    return HomologyExporter().render(records, cfg.output_format, columns)


def _parse(text: str, cfg: RunConfig) -> Element:
    element = parse_element(text, cfg.parity)
    return b0_reduce(element) if cfg.variant is Variant.B0 else element


def _builder(cfg: RunConfig, config) -> ComplexBuilder:
    return ComplexBuilder.from_config(config, cfg.workers, cfg.time_budget)


def cmd_enumerate(args, config=APP_CONFIG) -> int:
    """List the basis of (i,j), or the elements of a basis file"""
    cfg = run_config(args)
    if cfg.source_basis is not None:
        elements = read_basis_file(cfg.source_basis, cfg.parity)
        records = [dict(index=k, **element_record(e)) for k, e in enumerate(elements, start=1)]
    else:
        records = diagram_records(enumerate_diagrams(cfg.variant, cfg.parity, cfg.i, cfg.j))
    logger.info("Listed %d diagrams", len(records))
    emit(_render(records, cfg), cfg, config)
    return EXIT_OK


def cmd_diff(args, config=APP_CONFIG) -> int:
    cfg = run_config(args)
    element = _parse(args.element, cfg)
    image = complex_differential(cfg.variant, cfg.differential)(element)
    records = [dict(role='input', **element_record(element)), dict(role='image', **element_record(image))]
    emit(_render(records, cfg), cfg, config)
    return EXIT_OK


def cmd_matrix(args, config=APP_CONFIG) -> int:
    """Boundary matrix, optionally in override bases read from files"""
    cfg = run_config(args)
    source = read_basis_file(cfg.source_basis, cfg.parity) if cfg.source_basis else None
    target = read_basis_file(cfg.target_basis, cfg.parity) if cfg.target_basis else None
    matrix = boundary_matrix(cfg.variant, cfg.parity, cfg.i, cfg.j, cfg.differential, source, target)

    def labels(override, j):
        if override is not None:
            return [format_element(e) for e in override]
        return [format_monomial(m, cfg.parity) for m in enumerate_basis(cfg.variant, cfg.parity, cfg.i, j)]

    frame = matrix_frame(matrix, labels(target, cfg.j + 1), labels(source, cfg.j))
    emit(HomologyExporter().render_frame(frame, cfg.output_format), cfg, config)
    return EXIT_OK


def cmd_homology(args, config=APP_CONFIG) -> int:
    """Homology table; a time budget may cut it short, which the rows record"""
    cfg = run_config(args)
    builder = _builder(cfg, config)
    try:
        if cfg.i is not None and cfg.j is not None:
            top = max(default_top(cfg.variant, cfg.i), cfg.j)
            cx = builder.build(cfg.variant, cfg.parity, cfg.i, top, cfg.differential)
            group = homology(cx, cfg.i, cfg.j, cfg.coefficients, cfg.prime)
            records = [{"variant": cfg.variant.value, "parity": cfg.parity.value, "i": cfg.i, "j": cfg.j,
                        "dimension": cx.dimension(cfg.i, cfg.j), "rank": group.rank, "torsion": group.torsion}]
        else:
            cx = builder.build(cfg.variant, cfg.parity, cfg.i_max, cfg.j_max, cfg.differential)
            records = homology_records(cx, cfg.coefficients, cfg.prime)
    finally:
        builder.close()
    for record in records:
        record["truncated"] = cx.truncated
    emit(_render(records, cfg, HOMOLOGY_COLUMNS), cfg, config)
    return EXIT_OK


def cmd_verify(args, config=APP_CONFIG) -> int:
    """Run one suite or all of them; exit code 1 when any check fails"""
    cfg = run_config(args)
    names = SUITES if args.suite == 'all' else (args.suite,)
    records, passed = [], True
    builder = _builder(cfg, config)
    try:
        for name in names:
            report = run_suite(name, args.bound, builder)
            records.extend(report.records())
            passed = passed and report.passed
            logger.info("Suite %s: %s", name, "passed" if report.passed else "FAILED")
    finally:
        builder.close()
    emit(_render(records, cfg), cfg, config)
    return EXIT_OK if passed else EXIT_VERIFY_FAILED


def cmd_primitive_projection(args, config=APP_CONFIG) -> int:
    cfg = run_config(args, needs_rationals=True)
    element = _parse(args.element, cfg)
    projected = primitive_projection(element, cfg.variant, cfg.coefficients)
    records = [dict(role='input', **element_record(element)),
               dict(role='primitive', primitive=is_primitive(projected, cfg.variant), **element_record(projected))]
    emit(_render(records, cfg), cfg, config)
    return EXIT_OK


def cmd_antipode(args, config=APP_CONFIG) -> int:
    cfg = run_config(args)
    element = _parse(args.element, cfg)
    records = [dict(role='input', **element_record(element)),
               dict(role='antipode', **element_record(antipode(element, cfg.variant)))]
    emit(_render(records, cfg), cfg, config)
    return EXIT_OK


def cmd_chord(args, config=APP_CONFIG) -> int:
    """Dimensions of chord diagrams and of their primitive part per degree"""
    cfg = run_config(args, needs_rationals=True)
    report = chord_bialgebra(cfg.parity, args.one_term, cfg.i_max, cfg.coefficients)
    emit(_render(report.as_records(), cfg), cfg, config)
    return EXIT_OK


def cmd_operad_homology(args, config=APP_CONFIG) -> int:
    cfg = run_config(args)
    kind = require_kind(args.kind)
    records = operad_homology(kind, args.arity_max, cfg.coefficients, cfg.prime)
    emit(_render(records, cfg), cfg, config)
    return EXIT_OK


HANDLERS = {
    'enumerate': cmd_enumerate,
    'diff': cmd_diff,
    'matrix': cmd_matrix,
    'homology': cmd_homology,
    'verify': cmd_verify,
    'primitive-projection': cmd_primitive_projection,
    'antipode': cmd_antipode,
    'chord': cmd_chord,
    'operad-homology': cmd_operad_homology,
}


def register_commands(subparsers) -> None:
    """Attach a handler to every subcommand already declared on the parser"""
    for name, subparser in subparsers.choices.items():
        subparser.set_defaults(handler=HANDLERS[name])
