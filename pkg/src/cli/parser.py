"""
Argument Parser
Command-line layout shared by every subcommand
"""
import argparse
from pathlib import Path

from src.algebra.bracket_diagrams import Variant
from src.algebra.free_superalgebra import ParityMode
from src.algebra.operad_hochschild import OperadKind
from src.cli.commands import register_commands
from src.cli.verification import SUITES


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', dest='output_format', choices=['json', 'csv', 'text'], default='text',
                        help='output format (default: text)')
    common.add_argument('--output', type=Path, help='write the result to this file instead of stdout')
    common.add_argument('--time-budget', type=float, help='seconds before construction stops and flags a partial result')
    common.add_argument('--workers', type=int, help='parallel per-bidegree jobs')
    common.add_argument('--coefficients', choices=['integers', 'rationals', 'mod-p'], default='integers')
    common.add_argument('--prime', type=int, help='characteristic for mod-p coefficients')
    return common


def _diagram_options() -> argparse.ArgumentParser:
    diagram = argparse.ArgumentParser(add_help=False)
    diagram.add_argument('--variant', choices=[v.value for v in Variant], default=Variant.B.value)
    diagram.add_argument('--parity', choices=[m.value for m in ParityMode], default=ParityMode.EVEN.value)
    return diagram


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='app.py',
        description='Bracket diagram complexes: enumeration, differentials, homology and verification',
    )
    parser.add_argument('--log-level', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                        help='logging level (default from LOG_LEVEL)')
    subparsers = parser.add_subparsers(dest='command', required=True)
    common, diagram = _common_options(), _diagram_options()

    enumerate_parser = subparsers.add_parser('enumerate', parents=[common, diagram],
                                             help='list the basis diagrams of a bidegree')
    enumerate_parser.add_argument('--i', type=int, required=True, help='complexity')
    enumerate_parser.add_argument('--j', type=int, required=True, help='number of points')
    enumerate_parser.add_argument('--basis', dest='source_basis', type=Path,
                                  help='list the elements of a basis file instead')

    diff_parser = subparsers.add_parser('diff', parents=[common, diagram], help='apply the differential to an element')
    diff_parser.add_argument('element', help='linear combination of diagrams, e.g. "[1,3]^[2,4]"')
    diff_parser.add_argument('--differential', choices=['full', 'bar'], default='full')

    matrix_parser = subparsers.add_parser('matrix', parents=[common, diagram],
                                          help='boundary matrix from (i,j) to (i,j+1)')
    matrix_parser.add_argument('--i', type=int, required=True)
    matrix_parser.add_argument('--j', type=int, required=True)
    matrix_parser.add_argument('--source-basis', type=Path, help='basis file for (i,j)')
    matrix_parser.add_argument('--target-basis', type=Path, help='basis file for (i,j+1)')
    matrix_parser.add_argument('--differential', choices=['full', 'bar'], default='full')

    homology_parser = subparsers.add_parser('homology', parents=[common, diagram], help='homology table')
    homology_parser.add_argument('--i-max', type=int)
    homology_parser.add_argument('--j-max', type=int)
    homology_parser.add_argument('--i', type=int, help='single bidegree: complexity')
    homology_parser.add_argument('--j', type=int, help='single bidegree: number of points')
    homology_parser.add_argument('--differential', choices=['full', 'bar'], default='full')

    verify_parser = subparsers.add_parser('verify', parents=[common], help='run verification suites')
    verify_parser.add_argument('--suite', choices=list(SUITES) + ['all'], default='all')
    verify_parser.add_argument('--bound', type=int, help='complexity (arity for the operad suite) to check up to')

    projection_parser = subparsers.add_parser('primitive-projection', parents=[common, diagram],
                                              help='primitive part of an element')
    projection_parser.add_argument('element')
    projection_parser.set_defaults(coefficients='rationals')

    antipode_parser = subparsers.add_parser('antipode', parents=[common, diagram], help='antipode of an element')
    antipode_parser.add_argument('element')

    chord_parser = subparsers.add_parser('chord', parents=[common], help='chord diagram bialgebra dimensions')
    chord_parser.add_argument('--parity', choices=[m.value for m in ParityMode], default=ParityMode.ODD.value)
    chord_parser.add_argument('--one-term', action='store_true', help='also divide by the one-term relation')
    chord_parser.add_argument('--i-max', type=int)
    chord_parser.set_defaults(coefficients='rationals')

    operad_parser = subparsers.add_parser('operad-homology', parents=[common],
                                          help='Hochschild homology of a diagram operad')
    operad_parser.add_argument('--kind', choices=[k.value for k in OperadKind], default=OperadKind.POISSON.value)
    operad_parser.add_argument('--arity-max', type=int, default=3)

    register_commands(subparsers)
    return parser
