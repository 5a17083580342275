"""
Utility Functions
Helper functions for formatting results and reading basis files
"""
from pathlib import Path
from typing import Any, Dict, List, Sequence, Union

import numpy as np
import pandas as pd

from src.algebra.bracket_diagrams import Diagram, element_bidegree
from src.algebra.free_superalgebra import Element, ParityMode, format_element, parse_element
from src.utils.exceptions import ParseError


def format_group(rank: int, torsion: Sequence[int]) -> str:
    """Format Z^r + Z/t1 + ... the way homology tables print it"""
    parts = []
    if rank:
        parts.append("Z" if rank == 1 else f"Z^{rank}")
    parts.extend(f"Z/{t}" for t in torsion)
    return " + ".join(parts) if parts else "0"


def format_coefficient(value: Any) -> str:
    """Integers stay integers, fractions print as p/q"""
    if hasattr(value, "denominator") and value.denominator == 1:
        return str(value.numerator)
    return str(value)


def read_basis_file(path: Union[str, Path], mode: ParityMode) -> List[Element]:
    """One element per line; blank lines and lines starting with # are skipped"""
    path = Path(path)
    elements = []
    for number, line in enumerate(path.read_text().splitlines(), start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        try:
            elements.append(parse_element(text, mode))
        except ParseError as exc:
            raise ParseError(f"{path.name}:{number}: {exc}") from exc
    return elements


def diagram_records(diagrams: Sequence[Diagram]) -> List[Dict[str, Any]]:
    """Listing rows for enumerated diagrams"""
    records = []
    for index, d in enumerate(diagrams, start=1):
        i, j = d.bidegree
        records.append({
            'index': index,
            'diagram': str(d),
            'i': i,
            'j': j,
            'weight_parity': d.weight_parity,
            'components': len(d.configuration.minimal_components),
        })
    return records


def element_record(element: Element) -> Dict[str, Any]:
    """Summary row of a parsed or computed element"""
    bidegree = element_bidegree(element)
    return {
        'element': format_element(element),
        'terms': len(element),
        'i': bidegree[0] if bidegree else None,
        'j': bidegree[1] if bidegree else None,
    }


def matrix_frame(matrix: np.ndarray, rows: Sequence[str], columns: Sequence[str]) -> pd.DataFrame:
    """Boundary matrix as a labelled DataFrame; rows index the target basis"""
    return pd.DataFrame([[int(x) for x in row] for row in np.asarray(matrix, dtype=object).tolist()],
                        index=list(rows), columns=list(columns))
