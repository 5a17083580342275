"""
Homology Engine
Bigraded diagram complexes, their homology over Z, Q and GF(p), chord
diagram bialgebras and comparisons between complexes
"""
import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import Matrix

from src.algebra.bracket_diagrams import (
    Variant,
    b0_reduce,
    diff,
    diff_bar,
    enumerate_basis,
    point_count,
)
from src.algebra.free_superalgebra import Element, Generator, Monomial, ParityMode, permute_points
from src.algebra.hopf_structure import connected_components, primitive_projection
from src.algebra.hopf_structure import product as hopf_product
from src.algebra.operad_hochschild import OperadElement, OperadInstance, OperadKind
from src.homology.smith import invariant_factors, kernel_basis, rank
from src.utils.exceptions import BasisMismatchError, BidegreeError, CoefficientError
from src.utils.utils import format_group

logger = logging.getLogger(__name__)

Bidegree = Tuple[int, int]
Vector = List[object]


@dataclass
class HomologyGroup:
    """Finitely generated abelian group Z^rank + sum of Z/t"""
    rank: int
    torsion: List[int] = field(default_factory=list)

    def __str__(self) -> str:
        return format_group(self.rank, self.torsion)


@dataclass
class BigradedComplex:
    """Ordered bases and integer matrices of the differential (i,j) -> (i,j+1)"""
    variant: Variant
    mode: ParityMode
    differential: str
    bases: Dict[Bidegree, List[Monomial]] = field(default_factory=dict)
    matrices: Dict[Bidegree, np.ndarray] = field(default_factory=dict)
    top: Dict[int, int] = field(default_factory=dict)
    truncated: bool = False

    def dimension(self, i: int, j: int) -> int:
        return len(self.bases.get((i, j), []))

    def matrix(self, i: int, j: int) -> np.ndarray:
        if (i, j) not in self.matrices:
            raise BidegreeError(f"Bidegree ({i},{j}) was not built")
        return self.matrices[(i, j)]

    def incoming(self, i: int, j: int) -> np.ndarray:
        if j == 0:
            return np.zeros((self.dimension(i, 0), 0), dtype=object)
        return self.matrix(i, j - 1)

    def bidegrees(self) -> List[Bidegree]:
        """Bidegrees whose homology the complex determines"""
        return sorted((i, j) for (i, j) in self.matrices if j <= self.top.get(i, -1))

    def is_square_zero(self) -> bool:
        for (i, j), m in self.matrices.items():
            nxt = self.matrices.get((i, j + 1))
            if nxt is None or not m.size or not nxt.size:
                continue
            if np.any(np.dot(nxt, m) != 0):
                return False
        return True


def default_top(variant: Variant, i: int) -> int:
    """Largest j with nonzero homology to report; singletons add one point"""
    return 2 * i + (1 if Variant(variant).generalized else 0)


def complex_differential(variant: Variant, differential: str = "full") -> Callable[[Element], Element]:
    variant = Variant(variant)
    if differential == "bar":
        return lambda e: diff_bar(e, variant)
    return lambda e: diff(e, variant)


def _prepare(element: Element, variant: Variant) -> Element:
    return b0_reduce(element) if variant is Variant.B0 else element


def coordinates(element: Element, basis: Sequence[Monomial]) -> Vector:
    index = {m: k for k, m in enumerate(basis)}
    vector: Vector = [0] * len(basis)
    for mono, coeff in element.terms.items():
        if mono not in index:
            raise BasisMismatchError(f"Monomial {mono} is outside the basis")
        vector[index[mono]] += coeff
    return vector


def _basis_change(elements: Sequence[Element], basis: Sequence[Monomial], variant: Variant) -> Matrix:
    if len(elements) != len(basis):
        raise BasisMismatchError(f"Override lists {len(elements)} elements for a space of dimension {len(basis)}")
    columns = [coordinates(_prepare(e, variant), basis) for e in elements]
    change = Matrix(len(basis), len(basis), lambda r, c: columns[c][r]) if basis else Matrix(0, 0, [])
    if basis and change.det() == 0:
        raise BasisMismatchError("Override elements are linearly dependent")
    return change


def boundary_matrix(variant: Variant, mode: ParityMode, i: int, j: int, differential: str = "full",
                    source: Optional[Sequence[Element]] = None,
                    target: Optional[Sequence[Element]] = None) -> np.ndarray:
    """Matrix of the differential (i,j) -> (i,j+1); column k is the image of the k-th basis element.

    With override bases the matrix is expressed in them; it must stay integral.
    """
    variant, mode = Variant(variant), ParityMode(mode)
    src = enumerate_basis(variant, mode, i, j)
    dst = enumerate_basis(variant, mode, i, j + 1)
    d = complex_differential(variant, differential)
    columns = [coordinates(d(Element.from_monomial(m, mode)), dst) for m in src]
    matrix = np.array([[columns[c][r] for c in range(len(src))] for r in range(len(dst))],
                      dtype=object).reshape(len(dst), len(src))
    if source is None and target is None:
        return matrix
    left = _basis_change(target, dst, variant) if target is not None else Matrix.eye(len(dst))
    right = _basis_change(source, src, variant) if source is not None else Matrix.eye(len(src))
    if not len(dst) or not len(src):
        return matrix
    changed = left.inv() * Matrix(matrix.tolist()) * right
    if any(not x.is_integer for x in changed):
        raise CoefficientError("Matrix in the override bases is not integral")
    return np.array([[int(x) for x in changed.row(r)] for r in range(changed.rows)], dtype=object)


def build_complex(variant: Variant, mode: ParityMode, i_max: int, j_max: Optional[int] = None,
                  differential: str = "full", time_budget: float = 0.0,
                  i_min: int = 0) -> BigradedComplex:
    """Bases for j up to top+1 and matrices for j up to top, per complexity"""
    variant, mode = Variant(variant), ParityMode(mode)
    cx = BigradedComplex(variant, mode, differential)
    started = time.monotonic()
    for i in range(i_min, i_max + 1):
        top = default_top(variant, i) if j_max is None else j_max
        for j in range(top + 2):
            cx.bases[(i, j)] = enumerate_basis(variant, mode, i, j)
        for j in range(top + 1):
            if time_budget and time.monotonic() - started > time_budget:
                logger.warning("Time budget of %.1fs exhausted at (%d,%d)", time_budget, i, j)
                cx.truncated = True
                return cx
            cx.matrices[(i, j)] = boundary_matrix(variant, mode, i, j, differential)
            logger.info("Building %s %s complex at (%d,%d): %d diagrams",
                        variant.value, mode.value, i, j, cx.dimension(i, j))
        cx.top[i] = top
    return cx


def homology(cx: BigradedComplex, i: int, j: int, coefficients: str = "integers",
             prime: Optional[int] = None) -> HomologyGroup:
    """Kernel modulo image at (i,j), with exact torsion over Z"""
    outgoing = cx.matrix(i, j)
    incoming = cx.incoming(i, j)
    n = cx.dimension(i, j)
    if coefficients == "integers":
        factors = invariant_factors(incoming)
        return HomologyGroup(n - rank(outgoing) - len(factors), [f for f in factors if f > 1])
    return HomologyGroup(n - rank(outgoing, coefficients, prime) - rank(incoming, coefficients, prime))


def homology_records(cx: BigradedComplex, coefficients: str = "integers",
                     prime: Optional[int] = None) -> List[Dict]:
    records = []
    for i, j in cx.bidegrees():
        group = homology(cx, i, j, coefficients, prime)
        records.append({"variant": cx.variant.value, "parity": cx.mode.value, "i": i, "j": j,
                        "dimension": cx.dimension(i, j), "rank": group.rank, "torsion": group.torsion})
    return records


def euler_characteristic(cx: BigradedComplex, i: int) -> Tuple[int, int]:
    """(chain alternating sum, homology alternating sum) over the reported range"""
    top = cx.top[i]
    chain = sum((-1) ** j * cx.dimension(i, j) for j in range(top + 1))
    homologies = sum((-1) ** j * homology(cx, i, j, "rationals").rank for j in range(top + 1))
    return chain, homologies


# ---------------------------------------------------------------------------
# Rational cycles and boundaries
# ---------------------------------------------------------------------------

def _integral(vector: Sequence) -> List[int]:
    denominators = [Fraction(x).denominator for x in vector]
    scale = lcm(*denominators) if denominators else 1
    return [int(Fraction(x) * scale) for x in vector]


def _span_rank(vectors: Sequence[Sequence], length: int) -> int:
    rows = [_integral(v) for v in vectors if any(v)]
    if not rows or not length:
        return 0
    return rank(rows)


def boundary_vectors(cx: BigradedComplex, i: int, j: int) -> List[Vector]:
    incoming = cx.incoming(i, j)
    return [list(incoming[:, c]) for c in range(incoming.shape[1])]


def cycle_elements(cx: BigradedComplex, i: int, j: int) -> List[Element]:
    """Basis of rational cycles at (i,j) as elements"""
    basis = cx.bases[(i, j)]
    vectors = kernel_basis(cx.matrix(i, j), len(basis))
    out = []
    for v in vectors:
        terms = {m: Fraction(str(x)) for m, x in zip(basis, v) if x != 0}
        out.append(Element(terms, cx.mode))
    return out


def class_rank(cx: BigradedComplex, i: int, j: int, elements: Sequence[Element]) -> int:
    """Rank of the span of cycles modulo boundaries, over Q"""
    basis = cx.bases[(i, j)]
    bounds = boundary_vectors(cx, i, j)
    vectors = [coordinates(_prepare(e, cx.variant), basis) for e in elements]
    return _span_rank(bounds + vectors, len(basis)) - _span_rank(bounds, len(basis))


def is_boundary(cx: BigradedComplex, i: int, j: int, element: Element) -> bool:
    return class_rank(cx, i, j, [element]) == 0


# ---------------------------------------------------------------------------
# Chord diagram bialgebras
# ---------------------------------------------------------------------------

@dataclass
class ChordReport:
    mode: ParityMode
    with_one_term: bool
    dimensions: Dict[int, int] = field(default_factory=dict)
    primitive: Dict[int, int] = field(default_factory=dict)
    indecomposable: Dict[int, int] = field(default_factory=dict)

    def as_records(self) -> List[Dict]:
        return [{"parity": self.mode.value, "one_term": self.with_one_term, "i": i,
                 "dimension": self.dimensions[i], "primitive": self.primitive.get(i),
                 "indecomposable": self.indecomposable.get(i)} for i in sorted(self.dimensions)]


def chord_complex(mode: ParityMode, with_one_term: bool, i_max: int, i_min: int = 1) -> BigradedComplex:
    """Only (i,2i-1) and (i,2i) are needed for the chord degree"""
    variant = Variant.B_STAR if with_one_term else Variant.B
    mode = ParityMode(mode)
    cx = BigradedComplex(variant, mode, "full")
    for i in range(i_min, i_max + 1):
        for j in (2 * i - 1, 2 * i, 2 * i + 1):
            cx.bases[(i, j)] = enumerate_basis(variant, mode, i, j)
        cx.matrices[(i, 2 * i - 1)] = boundary_matrix(variant, mode, i, 2 * i - 1)
        cx.matrices[(i, 2 * i)] = boundary_matrix(variant, mode, i, 2 * i)
        cx.top[i] = 2 * i
        logger.info("Chord degree %d: %d diagrams", i, cx.dimension(i, 2 * i))
    return cx


def chord_bialgebra(mode: ParityMode, with_one_term: bool = False, i_max: int = 4,
                    coefficients: str = "rationals") -> ChordReport:
    """Dimensions of H_{i,2i} and of its primitive part, by two methods"""
    if coefficients != "rationals":
        raise CoefficientError("Primitive dimensions need rational coefficients")
    mode = ParityMode(mode)
    cx = chord_complex(mode, with_one_term, i_max)
    report = ChordReport(mode, with_one_term)
    for i in range(1, i_max + 1):
        j = 2 * i
        basis = cx.bases[(i, j)]
        dim = homology(cx, i, j, "rationals").rank
        report.dimensions[i] = dim
        chords = [Element.from_monomial(m, mode) for m in basis]
        projected = [primitive_projection(c, cx.variant) for c in chords]
        report.primitive[i] = class_rank(cx, i, j, projected)
        decomposable = [c for c, m in zip(chords, basis) if len(connected_components(m)) > 1]
        report.indecomposable[i] = dim - class_rank(cx, i, j, decomposable)
        logger.info("Chord degree %d: dimension %d, primitive %d", i, dim, report.primitive[i])
    return report


def _circular(mono: Monomial) -> Dict[int, int]:
    n = point_count(mono)
    return {p: (p - 1 if p > 1 else n) for p in range(1, n + 1)}


def circular_invariance(mode: ParityMode, i_max: int = 4, variant: Variant = Variant.B) -> Dict[int, bool]:
    """Whether the circular shift of points fixes every chord class"""
    mode, variant = ParityMode(mode), Variant(variant)
    result = {}
    for i in range(1, i_max + 1):
        cx = BigradedComplex(variant, mode, "full")
        for j in (2 * i - 1, 2 * i, 2 * i + 1):
            cx.bases[(i, j)] = enumerate_basis(variant, mode, i, j)
        cx.matrices[(i, 2 * i - 1)] = boundary_matrix(variant, mode, i, 2 * i - 1)
        cx.matrices[(i, 2 * i)] = boundary_matrix(variant, mode, i, 2 * i)
        fixed = True
        for mono in cx.bases[(i, 2 * i)]:
            chord = Element.from_monomial(mono, mode)
            shifted = _prepare(permute_points(chord, _circular(mono)), variant)
            if not is_boundary(cx, i, 2 * i, chord - shifted):
                logger.warning("Circular shift moves the class of %s", mono)
                fixed = False
                break
        result[i] = fixed
    return result


# ---------------------------------------------------------------------------
# Comparisons between complexes
# ---------------------------------------------------------------------------

@dataclass
class ComparisonReport:
    rows: List[Dict] = field(default_factory=list)

    @property
    def agrees(self) -> bool:
        return all(row["match"] for row in self.rows)


def quasi_iso_check(first: BigradedComplex, second: BigradedComplex,
                    coefficients: str = "integers", prime: Optional[int] = None) -> ComparisonReport:
    """Compare homology on every bidegree both complexes determine"""
    report = ComparisonReport()
    common = sorted(set(first.bidegrees()) & set(second.bidegrees()))
    for i, j in common:
        a = homology(first, i, j, coefficients, prime)
        b = homology(second, i, j, coefficients, prime)
        report.rows.append({"i": i, "j": j, "first": str(a), "second": str(b), "match": a == b})
        if a != b:
            logger.warning("Homology differs at (%d,%d): %s vs %s", i, j, a, b)
    return report


def _ideal_generators(mode: ParityMode) -> List[Tuple[Element, Bidegree]]:
    y = Element.from_monomial(((Generator(1), Generator(2)),), mode)
    generators = [(y, (1, 2))]
    if mode is ParityMode.ODD:
        z = Element.from_monomial(((Generator(1), Generator(3), Generator(2)),), mode)
        generators.append((z, (2, 3)))
    return generators


def inclusion_kernel(mode: ParityMode, i_max: int = 3) -> ComparisonReport:
    """Kernel of H(B) -> H(B*) against the ideal spanned by y (and z for odd d), over Q"""
    mode = ParityMode(mode)
    plain = build_complex(Variant.B, mode, i_max)
    starred = build_complex(Variant.B_STAR, mode, i_max)
    report = ComparisonReport()
    for i, j in plain.bidegrees():
        cycles = cycle_elements(plain, i, j)
        h_plain = class_rank(plain, i, j, cycles)
        h_image = class_rank(starred, i, j, cycles)
        products = []
        for generator, (gi, gj) in _ideal_generators(mode):
            if (i - gi, j - gj) not in plain.matrices:
                continue
            for c in cycle_elements(plain, i - gi, j - gj):
                products.append(hopf_product(generator, c))
                products.append(hopf_product(c, generator))
        ideal = class_rank(plain, i, j, products) if products else 0
        kernel = h_plain - h_image
        report.rows.append({"i": i, "j": j, "kernel": kernel, "ideal": ideal, "match": kernel == ideal})
    return report


def bar_factorization(mode: ParityMode, i_max: int = 3) -> ComparisonReport:
    """Homology of the asterisk-preserving differential against H(B) tensor a free algebra on one generator"""
    mode = ParityMode(mode)
    plain = build_complex(Variant.B, mode, i_max)
    barred = build_complex(Variant.B_STAR, mode, i_max, differential="bar")
    report = ComparisonReport()
    for i, j in barred.bidegrees():
        lhs = homology(barred, i, j, "rationals").rank
        rhs = 0
        for k in range(0, min(i, j) + 1):
            if (i - k, j - k) in plain.matrices and j - k <= plain.top.get(i - k, -1):
                rhs += homology(plain, i - k, j - k, "rationals").rank
        report.rows.append({"i": i, "j": j, "bar": lhs, "tensor": rhs, "match": lhs == rhs})
    return report


# ---------------------------------------------------------------------------
# Hochschild complexes of the diagram operads
# ---------------------------------------------------------------------------

def hochschild_complex(kind: OperadKind, arity_max: int) -> BigradedComplex:
    """Complex graded by (complexity, arity) with the Hochschild differential"""
    operad = OperadInstance(kind)
    cx = BigradedComplex(operad.variant, operad.mode, "hochschild")
    for i in range(2 * arity_max + 3):
        for n in range(arity_max + 2):
            cx.bases[(i, n)] = enumerate_basis(operad.variant, operad.mode, i, n)
        for n in range(arity_max + 1):
            src, dst = cx.bases[(i, n)], cx.bases[(i, n + 1)]
            columns = [coordinates(operad.hochschild_diff(OperadElement(Element.from_monomial(m, operad.mode), n)).value,
                                   dst) for m in src]
            cx.matrices[(i, n)] = np.array([[columns[c][r] for c in range(len(src))] for r in range(len(dst))],
                                           dtype=object).reshape(len(dst), len(src))
        cx.top[i] = arity_max
    logger.info("Built the %s Hochschild complex through arity %d", operad.kind.value, arity_max)
    return cx


def operad_homology(kind: OperadKind, arity_max: int = 4, coefficients: str = "integers",
                    prime: Optional[int] = None) -> List[Dict]:
    cx = hochschild_complex(kind, arity_max)
    records = []
    for i, n in cx.bidegrees():
        if not cx.dimension(i, n):
            continue
        group = homology(cx, i, n, coefficients, prime)
        records.append({"kind": OperadKind(kind).value, "i": i, "arity": n,
                        "dimension": cx.dimension(i, n), "rank": group.rank, "torsion": group.torsion})
    return records
