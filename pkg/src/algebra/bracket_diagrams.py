"""
Bracket Diagrams
Enumeration of configurations and diagrams, insertion, the differential
and the quotient by neighbor supercommutativity
"""
import logging
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations, permutations, product as cartesian
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from src.algebra.free_superalgebra import (
    TRIVIAL,
    Element,
    Generator,
    Monomial,
    ParityMode,
    Word,
    accumulate,
    canonicalize_tree,
    compress,
    format_monomial,
    left_normed_basis,
    locate_generator,
    product,
    relabel_monomial,
    shift_points,
    substitute,
    weight_parity,
)
from src.utils.exceptions import BidegreeError, CoefficientError, PointError, VariantError

logger = logging.getLogger(__name__)


class Variant(str, Enum):
    """Diagram families"""
    B = "b"
    B_STAR = "b-star"
    B0 = "b0"
    GENERALIZED = "generalized"
    GENERALIZED_STAR = "generalized-star"

    @property
    def starred(self) -> bool:
        return self in (Variant.B_STAR, Variant.GENERALIZED_STAR)

    @property
    def generalized(self) -> bool:
        return self in (Variant.GENERALIZED, Variant.GENERALIZED_STAR)


@dataclass(frozen=True)
class Configuration:
    """(A,b)-configuration: groups of points plus asterisk points"""
    groups: Tuple[Tuple[int, ...], ...]
    asterisks: FrozenSet[int]
    j: int

    @property
    def complexity(self) -> int:
        return sum(len(g) for g in self.groups) - len(self.groups) + len(self.asterisks)

    @property
    def minimal_components(self) -> List[Tuple[int, ...]]:
        grouped = {p for g in self.groups for p in g}
        free = [(p,) for p in sorted(self.asterisks - grouped)]
        return sorted(list(self.groups) + free)


@dataclass(frozen=True)
class Diagram:
    """Canonical monomial together with its variant and parity mode"""
    monomial: Monomial
    variant: Variant
    mode: ParityMode

    @property
    def bidegree(self) -> Tuple[int, int]:
        return bidegree(self.monomial)

    @property
    def weight_parity(self) -> int:
        return weight_parity(self.monomial, self.mode)

    @property
    def configuration(self) -> Configuration:
        return configuration_of(self.monomial)

    def element(self) -> Element:
        return Element.from_monomial(self.monomial, self.mode)

    def __str__(self) -> str:
        return format_monomial(self.monomial, self.mode)


def complexity(mono: Monomial) -> int:
    return sum(len(f) - 1 + sum(1 for g in f if g.star) for f in mono)


def point_count(mono: Monomial) -> int:
    return sum(len(f) for f in mono)


def bidegree(mono: Monomial) -> Tuple[int, int]:
    return complexity(mono), point_count(mono)


def star_count(mono: Monomial) -> int:
    return sum(1 for f in mono for g in f if g.star)


def configuration_of(mono: Monomial) -> Configuration:
    groups = tuple(tuple(g.point for g in f) for f in mono if len(f) > 1 or not f[0].star)
    stars = frozenset(g.point for f in mono for g in f if g.star)
    return Configuration(groups, stars, point_count(mono))


def element_bidegree(element: Element) -> Optional[Tuple[int, int]]:
    """Common bidegree of all monomials, None for zero"""
    degrees = {bidegree(m) for m in element.terms}
    if len(degrees) > 1:
        raise BidegreeError(f"Element mixes bidegrees {sorted(degrees)}")
    return degrees.pop() if degrees else None


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def _set_partitions(points: List[int]) -> Iterator[List[List[int]]]:
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1:]


def _sort_key(mono: Monomial):
    sizes = tuple(sorted((len(f) for f in mono), reverse=True))
    stars = tuple(g.point for f in mono for g in f if g.star)
    return sizes, stars, mono


def enumerate_basis(variant: Variant, mode: ParityMode, i: int, j: int) -> List[Monomial]:
    """Deterministic basis of canonical monomials in bidegree (i, j)"""
    variant, mode = Variant(variant), ParityMode(mode)
    if i < 0 or j < 0:
        return []
    if j == 0:
        return [TRIVIAL] if i == 0 else []
    found = set()
    points = list(range(1, j + 1))
    for blocks in _set_partitions(points):
        n_stars = i - j + len(blocks)
        if n_stars < 0 or n_stars > j or (n_stars and not variant.starred):
            continue
        for stars in combinations(points, n_stars):
            starred = set(stars)
            if not variant.generalized and any(len(b) == 1 and b[0] not in starred for b in blocks):
                continue
            choices = [left_normed_basis(b, starred.intersection(b)) for b in sorted(blocks)]
            for words in cartesian(*choices):
                found.add(tuple(words))
    basis = sorted(found, key=_sort_key)
    if variant is Variant.B0:
        basis = [m for m in basis if all(_is_representative(f, mode) for f in m)]
    logger.debug("Enumerated %d %s diagrams at (%d,%d), %s d", len(basis), variant.value, i, j, mode.value)
    return basis


def enumerate_diagrams(variant: Variant, mode: ParityMode, i: int, j: int) -> List[Diagram]:
    return [Diagram(m, Variant(variant), ParityMode(mode)) for m in enumerate_basis(variant, mode, i, j)]


# ---------------------------------------------------------------------------
# Insertion
# ---------------------------------------------------------------------------

def insert(target: Element, point: int, inserted: Element) -> Element:
    """Substitute `inserted` for the generator at `point`, then relabel to 1..j"""
    return compress(substitute(target, point, inserted))


def place_at(target: Element, point: int, inserted: Element) -> Element:
    """Insert a diagram on points 1..m into a small neighborhood of `point`"""
    out: Dict[Monomial, object] = defaultdict(int)
    mode = target.mode
    for a, ca in inserted.terms.items():
        width = point_count(a) + 1
        for b, cb in target.terms.items():
            spread = {g.point: g.point * width for f in b for g in f}
            moved_b = Element.from_monomial(relabel_monomial(b, spread), mode)
            base = (point - 1) * width
            moved_a = Element.from_monomial(relabel_monomial(a, {g.point: g.point + base
                                                                for f in a for g in f}), mode)
            accumulate(out, compress(substitute(moved_b, point * width, moved_a)), ca * cb)
    return Element(dict(out), mode)


# ---------------------------------------------------------------------------
# Differentials
# ---------------------------------------------------------------------------

def _gen(point: int, mode: ParityMode, star: bool = False) -> Element:
    return Element.generator(point, mode, star)


def point_splitting(point: int, mode: ParityMode) -> Element:
    """x_{t-} . x_{t+} (wedge in even d) at points t, t+1"""
    return product(_gen(point, mode), _gen(point + 1, mode))


def asterisk_splitting(point: int, mode: ParityMode) -> Element:
    """Three-term replacement of an asterisk generator at points t, t+1"""
    minus, plus = point, point + 1
    bracket = Element.from_monomial(((Generator(minus), Generator(plus)),), mode)
    with_star_right = product(_gen(minus, mode), _gen(plus, mode, True))
    with_star_left = product(_gen(minus, mode, True), _gen(plus, mode))
    if mode is ParityMode.ODD:
        return with_star_right + with_star_left + bracket
    return with_star_right - with_star_left - bracket


def project_isolated(element: Element) -> Element:
    """The projection P: drop diagrams having an isolated simple point"""
    return Element({m: c for m, c in element.terms.items()
                    if not any(len(f) == 1 and not f[0].star for f in m)}, element.mode)


def _split_at(element: Element, point: int, replacement: Element) -> Element:
    return substitute(shift_points(element, point, 1), point, replacement)


def diff_point(element: Element, point: int, variant: Variant = Variant.B) -> Element:
    """Differential contribution of a simple point"""
    for mono in element.terms:
        if locate_generator(mono, point).star:
            raise PointError(f"Point {point} carries an asterisk")
    result = split_point(element, point)
    return result if Variant(variant).generalized else project_isolated(result)


def split_point(element: Element, point: int) -> Element:
    """A with x_t replaced by x_{t-} . x_{t+}, before the projection"""
    return _split_at(element, point, point_splitting(point, element.mode))


def isolated_splitting_terms(element: Element, point: int) -> Element:
    """(x_{t-} - x_{t+}) . A, the part of the splitting that P removes.

    On a diagram without isolated simple points,
    diff_point(A, t) + isolated_splitting_terms(A, t) == split_point(A, t).
    """
    mode = element.mode
    at_plus = shift_points(element, point - 1, 1)
    at_minus = shift_points(element, point, 1)
    return product(_gen(point, mode), at_plus) - product(_gen(point + 1, mode), at_minus)


def diff_asterisk(element: Element, point: int, variant: Variant = Variant.B_STAR) -> Element:
    """Differential contribution of an asterisk point"""
    for mono in element.terms:
        if not locate_generator(mono, point).star:
            raise PointError(f"Point {point} carries no asterisk")
    result = _split_at(element, point, asterisk_splitting(point, element.mode))
    return result if Variant(variant).generalized else project_isolated(result)


def boundary_term(element: Element) -> Element:
    """-(x_{t-} - x_{t+}) . A with the new points at both ends of the line"""
    out: Dict[Monomial, object] = defaultdict(int)
    mode = element.mode
    for mono, coeff in element.terms.items():
        if not mono:
            continue
        j = point_count(mono)
        single = Element.from_monomial(mono, mode)
        moved = shift_points(single, 0, 1)
        accumulate(out, product(_gen(j + 1, mode), single) - product(_gen(1, mode), moved), coeff)
    return Element(dict(out), mode)


def _diff_monomial(mono: Monomial, variant: Variant, mode: ParityMode) -> Element:
    single = Element.from_monomial(mono, mode)
    total = Element.zero(mode)
    for f in mono:
        for g in f:
            if g.star:
                total = total + diff_asterisk(single, g.point, variant)
            else:
                total = total + diff_point(single, g.point, variant)
    if variant.generalized:
        total = total + boundary_term(single)
    return total


def diff(element: Element, variant: Variant = Variant.B) -> Element:
    """Total differential, of bidegree (0, 1)"""
    variant = Variant(variant)
    element_bidegree(element)
    mode = element.mode
    out: Dict[Monomial, object] = defaultdict(int)
    base = Variant.B if variant is Variant.B0 else variant
    for mono, coeff in element.terms.items():
        accumulate(out, _diff_monomial(mono, base, mode), coeff)
    result = Element(dict(out), mode)
    return b0_reduce(result) if variant is Variant.B0 else result


def _split_by_stars(element: Element, variant: Variant, keep: bool) -> Element:
    variant = Variant(variant)
    if not variant.starred:
        raise VariantError("The splitting of the differential needs asterisks")
    out: Dict[Monomial, object] = defaultdict(int)
    for mono, coeff in element.terms.items():
        stars = star_count(mono)
        image = _diff_monomial(mono, variant, element.mode)
        for m, c in image.terms.items():
            if (star_count(m) == stars) == keep:
                out[m] += coeff * c
    return Element(dict(out), element.mode)


def diff_bar(element: Element, variant: Variant = Variant.B_STAR) -> Element:
    """Part of the differential keeping the number of asterisks"""
    return _split_by_stars(element, variant, True)


def diff_barbar(element: Element, variant: Variant = Variant.B_STAR) -> Element:
    """Part of the differential removing one asterisk"""
    return _split_by_stars(element, variant, False)


# ---------------------------------------------------------------------------
# Neighbor supercommutativity
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _quotient_table(points: Tuple[int, ...], mode: ParityMode) -> Optional[Dict[Word, Tuple[Tuple[Word, int], ...]]]:
    """Reduction of each left-normed word on `points` to representatives.

    Relations are the Lie ideal generated by brackets of neighboring points;
    pivots land on the largest words so representatives are the smallest ones.
    """
    present = set(points)
    pairs = [(a, a + 1) for a in points if a + 1 in present]
    if not pairs:
        return None
    basis = sorted(left_normed_basis(points), reverse=True)
    column = {w: k for k, w in enumerate(basis)}
    rows = []
    for a, b in pairs:
        rest = [p for p in points if p not in (a, b)]
        for order in permutations(rest):
            tree = (Generator(a), Generator(b))
            for p in order:
                tree = (tree, Generator(p))
            vector = canonicalize_tree(tree, mode)
            row = [QQ(0)] * len(basis)
            for w, c in vector.items():
                row[column[w]] = QQ(c)
            rows.append(row)
    reduced, pivots = DomainMatrix(rows, (len(rows), len(basis)), QQ).rref()
    matrix = reduced.to_Matrix()
    pivot_set = set(pivots)
    table: Dict[Word, Tuple[Tuple[Word, int], ...]] = {}
    for r, c in enumerate(pivots):
        entries = []
        for cc in range(len(basis)):
            if cc in pivot_set or matrix[r, cc] == 0:
                continue
            value = -matrix[r, cc]
            if value.q != 1:
                raise CoefficientError(f"Non-integral neighbor reduction on points {points}")
            entries.append((basis[cc], int(value)))
        table[basis[c]] = tuple(entries)
    for cc, w in enumerate(basis):
        if cc not in pivot_set:
            table[w] = ((w, 1),)
    return table


def _reduce_word(word: Word, mode: ParityMode) -> Tuple[Tuple[Word, int], ...]:
    points = tuple(sorted(g.point for g in word))
    table = _quotient_table(points, mode)
    if table is None:
        return ((word, 1),)
    return table[word]


def _is_representative(word: Word, mode: ParityMode) -> bool:
    if any(g.star for g in word):
        return False
    return _reduce_word(word, mode) == ((word, 1),)


def b0_reduce(element: Element) -> Element:
    """Representative modulo neighbor supercommutativity; asterisked diagrams vanish"""
    mode = element.mode
    out: Dict[Monomial, object] = defaultdict(int)
    for mono, coeff in element.terms.items():
        if star_count(mono):
            continue
        options = [_reduce_word(f, mode) for f in mono]
        for pick in cartesian(*options):
            c = coeff
            for _, k in pick:
                c *= k
            out[tuple(w for w, _ in pick)] += c
    return Element(dict(out), mode)


# ---------------------------------------------------------------------------
# 1T / 4T relations
# ---------------------------------------------------------------------------

def four_term_relations(mode: ParityMode, i: int) -> List[Element]:
    """Images under the differential of diagrams with one three-point bracket"""
    return [diff(Element.from_monomial(m, mode), Variant.B)
            for m in enumerate_basis(Variant.B, mode, i, 2 * i - 1)]


def one_term_relations(mode: ParityMode, i: int) -> List[Element]:
    """Images under the differential of diagrams with one free asterisk"""
    relations = []
    for m in enumerate_basis(Variant.B_STAR, mode, i, 2 * i - 1):
        if any(len(f) == 1 and f[0].star for f in m):
            relations.append(diff(Element.from_monomial(m, mode), Variant.B_STAR))
    return relations
