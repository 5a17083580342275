"""
Bracket Operations
Insertion sums between diagrams, the asterisk maps of the even case, the odd
Kirillov bracket and the homotopy defects of the supercommutator
"""
import logging
from collections import defaultdict
from typing import Callable, Dict, Iterator, List, NamedTuple, Tuple

from src.algebra.bracket_diagrams import (
    Diagram,
    Variant,
    b0_reduce,
    diff,
    diff_bar,
    enumerate_diagrams,
    place_at,
    point_count,
)
from src.algebra.free_superalgebra import (
    Element,
    Monomial,
    ParityMode,
    accumulate,
    algebra_bracket,
    delta,
    exchange_parity,
    product,
    substitute,
    weight_parity,
)
from src.algebra.hopf_structure import product as hopf_product
from src.utils.exceptions import ParityModeError, VariantError

logger = logging.getLogger(__name__)

Insertion = Callable[[Element, Element], Element]
Differential = Callable[[Element], Element]


class WeightedDiagram(NamedTuple):
    """A basis diagram together with the parity of its weight"""
    diagram: Diagram
    weight_parity: int

    @classmethod
    def of(cls, diagram: Diagram) -> "WeightedDiagram":
        return cls(diagram, diagram.weight_parity)

    def element(self) -> Element:
        return self.diagram.element()


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def _single(mono: Monomial, mode: ParityMode) -> Element:
    return Element.from_monomial(mono, mode)


def _has_stars(element: Element) -> bool:
    return any(g.star for m in element.terms for f in m for g in f)


def _require_even(element: Element, name: str) -> None:
    if element.mode is not ParityMode.EVEN:
        raise ParityModeError(f"{name} is defined for even d only")


def _check_modes(left: Element, right: Element) -> ParityMode:
    if left.mode is not right.mode:
        raise ParityModeError("Operands live in different parity modes")
    return left.mode


# ---------------------------------------------------------------------------
# Plain insertion sums
# ---------------------------------------------------------------------------

def triangle_j(left: Element, right: Element, j: int) -> Element:
    """A |>_j B: insert A around the j-th point of B, zero past the last point"""
    mode = _check_modes(left, right)
    out: Dict[Monomial, object] = defaultdict(int)
    for b, cb in right.terms.items():
        if j > point_count(b):
            continue
        if any(g.star and g.point == j for f in b for g in f):
            raise VariantError("Plain insertion into an asterisk point; use triangle_full")
        for a, ca in left.terms.items():
            if not a:
                continue
            accumulate(out, place_at(_single(b, mode), j, _single(a, mode)), ca * cb)
    return Element(dict(out), mode)


def triangle(left: Element, right: Element) -> Element:
    """A |> B = sum over the points of B of A |>_j B"""
    mode = _check_modes(left, right)
    if _has_stars(right):
        raise VariantError("Plain insertion sums are defined on diagrams without asterisks")
    total = Element.zero(mode)
    j_max = max((point_count(b) for b in right.terms), default=0)
    for j in range(1, j_max + 1):
        total = total + triangle_j(left, right, j)
    return total


# ---------------------------------------------------------------------------
# Asterisk maps (even d)
# ---------------------------------------------------------------------------

def star_map(element: Element) -> Element:
    """A* = (-1)^{p(A)-1} sum over simple points of A with that point asterisked"""
    _require_even(element, "The asterisk map")
    mode = element.mode
    out: Dict[Monomial, object] = defaultdict(int)
    for mono, coeff in element.terms.items():
        sign = _sign(weight_parity(mono, mode) - 1)
        single = _single(mono, mode)
        for f in mono:
            for g in f:
                if g.star:
                    continue
                starred = Element.generator(g.point, mode, star=True)
                accumulate(out, substitute(single, g.point, starred), sign * coeff)
    return Element(dict(out), mode)


def circle_map(element: Element) -> Element:
    """A^0 = (-1)^{p(A)-1} delta(A)"""
    _require_even(element, "The circle map")
    mode = element.mode
    out: Dict[Monomial, object] = defaultdict(int)
    for mono, coeff in element.terms.items():
        accumulate(out, delta(_single(mono, mode)), _sign(weight_parity(mono, mode) - 1) * coeff)
    return Element(dict(out), mode)


def star_star(element: Element) -> Element:
    """A^star = A* + A^0"""
    return star_map(element) + circle_map(element)


def bv_operator(element: Element) -> Element:
    """Delta = (-1)^{p-1} (.)^star; squares to zero"""
    _require_even(element, "The BV operator")
    mode = element.mode
    out: Dict[Monomial, object] = defaultdict(int)
    for mono, coeff in element.terms.items():
        accumulate(out, star_star(_single(mono, mode)), _sign(weight_parity(mono, mode) - 1) * coeff)
    return Element(dict(out), mode)


def bv_defect(left: Element, right: Element) -> Element:
    """Delta(ab) - Delta(a)b - (-1)^{e(a)} a Delta(b) - (-1)^{e(a)-1}[a,b] for monomial a"""
    mode = _check_modes(left, right)
    _require_even(left, "The BV identity")
    out: Dict[Monomial, object] = defaultdict(int)
    for a, ca in left.terms.items():
        ea = exchange_parity(a, mode)
        single = _single(a, mode)
        value = (bv_operator(product(single, right))
                 - product(bv_operator(single), right)
                 - product(single, bv_operator(right)) * _sign(ea)
                 - algebra_bracket(single, right) * _sign(ea - 1))
        accumulate(out, value, ca)
    return Element(dict(out), mode)


# ---------------------------------------------------------------------------
# Asterisk-aware insertion sums (even d)
# ---------------------------------------------------------------------------

def _insert_by_kind(left: Element, right: Element, simple: Callable[[Element], Element],
                    starred: Callable[[Element], Element]) -> Element:
    mode = _check_modes(left, right)
    _require_even(left, "Asterisk-aware insertion")
    out: Dict[Monomial, object] = defaultdict(int)
    cache: Dict[bool, Element] = {}
    for b, cb in right.terms.items():
        target = _single(b, mode)
        for f in b:
            for g in f:
                if g.star not in cache:
                    cache[g.star] = starred(left) if g.star else simple(left)
                inserted = Element({m: c for m, c in cache[g.star].terms.items() if m}, mode)
                if inserted:
                    accumulate(out, place_at(target, g.point, inserted), cb)
    return Element(dict(out), mode)


def triangle_bar(left: Element, right: Element) -> Element:
    """A at the simple points of B, A* at the asterisk points"""
    return _insert_by_kind(left, right, lambda a: a, star_map)


def triangle_barbar(left: Element, right: Element) -> Element:
    """A^0 at the asterisk points of B"""
    return _insert_by_kind(left, right, lambda a: Element.zero(a.mode), circle_map)


def triangle_full(left: Element, right: Element) -> Element:
    return triangle_bar(left, right) + triangle_barbar(left, right)


# ---------------------------------------------------------------------------
# Kirillov bracket
# ---------------------------------------------------------------------------

def _insertion_for(variant: Variant, mode: ParityMode) -> Insertion:
    variant = Variant(variant)
    if variant.starred:
        if mode is not ParityMode.EVEN:
            raise VariantError("No insertion bracket on asterisk diagrams for odd d")
        return triangle_full
    return triangle


def kirillov_bracket(left: Element, right: Element, variant: Variant = Variant.B) -> Element:
    """{A,B} = A |> B - (-1)^{(p(A)-1)(p(B)-1)} B |> A"""
    variant = Variant(variant)
    mode = _check_modes(left, right)
    insertion = _insertion_for(variant, mode)
    out: Dict[Monomial, object] = defaultdict(int)
    for a, ca in left.terms.items():
        pa = weight_parity(a, mode)
        for b, cb in right.terms.items():
            pb = weight_parity(b, mode)
            x, y = _single(a, mode), _single(b, mode)
            value = insertion(x, y) - insertion(y, x) * _sign((pa - 1) * (pb - 1))
            accumulate(out, value, ca * cb)
    result = Element(dict(out), mode)
    return b0_reduce(result) if variant is Variant.B0 else result


def jacobi_defect(a: Element, b: Element, c: Element, variant: Variant = Variant.B) -> Element:
    """{a,{b,c}} - {{a,b},c} - (-1)^{(p(a)-1)(p(b)-1)} {b,{a,c}} on monomials a, b"""
    mode = a.mode
    out: Dict[Monomial, object] = defaultdict(int)
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            x, y = _single(ma, mode), _single(mb, mode)
            shift = (weight_parity(ma, mode) - 1) * (weight_parity(mb, mode) - 1)
            value = (kirillov_bracket(x, kirillov_bracket(y, c, variant), variant)
                     - kirillov_bracket(kirillov_bracket(x, y, variant), c, variant)
                     - kirillov_bracket(y, kirillov_bracket(x, c, variant), variant) * _sign(shift))
            accumulate(out, value, ca * cb)
    return Element(dict(out), mode)


# ---------------------------------------------------------------------------
# Homotopy of the supercommutator
# ---------------------------------------------------------------------------

def _defect(left: Element, right: Element, differential: Differential, insertion: Insertion,
            variant: Variant) -> Element:
    mode = _check_modes(left, right)
    out: Dict[Monomial, object] = defaultdict(int)
    for a, ca in left.terms.items():
        pa = weight_parity(a, mode)
        x = _single(a, mode)
        for b, cb in right.terms.items():
            pb = weight_parity(b, mode)
            y = _single(b, mode)
            commutator = hopf_product(x, y, variant) - hopf_product(y, x, variant) * _sign(pa * pb)
            value = (differential(insertion(x, y))
                     - insertion(differential(x), y)
                     - (insertion(x, differential(y)) + commutator) * _sign(pa - 1))
            accumulate(out, value, ca * cb)
    return Element(dict(out), mode)


def homotopy_defect(left: Element, right: Element, variant: Variant = Variant.B) -> Element:
    """LHS - RHS of the plain supercommutator homotopy on B or generalized diagrams"""
    variant = Variant(variant)
    if variant.starred or variant is Variant.B0:
        raise VariantError(f"Plain homotopy is stated on B or generalized diagrams, got {variant.value}")
    return _defect(left, right, lambda e: diff(e, variant), triangle, variant)


def bar_homotopy_defect(left: Element, right: Element, variant: Variant = Variant.B_STAR) -> Element:
    """Same identity for the asterisk-preserving differential and the barred insertion"""
    variant = Variant(variant)
    _insertion_for(variant, left.mode)
    return _defect(left, right, lambda e: diff_bar(e, variant), triangle_bar, variant)


def star_homotopy_defect(left: Element, right: Element, variant: Variant = Variant.B_STAR) -> Element:
    """Same identity for the full differential on asterisk diagrams"""
    variant = Variant(variant)
    _insertion_for(variant, left.mode)
    return _defect(left, right, lambda e: diff(e, variant), triangle_full, variant)


def diagram_pairs(variant: Variant, mode: ParityMode, total_complexity: int) -> Iterator[Tuple[WeightedDiagram, WeightedDiagram]]:
    """All ordered pairs of basis diagrams with i1 + i2 <= total_complexity.

    Point counts run up to 2i, plus one when singletons or asterisks allow an
    extra point. Generalized diagrams exist for every j at a fixed complexity,
    so their pairs are truncated at j = 2i + 1 per factor.
    """
    variant = Variant(variant)
    extra = 1 if variant.starred or variant.generalized else 0
    pool: List[WeightedDiagram] = []
    for i in range(total_complexity + 1):
        for j in range(1, 2 * i + extra + 1):
            pool.extend(WeightedDiagram.of(d) for d in enumerate_diagrams(variant, mode, i, j))
    logger.info("Pairing %d %s %s diagrams up to complexity %d",
                len(pool), variant.value, mode.value, total_complexity)
    for first in pool:
        for second in pool:
            if first.diagram.bidegree[0] + second.diagram.bidegree[0] <= total_complexity:
                yield first, second
