"""
Hopf Structure
Product, coproduct, convolution, antipode and primitive projection on
diagram spaces
"""
import logging
from collections import defaultdict
from fractions import Fraction
from itertools import product as cartesian
from typing import Callable, Dict, List, Tuple

from src.algebra.bracket_diagrams import Variant, b0_reduce, enumerate_basis, point_count
from src.algebra.free_superalgebra import (
    TRIVIAL,
    Element,
    Monomial,
    ParityMode,
    accumulate,
    compress_monomial,
    exchange_parity,
    factor_exchange_parity,
    relabel_monomial,
)
from src.utils.exceptions import CoefficientError

logger = logging.getLogger(__name__)

TensorTerms = Dict[Tuple[Monomial, Monomial], object]
Endomorphism = Callable[[Element], Element]


def _normalize(element: Element, variant: Variant) -> Element:
    return b0_reduce(element) if variant is Variant.B0 else element


def _concatenate(blocks: List[Monomial]) -> Monomial:
    """Glue diagrams left to right; factor order is already canonical"""
    out: List = []
    offset = 0
    for block in blocks:
        out.extend(relabel_monomial(block, {g.point: g.point + offset for f in block for g in f}))
        offset += point_count(block)
    return tuple(out)


def product(left: Element, right: Element, variant: Variant = Variant.B) -> Element:
    """Concatenation with the second diagram placed to the right of the first"""
    out: Dict[Monomial, object] = defaultdict(int)
    for a, ca in left.terms.items():
        for b, cb in right.terms.items():
            out[_concatenate([a, b])] += ca * cb
    return _normalize(Element(dict(out), left.mode), Variant(variant))


def unit(mode: ParityMode) -> Element:
    return Element.unit(mode)


def counit(element: Element):
    return element.coefficient(TRIVIAL)


def _move_sign(parities: List[int], labels: List[int]) -> int:
    """Koszul sign of stably sorting factors by block label"""
    sign = 1
    for p in range(len(labels)):
        for q in range(p + 1, len(labels)):
            if labels[p] > labels[q] and parities[p] * parities[q] % 2:
                sign = -sign
    return sign


def _split(mono: Monomial, labels: List[int], blocks: int) -> List[Monomial]:
    return [compress_monomial(tuple(f for f, lab in zip(mono, labels) if lab == b)) for b in range(blocks)]


def coproduct(element: Element, variant: Variant = Variant.B) -> TensorTerms:
    """Sum over splittings of the minimal components into a left and a right part"""
    variant = Variant(variant)
    mode = element.mode
    out: TensorTerms = defaultdict(int)
    for mono, coeff in element.terms.items():
        parities = [factor_exchange_parity(f, mode) for f in mono]
        for labels in cartesian((0, 1), repeat=len(mono)):
            labels = list(labels)
            sign = _move_sign(parities, labels)
            first, second = _split(mono, labels, 2)
            if variant is Variant.B0:
                for a, ca in b0_reduce(Element.from_monomial(first, mode)).terms.items():
                    for b, cb in b0_reduce(Element.from_monomial(second, mode)).terms.items():
                        out[(a, b)] += sign * coeff * ca * cb
            else:
                out[(first, second)] += sign * coeff
    return {k: c for k, c in out.items() if c != 0}


def tensor(left: Element, right: Element) -> TensorTerms:
    out: TensorTerms = defaultdict(int)
    for a, ca in left.terms.items():
        for b, cb in right.terms.items():
            out[(a, b)] += ca * cb
    return {k: c for k, c in out.items() if c != 0}


def tensor_product(first: TensorTerms, second: TensorTerms, mode: ParityMode,
                   variant: Variant = Variant.B) -> TensorTerms:
    """(a x b)(c x d) = (-1)^{e(b)e(c)} ac x bd"""
    out: TensorTerms = defaultdict(int)
    for (a, b), c1 in first.items():
        for (c, d), c2 in second.items():
            sign = -1 if exchange_parity(b, mode) * exchange_parity(c, mode) % 2 else 1
            ac = product(Element.from_monomial(a, mode), Element.from_monomial(c, mode), variant)
            bd = product(Element.from_monomial(b, mode), Element.from_monomial(d, mode), variant)
            for key, value in tensor(ac, bd).items():
                out[key] += sign * c1 * c2 * value
    return {k: c for k, c in out.items() if c != 0}


def swap(terms: TensorTerms, mode: ParityMode) -> TensorTerms:
    out: TensorTerms = {}
    for (a, b), c in terms.items():
        sign = -1 if exchange_parity(a, mode) * exchange_parity(b, mode) % 2 else 1
        out[(b, a)] = out.get((b, a), 0) + sign * c
    return {k: c for k, c in out.items() if c != 0}


def convolve(f: Endomorphism, g: Endomorphism, variant: Variant = Variant.B) -> Endomorphism:
    """f * g = mu o (f x g) o Delta"""
    variant = Variant(variant)

    def convolution(element: Element) -> Element:
        mode = element.mode
        total: Dict[Monomial, object] = defaultdict(int)
        for (a, b), c in coproduct(element, variant).items():
            value = product(f(Element.from_monomial(a, mode)), g(Element.from_monomial(b, mode)), variant)
            accumulate(total, value, c)
        return Element(dict(total), mode)

    return convolution


def identity(element: Element) -> Element:
    return element


def unit_counit(element: Element) -> Element:
    """1l = iota o epsilon"""
    return Element.unit(element.mode) * counit(element)


def reduced_power(element: Element, k: int, variant: Variant = Variant.B) -> Element:
    """(id - 1l)^{*k}: ordered splittings into k nonempty blocks"""
    variant = Variant(variant)
    mode = element.mode
    if k == 0:
        return unit_counit(element)
    out: Dict[Monomial, object] = defaultdict(int)
    for mono, coeff in element.terms.items():
        n = len(mono)
        if k > n:
            continue
        parities = [factor_exchange_parity(f, mode) for f in mono]
        for labels in cartesian(range(k), repeat=n):
            if len(set(labels)) != k:
                continue
            labels = list(labels)
            sign = _move_sign(parities, labels)
            out[_concatenate(_split(mono, labels, k))] += sign * coeff
    return _normalize(Element(dict(out), mode), variant)


def _max_components(element: Element) -> int:
    return max((len(m) for m in element.terms), default=0)


def antipode(element: Element, variant: Variant = Variant.B) -> Element:
    """S = sum_k (-1)^k (id - 1l)^{*k}"""
    total = Element.zero(element.mode)
    for k in range(_max_components(element) + 1):
        total = total + reduced_power(element, k, variant) * (-1) ** k
    return total


def primitive_projection(element: Element, variant: Variant = Variant.B,
                         coefficients: str = "rationals") -> Element:
    """log_* id, the projection onto primitive elements"""
    if coefficients != "rationals":
        raise CoefficientError("The primitive projection needs rational coefficients")
    total = Element.zero(element.mode)
    for k in range(1, _max_components(element) + 1):
        total = total + reduced_power(element, k, variant) * Fraction((-1) ** (k + 1), k)
    return total


def is_primitive(element: Element, variant: Variant = Variant.B) -> bool:
    one = Element.unit(element.mode)
    expected: TensorTerms = defaultdict(int)
    for key, c in tensor(element, one).items():
        expected[key] += c
    for key, c in tensor(one, element).items():
        expected[key] += c
    return coproduct(element, variant) == {k: c for k, c in expected.items() if c != 0}


def connected_components(mono: Monomial) -> List[Monomial]:
    """Split a diagram at its separating intervals"""
    segments: List[List] = []
    reach = 0
    for f in mono:
        low, high = f[0].point, max(g.point for g in f)
        if not segments or low > reach:
            segments.append([f])
        else:
            segments[-1].append(f)
        reach = max(reach, high)
    return [compress_monomial(tuple(s)) for s in segments]


def component_dimensions(variant: Variant, mode: ParityMode, i_max: int, j_max: int) -> Dict[Tuple[int, int], int]:
    """Number of connected basis diagrams per bidegree"""
    dims = {}
    for i in range(i_max + 1):
        for j in range(1, j_max + 1):
            count = sum(1 for m in enumerate_basis(variant, mode, i, j) if len(connected_components(m)) == 1)
            if count:
                dims[(i, j)] = count
    return dims


def tensor_algebra_dimension(connected: Dict[Tuple[int, int], int], i: int, j: int) -> int:
    """Dimension predicted by the free algebra on the connected diagrams"""
    table: Dict[Tuple[int, int], int] = {(0, 0): 1}

    def count(a: int, b: int) -> int:
        if (a, b) in table:
            return table[(a, b)]
        if a < 0 or b <= 0:
            return 0
        total = 0
        for (ci, cj), d in connected.items():
            if ci <= a and cj <= b:
                total += d * count(a - ci, b - cj)
        table[(a, b)] = total
        return total

    return count(i, j)
