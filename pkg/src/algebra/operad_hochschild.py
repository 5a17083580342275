"""
Operad Hochschild
Linear operads realized on generalized diagrams: compositions, braces, the
Hochschild differential and product, and the identification with the
generalized diagram complexes
"""
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Dict, Iterator, List, Sequence, Tuple

from src.algebra.bracket_diagrams import Variant, diff, enumerate_basis, place_at, point_count
from src.algebra.bracket_operations import star_star
from src.algebra.free_superalgebra import (
    Element,
    Generator,
    Monomial,
    ParityMode,
    accumulate,
    canonicalize,
    locate_generator,
    permute_points,
    weight_parity,
)
from src.utils.exceptions import ArityError, BidegreeError, ParityModeError, VariantError

logger = logging.getLogger(__name__)


class OperadKind(str, Enum):
    POISSON = "poisson"
    GERSTENHABER = "gerstenhaber"
    BV = "bv"


_REALIZATION = {
    OperadKind.POISSON: (ParityMode.ODD, Variant.GENERALIZED),
    OperadKind.GERSTENHABER: (ParityMode.EVEN, Variant.GENERALIZED),
    OperadKind.BV: (ParityMode.EVEN, Variant.GENERALIZED_STAR),
}


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


@dataclass(frozen=True)
class OperadElement:
    """Element of the arity-n component, written on the letters 1..n"""
    value: Element
    arity: int

    @property
    def mode(self) -> ParityMode:
        return self.value.mode

    def degrees(self) -> Dict[int, "OperadElement"]:
        """Split into parts of homogeneous degree |x| mod 2"""
        parts: Dict[int, Dict[Monomial, object]] = defaultdict(dict)
        for mono, coeff in self.value.terms.items():
            parts[(weight_parity(mono, self.mode) - 1) % 2][mono] = coeff
        return {d: OperadElement(Element(terms, self.mode), self.arity) for d, terms in parts.items()}

    @property
    def degree(self) -> int:
        """|x| = x~ + n - 1 modulo 2; zero counts as even"""
        degrees = list(self.degrees())
        if len(degrees) > 1:
            raise BidegreeError("Element mixes degrees")
        return degrees[0] if degrees else 0

    def __add__(self, other: "OperadElement") -> "OperadElement":
        if other.arity != self.arity:
            raise ArityError(f"Cannot add arity {self.arity} and arity {other.arity}")
        return OperadElement(self.value + other.value, self.arity)

    def __sub__(self, other: "OperadElement") -> "OperadElement":
        return self + other * -1

    def __mul__(self, scalar) -> "OperadElement":
        return OperadElement(self.value * scalar, self.arity)

    def __neg__(self) -> "OperadElement":
        return self * -1

    def __bool__(self) -> bool:
        return bool(self.value)

    def __str__(self) -> str:
        return f"{self.value} (arity {self.arity})"


class OperadInstance:
    """Poisson, Gerstenhaber or BV operad on generalized (asterisk) diagrams"""

    def __init__(self, kind: OperadKind):
        self.kind = OperadKind(kind)
        self.mode, self.variant = _REALIZATION[self.kind]

    def __repr__(self) -> str:
        return f"OperadInstance({self.kind.value})"

    # -- elements ---------------------------------------------------------

    def wrap(self, value: Element) -> OperadElement:
        arities = {point_count(m) for m in value.terms}
        if len(arities) > 1:
            raise ArityError(f"Element mixes arities {sorted(arities)}")
        return OperadElement(value, arities.pop() if arities else 0)

    def zero(self, arity: int) -> OperadElement:
        return OperadElement(Element.zero(self.mode), arity)

    def identity(self) -> OperadElement:
        return OperadElement(Element.generator(1, self.mode), 1)

    def unit(self) -> OperadElement:
        """The arity-0 element, the unit of the algebra"""
        return OperadElement(Element.unit(self.mode), 0)

    def multiplication(self) -> OperadElement:
        return pi(AssociativeOperad.multiplication(), self)

    def basis(self, arity: int) -> List[OperadElement]:
        out = []
        for i in range(2 * arity + 1):
            out.extend(OperadElement(Element.from_monomial(m, self.mode), arity)
                       for m in enumerate_basis(self.variant, self.mode, i, arity))
        return out

    # -- compositions -----------------------------------------------------

    def compose(self, x: OperadElement, slot: int, y: OperadElement) -> OperadElement:
        """x o_slot y; a slot carrying an asterisk receives the BV image of y"""
        if not 1 <= slot <= x.arity:
            raise ArityError(f"Slot {slot} outside arity {x.arity}")
        out: Dict[Monomial, object] = defaultdict(int)
        starred_y = None
        for mono, coeff in x.value.terms.items():
            single = Element.from_monomial(mono, self.mode)
            if locate_generator(mono, slot).star:
                if starred_y is None:
                    starred_y = star_star(y.value)
                inserted = starred_y
            else:
                inserted = y.value
            accumulate(out, place_at(single, slot, inserted), coeff)
        return OperadElement(Element(dict(out), self.mode), x.arity + y.arity - 1)

    def brace(self, x: OperadElement, args: Sequence[OperadElement]) -> OperadElement:
        """x{x_1..x_k}: all order-preserving slot choices, filled left to right"""
        arity = x.arity + sum(a.arity for a in args) - len(args)
        total = self.zero(arity)
        for slots in combinations(range(1, x.arity + 1), len(args)):
            current = x
            offset = 0
            for slot, arg in zip(slots, args):
                current = self.compose(current, slot + offset, arg)
                offset += arg.arity - 1
            total = total + current
        return total

    def gamma(self, x: OperadElement, args: Sequence[OperadElement]) -> OperadElement:
        if len(args) != x.arity:
            raise ArityError(f"gamma needs {x.arity} arguments, got {len(args)}")
        return self.brace(x, args)

    def circle(self, x: OperadElement, y: OperadElement) -> OperadElement:
        return self.brace(x, [y])

    def permute(self, x: OperadElement, permutation: Dict[int, int]) -> OperadElement:
        """Symmetric-group action by relabeling the letters"""
        if sorted(permutation) != list(range(1, x.arity + 1)) or sorted(permutation.values()) != sorted(permutation):
            raise ArityError("Permutation does not match the arity")
        return OperadElement(permute_points(x.value, permutation), x.arity)

    # -- Lie and Hochschild structure ----------------------------------------

    def lie_bracket(self, x: OperadElement, y: OperadElement) -> OperadElement:
        """[x,y] = x o y - (-1)^{|x||y|} y o x"""
        total = self.zero(x.arity + y.arity - 1)
        for dx, px in x.degrees().items():
            for dy, py in y.degrees().items():
                total = total + self.circle(px, py) - self.circle(py, px) * _sign(dx * dy)
        return total

    def hochschild_diff(self, x: OperadElement) -> OperadElement:
        """[m, x] = m o x - (-1)^{|x|} x o m"""
        return self.lie_bracket(self.multiplication(), x)

    def hochschild_product(self, x: OperadElement, y: OperadElement) -> OperadElement:
        """x * y = (-1)^{|x|+1} m{x,y}"""
        m = self.multiplication()
        total = self.zero(x.arity + y.arity)
        for dx, px in x.degrees().items():
            total = total + self.brace(m, [px, y]) * _sign(dx + 1)
        return total

    def brace_identity_defect(self, x: OperadElement, xs: Sequence[OperadElement],
                              ys: Sequence[OperadElement]) -> OperadElement:
        """x{xs}{ys} minus the sum over distributions of ys among the xs"""
        lhs = self.brace(self.brace(x, xs), ys)
        rhs = self.zero(lhs.arity)
        for exponent, args in _distributions(self, list(xs), list(ys)):
            rhs = rhs + self.brace(x, args) * _sign(exponent)
        return lhs - rhs

    def commutativity_defect(self, x: OperadElement, y: OperadElement) -> OperadElement:
        """x*y - (-1)^{(|x|+1)(|y|+1)} y*x - (-1)^{|x|}(d(x o y) - dx o y - (-1)^{|x|} x o dy)"""
        dx, dy = x.degree, y.degree
        d = self.hochschild_diff
        lhs = self.hochschild_product(x, y) - self.hochschild_product(y, x) * _sign((dx + 1) * (dy + 1))
        rhs = (d(self.circle(x, y)) - self.circle(d(x), y) - self.circle(x, d(y)) * _sign(dx)) * _sign(dx)
        return lhs - rhs

    def compatibility_defect(self, x: OperadElement, y: OperadElement, z: OperadElement) -> OperadElement:
        """Homotopy between [x, y*z] and [x,y]*z + (-1)^{|x|(|y|+1)} y*[x,z]"""
        dx, dy = x.degree, y.degree
        d, star = self.hochschild_diff, self.hochschild_product
        lhs = (self.lie_bracket(x, star(y, z)) - star(self.lie_bracket(x, y), z)
               - star(y, self.lie_bracket(x, z)) * _sign(dx * (dy + 1)))
        rhs = (d(self.brace(x, [y, z])) - self.brace(d(x), [y, z])
               - self.brace(x, [d(y), z]) * _sign(dx)
               - self.brace(x, [y, d(z)]) * _sign(dx + dy)) * _sign(dx + dy + 1)
        return lhs - rhs


def _distributions(operad: OperadInstance, xs: List[OperadElement],
                   ys: List[OperadElement]) -> Iterator[Tuple[int, List[OperadElement]]]:
    """Arguments y_1..y_{i1}, x_1{..}, ..., with the sign of moving each x_p past the y before it"""
    def walk(p: int, q: int, passed: int) -> Iterator[Tuple[int, List[OperadElement]]]:
        if p == len(xs):
            yield 0, list(ys[q:])
            return
        for top in range(q, len(ys) + 1):
            before = ys[q:top]
            passed_here = passed + sum(y.degree for y in before)
            for end in range(top, len(ys) + 1):
                inner = operad.brace(xs[p], ys[top:end])
                for exponent, rest in walk(p + 1, end, passed_here + sum(y.degree for y in ys[top:end])):
                    yield exponent + xs[p].degree * passed_here, before + [inner] + rest

    yield from walk(0, 0, 0)


# ---------------------------------------------------------------------------
# Associative operad
# ---------------------------------------------------------------------------

Word = Tuple[int, ...]


class AssociativeOperad:
    """Words in odd letters; substitution carries the Koszul sign of the letters passed"""

    @staticmethod
    def multiplication() -> Dict[Word, int]:
        return {(1, 2): 1}

    @staticmethod
    def arity(element: Dict[Word, int]) -> int:
        lengths = {len(w) for w in element}
        return lengths.pop() if len(lengths) == 1 else 0

    @staticmethod
    def compose(x: Dict[Word, int], slot: int, y: Dict[Word, int]) -> Dict[Word, int]:
        out: Dict[Word, int] = defaultdict(int)
        for word, cx in x.items():
            at = word.index(slot)
            for inner, cy in y.items():
                shift = len(inner)
                moved = tuple(a + shift - 1 if a > slot else a for a in word)
                placed = tuple(slot + b - 1 for b in inner)
                glued = moved[:at] + placed + moved[at + 1:]
                out[glued] += _sign((len(inner) - 1) * at) * cx * cy
        return {w: c for w, c in out.items() if c}

    @classmethod
    def circle(cls, x: Dict[Word, int], y: Dict[Word, int]) -> Dict[Word, int]:
        out: Dict[Word, int] = defaultdict(int)
        for slot in range(1, cls.arity(x) + 1):
            for w, c in cls.compose(x, slot, y).items():
                out[w] += c
        return {w: c for w, c in out.items() if c}


def pi(element: Dict[Word, int], operad: OperadInstance) -> OperadElement:
    """Image of an associative word: the product of the letters in written order"""
    total = Element.zero(operad.mode)
    arity = AssociativeOperad.arity(element)
    for word, coeff in element.items():
        total = total + canonicalize([Generator(a) for a in word], operad.mode) * coeff
    return OperadElement(total, arity)


# ---------------------------------------------------------------------------
# Identification with generalized diagram complexes
# ---------------------------------------------------------------------------

def isomorphism_sign(mono: Monomial, mode: ParityMode) -> int:
    """Sign of the operad element on `mono` as a diagram"""
    n = point_count(mono)
    exponent = n * (n - 1) // 2
    if mode is ParityMode.EVEN:
        complexity = sum(len(f) - 1 + sum(1 for g in f if g.star) for f in mono)
        exponent += complexity * n
    return _sign(exponent)


def to_diagram(x: OperadElement) -> Element:
    return Element({m: c * isomorphism_sign(m, x.mode) for m, c in x.value.terms.items()}, x.mode)


@dataclass
class IsomorphismCertificate:
    kind: OperadKind
    arity_max: int
    signs: Dict[Monomial, int] = field(default_factory=dict)
    failures: List[Monomial] = field(default_factory=list)
    dimensions: Dict[int, int] = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return not self.failures


def diagram_isomorphism(kind: OperadKind, arity_max: int = 4) -> IsomorphismCertificate:
    """Check d(phi x) = phi(d_H x) on every basis element up to arity_max"""
    operad = OperadInstance(kind)
    certificate = IsomorphismCertificate(operad.kind, arity_max)
    for n in range(arity_max + 1):
        basis = operad.basis(n)
        certificate.dimensions[n] = len(basis)
        for x in basis:
            (mono,) = x.value.terms
            certificate.signs[mono] = isomorphism_sign(mono, operad.mode)
            image = to_diagram(operad.hochschild_diff(x))
            expected = diff(to_diagram(x), operad.variant)
            if image != expected:
                logger.warning("Hochschild differential disagrees on %s", x)
                certificate.failures.append(mono)
    logger.info("%s operad: %d basis elements checked, %d failures",
                operad.kind.value, len(certificate.signs), len(certificate.failures))
    return certificate


def check_realization(kind: OperadKind, parity: ParityMode) -> None:
    """Reject pairings of operad kind and parity that have no diagram model"""
    mode, _ = _REALIZATION[OperadKind(kind)]
    if ParityMode(parity) is not mode:
        raise ParityModeError(f"The {OperadKind(kind).value} operad is realized for {mode.value} d")


def require_kind(kind: str) -> OperadKind:
    try:
        return OperadKind(kind)
    except ValueError as exc:
        raise VariantError(f"Unknown operad kind: {kind}") from exc
