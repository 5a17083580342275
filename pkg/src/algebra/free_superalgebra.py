"""
Free Super Lie Algebra
Canonical forms, Poisson/Schouten brackets and the chain operator delta
on generators indexed by points of the line
"""
import logging
from collections import defaultdict
from enum import Enum
from functools import lru_cache
from itertools import permutations
from typing import Dict, Iterable, Iterator, List, NamedTuple, Sequence, Tuple, Union

from src.utils.exceptions import (
    DisjointnessError,
    MultilinearityError,
    ParityModeError,
    ParseError,
    PointError,
)

logger = logging.getLogger(__name__)


class ParityMode(str, Enum):
    """Parity of the ambient dimension d"""
    ODD = "odd"
    EVEN = "even"

    @property
    def separator(self) -> str:
        return "." if self is ParityMode.ODD else "^"


class Generator(NamedTuple):
    """Generator x_t (or x_t* when starred) sitting at a point of the line"""
    point: int
    star: bool = False

    def parity(self, mode: ParityMode) -> int:
        if mode is ParityMode.ODD or self.star:
            return 1
        return 0

    def __str__(self) -> str:
        return f"{self.point}*" if self.star else str(self.point)


# A canonical Lie monomial is stored left-normed: (g1, g2, ..., gk) stands for
# [[..[g1,g2],..],gk] with g1 the generator of minimal point.
Word = Tuple[Generator, ...]
# Factors sorted by their minimal point.
Monomial = Tuple[Word, ...]
LieTree = Union[Generator, Tuple["LieTree", "LieTree"]]

TRIVIAL: Monomial = ()


def word_parity(word: Word, mode: ParityMode) -> int:
    """Sum of generator parities of a Lie monomial"""
    return sum(g.parity(mode) for g in word) % 2


def factor_exchange_parity(word: Word, mode: ParityMode) -> int:
    """Parity governing the exchange of two factors"""
    if mode is ParityMode.EVEN:
        return (word_parity(word, mode) + 1) % 2
    return word_parity(word, mode)


def exchange_parity(mono: Monomial, mode: ParityMode) -> int:
    return sum(factor_exchange_parity(f, mode) for f in mono) % 2


def monomial_parity(mono: Monomial, mode: ParityMode) -> int:
    """Parity A~ of a monomial; in even d each exterior product sign counts once"""
    total = sum(word_parity(f, mode) for f in mono)
    if mode is ParityMode.EVEN:
        total += len(mono) - 1
    return total % 2


def weight_parity(mono: Monomial, mode: ParityMode) -> int:
    """Parity of the weight p = i(d-1) - j"""
    return exchange_parity(mono, mode)


def monomial_points(mono: Monomial) -> List[int]:
    return [g.point for f in mono for g in f]


def _koszul(a: int, b: int) -> int:
    return -1 if (a * b) % 2 else 1


# ---------------------------------------------------------------------------
# Lie monomials through the free associative superalgebra
# ---------------------------------------------------------------------------

AssocWord = Tuple[Generator, ...]


def _expand_tree(tree: LieTree, mode: ParityMode) -> Tuple[Dict[AssocWord, int], int]:
    if isinstance(tree, Generator):
        return {(tree,): 1}, tree.parity(mode)
    left, lp = _expand_tree(tree[0], mode)
    right, rp = _expand_tree(tree[1], mode)
    return _commutator(left, lp, right, rp), (lp + rp) % 2


def _commutator(left: Dict[AssocWord, int], lp: int,
                right: Dict[AssocWord, int], rp: int) -> Dict[AssocWord, int]:
    sign = _koszul(lp, rp)
    out: Dict[AssocWord, int] = defaultdict(int)
    for u, cu in left.items():
        for v, cv in right.items():
            out[u + v] += cu * cv
            out[v + u] -= sign * cu * cv
    return {w: c for w, c in out.items() if c}


@lru_cache(maxsize=None)
def _expand_word(word: Word, mode: ParityMode) -> Tuple[Tuple[AssocWord, int], ...]:
    terms: Dict[AssocWord, int] = {(word[0],): 1}
    parity = word[0].parity(mode)
    for g in word[1:]:
        terms = _commutator(terms, parity, {(g,): 1}, g.parity(mode))
        parity = (parity + g.parity(mode)) % 2
    return tuple(terms.items())


def _lie_coefficients(assoc: Dict[AssocWord, int]) -> Dict[Word, int]:
    """Read left-normed coordinates off an associative expansion.

    The left-normed monomial (m, a2, ..., ak) is the only basis element whose
    expansion contains the word m a2 ... ak, and it does so with coefficient 1.
    """
    if not assoc:
        return {}
    lowest = min(next(iter(assoc)), key=lambda g: g.point)
    return {w: c for w, c in assoc.items() if w[0] == lowest and c}


def _tree_points(tree: LieTree) -> List[int]:
    if isinstance(tree, Generator):
        return [tree.point]
    return _tree_points(tree[0]) + _tree_points(tree[1])


def canonicalize_tree(tree: LieTree, mode: ParityMode) -> Dict[Word, int]:
    """Express one bracket expression in the left-normed basis"""
    points = _tree_points(tree)
    if len(points) != len(set(points)):
        raise MultilinearityError(f"Generator repeated in bracket over points {points}")
    assoc, _ = _expand_tree(tree, mode)
    return _lie_coefficients(assoc)


@lru_cache(maxsize=None)
def bracket_words(left: Word, right: Word, mode: ParityMode) -> Tuple[Tuple[Word, int], ...]:
    """Lie bracket of two canonical monomials, in the left-normed basis"""
    lp, rp = word_parity(left, mode), word_parity(right, mode)
    assoc = _commutator(dict(_expand_word(left, mode)), lp,
                        dict(_expand_word(right, mode)), rp)
    return tuple(sorted(_lie_coefficients(assoc).items()))


def left_normed_basis(points: Sequence[int], stars: Iterable[int] = ()) -> List[Word]:
    """All canonical Lie monomials on a point set: (k-1)! of them"""
    starred = set(stars)
    gens = sorted(Generator(p, p in starred) for p in points)
    if not gens:
        return []
    head, rest = gens[0], gens[1:]
    return [(head,) + perm for perm in permutations(rest)]


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------

def sort_factors(factors: Sequence[Word], mode: ParityMode) -> Tuple[int, Monomial]:
    """Order factors by minimal point, returning the Koszul sign of the move"""
    points = [g.point for f in factors for g in f]
    if len(points) != len(set(points)):
        raise DisjointnessError(f"Factors share points: {sorted(points)}")
    items = [(f[0].point, factor_exchange_parity(f, mode), f) for f in factors]
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1][0] > items[j][0]:
            sign *= _koszul(items[j - 1][1], items[j][1])
            items[j - 1], items[j] = items[j], items[j - 1]
            j -= 1
    return sign, tuple(item[2] for item in items)


class Element:
    """Formal linear combination of canonical monomials with exact coefficients"""

    __slots__ = ("terms", "mode")

    def __init__(self, terms: Dict[Monomial, object] = None, mode: ParityMode = ParityMode.ODD):
        self.mode = ParityMode(mode)
        self.terms = {m: c for m, c in (terms or {}).items() if c != 0}

    @classmethod
    def zero(cls, mode: ParityMode) -> "Element":
        return cls({}, mode)

    @classmethod
    def unit(cls, mode: ParityMode) -> "Element":
        return cls({TRIVIAL: 1}, mode)

    @classmethod
    def from_monomial(cls, mono: Monomial, mode: ParityMode, coeff=1) -> "Element":
        return cls({tuple(mono): coeff}, mode)

    @classmethod
    def generator(cls, point: int, mode: ParityMode, star: bool = False) -> "Element":
        return cls({((Generator(point, star),),): 1}, mode)

    def __iter__(self) -> Iterator[Tuple[Monomial, object]]:
        return iter(sorted(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _combine(self, other: "Element", factor) -> "Element":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + factor * c
        return Element(out, self.mode)

    def __add__(self, other: "Element") -> "Element":
        if isinstance(other, int) and other == 0:
            return self
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other: "Element") -> "Element":
        return self._combine(other, -1)

    def __neg__(self) -> "Element":
        return Element({m: -c for m, c in self.terms.items()}, self.mode)

    def __mul__(self, scalar) -> "Element":
        return Element({m: scalar * c for m, c in self.terms.items()}, self.mode)

    __rmul__ = __mul__

    def coefficient(self, mono: Monomial):
        return self.terms.get(tuple(mono), 0)

    def monomials(self) -> List[Monomial]:
        return sorted(self.terms)

    def __repr__(self) -> str:
        return f"Element({format_element(self)!r}, {self.mode.value})"


def accumulate(target: Dict[Monomial, object], element: Element, factor=1) -> None:
    for m, c in element.terms.items():
        target[m] = target.get(m, 0) + factor * c


def product(left: Element, right: Element) -> Element:
    """Super-commutative product of S*g (odd d) or the exterior algebra (even d)"""
    mode = left.mode
    out: Dict[Monomial, object] = defaultdict(int)
    for a, ca in left.terms.items():
        for b, cb in right.terms.items():
            sign, mono = sort_factors(a + b, mode)
            out[mono] += sign * ca * cb
    return Element(dict(out), mode)


def canonicalize(factors: Sequence[LieTree], mode: ParityMode) -> Element:
    """Canonical form of a product of bracket expressions written in the given order"""
    mode = ParityMode(mode)
    result = Element.unit(mode)
    for tree in factors:
        lie = canonicalize_tree(tree, mode)
        result = product(result, Element({(w,): c for w, c in lie.items()}, mode))
    return result


def _check_disjoint(a: Monomial, b: Monomial) -> None:
    pa, pb = set(monomial_points(a)), set(monomial_points(b))
    if pa & pb:
        raise DisjointnessError(f"Operands share points {sorted(pa & pb)}")


def _algebra_bracket(left: Element, right: Element) -> Element:
    mode = left.mode
    out: Dict[Monomial, object] = defaultdict(int)
    for a, ca in left.terms.items():
        for b, cb in right.terms.items():
            _check_disjoint(a, b)
            ea = [factor_exchange_parity(f, mode) for f in a]
            eb = [factor_exchange_parity(f, mode) for f in b]
            for i, ai in enumerate(a):
                after = sum(ea[i + 1:])
                for j, bj in enumerate(b):
                    lam = ea[i] * after + eb[j] * sum(eb[:j])
                    base = -1 if lam % 2 else 1
                    rest_a = a[:i] + a[i + 1:]
                    rest_b = b[:j] + b[j + 1:]
                    for w, c in bracket_words(ai, bj, mode):
                        sign, mono = sort_factors(rest_a + (w,) + rest_b, mode)
                        out[mono] += base * sign * c * ca * cb
    return Element(dict(out), mode)


def poisson_bracket(left: Element, right: Element) -> Element:
    """Bracket on S*g extending the Lie bracket as a derivation in each argument"""
    if left.mode is not ParityMode.ODD:
        raise ParityModeError("Poisson bracket requires odd d")
    return _algebra_bracket(left, right)


def schouten_bracket(left: Element, right: Element) -> Element:
    """Bracket on the exterior algebra extending the Lie bracket"""
    if left.mode is not ParityMode.EVEN:
        raise ParityModeError("Schouten bracket requires even d")
    return _algebra_bracket(left, right)


def algebra_bracket(left: Element, right: Element) -> Element:
    """Poisson or Schouten bracket according to the parity mode"""
    return _algebra_bracket(left, right)


def delta(element: Element) -> Element:
    """Chain operator of the exterior algebra of g (even d only)"""
    mode = element.mode
    if mode is not ParityMode.EVEN:
        raise ParityModeError("delta is defined for even d")
    out: Dict[Monomial, object] = defaultdict(int)
    for a, ca in element.terms.items():
        e = [factor_exchange_parity(f, mode) for f in a]
        for i in range(len(a)):
            for j in range(i + 1, len(a)):
                lam = e[i] * sum(e[:i]) + e[j] * (sum(e[:j]) - e[i])
                lam += word_parity(a[i], mode)
                base = -1 if lam % 2 else 1
                rest = tuple(f for k, f in enumerate(a) if k not in (i, j))
                for w, c in bracket_words(a[i], a[j], mode):
                    sign, mono = sort_factors((w,) + rest, mode)
                    out[mono] += base * sign * c * ca
    return Element(dict(out), mode)


# ---------------------------------------------------------------------------
# Substitution and relabeling
# ---------------------------------------------------------------------------

def _locate(mono: Monomial, point: int) -> Tuple[int, int]:
    for fi, word in enumerate(mono):
        for pos, g in enumerate(word):
            if g.point == point:
                return fi, pos
    raise PointError(f"Point {point} does not occur in {format_monomial(mono, ParityMode.ODD)}")


def locate_generator(mono: Monomial, point: int) -> Generator:
    fi, pos = _locate(mono, point)
    return mono[fi][pos]


def _evaluate_word(word: Word, pos: int, value: Element) -> Element:
    mode = value.mode

    def leaf(k: int) -> Element:
        if k == pos:
            return value
        return Element.from_monomial(((word[k],),), mode)

    acc = leaf(0)
    for k in range(1, len(word)):
        acc = _algebra_bracket(acc, leaf(k))
    return acc


def substitute(target: Element, point: int, replacement: Element) -> Element:
    """Replace the generator at `point` by `replacement`.

    Carries the sign (-1)^((A~ - x~) * pi) where pi counts the odd symbols
    written before the generator: odd generators, plus exterior product signs
    in even d.
    """
    mode = target.mode
    out: Dict[Monomial, object] = defaultdict(int)
    for mono, coeff in target.terms.items():
        fi, pos = _locate(mono, point)
        gen = mono[fi][pos]
        others = set(monomial_points(mono)) - {point}
        pi_left = sum(word_parity(f, mode) for f in mono[:fi])
        pi_left += sum(g.parity(mode) for g in mono[fi][:pos])
        if mode is ParityMode.EVEN:
            pi_left += fi
        before = Element.from_monomial(mono[:fi], mode)
        after = Element.from_monomial(mono[fi + 1:], mode)
        for a, ca in replacement.terms.items():
            clash = others & set(monomial_points(a))
            if clash:
                raise DisjointnessError(f"Inserted diagram collides at points {sorted(clash)}")
            shift = (monomial_parity(a, mode) - gen.parity(mode)) * pi_left
            sign = -1 if shift % 2 else 1
            value = _evaluate_word(mono[fi], pos, Element.from_monomial(a, mode))
            term = product(product(before, value), after)
            accumulate(out, term, sign * coeff * ca)
    return Element(dict(out), mode)


def relabel_monomial(mono: Monomial, mapping: Dict[int, int]) -> Monomial:
    """Apply an order-preserving point relabeling; canonical form is kept"""
    return tuple(tuple(Generator(mapping.get(g.point, g.point), g.star) for g in f) for f in mono)


def shift_points(element: Element, threshold: int, amount: int) -> Element:
    """Move every point above `threshold` by `amount`"""
    def move(mono: Monomial) -> Monomial:
        return tuple(tuple(Generator(g.point + amount if g.point > threshold else g.point, g.star)
                           for g in f) for f in mono)
    return Element({move(m): c for m, c in element.terms.items()}, element.mode)


def offset_points(element: Element, amount: int) -> Element:
    return shift_points(element, 0, amount)


def compress_monomial(mono: Monomial) -> Monomial:
    """Relabel points to 1..j preserving their order"""
    points = sorted(monomial_points(mono))
    return relabel_monomial(mono, {p: k + 1 for k, p in enumerate(points)})


def compress(element: Element) -> Element:
    out: Dict[Monomial, object] = defaultdict(int)
    for m, c in element.terms.items():
        out[compress_monomial(m)] += c
    return Element(dict(out), element.mode)


def permute_points(element: Element, permutation: Dict[int, int]) -> Element:
    """Relabel by an arbitrary bijection and re-canonicalize"""
    mode = element.mode
    out: Dict[Monomial, object] = defaultdict(int)
    for mono, coeff in element.terms.items():
        trees = [_word_tree(tuple(Generator(permutation.get(g.point, g.point), g.star) for g in f))
                 for f in mono]
        accumulate(out, canonicalize(trees, mode), coeff)
    return Element(dict(out), mode)


def _word_tree(word: Word) -> LieTree:
    tree: LieTree = word[0]
    for g in word[1:]:
        tree = (tree, g)
    return tree


# ---------------------------------------------------------------------------
# Text form
# ---------------------------------------------------------------------------

def format_word(word: Word) -> str:
    text = str(word[0])
    for g in word[1:]:
        text = f"[{text},{g}]"
    return text


def format_monomial(mono: Monomial, mode: ParityMode) -> str:
    if not mono:
        return "()"
    return ParityMode(mode).separator.join(format_word(f) for f in mono)


def format_element(element: Element) -> str:
    if not element.terms:
        return "0"
    pieces = []
    for mono, coeff in element:
        text = format_monomial(mono, element.mode)
        negative = coeff < 0
        magnitude = -coeff if negative else coeff
        body = text if magnitude == 1 else f"{magnitude} {text}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(pieces)


class _ExpressionParser:
    """Recursive-descent reader for the diagram grammar"""

    def __init__(self, text: str, mode: ParityMode):
        self.text = text
        self.pos = 0
        self.mode = mode

    def error(self, message: str) -> ParseError:
        return ParseError(f"{message} at position {self.pos} in {self.text!r}")

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, char: str) -> None:
        if self.peek() != char:
            raise self.error(f"Expected {char!r}")
        self.pos += 1

    def digits(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("Expected a point index")
        return int(self.text[start:self.pos])

    def parse(self) -> Element:
        total = Element.zero(self.mode)
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        total = total + self.term() * sign
        while self.peek() in ("+", "-"):
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
            total = total + self.term() * sign
        if self.peek():
            raise self.error("Unexpected trailing input")
        return total

    def term(self) -> Element:
        coeff = 1
        self.skip()
        if self.peek().isdigit():
            mark = self.pos
            value = self.digits()
            nxt = self.text[self.pos] if self.pos < len(self.text) else ""
            following = self.peek()
            if nxt != "*" and (following in ("[", "(") or following.isdigit()):
                coeff = value
            else:
                self.pos = mark
        return self.monomial() * coeff

    def monomial(self) -> Element:
        if self.peek() == "(":
            self.pos += 1
            self.expect(")")
            return Element.unit(self.mode)
        trees = [self.factor()]
        while self.peek() in (".", "^"):
            if self.text[self.pos] != self.mode.separator:
                raise self.error(f"Products are written with {self.mode.separator!r} for {self.mode.value} d")
            self.pos += 1
            trees.append(self.factor())
        return canonicalize(trees, self.mode)

    def factor(self) -> LieTree:
        if self.peek() == "[":
            self.pos += 1
            left = self.factor()
            self.expect(",")
            right = self.factor()
            self.expect("]")
            return (left, right)
        point = self.digits()
        if point < 1:
            raise self.error("Points are positive integers")
        star = False
        if self.pos < len(self.text) and self.text[self.pos] == "*":
            star = True
            self.pos += 1
        return Generator(point, star)


def parse_element(text: str, mode: ParityMode) -> Element:
    """Parse `2 [[1,3],2].[4,5] - [1,2].[3,4]` style expressions"""
    return _ExpressionParser(text, ParityMode(mode)).parse()
