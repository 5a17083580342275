"""
Tests for canonical forms, brackets and the diagram grammar
"""
from itertools import product as cartesian
from math import factorial

import pytest

from src.algebra.bracket_diagrams import Variant, enumerate_basis
from src.algebra.free_superalgebra import (
    Element,
    ParityMode,
    algebra_bracket,
    compress,
    delta,
    exchange_parity,
    format_element,
    monomial_parity,
    offset_points,
    parse_element,
    poisson_bracket,
    product,
    schouten_bracket,
    substitute,
)
from src.utils.exceptions import DisjointnessError, MultilinearityError, ParityModeError, ParseError


def test_bracket_symmetry_depends_on_parity():
    """Odd generators commute under the bracket, even ones anticommute"""
    assert parse_element("[2,1]", ParityMode.ODD) == parse_element("[1,2]", ParityMode.ODD)
    assert parse_element("[2,1]", ParityMode.EVEN) == -parse_element("[1,2]", ParityMode.EVEN)


def test_factor_exchange_signs():
    """Chords commute for odd d and anticommute for even d"""
    assert parse_element("[3,4].[1,2]", ParityMode.ODD) == parse_element("[1,2].[3,4]", ParityMode.ODD)
    assert parse_element("[3,4]^[1,2]", ParityMode.EVEN) == -parse_element("[1,2]^[3,4]", ParityMode.EVEN)


def test_jacobi_for_even_generators():
    """Cyclic sum of double brackets vanishes for even generators"""
    mode = ParityMode.EVEN
    total = parse_element("[[1,2],3] + [[2,3],1] + [[3,1],2]", mode)
    assert total == 0


def test_repeated_generator_rejected():
    """A bracket may not use a point twice"""
    with pytest.raises(MultilinearityError):
        parse_element("[1,1]", ParityMode.ODD)


def test_overlapping_factors_rejected():
    """Factors of a product must sit on disjoint points"""
    with pytest.raises(DisjointnessError):
        parse_element("[1,2].[2,3]", ParityMode.ODD)


def test_malformed_text_rejected():
    """Unclosed brackets are a parse error"""
    with pytest.raises(ParseError):
        parse_element("[1,2", ParityMode.EVEN)


def test_coefficients_combine(mode):
    """Linear combinations collect like terms"""
    assert parse_element("2 [1,2] - [1,2]", mode) == parse_element("[1,2]", mode)
    assert parse_element("[1,2] - [1,2]", mode) == 0


def test_format_is_canonical(mode):
    """Canonical left-normed words print back unchanged"""
    assert format_element(parse_element("[[1,3],2]", mode)) == "[[1,3],2]"
    assert format_element(parse_element("2 [1,2] - [1,3]", mode)) == "2 [1,2] - [1,3]"
    assert format_element(Element.zero(mode)) == "0"
    assert format_element(Element.unit(mode)) == "()"


def test_weight_parity_of_low_generators():
    """y is odd for even d and even for odd d; z is odd for odd d"""
    y = parse_element("[1,2]", ParityMode.EVEN)
    ((mono, _),) = y.terms.items()
    assert exchange_parity(mono, ParityMode.EVEN) == 1
    assert exchange_parity(mono, ParityMode.ODD) == 0
    z = parse_element("[[1,3],2]", ParityMode.ODD)
    ((mono, _),) = z.terms.items()
    assert exchange_parity(mono, ParityMode.ODD) == 1


def test_bracket_of_generators():
    """The Poisson bracket of two generators is their chord"""
    mode = ParityMode.ODD
    assert poisson_bracket(Element.generator(1, mode), Element.generator(2, mode)) == parse_element("[1,2]", mode)


def test_brackets_check_parity_mode():
    """Poisson needs odd d, Schouten and delta need even d"""
    with pytest.raises(ParityModeError):
        schouten_bracket(Element.generator(1, ParityMode.ODD), Element.generator(2, ParityMode.ODD))
    with pytest.raises(ParityModeError):
        poisson_bracket(Element.generator(1, ParityMode.EVEN), Element.generator(2, ParityMode.EVEN))
    with pytest.raises(ParityModeError):
        delta(parse_element("[1,2].[3,4]", ParityMode.ODD))


def test_delta_of_single_factor_vanishes():
    """delta only pairs distinct factors"""
    assert delta(parse_element("[[1,2],3]", ParityMode.EVEN)) == 0


def test_substitute_generator_relabels(mode):
    """Replacing a generator by another generator is a relabeling"""
    result = substitute(parse_element("[1,2]", mode), 2, Element.generator(3, mode))
    assert result == parse_element("[1,3]", mode)


def test_compress_relabels_points(mode):
    """Points are renumbered 1..j keeping their order"""
    assert compress(parse_element("[2,5]", mode)) == parse_element("[1,2]", mode)


def _pool(mode, max_points):
    """Single monomials on points 1..j, singletons allowed"""
    return [(m, Element.from_monomial(m, mode))
            for j in range(1, max_points + 1) for i in range(j)
            for m in enumerate_basis(Variant.GENERALIZED, mode, i, j)]


def _disjoint(pool, count, max_points):
    """Tuples of pool elements moved onto consecutive disjoint point ranges"""
    for items in cartesian(pool, repeat=count):
        sizes = [sum(len(f) for f in m) for m, _ in items]
        if sum(sizes) > max_points:
            continue
        shift, moved = 0, []
        for (m, x), size in zip(items, sizes):
            moved.append((m, offset_points(x, shift)))
            shift += size
        yield moved


def _shifted_sign(a, b, mode):
    shift = 1 if mode is ParityMode.EVEN else 0
    ea, eb = exchange_parity(a, mode) + shift, exchange_parity(b, mode) + shift
    return -1 if ea * eb % 2 else 1


def test_poisson_bracket_is_a_derivation():
    """[x1.x2, x3] = x1.[x2,x3] - x2.[x1,x3]"""
    odd = ParityMode.ODD
    value = poisson_bracket(parse_element("1.2", odd), Element.generator(3, odd))
    assert value == parse_element("1.[2,3] - 2.[1,3]", odd)


def test_bracket_super_antisymmetry(mode):
    """[A,B] = -(-1)^{e(A)e(B)} [B,A], degrees shifted by one for even d"""
    for (a, x), (b, y) in _disjoint(_pool(mode, 3), 2, 6):
        assert algebra_bracket(x, y) == -algebra_bracket(y, x) * _shifted_sign(a, b, mode)


def test_bracket_super_jacobi(mode):
    """[A,[B,C]] = [[A,B],C] + (-1)^{e(A)e(B)} [B,[A,C]] on triples with at most six points"""
    for (a, x), (b, y), (_, z) in _disjoint(_pool(mode, 3), 3, 6):
        lhs = algebra_bracket(x, algebra_bracket(y, z))
        rhs = (algebra_bracket(algebra_bracket(x, y), z)
               + algebra_bracket(y, algebra_bracket(x, z)) * _shifted_sign(a, b, mode))
        assert lhs == rhs


def test_delta_squares_to_zero(even):
    """delta o delta = 0 up to five points"""
    for _, x in _pool(even, 5):
        assert delta(delta(x)) == 0


def test_delta_of_a_product(even):
    """delta(A^B) = delta(A)^B + (-1)^{A~+1} A^delta(B) + (-1)^{A~} [A,B]"""
    for (a, x), (_, y) in _disjoint(_pool(even, 3), 2, 5):
        sign = -1 if monomial_parity(a, even) % 2 else 1
        expected = product(delta(x), y) - product(x, delta(y)) * sign + schouten_bracket(x, y) * sign
        assert delta(product(x, y)) == expected


def test_delta_is_a_derivation_of_the_bracket(even):
    """delta([A,B]) = [delta(A),B] + (-1)^{A~} [A,delta(B)]"""
    for (a, x), (_, y) in _disjoint(_pool(even, 3), 2, 5):
        sign = -1 if monomial_parity(a, even) % 2 else 1
        expected = schouten_bracket(delta(x), y) + schouten_bracket(x, delta(y)) * sign
        assert delta(schouten_bracket(x, y)) == expected


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_multilinear_component_rank(mode, k):
    """One bracket on k points spans (k-1)! canonical monomials"""
    assert len(enumerate_basis(Variant.B, mode, k - 1, k)) == factorial(k - 1)


def test_separator_follows_parity():
    """Products use '.' for odd d and '^' for even d"""
    with pytest.raises(ParseError):
        parse_element("[1,2]^[3,4]", ParityMode.ODD)
    with pytest.raises(ParseError):
        parse_element("[1,2].[3,4]", ParityMode.EVEN)
