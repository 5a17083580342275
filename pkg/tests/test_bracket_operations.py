"""
Tests for insertion sums, asterisk maps and the Kirillov bracket
"""
import pytest

from src.algebra.bracket_diagrams import Variant, b0_reduce, enumerate_basis, point_count
from src.algebra.bracket_operations import (
    bar_homotopy_defect,
    bv_defect,
    bv_operator,
    diagram_pairs,
    homotopy_defect,
    kirillov_bracket,
    star_homotopy_defect,
    star_map,
    star_star,
    triangle,
    triangle_j,
)
from src.algebra.free_superalgebra import Element, ParityMode, offset_points, parse_element, weight_parity
from src.utils.exceptions import ParityModeError, VariantError


def test_bracket_of_chords_golden(golden, el, odd):
    """{y,y} = -2 z for odd d"""
    for case in golden("b_complexity_two")["odd"]["brackets"]:
        value = kirillov_bracket(el(case["left"], odd), el(case["right"], odd))
        assert value == el(case["value"], odd)


def test_bracket_in_neighbor_quotient(golden, named_basis, odd):
    """{[1,2],[1,3][2,4]} in the quotient, in the b basis of (3,5)"""
    case = golden("b0_complexity_three")["odd"]["bracket"]
    b = named_basis("b0", "odd", 3, 5)
    expected = Element.zero(odd)
    for coeff, element in zip(case["value_in_b"], b):
        expected = expected + element * coeff
    value = kirillov_bracket(parse_element(case["left"], odd), parse_element(case["right"], odd), Variant.B0)
    assert value == b0_reduce(expected)


def test_bracket_graded_antisymmetry(mode):
    """{A,B} = -(-1)^{(p(A)-1)(p(B)-1)} {B,A}"""
    small = [m for i in (1, 2) for j in range(2 * i + 1) for m in enumerate_basis(Variant.B, mode, i, j)]
    for a in small:
        for b in small:
            x, y = Element.from_monomial(a, mode), Element.from_monomial(b, mode)
            sign = -1 if (weight_parity(a, mode) - 1) * (weight_parity(b, mode) - 1) % 2 else 1
            assert kirillov_bracket(x, y) == kirillov_bracket(y, x) * (-sign)


def test_insertion_past_last_point_is_zero(mode):
    """A |>_j B vanishes when B has fewer than j points"""
    y = parse_element("[1,2]", mode)
    assert triangle_j(y, y, 3) == 0


def test_insertion_sum_runs_over_points(mode):
    """A |> B is the sum of the single insertions"""
    y = parse_element("[1,2]", mode)
    assert triangle(y, y) == triangle_j(y, y, 1) + triangle_j(y, y, 2)


def test_star_map_squares_to_zero(even):
    """Asterisking two points in both orders cancels"""
    for i in (1, 2):
        for j in range(2 * i + 1):
            for m in enumerate_basis(Variant.B, even, i, j):
                assert star_map(star_map(Element.from_monomial(m, even))) == 0


def test_star_map_needs_even_d(odd):
    """Asterisk maps are an even-d construction"""
    with pytest.raises(ParityModeError):
        star_map(parse_element("[1,2]", odd))


def test_bracket_variant_checks():
    """No insertion bracket on odd asterisk diagrams, no plain insertion into asterisks"""
    odd = ParityMode.ODD
    with pytest.raises(VariantError):
        kirillov_bracket(parse_element("[1,2]", odd), parse_element("[1,2]", odd), Variant.B_STAR)
    with pytest.raises(VariantError):
        triangle(parse_element("[1,2]", odd), parse_element("[1,2*]", odd))
    with pytest.raises(VariantError):
        homotopy_defect(parse_element("[1,3]", odd), parse_element("[1,3]", odd), Variant.B0)


def test_operands_share_parity_mode():
    """Mixing parity modes is rejected"""
    with pytest.raises(ParityModeError):
        triangle(parse_element("[1,2]", ParityMode.ODD), parse_element("[1,2]", ParityMode.EVEN))


def test_supercommutator_is_nullhomotopic(mode):
    """d(A|>B) - dA|>B -+ (A|>dB + [A,B]) = 0 for small pairs"""
    for first, second in diagram_pairs(Variant.B, mode, 2):
        assert homotopy_defect(first.element(), second.element()) == 0


def test_barred_insertion_is_a_homotopy(even):
    """The same identity for the asterisk-preserving differential on asterisk diagrams"""
    for first, second in diagram_pairs(Variant.B_STAR, even, 2):
        assert bar_homotopy_defect(first.element(), second.element()) == 0


def test_full_insertion_is_a_homotopy(even):
    """The same identity for the full differential on asterisk diagrams"""
    for first, second in diagram_pairs(Variant.B_STAR, even, 2):
        assert star_homotopy_defect(first.element(), second.element()) == 0


def _generalized_star(even, i_max):
    for i in range(i_max + 1):
        for j in range(2 * i + 2):
            for m in enumerate_basis(Variant.GENERALIZED_STAR, even, i, j):
                yield Element.from_monomial(m, even)


def test_star_star_squares_to_zero(even):
    """(A^star)^star = 0"""
    for x in _generalized_star(even, 2):
        assert star_star(star_star(x)) == 0


def test_bv_operator_squares_to_zero(even):
    """Delta o Delta = 0"""
    for x in _generalized_star(even, 2):
        assert bv_operator(bv_operator(x)) == 0


def test_bv_operator_measures_the_bracket(even):
    """Delta(ab) = Delta(a)b + (-1)^{e(a)} a Delta(b) + (-1)^{e(a)-1} [a,b] on disjoint points"""
    for first, second in diagram_pairs(Variant.GENERALIZED_STAR, even, 2):
        shift = point_count(first.diagram.monomial)
        assert bv_defect(first.element(), offset_points(second.element(), shift)) == 0


def test_pairs_stop_one_point_past_twice_the_complexity(even):
    """Generalized pairs run over j <= 2i + 1 for each factor"""
    for first, second in diagram_pairs(Variant.GENERALIZED, even, 2):
        for pair in (first, second):
            i, j = pair.diagram.bidegree
            assert 1 <= j <= 2 * i + 1
