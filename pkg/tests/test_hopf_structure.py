"""
Tests for the Hopf structure on diagram spaces
"""
import pytest

from src.algebra.bracket_diagrams import Variant, diff, enumerate_basis
from src.algebra.free_superalgebra import Element, ParityMode, exchange_parity, parse_element
from src.algebra.hopf_structure import (
    antipode,
    component_dimensions,
    convolve,
    coproduct,
    counit,
    identity,
    is_primitive,
    primitive_projection,
    product,
    reduced_power,
    swap,
    tensor_algebra_dimension,
    unit,
    unit_counit,
)
from src.utils.exceptions import CoefficientError

HOPF_VARIANTS = [Variant.B, Variant.B_STAR]


def _diagrams(variant, mode, i_max):
    for i in range(i_max + 1):
        for j in range(2 * i + 1):
            for m in enumerate_basis(variant, mode, i, j):
                yield Element.from_monomial(m, mode)


def test_product_concatenates(mode):
    """y * y places the second chord to the right"""
    y = parse_element("[1,2]", mode)
    assert product(y, y) == parse_element(f"[1,2]{mode.separator}[3,4]", mode)
    assert product(unit(mode), y) == y


def test_counit_reads_trivial_coefficient(mode):
    """The counit is the coefficient of the trivial diagram"""
    assert counit(unit(mode) * 3) == 3
    assert counit(parse_element("[1,2]", mode)) == 0


def test_chord_is_primitive(mode):
    """Single minimal components are primitive"""
    assert is_primitive(parse_element("[1,2]", mode))
    assert is_primitive(parse_element("[[1,3],2]", mode))


def test_square_of_y_is_primitive_only_for_even_d():
    """Cross terms cancel when y is odd"""
    assert is_primitive(parse_element("[1,2]^[3,4]", ParityMode.EVEN))
    assert not is_primitive(parse_element("[1,2].[3,4]", ParityMode.ODD))


@pytest.mark.parametrize("variant", HOPF_VARIANTS)
def test_antipode_is_convolution_inverse(mode, variant):
    """S * id = 1l on every diagram up to complexity 3"""
    s_id = convolve(lambda e: antipode(e, variant), identity, variant)
    for x in _diagrams(variant, mode, 3):
        assert s_id(x) == unit_counit(x)


def test_antipode_negates_primitives(mode):
    """S(x) = -x for a connected diagram"""
    x = parse_element("[[1,3],2]", mode)
    assert antipode(x) == -x


@pytest.mark.parametrize("variant", HOPF_VARIANTS)
def test_coproduct_is_cocommutative(mode, variant):
    """The flip with Koszul signs fixes the coproduct"""
    for x in _diagrams(variant, mode, 3):
        assert swap(coproduct(x, variant), mode) == coproduct(x, variant)


@pytest.mark.parametrize("variant", HOPF_VARIANTS)
def test_differential_is_a_derivation(mode, variant):
    """d(AB) = dA B + (-1)^{p(A)} A dB"""
    diagrams = list(_diagrams(variant, mode, 2))
    for a in diagrams:
        ((ma, _),) = a.terms.items()
        sign = -1 if exchange_parity(ma, mode) else 1
        for b in diagrams:
            lhs = diff(product(a, b, variant), variant)
            rhs = product(diff(a, variant), b, variant) + product(a, diff(b, variant), variant) * sign
            assert lhs == rhs


@pytest.mark.parametrize("parity", ["even", "odd"])
def test_primitive_projection_golden(golden, el, parity):
    """P1(u) for the chord u = [1,3][2,4]"""
    mode = ParityMode(parity)
    for source, expected in golden("b_complexity_two")[parity]["primitive"].items():
        assert primitive_projection(el(source, mode)) == el(expected, mode)


@pytest.mark.parametrize("variant", HOPF_VARIANTS)
def test_primitive_projection_is_idempotent(mode, variant):
    """P1 o P1 = P1 and its image is primitive"""
    for x in _diagrams(variant, mode, 3):
        p = primitive_projection(x, variant)
        assert primitive_projection(p, variant) == p
        assert is_primitive(p, variant)


def test_primitive_projection_needs_rationals(mode):
    """log_* id divides by k"""
    with pytest.raises(CoefficientError):
        primitive_projection(parse_element("[1,2]", mode), coefficients="integers")


def test_reduced_power_counts_ordered_splittings(odd):
    """(id - 1l)^{*2} of u sends both factors apart in both orders"""
    u = parse_element("[1,3].[2,4]", odd)
    assert reduced_power(u, 2) == parse_element("2 [1,2].[3,4]", odd)


@pytest.mark.parametrize("variant", HOPF_VARIANTS)
def test_free_on_connected_diagrams(mode, variant):
    """Dimensions agree with the free algebra on connected diagrams"""
    connected = component_dimensions(variant, mode, 3, 6)
    for i in range(4):
        for j in range(2 * i + 1):
            assert len(enumerate_basis(variant, mode, i, j)) == tensor_algebra_dimension(connected, i, j)
