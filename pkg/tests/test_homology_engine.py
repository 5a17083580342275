"""
Tests for boundary matrices, homology groups and chord bialgebras
"""
import pytest

from src.algebra.bracket_diagrams import Variant, diff
from src.algebra.free_superalgebra import Element, ParityMode
from src.homology.homology_engine import (
    HomologyGroup,
    bar_factorization,
    boundary_matrix,
    build_complex,
    chord_bialgebra,
    circular_invariance,
    class_rank,
    euler_characteristic,
    homology,
    homology_records,
    inclusion_kernel,
    is_boundary,
    quasi_iso_check,
)
from src.utils.exceptions import BasisMismatchError, BidegreeError, CoefficientError

PARITIES = ["even", "odd"]


def _combination(coefficients, elements, mode):
    total = Element.zero(mode)
    for coeff, element in zip(coefficients, elements):
        total = total + element * coeff
    return total


def _bidegree(key):
    i, j = key.split(",")
    return int(i), int(j)


def test_homology_group_prints_like_a_table():
    """Z^r + Z/t notation"""
    assert str(HomologyGroup(1, [2])) == "Z + Z/2"
    assert str(HomologyGroup(2)) == "Z^2"
    assert str(HomologyGroup(0)) == "0"


@pytest.mark.parametrize("parity", PARITIES)
def test_low_complexity_homology(golden, parity):
    """H(1,2), H(2,3) and H(2,4) over the integers"""
    data = golden("b_complexity_two")[parity]
    cx = build_complex(Variant.B, ParityMode(parity), 2)
    for key, dim in data["dimensions"].items():
        assert cx.dimension(*_bidegree(key)) == dim
    for key, group in data["homology"].items():
        assert homology(cx, *_bidegree(key)) == HomologyGroup(group["rank"], group["torsion"])


def test_torsion_vanishes_over_the_rationals(even):
    """Z/2 in H(2,4) disappears over Q and survives mod 2"""
    cx = build_complex(Variant.B, even, 2)
    assert homology(cx, 2, 4, "rationals") == HomologyGroup(1)
    assert homology(cx, 2, 4, "mod-p", 2) == HomologyGroup(2)


def test_complex_squares_to_zero(mode):
    """Consecutive matrices compose to zero"""
    assert build_complex(Variant.B_STAR, mode, 3).is_square_zero()


def test_euler_characteristic(mode):
    """Chain and homology alternating sums agree"""
    cx = build_complex(Variant.B, mode, 3)
    for i in range(4):
        chain, homologies = euler_characteristic(cx, i)
        assert chain == homologies


def test_unbuilt_bidegree_is_rejected(mode):
    """Asking for a matrix outside the built range fails"""
    cx = build_complex(Variant.B, mode, 1)
    with pytest.raises(BidegreeError):
        cx.matrix(3, 4)


@pytest.mark.parametrize("parity", PARITIES)
def test_neighbor_quotient_matrix_in_named_bases(golden, named_basis, parity):
    """(3,5) -> (3,6) in the b and c bases"""
    data = golden("b0_complexity_three")[parity]
    matrix = boundary_matrix(Variant.B0, ParityMode(parity), 3, 5,
                             source=named_basis("b0", parity, 3, 5),
                             target=named_basis("b0", parity, 3, 6))
    assert matrix.tolist() == data["matrix_3_5"]


@pytest.mark.parametrize("parity", PARITIES)
def test_neighbor_quotient_boundary_of_a1(golden, named_basis, parity):
    """d[[1,3],[2,4]] in the b basis"""
    data = golden("b0_complexity_three")[parity]
    column = boundary_matrix(Variant.B0, ParityMode(parity), 3, 4,
                             source=named_basis("b0", parity, 3, 4),
                             target=named_basis("b0", parity, 3, 5))
    assert [row[0] for row in column.tolist()] == data["boundary_a1"]


@pytest.mark.parametrize("parity", PARITIES)
def test_neighbor_quotient_homology(golden, named_basis, parity):
    """H(3,4) = 0, H(3,5) = Z with the recorded cycle, relations are boundaries"""
    data = golden("b0_complexity_three")[parity]
    mode = ParityMode(parity)
    cx = build_complex(Variant.B0, mode, 3)
    for key, group in data["homology"].items():
        assert homology(cx, *_bidegree(key)) == HomologyGroup(group["rank"], group["torsion"])

    cycle = _combination(data["cycle_3_5"], named_basis("b0", parity, 3, 5), mode)
    assert diff(cycle, Variant.B0) == 0
    assert class_rank(cx, 3, 5, [cycle]) == 1

    c = named_basis("b0", parity, 3, 6)
    for relation in data["relations_3_6"]:
        assert is_boundary(cx, 3, 6, _combination(relation, c, mode))


def test_override_basis_must_match_dimension(named_basis):
    """Too few override elements is a basis mismatch"""
    b = named_basis("b0", "odd", 3, 5)
    with pytest.raises(BasisMismatchError):
        boundary_matrix(Variant.B0, ParityMode.ODD, 3, 5, source=b[:-1])


def test_homology_records(odd):
    """One row per determined bidegree"""
    records = homology_records(build_complex(Variant.B, odd, 2))
    row = next(r for r in records if (r["i"], r["j"]) == (2, 4))
    assert row["rank"] == 2
    assert row["torsion"] == []


def test_quasi_isomorphic_to_itself(mode):
    """A complex compared with itself agrees everywhere"""
    cx = build_complex(Variant.B, mode, 2)
    assert quasi_iso_check(cx, cx).agrees


def test_chord_primitives_need_rationals(even):
    """Primitive dimensions divide by the number of components"""
    with pytest.raises(CoefficientError):
        chord_bialgebra(even, coefficients="integers")


@pytest.mark.parametrize("one_term,key", [(False, "four_term"), (True, "four_and_one_term")])
def test_chord_primitive_dimensions(golden, odd, one_term, key):
    """Primitive chord diagrams through degree three"""
    expected = golden("chord")[key]
    report = chord_bialgebra(odd, one_term, 3)
    assert [report.primitive[i] for i in (1, 2, 3)] == expected[:3]
    assert report.primitive == report.indecomposable


@pytest.mark.slow
@pytest.mark.parametrize("one_term,key", [(False, "four_term"), (True, "four_and_one_term")])
def test_chord_primitive_dimensions_degree_five(golden, odd, one_term, key):
    """Primitive chord diagrams through degree five"""
    expected = golden("chord")[key]
    report = chord_bialgebra(odd, one_term, 5)
    assert [report.primitive[i] for i in range(1, 6)] == expected[:5]


def test_circular_shift_fixes_chord_classes(odd, even):
    """Rotating the points acts trivially on odd chords modulo 4T and on the even quotient"""
    assert all(circular_invariance(odd, 3, Variant.B).values())
    assert all(circular_invariance(even, 3, Variant.B0).values())


def test_circular_shift_moves_an_isolated_even_chord(even):
    """A single chord changes sign under rotation for even d"""
    assert circular_invariance(even, 1, Variant.B) == {1: False}


def test_inclusion_kernel_is_the_ideal(mode):
    """Classes dying among asterisk diagrams are exactly the multiples of y (and z)"""
    report = inclusion_kernel(mode, 2)
    assert report.rows
    assert report.agrees


def test_barred_homology_factorizes(even):
    """H of the asterisk-preserving differential is H(B) tensor a one-generator free algebra"""
    report = bar_factorization(even, 2)
    assert report.rows
    assert report.agrees
