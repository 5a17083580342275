"""
Verification Suites
Exhaustive property checks over low-complexity diagrams, grouped by subject
"""
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Callable, Dict, List, Optional

from src.algebra.bracket_diagrams import Variant, diff, enumerate_basis, point_count
from src.algebra.bracket_operations import (
    bar_homotopy_defect,
    bv_defect,
    bv_operator,
    diagram_pairs,
    homotopy_defect,
    jacobi_defect,
    kirillov_bracket,
    star_homotopy_defect,
)
from src.algebra.free_superalgebra import Element, ParityMode, exchange_parity, offset_points
from src.algebra.hopf_structure import (
    TensorTerms,
    antipode,
    component_dimensions,
    convolve,
    coproduct,
    identity,
    is_primitive,
    primitive_projection,
    product,
    swap,
    tensor,
    tensor_algebra_dimension,
    tensor_product,
    unit_counit,
)
from src.algebra.operad_hochschild import OperadElement, OperadInstance, OperadKind, diagram_isomorphism
from src.homology.homology_engine import (
    bar_factorization,
    build_complex,
    chord_bialgebra,
    circular_invariance,
    cycle_elements,
    default_top,
    euler_characteristic,
    hochschild_complex,
    inclusion_kernel,
    is_boundary,
    quasi_iso_check,
)
from src.utils.complex_builder import ComplexBuilder

logger = logging.getLogger(__name__)

SUITES = ("complex", "hopf", "homotopy", "operad", "quasi-iso", "chord")

# Complexity (arity for the operad suite) checked when no bound is given.
DEFAULT_BOUNDS = {"complex": 3, "hopf": 3, "homotopy": 3, "operad": 4, "quasi-iso": 3, "chord": 4}

# Primitive dimensions of chord diagrams modulo 4T, and modulo 4T and 1T.
PRIMITIVE_4T = [1, 1, 1, 2, 3, 5]
PRIMITIVE_4T_1T = [0, 1, 1, 2, 3, 5]

HOPF_VARIANTS = (Variant.B, Variant.B_STAR, Variant.B0)


@dataclass
class CheckResult:
    check: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteReport:
    """Outcome of one suite; failures carry the first offending input"""
    suite: str
    bound: int
    results: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def add(self, check: str, passed: bool, detail: str = "") -> None:
        if not passed:
            logger.warning("%s suite: %s failed %s", self.suite, check, detail)
        self.results.append(CheckResult(check, bool(passed), detail))

    def records(self) -> List[Dict]:
        return [{"suite": self.suite, "bound": self.bound, "check": r.check,
                 "passed": r.passed, "detail": r.detail} for r in self.results]


def _elements(variant: Variant, mode: ParityMode, bound: int) -> List[Element]:
    out = []
    for i in range(bound + 1):
        for j in range(default_top(variant, i) + 1):
            out.extend(Element.from_monomial(m, mode) for m in enumerate_basis(variant, mode, i, j))
    return out


def _first_failure(elements, predicate: Callable) -> Optional[str]:
    for element in elements:
        if not predicate(element):
            return str(element)
    return None


def _record_all(report: SuiteReport, check: str, elements, predicate: Callable) -> None:
    offender = _first_failure(elements, predicate)
    report.add(check, offender is None, "" if offender is None else f"on {offender}")


# ---------------------------------------------------------------------------
# complex
# ---------------------------------------------------------------------------

def verify_complex(bound: int, builder: Optional[ComplexBuilder] = None) -> SuiteReport:
    """d o d = 0 for every variant and parity; Euler characteristic where the complex is finite"""
    report = SuiteReport("complex", bound)
    builder = builder or ComplexBuilder()
    for variant, mode in cartesian(Variant, ParityMode):
        cx = builder.build(variant, mode, bound)
        if cx.truncated:
            report.add(f"complete {variant.value} {mode.value}", False, "time budget exhausted")
        report.add(f"square-zero {variant.value} {mode.value}", cx.is_square_zero())
        if not variant.generalized:
            mismatched = [i for i in cx.top if len(set(euler_characteristic(cx, i))) > 1]
            report.add(f"euler {variant.value} {mode.value}", not mismatched,
                       f"at complexity {mismatched}" if mismatched else "")
        if variant.starred and mode is ParityMode.EVEN:
            barred = builder.build(variant, mode, bound, differential="bar")
            report.add(f"square-zero bar {variant.value} {mode.value}", barred.is_square_zero())
    return report


# ---------------------------------------------------------------------------
# hopf
# ---------------------------------------------------------------------------

def _diff_tensor(terms: TensorTerms, variant: Variant, mode: ParityMode) -> TensorTerms:
    """(d x 1 + 1 x d) with the Koszul sign of the left factor"""
    out: TensorTerms = defaultdict(int)
    for (a, b), c in terms.items():
        left, right = Element.from_monomial(a, mode), Element.from_monomial(b, mode)
        for key, value in tensor(diff(left, variant), right).items():
            out[key] += c * value
        sign = -1 if exchange_parity(a, mode) % 2 else 1
        for key, value in tensor(left, diff(right, variant)).items():
            out[key] += sign * c * value
    return {k: c for k, c in out.items() if c != 0}


def _coproduct_of(element: Element, variant: Variant) -> TensorTerms:
    out: TensorTerms = defaultdict(int)
    for mono, coeff in element.terms.items():
        for key, value in coproduct(Element.from_monomial(mono, element.mode), variant).items():
            out[key] += coeff * value
    return {k: c for k, c in out.items() if c != 0}


def verify_hopf(bound: int) -> SuiteReport:
    """Bialgebra axioms, antipode, primitive projection and compatibility with d"""
    report = SuiteReport("hopf", bound)
    for variant, mode in cartesian(HOPF_VARIANTS, ParityMode):
        tag = f"{variant.value} {mode.value}"
        elements = _elements(variant, mode, bound)
        s_id = convolve(lambda e: antipode(e, variant), identity, variant)
        _record_all(report, f"antipode {tag}", elements, lambda e: s_id(e) == unit_counit(e))
        _record_all(report, f"cocommutative {tag}", elements,
                    lambda e: swap(coproduct(e, variant), mode) == coproduct(e, variant))
        _record_all(report, f"coderivation {tag}", elements,
                    lambda e: _coproduct_of(diff(e, variant), variant) == _diff_tensor(coproduct(e, variant), variant, mode))

        def projection_ok(e: Element) -> bool:
            p = primitive_projection(e, variant)
            return primitive_projection(p, variant) == p and is_primitive(p, variant)

        _record_all(report, f"primitive projection {tag}", elements, projection_ok)

        offender, unmultiplied = None, None
        for first, second in diagram_pairs(variant, mode, bound):
            a, b = first.element(), second.element()
            sign = -1 if exchange_parity(first.diagram.monomial, mode) % 2 else 1
            lhs = diff(product(a, b, variant), variant)
            rhs = product(diff(a, variant), b, variant) + product(a, diff(b, variant), variant) * sign
            if offender is None and lhs != rhs:
                offender = f"on {first.diagram} * {second.diagram}"
            if unmultiplied is None and (_coproduct_of(product(a, b, variant), variant)
                                         != tensor_product(coproduct(a, variant), coproduct(b, variant),
                                                           mode, variant)):
                unmultiplied = f"on {first.diagram} * {second.diagram}"
            if offender and unmultiplied:
                break
        report.add(f"derivation {tag}", offender is None, offender or "")
        report.add(f"multiplicative coproduct {tag}", unmultiplied is None, unmultiplied or "")

        if variant is not Variant.B0:
            connected = component_dimensions(variant, mode, bound, 2 * bound)
            wrong = [(i, j) for i in range(bound + 1) for j in range(2 * i + 1)
                     if len(enumerate_basis(variant, mode, i, j)) != tensor_algebra_dimension(connected, i, j)]
            report.add(f"free on connected diagrams {tag}", not wrong, f"at {wrong}" if wrong else "")
    return report


# ---------------------------------------------------------------------------
# homotopy
# ---------------------------------------------------------------------------

def _pairs_vanish(report: SuiteReport, check: str, variant: Variant, mode: ParityMode, bound: int,
                  defect: Callable[[Element, Element], Element]) -> None:
    offender = None
    count = 0
    for first, second in diagram_pairs(variant, mode, bound):
        count += 1
        if defect(first.element(), second.element()):
            offender = f"on ({first.diagram}, {second.diagram})"
            break
    report.add(check, offender is None, offender or f"{count} pairs")


def _bv_pair_defect(a: Element, b: Element) -> Element:
    """BV identity on a and b placed on disjoint points"""
    return bv_defect(a, offset_points(b, max((point_count(m) for m in a.terms), default=0)))


def _homology_representatives(cx, bidegrees) -> Dict:
    return {bd: cycle_elements(cx, *bd) for bd in bidegrees if bd in cx.matrices}


def verify_homotopy(bound: int) -> SuiteReport:
    """Supercommutator homotopies on pairs, Jacobi and Gerstenhaber compatibility in homology"""
    report = SuiteReport("homotopy", bound)
    for mode in ParityMode:
        for variant in (Variant.B, Variant.GENERALIZED):
            _pairs_vanish(report, f"insertion homotopy {variant.value} {mode.value}", variant, mode, bound,
                          lambda a, b, v=variant: homotopy_defect(a, b, v))
    _pairs_vanish(report, "barred homotopy b-star even", Variant.B_STAR, ParityMode.EVEN, bound,
                  lambda a, b: bar_homotopy_defect(a, b, Variant.B_STAR))
    _pairs_vanish(report, "asterisk homotopy b-star even", Variant.B_STAR, ParityMode.EVEN, bound,
                  lambda a, b: star_homotopy_defect(a, b, Variant.B_STAR))
    _record_all(report, "bv operator squares to zero", _elements(Variant.GENERALIZED_STAR, ParityMode.EVEN, bound),
                lambda e: not bv_operator(bv_operator(e)))
    _pairs_vanish(report, "bv identity generalized-star even", Variant.GENERALIZED_STAR, ParityMode.EVEN, bound,
                  _bv_pair_defect)

    # Bracket identities hold on homology, so defects are compared modulo boundaries.
    cx = build_complex(Variant.B, ParityMode.ODD, bound)
    reps = _homology_representatives(cx, [(i, j) for i in range(1, bound + 1) for j in range(2 * i + 1)])
    jacobi_ok, leibniz_ok = True, True
    for (bd1, xs), (bd2, ys), (bd3, zs) in cartesian(reps.items(), repeat=3):
        i, j = bd1[0] + bd2[0] + bd3[0], bd1[1] + bd2[1] + bd3[1]
        for x, y, z in cartesian(xs, ys, zs):
            if i <= bound and (i, j - 2) in cx.matrices:
                if not is_boundary(cx, i, j - 2, jacobi_defect(x, y, z)):
                    jacobi_ok = False
            if i <= bound and (i, j - 1) in cx.matrices:
                if not is_boundary(cx, i, j - 1, _leibniz_defect(x, y, z)):
                    leibniz_ok = False
    report.add("jacobi in homology b odd", jacobi_ok)
    report.add("bracket derivation of product b odd", leibniz_ok)
    return report


def _leibniz_defect(x: Element, y: Element, z: Element) -> Element:
    """{x, y*z} - {x,y}*z - (-1)^{(p(x)-1)p(y)} y*{x,z} on homogeneous x, y"""
    mode = x.mode
    px = next(iter(x.terms)) if x.terms else None
    py = next(iter(y.terms)) if y.terms else None
    if px is None or py is None:
        return Element.zero(mode)
    ex, ey = exchange_parity(px, mode), exchange_parity(py, mode)
    sign = -1 if (ex - 1) * ey % 2 else 1
    return (kirillov_bracket(x, product(y, z))
            - product(kirillov_bracket(x, y), z)
            - product(y, kirillov_bracket(x, z)) * sign)


# ---------------------------------------------------------------------------
# operad
# ---------------------------------------------------------------------------

def _brace_cases(operad: OperadInstance, small: List[OperadElement], max_arity: int = 5):
    """x{xs}{ys} with up to two elements in each brace and bounded total arity"""
    for m, n in ((1, 1), (1, 2), (2, 1), (2, 2)):
        for x, xs, ys in cartesian(operad.basis(2), cartesian(small, repeat=m), cartesian(small, repeat=n)):
            arity = x.arity + sum(a.arity - 1 for a in xs) + sum(b.arity - 1 for b in ys)
            if arity <= max_arity:
                yield x, list(xs), list(ys)


def verify_operad(bound: int) -> SuiteReport:
    """Operad identities and the Hochschild/diagram identification up to a given arity"""
    report = SuiteReport("operad", bound)
    for kind in OperadKind:
        operad = OperadInstance(kind)
        m = operad.multiplication()
        report.add(f"m o m vanishes {kind.value}", not operad.circle(m, m))
        small = [x for n in (1, 2) for x in operad.basis(n)]
        _record_all(report, f"hochschild square-zero {kind.value}",
                    [x for n in range(bound + 1) for x in operad.basis(n)],
                    lambda x: not operad.hochschild_diff(operad.hochschild_diff(x)))
        certificate = diagram_isomorphism(kind, bound)
        report.add(f"diagram isomorphism {kind.value}", certificate.verified,
                   f"{len(certificate.failures)} failures" if certificate.failures else
                   f"{len(certificate.signs)} basis elements")

        brace_ok = all(not operad.brace_identity_defect(x, xs, ys) for x, xs, ys in _brace_cases(operad, small))
        report.add(f"brace identity {kind.value}", brace_ok)
        commutative_ok = all(not operad.commutativity_defect(x, y) for x, y in cartesian(small, repeat=2))
        report.add(f"product homotopy commutative {kind.value}", commutative_ok)
        compatible_ok = all(not operad.compatibility_defect(x, y, z)
                            for x, y, z in cartesian(operad.basis(1), small, small))
        report.add(f"bracket compatible with product {kind.value}", compatible_ok)

        hochschild = hochschild_complex(kind, bound)
        diagrams = build_complex(operad.variant, operad.mode, max(i for i, _ in hochschild.bidegrees()),
                                 j_max=bound)
        comparison = quasi_iso_check(hochschild, diagrams)
        report.add(f"hochschild homology matches diagrams {kind.value}", comparison.agrees)
    return report


# ---------------------------------------------------------------------------
# quasi-iso
# ---------------------------------------------------------------------------

def verify_quasi_iso(bound: int) -> SuiteReport:
    """Homology comparisons between variants, the inclusion kernel and the barred factorization"""
    report = SuiteReport("quasi-iso", bound)
    for mode in ParityMode:
        starred = build_complex(Variant.B_STAR, mode, bound)
        reduced = build_complex(Variant.B0, mode, bound)
        report.add(f"b-star vs b0 {mode.value}", quasi_iso_check(starred, reduced).agrees)
        for small, large in ((Variant.B, Variant.GENERALIZED), (Variant.B_STAR, Variant.GENERALIZED_STAR)):
            first = starred if small is Variant.B_STAR else build_complex(small, mode, bound)
            second = build_complex(large, mode, bound)
            report.add(f"{small.value} vs {large.value} {mode.value}", quasi_iso_check(first, second).agrees)
        kernel = inclusion_kernel(mode, bound)
        report.add(f"inclusion kernel is the ideal {mode.value}", kernel.agrees)
    report.add("barred homology factorizes even", bar_factorization(ParityMode.EVEN, bound).agrees)
    return report


# ---------------------------------------------------------------------------
# chord
# ---------------------------------------------------------------------------

def verify_chord(bound: int) -> SuiteReport:
    """Primitive dimensions of the chord bialgebras and circular invariance"""
    report = SuiteReport("chord", bound)
    for with_one_term, expected in ((False, PRIMITIVE_4T), (True, PRIMITIVE_4T_1T)):
        chord = chord_bialgebra(ParityMode.ODD, with_one_term, bound)
        found = [chord.primitive[i] for i in range(1, bound + 1)]
        label = "4T and 1T" if with_one_term else "4T"
        if bound <= len(expected):
            report.add(f"primitive dimensions {label}", found == expected[:bound], f"found {found}")
        report.add(f"primitive methods agree {label}", chord.primitive == chord.indecomposable,
                   f"indecomposable {[chord.indecomposable[i] for i in range(1, bound + 1)]}")
    for mode, variant in ((ParityMode.ODD, Variant.B), (ParityMode.EVEN, Variant.B0)):
        invariant = circular_invariance(mode, bound, variant)
        report.add(f"circular invariance {variant.value} {mode.value}", all(invariant.values()),
                   f"{invariant}")
    return report


RUNNERS: Dict[str, Callable[[int], SuiteReport]] = {
    "complex": verify_complex,
    "hopf": verify_hopf,
    "homotopy": verify_homotopy,
    "operad": verify_operad,
    "quasi-iso": verify_quasi_iso,
    "chord": verify_chord,
}


def run_suite(name: str, bound: Optional[int] = None, builder: Optional[ComplexBuilder] = None) -> SuiteReport:
    if name not in RUNNERS:
        raise KeyError(f"Unknown suite: {name}")
    bound = DEFAULT_BOUNDS[name] if bound is None else bound
    logger.info("Running the %s suite up to %d", name, bound)
    if name == "complex":
        return verify_complex(bound, builder)
    return RUNNERS[name](bound)
