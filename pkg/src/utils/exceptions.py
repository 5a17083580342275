"""
Error Hierarchy
Exceptions raised by the diagram algebra, homology and CLI layers
"""


class DiagramError(ValueError):
    """Base class for all diagram-algebra errors"""


class MultilinearityError(DiagramError):
    """A generator occurs twice in one expression"""


class DisjointnessError(DiagramError):
    """Operands share points where disjoint point sets are required"""


class ParityModeError(DiagramError):
    """Operation is defined for the other parity of d"""


class VariantError(DiagramError):
    """Operation is not available for the diagram variant"""


class PointError(DiagramError):
    """Missing point, or asterisk/simple point mismatch"""


class BidegreeError(DiagramError):
    """Mixed bidegrees in one input, or a bidegree that was not built"""


class BasisMismatchError(DiagramError):
    """An override basis does not span the requested bidegree"""


class CoefficientError(DiagramError):
    """Coefficient ring does not support the operation"""


class ParseError(DiagramError):
    """Invalid diagram expression"""


class ArityError(DiagramError):
    """Operad composition with incompatible arities"""
