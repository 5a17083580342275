"""
Smith Normal Form
Integer diagonalization with unimodular certificates and exact ranks over
the rationals and prime fields
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from sympy import GF, QQ, Matrix
from sympy.polys.matrices import DomainMatrix

from src.utils.exceptions import CoefficientError

logger = logging.getLogger(__name__)

IntMatrix = List[List[int]]


def as_int_rows(matrix) -> IntMatrix:
    """Python-int rows of a numpy array or nested sequence"""
    return [[int(x) for x in row] for row in np.asarray(matrix, dtype=object).tolist()]


def _shape(matrix) -> Tuple[int, int]:
    array = np.asarray(matrix, dtype=object)
    if array.ndim != 2:
        return (array.shape[0] if array.ndim else 0, 0)
    return array.shape


def _identity(n: int) -> IntMatrix:
    return [[int(r == c) for c in range(n)] for r in range(n)]


@dataclass
class SmithResult:
    """U * M * V = D with U, V unimodular and D diagonal"""
    diagonal: IntMatrix
    left: IntMatrix
    right: IntMatrix
    factors: List[int]

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def torsion(self) -> List[int]:
        return [f for f in self.factors if f > 1]

    def verify(self, matrix) -> bool:
        """Check the certificates by exact multiplication"""
        m, n = _shape(matrix)
        if m == 0 or n == 0:
            return True
        product = np.dot(np.dot(np.array(self.left, dtype=object), np.array(as_int_rows(matrix), dtype=object)),
                         np.array(self.right, dtype=object))
        if product.tolist() != self.diagonal:
            return False
        if any(abs(Matrix(u).det()) != 1 for u in (self.left, self.right)):
            return False
        return all(self.factors[k + 1] % self.factors[k] == 0 for k in range(len(self.factors) - 1))


class _Reducer:
    """Row and column operations mirrored on the certificates"""

    def __init__(self, rows: IntMatrix):
        self.a = rows
        self.m = len(rows)
        self.n = len(rows[0]) if rows else 0
        self.u = _identity(self.m)
        self.v = _identity(self.n)

    def swap_rows(self, r: int, s: int) -> None:
        if r != s:
            self.a[r], self.a[s] = self.a[s], self.a[r]
            self.u[r], self.u[s] = self.u[s], self.u[r]

    def swap_cols(self, c: int, d: int) -> None:
        if c != d:
            for row in self.a + self.v:
                row[c], row[d] = row[d], row[c]

    def add_row(self, target: int, source: int, q: int) -> None:
        """row[target] += q * row[source]"""
        self.a[target] = [x + q * y for x, y in zip(self.a[target], self.a[source])]
        self.u[target] = [x + q * y for x, y in zip(self.u[target], self.u[source])]

    def add_col(self, target: int, source: int, q: int) -> None:
        for row in self.a + self.v:
            row[target] += q * row[source]

    def negate_row(self, r: int) -> None:
        self.a[r] = [-x for x in self.a[r]]
        self.u[r] = [-x for x in self.u[r]]

    def smallest(self, t: int) -> Optional[Tuple[int, int]]:
        best = None
        for r in range(t, self.m):
            for c in range(t, self.n):
                x = abs(self.a[r][c])
                if x and (best is None or x < best[0]):
                    best = (x, r, c)
        return None if best is None else best[1:]

    def cross_smallest(self, t: int) -> Tuple[int, int]:
        """Smallest nonzero entry in row t or column t"""
        candidates = [(abs(self.a[t][c]), t, c) for c in range(t, self.n) if self.a[t][c]]
        candidates += [(abs(self.a[r][t]), r, t) for r in range(t + 1, self.m) if self.a[r][t]]
        _, r, c = min(candidates)
        return r, c

    def clear_cross(self, t: int) -> bool:
        """One elimination sweep of row and column t; True when both are clear"""
        pivot = self.a[t][t]
        clean = True
        for r in range(t + 1, self.m):
            if self.a[r][t]:
                self.add_row(r, t, -(self.a[r][t] // pivot))
                clean = clean and not self.a[r][t]
        for c in range(t + 1, self.n):
            if self.a[t][c]:
                self.add_col(c, t, -(self.a[t][c] // pivot))
                clean = clean and not self.a[t][c]
        return clean

    def non_divisible(self, t: int) -> Optional[int]:
        pivot = self.a[t][t]
        for r in range(t + 1, self.m):
            for c in range(t + 1, self.n):
                if self.a[r][c] % pivot:
                    return r
        return None


def smith_normal_form(matrix) -> SmithResult:
    """Smith normal form with smallest-pivot elimination on Python integers"""
    rows = as_int_rows(matrix)
    m, n = _shape(matrix)
    if m == 0 or n == 0:
        return SmithResult([[0] * n for _ in range(m)], _identity(m), _identity(n), [])
    red = _Reducer(rows)
    t = 0
    while t < min(m, n):
        position = red.smallest(t)
        if position is None:
            break
        red.swap_rows(t, position[0])
        red.swap_cols(t, position[1])
        while True:
            if not red.clear_cross(t):
                r, c = red.cross_smallest(t)
                red.swap_rows(t, r)
                red.swap_cols(t, c)
                continue
            bad = red.non_divisible(t)
            if bad is None:
                break
            red.add_row(t, bad, 1)
        if red.a[t][t] < 0:
            red.negate_row(t)
        t += 1
    factors = [red.a[k][k] for k in range(t)]
    logger.debug("Smith normal form of a %dx%d matrix: %s", m, n, factors)
    return SmithResult(red.a, red.u, red.v, factors)


def invariant_factors(matrix) -> List[int]:
    """Nonzero invariant factors d1 | d2 | ..."""
    return smith_normal_form(matrix).factors


def rank(matrix, coefficients: str = "rationals", prime: Optional[int] = None) -> int:
    """Exact rank over Q or GF(p)"""
    m, n = _shape(matrix)
    if m == 0 or n == 0:
        return 0
    rows = as_int_rows(matrix)
    if coefficients == "rationals" or coefficients == "integers":
        domain = QQ
    elif coefficients == "mod-p":
        if not prime or prime < 2:
            raise CoefficientError("A prime is required for mod-p coefficients")
        domain = GF(prime)
    else:
        raise CoefficientError(f"Unknown coefficients: {coefficients}")
    return DomainMatrix([[domain(x) for x in row] for row in rows], (m, n), domain).rank()


def kernel_basis(matrix, columns: int) -> List[List]:
    """Basis of the rational kernel, as lists of sympy Rationals"""
    m, n = _shape(matrix)
    if n == 0 and columns == 0:
        return []
    if m == 0:
        return _identity(columns)
    return [list(v) for v in Matrix(as_int_rows(matrix)).nullspace()]

