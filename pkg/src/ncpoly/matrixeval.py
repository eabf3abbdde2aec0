"""Small dense matrices and numerical evaluation of elements.

Evaluating an element on a square-matrix assignment turns every word
into an ordered matrix product, so sums and products of elements must
map to sums and products of matrices; ``homomorphism_check`` measures
exactly that.  Dimensions stay tiny (at most 10 everywhere this is
used), so the linear algebra is done directly: schoolbook
multiplication and LU factorization with partial pivoting for inverses.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from .element import Element
from .randomgen import SplitMix64
from .words import DIFF_BASE, is_inverse, is_letter, letter_index, symbol_text

SINGULAR_PIVOT_RTOL = 1e-12


class UnboundLetter(LookupError):
    """An evaluated element uses a generator the assignment does not bind."""

    def __init__(self, letter_name: str):
        super().__init__(f"no matrix bound for generator '{letter_name}'")
        self.letter = letter_name


class SingularMatrix(ArithmeticError):
    """An inverse was requested but a pivot fell below the singularity threshold."""


class Matrix:
    """Immutable square real matrix, row-major entries."""

    __slots__ = ("dim", "rows")

    def __init__(self, rows: Iterable[Iterable[float]]):
        rows = tuple(tuple(float(x) for x in row) for row in rows)
        dim = len(rows)
        if dim == 0 or any(len(row) != dim for row in rows):
            raise ValueError("matrix must be square and nonempty")
        if any(not math.isfinite(x) for row in rows for x in row):
            raise ValueError("matrix entries must be finite")
        self.dim = dim
        self.rows = rows

    @classmethod
    def identity(cls, dim: int) -> "Matrix":
        return cls(tuple(tuple(1.0 if r == c else 0.0 for c in range(dim)) for r in range(dim)))

    @classmethod
    def zeros(cls, dim: int) -> "Matrix":
        return cls(tuple((0.0,) * dim for _ in range(dim)))

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"Matrix({[list(row) for row in self.rows]!r})"

    def __add__(self, other: "Matrix") -> "Matrix":
        self._need_same_dim(other)
        return Matrix(
            tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows))
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._need_same_dim(other)
        return Matrix(
            tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows))
        )

    def __neg__(self) -> "Matrix":
        return Matrix(tuple(tuple(-x for x in row) for row in self.rows))

    def __mul__(self, scalar) -> "Matrix":
        if isinstance(scalar, bool) or not isinstance(scalar, (int, float)):
            return NotImplemented
        return Matrix(tuple(tuple(x * scalar for x in row) for row in self.rows))

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        self._need_same_dim(other)
        cols = tuple(zip(*other.rows))
        return Matrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                for row in self.rows
            )
        )

    def max_abs(self) -> float:
        return max(abs(x) for row in self.rows for x in row)

    def inverse(self) -> "Matrix":
        """Inverse via LU with partial pivoting.

        A pivot whose magnitude is at most ``SINGULAR_PIVOT_RTOL`` times
        the largest input entry raises SingularMatrix.
        """
        n = self.dim
        threshold = SINGULAR_PIVOT_RTOL * self.max_abs()
        lu = [list(row) for row in self.rows]
        perm = list(range(n))
        for col in range(n):
            pivot_row = max(range(col, n), key=lambda r: abs(lu[r][col]))
            if abs(lu[pivot_row][col]) <= threshold:
                raise SingularMatrix(
                    f"matrix is singular to working precision (column {col})"
                )
            if pivot_row != col:
                lu[col], lu[pivot_row] = lu[pivot_row], lu[col]
                perm[col], perm[pivot_row] = perm[pivot_row], perm[col]
            inv_pivot = 1.0 / lu[col][col]
            for r in range(col + 1, n):
                factor = lu[r][col] * inv_pivot
                lu[r][col] = factor
                for c in range(col + 1, n):
                    lu[r][c] -= factor * lu[col][c]
        # solve A x = e_k for each unit vector, i.e. LU x = P e_k
        columns = []
        for k in range(n):
            y = [1.0 if perm[r] == k else 0.0 for r in range(n)]
            for r in range(n):
                for c in range(r):
                    y[r] -= lu[r][c] * y[c]
            for r in range(n - 1, -1, -1):
                for c in range(r + 1, n):
                    y[r] -= lu[r][c] * y[c]
                y[r] /= lu[r][r]
            columns.append(y)
        return Matrix(tuple(zip(*columns)))

    def to_jsonable(self) -> dict:
        return {"dim": self.dim, "rows": [list(row) for row in self.rows]}

    @classmethod
    def from_jsonable(cls, obj) -> "Matrix":
        if (
            not isinstance(obj, dict)
            or set(obj) != {"dim", "rows"}
            or isinstance(obj["dim"], bool)
            or not isinstance(obj["dim"], int)
            or not isinstance(obj["rows"], list)
        ):
            raise ValueError('matrix must be {"dim": n, "rows": [[...], ...]}')
        dim = obj["dim"]
        rows = obj["rows"]
        if len(rows) != dim or any(
            not isinstance(row, list) or len(row) != dim for row in rows
        ):
            raise ValueError(f"rows do not form a {dim}x{dim} matrix")
        for row in rows:
            for x in row:
                if isinstance(x, bool) or not isinstance(x, (int, float)):
                    raise ValueError(f"matrix entries must be numbers, got {x!r}")
        return cls(rows)

    def _need_same_dim(self, other: "Matrix") -> None:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")


def standard_normal_matrix(dim: int, rng: SplitMix64) -> Matrix:
    """``dim x dim`` matrix of standard normal draws, filled row-major."""
    return Matrix(tuple(tuple(rng.normal() for _ in range(dim)) for _ in range(dim)))


@dataclass(frozen=True)
class MatrixAssignment:
    """Bindings from generator letters (and differential tokens) to matrices.

    Keys may be letters or indices; every bound matrix must be square of
    the shared dimension.  Inverse letters evaluate through the matrix
    inverse of their letter's binding, computed on demand.
    """

    dim: int
    bindings: Mapping
    diff_bindings: Mapping = field(default_factory=dict)

    def __post_init__(self):
        bindings = {letter_index(k): v for k, v in dict(self.bindings).items()}
        diffs = {letter_index(k): v for k, v in dict(self.diff_bindings).items()}
        for matrix in [*bindings.values(), *diffs.values()]:
            if matrix.dim != self.dim:
                raise ValueError("all bound matrices must share the assignment dimension")
        object.__setattr__(self, "bindings", bindings)
        object.__setattr__(self, "diff_bindings", diffs)


def evaluate(element: Element, assignment: MatrixAssignment) -> Matrix:
    """Matrix value of an element under an assignment.

    Each word maps to the ordered product of its symbols' matrices, the
    empty word to the identity; terms are scaled by their coefficients
    and summed.  The zero element gives the zero matrix.  Raises
    UnboundLetter for missing bindings and SingularMatrix when an
    inverse letter's binding cannot be inverted.
    """
    dim = assignment.dim
    total = Matrix.zeros(dim)
    inverses: dict[int, Matrix] = {}
    for word, coeff in element.terms():
        product = Matrix.identity(dim)
        for sym in word:
            product = product @ _image(sym, assignment, inverses)
        total = total + product * coeff
    return total


def _image(sym: int, assignment: MatrixAssignment, inverses: dict) -> Matrix:
    if is_letter(sym):
        try:
            return assignment.bindings[sym]
        except KeyError:
            raise UnboundLetter(symbol_text(sym)) from None
    if is_inverse(sym):
        index = -sym
        if index not in inverses:
            try:
                base = assignment.bindings[index]
            except KeyError:
                raise UnboundLetter(symbol_text(index)) from None
            inverses[index] = base.inverse()
        return inverses[index]
    try:
        return assignment.diff_bindings[sym - DIFF_BASE]
    except KeyError:
        raise UnboundLetter(symbol_text(sym)) from None


@dataclass(frozen=True)
class HomomorphismReport:
    max_abs_residual: float
    max_rel_residual: float
    passed: bool


def homomorphism_check(
    a: Element, b: Element, assignment: MatrixAssignment, tol: float = 1e-9
) -> HomomorphismReport:
    """Compare ``evaluate(a) @ evaluate(b)`` against ``evaluate(a * b)``.

    With residual ``R`` being their difference, the check passes when
    ``max|R| <= tol * (1 + max|evaluate(a*b)|)``; the reported relative
    residual is ``max|R|`` divided by that scale.
    """
    product = evaluate(a, assignment) @ evaluate(b, assignment)
    direct = evaluate(a * b, assignment)
    max_abs = (product - direct).max_abs()
    scale = 1.0 + direct.max_abs()
    return HomomorphismReport(max_abs, max_abs / scale, max_abs <= tol * scale)


def random_assignment(
    letters: Iterable, dim: int, seed: int, diff_letters: Iterable = ()
) -> MatrixAssignment:
    """Standard-normal assignment, letters bound in index order from one stream."""
    rng = SplitMix64(seed)
    indices = sorted({letter_index(x) for x in letters})
    bindings = {i: standard_normal_matrix(dim, rng) for i in indices}
    diff_indices = sorted({letter_index(x) for x in diff_letters})
    diffs = {i: standard_normal_matrix(dim, rng) for i in diff_indices}
    return MatrixAssignment(dim, bindings, diffs)
