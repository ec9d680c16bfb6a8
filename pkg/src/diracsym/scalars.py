"""Exact Gaussian-rational scalars and small fixed-size matrices.

Two scalar towers live here. :class:`ExactComplex` carries every algebraic
derivation with zero rounding; floating matrices are plain ``numpy``
``complex128`` arrays and are only used where square roots of momenta
appear.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

import numpy as np

__all__ = [
    "ExactComplex",
    "ExactMatrix",
    "ZERO",
    "ONE",
    "I_UNIT",
    "as_exact",
    "matrix_product",
    "matrix_star_family",
    "matrix_inverse",
    "matrix_max_abs_diff",
    "exact_rank",
    "SingularMatrixError",
]

ALLOWED_DIMS = (2, 4)

Number = Union[int, Fraction, complex, "ExactComplex"]


class SingularMatrixError(ArithmeticError):
    """Raised when an exact matrix has no inverse."""


@dataclass(frozen=True)
class ExactComplex:
    """A complex number ``re + im*i`` with rational parts.

    ``Fraction`` already keeps itself reduced, so two values compare equal
    exactly when their parts do.
    """

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return ExactComplex(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return ExactComplex(-self.re, -self.im)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return ExactComplex(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return ExactComplex(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        den = other.re * other.re + other.im * other.im
        if den == 0:
            raise ZeroDivisionError("division by exact zero")
        num = self * other.conjugate()
        return ExactComplex(num.re / den, num.im / den)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return ONE / (self ** (-n))
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "ExactComplex":
        return ExactComplex(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus, exact."""
        return self.re * self.re + self.im * self.im

    def max_part(self) -> Fraction:
        """``max(|re|, |im|)``: an exact norm that vanishes only at zero."""
        return max(abs(self.re), abs(self.im))

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"ExactComplex({self})"

    def __str__(self):
        """Serialize as ``a/b+c/d i``; purely real or imaginary values drop a part."""
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im} i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)} i"


ZERO = ExactComplex(0, 0)
ONE = ExactComplex(1, 0)
I_UNIT = ExactComplex(0, 1)


def _coerce(x):
    if isinstance(x, ExactComplex):
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return ExactComplex(Fraction(x), Fraction(0))
    if isinstance(x, complex):
        return ExactComplex(_exact_float(x.real), _exact_float(x.imag))
    return NotImplemented


def _exact_float(v: float) -> Fraction:
    if v != int(v):
        raise TypeError(f"refusing to embed non-integer float {v!r} into the exact tower")
    return Fraction(int(v))


def as_exact(x: Number) -> ExactComplex:
    """Embed an int, ``Fraction`` or Gaussian-integer ``complex`` exactly."""
    out = _coerce(x)
    if out is NotImplemented:
        raise TypeError(f"cannot convert {type(x).__name__} to ExactComplex")
    return out


class ExactMatrix:
    """A 2x2 or 4x4 matrix over :class:`ExactComplex`.

    Instances are immutable; all operations return new matrices.
    """

    __slots__ = ("_rows", "_hash")

    def __init__(self, rows: Iterable[Iterable[Number]]):
        rows = tuple(tuple(as_exact(v) for v in row) for row in rows)
        n = len(rows)
        if n not in ALLOWED_DIMS or any(len(r) != n for r in rows):
            raise ValueError(f"exact matrices must be 2x2 or 4x4, got {n} rows")
        self._rows = rows
        self._hash = None

    # construction ---------------------------------------------------------

    @classmethod
    def identity(cls, dim: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(dim)] for i in range(dim)])

    @classmethod
    def zeros(cls, dim: int) -> "ExactMatrix":
        return cls([[0] * dim for _ in range(dim)])

    @classmethod
    def block(cls, a, b, c, d) -> "ExactMatrix":
        """Assemble a 4x4 matrix from 2x2 blocks ``[[a, b], [c, d]]``."""
        top = [ra + rb for ra, rb in zip(a.rows, b.rows)]
        bottom = [rc + rd for rc, rd in zip(c.rows, d.rows)]
        return cls(top + bottom)

    # access ---------------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> tuple:
        return self._rows

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def entries(self):
        for row in self._rows:
            yield from row

    # algebra --------------------------------------------------------------

    def _check_dim(self, other: "ExactMatrix"):
        if not isinstance(other, ExactMatrix):
            raise TypeError("mixed scalar towers: exact matrix with non-exact operand")
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_dim(other)
        return ExactMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self._rows, other._rows)]
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_dim(other)
        return ExactMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self._rows, other._rows)]
        )

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix([[-a for a in row] for row in self._rows])

    def scale(self, s: Number) -> "ExactMatrix":
        s = as_exact(s)
        return ExactMatrix([[s * a for a in row] for row in self._rows])

    def __rmul__(self, s):
        return self.scale(s)

    def __mul__(self, s):
        if isinstance(s, ExactMatrix):
            raise TypeError("use '@' for matrix products")
        return self.scale(s)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_dim(other)
        n = self.dim
        cols = list(zip(*other._rows))
        out = []
        for row in self._rows:
            out_row = []
            for col in cols:
                acc = ZERO
                for k in range(n):
                    if row[k].is_zero() or col[k].is_zero():
                        continue
                    acc = acc + row[k] * col[k]
                out_row.append(acc)
            out.append(out_row)
        return ExactMatrix(out)

    def __pow__(self, n: int) -> "ExactMatrix":
        if n < 0:
            return matrix_inverse(self) ** (-n)
        out = ExactMatrix.identity(self.dim)
        for _ in range(n):
            out = out @ self
        return out

    def conjugate(self) -> "ExactMatrix":
        return ExactMatrix([[a.conjugate() for a in row] for row in self._rows])

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(list(zip(*self._rows)))

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def adjoint(self) -> "ExactMatrix":
        return self.transpose().conjugate()

    def trace(self) -> ExactComplex:
        acc = ZERO
        for i in range(self.dim):
            acc = acc + self._rows[i][i]
        return acc

    def inverse(self) -> "ExactMatrix":
        return matrix_inverse(self)

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.entries())

    def max_part(self) -> Fraction:
        """Largest ``max(|re|, |im|)`` over entries; exact zero iff the matrix is zero."""
        return max(a.max_part() for a in self.entries())

    def to_numpy(self) -> np.ndarray:
        return np.array([[complex(a) for a in row] for row in self._rows], dtype=complex)

    # comparisons ------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._rows)
        return self._hash

    def __repr__(self):
        body = "; ".join(", ".join(str(a) for a in row) for row in self._rows)
        return f"ExactMatrix([{body}])"

    def format(self) -> str:
        """Aligned multi-line text with exact ``a/b+c/d i`` entries."""
        cells = [[str(a) for a in row] for row in self._rows]
        width = max(len(c) for row in cells for c in row)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells)


def matrix_product(a, b):
    """Product of two matrices from the same scalar tower.

    Exact inputs give an exact result. ``numpy`` inputs are multiplied in
    double precision.
    """
    if isinstance(a, ExactMatrix) or isinstance(b, ExactMatrix):
        if not (isinstance(a, ExactMatrix) and isinstance(b, ExactMatrix)):
            raise TypeError("mixed scalar towers in matrix_product")
        return a @ b
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b


def matrix_star_family(a, kind: str):
    """Entrywise conjugate, transpose, or conjugate-transpose (``adjoint``)."""
    if kind not in ("conjugate", "transpose", "adjoint"):
        raise ValueError(f"unknown kind {kind!r}")
    if isinstance(a, ExactMatrix):
        return {"conjugate": a.conjugate, "transpose": a.transpose, "adjoint": a.adjoint}[kind]()
    a = np.asarray(a)
    if kind == "conjugate":
        return a.conj()
    if kind == "transpose":
        return a.T.copy()
    return a.conj().T.copy()


def _eliminate(rows: list[list[ExactComplex]], ncols: int) -> tuple[list[list[ExactComplex]], int]:
    """Gauss-Jordan elimination in place; returns (reduced rows, rank)."""
    rank = 0
    nrows = len(rows)
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if not rows[r][col].is_zero()), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = ONE / rows[rank][col]
        rows[rank] = [v * inv for v in rows[rank]]
        for r in range(nrows):
            if r != rank and not rows[r][col].is_zero():
                f = rows[r][col]
                rows[r] = [v - f * p for v, p in zip(rows[r], rows[rank])]
        rank += 1
        if rank == nrows:
            break
    return rows, rank


def matrix_inverse(a: ExactMatrix) -> ExactMatrix:
    """Exact inverse by Gauss-Jordan elimination on ``[A | I]``."""
    if not isinstance(a, ExactMatrix):
        raise TypeError("matrix_inverse needs an exact matrix")
    n = a.dim
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(a.rows)]
    reduced, rank = _eliminate(aug, n)
    if rank < n:
        raise SingularMatrixError("matrix is singular over the Gaussian rationals")
    return ExactMatrix([row[n:] for row in reduced])


def exact_rank(vectors: Sequence[Sequence[ExactComplex]]) -> int:
    """Rank of a list of equal-length exact vectors."""
    if not vectors:
        return 0
    rows = [[as_exact(v) for v in vec] for vec in vectors]
    _, rank = _eliminate(rows, len(rows[0]))
    return rank


def matrix_max_abs_diff(a, b) -> float:
    """``max |A_ij - B_ij|`` for two floating matrices (exact ones are converted)."""
    a = a.to_numpy() if isinstance(a, ExactMatrix) else np.asarray(a, dtype=complex)
    b = b.to_numpy() if isinstance(b, ExactMatrix) else np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise ValueError("non-finite matrix entries")
    return float(np.max(np.abs(a - b)))
