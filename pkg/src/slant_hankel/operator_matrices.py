"""Truncated matrices in the orthonormal Bergman basis e_n = sqrt(n+1) z^n.

Entry (m, n) of every matrix is the e_m coordinate of the operator applied
to e_n.  Entries are assembled from exact rationals and converted to double
precision only at the last step.
"""

from __future__ import annotations

import io
import math
from fractions import Fraction

import numpy as np

from .bergman_kernel import MonomialAction, _check_k
from .symbol_algebra import HarmonicSymbol

__all__ = [
    "ComplexMatrix",
    "hankel_matrix",
    "w_matrix",
    "slant_matrix",
    "slant_matrix_composed",
    "from_monomial_action",
    "adjoint",
]


class ComplexMatrix:
    """Dense, immutable complex128 matrix."""

    __slots__ = ("_a",)

    def __init__(self, entries):
        a = np.array(entries, dtype=np.complex128, copy=True)
        if a.ndim != 2:
            raise ValueError(f"expected a 2-d array, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("matrix entries must be finite")
        a.setflags(write=False)
        self._a = a

    @classmethod
    def _wrap(cls, a: np.ndarray) -> "ComplexMatrix":
        obj = object.__new__(cls)
        a.setflags(write=False)
        obj._a = a
        return obj

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def entries(self) -> list[complex]:
        """Row-major entries."""
        return [complex(x) for x in self._a.ravel()]

    def to_numpy(self) -> np.ndarray:
        """Read-only view of the underlying array."""
        return self._a

    def __getitem__(self, idx):
        return self._a[idx]

    def __matmul__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        return ComplexMatrix._wrap(self._a @ other._a)

    def __eq__(self, other):
        if not isinstance(other, ComplexMatrix):
            return NotImplemented
        return self._a.shape == other._a.shape and bool(np.array_equal(self._a, other._a))

    __hash__ = None

    def frobenius_norm(self) -> float:
        return float(np.linalg.norm(self._a))

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[float(x.real), float(x.imag)] for x in self._a.ravel()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ComplexMatrix":
        rows, cols = int(data["rows"]), int(data["cols"])
        flat = [complex(re, im) for re, im in data["entries"]]
        if len(flat) != rows * cols:
            raise ValueError("entries length does not match rows*cols")
        return cls(np.array(flat, dtype=np.complex128).reshape(rows, cols))

    def to_csv(self) -> str:
        """One row per line, entries written as ``re+imi`` with 17 significant digits."""
        buf = io.StringIO()
        for row in self._a:
            buf.write(",".join(_format_entry(x) for x in row))
            buf.write("\n")
        return buf.getvalue()

    def __repr__(self):
        return f"ComplexMatrix({self.rows}x{self.cols})"


def _format_entry(x: complex) -> str:
    return f"{x.real:.17g}{x.imag:+.17g}i"


def _check_dim(D: int, name: str = "D") -> None:
    if int(D) != D or D < 1:
        raise ValueError(f"{name} must be an integer >= 1, got {D!r}")


def _scaled(rational: Fraction, coeff, sqrt_num: int, sqrt_den: int) -> complex:
    # exact rational part first, one rounding per square root at the end
    c = coeff * rational
    return complex(c) * (math.sqrt(sqrt_num) / math.sqrt(sqrt_den))


def hankel_matrix(phi: HarmonicSymbol, D: int) -> ComplexMatrix:
    """Entry (m, n) = sqrt((n+1)(m+1)) / (m+n+1) * a_{m+n}."""
    _check_dim(D)
    a = np.zeros((D, D), dtype=np.complex128)
    for j, coeff in phi.anti.items():
        for m in range(max(0, j - D + 1), min(j, D - 1) + 1):
            n = j - m
            a[m, n] = _scaled(Fraction(1, m + n + 1), coeff, (n + 1) * (m + 1), 1)
    return ComplexMatrix._wrap(a)


def w_matrix(k: int, D_out: int) -> ComplexMatrix:
    """D_out x (k(D_out-1)+1) matrix of W_k; entry (n, kn) = sqrt((kn+1)/(n+1))."""
    _check_k(k)
    _check_dim(D_out, "D_out")
    a = np.zeros((D_out, k * (D_out - 1) + 1), dtype=np.complex128)
    for n in range(D_out):
        a[n, k * n] = math.sqrt(k * n + 1) / math.sqrt(n + 1)
    return ComplexMatrix._wrap(a)


def slant_matrix(phi: HarmonicSymbol, k: int, D: int) -> ComplexMatrix:
    """Closed-form entries sqrt(n+1)(km+1) / (sqrt(m+1)(n+km+1)) * a_{n+km}."""
    _check_k(k)
    _check_dim(D)
    a = np.zeros((D, D), dtype=np.complex128)
    for j, coeff in phi.anti.items():
        for m in range(min(j // k, D - 1) + 1):
            n = j - k * m
            if n >= D:
                continue
            a[m, n] = _scaled(Fraction(k * m + 1, n + k * m + 1), coeff, n + 1, m + 1)
    return ComplexMatrix._wrap(a)


def slant_matrix_composed(phi: HarmonicSymbol, k: int, D: int) -> ComplexMatrix:
    """W_k times a Hankel section, inner size k(D-1)+1, first D columns kept."""
    _check_k(k)
    _check_dim(D)
    inner = k * (D - 1) + 1
    prod = w_matrix(k, D).to_numpy() @ hankel_matrix(phi, inner).to_numpy()[:, :D]
    return ComplexMatrix._wrap(np.ascontiguousarray(prod))


def from_monomial_action(A: MonomialAction, D: int) -> ComplexMatrix:
    """Change basis z^n -> e_n: entry (m, n) = sqrt((n+1)/(m+1)) * A[m, n]."""
    _check_dim(D)
    if D - 1 > A.max_input_degree:
        raise ValueError(
            f"D={D} needs columns up to {D - 1}, action only has {A.max_input_degree}"
        )
    a = np.zeros((D, D), dtype=np.complex128)
    for n in range(D):
        for m, coeff in A.column(n).items():
            if m < D:
                a[m, n] = _scaled(Fraction(1), coeff, n + 1, m + 1)
    return ComplexMatrix._wrap(a)


def adjoint(M: ComplexMatrix) -> ComplexMatrix:
    return ComplexMatrix._wrap(np.ascontiguousarray(M.to_numpy().conj().T))
