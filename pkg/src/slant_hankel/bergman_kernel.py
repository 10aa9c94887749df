"""Exact actions of P, J, W_k, W_k^*, H_phi and S_phi^k on monomials.

Every function here works in the (non-normalised) monomial basis {z^n} of
the Bergman space with exact complex-rational coefficients.  Mixed monomials
z^l conj(z)^m only ever appear inside :func:`monomial_inner` and
:func:`project_monomial`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .symbol_algebra import ExactComplex, HarmonicSymbol, Scalar, ZERO, hat

__all__ = [
    "AnalyticPoly",
    "MonomialAction",
    "monomial_inner",
    "project_monomial",
    "hankel_action",
    "hankel_apply",
    "w_action",
    "w_adjoint_action",
    "w_adjoint_apply",
    "slant_action",
    "slant_apply",
    "build_monomial_action",
    "adjoint_slant_action",
    "build_adjoint_action",
    "bergman_adjoint",
]


def _check_k(k: int) -> None:
    if int(k) != k or k < 2:
        raise ValueError(f"slant order k must be an integer >= 2, got {k!r}")


class AnalyticPoly:
    """Analytic polynomial sum_n c_n z^n with exact coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, Scalar] | None = None):
        c = {}
        for n, v in (coeffs or {}).items():
            if n < 0:
                raise ValueError(f"negative degree {n}")
            v = ExactComplex.coerce(v)
            if v:
                c[int(n)] = v
        self._c = dict(sorted(c.items()))

    @classmethod
    def monomial(cls, n: int, coeff: Scalar = 1) -> "AnalyticPoly":
        return cls({n: coeff})

    @classmethod
    def from_list(cls, coeffs: Iterable[Scalar]) -> "AnalyticPoly":
        return cls(dict(enumerate(coeffs)))

    @property
    def coeffs(self) -> dict[int, ExactComplex]:
        return dict(self._c)

    def coeff(self, n: int) -> ExactComplex:
        return self._c.get(n, ZERO)

    def items(self):
        return self._c.items()

    @property
    def degree(self) -> int | None:
        return max(self._c) if self._c else None

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def __add__(self, other: "AnalyticPoly") -> "AnalyticPoly":
        out = dict(self._c)
        for n, v in other._c.items():
            out[n] = out.get(n, ZERO) + v
        return AnalyticPoly(out)

    def __neg__(self) -> "AnalyticPoly":
        return AnalyticPoly({n: -v for n, v in self._c.items()})

    def __sub__(self, other: "AnalyticPoly") -> "AnalyticPoly":
        return self + (-other)

    def scale(self, alpha: Scalar) -> "AnalyticPoly":
        alpha = ExactComplex.coerce(alpha)
        return AnalyticPoly({n: alpha * v for n, v in self._c.items()})

    def __eq__(self, other):
        if not isinstance(other, AnalyticPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(tuple(self._c.items()))

    def __repr__(self):
        if not self._c:
            return "AnalyticPoly(0)"
        return "AnalyticPoly(" + " + ".join(f"({v})*z^{n}" for n, v in self._c.items()) + ")"


class MonomialAction:
    """Exact finite-rank operator given column by column in the monomial basis.

    ``columns[n]`` is the full image of z^n for 0 <= n <= max_input_degree;
    every z^n with n > max_input_degree is mapped to zero.
    """

    __slots__ = ("_cols", "max_input_degree")

    def __init__(self, columns: Mapping[int, AnalyticPoly] | Iterable[AnalyticPoly], max_input_degree: int | None = None):
        if not isinstance(columns, Mapping):
            columns = dict(enumerate(columns))
        if max_input_degree is None:
            max_input_degree = max(columns, default=0)
        cols = {}
        for n in range(max_input_degree + 1):
            cols[n] = columns.get(n, AnalyticPoly())
        extra = [n for n in columns if n > max_input_degree and columns[n]]
        if extra:
            raise ValueError(f"nonzero column {extra[0]} beyond max_input_degree")
        self._cols = cols
        self.max_input_degree = max_input_degree

    @classmethod
    def from_rows(cls, rows: list[list[Scalar]]) -> "MonomialAction":
        """Build from a square array whose entry (m, n) is the z^m coefficient of the image of z^n."""
        size = len(rows)
        return cls(
            {n: AnalyticPoly({m: rows[m][n] for m in range(size)}) for n in range(size)},
            size - 1,
        )

    @property
    def columns(self) -> dict[int, AnalyticPoly]:
        return dict(self._cols)

    def column(self, n: int) -> AnalyticPoly:
        return self._cols.get(n, AnalyticPoly())

    def entry(self, m: int, n: int) -> ExactComplex:
        return self.column(n).coeff(m)

    def apply(self, f: AnalyticPoly) -> AnalyticPoly:
        out: dict[int, ExactComplex] = {}
        for n, c in f.items():
            for m, v in self.column(n).items():
                out[m] = out.get(m, ZERO) + c * v
        return AnalyticPoly(out)

    def output_degree(self) -> int | None:
        degs = [c.degree for c in self._cols.values() if c]
        return max(degs) if degs else None

    def is_zero(self) -> bool:
        return not any(self._cols.values())

    def nonzero_columns(self) -> list[int]:
        return [n for n, c in self._cols.items() if c]

    def __eq__(self, other):
        if not isinstance(other, MonomialAction):
            return NotImplemented
        top = max(self.max_input_degree, other.max_input_degree)
        return all(self.column(n) == other.column(n) for n in range(top + 1))

    def __sub__(self, other: "MonomialAction") -> "MonomialAction":
        top = max(self.max_input_degree, other.max_input_degree)
        return MonomialAction({n: self.column(n) - other.column(n) for n in range(top + 1)}, top)

    def __repr__(self):
        return f"MonomialAction(max_input_degree={self.max_input_degree}, columns={self._cols!r})"


# inner product oracle --------------------------------------------------------


def monomial_inner(p: int, q: int, r: int, s: int) -> ExactComplex:
    """<z^p conj(z)^q, z^r conj(z)^s> for normalised area measure on the disc.

    In polar coordinates the integrand is rho^(p+q+r+s) e^{i(p-q-r+s)t}; the
    angular integral kills everything unless p + s == q + r, and then the
    radial part gives 2 * int rho^(2(p+s)+1) d rho = 1/(p+s+1).
    """
    if min(p, q, r, s) < 0:
        raise ValueError("monomial degrees must be non-negative")
    if p + s != q + r:
        return ZERO
    return ExactComplex(Fraction(1, p + s + 1))


def project_monomial(l: int, m: int) -> tuple[ExactComplex, int]:
    """Bergman projection of z^l conj(z)^m as (coefficient, degree)."""
    if l < 0 or m < 0:
        raise ValueError("monomial degrees must be non-negative")
    if l < m:
        return ZERO, 0
    return ExactComplex(Fraction(l - m + 1, l + 1)), l - m


# building blocks -------------------------------------------------------------


def hankel_action(phi: HarmonicSymbol, n: int) -> AnalyticPoly:
    """H_phi z^n = P J (phi z^n), using only the co-analytic coefficients.

    J(a_j conj(z)^j z^n) = a_j z^j conj(z)^n, which P sends to a multiple of
    z^(j-n) when j >= n.  The analytic part would give J(b_j z^(j+n)) =
    b_j conj(z)^(j+n), annihilated by P since j + n >= 1.
    """
    if n < 0:
        raise ValueError("input degree must be non-negative")
    out = {}
    for j, a in phi.anti.items():
        if j < n:
            continue
        c, deg = project_monomial(j, n)
        out[deg] = a * c
    return AnalyticPoly(out)


def hankel_apply(phi: HarmonicSymbol, f: AnalyticPoly) -> AnalyticPoly:
    out = AnalyticPoly()
    for n, c in f.items():
        out = out + hankel_action(phi, n).scale(c)
    return out


def w_action(k: int, f: AnalyticPoly) -> AnalyticPoly:
    """W_k: z^(kn) -> z^n, every other monomial -> 0."""
    _check_k(k)
    return AnalyticPoly({n // k: c for n, c in f.items() if n % k == 0})


def w_adjoint_action(k: int, m: int) -> tuple[ExactComplex, int]:
    """W_k^* z^m = ((km+1)/(m+1)) z^(km), as (coefficient, degree)."""
    _check_k(k)
    if m < 0:
        raise ValueError("input degree must be non-negative")
    return ExactComplex(Fraction(k * m + 1, m + 1)), k * m


def w_adjoint_apply(k: int, f: AnalyticPoly) -> AnalyticPoly:
    out = {}
    for m, c in f.items():
        w, deg = w_adjoint_action(k, m)
        out[deg] = c * w
    return AnalyticPoly(out)


def slant_action(phi: HarmonicSymbol, k: int, n: int) -> AnalyticPoly:
    """S_phi^k z^n = W_k H_phi z^n."""
    _check_k(k)
    return w_action(k, hankel_action(phi, n))


def slant_apply(phi: HarmonicSymbol, k: int, f: AnalyticPoly) -> AnalyticPoly:
    return w_action(k, hankel_apply(phi, f))


def build_monomial_action(phi: HarmonicSymbol, k: int, D: int) -> MonomialAction:
    """Columns 0..D-1 of S_phi^k."""
    _check_k(k)
    if D < 1:
        raise ValueError(f"block size must be >= 1, got {D}")
    return MonomialAction({n: slant_action(phi, k, n) for n in range(D)}, D - 1)


def adjoint_slant_action(phi: HarmonicSymbol, k: int, n: int) -> AnalyticPoly:
    """(S_phi^k)^* z^n = H_{hat phi} W_k^* z^n."""
    _check_k(k)
    w, deg = w_adjoint_action(k, n)
    return hankel_action(hat(phi), deg).scale(w)


def build_adjoint_action(phi: HarmonicSymbol, k: int, D: int) -> MonomialAction:
    _check_k(k)
    if D < 1:
        raise ValueError(f"block size must be >= 1, got {D}")
    return MonomialAction({n: adjoint_slant_action(phi, k, n) for n in range(D)}, D - 1)


def bergman_adjoint(A: MonomialAction, D: int) -> MonomialAction:
    """Adjoint of an action that preserves span{1, ..., z^(D-1)}.

    With ||z^n||^2 = 1/(n+1) the adjoint's z^m coefficient on z^n is
    conj(A[n, m]) * (m+1)/(n+1).
    """
    if A.output_degree() is not None and A.output_degree() >= D:
        raise ValueError("action leaves the block; adjoint would need a larger window")
    if any(n >= D for n in A.nonzero_columns()):
        raise ValueError("action has nonzero columns beyond the block")
    cols = {}
    for n in range(D):
        cols[n] = AnalyticPoly(
            {m: A.entry(n, m).conj() * Fraction(m + 1, n + 1) for m in range(D)}
        )
    return MonomialAction(cols, D - 1)
