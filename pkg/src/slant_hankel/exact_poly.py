"""Exact univariate polynomials over Q(i) and the characteristic-polynomial oracle.

Polynomials are tuples of :class:`ExactComplex`, lowest degree first, with
no trailing zeros (the zero polynomial is the empty tuple).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bergman_kernel import MonomialAction
from .symbol_algebra import ExactComplex, ONE, ZERO

__all__ = [
    "CharPoly",
    "char_poly_exact",
    "poly_trim",
    "poly_eval",
    "poly_derivative",
    "poly_divmod",
    "poly_gcd",
    "poly_monic",
    "squarefree_decomposition",
]

Poly = tuple  # tuple[ExactComplex, ...], low -> high


def poly_trim(coeffs: Sequence) -> Poly:
    c = [ExactComplex.coerce(x) for x in coeffs]
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def poly_eval(p: Poly, x):
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_derivative(p: Poly) -> Poly:
    return poly_trim([c * i for i, c in enumerate(p)][1:])


def poly_monic(p: Poly) -> Poly:
    if not p:
        raise ZeroDivisionError("zero polynomial has no monic form")
    inv = p[-1].inverse()
    return tuple(c * inv for c in p)


def poly_sub(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return poly_trim(
        [(p[i] if i < len(p) else ZERO) - (q[i] if i < len(q) else ZERO) for i in range(n)]
    )


def poly_divmod(p: Poly, d: Poly) -> tuple[Poly, Poly]:
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    lead_inv = d[-1].inverse()
    q = [ZERO] * max(len(p) - len(d) + 1, 0)
    for shift in range(len(p) - len(d), -1, -1):
        c = r[shift + len(d) - 1] * lead_inv
        q[shift] = c
        if c:
            for i, dc in enumerate(d):
                r[shift + i] = r[shift + i] - c * dc
    return poly_trim(q), poly_trim(r[: len(d) - 1])


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm (gcd(0, 0) = 0)."""
    a, b = poly_trim(p), poly_trim(q)
    while b:
        a, b = b, poly_divmod(a, b)[1]
        if b:
            b = poly_monic(b)
    return poly_monic(a) if a else ()


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: p = lc * prod f_i^i with each f_i monic and squarefree.

    Returns the (f_i, i) with deg f_i >= 1.
    """
    p = poly_monic(poly_trim(p))
    if len(p) <= 1:
        return []
    dp = poly_derivative(p)
    a = poly_gcd(p, dp)
    b = poly_divmod(p, a)[0]
    c = poly_divmod(dp, a)[0]
    d = poly_sub(c, poly_derivative(b))
    out = []
    i = 1
    while len(b) > 1:
        a = poly_gcd(b, d) if d else b
        if len(a) > 1:
            out.append((a, i))
        b = poly_divmod(b, a)[0]
        c = poly_divmod(d, a)[0]
        d = poly_sub(c, poly_derivative(b))
        i += 1
    return out


@dataclass(frozen=True)
class CharPoly:
    """Monic characteristic polynomial det(lambda I - A), coefficients low -> high."""

    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs or self.coeffs[-1] != ONE:
            raise ValueError("characteristic polynomial must be monic")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def zero_multiplicity(self) -> int:
        """Exact multiplicity of the root 0 (number of vanishing low coefficients)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise AssertionError("monic polynomial has a nonzero coefficient")

    def nonzero_factor(self) -> Poly:
        """The monic factor carrying every nonzero root."""
        return self.coeffs[self.zero_multiplicity():]

    def conj(self) -> "CharPoly":
        return CharPoly(tuple(c.conj() for c in self.coeffs))

    def __call__(self, x):
        return poly_eval(self.coeffs, x)

    def __str__(self):
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mon = "" if i == 0 else ("λ" if i == 1 else f"λ^{i}")
            if i and c == ONE:
                terms.append(mon)
            elif i and c == -ONE:
                terms.append("-" + mon)
            else:
                cs = f"({c})" if c.im and c.re else str(c)
                terms.append(f"{cs}{'*' if mon else ''}{mon}")
        return " + ".join(terms).replace("+ -", "- ")


def _block_rows(A: MonomialAction, D: int) -> list[dict[int, ExactComplex]]:
    rows: list[dict[int, ExactComplex]] = [dict() for _ in range(D)]
    for n in range(D):
        for m, v in A.column(n).items():
            rows[m][n] = v
    return rows


def char_poly_exact(A: MonomialAction, D: int) -> CharPoly:
    """Faddeev-LeVerrier on the D x D block of an exact action.

    The block must contain the whole action: no nonzero column at index
    >= D and no image of degree >= D.  Then the nonzero roots are the
    nonzero point spectrum of the operator itself.
    """
    if D < 1:
        raise ValueError("block size must be >= 1")
    bad_cols = [n for n in A.nonzero_columns() if n >= D]
    if bad_cols:
        raise ValueError(f"block size {D} below finite-rank block: column {bad_cols[0]} is nonzero")
    out_deg = A.output_degree()
    if out_deg is not None and out_deg >= D:
        raise ValueError(f"block size {D} below finite-rank block: image reaches degree {out_deg}")

    rows = _block_rows(A, D)
    coeffs = [ZERO] * (D + 1)
    coeffs[D] = ONE
    # M_k = A M_{k-1} + c_{D-k+1} I, c_{D-k} = -tr(A M_k)/k; M stored densely
    M = [[ZERO] * D for _ in range(D)]
    for step in range(1, D + 1):
        c_prev = coeffs[D - step + 1]
        if step == 1:
            M = [[ONE if i == j else ZERO for j in range(D)] for i in range(D)]
        else:
            M = [row[:] for row in AM]
            for i in range(D):
                M[i][i] = M[i][i] + c_prev
        AM = [[ZERO] * D for _ in range(D)]
        for i, row in enumerate(rows):
            if not row:
                continue
            out = AM[i]
            for l, a in row.items():
                Ml = M[l]
                for j in range(D):
                    if Ml[j]:
                        out[j] = out[j] + a * Ml[j]
        trace = ZERO
        for i in range(D):
            trace = trace + AM[i][i]
        coeffs[D - step] = -(trace / Fraction(step))
    return CharPoly(tuple(coeffs))
