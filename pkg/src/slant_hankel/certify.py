"""Certified roots of exact polynomials.

Roots are located with ``polyroots`` and polished by Newton's method in a
private high-precision context; each one is then certified with interval
arithmetic.  For a squarefree polynomial q of degree d and any point z,

    q'(z)/q(z) = sum_i 1/(z - r_i)   so   min_i |z - r_i| <= d |q(z)| / |q'(z)|,

hence a rigorous upper bound on |q(z)| and a lower bound on |q'(z)| give a
disc that provably contains a root.  If the d discs are pairwise disjoint,
every root is accounted for exactly once.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from mpmath.ctx_iv import MPIntervalContext
from mpmath.ctx_mp import MPContext

from .exact_poly import Poly, poly_trim, squarefree_decomposition
from .symbol_algebra import ExactComplex

__all__ = [
    "DEFAULT_PRECISION_BITS",
    "CertificationError",
    "CertifiedRoot",
    "precision_bits",
    "certified_roots",
]

DEFAULT_PRECISION_BITS = 256
RESIDUAL_WIDTH_LIMIT = 1e-20


class CertificationError(RuntimeError):
    """A root could not be certified at the requested precision."""


def precision_bits() -> int:
    raw = os.environ.get("SLANT_HANKEL_PRECISION_BITS", "")
    if not raw:
        return DEFAULT_PRECISION_BITS
    bits = int(raw)
    if bits < 64:
        raise ValueError("SLANT_HANKEL_PRECISION_BITS must be at least 64")
    return bits


@dataclass(frozen=True)
class CertifiedRoot:
    value: complex
    multiplicity: int
    residual: float  # rigorous upper bound on |p(value)| for the full polynomial
    residual_width: float  # width of the enclosing interval of p(value)
    radius: float  # a root of the squarefree factor lies within this distance


def _iv_coeff(iv, c: ExactComplex):
    def part(q: Fraction):
        return iv.mpf(q.numerator) / iv.mpf(q.denominator)

    return iv.mpc(part(c.re), part(c.im))


def _mp_coeff(ctx, c: ExactComplex):
    return ctx.mpc(ctx.mpf(c.re.numerator) / c.re.denominator, ctx.mpf(c.im.numerator) / c.im.denominator)


def _horner(coeffs, x):
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


def _abs_upper(iv, w) -> float:
    re = max(abs(w.real.a), abs(w.real.b))
    im = max(abs(w.imag.a), abs(w.imag.b))
    return iv.sqrt(re * re + im * im).b


def _abs_lower(iv, w):
    def lo(x):
        if x.a <= 0 <= x.b:
            return iv.mpf(0)
        return min(abs(x.a), abs(x.b))

    r, i = lo(w.real), lo(w.imag)
    return iv.sqrt(r * r + i * i).a


def _width(w) -> float:
    return float(max(w.real.delta.b, w.imag.delta.b))


def _locate(ctx, q: Poly):
    coeffs_hi = [_mp_coeff(ctx, c) for c in reversed(q)]
    if len(q) == 2:
        return [-coeffs_hi[1] / coeffs_hi[0]]
    roots = ctx.polyroots(coeffs_hi, maxsteps=400, extraprec=2 * ctx.prec)
    lo_first = [_mp_coeff(ctx, c) for c in q]
    deriv = [c * i for i, c in enumerate(lo_first)][1:]
    polished = []
    for r in roots:
        r = ctx.mpc(r)
        for _ in range(100):
            d = _horner(deriv, r)
            if not d:
                break  # leave it to the certification step to reject
            step = _horner(lo_first, r) / d
            r = r - step
            if abs(step) <= ctx.mpf(2) ** (-ctx.prec + 8) * (1 + abs(r)):
                break
        polished.append(r)
    return polished


def certified_roots(p: Poly, bits: int | None = None) -> list[CertifiedRoot]:
    """Certified nonzero roots of the exact polynomial ``p`` with multiplicities.

    Zero roots are removed exactly before any numerics.
    """
    bits = precision_bits() if bits is None else bits
    p = poly_trim(p)
    if not p:
        raise ValueError("the zero polynomial has no isolated roots")
    shift = next(i for i, c in enumerate(p) if c)
    p = p[shift:]
    if len(p) <= 1:
        return []

    ctx = MPContext()
    ctx.prec = bits
    iv = MPIntervalContext()
    iv.prec = bits
    full_iv = [_iv_coeff(iv, c) for c in p]

    out: list[CertifiedRoot] = []
    for factor, mult in squarefree_decomposition(p):
        deg = len(factor) - 1
        f_iv = [_iv_coeff(iv, c) for c in factor]
        df_iv = [c * i for i, c in enumerate(f_iv)][1:]
        discs = []
        for r in _locate(ctx, factor):
            z = iv.mpc(iv.mpf(r.real), iv.mpf(r.imag))
            val = _horner(f_iv, z)
            dval = _horner(df_iv, z) if df_iv else iv.mpc(1)
            low = _abs_lower(iv, dval)
            if not low > 0:
                raise CertificationError(f"derivative not bounded away from zero near {complex(r)}")
            radius = iv.mpf(deg) * iv.mpf(_abs_upper(iv, val)) / low
            full_val = _horner(full_iv, z)
            width = _width(full_val)
            if width >= RESIDUAL_WIDTH_LIMIT:
                raise CertificationError(
                    f"residual enclosure width {width:.3g} at {complex(r)} exceeds {RESIDUAL_WIDTH_LIMIT}"
                )
            discs.append((r, float(radius.b), float(_abs_upper(iv, full_val)), width))
        for i in range(len(discs)):
            for j in range(i + 1, len(discs)):
                gap = float(abs(discs[i][0] - discs[j][0]))
                if gap <= discs[i][1] + discs[j][1]:
                    raise CertificationError("inclusion discs overlap; increase precision")
        for r, radius, resid, width in discs:
            out.append(CertifiedRoot(complex(r), mult, resid, width, radius))
    return out
