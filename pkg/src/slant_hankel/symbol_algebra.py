"""Exact complex-rational scalars and harmonic polynomial symbols.

A symbol is a finite harmonic polynomial on the unit disc

    phi(z) = sum_j a_j conj(z)^j + sum_{j>=1} b_j z^j

with every coefficient stored as an exact complex rational.
"""

from __future__ import annotations

import json
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

__all__ = [
    "ExactComplex",
    "HarmonicSymbol",
    "SymbolFormatError",
    "combine",
    "hat",
    "coanalytic_part",
    "linearly_dependent",
    "parse_rational",
    "symbol_from_json",
    "symbol_to_json",
    "load_symbol",
]

Scalar = Union["ExactComplex", int, Fraction, str, complex, float]


class SymbolFormatError(ValueError):
    """Raised when a symbol description cannot be parsed.

    ``key`` names the first offending JSON key (a dotted path) when known.
    """

    def __init__(self, message: str, key: str | None = None):
        super().__init__(message)
        self.key = key


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"7/3"``, ``"-0.25"`` or ``"1e-3"`` as an exact rational."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise TypeError(f"expected a rational string, got {type(text).__name__}")
    try:
        # Fraction parses decimal strings digit by digit, never via float
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {text!r}") from exc


class ExactComplex:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: int | Fraction | str = 0, im: int | Fraction | str = 0):
        object.__setattr__(self, "re", parse_rational(re))
        object.__setattr__(self, "im", parse_rational(im))

    def __setattr__(self, name, value):
        raise AttributeError("ExactComplex is immutable")

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "ExactComplex":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    @classmethod
    def coerce(cls, value: Scalar) -> "ExactComplex":
        """Convert ints, Fractions, rational strings and Python complex/float.

        Floats and complex values are converted through their exact binary
        value, so ``0.1`` is *not* one tenth; pass ``"0.1"`` for that.
        """
        if isinstance(value, ExactComplex):
            return value
        if isinstance(value, (bool,)):
            return cls._raw(Fraction(int(value)), Fraction(0))
        if isinstance(value, (int, Rational)):
            return cls._raw(Fraction(value), Fraction(0))
        if isinstance(value, str):
            return cls._raw(parse_rational(value), Fraction(0))
        if isinstance(value, float):
            return cls._raw(Fraction(value), Fraction(0))
        if isinstance(value, complex):
            return cls._raw(Fraction(value.real), Fraction(value.imag))
        raise TypeError(f"cannot convert {type(value).__name__} to ExactComplex")

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        try:
            o = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return ExactComplex._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return ExactComplex._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        try:
            o = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExactComplex._raw(self.re * other, self.im * other)
        try:
            o = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        if not o.im:
            return ExactComplex._raw(self.re * o.re, self.im * o.re)
        if not self.im:
            return ExactComplex._raw(self.re * o.re, self.re * o.im)
        return ExactComplex._raw(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __neg__(self):
        return ExactComplex._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def conj(self) -> "ExactComplex":
        return ExactComplex._raw(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Exact squared modulus."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "ExactComplex":
        n = self.abs2()
        if n == 0:
            raise ZeroDivisionError("inverse of exact zero")
        return ExactComplex._raw(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by exact zero")
            return ExactComplex._raw(self.re / other, self.im / other)
        try:
            o = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    # comparisons and conversion ------------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_zero(self) -> bool:
        return not self

    def __eq__(self, other):
        try:
            o = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        # Fraction -> float conversion is correctly rounded
        return complex(float(self.re), float(self.im))

    def to_pair(self) -> list[str]:
        return [str(self.re), str(self.im)]

    @classmethod
    def from_pair(cls, pair) -> "ExactComplex":
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise ValueError(f"expected [re, im] pair of rational strings, got {pair!r}")
        return cls(parse_rational(pair[0]), parse_rational(pair[1]))

    def __repr__(self):
        if not self.im:
            return f"ExactComplex({str(self.re)!r})"
        return f"ExactComplex({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


ZERO = ExactComplex()
ONE = ExactComplex(1)


def _clean(coeffs: Mapping[int, Scalar], min_degree: int, label: str) -> dict[int, ExactComplex]:
    out: dict[int, ExactComplex] = {}
    for deg, value in coeffs.items():
        deg = int(deg)
        if deg < min_degree:
            raise ValueError(f"{label} degree {deg} below {min_degree}")
        c = ExactComplex.coerce(value)
        if c:
            out[deg] = out[deg] + c if deg in out else c
            if not out[deg]:
                del out[deg]
    return dict(sorted(out.items()))


class HarmonicSymbol:
    """Finite harmonic polynomial symbol.

    ``anti`` maps j >= 0 to the coefficient of conj(z)^j, ``analytic`` maps
    j >= 1 to the coefficient of z^j.  Zero coefficients are never stored.
    Instances are immutable and hashable.
    """

    __slots__ = ("_anti", "_analytic", "_hash")

    def __init__(
        self,
        anti: Mapping[int, Scalar] | None = None,
        analytic: Mapping[int, Scalar] | None = None,
    ):
        self._anti = _clean(anti or {}, 0, "anti-analytic")
        self._analytic = _clean(analytic or {}, 1, "analytic")
        self._hash = None

    @classmethod
    def coanalytic(cls, coeffs: Iterable[Scalar]) -> "HarmonicSymbol":
        """Build sum_j coeffs[j] conj(z)^j from a dense coefficient list."""
        return cls(anti=dict(enumerate(coeffs)))

    @classmethod
    def partial_sum(cls, N: int) -> "HarmonicSymbol":
        """1 + conj(z) + ... + conj(z)^N."""
        return cls(anti={i: 1 for i in range(N + 1)})

    @classmethod
    def monomial(cls, i: int, coeff: Scalar = 1) -> "HarmonicSymbol":
        """coeff * conj(z)^i."""
        return cls(anti={i: coeff})

    @property
    def anti(self) -> dict[int, ExactComplex]:
        return dict(self._anti)

    @property
    def analytic(self) -> dict[int, ExactComplex]:
        return dict(self._analytic)

    def a(self, j: int) -> ExactComplex:
        return self._anti.get(j, ZERO)

    def b(self, j: int) -> ExactComplex:
        return self._analytic.get(j, ZERO)

    @property
    def anti_degree(self) -> int | None:
        """Largest j with a_j != 0, or None for an empty co-analytic part."""
        return max(self._anti) if self._anti else None

    @property
    def analytic_degree(self) -> int | None:
        return max(self._analytic) if self._analytic else None

    def is_zero(self) -> bool:
        return not self._anti and not self._analytic

    def is_coanalytic(self) -> bool:
        return not self._analytic

    def l1_norm(self) -> float:
        """Sum of coefficient moduli, an upper bound for the sup norm on the disc."""
        return sum(abs(complex(c)) for c in self._anti.values()) + sum(
            abs(complex(c)) for c in self._analytic.values()
        )

    def scale(self, alpha: Scalar) -> "HarmonicSymbol":
        return combine(alpha, self, 0, HarmonicSymbol())

    def __eq__(self, other):
        if not isinstance(other, HarmonicSymbol):
            return NotImplemented
        return self._anti == other._anti and self._analytic == other._analytic

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(self._anti.items()), tuple(self._analytic.items())))
        return self._hash

    def __repr__(self):
        terms = [f"({c})*zbar^{j}" for j, c in self._anti.items()]
        terms += [f"({c})*z^{j}" for j, c in self._analytic.items()]
        return f"HarmonicSymbol({' + '.join(terms) or '0'})"


def combine(
    alpha: Scalar, phi: HarmonicSymbol, beta: Scalar, zeta: HarmonicSymbol
) -> HarmonicSymbol:
    """Return ``alpha*phi + beta*zeta`` with zero coefficients pruned."""
    alpha = ExactComplex.coerce(alpha)
    beta = ExactComplex.coerce(beta)
    anti: dict[int, ExactComplex] = {}
    analytic: dict[int, ExactComplex] = {}
    for scale, sym in ((alpha, phi), (beta, zeta)):
        if not scale:
            continue
        for j, c in sym._anti.items():
            anti[j] = anti.get(j, ZERO) + scale * c
        for j, c in sym._analytic.items():
            analytic[j] = analytic.get(j, ZERO) + scale * c
    return HarmonicSymbol(anti, analytic)


def hat(phi: HarmonicSymbol) -> HarmonicSymbol:
    """Conjugate every coefficient; the little Hankel adjoint has this symbol."""
    return HarmonicSymbol(
        {j: c.conj() for j, c in phi._anti.items()},
        {j: c.conj() for j, c in phi._analytic.items()},
    )


def coanalytic_part(phi: HarmonicSymbol) -> HarmonicSymbol:
    """Drop the analytic coefficients b_j, which never reach the operator."""
    return HarmonicSymbol(phi._anti)


def _coefficient_vector(phi: HarmonicSymbol, keys) -> list[ExactComplex]:
    return [phi.a(j) if kind == "a" else phi.b(j) for kind, j in keys]


def linearly_dependent(phi: HarmonicSymbol, zeta: HarmonicSymbol) -> bool:
    """Exact test that some (alpha, beta) != (0, 0) gives alpha*phi + beta*zeta = 0.

    Two vectors are dependent iff every 2x2 minor of the 2 x n matrix they
    form vanishes.  Only minors against one pivot column need checking once
    a nonzero entry of ``phi`` is found, but the full check is cheap and is
    what is done here.
    """
    keys = sorted({("a", j) for j in phi._anti} | {("a", j) for j in zeta._anti})
    keys += sorted({("b", j) for j in phi._analytic} | {("b", j) for j in zeta._analytic})
    u = _coefficient_vector(phi, keys)
    v = _coefficient_vector(zeta, keys)
    n = len(keys)
    for s in range(n):
        for t in range(s + 1, n):
            if u[s] * v[t] - u[t] * v[s]:
                return False
    return True


# JSON -----------------------------------------------------------------------


def symbol_from_json(data: Mapping) -> HarmonicSymbol:
    """Parse ``{"anti": {"0": [re, im]}, "analytic": {"1": [re, im]}}``."""
    if not isinstance(data, Mapping):
        raise SymbolFormatError("symbol must be a JSON object", key="<root>")
    unknown = set(data) - {"anti", "analytic"}
    if unknown:
        bad = sorted(unknown)[0]
        raise SymbolFormatError(f"unexpected key {bad!r}", key=bad)
    parts = {}
    for part, min_deg in (("anti", 0), ("analytic", 1)):
        raw = data.get(part, {})
        if not isinstance(raw, Mapping):
            raise SymbolFormatError(f"{part!r} must be an object", key=part)
        coeffs = {}
        for key, pair in raw.items():
            path = f"{part}.{key}"
            if not isinstance(key, str) or not key.isdigit():
                raise SymbolFormatError(f"degree key {key!r} is not a decimal integer", key=path)
            deg = int(key)
            if deg < min_deg:
                raise SymbolFormatError(f"degree {deg} not allowed in {part!r}", key=path)
            try:
                coeffs[deg] = ExactComplex.from_pair(pair)
            except (ValueError, TypeError) as exc:
                raise SymbolFormatError(str(exc), key=path) from exc
        parts[part] = coeffs
    return HarmonicSymbol(parts["anti"], parts["analytic"])


def symbol_to_json(phi: HarmonicSymbol) -> dict:
    return {
        "anti": {str(j): c.to_pair() for j, c in phi._anti.items()},
        "analytic": {str(j): c.to_pair() for j, c in phi._analytic.items()},
    }


def load_symbol(path) -> HarmonicSymbol:
    """Read a symbol file; errors carry the path and the offending key."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SymbolFormatError(f"{path}: cannot read symbol file ({exc.strerror})") from exc
    except json.JSONDecodeError as exc:
        raise SymbolFormatError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    try:
        return symbol_from_json(data)
    except SymbolFormatError as exc:
        raise SymbolFormatError(f"{path}: key {exc.key!r}: {exc}", key=exc.key) from exc
