"""Exact commutation tests for pairs S_phi^k, S_zeta^k.

Both operators kill z^n above their symbol's co-analytic degree, and each
maps span{1, ..., z^d} into itself.  So with d = max(deg phi, deg zeta) both
products S_phi S_zeta and S_zeta S_phi vanish on z^n for n > d, and the
commutator is decided by its exact action on 1, z, ..., z^d.
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .bergman_kernel import AnalyticPoly, MonomialAction, _check_k, slant_action, slant_apply
from .symbol_algebra import (
    ExactComplex,
    HarmonicSymbol,
    ZERO,
    coanalytic_part,
    linearly_dependent,
    symbol_to_json,
)

__all__ = [
    "HypothesisFlags",
    "CommutatorReport",
    "VerificationSummary",
    "commutator_action",
    "decide_commute",
    "hypothesis_flags",
    "random_coanalytic",
    "verify_theorem_equal_degree",
    "verify_lemma_tail_vanishing",
    "verify_theorem_unequal_degree",
]

NUMERATORS = range(-9, 10)
DENOMINATORS = range(1, 5)

# stream labels keep the random streams of different verifiers apart
_STREAM_EQUAL, _STREAM_DEPENDENT, _STREAM_LEMMA, _STREAM_UNEQUAL = 1, 2, 3, 4


@dataclass(frozen=True)
class HypothesisFlags:
    """Which hypotheses of the commutation results hold for (phi, zeta).

    ``n`` and ``m`` are the declared upper degrees of phi and zeta (the
    actual co-analytic degrees unless the caller overrides them), with
    n = k p1 + r1 and m = k p2 + r2.
    """

    n: int | None
    m: int | None
    equal_degrees: bool
    a_n_nonzero: bool
    b_n_nonzero: bool
    b_kp2_nonzero: bool
    b_m_nonzero: bool
    lemma_guard: bool  # a_{k p1}^2 + b_{k p2}^2 != 0, squares taken literally

    def to_json(self) -> dict:
        return asdict(self)


def hypothesis_flags(
    phi: HarmonicSymbol, zeta: HarmonicSymbol, k: int, n: int | None = None, m: int | None = None
) -> HypothesisFlags:
    n = phi.anti_degree if n is None else n
    m = zeta.anti_degree if m is None else m
    if n is None or m is None:
        return HypothesisFlags(n, m, n == m, False, False, False, False, False)
    kp1, kp2 = k * (n // k), k * (m // k)
    a, b = phi.a(kp1), zeta.a(kp2)
    return HypothesisFlags(
        n=n,
        m=m,
        equal_degrees=n == m,
        a_n_nonzero=bool(phi.a(n)),
        b_n_nonzero=bool(zeta.a(n)),
        b_kp2_nonzero=bool(b),
        b_m_nonzero=bool(zeta.a(m)),
        lemma_guard=bool(a * a + b * b),
    )


@dataclass(frozen=True)
class CommutatorReport:
    commute: bool
    dependent: bool
    witness: tuple[int, int, ExactComplex] | None  # (input degree, output degree, entry)
    hypothesis_flags: HypothesisFlags

    def to_json(self) -> dict:
        w = None
        if self.witness is not None:
            n, m, v = self.witness
            w = {"input_degree": n, "output_degree": m, "value": v.to_pair()}
        return {
            "commute": self.commute,
            "dependent": self.dependent,
            "witness": w,
            "hypothesis_flags": self.hypothesis_flags.to_json(),
        }


def _window(phi: HarmonicSymbol, zeta: HarmonicSymbol) -> int:
    degs = [d for d in (phi.anti_degree, zeta.anti_degree) if d is not None]
    return max(degs, default=0)


def commutator_action(phi: HarmonicSymbol, zeta: HarmonicSymbol, k: int) -> MonomialAction:
    """Exact S_phi S_zeta - S_zeta S_phi on z^0, ..., z^max(deg phi, deg zeta)."""
    _check_k(k)
    phi, zeta = coanalytic_part(phi), coanalytic_part(zeta)
    top = _window(phi, zeta)
    cols = {}
    for n in range(top + 1):
        lhs = slant_apply(phi, k, slant_action(zeta, k, n))
        rhs = slant_apply(zeta, k, slant_action(phi, k, n))
        cols[n] = lhs - rhs
    return MonomialAction(cols, top)


def decide_commute(phi: HarmonicSymbol, zeta: HarmonicSymbol, k: int) -> CommutatorReport:
    C = commutator_action(phi, zeta, k)
    witness = None
    for n in range(C.max_input_degree + 1):
        col = C.column(n)
        if col:
            m, v = next(iter(col.items()))
            witness = (n, m, v)
            break
    phi, zeta = coanalytic_part(phi), coanalytic_part(zeta)
    return CommutatorReport(
        commute=witness is None,
        dependent=linearly_dependent(phi, zeta),
        witness=witness,
        hypothesis_flags=hypothesis_flags(phi, zeta, k),
    )


# random trials ------------------------------------------------------------------


def _rng(seed: int, stream: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, stream, index])


def _random_scalar(rng: np.random.Generator, nonzero: bool = False) -> ExactComplex:
    while True:
        re, im = (int(x) for x in rng.integers(-9, 10, size=2))
        den = int(rng.integers(1, 5))
        c = ExactComplex(Fraction(re, den), Fraction(im, den))
        if c or not nonzero:
            return c


def random_coanalytic(rng: np.random.Generator, degree: int, nonzero=()) -> HarmonicSymbol:
    """Random co-analytic symbol of degree <= ``degree``; indices in ``nonzero`` are forced nonzero.

    Coefficients are Gaussian-integer numerators in [-9, 9]^2 over a
    denominator in 1..4.
    """
    req = set(nonzero)
    return HarmonicSymbol.coanalytic(_random_scalar(rng, j in req) for j in range(degree + 1))


@dataclass
class VerificationSummary:
    theorem: str
    k: int
    seed: int
    n: int
    m: int | None = None
    trials: int = 0
    agreements: int = 0
    dependent_trials: int = 0
    not_applicable: int = 0
    commuting_pairs: int = 0
    confirmations: int = 0
    coverage: str = ""
    counterexample: dict | None = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def to_json(self) -> dict:
        out = {"theorem": self.theorem, "n": self.n}
        if self.m is not None:
            out["m"] = self.m
        out.update(
            k=self.k, seed=self.seed, trials=self.trials, agreements=self.agreements,
            dependent_trials=self.dependent_trials, not_applicable=self.not_applicable,
        )
        if self.theorem == "lemma-tail-vanishing":
            out.update(commuting_pairs=self.commuting_pairs, confirmations=self.confirmations)
        if self.coverage:
            out["coverage"] = self.coverage
        out["counterexample"] = self.counterexample
        return out


def _dump(phi, zeta, rep: CommutatorReport, trial: int, note: str) -> dict:
    return {
        "trial": trial,
        "note": note,
        "phi": symbol_to_json(phi),
        "zeta": symbol_to_json(zeta),
        "report": rep.to_json(),
    }


def verify_theorem_equal_degree(
    n: int, k: int, trials: int, seed: int, dependent_trials: int = 10
) -> VerificationSummary:
    """commute <=> dependent on random equal-degree pairs with a_n, b_n != 0."""
    _check_k(k)
    if n < 0 or trials < 1:
        raise ValueError("need n >= 0 and trials >= 1")
    out = VerificationSummary("equal-degree", k, seed, n)
    for t in range(trials):
        rng = _rng(seed, _STREAM_EQUAL, t)
        phi = random_coanalytic(rng, n, {n})
        zeta = random_coanalytic(rng, n, {n})
        rep = decide_commute(phi, zeta, k)
        out.trials += 1
        if rep.commute == rep.dependent:
            out.agreements += 1
        elif out.counterexample is None:
            out.counterexample = _dump(phi, zeta, rep, t, "random pair")
    for t in range(dependent_trials):
        rng = _rng(seed, _STREAM_DEPENDENT, t)
        phi = random_coanalytic(rng, n, {n})
        zeta = phi.scale(_random_scalar(rng, nonzero=True))
        rep = decide_commute(phi, zeta, k)
        out.dependent_trials += 1
        if rep.commute and rep.dependent:
            out.agreements += 1
        elif out.counterexample is None:
            out.counterexample = _dump(phi, zeta, rep, t, "constructed dependent pair")
    return out


def _grid(n: int, m: int, limit: int):
    """(phi, zeta) with coefficients in {-1, 0, 1}, b_m != 0, at most ``limit`` pairs."""
    count = 0
    for zc in itertools.product((-1, 0, 1), repeat=m + 1):
        if zc[-1] == 0:
            continue
        zeta = HarmonicSymbol.coanalytic(zc)
        for pc in itertools.product((-1, 0, 1), repeat=n + 1):
            if count >= limit:
                return
            count += 1
            yield HarmonicSymbol.coanalytic(pc), zeta


def verify_lemma_tail_vanishing(
    n: int, m: int, k: int, seed: int, samples: int = 200, grid_limit: int = 20000
) -> VerificationSummary:
    """Check a_j = 0 (m < j <= n) on every commuting pair found.

    Pairs come from three sources: constructed commuting families (multiples
    of zeta, and phi = 0), random sparse pairs, and an exhaustive
    {-1, 0, 1} coefficient grid capped at ``grid_limit`` pairs.  Only pairs
    meeting b_m != 0 and the a_{kp1}^2 + b_{kp2}^2 != 0 guard are asserted.
    """
    _check_k(k)
    if not n > m >= 0:
        raise ValueError("need n > m >= 0")
    out = VerificationSummary("lemma-tail-vanishing", k, seed, n, m)

    def examine(phi, zeta, idx, note):
        flags = hypothesis_flags(phi, zeta, k, n, m)
        out.trials += 1
        if not (flags.b_m_nonzero and flags.lemma_guard):
            out.not_applicable += 1
            return
        rep = decide_commute(phi, zeta, k)
        if not rep.commute:
            return
        out.commuting_pairs += 1
        if all(not phi.a(j) for j in range(m + 1, n + 1)):
            out.confirmations += 1
        elif out.counterexample is None:
            out.counterexample = _dump(phi, zeta, rep, idx, note)

    for t in range(samples):
        rng = _rng(seed, _STREAM_LEMMA, t)
        zeta = random_coanalytic(rng, m, {m, k * (m // k)})
        kind = t % 3
        if kind == 0:
            phi = zeta.scale(_random_scalar(rng, nonzero=True))
        elif kind == 1:
            phi = HarmonicSymbol()
        else:
            mask = rng.random(n + 1) < 0.5
            phi = HarmonicSymbol.coanalytic(
                _random_scalar(rng) if keep else ZERO for keep in mask
            )
        examine(phi, zeta, t, ("multiple of zeta", "zero symbol", "random sparse")[kind])

    grid_total = (3 ** m * 2) * 3 ** (n + 1)
    examined = 0
    for idx, (phi, zeta) in enumerate(_grid(n, m, grid_limit)):
        examine(phi, zeta, idx, "grid")
        examined += 1
    out.coverage = (
        f"{samples} sampled pairs + {examined}/{grid_total} grid pairs over {{-1,0,1}}; "
        "only commuting pairs that were found are checked"
    )
    out.agreements = out.confirmations
    return out


def verify_theorem_unequal_degree(
    n: int, m: int, k: int, trials: int, seed: int, dependent_trials: int = 10
) -> VerificationSummary:
    """commute <=> dependent for deg phi = n > m = deg zeta with b_{kp2}, b_m != 0.

    Dependent pairs zeta = gamma phi have equal degrees and so never meet the
    hypotheses; they are counted as not applicable.
    """
    _check_k(k)
    if not n > m >= 0 or trials < 1:
        raise ValueError("need n > m >= 0 and trials >= 1")
    out = VerificationSummary("unequal-degree", k, seed, n, m)
    kp2 = k * (m // k)
    for t in range(trials):
        rng = _rng(seed, _STREAM_UNEQUAL, t)
        phi = random_coanalytic(rng, n, {n})
        zeta = random_coanalytic(rng, m, {m, kp2})
        rep = decide_commute(phi, zeta, k)
        out.trials += 1
        if rep.commute == rep.dependent:
            out.agreements += 1
        elif out.counterexample is None:
            out.counterexample = _dump(phi, zeta, rep, t, "random pair")
    for t in range(dependent_trials):
        rng = _rng(seed, _STREAM_DEPENDENT, 10_000 + t)
        phi = random_coanalytic(rng, n, {n})
        zeta = phi.scale(_random_scalar(rng, nonzero=True))
        rep = decide_commute(phi, zeta, k)
        flags = rep.hypothesis_flags
        out.dependent_trials += 1
        if flags.n > flags.m:
            raise AssertionError("a dependent pair cannot have unequal degrees")
        out.not_applicable += 1
        if rep.commute and rep.dependent:
            out.agreements += 1
        elif out.counterexample is None:
            out.counterexample = _dump(phi, zeta, rep, t, "constructed dependent pair")
    return out
