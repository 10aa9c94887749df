import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from slant_hankel.bergman_kernel import AnalyticPoly, MonomialAction, build_monomial_action
from slant_hankel.operator_matrices import (
    ComplexMatrix,
    adjoint,
    from_monomial_action,
    hankel_matrix,
    slant_matrix,
    slant_matrix_composed,
    w_matrix,
)
from slant_hankel.symbol_algebra import HarmonicSymbol, combine, hat

from conftest import coanalytic_symbols, exact_complex, harmonic_symbols

A = HarmonicSymbol.coanalytic([1, 2, 3, 4, 5, 6, 7])  # a_j = j + 1


def test_hankel_displayed_entries():
    H = hankel_matrix(A, 4)
    assert H[0, 0] == 1
    assert abs(H[1, 1] - 2 / 3 * 3) < 1e-15
    assert abs(H[2, 1] - math.sqrt(6) / 4 * 4) < 1e-15


def test_w_matrix_entries():
    W = w_matrix(2, 4)
    assert W.shape == (4, 7)
    assert W[0, 0] == 1
    assert abs(W[1, 2] - math.sqrt(3) / math.sqrt(2)) < 1e-15
    a = W.to_numpy()
    for n in range(4):
        for c in range(7):
            if c != 2 * n:
                assert a[n, c] == 0


def test_slant_displayed_entries():
    for k in (2, 3, 4):
        S = slant_matrix(A, k, 3)
        assert S[0, 0] == 1
        assert abs(S[1, 0] - (k + 1) / math.sqrt(2)) < 1e-15
    S = slant_matrix(HarmonicSymbol.coanalytic([1, 1, 1]), 2, 6)
    assert np.all(S.to_numpy()[:, 3:] == 0)


def test_slant_examples():
    assert not np.any(slant_matrix_composed(HarmonicSymbol(), 3, 5).to_numpy())
    phi = HarmonicSymbol.partial_sum(3)
    assert np.max(np.abs(slant_matrix_composed(phi, 2, 4).to_numpy() - slant_matrix(phi, 2, 4).to_numpy())) < 1e-12
    assert slant_matrix(phi, 2, 1).to_numpy().tolist() == [[1]]


def test_from_monomial_action_examples():
    ident = MonomialAction({n: AnalyticPoly.monomial(n) for n in range(4)}, 3)
    assert np.array_equal(from_monomial_action(ident, 4).to_numpy(), np.eye(4))
    M = from_monomial_action(build_monomial_action(HarmonicSymbol.monomial(2), 2, 3), 3)
    assert abs(M[1, 0] - 1 / math.sqrt(2)) < 1e-15
    assert not np.any(from_monomial_action(MonomialAction({}, 2), 3).to_numpy())
    with pytest.raises(ValueError):
        from_monomial_action(ident, 5)


@given(coanalytic_symbols(max_degree=12), st.integers(2, 5), st.integers(1, 10))
def test_three_routes_agree(phi, k, D):
    S = slant_matrix(phi, k, D).to_numpy()
    assert np.max(np.abs(slant_matrix_composed(phi, k, D).to_numpy() - S), initial=0) < 1e-12
    exact = from_monomial_action(build_monomial_action(phi, k, D), D).to_numpy()
    assert np.max(np.abs(exact - S), initial=0) < 1e-12


@given(harmonic_symbols(max_degree=10), st.integers(1, 12))
def test_hankel_symmetric_and_adjoint(phi, D):
    H = hankel_matrix(phi, D)
    assert np.array_equal(H.to_numpy(), H.to_numpy().T)
    assert np.max(np.abs(hankel_matrix(hat(phi), D).to_numpy() - adjoint(H).to_numpy()), initial=0) < 1e-12


@given(harmonic_symbols(), harmonic_symbols(), exact_complex, exact_complex, st.integers(2, 5))
def test_slant_matrix_linear(phi, zeta, alpha, beta, k):
    D = 8
    lhs = slant_matrix(combine(alpha, phi, beta, zeta), k, D).to_numpy()
    rhs = complex(alpha) * slant_matrix(phi, k, D).to_numpy() + complex(beta) * slant_matrix(zeta, k, D).to_numpy()
    scale = max(1.0, np.max(np.abs(rhs)))
    assert np.max(np.abs(lhs - rhs)) <= 1e-15 * scale * 8


@given(harmonic_symbols(max_degree=10), st.integers(2, 5))
def test_norm_bound(phi, k):
    # ||S|| <= sqrt(k) ||phi||_inf <= sqrt(k) * sum |coefficients|
    S = slant_matrix(phi, k, 12).to_numpy()
    assert np.linalg.norm(S, 2) <= math.sqrt(k) * phi.l1_norm() + 1e-12
    assert np.linalg.norm(hankel_matrix(phi, 12).to_numpy(), 2) <= phi.l1_norm() + 1e-12


@pytest.mark.parametrize("k", range(2, 6))
def test_w_singular_values(k):
    s = np.linalg.svd(w_matrix(k, 40).to_numpy(), compute_uv=False)
    want = np.sqrt([(k * n + 1) / (n + 1) for n in range(40)])[::-1]
    assert np.max(np.abs(s - want)) < 1e-12


def test_analytic_part_does_not_appear():
    phi = HarmonicSymbol({0: 1, 3: 2})
    psi = HarmonicSymbol({0: 1, 3: 2}, {1: 5, 2: -1})
    assert slant_matrix(phi, 3, 6) == slant_matrix(psi, 3, 6)
    assert hankel_matrix(phi, 6) == hankel_matrix(psi, 6)


def test_serialisation():
    M = ComplexMatrix([[1, 0.5j], [-2.25, 1 / 3]])
    assert ComplexMatrix.from_json(json.loads(json.dumps(M.to_json()))) == M
    lines = M.to_csv().splitlines()
    assert lines[0] == "1+0i,0+0.5i"
    assert lines[1].startswith("-2.25+0i,0.33333333333333331+0i")
    with pytest.raises(ValueError):
        ComplexMatrix([[np.nan]])
    with pytest.raises(ValueError):
        ComplexMatrix.from_json({"rows": 2, "cols": 2, "entries": [[1, 0]]})


def test_matrix_is_read_only():
    M = slant_matrix(A, 2, 3)
    with pytest.raises(ValueError):
        M.to_numpy()[0, 0] = 5


@pytest.mark.parametrize("bad", [0, -1, 2.5])
def test_dimension_validation(bad):
    with pytest.raises(ValueError):
        slant_matrix(A, 2, bad)
    with pytest.raises(ValueError):
        hankel_matrix(A, bad)
