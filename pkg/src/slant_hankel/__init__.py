"""k-th order slant little Hankel operators on the Bergman space.

Exact monomial-basis actions, orthonormal-basis matrices, certified point
spectra and exact commutation decisions for harmonic polynomial symbols.
"""

from .bergman_kernel import (
    AnalyticPoly,
    MonomialAction,
    build_monomial_action,
    hankel_action,
    monomial_inner,
    project_monomial,
    slant_action,
    w_action,
    w_adjoint_action,
)
from .commutativity import (
    CommutatorReport,
    commutator_action,
    decide_commute,
    verify_lemma_tail_vanishing,
    verify_theorem_equal_degree,
    verify_theorem_unequal_degree,
)
from .exact_poly import CharPoly, char_poly_exact
from .operator_matrices import (
    ComplexMatrix,
    adjoint,
    from_monomial_action,
    hankel_matrix,
    slant_matrix,
    slant_matrix_composed,
    w_matrix,
)
from .spectral_analysis import (
    Monomial,
    PartialSum,
    ProofCase,
    SpectrumReport,
    Status,
    adjoint_point_spectrum_check,
    eigenvalues_numerical,
    eigenvector_from_proof,
    point_spectrum_closed_form,
    point_spectrum_oracle,
)
from .symbol_algebra import (
    ExactComplex,
    HarmonicSymbol,
    coanalytic_part,
    combine,
    hat,
    linearly_dependent,
)

__version__ = "0.1.0"
