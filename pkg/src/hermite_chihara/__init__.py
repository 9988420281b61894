"""Generalized Hermite (Hermite-Chihara) orthogonal polynomial systems.

Construct systems from governing sequences, realize their derivation operators
and oscillator algebras, and verify the defining identities exactly (rational
arithmetic) or numerically (quadrature, truncated matrices).
"""

from .governing import (
    ConstructionError,
    GoverningSequence,
    ValidationReport,
    bracket_table,
    gamma_coeffs,
    gamma_squares,
    is_special_family,
    recurrence_coeffs,
    recurrence_squares,
    seq_classical,
    seq_family,
    seq_hermite,
    seq_order2,
    seq_order3,
    validate,
)
from .derivation import DerivationOperator, OrderVerdict, Poly, epsilons_from_sequence, poly
from .systems import (
    DecompositionReport,
    NormalizedPoly,
    PolynomialSystem,
    UnsupportedSystemError,
    alpha_closed,
    alpha_nested,
    alpha_table_entry,
)
from .oscillator import (
    CommutatorReport,
    OperatorSet,
    SpectrumReport,
    build_operators,
    commutator_report,
    hamiltonian_mixed_form_deviation,
    spectrum_report,
    square_lowering_report,
)
from .measure import (
    DeterminacyReport,
    MeasureSpec,
    OrthonormalityReport,
    carleman_determinacy,
    gram_deviation,
    jacobi_moment,
    moment_closed,
    moments,
    normalization,
    orthonormality_check,
    spec_for_system,
)

__version__ = "0.1.0"
