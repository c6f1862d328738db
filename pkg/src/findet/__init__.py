"""Finite determinacy of ideals, power series and matrices over Q and F_p."""

from .determinacy import (
    DeterminacyReport,
    FittingCheck,
    Verdict,
    classify_column_g,
    classify_contact,
    classify_matrix,
    classify_right,
    extended_codim,
    fitting_height_check,
    icis_check,
    milnor,
    perturbation_probe,
    tjurina,
)
from .field import GF, QQ, CoefficientField
from .localbasis import (
    Ideal,
    StandardBasis,
    Submodule,
    UnitIdeal,
    k_dim,
    krull_dim_and_height,
    m_primary_exponent,
    minimal_generators,
    normal_form,
    standard_basis,
)
from .matrixops import GroupElement, PolyMatrix, act_group, fitting_ideal, jacobian, tangent_image
from .polyring import INF, Automorphism, LocalOrdering, Polynomial, PolyRing
from .problem import parse_problem

__version__ = "0.1.0"
