"""Symplectic fermions at c = -2: exact mode algebra and domain correlators."""

from .fockspace import (
    BasisWord,
    Bidegree,
    Generator,
    Parity,
    Species,
    State,
    apply_generator,
    automorphism_alpha,
    bidegree_of,
    chi,
    chibar,
    enumerate_basis,
    eta,
    etabar,
    ground_state,
    normal_order,
    parity_of,
)
from .virasoro import (
    DefectReport,
    VirasoroMode,
    commutator_defect,
    gaberdiel_kausch_defect,
    jordan_defect,
    mixed_commutator_defect,
    staggered_verify,
    sugawara,
)
from .geometry import (
    Domain,
    GreenValue,
    conformal_radius,
    green,
    green_dz,
    green_dzbar,
    green_regular_diagonal,
    make_domain,
    mobius_of,
)
from .correlators import (
    CorrelatorQuery,
    GroundInsertion,
    Kind,
    covariance_check,
    fer_correlator,
    general_correlator,
    ground_correlator,
    mode_extract,
)
from .exprdsl import ExprError, parse_query, parse_state, render

__version__ = "0.1.0"
