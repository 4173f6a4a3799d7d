"""N x N approximation of a particle on the line: Weyl operators, Gauss-sum
propagators, the lattice Lagrangian, and mutually unbiased bases."""

from .exceptions import DimensionError, DomainError, NotAnAutomorphismError, VerificationError
from .phase import SL2ZN, PhaseExponent, PhasePoint, phase_to_complex, sl2_act, sl2_mul
from .weyl import (
    HeisenbergElement,
    automorphism_to_sl2,
    build_generators,
    coset_of,
    heisenberg_mul,
    heisenberg_to_matrix,
)
from .propagator import (
    CN1,
    CN2,
    EvolutionKind,
    GaussSumSpec,
    PropagatorEntry,
    closed_form_step,
    evolution_diag,
    gauss_sum_direct,
    gauss_sum_reciprocal,
    lagrangian_dimensionless,
    multi_step_propagator,
    potential_step_matrix,
    step_position_matrix,
)
from .grid import (
    GridSpec,
    build_hamiltonian,
    compare_propagators,
    continuum_short_time,
    embed_state,
    grid_operators,
    grid_points,
    sample_potential,
    spectrum,
)
from .mub import (
    LabeledBasis,
    canonical_basis,
    eigenbasis_check,
    momentum_basis,
    mub_chain,
    unbiasedness,
)

__version__ = "0.1.0"
