"""Statistics of noninteracting identical particles in modes.

Builds occupation bases, removal and transformation matrices, checks the
physicality conditions (double stochasticity, no-interaction, evolution
principle), and compares against boson and quon beam-splitter statistics.
"""
from .basis import (
    DEFAULT_TOL,
    ModeBasis,
    ProbVector,
    TransitionMatrix,
    enumerate_basis,
    index_of,
    validate_stochastic,
)
from .errors import (
    DomainError,
    GPTError,
    InfeasibleParametersError,
    ParseError,
    StateNotFoundError,
    StructuralError,
    UnnormalizableStateError,
)
from .permanent import BACKEND, permanent
from .physicality import (
    PhysicalityReport,
    characterize_2x2,
    check_all,
    check_double_stochastic,
    check_evolution,
    check_no_interaction,
    family_matrix,
    single_family_matrix,
    three_param_matrix,
)
from .quantum import boson_transition_matrix, bs_unitary, realize
from .quon import (
    QuonModel,
    check_quon_evolution,
    quon_norm,
    quon_statistics,
    quon_transition_matrix,
)
from .removal import removal_chain, removal_matrix

__version__ = "0.1.0"
