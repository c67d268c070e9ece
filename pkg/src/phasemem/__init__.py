"""Phase-oscillator associative memory with a second-harmonic coupling term.

Hebbian two- and three-memory networks, their Jacobian spectra at bipolar
equilibria, RK4 simulation of the gradient flow, a basin certificate, and a
pairwise tournament for error-free retrieval of corrupted patterns.
"""

from .dynamics import (
    BasinCertificate,
    IntegratorConfig,
    Trajectory,
    basin_certificate,
    diameter,
    init_from_gray,
    integrate,
    shifted_coordinates,
    trajectory_table,
)
from .errors import *  # noqa: F401,F403
from .files import load_pattern, save_pattern
from .network import (
    HebbianNetwork,
    PhaseState,
    bipolar_state,
    build_network,
    overlap,
    overlaps,
    potential,
    rhs,
)
from .noise import FlipBits, Mask, UniformNoise, corrupt
from .patterns import (
    BinaryPattern,
    GrayPattern,
    index_sets_three,
    index_sets_two,
    sign_equivalent,
)
from .retrieval import InOrder, Seeded, TournamentConfig, retrieve_pair, subgroup, tournament
from .spectral import (
    CriticalEpsilon,
    SpectrumReport,
    StabilityVerdict,
    analytic_spectrum_memory_m2,
    analytic_spectrum_memory_m3,
    analytic_spectrum_pattern_m2,
    classify,
    critical_epsilon_m2,
    critical_epsilon_m3,
    jacobian,
    legacy_epsilon_lower_bound,
    numeric_spectrum,
)

__version__ = "0.1.0"
