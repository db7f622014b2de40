"""Topological pressure of B-free subshifts and periodic sandwich subshifts.

The package computes densities and Mirsky cylinder probabilities for finite
modulus sets B, closed-form pressures for 1- and 2-local potentials (and
4-local ones when 2 is in B), and checks every formula against brute-force
block enumeration and dynamic programming.
"""

from .config import RunConfig, configured, get_config
from .errors import (
    CoprimalityRequired,
    DegenerateModulusSet,
    EnumerationCap,
    MethodCap,
    NoFixedPosition,
    OrderViolation,
    PatternTooWide,
    PeriodOverflow,
    PressureError,
    Requires2,
    SimplexViolation,
    SubsetBlowup,
)
from .mirsky import (
    Sweep,
    gap_cylinder_coprime,
    mirsky_cylinder,
    mirsky_cylinder_exact,
    mirsky_ones_coprime,
    mirsky_pattern_coprime,
    mirsky_sweep,
)
from .numtheory import (
    ModulusSet,
    bfree_density,
    density_sweep,
    is_pairwise_coprime,
    lcm_of,
    multiples_density,
    primitive_reduce,
    reciprocal_bounds,
    reciprocal_sum,
    truncate,
)
from .oracle import (
    LanguageSpec,
    dp_shift_pressure,
    enumerate_blocks,
    naive_pressure,
    oracle_compare,
    single_period_pressure,
)
from .pressure import (
    PressureReport,
    entropy_value,
    equilibrium_cylinder,
    equilibrium_identity_check,
    lin_chen_2inB,
    pressure_4local_2inB,
    pressure_bfree_hereditary,
    pressure_from_gapstats,
    pressure_full_shift,
    pressure_one_hereditary,
    pressure_one_sandwich,
    pressure_periodic_sandwich,
    tempo_correction,
)
from .transfer import (
    Potential1,
    Potential2,
    Potential4,
    TransferData,
    build_transfer,
    det_zero_reduce,
    partition_Z,
    reduce_4local,
)
from .words import (
    CylinderPattern,
    GapStats,
    PeriodicWord,
    SandwichPair,
    cylinder_frequency,
    eta_stream,
    eta_word,
    gap_stats,
    minimal_period,
    sandwich_pair,
)

__version__ = "0.1.0"
