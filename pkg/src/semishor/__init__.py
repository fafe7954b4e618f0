"""Exact and coherent-state semiclassical simulation of Shor's algorithm.

Subpackages by role: numtheory (integer machinery), quantum (exact
amplitudes and gates), phasespace (classical spin dynamics), semiclassical
(coherent-state approximation), oracles (brute-force ground truth),
verify (invariant suites), cli (command-line pipeline).
"""

from .numtheory import (
    BitRegister,
    FactorSplit,
    NotCoprimeError,
    PeriodResult,
    bit_reverse,
    continued_fraction_candidates,
    convergent_is_close,
    extract_factors,
    h_coefficient,
    mod_exp,
    multiplicative_order,
)
from .phasespace import CoherentPoint, SpinTriple, evolve, j_functions, poisson_bracket
from .quantum import (
    DistributionTable,
    GateDescriptor,
    SemistateCoefficients,
    apply_gate_string,
    build_gate_string,
    good_c_values,
    qft_amplitude,
    qft_matrix,
    quantum_distribution,
    residue_bracket,
    shor_probability,
    shor_state,
)
from .semiclassical import (
    PAPER_FORMULA,
    STRICT_INTEGRAL,
    CoherentSymbol,
    SemiclassicalParams,
    coarse_grained_probability,
    half_width_zeta,
    htilde,
    integral_I,
    phi_symbol,
    ratio_R1,
    ratio_R2,
    reconstruct,
    semiclassical_distribution,
    semiclassical_probability,
    semistate,
    symbol_of,
    symbol_trace_integral,
)

__version__ = "0.1.0"
