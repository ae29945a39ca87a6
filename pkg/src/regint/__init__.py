"""Regular integers modulo n and the counting function V(n)."""

from .arith import (
    ArithProfile,
    Factorization,
    factorize,
    gcd,
    is_prime,
    is_regular,
    phi_of,
    psi_of,
    reg_set,
    sigma_of,
    v_of,
)
from .density import DensityApproximation, evaluate_ratio, greedy_subseries, term
from .sieve import RangeScanResult, batch_profiles, scan, spf_sieve
from .witness import (
    SearchExhausted,
    WidthError,
    WitnessReport,
    dirichlet_prime,
    linnik_witness_liminf,
    linnik_witness_limsup,
    prop1_ascending_witness,
    prop1_descending_witness,
    prop3_gap_witness,
)

__version__ = "0.1.0"
