"""Belief-propagation decoding of quantum data-syndrome stabilizer codes.

The package covers the full simulation pipeline: GF(2) and Pauli algebra,
hypergraph-product and data-syndrome code construction, Tanner graphs,
scalar-message quaternary BP with parallel and serial schedules, error
channel sampling, and a reproducible Monte Carlo campaign harness.
"""

from .channels import ChannelParams, measure_with_votes, sample_bsc, sample_depolarizing
from .codes import (
    CssPair,
    DsCheckMatrix,
    StabilizerCode,
    bch_parity_matrix,
    built_in_code,
    css_to_stabilizer,
    distance3_conditions,
    ds_extend,
    ds_min_distance_bounded,
    fix_column_weights,
    hp_129_28,
    hypergraph_product,
)
from .decoder import (
    BpState,
    DecodeResult,
    DegenerateNodeError,
    Priors,
    decode_parallel,
    decode_serial,
    init_priors,
    marginals,
)
from .pauli import DsError, PauliString, commute, ds_inner, noisy_syndrome, pauli_mul, syndrome
from .sim import (
    BddParams,
    FidelityParams,
    StopRule,
    TrialStats,
    bdd_curve,
    fidelity_lambda,
    is_logical_error,
    rescale_by_fidelity,
    run_campaign,
    wilson_interval,
)
from .tanner import TannerGraph, build as build_tanner_graph

__version__ = "0.1.0"
