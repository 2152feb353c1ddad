"""Desk-scale numerics for oscillatory-kernel operators on periodic grids.

Spectral quantization and adjoints, dyadic kernel probes, growth-allowed
weight and oscillation calculus, critical-cover maximal operators, and the
corpus-ratio experiments tying them together.
"""

from .config import DEFAULTS, ExperimentConfig, HypothesisViolation, load_config
from .corpus import (
    CorpusItem,
    band_noise,
    gaussian_corpus,
    gaussian_packet,
    mixed_corpus,
    noise_corpus,
)
from .function_classes import (
    ApThetaCharacteristic,
    BmoThetaNorm,
    StabilizationReport,
    WeightFn,
    ap_theta_characteristic,
    bmo_theta_norm,
    check_john_nirenberg_variant,
    check_monotonicity,
    check_openness,
    preset_bmo,
    preset_weight,
    stabilized_characteristic,
)
from .grid import (
    Ball,
    BallFamily,
    PeriodicGrid,
    SampledFunction,
    annulus_mask,
    ball_average,
    ball_indices,
    ball_integral,
    ball_mask,
    ball_measure,
    dft,
    idft,
    inner,
    lp_norm,
    make_grid,
    sample,
    sweep_family,
)
from .kernels import (
    AdjointKernelReport,
    DifferenceEstimate,
    DyadicKernel,
    adjoint_kernel_bounds,
    band_limited_twin,
    default_base_points,
    fit_decay_in_k,
    fit_difference_estimate,
    materialize_dyadic_kernel,
)
from .littlewood_paley import (
    LPFamily,
    derivative_bound_check,
    evaluate_partition_residual,
    make_lp_family,
)
from .maximal import (
    CriticalCover,
    build_critical_cover,
    check_fs_inequality,
    check_weighted_bounds_maximal,
    g_kappa_p,
    m_loc,
    m_sharp_loc,
    m_tilde_s,
)
from .operators import (
    OperatorInstance,
    adjoint_commutator,
    adjoint_kernel_row,
    apply,
    apply_adjoint,
    apply_dyadic_piece,
    commutator,
    kernel_column,
    kernel_point_spectrum,
    kernel_row,
    make_operator,
)
from .experiments import (
    VERIFY_TARGETS,
    run_all,
    run_bmo,
    run_boundedness_experiment,
    run_commutator_experiment,
    run_fs,
    run_kernel_decay,
    run_local_average_check,
    run_maximal,
    run_oscillation_check,
    run_weight_calculus,
)
from .report import (
    DecayFitReport,
    VerificationReport,
    config_hash,
    report_json_bytes,
    write_csv,
    write_report_json,
)
from .symbols import (
    ClassMembershipReport,
    SymbolSpec,
    dyadic_piece,
    estimate_class_membership,
    japanese_bracket,
    preset_symbol,
)

__version__ = "0.1.0"
