"""Pade / conformal-map noise-breakdown toolkit (python bindings)."""

from ._core import (  # noqa: F401
    Pade,
    Series,
    add_noise,
    binomial_series,
    build_pade,
    capacity_dN,
    compose_with_map,
    find_poles,
    find_z_inf,
    find_zeros,
    kink_scan,
    mcut_capacity,
    mcut_z_inf,
    painleve1_series,
    parse_bfile,
    phi36_series_from_bfile,
    predict_final,
    predict_nc1,
    predict_ncM,
    predict_resultM,
    psi_from_pade_diff,
    run,
    sigma_nk,
    sigma_nk_amplitude,
    spurious_onset,
    taylor_match_residual,
    variance_asymptotic,
    variance_exact,
    variance_exact_str,
    version,
)

__version__ = version()
