"""Quartic residue symbols, Gauss sums over Z[i], central Hecke L-values
and the smoothed first-moment experiment."""

from .gaussian import (
    Factorization,
    GaussianInt,
    IdealGen,
    divrem,
    enumerate_c_1mod16,
    enumerate_ideals,
    enumerate_primary,
    euler_phi_ideal,
    factor,
    gcd,
    is_primary,
    is_squarefree,
    moebius,
    norm,
    primary_associate,
)
from .characters import (
    QuarticValue,
    RayClassChar,
    chi_c_on_ideal,
    psi,
    psi_char,
    quartic_symbol,
    quartic_symbol_via_factorization,
    ray_class_group,
    reciprocity_check,
    supplement_1plusi,
    supplement_i,
)
from .gauss_sums import (
    GaussSumValue,
    e_tilde_exponent,
    gauss_sum,
    gauss_sum_fast,
    gauss_sum_g2,
    residue_system,
    root_number,
)
from .hseries import (
    HValue,
    IdentityInstance,
    IdentityReport,
    RDecomposition,
    decompose_r,
    h_alpha_truncated,
    h_f_truncated,
    h_star_truncated,
    h_truncated,
    p_of,
    verify_identity,
)
from .lfunctions import (
    LValue,
    functional_equation_check,
    incomplete_gamma_half,
    l_half,
    lambda_half,
    zeta_K,
    zeta_K_residue,
)
from .moment import (
    ConstantABreakdown,
    MomentReport,
    constant_A,
    first_moment,
    pv_ratio_report,
    sieve_ratio_report,
    sigma_split,
)

__version__ = "0.1.0"
