//! Zeta functions, scattering coefficients and the spectral bound evaluators.

mod flattening;
mod scattering;
mod selberg;
mod zeta;

pub use flattening::{
    bessel_k, bessel_k_scaled, cusp_decay_ratio, default_c_lambda0, flattening_budget, DecayMode,
    FaceBudget, FlatteningBudget, SpectralParams,
};
pub use scattering::{
    coprime_residue_count_brute, euler_factor, factor_u64, gaussian_prime_norms, gaussian_totient,
    lattice_sum_all_elements, lattice_sum_closed_form, lattice_sum_extrapolated,
    lattice_sum_oracle, phi_aa, pole_scan, zeta_ratio, PoleScan, MAX_ORACLE_RADIUS,
};
pub use selberg::{
    cover_cusp_term, deloc_bound, kernel_growth_terms, selberg_big_h, selberg_h,
    tangle_deloc_bound, CuspHeight,
};
pub use zeta::{
    dedekind_zeta_qi, dedekind_zeta_qi_continued, dirichlet_beta, dirichlet_eta,
    gaussian_lattice_zeta, riemann_zeta, riemann_zeta_continued, riemann_zeta_em,
};
