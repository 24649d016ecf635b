//! The derangement matrix `M` of `PSL(2,q)`, its Gram matrix `N = M^T M`,
//! exact ranks, the kernel vectors `l_{a,b}`, `r_{a,b}`, and the sums
//! `T_{N,chi}` that certify `rank(M) = q(q-1)`.

mod gram;
mod linalg;
mod report;
mod tsums;

pub use gram::{
    build_m, build_n_bruteforce, kernel_vectors, ClosedFormN, DerangementGram, DerangementMatrix,
    EntryCase, KernelVectors, OmegaIndex,
};
pub use linalg::{bareiss_rank, exact_rank};
pub use report::{
    verify_theorem2, CharacterVerdict, DimensionLedger, Theorem2Report, DEFAULT_RANK_MAX_Q,
};
pub use tsums::{
    constrained_char_sum, eta_margin, f_coefficient, f_form_closed, frobenius_side_sums,
    lemma7_assembly, psi_margin, restricted_char_sum, restricted_char_sum_oriented,
    shifted_product_closed, swap_sum_closed, t_lambda1_closed, t_n_chi_closed, t_n_chi_direct,
    t_n_chi_direct_oriented, zero_inf_one_closed, Constraint, Margin, Orientation,
};
