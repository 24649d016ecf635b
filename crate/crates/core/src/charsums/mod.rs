//! Character sums on `GF(q)`: Legendre and Soto-Andrade sums in a weighted
//! `l2` space, and finite-field hypergeometric functions.

pub mod hypergeometric;
pub mod l2;

pub use hypergeometric::{
    f_pgamma_identity, four_f_three_at_one, four_f_three_bound, greene_2f1, greene_nfn,
    greene_nfn_table, katz_conversion, katz_hq, katz_parameters, product_sum_sides,
    FourFThreeBound,
};
pub use l2::{
    f_function, f_norm_sq_closed, l2_inner, legendre_function, legendre_sum,
    phi_sum_x_plus_inverse, rational, soto_andrade_function, soto_andrade_sum, BasisKind,
    L2Function, Measure, OrthogonalBasisL,
};
