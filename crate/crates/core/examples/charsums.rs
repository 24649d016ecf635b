//! Legendre and Soto-Andrade sums, the orthogonal basis they form, and the
//! expansion of `f(x) = phi(1-x) P_phi(x)` in it.
//!
//! `cargo run --example charsums -- 13`

use psl_ekr::charsums::{f_function, f_norm_sq_closed, l2_inner, OrthogonalBasisL};
use psl_ekr::cyclotomic::CycNum;
use psl_ekr::field::FieldCtx;

fn main() -> psl_ekr::Result<()> {
    let q: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(13);
    let f = FieldCtx::for_order(q)?;
    let basis = OrthogonalBasisL::build(&f);
    println!(
        "basis of {} functions, Gram matrix diagonal with predicted norms: {}",
        basis.elements.len(),
        basis.check_gram(&f)
    );
    for b in &basis.elements {
        println!("  |{}|^2 = {}", b.kind.name(), b.norm_sq);
    }

    let ff = f_function(&f);
    let norm = l2_inner(&f, &ff, &ff)?;
    println!("|f|^2 = {norm} (closed form {})", f_norm_sq_closed(q));
    let coeffs = basis.squared_coefficients(&f, &ff)?;
    let mut total = CycNum::zero(1);
    for (kind, c) in &coeffs {
        println!(
            "  |<f, {}>|^2 / |b|^2 = {:.6}",
            kind.name(),
            c.to_complex().re
        );
        total = total + c.clone();
    }
    println!(
        "sum of squared coefficients equals |f|^2: {}",
        total == norm
    );
    Ok(())
}
