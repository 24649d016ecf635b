//! Finite-field hypergeometric functions: Legendre sums as 2F1 values, the
//! 4F3 bound and its conversion to a Katz sum.
//!
//! `cargo run --example hypergeometric -- 13`

use psl_ekr::characters::{enumerate_gamma_set, MultCharFq};
use psl_ekr::charsums::{
    four_f_three_bound, greene_2f1, katz_conversion, legendre_sum, product_sum_sides,
};
use psl_ekr::field::FieldCtx;

fn main() -> psl_ekr::Result<()> {
    let q: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(13);
    let f = FieldCtx::for_order(q)?;
    let eps = MultCharFq::trivial(q);
    let half = f.inv(f.from_int(2))?;

    for g in enumerate_gamma_set(q) {
        let agree = f
            .elements()
            .filter(|&a| a != f.one() && a != f.from_int(-1))
            .all(|a| {
                legendre_sum(&f, &g, a)
                    == greene_2f1(&f, &g, &g.inverse(), &eps, f.mul(f.sub(f.one(), a), half))
            });
        let (lhs, rhs) = product_sum_sides(&f, &g);
        println!(
            "gamma of order {:>2}: P = 2F1 everywhere: {agree}, 4F3 product sum holds: {}",
            g.order(),
            lhs == rhs
        );
    }

    for n in [2u32, 3, 4, 6]
        .into_iter()
        .filter(|n| (q - 1).is_multiple_of(*n))
    {
        let g = MultCharFq::new(q, ((q - 1) / n) as i64);
        let b = four_f_three_bound(&f, &g);
        println!(
            "n = {n}: |q^3 4F3 + phi(-1)gamma(-1)q|^2 = {:.3} <= 4q^3 = {}: {}",
            b.abs_sq.to_complex().re,
            b.bound_sq,
            b.holds
        );
        let (lhs, rhs) = katz_conversion(&f, n, 1)?;
        println!("        -q^3 4F3 = H_q(alpha, beta; 1): {}", lhs == rhs);
    }
    Ok(())
}
