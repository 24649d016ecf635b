//! Arithmetic in GF(q) and GF(q^2): generators, Frobenius, norms and traces.
//!
//! `cargo run --example fields -- 9`

use psl_ekr::field::FieldCtx;

fn main() -> psl_ekr::Result<()> {
    let q: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(9);
    let f = FieldCtx::for_order(q)?;
    println!("GF({q}) = GF({})[t] / {:?}", f.p(), f.modulus());
    let g = f.generator_q();
    println!("generator g = {g}, multiplicative order {}", q - 1);
    for k in 0..(q - 1).min(8) {
        println!("  g^{k} = {}", f.exp(k as i64));
    }
    let squares = f.units().filter(|&x| f.is_square(x)).count();
    println!("nonzero squares: {squares}");

    let r = f.generator_q2();
    let show = |x| {
        let (u, v) = f.parts(x);
        format!("{u} + {v}*w")
    };
    println!("GF({}) = GF({q})(w), generator r = {}", q * q, show(r));
    println!(
        "  r^q = {}, N(r) = {}, Tr(r) = {}",
        show(f.frobenius(r)),
        f.norm(r),
        f.trace2(r)
    );
    let i = f.i_elem();
    println!("  i = {}, i^2 = {}", show(i), show(f.mul2(i, i)));
    Ok(())
}
