//! PGL(2,q) acting on the projective line: conjugacy classes, PSL membership
//! and derangements.
//!
//! `cargo run --example group -- 7`

use psl_ekr::group::{Pgl2, ProjPoint, Which};

fn main() -> psl_ekr::Result<()> {
    let q: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(7);
    let grp = Pgl2::for_order(q)?;
    let psl = grp.enumerate(Which::Psl);
    println!(
        "|PGL(2,{q})| = {}, |PSL(2,{q})| = {}",
        grp.elements().len(),
        psl.len()
    );
    println!(
        "{:<10} {:>6} {:>6}  representative",
        "class", "size", "delta"
    );
    for c in grp.classes() {
        println!(
            "{:<10} {:>6} {:>6}  {}",
            c.label.to_string(),
            c.size,
            c.delta,
            c.representative
        );
    }
    let derangements = psl.iter().filter(|g| g.is_derangement()).count();
    println!("derangements in PSL: {derangements}");

    let h = grp.element_h();
    let f = grp.ctx();
    let pts: Vec<String> = grp
        .points()
        .into_iter()
        .map(|p| format!("{p}->{}", grp.act(p, &h)))
        .collect();
    println!("h = {h}: {}", pts.join(" "));
    let zero = ProjPoint::Finite(f.zero());
    let swaps = grp.elements_with_constraints(
        &[(zero, ProjPoint::Infinity), (ProjPoint::Infinity, zero)],
        Which::Pgl,
    )?;
    println!("elements swapping 0 and infinity: {}", swaps.len());
    Ok(())
}
