//! Exhaustive search for maximum intersecting families in PSL(2,q).
//!
//! `cargo run --release --example ekr -- 3 5 7`

use psl_ekr::ekr::{max_intersecting_families, Classification};
use psl_ekr::group::Pgl2;

fn main() -> psl_ekr::Result<()> {
    let mut qs: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|s| s.parse().ok())
        .collect();
    if qs.is_empty() {
        qs = vec![3, 5, 7];
    }
    for q in qs {
        let grp = Pgl2::for_order(q)?;
        let (size, families) = max_intersecting_families(&grp, q == 9)?;
        let cosets = families
            .iter()
            .filter(|f| matches!(f.classification, Classification::StabilizerCoset(..)))
            .count();
        println!(
            "q = {q}: maximum size {size}, {} maximum families, {cosets} of them stabilizer cosets",
            families.len()
        );
        for fam in families
            .iter()
            .filter(|f| f.classification == Classification::Other)
            .take(2)
        {
            let members: Vec<String> = fam.members.iter().map(|g| g.to_string()).collect();
            println!("  not a coset: {{{}}}", members.join(", "));
        }
    }
    Ok(())
}
