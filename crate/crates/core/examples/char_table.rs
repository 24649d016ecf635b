//! The character table of PGL(2,q) and the decomposition of the permutation
//! character on ordered pairs of distinct points.
//!
//! `cargo run --example char_table -- 5`

use psl_ekr::char_table::{permutation_character_pi, CharTable};
use psl_ekr::group::Pgl2;

fn main() -> psl_ekr::Result<()> {
    let q: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(5);
    let grp = Pgl2::for_order(q)?;
    let table = CharTable::build(&grp);
    let labels: Vec<String> = table.class_labels().iter().map(|l| l.to_string()).collect();
    println!(
        "{:<14} {}",
        "",
        labels
            .iter()
            .map(|l| format!("{l:>12}"))
            .collect::<String>()
    );
    for (row, chi) in table.rows().iter().enumerate() {
        let vals: String = (0..labels.len())
            .map(|col| {
                let z = table.value(row, col).to_complex();
                if z.im.abs() < 1e-9 {
                    format!("{:>12.4}", z.re)
                } else {
                    format!("{:>12}", format!("{:.2}{:+.2}i", z.re, z.im))
                }
            })
            .collect();
        println!("{:<14} {vals}", chi.name());
    }
    println!("\npermutation character on ordered pairs:");
    for (chi, mult) in table.decompose(&permutation_character_pi(&grp)) {
        let m = mult
            .as_rational()
            .map_or_else(|| mult.to_string(), |r| r.to_string());
        println!("  {:<14} x {m}", chi.name());
    }
    Ok(())
}
