//! The sums T_{N,chi} for every character that must survive in the image of
//! N, computed directly, by assembling restricted sums, and in closed form.
//!
//! `cargo run --release --example t_sums -- 11`

use psl_ekr::char_table::{irreducibles, CharKind, CharTable};
use psl_ekr::derangement::{
    build_m, build_n_bruteforce, eta_margin, lemma7_assembly, t_n_chi_closed, t_n_chi_direct,
    verify_theorem2, ClosedFormN, DEFAULT_RANK_MAX_Q,
};
use psl_ekr::group::Pgl2;

fn main() -> psl_ekr::Result<()> {
    let q: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(11);
    let grp = Pgl2::for_order(q)?;
    let table = CharTable::build(&grp);
    let n = build_n_bruteforce(&build_m(&grp));
    let cf = ClosedFormN::new(&grp)?;
    for chi in irreducibles(q) {
        if !matches!(
            chi.kind,
            CharKind::PsiMinus1 | CharKind::Eta(_) | CharKind::Nu(_)
        ) {
            continue;
        }
        let direct = t_n_chi_direct(&grp, &table, &chi, &n)?;
        let assembled = lemma7_assembly(&grp, &table, &chi, &cf)?;
        let closed = t_n_chi_closed(&grp, &chi)?;
        let z = direct.to_complex();
        let margin = match chi.kind {
            CharKind::Eta(_) => {
                let m = eta_margin(&grp, &chi)?;
                format!("  |<f,R'>|^2 <= {}: {}", m.bound, m.holds)
            }
            _ => String::new(),
        };
        println!(
            "{:<14} T = {:>12.4}{:+.4}i  routes agree: {}{margin}",
            chi.name(),
            z.re,
            z.im,
            direct == assembled && direct == closed
        );
    }
    let report = verify_theorem2(&grp, DEFAULT_RANK_MAX_Q)?;
    println!(
        "\nrank {} of expected {}, dimension ledger {:?}",
        report.rank, report.expected_rank, report.dimension_ledger
    );
    println!("pass: {}", report.pass);
    Ok(())
}
