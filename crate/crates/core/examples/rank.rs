//! The derangement matrix M, its Gram matrix N = M^T M, the closed form for N
//! and the exact rank q(q-1).
//!
//! `cargo run --release --example rank -- 5 7 9 11 13`

use std::time::Instant;

use psl_ekr::derangement::{build_m, build_n_bruteforce, exact_rank, ClosedFormN, EntryCase};
use psl_ekr::group::Pgl2;

fn main() -> psl_ekr::Result<()> {
    let mut qs: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|s| s.parse().ok())
        .collect();
    if qs.is_empty() {
        qs = vec![5, 7, 9, 11, 13];
    }
    for q in qs {
        let start = Instant::now();
        let grp = Pgl2::for_order(q)?;
        let m = build_m(&grp);
        let n = build_n_bruteforce(&m);
        let cf = ClosedFormN::new(&grp)?;
        let closed_ok = cf.full_matrix()? == n.matrix();
        let rank = exact_rank(&m.to_dense());
        println!(
            "q = {q:>2}: M is {}x{}, rank {rank} (q(q-1) = {}), closed-form N matches: {closed_ok}, {:.2?}",
            m.nrows(),
            m.ncols(),
            q * (q - 1),
            start.elapsed()
        );
        let base = n.omega().pair(0);
        let mut generic = std::collections::BTreeMap::new();
        for &cd in n.omega().pairs() {
            if let EntryCase::Generic(d) = cf.case(base, cd)? {
                generic.insert(d.to_string(), cf.entry(base, cd)?);
            }
        }
        println!("         generic entries N_(0,1),(c,d) by normalized cross-ratio: {generic:?}");
    }
    Ok(())
}
