use serde::Serialize;

use crate::char_table::{irreducibles, CharKind, CharTable, IrreducibleChar};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::group::Pgl2;

use super::gram::{build_m, build_n_bruteforce, ClosedFormN};
use super::linalg::exact_rank;
use super::tsums::{lemma7_assembly, t_lambda1_closed, t_n_chi_closed, t_n_chi_direct};

/// Largest `q` accepted by [`verify_theorem2`] unless a caller raises it.
pub const DEFAULT_RANK_MAX_Q: u32 = 19;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CharacterVerdict {
    pub kind: String,
    pub params: Option<u32>,
    pub degree: u32,
    pub t_value_exact: String,
    pub t_value_approx: [f64; 2],
    pub nonzero: bool,
    /// Whether every available evaluation route produced the same value.
    pub routes_agree: bool,
}

/// `1 + q + (q-1)|B| + (q+1)|Gamma|`, which should equal `q(q-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionLedger {
    pub lambda1: u64,
    pub psi_minus1: u64,
    pub eta_total: u64,
    pub nu_total: u64,
    pub total: u64,
    pub target: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Theorem2Report {
    pub q: u32,
    pub rank: usize,
    pub rank_of_n: usize,
    pub expected_rank: usize,
    pub characters: Vec<CharacterVerdict>,
    pub dimension_ledger: DimensionLedger,
    pub pass: bool,
    /// First failing check, when `pass` is false.
    pub failure: Option<String>,
}

fn params(chi: &IrreducibleChar) -> Option<u32> {
    match chi.kind {
        CharKind::Eta(b) => Some(b.exponent()),
        CharKind::Nu(g) => Some(g.exponent()),
        _ => None,
    }
}

fn kind_name(chi: &IrreducibleChar) -> &'static str {
    match chi.kind {
        CharKind::Lambda1 => "lambda_1",
        CharKind::LambdaMinus1 => "lambda_-1",
        CharKind::Psi1 => "psi_1",
        CharKind::PsiMinus1 => "psi_-1",
        CharKind::Eta(_) => "eta",
        CharKind::Nu(_) => "nu",
    }
}

/// Rank of `M` and `N`, plus nonvanishing of `T_{N,chi}` for `lambda_1`,
/// `psi_-1` and every `eta_beta`, `nu_gamma`, each computed by the direct
/// sum, the assembled sum and the closed form.
pub fn verify_theorem2(grp: &Pgl2, max_q: u32) -> Result<Theorem2Report> {
    let q = grp.q();
    if q <= 3 {
        return Err(Error::DegenerateOrder(q));
    }
    if q > max_q {
        return Err(Error::BudgetExceeded(format!(
            "q = {q} exceeds the rank budget {max_q}"
        )));
    }
    let m = build_m(grp);
    let n = build_n_bruteforce(&m);
    let rank = exact_rank(&m.to_dense());
    let rank_of_n = exact_rank(n.matrix());
    let expected_rank = (q * (q - 1)) as usize;
    let table = CharTable::build(grp);
    let cf = ClosedFormN::new(grp)?;

    let mut failure = None;
    let mut note = |msg: String| {
        if failure.is_none() {
            failure = Some(msg);
        }
    };
    if rank != expected_rank {
        note(format!("rank(M) = {rank}, expected {expected_rank}"));
    }
    if rank_of_n != rank {
        note(format!(
            "rank(N) = {rank_of_n} differs from rank(M) = {rank}"
        ));
    }

    let mut characters = Vec::new();
    let (mut ledger_eta, mut ledger_nu, mut ledger_psi, mut ledger_l1) = (0u64, 0u64, 0u64, 0u64);
    for chi in irreducibles(q) {
        let direct = match chi.kind {
            CharKind::Lambda1 | CharKind::PsiMinus1 | CharKind::Eta(_) | CharKind::Nu(_) => {
                t_n_chi_direct(grp, &table, &chi, &n)?
            }
            _ => continue,
        };
        let routes_agree = match chi.kind {
            CharKind::Lambda1 => direct == CycNum::from_int(1, t_lambda1_closed(q)),
            _ => {
                let assembled = lemma7_assembly(grp, &table, &chi, &cf)?;
                let closed = t_n_chi_closed(grp, &chi);
                assembled == direct && closed.as_ref().map(|c| *c == direct).unwrap_or(false)
            }
        };
        if !routes_agree {
            note(format!("evaluation routes disagree for {}", chi.name()));
        }
        let nonzero = !direct.is_zero();
        if !nonzero {
            note(format!("T_N vanishes for {}", chi.name()));
        }
        let d = chi.degree as u64;
        match chi.kind {
            CharKind::Lambda1 => ledger_l1 += d,
            CharKind::PsiMinus1 => ledger_psi += d,
            CharKind::Eta(_) => ledger_eta += d,
            CharKind::Nu(_) => ledger_nu += d,
            _ => {}
        }
        let z = direct.to_complex();
        characters.push(CharacterVerdict {
            kind: kind_name(&chi).into(),
            params: params(&chi),
            degree: chi.degree,
            t_value_exact: direct.to_coeff_string(),
            t_value_approx: [z.re, z.im],
            nonzero,
            routes_agree,
        });
    }
    let total = ledger_l1 + ledger_psi + ledger_eta + ledger_nu;
    let target = (q as u64) * (q as u64 - 1);
    if total != target {
        note(format!(
            "dimension ledger sums to {total}, expected {target}"
        ));
    }
    let dimension_ledger = DimensionLedger {
        lambda1: ledger_l1,
        psi_minus1: ledger_psi,
        eta_total: ledger_eta,
        nu_total: ledger_nu,
        total,
        target,
    };
    Ok(Theorem2Report {
        q,
        rank,
        rank_of_n,
        expected_rank,
        characters,
        dimension_ledger,
        pass: failure.is_none(),
        failure,
    })
}
