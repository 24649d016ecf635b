//! The character sums `T_{N,chi}` and the restricted sums they are built from.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::char_table::{CharKind, CharTable, IrreducibleChar};
use crate::characters::MultCharFq;
use crate::charsums::{
    f_function, l2_inner, legendre_function, legendre_sum, rational, soto_andrade_function,
    soto_andrade_sum,
};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::field::Fq;
use crate::group::{GroupElement, Pgl2, ProjPoint, Which};

use super::gram::{ClosedFormN, DerangementGram};

/// Whether a sum evaluates the character at `g^{-1}` or at `g`.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Orientation {
    Inverse,
    Forward,
}

/// The two constraint shapes: `{0 -> inf, inf -> 0}` and `{0 -> inf, 1 -> d}`.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Constraint {
    Swap,
    ZeroInfOneTo(ProjPoint),
}

fn unsupported(chi: &IrreducibleChar) -> Error {
    Error::UnsupportedCharacter(chi.name())
}

fn require_target(chi: &IrreducibleChar, allow_lambda1: bool) -> Result<()> {
    match chi.kind {
        CharKind::PsiMinus1 | CharKind::Eta(_) | CharKind::Nu(_) => Ok(()),
        CharKind::Lambda1 if allow_lambda1 => Ok(()),
        _ => Err(unsupported(chi)),
    }
}

fn zero_pt(grp: &Pgl2) -> ProjPoint {
    ProjPoint::Finite(grp.ctx().zero())
}

fn one_pt(grp: &Pgl2) -> ProjPoint {
    ProjPoint::Finite(grp.ctx().one())
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `sum chi(g^{-1})` (or `chi(g)`) over elements given with multiplicities,
/// grouped by conjugacy class before touching cyclotomic arithmetic.
fn weighted_char_sum<'a>(
    grp: &Pgl2,
    table: &CharTable,
    chi: &IrreducibleChar,
    items: impl IntoIterator<Item = (&'a GroupElement, i64)>,
    orient: Orientation,
) -> CycNum {
    let mut weights = vec![0i64; table.class_labels().len()];
    for (g, w) in items {
        let h = match orient {
            Orientation::Inverse => grp.inv(g),
            Orientation::Forward => *g,
        };
        weights[table.class_column(h.class_label())] += w;
    }
    let row = table.row_of(chi.kind);
    let mut acc = CycNum::zero(crate::char_table::table_conductor(grp.q()));
    for (col, w) in weights.into_iter().enumerate() {
        if w != 0 {
            acc = acc + table.value(row, col).mul_int(w);
        }
    }
    acc
}

/// `sum_{g in PGL: x_i^g = y_i} chi(g^{-1})` (or `chi(g)`) for one to three
/// constraint pairs.
pub fn constrained_char_sum(
    grp: &Pgl2,
    table: &CharTable,
    chi: &IrreducibleChar,
    pairs: &[(ProjPoint, ProjPoint)],
    orient: Orientation,
) -> Result<CycNum> {
    let elems = grp.elements_with_constraints(pairs, Which::Pgl)?;
    Ok(weighted_char_sum(
        grp,
        table,
        chi,
        elems.iter().map(|g| (g, 1)),
        orient,
    ))
}

fn constraint_pairs(grp: &Pgl2, c: Constraint) -> Result<Vec<(ProjPoint, ProjPoint)>> {
    let (zero, inf) = (zero_pt(grp), ProjPoint::Infinity);
    match c {
        Constraint::Swap => Ok(vec![(zero, inf), (inf, zero)]),
        Constraint::ZeroInfOneTo(ProjPoint::Infinity) => Err(Error::InvalidConstraint(
            "1 and 0 cannot both go to infinity".into(),
        )),
        Constraint::ZeroInfOneTo(d) => Ok(vec![(zero, inf), (one_pt(grp), d)]),
    }
}

/// Brute-force `sum chi(g^{-1})` over the `q - 1` elements of `PGL(2,q)`
/// satisfying the constraint.
pub fn restricted_char_sum(
    grp: &Pgl2,
    table: &CharTable,
    chi: &IrreducibleChar,
    c: Constraint,
) -> Result<CycNum> {
    restricted_char_sum_oriented(grp, table, chi, c, Orientation::Inverse)
}

pub fn restricted_char_sum_oriented(
    grp: &Pgl2,
    table: &CharTable,
    chi: &IrreducibleChar,
    c: Constraint,
    orient: Orientation,
) -> Result<CycNum> {
    let pairs = constraint_pairs(grp, c)?;
    constrained_char_sum(grp, table, chi, &pairs, orient)
}

/// Closed value of the swap sum: `phi(-1)(q-1)`, `gamma(-1)(q-1)` or `-beta(i)(q-1)`.
pub fn swap_sum_closed(q: u32, chi: &IrreducibleChar) -> Result<i64> {
    let n = q as i64 - 1;
    match chi.kind {
        CharKind::PsiMinus1 => Ok(MultCharFq::quadratic(q).at_minus_one() * n),
        CharKind::Nu(g) => Ok(g.at_minus_one() * n),
        CharKind::Eta(b) => Ok(-b.at_i() * n),
        _ => Err(unsupported(chi)),
    }
}

/// Closed value of `sum_{0^g = inf, 1^g = d} chi(g^{-1})` for `d != 0, 1`:
/// `q P_gamma(2d-1)`, `-q R_beta(2d-1)` or `q P_phi(2d-1)`.
pub fn zero_inf_one_closed(grp: &Pgl2, chi: &IrreducibleChar, d: Fq) -> Result<CycNum> {
    let f = grp.ctx();
    if d.is_zero() || d == f.one() {
        return Err(Error::InvalidConstraint(format!(
            "d = {d} must avoid 0 and 1"
        )));
    }
    let a = f.sub(f.add(d, d), f.one());
    let q = f.q() as i64;
    match chi.kind {
        CharKind::Nu(g) => Ok(legendre_sum(f, &g, a).mul_int(q)),
        CharKind::Eta(b) => Ok(soto_andrade_sum(f, &b, a).mul_int(-q)),
        CharKind::PsiMinus1 => Ok(legendre_sum(f, &MultCharFq::quadratic(f.q()), a).mul_int(q)),
        _ => Err(unsupported(chi)),
    }
}

/// The three sums fixed by Frobenius reciprocity:
/// `sum_{0^g=0, inf^g=inf}`, `sum_{0^g=0}` and `sum_{0^g=inf}` of `chi(g^{-1})`.
pub fn frobenius_side_sums(
    grp: &Pgl2,
    table: &CharTable,
    chi: &IrreducibleChar,
) -> Result<[CycNum; 3]> {
    let (zero, inf) = (zero_pt(grp), ProjPoint::Infinity);
    let inv = Orientation::Inverse;
    Ok([
        constrained_char_sum(grp, table, chi, &[(zero, zero), (inf, inf)], inv)?,
        constrained_char_sum(grp, table, chi, &[(zero, zero)], inv)?,
        constrained_char_sum(grp, table, chi, &[(zero, inf)], inv)?,
    ])
}

/// `T_{N,chi} = sum_{(a,b)} [sum_{0^g=a, inf^g=b} chi(g^{-1})] N_{(0,inf),(a,b)}`
/// evaluated term by term from a Gram matrix.
pub fn t_n_chi_direct(
    grp: &Pgl2,
    table: &CharTable,
    chi: &IrreducibleChar,
    n: &DerangementGram,
) -> Result<CycNum> {
    t_n_chi_direct_oriented(grp, table, chi, n, Orientation::Inverse)
}

pub fn t_n_chi_direct_oriented(
    grp: &Pgl2,
    table: &CharTable,
    chi: &IrreducibleChar,
    n: &DerangementGram,
    orient: Orientation,
) -> Result<CycNum> {
    require_target(chi, true)?;
    let (zero, inf) = (zero_pt(grp), ProjPoint::Infinity);
    let base = n.omega().position(zero, inf)?;
    let mut items = Vec::new();
    for (k, &(a, b)) in n.omega().pairs().iter().enumerate() {
        let w = n.at(base, k);
        if w == 0 {
            continue;
        }
        for g in grp.elements_with_constraints(&[(zero, a), (inf, b)], Which::Pgl)? {
            items.push((g, w));
        }
    }
    Ok(weighted_char_sum(
        grp,
        table,
        chi,
        items.iter().map(|(g, w)| (g, *w)),
        orient,
    ))
}

/// `(q-1)(q+1)(q-1)^2/4`.
pub fn t_lambda1_closed(q: u32) -> i64 {
    let q = q as i64;
    (q - 1) * (q + 1) * (q - 1) * (q - 1) / 4
}

/// `b^h` for `b != 1`, where `h` fixes 0 and swaps 1 with infinity.
fn b_h(grp: &Pgl2, h: &GroupElement, b: Fq) -> Fq {
    match grp.act(ProjPoint::Finite(b), h) {
        ProjPoint::Finite(x) => x,
        ProjPoint::Infinity => unreachable!("b != 1"),
    }
}

/// `T_{N,chi}` assembled from the swap sum, the restricted sums over
/// `{0 -> inf, 1 -> b^h}` and the closed-form entries `N_{(0,inf),(1,b)}`:
///
/// `(q-1)^3/4 + c * S_swap + (q-1) sum_{b != 0,1} S(b^h) N_{(0,inf),(1,b)}`
///
/// with `c = -(q-1)/2` for `q = 1 mod 4` and `c = 1` for `q = 3 mod 4`.
pub fn lemma7_assembly(
    grp: &Pgl2,
    table: &CharTable,
    chi: &IrreducibleChar,
    cf: &ClosedFormN,
) -> Result<CycNum> {
    require_target(chi, false)?;
    let f = grp.ctx();
    let q = f.q() as i64;
    let swap = restricted_char_sum(grp, table, chi, Constraint::Swap)?;
    let coeff = if q % 4 == 1 { -(q - 1) / 2 } else { 1 };
    let h = grp.element_h();
    let mut main = CycNum::zero(swap.conductor());
    for b in f.units().filter(|&b| b != f.one()) {
        let nb = cf.canonical(b)?;
        if nb == 0 {
            continue;
        }
        let target = ProjPoint::Finite(b_h(grp, &h, b));
        main = main
            + restricted_char_sum(grp, table, chi, Constraint::ZeroInfOneTo(target))?.mul_int(nb);
    }
    let head = CycNum::from_frac(swap.conductor(), (q - 1).pow(3), 4);
    Ok(head + swap.mul_int(coeff) + main.mul_int(q - 1))
}

/// `sum_{b != 0,1} X(2 b^h - 1) P_phi(2b - 1)` for the function `X` attached to `chi`.
fn shifted_product_sum(grp: &Pgl2, chi: &IrreducibleChar) -> Result<CycNum> {
    let f = grp.ctx();
    let phi = MultCharFq::quadratic(f.q());
    let h = grp.element_h();
    let two_minus_one = |x: Fq| f.sub(f.add(x, x), f.one());
    let mut acc: Option<CycNum> = None;
    for b in f.units().filter(|&b| b != f.one()) {
        let x = two_minus_one(b_h(grp, &h, b));
        let left = match chi.kind {
            CharKind::Nu(g) => legendre_sum(f, &g, x),
            CharKind::Eta(beta) => soto_andrade_sum(f, &beta, x),
            CharKind::PsiMinus1 => legendre_sum(f, &phi, x),
            _ => return Err(unsupported(chi)),
        };
        let term = left * legendre_sum(f, &phi, two_minus_one(b));
        acc = Some(match acc {
            None => term,
            Some(a) => a + term,
        });
    }
    Ok(acc.unwrap_or_else(|| CycNum::zero(1)))
}

/// The closed form `(q-1)/4 [A - q^2 S]` (or `+ q^2 S` for `eta`), where
/// `S` is the shifted product sum of Legendre or Soto-Andrade values.
pub fn shifted_product_closed(grp: &Pgl2, chi: &IrreducibleChar) -> Result<CycNum> {
    let q = grp.q() as i64;
    let phi_m1 = MultCharFq::quadratic(grp.q()).at_minus_one();
    let s = shifted_product_sum(grp, chi)?;
    let m = s.conductor();
    let inner = match chi.kind {
        CharKind::Nu(g) => {
            CycNum::from_int(m, q * q - 3 * q - (q + 1) * g.at_minus_one() * phi_m1)
                - s.mul_int(q * q)
        }
        CharKind::Eta(b) => {
            CycNum::from_int(m, q * q + q + (q + 1) * b.at_i() * phi_m1) + s.mul_int(q * q)
        }
        CharKind::PsiMinus1 => CycNum::from_int(m, q * q - 2 * q - 3) - s.mul_int(q * q),
        _ => return Err(unsupported(chi)),
    };
    Ok(inner.scale(&rat(q - 1, 4)))
}

/// `<f, P_gamma>`, `<f, R_beta>` or `<f, P_phi>` for the function attached to `chi`.
pub fn f_coefficient(grp: &Pgl2, chi: &IrreducibleChar) -> Result<CycNum> {
    let f = grp.ctx();
    let target = match chi.kind {
        CharKind::Nu(g) => legendre_function(f, &g),
        CharKind::Eta(b) => soto_andrade_function(f, &b),
        CharKind::PsiMinus1 => legendre_function(f, &MultCharFq::quadratic(f.q())),
        _ => return Err(unsupported(chi)),
    };
    l2_inner(f, &f_function(f), &target)
}

fn phi_of_two(grp: &Pgl2) -> i64 {
    let f = grp.ctx();
    if f.is_square(f.from_int(2)) {
        1
    } else {
        -1
    }
}

/// `T_{N,chi}` through the coefficient of `f` on the matching basis function:
///
/// * `eta_beta`: `q^2(q-1)/4 [1 + 1/q + phi(2) <f, R_beta>]`
/// * `nu_gamma`: `q^2(q-1)/4 [1 - 3/q - phi(2) <f, P_gamma>]`
/// * `psi_-1`: `(q-1)/4 [q^2 - q - 2 - phi(2) q^2 <f, P_phi>]`
pub fn f_form_closed(grp: &Pgl2, chi: &IrreducibleChar) -> Result<CycNum> {
    let q = grp.q() as i64;
    let c = f_coefficient(grp, chi)?.mul_int(phi_of_two(grp));
    let m = c.conductor();
    let big = rat(q * q * (q - 1), 4);
    Ok(match chi.kind {
        CharKind::Eta(_) => (CycNum::from_frac(m, q + 1, q) + c).scale(&big),
        CharKind::Nu(_) => (CycNum::from_frac(m, q - 3, q) - c).scale(&big),
        CharKind::PsiMinus1 => {
            (CycNum::from_int(m, q * q - q - 2) - c.mul_int(q * q)).scale(&rat(q - 1, 4))
        }
        _ => return Err(unsupported(chi)),
    })
}

/// The shifted-product closed form, after checking it against the `<f, .>` form.
pub fn t_n_chi_closed(grp: &Pgl2, chi: &IrreducibleChar) -> Result<CycNum> {
    let a = shifted_product_closed(grp, chi)?;
    let b = f_form_closed(grp, chi)?;
    if a != b {
        return Err(Error::IdentityMismatch(format!(
            "T_N for {}: {a} vs {b}",
            chi.name()
        )));
    }
    Ok(a)
}

/// Outcome of a nonvanishing margin check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Margin {
    /// The quantity being bounded, rendered exactly.
    pub value: String,
    /// The bound, rendered exactly.
    pub bound: String,
    pub holds: bool,
    /// `true` when the comparison used only rational arithmetic.
    pub exact: bool,
}

/// `|<f, R_beta'>| <= 1`, checked as `|<f, R_beta>|^2 <= (q+1)/q`.
///
/// The squared modulus generally lies in a real cyclotomic field, so the
/// comparison uses [`CycNum::certified_sign`] unless the value is rational.
pub fn eta_margin(grp: &Pgl2, chi: &IrreducibleChar) -> Result<Margin> {
    if !matches!(chi.kind, CharKind::Eta(_)) {
        return Err(unsupported(chi));
    }
    let q = grp.q() as i64;
    let c = f_coefficient(grp, chi)?;
    let sq = &c * &c.conj();
    let bound = rat(q + 1, q);
    let diff = CycNum::from_ratio(sq.conductor(), &bound) - sq.clone();
    let (holds, exact) = match diff.as_rational() {
        Some(r) => (r >= BigRational::from_integer(0.into()), true),
        None => (
            matches!(
                diff.certified_sign(),
                Some(Ordering::Greater | Ordering::Equal)
            ),
            false,
        ),
    };
    Ok(Margin {
        value: sq.to_string(),
        bound: bound.to_string(),
        holds,
        exact,
    })
}

/// `phi(2) q^2 <f, P_phi> <= 2 q^{3/2} + q`, checked exactly by squaring.
pub fn psi_margin(grp: &Pgl2) -> Result<Margin> {
    let q = grp.q() as i64;
    let chi = IrreducibleChar::new(grp.q(), CharKind::PsiMinus1);
    let v = rational(&f_coefficient(grp, &chi)?.mul_int(phi_of_two(grp) * q * q));
    let excess = v.clone() - BigRational::from_integer(q.into());
    let holds = excess <= BigRational::from_integer(0.into())
        || &excess * &excess <= BigRational::from_integer((4 * q * q * q).into());
    Ok(Margin {
        value: v.to_string(),
        bound: format!("2*{q}^(3/2)+{q}"),
        holds,
        exact: true,
    })
}
