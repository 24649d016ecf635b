//! Greene's hypergeometric functions over `GF(q)` and the normalized Katz sum.

use num_rational::{BigRational, Rational64};

use super::l2::{f_function, l2_inner, legendre_function};
use crate::characters::{gauss_sum, gauss_sum_inverse, MultCharFq};
use crate::cyclotomic::{CycNum, RootSum};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};

/// Deepest supported function is `4F3`.
pub const MAX_DEPTH: usize = 4;

/// Greene's `2F1(g0, g1; g2 | x)`.
pub fn greene_2f1(
    ctx: &FieldCtx,
    g0: &MultCharFq,
    g1: &MultCharFq,
    g2: &MultCharFq,
    x: Fq,
) -> CycNum {
    let n = ctx.q() - 1;
    if x.is_zero() {
        return CycNum::zero(n);
    }
    let mid = g2.mul(&g1.inverse());
    let last = g0.inverse();
    let mut acc = RootSum::new(n);
    for y in ctx.units() {
        let one_minus_y = ctx.sub(ctx.one(), y);
        let one_minus_xy = ctx.sub(ctx.one(), ctx.mul(x, y));
        let (Some(b), Some(c)) = (
            mid.log_value(ctx, one_minus_y),
            last.log_value(ctx, one_minus_xy),
        ) else {
            continue;
        };
        acc.add(g1.log_value(ctx, y).unwrap() + b + c, 1);
    }
    let sign = g1.mul(g2).at_minus_one();
    acc.into_cyc().mul_int(sign).div_int(ctx.q() as i64)
}

fn greene_2f1_table(
    ctx: &FieldCtx,
    g0: &MultCharFq,
    g1: &MultCharFq,
    g2: &MultCharFq,
) -> Vec<CycNum> {
    ctx.elements()
        .map(|x| greene_2f1(ctx, g0, g1, g2, x))
        .collect()
}

/// Values of `n+1 F n(As; Bs | x)` for every `x`, indexed by field encoding.
pub fn greene_nfn_table(
    ctx: &FieldCtx,
    a_chars: &[MultCharFq],
    b_chars: &[MultCharFq],
) -> Result<Vec<CycNum>> {
    if a_chars.len() != b_chars.len() + 1 || a_chars.len() < 2 || a_chars.len() > MAX_DEPTH {
        return Err(Error::ArityMismatch(a_chars.len(), b_chars.len()));
    }
    let mut table = greene_2f1_table(ctx, &a_chars[0], &a_chars[1], &b_chars[0]);
    let n = ctx.q() - 1;
    for level in 2..a_chars.len() {
        let a = a_chars[level];
        let b = b_chars[level - 1];
        let second = a.inverse().mul(&b);
        let sign = a.mul(&b).at_minus_one();
        // weights[y] = exponent of A(y) (conj A . B)(1 - y), when nonzero
        let weights: Vec<(Fq, i64)> = ctx
            .units()
            .filter_map(|y| {
                let e2 = second.log_value(ctx, ctx.sub(ctx.one(), y))?;
                Some((y, a.log_value(ctx, y).unwrap() + e2))
            })
            .collect();
        table = ctx
            .elements()
            .map(|x| {
                let mut acc = CycNum::zero(n);
                for &(y, e) in &weights {
                    let v = &table[ctx.mul(x, y).index() as usize];
                    if !v.is_zero() {
                        acc = acc + v.mul_root(e);
                    }
                }
                acc.mul_int(sign).div_int(ctx.q() as i64)
            })
            .collect();
    }
    Ok(table)
}

/// `n+1 F n(As; Bs | x)` by the recursive definition, `2F1` being the base case.
pub fn greene_nfn(
    ctx: &FieldCtx,
    a_chars: &[MultCharFq],
    b_chars: &[MultCharFq],
    x: Fq,
) -> Result<CycNum> {
    Ok(greene_nfn_table(ctx, a_chars, b_chars)?.swap_remove(x.index() as usize))
}

/// `4F3(gamma, gamma^-1, phi, phi; eps, eps, eps | 1)`.
pub fn four_f_three_at_one(ctx: &FieldCtx, gamma: &MultCharFq) -> CycNum {
    let q = ctx.q();
    let phi = MultCharFq::quadratic(q);
    let eps = MultCharFq::trivial(q);
    greene_nfn(
        ctx,
        &[*gamma, gamma.inverse(), phi, phi],
        &[eps, eps, eps],
        ctx.one(),
    )
    .expect("arity 4/3")
}

/// Both sides of
/// `q 4F3(gamma, gamma^-1, phi, phi; eps, eps, eps | 1) = sum_z phi(z) 2F1(phi, phi; eps | z) 2F1(gamma, gamma^-1; eps | z)`.
pub fn product_sum_sides(ctx: &FieldCtx, gamma: &MultCharFq) -> (CycNum, CycNum) {
    let q = ctx.q();
    let phi = MultCharFq::quadratic(q);
    let eps = MultCharFq::trivial(q);
    let lhs = four_f_three_at_one(ctx, gamma).mul_int(q as i64);
    let rhs = ctx.elements().fold(CycNum::zero(q - 1), |acc, z| {
        let t = phi.eval(ctx, z)
            * greene_2f1(ctx, &phi, &phi, &eps, z)
            * greene_2f1(ctx, gamma, &gamma.inverse(), &eps, z);
        acc + t
    });
    (lhs, rhs)
}

/// Both sides of `phi(2) q^2 <f, P_gamma> = q^3 4F3(...|1) + phi(-1) gamma(-1) q`.
pub fn f_pgamma_identity(ctx: &FieldCtx, gamma: &MultCharFq) -> Result<(CycNum, CycNum)> {
    if gamma.is_trivial() {
        return Err(Error::TrivialCharacter);
    }
    let q = ctx.q() as i64;
    let phi = MultCharFq::quadratic(ctx.q());
    let ip = l2_inner(ctx, &f_function(ctx), &legendre_function(ctx, gamma))?;
    let lhs = (phi.eval(ctx, ctx.from_int(2)) * ip).mul_int(q * q);
    let rhs = four_f_three_at_one(ctx, gamma).mul_int(q * q * q)
        + CycNum::from_int(1, phi.at_minus_one() * gamma.at_minus_one() * q);
    Ok((lhs, rhs))
}

/// Outcome of checking `|z| <= 2 q^(3/2)` for `z = q^3 4F3(...|1) + phi(-1) gamma(-1) q`.
#[derive(Clone, Debug)]
pub struct FourFThreeBound {
    pub value: CycNum,
    /// `|z|^2`, exact.
    pub abs_sq: CycNum,
    /// `4 q^3`.
    pub bound_sq: i64,
    pub holds: bool,
}

/// Compares squares, so the check stays within exact arithmetic.
pub fn four_f_three_bound(ctx: &FieldCtx, gamma: &MultCharFq) -> FourFThreeBound {
    let q = ctx.q() as i64;
    let phi = MultCharFq::quadratic(ctx.q());
    let value = four_f_three_at_one(ctx, gamma).mul_int(q * q * q)
        + CycNum::from_int(1, phi.at_minus_one() * gamma.at_minus_one() * q);
    let abs_sq = &value * &value.conj();
    let bound_sq = 4 * q * q * q;
    let holds = match abs_sq.as_rational() {
        Some(r) => r <= BigRational::from_integer(bound_sq.into()),
        None => {
            let gap = CycNum::from_int(1, bound_sq) - &abs_sq;
            matches!(
                gap.certified_sign(),
                Some(std::cmp::Ordering::Greater | std::cmp::Ordering::Equal)
            )
        }
    };
    FourFThreeBound {
        value,
        abs_sq,
        bound_sq,
        holds,
    }
}

/// The normalized Katz sum
/// `H_q(alpha, beta; lambda) = 1/(1-q) sum_k prod_a g(w^(k+(q-1)a))/g(w^((q-1)a))
///  prod_b g(w^(-k-(q-1)b))/g(w^(-(q-1)b)) w^k((-1)^m lambda)`
/// with `w` the character of exponent `omega_exp` (which must generate the
/// character group) and `m` the number of `alpha` parameters.
pub fn katz_hq(
    ctx: &FieldCtx,
    alphas: &[Rational64],
    betas: &[Rational64],
    lambda: Fq,
    omega_exp: u32,
) -> Result<CycNum> {
    let q = ctx.q();
    let n = (q - 1) as i64;
    let omega = MultCharFq::new(q, omega_exp as i64);
    if omega.order() != q - 1 {
        return Err(Error::UnsupportedCharacter(format!(
            "omega exponent {omega_exp} is not a generator"
        )));
    }
    let integral = |r: &Rational64| -> Result<i64> {
        let scaled = r * Rational64::from_integer(n);
        if scaled.is_integer() {
            Ok(scaled.to_integer())
        } else {
            Err(Error::NotIntegralParameters(r.to_string()))
        }
    };
    let a_exps: Vec<i64> = alphas.iter().map(integral).collect::<Result<_>>()?;
    let b_exps: Vec<i64> = betas.iter().map(integral).collect::<Result<_>>()?;

    let power = |e: i64| MultCharFq::new(q, e * omega_exp as i64);
    let gauss: Vec<CycNum> = (0..n)
        .map(|e| gauss_sum(ctx, &power(e), ctx.one()))
        .collect();
    let g = |e: i64| &gauss[e.rem_euclid(n) as usize];
    let ginv = |e: i64| gauss_sum_inverse(ctx, &power(e));

    let denom = a_exps
        .iter()
        .map(|&a| ginv(a))
        .chain(b_exps.iter().map(|&b| ginv(-b)))
        .fold(CycNum::one(ctx.p() * (q - 1)), |acc, x| acc * x);
    let sign_arg = if alphas.len().is_multiple_of(2) {
        lambda
    } else {
        ctx.neg(lambda)
    };
    let mut total = CycNum::zero(ctx.p() * (q - 1));
    for k in 0..n {
        let w = power(k).eval(ctx, sign_arg);
        if w.is_zero() {
            continue;
        }
        let mut term = w;
        for &a in &a_exps {
            term = term * g(k + a);
        }
        for &b in &b_exps {
            term = term * g(-k - b);
        }
        total = total + term;
    }
    Ok((total * denom).div_int(1 - q as i64))
}

/// `alpha = {1/n, (n-1)/n, 1/2, 1/2}`, `beta = {1, 1, 1, 1}`.
pub fn katz_parameters(n: i64) -> (Vec<Rational64>, Vec<Rational64>) {
    let r = Rational64::new;
    (
        vec![r(1, n), r(n - 1, n), r(1, 2), r(1, 2)],
        vec![r(1, 1); 4],
    )
}

/// Both sides of `-q^3 4F3(gamma, gamma^-1, phi, phi; eps, eps, eps | 1) = H_q(alpha, beta; 1)`
/// with `gamma = w^((q-1)/n)`.
pub fn katz_conversion(ctx: &FieldCtx, n: u32, omega_exp: u32) -> Result<(CycNum, CycNum)> {
    let q = ctx.q();
    if !(q - 1).is_multiple_of(n) {
        return Err(Error::NotIntegralParameters(format!("1/{n}")));
    }
    let gamma = MultCharFq::new(q, (omega_exp * ((q - 1) / n)) as i64);
    let lhs = -four_f_three_at_one(ctx, &gamma).mul_int((q as i64).pow(3));
    let (alphas, betas) = katz_parameters(n as i64);
    let rhs = katz_hq(ctx, &alphas, &betas, ctx.one(), omega_exp)?;
    Ok((lhs, rhs))
}
