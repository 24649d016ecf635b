//! Functions on `GF(q)` with the weighted Hermitian form of mass `q+1` at `+-1`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::characters::{enumerate_beta_set, enumerate_gamma_set, MultCharB, MultCharFq};
use crate::cyclotomic::{CycNum, RootSum};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};

/// `m(x) = 1 + q [x = 1] + q [x = -1]`.
#[derive(Copy, Clone, Debug)]
pub struct Measure {
    q: u32,
    one: Fq,
    minus_one: Fq,
}

impl Measure {
    pub fn new(ctx: &FieldCtx) -> Self {
        Measure {
            q: ctx.q(),
            one: ctx.one(),
            minus_one: ctx.from_int(-1),
        }
    }

    pub fn weight(&self, x: Fq) -> i64 {
        if x == self.one || x == self.minus_one {
            self.q as i64 + 1
        } else {
            1
        }
    }

    pub fn total(&self) -> i64 {
        3 * self.q as i64
    }
}

/// A function `GF(q) -> Q(zeta)`, stored by field encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct L2Function {
    q: u32,
    values: Vec<CycNum>,
}

impl L2Function {
    pub fn new(q: u32, values: Vec<CycNum>) -> Self {
        assert_eq!(values.len(), q as usize);
        L2Function { q, values }
    }

    pub fn from_fn(ctx: &FieldCtx, mut f: impl FnMut(Fq) -> CycNum) -> Self {
        L2Function {
            q: ctx.q(),
            values: ctx.elements().map(&mut f).collect(),
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn at(&self, x: Fq) -> &CycNum {
        &self.values[x.index() as usize]
    }

    pub fn values(&self) -> &[CycNum] {
        &self.values
    }

    /// `self - c` pointwise.
    pub fn shift(&self, c: &CycNum) -> L2Function {
        L2Function {
            q: self.q,
            values: self.values.iter().map(|v| v - c).collect(),
        }
    }
}

/// `<f1, f2> = sum_x f1(x) conj(f2(x)) m(x)`.
pub fn l2_inner(ctx: &FieldCtx, f1: &L2Function, f2: &L2Function) -> Result<CycNum> {
    if f1.q != f2.q {
        return Err(Error::DomainMismatch(f1.q, f2.q));
    }
    if f1.q != ctx.q() {
        return Err(Error::DomainMismatch(f1.q, ctx.q()));
    }
    let m = Measure::new(ctx);
    let mut acc: Option<CycNum> = None;
    for x in ctx.elements() {
        let term = (f1.at(x) * &f2.at(x).conj()).mul_int(m.weight(x));
        acc = Some(match acc {
            None => term,
            Some(a) => a + term,
        });
    }
    Ok(acc.expect("nonempty field"))
}

fn phi_exponent(ctx: &FieldCtx, y: Fq) -> Option<i64> {
    ctx.log(y).map(|j| if j % 2 == 0 { 0 } else { 1 })
}

/// `P_gamma(a) = (1/q) sum_{x != 0} gamma(x) phi(x^2 - 2ax + 1)`.
pub fn legendre_sum(ctx: &FieldCtx, gamma: &MultCharFq, a: Fq) -> CycNum {
    let n = ctx.q() - 1;
    let half = (n / 2) as i64;
    let two_a = ctx.add(a, a);
    let mut acc = RootSum::new(n);
    for x in ctx.units() {
        let y = ctx.add(ctx.sub(ctx.mul(x, x), ctx.mul(two_a, x)), ctx.one());
        if let Some(s) = phi_exponent(ctx, y) {
            acc.add(gamma.log_value(ctx, x).unwrap() + s * half, 1);
        }
    }
    acc.into_cyc().div_int(ctx.q() as i64)
}

/// `R_beta(a) = (1/(q(q-1))) sum_{r != 0} beta(r) phi(Tr(r)^2 - 2(a+1) N(r))`.
pub fn soto_andrade_sum(ctx: &FieldCtx, beta: &MultCharB, a: Fq) -> CycNum {
    let q = ctx.q();
    let n = q + 1;
    let c = ctx.add(ctx.add(a, ctx.one()), ctx.add(a, ctx.one()));
    let mut acc = RootSum::new(n);
    for r in ctx.elements2().filter(|r| !r.is_zero()) {
        let t = ctx.trace2(r);
        let y = ctx.sub(ctx.mul(t, t), ctx.mul(c, ctx.norm(r)));
        if let Some(s) = phi_exponent(ctx, y) {
            let sign_shift = s * (n / 2) as i64;
            acc.add(beta.log_value(ctx, r).unwrap() + sign_shift, 1);
        }
    }
    acc.into_cyc().div_int(q as i64 * (q as i64 - 1))
}

pub fn legendre_function(ctx: &FieldCtx, gamma: &MultCharFq) -> L2Function {
    L2Function::from_fn(ctx, |a| legendre_sum(ctx, gamma, a))
}

pub fn soto_andrade_function(ctx: &FieldCtx, beta: &MultCharB) -> L2Function {
    L2Function::from_fn(ctx, |a| soto_andrade_sum(ctx, beta, a))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BasisKind {
    /// `P_epsilon - (q-1)/q`
    PEpsilonShifted,
    PPhi,
    PGamma(MultCharFq),
    RBeta(MultCharB),
}

impl BasisKind {
    pub fn name(&self) -> String {
        match self {
            BasisKind::PEpsilonShifted => "P_eps-(q-1)/q".into(),
            BasisKind::PPhi => "P_phi".into(),
            BasisKind::PGamma(g) => format!("P_gamma[k={}]", g.exponent()),
            BasisKind::RBeta(b) => format!("R_beta[k={}]", b.exponent()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BasisElement {
    pub kind: BasisKind,
    pub function: L2Function,
    /// The squared norm predicted in closed form.
    pub norm_sq: BigRational,
}

/// The orthogonal basis of Legendre and Soto-Andrade sums.
#[derive(Clone, Debug)]
pub struct OrthogonalBasisL {
    pub elements: Vec<BasisElement>,
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

impl OrthogonalBasisL {
    pub fn build(ctx: &FieldCtx) -> Self {
        let q = ctx.q();
        let qi = q as i64;
        let mut elements = Vec::new();
        let eps = MultCharFq::trivial(q);
        let shift = CycNum::from_frac(q - 1, qi - 1, qi);
        elements.push(BasisElement {
            kind: BasisKind::PEpsilonShifted,
            function: legendre_function(ctx, &eps).shift(&shift),
            norm_sq: ratio(qi * qi - 1, qi),
        });
        elements.push(BasisElement {
            kind: BasisKind::PPhi,
            function: legendre_function(ctx, &MultCharFq::quadratic(q)),
            norm_sq: ratio(qi * qi - 1, qi * qi),
        });
        for g in enumerate_gamma_set(q) {
            elements.push(BasisElement {
                kind: BasisKind::PGamma(g),
                function: legendre_function(ctx, &g),
                norm_sq: ratio(qi - 1, qi),
            });
        }
        for b in enumerate_beta_set(q) {
            elements.push(BasisElement {
                kind: BasisKind::RBeta(b),
                function: soto_andrade_function(ctx, &b),
                norm_sq: ratio(qi + 1, qi),
            });
        }
        OrthogonalBasisL { elements }
    }

    /// The exact Gram matrix `<b_i, b_j>`.
    pub fn gram(&self, ctx: &FieldCtx) -> Vec<Vec<CycNum>> {
        self.elements
            .iter()
            .map(|a| {
                self.elements
                    .iter()
                    .map(|b| l2_inner(ctx, &a.function, &b.function).expect("same field"))
                    .collect()
            })
            .collect()
    }

    /// Whether the Gram matrix is diagonal with the predicted norms.
    pub fn check_gram(&self, ctx: &FieldCtx) -> bool {
        let gram = self.gram(ctx);
        gram.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, v)| {
                if i == j {
                    v.as_rational().as_ref() == Some(&self.elements[i].norm_sq)
                } else {
                    v.is_zero()
                }
            })
        })
    }

    /// `|<f, b'>|^2` for each normalized basis element `b' = b / |b|`.
    pub fn squared_coefficients(
        &self,
        ctx: &FieldCtx,
        f: &L2Function,
    ) -> Result<Vec<(BasisKind, CycNum)>> {
        self.elements
            .iter()
            .map(|b| {
                let ip = l2_inner(ctx, f, &b.function)?;
                let inv_norm = b.norm_sq.recip();
                Ok((b.kind, (&ip * &ip.conj()).scale(&inv_norm)))
            })
            .collect()
    }
}

/// `f(x) = phi(1 - x) P_phi(x)`.
pub fn f_function(ctx: &FieldCtx) -> L2Function {
    let phi = MultCharFq::quadratic(ctx.q());
    L2Function::from_fn(ctx, |x| {
        phi.eval(ctx, ctx.sub(ctx.one(), x)) * legendre_sum(ctx, &phi, x)
    })
}

/// `1 - 1/q - 2/q^2`.
pub fn f_norm_sq_closed(q: u32) -> BigRational {
    let q = q as i64;
    BigRational::one() - ratio(1, q) - ratio(2, q * q)
}

/// `sum_{x != 0} phi((x + 1/x)^2 - 4d)`, an integer.
pub fn phi_sum_x_plus_inverse(ctx: &FieldCtx, d: Fq) -> i64 {
    let four_d = ctx.mul(ctx.from_int(4), d);
    let mut s = 0;
    for x in ctx.units() {
        let y = ctx.add(x, ctx.inv(x).unwrap());
        match phi_exponent(ctx, ctx.sub(ctx.mul(y, y), four_d)) {
            Some(0) => s += 1,
            Some(_) => s -= 1,
            None => {}
        }
    }
    s
}

/// Exact rational value of a real `CycNum` known to lie in `Q`.
pub fn rational(v: &CycNum) -> BigRational {
    v.as_rational().unwrap_or_else(BigRational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn measure_mass() {
        let f = FieldCtx::new(7, 1).unwrap();
        let m = Measure::new(&f);
        assert_eq!(f.elements().map(|x| m.weight(x)).sum::<i64>(), m.total());
        assert_eq!(m.weight(f.from_int(-1)), 8);
    }

    #[test]
    fn legendre_examples() {
        let f = FieldCtx::new(5, 1).unwrap();
        assert_eq!(
            legendre_sum(&f, &MultCharFq::quadratic(5), f.zero()),
            CycNum::from_frac(1, -2, 5)
        );
        for q in [5, 7, 9, 11, 13] {
            let f = FieldCtx::for_order(q).unwrap();
            let qi = q as i64;
            let eps = MultCharFq::trivial(q);
            for a in f.elements() {
                let want = if a == f.one() || a == f.from_int(-1) {
                    CycNum::from_frac(1, qi - 2, qi)
                } else {
                    CycNum::from_frac(1, -2, qi)
                };
                assert_eq!(legendre_sum(&f, &eps, a), want);
            }
            for g in enumerate_gamma_set(q) {
                assert_eq!(legendre_sum(&f, &g, f.one()), CycNum::from_frac(1, -1, qi));
                assert_eq!(
                    legendre_sum(&f, &g, f.from_int(-1)),
                    CycNum::from_frac(1, -g.at_minus_one(), qi)
                );
            }
            for b in enumerate_beta_set(q) {
                assert_eq!(
                    soto_andrade_sum(&f, &b, f.one()),
                    CycNum::from_frac(1, 1, qi)
                );
                assert_eq!(
                    soto_andrade_sum(&f, &b, f.from_int(-1)),
                    CycNum::from_frac(1, -b.at_i(), qi)
                );
            }
        }
    }

    #[test]
    fn soto_andrade_by_direct_double_loop() {
        // independent oracle: r = u + v t expanded by hand, r^q via repeated multiplication
        let f = FieldCtx::new(5, 1).unwrap();
        let beta = enumerate_beta_set(5)
            .into_iter()
            .find(|b| b.order() == 3)
            .unwrap();
        let phi = MultCharFq::quadratic(5);
        let a = f.zero();
        let mut acc = CycNum::zero(6);
        for u in f.elements() {
            for v in f.elements() {
                let r = f.fq2(u, v);
                if r.is_zero() {
                    continue;
                }
                let mut rq = r;
                for _ in 1..5 {
                    rq = f.mul2(rq, r);
                }
                let tr = f.to_base(f.add2(r, rq)).unwrap();
                let nm = f.to_base(f.mul2(r, rq)).unwrap();
                let arg = f.sub(f.mul(tr, tr), f.mul(f.from_int(2), nm));
                acc = acc + beta.eval(&f, r) * phi.eval(&f, arg);
            }
        }
        assert_eq!(soto_andrade_sum(&f, &beta, a), acc.div_int(20));
    }

    #[test]
    fn realness_and_inversion() {
        for q in [5, 7, 9, 13] {
            let f = FieldCtx::for_order(q).unwrap();
            for a in f.elements() {
                for g in enumerate_gamma_set(q) {
                    let v = legendre_sum(&f, &g, a);
                    assert!(v.is_real());
                    assert_eq!(v, legendre_sum(&f, &g.inverse(), a));
                }
                for b in enumerate_beta_set(q) {
                    let v = soto_andrade_sum(&f, &b, a);
                    assert!(v.is_real());
                    assert_eq!(v, soto_andrade_sum(&f, &b.inverse(), a));
                }
            }
        }
    }

    #[test]
    fn gram_matrix_is_diagonal() {
        for q in [3, 5, 7, 9] {
            let f = FieldCtx::for_order(q).unwrap();
            let basis = OrthogonalBasisL::build(&f);
            assert_eq!(basis.elements.len() as u32, q);
            assert!(basis.check_gram(&f), "q={q}");
        }
    }

    #[test]
    fn f_norm_and_parseval() {
        for q in [5, 7, 9] {
            let f = FieldCtx::for_order(q).unwrap();
            let fun = f_function(&f);
            assert!(fun.at(f.one()).is_zero());
            let n = l2_inner(&f, &fun, &fun).unwrap();
            assert_eq!(n.as_rational().unwrap(), f_norm_sq_closed(q));
            let basis = OrthogonalBasisL::build(&f);
            let coeffs = basis.squared_coefficients(&f, &fun).unwrap();
            let total = coeffs.iter().fold(CycNum::zero(1), |a, (_, c)| a + c);
            assert_eq!(total.as_rational().unwrap(), f_norm_sq_closed(q));
        }
        assert_eq!(f_norm_sq_closed(5), ratio(18, 25));
    }

    #[test]
    fn phi_sum_matches_legendre() {
        for q in [5, 7, 9, 11, 13] {
            let f = FieldCtx::for_order(q).unwrap();
            let phi = MultCharFq::quadratic(q);
            for d in f.elements().filter(|&d| d != f.zero() && d != f.one()) {
                let lhs = phi_sum_x_plus_inverse(&f, d);
                let arg = f.sub(f.add(d, d), f.one());
                let rhs = legendre_sum(&f, &phi, arg).mul_int(q as i64) - CycNum::from_int(1, 2);
                assert_eq!(CycNum::from_int(1, lhs), rhs);
            }
        }
    }

    #[test]
    fn domain_mismatch() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        let f7 = FieldCtx::new(7, 1).unwrap();
        let a = f_function(&f5);
        let b = f_function(&f7);
        assert_eq!(l2_inner(&f5, &a, &b), Err(Error::DomainMismatch(5, 7)));
    }
}
