//! Multiplicative characters of `GF(q)*` and of `GF(q^2)*/GF(q)*`, and Gauss sums.

use crate::cyclotomic::{CycNum, RootSum};
use crate::field::{FieldCtx, Fq, Fq2};

/// `gamma(g^j) = zeta_{q-1}^{jk}` for the fixed generator `g` of `GF(q)*`,
/// extended by `gamma(0) = 0`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MultCharFq {
    q: u32,
    k: u32,
}

impl MultCharFq {
    pub fn new(q: u32, k: i64) -> Self {
        MultCharFq {
            q,
            k: k.rem_euclid((q - 1) as i64) as u32,
        }
    }

    /// The trivial character `epsilon` (still zero at 0).
    pub fn trivial(q: u32) -> Self {
        Self::new(q, 0)
    }

    /// The quadratic character `phi`.
    pub fn quadratic(q: u32) -> Self {
        Self::new(q, ((q - 1) / 2) as i64)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn exponent(&self) -> u32 {
        self.k
    }

    /// Conductor of the value field.
    pub fn modulus(&self) -> u32 {
        self.q - 1
    }

    pub fn is_trivial(&self) -> bool {
        self.k == 0
    }

    pub fn order(&self) -> u32 {
        let m = self.q - 1;
        m / gcd(self.k, m)
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.q, -(self.k as i64))
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.q, other.q);
        Self::new(self.q, self.k as i64 + other.k as i64)
    }

    /// The exponent `a` with `gamma(x) = zeta_{q-1}^a`; `None` at zero.
    pub fn log_value(&self, ctx: &FieldCtx, x: Fq) -> Option<i64> {
        ctx.log(x)
            .map(|j| (j as i64 * self.k as i64) % (self.q - 1) as i64)
    }

    pub fn eval(&self, ctx: &FieldCtx, x: Fq) -> CycNum {
        match self.log_value(ctx, x) {
            Some(a) => CycNum::root(self.modulus(), a),
            None => CycNum::zero(self.modulus()),
        }
    }

    /// `gamma(-1)`, which is always `+1` or `-1`.
    pub fn at_minus_one(&self) -> i64 {
        if self.k.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// `beta(g2^j) = zeta_{q+1}^{jk}` for the fixed generator `g2` of `GF(q^2)*`.
/// Such characters are trivial on `GF(q)*`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MultCharB {
    q: u32,
    k: u32,
}

impl MultCharB {
    pub fn new(q: u32, k: i64) -> Self {
        MultCharB {
            q,
            k: k.rem_euclid((q + 1) as i64) as u32,
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn exponent(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u32 {
        self.q + 1
    }

    pub fn order(&self) -> u32 {
        let m = self.q + 1;
        m / gcd(self.k, m)
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.q, -(self.k as i64))
    }

    pub fn log_value(&self, ctx: &FieldCtx, r: Fq2) -> Option<i64> {
        ctx.log2(r)
            .map(|j| (j as i64 * self.k as i64) % (self.q + 1) as i64)
    }

    pub fn eval(&self, ctx: &FieldCtx, r: Fq2) -> CycNum {
        match self.log_value(ctx, r) {
            Some(a) => CycNum::root(self.modulus(), a),
            None => CycNum::zero(self.modulus()),
        }
    }

    /// `beta(i) = (-1)^k`.
    pub fn at_i(&self) -> i64 {
        if self.k.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// All characters of `GF(q)*`, by exponent.
pub fn all_fq_chars(q: u32) -> Vec<MultCharFq> {
    (0..q - 1).map(|k| MultCharFq::new(q, k as i64)).collect()
}

/// Characters of `GF(q)*` of order greater than 2, one per inversion pair
/// (the smaller exponent). There are `(q-3)/2` of them.
pub fn enumerate_gamma_set(q: u32) -> Vec<MultCharFq> {
    (1..(q - 1) / 2)
        .map(|k| MultCharFq::new(q, k as i64))
        .collect()
}

/// Characters of `GF(q^2)*/GF(q)*` of order greater than 2, one per inversion
/// pair. There are `(q-1)/2` of them.
pub fn enumerate_beta_set(q: u32) -> Vec<MultCharB> {
    (1..q.div_ceil(2))
        .map(|k| MultCharB::new(q, k as i64))
        .collect()
}

/// `g(chi) = sum_{x != 0} chi(x) theta_c(x)` with `theta_c(x) = zeta_p^{Tr(c x)}`.
///
/// The result lives in `Q(zeta_{p(q-1)})`. Panics if `c = 0`.
pub fn gauss_sum(ctx: &FieldCtx, chi: &MultCharFq, c: Fq) -> CycNum {
    assert!(!c.is_zero(), "additive character must be nontrivial");
    let p = ctx.p();
    let n = ctx.q() - 1;
    let mut acc = RootSum::new(p * n);
    for x in ctx.units() {
        let a = chi.log_value(ctx, x).expect("unit");
        let t = ctx.trace(ctx.mul(c, x)) as i64;
        acc.add(a * p as i64 + t * n as i64, 1);
    }
    acc.into_cyc()
}

/// `1 / g(chi)` for the additive character with `c = 1`.
///
/// Uses `g(chi) g(conj chi) = chi(-1) q` for nontrivial `chi` and `g(epsilon) = -1`.
pub fn gauss_sum_inverse(ctx: &FieldCtx, chi: &MultCharFq) -> CycNum {
    if chi.is_trivial() {
        return CycNum::from_int(ctx.p() * (ctx.q() - 1), -1);
    }
    gauss_sum(ctx, &chi.inverse(), ctx.one())
        .mul_int(chi.at_minus_one())
        .div_int(ctx.q() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_character_values() {
        let f = FieldCtx::new(5, 1).unwrap();
        let phi = MultCharFq::quadratic(5);
        assert_eq!(phi.eval(&f, f.from_int(2)), CycNum::from_int(4, -1));
        assert_eq!(phi.eval(&f, f.from_int(4)), CycNum::from_int(4, 1));
        assert!(MultCharFq::trivial(5).eval(&f, f.zero()).is_zero());
        for q in [3, 5, 7, 9, 11, 13] {
            let f = FieldCtx::for_order(q).unwrap();
            let phi = MultCharFq::quadratic(q);
            let expect = if q % 4 == 1 { 1 } else { -1 };
            assert_eq!(phi.eval(&f, f.from_int(-1)), CycNum::from_int(4, expect));
            assert_eq!(phi.at_minus_one(), expect);
        }
    }

    #[test]
    fn set_sizes() {
        assert_eq!(
            enumerate_gamma_set(5)
                .iter()
                .map(|c| c.exponent())
                .collect::<Vec<_>>(),
            [1]
        );
        assert_eq!(
            enumerate_gamma_set(7)
                .iter()
                .map(|c| c.exponent())
                .collect::<Vec<_>>(),
            [1, 2]
        );
        assert_eq!(enumerate_gamma_set(9).len(), 3);
        assert_eq!(
            enumerate_beta_set(5)
                .iter()
                .map(|c| c.exponent())
                .collect::<Vec<_>>(),
            [1, 2]
        );
        assert_eq!(enumerate_beta_set(7).len(), 3);
        assert_eq!(enumerate_beta_set(3).len(), 1);
        for q in [5, 7, 9, 11, 13] {
            assert!(enumerate_gamma_set(q).iter().all(|g| g.order() > 2));
            assert!(enumerate_beta_set(q).iter().all(|b| b.order() > 2));
        }
    }

    #[test]
    fn orthogonality() {
        for q in [5, 7, 9] {
            let f = FieldCtx::for_order(q).unwrap();
            let chars = all_fq_chars(q);
            for a in &chars {
                for b in &chars {
                    let s = f.units().fold(CycNum::zero(q - 1), |acc, x| {
                        acc + a.eval(&f, x) * b.eval(&f, x).conj()
                    });
                    let want = if a == b { (q - 1) as i64 } else { 0 };
                    assert_eq!(s, CycNum::from_int(q - 1, want));
                }
            }
        }
    }

    #[test]
    fn multiplicative_and_inverse() {
        let f = FieldCtx::new(7, 1).unwrap();
        for chi in all_fq_chars(7) {
            for x in f.units() {
                assert!((chi.eval(&f, x) * chi.eval(&f, f.inv(x).unwrap())).is_one());
                assert_eq!(chi.inverse().eval(&f, x), chi.eval(&f, x).conj());
                for y in f.units() {
                    assert_eq!(chi.eval(&f, f.mul(x, y)), chi.eval(&f, x) * chi.eval(&f, y));
                }
            }
        }
    }

    #[test]
    fn beta_trivial_on_base_field() {
        for q in [3, 5, 7, 9] {
            let f = FieldCtx::for_order(q).unwrap();
            for beta in enumerate_beta_set(q) {
                for x in f.units() {
                    assert!(beta.eval(&f, f.embed(x)).is_one());
                }
                for r in f.elements2().filter(|r| !r.is_zero()) {
                    let v = beta.eval(&f, r);
                    assert!(!v.is_zero());
                    let scaled = f.mul2(r, f.embed(f.generator_q()));
                    assert_eq!(beta.eval(&f, scaled), v);
                }
                assert_eq!(beta.eval(&f, f.i_elem()), CycNum::from_int(4, beta.at_i()));
            }
        }
    }

    #[test]
    fn gauss_sums() {
        let f = FieldCtx::new(5, 1).unwrap();
        assert_eq!(
            gauss_sum(&f, &MultCharFq::trivial(5), f.one()),
            CycNum::from_int(4, -1)
        );
        let g = gauss_sum(&f, &MultCharFq::quadratic(5), f.one());
        assert_eq!(&g * &g.conj(), CycNum::from_int(4, 5));

        let f = FieldCtx::new(7, 1).unwrap();
        let gamma = MultCharFq::new(7, 1);
        assert_eq!(gamma.order(), 6);
        let prod = gauss_sum(&f, &gamma, f.one()) * gauss_sum(&f, &gamma.inverse(), f.one());
        assert_eq!(prod, CycNum::from_int(6, gamma.at_minus_one() * 7));

        for q in [5, 7, 9, 13] {
            let f = FieldCtx::for_order(q).unwrap();
            for chi in all_fq_chars(q) {
                let g = gauss_sum(&f, &chi, f.one());
                assert!((g * gauss_sum_inverse(&f, &chi)).is_one());
            }
        }
    }
}
