//! Finite fields `GF(q)` and `GF(q^2)` for odd prime powers `q`.
//!
//! Elements are small copyable handles; all arithmetic goes through a
//! [`FieldCtx`], which owns the addition table and the discrete-log tables of
//! both fields. `GF(q)` elements are encoded as `sum c_i p^i` over their
//! coefficient vector in the polynomial basis, `GF(q^2)` elements as `u + v q`
//! for `u + v t`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest field order accepted by [`FieldCtx::new`].
pub const DEFAULT_MAX_Q: u32 = 64;

/// An element of `GF(q)`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Fq(u32);

impl Fq {
    /// Integer encoding of the coefficient vector (`sum c_i p^i`).
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element `u + v t` of `GF(q^2)`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Fq2(u32);

impl Fq2 {
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^e` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p as u32, e))
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Polynomials over Z_p, lowest degree first.
fn decode(mut n: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for c in out.iter_mut() {
        *c = n % p;
        n /= p;
    }
    out
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    // m monic
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > dm {
        let top = r.pop().unwrap();
        if top != 0 {
            let base = r.len() - dm;
            for i in 0..dm {
                r[base + i] = (r[base + i] + p - (top * m[i]) % p) % p;
            }
        }
    }
    r.resize(dm, 0);
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, m, p)
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        for enc in 0..p.pow(d as u32) {
            let mut div = decode(enc, p, d);
            div.push(1);
            if poly_rem(poly, &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Arithmetic context for `GF(q)` and its quadratic extension.
#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    modulus2: [Fq; 2],
    generator_q: Fq,
    generator_q2: Fq2,
    i_elem: Fq2,
    add: Vec<u32>,
    neg: Vec<u32>,
    log: Vec<u32>,
    exp: Vec<u32>,
    log2: Vec<u32>,
    exp2: Vec<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .field("modulus2", &self.modulus2)
            .field("generator_q", &self.generator_q)
            .field("generator_q2", &self.generator_q2)
            .finish()
    }
}

impl FieldCtx {
    /// Builds `GF(p^e)` with the default order cap of [`DEFAULT_MAX_Q`].
    pub fn new(p: u32, e: u32) -> Result<Self> {
        Self::with_budget(p, e, DEFAULT_MAX_Q)
    }

    /// Builds `GF(q)` from the field order.
    pub fn for_order(q: u32) -> Result<Self> {
        let (p, e) = prime_power(q as u64).ok_or(Error::NotOddPrimePower(q as u64))?;
        if p == 2 {
            return Err(Error::NotOddPrimePower(q as u64));
        }
        Self::new(p, e)
    }

    /// Builds `GF(p^e)`, rejecting orders above `max_q`.
    ///
    /// The modulus, the defining polynomial of `GF(q^2)` and both generators
    /// are the smallest valid candidates in encoding order.
    pub fn with_budget(p: u32, e: u32, max_q: u32) -> Result<Self> {
        if p == 2 || !is_prime(p as u64) {
            return Err(Error::NotOddPrime(p as u64));
        }
        if e == 0 {
            return Err(Error::NotOddPrimePower(1));
        }
        let q64 = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        if q64 > max_q as u64 {
            return Err(Error::BudgetExceeded(format!(
                "field order {q64} exceeds cap {max_q}"
            )));
        }
        let q = q64 as u32;
        let n = e as usize;

        let modulus = (0..q)
            .map(|enc| {
                let mut poly = decode(enc, p, n);
                poly.push(1);
                poly
            })
            .find(|poly| is_irreducible(poly, p))
            .ok_or(Error::NotIrreducibleFound { p, degree: e })?;

        let mut add = vec![0u32; (q * q) as usize];
        let mut neg = vec![0u32; q as usize];
        for a in 0..q {
            let ca = decode(a, p, n);
            neg[a as usize] = encode(&ca.iter().map(|&c| (p - c) % p).collect::<Vec<_>>(), p);
            for b in 0..q {
                let cb = decode(b, p, n);
                let s: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&s, p);
            }
        }

        let mul_raw = |a: u32, b: u32| -> u32 {
            encode(
                &poly_mulmod(&decode(a, p, n), &decode(b, p, n), &modulus, p),
                p,
            )
        };
        let pow_raw = |mut b: u32, mut k: u64| -> u32 {
            let mut acc = 1u32;
            while k > 0 {
                if k & 1 == 1 {
                    acc = mul_raw(acc, b);
                }
                b = mul_raw(b, b);
                k >>= 1;
            }
            acc
        };
        let order = (q - 1) as u64;
        let factors = distinct_prime_factors(order);
        let gen = (1..q)
            .find(|&c| factors.iter().all(|&l| pow_raw(c, order / l) != 1))
            .expect("GF(q)* is cyclic");
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for j in 0..order as u32 {
            exp.push(cur);
            log[cur as usize] = j;
            cur = mul_raw(cur, gen);
        }

        let mut ctx = FieldCtx {
            p,
            e,
            q,
            modulus,
            modulus2: [Fq(0), Fq(0)],
            generator_q: Fq(gen),
            generator_q2: Fq2(0),
            i_elem: Fq2(0),
            add,
            neg,
            log,
            exp,
            log2: Vec::new(),
            exp2: Vec::new(),
        };

        let (c0, c1) = (0..q * q)
            .map(|enc| (Fq(enc % q), Fq(enc / q)))
            .find(|&(c0, c1)| {
                ctx.elements().all(|r| {
                    let val = ctx.add(ctx.add(ctx.mul(r, r), ctx.mul(c1, r)), c0);
                    !val.is_zero()
                })
            })
            .expect("an irreducible quadratic exists over every finite field");
        ctx.modulus2 = [c0, c1];

        let order2 = (q as u64) * (q as u64) - 1;
        let factors2 = distinct_prime_factors(order2);
        let pow2_raw = |ctx: &FieldCtx, mut b: Fq2, mut k: u64| -> Fq2 {
            let mut acc = ctx.fq2(ctx.one(), ctx.zero());
            while k > 0 {
                if k & 1 == 1 {
                    acc = ctx.mul2_raw(acc, b);
                }
                b = ctx.mul2_raw(b, b);
                k >>= 1;
            }
            acc
        };
        let one2 = ctx.fq2(ctx.one(), ctx.zero());
        let gen2 = (1..q * q)
            .map(Fq2)
            .find(|&c| {
                factors2
                    .iter()
                    .all(|&l| pow2_raw(&ctx, c, order2 / l) != one2)
            })
            .expect("GF(q^2)* is cyclic");
        let mut exp2 = Vec::with_capacity(order2 as usize);
        let mut log2 = vec![0u32; (q * q) as usize];
        let mut cur = one2;
        for j in 0..order2 as u32 {
            exp2.push(cur.0);
            log2[cur.0 as usize] = j;
            cur = ctx.mul2_raw(cur, gen2);
        }
        ctx.exp2 = exp2;
        ctx.log2 = log2;
        ctx.generator_q2 = gen2;
        ctx.i_elem = ctx.exp2(q.div_ceil(2));
        Ok(ctx)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Monic defining polynomial of `GF(q)` over `Z_p`, lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// `[c0, c1]` for the defining polynomial `t^2 + c1 t + c0` of `GF(q^2)`.
    pub fn modulus2(&self) -> [Fq; 2] {
        self.modulus2
    }

    pub fn generator_q(&self) -> Fq {
        self.generator_q
    }

    pub fn generator_q2(&self) -> Fq2 {
        self.generator_q2
    }

    /// The element `i = g2^((q+1)/2)` with `i^2` in `GF(q)*` and `i` outside `GF(q)`.
    pub fn i_elem(&self) -> Fq2 {
        self.i_elem
    }

    // ---- GF(q) ----

    pub fn zero(&self) -> Fq {
        Fq(0)
    }

    pub fn one(&self) -> Fq {
        Fq(1)
    }

    /// All `q` elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q).map(Fq)
    }

    /// The nonzero elements in encoding order.
    pub fn units(&self) -> impl Iterator<Item = Fq> {
        (1..self.q).map(Fq)
    }

    /// Element from its encoding; panics when out of range.
    pub fn elem(&self, index: u32) -> Fq {
        assert!(
            index < self.q,
            "encoding {index} out of range for GF({})",
            self.q
        );
        Fq(index)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Fq {
        let mut c: Vec<u32> = coeffs.iter().map(|&x| x % self.p).collect();
        c.resize(self.e as usize, 0);
        Fq(encode(&c, self.p))
    }

    pub fn coeffs(&self, x: Fq) -> Vec<u32> {
        decode(x.0, self.p, self.e as usize)
    }

    pub fn add(&self, x: Fq, y: Fq) -> Fq {
        Fq(self.add[(x.0 * self.q + y.0) as usize])
    }

    pub fn neg(&self, x: Fq) -> Fq {
        Fq(self.neg[x.0 as usize])
    }

    pub fn sub(&self, x: Fq, y: Fq) -> Fq {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: Fq, y: Fq) -> Fq {
        if x.0 == 0 || y.0 == 0 {
            return Fq(0);
        }
        let k = (self.log[x.0 as usize] + self.log[y.0 as usize]) % (self.q - 1);
        Fq(self.exp[k as usize])
    }

    pub fn inv(&self, x: Fq) -> Result<Fq> {
        if x.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let k = (self.q - 1 - self.log[x.0 as usize]) % (self.q - 1);
        Ok(Fq(self.exp[k as usize]))
    }

    pub fn div(&self, x: Fq, y: Fq) -> Result<Fq> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^n`, with `0^0 = 1`; negative exponents need `x != 0`.
    pub fn pow(&self, x: Fq, n: i64) -> Fq {
        if n == 0 {
            return self.one();
        }
        if x.0 == 0 {
            assert!(n > 0, "zero to a negative power");
            return Fq(0);
        }
        let m = (self.q - 1) as i64;
        let k = (self.log[x.0 as usize] as i64 * n).rem_euclid(m);
        Fq(self.exp[k as usize])
    }

    /// Discrete log to base `generator_q`; `None` at zero.
    pub fn log(&self, x: Fq) -> Option<u32> {
        (x.0 != 0).then(|| self.log[x.0 as usize])
    }

    /// `generator_q^k`.
    pub fn exp(&self, k: i64) -> Fq {
        Fq(self.exp[k.rem_euclid((self.q - 1) as i64) as usize])
    }

    pub fn is_square(&self, x: Fq) -> bool {
        x.0 != 0 && self.log[x.0 as usize].is_multiple_of(2)
    }

    /// Absolute trace `x + x^p + ... + x^(p^(e-1))`, as an integer in `[0, p)`.
    pub fn trace(&self, x: Fq) -> u32 {
        let mut acc = self.zero();
        let mut cur = x;
        for _ in 0..self.e {
            acc = self.add(acc, cur);
            cur = self.pow(cur, self.p as i64);
        }
        debug_assert!(acc.0 < self.p);
        acc.0
    }

    // ---- GF(q^2) ----

    pub fn fq2(&self, u: Fq, v: Fq) -> Fq2 {
        Fq2(u.0 + v.0 * self.q)
    }

    pub fn parts(&self, r: Fq2) -> (Fq, Fq) {
        (Fq(r.0 % self.q), Fq(r.0 / self.q))
    }

    pub fn embed(&self, x: Fq) -> Fq2 {
        Fq2(x.0)
    }

    /// `Some(x)` when `r` lies in the embedded `GF(q)`.
    pub fn to_base(&self, r: Fq2) -> Option<Fq> {
        (r.0 < self.q).then_some(Fq(r.0))
    }

    /// All `q^2` elements in encoding order.
    pub fn elements2(&self) -> impl Iterator<Item = Fq2> {
        (0..self.q * self.q).map(Fq2)
    }

    pub fn add2(&self, x: Fq2, y: Fq2) -> Fq2 {
        let (a, b) = self.parts(x);
        let (c, d) = self.parts(y);
        self.fq2(self.add(a, c), self.add(b, d))
    }

    pub fn neg2(&self, x: Fq2) -> Fq2 {
        let (a, b) = self.parts(x);
        self.fq2(self.neg(a), self.neg(b))
    }

    pub fn sub2(&self, x: Fq2, y: Fq2) -> Fq2 {
        self.add2(x, self.neg2(y))
    }

    fn mul2_raw(&self, x: Fq2, y: Fq2) -> Fq2 {
        let (u1, v1) = self.parts(x);
        let (u2, v2) = self.parts(y);
        let [c0, c1] = self.modulus2;
        let uu = self.mul(u1, u2);
        let uv = self.add(self.mul(u1, v2), self.mul(v1, u2));
        let vv = self.mul(v1, v2);
        self.fq2(
            self.sub(uu, self.mul(c0, vv)),
            self.sub(uv, self.mul(c1, vv)),
        )
    }

    pub fn mul2(&self, x: Fq2, y: Fq2) -> Fq2 {
        if x.0 == 0 || y.0 == 0 {
            return Fq2(0);
        }
        let m = self.q * self.q - 1;
        let k = (self.log2[x.0 as usize] + self.log2[y.0 as usize]) % m;
        Fq2(self.exp2[k as usize])
    }

    pub fn inv2(&self, x: Fq2) -> Result<Fq2> {
        if x.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let m = self.q * self.q - 1;
        Ok(Fq2(self.exp2[((m - self.log2[x.0 as usize]) % m) as usize]))
    }

    pub fn pow2(&self, x: Fq2, n: i64) -> Fq2 {
        if n == 0 {
            return self.embed(self.one());
        }
        if x.0 == 0 {
            assert!(n > 0, "zero to a negative power");
            return Fq2(0);
        }
        let m = (self.q * self.q - 1) as i64;
        Fq2(self.exp2[(self.log2[x.0 as usize] as i64 * n).rem_euclid(m) as usize])
    }

    pub fn log2(&self, x: Fq2) -> Option<u32> {
        (x.0 != 0).then(|| self.log2[x.0 as usize])
    }

    /// `generator_q2^k`.
    pub fn exp2(&self, k: u32) -> Fq2 {
        Fq2(self.exp2[(k % (self.q * self.q - 1)) as usize])
    }

    /// `r^q`.
    pub fn frobenius(&self, r: Fq2) -> Fq2 {
        self.pow2(r, self.q as i64)
    }

    /// `r^(q+1)`, which lies in `GF(q)`.
    pub fn norm(&self, r: Fq2) -> Fq {
        self.to_base(self.mul2(r, self.frobenius(r)))
            .expect("norm lands in GF(q)")
    }

    /// `r + r^q`, which lies in `GF(q)`.
    pub fn trace2(&self, r: Fq2) -> Fq {
        self.to_base(self.add2(r, self.frobenius(r)))
            .expect("trace lands in GF(q)")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf5_basics() {
        let f = FieldCtx::new(5, 1).unwrap();
        assert_eq!(f.generator_q(), f.from_int(2));
        assert_eq!(f.mul(f.from_int(3), f.from_int(4)), f.from_int(2));
        assert_eq!(f.inv(f.zero()), Err(Error::DivisionByZero));
        assert_eq!(f.inv(f.from_int(2)).unwrap(), f.from_int(3));
        assert!(f.is_square(f.from_int(4)));
        assert!(!f.is_square(f.from_int(2)));
    }

    #[test]
    fn gf9_modulus_is_t2_plus_1() {
        let f = FieldCtx::new(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        let t = f.from_coeffs(&[0, 1]);
        assert_eq!(f.mul(t, t), f.from_int(2));
        assert_eq!(f.trace(f.one()), 2);
    }

    #[test]
    fn rejects_bad_characteristic() {
        assert_eq!(FieldCtx::new(2, 1).unwrap_err(), Error::NotOddPrime(2));
        assert_eq!(FieldCtx::new(9, 1).unwrap_err(), Error::NotOddPrime(9));
        assert!(matches!(FieldCtx::new(3, 4), Err(Error::BudgetExceeded(_))));
        assert!(FieldCtx::with_budget(3, 4, 81).is_ok());
        assert_eq!(
            FieldCtx::for_order(4).unwrap_err(),
            Error::NotOddPrimePower(4)
        );
        assert_eq!(
            FieldCtx::for_order(15).unwrap_err(),
            Error::NotOddPrimePower(15)
        );
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(13), Some((13, 1)));
        assert_eq!(prime_power(12), None);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, e) in [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (3, 3)] {
            let f = FieldCtx::new(p, e).unwrap();
            for x in f.elements() {
                assert_eq!(f.add(x, f.neg(x)), f.zero());
                if !x.is_zero() {
                    assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one());
                }
                for y in f.elements() {
                    assert_eq!(f.add(x, y), f.add(y, x));
                    assert_eq!(f.mul(x, y), f.mul(y, x));
                    for z in f.elements().step_by(2) {
                        assert_eq!(
                            f.mul(x, f.add(y, z)),
                            f.add(f.mul(x, y), f.mul(x, z)),
                            "distributivity in GF({})",
                            f.q()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn extension_field_invariants() {
        for q in [3, 5, 7, 9, 11, 13, 25] {
            let f = FieldCtx::for_order(q).unwrap();
            let q2 = q * q;
            // generator orders
            assert_eq!(f.pow(f.generator_q(), (q - 1) as i64), f.one());
            let g2 = f.generator_q2();
            let mut seen = std::collections::HashSet::new();
            let mut cur = f.embed(f.one());
            for _ in 0..q2 - 1 {
                assert!(seen.insert(cur));
                cur = f.mul2(cur, g2);
            }
            // Frobenius fixes exactly GF(q) and is an involution
            for r in f.elements2() {
                let fr = f.frobenius(r);
                assert_eq!(fr == r, f.to_base(r).is_some());
                assert_eq!(f.frobenius(fr), r);
                assert_eq!(f.mul2(r, fr), f.embed(f.norm(r)));
            }
            assert_eq!(f.frobenius(g2), f.pow2(g2, q as i64));
            // i is outside GF(q) and squares into it
            let i = f.i_elem();
            assert!(f.to_base(i).is_none());
            assert!(f.to_base(f.mul2(i, i)).is_some());
        }
    }

    #[test]
    fn frobenius_fixes_embedded_three() {
        let f = FieldCtx::new(5, 1).unwrap();
        let three = f.embed(f.from_int(3));
        assert_eq!(f.frobenius(three), three);
    }
}
