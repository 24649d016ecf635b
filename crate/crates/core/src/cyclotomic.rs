//! Exact arithmetic in cyclotomic fields `Q(zeta_m)`.
//!
//! A [`CycNum`] is stored in the power basis `1, z, ..., z^(phi(m)-1)` of
//! `Q[x]/Phi_m(x)` with a single positive common denominator. Every value is
//! kept fully reduced, so equality of two numbers with the same conductor is
//! equality of coefficient vectors. Numbers with different conductors are
//! lifted to the least common multiple before they are combined.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficients of the `m`-th cyclotomic polynomial, lowest degree first.
///
/// Computed by dividing `x^m - 1` exactly by `Phi_d` for every proper divisor
/// `d` of `m`.
pub fn cyclotomic_poly(m: u32) -> Vec<i64> {
    assert!(m >= 1, "cyclotomic polynomial needs m >= 1");
    let divisors: Vec<u32> = (1..=m).filter(|d| m.is_multiple_of(*d)).collect();
    let mut known: HashMap<u32, Vec<i64>> = HashMap::new();
    for &d in &divisors {
        let mut poly = vec![0i64; d as usize + 1];
        poly[0] = -1;
        poly[d as usize] = 1;
        for &e in divisors.iter().take_while(|&&e| e < d) {
            if d % e == 0 {
                poly = exact_div(&poly, &known[&e]);
            }
        }
        known.insert(d, poly);
    }
    known.remove(&m).unwrap()
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    assert_eq!(den[dn], 1, "divisor must be monic");
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] = rem[k + i]
                    .checked_sub(c.checked_mul(d).expect("cyclotomic coefficient overflow"))
                    .expect("cyclotomic coefficient overflow");
            }
        }
    }
    assert!(rem.iter().all(|&r| r == 0), "inexact polynomial division");
    quot
}

/// Precomputed reduction data for one conductor.
#[derive(Debug)]
pub struct CycloField {
    m: u32,
    phi: usize,
    poly: Vec<i64>,
    // powers[j] = x^j mod Phi_m, sparse, for 0 <= j < m
    powers: Vec<Vec<(usize, i64)>>,
}

impl CycloField {
    fn new(m: u32) -> Self {
        let poly = cyclotomic_poly(m);
        let phi = poly.len() - 1;
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..m {
            powers.push(
                cur.iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| (i, c))
                    .collect(),
            );
            // multiply by x and fold x^phi back in
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..phi {
                    cur[i] -= top * poly[i];
                }
            }
        }
        CycloField {
            m,
            phi,
            poly,
            powers,
        }
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn modulus(&self) -> &[i64] {
        &self.poly
    }

    fn reduce_dense(&self, dense: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.phi];
        for (j, c) in dense.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(i, t) in &self.powers[j] {
                out[i] += c * t;
            }
        }
        out
    }

    fn reduce_counts(&self, dense: &[i64]) -> Vec<BigInt> {
        let mut out = vec![0i64; self.phi];
        for (j, &c) in dense.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &(i, t) in &self.powers[j] {
                out[i] += c * t;
            }
        }
        out.into_iter().map(BigInt::from).collect()
    }
}

/// Shared per-conductor reduction tables.
pub fn cyclo_field(m: u32) -> Arc<CycloField> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&m) {
        return f.clone();
    }
    let f = Arc::new(CycloField::new(m));
    cache.lock().unwrap().entry(m).or_insert(f).clone()
}

/// An exact element of `Q(zeta_m)`.
#[derive(Clone)]
pub struct CycNum {
    field: Arc<CycloField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    fn from_parts(field: Arc<CycloField>, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut out = CycNum { field, num, den };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in self.num.iter_mut() {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    pub fn zero(m: u32) -> Self {
        let field = cyclo_field(m);
        let num = vec![BigInt::zero(); field.phi];
        CycNum {
            field,
            num,
            den: BigInt::one(),
        }
    }

    pub fn one(m: u32) -> Self {
        Self::from_int(m, 1)
    }

    pub fn from_int(m: u32, n: i64) -> Self {
        let mut out = Self::zero(m);
        out.num[0] = BigInt::from(n);
        out
    }

    pub fn from_ratio(m: u32, r: &BigRational) -> Self {
        let mut out = Self::zero(m);
        out.num[0] = r.numer().clone();
        out.den = r.denom().clone();
        out.normalize();
        out
    }

    /// `n / d` as an element of `Q(zeta_m)`.
    pub fn from_frac(m: u32, n: i64, d: i64) -> Self {
        Self::from_ratio(m, &BigRational::new(n.into(), d.into()))
    }

    /// The root of unity `zeta_m^k`.
    pub fn root(m: u32, k: i64) -> Self {
        let field = cyclo_field(m);
        let j = k.rem_euclid(m as i64) as usize;
        let num = field.powers[j]
            .iter()
            .fold(vec![BigInt::zero(); field.phi], |mut v, &(i, c)| {
                v[i] = BigInt::from(c);
                v
            });
        CycNum {
            field,
            num,
            den: BigInt::one(),
        }
    }

    pub fn conductor(&self) -> u32 {
        self.field.m
    }

    /// Rational coefficients in the power basis.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// The same number viewed in `Q(zeta_big)`; `big` must be a multiple of the conductor.
    pub fn lift(&self, big: u32) -> CycNum {
        let m = self.field.m;
        assert!(big.is_multiple_of(m), "cannot lift conductor {m} to {big}");
        if big == m {
            return self.clone();
        }
        let field = cyclo_field(big);
        let step = (big / m) as usize;
        let mut dense = vec![BigInt::zero(); big as usize];
        for (i, c) in self.num.iter().enumerate() {
            dense[i * step] = c.clone();
        }
        let num = field.reduce_dense(&dense);
        CycNum {
            field,
            num,
            den: self.den.clone(),
        }
    }

    fn aligned(&self, other: &CycNum) -> (CycNum, CycNum) {
        let l = self.field.m.lcm(&other.field.m);
        (self.lift(l), other.lift(l))
    }

    /// Complex conjugate (the automorphism `zeta -> zeta^-1`).
    pub fn conj(&self) -> CycNum {
        let m = self.field.m as usize;
        let mut dense = vec![BigInt::zero(); m];
        for (i, c) in self.num.iter().enumerate() {
            dense[(m - i) % m] = c.clone();
        }
        let num = self.field.reduce_dense(&dense);
        CycNum {
            field: self.field.clone(),
            num,
            den: self.den.clone(),
        }
    }

    /// Multiplication by `zeta_m^k` where `m` is this number's conductor.
    pub fn mul_root(&self, k: i64) -> CycNum {
        let m = self.field.m as usize;
        let shift = k.rem_euclid(m as i64) as usize;
        let mut dense = vec![BigInt::zero(); m];
        for (i, c) in self.num.iter().enumerate() {
            dense[(i + shift) % m] = c.clone();
        }
        let num = self.field.reduce_dense(&dense);
        CycNum {
            field: self.field.clone(),
            num,
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, r: &BigRational) -> CycNum {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        CycNum::from_parts(self.field.clone(), num, &self.den * r.denom())
    }

    pub fn mul_int(&self, n: i64) -> CycNum {
        let num = self.num.iter().map(|c| c * n).collect();
        CycNum::from_parts(self.field.clone(), num, self.den.clone())
    }

    pub fn div_int(&self, n: i64) -> CycNum {
        assert!(n != 0, "division by zero");
        CycNum::from_parts(self.field.clone(), self.num.clone(), &self.den * n)
    }

    pub fn pow(&self, mut e: u32) -> CycNum {
        let mut base = self.clone();
        let mut acc = CycNum::one(self.field.m);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// `Some(r)` when the number lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Image under `zeta_m -> exp(2 pi i / m)`.
    pub fn to_complex(&self) -> Complex64 {
        let m = self.field.m as f64;
        let den = big_to_f64(&self.den);
        let mut z = Complex64::new(0.0, 0.0);
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = 2.0 * std::f64::consts::PI * i as f64 / m;
            z += Complex64::new(t.cos(), t.sin()) * (big_to_f64(c) / den);
        }
        z
    }

    /// Sign of a real number, certified by an explicit floating error bound.
    ///
    /// Returns `None` when the number is not real, or when its embedding is
    /// too close to zero for the bound to separate it.
    pub fn certified_sign(&self) -> Option<std::cmp::Ordering> {
        use std::cmp::Ordering;
        if self.is_zero() {
            return Some(Ordering::Equal);
        }
        if !self.is_real() {
            return None;
        }
        let den = big_to_f64(&self.den);
        let l1: f64 = self.num.iter().map(|c| big_to_f64(c).abs()).sum::<f64>() / den;
        let bound = l1 * 1e-12 + f64::MIN_POSITIVE;
        let re = self.to_complex().re;
        if re > bound {
            Some(Ordering::Greater)
        } else if re < -bound {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    /// Sum of an iterator, with `m` as the conductor of the empty sum.
    pub fn sum<'a, I: IntoIterator<Item = &'a CycNum>>(m: u32, items: I) -> CycNum {
        items.into_iter().fold(CycNum::zero(m), |acc, x| &acc + x)
    }
}

fn big_to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.field.m == other.field.m {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = self.aligned(other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycNum {}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum({self})")
    }
}

impl CycNum {
    /// `c0,c1,.../m` with each coefficient an exact rational; the CSV and JSON
    /// rendering of exact values.
    pub fn to_coeff_string(&self) -> String {
        let cs: Vec<String> = self.coeffs().iter().map(|c| c.to_string()).collect();
        format!("{}/{}", cs.join(","), self.field.m)
    }
}

impl fmt::Display for CycNum {
    /// `[c0,c1,...]/m`, each coefficient an exact rational.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]/{}", self.field.m)
    }
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &'a CycNum) -> CycNum {
        if self.field.m != rhs.field.m {
            let (a, b) = self.aligned(rhs);
            return &a + &b;
        }
        let (num, den) = if self.den == rhs.den {
            let num = self.num.iter().zip(&rhs.num).map(|(a, b)| a + b).collect();
            (num, self.den.clone())
        } else {
            let num = self
                .num
                .iter()
                .zip(&rhs.num)
                .map(|(a, b)| a * &rhs.den + b * &self.den)
                .collect();
            (num, &self.den * &rhs.den)
        };
        CycNum::from_parts(self.field.clone(), num, den)
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &'a CycNum) -> CycNum {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &'a CycNum) -> CycNum {
        if self.field.m != rhs.field.m {
            let (a, b) = self.aligned(rhs);
            return &a * &b;
        }
        let m = self.field.m as usize;
        let mut dense = vec![BigInt::zero(); m];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                dense[(i + j) % m] += a * b;
            }
        }
        let num = self.field.reduce_dense(&dense);
        CycNum::from_parts(self.field.clone(), num, &self.den * &rhs.den)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &'a CycNum) -> CycNum {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<CycNum> for &'a CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Integer combination of `m`-th roots of unity, accumulated without
/// reduction and converted to a [`CycNum`] once at the end.
#[derive(Debug, Clone)]
pub struct RootSum {
    m: u32,
    counts: Vec<i64>,
}

impl RootSum {
    pub fn new(m: u32) -> Self {
        RootSum {
            m,
            counts: vec![0; m as usize],
        }
    }

    /// Adds `c * zeta_m^k`.
    pub fn add(&mut self, k: i64, c: i64) {
        let j = k.rem_euclid(self.m as i64) as usize;
        self.counts[j] += c;
    }

    pub fn into_cyc(self) -> CycNum {
        let field = cyclo_field(self.m);
        let num = field.reduce_counts(&self.counts);
        CycNum::from_parts(field, num, BigInt::one())
    }
}
