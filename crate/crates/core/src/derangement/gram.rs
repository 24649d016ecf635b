use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::characters::MultCharFq;
use crate::charsums::{legendre_sum, phi_sum_x_plus_inverse, rational};
use crate::error::{Error, Result};
use crate::field::Fq;
use crate::group::{GroupElement, Pgl2, ProjPoint, Which};

/// Ordered pairs of distinct projective points, sorted lexicographically with
/// the point order `0 < 1 < ... < q-1 < inf`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaIndex {
    q: u32,
    pairs: Vec<(ProjPoint, ProjPoint)>,
}

impl OmegaIndex {
    pub fn new(grp: &Pgl2) -> Self {
        let pts = grp.points();
        let mut pairs = Vec::with_capacity(pts.len() * (pts.len() - 1));
        for &a in &pts {
            for &b in &pts {
                if a != b {
                    pairs.push((a, b));
                }
            }
        }
        OmegaIndex { q: grp.q(), pairs }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(ProjPoint, ProjPoint)] {
        &self.pairs
    }

    pub fn pair(&self, k: usize) -> (ProjPoint, ProjPoint) {
        self.pairs[k]
    }

    /// Column of `(a, b)`, computed arithmetically from the point indices.
    pub fn position(&self, a: ProjPoint, b: ProjPoint) -> Result<usize> {
        if a == b {
            return Err(Error::NotInOmega(a.to_string(), b.to_string()));
        }
        let (i, j) = (a.index(self.q), b.index(self.q));
        Ok(i * self.q as usize + if j < i { j } else { j - 1 })
    }
}

/// The 0/1 matrix with rows the derangements of `PSL(2,q)` and columns `Omega`;
/// the entry at `(g, (a, b))` is 1 exactly when `a^g = b`.
#[derive(Clone, Debug)]
pub struct DerangementMatrix {
    omega: OmegaIndex,
    rows: Vec<GroupElement>,
    support: Vec<Vec<usize>>,
}

impl DerangementMatrix {
    pub fn omega(&self) -> &OmegaIndex {
        &self.omega
    }

    pub fn rows(&self) -> &[GroupElement] {
        &self.rows
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.omega.len()
    }

    /// Columns holding a 1 in row `r`, ascending.
    pub fn row_support(&self, r: usize) -> &[usize] {
        &self.support[r]
    }

    pub fn entry(&self, r: usize, c: usize) -> i64 {
        i64::from(self.support[r].binary_search(&c).is_ok())
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        self.support
            .iter()
            .map(|cols| {
                let mut row = vec![0; self.ncols()];
                for &c in cols {
                    row[c] = 1;
                }
                row
            })
            .collect()
    }

    /// `M v` for an integer vector indexed by `Omega`.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.support
            .iter()
            .map(|cols| cols.iter().map(|&c| v[c]).sum())
            .collect()
    }
}

pub fn build_m(grp: &Pgl2) -> DerangementMatrix {
    let omega = OmegaIndex::new(grp);
    let rows: Vec<GroupElement> = grp
        .enumerate(Which::Psl)
        .into_iter()
        .filter(|g| g.is_derangement())
        .collect();
    let support = rows
        .iter()
        .map(|g| {
            let mut cols: Vec<usize> = grp
                .points()
                .into_iter()
                .map(|a| {
                    omega
                        .position(a, grp.act(a, g))
                        .expect("derangement moves every point")
                })
                .collect();
            cols.sort_unstable();
            cols
        })
        .collect();
    DerangementMatrix {
        omega,
        rows,
        support,
    }
}

/// `N = M^T M`: the entry at `((a,b),(c,d))` counts derangements of `PSL(2,q)`
/// sending `a` to `b` and `c` to `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerangementGram {
    omega: OmegaIndex,
    n: Vec<Vec<i64>>,
}

impl DerangementGram {
    pub fn omega(&self) -> &OmegaIndex {
        &self.omega
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.n
    }

    pub fn at(&self, i: usize, j: usize) -> i64 {
        self.n[i][j]
    }

    pub fn entry(&self, ab: (ProjPoint, ProjPoint), cd: (ProjPoint, ProjPoint)) -> Result<i64> {
        let i = self.omega.position(ab.0, ab.1)?;
        let j = self.omega.position(cd.0, cd.1)?;
        Ok(self.n[i][j])
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n.len()).all(|i| (0..i).all(|j| self.n[i][j] == self.n[j][i]))
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.n
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

pub fn build_n_bruteforce(m: &DerangementMatrix) -> DerangementGram {
    let k = m.ncols();
    let mut n = vec![vec![0i64; k]; k];
    for cols in &m.support {
        for &i in cols {
            for &j in cols {
                n[i][j] += 1;
            }
        }
    }
    DerangementGram {
        omega: m.omega.clone(),
        n,
    }
}

/// Which formula an entry of `N` reduces to.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum EntryCase {
    Diagonal,
    Zero,
    Swap,
    Chain,
    Generic(Fq),
}

/// Entries of `N` from the closed formulas, using `PGL(2,q)` symmetry to move
/// any pair of pairs to a canonical position.
#[derive(Clone, Debug)]
pub struct ClosedFormN<'a> {
    grp: &'a Pgl2,
    omega: OmegaIndex,
    generic: BTreeMap<Fq, i64>,
}

impl<'a> ClosedFormN<'a> {
    /// Precomputes `N_{(0,inf),(1,d)}` for every `d != 0, 1` and checks the
    /// Legendre-sum expression against the direct `phi` sum.
    pub fn new(grp: &'a Pgl2) -> Result<Self> {
        let f = grp.ctx();
        let q = f.q() as i64;
        let phi = MultCharFq::quadratic(f.q());
        let mut generic = BTreeMap::new();
        for d in f.units().filter(|&d| d != f.one()) {
            let p = rational(&legendre_sum(f, &phi, f.sub(f.add(d, d), f.one())));
            let phi_1d = phi.eval(f, f.sub(f.one(), d));
            let phi_1d = rational(&phi_1d);
            let val = BigRational::new(BigInt::from(q - 1), BigInt::from(4))
                - phi_1d.clone() / BigInt::from(2)
                - p * BigRational::new(BigInt::from(q), BigInt::from(4));
            if !val.is_integer() {
                return Err(Error::IdentityMismatch(format!(
                    "N_(0,inf),(1,{d}) = {val} is not an integer"
                )));
            }
            let via_legendre = val.to_integer().to_i64().expect("small");

            let s = BigRational::from_integer(phi_sum_x_plus_inverse(f, d).into());
            let via_phi_sum = BigRational::new(BigInt::from(q - 3), BigInt::from(4))
                - phi_1d / BigInt::from(2)
                - s / BigInt::from(4);
            if via_phi_sum != BigRational::from_integer(via_legendre.into()) {
                return Err(Error::IdentityMismatch(format!(
                    "N_(0,inf),(1,{d}): {via_phi_sum} vs {via_legendre}"
                )));
            }
            generic.insert(d, via_legendre);
        }
        Ok(ClosedFormN {
            grp,
            omega: OmegaIndex::new(grp),
            generic,
        })
    }

    pub fn omega(&self) -> &OmegaIndex {
        &self.omega
    }

    /// Classifies the entry and, for the generic case, returns the normalized `d`.
    pub fn case(
        &self,
        (a, b): (ProjPoint, ProjPoint),
        (c, d): (ProjPoint, ProjPoint),
    ) -> Result<EntryCase> {
        self.omega.position(a, b)?;
        self.omega.position(c, d)?;
        if a == c && b == d {
            return Ok(EntryCase::Diagonal);
        }
        if a == c || b == d {
            return Ok(EntryCase::Zero);
        }
        if a == d && b == c {
            return Ok(EntryCase::Swap);
        }
        if b == c || a == d {
            return Ok(EntryCase::Chain);
        }
        let f = self.grp.ctx();
        let third = self
            .grp
            .points()
            .into_iter()
            .find(|p| *p != a && *p != b)
            .expect("q + 1 >= 3");
        let g = self.grp.from_triples(
            [a, b, third],
            [
                ProjPoint::Finite(f.zero()),
                ProjPoint::Infinity,
                ProjPoint::Finite(f.one()),
            ],
        )?;
        match (self.grp.act(c, &g), self.grp.act(d, &g)) {
            (ProjPoint::Finite(c1), ProjPoint::Finite(d1)) => {
                Ok(EntryCase::Generic(f.div(d1, c1)?))
            }
            _ => unreachable!("c, d avoid a, b"),
        }
    }

    pub fn entry(&self, ab: (ProjPoint, ProjPoint), cd: (ProjPoint, ProjPoint)) -> Result<i64> {
        let q = self.grp.q() as i64;
        Ok(match self.case(ab, cd)? {
            EntryCase::Diagonal => (q - 1) * (q - 1) / 4,
            EntryCase::Zero => 0,
            EntryCase::Swap => {
                if q % 4 == 1 {
                    0
                } else {
                    (q - 1) / 2
                }
            }
            EntryCase::Chain => {
                if q % 4 == 1 {
                    (q - 1) / 4
                } else {
                    (q - 3) / 4
                }
            }
            EntryCase::Generic(d) => self.generic[&d],
        })
    }

    /// `N_{(0,inf),(1,d)}` for `d` not in `{0, 1}`.
    pub fn canonical(&self, d: Fq) -> Result<i64> {
        self.generic
            .get(&d)
            .copied()
            .ok_or_else(|| Error::NotInOmega("(0,inf)".into(), format!("(1,{d})")))
    }

    pub fn full_matrix(&self) -> Result<Vec<Vec<i64>>> {
        let pairs = self.omega.pairs();
        pairs
            .iter()
            .map(|&ab| pairs.iter().map(|&cd| self.entry(ab, cd)).collect())
            .collect()
    }
}

/// Integer vectors indexed by `Omega` spanning the two copies of the
/// `psi_1`-isotypic part of the kernel.
#[derive(Clone, Debug)]
pub struct KernelVectors {
    pub l: BTreeMap<(ProjPoint, ProjPoint), Vec<i64>>,
    pub r: BTreeMap<(ProjPoint, ProjPoint), Vec<i64>>,
}

/// `l_{a,b} = sum_{p != a} e_(a,p) - sum_{p != b} e_(b,p)` and
/// `r_{a,b} = sum_{p != a} e_(p,a) - sum_{p != b} e_(p,b)`.
pub fn kernel_vectors(omega: &OmegaIndex) -> KernelVectors {
    let pts: Vec<ProjPoint> = {
        let mut v: Vec<ProjPoint> = omega.pairs().iter().map(|p| p.0).collect();
        v.dedup();
        v
    };
    let mut l = BTreeMap::new();
    let mut r = BTreeMap::new();
    for &a in &pts {
        for &b in &pts {
            if a == b {
                continue;
            }
            let mut lv = vec![0i64; omega.len()];
            let mut rv = vec![0i64; omega.len()];
            for &p in &pts {
                if p != a {
                    lv[omega.position(a, p).unwrap()] += 1;
                    rv[omega.position(p, a).unwrap()] += 1;
                }
                if p != b {
                    lv[omega.position(b, p).unwrap()] -= 1;
                    rv[omega.position(p, b).unwrap()] -= 1;
                }
            }
            l.insert((a, b), lv);
            r.insert((a, b), rv);
        }
    }
    KernelVectors { l, r }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(grp: &Pgl2, x: i64) -> ProjPoint {
        ProjPoint::Finite(grp.ctx().from_int(x))
    }

    #[test]
    fn omega_positions_are_bijective() {
        let grp = Pgl2::for_order(7).unwrap();
        let om = OmegaIndex::new(&grp);
        assert_eq!(om.len(), 56);
        for (k, &(a, b)) in om.pairs().iter().enumerate() {
            assert_eq!(om.position(a, b).unwrap(), k);
        }
        assert!(om
            .position(ProjPoint::Infinity, ProjPoint::Infinity)
            .is_err());
    }

    #[test]
    fn matrix_shape_and_sums() {
        for q in [5, 7, 9] {
            let grp = Pgl2::for_order(q).unwrap();
            let m = build_m(&grp);
            let q = q as usize;
            assert_eq!(m.nrows(), q * (q - 1) * (q - 1) / 4);
            assert_eq!(m.ncols(), q * (q + 1));
            let dense = m.to_dense();
            assert!(dense
                .iter()
                .all(|r| r.iter().sum::<i64>() == (q + 1) as i64));
            assert!(dense.iter().flatten().all(|x| *x == 0 || *x == 1));
            for c in 0..m.ncols() {
                assert_eq!(
                    dense.iter().map(|r| r[c]).sum::<i64>(),
                    ((q - 1) * (q - 1) / 4) as i64
                );
            }
        }
    }

    #[test]
    fn gram_entries() {
        let grp = Pgl2::for_order(5).unwrap();
        let n = build_n_bruteforce(&build_m(&grp));
        let (zero, inf) = (pt(&grp, 0), ProjPoint::Infinity);
        assert_eq!(n.entry((zero, inf), (zero, inf)).unwrap(), 4);
        assert_eq!(n.entry((zero, inf), (inf, zero)).unwrap(), 0);
        assert_eq!(n.entry((zero, inf), (pt(&grp, 1), zero)).unwrap(), 1);
        assert!(n.is_symmetric());

        let grp = Pgl2::for_order(7).unwrap();
        let n = build_n_bruteforce(&build_m(&grp));
        let (zero, inf) = (pt(&grp, 0), ProjPoint::Infinity);
        assert_eq!(n.entry((zero, inf), (inf, zero)).unwrap(), 3);
        assert_eq!(n.entry((zero, inf), (pt(&grp, 1), zero)).unwrap(), 1);
        assert_eq!(n.entry((zero, inf), (zero, pt(&grp, 5))).unwrap(), 0);
    }

    #[test]
    fn closed_form_matches_bruteforce() {
        for q in [5, 7, 9, 11] {
            let grp = Pgl2::for_order(q).unwrap();
            let n = build_n_bruteforce(&build_m(&grp));
            let cf = ClosedFormN::new(&grp).unwrap();
            assert_eq!(cf.full_matrix().unwrap(), n.matrix(), "q = {q}");
        }
    }

    #[test]
    fn kernel_vectors_are_killed() {
        let grp = Pgl2::for_order(5).unwrap();
        let m = build_m(&grp);
        let n = build_n_bruteforce(&m);
        let kv = kernel_vectors(m.omega());
        for v in kv.l.values().chain(kv.r.values()) {
            assert!(m.apply(v).iter().all(|x| *x == 0));
            assert!(n.apply(v).iter().all(|x| *x == 0));
        }
        let (a, b, c) = (pt(&grp, 2), ProjPoint::Infinity, pt(&grp, 3));
        let diff: Vec<i64> = kv.l[&(a, b)]
            .iter()
            .zip(&kv.l[&(a, c)])
            .map(|(x, y)| x - y)
            .collect();
        assert_eq!(diff, kv.l[&(c, b)]);
    }
}
