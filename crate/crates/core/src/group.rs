//! `PGL(2,q)` and `PSL(2,q)` acting on the projective line.
//!
//! A matrix `[[A, B], [C, D]]` acts on row vectors from the right, so the
//! point spanned by `(1, x)` goes to `(B + D x) / (A + C x)` and infinity,
//! spanned by `(0, 1)`, goes to `D / C`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum ProjPoint {
    Finite(Fq),
    Infinity,
}

impl ProjPoint {
    /// Position in the order `0 < 1 < ... < q-1 < infinity` (by field encoding).
    pub fn index(self, q: u32) -> usize {
        match self {
            ProjPoint::Finite(a) => a.index() as usize,
            ProjPoint::Infinity => q as usize,
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(a) => write!(f, "{a}"),
            ProjPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// Conjugacy class of `PGL(2,q)`.
///
/// `Split(x)` holds the one of `{x, 1/x}` with the smaller discrete log;
/// `NonSplit(j)` holds `min(j, q+1-j)` where `r = g2^j` is an eigenvalue.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum ClassLabel {
    Identity,
    Unipotent,
    SplitMinusOne,
    Split(Fq),
    NonSplitI,
    NonSplit(u32),
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Identity => write!(f, "I"),
            ClassLabel::Unipotent => write!(f, "u"),
            ClassLabel::SplitMinusOne => write!(f, "d_-1"),
            ClassLabel::Split(x) => write!(f, "d_{x}"),
            ClassLabel::NonSplitI => write!(f, "v_i"),
            ClassLabel::NonSplit(j) => write!(f, "v_g2^{j}"),
        }
    }
}

/// A normalized matrix: the first nonzero entry in row-major order is 1.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement {
    entries: [Fq; 4],
    in_psl: bool,
    label: ClassLabel,
}

impl GroupElement {
    pub fn entries(&self) -> [Fq; 4] {
        self.entries
    }

    pub fn in_psl(&self) -> bool {
        self.in_psl
    }

    pub fn class_label(&self) -> ClassLabel {
        self.label
    }

    pub fn is_derangement(&self) -> bool {
        matches!(self.label, ClassLabel::NonSplit(_) | ClassLabel::NonSplitI)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Which {
    Pgl,
    Psl,
}

/// One conjugacy class with its size, representative and `delta` sign.
#[derive(Clone, Debug)]
pub struct ClassInfo {
    pub label: ClassLabel,
    pub size: u64,
    pub representative: GroupElement,
    /// `+1` when the representative lies in `PSL(2,q)`, else `-1`.
    pub delta: i64,
}

/// The group `PGL(2,q)` with its elements, classes and lookup tables.
#[derive(Clone, Debug)]
pub struct Pgl2 {
    ctx: FieldCtx,
    elements: Vec<GroupElement>,
    index: HashMap<[Fq; 4], usize>,
    classes: Vec<ClassInfo>,
    class_index: HashMap<ClassLabel, usize>,
}

impl Pgl2 {
    pub fn new(ctx: FieldCtx) -> Self {
        let q = ctx.q();
        let mut g = Pgl2 {
            ctx,
            elements: Vec::new(),
            index: HashMap::new(),
            classes: Vec::new(),
            class_index: HashMap::new(),
        };
        let f = &g.ctx;
        let mut elements = Vec::with_capacity((q * q * q - q) as usize);
        for c in f.units() {
            for d in f.elements() {
                elements.push(g.make_normalized([f.zero(), f.one(), c, d]));
            }
        }
        for b in f.elements() {
            for c in f.elements() {
                for d in f.elements() {
                    if f.sub(d, f.mul(b, c)).is_zero() {
                        continue;
                    }
                    elements.push(g.make_normalized([f.one(), b, c, d]));
                }
            }
        }
        g.index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.entries, i))
            .collect();
        g.elements = elements;
        g.classes = g.build_classes();
        g.class_index = g
            .classes
            .iter()
            .enumerate()
            .map(|(i, c)| (c.label, i))
            .collect();
        g
    }

    pub fn for_order(q: u32) -> Result<Self> {
        Ok(Self::new(FieldCtx::for_order(q)?))
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn q(&self) -> u32 {
        self.ctx.q()
    }

    /// All elements of `PGL(2,q)`: first `[[0,1],[c,d]]`, then `[[1,b],[c,d]]`,
    /// each in lexicographic order of encodings.
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn enumerate(&self, which: Which) -> Vec<GroupElement> {
        self.elements
            .iter()
            .filter(|g| which == Which::Pgl || g.in_psl)
            .copied()
            .collect()
    }

    /// Position of an element in [`Pgl2::elements`].
    pub fn position(&self, g: &GroupElement) -> usize {
        self.index[&g.entries]
    }

    /// Classes in canonical order: `I, u, d_-1, d_x` (ascending log),
    /// `v_i, v_r` (ascending exponent).
    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn class_position(&self, label: ClassLabel) -> usize {
        self.class_index[&label]
    }

    pub fn class_of(&self, label: ClassLabel) -> &ClassInfo {
        &self.classes[self.class_index[&label]]
    }

    pub fn delta(&self, label: ClassLabel) -> i64 {
        self.class_of(label).delta
    }

    pub fn points(&self) -> Vec<ProjPoint> {
        points(&self.ctx)
    }

    /// Builds the element with matrix `[[a, b], [c, d]]`.
    pub fn element(&self, m: [Fq; 4]) -> Result<GroupElement> {
        let f = &self.ctx;
        if f.sub(f.mul(m[0], m[3]), f.mul(m[1], m[2])).is_zero() {
            return Err(Error::Singular);
        }
        Ok(self.make_normalized(m))
    }

    pub fn element_from_ints(&self, m: [i64; 4]) -> Result<GroupElement> {
        let f = &self.ctx;
        self.element(m.map(|x| f.from_int(x)))
    }

    fn make_normalized(&self, m: [Fq; 4]) -> GroupElement {
        let f = &self.ctx;
        let lead = *m.iter().find(|x| !x.is_zero()).expect("nonzero matrix");
        let s = f.inv(lead).expect("nonzero");
        let entries = m.map(|x| f.mul(x, s));
        let det = f.sub(f.mul(entries[0], entries[3]), f.mul(entries[1], entries[2]));
        GroupElement {
            entries,
            in_psl: f.is_square(det),
            label: self.classify_matrix(&entries),
        }
    }

    pub fn identity(&self) -> GroupElement {
        self.element_from_ints([1, 0, 0, 1]).unwrap()
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let f = &self.ctx;
        let [a, b, c, d] = g.entries;
        let [e, fh, gg, hh] = h.entries;
        self.make_normalized([
            f.add(f.mul(a, e), f.mul(b, gg)),
            f.add(f.mul(a, fh), f.mul(b, hh)),
            f.add(f.mul(c, e), f.mul(d, gg)),
            f.add(f.mul(c, fh), f.mul(d, hh)),
        ])
    }

    pub fn inv(&self, g: &GroupElement) -> GroupElement {
        let f = &self.ctx;
        let [a, b, c, d] = g.entries;
        self.make_normalized([d, f.neg(b), f.neg(c), a])
    }

    pub fn act(&self, pt: ProjPoint, g: &GroupElement) -> ProjPoint {
        act(&self.ctx, pt, g)
    }

    /// Fixed-point test by scanning every point of the line.
    pub fn fixes_no_point(&self, g: &GroupElement) -> bool {
        self.points().into_iter().all(|p| self.act(p, g) != p)
    }

    pub fn classify(&self, g: &GroupElement) -> ClassLabel {
        g.label
    }

    fn classify_matrix(&self, m: &[Fq; 4]) -> ClassLabel {
        let f = &self.ctx;
        let [a, b, c, d] = *m;
        if b.is_zero() && c.is_zero() && a == d {
            return ClassLabel::Identity;
        }
        let t = f.add(a, d);
        let det = f.sub(f.mul(a, d), f.mul(b, c));
        let disc = f.sub(f.mul(t, t), f.mul(f.from_int(4), det));
        if disc.is_zero() {
            return ClassLabel::Unipotent;
        }
        let two_inv = f.inv(f.from_int(2)).unwrap();
        if f.is_square(disc) {
            let s = f.exp(f.log(disc).unwrap() as i64 / 2);
            let e1 = f.mul(f.add(t, s), two_inv);
            let e2 = f.mul(f.sub(t, s), two_inv);
            let x = f.div(e1, e2).unwrap();
            if x == f.from_int(-1) {
                return ClassLabel::SplitMinusOne;
            }
            let k = f.log(x).unwrap();
            let n = f.q() - 1;
            return ClassLabel::Split(f.exp(k.min((n - k) % n) as i64));
        }
        let disc2 = f.embed(disc);
        let s = f.exp2(f.log2(disc2).unwrap() / 2);
        let r = f.mul2(f.add2(f.embed(t), s), f.embed(two_inv));
        let n = f.q() + 1;
        let j = f.log2(r).unwrap() % n;
        let j = j.min(n - j);
        if j == n / 2 {
            ClassLabel::NonSplitI
        } else {
            ClassLabel::NonSplit(j)
        }
    }

    fn build_classes(&self) -> Vec<ClassInfo> {
        let f = &self.ctx;
        let q = f.q() as u64;
        let mut out = Vec::new();
        let mut push = |label, size, rep: GroupElement| {
            let delta = if rep.in_psl { 1 } else { -1 };
            debug_assert_eq!(rep.label, label);
            out.push(ClassInfo {
                label,
                size,
                representative: rep,
                delta,
            });
        };
        push(ClassLabel::Identity, 1, self.identity());
        push(
            ClassLabel::Unipotent,
            q * q - 1,
            self.element_from_ints([1, 1, 0, 1]).unwrap(),
        );
        push(
            ClassLabel::SplitMinusOne,
            q * (q + 1) / 2,
            self.element_from_ints([-1, 0, 0, 1]).unwrap(),
        );
        for k in 1..(f.q() - 1) / 2 {
            let x = f.exp(k as i64);
            let rep = self.element([x, f.zero(), f.zero(), f.one()]).unwrap();
            push(ClassLabel::Split(x), q * (q + 1), rep);
        }
        push(ClassLabel::NonSplitI, q * (q - 1) / 2, self.v_r(f.i_elem()));
        for j in 1..f.q().div_ceil(2) {
            push(ClassLabel::NonSplit(j), q * (q - 1), self.v_r(f.exp2(j)));
        }
        out
    }

    /// `v_r = [[0, 1], [-N(r), Tr(r)]]`, whose eigenvalues are `r` and `r^q`.
    pub fn v_r(&self, r: crate::field::Fq2) -> GroupElement {
        let f = &self.ctx;
        self.element([f.zero(), f.one(), f.neg(f.norm(r)), f.trace2(r)])
            .unwrap()
    }

    /// The element sending `(0, inf, 1)` to `(a, b, c)`.
    fn standard_frame_to(&self, [a, b, c]: [ProjPoint; 3]) -> Result<GroupElement> {
        let f = &self.ctx;
        let vec = |p: ProjPoint| match p {
            ProjPoint::Finite(x) => [f.one(), x],
            ProjPoint::Infinity => [f.zero(), f.one()],
        };
        let (va, vb, vc) = (vec(a), vec(b), vec(c));
        // vc = alpha va + beta vb
        let det = f.sub(f.mul(va[0], vb[1]), f.mul(va[1], vb[0]));
        let det_inv = f
            .inv(det)
            .map_err(|_| Error::InvalidConstraint("repeated point".into()))?;
        let alpha = f.mul(f.sub(f.mul(vc[0], vb[1]), f.mul(vc[1], vb[0])), det_inv);
        let beta = f.mul(f.sub(f.mul(va[0], vc[1]), f.mul(va[1], vc[0])), det_inv);
        if alpha.is_zero() || beta.is_zero() {
            return Err(Error::InvalidConstraint("repeated point".into()));
        }
        // rows alpha*va, beta*vb: sends 0 -> a, inf -> b, 1 -> c
        self.element([
            f.mul(alpha, va[0]),
            f.mul(alpha, va[1]),
            f.mul(beta, vb[0]),
            f.mul(beta, vb[1]),
        ])
    }

    /// The unique element sending `src[i]` to `dst[i]` for `i = 0, 1, 2`.
    pub fn from_triples(&self, src: [ProjPoint; 3], dst: [ProjPoint; 3]) -> Result<GroupElement> {
        let s = self.standard_frame_to(src)?;
        let d = self.standard_frame_to(dst)?;
        Ok(self.mul(&self.inv(&s), &d))
    }

    /// The element fixing 0 and swapping 1 with infinity.
    pub fn element_h(&self) -> GroupElement {
        let f = &self.ctx;
        let (zero, one) = (ProjPoint::Finite(f.zero()), ProjPoint::Finite(f.one()));
        self.from_triples(
            [zero, one, ProjPoint::Infinity],
            [zero, ProjPoint::Infinity, one],
        )
        .expect("distinct points")
    }

    /// All elements of the chosen group sending each `pairs[i].0` to `pairs[i].1`.
    pub fn elements_with_constraints(
        &self,
        pairs: &[(ProjPoint, ProjPoint)],
        which: Which,
    ) -> Result<Vec<GroupElement>> {
        if pairs.is_empty() || pairs.len() > 3 {
            return Err(Error::InvalidConstraint(format!(
                "{} pairs given",
                pairs.len()
            )));
        }
        for i in 0..pairs.len() {
            for j in 0..i {
                if pairs[i].0 == pairs[j].0 || pairs[i].1 == pairs[j].1 {
                    return Err(Error::InvalidConstraint("repeated source or target".into()));
                }
            }
        }
        let keep = |g: &GroupElement| which == Which::Pgl || g.in_psl;
        let out = match pairs.len() {
            3 => {
                let g = self.from_triples(
                    [pairs[0].0, pairs[1].0, pairs[2].0],
                    [pairs[0].1, pairs[1].1, pairs[2].1],
                )?;
                vec![g]
            }
            2 => {
                let f = &self.ctx;
                let (zero, inf) = (ProjPoint::Finite(f.zero()), ProjPoint::Infinity);
                let third = |x: ProjPoint, y: ProjPoint| {
                    self.points()
                        .into_iter()
                        .find(|p| *p != x && *p != y)
                        .unwrap()
                };
                let to_std = self.from_triples(
                    [pairs[0].0, pairs[1].0, third(pairs[0].0, pairs[1].0)],
                    [zero, inf, ProjPoint::Finite(f.one())],
                )?;
                let from_std = self.from_triples(
                    [zero, inf, ProjPoint::Finite(f.one())],
                    [pairs[0].1, pairs[1].1, third(pairs[0].1, pairs[1].1)],
                )?;
                f.units()
                    .map(|l| {
                        let d = self.element([l, f.zero(), f.zero(), f.one()]).unwrap();
                        self.mul(&self.mul(&to_std, &d), &from_std)
                    })
                    .collect()
            }
            _ => self
                .elements
                .iter()
                .filter(|g| self.act(pairs[0].0, g) == pairs[0].1)
                .copied()
                .collect(),
        };
        Ok(out.into_iter().filter(keep).collect())
    }
}

/// The `q + 1` points: finite ones in encoding order, then infinity.
pub fn points(ctx: &FieldCtx) -> Vec<ProjPoint> {
    ctx.elements()
        .map(ProjPoint::Finite)
        .chain([ProjPoint::Infinity])
        .collect()
}

pub fn act(f: &FieldCtx, pt: ProjPoint, g: &GroupElement) -> ProjPoint {
    let [a, b, c, d] = g.entries;
    let (x0, x1) = match pt {
        ProjPoint::Finite(x) => (f.add(a, f.mul(x, c)), f.add(b, f.mul(x, d))),
        ProjPoint::Infinity => (c, d),
    };
    if x0.is_zero() {
        ProjPoint::Infinity
    } else {
        ProjPoint::Finite(f.div(x1, x0).unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn fin(g: &Pgl2, n: i64) -> ProjPoint {
        ProjPoint::Finite(g.ctx().from_int(n))
    }

    #[test]
    fn action_examples() {
        let g = Pgl2::for_order(5).unwrap();
        let u = g.element_from_ints([1, 1, 0, 1]).unwrap();
        assert_eq!(g.act(fin(&g, 0), &u), fin(&g, 1));
        assert_eq!(g.act(ProjPoint::Infinity, &u), ProjPoint::Infinity);
        for l in 1..5 {
            let gl = g.element_from_ints([0, l, 1, 0]).unwrap();
            assert_eq!(g.act(fin(&g, 0), &gl), ProjPoint::Infinity);
            assert_eq!(g.act(ProjPoint::Infinity, &gl), fin(&g, 0));
        }
    }

    #[test]
    fn group_orders() {
        for (q, pgl) in [(3, 24), (5, 120), (7, 336), (9, 720)] {
            let g = Pgl2::for_order(q).unwrap();
            assert_eq!(g.enumerate(Which::Pgl).len(), pgl);
            assert_eq!(g.enumerate(Which::Psl).len(), pgl / 2);
            let set: HashSet<_> = g.elements().iter().map(|e| e.entries()).collect();
            assert_eq!(set.len(), pgl);
        }
    }

    #[test]
    fn action_is_a_right_action() {
        let g = Pgl2::for_order(7).unwrap();
        let els = g.elements();
        for (i, x) in els.iter().enumerate().step_by(17) {
            for y in els.iter().skip(i % 5).step_by(23) {
                let xy = g.mul(x, y);
                for p in g.points() {
                    assert_eq!(g.act(g.act(p, x), y), g.act(p, &xy));
                }
            }
            assert_eq!(g.mul(x, &g.inv(x)), g.identity());
        }
    }

    #[test]
    fn class_census_q5() {
        let g = Pgl2::for_order(5).unwrap();
        let mut counts: HashMap<ClassLabel, u64> = HashMap::new();
        for e in g.elements() {
            *counts.entry(e.class_label()).or_default() += 1;
        }
        let mut census: HashMap<u64, u32> = HashMap::new();
        for &n in counts.values() {
            *census.entry(n).or_default() += 1;
        }
        let want: HashMap<u64, u32> = [(1, 1), (24, 1), (15, 1), (30, 1), (10, 1), (20, 2)].into();
        assert_eq!(census, want);
    }

    #[test]
    fn class_sizes_match_enumeration() {
        for q in [3, 5, 7, 9, 11, 13] {
            let g = Pgl2::for_order(q).unwrap();
            let mut counts: HashMap<ClassLabel, u64> = HashMap::new();
            for e in g.elements() {
                *counts.entry(e.class_label()).or_default() += 1;
            }
            assert_eq!(counts.len(), g.classes().len());
            assert_eq!(g.classes().len() as u32, q + 2);
            for c in g.classes() {
                assert_eq!(counts[&c.label], c.size, "class {} at q={q}", c.label);
            }
        }
    }

    #[test]
    fn split_labels_merge_inverse_ratio() {
        let g = Pgl2::for_order(7).unwrap();
        let f = g.ctx();
        let x = f.from_int(3);
        let a = g.element([x, f.zero(), f.zero(), f.one()]).unwrap();
        let b = g
            .element([f.inv(x).unwrap(), f.zero(), f.zero(), f.one()])
            .unwrap();
        assert_eq!(a.class_label(), b.class_label());
    }

    #[test]
    fn derangement_counts() {
        for q in [3, 5, 7, 9, 11] {
            let g = Pgl2::for_order(q).unwrap();
            let mut n = 0;
            for e in g.elements() {
                assert_eq!(e.is_derangement(), g.fixes_no_point(e));
                if e.in_psl() && e.is_derangement() {
                    n += 1;
                }
            }
            assert_eq!(n, q * (q - 1) * (q - 1) / 4);
        }
        let g = Pgl2::for_order(5).unwrap();
        assert!(!g.identity().is_derangement());
    }

    #[test]
    fn h_element() {
        for q in [5, 7, 9, 11] {
            let g = Pgl2::for_order(q).unwrap();
            let f = g.ctx();
            let h = g.element_h();
            assert_eq!(g.act(fin(&g, 0), &h), fin(&g, 0));
            assert_eq!(g.act(fin(&g, 1), &h), ProjPoint::Infinity);
            assert_eq!(g.act(ProjPoint::Infinity, &h), fin(&g, 1));
            for b in f.elements().filter(|&b| b != f.zero() && b != f.one()) {
                let bh = f.div(b, f.sub(b, f.one())).unwrap();
                assert_eq!(g.act(ProjPoint::Finite(b), &h), ProjPoint::Finite(bh));
                assert_eq!(g.act(ProjPoint::Finite(bh), &h), ProjPoint::Finite(b));
            }
        }
        let g = Pgl2::for_order(5).unwrap();
        assert_eq!(g.act(fin(&g, 3), &g.element_h()), fin(&g, 4));
    }

    #[test]
    fn constrained_elements() {
        let g = Pgl2::for_order(5).unwrap();
        let (z, inf) = (fin(&g, 0), ProjPoint::Infinity);
        assert_eq!(
            g.elements_with_constraints(&[(z, inf), (inf, z)], Which::Pgl)
                .unwrap()
                .len(),
            4
        );
        let one = g
            .elements_with_constraints(&[(z, z), (fin(&g, 1), inf), (inf, fin(&g, 1))], Which::Pgl);
        assert_eq!(one.unwrap(), vec![g.element_h()]);
        assert!(matches!(
            g.elements_with_constraints(&[(z, inf), (z, z)], Which::Pgl),
            Err(Error::InvalidConstraint(_))
        ));

        let g = Pgl2::for_order(7).unwrap();
        let s = g
            .elements_with_constraints(
                &[(fin(&g, 0), ProjPoint::Infinity), (fin(&g, 1), fin(&g, 3))],
                Which::Psl,
            )
            .unwrap();
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn constrained_elements_match_filter() {
        for q in [5, 7, 9] {
            let g = Pgl2::for_order(q).unwrap();
            let pts = g.points();
            for &a in &pts {
                for &b in &pts {
                    if a == b {
                        continue;
                    }
                    for &c in pts.iter().step_by(2) {
                        for &d in pts.iter().step_by(3) {
                            if c == d {
                                continue;
                            }
                            let mut fast = g
                                .elements_with_constraints(&[(a, c), (b, d)], Which::Psl)
                                .unwrap();
                            let mut slow: Vec<_> = g
                                .elements()
                                .iter()
                                .filter(|e| e.in_psl() && g.act(a, e) == c && g.act(b, e) == d)
                                .copied()
                                .collect();
                            assert!(!fast.is_empty());
                            fast.sort_by_key(|e| g.position(e));
                            slow.sort_by_key(|e| g.position(e));
                            assert_eq!(fast, slow);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn delta_is_representative_membership() {
        for q in [5, 7, 9, 13] {
            let g = Pgl2::for_order(q).unwrap();
            for e in g.elements() {
                let d = g.delta(e.class_label());
                assert_eq!(d == 1, e.in_psl(), "class {} at q={q}", e.class_label());
            }
        }
    }
}
