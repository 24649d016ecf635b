//! Intersecting families in `PSL(2,q)` found by exhaustive clique search.
//!
//! Two elements are adjacent when `g1 g2^{-1}` fixes a point, so intersecting
//! families are exactly cliques. The graph is invariant under right
//! translation, which lets the search look only at cliques through the
//! identity and recover the rest by translating.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{GroupElement, Pgl2, ProjPoint, Which};

/// Largest `q` for which [`build_graph`] runs.
pub const GRAPH_MAX_Q: u32 = 9;

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn and(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn and_not(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + t)
            })
        })
    }
}

/// Vertices are the elements of `PSL(2,q)` in enumeration order.
#[derive(Clone, Debug)]
pub struct IntersectionGraph {
    vertices: Vec<GroupElement>,
    adj: Vec<BitSet>,
}

impl IntersectionGraph {
    pub fn vertices(&self) -> &[GroupElement] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.vertices.iter().position(|v| v == g)
    }
}

pub fn build_graph(grp: &Pgl2) -> Result<IntersectionGraph> {
    if grp.q() > GRAPH_MAX_Q {
        return Err(Error::BudgetExceeded(format!(
            "intersection graph for q = {} (limit {GRAPH_MAX_Q})",
            grp.q()
        )));
    }
    let vertices = grp.enumerate(Which::Psl);
    let n = vertices.len();
    let mut adj = vec![BitSet::new(n); n];
    for i in 0..n {
        for j in 0..i {
            let quotient = grp.mul(&vertices[i], &grp.inv(&vertices[j]));
            if !quotient.is_derangement() {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    Ok(IntersectionGraph { vertices, adj })
}

/// Greedy colouring of `p`: returns vertices in colour order with the running
/// colour count, so `colors[k]` bounds the clique number of `order[..=k]`.
fn color_sort(g: &IntersectionGraph, p: &BitSet) -> (Vec<usize>, Vec<usize>) {
    let mut uncolored = p.clone();
    let mut order = Vec::with_capacity(p.len());
    let mut colors = Vec::with_capacity(p.len());
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut candidates = uncolored.clone();
        loop {
            let Some(v) = candidates.iter().next() else {
                break;
            };
            candidates.remove(v);
            candidates.and_not(&g.adj[v]);
            uncolored.remove(v);
            order.push(v);
            colors.push(color);
        }
    }
    (order, colors)
}

fn expand(
    g: &IntersectionGraph,
    clique: &mut Vec<usize>,
    mut p: BitSet,
    best: &mut usize,
    out: &mut Vec<Vec<usize>>,
) {
    let (order, colors) = color_sort(g, &p);
    for k in (0..order.len()).rev() {
        if clique.len() + colors[k] < *best {
            return;
        }
        let v = order[k];
        clique.push(v);
        let next = p.and(&g.adj[v]);
        if next.is_empty() {
            if clique.len() > *best {
                *best = clique.len();
                out.clear();
            }
            if clique.len() == *best {
                out.push(clique.clone());
            }
        } else {
            expand(g, clique, next, best, out);
        }
        clique.pop();
        p.remove(v);
    }
}

/// Every maximum clique through vertex `root`, as sorted index lists.
fn max_cliques_through(g: &IntersectionGraph, root: usize) -> Vec<Vec<usize>> {
    let mut best = 0;
    let mut out = Vec::new();
    expand(g, &mut Vec::new(), g.adj[root].clone(), &mut best, &mut out);
    out.into_iter()
        .map(|mut c| {
            c.push(root);
            c.sort_unstable();
            c
        })
        .collect()
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Classification {
    /// The family equals `{g in PSL(2,q) : x^g = y}`.
    StabilizerCoset(ProjPoint, ProjPoint),
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectingFamily {
    pub members: Vec<GroupElement>,
    pub classification: Classification,
}

pub fn is_intersecting(grp: &Pgl2, members: &[GroupElement]) -> bool {
    members.iter().enumerate().all(|(i, a)| {
        members[..i]
            .iter()
            .all(|b| !grp.mul(a, &grp.inv(b)).is_derangement())
    })
}

/// `{g in PSL(2,q) : x^g = y}`.
pub fn stabilizer_coset(grp: &Pgl2, x: ProjPoint, y: ProjPoint) -> Vec<GroupElement> {
    grp.enumerate(Which::Psl)
        .into_iter()
        .filter(|g| grp.act(x, g) == y)
        .collect()
}

pub fn classify_family(grp: &Pgl2, members: &[GroupElement]) -> Result<Classification> {
    if !is_intersecting(grp, members) {
        return Err(Error::NotIntersecting);
    }
    let Some(first) = members.first() else {
        return Ok(Classification::Other);
    };
    let q = grp.q() as usize;
    if members.len() != q * (q - 1) / 2 {
        return Ok(Classification::Other);
    }
    for x in grp.points() {
        let y = grp.act(x, first);
        if members.iter().all(|g| grp.act(x, g) == y) {
            return Ok(Classification::StabilizerCoset(x, y));
        }
    }
    Ok(Classification::Other)
}

/// Whether `q` is allowed for the exhaustive search.
pub fn search_allowed(q: u32, allow_q9: bool) -> bool {
    matches!(q, 3 | 5 | 7) || (q == 9 && allow_q9)
}

/// The maximum size of an intersecting family and every family of that size.
///
/// Families are listed in lexicographic order of their sorted vertex indices.
pub fn max_intersecting_families(
    grp: &Pgl2,
    allow_q9: bool,
) -> Result<(usize, Vec<IntersectingFamily>)> {
    if !search_allowed(grp.q(), allow_q9) {
        return Err(Error::BudgetExceeded(format!(
            "clique search for q = {}",
            grp.q()
        )));
    }
    let g = build_graph(grp)?;
    let id = g.index_of(&grp.identity()).expect("identity lies in PSL");
    let through_id = max_cliques_through(&g, id);
    let size = through_id.first().map_or(1, |c| c.len());
    let index: std::collections::HashMap<GroupElement, usize> = g
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (*v, i))
        .collect();
    let mut all = BTreeSet::new();
    for clique in &through_id {
        for h in &g.vertices {
            let mut moved: Vec<usize> = clique
                .iter()
                .map(|&i| index[&grp.mul(&g.vertices[i], h)])
                .collect();
            moved.sort_unstable();
            all.insert(moved);
        }
    }
    let families = all
        .into_iter()
        .map(|c| {
            let members: Vec<GroupElement> = c.iter().map(|&i| g.vertices[i]).collect();
            let classification = classify_family(grp, &members)?;
            Ok(IntersectingFamily {
                members,
                classification,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((size, families))
}

/// A maximum intersecting family of `PSL(2,3)` that is not a stabilizer coset.
pub fn q3_counterexample(grp: &Pgl2) -> Result<Option<IntersectingFamily>> {
    if grp.q() != 3 {
        return Err(Error::DegenerateOrder(grp.q()));
    }
    let (_, families) = max_intersecting_families(grp, false)?;
    Ok(families
        .into_iter()
        .find(|f| f.classification == Classification::Other))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EkrReport {
    pub q: u32,
    pub max_size: usize,
    pub expected_max_size: usize,
    pub family_count: usize,
    pub coset_count: usize,
    pub all_cosets: bool,
    /// Maximum families that are not stabilizer cosets, as matrix strings.
    pub counterexamples: Vec<Vec<String>>,
    pub pass: bool,
}

/// Runs the search and compares against the coset characterization: for
/// `q > 3` every maximum family must be a coset and every coset must occur,
/// while for `q = 3` some maximum family must fail to be a coset.
pub fn ekr_report(grp: &Pgl2, allow_q9: bool) -> Result<EkrReport> {
    let q = grp.q() as usize;
    let (max_size, families) = max_intersecting_families(grp, allow_q9)?;
    let expected_max_size = q * (q - 1) / 2;
    let coset_count = families
        .iter()
        .filter(|f| matches!(f.classification, Classification::StabilizerCoset(..)))
        .count();
    let counterexamples: Vec<Vec<String>> = families
        .iter()
        .filter(|f| f.classification == Classification::Other)
        .map(|f| f.members.iter().map(|g| g.to_string()).collect())
        .collect();
    let all_cosets = counterexamples.is_empty();
    let pass = max_size == expected_max_size
        && if q == 3 {
            !all_cosets
        } else {
            all_cosets && coset_count == (q + 1) * (q + 1)
        };
    Ok(EkrReport {
        q: grp.q(),
        max_size,
        expected_max_size,
        family_count: families.len(),
        coset_count,
        all_cosets,
        counterexamples,
        pass,
    })
}
