use std::sync::OnceLock;

use num_complex::Complex64;
use proptest::prelude::*;

use psl_ekr::cyclotomic::CycNum;
use psl_ekr::derangement::{
    build_m, build_n_bruteforce, kernel_vectors, ClosedFormN, DerangementGram, DerangementMatrix,
};
use psl_ekr::ekr::{build_graph, is_intersecting, stabilizer_coset, IntersectionGraph};
use psl_ekr::field::FieldCtx;
use psl_ekr::group::{Pgl2, Which};

fn pgl(q: u32) -> &'static Pgl2 {
    static G5: OnceLock<Pgl2> = OnceLock::new();
    static G7: OnceLock<Pgl2> = OnceLock::new();
    static G9: OnceLock<Pgl2> = OnceLock::new();
    let cell = match q {
        5 => &G5,
        7 => &G7,
        9 => &G9,
        _ => panic!("no cached group for q = {q}"),
    };
    cell.get_or_init(|| Pgl2::for_order(q).unwrap())
}

fn gram(q: u32) -> &'static (DerangementMatrix, DerangementGram) {
    static N5: OnceLock<(DerangementMatrix, DerangementGram)> = OnceLock::new();
    static N7: OnceLock<(DerangementMatrix, DerangementGram)> = OnceLock::new();
    let cell = if q == 5 { &N5 } else { &N7 };
    cell.get_or_init(|| {
        let m = build_m(pgl(q));
        let n = build_n_bruteforce(&m);
        (m, n)
    })
}

fn graph(q: u32) -> &'static IntersectionGraph {
    static E5: OnceLock<IntersectionGraph> = OnceLock::new();
    static E7: OnceLock<IntersectionGraph> = OnceLock::new();
    let cell = if q == 5 { &E5 } else { &E7 };
    cell.get_or_init(|| build_graph(pgl(q)).unwrap())
}

fn cyc(m: u32, terms: &[(i64, i64)]) -> CycNum {
    terms.iter().fold(CycNum::zero(m), |acc, &(k, c)| {
        acc + CycNum::root(m, k).mul_int(c)
    })
}

fn complex_of(m: u32, terms: &[(i64, i64)]) -> Complex64 {
    terms
        .iter()
        .map(|&(k, c)| {
            Complex64::from_polar(c as f64, 2.0 * std::f64::consts::PI * k as f64 / m as f64)
        })
        .sum()
}

fn terms() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((0i64..120, -5i64..=5), 0..6)
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() < 1e-8 * (1.0 + a.norm())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_ring_laws(m in prop::sample::select(vec![1u32, 4, 8, 12, 15, 24]), a in terms(), b in terms(), c in terms()) {
        let (x, y, z) = (cyc(m, &a), cyc(m, &b), cyc(m, &c));
        prop_assert_eq!((&x + &y) * &z, &x * &z + &y * &z);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!((&x * &y) * &z, &x * (&y * &z));
        prop_assert_eq!(&x - &x, CycNum::zero(m));
        prop_assert_eq!(x.conj().conj(), x.clone());
    }

    #[test]
    fn cyclotomic_embedding_is_a_homomorphism(m in prop::sample::select(vec![4u32, 8, 12, 15, 24]), a in terms(), b in terms()) {
        let (x, y) = (cyc(m, &a), cyc(m, &b));
        let (zx, zy) = (complex_of(m, &a), complex_of(m, &b));
        prop_assert!(close(x.to_complex(), zx));
        prop_assert!(close((&x * &y).to_complex(), zx * zy));
        prop_assert!(close((&x + &y).to_complex(), zx + zy));
        prop_assert!(close(x.conj().to_complex(), zx.conj()));
    }

    #[test]
    fn field_axioms(q in prop::sample::select(vec![9u32, 25, 27, 49]), i in 0u32..64, j in 0u32..64, k in 0u32..64) {
        let f = FieldCtx::for_order(q).unwrap();
        let (x, y, z) = (f.elem(i % q), f.elem(j % q), f.elem(k % q));
        prop_assert_eq!(f.mul(f.add(x, y), z), f.add(f.mul(x, z), f.mul(y, z)));
        prop_assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
        prop_assert_eq!(f.add(x, f.neg(x)), f.zero());
        if !x.is_zero() {
            prop_assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one());
            prop_assert_eq!(f.pow(x, q as i64 - 1), f.one());
        }
        prop_assert_eq!(f.pow(x, q as i64), x);
    }

    #[test]
    fn class_labels_are_conjugation_invariant(q in prop::sample::select(vec![5u32, 7, 9]), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let grp = pgl(q);
        let els = grp.elements();
        let (g, h) = (els[i.index(els.len())], els[j.index(els.len())]);
        let conj = grp.mul(&grp.mul(&grp.inv(&h), &g), &h);
        prop_assert_eq!(grp.classify(&conj), grp.classify(&g));
        prop_assert_eq!(conj.class_label(), g.class_label());
    }

    #[test]
    fn psl_is_normal(q in prop::sample::select(vec![5u32, 7, 9]), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let grp = pgl(q);
        let psl = grp.enumerate(Which::Psl);
        let els = grp.elements();
        let (g, h) = (psl[i.index(psl.len())], els[j.index(els.len())]);
        prop_assert!(grp.mul(&grp.mul(&grp.inv(&h), &g), &h).in_psl());
    }

    #[test]
    fn gram_entries_are_pgl_invariant(q in prop::sample::select(vec![5u32, 7]), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), k in any::<prop::sample::Index>()) {
        let grp = pgl(q);
        let (_, n) = gram(q);
        let pairs = n.omega().pairs();
        let (ab, cd) = (pairs[i.index(pairs.len())], pairs[j.index(pairs.len())]);
        let g = grp.elements()[k.index(grp.elements().len())];
        let mv = |(x, y): (_, _)| (grp.act(x, &g), grp.act(y, &g));
        prop_assert_eq!(n.entry(mv(ab), mv(cd)).unwrap(), n.entry(ab, cd).unwrap());
        prop_assert_eq!(n.entry(cd, ab).unwrap(), n.entry(ab, cd).unwrap());
        let cf = ClosedFormN::new(grp).unwrap();
        prop_assert_eq!(cf.entry(ab, cd).unwrap(), n.entry(ab, cd).unwrap());
    }

    #[test]
    fn kernel_vectors_relations(q in prop::sample::select(vec![5u32, 7]), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), k in any::<prop::sample::Index>()) {
        let grp = pgl(q);
        let (m, _) = gram(q);
        let kv = kernel_vectors(m.omega());
        let pts = grp.points();
        let (a, b, c) = (pts[i.index(pts.len())], pts[j.index(pts.len())], pts[k.index(pts.len())]);
        prop_assume!(a != b && b != c && a != c);
        let diff: Vec<i64> = kv.l[&(a, b)].iter().zip(&kv.l[&(a, c)]).map(|(x, y)| x - y).collect();
        prop_assert_eq!(&diff, &kv.l[&(c, b)]);
        prop_assert!(m.apply(&kv.l[&(a, b)]).iter().all(|&x| x == 0));
        prop_assert!(m.apply(&kv.r[&(a, b)]).iter().all(|&x| x == 0));
    }

    #[test]
    fn adjacency_is_translation_invariant(q in prop::sample::select(vec![5u32, 7]), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), k in any::<prop::sample::Index>()) {
        let grp = pgl(q);
        let g = graph(q);
        let n = g.len();
        let (a, b, h) = (i.index(n), j.index(n), g.vertices()[k.index(n)]);
        let ta = g.index_of(&grp.mul(&g.vertices()[a], &h)).unwrap();
        let tb = g.index_of(&grp.mul(&g.vertices()[b], &h)).unwrap();
        prop_assert_eq!(g.adjacent(ta, tb), g.adjacent(a, b));
    }

    #[test]
    fn subsets_of_cosets_are_intersecting(q in prop::sample::select(vec![5u32, 7]), x in any::<prop::sample::Index>(), y in any::<prop::sample::Index>(), mask in any::<u64>()) {
        let grp = pgl(q);
        let pts = grp.points();
        let coset = stabilizer_coset(grp, pts[x.index(pts.len())], pts[y.index(pts.len())]);
        prop_assert_eq!(coset.len(), (q * (q - 1) / 2) as usize);
        let subset: Vec<_> = coset.iter().enumerate().filter(|(i, _)| mask >> (i % 64) & 1 == 1).map(|(_, g)| *g).collect();
        prop_assert!(is_intersecting(grp, &subset));
    }
}
