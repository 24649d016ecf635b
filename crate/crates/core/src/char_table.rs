//! The complex character table of `PGL(2,q)` with exact cyclotomic entries.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;

use crate::characters::{enumerate_beta_set, enumerate_gamma_set, MultCharB, MultCharFq};
use crate::cyclotomic::CycNum;
use crate::group::{ClassLabel, GroupElement, Pgl2};

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum CharKind {
    Lambda1,
    LambdaMinus1,
    Psi1,
    PsiMinus1,
    Eta(MultCharB),
    Nu(MultCharFq),
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct IrreducibleChar {
    pub kind: CharKind,
    pub degree: u32,
}

impl IrreducibleChar {
    pub fn new(q: u32, kind: CharKind) -> Self {
        let degree = match kind {
            CharKind::Lambda1 | CharKind::LambdaMinus1 => 1,
            CharKind::Psi1 | CharKind::PsiMinus1 => q,
            CharKind::Eta(_) => q - 1,
            CharKind::Nu(_) => q + 1,
        };
        IrreducibleChar { kind, degree }
    }

    /// Short name such as `eta[k=2]`.
    pub fn name(&self) -> String {
        match self.kind {
            CharKind::Lambda1 => "lambda_1".into(),
            CharKind::LambdaMinus1 => "lambda_-1".into(),
            CharKind::Psi1 => "psi_1".into(),
            CharKind::PsiMinus1 => "psi_-1".into(),
            CharKind::Eta(b) => format!("eta[k={}]", b.exponent()),
            CharKind::Nu(g) => format!("nu[k={}]", g.exponent()),
        }
    }

    /// The value on a conjugacy class, read off from the class label.
    pub fn value_on_class(&self, grp: &Pgl2, label: ClassLabel) -> CycNum {
        let f = grp.ctx();
        let m = table_conductor(grp.q());
        let int = |n: i64| CycNum::from_int(m, n);
        let delta = || grp.delta(label);
        use ClassLabel as L;
        match (self.kind, label) {
            (_, L::Identity) => int(self.degree as i64),
            (CharKind::Lambda1, _) => int(1),
            (CharKind::LambdaMinus1, _) => int(delta()),
            (CharKind::Psi1, L::Unipotent) | (CharKind::PsiMinus1, L::Unipotent) => int(0),
            (CharKind::Psi1, L::Split(_) | L::SplitMinusOne) => int(1),
            (CharKind::Psi1, L::NonSplit(_) | L::NonSplitI) => int(-1),
            (CharKind::PsiMinus1, L::Split(_) | L::SplitMinusOne) => int(delta()),
            (CharKind::PsiMinus1, L::NonSplit(_) | L::NonSplitI) => int(-delta()),
            (CharKind::Eta(_), L::Unipotent) => int(-1),
            (CharKind::Eta(_), L::Split(_) | L::SplitMinusOne) => int(0),
            (CharKind::Eta(b), L::NonSplitI) => int(-2 * b.at_i()),
            (CharKind::Eta(b), L::NonSplit(j)) => {
                let r = f.exp2(j);
                let val = b.eval(f, r) + b.eval(f, f.frobenius(r));
                (-val).lift(m)
            }
            (CharKind::Nu(_), L::Unipotent) => int(1),
            (CharKind::Nu(g), L::SplitMinusOne) => int(2 * g.at_minus_one()),
            (CharKind::Nu(g), L::Split(x)) => (g.eval(f, x) + g.eval(f, f.inv(x).unwrap())).lift(m),
            (CharKind::Nu(_), L::NonSplit(_) | L::NonSplitI) => int(0),
        }
    }
}

impl fmt::Display for IrreducibleChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// `lcm(q-1, q+1)`, the conductor shared by every table entry.
pub fn table_conductor(q: u32) -> u32 {
    (q - 1).lcm(&(q + 1))
}

/// All irreducible characters in the order `lambda_1, lambda_-1, psi_1, psi_-1`,
/// then `eta_beta` and `nu_gamma` by exponent.
pub fn irreducibles(q: u32) -> Vec<IrreducibleChar> {
    let mut out: Vec<_> = [
        CharKind::Lambda1,
        CharKind::LambdaMinus1,
        CharKind::Psi1,
        CharKind::PsiMinus1,
    ]
    .into_iter()
    .map(|k| IrreducibleChar::new(q, k))
    .collect();
    out.extend(
        enumerate_beta_set(q)
            .into_iter()
            .map(|b| IrreducibleChar::new(q, CharKind::Eta(b))),
    );
    out.extend(
        enumerate_gamma_set(q)
            .into_iter()
            .map(|g| IrreducibleChar::new(q, CharKind::Nu(g))),
    );
    out
}

/// A class function, as values over the canonical class list of a [`Pgl2`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: Vec<CycNum>,
}

#[derive(Clone, Debug)]
pub struct CharTable {
    q: u32,
    order: u64,
    rows: Vec<IrreducibleChar>,
    row_index: HashMap<CharKind, usize>,
    labels: Vec<ClassLabel>,
    sizes: Vec<u64>,
    col_index: HashMap<ClassLabel, usize>,
    values: Vec<Vec<CycNum>>,
}

impl CharTable {
    pub fn build(grp: &Pgl2) -> Self {
        let q = grp.q();
        let rows = irreducibles(q);
        let labels: Vec<_> = grp.classes().iter().map(|c| c.label).collect();
        let sizes = grp.classes().iter().map(|c| c.size).collect();
        let values = rows
            .iter()
            .map(|chi| labels.iter().map(|&l| chi.value_on_class(grp, l)).collect())
            .collect();
        CharTable {
            q,
            order: (q as u64).pow(3) - q as u64,
            row_index: rows.iter().enumerate().map(|(i, c)| (c.kind, i)).collect(),
            col_index: labels.iter().enumerate().map(|(i, &l)| (l, i)).collect(),
            rows,
            labels,
            sizes,
            values,
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn group_order(&self) -> u64 {
        self.order
    }

    pub fn rows(&self) -> &[IrreducibleChar] {
        &self.rows
    }

    pub fn class_labels(&self) -> &[ClassLabel] {
        &self.labels
    }

    pub fn class_sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn value(&self, row: usize, col: usize) -> &CycNum {
        &self.values[row][col]
    }

    pub fn row_of(&self, kind: CharKind) -> usize {
        self.row_index[&kind]
    }

    pub fn class_column(&self, label: ClassLabel) -> usize {
        self.col_index[&label]
    }

    pub fn char_value(&self, chi: &IrreducibleChar, g: &GroupElement) -> &CycNum {
        &self.values[self.row_of(chi.kind)][self.class_column(g.class_label())]
    }

    pub fn row_function(&self, chi: &IrreducibleChar) -> ClassFunction {
        ClassFunction {
            values: self.values[self.row_of(chi.kind)].clone(),
        }
    }

    /// `(1/|G|) sum_classes size * a * conj(b)`.
    pub fn inner_product(&self, a: &ClassFunction, b: &ClassFunction) -> CycNum {
        let m = table_conductor(self.q);
        let total = a
            .values
            .iter()
            .zip(&b.values)
            .zip(&self.sizes)
            .fold(CycNum::zero(m), |acc, ((x, y), &s)| {
                acc + (x * &y.conj()).mul_int(s as i64)
            });
        total.div_int(self.order as i64)
    }

    /// Multiplicity of each irreducible in `f`, in row order.
    pub fn decompose(&self, f: &ClassFunction) -> Vec<(IrreducibleChar, CycNum)> {
        self.rows
            .iter()
            .map(|chi| (*chi, self.inner_product(f, &self.row_function(chi))))
            .collect()
    }
}

/// Number of fixed ordered pairs of distinct points, per class.
pub fn permutation_character_pi(grp: &Pgl2) -> ClassFunction {
    let q = grp.q() as i64;
    let m = table_conductor(grp.q());
    let values = grp
        .classes()
        .iter()
        .map(|c| {
            let v = match c.label {
                ClassLabel::Identity => q * (q + 1),
                ClassLabel::Split(_) | ClassLabel::SplitMinusOne => 2,
                _ => 0,
            };
            CycNum::from_int(m, v)
        })
        .collect();
    ClassFunction { values }
}
