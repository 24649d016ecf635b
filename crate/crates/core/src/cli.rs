//! The `verify` and `dump` commands behind the `psl-ekr` binary.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::char_table::{
    irreducibles, permutation_character_pi, CharKind, CharTable, IrreducibleChar,
};
use crate::characters::{all_fq_chars, MultCharFq};
use crate::charsums::{
    f_function, f_norm_sq_closed, f_pgamma_identity, four_f_three_bound, greene_2f1,
    katz_conversion, l2_inner, legendre_sum, product_sum_sides, OrthogonalBasisL,
};
use crate::cyclotomic::CycNum;
use crate::derangement::{
    build_m, build_n_bruteforce, eta_margin, exact_rank, frobenius_side_sums, kernel_vectors,
    psi_margin, restricted_char_sum, restricted_char_sum_oriented, swap_sum_closed,
    verify_theorem2, zero_inf_one_closed, ClosedFormN, Constraint, Orientation, DEFAULT_RANK_MAX_Q,
};
use crate::ekr::{build_graph, ekr_report, search_allowed};
use crate::error::{Error, Result};
use crate::field::{prime_power, DEFAULT_MAX_Q};
use crate::group::{Pgl2, ProjPoint};

/// Version of the JSON report layout.
pub const SCHEMA: &str = "1";
/// Largest `q` for the character-sum suite.
pub const SUMS_MAX_Q: u32 = 25;

#[derive(Parser, Debug)]
#[command(
    name = "psl-ekr",
    version,
    about = "Exact checks for intersecting families in PSL(2,q)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run verification suites and write one JSON report per (q, suite).
    Verify(VerifyArgs),
    /// Write a CSV table for one q.
    Dump(DumpArgs),
}

#[derive(clap::Args, Debug)]
pub struct VerifyArgs {
    /// Comma-separated odd prime powers.
    #[arg(long, value_delimiter = ',', required = true)]
    pub q: Vec<u32>,
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    pub suite: SuiteArg,
    #[arg(long, default_value = "reports")]
    pub out: PathBuf,
    /// Wall-clock cap for the whole run.
    #[arg(long)]
    pub budget_seconds: Option<u64>,
    /// Significant digits in complex approximations.
    #[arg(long, default_value_t = 12)]
    pub approx_digits: usize,
    /// Seed for the sampled symmetry checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Allow the clique search at q = 9.
    #[arg(long)]
    pub allow_q9: bool,
}

#[derive(clap::Args, Debug)]
pub struct DumpArgs {
    #[arg(value_enum)]
    pub what: DumpTarget,
    #[arg(long)]
    pub q: u32,
    #[arg(long, default_value = "dumps")]
    pub out: PathBuf,
    #[arg(long, default_value_t = 12)]
    pub approx_digits: usize,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum SuiteArg {
    Table,
    Sums,
    Rank,
    Ekr,
    All,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum DumpTarget {
    Table,
    Legendre,
    #[value(name = "matrixM")]
    MatrixM,
    #[value(name = "matrixN")]
    MatrixN,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Table,
    Sums,
    Rank,
    Ekr,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Table => "table",
            Suite::Sums => "sums",
            Suite::Rank => "rank",
            Suite::Ekr => "ekr",
        }
    }

    /// Whether this suite can run at `q`.
    pub fn supports(self, q: u32, allow_q9: bool) -> bool {
        match self {
            Suite::Table => true,
            Suite::Sums => q <= SUMS_MAX_Q,
            Suite::Rank => q > 3 && q <= DEFAULT_RANK_MAX_Q,
            Suite::Ekr => search_allowed(q, allow_q9),
        }
    }
}

/// A validated `verify` request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub qs: Vec<u32>,
    pub suites: Vec<Suite>,
    /// `true` when the suites came from `--suite all`, in which case suites
    /// that cannot run at some `q` are skipped instead of rejected.
    pub all: bool,
    pub out: PathBuf,
    pub approx_digits: usize,
    pub budget_seconds: Option<u64>,
    pub seed: u64,
    pub allow_q9: bool,
}

/// Checks that `q` is an odd prime power within the field budget.
pub fn validate_q(q: u32) -> std::result::Result<(), String> {
    match prime_power(q as u64) {
        Some((p, _)) if p != 2 => {}
        _ => return Err(format!("{q} is not an odd prime power")),
    }
    if q > DEFAULT_MAX_Q {
        return Err(format!("q = {q} exceeds the field budget {DEFAULT_MAX_Q}"));
    }
    Ok(())
}

impl RunConfig {
    pub fn from_args(args: &VerifyArgs) -> std::result::Result<Self, String> {
        let (suites, all) = match args.suite {
            SuiteArg::Table => (vec![Suite::Table], false),
            SuiteArg::Sums => (vec![Suite::Sums], false),
            SuiteArg::Rank => (vec![Suite::Rank], false),
            SuiteArg::Ekr => (vec![Suite::Ekr], false),
            SuiteArg::All => (
                vec![Suite::Table, Suite::Sums, Suite::Rank, Suite::Ekr],
                true,
            ),
        };
        let cfg = RunConfig {
            qs: args.q.clone(),
            suites,
            all,
            out: args.out.clone(),
            approx_digits: args.approx_digits,
            budget_seconds: args.budget_seconds,
            seed: args.seed,
            allow_q9: args.allow_q9,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Rejects the whole configuration before anything runs.
    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.qs.is_empty() {
            return Err("no q given".into());
        }
        if self.approx_digits == 0 || self.approx_digits > 17 {
            return Err("--approx-digits must lie in 1..=17".into());
        }
        for &q in &self.qs {
            validate_q(q)?;
            if !self.all {
                for s in &self.suites {
                    if !s.supports(q, self.allow_q9) {
                        return Err(format!("suite {} does not run at q = {q}", s.name()));
                    }
                }
            }
        }
        Ok(())
    }
}

/// One report file.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema: &'static str,
    pub q: u32,
    pub suite: Suite,
    pub skipped: bool,
    pub pass: bool,
    /// Name of the first failing check.
    pub failure: Option<String>,
    pub details: Value,
}

/// Renders `x` with `digits` significant digits.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let mag = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s == "-0" || s.chars().all(|c| c == '0' || c == '.' || c == '-') {
        "0".into()
    } else {
        s
    }
}

/// Renders `re+imi`, dropping a part that is below rounding noise relative to
/// the other.
pub fn fmt_complex(z: Complex64, digits: usize) -> String {
    let scale = z.re.abs().max(z.im.abs()).max(1.0);
    let tiny = |x: f64| x.abs() < scale * 1e-10;
    let z = Complex64::new(
        if tiny(z.re) { 0.0 } else { z.re },
        if tiny(z.im) { 0.0 } else { z.im },
    );
    let re = fmt_sig(z.re, digits);
    let im = fmt_sig(z.im.abs(), digits);
    if im == "0" {
        re
    } else {
        let sign = if z.im < 0.0 { '-' } else { '+' };
        format!("{re}{sign}{im}i")
    }
}

/// Collects named boolean checks and remembers the first failure.
struct Checks {
    items: Vec<(String, bool)>,
}

impl Checks {
    fn new() -> Self {
        Checks { items: Vec::new() }
    }

    fn add(&mut self, name: impl Into<String>, ok: bool) {
        self.items.push((name.into(), ok));
    }

    fn first_failure(&self) -> Option<String> {
        self.items
            .iter()
            .find(|(_, ok)| !ok)
            .map(|(n, _)| n.clone())
    }

    fn to_json(&self) -> Value {
        Value::Array(
            self.items
                .iter()
                .map(|(n, ok)| json!({"check": n, "pass": ok}))
                .collect(),
        )
    }
}

fn target_chars(q: u32) -> Vec<IrreducibleChar> {
    irreducibles(q)
        .into_iter()
        .filter(|c| {
            matches!(
                c.kind,
                CharKind::PsiMinus1 | CharKind::Eta(_) | CharKind::Nu(_)
            )
        })
        .collect()
}

fn run_table(grp: &Pgl2) -> (Checks, Value) {
    let q = grp.q();
    let table = CharTable::build(grp);
    let mut checks = Checks::new();
    let rows = table.rows();
    let row_orth = rows.iter().all(|a| {
        rows.iter().all(|b| {
            let ip = table.inner_product(&table.row_function(a), &table.row_function(b));
            ip == CycNum::from_int(1, i64::from(a == b))
        })
    });
    checks.add("row orthonormality", row_orth);
    let ncols = table.class_labels().len();
    let col_orth = (0..ncols).all(|c| {
        (0..ncols).all(|d| {
            let s = (0..rows.len()).fold(CycNum::zero(1), |acc, r| {
                acc + table.value(r, c) * &table.value(r, d).conj()
            });
            let want = if c == d {
                (table.group_order() / table.class_sizes()[c]) as i64
            } else {
                0
            };
            s == CycNum::from_int(1, want)
        })
    });
    checks.add("column orthogonality", col_orth);
    let deg_sq: u64 = rows.iter().map(|c| (c.degree as u64).pow(2)).sum();
    checks.add("sum of squared degrees", deg_sq == table.group_order());
    let mut counts = vec![0u64; ncols];
    for g in grp.elements() {
        counts[table.class_column(g.class_label())] += 1;
    }
    checks.add("class sizes", counts == table.class_sizes());
    checks.add("class count q+2", ncols as u32 == q + 2);

    let pi = permutation_character_pi(grp);
    let mut decomposition = Vec::new();
    let mut pi_ok = true;
    let mut dim = 0i64;
    for (chi, mult) in table.decompose(&pi) {
        let want = match chi.kind {
            CharKind::LambdaMinus1 => 0,
            CharKind::Psi1 => 2,
            _ => 1,
        };
        let got = mult.as_rational();
        pi_ok &= got.as_ref() == Some(&num_rational::BigRational::from_integer(want.into()));
        dim += want * chi.degree as i64;
        decomposition
            .push(json!({"character": chi.name(), "multiplicity": mult.to_coeff_string()}));
    }
    checks.add(
        "permutation module decomposition",
        pi_ok && dim == (q as i64) * (q as i64 + 1),
    );
    let details = json!({
        "group_order": table.group_order(),
        "characters": rows.iter().map(|c| c.name()).collect::<Vec<_>>(),
        "classes": table.class_labels().iter().map(|l| l.to_string()).collect::<Vec<_>>(),
        "class_sizes": table.class_sizes(),
        "pi_decomposition": decomposition,
    });
    (checks, details)
}

fn run_sums(grp: &Pgl2) -> Result<(Checks, Value)> {
    let f = grp.ctx();
    let q = f.q();
    let mut checks = Checks::new();
    let basis = OrthogonalBasisL::build(f);
    checks.add("basis Gram matrix", basis.check_gram(f));

    let ff = f_function(f);
    let norm = l2_inner(f, &ff, &ff)?;
    checks.add("norm of f", norm.as_rational() == Some(f_norm_sq_closed(q)));
    let coeffs = basis.squared_coefficients(f, &ff)?;
    let total = coeffs
        .iter()
        .fold(CycNum::zero(1), |acc, (_, c)| acc + c.clone());
    checks.add("Parseval for f", total == norm);

    let eps = MultCharFq::trivial(q);
    let phi = MultCharFq::quadratic(q);
    let half = f.inv(f.from_int(2))?;
    let nontrivial: Vec<MultCharFq> = all_fq_chars(q)
        .into_iter()
        .filter(|g| !g.is_trivial())
        .collect();
    let mut legendre_ok = true;
    for g in &nontrivial {
        for a in f
            .elements()
            .filter(|&a| a != f.one() && a != f.from_int(-1))
        {
            let x = f.mul(f.sub(f.one(), a), half);
            legendre_ok &= legendre_sum(f, g, a) == greene_2f1(f, g, &g.inverse(), &eps, x);
        }
    }
    checks.add("Legendre sum as 2F1", legendre_ok);
    let transform_ok = f.units().all(|x| {
        greene_2f1(f, &phi, &phi, &eps, x)
            == phi.eval(f, x) * greene_2f1(f, &phi, &phi, &eps, f.inv(x).unwrap())
    });
    checks.add("2F1 inversion transformation", transform_ok);
    let mut l15 = true;
    let mut fp = true;
    for g in &nontrivial {
        let (l, r) = product_sum_sides(f, g);
        l15 &= l == r;
        let (l, r) = f_pgamma_identity(f, g)?;
        fp &= l == r;
    }
    checks.add("4F3 as a 2F1 product sum", l15);
    checks.add("<f, P_gamma> via 4F3", fp);

    let mut bound_checks = Vec::new();
    for n in [2u32, 3, 4, 6] {
        if !(q - 1).is_multiple_of(n) {
            continue;
        }
        let g = MultCharFq::new(q, ((q - 1) / n) as i64);
        let c = four_f_three_bound(f, &g);
        checks.add(format!("4F3 bound for n = {n}"), c.holds);
        let (l, r) = katz_conversion(f, n, 1)?;
        checks.add(format!("Katz conversion for n = {n}"), l == r);
        bound_checks
            .push(json!({"n": n, "abs_sq": c.abs_sq.to_coeff_string(), "bound_sq": c.bound_sq}));
    }

    let table = CharTable::build(grp);
    let mut restricted_ok = true;
    let mut orientation_differences = Vec::new();
    for chi in target_chars(q) {
        let s = restricted_char_sum(grp, &table, &chi, Constraint::Swap)?;
        restricted_ok &= s == CycNum::from_int(1, swap_sum_closed(q, &chi)?);
        for d in f.units().filter(|&d| d != f.one()) {
            let c = Constraint::ZeroInfOneTo(ProjPoint::Finite(d));
            let inv = restricted_char_sum(grp, &table, &chi, c)?;
            restricted_ok &= inv == zero_inf_one_closed(grp, &chi, d)?;
            let fwd = restricted_char_sum_oriented(grp, &table, &chi, c, Orientation::Forward)?;
            if fwd != inv {
                orientation_differences.push(json!({"character": chi.name(), "d": d.to_string()}));
            }
        }
    }
    checks.add("restricted character sums", restricted_ok);
    let details = json!({
        "basis_size": basis.elements.len(),
        "f_norm_sq": norm.to_coeff_string(),
        "squared_coefficients": coeffs.iter().map(|(k, c)| json!({"basis": k.name(), "value": c.to_coeff_string()})).collect::<Vec<_>>(),
        "four_f_three_bounds": bound_checks,
        "orientation_differences": orientation_differences,
    });
    Ok((checks, details))
}

fn run_rank(grp: &Pgl2, seed: u64, digits: usize) -> Result<(Checks, Value)> {
    let q = grp.q();
    let mut checks = Checks::new();
    let report = verify_theorem2(grp, DEFAULT_RANK_MAX_Q)?;
    checks.add("rank of M", report.rank == report.expected_rank);
    checks.add(
        "rank of N equals rank of M",
        report.rank_of_n == report.rank,
    );
    checks.add(
        "T_N routes agree",
        report.characters.iter().all(|c| c.routes_agree),
    );
    checks.add(
        "T_N nonvanishing",
        report.characters.iter().all(|c| c.nonzero),
    );
    checks.add(
        "dimension ledger",
        report.dimension_ledger.total == report.dimension_ledger.target,
    );

    let m = build_m(grp);
    let n = build_n_bruteforce(&m);
    let cf = ClosedFormN::new(grp)?;
    checks.add("closed-form N", cf.full_matrix()? == n.matrix());
    checks.add("N symmetric", n.is_symmetric());

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = n.omega().pairs();
    let mut symmetric = true;
    for _ in 0..200 {
        let (i, j) = (rng.gen_range(0..pairs.len()), rng.gen_range(0..pairs.len()));
        let g = grp.elements()[rng.gen_range(0..grp.elements().len())];
        let ((a, b), (c, d)) = (pairs[i], pairs[j]);
        let moved = n.entry(
            (grp.act(a, &g), grp.act(b, &g)),
            (grp.act(c, &g), grp.act(d, &g)),
        )?;
        symmetric &= moved == n.at(i, j);
    }
    checks.add("conjugation symmetry of N (200 samples)", symmetric);

    let kv = kernel_vectors(n.omega());
    let killed =
        kv.l.values()
            .chain(kv.r.values())
            .all(|v| m.apply(v).iter().all(|x| *x == 0));
    checks.add("kernel vectors annihilated by M", killed);
    let l_rows: Vec<Vec<i64>> = kv.l.values().cloned().collect();
    let r_rows: Vec<Vec<i64>> = kv.r.values().cloned().collect();
    let (dim_l, dim_r) = (exact_rank(&l_rows), exact_rank(&r_rows));
    let stacked: Vec<Vec<i64>> = l_rows.into_iter().chain(r_rows).collect();
    let dim_sum = exact_rank(&stacked);
    checks.add(
        "dim V1 = dim V2 = q",
        dim_l == q as usize && dim_r == q as usize,
    );
    checks.add("V1 and V2 independent", dim_sum == 2 * q as usize);
    checks.add(
        "rank + kernel <= |Omega|",
        report.rank + dim_sum <= n.omega().len(),
    );

    let table = CharTable::build(grp);
    let mut frob = true;
    for chi in target_chars(q) {
        let [a, b, c] = frobenius_side_sums(grp, &table, &chi)?;
        frob &= a == CycNum::from_int(1, q as i64 - 1) && b.is_zero() && c.is_zero();
    }
    checks.add("Frobenius reciprocity sums", frob);

    let mut margins = Vec::new();
    for chi in target_chars(q)
        .iter()
        .filter(|c| matches!(c.kind, CharKind::Eta(_)))
    {
        let mg = eta_margin(grp, chi)?;
        checks.add(format!("|<f, R'>| <= 1 for {}", chi.name()), mg.holds);
        margins.push(json!({"character": chi.name(), "value": mg.value, "bound": mg.bound, "exact": mg.exact}));
    }
    if q >= 7 {
        let mg = psi_margin(grp)?;
        checks.add("psi_-1 margin", mg.holds);
        margins.push(
            json!({"character": "psi_-1", "value": mg.value, "bound": mg.bound, "exact": true}),
        );
    }
    let chars: Vec<Value> = report
        .characters
        .iter()
        .map(|c| {
            json!({
                "kind": c.kind,
                "params": c.params,
                "t_value_exact": c.t_value_exact,
                "t_value_approx": fmt_complex(Complex64::new(c.t_value_approx[0], c.t_value_approx[1]), digits),
                "nonzero": c.nonzero,
            })
        })
        .collect();
    let details = json!({
        "rank": report.rank,
        "expected_rank": report.expected_rank,
        "rank_of_n": report.rank_of_n,
        "characters": chars,
        "dimension_ledger": report.dimension_ledger,
        "kernel_dimensions": {"v1": dim_l, "v2": dim_r, "sum": dim_sum},
        "margins": margins,
    });
    Ok((checks, details))
}

fn run_ekr(grp: &Pgl2, seed: u64, allow_q9: bool) -> Result<(Checks, Value)> {
    let mut checks = Checks::new();
    let g = build_graph(grp)?;
    let q = grp.q() as usize;
    let id = g.index_of(&grp.identity()).expect("identity");
    checks.add(
        "closed neighbourhood of identity",
        g.degree(id) + 1 == g.len() - q * (q - 1) * (q - 1) / 4,
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let verts = g.vertices();
    let mut invariant = true;
    for _ in 0..100 {
        let (i, j, k) = (
            rng.gen_range(0..g.len()),
            rng.gen_range(0..g.len()),
            rng.gen_range(0..g.len()),
        );
        let (a, b) = (grp.mul(&verts[i], &verts[k]), grp.mul(&verts[j], &verts[k]));
        let (ia, ib) = (
            g.index_of(&a).expect("closed"),
            g.index_of(&b).expect("closed"),
        );
        invariant &= g.adjacent(i, j) == g.adjacent(ia, ib);
    }
    checks.add("right-translation invariance (100 samples)", invariant);
    let report = ekr_report(grp, allow_q9)?;
    checks.add(
        "maximum family size",
        report.max_size == report.expected_max_size,
    );
    if q == 3 {
        checks.add("non-coset maximum family exists", !report.all_cosets);
    } else {
        checks.add("every maximum family is a coset", report.all_cosets);
        checks.add(
            "every coset is a maximum family",
            report.coset_count == (q + 1) * (q + 1),
        );
    }
    Ok((checks, serde_json::to_value(&report).expect("serializable")))
}

/// Runs one suite at one `q`.
pub fn run_suite(suite: Suite, q: u32, cfg: &RunConfig) -> Result<SuiteReport> {
    let grp = Pgl2::for_order(q)?;
    let (checks, details) = match suite {
        Suite::Table => run_table(&grp),
        Suite::Sums => run_sums(&grp)?,
        Suite::Rank => run_rank(&grp, cfg.seed, cfg.approx_digits)?,
        Suite::Ekr => run_ekr(&grp, cfg.seed, cfg.allow_q9)?,
    };
    let failure = checks.first_failure();
    let mut details = details;
    if let Value::Object(map) = &mut details {
        map.insert("checks".into(), checks.to_json());
    }
    Ok(SuiteReport {
        schema: SCHEMA,
        q,
        suite,
        skipped: false,
        pass: failure.is_none(),
        failure,
        details,
    })
}

fn write_json(path: &Path, value: &impl Serialize) -> io::Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(io::Error::other)?;
    text.push('\n');
    fs::write(path, text)
}

/// Result of `verify`: the exit code and every report written.
#[derive(Debug)]
pub struct VerifyOutcome {
    pub exit_code: i32,
    pub reports: Vec<SuiteReport>,
}

/// Runs every selected suite for every `q`, writing `<suite>_q<q>.json` into
/// the output directory. Exit code 0 when all pass, 1 otherwise.
pub fn cmd_verify(cfg: &RunConfig) -> io::Result<VerifyOutcome> {
    fs::create_dir_all(&cfg.out)?;
    let start = Instant::now();
    let mut reports = Vec::new();
    let mut all_pass = true;
    for &q in &cfg.qs {
        for &suite in &cfg.suites {
            let report = if !suite.supports(q, cfg.allow_q9) {
                SuiteReport {
                    schema: SCHEMA,
                    q,
                    suite,
                    skipped: true,
                    pass: true,
                    failure: None,
                    details: json!({"reason": format!("suite {} does not run at q = {q}", suite.name())}),
                }
            } else if cfg
                .budget_seconds
                .is_some_and(|b| start.elapsed().as_secs() >= b)
            {
                SuiteReport {
                    schema: SCHEMA,
                    q,
                    suite,
                    skipped: true,
                    pass: false,
                    failure: Some("time budget exhausted before this suite started".into()),
                    details: json!({}),
                }
            } else {
                match run_suite(suite, q, cfg) {
                    Ok(r) => r,
                    Err(e) => SuiteReport {
                        schema: SCHEMA,
                        q,
                        suite,
                        skipped: false,
                        pass: false,
                        failure: Some(e.to_string()),
                        details: json!({}),
                    },
                }
            };
            all_pass &= report.pass;
            let status = match (report.skipped, report.pass) {
                (true, true) => "SKIP",
                (_, true) => "PASS",
                _ => "FAIL",
            };
            match &report.failure {
                Some(f) => println!("q={q} suite={} {status}: {f}", suite.name()),
                None => println!("q={q} suite={} {status}", suite.name()),
            }
            write_json(
                &cfg.out.join(format!("{}_q{q}.json", suite.name())),
                &report,
            )?;
            reports.push(report);
        }
    }
    Ok(VerifyOutcome {
        exit_code: if all_pass { 0 } else { 1 },
        reports,
    })
}

fn omega_label((a, b): (ProjPoint, ProjPoint)) -> String {
    format!("({a},{b})")
}

/// Writes the requested CSV and returns its path.
pub fn cmd_dump(what: DumpTarget, q: u32, out: &Path, digits: usize) -> Result<PathBuf> {
    validate_q(q).map_err(Error::InvalidConstraint)?;
    fs::create_dir_all(out).map_err(|e| Error::InvalidConstraint(e.to_string()))?;
    let grp = Pgl2::for_order(q)?;
    let (name, header, rows): (&str, Vec<String>, Vec<Vec<String>>) = match what {
        DumpTarget::Table => {
            let table = CharTable::build(&grp);
            let mut header = vec!["character".to_string(), "degree".to_string()];
            for l in table.class_labels() {
                header.push(format!("{l}"));
                header.push(format!("{l} approx"));
            }
            let rows = table
                .rows()
                .iter()
                .enumerate()
                .map(|(r, chi)| {
                    let mut row = vec![chi.name(), chi.degree.to_string()];
                    for c in 0..table.class_labels().len() {
                        let v = table.value(r, c);
                        row.push(v.to_coeff_string());
                        row.push(fmt_complex(v.to_complex(), digits));
                    }
                    row
                })
                .collect();
            ("table", header, rows)
        }
        DumpTarget::Legendre => {
            let f = grp.ctx();
            let basis = OrthogonalBasisL::build(f);
            let mut header = vec!["a".to_string()];
            for b in &basis.elements {
                header.push(b.kind.name());
                header.push(format!("{} approx", b.kind.name()));
            }
            let rows = f
                .elements()
                .map(|a| {
                    let mut row = vec![a.to_string()];
                    for b in &basis.elements {
                        let v = b.function.at(a);
                        row.push(v.to_coeff_string());
                        row.push(fmt_complex(v.to_complex(), digits));
                    }
                    row
                })
                .collect();
            ("legendre", header, rows)
        }
        DumpTarget::MatrixM => {
            let m = build_m(&grp);
            let mut header = vec!["element".to_string()];
            header.extend(m.omega().pairs().iter().map(|&p| omega_label(p)));
            let rows = m
                .to_dense()
                .into_iter()
                .zip(m.rows())
                .map(|(vals, g)| {
                    std::iter::once(g.to_string())
                        .chain(vals.iter().map(|v| v.to_string()))
                        .collect()
                })
                .collect();
            ("matrixM", header, rows)
        }
        DumpTarget::MatrixN => {
            let n = build_n_bruteforce(&build_m(&grp));
            let mut header = vec!["pair".to_string()];
            header.extend(n.omega().pairs().iter().map(|&p| omega_label(p)));
            let rows = n
                .matrix()
                .iter()
                .zip(n.omega().pairs())
                .map(|(vals, &p)| {
                    std::iter::once(omega_label(p))
                        .chain(vals.iter().map(|v| v.to_string()))
                        .collect()
                })
                .collect();
            ("matrixN", header, rows)
        }
    };
    let path = out.join(format!("{name}_q{q}.csv"));
    let io_err = |e: csv::Error| Error::InvalidConstraint(e.to_string());
    let mut w = csv::Writer::from_path(&path).map_err(io_err)?;
    w.write_record(&header).map_err(io_err)?;
    for row in rows {
        w.write_record(&row).map_err(io_err)?;
    }
    w.flush()
        .map_err(|e| Error::InvalidConstraint(e.to_string()))?;
    Ok(path)
}

/// Entry point shared by the binary: parses `args` and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return if code == 0 { 0 } else { 2 };
        }
    };
    match cli.command {
        Command::Verify(args) => {
            let cfg = match RunConfig::from_args(&args) {
                Ok(c) => c,
                Err(msg) => {
                    eprintln!("invalid configuration: {msg}");
                    return 2;
                }
            };
            match cmd_verify(&cfg) {
                Ok(o) => o.exit_code,
                Err(e) => {
                    eprintln!("could not write reports: {e}");
                    1
                }
            }
        }
        Command::Dump(args) => {
            if let Err(msg) = validate_q(args.q) {
                eprintln!("invalid configuration: {msg}");
                return 2;
            }
            match cmd_dump(args.what, args.q, &args.out, args.approx_digits) {
                Ok(path) => {
                    println!("{}", path.display());
                    0
                }
                Err(e) => {
                    eprintln!("dump failed: {e}");
                    1
                }
            }
        }
    }
}
