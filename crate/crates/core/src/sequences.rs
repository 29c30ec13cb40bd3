//! Parametric module families `n ↦ M_n` and their asymptotic tables.
//!
//! A limit is called exact only when the quantities involved follow a
//! polynomial in `n` certified by finite differences on the computed range;
//! otherwise the table reports finite-index evidence.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{Coefficient, ExponentVector, Field, ParseOptions, Polynomial, Ring};
use crate::groebner::Ideal;
use crate::koszul::{
    eval_integer, koszul_ideal_module, parse_ideal_expr, parse_keywords, parse_module,
    FiniteLengthModule, KoszulTally, ModuleRep, MonomialModule,
};
use crate::semigroup::AffineSemigroup;
use crate::{Error, Result};

/// Largest bound used when certifying a finite gap set.
const GAP_BOUND: u64 = 256;

/// Default index range.
pub const DEFAULT_RANGE: (u32, u32) = (1, 12);

/// Minimum number of consecutive values behind any fitted pattern.
const MIN_FIT_POINTS: usize = 4;

type Rule = dyn Fn(u32) -> Result<ModuleRep> + Send + Sync;

/// `n ↦ M_n` with a fixed system of parameters.
#[derive(Clone)]
pub struct SequenceFamily {
    pub name: String,
    rule: Arc<Rule>,
    pub sop: (Polynomial, Polynomial),
    pub range: (u32, u32),
}

impl fmt::Debug for SequenceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SequenceFamily")
            .field("name", &self.name)
            .field("sop", &self.sop)
            .field("range", &self.range)
            .finish()
    }
}

impl SequenceFamily {
    pub fn new(
        name: impl Into<String>,
        sop: (Polynomial, Polynomial),
        range: (u32, u32),
        rule: impl Fn(u32) -> Result<ModuleRep> + Send + Sync + 'static,
    ) -> Self {
        SequenceFamily {
            name: name.into(),
            rule: Arc::new(rule),
            sop,
            range,
        }
    }

    pub fn with_range(mut self, range: (u32, u32)) -> Self {
        self.range = range;
        self
    }

    pub fn module(&self, n: u32) -> Result<ModuleRep> {
        (self.rule)(n)
    }

    pub fn indices(&self) -> impl Iterator<Item = u32> {
        self.range.0..=self.range.1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    LimCmTrend,
    WeaklyLimCmTrend,
    LimUlrichTrend,
    NotLimCmEvidence,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::LimCmTrend => "LIM_CM_TREND",
            Verdict::WeaklyLimCmTrend => "WEAKLY_LIM_CM_TREND",
            Verdict::LimUlrichTrend => "LIM_ULRICH_TREND",
            Verdict::NotLimCmEvidence => "NOT_LIM_CM_EVIDENCE",
            Verdict::Inconclusive => "INCONCLUSIVE",
        };
        f.write_str(s)
    }
}

/// Limit of a ratio of polynomials in `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Limit {
    Finite(BigRational),
    Infinite,
}

impl fmt::Display for Limit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Limit::Finite(r) => write!(f, "{r}"),
            Limit::Infinite => f.write_str("infinity"),
        }
    }
}

fn index_ring() -> Arc<Ring> {
    Ring::new(&["n"], Field::Rational)
}

fn rational(c: &Coefficient) -> BigRational {
    c.as_rational().expect("rational coefficients").clone()
}

fn leading(p: &Polynomial) -> (u64, BigRational) {
    let d = p.degree().unwrap_or(0);
    (d, rational(&p.coefficient(&ExponentVector::from(vec![d as u32]))))
}

/// The polynomial in `n` through `values` at `start, start + 1, ...`, when
/// its degree-`k` differences are constant over at least three entries and
/// at least four values are available.
pub fn fit_polynomial(start: u32, values: &[i64]) -> Option<Polynomial> {
    let len = values.len();
    if len < MIN_FIT_POINTS {
        return None;
    }
    let k = (0..=len - 3).find(|&k| {
        let d = crate::algebra::differences::differences(values, k);
        d.iter().all(|&x| x == d[0])
    })?;
    let ring = index_ring();
    let n = Polynomial::var(&ring, 0);
    let q = Field::Rational;
    let xs: Vec<i64> = (0..=k).map(|i| start as i64 + i as i64).collect();
    let mut p = Polynomial::zero(&ring);
    for (i, &xi) in xs.iter().enumerate() {
        let mut basis = Polynomial::from_i64(&ring, values[i]);
        for (j, &xj) in xs.iter().enumerate() {
            if i != j {
                let factor = (&n - &Polynomial::from_i64(&ring, xj))
                    .scale(&q.from_i64(xi - xj).inverse());
                basis = &basis * &factor;
            }
        }
        p = &p + &basis;
    }
    let fits = values.iter().enumerate().all(|(i, &v)| {
        evaluate(&p, start as i64 + i as i64) == BigRational::from_integer(v.into())
    });
    fits.then_some(p)
}

/// Value of a polynomial in `n` at an integer.
pub fn evaluate(p: &Polynomial, n: i64) -> BigRational {
    let n = BigRational::from_integer(n.into());
    p.terms()
        .map(|(e, c)| rational(c) * num_traits::pow(n.clone(), e.get(0) as usize))
        .sum()
}

fn wrap(p: &Polynomial) -> String {
    if p.num_terms() > 1 {
        format!("({p})")
    } else {
        p.to_string()
    }
}

/// Closed form and limit of `num / den`.
fn ratio_closed_form(num: &Polynomial, den: &Polynomial) -> (String, Limit) {
    let (dn, ln) = leading(num);
    let (dd, ld) = leading(den);
    let limit = if num.is_zero() || dn < dd {
        Limit::Finite(BigRational::zero())
    } else if dn == dd {
        Limit::Finite(&ln / &ld)
    } else {
        Limit::Infinite
    };
    let formula = if num.is_zero() {
        "0".to_string()
    } else if den.is_constant() {
        num.scale(&den.coefficient(&ExponentVector::zero(1)).inverse())
            .to_string()
    } else {
        let c = &ln / &ld;
        let cq = Coefficient::Rational(c.clone());
        if den.scale(&cq) == *num {
            c.to_string()
        } else {
            format!("{}/{}", wrap(num), wrap(den))
        }
    };
    (formula, limit)
}

/// One ratio column of a table.
#[derive(Clone, Debug, Serialize)]
pub struct RatioSummary {
    pub name: String,
    /// Closed form in `n`, when both sides fit a polynomial.
    pub formula: Option<String>,
    /// Limit of the closed form.
    pub limit: Option<String>,
    /// Finite-index verdict on whether the ratio tends to the target.
    pub tends_to_target: Option<bool>,
    pub target: String,
    pub exact: bool,
}

fn summarize(
    name: &str,
    start: u32,
    num: &[i64],
    den: &[i64],
    target: i64,
) -> RatioSummary {
    let target_q = BigRational::from_integer(target.into());
    if let (Some(p), Some(q)) = (fit_polynomial(start, num), fit_polynomial(start, den)) {
        let (formula, limit) = ratio_closed_form(&p, &q);
        let tends = limit == Limit::Finite(target_q);
        return RatioSummary {
            name: name.into(),
            formula: Some(formula),
            limit: Some(limit.to_string()),
            tends_to_target: Some(tends),
            target: target.to_string(),
            exact: true,
        };
    }
    let values: Vec<f64> = num
        .iter()
        .zip(den)
        .map(|(&a, &b)| (a as f64 / b as f64 - target as f64).abs())
        .collect();
    RatioSummary {
        name: name.into(),
        formula: None,
        limit: None,
        tends_to_target: trend_to_zero(&values),
        target: target.to_string(),
        exact: false,
    }
}

/// Heuristic reading of a nonnegative distance sequence: shrinking steadily
/// to below half its start, or not shrinking at all over the second half.
fn trend_to_zero(dist: &[f64]) -> Option<bool> {
    if dist.len() < MIN_FIT_POINTS {
        return None;
    }
    let half = &dist[dist.len() / 2..];
    let first = dist[0];
    let last = *dist.last().expect("nonempty");
    let decreasing = half.windows(2).all(|w| w[1] < w[0]);
    let flat_or_growing = half.windows(2).all(|w| w[1] >= w[0]);
    let vanished = last == 0.0 && half.iter().all(|&d| d == 0.0);
    if vanished || (decreasing && last <= first / 2.0) {
        Some(true)
    } else if flat_or_growing && last > 0.0 {
        Some(false)
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AsymptoticRow {
    pub n: u32,
    pub nu: u64,
    pub e: u64,
    pub h0: u64,
    pub h1: u64,
    pub h2: u64,
    pub chi1: i64,
    pub e_over_nu: String,
    pub h1_over_nu: String,
    pub h2_over_nu: String,
    pub chi1_over_nu: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticTable {
    pub family: String,
    pub sop: [String; 2],
    pub rows: Vec<AsymptoticRow>,
    pub ratios: Vec<RatioSummary>,
    pub verdict: Verdict,
    /// All limits behind the verdict come from certified closed forms.
    pub exact: bool,
}

impl AsymptoticTable {
    pub fn ratio(&self, name: &str) -> Option<&RatioSummary> {
        self.ratios.iter().find(|r| r.name == name)
    }

    fn column(&self, f: impl Fn(&AsymptoticRow) -> i64) -> Vec<i64> {
        self.rows.iter().map(f).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "family {}  sop ({}, {})\n{:>4} {:>6} {:>6} {:>6} {:>6} {:>6} {:>6}  {:>10} {:>10} {:>10}\n",
            self.family, self.sop[0], self.sop[1], "n", "nu", "e", "h0", "h1", "h2", "chi1",
            "e/nu", "h1/nu", "chi1/nu"
        );
        for r in &self.rows {
            out += &format!(
                "{:>4} {:>6} {:>6} {:>6} {:>6} {:>6} {:>6}  {:>10} {:>10} {:>10}\n",
                r.n, r.nu, r.e, r.h0, r.h1, r.h2, r.chi1, r.e_over_nu, r.h1_over_nu,
                r.chi1_over_nu
            );
        }
        for s in &self.ratios {
            match (&s.formula, &s.limit) {
                (Some(f), Some(l)) => out += &format!("{} = {f} -> {l}\n", s.name),
                _ => {
                    out += &format!(
                        "{}: no closed form; tends to {}: {}\n",
                        s.name,
                        s.target,
                        s.tends_to_target
                            .map_or("undetermined".to_string(), |b| b.to_string())
                    )
                }
            }
        }
        out += &format!(
            "verdict: {} ({})\n",
            self.verdict,
            if self.exact { "exact" } else { "finite-index evidence" }
        );
        out
    }
}

fn ratio_text(a: i64, b: u64) -> String {
    BigRational::new(a.into(), (b as i64).into()).to_string()
}

/// One row: ν, e and the Koszul tally of `M_n`.
pub fn table_row(n: u32, m: &ModuleRep, sop: &(Polynomial, Polynomial)) -> Result<AsymptoticRow> {
    let nu = m.nu()?;
    let e = m.multiplicity()?;
    if nu == 0 {
        return Err(Error::precondition(format!("module at index {n} is zero")));
    }
    if e == 0 {
        return Err(Error::precondition(format!(
            "module at index {n} has dimension below 2"
        )));
    }
    let t: KoszulTally = m.koszul(&sop.0, &sop.1)?;
    Ok(AsymptoticRow {
        n,
        nu,
        e,
        h0: t.h0,
        h1: t.h1,
        h2: t.h2,
        chi1: t.chi1,
        e_over_nu: ratio_text(e as i64, nu),
        h1_over_nu: ratio_text(t.h1 as i64, nu),
        h2_over_nu: ratio_text(t.h2 as i64, nu),
        chi1_over_nu: ratio_text(t.chi1, nu),
    })
}

/// Fills the table and classifies the family.
pub fn analyze(f: &SequenceFamily) -> Result<AsymptoticTable> {
    let rows = f
        .indices()
        .map(|n| {
            let m = f.module(n)?;
            table_row(n, &m, &f.sop)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(classify(f.name.clone(), &f.sop, rows, f.range.0))
}

fn classify(
    family: String,
    sop: &(Polynomial, Polynomial),
    rows: Vec<AsymptoticRow>,
    start: u32,
) -> AsymptoticTable {
    let mut table = AsymptoticTable {
        family,
        sop: [sop.0.to_string(), sop.1.to_string()],
        rows,
        ratios: Vec::new(),
        verdict: Verdict::Inconclusive,
        exact: false,
    };
    let nu = table.column(|r| r.nu as i64);
    let cols: [(&str, Vec<i64>, i64); 4] = [
        ("e/nu", table.column(|r| r.e as i64), 1),
        ("h1/nu", table.column(|r| r.h1 as i64), 0),
        ("h2/nu", table.column(|r| r.h2 as i64), 0),
        ("chi1/nu", table.column(|r| r.chi1), 0),
    ];
    table.ratios = cols
        .iter()
        .map(|(name, num, target)| summarize(name, start, num, &nu, *target))
        .collect();
    let get = |name: &str| table.ratio(name).expect("column present").clone();
    let (e, h1, h2, chi1) = (get("e/nu"), get("h1/nu"), get("h2/nu"), get("chi1/nu"));
    let cm = match (h1.tends_to_target, h2.tends_to_target) {
        (Some(true), Some(true)) => Some(true),
        (Some(false), _) | (_, Some(false)) => Some(false),
        _ => None,
    };
    let (verdict, used): (Verdict, Vec<&RatioSummary>) = match cm {
        Some(true) => match e.tends_to_target {
            Some(true) => (Verdict::LimUlrichTrend, vec![&h1, &h2, &e]),
            Some(false) => (Verdict::LimCmTrend, vec![&h1, &h2, &e]),
            None => (Verdict::LimCmTrend, vec![&h1, &h2]),
        },
        Some(false) => match chi1.tends_to_target {
            Some(true) => (Verdict::WeaklyLimCmTrend, vec![&h1, &h2, &chi1]),
            Some(false) => (Verdict::NotLimCmEvidence, vec![&chi1]),
            None => (Verdict::Inconclusive, vec![]),
        },
        None => (Verdict::Inconclusive, vec![]),
    };
    table.exact = !used.is_empty() && used.iter().all(|r| r.exact);
    table.verdict = verdict;
    table
}

/// Ranks `(a, b)` of the minimal free resolution `0 → S^b → S^a → J → 0` of
/// a nonzero ideal of `k[x, y]`, read off from Koszul homology on `(x, y)`.
pub fn resolution_ranks(j: &Ideal) -> Result<(u64, u64)> {
    let ring = j.ring();
    let t = koszul_ideal_module(&Polynomial::var(ring, 0), &Polynomial::var(ring, 1), j)?;
    let (a, b) = (t.h0, t.h1);
    if b + 1 != a {
        return Err(Error::Inconclusive(format!(
            "resolution ranks ({a}, {b}) of {j} break b = a − 1"
        )));
    }
    Ok((a, b))
}

/// Outcome of an `a_n ∼ b_n` comparison against a normalizer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Judgment {
    /// `(a_n − b_n)/ν_n → 0` from a certified closed form.
    Exact,
    /// The ratio shrinks on the computed range.
    Evidence,
    /// The ratio does not tend to 0.
    Fails,
    Undetermined,
}

#[derive(Clone, Debug, Serialize)]
pub struct Equivalence {
    pub a: String,
    pub b: String,
    pub judgment: Judgment,
    pub formula: Option<String>,
    #[serde(skip)]
    a_values: Vec<i64>,
    #[serde(skip)]
    b_values: Vec<i64>,
}

/// Per-index check of an identity or inequality.
#[derive(Clone, Debug, Serialize)]
pub struct IndexCheck {
    pub name: String,
    pub holds: bool,
    pub failures: Vec<u32>,
}

/// Bookkeeping of `a_n ∼ b_n` relations (difference negligible against the
/// normalizer) and per-index identities.
#[derive(Clone, Debug, Serialize)]
pub struct EquivRelationLedger {
    pub normalizer: String,
    pub start: u32,
    #[serde(skip)]
    normalizer_values: Vec<i64>,
    pub relations: Vec<Equivalence>,
    pub checks: Vec<IndexCheck>,
}

impl EquivRelationLedger {
    pub fn new(normalizer: impl Into<String>, start: u32, values: Vec<i64>) -> Self {
        EquivRelationLedger {
            normalizer: normalizer.into(),
            start,
            normalizer_values: values,
            relations: Vec::new(),
            checks: Vec::new(),
        }
    }

    fn judge(&self, a: &[i64], b: &[i64]) -> (Judgment, Option<String>) {
        let diff: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        let s = summarize("", self.start, &diff, &self.normalizer_values, 0);
        let j = match (s.tends_to_target, s.exact) {
            (Some(true), true) => Judgment::Exact,
            (Some(true), false) => Judgment::Evidence,
            (Some(false), _) => Judgment::Fails,
            (None, _) => Judgment::Undetermined,
        };
        (j, s.formula)
    }

    /// Records `a ∼ b`; the relation is symmetric, so `b ∼ a` is implied.
    pub fn relate(&mut self, a: &str, a_values: Vec<i64>, b: &str, b_values: Vec<i64>) -> Judgment {
        let (judgment, formula) = self.judge(&a_values, &b_values);
        self.relations.push(Equivalence {
            a: a.into(),
            b: b.into(),
            judgment,
            formula,
            a_values,
            b_values,
        });
        judgment
    }

    pub fn check(&mut self, name: &str, per_index: impl IntoIterator<Item = (u32, bool)>) -> bool {
        let failures: Vec<u32> = per_index.into_iter().filter(|(_, ok)| !ok).map(|(n, _)| n).collect();
        let holds = failures.is_empty();
        self.checks.push(IndexCheck {
            name: name.into(),
            holds,
            failures,
        });
        holds
    }

    pub fn judgment(&self, a: &str, b: &str) -> Option<Judgment> {
        self.relations
            .iter()
            .find(|r| (r.a == a && r.b == b) || (r.a == b && r.b == a))
            .map(|r| r.judgment)
    }

    /// For exact relations `a ∼ b` and `b ∼ c`, checks that `a ∼ c` is exact
    /// as well. Returns the offending triples.
    pub fn transitivity_violations(&self) -> Vec<(String, String, String)> {
        let mut seqs: BTreeMap<&str, &[i64]> = BTreeMap::new();
        let mut edges = Vec::new();
        for r in &self.relations {
            seqs.insert(&r.a, &r.a_values);
            seqs.insert(&r.b, &r.b_values);
            if r.judgment == Judgment::Exact {
                edges.push((r.a.as_str(), r.b.as_str()));
                edges.push((r.b.as_str(), r.a.as_str()));
            }
        }
        let mut bad = Vec::new();
        for &(a, b) in &edges {
            for &(b2, c) in &edges {
                if b != b2 || a == c {
                    continue;
                }
                if self.judge(seqs[a], seqs[c]).0 != Judgment::Exact {
                    bad.push((a.to_string(), b.to_string(), c.to_string()));
                }
            }
        }
        bad
    }

    pub fn all_checks_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

fn split_torsion(m: &ModuleRep) -> Result<(Vec<ModuleRep>, Vec<ModuleRep>)> {
    let mut torsion = Vec::new();
    let mut free_part = Vec::new();
    for s in m.summands() {
        match s {
            ModuleRep::FinLen(_) => torsion.push(s.clone()),
            ModuleRep::Cyclic(j) if j.colength().is_finite() => torsion.push(s.clone()),
            ModuleRep::Free(_) | ModuleRep::Ideal(_) => free_part.push(s.clone()),
            ModuleRep::Cyclic(j) if j.is_zero() => free_part.push(ModuleRep::Free(1)),
            _ => {
                return Err(Error::precondition(
                    "module is not a direct sum of a finite-length part and a torsion-free part",
                ))
            }
        }
    }
    Ok((torsion, free_part))
}

/// Outcome of [`torsion_reduce`].
#[derive(Clone, Debug)]
pub struct TorsionReduction {
    pub reduced: SequenceFamily,
    pub ledger: EquivRelationLedger,
    pub original: AsymptoticTable,
    pub reduced_table: AsymptoticTable,
}

/// Strips the finite-length summands `C_n` of each `M_n` and records how the
/// Koszul data of `M_n` and `M̄_n = M_n / C_n` relate.
pub fn torsion_reduce(f: &SequenceFamily) -> Result<TorsionReduction> {
    let rule = f.rule.clone();
    let reduced = SequenceFamily::new(format!("{} without torsion", f.name), f.sop.clone(), f.range, move |n| {
        let (_, free_part) = split_torsion(&rule(n)?)?;
        Ok(ModuleRep::direct_sum(free_part))
    });
    let original = analyze(f)?;
    let reduced_table = analyze(&reduced)?;
    let mut nu_c = Vec::new();
    let mut tally_c = Vec::new();
    for n in f.indices() {
        let (torsion, _) = split_torsion(&f.module(n)?)?;
        let c = ModuleRep::direct_sum(torsion);
        nu_c.push(c.nu()? as i64);
        tally_c.push(c.koszul(&f.sop.0, &f.sop.1)?);
    }
    let nu: Vec<i64> = original.rows.iter().map(|r| r.nu as i64).collect();
    let mut ledger = EquivRelationLedger::new("nu(M_n)", f.range.0, nu);
    ledger.relate("nu(C_n)", nu_c, "0", vec![0; tally_c.len()]);
    ledger.check(
        "chi1(C_n) = h0(C_n)",
        f.indices().zip(&tally_c).map(|(n, t)| (n, t.chi1 == t.h0 as i64)),
    );
    ledger.check(
        "h1(M̄_n) = chi1(M_n) − (h0(M_n) − h0(M̄_n))",
        original.rows.iter().zip(&reduced_table.rows).map(|(m, r)| {
            (m.n, r.h1 as i64 == m.chi1 - (m.h0 as i64 - r.h0 as i64))
        }),
    );
    ledger.relate(
        "chi1(M_n)",
        original.rows.iter().map(|r| r.chi1).collect(),
        "h1(M̄_n)",
        reduced_table.rows.iter().map(|r| r.h1 as i64).collect(),
    );
    Ok(TorsionReduction {
        reduced,
        ledger,
        original,
        reduced_table,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaturationRow {
    pub n: u32,
    /// `ℓ(M_n S / M_n)`.
    pub quotient_length: u64,
    /// `h1(x^t, y^t; M_n)`.
    pub h1_t: u64,
    pub nu_r: u64,
    pub nu_r_saturated: u64,
    pub nu_s_saturated: u64,
    pub e_r: u64,
    pub e_r_saturated: u64,
}

/// Outcome of [`saturate_over_s`].
#[derive(Clone, Debug)]
pub struct Saturation {
    /// `t` with `x^t, y^t ∈ R`, one more than the largest gap degree.
    pub t: u32,
    pub nu_r_of_s: u64,
    pub rows: Vec<SaturationRow>,
    /// `n ↦ M_n S` as modules over `k[x, y]`.
    pub s_family: SequenceFamily,
    pub s_table: AsymptoticTable,
    pub ledger: EquivRelationLedger,
}

fn monomial_of(m: &ModuleRep, n: u32) -> Result<MonomialModule> {
    match m {
        ModuleRep::MonomialR(mm) => Ok(mm.clone()),
        _ => Err(Error::precondition(format!(
            "module at index {n} is not a monomial module over the semigroup ring"
        ))),
    }
}

/// `M S` as an ideal of `k[x, y]` after shifting by the corner.
fn as_s_module(ms: &MonomialModule, ring: &Arc<Ring>) -> Result<ModuleRep> {
    let c = ms.corner();
    let gens = ms
        .generators()
        .iter()
        .map(|g| {
            Polynomial::monomial(
                ring,
                ExponentVector::from([(g[0] - c[0]) as u32, (g[1] - c[1]) as u32]),
            )
        })
        .collect();
    let j = Ideal::new(ring, gens)?;
    if j.is_unit() {
        Ok(ModuleRep::Free(1))
    } else {
        ModuleRep::ideal(j)
    }
}

/// Passes from a family of monomial `R`-modules to `n ↦ M_n S` and records
/// how the two families compare.
pub fn saturate_over_s(f: &SequenceFamily, r: &AffineSemigroup) -> Result<Saturation> {
    let gaps = r.gap_set_auto(GAP_BOUND)?;
    let Some(gaps) = gaps.finite() else {
        return Err(Error::precondition(format!("{r} has infinitely many gaps")));
    };
    let t = gaps.gaps.iter().map(|g| g.degree()).max().map_or(1, |d| d + 1) as u32;
    let nu_r_of_s = MonomialModule::polynomial_ring(r)?.nu() as u64;
    let ring = Ring::plane();
    let mut rows = Vec::new();
    for n in f.indices() {
        let m = monomial_of(&f.module(n)?, n)?;
        if m.semigroup().generators() != r.generators() {
            return Err(Error::precondition(format!(
                "module at index {n} is over a different semigroup"
            )));
        }
        let ms = m.s_saturation()?;
        let h1_t = m.koszul_auto(([t as i64, 0], [0, t as i64]))?.tally.h1;
        let s_side = as_s_module(&ms, &ring)?;
        rows.push(SaturationRow {
            n,
            quotient_length: m.saturation_quotient()?.len() as u64,
            h1_t,
            nu_r: m.nu() as u64,
            nu_r_saturated: ms.nu() as u64,
            nu_s_saturated: s_side.nu()?,
            e_r: m.multiplicity()?,
            e_r_saturated: ms.multiplicity()?,
        });
    }
    let rule = f.rule.clone();
    let s_ring = ring.clone();
    let s_family = SequenceFamily::new(
        format!("{} extended to k[x, y]", f.name),
        (Polynomial::var(&ring, 0), Polynomial::var(&ring, 1)),
        f.range,
        move |n| {
            let m = monomial_of(&rule(n)?, n)?;
            as_s_module(&m.s_saturation()?, &s_ring)
        },
    );
    let s_table = analyze(&s_family)?;
    let mut ledger = EquivRelationLedger::new(
        "nu_R(M_n)",
        f.range.0,
        rows.iter().map(|r| r.nu_r as i64).collect(),
    );
    ledger.check(
        &format!("length(M_n S / M_n) <= h1(x^{t}, y^{t}; M_n)"),
        rows.iter().map(|r| (r.n, r.quotient_length <= r.h1_t)),
    );
    ledger.check(
        "nu_R(M_n S) <= nu_R(S) nu_S(M_n S)",
        rows.iter()
            .map(|r| (r.n, r.nu_r_saturated <= nu_r_of_s * r.nu_s_saturated)),
    );
    ledger.check(
        "e_R(M_n) = e_R(M_n S)",
        rows.iter().map(|r| (r.n, r.e_r == r.e_r_saturated)),
    );
    ledger.relate(
        "nu_R(M_n)",
        rows.iter().map(|r| r.nu_r as i64).collect(),
        "nu_R(M_n S)",
        rows.iter().map(|r| r.nu_r_saturated as i64).collect(),
    );
    Ok(Saturation {
        t,
        nu_r_of_s,
        rows,
        s_family,
        s_table,
        ledger,
    })
}

fn direct_sum_of_residues(count: i64, ring: &Arc<Ring>) -> ModuleRep {
    let k = FiniteLengthModule::residue_field(ring.field(), ring.nvars());
    ModuleRep::direct_sum((0..count).map(|_| ModuleRep::FinLen(k.clone())).collect())
}

/// Parses a family description, with an optional leading `family`:
///
/// * `free growth=EXPR`: `S^growth`;
/// * `freeplus ideal=IDEAL growth=EXPR`: `S^growth ⊕ IDEAL`;
/// * `powers ideal=IDEAL`: the ideal itself;
/// * `torsionplus quotient=IDEAL growth=EXPR`: `S/IDEAL ⊕ S^growth`, the
///   quotient of finite length;
/// * `torsionplus residues=EXPR growth=EXPR`: `k^residues ⊕ S^growth`;
/// * `module SPEC`: any module description understood by
///   [`crate::koszul::parse_module`].
///
/// Expressions may use the index `n`. Every kind accepts `sop=(f, g)`,
/// default `(x, y)`.
pub fn parse_family(text: &str, range: (u32, u32)) -> Result<SequenceFamily> {
    let text = text.trim();
    let text = text.strip_prefix("family").map_or(text, str::trim_start);
    let (kind, rest) = text
        .split_once(char::is_whitespace)
        .map_or((text, ""), |(a, b)| (a, b.trim()));
    let ring = Ring::plane();
    let opts1 = ParseOptions::default().with_param("n", 1);
    if kind == "module" {
        let spec = rest.to_string();
        parse_module(&spec, &ring, &opts1)?;
        let r = ring.clone();
        let sop = (Polynomial::var(&ring, 0), Polynomial::var(&ring, 1));
        return Ok(SequenceFamily::new(format!("module {spec}"), sop, range, move |n| {
            parse_module(&spec, &r, &ParseOptions::default().with_param("n", n as i64))
        }));
    }
    let mut keys: BTreeMap<String, String> = BTreeMap::new();
    for (k, v) in parse_keywords(rest)? {
        keys.insert(k, v);
    }
    let sop = match keys.remove("sop") {
        Some(s) => {
            let list = crate::algebra::parse_polynomial_list(&s, &ring, &opts1)?;
            let [f, g] = <[Polynomial; 2]>::try_from(list)
                .map_err(|_| Error::parse("sop needs exactly two elements"))?;
            (f, g)
        }
        None => (Polynomial::var(&ring, 0), Polynomial::var(&ring, 1)),
    };
    let take = |keys: &mut BTreeMap<String, String>, k: &str| {
        keys.remove(k)
            .ok_or_else(|| Error::parse(format!("family `{kind}` needs {k}=...")))
    };
    let name = format!("{kind} {rest}");
    let r = ring.clone();
    let family = match kind {
        "free" => {
            let growth = take(&mut keys, "growth")?;
            eval_integer(&growth, &opts1)?;
            SequenceFamily::new(name, sop, range, move |n| {
                let g = eval_integer(&growth, &with_n(n))?;
                Ok(ModuleRep::Free(nonnegative(g)?))
            })
        }
        "freeplus" => {
            let growth = take(&mut keys, "growth")?;
            let ideal = take(&mut keys, "ideal")?;
            parse_ideal_expr(&ideal, &ring, &opts1)?;
            SequenceFamily::new(name, sop, range, move |n| {
                let opts = with_n(n);
                let g = nonnegative(eval_integer(&growth, &opts)?)?;
                let j = ModuleRep::ideal(parse_ideal_expr(&ideal, &r, &opts)?)?;
                Ok(ModuleRep::direct_sum(vec![ModuleRep::Free(g), j]))
            })
        }
        "powers" => {
            let ideal = take(&mut keys, "ideal")?;
            parse_ideal_expr(&ideal, &ring, &opts1)?;
            SequenceFamily::new(name, sop, range, move |n| {
                ModuleRep::ideal(parse_ideal_expr(&ideal, &r, &with_n(n))?)
            })
        }
        "torsionplus" => {
            let growth = take(&mut keys, "growth")?;
            let quotient = keys.remove("quotient");
            let residues = keys.remove("residues");
            let torsion = match (quotient, residues) {
                (Some(q), None) => Torsion::Quotient(q),
                (None, Some(c)) => Torsion::Residues(c),
                _ => {
                    return Err(Error::parse(
                        "torsionplus needs exactly one of quotient=... or residues=...",
                    ))
                }
            };
            SequenceFamily::new(name, sop, range, move |n| {
                let opts = with_n(n);
                let g = nonnegative(eval_integer(&growth, &opts)?)?;
                let c = match &torsion {
                    Torsion::Quotient(q) => {
                        let j = parse_ideal_expr(q, &r, &opts)?;
                        if !j.colength().is_finite() {
                            return Err(Error::InfiniteColength {
                                what: format!("torsion quotient {j}"),
                            });
                        }
                        ModuleRep::FinLen(FiniteLengthModule::from_quotient(&j)?)
                    }
                    Torsion::Residues(c) => {
                        direct_sum_of_residues(nonnegative(eval_integer(c, &opts)?)? as i64, &r)
                    }
                };
                Ok(ModuleRep::direct_sum(vec![c, ModuleRep::Free(g)]))
            })
        }
        other => return Err(Error::parse(format!("unknown family `{other}`"))),
    };
    if let Some(k) = keys.keys().next() {
        return Err(Error::parse(format!("unknown key `{k}` for family `{kind}`")));
    }
    Ok(family)
}

enum Torsion {
    Quotient(String),
    Residues(String),
}

fn with_n(n: u32) -> ParseOptions {
    ParseOptions::default().with_param("n", n as i64)
}

fn nonnegative(v: i64) -> Result<usize> {
    usize::try_from(v).map_err(|_| Error::precondition(format!("negative count {v}")))
}

/// Parses `A..B` (inclusive).
pub fn parse_range(text: &str) -> Result<(u32, u32)> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| Error::parse(format!("expected A..B, got `{text}`")))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let parse = |s: &str| {
        s.trim()
            .parse::<u32>()
            .map_err(|_| Error::parse(format!("bad range bound `{s}`")))
    };
    let (a, b) = (parse(a)?, parse(b)?);
    if a == 0 || a > b {
        return Err(Error::parse(format!("range {a}..{b} must satisfy 1 <= A <= B")));
    }
    Ok((a, b))
}

/// Approximate value of a rational, for display.
pub fn approx(r: &BigRational) -> f64 {
    let v = r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN);
    if r.is_negative() {
        -v.abs()
    } else {
        v
    }
}
