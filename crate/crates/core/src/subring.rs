//! Finitely generated subrings `R = k[g_1, ..., g_m] ⊆ S = k[x_1, ..., x_d]`.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::algebra::parse::{parse_polynomial_list, strip_brackets, ParseOptions};
use crate::algebra::{
    Coefficient, ExponentVector, Field, Matrix, MonomialOrder, Polynomial, Ring, MAX_AMBIENT_VARS,
};
use crate::closure::{is_integral, ReductionCertificate, DEFAULT_T_MAX};
use crate::groebner::Ideal;
use crate::semigroup::AffineSemigroup;
use crate::{Error, Result};

/// Witness search multiplies at most this many generators together.
pub const WITNESS_PRODUCT_BOUND: usize = 3;

struct TagData {
    big: Arc<Ring>,
    ideal: Ideal,
    tag_ring: Arc<Ring>,
}

/// `k[g_1, ..., g_m]` inside a polynomial ring, with a monomial model when
/// every generator is a monomial.
#[derive(Clone)]
pub struct PresentedSubring {
    ambient: Arc<Ring>,
    gens: Vec<Polynomial>,
    monomial_model: Option<AffineSemigroup>,
    tags: Arc<OnceLock<TagData>>,
}

/// Outcome of [`PresentedSubring::subalgebra_member`].
#[derive(Clone, Debug)]
pub struct SubalgebraMembership {
    pub member: bool,
    /// `z` as a polynomial in `g1, ..., gm` when `member`.
    pub representation: Option<Polynomial>,
    /// Normal form against the tag ideal; involves ambient variables iff
    /// `z ∉ R`.
    pub normal_form: Polynomial,
}

impl PresentedSubring {
    pub fn new(ambient: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Self> {
        let zero = ExponentVector::zero(ambient.nvars());
        for g in &gens {
            if g.ring() != ambient {
                return Err(crate::algebra::AlgebraError::AmbientMismatch.into());
            }
            if g.is_zero() || !g.coefficient(&zero).is_zero() {
                return Err(Error::precondition(format!(
                    "generator {g} must be nonzero with zero constant term"
                )));
            }
        }
        let monomial_model = if gens.iter().all(|g| g.as_monomial().is_some()) {
            let exps = gens.iter().map(|g| g.as_monomial().expect("monomial").clone()).collect();
            Some(AffineSemigroup::new(ambient.nvars(), exps)?)
        } else {
            None
        };
        Ok(PresentedSubring {
            ambient: ambient.clone(),
            gens,
            monomial_model,
            tags: Arc::new(OnceLock::new()),
        })
    }

    pub fn from_semigroup(ambient: &Arc<Ring>, sg: &AffineSemigroup) -> Result<Self> {
        if sg.dim() != ambient.nvars() {
            return Err(crate::algebra::AlgebraError::DimensionMismatch {
                left: ambient.nvars(),
                right: sg.dim(),
            }
            .into());
        }
        let gens = sg
            .generators()
            .iter()
            .map(|e| Polynomial::monomial(ambient, e.clone()))
            .collect();
        Self::new(ambient, gens)
    }

    pub fn ambient(&self) -> &Arc<Ring> {
        &self.ambient
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn monomial_model(&self) -> Option<&AffineSemigroup> {
        self.monomial_model.as_ref()
    }

    fn tag_data(&self) -> &TagData {
        self.tags.get_or_init(|| {
            let d = self.ambient.nvars();
            let m = self.gens.len();
            let mut names: Vec<String> = self.ambient.names().to_vec();
            let tag_names: Vec<String> = (1..=m).map(|i| format!("g{i}")).collect();
            names.extend(tag_names.iter().map(|n| format!("_{n}")));
            let big = Ring::new(&names, self.ambient.field());
            let embed: Vec<usize> = (0..d).collect();
            let gens = self
                .gens
                .iter()
                .enumerate()
                .map(|(i, g)| &Polynomial::var(&big, d + i) - &g.rename(&big, &embed))
                .collect();
            let ideal = Ideal::with_order(&big, gens, MonomialOrder::elimination(d))
                .expect("same ring");
            ideal.groebner_basis();
            TagData {
                big,
                ideal,
                tag_ring: Ring::new(&tag_names, self.ambient.field()),
            }
        })
    }

    /// Tag-variable membership test: `z ∈ R` iff the normal form of `z`
    /// modulo `(t_i - g_i)` under an order eliminating the ambient variables
    /// involves tag variables only.
    pub fn subalgebra_member(&self, z: &Polynomial) -> Result<SubalgebraMembership> {
        if z.ring() != &self.ambient {
            return Err(crate::algebra::AlgebraError::AmbientMismatch.into());
        }
        let d = self.ambient.nvars();
        let tags = self.tag_data();
        let embed: Vec<usize> = (0..d).collect();
        let nf = tags.ideal.normal_form(&z.rename(&tags.big, &embed))?;
        let member = nf
            .terms()
            .all(|(e, _)| e.as_slice()[..d].iter().all(|&k| k == 0));
        let representation = member.then(|| {
            let m = self.gens.len();
            let terms = nf.terms().map(|(e, c)| {
                (ExponentVector::new(&e.as_slice()[d..d + m]), c.clone())
            });
            Polynomial::from_terms(&tags.tag_ring, terms.collect::<Vec<_>>())
        });
        Ok(SubalgebraMembership {
            member,
            representation,
            normal_form: nf,
        })
    }

    /// Membership; monomial models decide term by term through the semigroup.
    pub fn contains(&self, z: &Polynomial) -> Result<bool> {
        if z.ring() != &self.ambient {
            return Err(crate::algebra::AlgebraError::AmbientMismatch.into());
        }
        match &self.monomial_model {
            Some(sg) => Ok(z.terms().all(|(e, _)| sg.contains(e))),
            None => Ok(self.subalgebra_member(z)?.member),
        }
    }

    /// Replaces the generators by a reduced echelon basis of their k-span,
    /// which generates the same subring; a monomial basis yields a monomial
    /// model.
    pub fn simplified(&self) -> Result<PresentedSubring> {
        let ord = MonomialOrder::grevlex();
        let mut columns: Vec<ExponentVector> = self
            .gens
            .iter()
            .flat_map(|g| g.terms().map(|(e, _)| e.clone()))
            .collect();
        columns.sort_by(|a, b| ord.cmp(b, a));
        columns.dedup();
        let index: BTreeMap<ExponentVector, usize> =
            columns.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let field = self.ambient.field();
        let rows: Vec<Vec<Coefficient>> = self
            .gens
            .iter()
            .map(|g| {
                let mut row = vec![field.zero(); columns.len()];
                for (e, c) in g.terms() {
                    row[index[e]] = c.clone();
                }
                row
            })
            .collect();
        let mut mat = Matrix::from_rows(field, rows);
        let pivots = mat.echelon();
        let gens = (0..pivots.len())
            .map(|r| {
                Polynomial::from_terms(
                    &self.ambient,
                    columns
                        .iter()
                        .enumerate()
                        .map(|(j, e)| (e.clone(), mat.get(r, j).clone()))
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        PresentedSubring::new(&self.ambient, gens)
    }

    /// The `S`-ideal generated by `elements`, each of which must lie in `R`.
    pub fn extend_to_s(&self, elements: &[Polynomial]) -> Result<Ideal> {
        for z in elements {
            if !self.contains(z)? {
                return Err(Error::precondition(format!("{z} is not an element of R")));
            }
        }
        Ideal::new(&self.ambient, elements.to_vec())
    }

    /// `m_R S`.
    pub fn max_ideal_extension(&self) -> Ideal {
        Ideal::new(&self.ambient, self.gens.clone()).expect("same ring")
    }

    /// Products of at most [`WITNESS_PRODUCT_BOUND`] generators, by degree and
    /// then decreasing grevlex leading monomial.
    fn small_products(&self) -> Vec<Polynomial> {
        let mut out: Vec<Polynomial> = Vec::new();
        let mut frontier: Vec<(usize, Polynomial)> =
            self.gens.iter().cloned().enumerate().collect();
        for _ in 0..WITNESS_PRODUCT_BOUND {
            let mut next = Vec::new();
            for (last, p) in &frontier {
                if !out.contains(p) {
                    out.push(p.clone());
                }
                for (i, g) in self.gens.iter().enumerate().skip(*last) {
                    next.push((i, p * g));
                }
            }
            frontier = next;
        }
        let ord = MonomialOrder::grevlex();
        out.sort_by(|a, b| {
            a.degree().cmp(&b.degree()).then_with(|| {
                let la = a.leading_term(&ord).map(|t| t.0.clone());
                let lb = b.leading_term(&ord).map(|t| t.0.clone());
                match (la, lb) {
                    (Some(x), Some(y)) => ord.cmp(&y, &x),
                    _ => std::cmp::Ordering::Equal,
                }
            })
        });
        out
    }

    /// Finds `u, v ∈ R` with `u f, v f ∈ R` and `(u, v)S` of finite colength,
    /// certifying that `f` lies in the S2-ification of `R`.
    pub fn s2_multiplier_witness(&self, f: &Polynomial) -> Result<MultiplierWitness> {
        if self.contains(f)? {
            return Err(Error::precondition(format!("{f} already lies in R")));
        }
        let multipliers: Vec<Polynomial> = self
            .small_products()
            .into_iter()
            .filter(|c| self.contains(&(c * f)).unwrap_or(false))
            .collect();
        for i in 0..multipliers.len() {
            for j in (i + 1)..multipliers.len() {
                let ideal = Ideal::new(&self.ambient, vec![multipliers[i].clone(), multipliers[j].clone()])?;
                if let Some(c) = ideal.colength().finite() {
                    return Ok(MultiplierWitness::Found {
                        u: multipliers[i].to_string(),
                        v: multipliers[j].to_string(),
                        colength: c,
                    });
                }
            }
        }
        Ok(MultiplierWitness::NotFound {
            bound: WITNESS_PRODUCT_BOUND,
        })
    }

    pub fn describe(&self) -> String {
        let g: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        format!(
            "ring ambient=({}) gens=[{}]",
            self.ambient.names().join(","),
            g.join(", ")
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MultiplierWitness {
    Found { u: String, v: String, colength: u64 },
    /// Inconclusive: no pair among products of at most `bound` generators.
    NotFound { bound: usize },
}

/// Inputs of the ring builder: `R = k[u][f][v_j x_j, w_j x_j][extras]`.
#[derive(Clone, Debug)]
pub struct BuilderParams {
    pub ambient: Arc<Ring>,
    pub u: Vec<Polynomial>,
    pub f: Polynomial,
    /// `(v_j, w_j)` for each ambient variable `x_j`.
    pub multipliers: Vec<(Polynomial, Polynomial)>,
    pub extras: Vec<Polynomial>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BuilderCheck {
    pub clause: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone)]
pub struct BuiltRing {
    pub ring: PresentedSubring,
    pub checks: Vec<BuilderCheck>,
}

fn hypothesis(clause: &str) -> Error {
    Error::Hypothesis {
        clause: clause.to_string(),
    }
}

/// Builds `k[u][f][v_j x_j, w_j x_j][extras]` after checking: `(u)` has finite
/// colength; `f ∈ Ī - I` for `I = (u)S`; each `(v_j, w_j)S` has finite
/// colength with `v_j, w_j ∈ k[u][f]`; every extra lies in `Ī`.
pub fn build_ring(p: &BuilderParams) -> Result<BuiltRing> {
    let d = p.ambient.nvars();
    if !(2..=MAX_AMBIENT_VARS).contains(&d) {
        return Err(Error::precondition(format!("ambient dimension {d} not in 2..={MAX_AMBIENT_VARS}")));
    }
    if p.u.len() != d || p.multipliers.len() != d {
        return Err(Error::precondition(format!(
            "need {d} parameters and {d} multiplier pairs"
        )));
    }
    let mut checks = Vec::new();
    let i = Ideal::new(&p.ambient, p.u.clone())?;
    match i.colength().finite() {
        Some(c) => checks.push(BuilderCheck {
            clause: "u is a system of parameters".into(),
            passed: true,
            detail: format!("colength((u)) = {c}"),
        }),
        None => return Err(hypothesis("u is not a system of parameters: colength((u)) infinite")),
    }
    let nf = i.normal_form(&p.f)?;
    if nf.is_zero() {
        return Err(hypothesis("f ∈ I"));
    }
    checks.push(BuilderCheck {
        clause: "f ∉ I".into(),
        passed: true,
        detail: format!("normal form of f modulo I is {nf}"),
    });
    match is_integral(&p.f, &i, DEFAULT_T_MAX)? {
        ReductionCertificate::Positive { t } => checks.push(BuilderCheck {
            clause: "f integral over I".into(),
            passed: true,
            detail: format!("reduction number {t} for I ⊆ I + (f)"),
        }),
        ReductionCertificate::NegativeMultiplicity { e_i, e_j } => {
            return Err(hypothesis(&format!(
                "f not integral over I (e(I) = {e_i}, e(I + (f)) = {e_j})"
            )))
        }
        ReductionCertificate::Inconclusive { t_max, .. } => {
            return Err(Error::Inconclusive(format!(
                "integrality of f over I undecided up to t = {t_max}"
            )))
        }
    }
    let mut base_gens = p.u.clone();
    base_gens.push(p.f.clone());
    let base = PresentedSubring::new(&p.ambient, base_gens)?;
    let mut gens = base.generators().to_vec();
    for (j, (v, w)) in p.multipliers.iter().enumerate() {
        let name = &p.ambient.names()[j];
        let vw = Ideal::new(&p.ambient, vec![v.clone(), w.clone()])?;
        let c = vw.colength().finite().ok_or_else(|| {
            hypothesis(&format!("(v_{name}, w_{name}) = ({v}, {w}) colength infinite"))
        })?;
        for m in [v, w] {
            if !base.subalgebra_member(m)?.member {
                return Err(hypothesis(&format!("{m} is not in k[u][f]")));
            }
        }
        checks.push(BuilderCheck {
            clause: format!("multipliers for {name}"),
            passed: true,
            detail: format!("({v}, {w}) ⊆ k[u][f], colength {c}"),
        });
        let xj = Polynomial::var(&p.ambient, j);
        gens.push(v * &xj);
        gens.push(w * &xj);
    }
    for g in &p.extras {
        match is_integral(g, &i, DEFAULT_T_MAX)? {
            ReductionCertificate::Positive { .. } => {}
            _ => return Err(hypothesis(&format!("extra generator {g} not integral over I"))),
        }
        gens.push(g.clone());
    }
    if !p.extras.is_empty() {
        checks.push(BuilderCheck {
            clause: "extras integral over I".into(),
            passed: true,
            detail: format!("{} extra generators", p.extras.len()),
        });
    }
    Ok(BuiltRing {
        ring: PresentedSubring::new(&p.ambient, gens)?,
        checks,
    })
}

/// Builder parameters for the family with minimal reduction
/// `(xy, x^n - y^n)`, `f = x^n` and multipliers `(x^n, y^n)`.
pub fn pinched_plane_params(n: u32, field: Field) -> BuilderParams {
    let s = Ring::new(&["x", "y"], field);
    let x = Polynomial::var(&s, 0);
    let y = Polynomial::var(&s, 1);
    let xn = x.pow(n);
    let yn = y.pow(n);
    BuilderParams {
        ambient: s.clone(),
        u: vec![&x * &y, &xn - &yn],
        f: xn.clone(),
        multipliers: vec![(xn.clone(), yn.clone()), (xn, yn)],
        extras: Vec::new(),
    }
}

/// A parsed ring file.
#[derive(Clone)]
pub struct RingSpec {
    pub ring: PresentedSubring,
    /// Optional minimal reduction supplied with the ring.
    pub reduction: Option<Vec<Polynomial>>,
}

/// Parses `ring ambient=(x,y) gens=[x^2, x*y] [reduction=[...]] [field=q]`.
pub fn parse_ring_spec(text: &str) -> Result<RingSpec> {
    let text: String = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join(" ");
    let body = text
        .trim()
        .strip_prefix("ring")
        .ok_or_else(|| Error::parse("ring file must start with `ring`"))?;
    let mut fields: BTreeMap<String, String> = BTreeMap::new();
    let chars: Vec<char> = body.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        while i < chars.len() && chars[i] != '=' {
            i += 1;
        }
        if i == chars.len() {
            return Err(Error::parse(format!(
                "expected `key=value` near `{}`",
                chars[start..].iter().collect::<String>().trim()
            )));
        }
        let key: String = chars[start..i].iter().collect::<String>().trim().to_string();
        i += 1;
        let vstart = i;
        let mut depth = 0i32;
        while i < chars.len() {
            match chars[i] {
                '(' | '[' => depth += 1,
                ')' | ']' => depth -= 1,
                c if c.is_whitespace() && depth == 0 => break,
                _ => {}
            }
            i += 1;
        }
        if depth != 0 {
            return Err(Error::parse(format!("unbalanced brackets in `{key}`")));
        }
        fields.insert(key, chars[vstart..i].iter().collect());
    }
    for k in fields.keys() {
        if !["ambient", "gens", "reduction", "field"].contains(&k.as_str()) {
            return Err(Error::parse(format!("unknown ring field `{k}`")));
        }
    }
    let field: Field = match fields.get("field") {
        Some(f) => f.parse()?,
        None => Field::Rational,
    };
    let ambient = fields
        .get("ambient")
        .ok_or_else(|| Error::parse("missing `ambient=`"))?;
    let names: Vec<String> = strip_brackets(ambient)
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    if names.len() > MAX_AMBIENT_VARS {
        return Err(crate::algebra::AlgebraError::TooManyVariables(names.len()).into());
    }
    if names.is_empty() {
        return Err(Error::parse("empty ambient variable list"));
    }
    let s = Ring::new(&names, field);
    let opts = ParseOptions::default();
    let gens = parse_polynomial_list(
        fields.get("gens").ok_or_else(|| Error::parse("missing `gens=`"))?,
        &s,
        &opts,
    )?;
    let reduction = fields
        .get("reduction")
        .map(|r| parse_polynomial_list(r, &s, &opts))
        .transpose()?;
    Ok(RingSpec {
        ring: PresentedSubring::new(&s, gens)?,
        reduction,
    })
}
