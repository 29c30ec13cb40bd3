//! Koszul homology lengths `h_i(f, g; M)` on a two-element system of
//! parameters, for cyclic modules, ideals, free modules, finite-length modules
//! and monomial modules over a semigroup ring.
//!
//! For modules over the polynomial ring `S = k[x, y]` everything reduces to
//! colengths and multiplicities: `h0` and `h2` are lengths of explicit
//! quotients and `h1` follows from `χ = h0 − h1 + h2`, which equals the
//! multiplicity for two-dimensional modules and vanishes otherwise.

mod finlen;
mod monomial;

use std::fmt;
use std::ops::Add;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{ExponentVector, ParseOptions, Polynomial, Ring};
use crate::groebner::{Ideal, DEFAULT_MULTIPLICITY_CAP};
use crate::semigroup::AffineSemigroup;
use crate::{Error, Result};

pub use finlen::{koszul_finlen, FiniteLengthModule};
pub use monomial::{GradedKoszul, MonomialModule, Point, MAX_DEGREE_BOUND};

/// Largest power of the maximal ideal tried when `ℓ((J : (f, g))/J)` has to be
/// computed for `J` of positive dimension.
const MAX_TRUNCATION: u32 = 64;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct KoszulTally {
    pub h0: u64,
    pub h1: u64,
    pub h2: u64,
    /// `h0 − h1 + h2`.
    pub chi: i64,
    /// `h1 − h2`, nonnegative by Serre.
    pub chi1: i64,
}

impl KoszulTally {
    pub fn new(h0: u64, h1: u64, h2: u64) -> Result<Self> {
        let chi1 = h1 as i64 - h2 as i64;
        if chi1 < 0 {
            return Err(Error::Hypothesis {
                clause: format!("χ1 = h1 − h2 = {h1} − {h2} must be nonnegative"),
            });
        }
        Ok(KoszulTally {
            h0,
            h1,
            h2,
            chi: h0 as i64 - h1 as i64 + h2 as i64,
            chi1,
        })
    }

    pub fn triple(&self) -> (u64, u64, u64) {
        (self.h0, self.h1, self.h2)
    }

    fn times(self, r: u64) -> Self {
        KoszulTally {
            h0: self.h0 * r,
            h1: self.h1 * r,
            h2: self.h2 * r,
            chi: self.chi * r as i64,
            chi1: self.chi1 * r as i64,
        }
    }
}

impl Add for KoszulTally {
    type Output = KoszulTally;

    fn add(self, o: KoszulTally) -> KoszulTally {
        KoszulTally {
            h0: self.h0 + o.h0,
            h1: self.h1 + o.h1,
            h2: self.h2 + o.h2,
            chi: self.chi + o.chi,
            chi1: self.chi1 + o.chi1,
        }
    }
}

impl fmt::Display for KoszulTally {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "h0 = {}, h1 = {}, h2 = {}, chi = {}, chi1 = {}",
            self.h0, self.h1, self.h2, self.chi, self.chi1
        )
    }
}

fn check_plane(ring: &Arc<Ring>) -> Result<()> {
    if ring.nvars() != 2 {
        return Err(Error::Unsupported(format!(
            "Koszul homology is implemented for two-variable rings, got {}",
            ring.nvars()
        )));
    }
    Ok(())
}

fn check_sop_elements(f: &Polynomial, g: &Polynomial) -> Result<()> {
    for p in [f, g] {
        if !p.coefficient(&ExponentVector::zero(p.ring().nvars())).is_zero() {
            return Err(Error::precondition(format!(
                "{p} is not in the maximal ideal at the origin"
            )));
        }
    }
    Ok(())
}

/// `ℓ((J : (f, g)) / J)`.
fn annihilated_length(j: &Ideal, fg: &Ideal) -> Result<u64> {
    let colon = j.quotient(fg)?;
    if colon.contains_ideal(j)? && j.contains_ideal(&colon)? {
        return Ok(0);
    }
    if let (Some(a), Some(b)) = (j.colength().finite(), colon.colength().finite()) {
        return Ok(a - b);
    }
    // With A = J : (f, g) and A ∩ m^N ⊆ J, the modular law gives
    // A/J ≅ (A + m^N)/(J + m^N).
    let m = Ideal::maximal(j.ring());
    let mut mn = m.clone();
    for _ in 1..=MAX_TRUNCATION {
        if j.contains_ideal(&colon.intersect(&mn)?)? {
            let a = j.sum(&mn)?.colength().finite().expect("m-primary");
            let b = colon.sum(&mn)?.colength().finite().expect("m-primary");
            return Ok(a - b);
        }
        mn = mn.product(&m)?;
    }
    Err(Error::Inconclusive(format!(
        "(J : (f, g))/J for J = {j}: no truncation m^N with N ≤ {MAX_TRUNCATION}"
    )))
}

/// Koszul homology of `(f, g)` on `S/J`.
pub fn koszul_cyclic(f: &Polynomial, g: &Polynomial, j: &Ideal) -> Result<KoszulTally> {
    check_plane(j.ring())?;
    check_sop_elements(f, g)?;
    if j.is_unit() {
        return KoszulTally::new(0, 0, 0);
    }
    let fg = Ideal::new(j.ring(), vec![f.clone(), g.clone()])?;
    let h0 = j.sum(&fg)?.colength().finite().ok_or_else(|| Error::InfiniteColength {
        what: format!("J + (f, g) = {j} + {fg}"),
    })?;
    let h2 = annihilated_length(j, &fg)?;
    let chi = if j.dim_quotient()? == 2 {
        fg.multiplicity(DEFAULT_MULTIPLICITY_CAP)?.value
    } else {
        0
    };
    let h1 = (h0 + h2).checked_sub(chi).ok_or_else(|| {
        Error::Inconclusive(format!("negative h1 from h0 = {h0}, h2 = {h2}, χ = {chi}"))
    })?;
    KoszulTally::new(h0, h1, h2)
}

/// Koszul homology of `(f, g)` on a nonzero ideal `J`, from the long exact
/// sequence of `0 → J → S → S/J → 0` and the regularity of `(f, g)` on `S`.
pub fn koszul_ideal_module(f: &Polynomial, g: &Polynomial, j: &Ideal) -> Result<KoszulTally> {
    if j.is_zero() {
        return Err(Error::precondition("the zero ideal; use a free module instead"));
    }
    check_plane(j.ring())?;
    let fg = Ideal::new(j.ring(), vec![f.clone(), g.clone()])?;
    let c = fg.colength().finite().ok_or_else(|| Error::InfiniteColength {
        what: format!("(f, g) = {fg}"),
    })?;
    let quotient = koszul_cyclic(f, g, j)?;
    let h0 = quotient.h1 + c - quotient.h0;
    KoszulTally::new(h0, quotient.h2, 0)
}

/// A module in one of the shapes handled here.
#[derive(Clone, Debug)]
pub enum ModuleRep {
    /// `S/J`.
    Cyclic(Ideal),
    /// `J ⊆ S`, nonzero.
    Ideal(Ideal),
    /// `S^r`.
    Free(usize),
    /// Flat list of summands.
    DirectSum(Vec<ModuleRep>),
    FinLen(FiniteLengthModule),
    /// A monomial module over a semigroup ring.
    MonomialR(MonomialModule),
}

/// `(ν, e)` of a module together with its base ring kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Base {
    Polynomial,
    Semigroup,
}

impl ModuleRep {
    pub fn ideal(j: Ideal) -> Result<Self> {
        if j.is_zero() {
            return Err(Error::precondition("ideal modules must be nonzero"));
        }
        Ok(ModuleRep::Ideal(j))
    }

    /// Direct sum, flattening nested sums and dropping zero free summands.
    pub fn direct_sum(parts: Vec<ModuleRep>) -> ModuleRep {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                ModuleRep::DirectSum(inner) => flat.extend(inner),
                ModuleRep::Free(0) => {}
                other => flat.push(other),
            }
        }
        if flat.len() == 1 {
            flat.pop().expect("one summand")
        } else {
            ModuleRep::DirectSum(flat)
        }
    }

    pub fn summands(&self) -> Vec<&ModuleRep> {
        match self {
            ModuleRep::DirectSum(v) => v.iter().collect(),
            other => vec![other],
        }
    }

    fn base(&self) -> Result<Base> {
        let mut base = None;
        for s in self.summands() {
            let b = match s {
                ModuleRep::MonomialR(_) => Base::Semigroup,
                _ => Base::Polynomial,
            };
            if base.is_some_and(|x| x != b) {
                return Err(Error::Unsupported(
                    "direct sum mixes modules over different rings".into(),
                ));
            }
            base = Some(b);
        }
        Ok(base.unwrap_or(Base::Polynomial))
    }

    /// Whether the module has finite length.
    pub fn is_finite_length(&self) -> bool {
        self.summands().iter().all(|s| match s {
            ModuleRep::FinLen(_) => true,
            ModuleRep::Cyclic(j) => j.colength().is_finite(),
            ModuleRep::Free(r) => *r == 0,
            ModuleRep::MonomialR(m) => m.is_zero(),
            _ => false,
        })
    }

    /// Whether every summand is torsion free.
    pub fn is_torsion_free(&self) -> bool {
        self.summands().iter().all(|s| match s {
            ModuleRep::FinLen(m) => m.length() == 0,
            ModuleRep::Cyclic(j) => j.is_zero() || j.is_unit(),
            _ => true,
        })
    }

    /// Koszul homology of `(f, g)`. For monomial modules `f` and `g` must be
    /// monomials, pure powers of distinct variables.
    pub fn koszul(&self, f: &Polynomial, g: &Polynomial) -> Result<KoszulTally> {
        self.base()?;
        let mut total = KoszulTally::default();
        for s in self.summands() {
            total = total + summand_koszul(s, f, g)?;
        }
        Ok(total)
    }

    /// Minimal number of generators over the base ring.
    pub fn nu(&self) -> Result<u64> {
        self.base()?;
        let mut total = 0;
        for s in self.summands() {
            total += match s {
                ModuleRep::Cyclic(j) => u64::from(!j.is_unit()),
                ModuleRep::Ideal(j) => {
                    let (x, y) = variables(j.ring());
                    koszul_ideal_module(&x, &y, j)?.h0
                }
                ModuleRep::Free(r) => *r as u64,
                ModuleRep::FinLen(m) => m.min_generators() as u64,
                ModuleRep::MonomialR(m) => m.nu() as u64,
                ModuleRep::DirectSum(_) => unreachable!("sums are flat"),
            };
        }
        Ok(total)
    }

    /// Multiplicity with respect to the maximal ideal of the base ring, in
    /// dimension two: lower-dimensional summands contribute zero.
    pub fn multiplicity(&self) -> Result<u64> {
        self.base()?;
        let mut total = 0;
        for s in self.summands() {
            total += match s {
                ModuleRep::Cyclic(j) => u64::from(j.is_zero()),
                ModuleRep::Ideal(_) => 1,
                ModuleRep::Free(r) => *r as u64,
                ModuleRep::FinLen(_) => 0,
                ModuleRep::MonomialR(m) => m.multiplicity()?,
                ModuleRep::DirectSum(_) => unreachable!("sums are flat"),
            };
        }
        Ok(total)
    }
}

fn variables(ring: &Arc<Ring>) -> (Polynomial, Polynomial) {
    (Polynomial::var(ring, 0), Polynomial::var(ring, 1))
}

fn to_point(p: &Polynomial) -> Result<Point> {
    let e = p
        .as_monomial()
        .filter(|e| e.len() == 2)
        .ok_or_else(|| Error::precondition(format!("{p} is not a monomial in two variables")))?;
    Ok([e.get(0) as i64, e.get(1) as i64])
}

fn summand_koszul(s: &ModuleRep, f: &Polynomial, g: &Polynomial) -> Result<KoszulTally> {
    match s {
        ModuleRep::Cyclic(j) => koszul_cyclic(f, g, j),
        ModuleRep::Ideal(j) => koszul_ideal_module(f, g, j),
        ModuleRep::Free(r) => {
            let one = koszul_cyclic(f, g, &Ideal::zero(f.ring()))?;
            Ok(one.times(*r as u64))
        }
        ModuleRep::FinLen(m) => koszul_finlen(m, f, g),
        ModuleRep::MonomialR(m) => Ok(m.koszul_auto((to_point(f)?, to_point(g)?))?.tally),
        ModuleRep::DirectSum(_) => unreachable!("sums are flat"),
    }
}

/// `ℓ((M : (x^{tX}, x^{tY})) / M)` for a torsion-free monomial module, checked
/// against `h1(x^{tX}, x^{tY}; M)`.
pub fn colon_module(m: &ModuleRep, t: u32, x: Point, y: Point) -> Result<ColonReport> {
    let mut length = 0;
    let mut h1 = 0;
    for s in m.summands() {
        let ModuleRep::MonomialR(mm) = s else {
            if !s.is_torsion_free() {
                return Err(Error::precondition("torsion detected in the module"));
            }
            return Err(Error::Unsupported(
                "colon modules are computed for monomial modules over a semigroup ring".into(),
            ));
        };
        length += mm.colon_length(t, x, y)?;
        let sop = ([x[0] * t as i64, x[1] * t as i64], [y[0] * t as i64, y[1] * t as i64]);
        h1 += mm.koszul_auto(sop)?.tally.h1;
    }
    if length != h1 {
        return Err(Error::Inconclusive(format!(
            "colon length {length} differs from h1 = {h1}"
        )));
    }
    Ok(ColonReport { length, h1 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ColonReport {
    pub length: u64,
    pub h1: u64,
}

/// Splits `text` at `sep` outside of brackets.
pub(crate) fn split_top_level(text: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&text[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

/// `(g1, ..., gk)` optionally followed by `^e`.
pub fn parse_ideal_expr(text: &str, ring: &Arc<Ring>, opts: &ParseOptions) -> Result<Ideal> {
    let text = text.trim();
    let close = text
        .rfind(')')
        .ok_or_else(|| Error::parse(format!("expected a parenthesized ideal, got `{text}`")))?;
    let (body, tail) = text.split_at(close + 1);
    let base = Ideal::parse_with(body, ring, opts)?;
    let tail = tail.trim();
    if tail.is_empty() {
        return Ok(base);
    }
    let exponent = tail
        .strip_prefix('^')
        .ok_or_else(|| Error::parse(format!("unexpected `{tail}` after an ideal")))?;
    let k = eval_integer(exponent, opts)?;
    if k < 0 {
        return Err(Error::parse(format!("negative ideal power {k}")));
    }
    Ok(base.power(k as u32))
}

/// Integer literal or polynomial expression in the parameters only.
pub(crate) fn eval_integer(text: &str, opts: &ParseOptions) -> Result<i64> {
    let empty = Ring::new::<&str>(&[], crate::algebra::Field::Rational);
    let p = crate::algebra::parse::parse_polynomial_with(text.trim(), &empty, opts)?;
    let c = p.coefficient(&ExponentVector::zero(0));
    c.to_integer()
        .and_then(|v| i64::try_from(v).ok())
        .ok_or_else(|| Error::parse(format!("`{}` is not an integer", text.trim())))
}

/// `{(a,b), (c,d)}`; entries are integer expressions in the parameters.
pub(crate) fn parse_points(text: &str, opts: &ParseOptions) -> Result<Vec<Point>> {
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| Error::parse(format!("expected `{{(a,b), ...}}`, got `{text}`")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top_level(inner, ',')
        .into_iter()
        .map(|t| {
            let t = t.trim();
            let body = t
                .strip_prefix('(')
                .and_then(|b| b.strip_suffix(')'))
                .ok_or_else(|| Error::parse(format!("expected a pair, got `{t}`")))?;
            let parts: Vec<&str> = body.split(',').map(str::trim).collect();
            let [a, b] = parts[..] else {
                return Err(Error::parse(format!("expected two coordinates in `{t}`")));
            };
            let parse = |s: &str| {
                eval_integer(s, opts).map_err(|_| Error::parse(format!("bad coordinate `{s}`")))
            };
            Ok([parse(a)?, parse(b)?])
        })
        .collect()
}

/// `pinched:N`, `homogenized:N`, `full`, or a literal `sg d {...}`.
pub fn parse_semigroup_ref(text: &str, opts: &ParseOptions) -> Result<AffineSemigroup> {
    let text = text.trim();
    if let Some(n) = text.strip_prefix("homogenized:") {
        let n = eval_integer(n, opts)?;
        if n < 1 {
            return Err(Error::parse("homogenized:N needs N ≥ 1"));
        }
        return Ok(AffineSemigroup::homogenized_pinched(n as u32));
    }
    if let Some(n) = text.strip_prefix("pinched:") {
        let n = eval_integer(n, opts)?;
        if n < 1 {
            return Err(Error::parse("pinched:N needs N ≥ 1"));
        }
        return Ok(AffineSemigroup::pinched_plane(n as u32));
    }
    if text == "full" {
        return Ok(AffineSemigroup::full(2));
    }
    text.parse()
}

/// `key=value` pairs separated by whitespace outside brackets.
pub(crate) fn parse_keywords(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    let mut push = |s: &mut String| -> Result<()> {
        let t = s.trim();
        if !t.is_empty() {
            let (k, v) = t
                .split_once('=')
                .ok_or_else(|| Error::parse(format!("expected key=value, got `{t}`")))?;
            out.push((k.trim().to_string(), v.trim().to_string()));
        }
        s.clear();
        Ok(())
    };
    for ch in text.chars() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            _ => {}
        }
        if ch.is_whitespace() && depth == 0 {
            push(&mut current)?;
        } else {
            current.push(ch);
        }
    }
    push(&mut current)?;
    Ok(out)
}

/// Parses a module description: summands joined by `+`, each one of
/// `free R`, `cyclic IDEAL`, `ideal IDEAL`, `finlen IDEAL`, `residue`, or
/// `rmodule ring=pinched:N gens={(a,b), ...}`. Ideals may carry a power,
/// e.g. `cyclic (x,y)^3`.
pub fn parse_module(text: &str, ring: &Arc<Ring>, opts: &ParseOptions) -> Result<ModuleRep> {
    let mut parts = Vec::new();
    for summand in split_top_level(text, '+') {
        let summand = summand.trim();
        let (kw, rest) = summand
            .split_once(char::is_whitespace)
            .map_or((summand, ""), |(a, b)| (a, b.trim()));
        let part = match kw {
            "free" => {
                let r = eval_integer(rest, opts)?;
                if r < 0 {
                    return Err(Error::parse("negative free rank"));
                }
                ModuleRep::Free(r as usize)
            }
            "cyclic" => ModuleRep::Cyclic(parse_ideal_expr(rest, ring, opts)?),
            "ideal" => ModuleRep::ideal(parse_ideal_expr(rest, ring, opts)?)?,
            "finlen" => {
                let j = parse_ideal_expr(rest, ring, opts)?;
                if !j.colength().is_finite() {
                    return Err(Error::InfiniteColength {
                        what: format!("finlen quotient {j}"),
                    });
                }
                ModuleRep::FinLen(FiniteLengthModule::from_quotient(&j)?)
            }
            "residue" => ModuleRep::FinLen(FiniteLengthModule::residue_field(
                ring.field(),
                ring.nvars(),
            )),
            "rmodule" => {
                let mut sg = None;
                let mut gens = None;
                for (k, v) in parse_keywords(rest)? {
                    match k.as_str() {
                        "ring" => sg = Some(parse_semigroup_ref(&v, opts)?),
                        "gens" => gens = Some(parse_points(&v, opts)?),
                        other => return Err(Error::parse(format!("unknown key `{other}`"))),
                    }
                }
                let sg = sg.ok_or_else(|| Error::parse("rmodule needs ring=..."))?;
                let gens = gens.ok_or_else(|| Error::parse("rmodule needs gens=..."))?;
                ModuleRep::MonomialR(MonomialModule::new(&sg, gens)?)
            }
            "" => return Err(Error::parse("empty summand")),
            other => return Err(Error::parse(format!("unknown module kind `{other}`"))),
        };
        parts.push(part);
    }
    let m = ModuleRep::direct_sum(parts);
    m.base()?;
    Ok(m)
}
