//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the crate's Groebner, matrix or semigroup code: lengths come from plain
//! Gaussian elimination on truncated monomial spaces, membership from
//! exhaustive search.
#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use ulrich_forge::algebra::{ExponentVector, Polynomial, Ring};

pub type Q = BigRational;

/// Rank of a dense rational matrix by Gaussian elimination.
#[allow(clippy::needless_range_loop)]
pub fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Q::one() / rows[r][c].clone();
        for v in rows[r].iter_mut() {
            *v *= inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..ncols {
                    let d = rows[r][j].clone() * f.clone();
                    rows[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

/// Monomials `x^a y^b` with `a + b < d`.
fn monomials_below(d: u32) -> Vec<(u32, u32)> {
    (0..d).flat_map(|t| (0..=t).map(move |a| (a, t - a))).collect()
}

fn rational_terms(p: &Polynomial) -> Vec<((u32, u32), Q)> {
    p.terms()
        .map(|(e, c)| {
            let q = c.as_rational().expect("oracles work over Q").clone();
            ((e.get(0), e.get(1)), q)
        })
        .collect()
}

/// `k[x, y] / (J + m^D)` for the least `D` at which the dimension is stable,
/// which is `S/J` localized at the origin. Basis: monomials that are not
/// pivots of the row-reduced span of `J`.
pub struct TruncatedQuotient {
    pub degree: u32,
    index: HashMap<(u32, u32), usize>,
    /// Row-reduced spanning set of `J` modulo `m^D`, with pivot columns.
    reduced: Vec<(usize, Vec<Q>)>,
    pub basis: Vec<(u32, u32)>,
}

impl TruncatedQuotient {
    fn at_degree(gens: &[Polynomial], d: u32) -> Self {
        let monos = monomials_below(d);
        let index: HashMap<_, _> = monos.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let n = monos.len();
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for g in gens {
            let terms = rational_terms(g);
            for &(a, b) in &monos {
                let mut row = vec![Q::zero(); n];
                let mut any = false;
                for ((ea, eb), c) in &terms {
                    if let Some(&i) = index.get(&(ea + a, eb + b)) {
                        row[i] += c.clone();
                        any = true;
                    }
                }
                if any {
                    rows.push(row);
                }
            }
        }
        let mut reduced: Vec<(usize, Vec<Q>)> = Vec::new();
        for mut row in rows {
            for (p, r) in &reduced {
                if !row[*p].is_zero() {
                    let f = row[*p].clone();
                    for j in 0..n {
                        let d = r[j].clone() * f.clone();
                        row[j] -= d;
                    }
                }
            }
            if let Some(p) = (0..n).find(|&j| !row[j].is_zero()) {
                let inv = Q::one() / row[p].clone();
                for v in row.iter_mut() {
                    *v *= inv.clone();
                }
                for (_, r) in reduced.iter_mut() {
                    if !r[p].is_zero() {
                        let f = r[p].clone();
                        for j in 0..n {
                            let d = row[j].clone() * f.clone();
                            r[j] -= d;
                        }
                    }
                }
                reduced.push((p, row));
            }
        }
        let pivots: Vec<usize> = reduced.iter().map(|(p, _)| *p).collect();
        let basis = monos
            .iter()
            .enumerate()
            .filter(|(i, _)| !pivots.contains(i))
            .map(|(_, &m)| m)
            .collect();
        TruncatedQuotient {
            degree: d,
            index,
            reduced,
            basis,
        }
    }

    /// Panics unless `J` is supported at the origin with length reached by
    /// degree 60.
    pub fn new(gens: &[Polynomial]) -> Self {
        let mut prev = Self::at_degree(gens, 1);
        for d in 2..=60 {
            let next = Self::at_degree(gens, d);
            if next.basis.len() == prev.basis.len() {
                return next;
            }
            prev = next;
        }
        panic!("quotient does not stabilize below degree 60");
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `p` (truncated below degree `D`) in the quotient basis.
    pub fn reduce(&self, p: &Polynomial) -> Vec<Q> {
        let n = self.index.len();
        let mut v = vec![Q::zero(); n];
        for ((a, b), c) in rational_terms(p) {
            if let Some(&i) = self.index.get(&(a, b)) {
                v[i] += c;
            }
        }
        for (p, r) in &self.reduced {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for j in 0..n {
                    let d = r[j].clone() * f.clone();
                    v[j] -= d;
                }
            }
        }
        self.basis.iter().map(|m| v[self.index[m]].clone()).collect()
    }

    /// Matrix (columns = images of basis elements) of multiplication by `f`.
    pub fn action(&self, f: &Polynomial) -> Vec<Vec<Q>> {
        let ring = f.ring();
        let cols: Vec<Vec<Q>> = self
            .basis
            .iter()
            .map(|&(a, b)| {
                let m = Polynomial::monomial(ring, ExponentVector::new(&[a, b]));
                self.reduce(&(f * &m))
            })
            .collect();
        let n = self.len();
        (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
    }
}

/// `ℓ(S/J)` at the origin.
pub fn colength(gens: &[Polynomial]) -> usize {
    TruncatedQuotient::new(gens).len()
}

/// `(h0, h1, h2)` of the Koszul complex of `S/J` on `f, g`, from explicit
/// matrices of the differentials.
pub fn koszul_cyclic(f: &Polynomial, g: &Polynomial, gens: &[Polynomial]) -> (usize, usize, usize) {
    let q = TruncatedQuotient::new(gens);
    let n = q.len();
    let (mf, mg) = (q.action(f), q.action(g));
    // d1: Q^2 -> Q, (a, b) -> f a + g b.
    let d1: Vec<Vec<Q>> = (0..n)
        .map(|i| mf[i].iter().chain(mg[i].iter()).cloned().collect())
        .collect();
    // d2: Q -> Q^2, m -> (-g m, f m).
    let d2: Vec<Vec<Q>> = (0..n)
        .map(|i| mg[i].iter().map(|c| -c.clone()).collect())
        .chain((0..n).map(|i| mf[i].clone()))
        .collect();
    let (r1, r2) = (rank(d1), rank(d2));
    (n - r1, 2 * n - r1 - r2, n - r2)
}

/// `dim J/mJ` for an m-primary `J`.
pub fn min_generators(gens: &[Polynomial]) -> usize {
    let ring = gens[0].ring();
    let x = Polynomial::var(ring, 0);
    let y = Polynomial::var(ring, 1);
    let mj: Vec<Polynomial> = gens.iter().flat_map(|g| [g * &x, g * &y]).collect();
    colength(&mj) - colength(gens)
}

/// Exhaustive semigroup membership for points of `N^d`.
pub struct SemigroupOracle {
    gens: Vec<Vec<i64>>,
    memo: HashMap<Vec<i64>, bool>,
}

impl SemigroupOracle {
    pub fn new(gens: &[Vec<i64>]) -> Self {
        SemigroupOracle {
            gens: gens.to_vec(),
            memo: HashMap::new(),
        }
    }

    pub fn member(&mut self, v: &[i64]) -> bool {
        if v.iter().any(|&c| c < 0) {
            return false;
        }
        if v.iter().all(|&c| c == 0) {
            return true;
        }
        if let Some(&m) = self.memo.get(v) {
            return m;
        }
        let gens = self.gens.clone();
        let ans = gens.iter().any(|g| {
            let w: Vec<i64> = v.iter().zip(g).map(|(a, b)| a - b).collect();
            self.member(&w)
        });
        self.memo.insert(v.to_vec(), ans);
        ans
    }
}

/// Points `v ∉ M` with `v + t·x, v + t·y ∈ M`, for `M = ∪ (m_i + H)`,
/// found by scanning a box.
pub fn lattice_colon_length(
    sg: &mut SemigroupOracle,
    module: &[[i64; 2]],
    t: i64,
    x: [i64; 2],
    y: [i64; 2],
) -> usize {
    let mut inside = |p: [i64; 2]| module.iter().any(|m| sg.member(&[p[0] - m[0], p[1] - m[1]]));
    let lo = [
        module.iter().map(|m| m[0]).min().unwrap() - t * (x[0] + y[0]),
        module.iter().map(|m| m[1]).min().unwrap() - t * (x[1] + y[1]),
    ];
    let span = 4 * t * (x[0] + x[1] + y[0] + y[1]) + 40;
    let mut count = 0;
    for a in lo[0]..lo[0] + span {
        for b in lo[1]..lo[1] + span {
            let v = [a, b];
            let tx = [a + t * x[0], b + t * x[1]];
            let ty = [a + t * y[0], b + t * y[1]];
            if inside(tx) && inside(ty) && !inside(v) {
                count += 1;
            }
        }
    }
    count
}

/// Random m-primary ideal of `k[x, y]`: pure powers, a few monomials and one
/// binomial, all of bounded degree.
pub fn random_ideal(ring: &Arc<Ring>, rng: &mut ChaCha8Rng) -> Vec<Polynomial> {
    let mono = |a: u32, b: u32| Polynomial::monomial(ring, ExponentVector::new(&[a, b]));
    let (a, b) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
    let mut gens = vec![mono(a, 0), mono(0, b)];
    for _ in 0..rng.gen_range(0..=2) {
        let (i, j) = (rng.gen_range(0..a), rng.gen_range(0..b));
        if i + j > 0 {
            gens.push(mono(i, j));
        }
    }
    let (c, d) = (rng.gen_range(0..4), rng.gen_range(0..4));
    let (e, f) = (rng.gen_range(0..4), rng.gen_range(0..4));
    if (c, d) != (e, f) && (c, d) != (0, 0) && (e, f) != (0, 0) {
        let lambda = Polynomial::from_i64(ring, rng.gen_range(1..=3));
        gens.push(&mono(c, d) - &(&lambda * &mono(e, f)));
    }
    gens
}

/// Random element of `m` with small support.
pub fn random_parameter(ring: &Arc<Ring>, rng: &mut ChaCha8Rng) -> Polynomial {
    let mut p = Polynomial::zero(ring);
    for _ in 0..rng.gen_range(1..=2) {
        let (a, b) = loop {
            let e = (rng.gen_range(0..3), rng.gen_range(0..3));
            if e != (0, 0) {
                break e;
            }
        };
        let c = Polynomial::from_i64(ring, rng.gen_range(1..=2));
        p = &p + &(&c * &Polynomial::monomial(ring, ExponentVector::new(&[a, b])));
    }
    p
}
