//! Buchberger's algorithm on order-sorted term vectors.

use std::collections::HashSet;
use std::cmp::Ordering;
use std::sync::Arc;

use crate::algebra::{Coefficient, ExponentVector, MonomialOrder, Polynomial, Ring};

pub(crate) type Term = (ExponentVector, Coefficient);

/// Terms in strictly decreasing order under the monomial order in use.
pub(crate) fn to_sorted(p: &Polynomial, ord: &MonomialOrder) -> Vec<Term> {
    p.sorted_terms(ord)
        .into_iter()
        .map(|(e, c)| (e.clone(), c.clone()))
        .collect()
}

pub(crate) fn from_sorted(ring: &Arc<Ring>, terms: Vec<Term>) -> Polynomial {
    Polynomial::from_terms(ring, terms)
}

fn make_monic(p: &mut [Term]) {
    if let Some((_, lc)) = p.first() {
        if !lc.is_one() {
            let inv = lc.inverse();
            for t in p.iter_mut() {
                t.1 = &t.1 * &inv;
            }
        }
    }
}

/// `p - c * x^shift * g`, both inputs sorted, output sorted with zeros dropped.
fn sub_scaled(
    p: &[Term],
    g: &[Term],
    shift: &ExponentVector,
    c: &Coefficient,
    ord: &MonomialOrder,
) -> Vec<Term> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    let mut gj: Option<Term> = g.first().map(|(e, a)| (e.add(shift), a * c));
    while i < p.len() || gj.is_some() {
        let take = match (&gj, p.get(i)) {
            (None, Some(_)) => Ordering::Greater,
            (Some(_), None) => Ordering::Less,
            (Some(q), Some(t)) => ord.cmp(&t.0, &q.0),
            (None, None) => unreachable!(),
        };
        match take {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (e, a) = gj.take().expect("pending term");
                out.push((e, -&a));
                j += 1;
                gj = g.get(j).map(|(e, a)| (e.add(shift), a * c));
            }
            Ordering::Equal => {
                let (_, a) = gj.take().expect("pending term");
                let v = &p[i].1 - &a;
                if !v.is_zero() {
                    out.push((p[i].0.clone(), v));
                }
                i += 1;
                j += 1;
                gj = g.get(j).map(|(e, a)| (e.add(shift), a * c));
            }
        }
    }
    out
}

/// Full reduction of `f` modulo `basis` (each element nonempty and monic).
pub(crate) fn reduce(f: Vec<Term>, basis: &[Vec<Term>], ord: &MonomialOrder) -> Vec<Term> {
    let mut p = f;
    let mut rem: Vec<Term> = Vec::new();
    while !p.is_empty() {
        let (lead, lc) = p[0].clone();
        let divisor = basis
            .iter()
            .find(|g| lead.is_divisible_by(&g[0].0));
        match divisor {
            Some(g) => {
                let shift = lead.checked_sub(&g[0].0).expect("divisible");
                let c = &lc * &g[0].1.inverse();
                p = sub_scaled(&p[1..], &g[1..], &shift, &c, ord);
            }
            None => {
                rem.push(p.remove(0));
            }
        }
    }
    rem
}

fn s_polynomial(f: &[Term], g: &[Term], ord: &MonomialOrder) -> Vec<Term> {
    let l = f[0].0.lcm(&g[0].0);
    let sf = l.checked_sub(&f[0].0).expect("lcm");
    let sg = l.checked_sub(&g[0].0).expect("lcm");
    // f and g are monic, so the leading terms cancel.
    let one = f[0].1.field().one();
    let left: Vec<Term> = f[1..]
        .iter()
        .map(|(e, c)| (e.add(&sf), c.clone()))
        .collect();
    sub_scaled(&left, &g[1..], &sg, &one, ord)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: ExponentVector,
}

/// Statistics from one Buchberger run; used by tests and reports.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuchbergerStats {
    pub pairs_reduced: usize,
    pub pairs_skipped_coprime: usize,
    pub pairs_skipped_chain: usize,
}

/// Reduced Groebner basis of the ideal generated by `gens`, sorted by
/// decreasing leading monomial. The zero ideal gives an empty basis.
pub(crate) fn groebner_basis(
    gens: &[Polynomial],
    ord: &MonomialOrder,
) -> (Vec<Vec<Term>>, BuchbergerStats) {
    let mut stats = BuchbergerStats::default();
    let mut basis: Vec<Vec<Term>> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    fn add(
        h: Vec<Term>,
        basis: &mut Vec<Vec<Term>>,
        pairs: &mut Vec<Pair>,
        pending: &mut HashSet<(usize, usize)>,
    ) {
        let k = basis.len();
        for (i, g) in basis.iter().enumerate() {
            pairs.push(Pair {
                i,
                j: k,
                lcm: g[0].0.lcm(&h[0].0),
            });
            pending.insert((i, k));
        }
        basis.push(h);
    }

    let mut inputs: Vec<Vec<Term>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| to_sorted(g, ord))
        .collect();
    inputs.sort_by(|a, b| ord.cmp(&a[0].0, &b[0].0));
    for f in inputs {
        let mut h = reduce(f, &basis, ord);
        if h.is_empty() {
            continue;
        }
        make_monic(&mut h);
        if h[0].0.is_zero() {
            return (vec![h], stats);
        }
        add(h, &mut basis, &mut pairs, &mut pending);
    }

    while !pairs.is_empty() {
        let idx = (0..pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pairs[a], &pairs[b]);
                pa.lcm
                    .degree()
                    .cmp(&pb.lcm.degree())
                    .then_with(|| ord.cmp(&pa.lcm, &pb.lcm))
                    .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
            })
            .expect("nonempty");
        let pair = pairs.swap_remove(idx);
        pending.remove(&(pair.i, pair.j));
        let (fi, fj) = (&basis[pair.i], &basis[pair.j]);
        if fi[0].0.is_coprime(&fj[0].0) {
            stats.pairs_skipped_coprime += 1;
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && pair.lcm.is_divisible_by(&basis[k][0].0)
                && !pending.contains(&(pair.i.min(k), pair.i.max(k)))
                && !pending.contains(&(pair.j.min(k), pair.j.max(k)))
        });
        if chain {
            stats.pairs_skipped_chain += 1;
            continue;
        }
        stats.pairs_reduced += 1;
        let s = s_polynomial(fi, fj, ord);
        let mut h = reduce(s, &basis, ord);
        if h.is_empty() {
            continue;
        }
        make_monic(&mut h);
        if h[0].0.is_zero() {
            return (vec![h], stats);
        }
        add(h, &mut basis, &mut pairs, &mut pending);
    }

    (reduce_basis(basis, ord), stats)
}

/// Minimalizes, interreduces and sorts a Groebner basis.
fn reduce_basis(basis: Vec<Vec<Term>>, ord: &MonomialOrder) -> Vec<Vec<Term>> {
    let mut minimal: Vec<Vec<Term>> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            j != i && g[0].0.is_divisible_by(&h[0].0) && (g[0].0 != h[0].0 || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Vec<Term>> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let head = minimal[i][0].clone();
        let mut tail = reduce(minimal[i][1..].to_vec(), &others, ord);
        tail.insert(0, head);
        make_monic(&mut tail);
        reduced.push(tail);
    }
    reduced.sort_by(|a, b| ord.cmp(&b[0].0, &a[0].0));
    reduced
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub(crate) fn is_groebner(basis: &[Vec<Term>], ord: &MonomialOrder) -> bool {
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let s = s_polynomial(&basis[i], &basis[j], ord);
            if !reduce(s, basis, ord).is_empty() {
                return false;
            }
        }
    }
    true
}
