#![allow(dead_code)]

use std::collections::BTreeMap;

use milnor::generate::{random_model, ModelShape};
use milnor::motivic::{GClass, Generator, RationalSeries};
use milnor::simplicial::{Presheaf, SimplicialSet};
use milnor::skeleton::SkeletonPoint;
use milnor::{ComponentSet, StrataModel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn model(seed: u64) -> StrataModel {
    random_model(&mut rng(seed), &ModelShape::default())
}

/// A non-empty subset of the components of `model`.
pub fn random_subset<R: Rng>(rng: &mut R, model: &StrataModel) -> ComponentSet {
    ComponentSet(rng.gen_range(1..(1u64 << model.component_count())))
}

pub fn random_class<R: Rng>(rng: &mut R) -> GClass {
    let mut c = GClass::zero();
    for _ in 0..rng.gen_range(1..=2) {
        c.add_monomial(rng.gen_range(-3..=3), rng.gen_range(-2..=2));
    }
    c
}

/// Up to three terms, each with at most three factors `T^b/(T^b - L^a)`
/// with `b <= 4` and `|a| <= 3`.
pub fn random_series<R: Rng>(rng: &mut R) -> RationalSeries {
    let mut s = RationalSeries::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let factors = (0..rng.gen_range(0..=3))
            .map(|_| Generator {
                a: rng.gen_range(-3..=3),
                b: rng.gen_range(1..=4),
            })
            .collect();
        let shift = if rng.gen_bool(0.3) { rng.gen_range(1..=2) } else { 0 };
        s = &s + &RationalSeries::term(random_class(rng), shift, factors);
    }
    s
}

/// Series with every term in the span of generator monomials, so that the
/// limit exists.
pub fn random_limit_series<R: Rng>(rng: &mut R) -> RationalSeries {
    let mut s = RationalSeries::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let factors = (0..rng.gen_range(0..=3))
            .map(|_| Generator {
                a: rng.gen_range(-3..=3),
                b: rng.gen_range(1..=4),
            })
            .collect();
        s = &s + &RationalSeries::term(random_class(rng), 0, factors);
    }
    s
}

/// Coefficients of `T^q / (T^r - L^p)` up to `order`, from the recurrence
/// `y_k = L^-p (y_{k-r} - [k = q])`.
pub fn quotient_expansion(p: i32, q: u32, r: u32, order: usize) -> Vec<GClass> {
    let (q, r) = (q as usize, r as usize);
    let inv = GClass::monomial(1, -p);
    let mut y = vec![GClass::zero(); order + 1];
    for k in 0..=order {
        let mut v = if k >= r { y[k - r].clone() } else { GClass::zero() };
        if k == q {
            v = &v - &GClass::one();
        }
        y[k] = &inv * &v;
    }
    y
}

pub fn cauchy(a: &[GClass], b: &[GClass]) -> Vec<GClass> {
    let n = a.len().min(b.len());
    (0..n)
        .map(|k| {
            let mut c = GClass::zero();
            for i in 0..=k {
                c += &(&a[i] * &b[k - i]);
            }
            c
        })
        .collect()
}

/// Expansion of a series computed term by term from
/// [`quotient_expansion`] and naive convolution.
pub fn oracle_expand(s: &RationalSeries, order: usize) -> Vec<GClass> {
    let mut total = vec![GClass::zero(); order + 1];
    for t in s.terms() {
        let mut acc = vec![GClass::zero(); order + 1];
        if (t.shift as usize) <= order {
            acc[t.shift as usize] = t.coef.clone();
        }
        for g in t.factors {
            acc = cauchy(&acc, &quotient_expansion(g.a, g.b, g.b, order));
        }
        for (x, y) in total.iter_mut().zip(&acc) {
            *x += y;
        }
    }
    total
}

/// Stratum id and barycentric coordinates keyed by component name.
pub fn named(model: &StrataModel, p: &SkeletonPoint) -> (String, BTreeMap<String, f64>) {
    let names = p
        .components(model)
        .into_iter()
        .map(|c| model.components()[c].clone())
        .zip(p.bary.iter().copied())
        .collect();
    (model.stratum(p.stratum).id.clone(), names)
}

pub fn same_point(ma: &StrataModel, a: &SkeletonPoint, mb: &StrataModel, b: &SkeletonPoint, tol: f64) -> bool {
    let (ia, ba) = named(ma, a);
    let (ib, bb) = named(mb, b);
    ia == ib && ba.len() == bb.len() && ba.iter().all(|(k, v)| bb.get(k).is_some_and(|w| (v - w).abs() < tol))
}

pub fn sup_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Orbits of nondegenerate `n`-simplices under the swaps.
pub fn orbit_count(s: &SimplicialSet, n: usize) -> usize {
    let mut seen = vec![false; s.count(n)];
    let mut orbits = 0;
    for x in s.nondegenerate(n) {
        if seen[x] {
            continue;
        }
        orbits += 1;
        let mut stack = vec![x];
        seen[x] = true;
        while let Some(y) = stack.pop() {
            for i in 0..n {
                let z = s.swap(n, i, y);
                if !seen[z] {
                    seen[z] = true;
                    stack.push(z);
                }
            }
        }
    }
    orbits
}

