//! Rational power series in `T` over `Z[L, L^-1]`.
//!
//! A [`RationalSeries`] is a finite sum of terms
//! `coef * T^j * prod_i T^{b_i} / (T^{b_i} - L^{a_i})`. Terms with `j = 0`
//! span the ring generated by the `T^b / (T^b - L^a)`; positive `j` appears
//! only in intermediate results (plain polynomials in `T` are not in that
//! ring and have no limit at infinity).

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use serde_json::{json, Value};
use thiserror::Error;

use super::GClass;

/// Default cap on the extraction degree `d`.
pub const DEFAULT_MAX_D: u32 = 12;
/// Cap on the number of generator factors in a term passed to extraction.
pub const MAX_EXTRACT_FACTORS: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("numerator degree {numerator} exceeds denominator degree {denominator}; the limit is undefined")]
    NotInRPrime { numerator: usize, denominator: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("extraction too large: {0}")]
    ExtractionTooLarge(String),
}

/// The generator `T^b / (T^b - L^a)` with `b > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub a: i32,
    pub b: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct TermKey {
    shift: u32,
    factors: Vec<Generator>,
}

/// An element of the series ring in canonical form: identical
/// `(shift, factor multiset)` keys are merged and zero terms dropped.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RationalSeries {
    terms: BTreeMap<TermKey, GClass>,
}

/// A term as exposed to callers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term<'a> {
    pub coef: &'a GClass,
    pub shift: u32,
    pub factors: &'a [Generator],
}

impl RationalSeries {
    pub fn zero() -> Self {
        RationalSeries::default()
    }

    pub fn one() -> Self {
        RationalSeries::constant(GClass::one())
    }

    pub fn constant(c: GClass) -> Self {
        RationalSeries::term(c, 0, Vec::new())
    }

    /// `T^b / (T^b - L^a)`.
    pub fn generator(a: i32, b: u32) -> Result<Self, SeriesError> {
        if b == 0 {
            return Err(SeriesError::Domain("generator needs b > 0".into()));
        }
        Ok(RationalSeries::term(GClass::one(), 0, vec![Generator { a, b }]))
    }

    /// `T^j`.
    pub fn t_power(j: u32) -> Self {
        RationalSeries::term(GClass::one(), j, Vec::new())
    }

    /// `coef * T^shift * prod(factors)`.
    pub fn term(coef: GClass, shift: u32, mut factors: Vec<Generator>) -> Self {
        let mut s = RationalSeries::zero();
        factors.sort();
        s.push(TermKey { shift, factors }, coef);
        s
    }

    fn push(&mut self, key: TermKey, coef: GClass) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += &coef;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(coef);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = Term<'_>> {
        self.terms.iter().map(|(k, c)| Term {
            coef: c,
            shift: k.shift,
            factors: &k.factors,
        })
    }

    /// True when every term has `shift == 0`, i.e. the value is a polynomial
    /// in the generators.
    pub fn is_generator_polynomial(&self) -> bool {
        self.terms.keys().all(|k| k.shift == 0)
    }

    pub fn scale(&self, c: &GClass) -> Self {
        let mut out = RationalSeries::zero();
        for (k, v) in &self.terms {
            out.push(k.clone(), v * c);
        }
        out
    }

    /// Multiplication by `T^j`.
    pub fn shift(&self, j: u32) -> Self {
        let mut out = RationalSeries::zero();
        for (k, v) in &self.terms {
            out.push(
                TermKey {
                    shift: k.shift + j,
                    factors: k.factors.clone(),
                },
                v.clone(),
            );
        }
        out
    }

    /// Coefficients of `T^0 ..= T^order`.
    pub fn expand(&self, order: usize) -> Vec<GClass> {
        let mut total = vec![GClass::zero(); order + 1];
        // Products over factor-list prefixes; sorted keys share prefixes.
        let mut prefixes: HashMap<&[Generator], Vec<GClass>> = HashMap::new();
        let mut unit = vec![GClass::zero(); order + 1];
        unit[0] = GClass::one();
        prefixes.insert(&[], unit);
        for (key, coef) in &self.terms {
            let j = key.shift as usize;
            if j > order {
                continue;
            }
            let f = &key.factors[..];
            let known = (0..=f.len()).rev().find(|&n| prefixes.contains_key(&f[..n])).unwrap_or(0);
            for n in known + 1..=f.len() {
                let next = times_generator(&prefixes[&f[..n - 1]], f[n - 1]);
                prefixes.insert(&f[..n], next);
            }
            for (i, c) in prefixes[f].iter().take(order + 1 - j).enumerate() {
                if !c.is_zero() {
                    total[i + j] += &(coef * c);
                }
            }
        }
        total
    }

    /// `lim_{T -> oo}`: over the common denominator `Q` (a product of the
    /// `T^b - L^a`), the coefficient of `T^{deg Q}` in the numerator.
    pub fn limit(&self) -> Result<GClass, SeriesError> {
        let (numerator, denominator_degree) = self.common_denominator_form();
        let numerator_degree = poly_degree(&numerator);
        if let Some(deg) = numerator_degree {
            if deg > denominator_degree {
                return Err(SeriesError::NotInRPrime {
                    numerator: deg,
                    denominator: denominator_degree,
                });
            }
        }
        Ok(numerator.get(denominator_degree).cloned().unwrap_or_default())
    }

    /// Numerator polynomial over `Q = prod_g (T^b - L^a)^{max multiplicity}`
    /// and `deg Q`.
    fn common_denominator_form(&self) -> (Vec<GClass>, usize) {
        let mut max_mult: BTreeMap<Generator, usize> = BTreeMap::new();
        for key in self.terms.keys() {
            for (g, m) in multiplicities(&key.factors) {
                let e = max_mult.entry(g).or_insert(0);
                *e = (*e).max(m);
            }
        }
        let denominator_degree: usize = max_mult.iter().map(|(g, &m)| g.b as usize * m).sum();
        // Cofactor of each factor list in the common denominator.
        let mut cofactors: HashMap<&[Generator], Vec<GClass>> = HashMap::new();
        let mut numerator: Vec<GClass> = Vec::new();
        for (key, coef) in &self.terms {
            let cofactor = cofactors.entry(&key.factors).or_insert_with(|| {
                let mults = multiplicities(&key.factors);
                let mut p = vec![GClass::one()];
                for (g, &m) in &max_mult {
                    let have = mults.get(g).copied().unwrap_or(0);
                    for _ in have..m {
                        p = poly_mul(&p, &denominator_factor(*g));
                    }
                }
                p
            });
            let lead: usize = key.shift as usize + key.factors.iter().map(|g| g.b as usize).sum::<usize>();
            if numerator.len() < lead + cofactor.len() {
                numerator.resize(lead + cofactor.len(), GClass::zero());
            }
            for (i, c) in cofactor.iter().enumerate() {
                if !c.is_zero() {
                    numerator[lead + i] += &(coef * c);
                }
            }
        }
        (numerator, denominator_degree)
    }

    /// `x[d]`: keeps the coefficients at exponents divisible by `d`.
    pub fn extract(&self, d: u32) -> Result<Self, SeriesError> {
        self.extract_with_limit(d, DEFAULT_MAX_D)
    }

    pub fn extract_with_limit(&self, d: u32, max_d: u32) -> Result<Self, SeriesError> {
        if d == 0 {
            return Err(SeriesError::Domain("extraction degree must be positive".into()));
        }
        if d > max_d {
            return Err(SeriesError::ExtractionTooLarge(format!("d = {d} exceeds the cap {max_d}")));
        }
        if d == 1 {
            return Ok(self.clone());
        }
        let mut dr_cache: HashMap<(i32, u32, u32), RationalSeries> = HashMap::new();
        let mut out = RationalSeries::zero();
        for (key, coef) in &self.terms {
            if key.factors.len() > MAX_EXTRACT_FACTORS {
                return Err(SeriesError::ExtractionTooLarge(format!(
                    "{} factors in one term (at most {MAX_EXTRACT_FACTORS})",
                    key.factors.len()
                )));
            }
            let j = key.shift;
            if key.factors.is_empty() {
                if j % d == 0 {
                    out.push(key.clone(), coef.clone());
                }
                continue;
            }
            // w = u + e*v with 1 <= u_i <= e_i; b_i * e_i = lcm(b_i, d) is a
            // multiple of d, so divisibility only depends on u.
            let bs: Vec<u32> = key.factors.iter().map(|g| g.b).collect();
            let es: Vec<u32> = bs.iter().map(|&b| b.lcm(&d) / b).collect();
            let mut u = vec![1u32; bs.len()];
            loop {
                let exponent: u64 = j as u64 + bs.iter().zip(&u).map(|(&b, &ui)| b as u64 * ui as u64).sum::<u64>();
                if exponent % d as u64 == 0 {
                    let mut part = RationalSeries::constant(coef.shift(
                        key.factors
                            .iter()
                            .zip(&es)
                            .zip(&u)
                            .map(|((g, &e), &ui)| g.a * (e as i32 - ui as i32))
                            .sum(),
                    ))
                    .shift(j);
                    for ((g, &e), &ui) in key.factors.iter().zip(&es).zip(&u) {
                        let triple = (g.a * e as i32, g.b * ui, g.b * e);
                        let dr = match dr_cache.get(&triple) {
                            Some(s) => s.clone(),
                            None => {
                                let s = normalize_dr(triple.0, triple.1, triple.2)?;
                                dr_cache.insert(triple, s.clone());
                                s
                            }
                        };
                        part = &part * &dr;
                    }
                    out = &out + &part;
                }
                if !next_in_box(&mut u, &es) {
                    break;
                }
            }
        }
        Ok(out)
    }

    /// Decides equality of the represented power series.
    ///
    /// Canonical forms are compared first; otherwise the difference is
    /// expanded to the degree bound of its numerator over the common
    /// denominator, beyond which a vanishing expansion forces a zero numerator.
    pub fn series_eq(&self, other: &RationalSeries) -> bool {
        if self == other {
            return true;
        }
        let diff = self - other;
        let (numerator, _) = diff.common_denominator_form();
        let bound = numerator.len();
        diff.expand(bound).iter().all(GClass::is_zero)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(k, c)| {
                    json!({
                        "coef": c.to_json(),
                        "t": k.shift,
                        "gen": k.factors.iter().map(|g| json!([g.a, g.b])).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )
    }
}

/// Advances `u` through the box `prod [1, e_i]`; false once exhausted.
fn next_in_box(u: &mut [u32], es: &[u32]) -> bool {
    for (ui, &e) in u.iter_mut().zip(es) {
        if *ui < e {
            *ui += 1;
            return true;
        }
        *ui = 1;
    }
    false
}

/// `D^p_{q,r} = T^q / (T^r - L^p)` rewritten as a polynomial in the
/// generators `T^b / (T^b - L^a)`.
///
/// Uses `D^p_{0,r} = L^-p (D^p_{r,r} - 1)` and the identity
/// `D^p_{q,r} = D^p_{r,r} D^0_{0,r-q} - D^p_{0,r} D^0_{q,r-q}`, rewriting the
/// last product as `D^p_{2q-r,r} D^0_{r-q,r-q}` when `q > r - q`. Recursion is
/// on `(q, r)` in lexicographic order.
pub fn normalize_dr(p: i32, q: u32, r: u32) -> Result<RationalSeries, SeriesError> {
    if r == 0 {
        return Err(SeriesError::Domain("r must be positive".into()));
    }
    if q > r {
        return Err(SeriesError::Domain(format!("q = {q} exceeds r = {r}")));
    }
    let gen = |a: i32, b: u32| RationalSeries::generator(a, b).expect("b > 0");
    if q == r {
        return Ok(gen(p, r));
    }
    let d0 = |p: i32, r: u32| (&gen(p, r) - &RationalSeries::one()).scale(&GClass::monomial(1, -p));
    if q == 0 {
        return Ok(d0(p, r));
    }
    let first = &gen(p, r) * &d0(0, r - q);
    let second = if q <= r - q {
        &d0(p, r) * &normalize_dr(0, q, r - q)?
    } else {
        &normalize_dr(p, 2 * q - r, r)? * &gen(0, r - q)
    };
    Ok(&first - &second)
}

fn multiplicities(factors: &[Generator]) -> BTreeMap<Generator, usize> {
    let mut m = BTreeMap::new();
    for g in factors {
        *m.entry(*g).or_insert(0) += 1;
    }
    m
}

/// Truncated product with `T^b / (T^b - L^a) = -sum_{m >= 1} L^{-ma} T^{mb}`.
fn times_generator(acc: &[GClass], g: Generator) -> Vec<GClass> {
    let b = g.b as usize;
    let mut out = vec![GClass::zero(); acc.len()];
    for (k, c) in acc.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut m = 1;
        while k + m * b < acc.len() {
            out[k + m * b] += &c.shift(-(m as i32) * g.a).scale(-1);
            m += 1;
        }
    }
    out
}

/// `T^b - L^a` as a coefficient vector.
fn denominator_factor(g: Generator) -> Vec<GClass> {
    let mut v = vec![GClass::zero(); g.b as usize + 1];
    v[0] = GClass::monomial(-1, g.a);
    v[g.b as usize] = GClass::one();
    v
}

fn poly_mul(a: &[GClass], b: &[GClass]) -> Vec<GClass> {
    let mut out = vec![GClass::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (k, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + k] += &(x * y);
            }
        }
    }
    out
}

fn poly_degree(p: &[GClass]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

impl fmt::Debug for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            if k.shift > 0 {
                write!(f, "*T^{}", k.shift)?;
            }
            for g in &k.factors {
                write!(f, "*gen({},{})", g.a, g.b)?;
            }
        }
        Ok(())
    }
}

impl Add for &RationalSeries {
    type Output = RationalSeries;
    fn add(self, rhs: &RationalSeries) -> RationalSeries {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.push(k.clone(), v.clone());
        }
        out
    }
}

impl Neg for &RationalSeries {
    type Output = RationalSeries;
    fn neg(self) -> RationalSeries {
        self.scale(&GClass::constant(-1))
    }
}

impl Sub for &RationalSeries {
    type Output = RationalSeries;
    fn sub(self, rhs: &RationalSeries) -> RationalSeries {
        self + &(-rhs)
    }
}

impl Mul for &RationalSeries {
    type Output = RationalSeries;
    fn mul(self, rhs: &RationalSeries) -> RationalSeries {
        let mut out = RationalSeries::zero();
        for (ka, va) in &self.terms {
            for (kb, vb) in &rhs.terms {
                let mut factors = ka.factors.clone();
                factors.extend_from_slice(&kb.factors);
                factors.sort();
                out.push(
                    TermKey {
                        shift: ka.shift + kb.shift,
                        factors,
                    },
                    va * vb,
                );
            }
        }
        out
    }
}
