//! Points of the skeleton `|Δ(X)|` in barycentric and coloured coordinates,
//! the retraction of analytic points onto the skeleton and the deformation
//! retraction of `|Δ_E(X)|` onto `|Δ(E)|`.
//!
//! Coordinates are stored as vectors aligned with the components of the
//! stratum in increasing index order.

use std::collections::BTreeMap;

use rand::Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::strata::{ComponentSet, StrataModel};

/// Validation tolerance for sums, products and boundary values.
pub const TOLERANCE: f64 = 1e-12;

const BISECTION_STEPS: usize = 200;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("{0}")]
    Domain(String),
    #[error("stratum `{0}` has no component in E")]
    NotInDeltaE(String),
}

fn domain<T>(msg: impl Into<String>) -> Result<T, GeomError> {
    Err(GeomError::Domain(msg.into()))
}

fn check_stratum(model: &StrataModel, stratum: usize, len: usize) -> Result<Vec<usize>, GeomError> {
    if stratum >= model.strata().len() {
        return domain(format!("no stratum with index {stratum}"));
    }
    let comps = model.stratum(stratum).psi.to_vec();
    if comps.len() != len {
        return domain(format!(
            "stratum `{}` has {} components, got {} coordinates",
            model.stratum(stratum).id,
            comps.len(),
            len
        ));
    }
    Ok(comps)
}

fn named(model: &StrataModel, comps: &[usize], values: &[f64]) -> BTreeMap<String, f64> {
    comps
        .iter()
        .zip(values)
        .map(|(&c, &v)| (model.components()[c].clone(), v))
        .collect()
}

fn unnamed(model: &StrataModel, stratum: usize, values: &BTreeMap<String, f64>) -> Result<Vec<f64>, GeomError> {
    let comps = model.stratum(stratum).psi.to_vec();
    if values.len() != comps.len() {
        return domain(format!(
            "expected coordinates for {:?}",
            model.component_names(model.stratum(stratum).psi)
        ));
    }
    comps
        .iter()
        .map(|&c| {
            let name = &model.components()[c];
            values
                .get(name)
                .copied()
                .ok_or_else(|| GeomError::Domain(format!("missing coordinate for component `{name}`")))
        })
        .collect()
}

fn stratum_by_id(model: &StrataModel, id: &str) -> Result<usize, GeomError> {
    model
        .stratum_index(id)
        .map_err(|_| GeomError::Domain(format!("unknown stratum `{id}`")))
}

/// A point of `|Δ(X)|`: a stratum and strictly positive barycentric
/// coordinates on its components.
#[derive(Clone, Debug, PartialEq)]
pub struct SkeletonPoint {
    pub stratum: usize,
    pub bary: Vec<f64>,
}

impl SkeletonPoint {
    pub fn new(model: &StrataModel, stratum: usize, bary: Vec<f64>) -> Result<Self, GeomError> {
        check_stratum(model, stratum, bary.len())?;
        if bary.iter().any(|&v| !(v > 0.0 && v <= 1.0 + TOLERANCE)) {
            return domain("barycentric coordinates must lie in (0, 1]");
        }
        if (bary.iter().sum::<f64>() - 1.0).abs() > TOLERANCE {
            return domain("barycentric coordinates must sum to 1");
        }
        Ok(SkeletonPoint { stratum, bary })
    }

    /// Normalizes non-negative weights and moves to the face spanned by the
    /// positive ones.
    pub fn from_weights(model: &StrataModel, stratum: usize, weights: &[f64]) -> Result<Self, GeomError> {
        let comps = check_stratum(model, stratum, weights.len())?;
        if weights.iter().any(|&w| !(w >= 0.0) || !w.is_finite()) {
            return domain("weights must be finite and non-negative");
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return domain("weights must not all vanish");
        }
        let support = ComponentSet::from_indices(comps.iter().zip(weights).filter(|(_, &w)| w > 0.0).map(|(&c, _)| c));
        Ok(SkeletonPoint {
            stratum: model.generization(stratum, support),
            bary: weights.iter().filter(|&&w| w > 0.0).map(|w| w / total).collect(),
        })
    }

    pub fn vertex(model: &StrataModel, stratum: usize) -> Result<Self, GeomError> {
        SkeletonPoint::new(model, stratum, vec![1.0])
    }

    pub fn from_named(model: &StrataModel, stratum: &str, bary: &BTreeMap<String, f64>) -> Result<Self, GeomError> {
        let s = stratum_by_id(model, stratum)?;
        SkeletonPoint::new(model, s, unnamed(model, s, bary)?)
    }

    pub fn components(&self, model: &StrataModel) -> Vec<usize> {
        model.stratum(self.stratum).psi.to_vec()
    }

    /// Sup-norm distance, or `None` when the points lie in different open
    /// cells.
    pub fn distance(&self, other: &SkeletonPoint) -> Option<f64> {
        (self.stratum == other.stratum).then(|| sup_distance(&self.bary, &other.bary))
    }

    pub fn to_json(&self, model: &StrataModel) -> Value {
        json!({
            "stratum": model.stratum(self.stratum).id,
            "barycentric": named(model, &self.components(model), &self.bary),
        })
    }
}

fn sup_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// A point in `q`-coloured coordinates: `u` in `[0,1]` on the components of
/// the stratum with product `q` (minimum zero when `q = 0`).
#[derive(Clone, Debug, PartialEq)]
pub struct ColouredPoint {
    pub stratum: usize,
    pub u: Vec<f64>,
    pub q: f64,
}

impl ColouredPoint {
    pub fn new(model: &StrataModel, stratum: usize, u: Vec<f64>, q: f64) -> Result<Self, GeomError> {
        check_stratum(model, stratum, u.len())?;
        check_coloured(&u, q)?;
        Ok(ColouredPoint { stratum, u, q })
    }

    pub fn from_named(model: &StrataModel, stratum: &str, u: &BTreeMap<String, f64>, q: f64) -> Result<Self, GeomError> {
        let s = stratum_by_id(model, stratum)?;
        ColouredPoint::new(model, s, unnamed(model, s, u)?, q)
    }

    pub fn from_skeleton(p: &SkeletonPoint, q: f64) -> Result<Self, GeomError> {
        Ok(ColouredPoint {
            stratum: p.stratum,
            u: colour(&p.bary, q)?,
            q,
        })
    }

    /// Drops entries equal to 1 onto the face stratum, then uncolours.
    pub fn to_skeleton(&self, model: &StrataModel) -> Result<SkeletonPoint, GeomError> {
        let (stratum, u) = collapse(model, self.stratum, &self.u)?;
        Ok(SkeletonPoint {
            stratum,
            bary: uncolour(&u, self.q)?,
        })
    }

    pub fn to_json(&self, model: &StrataModel) -> Value {
        json!({
            "stratum": model.stratum(self.stratum).id,
            "coloured": named(model, &model.stratum(self.stratum).psi.to_vec(), &self.u),
            "q": self.q,
        })
    }
}

fn check_coloured(u: &[f64], q: f64) -> Result<(), GeomError> {
    if !(0.0..1.0).contains(&q) {
        return domain(format!("colour parameter {q} is not in [0, 1)"));
    }
    if u.is_empty() {
        return domain("empty coordinate tuple");
    }
    if u.iter().any(|&v| !(-TOLERANCE..=1.0 + TOLERANCE).contains(&v)) {
        return domain("coloured coordinates must lie in [0, 1]");
    }
    if q == 0.0 {
        if u.iter().copied().fold(f64::INFINITY, f64::min) != 0.0 {
            return domain("0-coloured coordinates must have minimum 0");
        }
    } else if (u.iter().product::<f64>() - q).abs() > TOLERANCE {
        return domain(format!("coloured coordinates must multiply to {q}"));
    }
    Ok(())
}

/// Moves entries within tolerance of 1 onto the face stratum.
fn collapse(model: &StrataModel, stratum: usize, u: &[f64]) -> Result<(usize, Vec<f64>), GeomError> {
    let comps = model.stratum(stratum).psi.to_vec();
    let kept: Vec<usize> = (0..u.len()).filter(|&i| u[i] < 1.0 - TOLERANCE).collect();
    if kept.is_empty() {
        return domain("all coordinates equal 1");
    }
    let support = ComponentSet::from_indices(kept.iter().map(|&i| comps[i]));
    Ok((model.generization(stratum, support), kept.iter().map(|&i| u[i]).collect()))
}

/// Barycentric to `q`-coloured: `u_i -> q^{u_i}` for `q > 0` and
/// `u_i -> 1 - u_i / max u` for `q = 0`.
pub fn colour(u: &[f64], q: f64) -> Result<Vec<f64>, GeomError> {
    if !(0.0..1.0).contains(&q) {
        return domain(format!("colour parameter {q} is not in [0, 1)"));
    }
    if u.is_empty() || u.iter().any(|&v| !(v >= -TOLERANCE)) {
        return domain("barycentric coordinates must be non-negative");
    }
    if (u.iter().sum::<f64>() - 1.0).abs() > TOLERANCE {
        return domain("barycentric coordinates must sum to 1");
    }
    let u: Vec<f64> = u.iter().map(|v| v.max(0.0)).collect();
    if q == 0.0 {
        let max = u.iter().copied().fold(0.0, f64::max);
        Ok(u.iter().map(|v| if *v == max { 0.0 } else { 1.0 - v / max }).collect())
    } else {
        Ok(u.iter().map(|v| q.powf(*v)).collect())
    }
}

/// Inverse of [`colour`].
pub fn uncolour(c: &[f64], q: f64) -> Result<Vec<f64>, GeomError> {
    check_coloured(c, q)?;
    Ok(uncolour_unchecked(c, q))
}

fn uncolour_unchecked(c: &[f64], q: f64) -> Vec<f64> {
    // Dividing by the actual sum keeps the output on the simplex exactly.
    let weights: Vec<f64> = if q == 0.0 {
        c.iter().map(|v| 1.0 - v.min(1.0)).collect()
    } else {
        c.iter().map(|v| -v.min(1.0).ln()).collect()
    };
    let total: f64 = weights.iter().sum();
    weights.iter().map(|w| w / total).collect()
}

/// The point where the segment from `y` to `(1,...,1)` meets the level set
/// `prod = rho`.
pub fn fiber_homeo(y: &[f64], rho: f64) -> Result<Vec<f64>, GeomError> {
    if !(0.0..1.0).contains(&rho) {
        return domain(format!("level {rho} is not in [0, 1)"));
    }
    check_coloured(y, 0.0)?;
    let at = |s: f64| -> Vec<f64> { y.iter().map(|&v| v + s * (1.0 - v)).collect() };
    if rho == 0.0 {
        return Ok(y.to_vec());
    }
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if at(mid).iter().product::<f64>() < rho {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (xl, xh) = (at(lo), at(hi));
    let (pl, ph): (f64, f64) = (xl.iter().product(), xh.iter().product());
    Ok(if (pl - rho).abs() <= (ph - rho).abs() { xl } else { xh })
}

/// Inverse of [`fiber_homeo`]: returns `(y, rho)`.
pub fn fiber_homeo_inverse(x: &[f64]) -> Result<(Vec<f64>, f64), GeomError> {
    if x.is_empty() || x.iter().any(|&v| !(0.0..=1.0).contains(&v)) {
        return domain("coordinates must lie in [0, 1]");
    }
    let rho: f64 = x.iter().product();
    if rho >= 1.0 {
        return domain("level must be below 1");
    }
    let s = x.iter().copied().fold(f64::INFINITY, f64::min);
    let y = x
        .iter()
        .map(|&v| if v == s { 0.0 } else { (1.0 - (1.0 - v) / (1.0 - s)).clamp(0.0, 1.0) })
        .collect();
    Ok((y, rho))
}

/// The monomial data of an analytic point: the stratum containing its
/// specialization, the absolute values of local equations of the
/// components through it, and the absolute value of the uniformizer.
#[derive(Clone, Debug, PartialEq)]
pub struct AnalyticSample {
    pub stratum: usize,
    pub values: Vec<f64>,
    pub r: f64,
}

impl AnalyticSample {
    pub fn new(model: &StrataModel, stratum: usize, values: Vec<f64>, r: f64) -> Result<Self, GeomError> {
        check_stratum(model, stratum, values.len())?;
        let z = AnalyticSample { stratum, values, r };
        z.check()?;
        Ok(z)
    }

    /// Builds a sample from named values; without `r` the product of the
    /// values is used.
    pub fn from_named(
        model: &StrataModel,
        stratum: &str,
        values: &BTreeMap<String, f64>,
        r: Option<f64>,
    ) -> Result<Self, GeomError> {
        let s = stratum_by_id(model, stratum)?;
        let values = unnamed(model, s, values)?;
        let r = r.unwrap_or_else(|| values.iter().product());
        AnalyticSample::new(model, s, values, r)
    }

    fn check(&self) -> Result<(), GeomError> {
        if !(0.0..1.0).contains(&self.r) {
            return domain(format!("r = {} is not in [0, 1)", self.r));
        }
        if self.values.iter().any(|&v| !(0.0..=1.0).contains(&v)) {
            return domain("values must lie in [0, 1]");
        }
        if (self.values.iter().product::<f64>() - self.r).abs() > TOLERANCE {
            return domain(format!("values must multiply to r = {}", self.r));
        }
        if self.r == 0.0 && !self.values.contains(&0.0) {
            return domain("at r = 0 some value must vanish");
        }
        Ok(())
    }

    /// The same point seen in the model of `E`, for `r = 0` samples vanishing
    /// on a component of `E`. Returns the restricted model and the sample.
    pub fn restrict_to(&self, model: &StrataModel, e: ComponentSet) -> Result<(StrataModel, AnalyticSample), GeomError> {
        if self.r != 0.0 {
            return domain("only samples with r = 0 restrict to a union of components");
        }
        let comps = model.stratum(self.stratum).psi.to_vec();
        let keep: Vec<usize> = (0..comps.len()).filter(|&i| e.contains(comps[i])).collect();
        if !keep.iter().any(|&i| self.values[i] == 0.0) {
            return domain("sample does not vanish on a component of E");
        }
        let sub = model
            .restrict_to(e)
            .map_err(|err| GeomError::Domain(err.to_string()))?;
        let support = ComponentSet::from_indices(keep.iter().map(|&i| comps[i]));
        let y = model.generization(self.stratum, support);
        let stratum = stratum_by_id(&sub, &model.stratum(y).id)?;
        let values = keep.iter().map(|&i| self.values[i]).collect();
        let sample = AnalyticSample::new(&sub, stratum, values, 0.0)?;
        Ok((sub, sample))
    }

    pub fn to_json(&self, model: &StrataModel) -> Value {
        json!({
            "stratum": model.stratum(self.stratum).id,
            "values": named(model, &model.stratum(self.stratum).psi.to_vec(), &self.values),
            "r": self.r,
        })
    }
}

/// The image of an analytic point on the skeleton: its coloured
/// representation with `q = r`, in barycentric form.
pub fn tau_retract(model: &StrataModel, z: &AnalyticSample) -> Result<SkeletonPoint, GeomError> {
    check_stratum(model, z.stratum, z.values.len())?;
    z.check()?;
    let (stratum, values) = collapse(model, z.stratum, &z.values)?;
    Ok(SkeletonPoint {
        stratum,
        bary: uncolour_unchecked(&values, z.r),
    })
}

/// `v -> v^{log_r r'}` on every value.
pub fn rescale_point(z: &AnalyticSample, target: f64) -> Result<AnalyticSample, GeomError> {
    if !(z.r > 0.0 && z.r < 1.0) {
        return domain("rescaling needs 0 < r < 1");
    }
    if !(target > 0.0 && target < 1.0) {
        return domain("target must lie in (0, 1)");
    }
    let exponent = target.ln() / z.r.ln();
    Ok(AnalyticSample {
        stratum: z.stratum,
        values: z.values.iter().map(|v| v.powf(exponent)).collect(),
        r: target,
    })
}

/// The semi-norm `max_i |a_i|_0 r^i` of a polynomial with the trivial
/// absolute value on coefficients.
pub fn disc_point(coeffs: &[i64], r: f64) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .map(|(i, _)| if i == 0 { 1.0 } else { r.powi(i as i32) })
        .fold(0.0, f64::max)
}

/// Components of `X` outside `E` in the order they are removed. `order`, if
/// given, lists them in the order they are added to `E`.
pub fn removal_order(model: &StrataModel, e: ComponentSet, order: Option<&[usize]>) -> Result<Vec<usize>, GeomError> {
    if e.is_empty() || !e.is_subset(model.all_components()) {
        return domain("E must be a non-empty set of components");
    }
    let outside = model.all_components().intersection(ComponentSet(!e.0));
    match order {
        None => Ok(outside.to_vec().into_iter().rev().collect()),
        Some(seq) => {
            if seq.len() != outside.len() || ComponentSet::from_indices(seq.iter().copied()) != outside {
                return domain("order must list each component outside E exactly once");
            }
            Ok(seq.iter().rev().copied().collect())
        }
    }
}

/// Output of [`phi_retract`].
#[derive(Clone, Debug, PartialEq)]
pub struct Retracted {
    /// The moved point, 0-coloured, with entries equal to 1 collapsed.
    pub point: ColouredPoint,
    /// The same point on the components of the input stratum, with 1 on
    /// collapsed entries.
    pub embedded: Vec<f64>,
}

/// The deformation retraction of `|Δ_E(X)|` onto `|Δ(E)|` at time `rho`.
///
/// Components outside `E` are removed one at a time; removal `j` of `k`
/// runs while `rho` is in `[j/k, (j+1)/k]`.
pub fn phi_retract(
    model: &StrataModel,
    e: ComponentSet,
    z: &ColouredPoint,
    rho: f64,
    order: Option<&[usize]>,
) -> Result<Retracted, GeomError> {
    check_stratum(model, z.stratum, z.u.len())?;
    if z.q != 0.0 {
        return domain("the retraction acts on 0-coloured points");
    }
    check_coloured(&z.u, 0.0)?;
    if !(0.0..=1.0).contains(&rho) {
        return domain(format!("time {rho} is not in [0, 1]"));
    }
    let removal = removal_order(model, e, order)?;
    let comps = model.stratum(z.stratum).psi.to_vec();
    let mut u: Vec<f64> = z.u.iter().map(|&v| snap(v)).collect();
    if !(0..u.len()).any(|i| u[i] < 1.0 && e.contains(comps[i])) {
        return Err(GeomError::NotInDeltaE(model.stratum(z.stratum).id.clone()));
    }

    let k = removal.len();
    let t = rho * k as f64;
    for (j, &a) in removal.iter().enumerate() {
        let local = (t - j as f64).clamp(0.0, 1.0);
        if local == 0.0 {
            break;
        }
        if let Some(pos) = comps.iter().position(|&c| c == a) {
            remove_step(&mut u, pos, local);
        }
    }

    let (stratum, kept) = collapse(model, z.stratum, &u)?;
    Ok(Retracted {
        point: ColouredPoint {
            stratum,
            u: kept,
            q: 0.0,
        },
        embedded: u,
    })
}

fn snap(v: f64) -> f64 {
    if v >= 1.0 - TOLERANCE {
        1.0
    } else if v <= TOLERANCE {
        0.0
    } else {
        v
    }
}

/// One removal of the component at position `a`, at local time `rho`.
fn remove_step(u: &mut [f64], a: usize, rho: f64) {
    if u[a] >= 1.0 {
        return;
    }
    let staying: Vec<usize> = (0..u.len()).filter(|&i| i != a && u[i] < 1.0).collect();
    let has_zero = staying.iter().any(|&i| u[i] == 0.0);
    if !has_zero {
        let min = staying.iter().map(|&i| u[i]).fold(f64::INFINITY, f64::min);
        let drop = 2.0 * rho.min(0.5) * min;
        for &i in &staying {
            u[i] = if rho >= 0.5 && u[i] == min { 0.0 } else { snap(u[i] - drop) };
        }
    }
    if rho > 0.5 {
        u[a] = snap(u[a] + (1.0 - u[a]) * (2.0 * rho - 1.0));
    }
}

/// A random sample over a stratum meeting `within` (all components when
/// `None`), vanishing on a component of `within` at level 0 and pushed to
/// level `r` along the fibration.
pub fn random_sample<R: Rng + ?Sized>(
    rng: &mut R,
    model: &StrataModel,
    r: f64,
    within: Option<ComponentSet>,
) -> Option<AnalyticSample> {
    let within = within.unwrap_or(model.all_components());
    let candidates: Vec<usize> = (0..model.strata().len())
        .filter(|&s| !model.stratum(s).psi.intersection(within).is_empty())
        .collect();
    if candidates.is_empty() {
        return None;
    }
    let stratum = candidates[rng.gen_range(0..candidates.len())];
    let comps = model.stratum(stratum).psi.to_vec();
    let zeros: Vec<usize> = (0..comps.len()).filter(|&i| within.contains(comps[i])).collect();
    let zero = zeros[rng.gen_range(0..zeros.len())];
    let y: Vec<f64> = (0..comps.len())
        .map(|i| if i == zero { 0.0 } else { rng.gen_range(0.0..1.0) })
        .collect();
    let values = fiber_homeo(&y, r).ok()?;
    let r = if r == 0.0 { 0.0 } else { values.iter().product() };
    Some(AnalyticSample { stratum, values, r })
}

/// A random 0-coloured point of `|Δ_E(X)|`.
pub fn random_point_in_delta_e<R: Rng + ?Sized>(rng: &mut R, model: &StrataModel, e: ComponentSet) -> Option<ColouredPoint> {
    let z = random_sample(rng, model, 0.0, Some(e))?;
    Some(ColouredPoint {
        stratum: z.stratum,
        u: z.values,
        q: 0.0,
    })
}
