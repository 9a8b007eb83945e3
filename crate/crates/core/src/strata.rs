//! Incidence data of a strictly semi-stable variety.
//!
//! A [`StrataModel`] lists the irreducible components, the strata (one per
//! connected component of each locally closed piece `X_J^o`), and for every
//! stratum its codimension-one faces. The face data is closed under
//! composition during validation, which yields the specialization order and
//! the generization map `(s, J') -> s'` used by every other module.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::motivic::GClass;

/// Maximum number of components a model may have (component sets are bitmasks).
pub const MAX_COMPONENTS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),
    #[error("stratum `{0}` has an empty psi")]
    EmptyPsi(String),
    #[error("unknown component `{0}`")]
    UnknownComponent(String),
    #[error("unknown stratum `{0}`")]
    UnknownStratum(String),
    #[error("stratum `{stratum}` lacks the face dropping component `{component}`")]
    MissingFace { stratum: String, component: String },
    #[error("face of `{stratum}` dropping `{component}` points to `{face}` whose psi is wrong")]
    FaceMismatch {
        stratum: String,
        component: String,
        face: String,
    },
    #[error("faces of `{stratum}` dropping `{first}` and `{second}` do not commute")]
    NonCommutingFaces {
        stratum: String,
        first: String,
        second: String,
    },
    #[error("component `{0}` is not the psi of any stratum")]
    MissingComponentStratum(String),
    #[error("valuation parameter r = {0} is outside [0, 1)")]
    InvalidR(f64),
    #[error("at most {MAX_COMPONENTS} components are supported")]
    TooManyComponents,
    #[error("invalid class: {0}")]
    InvalidClass(String),
}

/// A set of components, stored as a bitmask over component indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ComponentSet(pub u64);

impl ComponentSet {
    pub fn empty() -> Self {
        ComponentSet(0)
    }

    pub fn singleton(c: usize) -> Self {
        ComponentSet(1 << c)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        ComponentSet(it.into_iter().fold(0, |m, c| m | (1 << c)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, c: usize) -> bool {
        self.0 & (1 << c) != 0
    }

    pub fn is_subset(self, other: ComponentSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: ComponentSet) -> Self {
        ComponentSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ComponentSet) -> Self {
        ComponentSet(self.0 & other.0)
    }

    pub fn without(self, c: usize) -> Self {
        ComponentSet(self.0 & !(1 << c))
    }

    /// Component indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let c = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(c)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All non-empty subsets of `self`.
    pub fn nonempty_subsets(self) -> impl Iterator<Item = ComponentSet> {
        // Standard submask enumeration, descending.
        let full = self.0;
        let mut sub = full;
        let mut done = full == 0;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = sub;
            sub = (sub.wrapping_sub(1)) & full;
            if sub == 0 {
                done = true;
            }
            Some(ComponentSet(out))
        })
    }
}

impl fmt::Debug for ComponentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A stratum: the generic point of one connected component of `X_J^o`.
#[derive(Debug, Clone, PartialEq)]
pub struct Stratum {
    pub id: String,
    pub psi: ComponentSet,
    /// `faces[c]` is the stratum obtained by dropping component `c` from psi.
    pub faces: BTreeMap<usize, usize>,
}

/// Validated incidence data. Immutable after construction.
#[derive(Debug, Clone)]
pub struct StrataModel {
    components: Vec<String>,
    strata: Vec<Stratum>,
    r: Option<f64>,
    classes: BTreeMap<usize, GClass>,
    stratum_index: HashMap<String, usize>,
    component_index: HashMap<String, usize>,
    /// `(s, J') -> s'` for every non-empty `J' ⊆ psi(s)`.
    generization: HashMap<(usize, ComponentSet), usize>,
}

impl PartialEq for StrataModel {
    fn eq(&self, other: &Self) -> bool {
        self.to_raw() == other.to_raw()
    }
}

// ---------------------------------------------------------------------------
// Raw (serialized) form
// ---------------------------------------------------------------------------

/// A Laurent polynomial in `L` as it appears in model files: `{"L": {"1": 1, "0": -1}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawClass {
    #[serde(rename = "L")]
    pub coefficients: BTreeMap<String, i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawStratum {
    pub id: String,
    pub psi: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub faces: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawModel {
    pub components: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    pub strata: Vec<RawStratum>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub classes: BTreeMap<String, RawClass>,
}

impl RawModel {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

impl StrataModel {
    /// Validates a raw description, closing the codimension-one faces under
    /// composition.
    pub fn validate(raw: &RawModel) -> Result<Self, ModelError> {
        if raw.components.len() > MAX_COMPONENTS {
            return Err(ModelError::TooManyComponents);
        }
        let mut component_index = HashMap::new();
        for (i, c) in raw.components.iter().enumerate() {
            if component_index.insert(c.clone(), i).is_some() {
                return Err(ModelError::DuplicateId(c.clone()));
            }
        }
        if let Some(r) = raw.r {
            if !(0.0..1.0).contains(&r) {
                return Err(ModelError::InvalidR(r));
            }
        }

        let mut stratum_index = HashMap::new();
        for (i, s) in raw.strata.iter().enumerate() {
            if stratum_index.insert(s.id.clone(), i).is_some() {
                return Err(ModelError::DuplicateId(s.id.clone()));
            }
        }
        let comp = |name: &String| {
            component_index
                .get(name)
                .copied()
                .ok_or_else(|| ModelError::UnknownComponent(name.clone()))
        };

        let mut strata = Vec::with_capacity(raw.strata.len());
        for s in &raw.strata {
            if s.psi.is_empty() {
                return Err(ModelError::EmptyPsi(s.id.clone()));
            }
            let mut psi = ComponentSet::empty();
            for c in &s.psi {
                let ci = comp(c)?;
                if psi.contains(ci) {
                    return Err(ModelError::DuplicateId(c.clone()));
                }
                psi = psi.union(ComponentSet::singleton(ci));
            }
            let mut faces = BTreeMap::new();
            for (c, target) in &s.faces {
                let ci = comp(c)?;
                let ti = *stratum_index
                    .get(target)
                    .ok_or_else(|| ModelError::UnknownStratum(target.clone()))?;
                if !psi.contains(ci) {
                    return Err(ModelError::FaceMismatch {
                        stratum: s.id.clone(),
                        component: c.clone(),
                        face: target.clone(),
                    });
                }
                faces.insert(ci, ti);
            }
            strata.push(Stratum {
                id: s.id.clone(),
                psi,
                faces,
            });
        }

        // Face presence and psi consistency.
        for s in &strata {
            if s.psi.len() < 2 {
                continue;
            }
            for c in s.psi.iter() {
                let face = match s.faces.get(&c) {
                    Some(&f) => f,
                    None => {
                        return Err(ModelError::MissingFace {
                            stratum: s.id.clone(),
                            component: raw.components[c].clone(),
                        })
                    }
                };
                if strata[face].psi != s.psi.without(c) {
                    return Err(ModelError::FaceMismatch {
                        stratum: s.id.clone(),
                        component: raw.components[c].clone(),
                        face: strata[face].id.clone(),
                    });
                }
            }
        }
        // Singleton psi carries no faces.
        for s in &strata {
            if s.psi.len() == 1 && !s.faces.is_empty() {
                let (&c, &f) = s.faces.iter().next().expect("non-empty");
                return Err(ModelError::FaceMismatch {
                    stratum: s.id.clone(),
                    component: raw.components[c].clone(),
                    face: strata[f].id.clone(),
                });
            }
        }

        // Commutation of derived faces.
        for s in &strata {
            if s.psi.len() < 3 {
                continue;
            }
            let cs = s.psi.to_vec();
            for (i, &c) in cs.iter().enumerate() {
                for &c2 in &cs[i + 1..] {
                    let a = strata[s.faces[&c]].faces[&c2];
                    let b = strata[s.faces[&c2]].faces[&c];
                    if a != b {
                        return Err(ModelError::NonCommutingFaces {
                            stratum: s.id.clone(),
                            first: raw.components[c].clone(),
                            second: raw.components[c2].clone(),
                        });
                    }
                }
            }
        }

        for (ci, c) in raw.components.iter().enumerate() {
            if !strata.iter().any(|s| s.psi == ComponentSet::singleton(ci)) {
                return Err(ModelError::MissingComponentStratum(c.clone()));
            }
        }

        let mut classes = BTreeMap::new();
        for (sid, class) in &raw.classes {
            let si = *stratum_index
                .get(sid)
                .ok_or_else(|| ModelError::UnknownStratum(sid.clone()))?;
            classes.insert(si, GClass::from_raw(class)?);
        }

        let generization = close_faces(&strata);
        Ok(StrataModel {
            components: raw.components.clone(),
            strata,
            r: raw.r,
            classes,
            stratum_index,
            component_index,
            generization,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, crate::Error> {
        let raw = RawModel::from_json(text)?;
        Ok(Self::validate(&raw)?)
    }

    /// Serializable description; `validate(to_raw())` reproduces the model.
    pub fn to_raw(&self) -> RawModel {
        RawModel {
            components: self.components.clone(),
            r: self.r,
            strata: self
                .strata
                .iter()
                .map(|s| RawStratum {
                    id: s.id.clone(),
                    psi: s.psi.iter().map(|c| self.components[c].clone()).collect(),
                    faces: s
                        .faces
                        .iter()
                        .map(|(&c, &f)| (self.components[c].clone(), self.strata[f].id.clone()))
                        .collect(),
                })
                .collect(),
            classes: self
                .classes
                .iter()
                .map(|(&s, c)| (self.strata[s].id.clone(), c.to_raw()))
                .collect(),
        }
    }

    pub fn components(&self) -> &[String] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn all_components(&self) -> ComponentSet {
        ComponentSet::from_indices(0..self.components.len())
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn stratum(&self, idx: usize) -> &Stratum {
        &self.strata[idx]
    }

    pub fn r(&self) -> Option<f64> {
        self.r
    }

    pub fn classes(&self) -> &BTreeMap<usize, GClass> {
        &self.classes
    }

    pub fn class_of(&self, stratum: usize) -> Option<&GClass> {
        self.classes.get(&stratum)
    }

    pub fn stratum_index(&self, id: &str) -> Result<usize, ModelError> {
        self.stratum_index
            .get(id)
            .copied()
            .ok_or_else(|| ModelError::UnknownStratum(id.to_string()))
    }

    pub fn component_index(&self, name: &str) -> Result<usize, ModelError> {
        self.component_index
            .get(name)
            .copied()
            .ok_or_else(|| ModelError::UnknownComponent(name.to_string()))
    }

    /// Resolves component names into a set.
    pub fn component_set<S: AsRef<str>>(&self, names: &[S]) -> Result<ComponentSet, ModelError> {
        let mut set = ComponentSet::empty();
        for n in names {
            set = set.union(ComponentSet::singleton(self.component_index(n.as_ref())?));
        }
        Ok(set)
    }

    pub fn component_names(&self, set: ComponentSet) -> Vec<String> {
        set.iter().map(|c| self.components[c].clone()).collect()
    }

    /// Largest `|psi|` over all strata.
    pub fn max_psi(&self) -> usize {
        self.strata.iter().map(|s| s.psi.len()).max().unwrap_or(0)
    }

    /// The unique stratum `s'` with `psi(s') = sub` whose closure contains `s`.
    ///
    /// Panics if `sub` is empty or not contained in `psi(s)`.
    pub fn generization(&self, s: usize, sub: ComponentSet) -> usize {
        *self
            .generization
            .get(&(s, sub))
            .unwrap_or_else(|| panic!("{sub:?} is not a non-empty subset of psi({})", self.strata[s].id))
    }

    /// Specialization order: `a <= b` iff `b` lies in the closure of `a`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        let pa = self.strata[a].psi;
        pa.is_subset(self.strata[b].psi) && self.generization(b, pa) == a
    }

    /// All strata `s` with `psi(s) = set`.
    pub fn strata_with_psi(&self, set: ComponentSet) -> Vec<usize> {
        self.strata
            .iter()
            .enumerate()
            .filter(|(_, s)| s.psi == set)
            .map(|(i, _)| i)
            .collect()
    }

    /// Name-based variant of [`strata_with_psi`](Self::strata_with_psi).
    pub fn strata_with_psi_named<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<&Stratum>, ModelError> {
        let set = self.component_set(names)?;
        Ok(self
            .strata_with_psi(set)
            .into_iter()
            .map(|i| &self.strata[i])
            .collect())
    }

    /// The model of the union of the components in `e`: strata with
    /// `psi ⊆ e`, faces and classes carried over.
    pub fn restrict_to(&self, e: ComponentSet) -> Result<StrataModel, ModelError> {
        if e.is_empty() {
            return Err(ModelError::UnknownComponent(String::from("<empty set>")));
        }
        if !e.is_subset(self.all_components()) {
            return Err(ModelError::UnknownComponent(format!("{e:?}")));
        }
        let kept: Vec<usize> = (0..self.strata.len())
            .filter(|&s| self.strata[s].psi.is_subset(e))
            .collect();
        let raw = RawModel {
            components: self.component_names(e),
            r: self.r,
            strata: kept
                .iter()
                .map(|&s| {
                    let st = &self.strata[s];
                    RawStratum {
                        id: st.id.clone(),
                        psi: self.component_names(st.psi),
                        faces: st
                            .faces
                            .iter()
                            .map(|(&c, &f)| (self.components[c].clone(), self.strata[f].id.clone()))
                            .collect(),
                    }
                })
                .collect(),
            classes: kept
                .iter()
                .filter_map(|&s| self.classes.get(&s).map(|c| (self.strata[s].id.clone(), c.to_raw())))
                .collect(),
        };
        StrataModel::validate(&raw)
    }

    pub fn restrict_to_named<S: AsRef<str>>(&self, names: &[S]) -> Result<StrataModel, ModelError> {
        self.restrict_to(self.component_set(names)?)
    }
}

/// Closes codimension-one faces under composition.
fn close_faces(strata: &[Stratum]) -> HashMap<(usize, ComponentSet), usize> {
    let mut order: Vec<usize> = (0..strata.len()).collect();
    order.sort_by_key(|&s| strata[s].psi.len());
    let mut map = HashMap::new();
    for s in order {
        let psi = strata[s].psi;
        map.insert((s, psi), s);
        for sub in psi.nonempty_subsets() {
            if sub == psi {
                continue;
            }
            // Drop the smallest component not in `sub`; the face has smaller
            // psi, so its closure is already known.
            let c = psi.intersection(ComponentSet(!sub.0)).iter().next().expect("proper subset");
            let face = strata[s].faces[&c];
            let target = map[&(face, sub)];
            map.insert((s, sub), target);
        }
    }
    map
}
