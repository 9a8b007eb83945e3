//! Random valid models for property tests.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::motivic::GClass;
use crate::strata::{ComponentSet, RawModel, RawStratum, StrataModel};

/// Shape parameters for [`random_model`].
#[derive(Debug, Clone)]
pub struct ModelShape {
    pub max_components: usize,
    /// Upper bound on the number of strata created for one subset `J`.
    pub max_per_subset: usize,
    /// Probability that a subset with available faces receives no stratum.
    pub skip_probability: f64,
    pub with_classes: bool,
}

impl Default for ModelShape {
    fn default() -> Self {
        ModelShape {
            max_components: 5,
            max_per_subset: 2,
            skip_probability: 0.25,
            with_classes: true,
        }
    }
}

struct Partial {
    psi: Vec<ComponentSet>,
    faces: Vec<BTreeMap<usize, usize>>,
}

impl Partial {
    fn generization(&self, s: usize, sub: ComponentSet) -> usize {
        let psi = self.psi[s];
        if sub == psi {
            return s;
        }
        let c = psi.intersection(ComponentSet(!sub.0)).iter().next().expect("proper subset");
        self.generization(self.faces[s][&c], sub)
    }
}

/// A random valid model.
///
/// Strata are created subset by subset in order of increasing size; faces of a
/// new stratum are chosen among existing strata by a randomized backtracking
/// search that enforces commutation.
pub fn random_model<R: Rng + ?Sized>(rng: &mut R, shape: &ModelShape) -> StrataModel {
    let k = rng.gen_range(1..=shape.max_components.max(1));
    let all = ComponentSet::from_indices(0..k);
    let mut subsets: Vec<ComponentSet> = all.nonempty_subsets().collect();
    subsets.sort_by_key(|s| (s.len(), s.0));

    let mut partial = Partial {
        psi: Vec::new(),
        faces: Vec::new(),
    };
    for j in subsets {
        let count = if j.len() == 1 {
            rng.gen_range(1..=shape.max_per_subset.max(1))
        } else if rng.gen_bool(shape.skip_probability) {
            0
        } else {
            rng.gen_range(1..=shape.max_per_subset.max(1))
        };
        for _ in 0..count {
            if j.len() == 1 {
                partial.psi.push(j);
                partial.faces.push(BTreeMap::new());
                continue;
            }
            let comps = j.to_vec();
            let mut chosen = BTreeMap::new();
            if assign_faces(rng, &partial, j, &comps, &mut chosen) {
                partial.psi.push(j);
                partial.faces.push(chosen);
            }
        }
    }

    let names: Vec<String> = (0..k).map(|c| format!("C{c}")).collect();
    let ids: Vec<String> = (0..partial.psi.len()).map(|s| format!("s{s}")).collect();
    let strata = (0..partial.psi.len())
        .map(|s| RawStratum {
            id: ids[s].clone(),
            psi: partial.psi[s].iter().map(|c| names[c].clone()).collect(),
            faces: partial.faces[s]
                .iter()
                .map(|(&c, &f)| (names[c].clone(), ids[f].clone()))
                .collect(),
        })
        .collect();
    let classes = if shape.with_classes {
        ids.iter()
            .map(|id| {
                let class = GClass::from_terms((0..rng.gen_range(1..=3)).map(|_| (rng.gen_range(-1..=2), rng.gen_range(-2..=2))));
                (id.clone(), class.to_raw())
            })
            .collect()
    } else {
        BTreeMap::new()
    };
    let r = match rng.gen_range(0..3) {
        0 => None,
        1 => Some(0.0),
        _ => Some(rng.gen_range(0.05..0.95)),
    };
    let raw = RawModel {
        components: names,
        r,
        strata,
        classes,
    };
    StrataModel::validate(&raw).expect("generated model is valid")
}

/// Chooses `face(s, c)` for the remaining components in `todo`, keeping every
/// pair of chosen faces compatible on their common codimension-two face.
fn assign_faces<R: Rng + ?Sized>(
    rng: &mut R,
    partial: &Partial,
    j: ComponentSet,
    todo: &[usize],
    chosen: &mut BTreeMap<usize, usize>,
) -> bool {
    let Some((&c, rest)) = todo.split_first() else {
        return true;
    };
    let target = j.without(c);
    let mut candidates: Vec<usize> = (0..partial.psi.len()).filter(|&s| partial.psi[s] == target).collect();
    candidates.shuffle(rng);
    for f in candidates {
        let compatible = chosen.iter().all(|(&c2, &f2)| {
            let common = j.without(c).without(c2);
            common.is_empty() || partial.generization(f, common) == partial.generization(f2, common)
        });
        if !compatible {
            continue;
        }
        chosen.insert(c, f);
        if assign_faces(rng, partial, j, rest, chosen) {
            return true;
        }
        chosen.remove(&c);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_models_validate_and_vary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut max_dim = 0;
        for _ in 0..200 {
            let m = random_model(&mut rng, &ModelShape::default());
            max_dim = max_dim.max(m.max_psi());
            // Every component has a stratum.
            for c in 0..m.component_count() {
                assert!(!m.strata_with_psi(ComponentSet::singleton(c)).is_empty());
            }
        }
        assert!(max_dim >= 4);
    }
}
