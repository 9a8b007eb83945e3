//! The dual simplicial set `D(X)` of a model and the semi-simplicial set of
//! ordered strata.

use std::collections::HashMap;

use super::maps;
use super::sset::{Morphism, SemiSimplicialSet, SimplicialSet};
use crate::strata::{ComponentSet, ModelError, StrataModel};

/// An `n`-simplex `(s, f)` with `f: [n] -> psi(s)` surjective, stored as
/// component indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualSimplex {
    pub stratum: usize,
    pub f: Vec<usize>,
}

/// `D(X)` together with the meaning of each simplex.
#[derive(Clone, Debug)]
pub struct DualComplex {
    pub sset: SimplicialSet,
    pub simplices: Vec<Vec<DualSimplex>>,
}

impl DualComplex {
    pub fn top(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn index_of(&self, s: &DualSimplex) -> Option<usize> {
        self.simplices[s.f.len() - 1].iter().position(|t| t == s)
    }

    /// Stratum of each nondegenerate orbit at level `n`, in the order of
    /// their least representatives.
    pub fn cells(&self, n: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (x, s) in self.simplices[n].iter().enumerate() {
            if !self.sset.is_degenerate(n, x) && !out.contains(&s.stratum) {
                out.push(s.stratum);
            }
        }
        out
    }
}

/// `D(X)` stored up to level `max |psi|`, one above the top nondegenerate
/// level. Simplices are listed stratum by stratum, each with its surjections
/// in lexicographic order, so the least index in a swap orbit is the
/// lexicographically least representative.
pub fn build_dx(model: &StrataModel) -> DualComplex {
    build_dx_to(model, model.max_psi())
}

/// `D(X)` truncated at level `top`.
pub fn build_dx_to(model: &StrataModel, top: usize) -> DualComplex {
    let simplices: Vec<Vec<DualSimplex>> = (0..=top)
        .map(|n| {
            let mut level = Vec::new();
            for (s, st) in model.strata().iter().enumerate() {
                let psi = st.psi.to_vec();
                if psi.len() > n + 1 {
                    continue;
                }
                for g in maps::surjections(n, psi.len() - 1) {
                    level.push(DualSimplex {
                        stratum: s,
                        f: g.iter().map(|&k| psi[k]).collect(),
                    });
                }
            }
            level
        })
        .collect();
    let sset = SimplicialSet::from_listing(&simplices, |x, alpha| act(model, x, alpha));
    DualComplex { sset, simplices }
}

/// `(s, f) ↦ (s', f ∘ alpha)` with `s'` the generization of `s` to the image.
fn act(model: &StrataModel, x: &DualSimplex, alpha: &[usize]) -> DualSimplex {
    let f: Vec<usize> = alpha.iter().map(|&k| x.f[k]).collect();
    let image = ComponentSet::from_indices(f.iter().copied());
    DualSimplex {
        stratum: model.generization(x.stratum, image),
        f,
    }
}

/// `D(E) -> D(X)` for the union `E` of some components.
#[derive(Clone, Debug)]
pub struct SubComplex {
    pub restricted: StrataModel,
    pub complex: DualComplex,
    pub inclusion: Morphism,
    /// Membership of each simplex of `D(X)` in the image of `D(E)`.
    pub member: Vec<Vec<bool>>,
    /// Strata `x` whose cell meets `|D(E)|`, i.e. `psi(x) ∩ E` non-empty.
    pub neighbourhood_cells: Vec<usize>,
}

/// Builds `D(E)` from the restricted model and its inclusion into `dx`,
/// which must be `build_dx(model)`.
pub fn sub_complex_de(model: &StrataModel, dx: &DualComplex, e: ComponentSet) -> Result<SubComplex, ModelError> {
    let restricted = model.restrict_to(e)?;
    let complex = build_dx_to(&restricted, dx.top());
    let comp_map: Vec<usize> = restricted
        .components()
        .iter()
        .map(|c| model.component_index(c).expect("restricted component exists"))
        .collect();
    let strat_map: Vec<usize> = restricted
        .strata()
        .iter()
        .map(|s| model.stratum_index(&s.id).expect("restricted stratum exists"))
        .collect();
    let index: Vec<HashMap<&DualSimplex, usize>> = dx
        .simplices
        .iter()
        .map(|level| level.iter().enumerate().map(|(i, s)| (s, i)).collect())
        .collect();
    let maps = complex
        .simplices
        .iter()
        .enumerate()
        .map(|(n, level)| {
            level
                .iter()
                .map(|s| {
                    let image = DualSimplex {
                        stratum: strat_map[s.stratum],
                        f: s.f.iter().map(|&c| comp_map[c]).collect(),
                    };
                    index[n][&image]
                })
                .collect()
        })
        .collect();
    let inclusion = Morphism { maps };
    let member = dx
        .simplices
        .iter()
        .map(|level| level.iter().map(|s| model.stratum(s.stratum).psi.is_subset(e)).collect())
        .collect();
    let neighbourhood_cells = (0..model.strata().len())
        .filter(|&s| !model.stratum(s).psi.intersection(e).is_empty())
        .collect();
    Ok(SubComplex {
        restricted,
        complex,
        inclusion,
        member,
        neighbourhood_cells,
    })
}

/// Pairs `(s, b)` with `b: [n] -> psi(s)` a bijection, acted on by injective
/// maps.
pub fn functor_f_of_c(model: &StrataModel) -> (SemiSimplicialSet, Vec<Vec<DualSimplex>>) {
    let top = model.max_psi().saturating_sub(1);
    let simplices: Vec<Vec<DualSimplex>> = (0..=top)
        .map(|n| {
            let mut level = Vec::new();
            for (s, st) in model.strata().iter().enumerate() {
                let psi = st.psi.to_vec();
                if psi.len() != n + 1 {
                    continue;
                }
                for b in maps::injections(n, n) {
                    level.push(DualSimplex {
                        stratum: s,
                        f: b.iter().map(|&k| psi[k]).collect(),
                    });
                }
            }
            level
        })
        .collect();
    let sset = SemiSimplicialSet::from_listing(&simplices, |x, alpha| act(model, x, alpha));
    (sset, simplices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::simplicial::sset::Presheaf;

    fn cell_counts(d: &DualComplex) -> Vec<usize> {
        (0..=d.top()).map(|n| d.cells(n).len()).collect()
    }

    #[test]
    fn node_cells() {
        let d = build_dx(&examples::node());
        assert_eq!(cell_counts(&d), vec![2, 1, 0]);
        d.sset.check_functoriality().unwrap();
    }

    #[test]
    fn smooth_and_cycle_cells() {
        assert_eq!(cell_counts(&build_dx(&examples::smooth())), vec![1, 0]);
        assert_eq!(cell_counts(&build_dx(&examples::kodaira_cycle(3))), vec![3, 3, 0]);
        assert_eq!(cell_counts(&build_dx(&examples::triple_point())), vec![3, 3, 1, 0]);
    }

    #[test]
    fn brute_force_action() {
        // Cross-check the tabulated action against the defining formula for
        // every map between levels.
        let m = examples::triple_point();
        let d = build_dx(&m);
        for n in 0..=d.top() {
            for (x, sx) in d.simplices[n].iter().enumerate() {
                for k in 0..=d.top() {
                    for alpha in maps::all_maps(k, n) {
                        let y = d.sset.apply(n, x, &alpha);
                        let f: Vec<usize> = alpha.iter().map(|&i| sx.f[i]).collect();
                        let st = &d.simplices[k][y];
                        assert_eq!(st.f, f);
                        assert!(m.leq(st.stratum, sx.stratum));
                        assert_eq!(m.stratum(st.stratum).psi, ComponentSet::from_indices(f));
                    }
                }
            }
        }
    }

    #[test]
    fn sub_complex_examples() {
        let node = examples::node();
        let dx = build_dx(&node);
        let a = node.component_set(&["A"]).unwrap();
        let sub = sub_complex_de(&node, &dx, a).unwrap();
        assert_eq!(sub.complex.cells(0).len(), 1);
        assert!(sub.inclusion.is_natural(&sub.complex.sset, &dx.sset));
        assert!(sub.inclusion.is_injective());
        let ids: Vec<&str> = sub.neighbourhood_cells.iter().map(|&s| node.stratum(s).id.as_str()).collect();
        assert_eq!(ids, ["sA", "sAB"]);

        let all = sub_complex_de(&node, &dx, node.all_components()).unwrap();
        for n in 0..=dx.top() {
            assert_eq!(all.inclusion.maps[n], (0..dx.sset.count(n)).collect::<Vec<_>>());
        }

        let i2 = examples::kodaira_cycle(2);
        let dx = build_dx(&i2);
        let sub = sub_complex_de(&i2, &dx, i2.component_set(&["E0"]).unwrap()).unwrap();
        assert_eq!(sub.complex.cells(0).len(), 1);
        let ids: Vec<&str> = sub.neighbourhood_cells.iter().map(|&s| i2.stratum(s).id.as_str()).collect();
        assert_eq!(ids, ["E0", "p0", "p1"]);
    }

    #[test]
    fn f_of_c_counts() {
        let (s, _) = functor_f_of_c(&examples::node());
        assert_eq!((s.count(0), s.count(1)), (2, 2));
        s.check_functoriality().unwrap();
        let (s, _) = functor_f_of_c(&examples::smooth());
        assert_eq!(s.count(0), 1);
        let (s, _) = functor_f_of_c(&examples::kodaira_cycle(2));
        assert_eq!((s.count(0), s.count(1)), (2, 4));
    }
}
