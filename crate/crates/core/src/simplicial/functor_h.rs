//! The left adjoint `H` of the forgetful functor from simplicial sets to
//! semi-simplicial sets.

use super::maps;
use super::sset::{Presheaf, SemiSimplicialSet, SimplicialSet};

/// A simplex of `H(S)`: the class of `(p, f, gamma)` with `f: [n] -> [p]`
/// surjective and `gamma` a `p`-simplex of `S`, represented by the triple in
/// which `f` has restricted growth.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub p: usize,
    pub f: Vec<usize>,
    pub gamma: usize,
}

/// `H(S)` truncated at level `top`.
pub fn functor_h(s: &SemiSimplicialSet, top: usize) -> (SimplicialSet, Vec<Vec<Triple>>) {
    let simplices: Vec<Vec<Triple>> = (0..=top)
        .map(|n| {
            let mut level = Vec::new();
            for f in maps::restricted_growth(n) {
                let p = *f.iter().max().expect("non-empty");
                if p > s.top() {
                    continue;
                }
                for gamma in 0..s.count(p) {
                    level.push(Triple { p, f: f.clone(), gamma });
                }
            }
            level.sort();
            level
        })
        .collect();
    let sset = SimplicialSet::from_listing(&simplices, |t, alpha| act(s, t, alpha));
    (sset, simplices)
}

/// Relabels `(p, f, gamma)` by `phi` with `phi ∘ f` of restricted growth;
/// the class condition `gamma = S(phi)(gamma')` gives
/// `gamma' = S(phi^-1)(gamma)`.
pub fn canonicalize(s: &SemiSimplicialSet, p: usize, f: &[usize], gamma: usize) -> Triple {
    let mut phi = vec![usize::MAX; p + 1];
    let mut next = 0;
    for &v in f {
        if phi[v] == usize::MAX {
            phi[v] = next;
            next += 1;
        }
    }
    let mut phi_inv = vec![0; p + 1];
    for (v, &w) in phi.iter().enumerate() {
        phi_inv[w] = v;
    }
    Triple {
        p,
        f: f.iter().map(|&v| phi[v]).collect(),
        gamma: s.apply(p, gamma, &phi_inv),
    }
}

/// `(p, f, gamma) ↦ (q, rank(f ∘ alpha), S(ι)(gamma))` with `ι: [q] -> [p]`
/// the monotone inclusion of the image, then canonicalized.
fn act(s: &SemiSimplicialSet, t: &Triple, alpha: &[usize]) -> Triple {
    let g = maps::compose(&t.f, alpha);
    let iota = maps::image(&g);
    let q = iota.len() - 1;
    let gamma = s.apply(t.p, t.gamma, &iota);
    canonicalize(s, q, &maps::rank_map(&g), gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::simplicial::dual::{build_dx, functor_f_of_c};
    use crate::simplicial::iso::find_isomorphism;

    #[test]
    fn h_of_point_is_point() {
        let (h, _) = functor_h(&SemiSimplicialSet::standard(0), 2);
        let d0 = SimplicialSet::standard(0, 2);
        assert!(find_isomorphism(&h, &d0).is_some());
    }

    #[test]
    fn h_of_interval_counts() {
        let (h, _) = functor_h(&SemiSimplicialSet::standard(1), 2);
        assert_eq!(h.count(2), 8);
        h.check_functoriality().unwrap();
        let d1 = SimplicialSet::standard(1, 2);
        assert!(find_isomorphism(&h, &d1).is_some());
    }

    /// Brute-force oracle: enumerate all triples and group them by the
    /// equivalence `(p, f, g) ~ (p, phi f, g')` with `g = S(phi) g'`.
    #[test]
    fn classes_match_brute_force() {
        let s = SemiSimplicialSet::standard(2);
        for n in 0..=3 {
            let mut classes: Vec<Vec<(usize, Vec<usize>, usize)>> = Vec::new();
            for p in 0..=n.min(s.top()) {
                for f in maps::surjections(n, p) {
                    for g in 0..s.count(p) {
                        let t = (p, f.clone(), g);
                        let found = classes.iter_mut().find(|c| {
                            let (p2, f2, g2) = &c[0];
                            *p2 == p
                                && maps::injections(p, p).into_iter().any(|phi| {
                                    maps::compose(&phi, &f) == *f2 && g == s.apply(p, *g2, &phi)
                                })
                        });
                        match found {
                            Some(c) => c.push(t),
                            None => classes.push(vec![t]),
                        }
                    }
                }
            }
            let (_, simplices) = functor_h(&s, 3);
            assert_eq!(simplices[n].len(), classes.len(), "level {n}");
        }
    }

    #[test]
    fn compar_on_node() {
        let m = examples::node();
        let (fc, _) = functor_f_of_c(&m);
        let d = build_dx(&m);
        let (h, _) = functor_h(&fc, d.top());
        assert!(find_isomorphism(&h, &d.sset).is_some());
    }
}
