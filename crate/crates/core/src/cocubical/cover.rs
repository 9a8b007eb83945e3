//! Closed covers of finite simplicial complexes and the cocubical system of
//! cochains on the intersections.

use std::collections::{BTreeMap, BTreeSet};

use super::complex::{ChainMap, FDComplex};
use super::system::{index_subsets, simple_complex, CocubicalSystem};
use super::CocubicalError;
use crate::linalg::{q, QMatrix};
use crate::strata::ComponentSet;

/// A finite abstract simplicial complex: non-empty vertex sets closed under
/// taking non-empty subsets. Simplices are sorted by dimension, then
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    simplices: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// The closure of the given simplices under taking faces.
    pub fn closure<I: IntoIterator<Item = Vec<usize>>>(generators: I) -> Self {
        let mut all = BTreeSet::new();
        for mut g in generators {
            g.sort_unstable();
            g.dedup();
            if g.is_empty() {
                continue;
            }
            let k = g.len();
            for mask in 1u64..(1 << k) {
                all.insert((0..k).filter(|&i| mask >> i & 1 == 1).map(|i| g[i]).collect::<Vec<_>>());
            }
        }
        let mut simplices: Vec<Vec<usize>> = all.into_iter().collect();
        simplices.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        SimplicialComplex { simplices }
    }

    /// Checks that `simplices` is closed under faces.
    pub fn new(simplices: Vec<Vec<usize>>) -> Result<Self, CocubicalError> {
        let closed = SimplicialComplex::closure(simplices.clone());
        let given: BTreeSet<Vec<usize>> = simplices
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s
            })
            .collect();
        if closed.simplices.len() != given.len() || closed.simplices.iter().any(|s| !given.contains(s)) {
            return Err(CocubicalError::NotACover("simplex list is not closed under faces".into()));
        }
        Ok(closed)
    }

    pub fn empty() -> Self {
        SimplicialComplex { simplices: Vec::new() }
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.simplices.binary_search_by(|t| (t.len(), t.as_slice()).cmp(&(s.len(), s))).is_ok()
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.simplices.iter().all(|s| other.contains(s))
    }

    /// `-1` for the empty complex.
    pub fn dimension(&self) -> i64 {
        self.simplices.last().map_or(-1, |s| s.len() as i64 - 1)
    }

    pub fn of_dim(&self, p: usize) -> Vec<&Vec<usize>> {
        self.simplices.iter().filter(|s| s.len() == p + 1).collect()
    }

    pub fn intersection(&self, other: &SimplicialComplex) -> SimplicialComplex {
        SimplicialComplex {
            simplices: self.simplices.iter().filter(|s| other.contains(s)).cloned().collect(),
        }
    }

    /// Ordered cochains with `(δf)(σ) = Σ_j (-1)^j f(σ without its j-th
    /// vertex)`, on degrees `0..=top`.
    pub fn cochains(&self, top: usize) -> FDComplex {
        let levels: Vec<Vec<&Vec<usize>>> = (0..=top).map(|p| self.of_dim(p)).collect();
        let dims: Vec<usize> = levels.iter().map(Vec::len).collect();
        let d = (0..top)
            .map(|p| {
                let index: BTreeMap<&Vec<usize>, usize> = levels[p].iter().enumerate().map(|(i, s)| (*s, i)).collect();
                let mut m = QMatrix::zeros(dims[p + 1], dims[p]);
                for (row, s) in levels[p + 1].iter().enumerate() {
                    for j in 0..s.len() {
                        let mut face = (*s).clone();
                        face.remove(j);
                        let sign = if j % 2 == 0 { 1 } else { -1 };
                        m.set(row, index[&face], q(sign));
                    }
                }
                m
            })
            .collect();
        FDComplex::new(0, dims, d).expect("cochains form a complex")
    }

    /// Restriction of cochains on `self` to the subcomplex `sub`.
    pub fn restriction(&self, sub: &SimplicialComplex, top: usize) -> ChainMap {
        let maps = (0..=top)
            .map(|p| {
                let src = self.of_dim(p);
                let tgt = sub.of_dim(p);
                let mut m = QMatrix::zeros(tgt.len(), src.len());
                for (row, s) in tgt.iter().enumerate() {
                    let col = src.iter().position(|t| t == s).expect("subcomplex");
                    m.set(row, col, q(1));
                }
                m
            })
            .collect();
        ChainMap { start: 0, maps }
    }
}

/// The cocubical system of a cover with its augmentation.
#[derive(Clone, Debug)]
pub struct AdjunctionSystem {
    pub system: CocubicalSystem,
    /// Cochains of the covered complex, padded to the degrees of `simple`.
    pub cochains: FDComplex,
    pub simple: FDComplex,
    /// Restriction to the pieces, landing in the `|L| = 1` columns.
    pub augmentation: ChainMap,
}

/// `C_L` = cochains of `∩_{i ∈ L} K_i`, face maps = restrictions.
pub fn adjunction_system(k: &SimplicialComplex, pieces: &[SimplicialComplex]) -> Result<AdjunctionSystem, CocubicalError> {
    if pieces.is_empty() {
        return Err(CocubicalError::NotACover("no pieces".into()));
    }
    if let Some(i) = pieces.iter().position(|p| !p.is_subcomplex_of(k)) {
        return Err(CocubicalError::NotACover(format!("piece {i} is not a subcomplex")));
    }
    if let Some(s) = k.simplices.iter().find(|s| !pieces.iter().any(|p| p.contains(s))) {
        return Err(CocubicalError::NotACover(format!("simplex {s:?} is not covered")));
    }
    let n = pieces.len() - 1;
    let top = k.dimension().max(0) as usize;
    let parts: BTreeMap<ComponentSet, SimplicialComplex> = index_subsets(n)
        .into_iter()
        .map(|l| {
            let mut it = l.iter();
            let first = pieces[it.next().expect("non-empty")].clone();
            (l, it.fold(first, |acc, i| acc.intersection(&pieces[i])))
        })
        .collect();
    let complexes = parts.iter().map(|(&l, p)| (l, p.cochains(top))).collect();
    let faces = parts
        .iter()
        .flat_map(|(&l, p)| {
            let parts = &parts;
            (0..=n).filter(move |&i| !l.contains(i)).map(move |i| {
                let target = &parts[&l.union(ComponentSet::singleton(i))];
                ((l, i), p.restriction(target, top))
            })
        })
        .collect();
    let system = CocubicalSystem::new(n, complexes, faces)?;
    let simple = simple_complex(&system);
    let cochains = k.cochains(top).padded(simple.start(), simple.len())?;

    let restrictions: Vec<ChainMap> = pieces.iter().map(|p| k.restriction(p, top)).collect();
    let mut maps = Vec::new();
    for (deg, &dim) in simple.dims().iter().enumerate() {
        let mut m = QMatrix::zeros(dim, cochains.dims()[deg]);
        if deg <= top {
            let mut offset = 0;
            for r in &restrictions {
                m.set_block(offset, 0, &r.maps[deg]);
                offset += r.maps[deg].rows();
            }
        }
        maps.push(m);
    }
    let augmentation = ChainMap { start: 0, maps };
    augmentation.check(&cochains, &simple)?;
    Ok(AdjunctionSystem {
        system,
        cochains,
        simple,
        augmentation,
    })
}

/// The cycle graph on `n` vertices.
pub fn cycle(n: usize) -> SimplicialComplex {
    SimplicialComplex::closure((0..n).map(|i| vec![i, (i + 1) % n]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocubical::quasi_iso_check;

    #[test]
    fn closure_and_cochains() {
        let k = SimplicialComplex::closure([vec![2, 0, 1]]);
        assert_eq!(k.len(), 7);
        assert_eq!(k.dimension(), 2);
        assert_eq!(k.cochains(2).cohomology(), vec![1, 0, 0]);
        assert_eq!(cycle(4).cochains(1).cohomology(), vec![1, 1]);
        assert!(SimplicialComplex::new(vec![vec![0, 1]]).is_err());
        assert!(SimplicialComplex::new(vec![vec![0], vec![1], vec![1, 0]]).is_ok());
    }

    #[test]
    fn two_points() {
        let k = SimplicialComplex::closure([vec![0], vec![1]]);
        let pieces = [SimplicialComplex::closure([vec![0]]), SimplicialComplex::closure([vec![1]])];
        let a = adjunction_system(&k, &pieces).unwrap();
        assert_eq!(a.simple.dims()[0], 2);
        assert_eq!(a.simple.cohomology(), vec![2, 0]);
        let v = quasi_iso_check(&a.augmentation, &a.cochains, &a.simple).unwrap();
        assert!(v.iter().all(|d| d.iso));
    }

    #[test]
    fn circle_by_two_arcs() {
        let k = cycle(4);
        let pieces = [
            SimplicialComplex::closure([vec![0, 1], vec![1, 2]]),
            SimplicialComplex::closure([vec![2, 3], vec![0, 3]]),
        ];
        let a = adjunction_system(&k, &pieces).unwrap();
        assert_eq!(a.simple.cohomology(), vec![1, 1, 0]);
        let v = quasi_iso_check(&a.augmentation, &a.cochains, &a.simple).unwrap();
        assert!(v.iter().all(|d| d.iso));
        assert_eq!(v[1].rank, 1);
    }

    #[test]
    fn self_cover_is_identity() {
        let k = cycle(3);
        let a = adjunction_system(&k, &[k.clone()]).unwrap();
        assert_eq!(a.simple, k.cochains(1));
        assert_eq!(a.augmentation, ChainMap::identity(&a.simple));
    }

    #[test]
    fn rejects_non_covers() {
        let k = cycle(4);
        let arc = SimplicialComplex::closure([vec![0, 1]]);
        assert!(matches!(adjunction_system(&k, &[arc]), Err(CocubicalError::NotACover(_))));
        let outside = SimplicialComplex::closure([vec![7]]);
        assert!(matches!(adjunction_system(&k, &[k.clone(), outside]), Err(CocubicalError::NotACover(_))));
        assert!(adjunction_system(&k, &[]).is_err());
    }
}
