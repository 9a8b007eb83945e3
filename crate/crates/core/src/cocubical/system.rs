//! Cocubical systems indexed by the non-empty subsets of `{0, ..., n}` and
//! their simple complex.

use std::collections::BTreeMap;

use super::complex::{ChainMap, FDComplex, Filtration, FiltrationKind};
use super::CocubicalError;
use crate::linalg::{q, QMatrix, Subspace};
use crate::strata::ComponentSet;

/// Largest supported `n` (index set `{0, ..., n}`).
pub const MAX_INDEX: usize = 10;

/// Complexes `C_L` for the non-empty `L ⊆ {0..n}` with face maps
/// `C_L -> C_{L ∪ {i}}`. All complexes share one degree range.
#[derive(Clone, Debug)]
pub struct CocubicalSystem {
    n: usize,
    complexes: BTreeMap<ComponentSet, FDComplex>,
    faces: BTreeMap<(ComponentSet, usize), ChainMap>,
}

/// Non-empty subsets of `{0..n}` ordered by size, then by bits.
pub fn index_subsets(n: usize) -> Vec<ComponentSet> {
    let mut out: Vec<ComponentSet> = ComponentSet::from_indices(0..=n).nonempty_subsets().collect();
    out.sort_by_key(|s| (s.len(), s.0));
    out
}

/// Number of elements of `l` below `i`.
pub fn epsilon(l: ComponentSet, i: usize) -> usize {
    l.iter().filter(|&j| j < i).count()
}

impl CocubicalSystem {
    /// Validates shapes, the chain-map property, commutation of every square
    /// of face maps and compatibility with filtrations.
    pub fn new(
        n: usize,
        complexes: BTreeMap<ComponentSet, FDComplex>,
        faces: BTreeMap<(ComponentSet, usize), ChainMap>,
    ) -> Result<Self, CocubicalError> {
        if n > MAX_INDEX {
            return Err(CocubicalError::ShapeMismatch(format!("index set larger than {}", MAX_INDEX + 1)));
        }
        let subsets = index_subsets(n);
        if complexes.len() != subsets.len() || subsets.iter().any(|l| !complexes.contains_key(l)) {
            return Err(CocubicalError::ShapeMismatch("need one complex per non-empty subset".into()));
        }
        let first = &complexes[&subsets[0]];
        let has_f = first.f().is_some();
        let has_w = first.w().is_some();
        for c in complexes.values() {
            if c.start() != first.start() || c.len() != first.len() {
                return Err(CocubicalError::ShapeMismatch("complexes have different degree ranges".into()));
            }
            if c.f().is_some() != has_f || c.w().is_some() != has_w {
                return Err(CocubicalError::ShapeMismatch("filtrations present on some complexes only".into()));
            }
        }
        let expected = subsets
            .iter()
            .flat_map(|&l| (0..=n).filter(move |&i| !l.contains(i)).map(move |i| (l, i)))
            .count();
        if faces.len() != expected {
            return Err(CocubicalError::ShapeMismatch(format!("expected {expected} face maps, got {}", faces.len())));
        }
        for (&(l, i), f) in &faces {
            if l.is_empty() || l.contains(i) || i > n || !complexes.contains_key(&l) {
                return Err(CocubicalError::ShapeMismatch(format!("unexpected face map {l:?} + {i}")));
            }
            let (src, tgt) = (&complexes[&l], &complexes[&l.union(ComponentSet::singleton(i))]);
            f.check(src, tgt)?;
            if !f.is_filtered(src, tgt) {
                return Err(CocubicalError::NotFiltered(format!("face map {l:?} + {i}")));
            }
        }
        let sys = CocubicalSystem { n, complexes, faces };
        for &l in &subsets {
            for i in 0..=n {
                for j in i + 1..=n {
                    if l.contains(i) || l.contains(j) {
                        continue;
                    }
                    let via_i = sys.face(l.union(ComponentSet::singleton(i)), j).compose(sys.face(l, i));
                    let via_j = sys.face(l.union(ComponentSet::singleton(j)), i).compose(sys.face(l, j));
                    if via_i != via_j {
                        return Err(CocubicalError::NotFunctorial(format!("{l:?} + {{{i}, {j}}}")));
                    }
                }
            }
        }
        Ok(sys)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn complex(&self, l: ComponentSet) -> &FDComplex {
        &self.complexes[&l]
    }

    pub fn complexes(&self) -> &BTreeMap<ComponentSet, FDComplex> {
        &self.complexes
    }

    pub fn face(&self, l: ComponentSet, i: usize) -> &ChainMap {
        &self.faces[&(l, i)]
    }

    pub fn start(&self) -> i64 {
        self.complexes.values().next().expect("non-empty").start()
    }

    pub fn len(&self) -> usize {
        self.complexes.values().next().expect("non-empty").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `δ^L_{L'}` for `L ⊆ L'`, composed from face maps in increasing order.
    pub fn delta(&self, l: ComponentSet, target: ComponentSet) -> Result<ChainMap, CocubicalError> {
        if !l.is_subset(target) || l.is_empty() {
            return Err(CocubicalError::ShapeMismatch(format!("{l:?} is not a non-empty subset of {target:?}")));
        }
        let mut map = ChainMap::identity(self.complex(l));
        let mut current = l;
        for i in target.intersection(ComponentSet(!l.0)).iter() {
            map = self.face(current, i).compose(&map);
            current = current.union(ComponentSet::singleton(i));
        }
        Ok(map)
    }

    /// Total degrees of the simple complex and, per total degree, the blocks
    /// `(L, p)` with their offsets.
    fn layout(&self) -> (i64, Vec<Vec<(ComponentSet, i64, usize)>>, Vec<usize>) {
        let start = self.start();
        let len = self.len() + self.n;
        let subsets = index_subsets(self.n);
        let mut blocks = Vec::with_capacity(len);
        let mut dims = Vec::with_capacity(len);
        for k in 0..len {
            let total = start + k as i64;
            let mut offset = 0;
            let mut row = Vec::new();
            for &l in &subsets {
                let p = total - (l.len() as i64 - 1);
                let c = self.complex(l);
                if c.degrees().contains(&p) {
                    row.push((l, p, offset));
                    offset += c.dim(p);
                }
            }
            blocks.push(row);
            dims.push(offset);
        }
        (start, blocks, dims)
    }
}

/// The total complex of the double complex `A^{p,q} = ⊕_{|L|=q+1} C^p_L`
/// with vertical differential `Σ_i (-1)^{ε(L,i)+p+1} δ^L_{L∪{i}}`, and with
/// `F^r = ⊕ F^r C^p_L`, `W_r = ⊕ W_{r+q} C^p_L`.
pub fn simple_complex(sys: &CocubicalSystem) -> FDComplex {
    let (start, blocks, dims) = sys.layout();
    let mut d = Vec::new();
    for k in 0..dims.len().saturating_sub(1) {
        let mut m = QMatrix::zeros(dims[k + 1], dims[k]);
        let find = |l: ComponentSet, p: i64| {
            blocks[k + 1]
                .iter()
                .find(|&&(l2, p2, _)| l2 == l && p2 == p)
                .map(|&(_, _, off)| off)
        };
        for &(l, p, col) in &blocks[k] {
            let c = sys.complex(l);
            if let Some(row) = find(l, p + 1) {
                m.set_block(row, col, &c.differential(p));
            }
            for i in (0..=sys.n).filter(|&i| !l.contains(i)) {
                let target = l.union(ComponentSet::singleton(i));
                let row = find(target, p).expect("same p, one more index");
                let sign = if (epsilon(l, i) as i64 + p + 1).rem_euclid(2) == 0 { q(1) } else { q(-1) };
                let face = sys.face(l, i).at(p).expect("degree in range");
                m.set_block(row, col, &face.scale(&sign));
            }
        }
        d.push(m);
    }
    let mut total = FDComplex::new(start, dims.clone(), d).expect("the sign rule makes d square to zero");

    for kind in [FiltrationKind::Decreasing, FiltrationKind::Increasing] {
        let parts: Vec<&Filtration> = sys.complexes.values().filter_map(|c| c.filtration(kind)).collect();
        if parts.is_empty() {
            continue;
        }
        let shift = |l: ComponentSet| match kind {
            FiltrationKind::Decreasing => 0,
            FiltrationKind::Increasing => l.len() as i64 - 1,
        };
        let lo = sys
            .complexes
            .iter()
            .map(|(&l, c)| c.filtration(kind).expect("checked").lo - shift(l))
            .min()
            .expect("non-empty");
        let hi = sys
            .complexes
            .iter()
            .map(|(&l, c)| c.filtration(kind).expect("checked").hi() - shift(l))
            .max()
            .expect("non-empty");
        let spaces = blocks
            .iter()
            .map(|row| {
                (lo..=hi)
                    .map(|r| {
                        let summands: Vec<Subspace> = row
                            .iter()
                            .map(|&(l, p, _)| {
                                let c = sys.complex(l);
                                let k = (p - c.start()) as usize;
                                c.filtration(kind).expect("checked").at(k, r + shift(l))
                            })
                            .collect();
                        Subspace::direct_sum(&summands)
                    })
                    .collect()
            })
            .collect();
        total = total
            .with_filtration(Filtration { kind, lo, spaces })
            .expect("filtered face maps give a filtered total differential");
    }
    total
}

/// A family of chain maps `f_L: C_L -> D_L` commuting with the face maps.
#[derive(Clone, Debug)]
pub struct SystemMorphism {
    pub maps: BTreeMap<ComponentSet, ChainMap>,
}

impl SystemMorphism {
    pub fn identity(sys: &CocubicalSystem) -> Self {
        SystemMorphism {
            maps: sys.complexes.iter().map(|(&l, c)| (l, ChainMap::identity(c))).collect(),
        }
    }

    pub fn check(&self, src: &CocubicalSystem, tgt: &CocubicalSystem) -> Result<(), CocubicalError> {
        if src.n != tgt.n || self.maps.len() != src.complexes.len() {
            return Err(CocubicalError::ShapeMismatch("systems have different index sets".into()));
        }
        for (&l, f) in &self.maps {
            f.check(src.complex(l), tgt.complex(l))?;
            for i in (0..=src.n).filter(|&i| !l.contains(i)) {
                let target = l.union(ComponentSet::singleton(i));
                let lhs = tgt.face(l, i).compose(f);
                let rhs = self.maps[&target].compose(src.face(l, i));
                if lhs != rhs {
                    return Err(CocubicalError::NotFunctorial(format!("morphism at {l:?} + {i}")));
                }
            }
        }
        Ok(())
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &SystemMorphism) -> SystemMorphism {
        SystemMorphism {
            maps: self.maps.iter().map(|(l, g)| (*l, g.compose(&first.maps[l]))).collect(),
        }
    }

    /// The induced map of simple complexes: block diagonal.
    pub fn simple_map(&self, src: &CocubicalSystem, tgt: &CocubicalSystem) -> Result<ChainMap, CocubicalError> {
        self.check(src, tgt)?;
        let (start, src_blocks, src_dims) = src.layout();
        let (_, tgt_blocks, tgt_dims) = tgt.layout();
        let maps = (0..src_dims.len())
            .map(|k| {
                let mut m = QMatrix::zeros(tgt_dims[k], src_dims[k]);
                for (&(l, p, col), &(_, _, row)) in src_blocks[k].iter().zip(&tgt_blocks[k]) {
                    m.set_block(row, col, self.maps[&l].at(p).expect("degree in range"));
                }
                m
            })
            .collect();
        Ok(ChainMap { start, maps })
    }
}

/// The system with `C_L = c` for every `L` and every face map `phi`.
pub fn constant_system(n: usize, c: &FDComplex, phi: &ChainMap) -> Result<CocubicalSystem, CocubicalError> {
    let subsets = index_subsets(n);
    let complexes = subsets.iter().map(|&l| (l, c.clone())).collect();
    let faces = subsets
        .iter()
        .flat_map(|&l| (0..=n).filter(move |&i| !l.contains(i)).map(move |i| ((l, i), phi.clone())))
        .collect();
    CocubicalSystem::new(n, complexes, faces)
}
