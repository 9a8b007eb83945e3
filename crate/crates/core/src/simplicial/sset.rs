//! Finite truncated (semi-)simplicial sets given by generator tables.

use std::collections::VecDeque;

use super::maps::{self, Op};

/// Common view of simplicial and semi-simplicial sets: levels `0..=top`,
/// simplices `0..count(n)` and generator actions.
pub trait Presheaf {
    fn top(&self) -> usize;
    fn count(&self, n: usize) -> usize;
    /// Generators acting on level `n`, in a fixed order.
    fn generators(&self, n: usize) -> Vec<Op>;
    fn act(&self, n: usize, op: Op, x: usize) -> usize;

    /// Action of an arbitrary map `alpha: [m] -> [n]` (which must be
    /// admissible for this kind of presheaf).
    fn apply(&self, n: usize, x: usize, alpha: &[usize]) -> usize {
        let mut level = n;
        let mut x = x;
        for op in maps::factor(alpha, n) {
            x = self.act(level, op, x);
            level = op.target_level(level);
        }
        x
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Level {
    count: usize,
    /// `faces[i][x]`, empty at level 0.
    faces: Vec<Vec<usize>>,
    /// `degeneracies[i][x]`, empty at the top level.
    degeneracies: Vec<Vec<usize>>,
    swaps: Vec<Vec<usize>>,
    degenerate: Vec<bool>,
}

/// A finite unoriented simplicial set truncated at level `top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSet {
    levels: Vec<Level>,
}

impl SimplicialSet {
    /// Tabulates generator actions from an action of arbitrary maps.
    ///
    /// `action(n, x, alpha)` must return the image of simplex `x` of level
    /// `n` under `alpha: [m] -> [n]`.
    pub fn from_action<F>(counts: &[usize], action: F) -> Self
    where
        F: Fn(usize, usize, &[usize]) -> usize,
    {
        let top = counts.len() - 1;
        let mut levels = Vec::with_capacity(top + 1);
        for (n, &count) in counts.iter().enumerate() {
            let table = |op: Op| -> Vec<usize> {
                let alpha = op.ordinal_map(n);
                (0..count).map(|x| action(n, x, &alpha)).collect()
            };
            let faces = if n == 0 { Vec::new() } else { (0..=n).map(|i| table(Op::Face(i))).collect() };
            let degeneracies = if n == top {
                Vec::new()
            } else {
                (0..=n).map(|i| table(Op::Degeneracy(i))).collect()
            };
            let swaps = (0..n).map(|i| table(Op::Swap(i))).collect();
            levels.push(Level {
                count,
                faces,
                degeneracies,
                swaps,
                degenerate: vec![false; count],
            });
        }
        let mut s = SimplicialSet { levels };
        s.mark_degenerate();
        s
    }

    /// Degenerate simplices: images of degeneracies closed under swaps.
    fn mark_degenerate(&mut self) {
        for n in 1..self.levels.len() {
            let mut flags = vec![false; self.levels[n].count];
            let mut queue = VecDeque::new();
            for table in &self.levels[n - 1].degeneracies {
                for &y in table {
                    if !flags[y] {
                        flags[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            while let Some(y) = queue.pop_front() {
                for table in &self.levels[n].swaps {
                    let z = table[y];
                    if !flags[z] {
                        flags[z] = true;
                        queue.push_back(z);
                    }
                }
            }
            self.levels[n].degenerate = flags;
        }
    }

    pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
        self.levels[n].faces[i][x]
    }

    pub fn degeneracy(&self, n: usize, i: usize, x: usize) -> usize {
        self.levels[n].degeneracies[i][x]
    }

    pub fn swap(&self, n: usize, i: usize, x: usize) -> usize {
        self.levels[n].swaps[i][x]
    }

    pub fn is_degenerate(&self, n: usize, x: usize) -> bool {
        self.levels[n].degenerate[x]
    }

    pub fn nondegenerate(&self, n: usize) -> Vec<usize> {
        (0..self.count(n)).filter(|&x| !self.is_degenerate(n, x)).collect()
    }

    /// The semi-simplicial set obtained by forgetting non-injective maps.
    pub fn forget_degeneracies(&self) -> SemiSimplicialSet {
        SemiSimplicialSet {
            levels: self
                .levels
                .iter()
                .map(|l| SemiLevel {
                    count: l.count,
                    faces: l.faces.clone(),
                    swaps: l.swaps.clone(),
                })
                .collect(),
        }
    }

    /// Checks the defining relations on generators (hence functoriality) by
    /// comparing the action along all factorizations of every map between
    /// small ordinals against composites of generators.
    pub fn check_functoriality(&self) -> Result<(), String> {
        check_relations(self, true)
    }

    /// The standard simplex `Δ[k]` (all maps `[m] -> [k]`), truncated.
    pub fn standard(k: usize, top: usize) -> Self {
        let simplices: Vec<Vec<Vec<usize>>> = (0..=top).map(|m| maps::all_maps(m, k)).collect();
        Self::from_listing(&simplices, |x, alpha| maps::compose(x, alpha))
    }

    /// Builds a simplicial set from an explicit listing of the simplices of
    /// each level and the action `(simplex, alpha) -> simplex`.
    pub fn from_listing<T, F>(simplices: &[Vec<T>], action: F) -> Self
    where
        T: std::hash::Hash + Eq + Clone,
        F: Fn(&T, &[usize]) -> T,
    {
        let index: Vec<std::collections::HashMap<T, usize>> = simplices
            .iter()
            .map(|level| level.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect())
            .collect();
        let counts: Vec<usize> = simplices.iter().map(Vec::len).collect();
        SimplicialSet::from_action(&counts, |n, x, alpha| {
            let m = alpha.len() - 1;
            let image = action(&simplices[n][x], alpha);
            *index[m].get(&image).expect("action stays within the listing")
        })
    }
}

impl Presheaf for SimplicialSet {
    fn top(&self) -> usize {
        self.levels.len() - 1
    }

    fn count(&self, n: usize) -> usize {
        self.levels[n].count
    }

    fn generators(&self, n: usize) -> Vec<Op> {
        let mut ops = Vec::new();
        if n > 0 {
            ops.extend((0..=n).map(Op::Face));
        }
        if n < self.top() {
            ops.extend((0..=n).map(Op::Degeneracy));
        }
        ops.extend((0..n).map(Op::Swap));
        ops
    }

    fn act(&self, n: usize, op: Op, x: usize) -> usize {
        match op {
            Op::Face(i) => self.face(n, i, x),
            Op::Degeneracy(i) => self.degeneracy(n, i, x),
            Op::Swap(i) => self.swap(n, i, x),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct SemiLevel {
    count: usize,
    faces: Vec<Vec<usize>>,
    swaps: Vec<Vec<usize>>,
}

/// A finite presheaf on finite ordinals with injective maps, truncated at
/// level `top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiSimplicialSet {
    levels: Vec<SemiLevel>,
}

impl SemiSimplicialSet {
    /// Tabulates generator actions from an action of injective maps.
    pub fn from_action<F>(counts: &[usize], action: F) -> Self
    where
        F: Fn(usize, usize, &[usize]) -> usize,
    {
        let levels = counts
            .iter()
            .enumerate()
            .map(|(n, &count)| {
                let table = |op: Op| -> Vec<usize> {
                    let alpha = op.ordinal_map(n);
                    (0..count).map(|x| action(n, x, &alpha)).collect()
                };
                SemiLevel {
                    count,
                    faces: if n == 0 { Vec::new() } else { (0..=n).map(|i| table(Op::Face(i))).collect() },
                    swaps: (0..n).map(|i| table(Op::Swap(i))).collect(),
                }
            })
            .collect();
        SemiSimplicialSet { levels }
    }

    pub fn from_listing<T, F>(simplices: &[Vec<T>], action: F) -> Self
    where
        T: std::hash::Hash + Eq + Clone,
        F: Fn(&T, &[usize]) -> T,
    {
        let index: Vec<std::collections::HashMap<T, usize>> = simplices
            .iter()
            .map(|level| level.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect())
            .collect();
        let counts: Vec<usize> = simplices.iter().map(Vec::len).collect();
        SemiSimplicialSet::from_action(&counts, |n, x, alpha| {
            let m = alpha.len() - 1;
            let image = action(&simplices[n][x], alpha);
            *index[m].get(&image).expect("action stays within the listing")
        })
    }

    /// `Δ̃[k]`: injective maps `[m] -> [k]`.
    pub fn standard(k: usize) -> Self {
        let simplices: Vec<Vec<Vec<usize>>> = (0..=k).map(|m| maps::injections(m, k)).collect();
        Self::from_listing(&simplices, |x, alpha| maps::compose(x, alpha))
    }

    pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
        self.levels[n].faces[i][x]
    }

    pub fn swap(&self, n: usize, i: usize, x: usize) -> usize {
        self.levels[n].swaps[i][x]
    }

    /// Drops levels above `top`, or appends empty levels up to it.
    pub fn with_top(&self, top: usize) -> Self {
        let mut levels: Vec<SemiLevel> = self.levels.iter().take(top + 1).cloned().collect();
        while levels.len() <= top {
            let n = levels.len();
            levels.push(SemiLevel {
                count: 0,
                faces: vec![Vec::new(); n + 1],
                swaps: vec![Vec::new(); n],
            });
        }
        SemiSimplicialSet { levels }
    }

    pub fn check_functoriality(&self) -> Result<(), String> {
        check_relations(self, false)
    }
}

impl Presheaf for SemiSimplicialSet {
    fn top(&self) -> usize {
        self.levels.len() - 1
    }

    fn count(&self, n: usize) -> usize {
        self.levels[n].count
    }

    fn generators(&self, n: usize) -> Vec<Op> {
        let mut ops: Vec<Op> = if n > 0 { (0..=n).map(Op::Face).collect() } else { Vec::new() };
        ops.extend((0..n).map(Op::Swap));
        ops
    }

    fn act(&self, n: usize, op: Op, x: usize) -> usize {
        match op {
            Op::Face(i) => self.face(n, i, x),
            Op::Swap(i) => self.swap(n, i, x),
            Op::Degeneracy(_) => panic!("semi-simplicial sets have no degeneracies"),
        }
    }
}

/// For every pair of admissible maps `g: [l] -> [m]`, `f: [m] -> [n]` with
/// `l, m, n <= top`, checks `X(f ∘ g) = X(g) ∘ X(f)`, plus identities.
fn check_relations<P: Presheaf>(p: &P, all_maps: bool) -> Result<(), String> {
    let top = p.top().min(2);
    let admissible = |m: usize, n: usize| {
        if all_maps {
            maps::all_maps(m, n)
        } else {
            maps::injections(m, n)
        }
    };
    for n in 0..=top {
        for x in 0..p.count(n) {
            if p.apply(n, x, &maps::identity(n)) != x {
                return Err(format!("identity moves simplex {x} of level {n}"));
            }
        }
        for m in 0..=top {
            for f in admissible(m, n) {
                for l in 0..=top {
                    for g in admissible(l, m) {
                        let fg = maps::compose(&f, &g);
                        for x in 0..p.count(n) {
                            let direct = p.apply(n, x, &fg);
                            let stepwise = p.apply(m, p.apply(n, x, &f), &g);
                            if direct != stepwise {
                                return Err(format!(
                                    "level {n} simplex {x}: f = {f:?}, g = {g:?} gives {direct} vs {stepwise}"
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// A levelwise map between presheaves of the same kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub maps: Vec<Vec<usize>>,
}

impl Morphism {
    /// True if the map commutes with every generator of `source`.
    pub fn is_natural<P: Presheaf>(&self, source: &P, target: &P) -> bool {
        if source.top() != target.top() || self.maps.len() != source.top() + 1 {
            return false;
        }
        (0..=source.top()).all(|n| {
            self.maps[n].len() == source.count(n)
                && source.generators(n).into_iter().all(|op| {
                    let m = op.target_level(n);
                    (0..source.count(n)).all(|x| {
                        self.maps[m][source.act(n, op, x)] == target.act(n, op, self.maps[n][x])
                    })
                })
        })
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().all(|level| maps::is_injective(level))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_simplex() {
        let d1 = SimplicialSet::standard(1, 2);
        assert_eq!((d1.count(0), d1.count(1), d1.count(2)), (2, 4, 8));
        assert_eq!(d1.nondegenerate(1).len(), 2);
        assert!(d1.nondegenerate(2).is_empty());
        d1.check_functoriality().unwrap();
        let t = SemiSimplicialSet::standard(2);
        assert_eq!((t.count(0), t.count(1), t.count(2)), (3, 6, 6));
        t.check_functoriality().unwrap();
    }

    #[test]
    fn apply_matches_listing() {
        let d2 = SimplicialSet::standard(2, 3);
        let listing: Vec<Vec<Vec<usize>>> = (0..=3).map(|m| maps::all_maps(m, 2)).collect();
        for n in 0..=3 {
            for (x, sx) in listing[n].iter().enumerate() {
                for m in 0..=3 {
                    for alpha in maps::all_maps(m, n) {
                        let y = d2.apply(n, x, &alpha);
                        assert_eq!(listing[m][y], maps::compose(sx, &alpha));
                    }
                }
            }
        }
    }
}
