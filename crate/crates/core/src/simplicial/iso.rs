//! Morphism search between finite presheaves.
//!
//! A morphism is determined level by level; assigning one simplex forces the
//! images of all its generator images, so a depth-first search with
//! propagation along generator edges visits few partial assignments.

use super::maps::Op;
use super::sset::{Morphism, Presheaf};

struct Search<'a, P: Presheaf, Q: Presheaf> {
    source: &'a P,
    target: &'a Q,
    ops: Vec<Vec<Op>>,
    assign: Vec<Vec<Option<usize>>>,
    /// For injective searches, the inverse partial map.
    used: Option<Vec<Vec<Option<usize>>>>,
    trail: Vec<(usize, usize)>,
    /// Source simplices in the order they are branched on.
    order: Vec<(usize, usize)>,
    source_sig: Vec<Vec<Signature>>,
    target_sig: Vec<Vec<Signature>>,
}

/// Isomorphism invariant used to prune candidates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
struct Signature {
    cofaces: usize,
    self_swaps: usize,
}

fn signatures<P: Presheaf>(p: &P, ops: &[Vec<Op>]) -> Vec<Vec<Signature>> {
    let mut sig: Vec<Vec<Signature>> = (0..=p.top()).map(|n| vec![Signature::default(); p.count(n)]).collect();
    for n in 0..=p.top() {
        for &op in &ops[n] {
            for x in 0..p.count(n) {
                let y = p.act(n, op, x);
                match op {
                    Op::Face(_) => sig[n - 1][y].cofaces += 1,
                    Op::Swap(_) if y == x => sig[n][x].self_swaps += 1,
                    _ => {}
                }
            }
        }
    }
    sig
}

impl<'a, P: Presheaf, Q: Presheaf> Search<'a, P, Q> {
    fn new(source: &'a P, target: &'a Q, injective: bool) -> Option<Self> {
        if source.top() != target.top() {
            return None;
        }
        let ops: Vec<Vec<Op>> = (0..=source.top()).map(|n| source.generators(n)).collect();
        if (0..=source.top()).any(|n| ops[n] != target.generators(n)) {
            return None;
        }
        let mut order = Vec::new();
        for n in (0..=source.top()).rev() {
            for x in 0..source.count(n) {
                order.push((n, x));
            }
        }
        let (source_sig, target_sig) = if injective {
            (signatures(source, &ops), signatures(target, &ops))
        } else {
            (Vec::new(), Vec::new())
        };
        Some(Search {
            source,
            target,
            assign: (0..=source.top()).map(|n| vec![None; source.count(n)]).collect(),
            used: injective.then(|| (0..=target.top()).map(|n| vec![None; target.count(n)]).collect()),
            ops,
            trail: Vec::new(),
            order,
            source_sig,
            target_sig,
        })
    }

    fn compatible(&self, n: usize, x: usize, y: usize) -> bool {
        match &self.used {
            None => true,
            Some(used) => {
                used[n][y].is_none_or(|z| z == x) && self.source_sig[n][x] == self.target_sig[n][y]
            }
        }
    }

    /// Assigns `x ↦ y` and propagates; false on conflict (the trail records
    /// what to undo).
    fn assign_and_propagate(&mut self, n: usize, x: usize, y: usize) -> bool {
        let mut stack = vec![(n, x, y)];
        while let Some((n, x, y)) = stack.pop() {
            match self.assign[n][x] {
                Some(z) if z == y => continue,
                Some(_) => return false,
                None => {}
            }
            if !self.compatible(n, x, y) {
                return false;
            }
            self.assign[n][x] = Some(y);
            if let Some(used) = &mut self.used {
                used[n][y] = Some(x);
            }
            self.trail.push((n, x));
            for &op in &self.ops[n] {
                let m = op.target_level(n);
                stack.push((m, self.source.act(n, op, x), self.target.act(n, op, y)));
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (n, x) = self.trail.pop().expect("non-empty trail");
            let y = self.assign[n][x].take().expect("assigned");
            if let Some(used) = &mut self.used {
                used[n][y] = None;
            }
        }
    }

    /// Visits complete assignments; `visit` returns false to stop.
    fn run(&mut self, pos: usize, visit: &mut dyn FnMut(&Self) -> bool) -> bool {
        let Some(&(n, x)) = self.order[pos..].iter().find(|&&(n, x)| self.assign[n][x].is_none()) else {
            return visit(self);
        };
        let next = self.order.iter().position(|&e| e == (n, x)).expect("in order");
        for y in 0..self.target.count(n) {
            if !self.compatible(n, x, y) {
                continue;
            }
            let mark = self.trail.len();
            if self.assign_and_propagate(n, x, y) && !self.run(next + 1, visit) {
                self.undo_to(mark);
                return false;
            }
            self.undo_to(mark);
        }
        true
    }

    fn morphism(&self) -> Morphism {
        Morphism {
            maps: self
                .assign
                .iter()
                .map(|level| level.iter().map(|y| y.expect("complete")).collect())
                .collect(),
        }
    }
}

/// An isomorphism `source -> target`, if any.
///
/// Both sides must have the same truncation level and the same counts per
/// level; the search assigns simplices from the top level down, pruning by
/// (coface count, fixed swaps) and enforcing injectivity.
pub fn find_isomorphism<P: Presheaf, Q: Presheaf>(source: &P, target: &Q) -> Option<Morphism> {
    if source.top() != target.top() || (0..=source.top()).any(|n| source.count(n) != target.count(n)) {
        return None;
    }
    let mut search = Search::new(source, target, true)?;
    let mut found = None;
    search.run(0, &mut |s| {
        found = Some(s.morphism());
        false
    });
    found
}

/// Number of morphisms `source -> target` (both truncated at the same level),
/// stopping early at `limit`.
pub fn count_morphisms<P: Presheaf, Q: Presheaf>(source: &P, target: &Q, limit: u64) -> u64 {
    let Some(mut search) = Search::new(source, target, false) else {
        return 0;
    };
    let mut count = 0u64;
    search.run(0, &mut |_| {
        count += 1;
        count < limit
    });
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::maps;
    use crate::simplicial::sset::{SemiSimplicialSet, SimplicialSet};

    #[test]
    fn yoneda_counts() {
        // Hom(Δ[k], Σ) = Σ_k; maps Δ[1] -> Δ[2] are the 9 maps [1] -> [2].
        let d1 = SimplicialSet::standard(1, 3);
        let d2 = SimplicialSet::standard(2, 3);
        assert_eq!(count_morphisms(&d1, &d2, u64::MAX), 9);
        let t1 = SemiSimplicialSet::standard(1).with_top(2);
        let t2 = SemiSimplicialSet::standard(2);
        assert_eq!(count_morphisms(&t1, &t2, u64::MAX), maps::injections(1, 2).len() as u64);
    }

    #[test]
    fn isomorphisms() {
        let d1 = SimplicialSet::standard(1, 2);
        let iso = find_isomorphism(&d1, &d1).unwrap();
        assert!(iso.is_natural(&d1, &d1));
        assert!(iso.is_injective());
        assert!(find_isomorphism(&d1, &SimplicialSet::standard(2, 2)).is_none());
    }
}
