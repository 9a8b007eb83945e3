//! Cellular chains of unoriented simplicial sets.
//!
//! The symmetric group `S_{n+1}` acts on `n`-simplices through the swaps.
//! Each orbit of nondegenerate simplices is one cell; its generator is the
//! least simplex in the orbit, and another simplex `X(σ)(rep)` of the orbit
//! stands for `sign(σ) · rep`. An orbit whose stabilizer contains an odd
//! permutation would satisfy `c = -c` and contributes no generator.

use std::collections::VecDeque;

use crate::linalg::ZMatrix;

use super::sset::SimplicialSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CellOf {
    Degenerate,
    /// Orbit with an odd stabilizer.
    Folded,
    Cell { index: usize, sign: i64 },
}

/// Cells of each level and the integral boundary matrices.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    /// Least representative of each cell, per level.
    pub cells: Vec<Vec<usize>>,
    /// `boundary[n]`: rows indexed by cells of level `n - 1`, columns by
    /// cells of level `n`; `boundary[0]` has no rows.
    pub boundary: Vec<ZMatrix>,
}

impl ChainComplex {
    pub fn dims(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn top(&self) -> usize {
        self.cells.len() - 1
    }

    /// The quotient by the cells whose representatives satisfy `drop`.
    pub fn quotient(&self, drop: impl Fn(usize, usize) -> bool) -> ChainComplex {
        let keep: Vec<Vec<usize>> = self
            .cells
            .iter()
            .enumerate()
            .map(|(n, cells)| (0..cells.len()).filter(|&k| !drop(n, cells[k])).collect())
            .collect();
        let cells = keep
            .iter()
            .enumerate()
            .map(|(n, ks)| ks.iter().map(|&k| self.cells[n][k]).collect())
            .collect();
        let boundary = (0..self.cells.len())
            .map(|n| {
                let rows: &[usize] = if n == 0 { &[] } else { &keep[n - 1] };
                let mut m = ZMatrix::zeros(rows.len(), keep[n].len());
                for (i, &r) in rows.iter().enumerate() {
                    for (j, &c) in keep[n].iter().enumerate() {
                        m.set(i, j, self.boundary[n].get(r, c));
                    }
                }
                m
            })
            .collect();
        ChainComplex { cells, boundary }
    }

    /// Alternating sum of cell counts.
    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(n, c)| if n % 2 == 0 { c.len() as i64 } else { -(c.len() as i64) })
            .sum()
    }
}

/// Classifies every simplex of level `n` by its cell and orientation sign.
fn classify(s: &SimplicialSet, n: usize) -> (Vec<usize>, Vec<CellOf>) {
    let count = crate::simplicial::sset::Presheaf::count(s, n);
    let mut class = vec![CellOf::Degenerate; count];
    let mut seen = vec![false; count];
    let mut reps = Vec::new();
    for x in 0..count {
        if seen[x] || s.is_degenerate(n, x) {
            continue;
        }
        // BFS over swaps records the parity of a permutation reaching each
        // orbit element; reaching an element with both parities means an
        // odd stabilizer.
        let mut parity: Vec<(usize, i64)> = vec![(x, 1)];
        let mut sign = std::collections::HashMap::from([(x, 1i64)]);
        let mut queue = VecDeque::from([x]);
        let mut folded = false;
        while let Some(y) = queue.pop_front() {
            for i in 0..n {
                let z = s.swap(n, i, y);
                let sz = -sign[&y];
                match sign.get(&z) {
                    Some(&v) if v != sz => folded = true,
                    Some(_) => {}
                    None => {
                        sign.insert(z, sz);
                        parity.push((z, sz));
                        queue.push_back(z);
                    }
                }
            }
        }
        for &(y, _) in &parity {
            seen[y] = true;
        }
        if folded {
            for &(y, _) in &parity {
                class[y] = CellOf::Folded;
            }
        } else {
            let index = reps.len();
            reps.push(x);
            for &(y, sy) in &parity {
                class[y] = CellOf::Cell { index, sign: sy };
            }
        }
    }
    (reps, class)
}

/// Chains with `∂ = Σ (-1)^i d_i` on cell representatives.
pub fn chain_complex(s: &SimplicialSet) -> ChainComplex {
    let top = crate::simplicial::sset::Presheaf::top(s);
    let classified: Vec<(Vec<usize>, Vec<CellOf>)> = (0..=top).map(|n| classify(s, n)).collect();
    let cells: Vec<Vec<usize>> = classified.iter().map(|(r, _)| r.clone()).collect();
    let boundary = (0..=top)
        .map(|n| {
            if n == 0 {
                return ZMatrix::zeros(0, cells[0].len());
            }
            let mut m = ZMatrix::zeros(cells[n - 1].len(), cells[n].len());
            for (j, &x) in cells[n].iter().enumerate() {
                for i in 0..=n {
                    let y = s.face(n, i, x);
                    if let CellOf::Cell { index, sign } = classified[n - 1].1[y] {
                        let e = if i % 2 == 0 { sign } else { -sign };
                        m.add_to(index, j, e);
                    }
                }
            }
            m
        })
        .collect();
    ChainComplex { cells, boundary }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::simplicial::dual::build_dx;

    #[test]
    fn boundary_squares_to_zero_on_examples() {
        for m in [examples::node(), examples::triple_point(), examples::kodaira_cycle(3)] {
            let c = chain_complex(&build_dx(&m).sset);
            for n in 2..=c.top() {
                assert!(c.boundary[n - 1].mul(&c.boundary[n]).is_zero());
            }
        }
    }

    #[test]
    fn cycle_boundary() {
        let c = chain_complex(&build_dx(&examples::kodaira_cycle(3)).sset);
        assert_eq!(c.dims(), vec![3, 3, 0]);
        // Each edge has one +1 and one -1.
        for j in 0..3 {
            let col: Vec<i64> = (0..3).map(|i| c.boundary[1].get(i, j)).collect();
            assert_eq!(col.iter().sum::<i64>(), 0);
            assert_eq!(col.iter().map(|v| v.abs()).sum::<i64>(), 2);
        }
        assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn two_edges_between_the_same_vertices() {
        // I_2: both double points join E0 and E1; their boundaries agree up
        // to sign.
        let c = chain_complex(&build_dx(&examples::kodaira_cycle(2)).sset);
        assert_eq!(c.dims(), vec![2, 2, 0]);
        let col = |j: usize| (c.boundary[1].get(0, j), c.boundary[1].get(1, j));
        let (a, b) = (col(0), col(1));
        assert!(a == b || a == (-b.0, -b.1));
    }
}
