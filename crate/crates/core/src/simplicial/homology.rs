//! Integral homology and cohomology via Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::chains::{chain_complex, ChainComplex};
use super::sset::SimplicialSet;
use crate::linalg::{torsion, ZMatrix};

/// A finitely generated abelian group `Z^rank ⊕ ⊕ Z/t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl Group {
    pub fn zero() -> Self {
        Group::free(0)
    }

    pub fn free(rank: usize) -> Self {
        Group {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let torsion: Vec<Value> = self
            .torsion
            .iter()
            .map(|t| match u64::try_from(t) {
                Ok(v) => json!(v),
                Err(_) => json!(t.to_string()),
            })
            .collect();
        json!({"rank": self.rank, "torsion": torsion})
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn empty_or(m: Option<&ZMatrix>) -> (usize, Vec<BigInt>) {
    match m {
        Some(m) => {
            let f = m.invariant_factors();
            (f.len(), torsion(&f))
        }
        None => (0, Vec::new()),
    }
}

/// `H_n` for `n = 0..=top` of a chain complex.
///
/// The top stored level only contributes boundaries of nothing; callers that
/// truncate should discard degrees at or above the truncation level.
pub fn homology_of(c: &ChainComplex) -> Vec<Group> {
    let dims = c.dims();
    (0..dims.len())
        .map(|n| {
            let (rank_in, _) = empty_or(Some(&c.boundary[n]));
            let (rank_out, tors) = empty_or(c.boundary.get(n + 1));
            Group {
                rank: dims[n] - rank_in - rank_out,
                torsion: tors,
            }
        })
        .collect()
}

/// `H^n` for `n = 0..=top`: coboundaries are transposed boundaries, so the
/// torsion of `H^n` comes from the boundary into degree `n - 1`.
pub fn cohomology_of(c: &ChainComplex) -> Vec<Group> {
    let dims = c.dims();
    (0..dims.len())
        .map(|n| {
            let (rank_prev, tors) = empty_or(Some(&c.boundary[n].transpose()));
            let (rank_next, _) = empty_or(c.boundary.get(n + 1).map(ZMatrix::transpose).as_ref());
            Group {
                rank: dims[n] - rank_prev - rank_next,
                torsion: tors,
            }
        })
        .collect()
}

/// Trims the trailing degrees that are zero, keeping at least degree 0.
pub fn trim(mut groups: Vec<Group>) -> Vec<Group> {
    while groups.len() > 1 && groups.last().is_some_and(Group::is_zero) {
        groups.pop();
    }
    groups
}

/// Homology of a simplicial set, trimmed.
pub fn homology(s: &SimplicialSet) -> Vec<Group> {
    trim(homology_of(&chain_complex(s)))
}

/// Relative homology `H_*(S, A)` for a subcomplex given by membership flags.
pub fn relative_homology(s: &SimplicialSet, member: &[Vec<bool>]) -> Vec<Group> {
    let c = chain_complex(s);
    trim(homology_of(&c.quotient(|n, x| member[n][x])))
}

pub fn cohomology(s: &SimplicialSet) -> Vec<Group> {
    trim(cohomology_of(&chain_complex(s)))
}

pub fn relative_cohomology(s: &SimplicialSet, member: &[Vec<bool>]) -> Vec<Group> {
    let c = chain_complex(s);
    trim(cohomology_of(&c.quotient(|n, x| member[n][x])))
}
