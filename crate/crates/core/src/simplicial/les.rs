//! The long exact cohomology sequence of the pair `(D(Y), D(E))`.

use serde_json::{json, Value};

use super::chains::{chain_complex, ChainComplex};
use super::dual::{build_dx, sub_complex_de};
use super::homology::{cohomology_of, Group};
use crate::linalg::{QMatrix, Subspace};
use crate::strata::{ComponentSet, StrataModel};

/// One node of the sequence
/// `... -> H^n(Y,A) -> H^n(Y) -> H^n(A) -> H^{n+1}(Y,A) -> ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesNode {
    pub label: String,
    pub degree: usize,
    /// Rational dimension.
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
}

impl LesNode {
    pub fn is_exact(&self) -> bool {
        self.rank_in + self.rank_out == self.dim
    }
}

#[derive(Clone, Debug)]
pub struct LesReport {
    pub absolute: Vec<Group>,
    pub sub: Vec<Group>,
    pub sub_reduced: Vec<Group>,
    pub relative: Vec<Group>,
    /// `H^n(Y/A)`: the relative groups with an extra `Z` in degree 0.
    pub quotient: Vec<Group>,
    pub nodes: Vec<LesNode>,
}

impl LesReport {
    pub fn is_exact(&self) -> bool {
        self.nodes.iter().all(LesNode::is_exact)
    }

    pub fn to_json(&self) -> Value {
        let groups = |g: &[Group]| Value::Array(g.iter().map(Group::to_json).collect());
        json!({
            "absolute": groups(&self.absolute),
            "sub": groups(&self.sub),
            "sub_reduced": groups(&self.sub_reduced),
            "relative": groups(&self.relative),
            "quotient": groups(&self.quotient),
            "exact": self.is_exact(),
            "nodes": self.nodes.iter().map(|n| json!({
                "label": n.label,
                "degree": n.degree,
                "dim": n.dim,
                "rank_in": n.rank_in,
                "rank_out": n.rank_out,
                "exact": n.is_exact(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Rational cochains of a chain complex restricted to a set of cells per
/// degree (which must span a subcomplex or a quotient complex).
struct Cochains {
    /// `delta[n]: C^n -> C^{n+1}`.
    delta: Vec<QMatrix>,
    dims: Vec<usize>,
}

impl Cochains {
    fn cocycles(&self, n: usize) -> Subspace {
        Subspace::column_span(&self.delta[n].nullspace())
    }

    fn coboundaries(&self, n: usize) -> Subspace {
        if n == 0 {
            Subspace::zero(self.dims[0])
        } else {
            Subspace::column_span(&self.delta[n - 1])
        }
    }

    fn h_dim(&self, n: usize) -> usize {
        self.cocycles(n).dim() - self.coboundaries(n).dim()
    }
}

/// `δ^n` of the full complex as a rational matrix.
fn full_delta(c: &ChainComplex, n: usize) -> QMatrix {
    let dims = c.dims();
    match c.boundary.get(n + 1) {
        Some(b) => {
            let mut m = QMatrix::zeros(b.cols(), b.rows());
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    let v = b.get(i, j);
                    if v != 0 {
                        m.set(j, i, crate::linalg::q(v));
                    }
                }
            }
            m
        }
        None => QMatrix::zeros(0, dims[n]),
    }
}

fn select(m: &QMatrix, rows: &[usize], cols: &[usize]) -> QMatrix {
    let mut out = QMatrix::zeros(rows.len(), cols.len());
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in cols.iter().enumerate() {
            out.set(i, j, m.get(r, c).clone());
        }
    }
    out
}

/// Rank of the map induced on cohomology by `f: C^n -> D^m`, given cocycles
/// of the source and coboundaries of the target:
/// `dim(f(Z) + B) - dim B`.
fn induced_rank(f: &QMatrix, source_cocycles: &Subspace, target_coboundaries: &Subspace) -> usize {
    source_cocycles.image(f).sum(target_coboundaries).dim() - target_coboundaries.dim()
}

/// Assembles the sequence for `Y = D(model)` and `A = D(E)`.
pub fn longexact(model: &StrataModel, e: ComponentSet) -> Result<LesReport, crate::Error> {
    if e.is_empty() || e == model.all_components() {
        return Err(crate::Error::Domain("E must be a non-empty proper subset of the components".into()));
    }
    let dx = build_dx(model);
    let sub = sub_complex_de(model, &dx, e)?;
    let c = chain_complex(&dx.sset);
    let top = c.top();
    let dims = c.dims();

    let in_a: Vec<Vec<usize>> = (0..=top)
        .map(|n| (0..dims[n]).filter(|&k| sub.member[n][c.cells[n][k]]).collect())
        .collect();
    let in_r: Vec<Vec<usize>> = (0..=top)
        .map(|n| (0..dims[n]).filter(|&k| !sub.member[n][c.cells[n][k]]).collect())
        .collect();
    let all: Vec<Vec<usize>> = dims.iter().map(|&d| (0..d).collect()).collect();
    let empty: Vec<usize> = Vec::new();
    let next = |v: &Vec<Vec<usize>>, n: usize| -> Vec<usize> { v.get(n + 1).cloned().unwrap_or_else(|| empty.clone()) };

    let deltas: Vec<QMatrix> = (0..=top).map(|n| full_delta(&c, n)).collect();
    let restrict = |cells: &Vec<Vec<usize>>| Cochains {
        delta: (0..=top).map(|n| select(&deltas[n], &next(cells, n), &cells[n])).collect(),
        dims: cells.iter().map(Vec::len).collect(),
    };
    let y = restrict(&all);
    let a = restrict(&in_a);
    let r = restrict(&in_r);

    let mut nodes = Vec::new();
    let mut prev_connecting_rank = 0;
    for n in 0..=top {
        // j: C^n(Y,A) -> C^n(Y), zero extension.
        let j = select(&QMatrix::identity(dims[n]), &all[n], &in_r[n]);
        // i: C^n(Y) -> C^n(A), restriction.
        let i = select(&QMatrix::identity(dims[n]), &in_a[n], &all[n]);
        // connecting: C^n(A) -> C^{n+1}(Y,A), extend by zero then δ_Y.
        let conn = select(&deltas[n], &next(&in_r, n), &in_a[n]);

        let rank_j = induced_rank(&j, &r.cocycles(n), &y.coboundaries(n));
        let rank_i = induced_rank(&i, &y.cocycles(n), &a.coboundaries(n));
        let rank_conn = if n < top {
            induced_rank(&conn, &a.cocycles(n), &r.coboundaries(n + 1))
        } else {
            0
        };
        nodes.push(LesNode {
            label: format!("H^{n}(Y,A)"),
            degree: n,
            dim: r.h_dim(n),
            rank_in: prev_connecting_rank,
            rank_out: rank_j,
        });
        nodes.push(LesNode {
            label: format!("H^{n}(Y)"),
            degree: n,
            dim: y.h_dim(n),
            rank_in: rank_j,
            rank_out: rank_i,
        });
        nodes.push(LesNode {
            label: format!("H^{n}(A)"),
            degree: n,
            dim: a.h_dim(n),
            rank_in: rank_i,
            rank_out: rank_conn,
        });
        prev_connecting_rank = rank_conn;
    }

    let absolute = cohomology_of(&c);
    let relative = cohomology_of(&c.quotient(|n, x| sub.member[n][x]));
    let sub_groups = cohomology_of(&c.quotient(|n, x| !sub.member[n][x]));
    let mut sub_reduced = sub_groups.clone();
    sub_reduced[0].rank -= 1;
    let mut quotient = relative.clone();
    quotient[0].rank += 1;
    Ok(LesReport {
        absolute,
        sub: sub_groups,
        sub_reduced,
        relative,
        quotient,
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;

    fn ranks(g: &[Group]) -> Vec<usize> {
        g.iter().map(|g| g.rank).collect()
    }

    #[test]
    fn cycle_with_one_component() {
        let m = examples::kodaira_cycle(3);
        let rep = longexact(&m, m.component_set(&["E0"]).unwrap()).unwrap();
        assert!(rep.is_exact());
        assert_eq!(ranks(&rep.relative)[..2], [0, 1]);
        assert_eq!(ranks(&rep.quotient)[..2], [1, 1]);
        assert_eq!(ranks(&rep.sub_reduced)[0], 0);
    }

    #[test]
    fn retract_pair_has_zero_relative_groups() {
        let m = examples::chain_with_classes();
        let rep = longexact(&m, m.component_set(&["A", "C"]).unwrap()).unwrap();
        assert!(rep.is_exact());
        assert!(rep.relative.iter().all(Group::is_zero));
    }

    #[test]
    fn node_pair() {
        let m = examples::node();
        let rep = longexact(&m, m.component_set(&["A"]).unwrap()).unwrap();
        assert!(rep.is_exact());
        // Interval modulo an endpoint is contractible.
        assert!(rep.relative.iter().all(Group::is_zero));
        assert_eq!(ranks(&rep.quotient)[0], 1);
    }

    #[test]
    fn rejects_improper_subsets() {
        let m = examples::node();
        assert!(longexact(&m, m.all_components()).is_err());
        assert!(longexact(&m, ComponentSet::empty()).is_err());
    }
}
