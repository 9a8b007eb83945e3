//! Random complexes, systems and covers for property tests.

use rand::Rng;

use super::complex::{ChainMap, FDComplex, Filtration, FiltrationKind};
use super::cover::SimplicialComplex;
use super::system::{constant_system, CocubicalSystem};
use crate::linalg::{q, QMatrix, Subspace};

fn unit_triangular<R: Rng + ?Sized>(rng: &mut R, n: usize, lower: bool) -> QMatrix {
    let mut m = QMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            if (lower && j < i) || (!lower && j > i) {
                m.set(i, j, q(rng.gen_range(-1..=1)));
            }
        }
    }
    m
}

fn inverse(m: &QMatrix) -> QMatrix {
    let n = m.rows();
    let columns: Vec<_> = QMatrix::identity(n)
        .columns()
        .iter()
        .map(|e| m.solve(e).expect("invertible"))
        .collect();
    QMatrix::from_columns(n, &columns)
}

/// A random complex on `start..start + len` with dimensions at most about
/// `max_dim`, in a random basis.
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R, start: i64, len: usize, max_dim: usize) -> FDComplex {
    if len == 0 {
        return FDComplex::zero(start, 0);
    }
    let third = (max_dim / 3).max(1);
    let h: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=third)).collect();
    // b[k] = rank of d into degree k.
    let mut b = vec![0; len + 1];
    for item in b.iter_mut().take(len).skip(1) {
        *item = rng.gen_range(0..=third);
    }
    let dims: Vec<usize> = (0..len).map(|k| h[k] + b[k] + b[k + 1]).collect();
    // Basis of degree k: [cohomology | image of d | sources of d].
    let standard: Vec<QMatrix> = (0..len - 1)
        .map(|k| {
            let mut m = QMatrix::zeros(dims[k + 1], dims[k]);
            for t in 0..b[k + 1] {
                m.set(h[k + 1] + t, h[k] + b[k] + t, q(1));
            }
            m
        })
        .collect();
    let change: Vec<QMatrix> = dims
        .iter()
        .map(|&d| unit_triangular(rng, d, true).mul(&unit_triangular(rng, d, false)))
        .collect();
    let inverses: Vec<QMatrix> = change.iter().map(inverse).collect();
    let d = (0..len - 1)
        .map(|k| change[k + 1].mul(&standard[k]).mul(&inverses[k]))
        .collect();
    FDComplex::new(start, dims, d).expect("conjugate of a complex")
}

/// `λ·id + (h d + d h)` for a random `h` of degree `-1`: a chain map.
pub fn random_endomorphism<R: Rng + ?Sized>(rng: &mut R, c: &FDComplex) -> ChainMap {
    let lambda = q(rng.gen_range(-1..=2));
    let h: Vec<QMatrix> = c
        .degrees()
        .map(|p| {
            let mut m = QMatrix::zeros(c.dim(p - 1), c.dim(p));
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    m.set(i, j, q(rng.gen_range(-1..=1)));
                }
            }
            m
        })
        .collect();
    let h_at = |p: i64| -> QMatrix {
        usize::try_from(p - c.start())
            .ok()
            .and_then(|k| h.get(k).cloned())
            .unwrap_or_else(|| QMatrix::zeros(c.dim(p - 1), c.dim(p)))
    };
    let maps = c
        .degrees()
        .map(|p| {
            let homotopy = h_at(p + 1).mul(&c.differential(p)).add(&c.differential(p - 1).mul(&h_at(p)));
            QMatrix::identity(c.dim(p)).scale(&lambda).add(&homotopy)
        })
        .collect();
    ChainMap { start: c.start(), maps }
}

/// `A ⊕ B` with `W_0 = A ⊆ W_1 = all` and `F^0 = all ⊇ F^1 = B`, and a
/// block-diagonal endomorphism preserving both.
pub fn random_filtered<R: Rng + ?Sized>(rng: &mut R, start: i64, len: usize, max_dim: usize) -> (FDComplex, ChainMap) {
    let a = random_complex(rng, start, len, max_dim / 2 + 1);
    let b = random_complex(rng, start, len, max_dim / 2 + 1);
    let (fa, fb) = (random_endomorphism(rng, &a), random_endomorphism(rng, &b));
    let dims: Vec<usize> = a.dims().iter().zip(b.dims()).map(|(x, y)| x + y).collect();
    let block = |x: &QMatrix, y: &QMatrix| {
        let mut m = QMatrix::zeros(x.rows() + y.rows(), x.cols() + y.cols());
        m.set_block(0, 0, x);
        m.set_block(x.rows(), x.cols(), y);
        m
    };
    let d = (start..start + len as i64 - 1)
        .map(|p| block(&a.differential(p), &b.differential(p)))
        .collect();
    let first = |k: usize| Subspace::coordinate(dims[k], 0..a.dims()[k]);
    let second = |k: usize| Subspace::coordinate(dims[k], a.dims()[k]..dims[k]);
    let w = Filtration {
        kind: FiltrationKind::Increasing,
        lo: 0,
        spaces: (0..len).map(|k| vec![first(k), Subspace::full(dims[k])]).collect(),
    };
    let f = Filtration {
        kind: FiltrationKind::Decreasing,
        lo: 0,
        spaces: (0..len).map(|k| vec![Subspace::full(dims[k]), second(k)]).collect(),
    };
    let c = FDComplex::new(start, dims, d)
        .and_then(|c| c.with_filtration(w))
        .and_then(|c| c.with_filtration(f))
        .expect("block-diagonal filtered complex");
    let phi = ChainMap {
        start,
        maps: fa.maps.iter().zip(&fb.maps).map(|(x, y)| block(x, y)).collect(),
    };
    (c, phi)
}

/// A constant system on `{0..n}` whose face maps are one random
/// endomorphism, filtered or not.
pub fn random_system<R: Rng + ?Sized>(rng: &mut R, max_n: usize, filtered: bool) -> CocubicalSystem {
    let n = rng.gen_range(0..=max_n);
    let start = rng.gen_range(-1..=1);
    let len = rng.gen_range(1..=3);
    let (c, phi) = if filtered {
        random_filtered(rng, start, len, 4)
    } else {
        let c = random_complex(rng, start, len, 4);
        let phi = random_endomorphism(rng, &c);
        (c, phi)
    };
    constant_system(n, &c, &phi).expect("constant system is functorial")
}

/// A random complex with at most `max_simplices` simplices and a random
/// closed cover by one to three pieces.
pub fn random_cover<R: Rng + ?Sized>(rng: &mut R, max_simplices: usize) -> (SimplicialComplex, Vec<SimplicialComplex>) {
    loop {
        let vertices = rng.gen_range(2..=6);
        let count = rng.gen_range(1..=5);
        let generators: Vec<Vec<usize>> = (0..count)
            .map(|_| {
                let size = rng.gen_range(1..=3);
                (0..size).map(|_| rng.gen_range(0..vertices)).collect()
            })
            .collect();
        let k = SimplicialComplex::closure(generators);
        if k.is_empty() || k.len() > max_simplices {
            continue;
        }
        let pieces_count = rng.gen_range(1..=3);
        let mut gens: Vec<Vec<Vec<usize>>> = vec![Vec::new(); pieces_count];
        for s in k.simplices() {
            // Every simplex lands in at least one piece.
            gens[rng.gen_range(0..pieces_count)].push(s.clone());
            for g in gens.iter_mut() {
                if rng.gen_bool(0.2) {
                    g.push(s.clone());
                }
            }
        }
        let pieces = gens.into_iter().map(SimplicialComplex::closure).collect();
        return (k, pieces);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_objects_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let c = random_complex(&mut rng, 0, 3, 5);
            let phi = random_endomorphism(&mut rng, &c);
            phi.check(&c, &c).unwrap();
            let (f, psi) = random_filtered(&mut rng, -1, 2, 4);
            assert!(psi.is_filtered(&f, &f));
            let (k, pieces) = random_cover(&mut rng, 20);
            assert!(k.len() <= 20);
            assert!(pieces.iter().all(|p| p.is_subcomplex_of(&k)));
        }
    }
}
