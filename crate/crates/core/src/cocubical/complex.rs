//! Bounded complexes of finite-dimensional rational vector spaces with
//! optional filtrations, chain maps between them and their cohomology.

use super::CocubicalError;
use crate::linalg::{QMatrix, Subspace, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiltrationKind {
    /// `F^{r+1} ⊆ F^r`.
    Decreasing,
    /// `W_r ⊆ W_{r+1}`.
    Increasing,
}

/// A filtration stored on the levels `lo..=hi`, per degree. Outside the
/// stored range it is exhaustive and separated: a decreasing filtration is
/// everything below `lo` and zero above `hi`, an increasing one is zero below
/// `lo` and everything above `hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    pub kind: FiltrationKind,
    pub lo: i64,
    /// `spaces[k][j]` is the level `lo + j` in the `k`-th degree.
    pub spaces: Vec<Vec<Subspace>>,
}

impl Filtration {
    /// The filtration with a single jump: everything at levels `<= jump`
    /// (decreasing) or `>= jump` (increasing), nothing elsewhere.
    pub fn trivial(kind: FiltrationKind, dims: &[usize], jump: i64) -> Self {
        Filtration {
            kind,
            lo: jump,
            spaces: dims.iter().map(|&d| vec![Subspace::full(d)]).collect(),
        }
    }

    pub fn levels(&self) -> usize {
        self.spaces.first().map_or(0, Vec::len)
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.levels() as i64 - 1
    }

    pub fn at(&self, k: usize, level: i64) -> Subspace {
        let ambient = self.spaces[k][0].ambient();
        let below = level < self.lo;
        if below || level > self.hi() {
            let full = below == (self.kind == FiltrationKind::Decreasing);
            return if full { Subspace::full(ambient) } else { Subspace::zero(ambient) };
        }
        self.spaces[k][(level - self.lo) as usize].clone()
    }

    /// The next smaller space: `F^{r+1}` for `F^r`, `W_{r-1}` for `W_r`.
    pub fn smaller(&self, k: usize, level: i64) -> Subspace {
        match self.kind {
            FiltrationKind::Decreasing => self.at(k, level + 1),
            FiltrationKind::Increasing => self.at(k, level - 1),
        }
    }

    fn check(&self, dims: &[usize]) -> Result<(), CocubicalError> {
        if self.spaces.len() != dims.len() || self.levels() == 0 {
            return Err(CocubicalError::ShapeMismatch("filtration does not match the degrees".into()));
        }
        for (k, row) in self.spaces.iter().enumerate() {
            if row.len() != self.levels() || row.iter().any(|s| s.ambient() != dims[k]) {
                return Err(CocubicalError::ShapeMismatch(format!("filtration levels in degree position {k}")));
            }
            for pair in row.windows(2) {
                let nested = match self.kind {
                    FiltrationKind::Decreasing => pair[1].is_subspace_of(&pair[0]),
                    FiltrationKind::Increasing => pair[0].is_subspace_of(&pair[1]),
                };
                if !nested {
                    return Err(CocubicalError::NotFiltered("filtration is not monotone".into()));
                }
            }
        }
        Ok(())
    }
}

/// Which piece of a filtered complex to extract.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Piece {
    F(i64),
    GrF(i64),
    W(i64),
    GrW(i64),
}

/// A complex `C^start -> ... -> C^{start + len - 1}` over `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FDComplex {
    start: i64,
    dims: Vec<usize>,
    /// `d[k]: C^{start+k} -> C^{start+k+1}`.
    d: Vec<QMatrix>,
    f: Option<Filtration>,
    w: Option<Filtration>,
}

impl FDComplex {
    pub fn new(start: i64, dims: Vec<usize>, d: Vec<QMatrix>) -> Result<Self, CocubicalError> {
        if d.len() + 1 != dims.len().max(1) {
            return Err(CocubicalError::ShapeMismatch(format!(
                "{} degrees need {} differentials, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                d.len()
            )));
        }
        for (k, m) in d.iter().enumerate() {
            if m.rows() != dims[k + 1] || m.cols() != dims[k] {
                return Err(CocubicalError::ShapeMismatch(format!(
                    "differential in degree {} is {}x{}, expected {}x{}",
                    start + k as i64,
                    m.rows(),
                    m.cols(),
                    dims[k + 1],
                    dims[k]
                )));
            }
        }
        for (k, pair) in d.windows(2).enumerate() {
            if !pair[1].mul(&pair[0]).is_zero() {
                return Err(CocubicalError::NotAComplex(start + k as i64));
            }
        }
        Ok(FDComplex {
            start,
            dims,
            d,
            f: None,
            w: None,
        })
    }

    pub fn zero(start: i64, len: usize) -> Self {
        FDComplex::new(start, vec![0; len], (1..len).map(|_| QMatrix::zeros(0, 0)).collect()).expect("zero complex")
    }

    /// A single space in degree `degree`.
    pub fn concentrated(degree: i64, dim: usize) -> Self {
        FDComplex::new(degree, vec![dim], Vec::new()).expect("one degree")
    }

    pub fn with_filtration(mut self, filtration: Filtration) -> Result<Self, CocubicalError> {
        filtration.check(&self.dims)?;
        for k in 0..self.d.len() {
            for level in filtration.lo..=filtration.hi() {
                if !filtration.at(k, level).image(&self.d[k]).is_subspace_of(&filtration.at(k + 1, level)) {
                    return Err(CocubicalError::NotFiltered(format!(
                        "differential in degree {} leaves level {level}",
                        self.start + k as i64
                    )));
                }
            }
        }
        match filtration.kind {
            FiltrationKind::Decreasing => self.f = Some(filtration),
            FiltrationKind::Increasing => self.w = Some(filtration),
        }
        Ok(self)
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn degrees(&self) -> std::ops::Range<i64> {
        self.start..self.start + self.dims.len() as i64
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, p: i64) -> usize {
        self.position(p).map_or(0, |k| self.dims[k])
    }

    fn position(&self, p: i64) -> Option<usize> {
        let k = p - self.start;
        (k >= 0 && (k as usize) < self.dims.len()).then_some(k as usize)
    }

    /// `d: C^p -> C^{p+1}`, zero outside the stored range.
    pub fn differential(&self, p: i64) -> QMatrix {
        match self.position(p) {
            Some(k) if k < self.d.len() => self.d[k].clone(),
            _ => QMatrix::zeros(self.dim(p + 1), self.dim(p)),
        }
    }

    pub fn f(&self) -> Option<&Filtration> {
        self.f.as_ref()
    }

    pub fn w(&self) -> Option<&Filtration> {
        self.w.as_ref()
    }

    pub fn filtration(&self, kind: FiltrationKind) -> Option<&Filtration> {
        match kind {
            FiltrationKind::Decreasing => self.f(),
            FiltrationKind::Increasing => self.w(),
        }
    }

    /// The same complex on the degrees `start..start + len`, padded with
    /// zero spaces. The stored range must fit. Filtrations are dropped.
    pub fn padded(&self, start: i64, len: usize) -> Result<Self, CocubicalError> {
        let end = start + len as i64;
        if self.start < start || self.degrees().end > end {
            return Err(CocubicalError::ShapeMismatch("padding range does not contain the complex".into()));
        }
        let dims: Vec<usize> = (start..end).map(|p| self.dim(p)).collect();
        let d = (start..end - 1).map(|p| self.differential(p)).collect();
        FDComplex::new(start, dims, d)
    }

    pub fn cycles(&self, p: i64) -> Subspace {
        Subspace::column_span(&self.differential(p).nullspace())
    }

    pub fn boundaries(&self, p: i64) -> Subspace {
        Subspace::column_span(&self.differential(p - 1))
    }

    /// `dim H^p` for every stored degree.
    pub fn cohomology(&self) -> Vec<usize> {
        self.degrees()
            .map(|p| self.dim(p) - self.differential(p).rank() - self.differential(p - 1).rank())
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|p| if p.rem_euclid(2) == 0 { self.dim(p) as i64 } else { -(self.dim(p) as i64) })
            .sum()
    }
}

/// A degreewise linear map between complexes with the same degree range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub start: i64,
    pub maps: Vec<QMatrix>,
}

impl ChainMap {
    pub fn identity(c: &FDComplex) -> Self {
        ChainMap {
            start: c.start,
            maps: c.dims.iter().map(|&d| QMatrix::identity(d)).collect(),
        }
    }

    pub fn zero(src: &FDComplex, tgt: &FDComplex) -> Self {
        ChainMap {
            start: src.start,
            maps: src.dims.iter().zip(&tgt.dims).map(|(&s, &t)| QMatrix::zeros(t, s)).collect(),
        }
    }

    pub fn at(&self, p: i64) -> Option<&QMatrix> {
        usize::try_from(p - self.start).ok().and_then(|k| self.maps.get(k))
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &ChainMap) -> ChainMap {
        ChainMap {
            start: first.start,
            maps: self.maps.iter().zip(&first.maps).map(|(g, f)| g.mul(f)).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> ChainMap {
        ChainMap {
            start: self.start,
            maps: self.maps.iter().map(|m| m.scale(c)).collect(),
        }
    }

    /// Checks shapes and `f d = d f`.
    pub fn check(&self, src: &FDComplex, tgt: &FDComplex) -> Result<(), CocubicalError> {
        if src.start != tgt.start || src.len() != tgt.len() || self.start != src.start || self.maps.len() != src.len() {
            return Err(CocubicalError::ShapeMismatch("chain map degree ranges differ".into()));
        }
        for (k, m) in self.maps.iter().enumerate() {
            if m.rows() != tgt.dims[k] || m.cols() != src.dims[k] {
                return Err(CocubicalError::ShapeMismatch(format!(
                    "map in degree {} has the wrong shape",
                    self.start + k as i64
                )));
            }
        }
        for k in 0..self.maps.len().saturating_sub(1) {
            let p = self.start + k as i64;
            if self.maps[k + 1].mul(&src.differential(p)) != tgt.differential(p).mul(&self.maps[k]) {
                return Err(CocubicalError::NotChainMap(p));
            }
        }
        Ok(())
    }

    /// Whether the map sends each stored level of the filtrations of the
    /// source into the same level of the target.
    pub fn is_filtered(&self, src: &FDComplex, tgt: &FDComplex) -> bool {
        [FiltrationKind::Decreasing, FiltrationKind::Increasing].iter().all(|&kind| {
            match (src.filtration(kind), tgt.filtration(kind)) {
                (Some(a), Some(b)) => {
                    let (lo, hi) = (a.lo.min(b.lo), a.hi().max(b.hi()));
                    (0..self.maps.len())
                        .all(|k| (lo..=hi).all(|r| a.at(k, r).image(&self.maps[k]).is_subspace_of(&b.at(k, r))))
                }
                _ => true,
            }
        })
    }
}

/// The verdict for one degree of [`quasi_iso_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeVerdict {
    pub degree: i64,
    pub source: usize,
    pub target: usize,
    pub rank: usize,
    pub iso: bool,
}

/// Ranks of the maps induced on cohomology.
pub fn quasi_iso_check(f: &ChainMap, src: &FDComplex, tgt: &FDComplex) -> Result<Vec<DegreeVerdict>, CocubicalError> {
    f.check(src, tgt)?;
    let hs = src.cohomology();
    let ht = tgt.cohomology();
    Ok(src
        .degrees()
        .enumerate()
        .map(|(k, p)| {
            let b = tgt.boundaries(p);
            let rank = src.cycles(p).image(&f.maps[k]).sum(&b).dim() - b.dim();
            DegreeVerdict {
                degree: p,
                source: hs[k],
                target: ht[k],
                rank,
                iso: rank == hs[k] && rank == ht[k],
            }
        })
        .collect())
}

/// A filtration level or graded piece as a complex with the induced
/// differential. Graded pieces are realized on complement bases.
pub fn graded_piece(c: &FDComplex, which: Piece) -> Result<FDComplex, CocubicalError> {
    let (kind, level, graded) = match which {
        Piece::F(r) => (FiltrationKind::Decreasing, r, false),
        Piece::GrF(r) => (FiltrationKind::Decreasing, r, true),
        Piece::W(r) => (FiltrationKind::Increasing, r, false),
        Piece::GrW(r) => (FiltrationKind::Increasing, r, true),
    };
    let filt = c.filtration(kind).ok_or(CocubicalError::FiltrationAbsent)?;
    let big: Vec<Subspace> = (0..c.len()).map(|k| filt.at(k, level)).collect();
    let small: Vec<Subspace> = (0..c.len())
        .map(|k| if graded { filt.smaller(k, level) } else { Subspace::zero(c.dims[k]) })
        .collect();
    Ok(subquotient(c, &big, &small))
}

/// `big / small` for subcomplexes `small ⊆ big`.
fn subquotient(c: &FDComplex, big: &[Subspace], small: &[Subspace]) -> FDComplex {
    let reps: Vec<Vec<Vec<Q>>> = big.iter().zip(small).map(|(b, s)| b.complement_basis(s)).collect();
    let dims: Vec<usize> = reps.iter().map(Vec::len).collect();
    let mut d = Vec::new();
    for k in 0..c.len().saturating_sub(1) {
        let mut basis = small[k + 1].basis();
        let offset = basis.len();
        basis.extend(reps[k + 1].iter().cloned());
        let frame = QMatrix::from_columns(c.dims[k + 1], &basis);
        let mut m = QMatrix::zeros(dims[k + 1], dims[k]);
        for (j, v) in reps[k].iter().enumerate() {
            let image = c.d[k].apply(v);
            let coords = frame.solve(&image).expect("subcomplex is closed under d");
            for i in 0..dims[k + 1] {
                m.set(i, j, coords[offset + i].clone());
            }
        }
        d.push(m);
    }
    FDComplex::new(c.start, dims, d).expect("induced differential squares to zero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn interval() -> FDComplex {
        // Cochains of an edge: Q^2 -> Q.
        FDComplex::new(0, vec![2, 1], vec![QMatrix::from_i64(1, 2, &[-1, 1])]).unwrap()
    }

    #[test]
    fn cohomology_and_shapes() {
        assert_eq!(interval().cohomology(), vec![1, 0]);
        assert_eq!(interval().euler_characteristic(), 1);
        assert!(FDComplex::new(0, vec![2, 1], vec![]).is_err());
        let bad = FDComplex::new(
            0,
            vec![1, 1, 1],
            vec![QMatrix::from_i64(1, 1, &[1]), QMatrix::from_i64(1, 1, &[1])],
        );
        assert_eq!(bad, Err(CocubicalError::NotAComplex(0)));
        let p = interval().padded(-1, 4).unwrap();
        assert_eq!(p.dims(), &[0, 2, 1, 0]);
        assert_eq!(p.cohomology(), vec![0, 1, 0, 0]);
    }

    #[test]
    fn quasi_iso_verdicts() {
        let c = interval();
        let id = ChainMap::identity(&c);
        assert!(quasi_iso_check(&id, &c, &c).unwrap().iter().all(|v| v.iso));
        let zero = ChainMap::zero(&c, &c);
        assert!(!quasi_iso_check(&zero, &c, &c).unwrap()[0].iso);
        let point = FDComplex::new(0, vec![1, 0], vec![QMatrix::zeros(0, 1)]).unwrap();
        // The constant function on the interval restricts to the point.
        let restrict = ChainMap {
            start: 0,
            maps: vec![QMatrix::from_i64(1, 2, &[1, 0]), QMatrix::zeros(0, 1)],
        };
        assert!(quasi_iso_check(&restrict, &c, &point).unwrap().iter().all(|v| v.iso));
        let not_chain = ChainMap {
            start: 0,
            maps: vec![QMatrix::from_i64(2, 2, &[1, 0, 0, 0]), QMatrix::identity(1)],
        };
        assert_eq!(quasi_iso_check(&not_chain, &c, &c), Err(CocubicalError::NotChainMap(0)));
    }

    #[test]
    fn trivial_filtration_pieces() {
        let c = interval();
        let f = Filtration::trivial(FiltrationKind::Decreasing, c.dims(), 0);
        let c = c.with_filtration(f).unwrap();
        let gr = graded_piece(&c, Piece::GrF(0)).unwrap();
        assert_eq!(gr.dims(), c.dims());
        assert_eq!(gr.cohomology(), c.cohomology());
        assert_eq!(graded_piece(&c, Piece::F(1)).unwrap().dims(), &[0, 0]);
        assert_eq!(graded_piece(&c, Piece::GrW(0)), Err(CocubicalError::FiltrationAbsent));
        assert_eq!(graded_piece(&c, Piece::GrF(-1)).unwrap().dims(), &[0, 0]);
        let z = FDComplex::zero(0, 2)
            .with_filtration(Filtration::trivial(FiltrationKind::Decreasing, &[0, 0], 0))
            .unwrap();
        assert_eq!(graded_piece(&z, Piece::F(0)).unwrap().dims(), &[0, 0]);
    }

    #[test]
    fn two_step_weight_filtration() {
        // W_0 = the constant functions, W_1 = everything.
        let c = interval();
        let w0 = Subspace::from_vectors(2, &[vec![q(1), q(1)]]);
        let w = Filtration {
            kind: FiltrationKind::Increasing,
            lo: 0,
            spaces: vec![vec![w0, Subspace::full(2)], vec![Subspace::zero(1), Subspace::full(1)]],
        };
        let c = c.with_filtration(w).unwrap();
        let g0 = graded_piece(&c, Piece::GrW(0)).unwrap();
        let g1 = graded_piece(&c, Piece::GrW(1)).unwrap();
        assert_eq!(g0.dims(), &[1, 0]);
        assert_eq!(g1.dims(), &[1, 1]);
        assert_eq!(g0.cohomology(), vec![1, 0]);
        assert_eq!(g1.cohomology(), vec![0, 0]);

        // A filtration the differential does not respect.
        let bad = Filtration {
            kind: FiltrationKind::Increasing,
            lo: 0,
            spaces: vec![vec![Subspace::coordinate(2, [0]), Subspace::full(2)], vec![Subspace::zero(1), Subspace::full(1)]],
        };
        assert!(matches!(interval().with_filtration(bad), Err(CocubicalError::NotFiltered(_))));
    }
}
