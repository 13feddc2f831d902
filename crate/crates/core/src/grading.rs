//! Degree pieces of graded free modules and homogeneous maps.
//!
//! Everything here reduces a graded question to finite linear algebra in one
//! degree at a time: bases of `F_d`, the scalar matrix of `Φ` on `F_d`, Hilbert
//! functions of quotients, cokernels and kernels, membership in an image, and
//! degreewise exactness of a free complex. Results are only claimed for the
//! degrees actually checked.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use crate::complexes::FreeComplex;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::groebner::{IdealBasis, MonomialIndex};
use crate::linalg::{Echelon, ScalarMatrix, SparseVec};
use crate::minors::{minor, subsets};
use crate::matrix::{GradedFreeModule, HomogeneousMatrix};
use crate::ring::{Homogeneity, Monomial, Polynomial, Ring};

/// Ordered basis `(generator, monomial)` of the degree-`d` piece of a graded free module.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    degree: i64,
    offsets: Vec<usize>,
    pieces: Vec<Option<MonomialIndex>>,
    len: usize,
}

impl DegreeBasis {
    pub fn new(ring: &Ring, module: &GradedFreeModule, d: i64) -> DegreeBasis {
        let mut cache: BTreeMap<i64, MonomialIndex> = BTreeMap::new();
        let mut offsets = Vec::with_capacity(module.rank());
        let mut pieces = Vec::with_capacity(module.rank());
        let mut len = 0;
        for &a in module.twists() {
            offsets.push(len);
            let e = d - a;
            if e < 0 {
                pieces.push(None);
                continue;
            }
            let idx = cache.entry(e).or_insert_with(|| MonomialIndex::new(ring, e as u32)).clone();
            len += idx.len();
            pieces.push(Some(idx));
        }
        DegreeBasis { degree: d, offsets, pieces, len }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Basis elements in order.
    pub fn elements(&self) -> Vec<(usize, Monomial)> {
        let mut out = Vec::with_capacity(self.len);
        for (j, p) in self.pieces.iter().enumerate() {
            if let Some(idx) = p {
                out.extend(idx.monomials().iter().map(|m| (j, m.clone())));
            }
        }
        out
    }

    pub fn position(&self, generator: usize, m: &Monomial) -> Option<usize> {
        let idx = self.pieces[generator].as_ref()?;
        Some(self.offsets[generator] + idx.position(m)?)
    }

    /// Coordinates of `v = sum_i v_i e_i`; each `v_i` must be zero or homogeneous
    /// of degree `d - twist_i`.
    pub fn vectorize(&self, v: &[Polynomial]) -> Result<SparseVec> {
        let mut out = Vec::new();
        for (i, p) in v.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let idx = self.pieces[i].as_ref().ok_or_else(|| {
                Error::DegreeMismatch(alloc::format!("component {} cannot live in degree {}", i, self.degree))
            })?;
            for (m, c) in p.terms() {
                let k = idx.position(m).ok_or_else(|| {
                    Error::DegreeMismatch(alloc::format!("component {} has a term of the wrong degree", i))
                })?;
                out.push((self.offsets[i] + k, c.clone()));
            }
        }
        out.sort_by_key(|(k, _)| *k);
        Ok(out)
    }

    /// Inverse of [`DegreeBasis::vectorize`].
    pub fn element(&self, ring: &Ring, v: &[(usize, FieldElement)]) -> Vec<Polynomial> {
        let mut comps: Vec<Vec<(Monomial, FieldElement)>> = alloc::vec![Vec::new(); self.pieces.len()];
        for (k, c) in v {
            let j = (0..self.pieces.len())
                .find(|&g| {
                    self.pieces[g].as_ref().is_some_and(|p| *k >= self.offsets[g] && *k < self.offsets[g] + p.len())
                })
                .expect("coordinate inside the basis");
            let idx = self.pieces[j].as_ref().expect("coordinate inside a nonempty piece");
            comps[j].push((idx.monomials()[k - self.offsets[j]].clone(), c.clone()));
        }
        comps.into_iter().map(|t| Polynomial::from_terms(ring, t)).collect()
    }
}

pub fn degree_basis(ring: &Ring, module: &GradedFreeModule, d: i64) -> DegreeBasis {
    DegreeBasis::new(ring, module, d)
}

/// The `k`-linear map `(source)_d → (target)_d` in degree-basis coordinates.
pub fn matrix_piece(phi: &HomogeneousMatrix, d: i64) -> ScalarMatrix {
    let ring = phi.ring();
    let src = DegreeBasis::new(ring, phi.source(), d);
    let tgt = DegreeBasis::new(ring, phi.target(), d);
    piece_with_bases(phi, &src, &tgt)
}

fn piece_with_bases(phi: &HomogeneousMatrix, src: &DegreeBasis, tgt: &DegreeBasis) -> ScalarMatrix {
    let field = phi.ring().field();
    let mut columns = Vec::with_capacity(src.len());
    for (j, m) in src.elements() {
        let mut col: SparseVec = Vec::new();
        for i in 0..phi.nrows() {
            for (t, c) in phi.entry(i, j).terms() {
                let pos = tgt.position(i, &t.mul(&m)).expect("homogeneous entry lands in the target piece");
                col.push((pos, c.clone()));
            }
        }
        col.sort_by_key(|(k, _)| *k);
        columns.push(col);
    }
    ScalarMatrix { field, nrows: tgt.len(), ncols: src.len(), columns }
}

/// What a Hilbert function is asked of.
#[derive(Clone, Copy, Debug)]
pub enum HilbertSubject<'a> {
    Quotient(&'a IdealBasis),
    Cokernel(&'a HomogeneousMatrix),
    Kernel(&'a HomogeneousMatrix),
}

pub fn hilbert_function(subject: HilbertSubject<'_>, d: i64) -> Result<usize> {
    match subject {
        HilbertSubject::Quotient(ideal) => hilbert_quotient(ideal, d),
        HilbertSubject::Cokernel(phi) => Ok(PieceRanker::new(phi)?.cokernel_dim(d)),
        HilbertSubject::Kernel(phi) => Ok(PieceRanker::new(phi)?.kernel_dim(d)),
    }
}

/// Syzygies of the columns of a `g × f` matrix: for each `(g+1)`-subset `S`,
/// `Σ_m (-1)^m det(Φ_{S∖s_m}) e_{s_m}` (a determinant with a repeated row).
/// For `g = 0` every unit vector is a syzygy.
pub fn column_syzygies(phi: &HomogeneousMatrix) -> Vec<Vec<Polynomial>> {
    let ring = phi.ring();
    let g = phi.nrows();
    let rows: Vec<usize> = (0..g).collect();
    let mut out = Vec::new();
    for s in subsets(phi.ncols(), g + 1) {
        let mut v: Vec<Polynomial> = (0..phi.ncols()).map(|_| Polynomial::zero(ring)).collect();
        for (m, &j) in s.iter().enumerate() {
            let rest: Vec<usize> = s.iter().copied().filter(|&x| x != j).collect();
            let det = minor(phi, &rows, &rest);
            v[j] = if m % 2 == 0 { det } else { -&det };
        }
        if v.iter().any(|p| !p.is_zero()) {
            out.push(v);
        }
    }
    out
}

/// Exact ranks of the degree pieces of one map, using known syzygies as
/// kernel certificates (see [`ScalarMatrix::rank_with_kernel`]).
#[derive(Clone, Debug)]
pub struct PieceRanker {
    phi: HomogeneousMatrix,
    /// `(s, deg s)` with `Φ s = 0`.
    syzygies: Vec<(Vec<Polynomial>, i64)>,
}

impl PieceRanker {
    /// Certifies with [`column_syzygies`].
    pub fn new(phi: &HomogeneousMatrix) -> Result<PieceRanker> {
        PieceRanker::with_syzygies(phi, column_syzygies(phi))
    }

    /// Each candidate must be a homogeneous element of the source with `Φ s = 0`.
    pub fn with_syzygies(phi: &HomogeneousMatrix, candidates: Vec<Vec<Polynomial>>) -> Result<PieceRanker> {
        let mut syzygies = Vec::with_capacity(candidates.len());
        for s in candidates {
            if s.len() != phi.ncols() {
                return Err(Error::Shape("syzygy has the wrong length".into()));
            }
            if phi.apply(&s).iter().any(|p| !p.is_zero()) {
                return Err(Error::Verification("candidate syzygy is not in the kernel".into()));
            }
            let mut degree = None;
            for (j, p) in s.iter().enumerate() {
                match p.homogeneous_degree() {
                    Homogeneity::Zero => {}
                    Homogeneity::NotHomogeneous => return Err(Error::Inhomogeneous { row: j, col: 0 }),
                    Homogeneity::Degree(e) => {
                        let d = e as i64 + phi.source().twist(j);
                        if degree.is_some_and(|d0| d0 != d) {
                            return Err(Error::DegreeMismatch("syzygy is not homogeneous".into()));
                        }
                        degree = Some(d);
                    }
                }
            }
            if let Some(d) = degree {
                syzygies.push((s, d));
            }
        }
        Ok(PieceRanker { phi: phi.clone(), syzygies })
    }

    pub fn rank(&self, d: i64) -> usize {
        let ring = self.phi.ring();
        let src = DegreeBasis::new(ring, self.phi.source(), d);
        let tgt = DegreeBasis::new(ring, self.phi.target(), d);
        let piece = piece_with_bases(&self.phi, &src, &tgt);
        if self.syzygies.is_empty() {
            return piece.rank();
        }
        let one = ring.field().one();
        let mut columns = Vec::new();
        for (s, e) in &self.syzygies {
            if *e > d {
                continue;
            }
            for m in Monomial::all_of_degree(ring.nvars(), (d - e) as u32) {
                let v: Vec<Polynomial> = s.iter().map(|p| p.mul_term(&m, &one)).collect();
                columns.push(src.vectorize(&v).expect("multiples of a homogeneous syzygy lie in the piece"));
            }
        }
        let kernel = ScalarMatrix { field: ring.field(), nrows: src.len(), ncols: columns.len(), columns };
        piece.rank_with_kernel(Some(&kernel))
    }

    pub fn matrix(&self) -> &HomogeneousMatrix {
        &self.phi
    }

    pub fn cokernel_dim(&self, d: i64) -> usize {
        free_dimension(self.phi.ring(), self.phi.target(), d) - self.rank(d)
    }

    pub fn kernel_dim(&self, d: i64) -> usize {
        free_dimension(self.phi.ring(), self.phi.source(), d) - self.rank(d)
    }
}

/// `dim_k (R/I)_d` as the cokernel of the row of generators, whose Koszul
/// relations serve as rank certificates.
pub fn hilbert_quotient(ideal: &IdealBasis, d: i64) -> Result<usize> {
    if d < 0 {
        return Ok(0);
    }
    Ok(quotient_ranker(ideal)?.cokernel_dim(d))
}

/// Ranker for `R^k → R` given by the nonzero generators; the zero ideal gives
/// the zero map from a rank-0 module.
pub fn quotient_ranker(ideal: &IdealBasis) -> Result<PieceRanker> {
    let ring = ideal.ring();
    let mut twists = Vec::new();
    let mut row = Vec::new();
    for (k, g) in ideal.generators().iter().enumerate() {
        match g.homogeneous_degree() {
            Homogeneity::Degree(dg) => {
                twists.push(dg as i64);
                row.push(g.clone());
            }
            Homogeneity::Zero => {}
            Homogeneity::NotHomogeneous => {
                return Err(Error::DegreeMismatch(alloc::format!("generator {} is not homogeneous", k)))
            }
        }
    }
    let phi = HomogeneousMatrix::new(ring, GradedFreeModule::uniform(1, 0), GradedFreeModule::new(twists), alloc::vec![row])?;
    PieceRanker::new(&phi)
}

/// Dimension of `(F)_d` for a graded free module.
pub fn free_dimension(ring: &Ring, module: &GradedFreeModule, d: i64) -> usize {
    let n = ring.nvars() as i64;
    module.twists().iter().map(|a| if d >= *a { binomial(d - a + n - 1, n - 1) } else { 0 }).sum()
}

pub(crate) fn binomial(n: i64, k: i64) -> usize {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Decides `v ∈ im Φ`; on success returns a preimage `w` with `Φ w = v`.
pub fn image_membership(v: &[Polynomial], phi: &HomogeneousMatrix) -> Result<Option<Vec<Polynomial>>> {
    if v.len() != phi.nrows() {
        return Err(Error::Shape(alloc::format!("vector of length {} for {} rows", v.len(), phi.nrows())));
    }
    let ring = phi.ring();
    let mut degree: Option<i64> = None;
    for (i, p) in v.iter().enumerate() {
        match p.homogeneous_degree() {
            Homogeneity::Zero => {}
            Homogeneity::NotHomogeneous => {
                return Err(Error::DegreeMismatch(alloc::format!("component {} is not homogeneous", i)))
            }
            Homogeneity::Degree(e) => {
                let d = e as i64 + phi.target().twist(i);
                if degree.is_some_and(|d0| d0 != d) {
                    return Err(Error::DegreeMismatch("components disagree on the degree".into()));
                }
                degree = Some(d);
            }
        }
    }
    let Some(d) = degree else {
        return Ok(Some((0..phi.ncols()).map(|_| Polynomial::zero(ring)).collect()));
    };
    let src = DegreeBasis::new(ring, phi.source(), d);
    let tgt = DegreeBasis::new(ring, phi.target(), d);
    let piece = piece_with_bases(phi, &src, &tgt);
    let mut e = Echelon::new(ring.field(), true);
    for (j, col) in piece.columns.into_iter().enumerate() {
        e.insert(col, j);
    }
    let (rest, acc) = e.reduce(tgt.vectorize(v)?);
    if !rest.is_empty() {
        return Ok(None);
    }
    Ok(Some(src.element(ring, &acc)))
}

/// One (position, degree) cell of a degreewise exactness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessRecord {
    pub position: usize,
    pub degree: i64,
    pub kernel_dim: usize,
    pub image_dim: usize,
}

impl ExactnessRecord {
    pub fn exact(&self) -> bool {
        self.kernel_dim == self.image_dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub records: Vec<ExactnessRecord>,
}

impl ExactnessReport {
    pub fn all_exact(&self) -> bool {
        self.records.iter().all(ExactnessRecord::exact)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ExactnessRecord> {
        self.records.iter().filter(|r| !r.exact())
    }
}

/// Compares `dim ker d_i` with `dim im d_{i+1}` on `F_i` for every position
/// `i = 1..=len` (the last position checks injectivity) and every degree in range.
pub fn graded_exactness_check(c: &FreeComplex, degrees: RangeInclusive<i64>) -> ExactnessReport {
    let ring = c.ring();
    let len = c.len();
    // d_{k+1} certifies ranks of d_k only when the composition really vanishes
    let rankers: Vec<PieceRanker> = (1..=len)
        .map(|k| {
            let d = c.differential(k);
            let certified = k < len
                && d.compose(c.differential(k + 1)).is_ok_and(|m| m.is_zero());
            let candidates = if certified { columns_of(c.differential(k + 1)) } else { Vec::new() };
            PieceRanker::with_syzygies(d, candidates).expect("columns of the next differential are syzygies")
        })
        .collect();
    let mut records = Vec::new();
    for d in degrees {
        let ranks: Vec<usize> = rankers.iter().map(|r| r.rank(d)).collect();
        for pos in 1..=len {
            let dim = free_dimension(ring, c.module(pos), d);
            let kernel_dim = dim - ranks[pos - 1];
            let image_dim = if pos < len { ranks[pos] } else { 0 };
            records.push(ExactnessRecord { position: pos, degree: d, kernel_dim, image_dim });
        }
    }
    ExactnessReport { records }
}

pub(crate) fn columns_of(m: &HomogeneousMatrix) -> Vec<Vec<Polynomial>> {
    (0..m.ncols()).map(|j| (0..m.nrows()).map(|i| m.entry(i, j).clone()).collect()).collect()
}

/// `sum_i (-1)^i dim (F_i)_d`, the Hilbert function of the module a resolution resolves.
pub fn euler_characteristic(c: &FreeComplex, d: i64) -> i64 {
    (0..=c.len())
        .map(|i| {
            let v = free_dimension(c.ring(), c.module(i), d) as i64;
            if i % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .sum()
}
