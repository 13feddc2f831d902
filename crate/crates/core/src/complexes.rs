//! Eagon-Northcott, Buchsbaum-Rim and Koszul complexes of a homogeneous matrix,
//! with the certificates built on them: `d∘d = 0`, the Buchsbaum-Eisenbud
//! acyclicity criterion, graded Betti tables, Cohen-Macaulay type, the
//! annihilator of the cokernel and the codimension-two canonical module.
//!
//! Conventions for `Φ: F → G` with `rank G = g`, `rank F = f`, row twists `a_i`
//! and column twists `b_j`. Exterior powers of `F` are indexed by increasing
//! index sets `S`, divided powers of `G^∨` by exponent vectors `α`, and
//! `e_S ⊗ y^(α)` has twist `Σ_{j∈S} b_j - Σ_i a_i - Σ_i α_i a_i`. The
//! contraction differential is
//! `e_S ⊗ y^(α) ↦ Σ_l Σ_{α_i>0} (-1)^l Φ_{i,s_l} e_{S∖s_l} ⊗ y^(α-ε_i)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::determinantal::{classify, DeterminantalPresentation};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::grading::{binomial, hilbert_function, image_membership, matrix_piece, DegreeBasis, HilbertSubject};
use crate::groebner::{normal_form, Height, MonomialIndex};
use crate::linalg::{Echelon, ScalarMatrix};
use crate::matrix::{GradedFreeModule, HomogeneousMatrix};
use crate::minors::{adjugate, all_minors, bareiss_rank, minor, minors, subsets};
use crate::random::Sampler;
use crate::ring::{Polynomial, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComplexKind {
    EagonNorthcott,
    BuchsbaumRim,
    Koszul,
    Custom,
}

/// `0 → F_ℓ → ... → F_1 → F_0` with `d_k: F_k → F_{k-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    ring: Ring,
    modules: Vec<GradedFreeModule>,
    differentials: Vec<HomogeneousMatrix>,
    kind: ComplexKind,
}

impl FreeComplex {
    /// `differentials[k-1]` is `d_k`.
    pub fn new(
        ring: &Ring,
        modules: Vec<GradedFreeModule>,
        differentials: Vec<HomogeneousMatrix>,
        kind: ComplexKind,
    ) -> Result<FreeComplex> {
        if modules.is_empty() || differentials.len() + 1 != modules.len() {
            return Err(Error::Shape(format!(
                "{} modules need {} differentials, got {}",
                modules.len(),
                modules.len().saturating_sub(1),
                differentials.len()
            )));
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.target() != &modules[k] || d.source() != &modules[k + 1] {
                return Err(Error::Shape(format!("differential {} does not match its modules", k + 1)));
            }
        }
        Ok(FreeComplex { ring: ring.clone(), modules, differentials, kind })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn kind(&self) -> ComplexKind {
        self.kind
    }

    /// Index of the last module.
    pub fn len(&self) -> usize {
        self.differentials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.differentials.is_empty()
    }

    pub fn module(&self, i: usize) -> &GradedFreeModule {
        &self.modules[i]
    }

    pub fn modules(&self) -> &[GradedFreeModule] {
        &self.modules
    }

    /// `d_k: F_k → F_{k-1}` for `k = 1..=len`.
    pub fn differential(&self, k: usize) -> &HomogeneousMatrix {
        &self.differentials[k - 1]
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(GradedFreeModule::rank).collect()
    }

    /// Same modules, `d_k` replaced (the result is tagged custom).
    pub fn with_differential(&self, k: usize, d: HomogeneousMatrix) -> Result<FreeComplex> {
        let mut ds = self.differentials.clone();
        if k == 0 || k > ds.len() {
            return Err(Error::Shape(format!("no differential {}", k)));
        }
        ds[k - 1] = d;
        FreeComplex::new(&self.ring, self.modules.clone(), ds, ComplexKind::Custom)
    }
}

/// Exponent vectors of length `g` with sum `k`, lexicographically decreasing.
fn multisets(g: usize, k: usize) -> Vec<Vec<usize>> {
    if g == 0 {
        return if k == 0 { alloc::vec![Vec::new()] } else { Vec::new() };
    }
    if g == 1 {
        return alloc::vec![alloc::vec![k]];
    }
    let mut out = Vec::new();
    for first in (0..=k).rev() {
        for mut rest in multisets(g - 1, k - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

type Basis = Vec<(Vec<usize>, Vec<usize>)>;

fn tensor_basis(f: usize, g: usize, wedge: usize, dpow: usize) -> Basis {
    let mut out = Vec::new();
    if wedge > f {
        return out;
    }
    for s in subsets(f, wedge) {
        for a in multisets(g, dpow) {
            out.push((s.clone(), a));
        }
    }
    out
}

fn tensor_module(phi: &HomogeneousMatrix, basis: &Basis) -> GradedFreeModule {
    let sum_a: i64 = phi.target().twists().iter().sum();
    GradedFreeModule::new(
        basis
            .iter()
            .map(|(s, alpha)| {
                let b: i64 = s.iter().map(|&j| phi.source().twist(j)).sum();
                let c: i64 = alpha.iter().enumerate().map(|(i, &k)| k as i64 * phi.target().twist(i)).sum();
                b - sum_a - c
            })
            .collect(),
    )
}

/// Contraction `∧^{w}F ⊗ D_{k}(G^∨) → ∧^{w-1}F ⊗ D_{k-1}(G^∨)`.
fn contraction(
    phi: &HomogeneousMatrix,
    src: &Basis,
    tgt: &Basis,
    src_mod: &GradedFreeModule,
    tgt_mod: &GradedFreeModule,
) -> Result<HomogeneousMatrix> {
    let ring = phi.ring();
    let index: BTreeMap<&(Vec<usize>, Vec<usize>), usize> = tgt.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let mut entries: Vec<Vec<Polynomial>> = alloc::vec![alloc::vec![Polynomial::zero(ring); src.len()]; tgt.len()];
    for (col, (s, alpha)) in src.iter().enumerate() {
        for (l, &j) in s.iter().enumerate() {
            let rest: Vec<usize> = s.iter().copied().filter(|&x| x != j).collect();
            for i in 0..alpha.len() {
                if alpha[i] == 0 || phi.entry(i, j).is_zero() {
                    continue;
                }
                let mut beta = alpha.clone();
                beta[i] -= 1;
                let row = index[&(rest.clone(), beta)];
                let e = phi.entry(i, j);
                entries[row][col] = if l % 2 == 0 { &entries[row][col] + e } else { &entries[row][col] - e };
            }
        }
    }
    HomogeneousMatrix::new(ring, tgt_mod.clone(), src_mod.clone(), entries)
}

fn characteristic_guard(phi: &HomogeneousMatrix) -> Result<()> {
    let bound = phi.ncols().saturating_sub(phi.nrows());
    if let Field::Prime(p) = phi.ring().field() {
        if p as u128 <= bound as u128 {
            return Err(Error::Characteristic { characteristic: p, bound });
        }
    }
    Ok(())
}

/// Eagon-Northcott complex of a `g × f` matrix (`g ≤ f`):
/// `F_0 = R`, `F_k = ∧^{g+k-1}F ⊗ D_{k-1}(G^∨) ⊗ ∧^g G^∨` for `k = 1..=f-g+1`,
/// `d_1 = ∧^g Φ` (maximal minors).
pub fn eagon_northcott_of(phi: &HomogeneousMatrix) -> Result<FreeComplex> {
    let (g, f) = (phi.nrows(), phi.ncols());
    if g == 0 || g > f {
        return Err(Error::Shape(format!("Eagon-Northcott needs 1 ≤ rows ≤ columns, got {}x{}", g, f)));
    }
    characteristic_guard(phi)?;
    let ring = phi.ring();
    let rows: Vec<usize> = (0..g).collect();
    let mut bases: Vec<Basis> = Vec::new();
    let mut modules = alloc::vec![GradedFreeModule::uniform(1, 0)];
    for k in 1..=f - g + 1 {
        let b = tensor_basis(f, g, g + k - 1, k - 1);
        modules.push(tensor_module(phi, &b));
        bases.push(b);
    }
    let first: Vec<Polynomial> = bases[0].iter().map(|(s, _)| minor(phi, &rows, s)).collect();
    let mut ds =
        alloc::vec![HomogeneousMatrix::new(ring, modules[0].clone(), modules[1].clone(), alloc::vec![first])?];
    for k in 2..=f - g + 1 {
        ds.push(contraction(phi, &bases[k - 1], &bases[k - 2], &modules[k], &modules[k - 1])?);
    }
    FreeComplex::new(ring, modules, ds, ComplexKind::EagonNorthcott)
}

pub fn eagon_northcott(p: &DeterminantalPresentation) -> Result<FreeComplex> {
    eagon_northcott_of(p.matrix())
}

/// Buchsbaum-Rim complex of a `g × f` matrix (`g ≤ f`, `g = 0` allowed):
/// `F_0 = G`, `F_1 = F`, `F_2 = ∧^{g+1}F ⊗ ∧^g G^∨`,
/// `F_k = ∧^{g+k-1}F ⊗ D_{k-2}(G^∨) ⊗ ∧^g G^∨` for `k = 3..=f-g+1`;
/// `d_1 = Φ` and `d_2(e_S) = Σ_m (-1)^m det(Φ_{S∖s_m}) e_{s_m}`.
pub fn buchsbaum_rim_of(phi: &HomogeneousMatrix) -> Result<FreeComplex> {
    let (g, f) = (phi.nrows(), phi.ncols());
    if g > f {
        return Err(Error::Shape(format!("Buchsbaum-Rim needs rows ≤ columns, got {}x{}", g, f)));
    }
    characteristic_guard(phi)?;
    let ring = phi.ring();
    let rows: Vec<usize> = (0..g).collect();
    let mut modules = alloc::vec![phi.target().clone(), phi.source().clone()];
    let mut ds = alloc::vec![phi.clone()];
    if g == f {
        return FreeComplex::new(ring, modules, ds, ComplexKind::BuchsbaumRim);
    }
    let mut bases: Vec<Basis> = Vec::new();
    for k in 2..=f - g + 1 {
        let b = tensor_basis(f, g, g + k - 1, k - 2);
        if b.is_empty() {
            break;
        }
        modules.push(tensor_module(phi, &b));
        bases.push(b);
    }
    let mut second: Vec<Vec<Polynomial>> = alloc::vec![alloc::vec![Polynomial::zero(ring); bases[0].len()]; f];
    for (col, (s, _)) in bases[0].iter().enumerate() {
        for (m, &j) in s.iter().enumerate() {
            let rest: Vec<usize> = s.iter().copied().filter(|&x| x != j).collect();
            let det = minor(phi, &rows, &rest);
            second[j][col] = if m % 2 == 0 { det } else { -&det };
        }
    }
    ds.push(HomogeneousMatrix::new(ring, modules[1].clone(), modules[2].clone(), second)?);
    for k in 3..modules.len() {
        ds.push(contraction(phi, &bases[k - 2], &bases[k - 3], &modules[k], &modules[k - 1])?);
    }
    FreeComplex::new(ring, modules, ds, ComplexKind::BuchsbaumRim)
}

pub fn buchsbaum_rim(p: &DeterminantalPresentation) -> Result<FreeComplex> {
    buchsbaum_rim_of(p.matrix())
}

/// Koszul complex of homogeneous forms `f_1, ..., f_m`.
pub fn koszul(ring: &Ring, forms: &[Polynomial]) -> Result<FreeComplex> {
    let row: Vec<Polynomial> = forms.to_vec();
    let phi = HomogeneousMatrix::from_entries(ring, alloc::vec![row])?;
    let en = eagon_northcott_of(&phi)?;
    Ok(FreeComplex { kind: ComplexKind::Koszul, ..en })
}

/// Every composition `d_k ∘ d_{k+1}` vanishes identically.
pub fn verify_complex(c: &FreeComplex) -> bool {
    (1..c.len()).all(|k| c.differential(k).compose(c.differential(k + 1)).is_ok_and(|m| m.is_zero()))
}

/// Rank over the fraction field with a witnessing nonzero minor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCertificate {
    pub rank: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// Gaussian elimination on a dense scalar matrix; returns pivot (row, col)
/// pairs in original indices.
fn scalar_pivots(m: &ScalarMatrix) -> Vec<(usize, usize)> {
    let mut a = m.to_dense();
    let mut perm: Vec<usize> = (0..m.nrows).collect();
    let mut pivots = Vec::new();
    let mut k = 0;
    for c in 0..m.ncols {
        if k == m.nrows {
            break;
        }
        let Some(p) = (k..m.nrows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(p, k);
        perm.swap(p, k);
        let inv = a[k][c].inv();
        for i in k + 1..m.nrows {
            if a[i][c].is_zero() {
                continue;
            }
            let factor = a[i][c].mul(&inv);
            for j in c..m.ncols {
                let t = factor.mul(&a[k][j]);
                a[i][j] = a[i][j].sub(&t);
            }
        }
        pivots.push((perm[k], c));
        k += 1;
    }
    pivots
}

const RANK_POINTS: usize = 3;
const RANK_EXTRA_POINTS: usize = 32;

/// Largest `s` with `I_s(Φ) ≠ 0`. Seeded random evaluations propose a rank
/// and a nonzero minor (checked as a polynomial); unless the proposal is
/// already `min(rows, cols)`, fraction-free elimination confirms it is not
/// larger.
pub fn rank_of_map(phi: &HomogeneousMatrix, seed: u64) -> RankCertificate {
    let mut sampler = Sampler::new(phi.ring().field(), seed);
    let full = phi.nrows().min(phi.ncols());
    let mut best: Vec<(usize, usize)> = Vec::new();
    let mut target: Option<usize> = None;
    let mut tries = 0;
    loop {
        if best.len() == full || target.is_some_and(|t| best.len() >= t) {
            break;
        }
        if tries == RANK_POINTS && target.is_none() {
            target = Some(bareiss_rank(phi));
            continue;
        }
        if tries >= RANK_POINTS + RANK_EXTRA_POINTS {
            break;
        }
        tries += 1;
        let point = sampler.point(phi.ring());
        let m = phi.evaluate(&point).expect("point has the ring's length");
        let piv = scalar_pivots(&m);
        if piv.len() > best.len() {
            let mut rows: Vec<usize> = piv.iter().map(|p| p.0).collect();
            rows.sort_unstable();
            let cols: Vec<usize> = piv.iter().map(|p| p.1).collect();
            if !minor(phi, &rows, &cols).is_zero() {
                best = rows.into_iter().zip(cols).collect();
            }
        }
    }
    if let Some(t) = target {
        if best.len() < t {
            // no witness found by sampling; fall back to the exhaustive search
            let found = all_minors(phi, t).expect("t ≤ min(rows, cols)").into_iter().find(|m| !m.2.is_zero());
            let (rows, cols, _) = found.expect("a nonzero minor of the exact rank");
            return RankCertificate { rank: t, rows, cols };
        }
    }
    let (rows, cols) = best.into_iter().unzip();
    let mut cert = RankCertificate { rank: 0, rows, cols };
    cert.rank = cert.rows.len();
    cert
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcyclicityEntry {
    /// `i` for the differential `d_i`.
    pub position: usize,
    pub expected_rank: usize,
    pub computed_rank: usize,
    /// Height of `I_{r_i}(d_i)`, `r_i` the computed rank.
    pub minor_height: Height,
    pub rank_ok: bool,
    pub height_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcyclicityReport {
    pub entries: Vec<AcyclicityEntry>,
    pub pass: bool,
}

impl AcyclicityReport {
    pub fn first_failure(&self) -> Option<&AcyclicityEntry> {
        self.entries.iter().find(|e| !(e.rank_ok && e.height_ok))
    }
}

/// Buchsbaum-Eisenbud: `0 → F_ℓ → ... → F_0` is acyclic iff for every
/// `i ≥ 1`, `r_i + r_{i+1} = rank F_i` and `height I_{r_i}(d_i) ≥ i`.
pub fn buchsbaum_eisenbud(c: &FreeComplex, seed: u64) -> AcyclicityReport {
    let len = c.len();
    let ranks: Vec<usize> = (1..=len).map(|k| rank_of_map(c.differential(k), seed.wrapping_add(k as u64)).rank).collect();
    let mut entries = Vec::with_capacity(len);
    for i in 1..=len {
        let next = if i < len { ranks[i] } else { 0 };
        let expected_rank = c.module(i).rank().saturating_sub(next);
        let computed_rank = ranks[i - 1];
        let rank_ok = computed_rank + next == c.module(i).rank();
        let minor_height = if computed_rank == 0 {
            Height::Infinite
        } else {
            minors(c.differential(i), computed_rank).expect("rank ≤ size").height()
        };
        let height_ok = minor_height.at_least(i);
        entries.push(AcyclicityEntry { position: i, expected_rank, computed_rank, minor_height, rank_ok, height_ok });
    }
    let pass = entries.iter().all(|e| e.rank_ok && e.height_ok);
    AcyclicityReport { entries, pass }
}

/// Graded Betti numbers: `(i, d) ↦` number of generators of `F_i` in degree `d`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, i64), usize>,
}

impl BettiTable {
    pub fn get(&self, i: usize, d: i64) -> usize {
        self.entries.get(&(i, d)).copied().unwrap_or(0)
    }

    /// Total rank at each homological position.
    pub fn ranks(&self) -> Vec<usize> {
        let top = self.entries.keys().map(|k| k.0).max().map_or(0, |m| m + 1);
        let mut out = alloc::vec![0; top];
        for ((i, _), v) in &self.entries {
            out[*i] += v;
        }
        out
    }

    /// The degrees appearing at position `i`, with multiplicities.
    pub fn row(&self, i: usize) -> BTreeMap<i64, usize> {
        self.entries.iter().filter(|((j, _), _)| *j == i).map(|((_, d), v)| (*d, *v)).collect()
    }
}

/// Reads the Betti table off a complex, which must be minimal (no nonzero
/// constant entries in any differential).
pub fn betti_table(c: &FreeComplex) -> Result<BettiTable> {
    for k in 1..=c.len() {
        if let Some((row, col)) = c.differential(k).unit_entry() {
            return Err(Error::NonMinimal { differential: k, row, col });
        }
    }
    let mut entries = BTreeMap::new();
    for (i, m) in c.modules().iter().enumerate() {
        for &a in m.twists() {
            *entries.entry((i, a)).or_insert(0) += 1;
        }
    }
    Ok(BettiTable { entries })
}

fn require_standard(p: &DeterminantalPresentation) -> Result<()> {
    let report = classify(p);
    if !report.is_standard {
        return Err(Error::Precondition(format!(
            "presentation is not standard: height {} instead of {}",
            report.actual_height, report.expected_codim
        )));
    }
    Ok(())
}

/// Rank of the last module of the (minimal) Eagon-Northcott resolution,
/// checked against `C(r+t-1, r)`.
pub fn cm_type(p: &DeterminantalPresentation) -> Result<usize> {
    require_standard(p)?;
    let en = eagon_northcott(p)?;
    betti_table(&en)?;
    let last = en.module(en.len()).rank();
    let expected = binomial((p.r() + p.t() - 1) as i64, p.r() as i64);
    if last != expected {
        return Err(Error::Verification(format!("last Eagon-Northcott rank {} but C(r+t-1, r) = {}", last, expected)));
    }
    Ok(last)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnnihilatorDirection {
    /// Some maximal minor fails to kill the cokernel.
    MinorsAnnihilate,
    /// Some annihilating form is not in the ideal of maximal minors.
    AnnihilatorInMinors,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilatorReport {
    pub d_max: i64,
    pub minors_checked: usize,
    /// `(degree, dim of the annihilator in that degree)`.
    pub annihilator_dims: Vec<(i64, usize)>,
    pub failure: Option<(i64, AnnihilatorDirection)>,
}

impl AnnihilatorReport {
    pub fn pass(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks `Ann(coker Φ) = I(Φ)` in degrees up to `d_max`.
///
/// `⊇`: for each maximal minor `m = det Φ_S` and target generator `e_j`, the
/// adjugate column `adj(Φ_S) e_j` is an explicit preimage of `m e_j`, checked
/// as a polynomial identity and again by the linear-algebra membership test.
/// `⊆`: in each degree the forms `f` with `f e_j ∈ im Φ` for all `j` are a
/// kernel; each kernel vector must reduce to zero modulo a Groebner basis of
/// `I(Φ)`.
pub fn verify_annihilator(p: &DeterminantalPresentation, d_max: i64) -> Result<AnnihilatorReport> {
    require_standard(p)?;
    let phi = p.matrix();
    let ring = phi.ring();
    let t = p.t();
    let rows: Vec<usize> = (0..t).collect();
    let mut minors_checked = 0;
    for cols in subsets(phi.ncols(), t) {
        let sq: Vec<Vec<Polynomial>> = rows.iter().map(|&i| cols.iter().map(|&j| phi.entry(i, j).clone()).collect()).collect();
        let m = minor(phi, &rows, &cols);
        if m.is_zero() {
            continue;
        }
        let adj = adjugate(ring, &sq);
        for j in 0..t {
            let mut x: Vec<Polynomial> = (0..phi.ncols()).map(|_| Polynomial::zero(ring)).collect();
            for (k, &c) in cols.iter().enumerate() {
                x[c] = adj[k][j].clone();
            }
            let target: Vec<Polynomial> =
                (0..t).map(|i| if i == j { m.clone() } else { Polynomial::zero(ring) }).collect();
            let degree = m.total_degree().map_or(0, |d| d as i64) + phi.target().twist(j);
            if phi.apply(&x) != target || image_membership(&target, phi)?.is_none() {
                return Ok(AnnihilatorReport {
                    d_max,
                    minors_checked,
                    annihilator_dims: Vec::new(),
                    failure: Some((degree, AnnihilatorDirection::MinorsAnnihilate)),
                });
            }
        }
        minors_checked += 1;
    }

    let gb = p.ideal().groebner();
    let field = ring.field();
    let mut images: BTreeMap<i64, (DegreeBasis, Echelon)> = BTreeMap::new();
    let mut annihilator_dims = Vec::new();
    for d in 0..=d_max {
        let forms = MonomialIndex::new(ring, d as u32);
        // residues of m e_j modulo (im Φ)_{d + a_j}, concatenated over j
        let mut offsets = Vec::with_capacity(t);
        let mut width = 0;
        for j in 0..t {
            let dd = d + phi.target().twist(j);
            let entry = images.entry(dd).or_insert_with(|| {
                let tgt = DegreeBasis::new(ring, phi.target(), dd);
                let piece = matrix_piece(phi, dd);
                let mut e = Echelon::new(field, false);
                for col in piece.columns {
                    e.insert(col, 0);
                }
                (tgt, e)
            });
            offsets.push(width);
            width += entry.0.len();
        }
        let mut kernel = Echelon::new(field, true);
        let mut relations = Vec::new();
        for (k, mono) in forms.monomials().iter().enumerate() {
            let mut v = Vec::new();
            for j in 0..t {
                let dd = d + phi.target().twist(j);
                let (tgt, e) = &images[&dd];
                let mut vec: Vec<Polynomial> = (0..t).map(|_| Polynomial::zero(ring)).collect();
                vec[j] = Polynomial::term(ring, mono.clone(), field.one());
                let (rest, _) = e.reduce(tgt.vectorize(&vec)?);
                v.extend(rest.into_iter().map(|(i, c)| (offsets[j] + i, c)));
            }
            if let Some(rel) = kernel.insert(v, k) {
                relations.push(rel);
            }
        }
        annihilator_dims.push((d, relations.len()));
        for rel in relations {
            let f = forms.polynomial(ring, &rel);
            if !normal_form(&f, &gb)?.is_zero() {
                return Ok(AnnihilatorReport {
                    d_max,
                    minors_checked,
                    annihilator_dims,
                    failure: Some((d, AnnihilatorDirection::AnnihilatorInMinors)),
                });
            }
        }
    }
    Ok(AnnihilatorReport { d_max, minors_checked, annihilator_dims, failure: None })
}

/// `ω = coker(d_ℓ^∨)` twisted by `-(n+1)` for a codimension-two presentation,
/// compared with `M_X = coker Φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalModule {
    pub presentation: HomogeneousMatrix,
    /// `HF(M_X, d) = HF(ω, d + shift)` on the checked degrees, i.e. `M_X ≅ ω(shift)`.
    pub shift: i64,
    pub checked: core::ops::RangeInclusive<i64>,
    pub cyclic: bool,
}

fn first_nonzero(phi: &HomogeneousMatrix) -> Result<Option<i64>> {
    let Some(lo) = phi.target().twists().iter().copied().min() else { return Ok(None) };
    let hi = phi.target().twists().iter().copied().max().unwrap_or(lo);
    for d in lo..=hi {
        if hilbert_function(HilbertSubject::Cokernel(phi), d)? > 0 {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

pub fn canonical_module(p: &DeterminantalPresentation, d_max: i64) -> Result<CanonicalModule> {
    require_standard(p)?;
    if p.r() != 1 {
        return Err(Error::Precondition(format!("canonical module needs codimension 2, got {}", p.r() + 1)));
    }
    let en = eagon_northcott(p)?;
    let n1 = p.ring().nvars() as i64;
    let omega = en.differential(en.len()).dual(n1);
    let phi = p.matrix();
    let (Some(x0), Some(w0)) = (first_nonzero(phi)?, first_nonzero(&omega)?) else {
        return Err(Error::Verification("a cokernel vanishes in its generator degrees".into()));
    };
    let shift = w0 - x0;
    let lo = x0 - 1;
    for d in lo..=d_max {
        let a = hilbert_function(HilbertSubject::Cokernel(phi), d)?;
        let b = hilbert_function(HilbertSubject::Cokernel(&omega), d + shift)?;
        if a != b {
            return Err(Error::Verification(format!(
                "HF(M_X, {}) = {} but HF(omega, {}) = {}",
                d,
                a,
                d + shift,
                b
            )));
        }
    }
    let cyclic = omega.nrows() == 1;
    Ok(CanonicalModule { presentation: omega, shift, checked: lo..=d_max, cyclic })
}

/// Membership of every entry of `d_2` of the Buchsbaum-Rim complex in `I(Φ)`.
pub fn br_entries_in_ideal(p: &DeterminantalPresentation) -> Result<bool> {
    let br = buchsbaum_rim(p)?;
    if br.len() < 2 {
        return Ok(true);
    }
    let gb = p.ideal().groebner();
    for row in br.differential(2).entries() {
        for e in row {
            if !normal_form(e, &gb)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
