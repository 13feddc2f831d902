//! Sparse exact linear algebra over a [`Field`].
//!
//! Degree pieces of graded maps are small, very sparse matrices whose columns
//! are monomial multiples of polynomial vectors. They are handled as lists of
//! sparse columns reduced into a semi-echelon form (distinct pivots, each row
//! starting at its pivot), optionally tracking how each echelon row is built
//! from the inserted vectors so that preimages and kernels can be read off.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::field::{Field, FieldElement};

/// Sparse vector: `(index, coefficient)` pairs, strictly increasing indices, no zeros.
pub type SparseVec = Vec<(usize, FieldElement)>;

/// Matrix stored column by column; `columns[j]` is a sparse vector of length `nrows`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarMatrix {
    pub field: Field,
    pub nrows: usize,
    pub ncols: usize,
    pub columns: Vec<SparseVec>,
}

impl ScalarMatrix {
    pub fn zero(field: Field, nrows: usize, ncols: usize) -> ScalarMatrix {
        ScalarMatrix { field, nrows, ncols, columns: alloc::vec![Vec::new(); ncols] }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, row: usize, col: usize) -> FieldElement {
        self.columns[col]
            .binary_search_by_key(&row, |(i, _)| *i)
            .map(|k| self.columns[col][k].1.clone())
            .unwrap_or_else(|_| self.field.zero())
    }

    pub fn to_dense(&self) -> Vec<Vec<FieldElement>> {
        let mut out = alloc::vec![alloc::vec![self.field.zero(); self.ncols]; self.nrows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, c) in col {
                out[*i][j] = c.clone();
            }
        }
        out
    }

    /// `self * other`.
    pub fn mul(&self, other: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.ncols, other.nrows, "shape mismatch in product");
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc = BTreeMap::new();
                for (k, c) in col {
                    axpy(&mut acc, c, &self.columns[*k]);
                }
                into_sparse(acc)
            })
            .collect();
        ScalarMatrix { field: self.field, nrows: self.nrows, ncols: other.ncols, columns }
    }

    /// Exact rank. Over `F_p` this is a word-size elimination; over `Q` a
    /// modular rank that already equals `min(nrows, ncols)` is accepted, and
    /// anything else is settled by rational elimination.
    pub fn rank(&self) -> usize {
        self.rank_with_kernel(None)
    }

    /// Exact rank, given columns `kernel` with `self * kernel = 0` over the
    /// field. Over `Q`, `rank_p(self) ≤ rank ≤ ncols - rank_p(kernel)`; when the
    /// bounds meet no rational arithmetic is needed.
    pub fn rank_with_kernel(&self, kernel: Option<&ScalarMatrix>) -> usize {
        match self.field {
            Field::Prime(p) => modular_rank(self, p).expect("entries live in F_p"),
            Field::Rational => {
                let Some(lower) = modular_rank(self, CERTIFICATE_PRIME) else {
                    return self.exact_rank();
                };
                let mut upper = self.nrows.min(self.ncols);
                if let Some(k) = kernel {
                    if let Some(kr) = modular_rank(k, CERTIFICATE_PRIME) {
                        upper = upper.min(self.ncols - kr);
                    }
                }
                if lower == upper {
                    lower
                } else {
                    self.exact_rank()
                }
            }
        }
    }

    /// Rank by elimination in the field itself.
    pub fn exact_rank(&self) -> usize {
        let mut e = Echelon::new(self.field, false);
        for col in &self.columns {
            e.insert(col.clone(), 0);
        }
        e.rank()
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let mut e = Echelon::new(self.field, true);
        self.columns
            .iter()
            .enumerate()
            .filter_map(|(j, col)| e.insert(col.clone(), j))
            .collect()
    }
}

/// Largest prime below `2^62`, used for modular rank bounds over `Q`.
pub const CERTIFICATE_PRIME: u64 = 4_611_686_018_427_387_847;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut acc, mut base, mut e) = (1u64, a, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Rank of the reduction modulo `p`; `None` if some entry has no image in `F_p`.
pub fn modular_rank(m: &ScalarMatrix, p: u64) -> Option<usize> {
    let n = m.nrows;
    let mut pivots: Vec<Option<Vec<(usize, u64)>>> = alloc::vec![None; n];
    let mut work: Vec<u64> = alloc::vec![0; n];
    let mut rank = 0;
    for col in &m.columns {
        let Some(&(lo, _)) = col.first() else { continue };
        for (i, c) in col {
            work[*i] = c.residue(p)?;
        }
        let mut fresh = None;
        for i in lo..n {
            let c = work[i];
            if c == 0 {
                continue;
            }
            match &pivots[i] {
                Some(row) => {
                    for &(j, v) in row {
                        let t = mul_mod(c, v, p);
                        work[j] = if work[j] >= t { work[j] - t } else { work[j] + p - t };
                    }
                }
                None => {
                    fresh = Some(i);
                    break;
                }
            }
        }
        if let Some(i) = fresh {
            let s = inv_mod(work[i], p);
            let row = (i..n).filter(|&j| work[j] != 0).map(|j| (j, mul_mod(work[j], s, p))).collect();
            pivots[i] = Some(row);
            rank += 1;
        }
        work.iter_mut().for_each(|w| *w = 0);
    }
    Some(rank)
}

/// `y += c * x` on a keyed working vector.
pub(crate) fn axpy(y: &mut BTreeMap<usize, FieldElement>, c: &FieldElement, x: &[(usize, FieldElement)]) {
    for (i, v) in x {
        let t = c.mul(v);
        match y.get_mut(i) {
            Some(e) => {
                *e = e.add(&t);
                if e.is_zero() {
                    y.remove(i);
                }
            }
            None => {
                if !t.is_zero() {
                    y.insert(*i, t);
                }
            }
        }
    }
}

pub(crate) fn into_sparse(map: BTreeMap<usize, FieldElement>) -> SparseVec {
    map.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

#[derive(Clone, Debug)]
struct Row {
    entries: SparseVec,
    combo: SparseVec,
}

/// Incrementally built semi-echelon basis of a subspace.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    track: bool,
    rows: BTreeMap<usize, Row>,
}

impl Echelon {
    /// With `track`, each stored row remembers its expression in the tagged inputs.
    pub fn new(field: Field, track: bool) -> Echelon {
        Echelon { field, track, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Stored rows in pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values().map(|r| &r.entries)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Adds `v` (tagged `tag` for combination tracking). Returns `None` if the
    /// rank grew; otherwise the dependency `v_tag - sum acc_i v_i = 0` as a
    /// sparse relation on tags (empty when tracking is off).
    pub fn insert(&mut self, v: SparseVec, tag: usize) -> Option<SparseVec> {
        let (rest, acc) = self.reduce_inner(v, true);
        let mut combo = BTreeMap::new();
        if self.track {
            combo.insert(tag, self.field.one());
            axpy(&mut combo, &self.field.one().neg(), &acc);
        }
        if rest.is_empty() {
            return Some(into_sparse(combo));
        }
        let pivot = rest[0].0;
        let s = rest[0].1.inv();
        let entries = rest.iter().map(|(i, c)| (*i, c.mul(&s))).collect();
        let combo = combo.into_iter().map(|(i, c)| (i, c.mul(&s))).collect();
        self.rows.insert(pivot, Row { entries, combo });
        None
    }

    /// Full reduction: returns `(r, acc)` with `v = r + sum acc_i v_i` and `r`
    /// vanishing on every pivot. `acc` is empty unless tracking.
    pub fn reduce(&self, v: SparseVec) -> (SparseVec, SparseVec) {
        self.reduce_inner(v, false)
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }

    fn reduce_inner(&self, v: SparseVec, top_only: bool) -> (SparseVec, SparseVec) {
        let mut work: BTreeMap<usize, FieldElement> = v.into_iter().collect();
        let mut acc = BTreeMap::new();
        let mut cursor = 0usize;
        loop {
            let next = work
                .range(cursor..)
                .find(|(i, _)| self.rows.contains_key(i))
                .map(|(i, c)| (*i, c.clone()));
            let Some((col, c)) = next else { break };
            if top_only && work.keys().next() != Some(&col) {
                break;
            }
            let row = &self.rows[&col];
            axpy(&mut work, &c.neg(), &row.entries);
            if self.track {
                axpy(&mut acc, &c, &row.combo);
            }
            cursor = col + 1;
        }
        (into_sparse(work), into_sparse(acc))
    }
}
