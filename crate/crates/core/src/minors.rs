//! Determinants and minors of polynomial matrices.
//!
//! Two independent routes: cofactor expansion with memoization over column
//! subsets (used to enumerate minors), and fraction-free Bareiss elimination
//! (used for exact ranks over the fraction field and as a cross-check).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::groebner::IdealBasis;
use crate::matrix::HomogeneousMatrix;
use crate::ring::{Polynomial, Ring};

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else {
            return out;
        };
        cur[i] += 1;
        for l in i + 1..k {
            cur[l] = cur[l - 1] + 1;
        }
    }
}

/// Cofactor expansion along the first listed row, memoized on (row count, column set).
struct Expander<'a> {
    ring: &'a Ring,
    entries: &'a [Vec<Polynomial>],
    rows: &'a [usize],
    memo: BTreeMap<Vec<usize>, Polynomial>,
}

impl Expander<'_> {
    fn det(&mut self, cols: &[usize]) -> Polynomial {
        let depth = self.rows.len() - cols.len();
        if cols.is_empty() {
            return Polynomial::one(self.ring);
        }
        if let Some(p) = self.memo.get(cols) {
            return p.clone();
        }
        let r = self.rows[depth];
        let mut acc = Polynomial::zero(self.ring);
        for (l, &c) in cols.iter().enumerate() {
            let a = &self.entries[r][c];
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let sub = self.det(&rest);
            if sub.is_zero() {
                continue;
            }
            let term = a * &sub;
            acc = if l % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        self.memo.insert(cols.to_vec(), acc.clone());
        acc
    }
}

/// Determinant of the submatrix on `rows` × `cols` (equal lengths).
pub fn minor(phi: &HomogeneousMatrix, rows: &[usize], cols: &[usize]) -> Polynomial {
    assert_eq!(rows.len(), cols.len());
    let mut e = Expander { ring: phi.ring(), entries: phi.entries(), rows, memo: BTreeMap::new() };
    e.det(cols)
}

/// All `s × s` minors, row subsets outer and column subsets inner, each in
/// lexicographic order. Zero minors are kept so positions stay meaningful.
pub fn all_minors(phi: &HomogeneousMatrix, s: usize) -> Result<Vec<(Vec<usize>, Vec<usize>, Polynomial)>> {
    let (m, n) = (phi.nrows(), phi.ncols());
    if s > m.min(n) {
        return Err(Error::MinorSize { size: s, rows: m, cols: n });
    }
    let mut out = Vec::new();
    for rows in subsets(m, s) {
        let mut e = Expander { ring: phi.ring(), entries: phi.entries(), rows: &rows, memo: BTreeMap::new() };
        for cols in subsets(n, s) {
            let p = e.det(&cols);
            out.push((rows.clone(), cols, p));
        }
    }
    Ok(out)
}

/// The ideal `I_s(Φ)` of `s × s` minors (`I_0 = R`), zero minors dropped.
pub fn minors(phi: &HomogeneousMatrix, s: usize) -> Result<IdealBasis> {
    let ring = phi.ring();
    if s == 0 {
        return Ok(IdealBasis::unit(ring));
    }
    let (m, n) = (phi.nrows(), phi.ncols());
    if s > m.min(n) {
        return Err(Error::MinorSize { size: s, rows: m, cols: n });
    }
    let gens = all_minors(phi, s)?.into_iter().map(|(_, _, p)| p).filter(|p| !p.is_zero()).collect();
    Ok(IdealBasis::new(ring, gens))
}

/// Classical adjugate of a square matrix given by its rows.
pub fn adjugate(ring: &Ring, a: &[Vec<Polynomial>]) -> Vec<Vec<Polynomial>> {
    let n = a.len();
    let rows: Vec<usize> = (0..n).collect();
    let mut out = alloc::vec![alloc::vec![Polynomial::zero(ring); n]; n];
    for j in 0..n {
        for k in 0..n {
            // adj[k][j] = (-1)^{j+k} det(A without row j, column k)
            let r: Vec<usize> = rows.iter().copied().filter(|&x| x != j).collect();
            let c: Vec<usize> = rows.iter().copied().filter(|&x| x != k).collect();
            let mut e = Expander { ring, entries: a, rows: &r, memo: BTreeMap::new() };
            let d = e.det(&c);
            out[k][j] = if (j + k) % 2 == 0 { d } else { -&d };
        }
    }
    out
}

/// Fraction-free echelon form. Returns the pivot positions and the sign of the
/// row permutation; the last pivot of a square nonsingular matrix is its
/// determinant up to that sign.
fn bareiss(ring: &Ring, mut a: Vec<Vec<Polynomial>>) -> (Vec<(usize, usize)>, bool, Vec<Vec<Polynomial>>) {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut prev = Polynomial::one(ring);
    let mut pivots = Vec::new();
    let mut odd = false;
    let mut k = 0;
    for c in 0..n {
        if k == m {
            break;
        }
        let Some(p) = (k..m).find(|&i| !a[i][c].is_zero()) else { continue };
        if p != k {
            a.swap(p, k);
            odd = !odd;
        }
        for i in k + 1..m {
            for j in c + 1..n {
                let num = &(&a[k][c] * &a[i][j]) - &(&a[i][c] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss step divides exactly");
            }
            a[i][c] = Polynomial::zero(ring);
        }
        // rows above the pivot rows are not touched; skipped columns keep the divisor
        prev = a[k][c].clone();
        pivots.push((k, c));
        k += 1;
    }
    (pivots, odd, a)
}

/// Rank over the fraction field of `R`.
pub fn bareiss_rank(phi: &HomogeneousMatrix) -> usize {
    bareiss(phi.ring(), phi.entries().to_vec()).0.len()
}

/// Determinant of a square polynomial matrix by fraction-free elimination.
pub fn bareiss_determinant(ring: &Ring, a: &[Vec<Polynomial>]) -> Polynomial {
    let n = a.len();
    if n == 0 {
        return Polynomial::one(ring);
    }
    let (pivots, odd, reduced) = bareiss(ring, a.to_vec());
    if pivots.len() < n {
        return Polynomial::zero(ring);
    }
    let d = reduced[n - 1][n - 1].clone();
    if odd {
        -&d
    } else {
        d
    }
}
