//! Graded free modules and homogeneous polynomial matrices between them.

use alloc::collections::VecDeque;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::linalg::ScalarMatrix;
use crate::ring::{same_ring, Homogeneity, Polynomial, Ring};

/// `⊕_j R(-a_j)`, stored as the generator degrees `a_j`.
///
/// Rank zero is allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GradedFreeModule {
    twists: Vec<i64>,
}

impl GradedFreeModule {
    pub fn new(twists: Vec<i64>) -> GradedFreeModule {
        GradedFreeModule { twists }
    }

    /// `R(-a)^rank`.
    pub fn uniform(rank: usize, a: i64) -> GradedFreeModule {
        GradedFreeModule { twists: alloc::vec![a; rank] }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    /// Degree of the `j`-th free generator.
    pub fn twist(&self, j: usize) -> i64 {
        self.twists[j]
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    /// The module twisted so that every generator degree moves by `shift`.
    pub fn shifted(&self, shift: i64) -> GradedFreeModule {
        GradedFreeModule { twists: self.twists.iter().map(|a| a + shift).collect() }
    }

    /// `Hom(F, R)`: generator degrees negate.
    pub fn dual(&self) -> GradedFreeModule {
        GradedFreeModule { twists: self.twists.iter().map(|a| -a).collect() }
    }
}

/// Matrix of a degree-0 map `source → target` of graded free modules, acting on
/// column vectors: `target.rank()` rows, `source.rank()` columns, and entry
/// `(i, j)` either zero or homogeneous of degree `source.twist(j) - target.twist(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousMatrix {
    ring: Ring,
    target: GradedFreeModule,
    source: GradedFreeModule,
    entries: Vec<Vec<Polynomial>>,
}

impl HomogeneousMatrix {
    pub fn new(
        ring: &Ring,
        target: GradedFreeModule,
        source: GradedFreeModule,
        entries: Vec<Vec<Polynomial>>,
    ) -> Result<HomogeneousMatrix> {
        if entries.len() != target.rank() {
            return Err(Error::Shape(alloc::format!(
                "{} rows for a target of rank {}",
                entries.len(),
                target.rank()
            )));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != source.rank() {
                return Err(Error::Shape(alloc::format!(
                    "row {} has {} entries, source rank is {}",
                    i,
                    row.len(),
                    source.rank()
                )));
            }
            for (j, e) in row.iter().enumerate() {
                if !same_ring(e.ring(), ring) {
                    return Err(Error::RingMismatch);
                }
                match e.homogeneous_degree() {
                    Homogeneity::Zero => {}
                    Homogeneity::Degree(d) if d as i64 == source.twist(j) - target.twist(i) => {}
                    _ => return Err(Error::Inhomogeneous { row: i, col: j }),
                }
            }
        }
        Ok(HomogeneousMatrix { ring: ring.clone(), target, source, entries })
    }

    /// Infers twists from the entry degrees: the first row of each connected
    /// block of nonzero entries gets twist 0, all-zero columns get twist 0.
    pub fn from_entries(ring: &Ring, entries: Vec<Vec<Polynomial>>) -> Result<HomogeneousMatrix> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        if entries.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged matrix".into()));
        }
        let mut degree = alloc::vec![alloc::vec![None; cols]; rows];
        for i in 0..rows {
            for j in 0..cols {
                match entries[i][j].homogeneous_degree() {
                    Homogeneity::Degree(d) => degree[i][j] = Some(d as i64),
                    Homogeneity::Zero => {}
                    Homogeneity::NotHomogeneous => return Err(Error::Inhomogeneous { row: i, col: j }),
                }
            }
        }
        let mut row_tw: Vec<Option<i64>> = alloc::vec![None; rows];
        let mut col_tw: Vec<Option<i64>> = alloc::vec![None; cols];
        for start in 0..rows {
            if row_tw[start].is_some() {
                continue;
            }
            row_tw[start] = Some(0);
            // bipartite walk: false = row node, true = column node
            let mut queue = VecDeque::from([(false, start)]);
            while let Some((is_col, k)) = queue.pop_front() {
                if is_col {
                    let c = col_tw[k].unwrap();
                    for i in 0..rows {
                        if let Some(d) = degree[i][k] {
                            match row_tw[i] {
                                None => {
                                    row_tw[i] = Some(c - d);
                                    queue.push_back((false, i));
                                }
                                Some(r) if r != c - d => return Err(Error::Inhomogeneous { row: i, col: k }),
                                _ => {}
                            }
                        }
                    }
                } else {
                    let r = row_tw[k].unwrap();
                    for j in 0..cols {
                        if let Some(d) = degree[k][j] {
                            match col_tw[j] {
                                None => {
                                    col_tw[j] = Some(r + d);
                                    queue.push_back((true, j));
                                }
                                Some(c) if c != r + d => return Err(Error::Inhomogeneous { row: k, col: j }),
                                _ => {}
                            }
                        }
                    }
                }
            }
        }
        let target = GradedFreeModule::new(row_tw.into_iter().map(|t| t.unwrap_or(0)).collect());
        let source = GradedFreeModule::new(col_tw.into_iter().map(|t| t.unwrap_or(0)).collect());
        HomogeneousMatrix::new(ring, target, source, entries)
    }

    pub fn parse(ring: &Ring, rows: &[&[&str]]) -> Result<HomogeneousMatrix> {
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|e| ring.parse(e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        HomogeneousMatrix::from_entries(ring, entries)
    }

    pub fn zero(ring: &Ring, target: GradedFreeModule, source: GradedFreeModule) -> HomogeneousMatrix {
        let entries = (0..target.rank())
            .map(|_| (0..source.rank()).map(|_| Polynomial::zero(ring)).collect())
            .collect();
        HomogeneousMatrix { ring: ring.clone(), target, source, entries }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn target(&self) -> &GradedFreeModule {
        &self.target
    }

    pub fn source(&self) -> &GradedFreeModule {
        &self.source
    }

    pub fn nrows(&self) -> usize {
        self.target.rank()
    }

    pub fn ncols(&self) -> usize {
        self.source.rank()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Polynomial::is_zero)
    }

    /// Degree of entry `(i, j)` as dictated by the twists.
    pub fn entry_degree(&self, i: usize, j: usize) -> i64 {
        self.source.twist(j) - self.target.twist(i)
    }

    /// `self ∘ other`, where `other: E → source`.
    pub fn compose(&self, other: &HomogeneousMatrix) -> Result<HomogeneousMatrix> {
        if self.source != other.target {
            return Err(Error::Shape("composition of incompatible graded maps".into()));
        }
        let entries = (0..self.nrows())
            .map(|i| {
                (0..other.ncols())
                    .map(|j| {
                        let mut acc = Polynomial::zero(&self.ring);
                        for k in 0..self.ncols() {
                            if !self.entries[i][k].is_zero() && !other.entries[k][j].is_zero() {
                                acc = &acc + &(&self.entries[i][k] * &other.entries[k][j]);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        HomogeneousMatrix::new(&self.ring, self.target.clone(), other.source.clone(), entries)
    }

    /// `Hom(-, R(-shift))` of the map: the transpose from `target^∨` to `source^∨`,
    /// with all generator degrees moved by `shift`.
    pub fn dual(&self, shift: i64) -> HomogeneousMatrix {
        let entries = (0..self.ncols()).map(|j| (0..self.nrows()).map(|i| self.entries[i][j].clone()).collect()).collect();
        HomogeneousMatrix {
            ring: self.ring.clone(),
            target: self.source.dual().shifted(shift),
            source: self.target.dual().shifted(shift),
            entries,
        }
    }

    /// Keeps the listed rows, in order.
    pub fn select_rows(&self, rows: &[usize]) -> HomogeneousMatrix {
        HomogeneousMatrix {
            ring: self.ring.clone(),
            target: GradedFreeModule::new(rows.iter().map(|&i| self.target.twist(i)).collect()),
            source: self.source.clone(),
            entries: rows.iter().map(|&i| self.entries[i].clone()).collect(),
        }
    }

    /// Keeps the listed columns, in order.
    pub fn select_cols(&self, cols: &[usize]) -> HomogeneousMatrix {
        HomogeneousMatrix {
            ring: self.ring.clone(),
            target: self.target.clone(),
            source: GradedFreeModule::new(cols.iter().map(|&j| self.source.twist(j)).collect()),
            entries: self.entries.iter().map(|r| cols.iter().map(|&j| r[j].clone()).collect()).collect(),
        }
    }

    /// Appends a row whose generator has degree `twist`.
    pub fn with_row(&self, twist: i64, row: Vec<Polynomial>) -> Result<HomogeneousMatrix> {
        let mut entries = self.entries.clone();
        entries.push(row);
        let mut tw = self.target.twists().to_vec();
        tw.push(twist);
        HomogeneousMatrix::new(&self.ring, GradedFreeModule::new(tw), self.source.clone(), entries)
    }

    /// New rows `sum_i c_ki * row_i` with `c` a scalar matrix (one `Vec` per new
    /// row). Each new row may only combine rows of one twist.
    pub fn combine_rows(&self, combos: &[Vec<FieldElement>]) -> Result<HomogeneousMatrix> {
        let mut twists = Vec::with_capacity(combos.len());
        let mut entries = Vec::with_capacity(combos.len());
        for combo in combos {
            if combo.len() != self.nrows() {
                return Err(Error::Shape("row combination has the wrong length".into()));
            }
            let support: Vec<usize> = (0..combo.len()).filter(|&i| !combo[i].is_zero()).collect();
            let twist = support.first().map_or(0, |&i| self.target.twist(i));
            if support.iter().any(|&i| self.target.twist(i) != twist) {
                return Err(Error::DegreeMismatch("row combination mixes rows of different twists".into()));
            }
            let row = (0..self.ncols())
                .map(|j| {
                    support.iter().fold(Polynomial::zero(&self.ring), |acc, &i| {
                        &acc + &self.entries[i][j].scale(&combo[i])
                    })
                })
                .collect();
            twists.push(twist);
            entries.push(row);
        }
        HomogeneousMatrix::new(&self.ring, GradedFreeModule::new(twists), self.source.clone(), entries)
    }

    /// `self * v` for a column vector of polynomials.
    pub fn apply(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        assert_eq!(v.len(), self.ncols());
        self.entries
            .iter()
            .map(|row| {
                row.iter().zip(v).fold(Polynomial::zero(&self.ring), |acc, (a, b)| {
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        &acc + &(a * b)
                    }
                })
            })
            .collect()
    }

    /// Scalar matrix obtained by substituting a point.
    pub fn evaluate(&self, point: &[FieldElement]) -> Result<ScalarMatrix> {
        let field = self.ring.field();
        let mut m = ScalarMatrix::zero(field, self.nrows(), self.ncols());
        for j in 0..self.ncols() {
            for i in 0..self.nrows() {
                let v = self.entries[i][j].evaluate(point)?;
                if !v.is_zero() {
                    m.columns[j].push((i, v));
                }
            }
        }
        Ok(m)
    }

    /// Some nonzero entry has degree zero.
    pub fn unit_entry(&self) -> Option<(usize, usize)> {
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if !e.is_zero() && e.is_constant() {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

impl fmt::Display for HomogeneousMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", e)?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::ring::{MonomialOrder, PolyRing};

    fn p3() -> Ring {
        PolyRing::standard(4, Field::Rational, MonomialOrder::GrevLex).unwrap()
    }

    #[test]
    fn infers_twists_from_degrees() {
        let r = p3();
        let m = HomogeneousMatrix::parse(&r, &[&["x1", "x2", "x3", "0"], &["0", "x1", "x2", "x3"]]).unwrap();
        assert_eq!(m.target().twists(), &[0, 0]);
        assert_eq!(m.source().twists(), &[1, 1, 1, 1]);
        let m = HomogeneousMatrix::parse(&r, &[&["x0", "x1^2"], &["x2", "x0*x3"]]).unwrap();
        assert_eq!(m.source().twists(), &[1, 2]);
    }

    #[test]
    fn rejects_inconsistent_degrees() {
        let r = p3();
        let bad = HomogeneousMatrix::parse(&r, &[&["x0", "x1"], &["x2", "x0^2"]]);
        assert!(matches!(bad, Err(Error::Inhomogeneous { .. })));
        let bad = HomogeneousMatrix::parse(&r, &[&["x0 + x1^2"]]);
        assert_eq!(bad, Err(Error::Inhomogeneous { row: 0, col: 0 }));
    }

    #[test]
    fn dual_transposes_and_negates() {
        let r = p3();
        let m = HomogeneousMatrix::parse(&r, &[&["x0", "x1^2"]]).unwrap();
        let d = m.dual(-4);
        assert_eq!(d.nrows(), 2);
        assert_eq!(d.target().twists(), &[-5, -6]);
        assert_eq!(d.source().twists(), &[-4]);
    }
}
