//! Reduced Groebner bases and the ideal toolkit built on them: membership,
//! Krull dimension and height, intersection, ideal quotient, saturation and
//! degreewise minimal generator counts.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::linalg::{Echelon, SparseVec};
use crate::ring::{same_ring, Homogeneity, Monomial, MonomialOrder, PolyRing, Polynomial, Ring};

/// Generators of an ideal, possibly certified to be its reduced Groebner basis
/// with respect to the ring's term order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealBasis {
    ring: Ring,
    generators: Vec<Polynomial>,
    is_reduced_gb: bool,
}

/// Height of an ideal; the unit ideal has infinite height.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Height {
    Finite(usize),
    Infinite,
}

impl Height {
    pub fn at_least(self, k: usize) -> bool {
        match self {
            Height::Finite(h) => h >= k,
            Height::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Height::Finite(h) => Some(h),
            Height::Infinite => None,
        }
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(h) => write!(f, "{}", h),
            Height::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    /// Krull dimension of `R/I` (affine cone); -1 for the unit ideal.
    pub krull_dim: i64,
    pub height: Height,
}

impl IdealBasis {
    pub fn new(ring: &Ring, generators: Vec<Polynomial>) -> IdealBasis {
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        IdealBasis { ring: ring.clone(), generators, is_reduced_gb: false }
    }

    pub fn unit(ring: &Ring) -> IdealBasis {
        IdealBasis { ring: ring.clone(), generators: alloc::vec![Polynomial::one(ring)], is_reduced_gb: true }
    }

    pub fn zero(ring: &Ring) -> IdealBasis {
        IdealBasis { ring: ring.clone(), generators: Vec::new(), is_reduced_gb: true }
    }

    /// The ideal generated by the variables (the irrelevant ideal).
    pub fn irrelevant(ring: &Ring) -> IdealBasis {
        IdealBasis::new(ring, (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect()).groebner()
    }

    pub fn parse(ring: &Ring, gens: &[&str]) -> Result<IdealBasis> {
        let polys = gens.iter().map(|g| ring.parse(g)).collect::<Result<Vec<_>>>()?;
        Ok(IdealBasis::new(ring, polys))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_reduced_gb(&self) -> bool {
        self.is_reduced_gb
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        let gb = self.groebner();
        gb.generators.len() == 1 && gb.generators[0].is_constant()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| matches!(g.homogeneous_degree(), Homogeneity::Degree(_)))
    }

    /// The reduced Groebner basis (a clone when already certified).
    pub fn groebner(&self) -> IdealBasis {
        if self.is_reduced_gb {
            return self.clone();
        }
        buchberger(self)
    }

    /// Same ideal, in a ring with the same variables but another term order.
    pub fn to_ring(&self, ring: &Ring) -> IdealBasis {
        IdealBasis::new(ring, self.generators.iter().map(|g| g.to_ring(ring)).collect())
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        let gb = self.groebner();
        reduce(p, &gb.generators).is_zero()
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &IdealBasis) -> bool {
        let gb = self.groebner();
        other.generators.iter().all(|g| reduce(g, &gb.generators).is_zero())
    }

    pub fn same_ideal(&self, other: &IdealBasis) -> bool {
        self.groebner().generators == other.groebner().generators
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.groebner().generators.iter().filter_map(|g| g.leading_monomial().cloned()).collect()
    }

    pub fn dimension(&self) -> DimensionReport {
        dimension(self)
    }

    pub fn height(&self) -> Height {
        dimension(self).height
    }
}

impl fmt::Display for IdealBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", g)?;
        }
        write!(f, ")")
    }
}

/// Full reduction of `p` modulo `basis` (any generating list; the result is a
/// normal form when `basis` is a Groebner basis).
pub fn reduce(p: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = p.ring().clone();
    let mut work = p.clone();
    let mut rem: Vec<(Monomial, FieldElement)> = Vec::new();
    while let Some((m, c)) = work.terms().first().cloned() {
        let divisor = basis.iter().find_map(|g| {
            let lm = g.leading_monomial()?;
            lm.quotient_of(&m).map(|q| (g, q))
        });
        match divisor {
            Some((g, q)) => {
                let coeff = c.div(g.leading_coefficient().expect("nonzero"));
                work = work.sub_mul_term(&coeff, &q, g);
            }
            None => {
                work.pop_leading();
                rem.push((m, c));
            }
        }
    }
    Polynomial::from_terms(&ring, rem)
}

/// Normal form with respect to a certified reduced Groebner basis.
pub fn normal_form(p: &Polynomial, gb: &IdealBasis) -> Result<Polynomial> {
    if !gb.is_reduced_gb {
        return Err(Error::NotGroebner);
    }
    if !same_ring(p.ring(), &gb.ring) {
        return Err(Error::RingMismatch);
    }
    Ok(reduce(p, &gb.generators))
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (lf, lg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    let l = lf.lcm(lg);
    let one = f.ring().field().one();
    let a = f.mul_term(&lf.quotient_of(&l).unwrap(), &one);
    let b = g.mul_term(&lg.quotient_of(&l).unwrap(), &one);
    &a - &b
}

/// Replaces same-degree homogeneous generators by a basis of their span.
fn linear_interreduce(ring: &Ring, gens: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut by_degree: BTreeMap<u32, Vec<Polynomial>> = BTreeMap::new();
    let mut rest = Vec::new();
    for g in gens {
        match g.homogeneous_degree() {
            Homogeneity::Degree(d) => by_degree.entry(d).or_default().push(g),
            Homogeneity::NotHomogeneous => rest.push(g),
            Homogeneity::Zero => {}
        }
    }
    let mut out = Vec::new();
    for (d, group) in by_degree {
        if group.len() == 1 {
            out.extend(group);
            continue;
        }
        let basis = MonomialIndex::new(ring, d);
        let mut e = Echelon::new(ring.field(), false);
        for g in &group {
            e.insert(basis.vectorize(g), 0);
        }
        out.extend(e_rows(&e, &basis, ring));
    }
    out.extend(rest);
    out
}

fn e_rows(e: &Echelon, basis: &MonomialIndex, ring: &Ring) -> Vec<Polynomial> {
    e.rows().map(|row| basis.polynomial(ring, row)).collect()
}

/// Buchberger's algorithm with the coprime and chain criteria and the normal
/// selection strategy. Returns the reduced, monic basis sorted by leading monomial.
pub fn buchberger(ideal: &IdealBasis) -> IdealBasis {
    let ring = ideal.ring.clone();
    let mut input: Vec<Polynomial> = ideal.generators.iter().filter(|g| !g.is_zero()).cloned().collect();
    if input.iter().any(|g| g.is_constant()) {
        return IdealBasis::unit(&ring);
    }
    if input.is_empty() {
        return IdealBasis::zero(&ring);
    }
    input = linear_interreduce(&ring, input);
    input.sort_by(|a, b| ring.cmp_monomials(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));

    let mut basis: Vec<Polynomial> = Vec::new();
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();

    fn add(h: Polynomial, basis: &mut Vec<Polynomial>, pairs: &mut BTreeSet<(usize, usize)>) {
        let k = basis.len();
        basis.push(h.monic());
        for i in 0..k {
            pairs.insert((i, k));
        }
    }

    for g in input {
        let h = reduce(&g, &basis);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return IdealBasis::unit(&ring);
        }
        add(h, &mut basis, &mut pairs);
    }

    while let Some(&(i, j)) = pairs.iter().min_by(|a, b| {
        let la = basis[a.0].leading_monomial().unwrap().lcm(basis[a.1].leading_monomial().unwrap());
        let lb = basis[b.0].leading_monomial().unwrap().lcm(basis[b.1].leading_monomial().unwrap());
        ring.cmp_monomials(&la, &lb).then_with(|| a.cmp(b))
    }) {
        pairs.remove(&(i, j));
        let (li, lj) = (basis[i].leading_monomial().unwrap(), basis[j].leading_monomial().unwrap());
        if li.is_coprime(lj) {
            continue;
        }
        let l = li.lcm(lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().unwrap().divides(&l)
                && !pairs.contains(&ordered(i, k))
                && !pairs.contains(&ordered(j, k))
        });
        if chain {
            continue;
        }
        let h = reduce(&s_polynomial(&basis[i], &basis[j]), &basis);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return IdealBasis::unit(&ring);
        }
        add(h, &mut basis, &mut pairs);
    }

    // minimalize, then interreduce
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(k2, g2)| {
            let l2 = g2.leading_monomial().unwrap();
            k2 != k && l2.divides(lm) && (l2 != lm || k2 < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<Polynomial> = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let lead = Polynomial::from_terms(&ring, alloc::vec![minimal[k].terms()[0].clone()]);
        let tail = &minimal[k] - &lead;
        let others: Vec<Polynomial> =
            minimal.iter().enumerate().filter(|(k2, _)| *k2 != k).map(|(_, g)| g.clone()).collect();
        reduced.push((&lead + &reduce(&tail, &others)).monic());
    }
    reduced.sort_by(|a, b| ring.cmp_monomials(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    IdealBasis { ring, generators: reduced, is_reduced_gb: true }
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Krull dimension of `R/I` from maximal independent sets modulo the leading ideal.
pub fn dimension(ideal: &IdealBasis) -> DimensionReport {
    let gb = ideal.groebner();
    let n = gb.ring.nvars();
    if gb.generators.iter().any(|g| g.is_constant()) {
        return DimensionReport { krull_dim: -1, height: Height::Infinite };
    }
    let supports: Vec<u64> = gb
        .generators
        .iter()
        .map(|g| g.leading_monomial().unwrap().support().fold(0u64, |acc, i| acc | (1 << i)))
        .collect();
    let mut best = 0usize;
    for set in 0u64..(1u64 << n) {
        let size = set.count_ones() as usize;
        if size > best && supports.iter().all(|s| s & !set != 0) {
            best = size;
        }
    }
    DimensionReport { krull_dim: best as i64, height: Height::Finite(n - best) }
}

pub fn height(ideal: &IdealBasis) -> Height {
    dimension(ideal).height
}

/// Ring with one extra variable in front, ordered to eliminate it.
fn elimination_ring(ring: &Ring) -> Ring {
    let mut vars: Vec<String> = alloc::vec![String::from("_t")];
    vars.extend(ring.var_names().iter().cloned());
    PolyRing::auxiliary(vars, ring.field(), MonomialOrder::EliminateFirst)
}

/// `I ∩ J` via `t I + (1 - t) J` and elimination of `t`.
pub fn intersect(i: &IdealBasis, j: &IdealBasis) -> IdealBasis {
    let ring = i.ring.clone();
    if i.is_zero_ideal() || j.is_zero_ideal() {
        return IdealBasis::zero(&ring);
    }
    let big = elimination_ring(&ring);
    let n = ring.nvars();
    let up: Vec<Option<usize>> = core::iter::once(None).chain((0..n).map(Some)).collect();
    let down: Vec<Option<usize>> = (1..=n).map(Some).collect();
    let t = Polynomial::var(&big, 0);
    let one_minus_t = &Polynomial::one(&big) - &t;
    let mut gens = Vec::new();
    for f in i.generators() {
        gens.push(&t * &f.remap(&big, &up));
    }
    for g in j.generators() {
        gens.push(&one_minus_t * &g.remap(&big, &up));
    }
    let gb = buchberger(&IdealBasis::new(&big, gens));
    let kept: Vec<Polynomial> = gb
        .generators
        .iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.exponents()[0] == 0))
        .map(|g| g.remap(&ring, &down))
        .collect();
    buchberger(&IdealBasis::new(&ring, kept))
}

/// `I : (g)`.
pub fn quotient_by_element(i: &IdealBasis, g: &Polynomial) -> IdealBasis {
    let ring = i.ring.clone();
    if g.is_zero() {
        return IdealBasis::unit(&ring);
    }
    let inter = intersect(i, &IdealBasis::new(&ring, alloc::vec![g.clone()]));
    let gens = inter
        .generators
        .iter()
        .map(|h| h.div_exact(g).expect("generators of I ∩ (g) are multiples of g"))
        .collect();
    buchberger(&IdealBasis::new(&ring, gens))
}

/// `I : J = { r : r J ⊆ I }`, intersected over the generators of `J`.
pub fn ideal_quotient(i: &IdealBasis, j: &IdealBasis) -> IdealBasis {
    let mut acc: Option<IdealBasis> = None;
    for g in j.generators() {
        let q = quotient_by_element(i, g);
        acc = Some(match acc {
            None => q,
            Some(a) => intersect(&a, &q),
        });
    }
    acc.unwrap_or_else(|| IdealBasis::unit(&i.ring))
}

/// `I : J^∞`, by iterating quotients until the reduced basis stabilizes.
pub fn saturate(i: &IdealBasis, j: &IdealBasis) -> IdealBasis {
    let mut cur = i.groebner();
    loop {
        let next = ideal_quotient(&cur, j);
        if next.generators == cur.generators {
            return cur;
        }
        cur = next;
    }
}

/// Number of monomials of degree `d` outside the leading-term ideal.
pub fn standard_monomial_count(gb: &IdealBasis, d: u32) -> usize {
    let gb = gb.groebner();
    let leads = gb.leading_monomials();
    Monomial::all_of_degree(gb.ring.nvars(), d).iter().filter(|m| !leads.iter().any(|l| l.divides(m))).count()
}

/// `dim_k (I / m I)_d` for each generator degree `d` of a homogeneous ideal.
pub fn minimal_generator_count(ideal: &IdealBasis) -> Result<BTreeMap<u32, usize>> {
    let ring = &ideal.ring;
    let mut degrees: Vec<(u32, &Polynomial)> = Vec::new();
    for (k, g) in ideal.generators.iter().enumerate() {
        match g.homogeneous_degree() {
            Homogeneity::Degree(d) => degrees.push((d, g)),
            Homogeneity::NotHomogeneous => {
                return Err(Error::DegreeMismatch(alloc::format!("generator {} is not homogeneous", k)))
            }
            Homogeneity::Zero => {}
        }
    }
    let mut out = BTreeMap::new();
    let gen_degrees: BTreeSet<u32> = degrees.iter().map(|(d, _)| *d).collect();
    for &d in &gen_degrees {
        let basis = MonomialIndex::new(ring, d);
        let mut e = Echelon::new(ring.field(), false);
        let one = ring.field().one();
        for (dg, g) in &degrees {
            if *dg < d {
                for m in Monomial::all_of_degree(ring.nvars(), d - dg) {
                    e.insert(basis.vectorize(&g.mul_term(&m, &one)), 0);
                }
            }
        }
        let below = e.rank();
        for (dg, g) in &degrees {
            if *dg == d {
                e.insert(basis.vectorize(g), 0);
            }
        }
        let count = e.rank() - below;
        if count > 0 {
            out.insert(d, count);
        }
    }
    Ok(out)
}

/// Coordinates on the monomials of one degree, largest monomial first.
#[derive(Clone, Debug)]
pub struct MonomialIndex {
    monomials: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
}

impl MonomialIndex {
    pub fn new(ring: &Ring, d: u32) -> MonomialIndex {
        let monomials = ring.monomials_of_degree(d);
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        MonomialIndex { monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of a homogeneous polynomial of this degree.
    pub fn vectorize(&self, p: &Polynomial) -> SparseVec {
        let mut v: SparseVec = p.terms().iter().map(|(m, c)| (self.index[m], c.clone())).collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }

    pub fn polynomial(&self, ring: &Ring, v: &[(usize, FieldElement)]) -> Polynomial {
        Polynomial::from_terms(ring, v.iter().map(|(i, c)| (self.monomials[*i].clone(), c.clone())).collect())
    }
}
