use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::ring::monomial::{Monomial, MonomialOrder};

/// `k[x_0, ..., x_n]` with the standard grading and a fixed term order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
    field: Field,
    order: MonomialOrder,
}

pub type Ring = Arc<PolyRing>;

impl PolyRing {
    /// A projective coordinate ring: at least three variables, distinct identifier names.
    pub fn new<S: Into<String>>(
        vars: impl IntoIterator<Item = S>,
        field: Field,
        order: MonomialOrder,
    ) -> Result<Ring> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        if vars.len() < 3 {
            return Err(Error::InvalidRing(alloc::format!(
                "need at least 3 variables (n >= 2), got {}",
                vars.len()
            )));
        }
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::InvalidRing(alloc::format!("`{}` is not a valid variable name", v)));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(alloc::format!("duplicate variable `{}`", v)));
            }
        }
        Ok(Arc::new(PolyRing { vars, field, order }))
    }

    /// Ring on `x0, ..., x{nvars-1}`.
    pub fn standard(nvars: usize, field: Field, order: MonomialOrder) -> Result<Ring> {
        PolyRing::new((0..nvars).map(|i| alloc::format!("x{}", i)), field, order)
    }

    /// Unchecked constructor for auxiliary rings (elimination variables and the like).
    pub(crate) fn auxiliary(vars: Vec<String>, field: Field, order: MonomialOrder) -> Ring {
        Arc::new(PolyRing { vars, field, order })
    }

    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        Arc::new(PolyRing { vars: self.vars.clone(), field: self.field, order })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// The `n` of `P^n`.
    pub fn projective_dim(&self) -> usize {
        self.vars.len() - 1
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    /// Degree-`d` monomials, largest first in the ring order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let mut ms = Monomial::all_of_degree(self.nvars(), d);
        ms.sort_by(|a, b| self.order.cmp(b, a));
        ms
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Result of asking for the degree of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Degree(u32),
    NotHomogeneous,
    Zero,
}

/// Sparse polynomial; terms are strictly decreasing in the ring order and carry
/// no zero coefficients.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, FieldElement)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Polynomial {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Ring, c: FieldElement) -> Polynomial {
        Polynomial::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Ring) -> Polynomial {
        Polynomial::constant(ring, ring.field().one())
    }

    pub fn var(ring: &Ring, i: usize) -> Polynomial {
        Polynomial::term(ring, Monomial::var(ring.nvars(), i), ring.field().one())
    }

    pub fn term(ring: &Ring, m: Monomial, c: FieldElement) -> Polynomial {
        debug_assert_eq!(m.nvars(), ring.nvars());
        if c.is_zero() {
            return Polynomial::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: alloc::vec![(m, c)] }
    }

    /// Canonicalizes an arbitrary term list.
    pub fn from_terms(ring: &Ring, mut terms: Vec<(Monomial, FieldElement)>) -> Polynomial {
        terms.sort_by(|a, b| ring.cmp_monomials(&b.0, &a.0));
        let mut out: Vec<(Monomial, FieldElement)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, FieldElement)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, FieldElement)> {
        self.terms
    }

    /// Removes and returns the leading term.
    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, FieldElement)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<&FieldElement> {
        self.terms.first().map(|t| &t.1)
    }

    /// Coefficient of `m` (zero if absent).
    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms
            .binary_search_by(|(t, _)| self.ring.cmp_monomials(m, t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| self.ring.field().zero())
    }

    pub fn homogeneous_degree(&self) -> Homogeneity {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return Homogeneity::Zero;
        };
        let d = first.degree();
        if it.all(|(m, _)| m.degree() == d) {
            Homogeneity::Degree(d)
        } else {
            Homogeneity::NotHomogeneous
        }
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.product(other))
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.mul(c))).collect(),
        }
    }

    /// `self - c * m * g` without materializing the product.
    pub fn sub_mul_term(&self, c: &FieldElement, m: &Monomial, g: &Polynomial) -> Polynomial {
        let neg = c.neg();
        let scaled: Vec<(Monomial, FieldElement)> =
            g.terms.iter().map(|(t, a)| (t.mul(m), a.mul(&neg))).collect();
        merge_terms(&self.ring, &self.terms, &scaled)
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            Some(c) if !c.is_one() => self.scale(&c.inv()),
            _ => self.clone(),
        }
    }

    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement> {
        if point.len() != self.ring.nvars() {
            return Err(Error::LengthMismatch { expected: self.ring.nvars(), got: point.len() });
        }
        let field = self.ring.field();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, e) in point.iter().zip(m.exponents()) {
                if *e > 0 {
                    v = v.mul(&x.pow(*e));
                }
            }
            acc = acc.add(&v);
        }
        Ok(acc)
    }

    /// Re-expresses the polynomial in a ring with the same variables but another order.
    pub fn to_ring(&self, ring: &Ring) -> Polynomial {
        assert_eq!(ring.nvars(), self.ring.nvars());
        Polynomial::from_terms(ring, self.terms.clone())
    }

    /// Moves the polynomial into `ring`, sending variable `j` of the target to
    /// variable `map[j]` of the source.
    pub fn remap(&self, ring: &Ring, map: &[Option<usize>]) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.iter().map(|(m, c)| (m.remap(map), c.clone())).collect())
    }

    /// Exact quotient `self / d`; errors if the division leaves a remainder.
    pub fn div_exact(&self, d: &Polynomial) -> Result<Polynomial> {
        self.check_ring(d)?;
        let Some(lm) = d.leading_monomial() else {
            return Err(Error::DivisionByZero);
        };
        let lc_inv = d.terms[0].1.inv();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            let Some(q) = lm.quotient_of(m) else {
                return Err(Error::InexactDivision);
            };
            let qc = c.mul(&lc_inv);
            rem = rem.sub_mul_term(&qc, &q, d);
            quot.push((q, qc));
        }
        Ok(Polynomial::from_terms(&self.ring, quot))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        if negate {
            let neg: Vec<_> = other.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect();
            merge_terms(&self.ring, &self.terms, &neg)
        } else {
            merge_terms(&self.ring, &self.terms, &other.terms)
        }
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let (small, large) = if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &small.terms {
            let part: Vec<_> = large.terms.iter().map(|(t, a)| (t.mul(m), a.mul(c))).collect();
            acc = merge_terms(&self.ring, &acc.terms, &part);
        }
        acc
    }
}

fn merge_terms(
    ring: &Ring,
    a: &[(Monomial, FieldElement)],
    b: &[(Monomial, FieldElement)],
) -> Polynomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match ring.cmp_monomials(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                let c = a[i].1.add(&b[j].1);
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Polynomial { ring: ring.clone(), terms: out }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { c.neg() } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let mut first = true;
            if !abs.is_one() || m.is_one() {
                write!(f, "{}", abs)?;
                first = false;
            }
            for (i, e) in m.exponents().iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", self.ring.vars[i])?;
                if *e > 1 {
                    write!(f, "^{}", e)?;
                }
            }
        }
        Ok(())
    }
}
