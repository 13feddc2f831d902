use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

/// A power product `x_0^{a_0} ... x_n^{a_n}` with its cached total degree.
///
/// The derived `Ord` is plain lexicographic on exponent vectors and is only
/// used for keyed containers; term order comparisons go through [`MonomialOrder`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial { exps: vec![0; nvars], degree: 0 }
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps, degree: 1 }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Monomial {
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { exps, degree: self.degree + other.degree }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps = other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect();
        Some(Monomial { exps, degree: other.degree - self.degree })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::from_exponents(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }

    /// Drops or inserts variables: the result has exponent `self[map[i]]` in slot `i`
    /// (zero where `map[i]` is `None`).
    pub fn remap(&self, map: &[Option<usize>]) -> Monomial {
        Monomial::from_exponents(map.iter().map(|m| m.map_or(0, |j| self.exps[j])).collect())
    }

    /// All monomials of total degree `d` in `nvars` variables, in no particular order.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; nvars];
        fill(&mut out, &mut cur, 0, d);
        out
    }
}

fn fill(out: &mut Vec<Monomial>, cur: &mut [u32], i: usize, left: u32) {
    if cur.is_empty() {
        if left == 0 {
            out.push(Monomial::one(0));
        }
        return;
    }
    if i == cur.len() - 1 {
        cur[i] = left;
        out.push(Monomial::from_exponents(cur.to_vec()));
        cur[i] = 0;
        return;
    }
    for e in (0..=left).rev() {
        cur[i] = e;
        fill(out, cur, i + 1, left - e);
    }
    cur[i] = 0;
}

/// Term orders supported by the rings in this crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic.
    GrevLex,
    /// Pure lexicographic with `x_0 > x_1 > ...`.
    Lex,
    /// Block order: the exponent of `x_0` first, ties broken by grevlex on the rest.
    /// Eliminates `x_0`.
    EliminateFirst,
}

impl MonomialOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GrevLex => grevlex(a.exponents(), a.degree, b.exponents(), b.degree),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::EliminateFirst => a.exps[0].cmp(&b.exps[0]).then_with(|| {
                grevlex(&a.exps[1..], a.degree - a.exps[0], &b.exps[1..], b.degree - b.exps[0])
            }),
        }
    }
}

fn grevlex(a: &[u32], da: u32, b: &[u32], db: u32) -> Ordering {
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn grevlex_breaks_ties_on_last_variable() {
        // x0*x2 < x1^2 in grevlex (smaller power of the last variable wins)
        let o = MonomialOrder::GrevLex;
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        assert_eq!(MonomialOrder::Lex.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Greater);
    }

    #[test]
    fn elimination_order_puts_first_variable_on_top() {
        let o = MonomialOrder::EliminateFirst;
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 1, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn degree_enumeration_counts() {
        assert_eq!(Monomial::all_of_degree(4, 3).len(), 20);
        assert_eq!(Monomial::all_of_degree(4, 0).len(), 1);
        assert_eq!(Monomial::all_of_degree(3, 5).len(), 21);
    }
}
