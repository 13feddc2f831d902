//! Exact coefficient fields: the rationals and prime fields `F_p`.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default prime for `F_p` computations.
pub const DEFAULT_PRIME: u64 = 32003;

/// Descriptor of a coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Builds `F_p`, rejecting composite moduli.
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        // Residues are multiplied through u128, so the modulus must fit in 63 bits.
        if p >= 1 << 63 {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Rational(BigRational::zero()),
            Field::Prime(p) => FieldElement::Prime { value: 0, modulus: p },
        }
    }

    pub fn one(self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => FieldElement::Prime {
                value: (v as i128).rem_euclid(p as i128) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(self, v: &BigInt) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Rational(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                FieldElement::Prime {
                    value: r.to_u64().expect("residue fits in u64"),
                    modulus: p,
                }
            }
        }
    }

    /// `num / den` in this field; fails when `den` vanishes in the field.
    pub fn fraction(self, num: &BigInt, den: &BigInt) -> Result<FieldElement> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.from_bigint(num).div(&d))
    }

    /// Characteristic of the field (0 for the rationals).
    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "Fp:{}", p),
        }
    }
}

/// An element of `Q` (always in lowest terms, positive denominator) or of `F_p`
/// (value in `[0, p)`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

impl FieldElement {
    pub fn field(&self) -> Field {
        match self {
            FieldElement::Rational(_) => Field::Rational,
            FieldElement::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    /// Image in `F_p`: defined for rationals whose denominator is prime to `p`
    /// and for residues modulo `p` itself.
    pub fn residue(&self, p: u64) -> Option<u64> {
        match self {
            FieldElement::Rational(q) => {
                let m = BigInt::from(p);
                let den = q.denom().mod_floor(&m).to_u64().expect("residue fits in u64");
                if den == 0 {
                    return None;
                }
                let num = q.numer().mod_floor(&m).to_u64().expect("residue fits in u64");
                Some(((num as u128 * pow_mod(den, p - 2, p) as u128) % p as u128) as u64)
            }
            FieldElement::Prime { value, modulus } => (*modulus == p).then_some(*value),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_zero(),
            FieldElement::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_one(),
            FieldElement::Prime { value, .. } => *value == 1,
        }
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (FieldElement::Prime { value: a, modulus: p }, FieldElement::Prime { value: b, modulus: q }) => {
                debug_assert_eq!(p, q);
                FieldElement::Prime { value: ((*a as u128 + *b as u128) % *p as u128) as u64, modulus: *p }
            }
            _ => panic!("field mismatch"),
        }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Prime { value, modulus } => FieldElement::Prime {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (FieldElement::Prime { value: a, modulus: p }, FieldElement::Prime { value: b, modulus: q }) => {
                debug_assert_eq!(p, q);
                FieldElement::Prime { value: ((*a as u128 * *b as u128) % *p as u128) as u64, modulus: *p }
            }
            _ => panic!("field mismatch"),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> FieldElement {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(a.recip()),
            FieldElement::Prime { value, modulus } => FieldElement::Prime {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        }
    }

    pub fn div(&self, other: &FieldElement) -> FieldElement {
        self.mul(&other.inv())
    }

    pub fn pow(&self, mut e: u32) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Whether the printed form should carry a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_negative(),
            FieldElement::Prime { .. } => false,
        }
    }

    /// Numerator/denominator pair for the rationals; residues have denominator 1.
    pub fn to_fraction(&self) -> (BigInt, BigInt) {
        match self {
            FieldElement::Rational(q) => (q.numer().clone(), q.denom().clone()),
            FieldElement::Prime { value, .. } => (BigInt::from(*value), BigInt::one()),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(q) => Some(q),
            FieldElement::Prime { .. } => None,
        }
    }

    /// Total order used only to make outputs deterministic.
    pub fn canonical_cmp(&self, other: &FieldElement) -> Ordering {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => a.cmp(b),
            (FieldElement::Prime { value: a, .. }, FieldElement::Prime { value: b, .. }) => a.cmp(b),
            _ => panic!("field mismatch"),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            FieldElement::Prime { value, .. } => write!(f, "{}", value),
        }
    }
}

impl FieldElement {
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u128 = 1 % m as u128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m as u128;
        }
        b = b * b % m as u128;
        exp >>= 1;
    }
    acc as u64
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_scaling() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.from_i64(3).mul(&f.from_i64(4)), f.from_i64(2));
        assert_eq!(f.from_i64(-1), f.from_i64(4));
        assert_eq!(f.from_i64(3).inv().mul(&f.from_i64(3)), f.one());
    }

    #[test]
    fn rationals_stay_normalized() {
        let q = Field::Rational;
        let half = q.fraction(&BigInt::from(2), &BigInt::from(-4)).unwrap();
        assert_eq!(half.to_string(), "-1/2");
        assert!(q.fraction(&BigInt::from(1), &BigInt::from(0)).is_err());
        let p = Field::prime(7).unwrap();
        assert!(p.fraction(&BigInt::from(1), &BigInt::from(14)).is_err());
    }

    #[test]
    fn primality() {
        assert!(is_prime(32003));
        assert!(!is_prime(32001));
        assert!(is_prime(2));
        assert!(!is_prime(1));
        assert!(Field::prime(15).is_err());
    }
}
