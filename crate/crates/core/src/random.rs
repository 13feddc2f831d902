//! Seeded coefficient source.
//!
//! Over `Q` coefficients are integers drawn uniformly from `[-bound, bound]`;
//! over `F_p` they are uniform residues.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::matrix::{GradedFreeModule, HomogeneousMatrix};
use crate::ring::{Polynomial, Ring};

pub const DEFAULT_BOUND: i64 = 10;

#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
    field: Field,
    bound: i64,
    seed: u64,
}

impl Sampler {
    pub fn new(field: Field, seed: u64) -> Sampler {
        Sampler::with_bound(field, seed, DEFAULT_BOUND)
    }

    pub fn with_bound(field: Field, seed: u64, bound: i64) -> Sampler {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), field, bound: bound.max(1), seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn element(&mut self) -> FieldElement {
        match self.field {
            Field::Rational => self.field.from_i64(self.rng.gen_range(-self.bound..=self.bound)),
            Field::Prime(p) => self.field.from_i64(self.rng.gen_range(0..p) as i64),
        }
    }

    pub fn nonzero_element(&mut self) -> FieldElement {
        loop {
            let c = self.element();
            if !c.is_zero() {
                return c;
            }
        }
    }

    pub fn elements(&mut self, len: usize) -> Vec<FieldElement> {
        (0..len).map(|_| self.element()).collect()
    }

    /// Random form of degree `d`: every monomial gets an independent coefficient.
    pub fn form(&mut self, ring: &Ring, d: u32) -> Polynomial {
        let terms = ring.monomials_of_degree(d).into_iter().map(|m| (m, self.element())).collect();
        Polynomial::from_terms(ring, terms)
    }

    /// Random homogeneous matrix `source → target`: entry `(i, j)` is a random
    /// form of degree `source_j - target_i`.
    pub fn matrix(&mut self, ring: &Ring, target: GradedFreeModule, source: GradedFreeModule) -> Result<HomogeneousMatrix> {
        let mut entries = Vec::with_capacity(target.rank());
        for &a in target.twists() {
            let mut row = Vec::with_capacity(source.rank());
            for &b in source.twists() {
                if b < a {
                    return Err(Error::Infeasible(alloc::format!("entry degree {} is negative", b - a)));
                }
                row.push(self.form(ring, (b - a) as u32));
            }
            entries.push(row);
        }
        HomogeneousMatrix::new(ring, target, source, entries)
    }

    /// A random point of affine `(n+1)`-space.
    pub fn point(&mut self, ring: &Ring) -> Vec<FieldElement> {
        self.elements(ring.nvars())
    }
}
