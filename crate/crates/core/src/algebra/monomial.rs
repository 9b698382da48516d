use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// Monomial order tag. The kernel is pinned to graded reverse
/// lexicographic; the tag exists so bases record the order they were
/// computed under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum MonomialOrder {
    #[default]
    GrevLex,
}

/// Exponent vector over a fixed, ordered variable list.
///
/// The variable list itself lives in [`crate::algebra::PolyRing`]; a
/// monomial is meaningful only relative to one ring, and all operations
/// assume both sides use the same variable count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[idx] = 1;
        Monomial { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn degree(&self) -> i64 {
        self.exps.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// other / self; caller guarantees divisibility.
    pub fn quotient_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(b, a)| b - a)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables occurring with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Graded reverse lexicographic comparison: higher total degree wins;
    /// on equal degree the monomial with the smaller exponent at the last
    /// differing variable is the larger one.
    pub fn cmp_grevlex(&self, other: &Monomial) -> Ordering {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..self.exps.len()).rev() {
            if self.exps[i] != other.exps[i] {
                return if self.exps[i] < other.exps[i] {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
        }
        Ordering::Equal
    }
}

/// All monomials of a given total degree, in descending grevlex order.
/// Degree must be small; this is used for graded-piece linear algebra.
pub fn monomials_of_degree(nvars: usize, degree: i64) -> Vec<Monomial> {
    if degree < 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    fn rec(out: &mut Vec<Monomial>, exps: &mut Vec<u32>, idx: usize, rest: u32) {
        if idx + 1 == exps.len() {
            exps[idx] = rest;
            out.push(Monomial::from_exps(exps.clone()));
            return;
        }
        for e in (0..=rest).rev() {
            exps[idx] = e;
            rec(out, exps, idx + 1, rest - e);
        }
        exps[idx] = 0;
    }
    rec(&mut out, &mut exps, 0, degree as u32);
    out.sort_by(|a, b| b.cmp_grevlex(a));
    out
}
