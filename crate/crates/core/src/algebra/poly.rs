use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::algebra::field::PrimeField;
use crate::algebra::monomial::Monomial;
use crate::{KResult, KernelError};

/// Polynomial ring P = F_p[x_1, ..., x_n] with a fixed ordered variable
/// list. All polynomial arithmetic goes through this context so variable
/// sets can never be mixed silently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    field: PrimeField,
    vars: Vec<String>,
}

/// A polynomial: nonzero terms sorted strictly descending in grevlex.
/// Coefficients are canonical representatives in `1..p`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, u64)>,
}

impl PolyRing {
    pub fn new(field: PrimeField, vars: Vec<String>) -> KResult<Arc<Self>> {
        if vars.is_empty() {
            return Err(KernelError::structural("empty variable list"));
        }
        let mut seen = std::collections::BTreeSet::new();
        for v in &vars {
            if v.is_empty() || !v.chars().next().unwrap().is_ascii_alphabetic() {
                return Err(KernelError::structural(format!(
                    "invalid variable name {v:?}"
                )));
            }
            if !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(KernelError::structural(format!(
                    "invalid variable name {v:?}"
                )));
            }
            if !seen.insert(v.clone()) {
                return Err(KernelError::structural(format!(
                    "duplicate variable name {v:?}"
                )));
            }
        }
        Ok(Arc::new(PolyRing { field, vars }))
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Structural compatibility check between contexts; used at every API
    /// boundary that accepts data built elsewhere.
    pub fn same_ring(&self, other: &PolyRing) -> bool {
        self.field == other.field && self.vars == other.vars
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(&self, c: i64) -> Polynomial {
        let c = self.field.reduce_i64(c);
        if c == 0 {
            self.zero()
        } else {
            Polynomial {
                terms: vec![(Monomial::one(self.nvars()), c)],
            }
        }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(1)
    }

    pub fn var(&self, idx: usize) -> Polynomial {
        Polynomial {
            terms: vec![(Monomial::var(self.nvars(), idx), 1)],
        }
    }

    pub fn monomial(&self, m: Monomial, c: u64) -> Polynomial {
        debug_assert_eq!(m.nvars(), self.nvars());
        let c = c % self.field.characteristic();
        if c == 0 {
            self.zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from unsorted, possibly repeated terms.
    pub fn from_terms(&self, terms: Vec<(Monomial, u64)>) -> Polynomial {
        let mut terms: Vec<(Monomial, u64)> = terms
            .into_iter()
            .map(|(m, c)| (m, c % self.field.characteristic()))
            .filter(|(_, c)| *c != 0)
            .collect();
        terms.sort_by(|a, b| b.0.cmp_grevlex(&a.0));
        let mut out: Vec<(Monomial, u64)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = self.field.add(last.1, c);
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|(_, c)| *c != 0);
        Polynomial { terms: out }
    }

    pub fn add(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() && j < b.terms.len() {
            match a.terms[i].0.cmp_grevlex(&b.terms[j].0) {
                Ordering::Greater => {
                    out.push(a.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.field.add(a.terms[i].1, b.terms[j].1);
                    if c != 0 {
                        out.push((a.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a.terms[i..]);
        out.extend_from_slice(&b.terms[j..]);
        Polynomial { terms: out }
    }

    pub fn neg(&self, a: &Polynomial) -> Polynomial {
        Polynomial {
            terms: a
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.neg(*c)))
                .collect(),
        }
    }

    pub fn sub(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, c: u64, a: &Polynomial) -> Polynomial {
        let c = c % self.field.characteristic();
        if c == 0 {
            return self.zero();
        }
        Polynomial {
            terms: a
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), self.field.mul(c, *k)))
                .collect(),
        }
    }

    /// a * (c * m) for a single term.
    pub fn mul_term(&self, a: &Polynomial, m: &Monomial, c: u64) -> Polynomial {
        let c = c % self.field.characteristic();
        if c == 0 {
            return self.zero();
        }
        Polynomial {
            terms: a
                .terms
                .iter()
                .map(|(ma, ca)| (ma.mul(m), self.field.mul(*ca, c)))
                .collect(),
        }
    }

    pub fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut acc = self.zero();
        for (m, c) in &b.terms {
            acc = self.add(&acc, &self.mul_term(a, m, *c));
        }
        acc
    }

    /// Normalizes the leading coefficient to 1. Zero stays zero.
    pub fn monic(&self, a: &Polynomial) -> Polynomial {
        match a.leading() {
            None => self.zero(),
            Some((_, c)) => self.scale(self.field.inv(c), a),
        }
    }

    pub fn render(&self, a: &Polynomial) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (m, c)) in a.terms.iter().enumerate() {
            if idx > 0 {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            if *c != 1 || m.is_one() {
                factors.push(format!("{c}"));
            }
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 1 {
                    factors.push(self.vars[i].clone());
                } else if e > 1 {
                    factors.push(format!("{}^{}", self.vars[i], e));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl Polynomial {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    pub fn leading(&self) -> Option<(&Monomial, u64)> {
        self.terms.first().map(|(m, c)| (m, *c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    /// Total degree of the leading term; `None` for 0.
    pub fn degree(&self) -> Option<i64> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// The common total degree of all terms, if there is one. Zero counts
    /// as homogeneous of every degree and returns `None`; callers that
    /// need a degree must treat zero separately.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let d = self.terms.first()?.0.degree();
        if self.terms.iter().all(|(m, _)| m.degree() == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// True when the polynomial is a single term with coefficient. The
    /// monomial-ideal routines accept these as "monomial" generators.
    pub fn is_term(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }
}

/// Displays through the ring are preferred; this fallback renders raw
/// exponent vectors and exists for debugging only.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("{c}*{:?}", m.exps()))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
