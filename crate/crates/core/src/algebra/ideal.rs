use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use crate::algebra::monomial::{Monomial, MonomialOrder};
use crate::algebra::poly::{PolyRing, Polynomial};
use crate::{KResult, KernelError};

/// An ideal of P given by explicit generators. Generators must be nonzero;
/// the `homogeneous` flag records whether every generator is homogeneous.
#[derive(Debug, Clone)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
    homogeneous: bool,
    gb: OnceLock<Arc<GroebnerBasis>>,
}

/// A reduced Groebner basis: monic elements, no term of any element
/// divisible by the leading monomial of another, sorted ascending in the
/// order. Reduced bases are canonical for (ideal, order).
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    pub order: MonomialOrder,
    pub elements: Vec<Polynomial>,
}

/// Full multivariate division: returns the normal form and the quotient
/// certificate, so `f = sum_i q_i * basis_i + nf` exactly.
pub fn divide_full(
    ring: &PolyRing,
    f: &Polynomial,
    basis: &[Polynomial],
) -> (Polynomial, Vec<Polynomial>) {
    let mut quotients = vec![ring.zero(); basis.len()];
    let mut rest = f.clone();
    let mut nf_terms: Vec<(Monomial, u64)> = Vec::new();
    'outer: while let Some((lm, lc)) = rest.leading().map(|(m, c)| (m.clone(), c)) {
        for (k, g) in basis.iter().enumerate() {
            let (gm, gc) = match g.leading() {
                Some(t) => t,
                None => continue,
            };
            if gm.divides(&lm) {
                let q = gm.quotient_into(&lm);
                let c = ring.field().div(lc, gc);
                rest = ring.sub(&rest, &ring.mul_term(g, &q, c));
                quotients[k] = ring.add(&quotients[k], &ring.monomial(q, c));
                continue 'outer;
            }
        }
        // leading term irreducible: move it to the normal form
        nf_terms.push((lm.clone(), lc));
        rest = ring.sub(&rest, &ring.monomial(lm, lc));
    }
    (ring.from_terms(nf_terms), quotients)
}

/// Normal form only.
pub fn normal_form(ring: &PolyRing, f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    divide_full(ring, f, basis).0
}

fn s_polynomial(ring: &PolyRing, f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = f.leading().expect("nonzero");
    let (gm, gc) = g.leading().expect("nonzero");
    let l = fm.lcm(gm);
    let a = ring.mul_term(f, &fm.quotient_into(&l), ring.field().inv(fc));
    let b = ring.mul_term(g, &gm.quotient_into(&l), ring.field().inv(gc));
    ring.sub(&a, &b)
}

/// Buchberger with the normal selection strategy (smallest lcm degree
/// first), the coprime-leading-term criterion and the chain criterion.
/// Returns the reduced Groebner basis.
pub fn buchberger(ring: &PolyRing, gens: &[Polynomial]) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = gens
        .iter()
        .filter(|f| !f.is_zero())
        .map(|f| ring.monic(f))
        .collect();
    // pending pairs keyed for normal selection: (lcm degree, i, j)
    let mut pending: BTreeSet<(i64, usize, usize)> = BTreeSet::new();
    let key = |basis: &[Polynomial], i: usize, j: usize| -> (i64, usize, usize) {
        let l = basis[i]
            .leading_monomial()
            .unwrap()
            .lcm(basis[j].leading_monomial().unwrap());
        (l.degree(), i, j)
    };
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pending.insert(key(&basis, i, j));
        }
    }
    while let Some(&(_, i, j)) = pending.iter().next() {
        pending.remove(&(key(&basis, i, j)));
        let fi = &basis[i];
        let fj = &basis[j];
        let (mi, mj) = (
            fi.leading_monomial().unwrap().clone(),
            fj.leading_monomial().unwrap().clone(),
        );
        // coprime criterion: S(f, g) reduces to zero when leading
        // monomials share no variable
        if mi.coprime(&mj) {
            continue;
        }
        // chain criterion: skip if some k has lm_k | lcm(i, j) and both
        // companion pairs are no longer pending
        let lij = mi.lcm(&mj);
        let mut chained = false;
        for k in 0..basis.len() {
            if k == i || k == j {
                continue;
            }
            if basis[k].leading_monomial().unwrap().divides(&lij) {
                let pik = key(&basis, i.min(k), i.max(k));
                let pjk = key(&basis, j.min(k), j.max(k));
                if !pending.contains(&pik) && !pending.contains(&pjk) {
                    chained = true;
                    break;
                }
            }
        }
        if chained {
            continue;
        }
        let s = s_polynomial(ring, fi, fj);
        let nf = normal_form(ring, &s, &basis);
        if !nf.is_zero() {
            let nf = ring.monic(&nf);
            basis.push(nf);
            let n = basis.len() - 1;
            for t in 0..n {
                pending.insert(key(&basis, t, n));
            }
        }
    }
    reduce_basis(ring, basis)
}

/// Minimalizes and tail-reduces a Groebner basis, returning the canonical
/// reduced basis sorted ascending by leading monomial.
fn reduce_basis(ring: &PolyRing, mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    // minimal: drop any element whose lm is divisible by another lm
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let mi = basis[i].leading_monomial().unwrap();
            let mj = basis[j].leading_monomial().unwrap();
            if mj.divides(mi) && (mi != mj || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut minimal: Vec<Polynomial> = basis
        .drain(..)
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(f, _)| f)
        .collect();
    // reduced: tail-reduce each element against the others
    for i in 0..minimal.len() {
        let f = minimal[i].clone();
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let nf = normal_form(ring, &f, &others);
        minimal[i] = ring.monic(&nf);
    }
    minimal.retain(|f| !f.is_zero());
    minimal.sort_by(|a, b| {
        a.leading_monomial()
            .unwrap()
            .cmp_grevlex(b.leading_monomial().unwrap())
    });
    minimal
}

impl Ideal {
    /// Builds an ideal from generators. Zero generators are rejected;
    /// mixed rings are rejected at parse level because all generators are
    /// produced through one ring handle.
    pub fn new(ring: Arc<PolyRing>, gens: Vec<Polynomial>) -> KResult<Self> {
        if gens.iter().any(|g| g.is_zero()) {
            return Err(KernelError::degenerate("ideal generator is zero"));
        }
        let homogeneous = gens.iter().all(|g| g.is_homogeneous());
        Ok(Ideal {
            ring,
            gens,
            homogeneous,
            gb: OnceLock::new(),
        })
    }

    pub fn zero(ring: Arc<PolyRing>) -> Self {
        Ideal {
            ring,
            gens: Vec::new(),
            homogeneous: true,
            gb: OnceLock::new(),
        }
    }

    /// The irrelevant maximal ideal (all variables).
    pub fn irrelevant(ring: Arc<PolyRing>) -> Self {
        let gens = (0..ring.nvars()).map(|i| ring.var(i)).collect();
        Ideal::new(ring, gens).expect("variables are nonzero")
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        self.gb
            .get_or_init(|| {
                Arc::new(GroebnerBasis {
                    order: MonomialOrder::GrevLex,
                    elements: buchberger(&self.ring, &self.gens),
                })
            })
            .as_ref()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        normal_form(&self.ring, f, &self.groebner().elements)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn equals(&self, other: &Ideal) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    pub fn is_unit(&self) -> bool {
        self.groebner()
            .elements
            .iter()
            .any(|f| f.is_constant())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.groebner().elements.is_empty()
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(self.ring.clone(), gens).expect("nonzero gens preserved")
    }

    /// Krull dimension of P/I via independent variable sets modulo the
    /// initial ideal: dim = max |S| such that no leading monomial of the
    /// reduced basis is supported inside S. The unit ideal gives -1.
    pub fn dimension(&self) -> i64 {
        ideal_dimension(&self.ring, &self.groebner().elements)
    }

    /// True when the reduced Groebner basis consists of single terms, i.e.
    /// the ideal is a monomial ideal.
    pub fn is_monomial(&self) -> bool {
        self.groebner().elements.iter().all(|f| f.is_term())
    }

    pub fn render(&self) -> String {
        if self.gens.is_empty() {
            return "(0)".into();
        }
        let parts: Vec<String> = self.gens.iter().map(|g| self.ring.render(g)).collect();
        format!("({})", parts.join(", "))
    }
}

/// Dimension from a Groebner basis. Exposed separately so tests can drive
/// it with hand-built bases.
pub fn ideal_dimension(ring: &PolyRing, gb: &[Polynomial]) -> i64 {
    if gb.iter().any(|f| f.is_constant()) {
        return -1;
    }
    let supports: Vec<Vec<usize>> = gb
        .iter()
        .map(|f| f.leading_monomial().unwrap().support())
        .collect();
    let n = ring.nvars();
    let mut best: i64 = 0;
    // subsets of the variable set; n is small throughout the kernel
    assert!(n <= 24, "variable count {n} out of supported range");
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones() as i64;
        if size <= best {
            continue;
        }
        let independent = supports.iter().all(|supp| {
            // support must not be contained in the subset
            !supp.iter().all(|&v| mask & (1 << v) != 0)
        });
        if independent {
            best = size;
        }
    }
    best
}

/// Minimal primes of a monomial ideal, as sorted variable index sets.
///
/// Requires every generator to be a single term. The zero ideal returns
/// the zero prime `[]`; the unit ideal returns no primes.
pub fn monomial_minimal_primes(ring: &PolyRing, gens: &[Polynomial]) -> KResult<Vec<Vec<usize>>> {
    let mut supports: Vec<Vec<usize>> = Vec::new();
    for g in gens {
        if g.is_zero() {
            return Err(KernelError::degenerate("zero generator in monomial ideal"));
        }
        if !g.is_term() {
            return Err(KernelError::unsupported(format!(
                "non-monomial generator {} in monomial minimal primes",
                ring.render(g)
            )));
        }
        if g.is_constant() {
            // unit ideal: empty intersection of primes
            return Ok(Vec::new());
        }
        supports.push(g.leading_monomial().unwrap().support());
    }
    if supports.is_empty() {
        return Ok(vec![Vec::new()]);
    }
    // discard non-minimal supports to shrink the search
    supports.sort_by_key(|s| s.len());
    let mut reduced: Vec<Vec<usize>> = Vec::new();
    for s in supports {
        if !reduced
            .iter()
            .any(|t| t.iter().all(|v| s.contains(v)))
        {
            reduced.push(s);
        }
    }
    let universe: Vec<usize> = {
        let mut u: BTreeSet<usize> = BTreeSet::new();
        for s in &reduced {
            u.extend(s.iter().copied());
        }
        u.into_iter().collect()
    };
    let m = universe.len();
    assert!(m <= 24, "support universe too large");
    let mut hitting: Vec<Vec<usize>> = Vec::new();
    for mask in 0u32..(1u32 << m) {
        let set: Vec<usize> = universe
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, &v)| v)
            .collect();
        if reduced
            .iter()
            .all(|s| s.iter().any(|v| set.contains(v)))
        {
            hitting.push(set);
        }
    }
    hitting.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    let mut minimal: Vec<Vec<usize>> = Vec::new();
    for h in hitting {
        if !minimal
            .iter()
            .any(|t| t.iter().all(|v| h.contains(v)))
        {
            minimal.push(h);
        }
    }
    Ok(minimal)
}
